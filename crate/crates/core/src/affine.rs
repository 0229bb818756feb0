//! Symbolic permutative patterns and exact affine solving of their doubly
//! stochastic constraints.
//!
//! A pattern is an `n x n` grid of symbol indices; its admissible fillings
//! form an affine family `basepoint + span` in matrix space once the row and
//! column sums are pinned to 1. Families are compared as affine subsets via
//! a reduced-echelon normal form, which is what the classification keys on.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::perm::{act_on_row, PermError, Permutation};
use crate::rat::{rat, rat_str, Rat};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AffineError {
    #[error("permutations of mixed orders: {0} vs {1}")]
    MixedOrders(usize, usize),
    #[error("operation requires a nontrivial family")]
    TrivialFamily,
    #[error("parameter vector has length {0}, family has dimension {1}")]
    ParamLength(usize, usize),
    #[error("families have different orders: {0} vs {1}")]
    OrderMismatch(usize, usize),
    #[error(transparent)]
    Perm(#[from] PermError),
}

/// Symbolic permutative matrix: cell `(i, j)` holds a symbol index in
/// `0..n` (printed 1-based). Row 0 is always `(0, 1, .., n-1)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PatternMatrix {
    n: usize,
    cells: Vec<Vec<usize>>,
}

impl PatternMatrix {
    /// Rows are `c`, `c·P_1`, .., `c·P_{n-1}` with symbols in place of the
    /// entries of `c`.
    pub fn build(tuple: &[Permutation]) -> Result<Self, AffineError> {
        let n = tuple.first().map_or(1, |p| p.n());
        for p in tuple {
            if p.n() != n {
                return Err(AffineError::MixedOrders(n, p.n()));
            }
        }
        let base: Vec<usize> = (0..n).collect();
        let mut cells = vec![base.clone()];
        for p in tuple {
            cells.push(act_on_row(&base, p)?);
        }
        Ok(PatternMatrix { n, cells })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn cell(&self, i: usize, j: usize) -> usize {
        self.cells[i][j]
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.cells
    }

    /// Largest number of times any one symbol repeats within a single
    /// column. 1 means Latin (no repeats); 4 means a constant column.
    pub fn max_column_repetition(&self) -> usize {
        let n = self.n;
        let mut best = 0;
        for j in 0..n {
            let mut cnt = vec![0usize; n];
            for i in 0..n {
                cnt[self.cells[i][j]] += 1;
            }
            best = best.max(*cnt.iter().max().unwrap());
        }
        best
    }

    /// 1-based symbol grid, for catalog output.
    pub fn grid_one_based(&self) -> Vec<Vec<usize>> {
        self.cells.iter().map(|r| r.iter().map(|&s| s + 1).collect()).collect()
    }
}

/// Exact affine expression `constant + Σ coeff_k · c_k` over free symbols.
/// Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct AffineForm {
    pub constant: Rat,
    pub coeffs: BTreeMap<usize, Rat>,
}

impl AffineForm {
    pub fn constant(c: Rat) -> Self {
        AffineForm { constant: c, coeffs: BTreeMap::new() }
    }

    pub fn symbol(k: usize) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(k, Rat::one());
        AffineForm { constant: Rat::zero(), coeffs }
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval(&self, vals: &BTreeMap<usize, Rat>) -> Rat {
        let mut acc = self.constant;
        for (k, co) in &self.coeffs {
            acc += *co * vals[k];
        }
        acc
    }

    /// Parse forms like `"1/4"`, `"c3"`, `"1/2-c3"`, `"3c4-1/2"`.
    pub fn parse(s: &str) -> Option<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut form = AffineForm::default();
        let mut term = String::new();
        let mut terms = Vec::new();
        for (i, ch) in s.char_indices() {
            if (ch == '+' || ch == '-') && i > 0 && !term.is_empty() && !term.ends_with('/') {
                terms.push(std::mem::take(&mut term));
            }
            term.push(ch);
        }
        if !term.is_empty() {
            terms.push(term);
        }
        for t in terms {
            let (sign, body) = match t.strip_prefix('-') {
                Some(b) => (-Rat::one(), b),
                None => (Rat::one(), t.strip_prefix('+').unwrap_or(&t)),
            };
            if let Some(pos) = body.find('c') {
                let coeff = if pos == 0 { Rat::one() } else { crate::rat::parse_rat(&body[..pos])? };
                let idx: usize = body[pos + 1..].parse().ok()?;
                let e = form.coeffs.entry(idx - 1).or_insert_with(Rat::zero);
                *e += sign * coeff;
                if e.is_zero() {
                    form.coeffs.remove(&(idx - 1));
                }
            } else {
                form.constant += sign * crate::rat::parse_rat(body)?;
            }
        }
        Some(form)
    }
}

impl fmt::Display for AffineForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        if !self.constant.is_zero() || self.coeffs.is_empty() {
            write!(f, "{}", rat_str(self.constant))?;
            wrote = true;
        }
        for (k, co) in &self.coeffs {
            let mag = if co < &Rat::zero() { -*co } else { *co };
            let sign = if co < &Rat::zero() {
                "-"
            } else if wrote {
                "+"
            } else {
                ""
            };
            if mag.is_one() {
                write!(f, "{}c{}", sign, k + 1)?;
            } else {
                write!(f, "{}{}c{}", sign, rat_str(mag), k + 1)?;
            }
            wrote = true;
        }
        Ok(())
    }
}

/// The solution set of a pattern's doubly stochastic constraints:
/// every member is `basepoint + Σ t_k · span_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineFamily {
    pub n: usize,
    /// Solved form of each entry of the grid.
    pub entries: Vec<Vec<AffineForm>>,
    /// Solved form of each symbol `c_1..c_n` (the first row of `entries`).
    pub symbol_forms: Vec<AffineForm>,
    /// Surviving symbol indices, ascending; these name the parameters.
    pub free_params: Vec<usize>,
    pub basepoint: Vec<Vec<Rat>>,
    pub span: Vec<Vec<Vec<Rat>>>,
}

/// Result of solving a pattern: either a parametric family or the single
/// matrix `J/n` (every symbol forced to `1/n`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilyOutcome {
    Nontrivial(AffineFamily),
    TrivialAllQuarter,
}

impl FamilyOutcome {
    pub fn family(&self) -> Option<&AffineFamily> {
        match self {
            FamilyOutcome::Nontrivial(f) => Some(f),
            FamilyOutcome::TrivialAllQuarter => None,
        }
    }
}

/// Solve `Σ c = 1` plus the multiplicity-weighted column sums of `pattern`.
///
/// The system is always consistent (the all-`1/n` vector satisfies it).
/// Pivoting prefers to keep free the symbols with the highest column
/// repetition count, breaking ties by the column where that count occurs and
/// then by symbol index; surviving symbols keep their original names. This
/// reproduces the catalog's published parameterizations, e.g. the one-column
/// triple-repeat families keep the repeated symbol of column 1.
pub fn ds_solve(pattern: &PatternMatrix) -> FamilyOutcome {
    let n = pattern.n();
    // equations: coefficient rows over symbols, rhs always 1
    let mut eqs: Vec<Vec<Rat>> = vec![vec![Rat::one(); n]];
    for j in 0..n {
        let mut row = vec![Rat::zero(); n];
        for i in 0..n {
            row[pattern.cell(i, j)] += Rat::one();
        }
        eqs.push(row);
    }

    // free-variable preference: (max column multiplicity desc, column asc, index asc)
    let mut pref: Vec<usize> = (0..n).collect();
    let key = |k: usize| {
        let mut best = 0usize;
        let mut col = 0usize;
        for j in 0..n {
            let c = (0..n).filter(|&i| pattern.cell(i, j) == k).count();
            if c > best {
                best = c;
                col = j;
            }
        }
        (best, col)
    };
    let keys: Vec<(usize, usize)> = (0..n).map(key).collect();
    pref.sort_by(|&a, &b| keys[b].0.cmp(&keys[a].0).then(keys[a].1.cmp(&keys[b].1)).then(a.cmp(&b)));

    let rank_of = |cols: &[usize]| -> usize {
        let mut m: Vec<Vec<Rat>> = eqs.iter().map(|r| cols.iter().map(|&c| r[c]).collect()).collect();
        rank(&mut m)
    };
    let full_rank = rank_of(&(0..n).collect::<Vec<_>>());

    let mut free: Vec<usize> = Vec::new();
    for &k in &pref {
        if free.len() == n - full_rank {
            break;
        }
        let mut cand = free.clone();
        cand.push(k);
        let rest: Vec<usize> = (0..n).filter(|c| !cand.contains(c)).collect();
        if rank_of(&rest) == full_rank {
            free = cand;
        }
    }
    free.sort_unstable();

    if free.is_empty() {
        return FamilyOutcome::TrivialAllQuarter;
    }

    // eliminate pivot symbols: RREF over pivot columns, then read off forms
    let pivots: Vec<usize> = (0..n).filter(|c| !free.contains(c)).collect();
    let mut aug: Vec<Vec<Rat>> = eqs.iter().map(|r| {
        let mut row = r.clone();
        row.push(Rat::one()); // rhs
        row
    }).collect();
    let mut pivot_row: BTreeMap<usize, usize> = BTreeMap::new();
    let mut r = 0usize;
    for &c in &pivots {
        let Some(pr) = (r..aug.len()).find(|&i| !aug[i][c].is_zero()) else { continue };
        aug.swap(r, pr);
        let inv = aug[r][c].recip();
        for x in aug[r].iter_mut() {
            *x *= inv;
        }
        for i in 0..aug.len() {
            if i != r && !aug[i][c].is_zero() {
                let f = aug[i][c];
                let rr = aug[r].clone();
                for (x, y) in aug[i].iter_mut().zip(rr.iter()) {
                    *x -= f * *y;
                }
            }
        }
        pivot_row.insert(c, r);
        r += 1;
    }

    let mut symbol_forms: Vec<AffineForm> = Vec::with_capacity(n);
    for k in 0..n {
        if free.contains(&k) {
            symbol_forms.push(AffineForm::symbol(k));
        } else {
            let row = &aug[pivot_row[&k]];
            let mut form = AffineForm::constant(row[n]);
            for &f in &free {
                if !row[f].is_zero() {
                    form.coeffs.insert(f, -row[f]);
                }
            }
            symbol_forms.push(form);
        }
    }

    let entries: Vec<Vec<AffineForm>> = (0..n)
        .map(|i| (0..n).map(|j| symbol_forms[pattern.cell(i, j)].clone()).collect())
        .collect();

    // basepoint at all params = 1/n (gives J/n), directions = coefficient grids
    let quarter = rat(1, n as i64);
    let base_vals: BTreeMap<usize, Rat> = free.iter().map(|&k| (k, quarter)).collect();
    let basepoint: Vec<Vec<Rat>> = entries
        .iter()
        .map(|row| row.iter().map(|e| e.eval(&base_vals)).collect())
        .collect();
    debug_assert!(basepoint.iter().flatten().all(|&x| x == quarter));
    let span: Vec<Vec<Vec<Rat>>> = free
        .iter()
        .map(|&fparam| {
            entries
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|e| e.coeffs.get(&fparam).copied().unwrap_or_else(Rat::zero))
                        .collect()
                })
                .collect()
        })
        .collect();

    FamilyOutcome::Nontrivial(AffineFamily { n, entries, symbol_forms, free_params: free, basepoint, span })
}

fn rank(m: &mut [Vec<Rat>]) -> usize {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut r = 0usize;
    for c in 0..cols {
        let Some(pr) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, pr);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c];
                let rr = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(rr.iter()) {
                    *x -= f * *y;
                }
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

/// Pairs of distinct symbols whose solved forms coincide and are
/// non-constant. A nonempty result marks the pattern as degenerate: its
/// family is a specialization of some retained class. Constant coincidences
/// (like two symbols both forced to `1/4`) do not count.
pub fn forced_symbol_identifications(outcome: &FamilyOutcome) -> Result<Vec<(usize, usize)>, AffineError> {
    let fam = outcome.family().ok_or(AffineError::TrivialFamily)?;
    let mut out = Vec::new();
    for a in 0..fam.n {
        for b in a + 1..fam.n {
            if fam.symbol_forms[a] == fam.symbol_forms[b] && !fam.symbol_forms[a].is_constant() {
                out.push((a, b));
            }
        }
    }
    Ok(out)
}

/// Canonical description of a family as an affine subset of matrix space:
/// reduced-echelon span (row-major 16-vectors for n=4) plus the basepoint
/// reduced against the span. Two families are equal as sets iff their
/// normal forms are equal.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NormalForm {
    pub span: Vec<Vec<Rat>>,
    pub base: Vec<Rat>,
}

impl NormalForm {
    pub fn dimension(&self) -> usize {
        self.span.len()
    }

    pub fn serialize_string(&self) -> String {
        let row = |v: &[Rat]| v.iter().map(|&x| rat_str(x)).collect::<Vec<_>>().join(",");
        let span = self.span.iter().map(|r| row(r)).collect::<Vec<_>>().join(";");
        format!("dim={}|span={}|base={}", self.span.len(), span, row(&self.base))
    }
}

fn flatten(m: &[Vec<Rat>]) -> Vec<Rat> {
    m.iter().flatten().copied().collect()
}

fn rref_vectors(vectors: Vec<Vec<Rat>>) -> (Vec<Vec<Rat>>, Vec<usize>) {
    let mut m = vectors;
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut piv_cols = Vec::new();
    let mut r = 0usize;
    for c in 0..cols {
        let Some(pr) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, pr);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c];
                let rr = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(rr.iter()) {
                    *x -= f * *y;
                }
            }
        }
        piv_cols.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    m.truncate(r);
    (m, piv_cols)
}

fn normal_form_raw(basepoint: &[Vec<Rat>], span: &[Vec<Vec<Rat>>]) -> NormalForm {
    let (span_rref, piv) = rref_vectors(span.iter().map(|d| flatten(d)).collect());
    let mut base = flatten(basepoint);
    for (row, &c) in span_rref.iter().zip(piv.iter()) {
        if !base[c].is_zero() {
            let f = base[c];
            for (x, y) in base.iter_mut().zip(row.iter()) {
                *x -= f * *y;
            }
        }
    }
    NormalForm { span: span_rref, base }
}

/// Canonical basepoint + reduced-echelon span of a family. Invariant under
/// reparameterization: two families produce the same normal form iff they
/// are equal as affine subsets.
pub fn subspace_normal_form(family: &AffineFamily) -> NormalForm {
    normal_form_raw(&family.basepoint, &family.span)
}

/// Entrywise `Xᵀ · M · X` applied to the basepoint and every span
/// direction: `(XᵀMX)[a][b] = M[x⁻¹(a)][x⁻¹(b)]`.
pub fn conjugate_family(family: &AffineFamily, x: &Permutation) -> Result<AffineFamily, AffineError> {
    if family.n != x.n() {
        return Err(AffineError::OrderMismatch(family.n, x.n()));
    }
    let xi = x.inverse();
    let n = family.n;
    let cm = |m: &Vec<Vec<Rat>>| -> Vec<Vec<Rat>> {
        (0..n).map(|a| (0..n).map(|b| m[xi.apply(a)][xi.apply(b)]).collect()).collect()
    };
    let ce = |m: &Vec<Vec<AffineForm>>| -> Vec<Vec<AffineForm>> {
        (0..n).map(|a| (0..n).map(|b| m[xi.apply(a)][xi.apply(b)].clone()).collect()).collect()
    };
    Ok(AffineFamily {
        n,
        entries: ce(&family.entries),
        symbol_forms: family.symbol_forms.clone(),
        free_params: family.free_params.clone(),
        basepoint: cm(&family.basepoint),
        span: family.span.iter().map(|d| cm(d)).collect(),
    })
}

/// Conjugate only the subspace data; used in hot loops.
pub fn conjugate_normal_form(family: &AffineFamily, x: &Permutation) -> NormalForm {
    let xi = x.inverse();
    let n = family.n;
    let cm = |m: &Vec<Vec<Rat>>| -> Vec<Vec<Rat>> {
        (0..n).map(|a| (0..n).map(|b| m[xi.apply(a)][xi.apply(b)]).collect()).collect()
    };
    let base = cm(&family.basepoint);
    let span: Vec<Vec<Vec<Rat>>> = family.span.iter().map(|d| cm(d)).collect();
    normal_form_raw(&base, &span)
}

/// True iff `inner` is a subset of `outer` as affine sets: the basepoint
/// difference lies in `outer`'s span and `inner`'s span is a subspace of it.
pub fn family_contains(outer: &AffineFamily, inner: &AffineFamily) -> bool {
    let outer_nf = subspace_normal_form(outer);
    normal_form_contains(&outer_nf, inner)
}

/// Containment test against a precomputed outer normal form.
pub fn normal_form_contains(outer: &NormalForm, inner: &AffineFamily) -> bool {
    let piv: Vec<usize> = outer
        .span
        .iter()
        .map(|row| row.iter().position(|x| !x.is_zero()).unwrap())
        .collect();
    let reduce_to_zero = |v: &[Rat]| -> bool {
        let mut v = v.to_vec();
        for (row, &c) in outer.span.iter().zip(piv.iter()) {
            if !v[c].is_zero() {
                let f = v[c];
                for (x, y) in v.iter_mut().zip(row.iter()) {
                    *x -= f * *y;
                }
            }
        }
        v.iter().all(|x| x.is_zero())
    };
    let mut diff = flatten(&inner.basepoint);
    for (x, y) in diff.iter_mut().zip(outer.base.iter()) {
        *x -= *y;
    }
    if !reduce_to_zero(&diff) {
        return false;
    }
    inner.span.iter().all(|d| reduce_to_zero(&flatten(d)))
}

impl AffineFamily {
    pub fn dimension(&self) -> usize {
        self.free_params.len()
    }

    /// Member matrix at the given parameter values (ordered as
    /// `free_params`). Row and column sums are exactly 1; entries may be
    /// negative, feasibility is a separate check.
    pub fn evaluate(&self, params: &[Rat]) -> Result<Vec<Vec<Rat>>, AffineError> {
        if params.len() != self.free_params.len() {
            return Err(AffineError::ParamLength(params.len(), self.free_params.len()));
        }
        let vals: BTreeMap<usize, Rat> =
            self.free_params.iter().copied().zip(params.iter().copied()).collect();
        Ok(self
            .entries
            .iter()
            .map(|row| row.iter().map(|e| e.eval(&vals)).collect())
            .collect())
    }

    /// Solved symbol vector at the given parameter values.
    pub fn symbol_values(&self, params: &[Rat]) -> Result<Vec<Rat>, AffineError> {
        if params.len() != self.free_params.len() {
            return Err(AffineError::ParamLength(params.len(), self.free_params.len()));
        }
        let vals: BTreeMap<usize, Rat> =
            self.free_params.iter().copied().zip(params.iter().copied()).collect();
        Ok(self.symbol_forms.iter().map(|e| e.eval(&vals)).collect())
    }

    /// Interval bounds per free parameter from propagating entry
    /// nonnegativity. The box equals the true feasible set exactly when
    /// every entry form involves at most one parameter (`box_is_exact`);
    /// otherwise it is an enclosing box and members must be re-checked for
    /// nonnegativity after evaluation.
    pub fn param_box(&self) -> Vec<(Rat, Rat)> {
        let free = &self.free_params;
        let mut lo: BTreeMap<usize, Rat> = free.iter().map(|&k| (k, Rat::zero())).collect();
        let mut hi: BTreeMap<usize, Rat> = free.iter().map(|&k| (k, Rat::one())).collect();
        for _ in 0..8 {
            for form in &self.symbol_forms {
                for (&k, &co) in &form.coeffs {
                    // constant + co*c_k + rest >= 0, rest at its maximum
                    let rest_max: Rat = form
                        .coeffs
                        .iter()
                        .filter(|(&k2, _)| k2 != k)
                        .map(|(&k2, &c2)| if c2 > Rat::zero() { c2 * hi[&k2] } else { c2 * lo[&k2] })
                        .sum();
                    let bound = -(form.constant + rest_max) / co;
                    if co > Rat::zero() {
                        let l = lo.get_mut(&k).unwrap();
                        if bound > *l {
                            *l = bound;
                        }
                    } else {
                        let h = hi.get_mut(&k).unwrap();
                        if bound < *h {
                            *h = bound;
                        }
                    }
                }
            }
        }
        free.iter().map(|&k| (lo[&k], hi[&k])).collect()
    }

    /// True when the propagated box is exactly the feasible polytope.
    pub fn box_is_exact(&self) -> bool {
        self.symbol_forms.iter().all(|f| f.coeffs.len() <= 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::all_permutations;
    use proptest::prelude::*;

    fn p(s: &str) -> Permutation {
        Permutation::parse_cycles(s, 4).unwrap()
    }

    fn tup(strs: &[&str]) -> Vec<Permutation> {
        strs.iter().map(|s| p(s)).collect()
    }

    fn solve(strs: &[&str]) -> FamilyOutcome {
        ds_solve(&PatternMatrix::build(&tup(strs)).unwrap())
    }

    fn family(strs: &[&str]) -> AffineFamily {
        match solve(strs) {
            FamilyOutcome::Nontrivial(f) => f,
            FamilyOutcome::TrivialAllQuarter => panic!("unexpected trivial family"),
        }
    }

    #[test]
    fn pattern_examples() {
        // M(c; (132), (123)) row pattern
        let pm = PatternMatrix::build(&[
            Permutation::parse_cycles("(132)", 3).unwrap(),
            Permutation::parse_cycles("(123)", 3).unwrap(),
        ])
        .unwrap();
        assert_eq!(pm.rows(), &[vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]]);

        let pm = PatternMatrix::build(&tup(&["(1)(2)(3)(4)", "(1)(2)(34)", "(1)(2)(34)"])).unwrap();
        assert_eq!(
            pm.rows(),
            &[vec![0, 1, 2, 3], vec![0, 1, 2, 3], vec![0, 1, 3, 2], vec![0, 1, 3, 2]]
        );

        let id4 = Permutation::identity(4);
        let pm = PatternMatrix::build(&[id4.clone(), id4.clone(), id4]).unwrap();
        assert!(pm.rows().iter().all(|r| r == &vec![0, 1, 2, 3]));

        let mixed = vec![Permutation::identity(3), Permutation::identity(4)];
        assert!(PatternMatrix::build(&mixed).is_err());
    }

    #[test]
    fn solve_c7_matches_table_form() {
        let fam = family(&["(1)(2)(3)(4)", "(1)(2)(34)", "(1)(2)(34)"]);
        assert_eq!(fam.free_params, vec![2]);
        let expect: Vec<AffineForm> =
            ["1/4", "1/4", "c3", "1/2-c3"].iter().map(|s| AffineForm::parse(s).unwrap()).collect();
        assert_eq!(fam.symbol_forms, expect);
        assert_eq!(fam.param_box(), vec![(rat(0, 1), rat(1, 2))]);
        assert!(fam.box_is_exact());
    }

    #[test]
    fn solve_latin_tuple_is_three_dimensional() {
        let fam = family(&["(12)(34)", "(1324)", "(1423)"]);
        assert_eq!(fam.dimension(), 3);
        assert_eq!(fam.free_params, vec![0, 1, 2]);
        assert!(!fam.box_is_exact());
    }

    #[test]
    fn solve_identity_tuple_is_trivial() {
        assert_eq!(solve(&["I_4", "I_4", "I_4"]), FamilyOutcome::TrivialAllQuarter);
    }

    #[test]
    fn forced_identifications_examples() {
        // C7: constant coincidence c1=c2=1/4 is not an identification
        let out = solve(&["(1)(2)(3)(4)", "(1)(2)(34)", "(1)(2)(34)"]);
        assert_eq!(forced_symbol_identifications(&out).unwrap(), vec![]);
        // rows (c / c / c·(1432) / c·(1432)) force c1=c3, c2=c4
        let out = solve(&["I_4", "(1432)", "(1432)"]);
        assert_eq!(forced_symbol_identifications(&out).unwrap(), vec![(0, 2), (1, 3)]);
        // Latin tuple: nothing forced
        let out = solve(&["(12)(34)", "(1324)", "(1423)"]);
        assert_eq!(forced_symbol_identifications(&out).unwrap(), vec![]);
        assert!(forced_symbol_identifications(&FamilyOutcome::TrivialAllQuarter).is_err());
    }

    #[test]
    fn evaluate_row_column_sums_exact() {
        let fam = family(&["(1)(2)(3)(4)", "(1)(2)(34)", "(1)(2)(34)"]);
        let m = fam.evaluate(&[rat(1, 8)]).unwrap();
        for i in 0..4 {
            let rs: Rat = (0..4).map(|j| m[i][j]).sum();
            let cs: Rat = (0..4).map(|j| m[j][i]).sum();
            assert!(rs.is_one() && cs.is_one());
        }
        // C7 at c3 = 1/4 is J/4
        let m = fam.evaluate(&[rat(1, 4)]).unwrap();
        assert!(m.iter().flatten().all(|&x| x == rat(1, 4)));
        // C7 at c3 = 0: columns 3,4 hold the {0, 1/2} pattern
        let m = fam.evaluate(&[rat(0, 1)]).unwrap();
        assert_eq!(m[0][2], rat(0, 1));
        assert_eq!(m[0][3], rat(1, 2));
        assert_eq!(m[2][2], rat(1, 2));
        assert_eq!(m[2][3], rat(0, 1));
        assert!(fam.evaluate(&[]).is_err());
    }

    #[test]
    fn latin_family_hits_permutation_matrix() {
        // C1 representative at c = (0,0,0,1): a 0/1 doubly stochastic matrix
        let fam = family(&["(12)(34)", "(1324)", "(1423)"]);
        let m = fam.evaluate(&[rat(0, 1), rat(0, 1), rat(0, 1)]).unwrap();
        for row in &m {
            assert_eq!(row.iter().filter(|x| x.is_one()).count(), 1);
            assert_eq!(row.iter().filter(|x| x.is_zero()).count(), 3);
        }
    }

    #[test]
    fn normal_form_invariant_under_conjugation_by_identity() {
        let fam = family(&["(12)(34)", "(1324)", "(1423)"]);
        let nf = subspace_normal_form(&fam);
        let conj = conjugate_family(&fam, &Permutation::identity(4)).unwrap();
        assert_eq!(subspace_normal_form(&conj), nf);
    }

    #[test]
    fn double_conjugation_restores_normal_form() {
        let fam = family(&["(1)(2)(34)", "(1)(243)", "(1)(24)(3)"]);
        let nf = subspace_normal_form(&fam);
        for x in all_permutations(4).unwrap() {
            let once = conjugate_family(&fam, &x).unwrap();
            let back = conjugate_family(&once, &x.inverse()).unwrap();
            assert_eq!(subspace_normal_form(&back), nf);
            // conjugation preserves dimension and sum invariants
            assert_eq!(once.dimension(), fam.dimension());
            let m = once.evaluate(&[rat(1, 8)]).unwrap();
            for i in 0..4 {
                assert!((0..4).map(|j| m[i][j]).sum::<Rat>().is_one());
                assert!((0..4).map(|j| m[j][i]).sum::<Rat>().is_one());
            }
        }
    }

    #[test]
    fn c7_and_c8_families_distinct() {
        let f7 = family(&["(1)(2)(3)(4)", "(1)(2)(34)", "(1)(2)(34)"]);
        let f8 = family(&["(1)(2)(34)", "(1)(2)(34)", "(1)(2)(3)(4)"]);
        assert_ne!(subspace_normal_form(&f7), subspace_normal_form(&f8));
    }

    #[test]
    fn containment_examples() {
        let f7 = family(&["(1)(2)(3)(4)", "(1)(2)(34)", "(1)(2)(34)"]);
        let f1 = family(&["(12)(34)", "(1324)", "(1423)"]);
        assert!(family_contains(&f7, &f7));
        assert!(family_contains(&f1, &f1));
        // dimension monotonicity
        assert!(!family_contains(&f7, &f1));
        // the C7 line sits inside the C27 plane (same numeric matrices)
        let f27 = family(&["(1)(2)(3)(4)", "(12)(34)", "(12)(34)"]);
        assert!(family_contains(&f27, &f7));
    }

    #[test]
    fn degenerate_family_lands_in_c2_under_conjugation() {
        // rows (c / c / c·(1432) / c·(1432)) specializes into the class of
        // ((12)(34),(14)(23),(13)(24)) after some conjugation
        let deg = family(&["I_4", "(1432)", "(1432)"]);
        let c2 = family(&["(12)(34)", "(14)(23)", "(13)(24)"]);
        let found = all_permutations(4).unwrap().iter().any(|x| {
            let conj = conjugate_family(&deg, x).unwrap();
            family_contains(&c2, &conj)
        });
        assert!(found);
    }

    #[test]
    fn table_parameterization_fixtures() {
        // one-parameter families keep the column-1 repeated symbol
        let c18 = family(&["(1234)", "(14)(2)(3)", "(124)(3)"]);
        let expect: Vec<AffineForm> = ["1-3c4", "3c4-1/2", "1/2-c4", "c4"]
            .iter()
            .map(|s| AffineForm::parse(s).unwrap())
            .collect();
        assert_eq!(c18.symbol_forms, expect);
        assert_eq!(c18.param_box(), vec![(rat(1, 6), rat(1, 3))]);

        let c24 = family(&["(1)(24)(3)", "(1)(234)", "(14)(2)(3)"]);
        let expect: Vec<AffineForm> = ["c1", "3c1-1/2", "1/2-c1", "1-3c1"]
            .iter()
            .map(|s| AffineForm::parse(s).unwrap())
            .collect();
        assert_eq!(c24.symbol_forms, expect);
    }

    #[test]
    fn affine_form_parse_display() {
        let f = AffineForm::parse("3c4-1/2").unwrap();
        assert_eq!(f.constant, rat(-1, 2));
        assert_eq!(f.coeffs.get(&3), Some(&rat(3, 1)));
        assert_eq!(AffineForm::parse("1/2-c3").unwrap().to_string(), "1/2-c3");
        assert_eq!(AffineForm::parse("c2").unwrap().to_string(), "c2");
        assert_eq!(AffineForm::parse("0").unwrap().to_string(), "0");
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]
        #[test]
        fn normal_form_independent_of_parameter_point(i in 0usize..24, j in 0usize..24, k in 0usize..24) {
            // the normal form never depends on which member we build it from
            let all = all_permutations(4).unwrap();
            let tuple = vec![all[i].clone(), all[j].clone(), all[k].clone()];
            let pat = PatternMatrix::build(&tuple).unwrap();
            if let FamilyOutcome::Nontrivial(fam) = ds_solve(&pat) {
                let nf = subspace_normal_form(&fam);
                // shift basepoint to another member; same affine set
                let params: Vec<Rat> = fam.free_params.iter().map(|_| rat(1, 8)).collect();
                let alt = AffineFamily { basepoint: fam.evaluate(&params).unwrap(), ..fam.clone() };
                prop_assert_eq!(subspace_normal_form(&alt), nf);
            }
        }

        #[test]
        fn containment_reflexive_and_dimension_monotone(i in 0usize..24, j in 0usize..24, k in 0usize..24) {
            let all = all_permutations(4).unwrap();
            let tuple = vec![all[i].clone(), all[j].clone(), all[k].clone()];
            let pat = PatternMatrix::build(&tuple).unwrap();
            if let FamilyOutcome::Nontrivial(fam) = ds_solve(&pat) {
                prop_assert!(family_contains(&fam, &fam));
            }
        }
    }
}
