//! The symmetric group `S_n` for small `n`: enumeration, composition,
//! cycle types, matrix forms, and the row-vector action that generates
//! permutative matrices.
//!
//! Storage is one-line notation with 0-based images; all text I/O is the
//! 1-based cycle notation used by the class tables, with fixed points
//! written explicitly (the identity of `S_4` prints as `"(1)(2)(3)(4)"`).

use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PermError {
    #[error("order {0} out of supported range 1..=6")]
    OrderOutOfRange(usize),
    #[error("images {0:?} are not a bijection on 0..{1}")]
    NotABijection(Vec<usize>, usize),
    #[error("size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("cannot parse cycle notation {0:?}: {1}")]
    BadCycleNotation(String, String),
}

/// An element of `S_n` in one-line notation: `images[i]` is the image of `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

/// Multiset of cycle lengths, sorted descending, summing to `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleType(pub Vec<usize>);

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|k| format!("({k})")).collect();
        write!(f, "{}", parts.join("+"))
    }
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n).collect() }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self, PermError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(PermError::NotABijection(images.clone(), n));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    /// Image of point `i` (0-based).
    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.images.len()];
        for (i, &pi) in self.images.iter().enumerate() {
            inv[pi] = i;
        }
        Permutation { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &pi)| i == pi)
    }

    /// `(self ∘ q)(i) = self(q(i))`.
    pub fn compose(&self, q: &Permutation) -> Result<Permutation, PermError> {
        if self.n() != q.n() {
            return Err(PermError::SizeMismatch(self.n(), q.n()));
        }
        Ok(Permutation { images: q.images.iter().map(|&i| self.images[i]).collect() })
    }

    pub fn cycle_type(&self) -> CycleType {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut parts = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 1;
            seen[start] = true;
            let mut j = self.images[start];
            while j != start {
                seen[j] = true;
                j = self.images[j];
                len += 1;
            }
            parts.push(len);
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        CycleType(parts)
    }

    /// Permutation matrix with `P[i][p(i)] = 1`, so that `act_on_row(c, p)`
    /// equals the row-vector product `c · P`.
    pub fn matrix(&self) -> Vec<Vec<u8>> {
        let n = self.n();
        let mut m = vec![vec![0u8; n]; n];
        for (i, &pi) in self.images.iter().enumerate() {
            m[i][pi] = 1;
        }
        m
    }

    /// Cycle notation with explicit fixed points, cycles anchored at their
    /// smallest element and ordered by it: `"(1)(24)(3)"`.
    pub fn cycles_string(&self) -> String {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut out = String::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            out.push('(');
            out.push_str(&(start + 1).to_string());
            seen[start] = true;
            let mut j = self.images[start];
            while j != start {
                out.push_str(&(j + 1).to_string());
                seen[j] = true;
                j = self.images[j];
            }
            out.push(')');
        }
        out
    }

    /// Parse cycle notation over 1-based labels `1..=n` (`n <= 9`). Fixed
    /// points may be omitted: `"(12)(34)"` and `"(1)(2)(34)"` both parse.
    /// `"I"` and `"I_n"` denote the identity, matching table shorthand.
    pub fn parse_cycles(s: &str, n: usize) -> Result<Self, PermError> {
        let bad = |why: &str| PermError::BadCycleNotation(s.to_string(), why.to_string());
        let body = s.trim();
        if body == "I" || body == format!("I_{n}") {
            return Ok(Permutation::identity(n));
        }
        if !body.starts_with('(') || !body.ends_with(')') {
            return Err(bad("expected parenthesized cycles"));
        }
        let mut images: Vec<usize> = (0..n).collect();
        let mut assigned = vec![false; n];
        for cyc in body[1..body.len() - 1].split(")(") {
            let mut pts = Vec::new();
            for ch in cyc.chars() {
                let d = ch.to_digit(10).ok_or_else(|| bad("non-digit label"))? as usize;
                if d == 0 || d > n {
                    return Err(bad("label out of range"));
                }
                pts.push(d - 1);
            }
            if pts.is_empty() {
                return Err(bad("empty cycle"));
            }
            for (k, &p) in pts.iter().enumerate() {
                if assigned[p] {
                    return Err(bad("label repeated across cycles"));
                }
                assigned[p] = true;
                images[p] = pts[(k + 1) % pts.len()];
            }
        }
        Permutation::from_images(images)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.cycles_string())
    }
}

/// All `n!` elements of `S_n` in lexicographic order of one-line notation.
pub fn all_permutations(n: usize) -> Result<Vec<Permutation>, PermError> {
    if n == 0 || n > 6 {
        return Err(PermError::OrderOutOfRange(n));
    }
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(Permutation { images: cur.clone() });
        // next lexicographic permutation
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
    Ok(out)
}

/// Right action of `p` on a row vector: `(c · P)_j = c_{p^{-1}(j)}`.
pub fn act_on_row<T: Clone>(c: &[T], p: &Permutation) -> Result<Vec<T>, PermError> {
    if c.len() != p.n() {
        return Err(PermError::SizeMismatch(c.len(), p.n()));
    }
    let mut out: Vec<Option<T>> = vec![None; c.len()];
    for (i, x) in c.iter().enumerate() {
        out[p.apply(i)] = Some(x.clone());
    }
    Ok(out.into_iter().map(|x| x.unwrap()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str, n: usize) -> Permutation {
        Permutation::parse_cycles(s, n).unwrap()
    }

    #[test]
    fn enumeration_sizes() {
        assert_eq!(all_permutations(1).unwrap().len(), 1);
        assert_eq!(all_permutations(3).unwrap().len(), 6);
        assert_eq!(all_permutations(4).unwrap().len(), 24);
        assert!(all_permutations(0).is_err());
        assert!(all_permutations(7).is_err());
    }

    #[test]
    fn enumeration_is_sorted_and_distinct() {
        let all = all_permutations(4).unwrap();
        for w in all.windows(2) {
            assert!(w[0] < w[1]);
        }
    }

    #[test]
    fn compose_basics() {
        let id = Permutation::identity(3);
        let t = p("(12)", 3);
        assert_eq!(id.compose(&t).unwrap(), t);
        assert_eq!(t.compose(&t).unwrap(), id);
        // (123) ∘ (123) = (132)
        let c = p("(123)", 3);
        assert_eq!(c.compose(&c).unwrap(), p("(132)", 3));
        assert!(t.compose(&Permutation::identity(4)).is_err());
    }

    #[test]
    fn cycle_types() {
        assert_eq!(Permutation::identity(4).cycle_type(), CycleType(vec![1, 1, 1, 1]));
        assert_eq!(p("(12)(34)", 4).cycle_type(), CycleType(vec![2, 2]));
        assert_eq!(p("(1)(234)", 4).cycle_type(), CycleType(vec![3, 1]));
        assert_eq!(p("(1)(234)", 4).cycle_type().to_string(), "(3)+(1)");
    }

    #[test]
    fn act_on_row_examples() {
        let c = ["c1", "c2", "c3"];
        assert_eq!(act_on_row(&c, &Permutation::identity(3)).unwrap(), vec!["c1", "c2", "c3"]);
        // second row of M(c; (132), (123))
        assert_eq!(act_on_row(&c, &p("(132)", 3)).unwrap(), vec!["c2", "c3", "c1"]);
        let d = [1, 2, 3, 4];
        assert_eq!(act_on_row(&d, &p("(34)", 4)).unwrap(), vec![1, 2, 4, 3]);
        assert!(act_on_row(&d, &Permutation::identity(3)).is_err());
    }

    #[test]
    fn matrix_of_matches_action() {
        // act_on_row(c, p) == c · matrix(p), exhaustively for n <= 4
        for n in 1..=4 {
            let syms: Vec<usize> = (10..10 + n).collect();
            for q in all_permutations(n).unwrap() {
                let m = q.matrix();
                let prod: Vec<usize> = (0..n)
                    .map(|j| (0..n).map(|i| syms[i] * m[i][j] as usize).sum())
                    .collect();
                assert_eq!(prod, act_on_row(&syms, &q).unwrap());
            }
        }
    }

    #[test]
    fn matrix_is_group_homomorphism() {
        // matrix(p∘q) = matrix(p)·matrix(q), exhaustive n <= 4
        for n in 2..=4 {
            let all = all_permutations(n).unwrap();
            for a in &all {
                for b in &all {
                    let ab = a.compose(b).unwrap();
                    let (ma, mb) = (a.matrix(), b.matrix());
                    let prod: Vec<Vec<u8>> = (0..n)
                        .map(|i| {
                            (0..n)
                                .map(|j| (0..n).map(|k| ma[i][k] * mb[k][j]).sum::<u8>())
                                .collect()
                        })
                        .collect();
                    assert_eq!(prod, ab.matrix());
                }
            }
        }
    }

    #[test]
    fn double_action_composes() {
        // act(act(c, p), q) = act(c, q∘p), exhaustive n <= 4 with symbolic slots
        for n in 2..=4 {
            let syms: Vec<usize> = (0..n).collect();
            let all = all_permutations(n).unwrap();
            for a in &all {
                for b in &all {
                    let lhs = act_on_row(&act_on_row(&syms, a).unwrap(), b).unwrap();
                    let rhs = act_on_row(&syms, &b.compose(a).unwrap()).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn cycle_type_conjugation_invariant() {
        for n in 2..=4 {
            let all = all_permutations(n).unwrap();
            for q in &all {
                for x in &all {
                    let conj = x.compose(q).unwrap().compose(&x.inverse()).unwrap();
                    assert_eq!(conj.cycle_type(), q.cycle_type());
                }
            }
        }
    }

    #[test]
    fn cycle_notation_round_trip() {
        // table strings round-trip bit-exactly
        for s in ["(1)(2)(34)", "(12)(34)", "(1324)", "(1)(24)(3)", "(123)(4)", "(1)(243)", "(1)(2)(3)(4)"] {
            assert_eq!(p(s, 4).cycles_string(), s);
        }
        // shorthand accepted
        assert_eq!(p("I_4", 4), Permutation::identity(4));
        assert_eq!(p("(34)", 4), p("(1)(2)(34)", 4));
        assert!(Permutation::parse_cycles("(15)", 4).is_err());
        assert!(Permutation::parse_cycles("(11)", 4).is_err());
        assert!(Permutation::parse_cycles("12", 4).is_err());
    }

    #[test]
    fn four_cycle_matrix_has_fourth_roots_of_unity() {
        // sanity via trace powers: tr(P^k) counts fixed points of p^k
        let q = p("(1234)", 4);
        let mut acc = Permutation::identity(4);
        for k in 1..=4 {
            acc = q.compose(&acc).unwrap();
            let fixed = (0..4).filter(|&i| acc.apply(i) == i).count();
            assert_eq!(fixed, if k == 4 { 4 } else { 0 });
        }
    }

    proptest! {
        #[test]
        fn inverse_composes_to_identity(seed in 0usize..24) {
            let all = all_permutations(4).unwrap();
            let q = &all[seed];
            prop_assert!(q.compose(&q.inverse()).unwrap().is_identity());
            prop_assert!(q.inverse().compose(q).unwrap().is_identity());
        }

        #[test]
        fn act_on_row_is_rearrangement(seed in 0usize..24, c in proptest::collection::vec(0i64..100, 4)) {
            let all = all_permutations(4).unwrap();
            let q = &all[seed];
            let mut lhs = act_on_row(&c, q).unwrap();
            let mut rhs = c.clone();
            lhs.sort_unstable();
            rhs.sort_unstable();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
