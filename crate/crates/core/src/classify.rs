//! The classification pipeline: enumerate all `(n!)^(n-1)` tuples, solve
//! each pattern, discard the trivial and degenerate ones, group the rest by
//! conjugation-invariant canonical key, and label the classes against the
//! published tables.
//!
//! For order 4 this yields the 37 classes `C1`..`C37`; orders 2 and 3 yield
//! one and two classes (`U1`, `U2`).

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use std::collections::BTreeMap;
use thiserror::Error;

use crate::affine::{
    conjugate_family, conjugate_normal_form, ds_solve, forced_symbol_identifications,
    normal_form_contains, subspace_normal_form, AffineFamily, FamilyOutcome, NormalForm,
    PatternMatrix,
};
use crate::perm::{all_permutations, PermError, Permutation};
use crate::rat::rat_str;

#[derive(Debug, Error)]
pub enum ClassifyError {
    #[error("classification supports n in 2..=4, got {0}")]
    UnsupportedOrder(usize),
    #[error("no catalog class matches the reference tuple {0}")]
    UnmatchedFixture(String),
    #[error("reference tuples {0} and {1} map to the same class")]
    DuplicateFixtureMatch(String, String),
    #[error("catalog has {found} classes but {expected} reference tuples")]
    ClassCountMismatch { found: usize, expected: usize },
    #[error("conjugator {conjugator} does not map class {id} onto tuple {other}")]
    ConjugatorCheckFailed { id: String, other: String, conjugator: String },
    #[error("degenerate tuple {0} is not contained in any retained class")]
    SubsumptionUnverified(String),
    #[error("equal-dimension classes {0} and {1} are conjugate-contained in each other")]
    OverlappingClasses(String, String),
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Affine(#[from] crate::affine::AffineError),
}

/// One cogredient class of the catalog.
#[derive(Debug, Clone)]
pub struct CogredientClass {
    /// `C1`..`C37` for order 4 (table labels), `U<k>` otherwise.
    pub id: String,
    pub representative_tuple: Vec<Permutation>,
    pub pattern: PatternMatrix,
    pub family: AffineFamily,
    pub dimension: usize,
    /// Serialized lexicographic minimum of the normal form over all
    /// conjugations; identical for every tuple assigned to the class.
    pub canonical_key: String,
    pub member_tuple_count: usize,
    pub(crate) key_nf: NormalForm,
}

/// The full class atlas for one order.
#[derive(Debug, Clone)]
pub struct Catalog {
    pub n: usize,
    pub classes: Vec<CogredientClass>,
    pub discarded_trivial: usize,
    pub discarded_subsumed: usize,
}

/// Outcome of looking a tuple up against a catalog.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TupleOutcome {
    Class(String),
    Trivial,
    SubsumedInto(String),
}

/// Representative tuples of the six Latin (no column repeat) classes, with
/// the cogredient pairs and their conjugators from the published table.
/// Each row: (representative, [(other tuple, conjugator X)]) where
/// `Xᵀ · A · X` lands in the other tuple's class for the representative `A`.
pub const LATIN_CLASS_TABLE: &[(&str, &[(&str, &str)])] = &[
    ("(12)(34),(1324),(1423)", &[
        ("(1243),(1342),(14)(23)", "(1)(24)(3)"),
        ("(1234),(13)(24),(1432)", "(1)(23)(4)"),
    ]),
    ("(12)(34),(14)(23),(13)(24)", &[
        ("(13)(24),(12)(34),(14)(23)", "(1)(24)(3)"),
        ("(14)(23),(13)(24),(12)(34)", "(1)(23)(4)"),
    ]),
    ("(1432),(1234),(13)(24)", &[
        ("(1342),(14)(23),(1243)", "(1)(2)(34)"),
        ("(1243),(14)(23),(1342)", "(1324)"),
        ("(13)(24),(1432),(1234)", "(1)(24)(3)"),
        ("(13)(24),(1234),(1432)", "(1234)"),
        ("(1423),(12)(34),(1324)", "(1)(243)"),
        ("(1423),(1324),(12)(34)", "(1243)"),
        ("(1234),(1432),(13)(24)", "(13)(24)"),
        ("(1324),(12)(34),(1423)", "(123)(4)"),
        ("(14)(23),(1243),(1342)", "(1)(234)"),
        ("(1324),(1423),(12)(34)", "(1)(23)(4)"),
        ("(14)(23),(1342),(1243)", "(124)(3)"),
    ]),
    ("(13)(24),(14)(23),(12)(34)", &[("(14)(23),(12)(34),(13)(24)", "(1)(23)(4)")]),
    ("(12)(34),(13)(24),(14)(23)", &[]),
    ("(12)(34),(1423),(1324)", &[
        ("(1432),(13)(24),(1234)", "(1)(23)(4)"),
        ("(1342),(1243),(14)(23)", "(1)(24)(3)"),
    ]),
];

/// Representative tuples of the repeated-symbol classes `C7`..`C37`.
pub const REPEAT_CLASS_TABLE: &[&str] = &[
    "(1)(2)(3)(4),(1)(2)(34),(1)(2)(34)",  // C7
    "(1)(2)(34),(1)(2)(34),(1)(2)(3)(4)",  // C8
    "(1)(2)(34),(1)(243),(1)(24)(3)",      // C9
    "(1)(2)(34),(1)(24)(3),(1)(243)",      // C10
    "(1)(24)(3),(1)(2)(34),(1)(243)",      // C11
    "(1)(243),(1)(2)(34),(1)(24)(3)",      // C12
    "(1)(24)(3),(1)(243),(1)(2)(34)",      // C13
    "(1)(243),(1)(24)(3),(1)(2)(34)",      // C14
    "(1)(2)(34),(1)(24)(3),(142)(3)",      // C15
    "(1)(2)(34),(1)(243),(1432)",          // C16
    "(1)(234),(1)(24)(3),(14)(2)(3)",      // C17
    "(1234),(14)(2)(3),(124)(3)",          // C18
    "(1)(24)(3),(1)(2)(34),(142)(3)",      // C19
    "(1)(2)(34),(142)(3),(1)(24)(3)",      // C20
    "(1)(2)(34),(1432),(1)(243)",          // C21
    "(14)(2)(3),(1234),(124)(3)",          // C22
    "(1)(243),(1)(2)(34),(1432)",          // C23
    "(1)(24)(3),(1)(234),(14)(2)(3)",      // C24
    "(1)(234),(14)(2)(3),(1)(24)(3)",      // C25
    "(1234),(124)(3),(14)(2)(3)",          // C26
    "(1)(2)(3)(4),(12)(34),(12)(34)",      // C27
    "(12)(34),(12)(34),(1)(2)(3)(4)",      // C28
    "(1)(2)(34),(12)(3)(4),(12)(34)",      // C29
    "(12)(34),(12)(3)(4),(1)(2)(34)",      // C30
    "(1)(234),(12)(34),(132)(4)",          // C31
    "(1)(243),(123)(4),(13)(24)",          // C32
    "(132)(4),(12)(34),(1)(234)",          // C33
    "(1)(23)(4),(12)(34),(1342)",          // C34
    "(1)(23)(4),(1243),(13)(24)",          // C35
    "(1342),(12)(34),(1)(23)(4)",          // C36
    "(1)(23)(4),(1342),(12)(34)",          // C37
];

/// Parse a comma-separated tuple of cycle-notation permutations.
pub fn parse_tuple(s: &str, n: usize) -> Result<Vec<Permutation>, PermError> {
    // split at commas that follow a closing cycle
    let mut parts = Vec::new();
    let bytes = s.as_bytes();
    let mut start = 0usize;
    for i in 0..bytes.len() {
        if bytes[i] == b',' && i > 0 && bytes[i - 1] == b')' {
            parts.push(&s[start..i]);
            start = i + 1;
        }
    }
    parts.push(&s[start..]);
    parts.into_iter().map(|p| Permutation::parse_cycles(p.trim(), n)).collect()
}

fn tuple_string(tuple: &[Permutation]) -> String {
    tuple.iter().map(|p| p.cycles_string()).collect::<Vec<_>>().join(",")
}

/// Reference tuples in catalog order for a given order.
fn fixture_tuples(n: usize) -> Result<Vec<(String, Vec<Permutation>)>, ClassifyError> {
    Ok(match n {
        2 => vec![("U1".to_string(), parse_tuple("(12)", 2)?)],
        3 => vec![
            ("U1".to_string(), parse_tuple("(132),(123)", 3)?),
            ("U2".to_string(), parse_tuple("(123),(132)", 3)?),
        ],
        4 => {
            let mut v = Vec::with_capacity(37);
            for (i, (rep, _)) in LATIN_CLASS_TABLE.iter().enumerate() {
                v.push((format!("C{}", i + 1), parse_tuple(rep, 4)?));
            }
            for (i, rep) in REPEAT_CLASS_TABLE.iter().enumerate() {
                v.push((format!("C{}", i + 7), parse_tuple(rep, 4)?));
            }
            v
        }
        other => return Err(ClassifyError::UnsupportedOrder(other)),
    })
}

/// Lexicographic minimum of the family's normal form over all conjugations.
pub fn canonical_key(family: &AffineFamily, conjugators: &[Permutation]) -> NormalForm {
    conjugators
        .iter()
        .map(|x| conjugate_normal_form(family, x))
        .min()
        .expect("at least one conjugator")
}

/// Classify all `(n!)^(n-1)` tuples for `n` in `{2, 3, 4}`.
pub fn classify(n: usize) -> Result<Catalog, ClassifyError> {
    if !(2..=4).contains(&n) {
        return Err(ClassifyError::UnsupportedOrder(n));
    }
    let perms = all_permutations(n)?;
    let count = perms.len().pow(n as u32 - 1);

    enum Outcome {
        Trivial,
        Degenerate(AffineFamily),
        Kept(NormalForm),
    }

    let outcomes: Vec<Outcome> = (0..count)
        .into_par_iter()
        .map(|idx| {
            let tuple = tuple_at(&perms, n, idx);
            let pat = PatternMatrix::build(&tuple).expect("uniform orders");
            match ds_solve(&pat) {
                FamilyOutcome::TrivialAllQuarter => Outcome::Trivial,
                out @ FamilyOutcome::Nontrivial(_) => {
                    let forced = forced_symbol_identifications(&out).expect("nontrivial");
                    let fam = match out {
                        FamilyOutcome::Nontrivial(f) => f,
                        _ => unreachable!(),
                    };
                    if forced.is_empty() {
                        Outcome::Kept(canonical_key(&fam, &perms))
                    } else {
                        Outcome::Degenerate(fam)
                    }
                }
            }
        })
        .collect();

    let mut groups: BTreeMap<NormalForm, usize> = BTreeMap::new();
    let mut trivial = 0usize;
    let mut degenerates: Vec<&AffineFamily> = Vec::new();
    for o in &outcomes {
        match o {
            Outcome::Trivial => trivial += 1,
            Outcome::Degenerate(f) => degenerates.push(f),
            Outcome::Kept(key) => *groups.entry(key.clone()).or_insert(0) += 1,
        }
    }

    // label groups against the published representative tuples
    let fixtures = fixture_tuples(n)?;
    if groups.len() != fixtures.len() {
        return Err(ClassifyError::ClassCountMismatch { found: groups.len(), expected: fixtures.len() });
    }
    let mut classes = Vec::with_capacity(fixtures.len());
    let mut claimed: BTreeMap<NormalForm, String> = BTreeMap::new();
    for (id, tuple) in fixtures {
        let pattern = PatternMatrix::build(&tuple)?;
        let fam = match ds_solve(&pattern) {
            FamilyOutcome::Nontrivial(f) => f,
            FamilyOutcome::TrivialAllQuarter => {
                return Err(ClassifyError::UnmatchedFixture(tuple_string(&tuple)))
            }
        };
        let key = canonical_key(&fam, &perms);
        let Some(&member_count) = groups.get(&key) else {
            return Err(ClassifyError::UnmatchedFixture(tuple_string(&tuple)));
        };
        if let Some(prev) = claimed.get(&key) {
            return Err(ClassifyError::DuplicateFixtureMatch(prev.clone(), id));
        }
        claimed.insert(key.clone(), id.clone());
        classes.push(CogredientClass {
            id,
            dimension: fam.dimension(),
            canonical_key: key.serialize_string(),
            member_tuple_count: member_count,
            representative_tuple: tuple,
            pattern,
            family: fam,
            key_nf: key,
        });
    }

    // verify each degenerate family specializes into some retained class
    let conj_nfs: Vec<(usize, NormalForm)> = classes
        .iter()
        .flat_map(|cls| {
            perms.iter().map(move |x| {
                let conj = conjugate_family(&cls.family, x).expect("same order");
                (cls.family.dimension(), subspace_normal_form(&conj))
            })
        })
        .collect();
    let subsumed = degenerates.len();
    let all_ok = degenerates.par_iter().all(|fam| {
        conj_nfs
            .iter()
            .any(|(dim, nf)| *dim >= fam.dimension() && normal_form_contains(nf, fam))
    });
    if !all_ok {
        return Err(ClassifyError::SubsumptionUnverified("see degenerate set".into()));
    }

    // classes of equal dimension must not contain one another
    for a in &classes {
        for b in &classes {
            if a.id != b.id && a.dimension == b.dimension {
                let hit = perms.iter().any(|x| {
                    let conj = conjugate_family(&b.family, x).expect("same order");
                    let nf = subspace_normal_form(&conj);
                    normal_form_contains(&nf, &a.family)
                });
                if hit {
                    return Err(ClassifyError::OverlappingClasses(a.id.clone(), b.id.clone()));
                }
            }
        }
    }

    Ok(Catalog { n, classes, discarded_trivial: trivial, discarded_subsumed: subsumed })
}

fn tuple_at(perms: &[Permutation], n: usize, mut idx: usize) -> Vec<Permutation> {
    let mut tuple = Vec::with_capacity(n - 1);
    for _ in 0..n - 1 {
        tuple.push(perms[idx % perms.len()].clone());
        idx /= perms.len();
    }
    tuple.reverse();
    tuple
}

/// Report from re-verifying the catalog against the published tables.
#[derive(Debug, Clone, Serialize)]
pub struct FixtureReport {
    pub classes_matched: usize,
    pub conjugators_checked: usize,
}

/// Verify that every published representative tuple maps to a distinct
/// catalog class and that each listed conjugator maps the representative's
/// family onto its row partner's family exactly.
pub fn match_paper_fixtures(catalog: &Catalog) -> Result<FixtureReport, ClassifyError> {
    if catalog.n != 4 {
        return Err(ClassifyError::UnsupportedOrder(catalog.n));
    }
    let perms = all_permutations(4)?;
    let fixtures = fixture_tuples(4)?;
    if catalog.classes.len() != fixtures.len() {
        return Err(ClassifyError::ClassCountMismatch {
            found: catalog.classes.len(),
            expected: fixtures.len(),
        });
    }
    let mut seen: BTreeMap<String, String> = BTreeMap::new();
    for (id, tuple) in &fixtures {
        let pattern = PatternMatrix::build(tuple)?;
        let fam = match ds_solve(&pattern) {
            FamilyOutcome::Nontrivial(f) => f,
            FamilyOutcome::TrivialAllQuarter => {
                return Err(ClassifyError::UnmatchedFixture(tuple_string(tuple)))
            }
        };
        let key = canonical_key(&fam, &perms).serialize_string();
        let Some(cls) = catalog.classes.iter().find(|c| c.canonical_key == key) else {
            return Err(ClassifyError::UnmatchedFixture(tuple_string(tuple)));
        };
        if let Some(prev) = seen.insert(key, id.clone()) {
            return Err(ClassifyError::DuplicateFixtureMatch(prev, id.clone()));
        }
        debug_assert_eq!(&cls.id, id);
    }

    // conjugator rows: Xᵀ (rep family) X must equal the row partner's family
    let mut checked = 0usize;
    for (i, (rep, others)) in LATIN_CLASS_TABLE.iter().enumerate() {
        let id = format!("C{}", i + 1);
        let rep_fam = solved_family(rep)?;
        for (other, conj) in *others {
            let x = Permutation::parse_cycles(conj, 4)?;
            let other_fam = solved_family(other)?;
            let conjugated = conjugate_family(&rep_fam, &x).expect("order 4");
            if subspace_normal_form(&conjugated) != subspace_normal_form(&other_fam) {
                return Err(ClassifyError::ConjugatorCheckFailed {
                    id,
                    other: other.to_string(),
                    conjugator: conj.to_string(),
                });
            }
            checked += 1;
        }
    }
    Ok(FixtureReport { classes_matched: fixtures.len(), conjugators_checked: checked })
}

fn solved_family(tuple_str: &str) -> Result<AffineFamily, ClassifyError> {
    let tuple = parse_tuple(tuple_str, 4)?;
    let pattern = PatternMatrix::build(&tuple)?;
    match ds_solve(&pattern) {
        FamilyOutcome::Nontrivial(f) => Ok(f),
        FamilyOutcome::TrivialAllQuarter => Err(ClassifyError::UnmatchedFixture(tuple_str.into())),
    }
}

impl Catalog {
    pub fn class(&self, id: &str) -> Option<&CogredientClass> {
        self.classes.iter().find(|c| c.id == id)
    }

    /// Deterministic assignment of a tuple consistent with `classify`.
    pub fn class_of(&self, tuple: &[Permutation]) -> Result<TupleOutcome, ClassifyError> {
        let pattern = PatternMatrix::build(tuple).map_err(|_| ClassifyError::UnsupportedOrder(0))?;
        let out = ds_solve(&pattern);
        let fam = match &out {
            FamilyOutcome::TrivialAllQuarter => return Ok(TupleOutcome::Trivial),
            FamilyOutcome::Nontrivial(f) => f,
        };
        let perms = all_permutations(self.n)?;
        if forced_symbol_identifications(&out).expect("nontrivial").is_empty() {
            let key = canonical_key(fam, &perms);
            for cls in &self.classes {
                if cls.key_nf == key {
                    return Ok(TupleOutcome::Class(cls.id.clone()));
                }
            }
            Err(ClassifyError::UnmatchedFixture(tuple_string(tuple)))
        } else {
            for cls in &self.classes {
                if cls.dimension < fam.dimension() {
                    continue;
                }
                for x in &perms {
                    let nf = subspace_normal_form(&conjugate_family(&cls.family, x).expect("same order"));
                    if normal_form_contains(&nf, fam) {
                        return Ok(TupleOutcome::SubsumedInto(cls.id.clone()));
                    }
                }
            }
            Err(ClassifyError::SubsumptionUnverified(tuple_string(tuple)))
        }
    }

    /// Catalog JSON in the documented schema.
    pub fn to_json(&self) -> Value {
        let classes: Vec<Value> = self
            .classes
            .iter()
            .map(|c| {
                let base: Vec<Vec<String>> = c
                    .family
                    .basepoint
                    .iter()
                    .map(|row| row.iter().map(|&x| rat_str(x)).collect())
                    .collect();
                let span: Vec<Vec<Vec<String>>> = c
                    .family
                    .span
                    .iter()
                    .map(|d| d.iter().map(|row| row.iter().map(|&x| rat_str(x)).collect()).collect())
                    .collect();
                let boxes: Vec<Vec<String>> = c
                    .family
                    .param_box()
                    .iter()
                    .map(|(lo, hi)| vec![rat_str(*lo), rat_str(*hi)])
                    .collect();
                json!({
                    "id": c.id,
                    "tuple": c.representative_tuple.iter().map(|p| p.cycles_string()).collect::<Vec<_>>(),
                    "dimension": c.dimension,
                    "member_tuples": c.member_tuple_count,
                    "pattern": c.pattern.grid_one_based(),
                    "basepoint": base,
                    "span": span,
                    "param_names": c.family.free_params.iter().map(|k| format!("c{}", k + 1)).collect::<Vec<_>>(),
                    "param_box": boxes,
                    "canonical_key": c.canonical_key,
                })
            })
            .collect();
        json!({
            "n": self.n,
            "classes": classes,
            "discarded": { "trivial": self.discarded_trivial, "subsumed": self.discarded_subsumed },
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classify_small_orders() {
        let cat = classify(2).unwrap();
        assert_eq!(cat.classes.len(), 1);
        assert_eq!(cat.classes[0].dimension, 1);
        assert_eq!(cat.discarded_trivial, 1);
        assert_eq!(cat.discarded_subsumed, 0);

        let cat = classify(3).unwrap();
        assert_eq!(cat.classes.len(), 2);
        assert!(cat.classes.iter().all(|c| c.dimension == 2));
        assert_eq!(cat.discarded_trivial, 16);
        assert_eq!(cat.discarded_subsumed, 18);
        assert_eq!(cat.classes[0].id, "U1");
        // first class is the one generated by ((132),(123))
        let t = parse_tuple("(132),(123)", 3).unwrap();
        assert_eq!(cat.class_of(&t).unwrap(), TupleOutcome::Class("U1".into()));
    }

    #[test]
    fn classify_rejects_bad_order() {
        assert!(classify(5).is_err());
        assert!(classify(1).is_err());
    }

    #[test]
    fn class_of_outcomes_for_order_three() {
        let cat = classify(3).unwrap();
        let id3 = Permutation::identity(3);
        assert_eq!(cat.class_of(&[id3.clone(), id3]).unwrap(), TupleOutcome::Trivial);
    }
}
