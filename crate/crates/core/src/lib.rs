//! Classification and eigenvalue-region analysis of permutative doubly
//! stochastic (PDS) matrices of small order.
//!
//! A permutative matrix has every row equal to a rearrangement of its first
//! row; a PDS matrix is additionally doubly stochastic. This crate
//!
//! - enumerates the symbolic patterns `M(c; P_1..P_{n-1})` for `n <= 4`,
//!   solves their doubly stochastic constraints in exact rational arithmetic,
//!   and groups them into cogredient (permutation-similarity) classes,
//! - evaluates known closed-form spectra per class and cross-checks them
//!   against an exact characteristic-polynomial eigensolver,
//! - samples per-class eigenvalue regions, certifies excluded segments, and
//!   builds the witness matrices that realize points of the region.
//!
//! The catalog for order 4 has 37 classes, labelled `C1`..`C37`.

pub mod affine;
pub mod classify;
pub mod perm;
pub mod rat;
pub mod region;
pub mod spectra;

pub use affine::{AffineFamily, AffineForm, FamilyOutcome, NormalForm, PatternMatrix};
pub use classify::{Catalog, CogredientClass, TupleOutcome};
pub use perm::{CycleType, Permutation};
pub use rat::Rat;
pub use spectra::Spectrum;
