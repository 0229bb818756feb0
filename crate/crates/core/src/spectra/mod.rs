//! Characteristic polynomials, root finding, closed-form spectra per class,
//! and the cross-verification between them.

pub mod closed;
pub mod poly;
pub mod roots;

pub use closed::{
    closed_form_spectrum, formula_member_matrix, printed_char_poly, sample_params, verify_class,
    ClosedForm, SpectraError, VerifyReport, NO_CLOSED_FORM,
};
pub use poly::{char_poly, char_poly_f64, det, PolyCoeffs, PolyError};
pub use roots::{
    eigenvalues_exact, eigenvalues_f64, poly_roots, spectrum_distance, Spectrum,
};
