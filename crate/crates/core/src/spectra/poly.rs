//! Characteristic polynomials and synthetic division.
//!
//! Rational input goes through Faddeev–LeVerrier in widened (`i128`)
//! rational arithmetic, so coefficients are exact; floating input uses the
//! same recurrence in `f64`. Coefficients are stored leading-first and the
//! polynomial is always monic.

use num_traits::{One, Zero};
use thiserror::Error;

use crate::rat::{narrow, widen, Rat, RatW};

#[derive(Debug, Error, PartialEq)]
pub enum PolyError {
    #[error("matrix is not square")]
    NotSquare,
    #[error("matrix order {0} exceeds supported bound 6")]
    TooLarge(usize),
    #[error("root finder did not converge; residual {0:e}")]
    NonConvergence(f64),
    #[error("value {0} is not a root (remainder {1})")]
    NotARoot(String, String),
}

/// Monic polynomial, coefficients leading-first: `c[0] x^d + .. + c[d]`
/// with `c[0] = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyCoeffs {
    pub coeffs: Vec<Rat>,
}

impl PolyCoeffs {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, x: Rat) -> Rat {
        self.coeffs.iter().fold(Rat::zero(), |acc, &c| acc * x + c)
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.coeffs.iter().map(|&c| crate::rat::to_f64(c)).collect()
    }
}

/// Exact characteristic polynomial `det(xI - M)` of a rational matrix.
pub fn char_poly(m: &[Vec<Rat>]) -> Result<PolyCoeffs, PolyError> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return Err(PolyError::NotSquare);
    }
    if n > 6 {
        return Err(PolyError::TooLarge(n));
    }
    let mw: Vec<Vec<RatW>> = m.iter().map(|r| r.iter().map(|&x| widen(x)).collect()).collect();
    let mut coeffs: Vec<RatW> = vec![RatW::one()];
    // Faddeev-LeVerrier: N_0 = I, c_k = -tr(M N_{k-1})/k, N_k = M N_{k-1} + c_k I
    let mut nk: Vec<Vec<RatW>> = identity_w(n);
    for k in 1..=n {
        let prod = mat_mul(&mw, &nk);
        let tr: RatW = (0..n).map(|i| prod[i][i]).sum();
        let ck = -tr / RatW::from_integer(k as i128);
        coeffs.push(ck);
        nk = prod;
        for i in 0..n {
            nk[i][i] += ck;
        }
    }
    Ok(PolyCoeffs { coeffs: coeffs.into_iter().map(narrow).collect() })
}

/// Characteristic polynomial of a floating matrix, leading-first, monic.
pub fn char_poly_f64(m: &[Vec<f64>]) -> Result<Vec<f64>, PolyError> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return Err(PolyError::NotSquare);
    }
    if n > 6 {
        return Err(PolyError::TooLarge(n));
    }
    let mut coeffs = vec![1.0f64];
    let mut nk: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| f64::from(i == j)).collect()).collect();
    for k in 1..=n {
        let prod: Vec<Vec<f64>> = (0..n)
            .map(|i| (0..n).map(|j| (0..n).map(|l| m[i][l] * nk[l][j]).sum()).collect())
            .collect();
        let tr: f64 = (0..n).map(|i| prod[i][i]).sum();
        let ck = -tr / k as f64;
        coeffs.push(ck);
        nk = prod;
        for (i, row) in nk.iter_mut().enumerate() {
            row[i] += ck;
        }
    }
    Ok(coeffs)
}

fn identity_w(n: usize) -> Vec<Vec<RatW>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { RatW::one() } else { RatW::zero() }).collect())
        .collect()
}

fn mat_mul(a: &[Vec<RatW>], b: &[Vec<RatW>]) -> Vec<Vec<RatW>> {
    let n = a.len();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect())
        .collect()
}

/// Exact determinant of a rational matrix.
pub fn det(m: &[Vec<Rat>]) -> Rat {
    let n = m.len();
    let mut a: Vec<Vec<RatW>> = m.iter().map(|r| r.iter().map(|&x| widen(x)).collect()).collect();
    let mut sign = RatW::one();
    let mut prod = RatW::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else { return Rat::zero() };
        if p != c {
            a.swap(p, c);
            sign = -sign;
        }
        let piv = a[c][c];
        prod *= piv;
        for i in c + 1..n {
            if !a[i][c].is_zero() {
                let f = a[i][c] / piv;
                let rr = a[c].clone();
                for (x, y) in a[i].iter_mut().zip(rr.iter()) {
                    *x -= f * *y;
                }
            }
        }
    }
    narrow(sign * prod)
}

/// Divide out an exact root by synthetic division; the remainder must be
/// exactly zero.
pub fn deflate_exact(p: &PolyCoeffs, root: Rat) -> Result<PolyCoeffs, PolyError> {
    let mut out = Vec::with_capacity(p.coeffs.len() - 1);
    let mut acc = Rat::zero();
    for &c in &p.coeffs {
        acc = acc * root + c;
        out.push(acc);
    }
    let rem = out.pop().unwrap();
    if !rem.is_zero() {
        return Err(PolyError::NotARoot(crate::rat::rat_str(root), crate::rat::rat_str(rem)));
    }
    Ok(PolyCoeffs { coeffs: out })
}

/// Synthetic division in floats; returns (quotient, remainder).
pub fn deflate_f64(p: &[f64], root: f64) -> (Vec<f64>, f64) {
    let mut out = Vec::with_capacity(p.len() - 1);
    let mut acc = 0.0f64;
    for &c in p {
        acc = acc * root + c;
        out.push(acc);
    }
    let rem = out.pop().unwrap();
    (out, rem)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    fn j_over_4() -> Vec<Vec<Rat>> {
        vec![vec![rat(1, 4); 4]; 4]
    }

    #[test]
    fn char_poly_of_rank_one_projector() {
        // J/4 has characteristic polynomial x^4 - x^3
        let p = char_poly(&j_over_4()).unwrap();
        assert_eq!(p.coeffs, vec![rat(1, 1), rat(-1, 1), rat(0, 1), rat(0, 1), rat(0, 1)]);
    }

    #[test]
    fn char_poly_of_identity() {
        // (x-1)^4 = x^4 - 4x^3 + 6x^2 - 4x + 1
        let id: Vec<Vec<Rat>> =
            (0..4).map(|i| (0..4).map(|j| rat((i == j) as i64, 1)).collect()).collect();
        let p = char_poly(&id).unwrap();
        assert_eq!(p.coeffs, vec![rat(1, 1), rat(-4, 1), rat(6, 1), rat(-4, 1), rat(1, 1)]);
    }

    #[test]
    fn deflation_removes_known_root() {
        let p = char_poly(&j_over_4()).unwrap();
        let q = deflate_exact(&p, rat(1, 1)).unwrap();
        assert_eq!(q.coeffs, vec![rat(1, 1), rat(0, 1), rat(0, 1), rat(0, 1)]);
        assert!(deflate_exact(&p, rat(1, 2)).is_err());
    }

    #[test]
    fn float_char_poly_close_to_exact() {
        let m = j_over_4();
        let mf: Vec<Vec<f64>> =
            m.iter().map(|r| r.iter().map(|&x| crate::rat::to_f64(x)).collect()).collect();
        let pf = char_poly_f64(&mf).unwrap();
        let pe = char_poly(&m).unwrap().to_f64();
        for (a, b) in pf.iter().zip(pe.iter()) {
            assert!((a - b).abs() < 1e-14);
        }
    }

    #[test]
    fn det_examples() {
        assert_eq!(det(&j_over_4()), rat(0, 1));
        let m = vec![vec![rat(2, 1), rat(1, 1)], vec![rat(1, 1), rat(1, 1)]];
        assert_eq!(det(&m), rat(1, 1));
    }
}
