//! Complex root finding for the small polynomials that come out of
//! characteristic-polynomial deflation.
//!
//! Simple roots go through Aberth–Ehrlich simultaneous iteration started on
//! a perturbed circle, followed by a Newton polish. Rational polynomials
//! with multiple roots never reach the iteration: the discriminant test is
//! exact and repeated roots of degree <= 3 have rational closed forms.

use num_complex::Complex64;
use num_traits::Zero;

use super::poly::{deflate_exact, deflate_f64, PolyCoeffs, PolyError};
use crate::rat::{rat, to_f64, Rat};

/// Multiset of eigenvalues with conjugate pairs identified.
#[derive(Debug, Clone)]
pub struct Spectrum {
    pub values: Vec<Complex64>,
    /// Index pairs `(i, j)` with `values[j] ≈ conj(values[i])`, `im > 0` at `i`.
    pub conjugate_pairs: Vec<(usize, usize)>,
}

impl Spectrum {
    pub fn new(mut values: Vec<Complex64>) -> Self {
        values.sort_by(|a, b| {
            (a.re, a.im).partial_cmp(&(b.re, b.im)).expect("finite eigenvalues")
        });
        let mut pairs = Vec::new();
        let mut used = vec![false; values.len()];
        for i in 0..values.len() {
            if used[i] || values[i].im <= 1e-12 {
                continue;
            }
            if let Some(j) = (0..values.len())
                .filter(|&j| !used[j] && j != i)
                .min_by(|&a, &b| {
                    let da = (values[a] - values[i].conj()).norm();
                    let db = (values[b] - values[i].conj()).norm();
                    da.partial_cmp(&db).unwrap()
                })
            {
                if (values[j] - values[i].conj()).norm() < 1e-9 {
                    used[i] = true;
                    used[j] = true;
                    pairs.push((i, j));
                }
            }
        }
        Spectrum { values, conjugate_pairs: pairs }
    }

    pub fn spectral_radius(&self) -> f64 {
        self.values.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn min_distance_to(&self, z: Complex64) -> f64 {
        self.values.iter().map(|v| (v - z).norm()).fold(f64::INFINITY, f64::min)
    }

    pub fn contains(&self, z: Complex64, tol: f64) -> bool {
        self.min_distance_to(z) <= tol
    }

    pub fn trace_sum(&self) -> Complex64 {
        self.values.iter().sum()
    }
}

/// Minimum over matchings of the maximum pointwise distance between two
/// equal-size eigenvalue multisets. Exhaustive over permutations; fine for
/// the orders this crate handles.
pub fn spectrum_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    assert_eq!(a.len(), b.len(), "spectra must have equal size");
    let n = a.len();
    let mut idx: Vec<usize> = (0..n).collect();
    let mut best = f64::INFINITY;
    permute(&mut idx, 0, &mut |perm| {
        let d = (0..n).map(|i| (a[i] - b[perm[i]]).norm()).fold(0.0, f64::max);
        if d < best {
            best = d;
        }
    });
    best
}

fn permute(idx: &mut [usize], k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == idx.len() {
        visit(idx);
        return;
    }
    for i in k..idx.len() {
        idx.swap(k, i);
        permute(idx, k + 1, visit);
        idx.swap(k, i);
    }
}

fn poly_eval(c: &[Complex64], z: Complex64) -> Complex64 {
    c.iter().fold(Complex64::zero(), |acc, &ck| acc * z + ck)
}

fn poly_derivative(c: &[Complex64]) -> Vec<Complex64> {
    let d = c.len() - 1;
    c[..d].iter().enumerate().map(|(i, &ck)| ck * (d - i) as f64).collect()
}

/// Aberth–Ehrlich iteration with Newton polish. `coeffs` leading-first,
/// any nonzero leading coefficient.
pub fn aberth(coeffs: &[f64], tol: f64) -> Result<Vec<Complex64>, PolyError> {
    let c: Vec<Complex64> = coeffs.iter().map(|&x| Complex64::new(x / coeffs[0], 0.0)).collect();
    aberth_complex(&c, tol)
}

pub fn aberth_complex(c: &[Complex64], tol: f64) -> Result<Vec<Complex64>, PolyError> {
    let deg = c.len() - 1;
    if deg == 0 {
        return Ok(vec![]);
    }
    let dc = poly_derivative(c);
    // Cauchy-style radius and perturbed-circle start
    let radius = 1.0 + c.iter().skip(1).map(|z| z.norm()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..deg)
        .map(|k| {
            let ang = 2.0 * std::f64::consts::PI * (k as f64 + 0.353) / deg as f64 + 0.4;
            Complex64::from_polar(radius * (0.5 + 0.5 * (k as f64 + 1.0) / deg as f64), ang)
        })
        .collect();
    let mut converged = false;
    for _ in 0..300 {
        let mut max_step = 0.0f64;
        for i in 0..deg {
            let p = poly_eval(c, z[i]);
            let dp = poly_eval(&dc, z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let newton = if dp.norm() > 0.0 { p / dp } else { Complex64::new(1e-3, 1e-3) };
            let mut sum = Complex64::zero();
            for j in 0..deg {
                if j != i {
                    sum += (z[i] - z[j]).finv();
                }
            }
            let denom = Complex64::new(1.0, 0.0) - newton * sum;
            let step = if denom.norm() > 1e-300 { newton / denom } else { newton };
            z[i] -= step;
            max_step = max_step.max(step.norm() / (1.0 + z[i].norm()));
        }
        if max_step < 1e-14 {
            converged = true;
            break;
        }
    }
    // Newton polish
    for zi in z.iter_mut() {
        for _ in 0..3 {
            let p = poly_eval(c, *zi);
            let dp = poly_eval(&dc, *zi);
            if dp.norm() > 1e-300 {
                *zi -= p / dp;
            }
        }
    }
    let scale = c.iter().map(|x| x.norm()).fold(0.0, f64::max);
    let residual = z.iter().map(|&zi| poly_eval(c, zi).norm()).fold(0.0, f64::max);
    if !converged && residual > tol * scale.max(1.0) {
        return Err(PolyError::NonConvergence(residual));
    }
    Ok(z)
}

/// Pull conjugate-symmetric roots exactly onto the real axis / into pairs.
/// Valid only for polynomials with real coefficients.
pub fn symmetrize_conjugates(roots: &mut [Complex64]) {
    let n = roots.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| roots[b].im.abs().partial_cmp(&roots[a].im.abs()).unwrap());
    let mut done = vec![false; n];
    for &i in &order {
        if done[i] {
            continue;
        }
        let zi = roots[i];
        if zi.im.abs() <= 1e-9 * (1.0 + zi.norm()) {
            roots[i] = Complex64::new(zi.re, 0.0);
            done[i] = true;
            continue;
        }
        let partner = (0..n).filter(|&j| !done[j] && j != i).min_by(|&a, &b| {
            ((roots[a] - zi.conj()).norm()).partial_cmp(&(roots[b] - zi.conj()).norm()).unwrap()
        });
        match partner {
            Some(j) if (roots[j] - zi.conj()).norm() <= 1e-6 * (1.0 + zi.norm()) => {
                let avg = (zi + roots[j].conj()) / 2.0;
                roots[i] = avg;
                roots[j] = avg.conj();
                done[i] = true;
                done[j] = true;
            }
            _ => {
                done[i] = true;
            }
        }
    }
}

/// Roots of an exact rational polynomial of degree <= 3, with repeated
/// roots resolved exactly through the discriminant.
pub fn rational_roots(p: &PolyCoeffs) -> Result<Vec<Complex64>, PolyError> {
    match p.degree() {
        0 => Ok(vec![]),
        1 => Ok(vec![Complex64::new(to_f64(-p.coeffs[1]), 0.0)]),
        2 => {
            let (b, c) = (p.coeffs[1], p.coeffs[2]);
            let disc = b * b - rat(4, 1) * c;
            if disc.is_zero() {
                let r = to_f64(-b / rat(2, 1));
                return Ok(vec![Complex64::new(r, 0.0); 2]);
            }
            let bf = to_f64(b);
            let df = to_f64(disc);
            if df >= 0.0 {
                // stable real quadratic
                let s = df.sqrt();
                let q = -(bf + bf.signum() * s) / 2.0;
                let r1 = if q != 0.0 { to_f64(c) / q } else { 0.0 };
                Ok(vec![Complex64::new(q, 0.0), Complex64::new(r1, 0.0)])
            } else {
                let re = -bf / 2.0;
                let im = (-df).sqrt() / 2.0;
                Ok(vec![Complex64::new(re, im), Complex64::new(re, -im)])
            }
        }
        3 => {
            let (a, b, c) = (p.coeffs[1], p.coeffs[2], p.coeffs[3]);
            let disc = rat(18, 1) * a * b * c - rat(4, 1) * a * a * a * c + a * a * b * b
                - rat(4, 1) * b * b * b
                - rat(27, 1) * c * c;
            if !disc.is_zero() {
                let mut roots = aberth(&p.to_f64(), 1e-12)?;
                symmetrize_conjugates(&mut roots);
                return Ok(roots);
            }
            // repeated root: p mod p' is linear with rational coefficients
            // p' = 3x^2 + 2a x + b ; remainder alpha x + beta
            let alpha = rat(2, 3) * b - rat(2, 9) * a * a;
            let beta = c - a * b / rat(9, 1);
            if alpha.is_zero() && beta.is_zero() {
                let r = to_f64(-a / rat(3, 1));
                return Ok(vec![Complex64::new(r, 0.0); 3]);
            }
            if alpha.is_zero() {
                // discriminant zero forces a repeated root, so this cannot happen
                let mut roots = aberth(&p.to_f64(), 1e-12)?;
                symmetrize_conjugates(&mut roots);
                return Ok(roots);
            }
            let double = -beta / alpha;
            let simple = -a - rat(2, 1) * double;
            Ok(vec![
                Complex64::new(to_f64(double), 0.0),
                Complex64::new(to_f64(double), 0.0),
                Complex64::new(to_f64(simple), 0.0),
            ])
        }
        d => {
            // not needed for the catalog; fall back to iteration
            let mut roots = aberth(&p.to_f64(), 1e-12)?;
            symmetrize_conjugates(&mut roots);
            let _ = d;
            Ok(roots)
        }
    }
}

/// Spectrum of an exact doubly stochastic rational matrix: deflate the
/// Perron root 1 exactly, solve the rest, reinsert 1.
pub fn eigenvalues_exact(m: &[Vec<Rat>]) -> Result<Spectrum, PolyError> {
    let p = super::poly::char_poly(m)?;
    let q = deflate_exact(&p, rat(1, 1))?;
    let mut roots = rational_roots(&q)?;
    roots.push(Complex64::new(1.0, 0.0));
    Ok(Spectrum::new(roots))
}

/// Spectrum of a floating doubly stochastic matrix (row/column sums within
/// `tol` of 1): deflate 1 with a residual check, iterate on the rest.
pub fn eigenvalues_f64(m: &[Vec<f64>], tol: f64) -> Result<Spectrum, PolyError> {
    let n = m.len();
    for i in 0..n {
        let rs: f64 = (0..n).map(|j| m[i][j]).sum();
        let cs: f64 = (0..n).map(|j| m[j][i]).sum();
        if (rs - 1.0).abs() > tol || (cs - 1.0).abs() > tol {
            return Err(PolyError::NotARoot("1".into(), format!("row/col sum residual {rs}/{cs}")));
        }
    }
    let p = super::poly::char_poly_f64(m)?;
    let (q, rem) = deflate_f64(&p, 1.0);
    if rem.abs() > 1e-9 {
        return Err(PolyError::NotARoot("1".into(), format!("{rem:e}")));
    }
    let mut roots = aberth(&q, 1e-12)?;
    symmetrize_conjugates(&mut roots);
    roots.push(Complex64::new(1.0, 0.0));
    Ok(Spectrum::new(roots))
}

/// Generic entry point per the published contract: roots of an arbitrary
/// monic polynomial with residual bound `tol * scale`.
pub fn poly_roots(coeffs: &[f64], tol: f64) -> Result<Spectrum, PolyError> {
    let mut roots = aberth(coeffs, tol)?;
    symmetrize_conjugates(&mut roots);
    Ok(Spectrum::new(roots))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() < 1e-10
    }

    #[test]
    fn quartic_roots_of_unity() {
        // x^4 - 1
        let s = poly_roots(&[1.0, 0.0, 0.0, 0.0, -1.0], 1e-12).unwrap();
        for target in [
            Complex64::new(1.0, 0.0),
            Complex64::new(-1.0, 0.0),
            Complex64::new(0.0, 1.0),
            Complex64::new(0.0, -1.0),
        ] {
            assert!(s.values.iter().any(|&z| close(z, target)), "{target} missing in {:?}", s.values);
        }
        assert_eq!(s.conjugate_pairs.len(), 1);
    }

    #[test]
    fn rank_one_spectrum() {
        // x^4 - x^3 -> {1, 0, 0, 0}
        let s = poly_roots(&[1.0, -1.0, 0.0, 0.0, 0.0], 1e-12).unwrap();
        let zeros = s.values.iter().filter(|z| z.norm() < 1e-7).count();
        assert_eq!(zeros, 3);
        assert!(s.contains(Complex64::new(1.0, 0.0), 1e-10));
    }

    #[test]
    fn exact_triple_zero_from_rational_path() {
        use crate::rat::rat;
        let m = vec![vec![rat(1, 4); 4]; 4];
        let s = eigenvalues_exact(&m).unwrap();
        let zeros = s.values.iter().filter(|z| z.norm() == 0.0).count();
        assert_eq!(zeros, 3, "triple zero root must be exact, got {:?}", s.values);
    }

    #[test]
    fn exact_double_root_cubic() {
        use crate::rat::rat;
        // (x-1)(x+1)^2 = x^3 + x^2 - x - 1
        let p = PolyCoeffs { coeffs: vec![rat(1, 1), rat(1, 1), rat(-1, 1), rat(-1, 1)] };
        let mut roots = rational_roots(&p).unwrap();
        roots.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap());
        assert!(close(roots[0], Complex64::new(-1.0, 0.0)));
        assert!(close(roots[1], Complex64::new(-1.0, 0.0)));
        assert!(close(roots[2], Complex64::new(1.0, 0.0)));
    }

    #[test]
    fn spectrum_distance_matches_optimally() {
        let a = vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)];
        let b = vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 1e-12)];
        assert!(spectrum_distance(&a, &b) < 1e-9);
    }

    #[test]
    fn permutation_matrix_spectrum_via_exact_path() {
        use crate::rat::rat;
        // permutation (234): cycle type (3)+(1) -> {1, 1, -1/2 ± √3/2 i}
        let z = rat(0, 1);
        let o = rat(1, 1);
        let m = vec![
            vec![o, z, z, z],
            vec![z, z, o, z],
            vec![z, z, z, o],
            vec![z, o, z, z],
        ];
        let s = eigenvalues_exact(&m).unwrap();
        assert!(s.contains(Complex64::new(1.0, 0.0), 1e-12));
        assert!(s.contains(Complex64::new(-0.5, 3f64.sqrt() / 2.0), 1e-10));
        assert!(s.contains(Complex64::new(-0.5, -(3f64.sqrt()) / 2.0), 1e-10));
        let ones = s.values.iter().filter(|v| (*v - Complex64::new(1.0, 0.0)).norm() < 1e-10).count();
        assert_eq!(ones, 2);
    }
}
