//! Convex hulls of roots of unity and membership tests.

use num_complex::Complex64;

/// Which part of the root-of-unity hull a spec describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HullVariant {
    /// Convex hull of all j-th roots of unity.
    Full,
    /// `{1}` together with the hull of the roots excluding 1.
    Punctured,
}

/// The hull of the `j`-th roots of unity, full or punctured.
#[derive(Debug, Clone, Copy)]
pub struct HullSpec {
    pub j: usize,
    pub variant: HullVariant,
}

impl HullSpec {
    pub fn full(j: usize) -> Self {
        HullSpec { j, variant: HullVariant::Full }
    }

    pub fn punctured(j: usize) -> Self {
        HullSpec { j, variant: HullVariant::Punctured }
    }

    pub fn vertices(&self) -> Vec<Complex64> {
        let j = self.j;
        (0..j)
            .map(|k| Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / j as f64))
            .collect()
    }

    pub fn contains(&self, z: Complex64, tol: f64) -> bool {
        match self.variant {
            HullVariant::Full => in_polygon(&self.vertices(), z, tol),
            HullVariant::Punctured => {
                if (z - Complex64::new(1.0, 0.0)).norm() <= tol {
                    return true;
                }
                let verts: Vec<Complex64> = self.vertices().into_iter().skip(1).collect();
                in_polygon(&verts, z, tol)
            }
        }
    }
}

/// Point-in-convex-polygon by half-plane tests; degenerate polygons
/// (fewer than 3 vertices) degrade to segments/points.
fn in_polygon(verts: &[Complex64], z: Complex64, tol: f64) -> bool {
    match verts.len() {
        0 => false,
        1 => (z - verts[0]).norm() <= tol,
        2 => dist_to_segment(z, verts[0], verts[1]) <= tol,
        _ => verts.iter().enumerate().all(|(k, &v)| {
            let w = verts[(k + 1) % verts.len()];
            let edge = w - v;
            let rel = z - v;
            edge.re * rel.im - edge.im * rel.re >= -tol
        }),
    }
}

pub fn dist_to_segment(z: Complex64, a: Complex64, b: Complex64) -> f64 {
    let ab = b - a;
    let denom = ab.norm_sqr();
    if denom == 0.0 {
        return (z - a).norm();
    }
    let t = ((z - a).re * ab.re + (z - a).im * ab.im) / denom;
    let t = t.clamp(0.0, 1.0);
    (z - (a + ab * t)).norm()
}

/// Membership in `Π_2 ∪ Π_3 ∪ .. ∪ Π_n` (boundary inclusive).
pub fn in_hull_union(z: Complex64, n: usize, tol: f64) -> bool {
    (2..=n).any(|j| HullSpec::full(j).contains(z, tol))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn segment_hull_for_j2() {
        assert!(in_hull_union(c(0.9, 0.0), 2, 1e-12));
        assert!(!in_hull_union(c(1.1, 0.0), 2, 1e-12));
        assert!(!in_hull_union(c(0.5, 0.1), 2, 1e-12));
    }

    #[test]
    fn triangle_boundary_point() {
        // left edge of the third-roots hull is Re = -1/2
        assert!(in_hull_union(c(-0.5, 0.55), 3, 1e-12));
        assert!(!in_hull_union(c(-0.51, 0.55), 3, 1e-12));
    }

    #[test]
    fn outside_all_hulls_up_to_four() {
        // |Re|+|Im| > 1 excludes the square, Re < -1/2 the triangle, Im != 0 the segment
        assert!(!in_hull_union(c(-0.9, 0.3), 4, 1e-12));
        assert!(in_hull_union(c(-0.9, 0.0), 4, 1e-12));
        assert!(in_hull_union(c(0.4, 0.4), 4, 1e-12));
    }

    #[test]
    fn punctured_hull() {
        let p3 = HullSpec::punctured(3);
        assert!(p3.contains(c(1.0, 0.0), 1e-12));
        // hull of the two non-unit cube roots is the segment Re = -1/2
        assert!(p3.contains(c(-0.5, 0.5), 1e-9));
        assert!(!p3.contains(c(0.5, 0.0), 1e-9));
        let p2 = HullSpec::punctured(2);
        assert!(p2.contains(c(-1.0, 0.0), 1e-12));
        assert!(!p2.contains(c(0.0, 0.0), 1e-12));
    }
}
