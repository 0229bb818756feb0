//! Exact extrema of the radicand quadratics that control the complex
//! extents of the two-parameter classes.
//!
//! Each function is a quadratic over the box `[0, 1/2]^2`, so its global
//! extrema sit at a corner, an edge vertex, or the interior critical point;
//! all candidates are evaluated in exact rational arithmetic, alongside a
//! confirmation sweep over grid points.

use serde::Serialize;

use crate::rat::{rat, rat_str, Rat};
use num_traits::Zero;

/// `a x² + b y² + c xy + d x + e y + f` over `[0, 1/2]²`.
#[derive(Debug, Clone, Copy)]
pub struct QuadraticOnBox {
    pub name: &'static str,
    pub a: Rat,
    pub b: Rat,
    pub c: Rat,
    pub d: Rat,
    pub e: Rat,
    pub f: Rat,
}

impl QuadraticOnBox {
    pub fn eval(&self, x: Rat, y: Rat) -> Rat {
        self.a * x * x + self.b * y * y + self.c * x * y + self.d * x + self.e * y + self.f
    }

    fn in_box(v: Rat) -> bool {
        v >= rat(0, 1) && v <= rat(1, 2)
    }

    /// Corner, edge-vertex, and interior critical candidates.
    pub fn candidate_points(&self) -> Vec<(Rat, Rat)> {
        let ends = [rat(0, 1), rat(1, 2)];
        let mut pts = Vec::new();
        for &x in &ends {
            for &y in &ends {
                pts.push((x, y));
            }
        }
        // edges x = const: vertex of b y² + (c x + e) y + ..
        for &x in &ends {
            if !self.b.is_zero() {
                let y = -(self.c * x + self.e) / (rat(2, 1) * self.b);
                if Self::in_box(y) {
                    pts.push((x, y));
                }
            }
        }
        for &y in &ends {
            if !self.a.is_zero() {
                let x = -(self.c * y + self.d) / (rat(2, 1) * self.a);
                if Self::in_box(x) {
                    pts.push((x, y));
                }
            }
        }
        // interior critical point: 2a x + c y + d = 0, c x + 2b y + e = 0
        let det = rat(4, 1) * self.a * self.b - self.c * self.c;
        if !det.is_zero() {
            let x = (self.c * self.e - rat(2, 1) * self.b * self.d) / det;
            let y = (self.c * self.d - rat(2, 1) * self.a * self.e) / det;
            if Self::in_box(x) && Self::in_box(y) {
                pts.push((x, y));
            }
        }
        pts
    }

    /// Exact global extrema over the box, confirmed against a grid sweep of
    /// `density` points per axis.
    pub fn extrema(&self, density: usize) -> Extremum {
        let mut pts = self.candidate_points();
        let steps = density.max(2) - 1;
        for i in 0..=steps {
            for j in 0..=steps {
                pts.push((rat(i as i64, 2 * steps as i64), rat(j as i64, 2 * steps as i64)));
            }
        }
        let mut max = pts[0];
        let mut min = pts[0];
        let mut vmax = self.eval(max.0, max.1);
        let mut vmin = vmax;
        for &(x, y) in &pts[1..] {
            let v = self.eval(x, y);
            if v > vmax {
                vmax = v;
                max = (x, y);
            }
            if v < vmin {
                vmin = v;
                min = (x, y);
            }
        }
        Extremum {
            name: self.name.to_string(),
            max: rat_str(vmax),
            min: rat_str(vmin),
            argmax: (rat_str(max.0), rat_str(max.1)),
            argmin: (rat_str(min.0), rat_str(min.1)),
            max_value: vmax,
            min_value: vmin,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Extremum {
    pub name: String,
    pub max: String,
    pub min: String,
    pub argmax: (String, String),
    pub argmin: (String, String),
    #[serde(skip)]
    pub max_value: Rat,
    #[serde(skip)]
    pub min_value: Rat,
}

/// The five radicand quadratics, in catalog order of the classes whose
/// complex pairs they control (C33, C30, C31, C32, C34).
pub fn radicand_quadratics() -> [QuadraticOnBox; 5] {
    [
        QuadraticOnBox {
            name: "f",
            a: rat(9, 1),
            b: rat(9, 1),
            c: rat(-14, 1),
            d: rat(-1, 1),
            e: rat(-1, 1),
            f: rat(1, 4),
        },
        QuadraticOnBox {
            name: "f1",
            a: rat(4, 1),
            b: rat(4, 1),
            c: rat(-24, 1),
            d: rat(4, 1),
            e: rat(4, 1),
            f: rat(-1, 1),
        },
        QuadraticOnBox {
            name: "f2",
            a: rat(-7, 1),
            b: rat(1, 1),
            c: rat(10, 1),
            d: rat(1, 1),
            e: rat(-3, 1),
            f: rat(1, 4),
        },
        QuadraticOnBox {
            name: "f3",
            a: rat(8, 1),
            b: rat(-4, 1),
            c: rat(0, 1),
            d: rat(-4, 1),
            e: rat(2, 1),
            f: rat(1, 4),
        },
        QuadraticOnBox {
            name: "f4",
            a: rat(-7, 1),
            b: rat(9, 1),
            c: rat(2, 1),
            d: rat(3, 1),
            e: rat(-5, 1),
            f: rat(1, 4),
        },
    ]
}

/// Global extrema of all five quadratics at the given confirmation grid
/// density (points per axis, at least 100 in normal use).
pub fn aux_extrema_report(grid_density: usize) -> Vec<Extremum> {
    radicand_quadratics().iter().map(|q| q.extrema(grid_density)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_extrema() {
        let rep = aux_extrema_report(100);
        let expect = [
            ("f", rat(2, 1), rat(0, 1)),
            ("f1", rat(2, 1), rat(-1, 1)),
            ("f2", rat(2, 7), rat(-1, 1)),
            ("f3", rat(1, 2), rat(-1, 4)),
            ("f4", rat(4, 7), rat(-4, 9)),
        ];
        for (e, (name, max, min)) in rep.iter().zip(expect.iter()) {
            assert_eq!(&e.name, name);
            assert_eq!(e.max_value, *max, "{name} max");
            assert_eq!(e.min_value, *min, "{name} min");
        }
    }

    #[test]
    fn specific_points() {
        let q = radicand_quadratics();
        // f has its minimum 0 at (1/4, 1/4)
        assert_eq!(q[0].eval(rat(1, 4), rat(1, 4)), rat(0, 1));
        // f1(0,0) = -1
        assert_eq!(q[1].eval(rat(0, 1), rat(0, 1)), rat(-1, 1));
        // f4 peaks at (3/14, 0) with value 4/7
        assert_eq!(q[4].eval(rat(3, 14), rat(0, 1)), rat(4, 7));
    }
}
