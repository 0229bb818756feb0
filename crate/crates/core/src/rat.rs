//! Exact rational scalars and their text form.
//!
//! All constraint solving and catalog data use `Rat` (an `i64` ratio, always
//! reduced, positive denominator). The characteristic-polynomial code widens
//! to an `i128` ratio internally where products of four entries appear.

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

/// Exact rational scalar used throughout the catalog.
pub type Rat = Ratio<i64>;

/// Wide rational used inside determinant-like computations.
pub type RatW = Ratio<i128>;

/// `p/q` as a `Rat`, panicking on a zero denominator.
pub fn rat(p: i64, q: i64) -> Rat {
    Ratio::new(p, q)
}

pub fn widen(x: Rat) -> RatW {
    Ratio::new(*x.numer() as i128, *x.denom() as i128)
}

/// Narrow back to `Rat`; values in this crate stay far below `i64` range,
/// so a failure indicates a logic error upstream.
pub fn narrow(x: RatW) -> Rat {
    let n = i64::try_from(*x.numer()).expect("rational numerator out of i64 range");
    let d = i64::try_from(*x.denom()).expect("rational denominator out of i64 range");
    Ratio::new(n, d)
}

pub fn to_f64(x: Rat) -> f64 {
    *x.numer() as f64 / *x.denom() as f64
}

pub fn to_f64_wide(x: &RatW) -> f64 {
    *x.numer() as f64 / *x.denom() as f64
}

/// Serialize as `"p/q"`, or just `"p"` for integers. This is the on-disk
/// format for catalog files.
pub fn rat_str(x: Rat) -> String {
    if x.denom().is_one() {
        format!("{}", x.numer())
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parse `"p/q"` or `"p"`.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: i64 = p.trim().parse().ok()?;
            let q: i64 = q.trim().parse().ok()?;
            if q == 0 {
                return None;
            }
            Some(Ratio::new(p, q))
        }
        None => {
            let p: i64 = s.parse().ok()?;
            Some(Ratio::from_integer(p))
        }
    }
}

/// Signed zero test helper used by elimination code.
pub fn is_zero(x: &Rat) -> bool {
    x.is_zero()
}

/// |x| as f64, for diagnostics.
pub fn abs_f64(x: Rat) -> f64 {
    to_f64(x.abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_strings() {
        for s in ["1/4", "-1/2", "3", "0", "-7/3"] {
            let r = parse_rat(s).unwrap();
            assert_eq!(rat_str(r), s);
        }
        // non-reduced input normalizes
        assert_eq!(rat_str(parse_rat("2/4").unwrap()), "1/2");
        assert_eq!(rat_str(parse_rat("3/-6").unwrap()), "-1/2");
        assert!(parse_rat("1/0").is_none());
    }
}
