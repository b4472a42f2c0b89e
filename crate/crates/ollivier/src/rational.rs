//! Exact rational arithmetic helpers.
//!
//! All curvature values, LP coefficients and optima are arbitrary-precision
//! fractions kept in lowest terms. The canonical text form is `p/q` with the
//! denominator omitted when it is 1; that is what `Display` on the underlying
//! type already produces.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

pub type Rational = BigRational;

/// Integer as a rational.
pub fn rat(n: i64) -> Rational {
    Rational::from(BigInt::from(n))
}

/// `num/den` in lowest terms; `den` must be nonzero.
pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Reciprocal of a positive integer, `1/d`.
pub fn unit_frac(d: usize) -> Rational {
    frac(1, d as i64)
}

pub fn rat_min(a: &Rational, b: &Rational) -> Rational {
    if a <= b {
        a.clone()
    } else {
        b.clone()
    }
}

pub fn rat_max(a: &Rational, b: &Rational) -> Rational {
    if a >= b {
        a.clone()
    } else {
        b.clone()
    }
}

/// Positive part `max(a, 0)`.
pub fn pos_part(a: &Rational) -> Rational {
    if a.is_negative() {
        Rational::zero()
    } else {
        a.clone()
    }
}

/// 1 if `a >= b`, else 0.
pub fn theta(a: &Rational, b: &Rational) -> i64 {
    i64::from(a >= b)
}

/// Parse the canonical `p/q` form (or a plain integer).
pub fn parse_rational(s: &str) -> Option<Rational> {
    s.trim().parse::<Rational>().ok()
}

/// Non-authoritative decimal rendering, 12 significant digits.
pub fn decimal_12(r: &Rational) -> f64 {
    let x = r.to_f64().unwrap_or(f64::NAN);
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_string_form() {
        assert_eq!(frac(39, 24).to_string(), "13/8");
        assert_eq!(frac(4, 2).to_string(), "2");
        assert_eq!(frac(-1, 2).to_string(), "-1/2");
        assert_eq!(rat(0).to_string(), "0");
    }

    #[test]
    fn parse_round_trip() {
        for s in ["13/8", "-2/3", "7", "0"] {
            assert_eq!(parse_rational(s).unwrap().to_string(), s);
        }
        assert!(parse_rational("x").is_none());
    }

    #[test]
    fn scalar_operators() {
        assert_eq!(rat_min(&frac(1, 3), &frac(1, 8)), frac(1, 8));
        assert_eq!(rat_max(&frac(1, 3), &frac(1, 8)), frac(1, 3));
        assert_eq!(pos_part(&frac(-5, 7)), rat(0));
        assert_eq!(pos_part(&frac(5, 7)), frac(5, 7));
        assert_eq!(theta(&frac(1, 2), &frac(1, 2)), 1);
        assert_eq!(theta(&frac(1, 3), &frac(1, 2)), 0);
    }

    #[test]
    fn decimal_display_is_rounded() {
        let r = frac(1, 3);
        let d = decimal_12(&r);
        assert!((d - 1.0 / 3.0).abs() < 1e-11);
    }
}
