//! Scalar field abstraction shared by potentials, chains with fractional
//! coefficients and the simplex engine.
//!
//! Two families implement [`Scalar`]: IEEE floats (`f32`, `f64`), used as a
//! fast first pass, and [`BigRational`], used wherever a result is certified.

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{NumAssignRef, NumRef, Signed, ToPrimitive, Zero};

/// An ordered field the geometry and LP code can run over.
pub trait Scalar:
    NumRef + NumAssignRef + Signed + PartialOrd + Clone + Debug + Display + Send + Sync + 'static
{
    /// True when arithmetic is exact (no rounding).
    const EXACT: bool;

    fn from_int(value: i64) -> Self;

    fn from_ratio(numer: i64, denom: i64) -> Self {
        Self::from_int(numer) / Self::from_int(denom)
    }

    /// Converts an exact rational into this field (rounding for floats).
    fn from_rational(value: &BigRational) -> Self;

    fn as_f64(&self) -> f64;

    /// Magnitude at or below which a value is treated as zero. Zero for exact fields.
    fn tolerance() -> Self;

    fn is_negligible(&self) -> bool {
        self.abs() <= Self::tolerance()
    }

    /// Strictly positive beyond tolerance.
    fn is_pos(&self) -> bool {
        *self > Self::tolerance()
    }

    /// Strictly negative beyond tolerance.
    fn is_neg(&self) -> bool {
        *self < -Self::tolerance()
    }
}

macro_rules! float_scalar {
    ($t:ty, $tol:expr) => {
        impl Scalar for $t {
            const EXACT: bool = false;

            fn from_int(value: i64) -> Self {
                value as $t
            }

            fn from_rational(value: &BigRational) -> Self {
                ToPrimitive::to_f64(value).unwrap_or(f64::NAN) as $t
            }

            fn as_f64(&self) -> f64 {
                *self as f64
            }

            fn tolerance() -> Self {
                $tol
            }
        }
    };
}

float_scalar!(f32, 1e-4);
float_scalar!(f64, 1e-9);

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn from_int(value: i64) -> Self {
        BigRational::from_integer(BigInt::from(value))
    }

    fn from_ratio(numer: i64, denom: i64) -> Self {
        BigRational::new(BigInt::from(numer), BigInt::from(denom))
    }

    fn from_rational(value: &BigRational) -> Self {
        value.clone()
    }

    fn as_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn tolerance() -> Self {
        Self::zero()
    }

    fn is_negligible(&self) -> bool {
        self.is_zero()
    }

    fn is_pos(&self) -> bool {
        self.is_positive()
    }

    fn is_neg(&self) -> bool {
        self.is_negative()
    }
}

/// `p/q` rendering used by every report and file format, integers included.
pub fn fmt_ratio(value: &BigRational) -> String {
    format!("{}/{}", value.numer(), value.denom())
}

/// Parses `p/q` or a bare integer.
pub fn parse_ratio(text: &str) -> Option<BigRational> {
    let text = text.trim();
    match text.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(BigRational::new(p, q))
        }
        None => Some(BigRational::from_integer(text.parse().ok()?)),
    }
}

/// Best rational approximation of `x` with denominator at most `max_denom`
/// (continued fractions). Used to lift float duals to exact candidates that
/// are then verified exactly.
pub fn approximate_rational(x: f64, max_denom: i64) -> Option<BigRational> {
    if !x.is_finite() {
        return None;
    }
    let sign = if x < 0.0 { -1i64 } else { 1 };
    let mut rest = x.abs();
    let (mut p0, mut q0, mut p1, mut q1) = (0i64, 1i64, 1i64, 0i64);
    for _ in 0..64 {
        let whole = rest.floor();
        if whole > i64::MAX as f64 / 4.0 {
            break;
        }
        let a = whole as i64;
        let p2 = a.checked_mul(p1)?.checked_add(p0)?;
        let q2 = a.checked_mul(q1)?.checked_add(q0)?;
        if q2 > max_denom {
            break;
        }
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
        let frac = rest - whole;
        if frac < 1e-12 {
            break;
        }
        rest = 1.0 / frac;
    }
    if q1 == 0 {
        return None;
    }
    Some(rat(sign * p1, q1))
}

/// Ceiling of an exact rational as an integer.
pub fn ceil_int(value: &BigRational) -> BigInt {
    value.ceil().to_integer()
}

pub(crate) fn rat(numer: i64, denom: i64) -> BigRational {
    BigRational::from_ratio(numer, denom)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ratio_text_round_trip() {
        let r = rat(-149, 5);
        assert_eq!(fmt_ratio(&r), "-149/5");
        assert_eq!(parse_ratio("-149/5"), Some(r));
        assert_eq!(fmt_ratio(&rat(15, 1)), "15/1");
        assert_eq!(parse_ratio("7"), Some(rat(7, 1)));
        assert_eq!(parse_ratio("1/0"), None);
    }

    #[test]
    fn continued_fraction_recovers_small_denominators() {
        for (p, q) in [(149, 5), (-31, 32), (23, 24), (0, 1), (7, 8), (1, 3)] {
            let x = p as f64 / q as f64 + 1e-13;
            assert_eq!(approximate_rational(x, 1000), Some(rat(p, q)));
        }
    }

    #[test]
    fn float_tolerance_and_exact_zero() {
        assert!(1e-12f64.is_negligible());
        assert!(!rat(1, 1_000_000_000).is_negligible());
        assert!(rat(1, 3).is_pos());
        assert_eq!(ceil_int(&rat(149, 5)), BigInt::from(30));
        assert_eq!(ceil_int(&rat(-1, 2)), BigInt::from(0));
    }
}
