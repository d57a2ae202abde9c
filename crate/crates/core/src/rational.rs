//! Exact rational scalars.
//!
//! All exact spectral arithmetic runs on [`Rational`], an arbitrary-precision
//! fraction kept in lowest terms with a positive denominator. There is no
//! rounding anywhere in this type.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational number, always reduced, denominator > 0.
pub type Rational = num_rational::BigRational;

/// Shorthand constructor from machine integers.
pub fn rational(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Integer as a rational.
pub fn from_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Renders `num/den`, omitting the denominator when it is 1.
pub fn format_rational(r: &Rational) -> String {
    if r.denom() == &BigInt::from(1) {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Double approximation of `n/d`, accurate to a few ulp.
///
/// Both operands are shifted down together when either would overflow f64 on
/// its own (the quotient of two 10^300-digit integers can still be tiny); the
/// truncation this introduces is far below one ulp of the result.
pub fn ratio_to_f64(n: &BigInt, d: &BigInt) -> f64 {
    assert!(!d.is_zero(), "zero denominator");
    if n.is_zero() {
        return 0.0;
    }
    let bits = n.bits().max(d.bits());
    let shift = bits.saturating_sub(960);
    let (n, d) = if shift > 0 {
        (n >> shift, d >> shift)
    } else {
        (n.clone(), d.clone())
    };
    if d.is_zero() {
        // |n/d| overflows f64 anyway
        return if n.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        };
    }
    n.to_f64().unwrap_or(if n.is_negative() {
        f64::NEG_INFINITY
    } else {
        f64::INFINITY
    }) / d.to_f64().unwrap_or(f64::INFINITY)
}

/// Nearest-double approximation of a rational.
pub fn to_f64(r: &Rational) -> f64 {
    ratio_to_f64(r.numer(), r.denom())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduced_with_positive_denominator() {
        let r = rational(4, -6);
        assert_eq!(r, rational(-2, 3));
        assert!(r.denom() > &BigInt::from(0));
        assert_eq!(format_rational(&r), "-2/3");
        assert_eq!(format_rational(&from_int(-4)), "-4");
    }

    #[test]
    fn f64_round_trip_for_small_values() {
        assert_eq!(to_f64(&rational(1, 2)), 0.5);
        assert_eq!(to_f64(&rational(-35, 6)), -35.0 / 6.0);
    }

    #[test]
    fn huge_ratio_stays_finite() {
        // both parts overflow f64 alone, quotient is ~10
        let n = BigInt::from(10).pow(400u32);
        let d = BigInt::from(10).pow(399u32);
        let v = ratio_to_f64(&n, &d);
        assert!((v - 10.0).abs() < 1e-9);
        let v = ratio_to_f64(&-n, &d);
        assert!((v + 10.0).abs() < 1e-9);
    }
}
