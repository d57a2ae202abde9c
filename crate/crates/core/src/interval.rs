//! Certified interval values.
//!
//! [`CertifiedValue`] is a closed interval `[lo, hi]` of doubles guaranteed
//! to contain the mathematically exact result. The floating-point contract:
//! IEEE-754 basic operations are correctly rounded and `exp`/`ln`/`sqrt` are
//! accurate to ≤ 1 ulp; every operation widens its endpoints outward by a
//! relative `2⁻⁴⁰` (plus a tiny absolute term so exact zeros still widen),
//! which dwarfs the at-most-few-ulp rounding of the endpoint computation.
//! The price is enclosures about 4000 ulps wider than optimal, irrelevant at
//! the tolerances used here, in exchange for soundness without directed
//! rounding.

use std::fmt;

use crate::error::{Error, Result};

/// Relative outward slack per elementary operation (2⁻⁴⁰).
const REL_SLACK: f64 = 1.0 / 1_099_511_627_776.0;
/// Absolute outward slack, so endpoints at exactly 0 still move.
const ABS_SLACK: f64 = 1e-300;

fn down(x: f64) -> f64 {
    if x.is_finite() {
        x - x.abs() * REL_SLACK - ABS_SLACK
    } else {
        x
    }
}

fn up(x: f64) -> f64 {
    if x.is_finite() {
        x + x.abs() * REL_SLACK + ABS_SLACK
    } else {
        x
    }
}

/// Interval `[lo, hi]` containing the true real value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CertifiedValue {
    pub lo: f64,
    pub hi: f64,
}

impl CertifiedValue {
    pub fn new(lo: f64, hi: f64) -> Self {
        assert!(!lo.is_nan() && !hi.is_nan(), "NaN endpoint");
        assert!(lo <= hi, "inverted enclosure [{lo}, {hi}]");
        Self { lo, hi }
    }

    /// The degenerate interval `[v, v]` for an exactly representable value.
    pub fn exact(v: f64) -> Self {
        Self::new(v, v)
    }

    pub fn zero() -> Self {
        Self::exact(0.0)
    }

    pub fn one() -> Self {
        Self::exact(1.0)
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn contains(&self, v: f64) -> bool {
        self.lo <= v && v <= self.hi
    }

    pub fn intersects(&self, other: &Self) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    /// Every point of `self` is ≤ every point of `other`.
    pub fn certainly_le(&self, other: &Self) -> bool {
        self.hi <= other.lo
    }

    /// The interval order `self ≤ other` endpoint-wise.
    pub fn le_enclosurewise(&self, other: &Self) -> bool {
        self.lo <= other.lo && self.hi <= other.hi
    }

    pub fn is_positive(&self) -> bool {
        self.lo > 0.0
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(down(self.lo + other.lo), up(self.hi + other.hi))
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::new(down(self.lo - other.hi), up(self.hi - other.lo))
    }

    pub fn neg(&self) -> Self {
        Self::new(-self.hi, -self.lo)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let c = [
            self.lo * other.lo,
            self.lo * other.hi,
            self.hi * other.lo,
            self.hi * other.hi,
        ];
        let lo = c.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = c.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        Self::new(down(lo), up(hi))
    }

    /// Division; the divisor must not contain zero.
    pub fn div(&self, other: &Self) -> Self {
        assert!(
            other.lo > 0.0 || other.hi < 0.0,
            "division by an interval containing zero: [{}, {}]",
            other.lo,
            other.hi
        );
        let c = [
            self.lo / other.lo,
            self.lo / other.hi,
            self.hi / other.lo,
            self.hi / other.hi,
        ];
        let lo = c.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = c.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        Self::new(down(lo), up(hi))
    }

    pub fn scale(&self, k: f64) -> Self {
        self.mul(&Self::exact(k))
    }

    pub fn add_f64(&self, k: f64) -> Self {
        self.add(&Self::exact(k))
    }

    pub fn exp(&self) -> Self {
        Self::new(down(self.lo.exp()).max(0.0), up(self.hi.exp()))
    }

    /// Natural logarithm; requires a strictly positive interval.
    pub fn ln(&self) -> Self {
        assert!(self.lo > 0.0, "ln of non-positive enclosure");
        Self::new(down(self.lo.ln()), up(self.hi.ln()))
    }

    /// Square root; requires a nonnegative interval.
    pub fn sqrt(&self) -> Self {
        assert!(self.lo >= 0.0, "sqrt of negative enclosure");
        Self::new(down(self.lo.sqrt()).max(0.0), up(self.hi.sqrt()))
    }

    /// Integer power by binary exponentiation.
    pub fn powi(&self, mut n: u64) -> Self {
        let mut base = *self;
        let mut acc = Self::one();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Real power `self^e` via `exp(e·ln self)`; base must be positive.
    pub fn pow(&self, e: &Self) -> Self {
        self.ln().mul(e).exp()
    }

    /// Fails unless the enclosure is at most `tol` wide.
    pub fn require_width(&self, tol: f64, what: &str) -> Result<Self> {
        if self.width() <= tol {
            Ok(*self)
        } else {
            Err(Error::ToleranceNotAchieved(format!(
                "{what}: width {} > {tol}",
                self.width()
            )))
        }
    }
}

impl fmt::Display for CertifiedValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:.17e}, {:.17e}]", self.lo, self.hi)
    }
}

/// Accumulator for long series of nonnegative-enclosure terms.
///
/// Adding many terms through [`CertifiedValue::add`] would widen by
/// `2⁻⁴⁰·|partial|` per addition; a million-term series would drown in its
/// own slack. This accumulator sums the endpoints in plain doubles and
/// applies one final outward widening of `max(2⁻⁴⁰, 2n·ε)`, the standard
/// forward-error bound for summing `n` nonnegative doubles.
#[derive(Debug, Clone, Copy, Default)]
pub struct NonnegSum {
    lo: f64,
    hi: f64,
    count: u64,
}

impl NonnegSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, term: &CertifiedValue) {
        debug_assert!(term.hi >= 0.0, "NonnegSum needs nonnegative terms");
        self.lo += term.lo.max(0.0);
        self.hi += term.hi;
        self.count += 1;
    }

    pub fn enclosure(&self) -> CertifiedValue {
        let slack = REL_SLACK.max(2.0 * self.count as f64 * f64::EPSILON);
        CertifiedValue::new(
            (self.lo * (1.0 - slack) - ABS_SLACK).max(0.0),
            self.hi * (1.0 + slack) + ABS_SLACK,
        )
    }
}

/// Enclosure of an exact rational (numerator and denominator each convert
/// within a few ulp; the slack covers both roundings).
pub fn rational_enclosure(r: &crate::rational::Rational) -> CertifiedValue {
    let v = crate::rational::to_f64(r);
    CertifiedValue::new(down(v), up(v))
}

/// Enclosure of the exact ratio of two big integers.
pub fn bigint_ratio_enclosure(n: &num_bigint::BigInt, d: &num_bigint::BigInt) -> CertifiedValue {
    let v = crate::rational::ratio_to_f64(n, d);
    CertifiedValue::new(down(v), up(v))
}
