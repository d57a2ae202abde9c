//! Exact arithmetic in the quadratic integer ring ℤ[√N].
//!
//! Values of the form `a + b·√N` with big-integer coefficients. Addition and
//! multiplication are closed and exact, and the sign of any element is
//! decided exactly by comparing `a²` against `b²·N`, so comparisons never
//! round. Perfect-square radicands are allowed (the representation is then
//! not canonical, but arithmetic and sign tests remain exact).

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::interval::CertifiedValue;

/// Exact element `a + b·√N` of ℤ[√N].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticValue {
    a: BigInt,
    b: BigInt,
    radicand: u64,
}

impl QuadraticValue {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, radicand: u64) -> Self {
        assert!(radicand >= 1, "radicand must be positive");
        Self {
            a: a.into(),
            b: b.into(),
            radicand,
        }
    }

    pub fn zero(radicand: u64) -> Self {
        Self::new(0, 0, radicand)
    }

    pub fn one(radicand: u64) -> Self {
        Self::new(1, 0, radicand)
    }

    /// The element `√N` itself.
    pub fn sqrt_n(radicand: u64) -> Self {
        Self::new(0, 1, radicand)
    }

    pub fn rational_part(&self) -> &BigInt {
        &self.a
    }

    pub fn sqrt_coefficient(&self) -> &BigInt {
        &self.b
    }

    pub fn radicand(&self) -> u64 {
        self.radicand
    }

    pub fn is_zero(&self) -> bool {
        self.sign() == Ordering::Equal
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.radicand, other.radicand, "mixed radicands");
        Self::new(&self.a + &other.a, &self.b + &other.b, self.radicand)
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.radicand, other.radicand, "mixed radicands");
        Self::new(&self.a - &other.a, &self.b - &other.b, self.radicand)
    }

    pub fn neg(&self) -> Self {
        Self::new(-&self.a, -&self.b, self.radicand)
    }

    /// `(a + b√N)(a′ + b′√N) = (aa′ + bb′N) + (ab′ + a′b)√N`.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.radicand, other.radicand, "mixed radicands");
        let n = BigInt::from(self.radicand);
        Self::new(
            &self.a * &other.a + &self.b * &other.b * n,
            &self.a * &other.b + &other.a * &self.b,
            self.radicand,
        )
    }

    pub fn scale(&self, k: impl Into<BigInt>) -> Self {
        let k = k.into();
        Self::new(&self.a * &k, &self.b * &k, self.radicand)
    }

    /// Exact sign of `a + b·√N`.
    ///
    /// Opposite-sign coefficients reduce to the integer comparison of `a²`
    /// with `b²·N`, which also decides equality when `N` is a perfect square.
    pub fn sign(&self) -> Ordering {
        let za = self.a.is_zero();
        let zb = self.b.is_zero();
        if za && zb {
            return Ordering::Equal;
        }
        if zb {
            return self.a.cmp(&BigInt::zero());
        }
        if za {
            return self.b.cmp(&BigInt::zero());
        }
        let n = BigInt::from(self.radicand);
        let a2 = &self.a * &self.a;
        let b2n = &self.b * &self.b * n;
        match (self.a.is_positive(), self.b.is_positive()) {
            (true, true) => Ordering::Greater,
            (false, false) => Ordering::Less,
            // a > 0, b < 0: sign decided by a² vs b²N
            (true, false) => a2.cmp(&b2n),
            // a < 0, b > 0: sign decided by b²N vs a²
            (false, true) => b2n.cmp(&a2),
        }
    }

    /// `self ≥ other` decided exactly.
    pub fn ge(&self, other: &Self) -> bool {
        self.sub(other).sign() != Ordering::Less
    }

    /// Enclosure of the real value `a + b·√N`.
    pub fn to_certified(&self) -> CertifiedValue {
        let a = CertifiedValue::exact(self.a.to_f64().unwrap_or(f64::NAN));
        let b = CertifiedValue::exact(self.b.to_f64().unwrap_or(f64::NAN));
        let root = CertifiedValue::exact(self.radicand as f64).sqrt();
        a.add(&b.mul(&root))
    }
}

impl fmt::Display for QuadraticValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}*sqrt({})", self.a, self.b, self.radicand)
    }
}
