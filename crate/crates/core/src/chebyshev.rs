//! Monic Chebyshev polynomials of the second kind, exactly.
//!
//! The variant used throughout: `U_0 = 1`, `U_1 = X`,
//! `U_{s+1} = X·U_s − U_{s−1}`, with leading coefficient 1 and
//! `U_s(2) = s + 1`. Evaluation and differentiation run over exact rationals
//! or over ℤ[√N]; root isolation uses exact-sign bisection, so every returned
//! enclosure is certified.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::quadratic::QuadraticValue;
use crate::rational::Rational;

/// Largest `s` accepted by [`cheb_zeros`]; zeros are only needed for
/// small-index verification and the scan spacing argument is made for this
/// range.
pub const MAX_ZEROS_INDEX: u64 = 64;

/// `(U_s(x), U_s′(x))` by the coupled recurrence
/// `U_{k+1} = x·U_k − U_{k−1}`, `U′_{k+1} = U_k + x·U′_k − U′_{k−1}`.
pub fn cheb_pair(s: u64, x: &Rational) -> (Rational, Rational) {
    if s == 0 {
        return (Rational::one(), Rational::zero());
    }
    let mut u_prev = Rational::one(); // U_0
    let mut d_prev = Rational::zero(); // U'_0
    let mut u = x.clone(); // U_1
    let mut d = Rational::one(); // U'_1
    for _ in 1..s {
        let u_next = x * &u - &u_prev;
        let d_next = &u + &(x * &d) - &d_prev;
        u_prev = u;
        d_prev = d;
        u = u_next;
        d = d_next;
    }
    (u, d)
}

fn rat_pow(x: &Rational, mut k: u64) -> Rational {
    let mut base = x.clone();
    let mut acc = Rational::one();
    while k > 0 {
        if k & 1 == 1 {
            acc *= &base;
        }
        k >>= 1;
        if k > 0 {
            base = &base * &base;
        }
    }
    acc
}

/// `U_s(x)` from the explicit coefficient sum
/// `Σ_p (−1)^p · C(s−p, p) · x^{s−2p}`.
///
/// Independent of the recurrence; serves as the oracle for [`cheb_pair`].
pub fn cheb_coeff_eval(s: u64, x: &Rational) -> Rational {
    let mut acc = Rational::zero();
    for p in 0..=(s / 2) {
        let coeff = binomial(BigInt::from(s - p), BigInt::from(p));
        let term = Rational::from_integer(coeff) * rat_pow(x, s - 2 * p);
        if p % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// `(U_m(√N), U_m′(√N))` exactly in ℤ[√N].
///
/// By parity the value is an integer for even `m` (zero √N-coefficient) and
/// the derivative is an integer multiple of √N, and conversely for odd `m`.
pub fn cheb_at_sqrt(m: u64, n: u64) -> (QuadraticValue, QuadraticValue) {
    assert!(n >= 1, "radicand must be positive");
    let x = QuadraticValue::sqrt_n(n);
    if m == 0 {
        return (QuadraticValue::one(n), QuadraticValue::zero(n));
    }
    let mut u_prev = QuadraticValue::one(n);
    let mut d_prev = QuadraticValue::zero(n);
    let mut u = x.clone();
    let mut d = QuadraticValue::one(n);
    for _ in 1..m {
        let u_next = x.mul(&u).sub(&u_prev);
        let d_next = u.add(&x.mul(&d)).sub(&d_prev);
        u_prev = u;
        d_prev = d;
        u = u_next;
        d = d_next;
    }
    (u, d)
}

/// Rational interval certified to contain exactly one root of the polynomial
/// it was produced for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootEnclosure {
    pub lo: Rational,
    pub hi: Rational,
}

impl RootEnclosure {
    fn point(x: Rational) -> Self {
        Self { lo: x.clone(), hi: x }
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / Rational::from_integer(BigInt::from(2))
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }
}

/// Sign of `U_s(num/den)` through the denominator-cleared recurrence
/// `V_k = den^k·U_k(num/den)`: `V_{k+1} = num·V_k − den²·V_{k−1}`, all in
/// plain integers (no gcd reductions on the hot path).
fn sign_scaled(s: u64, num: &BigInt, den: &BigInt) -> Ordering {
    if s == 0 {
        return Ordering::Greater;
    }
    let den2 = den * den;
    let mut v_prev = BigInt::one(); // V_0
    let mut v = num.clone(); // V_1
    for _ in 1..s {
        let v_next = num * &v - &den2 * &v_prev;
        v_prev = v;
        v = v_next;
    }
    v.cmp(&BigInt::zero())
}

/// Isolates all `s` roots of `U_s` by exact-sign bisection.
///
/// Returns `s` pairwise-disjoint enclosures of width ≤ `eps`, sorted
/// increasing, all inside `[−2, 2]`. The initial scan uses step `2/s²`,
/// smaller than the minimal root spacing in the supported range; if a pass
/// ever finds fewer than `s` sign changes it halves the step and retries.
pub fn cheb_zeros(s: u64, eps: &Rational) -> Result<Vec<RootEnclosure>> {
    if s == 0 {
        return Err(Error::InvalidParameter("cheb_zeros needs s >= 1".into()));
    }
    if s > MAX_ZEROS_INDEX {
        return Err(Error::UnsupportedSize(format!(
            "cheb_zeros supports s <= {MAX_ZEROS_INDEX}, got {s}"
        )));
    }
    if !eps.is_positive() {
        return Err(Error::InvalidParameter("eps must be positive".into()));
    }

    for halvings in 0..20u32 {
        // cell width 2/(s²·2^halvings) over [−2, 2]
        let cells = 2 * s * s * (1u64 << halvings);
        let den = BigInt::from(cells);
        let grid_num = |i: u64| BigInt::from(4 * i as i128 - 2 * cells as i128);
        let signs: Vec<Ordering> = (0..=cells)
            .map(|i| sign_scaled(s, &grid_num(i), &den))
            .collect();

        let mut found: Vec<RootEnclosure> = Vec::with_capacity(s as usize);
        for i in 0..cells as usize {
            let sg = signs[i];
            let sg_next = signs[i + 1];
            if sg == Ordering::Equal {
                found.push(RootEnclosure::point(Rational::new(
                    grid_num(i as u64),
                    den.clone(),
                )));
            } else if sg_next != Ordering::Equal && sg != sg_next {
                found.push(bisect_to_width(
                    s,
                    grid_num(i as u64),
                    sg,
                    grid_num(i as u64 + 1),
                    den.clone(),
                    eps,
                ));
            }
        }

        if found.len() == s as usize {
            debug_assert!(found.windows(2).all(|w| w[0].hi < w[1].lo));
            return Ok(found);
        }
    }
    Err(Error::ToleranceNotAchieved(format!(
        "sign-change scan failed to isolate {s} roots"
    )))
}

/// Exact-sign bisection on a dyadic refinement of one scan cell; endpoints
/// stay integers over a doubling denominator until the requested width.
fn bisect_to_width(
    s: u64,
    mut lo: BigInt,
    sign_lo: Ordering,
    mut hi: BigInt,
    mut den: BigInt,
    eps: &Rational,
) -> RootEnclosure {
    loop {
        // width ≤ eps  ⇔  (hi − lo)·eps.den ≤ eps.num·den
        if (&hi - &lo) * eps.denom() <= eps.numer() * &den {
            return RootEnclosure {
                lo: Rational::new(lo, den.clone()),
                hi: Rational::new(hi, den),
            };
        }
        lo *= 2;
        hi *= 2;
        den *= 2;
        let mid = (&lo + &hi) / 2;
        match sign_scaled(s, &mid, &den) {
            Ordering::Equal => return RootEnclosure::point(Rational::new(mid, den)),
            m if m == sign_lo => lo = mid,
            _ => hi = mid,
        }
    }
}
