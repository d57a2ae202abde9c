//! Exact spectral data of the heat-semigroup generator.
//!
//! For `O_N⁺` the generator acts on the level-`s` corepresentation space with
//! eigenvalue `λ_s = −U_s′(N)/U_s(N)` and eigenspace dimension `U_s(N)`. For
//! `S_N⁺` the eigenvalue is `−U_{2s}′(√N)/(2√N·U_{2s}(√N))`, which is an
//! exact rational because the √N factors cancel by parity, and the dimension
//! is the integer `U_{2s}(√N)`. Two-sided eigenvalue bounds
//! `s/N ≤ −λ_s ≤ s/(N−2)` (resp. `s/(N−2√N)`) are verified by exact
//! comparisons, using quadratic-integer sign tests on the `S_N⁺` side.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::chebyshev::{cheb_at_sqrt, cheb_pair};
use crate::error::{Error, Result};
use crate::quadratic::QuadraticValue;
use crate::rational::Rational;

/// The two free quantum group families carrying the semigroups.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// `O_N⁺`, admissible for `N ≥ 2`.
    FreeOrthogonal,
    /// `S_N⁺`, admissible for `N ≥ 4`.
    FreePermutation,
}

impl Family {
    pub fn short_name(&self) -> &'static str {
        match self {
            Family::FreeOrthogonal => "O",
            Family::FreePermutation => "S",
        }
    }
}

/// A family together with its parameter `N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GroupKind {
    family: Family,
    n: u64,
}

impl GroupKind {
    pub fn new(family: Family, n: u64) -> Result<Self> {
        let min = match family {
            Family::FreeOrthogonal => 2,
            Family::FreePermutation => 4,
        };
        if n < min {
            return Err(Error::InvalidGroup(format!(
                "{}_N+ requires N >= {min}, got N = {n}",
                family.short_name()
            )));
        }
        Ok(Self { family, n })
    }

    pub fn free_orthogonal(n: u64) -> Result<Self> {
        Self::new(Family::FreeOrthogonal, n)
    }

    pub fn free_permutation(n: u64) -> Result<Self> {
        Self::new(Family::FreePermutation, n)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn n(&self) -> u64 {
        self.n
    }
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{}+", self.family.short_name(), self.n)
    }
}

/// One spectral level: eigenvalue, eigenspace dimension and multiplicity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectralLine {
    pub s: u64,
    /// Generator eigenvalue `λ_s ≤ 0`, exactly.
    pub lambda: Rational,
    /// `dim u^(s)`.
    pub dim: BigInt,
    /// `m_s = dim²`.
    pub mult: BigInt,
}

/// Upper eigenvalue bound from the bound lemmas.
#[derive(Debug, Clone, PartialEq)]
pub enum UpperBound {
    /// `1/0 = ∞` convention at `N = 2` (orthogonal) or `N = 4` (permutation).
    Infinite,
    /// Exact rational `s/(N−2)` (orthogonal family).
    Rational(Rational),
    /// Exact `s/(N−2√N) = a + b√N` with rational `a`, `b` (permutation
    /// family; irrational for non-square `N`).
    PlusSqrt {
        a: Rational,
        b: Rational,
        radicand: u64,
    },
}

impl UpperBound {
    pub fn is_finite(&self) -> bool {
        !matches!(self, UpperBound::Infinite)
    }

    /// Nearest-double approximation (∞ for the infinite bound).
    pub fn approx(&self) -> f64 {
        match self {
            UpperBound::Infinite => f64::INFINITY,
            UpperBound::Rational(r) => crate::rational::to_f64(r),
            UpperBound::PlusSqrt { a, b, radicand } => {
                crate::rational::to_f64(a)
                    + crate::rational::to_f64(b) * (*radicand as f64).sqrt()
            }
        }
    }
}

impl fmt::Display for UpperBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UpperBound::Infinite => write!(f, "inf"),
            UpperBound::Rational(r) => write!(f, "{}", crate::rational::format_rational(r)),
            UpperBound::PlusSqrt { a, b, radicand } => write!(
                f,
                "{} + {}*sqrt({})",
                crate::rational::format_rational(a),
                crate::rational::format_rational(b),
                radicand
            ),
        }
    }
}

/// Result of the exact comparison chain `s/N ≤ −λ_s ≤ upper`.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub lower: Rational,
    pub upper: UpperBound,
    pub holds: bool,
    pub upper_finite: bool,
}

/// `λ_s`, exactly.
pub fn eigenvalue(kind: GroupKind, s: u64) -> Rational {
    match kind.family {
        Family::FreeOrthogonal => {
            let n = Rational::from_integer(BigInt::from(kind.n));
            let (value, derivative) = cheb_pair(s, &n);
            -(derivative / value)
        }
        Family::FreePermutation => {
            let (value, derivative) = cheb_at_sqrt(2 * s, kind.n);
            // parity: U_{2s}(√N) ∈ ℤ, U_{2s}'(√N) ∈ ℤ·√N, so
            // λ_s = −B√N / (2√N·A) = −B/(2A)
            debug_assert!(value.sqrt_coefficient().is_zero());
            debug_assert!(derivative.rational_part().is_zero());
            let a = value.rational_part().clone();
            let b = derivative.sqrt_coefficient().clone();
            -Rational::new(b, BigInt::from(2) * a)
        }
    }
}

/// Eigenvalue, dimension and multiplicity of level `s`.
pub fn spectral_line(kind: GroupKind, s: u64) -> SpectralLine {
    let (lambda, dim) = match kind.family {
        Family::FreeOrthogonal => {
            let n = Rational::from_integer(BigInt::from(kind.n));
            let (value, derivative) = cheb_pair(s, &n);
            let dim = value.to_integer();
            (-(derivative / value), dim)
        }
        Family::FreePermutation => {
            let (value, derivative) = cheb_at_sqrt(2 * s, kind.n);
            debug_assert!(value.sqrt_coefficient().is_zero());
            let a = value.rational_part().clone();
            let b = derivative.sqrt_coefficient().clone();
            (-Rational::new(b, BigInt::from(2) * a.clone()), a)
        }
    };
    let mult = &dim * &dim;
    SpectralLine { s, lambda, dim, mult }
}

/// Incremental walk over `(s, U-value, U′-value)` at the group's evaluation
/// point, stepping the coupled recurrence once per level instead of restarting
/// it. For `O_N⁺` the pair is `(U_s(N), U_s′(N))`, both integers; for `S_N⁺`
/// it is `(A_s, B_s)` with `U_{2s}(√N) = A_s` and `U_{2s}′(√N) = B_s·√N`.
pub(crate) struct LevelWalker {
    kind: GroupKind,
    s: u64,
    // orthogonal state: (U_{k−1}, U'_{k−1}, U_k, U'_k) at k = s
    o_state: Option<(BigInt, BigInt, BigInt, BigInt)>,
    // permutation state over ℤ[√N] at index m = 2s
    s_state: Option<(QuadraticValue, QuadraticValue, QuadraticValue, QuadraticValue)>,
}

impl LevelWalker {
    pub(crate) fn new(kind: GroupKind) -> Self {
        Self {
            kind,
            s: 0,
            o_state: None,
            s_state: None,
        }
    }

    /// Advances to the next level and returns `(s, A, B)` with
    /// `−λ_s = B/A` (orthogonal) or `−λ_s = B/(2A)` (permutation), plus the
    /// dimension `A` either way.
    pub(crate) fn next_level(&mut self) -> (u64, BigInt, BigInt) {
        self.s += 1;
        match self.kind.family {
            Family::FreeOrthogonal => {
                let n = BigInt::from(self.kind.n);
                let state = self.o_state.get_or_insert_with(|| {
                    // (U_0, U'_0, U_1, U'_1) at x = N
                    (BigInt::from(1), BigInt::from(0), n.clone(), BigInt::from(1))
                });
                if self.s > 1 {
                    let (u_prev, d_prev, u, d) = state;
                    let u_next = &n * &*u - &*u_prev;
                    let d_next = &*u + &n * &*d - &*d_prev;
                    *u_prev = std::mem::replace(u, u_next);
                    *d_prev = std::mem::replace(d, d_next);
                }
                let (_, _, u, d) = state;
                (self.s, u.clone(), d.clone())
            }
            Family::FreePermutation => {
                let n = self.kind.n;
                let x = QuadraticValue::sqrt_n(n);
                let state = self.s_state.get_or_insert_with(|| {
                    // (U_1, U'_1, U_2, U'_2) at x = √N
                    let u1 = x.clone();
                    let d1 = QuadraticValue::one(n);
                    let u2 = x.mul(&u1).sub(&QuadraticValue::one(n));
                    let d2 = u1.add(&x.mul(&d1));
                    (u1, d1, u2, d2)
                });
                if self.s > 1 {
                    // two recurrence steps: m = 2s−1 and m = 2s
                    for _ in 0..2 {
                        let (u_prev, d_prev, u, d) = &mut *state;
                        let u_next = x.mul(u).sub(u_prev);
                        let d_next = u.add(&x.mul(d)).sub(d_prev);
                        *u_prev = std::mem::replace(u, u_next);
                        *d_prev = std::mem::replace(d, d_next);
                    }
                }
                let (_, _, u, d) = state;
                debug_assert!(u.sqrt_coefficient().is_zero());
                debug_assert!(d.rational_part().is_zero());
                (
                    self.s,
                    u.rational_part().clone(),
                    d.sqrt_coefficient().clone(),
                )
            }
        }
    }

    /// `−λ_s` for the level just produced, from its `(A, B)` pair.
    pub(crate) fn minus_lambda(&self, a: BigInt, b: BigInt) -> Rational {
        match self.kind.family {
            Family::FreeOrthogonal => Rational::new(b, a),
            Family::FreePermutation => Rational::new(b, BigInt::from(2) * a),
        }
    }

    /// Enclosure of `−λ_s` without the exact-reduction cost.
    pub(crate) fn minus_lambda_enclosure(
        &self,
        a: &BigInt,
        b: &BigInt,
    ) -> crate::interval::CertifiedValue {
        match self.kind.family {
            Family::FreeOrthogonal => crate::interval::bigint_ratio_enclosure(b, a),
            Family::FreePermutation => {
                crate::interval::bigint_ratio_enclosure(b, &(BigInt::from(2) * a))
            }
        }
    }
}

/// All levels `0..=smax` in one pass of the recurrences.
pub fn spectral_lines_up_to(kind: GroupKind, smax: u64) -> Vec<SpectralLine> {
    let mut lines = Vec::with_capacity(smax as usize + 1);
    lines.push(SpectralLine {
        s: 0,
        lambda: Rational::zero(),
        dim: BigInt::from(1),
        mult: BigInt::from(1),
    });
    let mut walker = LevelWalker::new(kind);
    for _ in 1..=smax {
        let (s, a, b) = walker.next_level();
        let lambda = -walker.minus_lambda(a.clone(), b);
        let mult = &a * &a;
        lines.push(SpectralLine {
            s,
            lambda,
            dim: a,
            mult,
        });
    }
    lines
}

/// Builds the bound verdict at level `s` from the recurrence pair `(A, B)`
/// (see [`LevelWalker::next_level`]).
fn make_report(kind: GroupKind, s: u64, a: BigInt, b: BigInt) -> BoundReport {
    let n = kind.n;
    let lower = Rational::new(BigInt::from(s), BigInt::from(n));
    let minus_lambda = match kind.family {
        Family::FreeOrthogonal => Rational::new(b.clone(), a.clone()),
        Family::FreePermutation => Rational::new(b.clone(), BigInt::from(2) * &a),
    };
    let lower_ok = lower <= minus_lambda;

    let (upper, upper_ok) = match kind.family {
        Family::FreeOrthogonal => {
            if n == 2 {
                (UpperBound::Infinite, true)
            } else {
                let ub = Rational::new(BigInt::from(s), BigInt::from(n - 2));
                let ok = minus_lambda <= ub;
                (UpperBound::Rational(ub), ok)
            }
        }
        Family::FreePermutation => {
            if n == 4 {
                (UpperBound::Infinite, true)
            } else {
                // s/(N−2√N) rationalised: s/(N−4) + (2s/(N(N−4)))·√N
                let a_rat = Rational::new(BigInt::from(s), BigInt::from(n - 4));
                let b_rat =
                    Rational::new(BigInt::from(2 * s), BigInt::from(n) * BigInt::from(n - 4));
                // −λ_s = B/(2A) ≤ s/(N−2√N)  ⇔  (2As − BN) + 2B√N ≥ 0
                let test = QuadraticValue::new(
                    BigInt::from(2) * &a * BigInt::from(s) - &b * BigInt::from(n),
                    BigInt::from(2) * b,
                    n,
                );
                let ok = test.sign() != Ordering::Less;
                (
                    UpperBound::PlusSqrt {
                        a: a_rat,
                        b: b_rat,
                        radicand: n,
                    },
                    ok,
                )
            }
        }
    };

    let upper_finite = upper.is_finite();
    BoundReport {
        lower,
        upper,
        holds: lower_ok && upper_ok,
        upper_finite,
    }
}

/// Exact verification of the bound lemma `s/N ≤ −λ_s ≤ upper` at level `s`.
pub fn bound_report(kind: GroupKind, s: u64) -> Result<BoundReport> {
    if s == 0 {
        return Err(Error::InvalidParameter(
            "eigenvalue bounds are stated for s >= 1".into(),
        ));
    }
    let (a, b) = match kind.family {
        Family::FreeOrthogonal => {
            let n = Rational::from_integer(BigInt::from(kind.n));
            let (value, derivative) = cheb_pair(s, &n);
            (value.to_integer(), derivative.to_integer())
        }
        Family::FreePermutation => {
            let (value, derivative) = cheb_at_sqrt(2 * s, kind.n);
            (
                value.rational_part().clone(),
                derivative.sqrt_coefficient().clone(),
            )
        }
    };
    Ok(make_report(kind, s, a, b))
}

/// Bound verdicts for every `1 ≤ s ≤ smax` in one recurrence pass.
pub fn bound_reports_up_to(kind: GroupKind, smax: u64) -> Vec<BoundReport> {
    let mut walker = LevelWalker::new(kind);
    (1..=smax)
        .map(|_| {
            let (s, a, b) = walker.next_level();
            make_report(kind, s, a, b)
        })
        .collect()
}

/// Spectral-gap constant `m = 1/N`, with an exact internal consistency check
/// that `−λ_s ≥ 1/N` for the first levels.
pub fn spectral_gap(kind: GroupKind) -> Rational {
    let gap = Rational::new(BigInt::from(1), BigInt::from(kind.n));
    for s in 1..=64 {
        let minus_lambda = -eigenvalue(kind, s);
        assert!(
            minus_lambda >= gap,
            "spectral gap violated at {kind}, s = {s}"
        );
    }
    gap
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chebyshev::cheb_coeff_eval;
    use crate::rational::{from_int, rational};

    fn o(n: u64) -> GroupKind {
        GroupKind::free_orthogonal(n).unwrap()
    }

    fn s(n: u64) -> GroupKind {
        GroupKind::free_permutation(n).unwrap()
    }

    #[test]
    fn group_validation() {
        assert!(GroupKind::free_orthogonal(1).is_err());
        assert!(GroupKind::free_orthogonal(2).is_ok());
        assert!(GroupKind::free_permutation(3).is_err());
        assert!(GroupKind::free_permutation(4).is_ok());
    }

    #[test]
    fn closed_form_eigenvalues_o2_and_s4() {
        for k in 0..=200u64 {
            assert_eq!(
                eigenvalue(o(2), k),
                Rational::new(-BigInt::from(k) * BigInt::from(k + 2), BigInt::from(6)),
                "O_2+ s={k}"
            );
            assert_eq!(
                eigenvalue(s(4), k),
                Rational::new(-BigInt::from(k) * BigInt::from(k + 1), BigInt::from(6)),
                "S_4+ s={k}"
            );
        }
    }

    #[test]
    fn first_level_eigenvalues() {
        for n in 2..=12u64 {
            assert_eq!(eigenvalue(o(n), 1), rational(-1, n as i64));
        }
        for n in 4..=12u64 {
            assert_eq!(eigenvalue(s(n), 1), rational(-1, n as i64 - 1));
        }
    }

    #[test]
    fn dimensions() {
        let line = spectral_line(o(2), 7);
        assert_eq!(line.dim, BigInt::from(8));
        assert_eq!(line.mult, BigInt::from(64));
        assert_eq!(spectral_line(o(3), 2).dim, BigInt::from(8));
        assert_eq!(spectral_line(s(4), 1).dim, BigInt::from(3));
        // s = 0 is the constants
        let zero = spectral_line(o(5), 0);
        assert_eq!(zero.lambda, from_int(0));
        assert_eq!(zero.dim, BigInt::from(1));
    }

    #[test]
    fn bound_report_examples() {
        let r = bound_report(o(2), 5).unwrap();
        assert_eq!(r.lower, rational(5, 2));
        assert_eq!(r.upper, UpperBound::Infinite);
        assert!(!r.upper_finite);
        assert!(r.holds);

        // lower bound saturated at s = 1
        for n in 2..=10u64 {
            let r = bound_report(o(n), 1).unwrap();
            assert_eq!(-eigenvalue(o(n), 1), r.lower);
            assert!(r.holds);
        }

        // S_9+: 1/9 ≤ 1/8 ≤ 1/3
        let r = bound_report(s(9), 1).unwrap();
        assert_eq!(r.lower, rational(1, 9));
        assert_eq!(eigenvalue(s(9), 1), rational(-1, 8));
        match &r.upper {
            UpperBound::PlusSqrt { a, b, radicand } => {
                // 1/(9−2·3) = 1/3 = 1/5 + (2/45)·3
                assert_eq!(*radicand, 9);
                let reconstructed = a + b * from_int(3);
                assert_eq!(reconstructed, rational(1, 3));
            }
            other => panic!("expected PlusSqrt, got {other:?}"),
        }
        assert!(r.holds);

        assert!(bound_report(o(3), 0).is_err());
    }

    #[test]
    fn bound_lemma_sweep_small() {
        for n in 2..=8u64 {
            for k in 1..=60 {
                assert!(bound_report(o(n), k).unwrap().holds, "O n={n} s={k}");
            }
        }
        for n in 4..=8u64 {
            for k in 1..=60 {
                assert!(bound_report(s(n), k).unwrap().holds, "S n={n} s={k}");
            }
        }
    }

    #[test]
    fn gap_values() {
        assert_eq!(spectral_gap(o(5)), rational(1, 5));
        assert_eq!(spectral_gap(s(4)), rational(1, 4));
        assert_eq!(spectral_gap(o(2)), rational(1, 2));
        assert_eq!(-eigenvalue(o(2), 1), rational(1, 2));
    }

    #[test]
    fn monotone_decay_and_dimension_growth() {
        for kind in [o(2), o(7), s(4), s(11)] {
            let lines = spectral_lines_up_to(kind, 200);
            for w in lines.windows(2) {
                assert!(w[1].lambda < w[0].lambda, "{kind} s={}", w[1].s);
            }
        }
        for kind in [o(3), o(10), s(5), s(10)] {
            let lines = spectral_lines_up_to(kind, 200);
            for w in lines.windows(2) {
                assert!(w[1].dim > w[0].dim && w[0].dim >= BigInt::from(1));
            }
        }
    }

    #[test]
    fn eigenvalue_consistent_with_coefficient_oracle() {
        // derivative of the explicit sum: Σ (−1)^p C(k−p,p)(k−2p) x^{k−2p−1}
        fn coeff_derivative(k: u64, x: &Rational) -> Rational {
            use num_integer::binomial;
            let mut acc = Rational::zero();
            for p in 0..=(k / 2) {
                let e = k - 2 * p;
                if e == 0 {
                    continue;
                }
                let c = binomial(BigInt::from(k - p), BigInt::from(p)) * BigInt::from(e);
                let mut term = Rational::from_integer(c);
                for _ in 0..(e - 1) {
                    term *= x;
                }
                if p % 2 == 0 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            acc
        }

        for n in [2u64, 3, 7] {
            let x = from_int(n as i64);
            for k in 0..=60u64 {
                let from_coeffs = -(coeff_derivative(k, &x) / cheb_coeff_eval(k, &x));
                assert_eq!(eigenvalue(o(n), k), from_coeffs, "n={n} s={k}");
            }
        }
    }

    #[test]
    fn permutation_eigenvalues_are_rational_by_construction() {
        for n in [4u64, 5, 9, 12, 16] {
            for k in 0..=40 {
                // constructing the eigenvalue asserts the parity cancellation
                let lambda = eigenvalue(s(n), k);
                assert!(lambda <= Rational::zero());
            }
        }
    }
}
