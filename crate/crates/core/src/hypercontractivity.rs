//! Hypercontractivity times and the log-Sobolev constant.
//!
//! `T_t : L² → L^p` is a contraction once
//! `G(τ) = (p−1)·Σ_{s≥1}(βs+γ)²e^{2λ_s τ} ≤ 1`. Three routes to a time:
//!
//! * [`tau_series`]: certified bisection for `G(τ) = 1` using exact
//!   eigenvalues for the head of the series and the domination
//!   `λ_s ≤ −s/N` for the tail (sharpest).
//! * [`tau_cubic`]: replaces every eigenvalue by `−s/N`, which turns the
//!   condition into a cubic-over-cubic equation whose smallest positive root
//!   is isolated by exact rational bisection; `τ = −(N/2)·ln(root)`.
//! * [`tau_linear`]: the closed `(cN/2)·ln(p−1) + (1−2/p)·N·ln(constant)`
//!   bound with `c = 2ln(√3+1)/ln 3` (orthogonal) or
//!   `d = ln((11+√105)/2)/ln 3` (permutation), certified for `p ≥ 4`.
//!
//! The log-Sobolev constant is `t₀/2` where `t₀` is the best certified
//! `L²→L⁴` time, and the interpolation exponent path is `q(t) = 4/(2−t/t₀)`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::contractivity::EnvelopeParams;
use crate::error::{Error, Result};
use crate::interval::CertifiedValue;
use crate::rational::Rational;
use crate::spectrum::{Family, GroupKind};

/// Target exponent `p > 2` and the norm-comparison constant (`D_N` for the
/// orthogonal family, `C_N` for the permutation family; both are ≥ 1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HypParams {
    pub p: f64,
    pub constant: f64,
}

impl HypParams {
    pub fn new(p: f64, constant: f64) -> Result<Self> {
        if !(p > 2.0) {
            return Err(Error::InvalidParameter(format!(
                "hypercontractivity target needs p > 2, got {p}"
            )));
        }
        if !(constant >= 1.0) {
            return Err(Error::InvalidParameter(format!(
                "norm-comparison constant must be >= 1, got {constant}"
            )));
        }
        Ok(Self { p, constant })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TauMethod {
    Series,
    Cubic,
    Linear,
}

impl TauMethod {
    pub fn name(&self) -> &'static str {
        match self {
            TauMethod::Series => "series",
            TauMethod::Cubic => "cubic",
            TauMethod::Linear => "linear",
        }
    }
}

/// A certified hypercontractivity time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TauResult {
    pub tau: CertifiedValue,
    pub method: TauMethod,
}

/// `c = 2·ln(√3+1)/ln 3 ≈ 1.8297`, the orthogonal-family slope constant;
/// equivalently `3^c = 4 + 2√3`.
pub fn constant_c() -> CertifiedValue {
    let sqrt3 = CertifiedValue::exact(3.0).sqrt();
    sqrt3
        .add_f64(1.0)
        .ln()
        .scale(2.0)
        .div(&CertifiedValue::exact(3.0).ln())
}

/// `d = ln((11+√105)/2)/ln 3 ≈ 2.15096`, the permutation-family analog;
/// equivalently `4·3^{−2d} − 11·3^{−d} + 1 = 0`.
pub fn constant_d() -> CertifiedValue {
    let sqrt105 = CertifiedValue::exact(105.0).sqrt();
    sqrt105
        .add_f64(11.0)
        .scale(0.5)
        .ln()
        .div(&CertifiedValue::exact(3.0).ln())
}

fn family_slope(family: Family) -> CertifiedValue {
    match family {
        Family::FreeOrthogonal => constant_c(),
        Family::FreePermutation => constant_d(),
    }
}

/// Closed tails of the geometric moment sums over `s > m`:
/// `Σ q^s`, `Σ s·q^s`, `Σ s²·q^s`.
fn geometric_tails(q: &CertifiedValue, m: u64) -> (CertifiedValue, CertifiedValue, CertifiedValue) {
    let one = CertifiedValue::one();
    let omq = one.sub(q);
    let m1 = CertifiedValue::exact((m + 1) as f64);
    let qm1 = q.powi(m + 1);
    let t0 = qm1.div(&omq);
    let t1 = qm1.mul(&m1.div(&omq).add(&q.div(&omq.powi(2))));
    let t2 = qm1.mul(
        &m1.powi(2)
            .div(&omq)
            .add(&m1.scale(2.0).mul(q).div(&omq.powi(2)))
            .add(&q.mul(&one.add(q)).div(&omq.powi(3))),
    );
    (t0, t1, t2)
}

/// `Σ_{s>m} (βs+γ)² q^s` from the moment tails.
fn weighted_tail(params: &EnvelopeParams, q: &CertifiedValue, m: u64) -> CertifiedValue {
    let (t0, t1, t2) = geometric_tails(q, m);
    let beta = CertifiedValue::exact(params.beta);
    let gamma = CertifiedValue::exact(params.gamma);
    beta.powi(2)
        .mul(&t2)
        .add(&beta.mul(&gamma).scale(2.0).mul(&t1))
        .add(&gamma.powi(2).mul(&t0))
}

/// Split index for the exact-eigenvalue head, per the sizing rule
/// `max(32, ⌈N(ln(p−1) + 2ln(32β+γ))/τ⌉)`, clamped so that far-from-crossing
/// bracket probes stay cheap (the head alone decides those comparisons).
fn split_index(kind: GroupKind, params: &EnvelopeParams, p: f64, tau: f64, cap: u64) -> u64 {
    let n = kind.n() as f64;
    let guess = (n * ((p - 1.0).ln() + 2.0 * (params.beta * 32.0 + params.gamma).ln()) / tau)
        .ceil()
        .max(32.0);
    (guess as u64).clamp(32, cap)
}

fn gap_sum_with_split(
    kind: GroupKind,
    params: &EnvelopeParams,
    p: f64,
    tau: f64,
    s0: u64,
) -> CertifiedValue {
    let mut head = crate::interval::NonnegSum::new();
    let mut walker = crate::spectrum::LevelWalker::new(kind);
    for _ in 1..=s0 {
        let (s, a, b) = walker.next_level();
        let lam = walker.minus_lambda_enclosure(&a, &b).neg();
        let weight = CertifiedValue::exact(params.beta)
            .scale(s as f64)
            .add_f64(params.gamma);
        head.add(&weight.powi(2).mul(&lam.scale(2.0 * tau).exp()));
    }
    let head = head.enclosure();
    // tail dominated by λ_s ≤ −s/N; if τ is too small for 1−q to resolve,
    // the tail is unbounded but the head still certifies G from below
    let q = CertifiedValue::exact(-2.0 * tau / kind.n() as f64).exp();
    let pm1 = CertifiedValue::exact(p).add_f64(-1.0);
    if q.hi >= 1.0 {
        return CertifiedValue::new(pm1.mul(&head).lo, f64::INFINITY);
    }
    let tail = weighted_tail(params, &q, s0);
    let total = CertifiedValue::new(head.lo, head.hi + tail.hi.max(0.0));
    total.mul(&pm1)
}

/// Certified enclosure of `G(τ) = (p−1)·Σ_{s≥1}(βs+γ)²e^{2λ_s τ}`, with the
/// group's `(β, γ)` convention, exact eigenvalues up to the split index and
/// the `−s/N` domination beyond it.
pub fn hyper_gap_sum(
    kind: GroupKind,
    params: &HypParams,
    tau: f64,
    tol: f64,
) -> Result<CertifiedValue> {
    if !(tau > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "gap sum needs tau > 0, got {tau}"
        )));
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter("tol must be positive".into()));
    }
    let ep = EnvelopeParams::for_group(kind, params.constant)?;
    const CAP: u64 = 4096;
    let mut s0 = split_index(kind, &ep, params.p, tau, CAP);
    loop {
        let enc = gap_sum_with_split(kind, &ep, params.p, tau, s0);
        if enc.width() <= tol {
            return Ok(enc);
        }
        if s0 >= CAP {
            return Err(Error::ToleranceNotAchieved(format!(
                "gap sum at tau = {tau}: width {} > {tol}",
                enc.width()
            )));
        }
        s0 = (2 * s0).min(CAP);
    }
}

/// Certified bisection for the time with `G(τ) = 1`.
///
/// `G` is continuous, strictly decreasing, → ∞ at 0⁺ and → 0 at ∞, so the
/// crossing is unique; the returned bracket satisfies
/// `G(tau.lo) ≥ 1 ≥ G(tau.hi)` with certified comparisons.
pub fn tau_series(kind: GroupKind, params: &HypParams, tol: f64) -> Result<TauResult> {
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter("tol must be positive".into()));
    }
    let ep = EnvelopeParams::for_group(kind, params.constant)?;
    let g = |tau: f64| {
        let s0 = split_index(kind, &ep, params.p, tau, 512);
        gap_sum_with_split(kind, &ep, params.p, tau, s0)
    };

    // bracket the crossing: τ where G certifiably ≥ 1 / ≤ 1
    let mut hi = 1.0f64;
    let mut steps = 0;
    while g(hi).hi > 1.0 {
        hi *= 2.0;
        steps += 1;
        if steps > 100 {
            return Err(Error::ToleranceNotAchieved(
                "failed to bracket the gap-sum crossing from above".into(),
            ));
        }
    }
    let mut lo = 0.5 * hi;
    steps = 0;
    while g(lo).lo < 1.0 {
        lo *= 0.5;
        steps += 1;
        if steps > 100 {
            return Err(Error::ToleranceNotAchieved(
                "failed to bracket the gap-sum crossing from below".into(),
            ));
        }
    }

    'bisect: while hi - lo > tol {
        // if a split point lands where the G enclosure straddles 1, try a
        // few off-centre splits before declaring the bracket unresolvable
        for fraction in [0.5, 0.609375, 0.390625, 0.703125, 0.296875] {
            let mid = lo + fraction * (hi - lo);
            let gm = g(mid);
            if gm.lo >= 1.0 {
                lo = mid;
                continue 'bisect;
            }
            if gm.hi <= 1.0 {
                hi = mid;
                continue 'bisect;
            }
        }
        break;
    }
    if hi - lo > tol {
        return Err(Error::ToleranceNotAchieved(format!(
            "tau bisection stalled at width {}",
            hi - lo
        )));
    }
    Ok(TauResult {
        tau: CertifiedValue::new(lo, hi),
        method: TauMethod::Series,
    })
}

/// The defining equation of the cubic route: `numerator(X)/(1−X)³ = K` with
/// `numerator = X³−3X²+4X` (orthogonal) or `Y³−2Y²+9Y` (permutation) and
/// `K = 1/((p−1)·constant²) > 0`, kept as an exact rational.
#[derive(Debug, Clone, PartialEq)]
pub struct CubicEquation {
    pub family: Family,
    pub k: Rational,
}

impl CubicEquation {
    pub fn new(family: Family, params: &HypParams) -> Result<Self> {
        let p_rat = Rational::from_float(params.p)
            .ok_or_else(|| Error::InvalidParameter("p must be finite".into()))?;
        let c_rat = Rational::from_float(params.constant)
            .ok_or_else(|| Error::InvalidParameter("constant must be finite".into()))?;
        let k = Rational::one() / ((p_rat - Rational::one()) * (&c_rat * &c_rat));
        debug_assert!(k.is_positive());
        Ok(Self { family, k })
    }

    fn numerator(&self, x: &Rational) -> Rational {
        // X³ − 3X² + 4X (orthogonal), Y³ − 2Y² + 9Y (permutation)
        let (a, b) = match self.family {
            Family::FreeOrthogonal => (3, 4),
            Family::FreePermutation => (2, 9),
        };
        ((x - Rational::from_integer(BigInt::from(a))) * x
            + Rational::from_integer(BigInt::from(b)))
            * x
    }

    /// The sign-test polynomial `P(X) = numerator(X) − K(1−X)³`, negative
    /// left of the root and positive right of it on `(0, 1)`.
    pub fn polynomial(&self, x: &Rational) -> Rational {
        let one_minus = Rational::one() - x;
        self.numerator(x) - &self.k * (&one_minus * &one_minus * &one_minus)
    }

    /// Exact rational bracket `lo < root < hi` of the unique root in
    /// `(0, 1)`, refined until `predicate(lo, hi)` says to stop.
    ///
    /// On `(0, 1)` the ratio `numerator/(1−X)³` is the positive-coefficient
    /// series `Σ(s+1)²X^s` (resp. `Σ(2s+1)²Y^s`), strictly increasing from 0
    /// to ∞, so the root exists, is unique, and `P` changes sign exactly
    /// once: `P(0) = −K < 0` and `P(1) = numerator(1) > 0`.
    pub fn isolate_root(
        &self,
        mut stop: impl FnMut(&Rational, &Rational) -> bool,
    ) -> Result<(Rational, Rational)> {
        let two = Rational::from_integer(BigInt::from(2));
        let mut lo = Rational::zero();
        let mut hi = Rational::one();
        for _ in 0..20_000 {
            let mid = (&lo + &hi) / &two;
            let v = self.polynomial(&mid);
            if v.is_zero() {
                return Ok((mid.clone(), mid));
            } else if v.is_negative() {
                lo = mid;
            } else {
                hi = mid;
            }
            if !lo.is_zero() && stop(&lo, &hi) {
                return Ok((lo, hi));
            }
        }
        Err(Error::ToleranceNotAchieved(
            "cubic root isolation stalled".into(),
        ))
    }
}

/// Isolates the smallest positive root of the cubic-route equation in
/// `(0, 1)` by exact rational bisection and returns `τ = −(N/2)·ln(root)`
/// as a certified enclosure of width ≤ `tol`.
pub fn tau_cubic(kind: GroupKind, params: &HypParams, tol: f64) -> Result<TauResult> {
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter("tol must be positive".into()));
    }
    let equation = CubicEquation::new(kind.family(), params)?;
    let n_half = 0.5 * kind.n() as f64;
    // τ = −(N/2)·ln X is decreasing in X
    let tau_bracket = |lo: &Rational, hi: &Rational| -> CertifiedValue {
        let t_hi = crate::interval::rational_enclosure(lo).ln().scale(-n_half);
        let t_lo = crate::interval::rational_enclosure(hi).ln().scale(-n_half);
        CertifiedValue::new(t_lo.lo.max(0.0), t_hi.hi)
    };
    let (lo, hi) = equation.isolate_root(|lo, hi| tau_bracket(lo, hi).width() <= tol)?;
    Ok(TauResult {
        tau: tau_bracket(&lo, &hi),
        method: TauMethod::Cubic,
    })
}

/// The linear-in-log bound `(cN/2)·ln(p−1) + (1−2/p)·N·ln(constant)`.
///
/// Certified for `p ≥ 4`; smaller `p` (down to the uncharted `4 − ε₀`) is
/// only available behind `allow_unverified`.
pub fn tau_linear(kind: GroupKind, params: &HypParams, allow_unverified: bool) -> Result<TauResult> {
    if params.p < 4.0 && !allow_unverified {
        return Err(Error::UnverifiedRegime(format!(
            "linear bound is certified for p >= 4 only, got p = {}",
            params.p
        )));
    }
    let n = kind.n() as f64;
    let slope = family_slope(kind.family());
    let log_term = CertifiedValue::exact(params.p).add_f64(-1.0).ln();
    let first = slope.scale(0.5 * n).mul(&log_term);
    let second = CertifiedValue::exact(params.constant)
        .ln()
        .scale((1.0 - 2.0 / params.p) * n);
    Ok(TauResult {
        tau: first.add(&second),
        method: TauMethod::Linear,
    })
}

/// Certified enclosure of
/// `R_p = Σ_{s≥1}(p−1)^{1−cs}(s+1)^{2(1−2/p)}` (orthogonal) or the
/// `(2s+1)`-weighted analog with exponent `d` (permutation).
///
/// The head is summed term by term; the tail uses `(weight)^{2(1−2/p)} ≤
/// (weight)²` against the geometric decay. Diverges as `p → 2`, so `p` must
/// be strictly above 2.
pub fn r_p(family: Family, p: f64, tol: f64) -> Result<CertifiedValue> {
    if !(p >= 2.0) {
        return Err(Error::InvalidParameter(format!("r_p needs p >= 2, got {p}")));
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter("tol must be positive".into()));
    }
    let slope = family_slope(family);
    let pm1 = CertifiedValue::exact(p).add_f64(-1.0);
    let q = slope.neg().mul(&pm1.ln()).exp();
    if q.hi >= 1.0 {
        return Err(Error::ToleranceNotAchieved(format!(
            "R_p diverges as p -> 2 (q enclosure reaches {} at p = {p})",
            q.hi
        )));
    }
    let expo = CertifiedValue::exact(2.0).sub(&CertifiedValue::exact(4.0).div(&CertifiedValue::exact(p)));
    let weight = |s: u64| -> CertifiedValue {
        match family {
            Family::FreeOrthogonal => CertifiedValue::exact((s + 1) as f64),
            Family::FreePermutation => CertifiedValue::exact((2 * s + 1) as f64),
        }
    };
    // permutation weights satisfy (2s+1)² ≤ 4(s+1)²
    let tail_factor = match family {
        Family::FreeOrthogonal => 1.0,
        Family::FreePermutation => 4.0,
    };

    let mut sum = crate::interval::NonnegSum::new();
    let mut q_pow = CertifiedValue::one();
    let mut m = 0u64;
    const CAP: u64 = 2_000_000;
    loop {
        let chunk = (m / 2).max(32);
        for s in (m + 1)..=(m + chunk) {
            q_pow = q_pow.mul(&q);
            sum.add(&q_pow.mul(&weight(s).pow(&expo)));
        }
        m += chunk;
        // Σ_{s>m}(s+1)²q^s = T2(m+1)/q with the shifted index
        let (_, _, t2) = geometric_tails(&q, m + 1);
        let tail_hi = (pm1.mul(&t2.div(&q)).hi * tail_factor).max(0.0);
        let head = pm1.mul(&sum.enclosure());
        let total = CertifiedValue::new(head.lo, head.hi + tail_hi);
        if tail_hi <= 0.5 * tol && total.width() <= tol {
            return Ok(total);
        }
        if m >= CAP || (tail_hi <= 0.5 * tol && total.width() > tol) {
            return Err(Error::ToleranceNotAchieved(format!(
                "R_p at p = {p}: width {} > {tol} after {m} terms",
                total.width()
            )));
        }
    }
}

/// Scans `[p_lo, p_hi]` for the crossing `R_p = 1`, returning the first
/// bracketing pair of grid points (midpoint enclosures strictly on opposite
/// sides of 1), or `None` if the grid never crosses.
pub fn rp_crossing_scan(
    family: Family,
    p_lo: f64,
    p_hi: f64,
    steps: usize,
) -> Result<Option<(f64, f64)>> {
    if !(2.0 < p_lo && p_lo < p_hi) || steps < 2 {
        return Err(Error::InvalidParameter(
            "scan needs 2 < p_lo < p_hi and at least 2 steps".into(),
        ));
    }
    let mut previous: Option<(f64, bool)> = None;
    for i in 0..=steps {
        let p = p_lo + (p_hi - p_lo) * i as f64 / steps as f64;
        let enc = r_p(family, p, 1e-9)?;
        let above = enc.midpoint() > 1.0;
        if let Some((p_prev, above_prev)) = previous {
            if above_prev != above {
                return Ok(Some((p_prev, p)));
            }
        }
        previous = Some((p, above));
    }
    Ok(None)
}

/// Upper bound for the orthogonal-family constant `D_N`:
/// `(1−q²)⁻¹·Π_{s=1}^∞ (1−q^{2s})⁻³` with `q` solving `N = q + 1/q`,
/// `0 < q < 1`. The product is truncated once the log tail
/// `Σ_{s>r} 3q^{2s}/(1−q^{2s})` drops below `tol`, and the enclosure covers
/// the full limit.
pub fn dn_upper_bound(n: f64, tol: f64) -> Result<CertifiedValue> {
    Ok(dn_log_upper_bound(n, tol)?.exp())
}

/// Natural log of [`dn_upper_bound`] (useful for the `N·log D_N → 0` trend).
pub fn dn_log_upper_bound(n: f64, tol: f64) -> Result<CertifiedValue> {
    if !(n > 2.0) {
        return Err(Error::InvalidParameter(format!(
            "the bound needs N > 2 (so that 0 < q < 1), got {n}"
        )));
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter("tol must be positive".into()));
    }
    let one = CertifiedValue::one();
    let n_enc = CertifiedValue::exact(n);
    // stable form q = 2/(N + √(N²−4)) avoids the cancellation in (N−√(N²−4))/2
    let q = CertifiedValue::exact(2.0).div(&n_enc.add(&n_enc.powi(2).add_f64(-4.0).sqrt()));
    if q.hi >= 1.0 {
        return Err(Error::ToleranceNotAchieved(format!(
            "q enclosure reaches 1 at N = {n}"
        )));
    }
    let q2 = q.powi(2);
    let neg_ln_one_minus = |x: &CertifiedValue| one.sub(x).ln().neg();

    let mut log_bound = neg_ln_one_minus(&q2);
    let mut q2s = q2;
    for _ in 1..=20_000u32 {
        log_bound = log_bound.add(&neg_ln_one_minus(&q2s).scale(3.0));
        q2s = q2s.mul(&q2);
        // tail: Σ_{s>r} 3q^{2s}/(1−q^{2s}) ≤ 3q^{2(r+1)}/((1−q²)(1−q^{2(r+1)}))
        let tail = q2s
            .scale(3.0)
            .div(&one.sub(&q2).mul(&one.sub(&q2s)));
        if tail.hi < tol {
            return Ok(CertifiedValue::new(log_bound.lo, log_bound.hi + tail.hi));
        }
    }
    Err(Error::ToleranceNotAchieved(format!(
        "product tail still above {tol} after 20000 factors at N = {n}"
    )))
}

/// The log-Sobolev constant `c = t₀/2` with `t₀` the best certified `L²→L⁴`
/// time, reported alongside the cubic and linear times for comparison.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogSobolevReport {
    pub constant: CertifiedValue,
    pub tau_series: TauResult,
    pub tau_cubic: TauResult,
    pub tau_linear: TauResult,
}

pub fn log_sobolev_constant(kind: GroupKind, constant: f64, tol: f64) -> Result<LogSobolevReport> {
    let params = HypParams::new(4.0, constant)?;
    let series = tau_series(kind, &params, tol)?;
    let cubic = tau_cubic(kind, &params, tol)?;
    let linear = tau_linear(kind, &params, false)?;
    Ok(LogSobolevReport {
        constant: series.tau.scale(0.5),
        tau_series: series,
        tau_cubic: cubic,
        tau_linear: linear,
    })
}

/// Interpolation exponent path `q(t) = 4/(2 − t/t₀)` on `[0, t₀]`.
pub fn q_exponent_path(t: f64, t0: f64) -> Result<f64> {
    if !(t0 > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "t0 must be positive, got {t0}"
        )));
    }
    if !(0.0 <= t && t <= t0) {
        return Err(Error::InvalidParameter(format!(
            "t = {t} outside [0, {t0}]"
        )));
    }
    Ok(4.0 / (2.0 - t / t0))
}

/// Hölder interpolation surrogate `weight^{1−2/p}·‖x‖₂` for the level `p`
/// norm, where `weight` is the level's `L∞/L²` comparison constant.
pub fn holder_norm_surrogate(weight: f64, l2: f64, p: f64) -> f64 {
    weight.powf(1.0 - 2.0 / p) * l2
}
