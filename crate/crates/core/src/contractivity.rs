//! Ultracontractivity envelopes.
//!
//! The semigroup satisfies `‖T_t x‖_∞ ≤ √f(t)·‖x‖₂` with
//!
//! ```text
//! f(t) = [β²q(1+q) + 2βγq(1−q) + γ²(1−q)²] / (1−q)³,   q = e^{−2αt},
//! ```
//!
//! the closed form of `Σ_{s≥0} (βs+γ)² e^{−2αst}`, and `‖T_t x‖_∞ ≤
//! f(t/2)·‖x‖₁` by duality. For `O_2⁺` the exact eigenvalues give the sharper
//! envelope `g(t) = 4D²·Σ_{s≥1} s²e^{−s²t/3} + D²`, summed here with a
//! certified Gaussian tail bound. Small-time behaviour of the `L¹→L∞`
//! envelopes is quantified by a log-log slope fit (`dimension = −2·slope`).

use crate::error::{Error, Result};
use crate::interval::CertifiedValue;
use crate::spectrum::{Family, GroupKind};

/// Constants of the envelope hypotheses: eigenvalue slope `λ_s ≤ −α·s` and
/// norm comparison `‖x‖_∞ ≤ (βs+γ)‖x‖₂` on level `s`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnvelopeParams {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

impl EnvelopeParams {
    pub fn new(alpha: f64, beta: f64, gamma: f64) -> Result<Self> {
        if !(alpha > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "alpha must be positive, got {alpha}"
            )));
        }
        if !(beta >= 0.0 && gamma >= 0.0 && beta + gamma > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "need beta, gamma >= 0 and beta + gamma > 0, got ({beta}, {gamma})"
            )));
        }
        Ok(Self { alpha, beta, gamma })
    }

    /// Group convention: `(1/N, D, D)` for `O_N⁺` (from `‖x‖_∞ ≤ D(s+1)‖x‖₂`)
    /// and `(1/N, 2C, C)` for `S_N⁺` (from `‖x‖_∞ ≤ C(2s+1)‖x‖₂`).
    pub fn for_group(kind: GroupKind, constant: f64) -> Result<Self> {
        if !(constant >= 1.0) {
            return Err(Error::InvalidParameter(format!(
                "norm-comparison constant must be >= 1, got {constant}"
            )));
        }
        let alpha = 1.0 / kind.n() as f64;
        match kind.family() {
            Family::FreeOrthogonal => Self::new(alpha, constant, constant),
            Family::FreePermutation => Self::new(alpha, 2.0 * constant, constant),
        }
    }

    /// The level weight `βs + γ`.
    pub fn weight(&self, s: u64) -> f64 {
        self.beta * s as f64 + self.gamma
    }
}

/// Enclosures of `Σ e^{−λk}`, `Σ k·e^{−λk}`, `Σ k²·e^{−λk}` over `k ≥ 0`:
/// `1/(1−q)`, `q/(1−q)²`, `q(1+q)/(1−q)³` with `q = e^{−λ}`.
pub fn exp_series_moments(
    lam: f64,
) -> Result<(CertifiedValue, CertifiedValue, CertifiedValue)> {
    if !(lam > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "series moments need lambda > 0, got {lam}"
        )));
    }
    let one = CertifiedValue::one();
    let q = CertifiedValue::exact(-lam).exp();
    let omq = one.sub(&q);
    if !omq.is_positive() {
        return Err(Error::ToleranceNotAchieved(format!(
            "1 - e^(-lambda) not resolvable at lambda = {lam}"
        )));
    }
    let s0 = one.div(&omq);
    let s1 = q.div(&omq.powi(2));
    let s2 = q.mul(&one.add(&q)).div(&omq.powi(3));
    Ok((s0, s1, s2))
}

/// Enclosure of the envelope value `f(t) = Σ_{s≥0} (βs+γ)² e^{−2αst}`.
pub fn envelope_f(params: &EnvelopeParams, t: f64) -> Result<CertifiedValue> {
    if !(t > 0.0) {
        return Err(Error::InvalidParameter(format!("t must be positive, got {t}")));
    }
    let (s0, s1, s2) = exp_series_moments(2.0 * params.alpha * t)?;
    let beta = CertifiedValue::exact(params.beta);
    let gamma = CertifiedValue::exact(params.gamma);
    let bb = beta.mul(&beta).mul(&s2);
    let bg = beta.mul(&gamma).scale(2.0).mul(&s1);
    let gg = gamma.mul(&gamma).mul(&s0);
    Ok(bb.add(&bg).add(&gg))
}

/// [`envelope_f`] with the group's `(α, β, γ)` convention.
pub fn envelope_for_group(kind: GroupKind, constant: f64, t: f64) -> Result<CertifiedValue> {
    envelope_f(&EnvelopeParams::for_group(kind, constant)?, t)
}

/// `L¹→L∞` envelope `f(t/2)`, from dualising the `L²→L∞` bound.
pub fn l1_linf_envelope(params: &EnvelopeParams, t: f64) -> Result<CertifiedValue> {
    if !(t > 0.0) {
        return Err(Error::InvalidParameter(format!("t must be positive, got {t}")));
    }
    envelope_f(params, 0.5 * t)
}

/// Certified enclosure of `Σ_{s≥1} s² e^{−s²t/3}`.
///
/// Sums directly past the turning point `√(3/t)` and bounds the remainder by
/// `∫_m^∞ u²e^{−u²t/3} du + m²e^{−m²t/3}`, using
/// `∫_m^∞ e^{−au²} du ≤ e^{−am²}/(2am)`.
pub fn sum_s2_gaussian(t: f64, tol: f64) -> Result<CertifiedValue> {
    if !(t > 0.0) {
        return Err(Error::InvalidParameter(format!("t must be positive, got {t}")));
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter("tol must be positive".into()));
    }
    let a = CertifiedValue::exact(t).scale(1.0 / 3.0);
    if !a.is_positive() {
        return Err(Error::InvalidParameter(format!(
            "t = {t} too small for the decay rate to resolve"
        )));
    }
    let term = |s: u64| -> CertifiedValue {
        let s2 = CertifiedValue::exact(s as f64).powi(2);
        s2.mul(&a.mul(&s2).neg().exp())
    };

    let mut m = ((3.0 / t).sqrt().ceil() as u64).max(1) + 1;
    let mut partial = crate::interval::NonnegSum::new();
    for s in 1..=m {
        partial.add(&term(s));
    }
    const CAP: u64 = 5_000_000;
    loop {
        // tail over s > m: integral bound plus one guard term
        let mf = CertifiedValue::exact(m as f64);
        let decay = a.mul(&mf.powi(2)).neg().exp();
        let integral = mf
            .div(&a.scale(2.0))
            .add(&CertifiedValue::one().div(&a.powi(2).scale(4.0).mul(&mf)));
        let tail_hi = decay.mul(&integral.add(&mf.powi(2))).hi;
        let head = partial.enclosure();
        let enc = CertifiedValue::new(head.lo, head.hi + tail_hi);
        if tail_hi <= 0.5 * tol && enc.width() <= tol {
            return Ok(enc);
        }
        if m >= CAP || (tail_hi <= 0.5 * tol && enc.width() > tol) {
            // more terms cannot shrink the width once the tail is resolved
            return Err(Error::ToleranceNotAchieved(format!(
                "gaussian sum at t = {t}: width {} > {tol} after {m} terms",
                enc.width()
            )));
        }
        let next = (2 * m).min(CAP);
        for s in (m + 1)..=next {
            partial.add(&term(s));
        }
        m = next;
    }
}

/// Enclosure of the sharper `O_2⁺` envelope `g(t) = 4D²Σ_{s≥1}s²e^{−s²t/3} + D²`.
pub fn envelope_g_o2(d: f64, t: f64, tol: f64) -> Result<CertifiedValue> {
    if !(d >= 1.0) {
        return Err(Error::InvalidParameter(format!(
            "norm-comparison constant must be >= 1, got {d}"
        )));
    }
    let scale = 4.0 * d * d;
    let sum = sum_s2_gaussian(t, tol / (2.0 * scale))?;
    Ok(sum.scale(scale).add_f64(d * d))
}

/// Quadrature oracle for `I = ∫₀^∞ u²e^{−u²} du` by adaptive Simpson
/// refinement to the requested absolute accuracy (the value is computed,
/// never hard-coded). The integrand beyond `u = 8` contributes less than
/// `5e^{−64}`, which is folded into the enclosure.
pub fn u2_gauss_integral(tol: f64) -> CertifiedValue {
    assert!(tol > 0.0 && tol.is_finite());
    let f = |u: f64| u * u * (-u * u).exp();
    let value = adaptive_simpson(&f, 0.0, 8.0, tol * 0.5, 30);
    let tail = (-64.0f64).exp() * 5.0;
    CertifiedValue::new(value - tol, value + tol + tail)
}

fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64, depth: u32) -> f64 {
    fn simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64) -> f64 {
        (b - a) / 6.0 * (f(a) + 4.0 * f(0.5 * (a + b)) + f(b))
    }
    let mid = 0.5 * (a + b);
    let whole = simpson(f, a, b);
    let left = simpson(f, a, mid);
    let right = simpson(f, mid, b);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        left + right + delta / 15.0
    } else {
        adaptive_simpson(f, a, mid, 0.5 * tol, depth - 1)
            + adaptive_simpson(f, mid, b, 0.5 * tol, depth - 1)
    }
}

/// Small-time "dimension" of an `L¹→L∞` envelope: `−2 ×` the least-squares
/// slope of `log envelope(t)` against `log t` on a log-spaced grid.
///
/// The evaluator is invoked sequentially; it must be an `L¹→L∞` envelope for
/// the heat-kernel dimension convention to apply.
pub fn dimension_estimate<F>(envelope: F, t_lo: f64, t_hi: f64, npoints: usize) -> Result<f64>
where
    F: Fn(f64) -> Result<CertifiedValue>,
{
    if !(t_lo > 0.0 && t_lo < t_hi) {
        return Err(Error::InvalidParameter(format!(
            "need 0 < t_lo < t_hi, got [{t_lo}, {t_hi}]"
        )));
    }
    if npoints < 3 {
        return Err(Error::InvalidParameter("need at least 3 grid points".into()));
    }
    let (la, lb) = (t_lo.ln(), t_hi.ln());
    let mut xs = Vec::with_capacity(npoints);
    let mut ys = Vec::with_capacity(npoints);
    for i in 0..npoints {
        let x = la + (lb - la) * i as f64 / (npoints - 1) as f64;
        let value = envelope(x.exp())?;
        let mid = value.midpoint();
        if !(mid > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "envelope not positive at t = {}",
                x.exp()
            )));
        }
        xs.push(x);
        ys.push(mid.ln());
    }
    let n = npoints as f64;
    let xbar = xs.iter().sum::<f64>() / n;
    let ybar = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - xbar) * (y - ybar)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - xbar) * (x - xbar)).sum();
    Ok(-2.0 * sxy / sxx)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn o(n: u64) -> GroupKind {
        GroupKind::free_orthogonal(n).unwrap()
    }

    fn s(n: u64) -> GroupKind {
        GroupKind::free_permutation(n).unwrap()
    }

    /// Plain-f64 bracket of Σ_{s≥0}(βs+γ)²q^s via partial sum + closed tail.
    fn brute_force_f(params: &EnvelopeParams, t: f64, terms: u64) -> (f64, f64) {
        let q = (-2.0 * params.alpha * t).exp();
        let mut partial = 0.0;
        let mut qs = 1.0;
        for s in 0..=terms {
            let w = params.weight(s);
            partial += w * w * qs;
            qs *= q;
        }
        let m = terms as f64;
        let omq = 1.0 - q;
        let qm = q.powf(m + 1.0);
        let t0 = qm / omq;
        let t1 = qm * ((m + 1.0) / omq + q / (omq * omq));
        let t2 = qm
            * ((m + 1.0) * (m + 1.0) / omq
                + 2.0 * (m + 1.0) * q / (omq * omq)
                + q * (1.0 + q) / (omq * omq * omq));
        let tail = params.beta * params.beta * t2
            + 2.0 * params.beta * params.gamma * t1
            + params.gamma * params.gamma * t0;
        (partial * (1.0 - 1e-12), (partial + tail) * (1.0 + 1e-12))
    }

    #[test]
    fn series_moments_at_ln2() {
        let (s0, s1, s2) = exp_series_moments(2.0f64.ln()).unwrap();
        assert!(s0.contains(2.0));
        assert!(s1.contains(2.0));
        // Σ k²/2^k = 6
        assert!(s2.contains(6.0));
        let (s0, s1, s2) = exp_series_moments(50.0).unwrap();
        assert!((s0.midpoint() - 1.0).abs() < 1e-12);
        assert!(s1.hi < 1e-12 && s2.hi < 1e-12);
    }

    #[test]
    fn envelope_matches_brute_force() {
        let cases = [
            (EnvelopeParams::new(0.5, 1.0, 1.0).unwrap(), 1.0),
            (EnvelopeParams::new(1.0 / 3.0, 2.0, 2.0).unwrap(), 1.0),
            (EnvelopeParams::new(0.25, 2.0, 1.0).unwrap(), 0.3),
            (EnvelopeParams::new(0.125, 0.0, 3.0).unwrap(), 2.0),
        ];
        for (params, t) in &cases {
            let enc = envelope_f(params, *t).unwrap();
            let (lo, hi) = brute_force_f(params, *t, 10_000);
            assert!(enc.hi >= lo && enc.lo <= hi, "disjoint from oracle");
            assert!(enc.width() / enc.midpoint() < 1e-8);
        }
    }

    #[test]
    fn envelope_with_random_params_intersects_oracle() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let params = EnvelopeParams::new(
                rng.random_range(0.05..2.0),
                rng.random_range(0.0..3.0),
                rng.random_range(0.5..3.0),
            )
            .unwrap();
            let t = rng.random_range(0.05..5.0);
            let enc = envelope_f(&params, t).unwrap();
            let (lo, hi) = brute_force_f(&params, t, 10_000);
            assert!(enc.hi >= lo && enc.lo <= hi);
            assert!(enc.width() / enc.midpoint() < 1e-8);
        }
    }

    #[test]
    fn envelope_beta_zero_closed_form() {
        let params = EnvelopeParams::new(0.7, 0.0, 1.5).unwrap();
        for t in [0.1, 1.0, 4.0] {
            let enc = envelope_f(&params, t).unwrap();
            let expected = 1.5 * 1.5 / (1.0 - (-2.0 * 0.7 * t).exp());
            assert!(enc.contains(expected));
        }
    }

    #[test]
    fn envelope_long_time_limit_is_gamma_squared() {
        let params = EnvelopeParams::new(0.5, 2.0, 3.0).unwrap();
        let enc = envelope_f(&params, 60.0).unwrap();
        assert!((enc.midpoint() - 9.0).abs() < 1e-10);
    }

    #[test]
    fn envelope_strictly_decreasing() {
        let params = EnvelopeParams::for_group(o(3), 1.5).unwrap();
        let mut previous = f64::INFINITY;
        for i in 0..40 {
            let t = 0.05 * (i + 1) as f64;
            let mid = envelope_f(&params, t).unwrap().midpoint();
            assert!(mid < previous);
            previous = mid;
        }
    }

    #[test]
    fn small_time_law() {
        // f(t)·t³ → β²/(4α³)
        let params = EnvelopeParams::new(0.5, 2.0, 1.0).unwrap();
        let t = 1e-6;
        let value = envelope_f(&params, t).unwrap().midpoint() * t * t * t;
        let limit = params.beta * params.beta / (4.0 * params.alpha.powi(3));
        assert!((value - limit).abs() / limit < 0.01);
    }

    #[test]
    fn l1_linf_is_f_at_half_time() {
        let params = EnvelopeParams::for_group(s(5), 1.0).unwrap();
        let a = l1_linf_envelope(&params, 2.6).unwrap();
        let b = envelope_f(&params, 1.3).unwrap();
        assert_eq!(a, b);
        // β = 0 closed form at t = 2
        let p0 = EnvelopeParams::new(0.4, 0.0, 2.0).unwrap();
        let enc = l1_linf_envelope(&p0, 2.0).unwrap();
        assert!(enc.contains(4.0 / (1.0 - (-2.0f64 * 0.4).exp())));
    }

    #[test]
    fn group_parameter_plumbing() {
        let t = 0.8;
        let via_group = envelope_for_group(o(2), 1.0, t).unwrap();
        let direct = envelope_f(&EnvelopeParams::new(0.5, 1.0, 1.0).unwrap(), t).unwrap();
        assert_eq!(via_group, direct);
        let via_group = envelope_for_group(s(4), 1.0, t).unwrap();
        let direct = envelope_f(&EnvelopeParams::new(0.25, 2.0, 1.0).unwrap(), t).unwrap();
        assert_eq!(via_group, direct);
        assert!(envelope_for_group(o(3), 0.5, t).is_err());
    }

    #[test]
    fn gaussian_envelope_cases() {
        // t large: only the constant D² remains
        let enc = envelope_g_o2(1.0, 100.0, 1e-12).unwrap();
        assert!((enc.midpoint() - 1.0).abs() < 1e-10);

        // t = 3: direct summation oracle, converges in < 10 terms
        let mut oracle = 0.0;
        for s in 1..12u32 {
            let sf = s as f64;
            oracle += sf * sf * (-sf * sf).exp();
        }
        let enc = envelope_g_o2(1.0, 3.0, 1e-10).unwrap();
        assert!(enc.contains(4.0 * oracle + 1.0));
        assert!(enc.width() <= 1e-10);
    }

    #[test]
    fn gaussian_sum_sandwich() {
        // (3/t)^{3/2}·I ≤ 3/(et) + Σ ≤ 2·3/(et) + (3/t)^{3/2}·I
        let i = u2_gauss_integral(1e-10);
        for k in 0..20 {
            let t = 1e-4 * (10f64 / 1e-4).powf(k as f64 / 19.0);
            let sum = sum_s2_gaussian(t, 1e-9 * (1.0 + (3.0 / t).powf(1.5))).unwrap();
            let scaled_i = CertifiedValue::exact(3.0 / t)
                .pow(&CertifiedValue::exact(1.5))
                .mul(&i);
            let correction = CertifiedValue::exact(3.0)
                .div(&CertifiedValue::exact(t).scale(std::f64::consts::E));
            let middle = correction.add(&sum);
            let upper = correction.scale(2.0).add(&scaled_i);
            // certified comparisons: enclosures are far narrower than the gaps
            assert!(scaled_i.hi <= middle.lo, "lower sandwich fails at t={t}");
            assert!(middle.hi <= upper.lo, "upper sandwich fails at t={t}");
        }
    }

    #[test]
    fn dimension_of_synthetic_power_law() {
        for k in [1.0, 1.5, 3.0] {
            let dim =
                dimension_estimate(|t| Ok(CertifiedValue::exact(t.powf(-k))), 1e-6, 1e-4, 9)
                    .unwrap();
            assert!((dim - 2.0 * k).abs() < 1e-9, "k={k}: {dim}");
        }
    }

    #[test]
    fn dimension_of_group_envelopes() {
        // general O_N⁺ L¹→L∞ envelope: dimension 6
        let params = EnvelopeParams::for_group(o(2), 1.0).unwrap();
        let dim = dimension_estimate(|t| l1_linf_envelope(&params, t), 1e-6, 1e-4, 9).unwrap();
        assert!((dim - 6.0).abs() < 0.15, "O: {dim}");

        // O_2⁺ g-based L¹→L∞ envelope: dimension 3
        let dim = dimension_estimate(
            |t| {
                let scale = 1.0 + (6.0 / t).powf(1.5);
                envelope_g_o2(1.0, 0.5 * t, 1e-9 * scale)
            },
            1e-6,
            1e-4,
            9,
        )
        .unwrap();
        assert!((dim - 3.0).abs() < 0.15, "g: {dim}");
    }

    #[test]
    fn enclosure_soundness_under_tolerance_refinement() {
        let coarse = sum_s2_gaussian(0.7, 1e-4).unwrap();
        let fine = sum_s2_gaussian(0.7, 1e-10).unwrap();
        assert!(coarse.lo <= fine.lo && fine.hi <= coarse.hi);
    }

    #[test]
    fn invalid_inputs_rejected() {
        let params = EnvelopeParams::new(0.5, 1.0, 1.0).unwrap();
        assert!(envelope_f(&params, 0.0).is_err());
        assert!(envelope_f(&params, -1.0).is_err());
        assert!(exp_series_moments(0.0).is_err());
        assert!(EnvelopeParams::new(0.0, 1.0, 1.0).is_err());
        assert!(EnvelopeParams::new(1.0, 0.0, 0.0).is_err());
        assert!(dimension_estimate(|_| Ok(CertifiedValue::one()), 1.0, 2.0, 2).is_err());
    }
}
