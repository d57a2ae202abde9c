//! Finite-truncation model of algebra elements by per-level L² data.
//!
//! An element `x = h(x)·1 + Σ_{s≥1} x_s` is represented by its Haar-state
//! component and the norms `ν_s = ‖x_s‖₂`; the levels are orthogonal, so
//! `‖x‖₂² = mean² + Σν_s²`. Every quantity the inequality chains manipulate
//! (`‖x_s‖₂`, the `‖x_s‖_∞` surrogate `(βs+γ)ν_s`, `−h(xT_Lx)`) is a function
//! of these norms alone, which is why the model stores nothing else. The
//! semigroup acts diagonally: `ν_s ↦ e^{λ_s t}·ν_s` with the mean unchanged.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::contractivity::{envelope_f, EnvelopeParams};
use crate::error::{Error, Result};
use crate::hypercontractivity::{tau_series, HypParams};
use crate::rational::to_f64;
use crate::spectrum::{eigenvalue, GroupKind};

/// Mean component plus per-level L² norms (level `s` is `norms[s−1]`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LevelVector {
    pub mean: f64,
    pub norms: Vec<f64>,
}

impl LevelVector {
    pub fn new(mean: f64, norms: Vec<f64>) -> Result<Self> {
        if norms.iter().any(|v| !(*v >= 0.0)) {
            return Err(Error::InvalidParameter(
                "level norms must be nonnegative".into(),
            ));
        }
        if !mean.is_finite() {
            return Err(Error::InvalidParameter("mean must be finite".into()));
        }
        Ok(Self { mean, norms })
    }

    pub fn levels(&self) -> usize {
        self.norms.len()
    }
}

/// Comparison slack separating genuine inequality failures from rounding in
/// double-precision chains.
const REL_SLACK: f64 = 1e-10;

fn leq_with_slack(lhs: f64, rhs: f64) -> bool {
    lhs <= rhs + REL_SLACK * rhs.abs().max(lhs.abs()) + 1e-300
}

fn lambdas_f64(kind: GroupKind, levels: usize) -> Vec<f64> {
    (1..=levels).map(|s| to_f64(&eigenvalue(kind, s as u64))).collect()
}

/// Diagonal semigroup action: mean unchanged, `ν_s ↦ e^{λ_s t}·ν_s`.
pub fn heat_apply(kind: GroupKind, v: &LevelVector, t: f64) -> Result<LevelVector> {
    if !(t >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "heat flow needs t >= 0, got {t}"
        )));
    }
    let lambdas = lambdas_f64(kind, v.levels());
    let norms = v
        .norms
        .iter()
        .zip(&lambdas)
        .map(|(nu, lam)| nu * (lam * t).exp())
        .collect();
    Ok(LevelVector {
        mean: v.mean,
        norms,
    })
}

/// `‖x‖₂ = √(mean² + Σν_s²)`.
pub fn l2_norm(v: &LevelVector) -> f64 {
    (v.mean * v.mean + v.norms.iter().map(|nu| nu * nu).sum::<f64>()).sqrt()
}

/// Upper-bound surrogate for `‖x‖_∞`: `|mean| + Σ(βs+γ)ν_s` with the group's
/// envelope convention.
pub fn linf_upper(v: &LevelVector, kind: GroupKind, constant: f64) -> Result<f64> {
    let params = EnvelopeParams::for_group(kind, constant)?;
    Ok(v.mean.abs()
        + v.norms
            .iter()
            .enumerate()
            .map(|(i, nu)| params.weight(i as u64 + 1) * nu)
            .sum::<f64>())
}

/// `−h(xT_Lx) = Σ(−λ_s)ν_s²`.
pub fn dirichlet_energy(kind: GroupKind, v: &LevelVector) -> f64 {
    let lambdas = lambdas_f64(kind, v.levels());
    v.norms
        .iter()
        .zip(&lambdas)
        .map(|(nu, lam)| -lam * nu * nu)
        .sum()
}

/// Two sides of an inequality and whether it held (up to rounding slack).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InequalityReport {
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

/// Spectral-gap inequality `(1/N)·Σν_s² ≤ Σ(−λ_s)ν_s²`.
pub fn check_spectral_gap(kind: GroupKind, v: &LevelVector) -> InequalityReport {
    let lhs = v.norms.iter().map(|nu| nu * nu).sum::<f64>() / kind.n() as f64;
    let rhs = dirichlet_energy(kind, v);
    InequalityReport {
        lhs,
        rhs,
        holds: leq_with_slack(lhs, rhs),
    }
}

/// Ultracontractivity chain at time `t`:
/// `linf_upper(T_t x) ≤ √f(t)·‖x‖₂`.
pub fn check_ultra(
    kind: GroupKind,
    v: &LevelVector,
    t: f64,
    constant: f64,
) -> Result<InequalityReport> {
    if !(t > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "ultracontractivity check needs t > 0, got {t}"
        )));
    }
    let heated = heat_apply(kind, v, t)?;
    let lhs = linf_upper(&heated, kind, constant)?;
    let params = EnvelopeParams::for_group(kind, constant)?;
    let rhs = envelope_f(&params, t)?.hi.sqrt() * l2_norm(v);
    Ok(InequalityReport {
        lhs,
        rhs,
        holds: leq_with_slack(lhs, rhs),
    })
}

/// Outcome of the hypercontractivity chain check.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HyperChainReport {
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
    /// `t` was below the certified `τ_p`, so the inequality is untested
    /// rather than failed.
    pub untested_regime: bool,
}

/// Hypercontractivity chain at time `t`, given the certified threshold
/// `tau_hi` (an upper end of a `tau_series` enclosure):
/// `mean² + (p−1)(Σ e^{λ_s t}(βs+γ)ν_s)² ≤ ‖x‖₂²`.
pub fn check_hyper_chain_at(
    kind: GroupKind,
    v: &LevelVector,
    p: f64,
    t: f64,
    constant: f64,
    tau_hi: f64,
) -> Result<HyperChainReport> {
    let params = EnvelopeParams::for_group(kind, constant)?;
    if !(p > 2.0) {
        return Err(Error::InvalidParameter(format!(
            "chain check needs p > 2, got {p}"
        )));
    }
    let lambdas = lambdas_f64(kind, v.levels());
    let weighted: f64 = v
        .norms
        .iter()
        .zip(&lambdas)
        .enumerate()
        .map(|(i, (nu, lam))| (lam * t).exp() * params.weight(i as u64 + 1) * nu)
        .sum();
    let lhs = v.mean * v.mean + (p - 1.0) * weighted * weighted;
    let rhs = l2_norm(v).powi(2);
    let untested = t < tau_hi;
    Ok(HyperChainReport {
        lhs,
        rhs,
        holds: !untested && leq_with_slack(lhs, rhs),
        untested_regime: untested,
    })
}

/// [`check_hyper_chain_at`] with the threshold computed by certified
/// bisection.
pub fn check_hyper_chain(
    kind: GroupKind,
    v: &LevelVector,
    p: f64,
    t: f64,
    constant: f64,
) -> Result<HyperChainReport> {
    let tau = tau_series(kind, &HypParams::new(p, constant)?, 1e-9)?;
    check_hyper_chain_at(kind, v, p, t, constant, tau.tau.hi)
}

/// Reproducible sample of level vectors: up to 32 levels, each norm drawn
/// uniform on `[0, 1]` then thinned with probability 1/2, mean uniform on
/// `[−1, 1]`.
pub fn random_level_vectors(seed: u64, count: usize) -> Vec<LevelVector> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let mean = rng.random_range(-1.0..=1.0);
            let norms = (0..32)
                .map(|_| {
                    let nu: f64 = rng.random_range(0.0..=1.0);
                    if rng.random_bool(0.5) {
                        nu
                    } else {
                        0.0
                    }
                })
                .collect();
            LevelVector { mean, norms }
        })
        .collect()
}
