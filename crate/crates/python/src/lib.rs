//! Python bindings for the main types and operations.
//!
//! Exact rationals cross the boundary as `"num/den"` strings (parse them
//! with `fractions.Fraction` on the Python side); certified enclosures as
//! `(lo, hi)` tuples of floats.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use qgheat_core::contractivity::{self, EnvelopeParams};
use qgheat_core::error::Error;
use qgheat_core::hypercontractivity::{self, HypParams};
use qgheat_core::levelmodel;
use qgheat_core::rational::{format_rational, rational, to_f64};
use qgheat_core::spectrum::{self, Family, GroupKind};
use qgheat_core::{chebyshev, CertifiedValue};

fn py_err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_family(name: &str) -> PyResult<Family> {
    match name {
        "O" | "o" => Ok(Family::FreeOrthogonal),
        "S" | "s" => Ok(Family::FreePermutation),
        other => Err(PyValueError::new_err(format!(
            "unknown family {other:?}; expected \"O\" or \"S\""
        ))),
    }
}

fn enclosure_tuple(v: &CertifiedValue) -> (f64, f64) {
    (v.lo, v.hi)
}

/// A free quantum group `O_N⁺` or `S_N⁺`.
#[pyclass(skip_from_py_object)]
#[derive(Clone, Copy)]
struct Group {
    inner: GroupKind,
}

#[pymethods]
impl Group {
    /// Args: family ("O" or "S") and the parameter N (O needs N >= 2,
    /// S needs N >= 4).
    #[new]
    fn new(family: &str, n: u64) -> PyResult<Self> {
        let inner = GroupKind::new(parse_family(family)?, n).map_err(py_err)?;
        Ok(Self { inner })
    }

    #[getter]
    fn family(&self) -> &'static str {
        self.inner.family().short_name()
    }

    #[getter]
    fn n(&self) -> u64 {
        self.inner.n()
    }

    /// Exact generator eigenvalue lambda_s as a "num/den" string.
    fn eigenvalue(&self, s: u64) -> String {
        format_rational(&spectrum::eigenvalue(self.inner, s))
    }

    /// Eigenvalue, dimension and multiplicity of level s.
    fn spectral_line<'py>(&self, py: Python<'py>, s: u64) -> PyResult<Bound<'py, PyDict>> {
        let line = spectrum::spectral_line(self.inner, s);
        let d = PyDict::new(py);
        d.set_item("s", line.s)?;
        d.set_item("lambda", format_rational(&line.lambda))?;
        d.set_item("lambda_float", to_f64(&line.lambda))?;
        d.set_item("dim", line.dim.to_string())?;
        d.set_item("mult", line.mult.to_string())?;
        Ok(d)
    }

    /// Exact verification of s/N <= -lambda_s <= upper at level s.
    fn bound_report<'py>(&self, py: Python<'py>, s: u64) -> PyResult<Bound<'py, PyDict>> {
        let report = spectrum::bound_report(self.inner, s).map_err(py_err)?;
        let d = PyDict::new(py);
        d.set_item("lower", format_rational(&report.lower))?;
        d.set_item("upper", report.upper.to_string())?;
        d.set_item("upper_approx", report.upper.approx())?;
        d.set_item("upper_finite", report.upper_finite)?;
        d.set_item("holds", report.holds)?;
        Ok(d)
    }

    /// Spectral-gap constant 1/N as a "num/den" string.
    fn spectral_gap(&self) -> String {
        format_rational(&spectrum::spectral_gap(self.inner))
    }

    fn __repr__(&self) -> String {
        format!("Group(\"{}\", {})", self.family(), self.n())
    }
}

/// Finite level-norm model of an algebra element: Haar mean plus the L2
/// norms of the corepresentation components.
#[pyclass(skip_from_py_object)]
#[derive(Clone)]
struct LevelVector {
    inner: levelmodel::LevelVector,
}

#[pymethods]
impl LevelVector {
    #[new]
    fn new(mean: f64, norms: Vec<f64>) -> PyResult<Self> {
        Ok(Self {
            inner: levelmodel::LevelVector::new(mean, norms).map_err(py_err)?,
        })
    }

    #[getter]
    fn mean(&self) -> f64 {
        self.inner.mean
    }

    #[getter]
    fn norms(&self) -> Vec<f64> {
        self.inner.norms.clone()
    }

    fn l2_norm(&self) -> f64 {
        levelmodel::l2_norm(&self.inner)
    }

    /// Heat flow for time t: mean unchanged, level s scaled by e^{lambda_s t}.
    fn heat(&self, group: &Group, t: f64) -> PyResult<Self> {
        Ok(Self {
            inner: levelmodel::heat_apply(group.inner, &self.inner, t).map_err(py_err)?,
        })
    }

    /// Upper-bound surrogate for the uniform norm.
    fn linf_upper(&self, group: &Group, constant: f64) -> PyResult<f64> {
        levelmodel::linf_upper(&self.inner, group.inner, constant).map_err(py_err)
    }

    /// Dirichlet energy -h(x T_L x).
    fn dirichlet_energy(&self, group: &Group) -> f64 {
        levelmodel::dirichlet_energy(group.inner, &self.inner)
    }

    /// Spectral-gap inequality sides: returns (lhs, rhs, holds).
    fn check_spectral_gap(&self, group: &Group) -> (f64, f64, bool) {
        let report = levelmodel::check_spectral_gap(group.inner, &self.inner);
        (report.lhs, report.rhs, report.holds)
    }

    /// Ultracontractivity chain at time t: returns (lhs, rhs, holds).
    fn check_ultra(&self, group: &Group, t: f64, constant: f64) -> PyResult<(f64, f64, bool)> {
        let report =
            levelmodel::check_ultra(group.inner, &self.inner, t, constant).map_err(py_err)?;
        Ok((report.lhs, report.rhs, report.holds))
    }

    fn __repr__(&self) -> String {
        format!(
            "LevelVector(mean={}, levels={})",
            self.inner.mean,
            self.inner.norms.len()
        )
    }
}

/// (U_s(x), U_s'(x)) at the exact rational x = num/den, as strings.
#[pyfunction]
#[pyo3(signature = (s, num, den = 1))]
fn cheb_pair(s: u64, num: i64, den: i64) -> PyResult<(String, String)> {
    if den == 0 {
        return Err(PyValueError::new_err("den must be nonzero"));
    }
    let (value, derivative) = chebyshev::cheb_pair(s, &rational(num, den));
    Ok((format_rational(&value), format_rational(&derivative)))
}

/// U_s(x) from the explicit coefficient sum (the recurrence's oracle).
#[pyfunction]
#[pyo3(signature = (s, num, den = 1))]
fn cheb_coeff_eval(s: u64, num: i64, den: i64) -> PyResult<String> {
    if den == 0 {
        return Err(PyValueError::new_err("den must be nonzero"));
    }
    Ok(format_rational(&chebyshev::cheb_coeff_eval(
        s,
        &rational(num, den),
    )))
}

/// (U_m(sqrt(N)), U_m'(sqrt(N))) exactly in Z[sqrt(N)]: each value is a
/// dict {"a": str, "b": str, "radicand": int} meaning a + b*sqrt(radicand).
#[pyfunction]
fn cheb_at_sqrt<'py>(
    py: Python<'py>,
    m: u64,
    n: u64,
) -> PyResult<(Bound<'py, PyDict>, Bound<'py, PyDict>)> {
    if n == 0 {
        return Err(PyValueError::new_err("radicand must be positive"));
    }
    let (value, derivative) = chebyshev::cheb_at_sqrt(m, n);
    let pack = |q: &qgheat_core::QuadraticValue| -> PyResult<Bound<'py, PyDict>> {
        let d = PyDict::new(py);
        d.set_item("a", q.rational_part().to_string())?;
        d.set_item("b", q.sqrt_coefficient().to_string())?;
        d.set_item("radicand", q.radicand())?;
        Ok(d)
    };
    Ok((pack(&value)?, pack(&derivative)?))
}

/// Certified enclosures of all s roots of U_s, as (lo, hi) float pairs.
#[pyfunction]
#[pyo3(signature = (s, eps = 1e-9))]
fn cheb_zeros(s: u64, eps: f64) -> PyResult<Vec<(f64, f64)>> {
    let eps = qgheat_core::Rational::from_float(eps)
        .filter(|e| e > &qgheat_core::Rational::from_integer(0.into()))
        .ok_or_else(|| PyValueError::new_err("eps must be a positive finite float"))?;
    let zeros = chebyshev::cheb_zeros(s, &eps).map_err(py_err)?;
    Ok(zeros
        .iter()
        .map(|e| (to_f64(&e.lo), to_f64(&e.hi)))
        .collect())
}

/// Enclosure of the ultracontractivity envelope f(t) for arbitrary
/// (alpha, beta, gamma).
#[pyfunction]
fn envelope_f(alpha: f64, beta: f64, gamma: f64, t: f64) -> PyResult<(f64, f64)> {
    let params = EnvelopeParams::new(alpha, beta, gamma).map_err(py_err)?;
    Ok(enclosure_tuple(
        &contractivity::envelope_f(&params, t).map_err(py_err)?,
    ))
}

/// Enclosure of f(t) with the group's (alpha, beta, gamma) convention.
#[pyfunction]
fn envelope_for_group(group: &Group, constant: f64, t: f64) -> PyResult<(f64, f64)> {
    Ok(enclosure_tuple(
        &contractivity::envelope_for_group(group.inner, constant, t).map_err(py_err)?,
    ))
}

/// Enclosure of the sharper O_2+ envelope g(t).
#[pyfunction]
#[pyo3(signature = (d, t, tol = 1e-9))]
fn envelope_g_o2(d: f64, t: f64, tol: f64) -> PyResult<(f64, f64)> {
    Ok(enclosure_tuple(
        &contractivity::envelope_g_o2(d, t, tol).map_err(py_err)?,
    ))
}

/// Hypercontractivity time L2 -> Lp by "series", "cubic" or "linear".
#[pyfunction]
#[pyo3(signature = (group, p, constant, method = "series", tol = 1e-9, allow_unverified = false))]
fn tau<'py>(
    py: Python<'py>,
    group: &Group,
    p: f64,
    constant: f64,
    method: &str,
    tol: f64,
    allow_unverified: bool,
) -> PyResult<Bound<'py, PyDict>> {
    let params = HypParams::new(p, constant).map_err(py_err)?;
    let result = match method {
        "series" => hypercontractivity::tau_series(group.inner, &params, tol),
        "cubic" => hypercontractivity::tau_cubic(group.inner, &params, tol),
        "linear" => hypercontractivity::tau_linear(group.inner, &params, allow_unverified),
        other => {
            return Err(PyValueError::new_err(format!(
                "unknown method {other:?}; expected series, cubic or linear"
            )))
        }
    }
    .map_err(py_err)?;
    let d = PyDict::new(py);
    d.set_item("lo", result.tau.lo)?;
    d.set_item("hi", result.tau.hi)?;
    d.set_item("method", result.method.name())?;
    Ok(d)
}

/// Certified enclosure of the gap sum G(tau).
#[pyfunction]
#[pyo3(signature = (group, p, constant, tau, tol = 1e-9))]
fn hyper_gap_sum(group: &Group, p: f64, constant: f64, tau: f64, tol: f64) -> PyResult<(f64, f64)> {
    let params = HypParams::new(p, constant).map_err(py_err)?;
    Ok(enclosure_tuple(
        &hypercontractivity::hyper_gap_sum(group.inner, &params, tau, tol).map_err(py_err)?,
    ))
}

/// Certified enclosure of R_p for family "O" or "S".
#[pyfunction]
#[pyo3(signature = (family, p, tol = 1e-10))]
fn r_p(family: &str, p: f64, tol: f64) -> PyResult<(f64, f64)> {
    Ok(enclosure_tuple(
        &hypercontractivity::r_p(parse_family(family)?, p, tol).map_err(py_err)?,
    ))
}

/// Certified upper bound for the O_N+ norm-comparison constant D_N (N > 2).
#[pyfunction]
#[pyo3(signature = (n, tol = 1e-12))]
fn dn_upper_bound(n: f64, tol: f64) -> PyResult<(f64, f64)> {
    Ok(enclosure_tuple(
        &hypercontractivity::dn_upper_bound(n, tol).map_err(py_err)?,
    ))
}

/// Log-Sobolev constant c = t0/2 plus the three tau values at p = 4.
#[pyfunction]
#[pyo3(signature = (group, constant, tol = 1e-9))]
fn log_sobolev_constant<'py>(
    py: Python<'py>,
    group: &Group,
    constant: f64,
    tol: f64,
) -> PyResult<Bound<'py, PyDict>> {
    let report =
        hypercontractivity::log_sobolev_constant(group.inner, constant, tol).map_err(py_err)?;
    let d = PyDict::new(py);
    d.set_item("c", enclosure_tuple(&report.constant))?;
    d.set_item("tau_series", enclosure_tuple(&report.tau_series.tau))?;
    d.set_item("tau_cubic", enclosure_tuple(&report.tau_cubic.tau))?;
    d.set_item("tau_linear", enclosure_tuple(&report.tau_linear.tau))?;
    Ok(d)
}

/// Interpolation exponent path q(t) = 4/(2 - t/t0).
#[pyfunction]
fn q_exponent_path(t: f64, t0: f64) -> PyResult<f64> {
    hypercontractivity::q_exponent_path(t, t0).map_err(py_err)
}

/// Reproducible random level vectors (the generator used by the check
/// suites).
#[pyfunction]
fn random_level_vectors(seed: u64, count: usize) -> Vec<LevelVector> {
    levelmodel::random_level_vectors(seed, count)
        .into_iter()
        .map(|inner| LevelVector { inner })
        .collect()
}

#[pymodule]
fn qgheat_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_class::<Group>()?;
    m.add_class::<LevelVector>()?;
    m.add_function(wrap_pyfunction!(cheb_pair, m)?)?;
    m.add_function(wrap_pyfunction!(cheb_coeff_eval, m)?)?;
    m.add_function(wrap_pyfunction!(cheb_at_sqrt, m)?)?;
    m.add_function(wrap_pyfunction!(cheb_zeros, m)?)?;
    m.add_function(wrap_pyfunction!(envelope_f, m)?)?;
    m.add_function(wrap_pyfunction!(envelope_for_group, m)?)?;
    m.add_function(wrap_pyfunction!(envelope_g_o2, m)?)?;
    m.add_function(wrap_pyfunction!(tau, m)?)?;
    m.add_function(wrap_pyfunction!(hyper_gap_sum, m)?)?;
    m.add_function(wrap_pyfunction!(r_p, m)?)?;
    m.add_function(wrap_pyfunction!(dn_upper_bound, m)?)?;
    m.add_function(wrap_pyfunction!(log_sobolev_constant, m)?)?;
    m.add_function(wrap_pyfunction!(q_exponent_path, m)?)?;
    m.add_function(wrap_pyfunction!(random_level_vectors, m)?)?;
    Ok(())
}
