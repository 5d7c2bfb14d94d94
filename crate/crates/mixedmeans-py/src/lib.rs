//! Python bindings for the mixedmeans library.
//!
//! Exposes the power-series type, the geometric functionals, the weighted
//! means, the convexity diagnostics, and the verification suite. Build as
//! a cdylib and import as `mixedmeans_py`; `python/smoke_test.py` at the
//! repository root drives a quick end-to-end run.

use num_complex::Complex64;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use mixedmeans::convexity::{self, MeanCurve};
use mixedmeans::geometry::{self, Kind};
use mixedmeans::rational::{rat_as_f64, RatPoly};
use mixedmeans::verify::{self, CheckStatus, UnivalenceCriterion};
use mixedmeans::weights::{self, WeightParams};
use mixedmeans::QuadratureParams;

fn err_to_py(e: mixedmeans::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_kind(kind: &str) -> PyResult<Kind> {
    match kind {
        "area" => Ok(Kind::Area),
        "length" => Ok(Kind::Length),
        _ => Err(PyValueError::new_err(format!("kind must be 'area' or 'length', got {kind:?}"))),
    }
}

fn quad(rel_tol: f64) -> QuadratureParams {
    QuadratureParams::with_rel_tol(rel_tol)
}

/// Truncated power series `a_0 + a_1 z + ... + a_N z^N`.
#[pyclass(name = "PowerSeries", from_py_object)]
#[derive(Clone)]
struct PyPowerSeries {
    inner: mixedmeans::PowerSeries,
}

#[pymethods]
impl PyPowerSeries {
    #[new]
    fn new(coeffs: Vec<Complex64>) -> PyResult<Self> {
        Ok(Self { inner: mixedmeans::PowerSeries::new(coeffs).map_err(err_to_py)? })
    }

    /// The two-term map `a0 + an z^n`.
    #[staticmethod]
    fn monomial(a0: Complex64, an: Complex64, n: usize) -> PyResult<Self> {
        Ok(Self { inner: mixedmeans::PowerSeries::monomial(a0, an, n).map_err(err_to_py)? })
    }

    #[getter]
    fn order(&self) -> usize {
        self.inner.order()
    }

    fn coeffs(&self) -> Vec<Complex64> {
        self.inner.coeffs().to_vec()
    }

    fn derivative(&self) -> Self {
        Self { inner: self.inner.derivative() }
    }

    fn evaluate(&self, z: Complex64) -> Complex64 {
        self.inner.evaluate(z)
    }

    fn multiply(&self, other: &Self, out_order: usize) -> Self {
        Self { inner: self.inner.multiply(&other.inner, out_order) }
    }

    fn sqrt_zero_free(&self) -> PyResult<Self> {
        Ok(Self { inner: self.inner.sqrt_zero_free().map_err(err_to_py)? })
    }

    fn __repr__(&self) -> String {
        format!("PowerSeries({})", self.inner)
    }
}

/// One check of the verification suite.
#[pyclass(name = "CheckReport", skip_from_py_object)]
#[derive(Clone)]
struct PyCheckReport {
    #[pyo3(get)]
    check_id: String,
    #[pyo3(get)]
    status: String,
    #[pyo3(get)]
    notes: String,
    /// Witnesses as `(input, expected, got, tolerance)` tuples.
    #[pyo3(get)]
    witnesses: Vec<(String, f64, f64, f64)>,
}

#[pymethods]
impl PyCheckReport {
    fn __repr__(&self) -> String {
        format!("CheckReport({} -> {})", self.check_id, self.status)
    }
}

fn convert_report(r: verify::CheckReport) -> PyCheckReport {
    PyCheckReport {
        check_id: r.check_id,
        status: match r.status {
            CheckStatus::Pass => "pass".into(),
            CheckStatus::Fail => "fail".into(),
            CheckStatus::Skipped => "skipped".into(),
        },
        notes: r.notes,
        witnesses: r.witnesses.into_iter().map(|w| (w.input, w.expected, w.got, w.tolerance)).collect(),
    }
}

/// `nu_alpha(r)`: mass of the weight `(1-t^2)^alpha dt^2` on `[0, r]`.
#[pyfunction]
fn nu_alpha(alpha: f64, r: f64) -> PyResult<f64> {
    weights::nu_alpha(alpha, r).map_err(err_to_py)
}

/// Incomplete beta integral of `t^lambda (1-t)^alpha` over `[0, x]`.
#[pyfunction]
#[pyo3(signature = (lambda_, alpha, x, rel_tol = 1e-12))]
fn f_lambda(lambda_: f64, alpha: f64, x: f64, rel_tol: f64) -> PyResult<f64> {
    weights::f_lambda(lambda_, alpha, x, &quad(rel_tol)).map_err(err_to_py)
}

/// Dirichlet (multiplicity-counting) area as `(value, error_bound)`.
#[pyfunction]
fn area_dirichlet(f: &PyPowerSeries, r: f64) -> PyResult<(f64, f64)> {
    let v = geometry::area_dirichlet(&f.inner, r).map_err(err_to_py)?;
    Ok((v.value, v.error_bound))
}

/// Rasterized image-set area as `(value, error_bound)`.
#[pyfunction]
#[pyo3(signature = (f, r, cells_per_axis = 256))]
fn area_image_raster(f: &PyPowerSeries, r: f64, cells_per_axis: usize) -> PyResult<(f64, f64)> {
    let v = geometry::area_image_raster(&f.inner, r, cells_per_axis).map_err(err_to_py)?;
    Ok((v.value, v.error_bound))
}

/// Boundary length as `(value, error_bound)`.
#[pyfunction]
#[pyo3(signature = (f, r, rel_tol = 1e-12))]
fn length_boundary(f: &PyPowerSeries, r: f64, rel_tol: f64) -> PyResult<(f64, f64)> {
    let v = geometry::length_boundary(&f.inner, r, &quad(rel_tol)).map_err(err_to_py)?;
    Ok((v.value, v.error_bound))
}

/// Mixed ratio `Phi_{A,beta}` / `Phi_{L,beta}` as `(value, error_bound)`.
#[pyfunction]
#[pyo3(signature = (kind, f, r, beta, rel_tol = 1e-12))]
fn mixed_ratio(kind: &str, f: &PyPowerSeries, r: f64, beta: f64, rel_tol: f64) -> PyResult<(f64, f64)> {
    let v = geometry::mixed_ratio(parse_kind(kind)?, &f.inner, r, beta, &quad(rel_tol)).map_err(err_to_py)?;
    Ok((v.value, v.error_bound))
}

/// Weighted integral mean as `(value, error_bound)`.
#[pyfunction]
#[pyo3(signature = (kind, f, alpha, beta, r, rel_tol = 1e-12))]
fn weighted_mean(kind: &str, f: &PyPowerSeries, alpha: f64, beta: f64, r: f64, rel_tol: f64) -> PyResult<(f64, f64)> {
    let params = WeightParams::new(alpha, beta).map_err(err_to_py)?;
    let v = weights::weighted_mean(parse_kind(kind)?, &f.inner, params, r, &quad(rel_tol)).map_err(err_to_py)?;
    Ok((v.value, v.error_bound))
}

/// Closed incomplete-beta route for the mean of `z^n`.
#[pyfunction]
#[pyo3(signature = (kind, n, alpha, beta, r, rel_tol = 1e-12))]
fn weighted_mean_monomial(kind: &str, n: usize, alpha: f64, beta: f64, r: f64, rel_tol: f64) -> PyResult<(f64, f64)> {
    let params = WeightParams::new(alpha, beta).map_err(err_to_py)?;
    let v = weights::weighted_mean_monomial(parse_kind(kind)?, n, params, r, &quad(rel_tol)).map_err(err_to_py)?;
    Ok((v.value, v.error_bound))
}

/// Limit of the mean at `r = 1` (needs `alpha > -1`).
#[pyfunction]
#[pyo3(signature = (kind, f, alpha, beta, rel_tol = 1e-12))]
fn mean_at_one(kind: &str, f: &PyPowerSeries, alpha: f64, beta: f64, rel_tol: f64) -> PyResult<(f64, f64)> {
    let params = WeightParams::new(alpha, beta).map_err(err_to_py)?;
    let v = weights::mean_at_one(parse_kind(kind)?, &f.inner, params, &quad(rel_tol)).map_err(err_to_py)?;
    Ok((v.value, v.error_bound))
}

/// `Delta(lambda, x) = D(f_lambda)(x) - D(f_0)(x)`.
#[pyfunction]
#[pyo3(signature = (lambda_, alpha, x, rel_tol = 1e-12))]
fn delta(lambda_: f64, alpha: f64, x: f64, rel_tol: f64) -> PyResult<f64> {
    convexity::delta(lambda_, alpha, x, &quad(rel_tol)).map_err(err_to_py)
}

/// Closed-form limit of `Delta(lambda, x)` as `x -> 1`.
#[pyfunction]
fn delta_limit(lambda_: f64, alpha: f64) -> PyResult<f64> {
    convexity::delta_limit(lambda_, alpha).map_err(err_to_py)
}

/// Log-log convexity scan of a weighted mean in `x = r^2`; returns
/// `([(x, indicator)], verdict)`.
#[pyfunction]
#[pyo3(signature = (kind, f, alpha, beta, grid, tol = 1e-7))]
fn convexity_scan(
    kind: &str,
    f: &PyPowerSeries,
    alpha: f64,
    beta: f64,
    grid: Vec<f64>,
    tol: f64,
) -> PyResult<(Vec<(f64, f64)>, String)> {
    let q = quad(1e-12);
    let curve = match (parse_kind(kind)?, f.inner.as_two_term()) {
        (Kind::Area, Some((n, _))) => MeanCurve::area_monomial(n, alpha, beta),
        (Kind::Area, None) => MeanCurve::area_of_series(&f.inner, alpha, beta),
        (Kind::Length, Some((n, _))) => MeanCurve::length_monomial(n, alpha, beta),
        (Kind::Length, None) => MeanCurve::length_of_series(&f.inner, alpha, beta, 2048).map_err(err_to_py)?,
    };
    let report = convexity::loglog_scan_with_indicator(|x| curve.indicator(x, &q), &grid, tol).map_err(err_to_py)?;
    Ok((
        report.grid.iter().map(|g| (g.x, g.indicator)).collect(),
        report.verdict.to_string(),
    ))
}

/// Certified sign changes of an integer-coefficient polynomial on (0,1);
/// returns `[(lo, hi, sign_before, sign_after)]` with float endpoints.
#[pyfunction]
fn sign_changes(coeffs: Vec<i64>) -> PyResult<Vec<(f64, f64, i8, i8)>> {
    let p = RatPoly::from_integers(&coeffs);
    let zero = mixedmeans::rational::rat_int(0);
    let one = mixedmeans::rational::rat_int(1);
    let changes = convexity::sign_changes(&p, &zero, &one).map_err(err_to_py)?;
    Ok(changes
        .into_iter()
        .map(|c| (rat_as_f64(&c.lo), rat_as_f64(&c.hi), c.sign_before, c.sign_after))
        .collect())
}

/// Samples a univalence criterion (`"wedge"` or `"nehari"`).
#[pyfunction]
#[pyo3(signature = (criterion, f, samples = 10_000))]
fn check_univalence(criterion: &str, f: &PyPowerSeries, samples: usize) -> PyResult<PyCheckReport> {
    let criterion = match criterion {
        "wedge" => UnivalenceCriterion::Wedge,
        "nehari" => UnivalenceCriterion::Nehari,
        _ => return Err(PyValueError::new_err("criterion must be 'wedge' or 'nehari'")),
    };
    Ok(convert_report(verify::check_univalence(criterion, "python", &f.inner, samples)))
}

/// Runs the full verification suite; `threads = None` uses all cores.
#[pyfunction]
#[pyo3(signature = (threads = None))]
fn run_verify(threads: Option<usize>) -> Vec<PyCheckReport> {
    let threads = threads
        .unwrap_or_else(|| std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1));
    verify::default_suite(threads).into_iter().map(convert_report).collect()
}

/// Runs the two counterexample pipelines.
#[pyfunction]
fn reproduce_examples() -> Vec<PyCheckReport> {
    verify::reproduce_examples(&quad(1e-12))
        .into_iter()
        .map(convert_report)
        .collect()
}

#[pymodule]
fn mixedmeans_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPowerSeries>()?;
    m.add_class::<PyCheckReport>()?;
    m.add_function(wrap_pyfunction!(nu_alpha, m)?)?;
    m.add_function(wrap_pyfunction!(f_lambda, m)?)?;
    m.add_function(wrap_pyfunction!(area_dirichlet, m)?)?;
    m.add_function(wrap_pyfunction!(area_image_raster, m)?)?;
    m.add_function(wrap_pyfunction!(length_boundary, m)?)?;
    m.add_function(wrap_pyfunction!(mixed_ratio, m)?)?;
    m.add_function(wrap_pyfunction!(weighted_mean, m)?)?;
    m.add_function(wrap_pyfunction!(weighted_mean_monomial, m)?)?;
    m.add_function(wrap_pyfunction!(mean_at_one, m)?)?;
    m.add_function(wrap_pyfunction!(delta, m)?)?;
    m.add_function(wrap_pyfunction!(delta_limit, m)?)?;
    m.add_function(wrap_pyfunction!(convexity_scan, m)?)?;
    m.add_function(wrap_pyfunction!(sign_changes, m)?)?;
    m.add_function(wrap_pyfunction!(check_univalence, m)?)?;
    m.add_function(wrap_pyfunction!(run_verify, m)?)?;
    m.add_function(wrap_pyfunction!(reproduce_examples, m)?)?;
    Ok(())
}
