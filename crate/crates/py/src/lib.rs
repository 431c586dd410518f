//! Python bindings: the exact counting operations as module functions, the
//! analytic evaluator as a class. Theta arguments are strings of the form
//! "a/b" so boundary decisions stay integer-exact on the Rust side.

use pyo3::exceptions::{PyOverflowError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use nuclear_core::analytic::{self, EvalConfig, PredictMode, TailMode};
use nuclear_core::counts::{self, CountQuery, Method};
use nuclear_core::{sieve, ThetaRational};

fn to_py_err(err: nuclear_core::Error) -> PyErr {
    use nuclear_core::Error::*;
    match err {
        InvalidArgument(_) | UnsupportedCombination(_) | Format(_) => {
            PyValueError::new_err(err.to_string())
        }
        Overflow(_) => PyOverflowError::new_err(err.to_string()),
        _ => PyRuntimeError::new_err(err.to_string()),
    }
}

fn parse_theta(theta: &str) -> PyResult<ThetaRational> {
    theta.parse().map_err(to_py_err)
}

fn parse_method(method: &str) -> PyResult<Method> {
    match method {
        "sieve" => Ok(Method::Sieve),
        "stratified" => Ok(Method::Stratified),
        other => Err(PyValueError::new_err(format!(
            "method must be 'sieve' or 'stratified', got '{other}'"
        ))),
    }
}

/// (radical, mobius, psi) of n.
#[pyfunction]
fn arith_point(n: u64) -> PyResult<(u64, i8, u64)> {
    sieve::arith_point(n).map_err(to_py_err)
}

/// Exact count of l <= z with l*k squarefree, for squarefree k.
#[pyfunction]
fn squarefree_coprime_count(z: f64, k: u64) -> PyResult<u64> {
    sieve::squarefree_coprime_count(z, k).map_err(to_py_err)
}

/// The Rankin weight r_gamma(m) = prod over p|m of (1 + 4 gamma p^{-1/2}).
#[pyfunction]
fn r_gamma(m: u64, gamma: f64) -> PyResult<f64> {
    let w = sieve::RankinWeight::new(gamma).map_err(to_py_err)?;
    sieve::r_gamma(m, w).map_err(to_py_err)
}

/// Exact N(x, y) = #{m <= x : k(m) <= y}.
#[pyfunction]
fn count_nuclear(x: u64, y: u64) -> PyResult<u64> {
    counts::count_nuclear(x, y).map(|r| r.count).map_err(to_py_err)
}

/// Exact count of n <= x with k(n) <= z n^theta (log n)^Theta.
/// Returns (count, ambiguous).
#[pyfunction]
#[pyo3(signature = (x, theta, method = "sieve", z = 1.0, big_theta = 0.0))]
fn count_powered(
    x: u64,
    theta: &str,
    method: &str,
    z: f64,
    big_theta: f64,
) -> PyResult<(u64, u64)> {
    let query = CountQuery {
        x,
        theta: parse_theta(theta)?,
        z,
        big_theta,
        method: parse_method(method)?,
    };
    counts::count_powered(&query)
        .map(|r| (r.count, r.ambiguous))
        .map_err(to_py_err)
}

/// The unique (l, m) with n = l * m * k(m) and mu^2(l k(m)) = 1.
#[pyfunction]
fn decompose(n: u64) -> PyResult<(u64, u64)> {
    counts::decompose(n).map(|d| (d.l, d.m)).map_err(to_py_err)
}

/// Constructive lower bound W(x) <= S_theta(x).
#[pyfunction]
fn lower_bound_w(x: u64, theta: &str) -> PyResult<u64> {
    counts::lower_bound_w(x, parse_theta(theta)?).map_err(to_py_err)
}

/// (sum of m/k(m)) / (sum of x/k(m)) over m <= x.
#[pyfunction]
fn erdos_ratio(x: u64) -> PyResult<f64> {
    counts::erdos_ratio(x).map_err(to_py_err)
}

/// Leading-order forms (sigma_approx, logF_approx) for v > e.
#[pyfunction]
fn asymptotic_forms(v: f64) -> PyResult<(f64, f64)> {
    analytic::asymptotic_forms(v).map_err(to_py_err)
}

/// Estimator bundle returned by `Analytic.estimate_powered`.
#[pyclass(get_all)]
struct EstimateResult {
    s7: f64,
    s8: f64,
    alpha: f64,
    f_v: f64,
    h_v: f64,
    beta: f64,
}

/// Saddle point returned by `Analytic.solve_saddle`.
#[pyclass(get_all)]
struct SaddlePoint {
    v: f64,
    sigma: f64,
    residual: f64,
    g2: f64,
}

/// Analytic evaluation context (prime table + configuration).
#[pyclass]
struct Analytic {
    inner: analytic::Analytic,
}

#[pymethods]
impl Analytic {
    #[new]
    #[pyo3(signature = (prime_limit = 1_000_000, series_limit = 10_000_000, tol = 1e-9, bounded_tails = false))]
    fn new(prime_limit: u64, series_limit: u64, tol: f64, bounded_tails: bool) -> PyResult<Self> {
        let cfg = EvalConfig {
            prime_limit,
            series_limit,
            tol,
            tail_mode: if bounded_tails {
                TailMode::Bounded
            } else {
                TailMode::Extrapolated
            },
        };
        Ok(Self {
            inner: analytic::Analytic::new(cfg).map_err(to_py_err)?,
        })
    }

    /// log G(sigma); returns (value, tail_estimate).
    fn log_g(&self, sigma: f64) -> PyResult<(f64, f64)> {
        let e = self.inner.log_g(sigma).map_err(to_py_err)?;
        Ok((e.value, e.tail))
    }

    /// (g'(sigma), g''(sigma)).
    fn g_derivatives(&self, sigma: f64) -> PyResult<(f64, f64)> {
        let (g1, g2) = self.inner.g_derivatives(sigma).map_err(to_py_err)?;
        Ok((g1.value, g2.value))
    }

    fn solve_saddle(&self, v: f64) -> PyResult<SaddlePoint> {
        let sp = self.inner.solve_saddle(v).map_err(to_py_err)?;
        Ok(SaddlePoint {
            v: sp.v,
            sigma: sp.sigma,
            residual: sp.residual,
            g2: sp.g2,
        })
    }

    fn f_series(&self, v: f64) -> PyResult<f64> {
        Ok(self.inner.f_series(v).map_err(to_py_err)?.value)
    }

    fn h_series(&self, theta: &str, x: f64) -> PyResult<f64> {
        Ok(self
            .inner
            .h_series(parse_theta(theta)?, x)
            .map_err(to_py_err)?
            .value)
    }

    fn estimate_powered(&self, theta: &str, x: f64) -> PyResult<EstimateResult> {
        let e = self
            .inner
            .estimate_powered(parse_theta(theta)?, x)
            .map_err(to_py_err)?;
        Ok(EstimateResult {
            s7: e.s7,
            s8: e.s8,
            alpha: e.alpha,
            f_v: e.f_v,
            h_v: e.h_v,
            beta: e.beta,
        })
    }

    /// Predicted factor; mode is one of "simple", "refined-theta",
    /// "refined-zero", "log-power", "linear".
    #[pyo3(signature = (theta, x, z = 1.0, big_theta = 0.0, mode = "simple"))]
    fn predict_ratio(
        &self,
        theta: &str,
        x: f64,
        z: f64,
        big_theta: f64,
        mode: &str,
    ) -> PyResult<f64> {
        let mode = match mode {
            "simple" => PredictMode::Simple,
            "refined-theta" => PredictMode::RefinedTheta,
            "refined-zero" => PredictMode::RefinedZero,
            "log-power" => PredictMode::LogPower,
            "linear" => PredictMode::Linear,
            other => {
                return Err(PyValueError::new_err(format!(
                    "unknown prediction mode '{other}'"
                )))
            }
        };
        self.inner
            .predict_ratio(parse_theta(theta)?, x, z, big_theta, mode)
            .map_err(to_py_err)
    }

    fn rankin_bound(&self, theta: &str, x: f64, eps: f64) -> PyResult<f64> {
        Ok(self
            .inner
            .rankin_bound(parse_theta(theta)?, x, eps)
            .map_err(to_py_err)?
            .value)
    }

    /// The error series at the canonical parameters; returns
    /// (value, ratio_to_main, sigma, gamma).
    fn e_bound(&self, theta: &str, x: f64) -> PyResult<(f64, f64, f64, f64)> {
        let e = self
            .inner
            .e_bound(parse_theta(theta)?, x)
            .map_err(to_py_err)?;
        Ok((e.value, e.ratio_to_main, e.sigma, e.gamma))
    }
}

#[pymodule]
fn nuclear_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(arith_point, m)?)?;
    m.add_function(wrap_pyfunction!(squarefree_coprime_count, m)?)?;
    m.add_function(wrap_pyfunction!(r_gamma, m)?)?;
    m.add_function(wrap_pyfunction!(count_nuclear, m)?)?;
    m.add_function(wrap_pyfunction!(count_powered, m)?)?;
    m.add_function(wrap_pyfunction!(decompose, m)?)?;
    m.add_function(wrap_pyfunction!(lower_bound_w, m)?)?;
    m.add_function(wrap_pyfunction!(erdos_ratio, m)?)?;
    m.add_function(wrap_pyfunction!(asymptotic_forms, m)?)?;
    m.add_class::<Analytic>()?;
    m.add_class::<EstimateResult>()?;
    m.add_class::<SaddlePoint>()?;
    Ok(())
}
