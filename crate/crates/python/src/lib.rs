//! Python bindings for `qwalk-core`.

use num_complex::Complex64;
use pyo3::exceptions::{PyOverflowError, PyRuntimeError, PyTypeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use qwalk_core::asymptotics::{self, Observable, Regime};
use qwalk_core::coin::{self, CoinKind};
use qwalk_core::experiments::{self as exp, Routes};
use qwalk_core::{classical_walk, closed_form, quantum_walk, special_functions, WalkError};

fn to_py(err: WalkError) -> PyErr {
    let msg = err.to_string();
    match err {
        WalkError::Kind { .. } => PyTypeError::new_err(msg),
        WalkError::Overflow(_) => PyOverflowError::new_err(msg),
        WalkError::RouteDisagreement { .. } => PyRuntimeError::new_err(msg),
        _ => PyValueError::new_err(msg),
    }
}

fn parse_family(name: &str) -> PyResult<coin::Family> {
    name.parse().map_err(to_py)
}

/// A 2x2 coin: unitary for quantum walks, column-stochastic for correlated
/// random walks.
#[pyclass(name = "Coin", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyCoin {
    inner: coin::Coin,
}

#[pymethods]
impl PyCoin {
    #[staticmethod]
    fn unitary(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> PyResult<Self> {
        Ok(PyCoin { inner: coin::Coin::unitary(a, b, c, d).map_err(to_py)? })
    }

    #[staticmethod]
    fn stochastic(a: f64, b: f64, c: f64, d: f64) -> PyResult<Self> {
        Ok(PyCoin { inner: coin::Coin::stochastic(a, b, c, d).map_err(to_py)? })
    }

    #[staticmethod]
    fn hadamard() -> Self {
        PyCoin { inner: coin::Coin::hadamard() }
    }

    #[getter]
    fn kind(&self) -> &'static str {
        match self.inner.kind() {
            CoinKind::Unitary => "unitary",
            CoinKind::Stochastic => "stochastic",
        }
    }

    fn matrix(&self) -> [[Complex64; 2]; 2] {
        self.inner.matrix()
    }

    fn __repr__(&self) -> String {
        let m = self.inner.matrix();
        format!("Coin({}, [[{}, {}], [{}, {}]])", self.kind(), m[0][0], m[0][1], m[1][0], m[1][1])
    }
}

/// Family, exponent, scale and final time of a final-time dependent walk.
#[pyclass(name = "FamilySpec", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyFamilySpec {
    inner: coin::FamilySpec,
}

#[pymethods]
impl PyFamilySpec {
    #[new]
    #[pyo3(signature = (family, exponent, scale, final_time, allow_zero_exponent = false))]
    fn new(family: &str, exponent: f64, scale: f64, final_time: u64, allow_zero_exponent: bool) -> PyResult<Self> {
        let inner = coin::FamilySpec::with_zero_exponent(
            parse_family(family)?,
            exponent,
            scale,
            final_time,
            allow_zero_exponent,
        )
        .map_err(to_py)?;
        Ok(PyFamilySpec { inner })
    }

    #[getter]
    fn family(&self) -> &'static str {
        self.inner.family().as_str()
    }

    #[getter]
    fn exponent(&self) -> f64 {
        self.inner.exponent()
    }

    #[getter]
    fn scale(&self) -> f64 {
        self.inner.scale()
    }

    #[getter]
    fn final_time(&self) -> u64 {
        self.inner.final_time()
    }

    fn coin(&self) -> PyResult<PyCoin> {
        Ok(PyCoin { inner: coin::make_coin(&self.inner).map_err(to_py)? })
    }

    fn at_time(&self, final_time: u64) -> PyResult<Self> {
        Ok(PyFamilySpec { inner: self.inner.at_time(final_time).map_err(to_py)? })
    }

    fn __repr__(&self) -> String {
        format!(
            "FamilySpec('{}', exponent={}, scale={}, final_time={})",
            self.family(),
            self.exponent(),
            self.scale(),
            self.final_time()
        )
    }
}

/// `p_n(0)` by evolving the walk the spec describes.
#[pyfunction]
fn return_probability_exact(spec: PyRef<'_, PyFamilySpec>) -> PyResult<f64> {
    if spec.inner.family().is_quantum() {
        quantum_walk::return_probability_exact(&spec.inner).map_err(to_py)
    } else {
        classical_walk::return_probability_classical(&spec.inner).map_err(to_py)
    }
}

/// Position distribution of a quantum walk from `(1/sqrt 2, i/sqrt 2)` or a
/// given qubit, as a `{position: probability}` dict.
#[pyfunction]
#[pyo3(signature = (coin, steps, initial = None))]
fn quantum_distribution(
    coin: PyRef<'_, PyCoin>,
    steps: u64,
    initial: Option<(Complex64, Complex64)>,
) -> PyResult<std::collections::BTreeMap<i64, f64>> {
    let init = match initial {
        Some((l, r)) => quantum_walk::InitialQubit::new(l, r).map_err(to_py)?,
        None => quantum_walk::InitialQubit::default(),
    };
    let state = quantum_walk::evolve(&coin.inner, init, steps).map_err(to_py)?;
    Ok(quantum_walk::distribution(&state))
}

#[pyfunction]
#[pyo3(signature = (coin, steps, initial = (0.5, 0.5)))]
fn classical_distribution(
    coin: PyRef<'_, PyCoin>,
    steps: u64,
    initial: (f64, f64),
) -> PyResult<std::collections::BTreeMap<i64, f64>> {
    let state = classical_walk::evolve_classical(&coin.inner, [initial.0, initial.1], steps).map_err(to_py)?;
    Ok(state.distribution())
}

#[pyfunction]
fn p0_via_lemma1(coin: PyRef<'_, PyCoin>, n: u64) -> PyResult<f64> {
    closed_form::p0_via_lemma1(&coin.inner, n).map_err(to_py)
}

#[pyfunction]
fn p0_via_lemma2(coin: PyRef<'_, PyCoin>, n: u64) -> PyResult<f64> {
    closed_form::p0_via_lemma2(&coin.inner, n).map_err(to_py)
}

/// Closed-form `p_n(0)` for any coin: the stable quantum form or the
/// run-count classical form.
#[pyfunction]
fn return_probability_closed_form(coin: PyRef<'_, PyCoin>, n: u64) -> PyResult<f64> {
    match coin.inner.kind() {
        CoinKind::Unitary => closed_form::p0_quantum_closed_form(&coin.inner, n),
        CoinKind::Stochastic => closed_form::p0_classical_closed_form(&coin.inner, n),
    }
    .map_err(to_py)
}

#[pyfunction]
fn return_probability_asymptotic(spec: PyRef<'_, PyFamilySpec>) -> PyResult<f64> {
    asymptotics::asymptotic_return_probability(&spec.inner).map_err(to_py)
}

/// `(n_exponent, observable, constant)`: `n^{n_exponent}` times `p`
/// (observable `"return"`) or `1 - p` (`"complement"`) tends to `constant`.
#[pyfunction]
#[pyo3(signature = (family, exponent, scale, regime = None))]
fn limit_constant(
    family: &str,
    exponent: f64,
    scale: f64,
    regime: Option<&str>,
) -> PyResult<(f64, &'static str, f64)> {
    let regime = match regime {
        None => Regime::from_exponent(exponent),
        Some(name) => Regime::ALL
            .into_iter()
            .find(|r| r.as_str() == name)
            .ok_or_else(|| PyValueError::new_err(format!("unknown regime '{name}'")))?,
    };
    let limit = asymptotics::limit_constant(parse_family(family)?, regime, exponent, scale).map_err(to_py)?;
    let observable = match limit.observable {
        Observable::Return => "return",
        Observable::Complement => "complement",
    };
    Ok((limit.n_exponent, observable, limit.constant))
}

fn report_dict<'py>(py: Python<'py>, r: &exp::ReturnReport) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("n", r.n)?;
    d.set_item("p_exact", r.p_exact)?;
    d.set_item("p_closed_form", r.p_closed_form)?;
    d.set_item("p_asymptotic", r.p_asymptotic)?;
    d.set_item("ratio", r.ratio)?;
    d.set_item("scaled_value", r.scaled_value)?;
    d.set_item("regime", r.regime.as_str())?;
    Ok(d)
}

fn sweep_config(
    family: &str,
    exponent: f64,
    scale: f64,
    n_values: Vec<u64>,
    routes: &str,
    exact_ceiling: u64,
) -> PyResult<exp::SweepConfig> {
    let routes: Routes = routes.parse().map_err(to_py)?;
    let mut cfg = exp::SweepConfig::new(parse_family(family)?, exponent, scale, n_values)
        .and_then(|c| c.with_routes(routes))
        .map_err(to_py)?;
    cfg.exact_ceiling = exact_ceiling;
    Ok(cfg)
}

/// Runs every requested route over `n_values`; returns one dict per row.
#[pyfunction]
#[pyo3(signature = (family, exponent, scale, n_values, routes = "exact,closed,asym", exact_ceiling = exp::DEFAULT_EXACT_CEILING))]
fn run_sweep<'py>(
    py: Python<'py>,
    family: &str,
    exponent: f64,
    scale: f64,
    n_values: Vec<u64>,
    routes: &str,
    exact_ceiling: u64,
) -> PyResult<Vec<Bound<'py, PyDict>>> {
    let cfg = sweep_config(family, exponent, scale, n_values, routes, exact_ceiling)?;
    let reports = py.detach(|| exp::run_sweep(&cfg)).map_err(to_py)?;
    reports.iter().map(|r| report_dict(py, r)).collect()
}

/// Fitted `(slope, residual)` of the regime's observable against `n`.
#[pyfunction]
#[pyo3(signature = (family, exponent, scale, n_values, routes = "closed,asym"))]
fn estimate_rate(
    py: Python<'_>,
    family: &str,
    exponent: f64,
    scale: f64,
    n_values: Vec<u64>,
    routes: &str,
) -> PyResult<(f64, f64)> {
    let cfg = sweep_config(family, exponent, scale, n_values, routes, exp::DEFAULT_EXACT_CEILING)?;
    let fit = py
        .detach(|| exp::run_sweep(&cfg).and_then(|r| exp::estimate_rate(&r)))
        .map_err(to_py)?;
    Ok((fit.slope, fit.residual))
}

#[pyfunction]
fn bessel_j0(x: f64) -> f64 {
    special_functions::j0(x)
}

#[pyfunction]
fn bessel_j1(x: f64) -> f64 {
    special_functions::j1(x)
}

/// `e^{-x} (I_0(x) + I_1(x))`.
#[pyfunction]
fn scaled_bessel_i_sum(x: f64) -> f64 {
    special_functions::scaled_bessel_i_sum(x)
}

#[pymodule]
fn qwalk(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyCoin>()?;
    m.add_class::<PyFamilySpec>()?;
    m.add_function(wrap_pyfunction!(return_probability_exact, m)?)?;
    m.add_function(wrap_pyfunction!(quantum_distribution, m)?)?;
    m.add_function(wrap_pyfunction!(classical_distribution, m)?)?;
    m.add_function(wrap_pyfunction!(p0_via_lemma1, m)?)?;
    m.add_function(wrap_pyfunction!(p0_via_lemma2, m)?)?;
    m.add_function(wrap_pyfunction!(return_probability_closed_form, m)?)?;
    m.add_function(wrap_pyfunction!(return_probability_asymptotic, m)?)?;
    m.add_function(wrap_pyfunction!(limit_constant, m)?)?;
    m.add_function(wrap_pyfunction!(run_sweep, m)?)?;
    m.add_function(wrap_pyfunction!(estimate_rate, m)?)?;
    m.add_function(wrap_pyfunction!(bessel_j0, m)?)?;
    m.add_function(wrap_pyfunction!(bessel_j1, m)?)?;
    m.add_function(wrap_pyfunction!(scaled_bessel_i_sum, m)?)?;
    Ok(())
}
