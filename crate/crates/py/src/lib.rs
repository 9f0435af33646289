//! Python bindings for `privtrade_core`.
//!
//! Results come back as plain dicts and lists. Scenario validation and other
//! model errors raise `ModelError` (a `ValueError`); root-finding failures
//! raise `NumericError` (an `ArithmeticError`).

use privtrade_core as core;
use privtrade_core::secure::{self as secure_mod, SignFactor};
use privtrade_core::sensitivity as sens;
use privtrade_core::{Factor, PlanItem, ScenarioParams};
use pyo3::create_exception;
use pyo3::exceptions::{PyArithmeticError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;
use pythonize::{depythonize, pythonize};
use serde::Serialize;

create_exception!(privtrade, ModelError, PyValueError);
create_exception!(privtrade, NumericError, PyArithmeticError);

fn py_err(e: core::Error) -> PyErr {
    match e {
        core::Error::NumericFailure(_) => NumericError::new_err(e.to_string()),
        _ => ModelError::new_err(e.to_string()),
    }
}

fn to_py<'py, T: Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    Ok(pythonize(py, value)?)
}

fn factor(name: &str) -> PyResult<Factor> {
    name.parse().map_err(py_err)
}

fn sign_factor(name: &str) -> PyResult<SignFactor> {
    match name {
        "nu" => Ok(SignFactor::Nu),
        "theta" => Ok(SignFactor::Theta),
        _ => Err(ModelError::new_err(format!(
            "sign change is defined for `nu` and `theta`, not `{name}`"
        ))),
    }
}

/// A validated scenario.
///
/// ```text
/// s = Scenario(q_star=250, p_star=1, price=0.5, nu=0.138647,
///              theta=0.138647, alpha_n=0.2, l_n=10000,
///              pi_s=1e-4, pi_c_star=1e-4)
/// ```
#[pyclass(frozen, eq, name = "Scenario", module = "privtrade")]
#[derive(PartialEq)]
pub struct Scenario(core::Scenario);

#[pymethods]
impl Scenario {
    #[new]
    #[pyo3(signature = (*, q_star, p_star, price, nu, theta, alpha_n, l_n, pi_s, pi_c_star))]
    #[allow(clippy::too_many_arguments)]
    fn py_new(
        q_star: f64,
        p_star: f64,
        price: f64,
        nu: f64,
        theta: f64,
        alpha_n: f64,
        l_n: f64,
        pi_s: f64,
        pi_c_star: f64,
    ) -> PyResult<Self> {
        core::Scenario::new(ScenarioParams {
            q_star,
            p_star,
            price,
            nu,
            theta,
            alpha_n,
            l_n,
            pi_s,
            pi_c_star,
        })
        .map(Scenario)
        .map_err(py_err)
    }

    #[staticmethod]
    fn case_study(l_n: f64, price: f64) -> PyResult<Self> {
        core::Scenario::case_study(l_n, price)
            .map(Scenario)
            .map_err(py_err)
    }

    #[staticmethod]
    fn sensitivity_reference() -> Self {
        Scenario(core::Scenario::sensitivity_reference())
    }

    /// Builds a scenario from a dict with exactly the nine parameter keys.
    #[staticmethod]
    fn from_dict(d: &Bound<'_, PyDict>) -> PyResult<Self> {
        let params: ScenarioParams =
            depythonize(d.as_any()).map_err(|e| ModelError::new_err(e.to_string()))?;
        core::Scenario::new(params).map(Scenario).map_err(py_err)
    }

    fn to_dict<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &self.0.params())
    }

    /// Copy with one factor replaced, e.g. `s.with_factor("price", 0.6)`.
    fn with_factor(&self, name: &str, value: f64) -> PyResult<Self> {
        self.0
            .with(factor(name)?, value)
            .map(Scenario)
            .map_err(py_err)
    }

    fn get(&self, name: &str) -> PyResult<f64> {
        Ok(self.0.get(factor(name)?))
    }

    #[getter]
    fn q_star(&self) -> f64 {
        self.0.q_star()
    }
    #[getter]
    fn p_star(&self) -> f64 {
        self.0.p_star()
    }
    #[getter]
    fn price(&self) -> f64 {
        self.0.price()
    }
    #[getter]
    fn nu(&self) -> f64 {
        self.0.nu()
    }
    #[getter]
    fn theta(&self) -> f64 {
        self.0.theta()
    }
    #[getter]
    fn alpha_n(&self) -> f64 {
        self.0.alpha_n()
    }
    #[getter]
    fn l_n(&self) -> f64 {
        self.0.l_n()
    }
    #[getter]
    fn pi_s(&self) -> f64 {
        self.0.pi_s()
    }
    #[getter]
    fn pi_c_star(&self) -> f64 {
        self.0.pi_c_star()
    }

    fn __repr__(&self) -> String {
        let p = self.0.params();
        format!(
            "Scenario(q_star={:?}, p_star={:?}, price={:?}, nu={:?}, theta={:?}, \
             alpha_n={:?}, l_n={:?}, pi_s={:?}, pi_c_star={:?})",
            p.q_star, p.p_star, p.price, p.nu, p.theta, p.alpha_n, p.l_n, p.pi_s, p.pi_c_star
        )
    }
}

/// Optimal loss with status, surplus, regime and critical points.
#[pyfunction]
fn solve_tradeoff<'py>(py: Python<'py>, s: PyRef<'_, Scenario>) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &core::solve_tradeoff(&s.0).map_err(py_err)?)
}

#[pyfunction]
fn feasibility_report<'py>(
    py: Python<'py>,
    s: PyRef<'_, Scenario>,
) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &core::feasibility_report(&s.0))
}

#[pyfunction]
fn classify_regime(s: PyRef<'_, Scenario>) -> &'static str {
    core::classify_regime(&s.0).tag()
}

#[pyfunction]
fn net_surplus(s: PyRef<'_, Scenario>, l: f64) -> PyResult<f64> {
    core::net_surplus(&s.0, l).map_err(py_err)
}

#[pyfunction]
fn surplus_gradient(s: PyRef<'_, Scenario>, l: f64) -> PyResult<f64> {
    core::surplus_gradient(&s.0, l).map_err(py_err)
}

#[pyfunction]
fn marginal_demand_factor(s: PyRef<'_, Scenario>, l: f64) -> PyResult<f64> {
    core::marginal_demand_factor(&s.0, l).map_err(py_err)
}

#[pyfunction]
#[pyo3(signature = (s, n = 1_000_000))]
fn oracle_grid_argmax(py: Python<'_>, s: PyRef<'_, Scenario>, n: usize) -> f64 {
    let s = s.0;
    py.detach(|| core::oracle_grid_argmax(&s, n))
}

#[pyfunction]
fn pareto_privacy_parameter(benefit_fraction: f64, loss_fraction: f64) -> PyResult<f64> {
    core::pareto_privacy_parameter(benefit_fraction, loss_fraction).map_err(py_err)
}

#[pyfunction]
fn combined_breach_probability(pi_s: f64, pi_c: f64) -> PyResult<f64> {
    core::combined_breach_probability(pi_s, pi_c).map_err(py_err)
}

/// Closed-form optimum ignoring provider breaches, as `{"raw", "clamped"}`.
#[pyfunction]
fn secure_optimal_loss<'py>(
    py: Python<'py>,
    s: PyRef<'_, Scenario>,
) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &core::secure_optimal_loss(&s.0).map_err(py_err)?)
}

#[pyfunction]
fn secure_elasticities<'py>(
    py: Python<'py>,
    s: PyRef<'_, Scenario>,
) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &core::secure_elasticities(&s.0).map_err(py_err)?)
}

#[pyfunction]
fn secure_quasi_elasticities<'py>(
    py: Python<'py>,
    s: PyRef<'_, Scenario>,
) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &core::secure_quasi_elasticities(&s.0).map_err(py_err)?)
}

#[pyfunction]
fn optimal_loss_ratio(s: PyRef<'_, Scenario>) -> PyResult<f64> {
    core::optimal_loss_ratio(&s.0).map_err(py_err)
}

/// Price where the secure quasi-elasticity for `nu` or `theta` changes sign.
#[pyfunction]
fn sign_change_price(s: PyRef<'_, Scenario>, factor: &str) -> PyResult<Option<f64>> {
    secure_mod::sign_change_price(&s.0, sign_factor(factor)?).map_err(py_err)
}

#[pyfunction]
fn discrete_elasticity<'py>(
    py: Python<'py>,
    s: PyRef<'_, Scenario>,
    factor: &str,
    rel_delta: f64,
) -> PyResult<Bound<'py, PyAny>> {
    let e = core::discrete_elasticity(&s.0, self::factor(factor)?, rel_delta).map_err(py_err)?;
    to_py(py, &e)
}

#[pyfunction]
fn discrete_quasi_elasticity<'py>(
    py: Python<'py>,
    s: PyRef<'_, Scenario>,
    factor: &str,
    new_value: f64,
) -> PyResult<Bound<'py, PyAny>> {
    let e =
        core::discrete_quasi_elasticity(&s.0, self::factor(factor)?, new_value).map_err(py_err)?;
    to_py(py, &e)
}

#[pyfunction]
fn default_plan<'py>(py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &sens::default_plan())
}

/// Tornado bars sorted by magnitude. `plan` is a list of
/// `{"factor", "low", "high"}` dicts and defaults to `default_plan()`.
#[pyfunction]
#[pyo3(signature = (s, plan = None))]
fn tornado<'py>(
    py: Python<'py>,
    s: PyRef<'_, Scenario>,
    plan: Option<&Bound<'py, PyAny>>,
) -> PyResult<Bound<'py, PyAny>> {
    let plan: Vec<PlanItem> = match plan {
        Some(p) => depythonize(p).map_err(|e| ModelError::new_err(e.to_string()))?,
        None => sens::default_plan(),
    };
    let s = s.0;
    let bars = py.detach(|| core::tornado(&s, &plan)).map_err(py_err)?;
    to_py(py, &bars)
}

#[pyfunction]
fn price_grid(min: f64, max: f64, points: usize) -> Vec<f64> {
    sens::price_grid(min, max, points)
}

fn grid_or_default(s: &core::Scenario, grid: Option<Vec<f64>>) -> Vec<f64> {
    grid.unwrap_or_else(|| sens::default_price_grid(s, 100))
}

#[pyfunction]
#[pyo3(signature = (s, grid = None))]
fn price_sweep<'py>(
    py: Python<'py>,
    s: PyRef<'_, Scenario>,
    grid: Option<Vec<f64>>,
) -> PyResult<Bound<'py, PyAny>> {
    let grid = grid_or_default(&s.0, grid);
    to_py(py, &core::price_sweep(&s.0, &grid).map_err(py_err)?)
}

#[pyfunction]
#[pyo3(signature = (s, grid = None))]
fn revenue_sweep<'py>(
    py: Python<'py>,
    s: PyRef<'_, Scenario>,
    grid: Option<Vec<f64>>,
) -> PyResult<Bound<'py, PyAny>> {
    let grid = grid_or_default(&s.0, grid);
    to_py(py, &core::revenue_sweep(&s.0, &grid).map_err(py_err)?)
}

#[pyfunction]
#[pyo3(signature = (s, grid = None))]
fn olr_sweep<'py>(
    py: Python<'py>,
    s: PyRef<'_, Scenario>,
    grid: Option<Vec<f64>>,
) -> PyResult<Bound<'py, PyAny>> {
    let grid = grid_or_default(&s.0, grid);
    to_py(py, &core::olr_sweep(&s.0, &grid).map_err(py_err)?)
}

#[pyfunction]
fn saturation_price(s: PyRef<'_, Scenario>) -> PyResult<f64> {
    core::saturation_price(&s.0).map_err(py_err)
}

/// Best entry of an increasing menu of losses; `index` is `None` when
/// disclosing nothing wins.
#[pyfunction]
fn solve_discrete<'py>(
    py: Python<'py>,
    s: PyRef<'_, Scenario>,
    losses: Vec<f64>,
) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &core::solve_discrete(&s.0, &losses).map_err(py_err)?)
}

#[pymodule]
pub fn privtrade(m: &Bound<'_, PyModule>) -> PyResult<()> {
    let py = m.py();
    m.add("ModelError", py.get_type::<ModelError>())?;
    m.add("NumericError", py.get_type::<NumericError>())?;
    m.add_class::<Scenario>()?;
    m.add_function(wrap_pyfunction!(solve_tradeoff, m)?)?;
    m.add_function(wrap_pyfunction!(feasibility_report, m)?)?;
    m.add_function(wrap_pyfunction!(classify_regime, m)?)?;
    m.add_function(wrap_pyfunction!(net_surplus, m)?)?;
    m.add_function(wrap_pyfunction!(surplus_gradient, m)?)?;
    m.add_function(wrap_pyfunction!(marginal_demand_factor, m)?)?;
    m.add_function(wrap_pyfunction!(oracle_grid_argmax, m)?)?;
    m.add_function(wrap_pyfunction!(pareto_privacy_parameter, m)?)?;
    m.add_function(wrap_pyfunction!(combined_breach_probability, m)?)?;
    m.add_function(wrap_pyfunction!(secure_optimal_loss, m)?)?;
    m.add_function(wrap_pyfunction!(secure_elasticities, m)?)?;
    m.add_function(wrap_pyfunction!(secure_quasi_elasticities, m)?)?;
    m.add_function(wrap_pyfunction!(optimal_loss_ratio, m)?)?;
    m.add_function(wrap_pyfunction!(sign_change_price, m)?)?;
    m.add_function(wrap_pyfunction!(discrete_elasticity, m)?)?;
    m.add_function(wrap_pyfunction!(discrete_quasi_elasticity, m)?)?;
    m.add_function(wrap_pyfunction!(default_plan, m)?)?;
    m.add_function(wrap_pyfunction!(tornado, m)?)?;
    m.add_function(wrap_pyfunction!(price_grid, m)?)?;
    m.add_function(wrap_pyfunction!(price_sweep, m)?)?;
    m.add_function(wrap_pyfunction!(revenue_sweep, m)?)?;
    m.add_function(wrap_pyfunction!(olr_sweep, m)?)?;
    m.add_function(wrap_pyfunction!(saturation_price, m)?)?;
    m.add_function(wrap_pyfunction!(solve_discrete, m)?)?;
    Ok(())
}
