//! Optimal disclosure of personal data under data-breach risk.
//!
//! A customer trades personal information (measured by the potential monetary
//! loss `l` it exposes) for an outward shift of its demand curve. The
//! [`solver`] finds the loss that maximizes net surplus, [`secure`] covers the
//! closed form for a provider that is never breached, and [`sensitivity`]
//! measures how the optimum responds to each parameter.
//!
//! ```
//! use privtrade_core::{solve_tradeoff, Scenario, SolutionStatus};
//!
//! let s = Scenario::sensitivity_reference();
//! let sol = solve_tradeoff(&s).unwrap();
//! assert_eq!(sol.status, SolutionStatus::Interior);
//! assert!((sol.l_opt - 3797.0).abs() < 1.0);
//! ```

pub mod breach;
pub mod error;
pub mod model;
pub mod roots;
pub mod secure;
pub mod sensitivity;
pub mod solver;

pub use breach::{combined_breach_probability, customer_breach_probability, BreachProfile};
pub use error::{Error, Result};
pub use model::{
    demand_quantity, marginal_demand_factor, net_surplus, pareto_privacy_parameter,
    price_taker_demand, provider_revenue, surplus_gradient, valid_demand_region,
    ConsumptionRegion, DemandPoint, Factor, Scenario, ScenarioParams,
};
pub use secure::{
    optimal_loss_ratio, secure_elasticities, secure_optimal_loss, secure_quasi_elasticities,
    SecureElasticities, SecureLoss, SecureQuasiElasticities,
};
pub use sensitivity::{
    discrete_elasticity, discrete_quasi_elasticity, olr_sweep, price_sweep, revenue_sweep,
    saturation_price, tornado, PlanItem, SensitivityEntry, SensitivityKind, SweepSeries,
    TornadoBar,
};
pub use solver::{
    classify_regime, construct_bracket, decision_coefficients, feasibility_report,
    oracle_grid_argmax, solve_discrete, solve_tradeoff, DecisionCoefficients, DiscreteChoice,
    FeasibilityReport, Regime, SolutionStatus, TradeoffSolution,
};
