//! Discrete sensitivity of the optimal loss and price sweeps.
//!
//! Dimensional factors (`q*`, `p*`, `p`, `l_N`) are measured with the discrete
//! elasticity `(Δl*/l*) / (Δx/x)`; dimensionless ones (`ν`, `θ`, `π_s`,
//! `π_c*`) with the quasi-elasticity `(Δl*/l*) / Δx`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::model::{self, Factor, Scenario};
use crate::secure;
use crate::solver::{self, Regime, SolutionStatus, TradeoffSolution};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SensitivityKind {
    #[serde(rename = "ELASTICITY")]
    Elasticity,
    #[serde(rename = "QUASI_ELASTICITY")]
    QuasiElasticity,
}

impl SensitivityKind {
    pub fn tag(self) -> &'static str {
        match self {
            SensitivityKind::Elasticity => "ELASTICITY",
            SensitivityKind::QuasiElasticity => "QUASI_ELASTICITY",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SensitivityEntry {
    pub factor: Factor,
    /// Relative change for elasticities, absolute change otherwise.
    pub delta: f64,
    pub value: f64,
    pub kind: SensitivityKind,
    pub base_l_opt: f64,
    pub perturbed_l_opt: f64,
    /// The perturbation moved the optimum to a different solver status, so
    /// the ratio mixes regimes.
    pub status_changed: bool,
}

fn solve_base(s: &Scenario) -> Result<TradeoffSolution> {
    let base = solver::solve_tradeoff(s)?;
    if base.l_opt == 0.0 {
        return Err(Error::Usage(
            "base optimum is zero; relative changes are undefined".into(),
        ));
    }
    Ok(base)
}

fn perturbed(s: &Scenario, factor: Factor, value: f64) -> Result<Scenario> {
    let next = s.with(factor, value).map_err(|e| match e {
        Error::Validation { field, value, reason } => domain(field, value, reason),
        other => other,
    })?;
    if next.price() >= next.p_star() {
        return Err(domain(
            factor.name(),
            value,
            "values keeping price below p_star",
        ));
    }
    Ok(next)
}

/// Discrete elasticity for a dimensional factor changed by `rel_delta`.
pub fn discrete_elasticity(s: &Scenario, factor: Factor, rel_delta: f64) -> Result<SensitivityEntry> {
    if !factor.is_dimensional() {
        return Err(Error::Usage(format!(
            "{factor} is dimensionless; use the quasi-elasticity"
        )));
    }
    if rel_delta == 0.0 || !rel_delta.is_finite() {
        return Err(domain("rel_delta", rel_delta, "nonzero finite"));
    }
    let base = solve_base(s)?;
    let next = perturbed(s, factor, s.get(factor) * (1.0 + rel_delta))?;
    let moved = solver::solve_tradeoff(&next)?;
    Ok(SensitivityEntry {
        factor,
        delta: rel_delta,
        value: (moved.l_opt / base.l_opt - 1.0) / rel_delta,
        kind: SensitivityKind::Elasticity,
        base_l_opt: base.l_opt,
        perturbed_l_opt: moved.l_opt,
        status_changed: moved.status != base.status,
    })
}

/// Discrete quasi-elasticity for a dimensionless factor moved to `new_value`.
pub fn discrete_quasi_elasticity(s: &Scenario, factor: Factor, new_value: f64) -> Result<SensitivityEntry> {
    if factor.is_dimensional() {
        return Err(Error::Usage(format!(
            "{factor} carries a unit; use the elasticity"
        )));
    }
    let delta = new_value - s.get(factor);
    if delta == 0.0 || !delta.is_finite() {
        return Err(domain(factor.name(), new_value, "a value different from the base"));
    }
    let base = solve_base(s)?;
    let next = perturbed(s, factor, new_value)?;
    let moved = solver::solve_tradeoff(&next)?;
    Ok(SensitivityEntry {
        factor,
        delta,
        value: (moved.l_opt / base.l_opt - 1.0) / delta,
        kind: SensitivityKind::QuasiElasticity,
        base_l_opt: base.l_opt,
        perturbed_l_opt: moved.l_opt,
        status_changed: moved.status != base.status,
    })
}

/// One tornado bar request.
///
/// For dimensional factors `low`/`high` are relative changes (e.g. `-0.1`,
/// `0.1`); for dimensionless factors they are the perturbed values.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlanItem {
    pub factor: Factor,
    pub low: f64,
    pub high: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TornadoBar {
    pub factor: Factor,
    pub low: SensitivityEntry,
    pub high: SensitivityEntry,
    pub magnitude: f64,
}

/// All eight factors: ±10% for dimensional ones, `ν, θ ∈ {0.1, 0.2}` and
/// breach probabilities in `{5e-5, 2e-4}`.
pub fn default_plan() -> Vec<PlanItem> {
    let item = |factor, low, high| PlanItem { factor, low, high };
    vec![
        item(Factor::QStar, -0.1, 0.1),
        item(Factor::PStar, -0.1, 0.1),
        item(Factor::Price, -0.1, 0.1),
        item(Factor::LN, -0.1, 0.1),
        item(Factor::Nu, 0.1, 0.2),
        item(Factor::Theta, 0.1, 0.2),
        item(Factor::PiS, 5e-5, 2e-4),
        item(Factor::PiCStar, 5e-5, 2e-4),
    ]
}

fn entry(s: &Scenario, factor: Factor, shift: f64) -> Result<SensitivityEntry> {
    if factor.is_dimensional() {
        discrete_elasticity(s, factor, shift)
    } else {
        discrete_quasi_elasticity(s, factor, shift)
    }
}

/// Evaluates every plan item on both sides and sorts bars by decreasing
/// magnitude, largest first. Equal magnitudes keep plan order.
pub fn tornado(s: &Scenario, plan: &[PlanItem]) -> Result<Vec<TornadoBar>> {
    let mut bars = plan
        .par_iter()
        .map(|item| {
            let low = entry(s, item.factor, item.low)?;
            let high = entry(s, item.factor, item.high)?;
            Ok(TornadoBar {
                factor: item.factor,
                low,
                high,
                magnitude: low.value.abs().max(high.value.abs()),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    bars.sort_by(|a, b| b.magnitude.total_cmp(&a.magnitude));
    Ok(bars)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSeries {
    pub factor: Factor,
    pub grid: Vec<f64>,
    pub l_opt: Vec<f64>,
    pub status: Vec<SolutionStatus>,
    pub revenue: Vec<f64>,
    pub olr: Option<Vec<f64>>,
    pub saturation_price: Option<f64>,
    pub revenue_argmax: Option<f64>,
    /// Price at which the secure optimum leaves the cap.
    pub kink_price: Option<f64>,
}

/// `points` uniform prices on `[0, 0.99 p*]`.
pub fn default_price_grid(s: &Scenario, points: usize) -> Vec<f64> {
    price_grid(0.0, 0.99 * s.p_star(), points)
}

pub fn price_grid(min: f64, max: f64, points: usize) -> Vec<f64> {
    match points {
        0 => Vec::new(),
        1 => vec![min],
        n => (0..n)
            .map(|i| {
                if i == n - 1 {
                    max
                } else {
                    min + (max - min) * i as f64 / (n - 1) as f64
                }
            })
            .collect(),
    }
}

fn check_grid(s: &Scenario, grid: &[f64]) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::Usage("empty price grid".into()));
    }
    for (i, &p) in grid.iter().enumerate() {
        if !(p >= 0.0 && p < s.p_star()) {
            return Err(domain("price", p, format!("[0, {})", s.p_star())));
        }
        if i > 0 && !(p > grid[i - 1]) {
            return Err(Error::Validation {
                field: "grid",
                value: p,
                reason: "grid must be strictly increasing",
            });
        }
    }
    Ok(())
}

/// Revenue `p q` with `q` on the demand curve rotated by `α(l_opt)`.
fn revenue(s: &Scenario, l_opt: f64) -> Result<f64> {
    let alpha = model::marginal_demand_factor(s, l_opt)?;
    Ok(s.price() * model::demand_quantity(s, alpha, s.price())?)
}

/// Largest price at which the surplus is still rising at `l = l_N`:
/// `p* (1 - sqrt(2 l_N [π_s + (1-π_s) π_c* (1+θ)] / (α_N q* p* ν)))`.
///
/// Requires a monotone decision derivative (`ν <= 1`), so that prices at or
/// below it are exactly the saturated ones.
pub fn saturation_price(s: &Scenario) -> Result<f64> {
    match solver::classify_regime(s) {
        Regime::NuLt1 | Regime::NuEq1 => {}
        other => {
            return Err(Error::Usage(format!(
                "saturation price needs nu <= 1 (regime {})",
                other.tag()
            )))
        }
    }
    let risk = s.pi_s() + (1.0 - s.pi_s()) * s.pi_c_star() * (1.0 + s.theta());
    let ratio = 2.0 * s.l_n() * risk / (s.alpha_n() * s.q_star() * s.p_star() * s.nu());
    Ok((s.p_star() * (1.0 - ratio.sqrt())).clamp(0.0, s.p_star()))
}

fn sweep(s: &Scenario, grid: &[f64]) -> Result<SweepSeries> {
    check_grid(s, grid)?;
    let rows = grid
        .par_iter()
        .map(|&p| {
            let at = s.with(Factor::Price, p)?;
            let sol = solver::solve_tradeoff(&at)?;
            Ok((sol.l_opt, sol.status, revenue(&at, sol.l_opt)?))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut series = SweepSeries {
        factor: Factor::Price,
        grid: grid.to_vec(),
        l_opt: Vec::with_capacity(rows.len()),
        status: Vec::with_capacity(rows.len()),
        revenue: Vec::with_capacity(rows.len()),
        olr: None,
        saturation_price: saturation_price(s).ok(),
        revenue_argmax: None,
        kink_price: None,
    };
    for (l, st, r) in rows {
        series.l_opt.push(l);
        series.status.push(st);
        series.revenue.push(r);
    }
    Ok(series)
}

/// Optimal loss against the unit price.
pub fn price_sweep(s: &Scenario, grid: &[f64]) -> Result<SweepSeries> {
    sweep(s, grid)
}

/// Provider revenue against the unit price, with the revenue-maximizing grid
/// price.
pub fn revenue_sweep(s: &Scenario, grid: &[f64]) -> Result<SweepSeries> {
    let mut series = sweep(s, grid)?;
    let best = series
        .revenue
        .iter()
        .enumerate()
        .fold(0, |best, (i, &r)| if r > series.revenue[best] { i } else { best });
    series.revenue_argmax = Some(series.grid[best]);
    Ok(series)
}

fn secure_saturated(s: &Scenario, p: f64) -> Result<bool> {
    let at = s.with(Factor::Price, p)?;
    Ok(secure::secure_feasible_loss(&at)? >= s.l_n())
}

/// Optimal loss ratio against the unit price. The kink is located on the
/// grid and then refined by bisection on the price.
pub fn olr_sweep(s: &Scenario, grid: &[f64]) -> Result<SweepSeries> {
    if s.pi_s() == 0.0 {
        return Err(Error::Usage(
            "the loss ratio sweep needs a vulnerable provider (pi_s > 0)".into(),
        ));
    }
    let mut series = sweep(s, grid)?;
    let olr = grid
        .par_iter()
        .map(|&p| secure::optimal_loss_ratio(&s.with(Factor::Price, p)?))
        .collect::<Result<Vec<_>>>()?;
    let saturated = grid
        .par_iter()
        .map(|&p| secure_saturated(s, p))
        .collect::<Result<Vec<_>>>()?;
    series.olr = Some(olr);

    if let Some(i) = (1..grid.len()).find(|&i| saturated[i - 1] && !saturated[i]) {
        let (mut lo, mut hi) = (grid[i - 1], grid[i]);
        for _ in 0..100 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if secure_saturated(s, mid)? {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        series.kink_price = Some(0.5 * (lo + hi));
    }
    Ok(series)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reference() -> Scenario {
        Scenario::sensitivity_reference()
    }

    fn case_study(l_n: f64) -> Scenario {
        Scenario::case_study(l_n, 0.5).unwrap()
    }

    #[test]
    fn elasticity_examples() {
        let s = reference();
        let q = discrete_elasticity(&s, Factor::QStar, 0.1).unwrap();
        assert!((q.value - 1.0).abs() < 0.3, "{}", q.value);
        assert_eq!(q.kind, SensitivityKind::Elasticity);
        let p = discrete_elasticity(&s, Factor::PStar, 0.1).unwrap();
        assert!((p.value - 3.0).abs() < 0.6, "{}", p.value);
        let l = discrete_elasticity(&s, Factor::LN, 0.1).unwrap();
        assert!(l.value.abs() < 0.1);
        assert!(!l.status_changed);

        assert!(matches!(
            discrete_elasticity(&s, Factor::Nu, 0.1),
            Err(Error::Usage(_))
        ));
        assert!(matches!(
            discrete_elasticity(&s, Factor::Price, 1.0),
            Err(Error::Domain { .. })
        ));
        assert!(discrete_elasticity(&s.with(Factor::Price, 1.0).unwrap(), Factor::QStar, 0.1).is_err());
    }

    #[test]
    fn saturated_cap_elasticity_is_unitary() {
        let s = Scenario::case_study(10000.0, 0.2).unwrap();
        let e = discrete_elasticity(&s, Factor::LN, 0.1).unwrap();
        assert!((e.value - 1.0).abs() < 1e-9, "{}", e.value);
        let e = discrete_elasticity(&s, Factor::LN, -0.1).unwrap();
        assert!((e.value - 1.0).abs() < 1e-9);
    }

    #[test]
    fn quasi_elasticity_examples() {
        let s = reference();
        let nu = discrete_quasi_elasticity(&s, Factor::Nu, 0.2).unwrap();
        assert!(nu.value > 0.0);
        assert_eq!(nu.kind, SensitivityKind::QuasiElasticity);
        assert!((nu.delta - (0.2 - 0.138647)).abs() < 1e-15);
        let pi_s = discrete_quasi_elasticity(&s, Factor::PiS, 2e-4).unwrap();
        assert!(pi_s.value < -1e3 && pi_s.value > -1e4, "{}", pi_s.value);

        assert!(matches!(
            discrete_quasi_elasticity(&s, Factor::Theta, 1.5),
            Err(Error::Domain { .. })
        ));
        assert!(discrete_quasi_elasticity(&s, Factor::QStar, 300.0).is_err());
        assert!(discrete_quasi_elasticity(&s, Factor::Nu, s.nu()).is_err());
    }

    #[test]
    fn tornado_orders_dimensional_factors() {
        let s = reference();
        let plan: Vec<_> = default_plan()
            .into_iter()
            .filter(|p| p.factor.is_dimensional())
            .collect();
        let bars = tornado(&s, &plan).unwrap();
        let order: Vec<_> = bars.iter().map(|b| b.factor).collect();
        assert_eq!(
            order,
            [Factor::PStar, Factor::Price, Factor::QStar, Factor::LN]
        );
        assert!(bars.windows(2).all(|w| w[0].magnitude >= w[1].magnitude));
    }

    #[test]
    fn tornado_probability_factors() {
        let s = reference();
        let plan = [
            PlanItem { factor: Factor::PiS, low: 5e-5, high: 2e-4 },
            PlanItem { factor: Factor::PiCStar, low: 5e-5, high: 2e-4 },
        ];
        let bars = tornado(&s, &plan).unwrap();
        assert_eq!(bars[0].factor, Factor::PiCStar);
        for b in &bars {
            assert!(b.low.value < 0.0 && b.high.value < 0.0);
        }
    }

    #[test]
    fn saturation_examples() {
        let p = saturation_price(&Scenario::case_study(10000.0, 0.5).unwrap()).unwrap();
        assert!((p - 0.402).abs() < 0.005, "{p}");
        let p = saturation_price(&reference()).unwrap();
        assert!((p - 0.2145).abs() < 0.005, "{p}");
        let tiny = saturation_price(&Scenario::case_study(1e-9, 0.5).unwrap()).unwrap();
        assert!(tiny > 0.999);
        let steep = reference().with(Factor::Nu, 1.5).unwrap();
        assert!(matches!(saturation_price(&steep), Err(Error::Usage(_))));
    }

    #[test]
    fn price_sweep_shape() {
        let s = case_study(10000.0);
        let grid = default_price_grid(&s, 201);
        let series = price_sweep(&s, &grid).unwrap();
        assert_eq!(series.l_opt.len(), 201);
        assert!(series.l_opt.windows(2).all(|w| w[1] <= w[0]));
        assert_eq!(series.l_opt[0], 10000.0);
        let p_sat = series.saturation_price.unwrap();
        let step = grid[1] - grid[0];
        for (p, st) in grid.iter().zip(&series.status) {
            if *p < p_sat - step {
                assert_eq!(*st, SolutionStatus::ClampedAtLn);
            } else if *p > p_sat + step {
                assert_eq!(*st, SolutionStatus::Interior);
            }
        }

        // the cap barely moves the curve off the flat portion: it enters the
        // decision equation only against π_s
        let other = price_sweep(&case_study(5000.0), &[0.6]).unwrap();
        let here = price_sweep(&s, &[0.6]).unwrap();
        assert!((other.l_opt[0] / here.l_opt[0] - 1.0).abs() < 0.01);

        let edge = price_sweep(&s, &[1.0 - 1e-9]).unwrap();
        assert!(edge.l_opt[0] < 1e-6);

        assert!(price_sweep(&s, &[0.2, 0.1]).is_err());
        assert!(price_sweep(&s, &[1.0]).is_err());
    }

    #[test]
    fn revenue_sweep_argmax() {
        let s = case_study(10000.0);
        let series = revenue_sweep(&s, &default_price_grid(&s, 201)).unwrap();
        let best = series.revenue_argmax.unwrap();
        assert!((0.42..=0.52).contains(&best), "{best}");
        assert!(best > series.saturation_price.unwrap());
    }

    #[test]
    fn linear_demand_revenue_peaks_at_half() {
        let s = reference();
        let grid = price_grid(0.0, 1.0, 1001);
        let best = grid
            .iter()
            .copied()
            .max_by(|a, b| {
                let ra = a * model::demand_quantity(&s, 0.0, *a).unwrap();
                let rb = b * model::demand_quantity(&s, 0.0, *b).unwrap();
                ra.total_cmp(&rb)
            })
            .unwrap();
        assert!((best - 0.5).abs() < 1e-12);
    }

    #[test]
    fn olr_sweep_kink() {
        let s = reference();
        let series = olr_sweep(&s, &default_price_grid(&s, 201)).unwrap();
        let olr = series.olr.as_ref().unwrap();
        assert!(olr.iter().all(|&r| r >= 1.0));
        let kink = series.kink_price.unwrap();
        assert!((kink - 0.4268).abs() < 0.01, "{kink}");
        assert!(olr_sweep(&s.with(Factor::PiS, 0.0).unwrap(), &[0.5]).is_err());
    }
}
