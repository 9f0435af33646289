//! The customer's trade-off: which potential loss maximizes net surplus over
//! `[0, l_N]`.
//!
//! The first-order condition is the decision equation
//! `A l^(ν-1) - π_s - B l^θ = 0`. Its shape depends on `ν`:
//!
//! * `ν < 1`: the derivative falls monotonically from `+∞` to `-∞`; a single
//!   root is bracketed constructively and bisected.
//! * `ν = 1`: the root has a closed form.
//! * `1 < ν < 1+θ`: the derivative starts at `-π_s`, peaks, then falls; up to
//!   two roots, the right one a local maximum.
//! * `ν > 1+θ`: the derivative dips then grows without bound; the single root
//!   is a local minimum, so the optimum sits at an endpoint.
//!
//! In every regime the returned loss is the global argmax over the candidate
//! set `{0, critical points < l_N, l_N}`, ties going to the smaller loss.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::model::{self, Scenario};
use crate::roots::{bisect_log, expand_until};

/// Tolerance for regime boundary comparisons on `ν`.
pub const REGIME_TOL: f64 = 1e-12;

/// Coefficients of the decision equation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DecisionCoefficients {
    pub a: f64,
    pub b: f64,
}

impl DecisionCoefficients {
    /// `A l^(ν-1) - π_s - B l^θ`.
    pub fn residual(&self, s: &Scenario, l: f64) -> f64 {
        self.a * pow(l, s.nu() - 1.0) - s.pi_s() - self.b * pow(l, s.theta())
    }

    /// Sum of term magnitudes, used to make residuals scale-free.
    pub fn scale(&self, s: &Scenario, l: f64) -> f64 {
        self.a * pow(l, s.nu() - 1.0) + s.pi_s() + self.b * pow(l, s.theta())
    }

    pub fn normalized_residual(&self, s: &Scenario, l: f64) -> f64 {
        self.residual(s, l) / self.scale(s, l)
    }
}

#[inline]
fn pow(l: f64, e: f64) -> f64 {
    (e * l.ln()).exp()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Regime {
    #[serde(rename = "NU_LT_1")]
    NuLt1,
    /// `1 < ν < 1+θ`
    #[serde(rename = "SUBCASE_A")]
    SubcaseA,
    /// `ν > 1+θ`
    #[serde(rename = "SUBCASE_B")]
    SubcaseB,
    #[serde(rename = "NU_EQ_1")]
    NuEq1,
    #[serde(rename = "NU_EQ_1_PLUS_THETA")]
    NuEq1PlusTheta,
}

impl Regime {
    pub fn tag(self) -> &'static str {
        match self {
            Regime::NuLt1 => "NU_LT_1",
            Regime::SubcaseA => "SUBCASE_A",
            Regime::SubcaseB => "SUBCASE_B",
            Regime::NuEq1 => "NU_EQ_1",
            Regime::NuEq1PlusTheta => "NU_EQ_1_PLUS_THETA",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SolutionStatus {
    #[serde(rename = "INTERIOR")]
    Interior,
    #[serde(rename = "CLAMPED_AT_LN")]
    ClampedAtLn,
    #[serde(rename = "AT_ZERO")]
    AtZero,
    /// No candidate had a finite surplus.
    #[serde(rename = "NO_SOLUTION")]
    NoSolution,
}

impl SolutionStatus {
    pub fn tag(self) -> &'static str {
        match self {
            SolutionStatus::Interior => "INTERIOR",
            SolutionStatus::ClampedAtLn => "CLAMPED_AT_LN",
            SolutionStatus::AtZero => "AT_ZERO",
            SolutionStatus::NoSolution => "NO_SOLUTION",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TradeoffSolution {
    pub l_opt: f64,
    pub status: SolutionStatus,
    pub surplus: f64,
    /// Zeros of the surplus derivative on `(0, ∞)`, ascending.
    pub critical_points: Vec<f64>,
    pub regime: Regime,
    /// Sign bracket used by the root finder, when one was needed.
    pub bracket: Option<(f64, f64)>,
    /// Normalized decision-equation residual at `l_opt` for interior optima.
    pub normalized_gradient: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Condition {
    pub name: String,
    /// Bound on `l_N`; `None` when the side is unbounded.
    pub bound: Option<f64>,
    pub satisfied: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeasibilityReport {
    pub regime: Regime,
    pub conditions: Vec<Condition>,
    pub guaranteed_unique: bool,
}

/// Coefficients `A = (q* p* ν/2)(α_N / l_N^ν)(1-p/p*)^2` and
/// `B = (1-π_s) π_c* (θ+1) / l_N^θ`.
pub fn decision_coefficients(s: &Scenario) -> Result<DecisionCoefficients> {
    if s.price() >= s.p_star() {
        return Err(Error::Degenerate {
            price: s.price(),
            p_star: s.p_star(),
        });
    }
    let l_n = s.l_n();
    let a = s.base_surplus() * s.nu() * s.alpha_n() / pow(l_n, s.nu());
    let b = (1.0 - s.pi_s()) * s.pi_c_star() * (s.theta() + 1.0) / pow(l_n, s.theta());
    Ok(DecisionCoefficients { a, b })
}

pub fn classify_regime(s: &Scenario) -> Regime {
    let nu = s.nu();
    let edge = 1.0 + s.theta();
    if (nu - 1.0).abs() <= REGIME_TOL {
        Regime::NuEq1
    } else if (nu - edge).abs() <= REGIME_TOL {
        Regime::NuEq1PlusTheta
    } else if nu < 1.0 {
        Regime::NuLt1
    } else if nu < edge {
        Regime::SubcaseA
    } else {
        Regime::SubcaseB
    }
}

/// `π_s + (1-π_s) π_c* (1+θ)`: marginal expected loss at `l = l_N`.
fn risk_at_cap(s: &Scenario) -> f64 {
    s.pi_s() + (1.0 - s.pi_s()) * s.pi_c_star() * (1.0 + s.theta())
}

/// Existence and uniqueness conditions on `l_N` for the scenario's regime.
pub fn feasibility_report(s: &Scenario) -> FeasibilityReport {
    let regime = classify_regime(s);
    let benefit = s.base_surplus() * s.alpha_n();
    match regime {
        Regime::NuLt1 => FeasibilityReport {
            regime,
            conditions: Vec::new(),
            guaranteed_unique: true,
        },
        Regime::NuEq1 => {
            let low = benefit / risk_at_cap(s);
            let high = (s.pi_s() > 0.0).then(|| benefit / s.pi_s());
            let l_n = s.l_n();
            let lower_ok = low < l_n;
            let upper_ok = high.is_none_or(|h| l_n < h);
            FeasibilityReport {
                regime,
                conditions: vec![
                    Condition {
                        name: "l_n > lower band edge".into(),
                        bound: Some(low),
                        satisfied: lower_ok,
                    },
                    Condition {
                        name: "l_n < upper band edge".into(),
                        bound: high,
                        satisfied: upper_ok,
                    },
                ],
                guaranteed_unique: lower_ok && upper_ok,
            }
        }
        Regime::SubcaseA | Regime::SubcaseB | Regime::NuEq1PlusTheta => {
            let bound = benefit * s.nu() / risk_at_cap(s);
            let ok = s.l_n() < bound;
            FeasibilityReport {
                regime,
                conditions: vec![Condition {
                    name: "l_n < bound (sufficient)".into(),
                    bound: Some(bound),
                    satisfied: ok,
                }],
                guaranteed_unique: ok,
            }
        }
    }
}

/// Sign bracket `[l_l, l_u]` around the unique root when `ν < 1`.
///
/// `l_u` balances the benefit and customer-risk terms; `l_l` is chosen so that
/// the benefit term exceeds its value at `l_u` by exactly `π_s`.
pub fn construct_bracket(s: &Scenario) -> Result<(f64, f64)> {
    if classify_regime(s) != Regime::NuLt1 {
        return Err(Error::Usage(format!(
            "bracket construction needs nu < 1 (regime {})",
            classify_regime(s).tag()
        )));
    }
    let c = decision_coefficients(s)?;
    let nu = s.nu();
    let upper = ((c.a.ln() - c.b.ln()) / (s.theta() + 1.0 - nu)).exp();
    let mut lower = if s.pi_s() > 0.0 {
        let t = pow(upper, nu - 1.0) + s.pi_s() / c.a;
        (t.ln() / (nu - 1.0)).exp()
    } else {
        upper * 0.5
    };
    let mut upper = if s.pi_s() > 0.0 { upper } else { upper * 2.0 };
    // Rounding can leave the constructed ends on the wrong side when π_s is
    // negligible against the benefit term.
    let g = |l: f64| c.residual(s, l);
    if !(g(lower) > 0.0) {
        lower = expand_until(|l| g(l) > 0.0, lower, false)?;
    }
    if !(g(upper) < 0.0) {
        upper = expand_until(|l| g(l) < 0.0, upper, true)?;
    }
    Ok((lower, upper))
}

fn status_for(s: &Scenario, l: f64) -> SolutionStatus {
    if l == 0.0 {
        SolutionStatus::AtZero
    } else if l >= s.l_n() {
        SolutionStatus::ClampedAtLn
    } else {
        SolutionStatus::Interior
    }
}

/// Global argmax of the surplus over `{0, l_N} ∪ interior`, smaller loss
/// winning ties.
fn best_candidate(s: &Scenario, interior: &[f64]) -> (f64, f64) {
    let mut candidates: Vec<f64> = std::iter::once(0.0)
        .chain(interior.iter().copied().filter(|&l| l > 0.0 && l < s.l_n()))
        .chain(std::iter::once(s.l_n()))
        .collect();
    candidates.sort_by(f64::total_cmp);
    let mut best = (f64::NAN, f64::NEG_INFINITY);
    for l in candidates {
        let v = model::surplus_gain(s, l);
        if v > best.1 {
            best = (l, v);
        }
    }
    if best.0.is_nan() {
        return best;
    }
    (best.0, model::surplus_at(s, best.0))
}

fn finish(
    s: &Scenario,
    regime: Regime,
    critical_points: Vec<f64>,
    bracket: Option<(f64, f64)>,
    coeffs: Option<DecisionCoefficients>,
) -> TradeoffSolution {
    let (l_opt, surplus) = best_candidate(s, &critical_points);
    if l_opt.is_nan() {
        return TradeoffSolution {
            l_opt: 0.0,
            status: SolutionStatus::NoSolution,
            surplus: f64::NAN,
            critical_points,
            regime,
            bracket,
            normalized_gradient: None,
        };
    }
    let status = status_for(s, l_opt);
    let normalized_gradient = match (status, coeffs) {
        (SolutionStatus::Interior, Some(c)) => Some(c.normalized_residual(s, l_opt)),
        _ => None,
    };
    TradeoffSolution {
        l_opt,
        status,
        surplus,
        critical_points,
        regime,
        bracket,
        normalized_gradient,
    }
}

/// Feasible solution of the trade-off problem.
pub fn solve_tradeoff(s: &Scenario) -> Result<TradeoffSolution> {
    let regime = classify_regime(s);
    if s.price() >= s.p_star() {
        // Nothing to gain from disclosure; any loss only costs.
        return Ok(finish(s, regime, Vec::new(), None, None));
    }
    let c = decision_coefficients(s)?;
    let g = |l: f64| c.residual(s, l);
    let theta = s.theta();
    let nu = s.nu();

    let (critical, bracket) = match regime {
        Regime::NuLt1 => {
            let bracket = construct_bracket(s)?;
            let root = bisect_log(g, bracket.0, bracket.1)?;
            (vec![root], Some(bracket))
        }
        Regime::NuEq1 => {
            let excess = c.a - s.pi_s();
            if excess > 0.0 {
                (vec![((excess / c.b).ln() / theta).exp()], None)
            } else {
                (Vec::new(), None)
            }
        }
        // Roots above l_N are never feasible, so both subcases search (0, l_N].
        Regime::SubcaseA => {
            let peak = ((c.a * (nu - 1.0)).ln() - (c.b * theta).ln()) / (1.0 + theta - nu);
            let peak = peak.exp().clamp(f64::MIN_POSITIVE, s.l_n());
            if g(peak) <= 0.0 {
                (Vec::new(), None)
            } else {
                let mut points = Vec::with_capacity(2);
                // the left root can lie below the smallest positive float,
                // where it is indistinguishable from zero
                if s.pi_s() > 0.0 {
                    if let Ok(lo) = expand_until(|l| g(l) < 0.0, peak, false) {
                        points.push(bisect_log(g, lo, peak)?);
                    }
                }
                if g(s.l_n()) < 0.0 {
                    points.push(bisect_log(g, peak, s.l_n())?);
                }
                (points, Some((peak, s.l_n())))
            }
        }
        Regime::SubcaseB => {
            let trough = ((c.b * theta).ln() - (c.a * (nu - 1.0)).ln()) / (nu - 1.0 - theta);
            let trough = trough.exp().clamp(f64::MIN_POSITIVE, s.l_n());
            let lo = if g(trough) < 0.0 {
                Some(trough)
            } else {
                expand_until(|l| g(l) < 0.0, trough, false).ok()
            };
            match lo {
                Some(lo) if g(s.l_n()) > 0.0 => {
                    let root = bisect_log(g, lo, s.l_n())?;
                    (vec![root], Some((lo, s.l_n())))
                }
                _ => (Vec::new(), None),
            }
        }
        Regime::NuEq1PlusTheta => {
            // Both power terms share the exponent θ.
            let slope = c.a - c.b;
            if slope > 0.0 && s.pi_s() > 0.0 {
                (vec![((s.pi_s() / slope).ln() / theta).exp()], None)
            } else {
                (Vec::new(), None)
            }
        }
    };
    Ok(finish(s, regime, critical, bracket, Some(c)))
}

/// Choice among a finite menu of disclosure levels.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiscreteChoice {
    /// Index into the menu, `None` when disclosing nothing is best.
    pub index: Option<usize>,
    pub loss: f64,
    pub surplus: f64,
}

/// Best entry of a strictly increasing menu of losses in `(0, l_N]`, with
/// `l = 0` as an implicit alternative.
pub fn solve_discrete(s: &Scenario, losses: &[f64]) -> Result<DiscreteChoice> {
    for (i, &l) in losses.iter().enumerate() {
        if !(l > 0.0 && l <= s.l_n()) {
            return Err(domain("loss", l, format!("(0, {}]", s.l_n())));
        }
        if i > 0 && !(l > losses[i - 1]) {
            return Err(Error::Validation {
                field: "losses",
                value: l,
                reason: "losses must be strictly increasing",
            });
        }
    }
    let mut best = DiscreteChoice {
        index: None,
        loss: 0.0,
        surplus: model::surplus_at(s, 0.0),
    };
    for (i, &l) in losses.iter().enumerate() {
        let v = model::surplus_at(s, l);
        if v > best.surplus {
            best = DiscreteChoice {
                index: Some(i),
                loss: l,
                surplus: v,
            };
        }
    }
    Ok(best)
}

/// Brute-force argmax of the surplus over `n` uniform points of `[0, l_N]`.
pub fn oracle_grid_argmax(s: &Scenario, n: usize) -> f64 {
    let n = n.max(2);
    let step = s.l_n() / (n - 1) as f64;
    let at = |i: usize| if i == n - 1 { s.l_n() } else { i as f64 * step };
    let (best, _) = (0..n)
        .into_par_iter()
        .map(|i| (i, model::surplus_at(s, at(i))))
        .reduce(
            || (usize::MAX, f64::NEG_INFINITY),
            |x, y| {
                if y.1 > x.1 || (y.1 == x.1 && y.0 < x.0) {
                    y
                } else {
                    x
                }
            },
        );
    at(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{surplus_gradient, Factor, ScenarioParams};

    fn table2() -> Scenario {
        Scenario::sensitivity_reference()
    }

    fn with(s: Scenario, f: Factor, v: f64) -> Scenario {
        s.with(f, v).unwrap()
    }

    #[test]
    fn coefficients_match_high_precision_values() {
        let c = decision_coefficients(&table2()).unwrap();
        assert!((c.a / 0.241_658_733_030_074_5 - 1.0).abs() < 1e-12, "{}", c.a);
        assert!((c.b / 3.175_101_949_432_517e-5 - 1.0).abs() < 1e-12, "{}", c.b);
        assert!(c.residual(&table2(), 3796.918).abs() < 1e-6);

        let free = with(table2(), Factor::Price, 0.0);
        let c0 = decision_coefficients(&free).unwrap();
        assert!((c0.a - 4.0 * c.a).abs() < 1e-12);

        let half = decision_coefficients(&with(table2(), Factor::PiS, 0.5)).unwrap();
        let none = decision_coefficients(&with(table2(), Factor::PiS, 0.0)).unwrap();
        assert!((half.b / none.b - 0.5).abs() < 1e-15);

        assert!(matches!(
            decision_coefficients(&with(table2(), Factor::Price, 1.0)),
            Err(Error::Degenerate { .. })
        ));
    }

    #[test]
    fn regimes() {
        assert_eq!(classify_regime(&table2()), Regime::NuLt1);
        let s = with(table2(), Factor::Theta, 0.2);
        assert_eq!(classify_regime(&with(s, Factor::Nu, 1.05)), Regime::SubcaseA);
        assert_eq!(classify_regime(&with(s, Factor::Nu, 1.5)), Regime::SubcaseB);
        assert_eq!(classify_regime(&with(s, Factor::Nu, 1.0)), Regime::NuEq1);
        assert_eq!(classify_regime(&with(s, Factor::Nu, 1.2)), Regime::NuEq1PlusTheta);
        assert_eq!(
            classify_regime(&with(s, Factor::Nu, 1.0 + 5e-13)),
            Regime::NuEq1
        );
    }

    #[test]
    fn feasibility_examples() {
        let r = feasibility_report(&table2());
        assert!(r.guaranteed_unique && r.conditions.is_empty());

        let s = with(table2(), Factor::Nu, 1.0);
        let r = feasibility_report(&s);
        assert_eq!(r.regime, Regime::NuEq1);
        let low = r.conditions[0].bound.unwrap();
        let high = r.conditions[1].bound.unwrap();
        let risk = 1e-4 + (1.0 - 1e-4) * 1e-4 * 1.138647;
        assert!((low - 6.25 / risk).abs() < 1e-6);
        assert!((low - 2.9226e4).abs() < 1.0);
        assert!((high - 6.25e4).abs() < 1e-6);
        assert!(!r.guaranteed_unique);
        assert!(!r.conditions[0].satisfied && r.conditions[1].satisfied);

        let r = feasibility_report(&with(s, Factor::LN, 5e4));
        assert!(r.guaranteed_unique);

        let secure = with(s, Factor::PiS, 0.0);
        let r = feasibility_report(&secure);
        assert_eq!(r.conditions[1].bound, None);
        assert!(r.conditions[1].satisfied);

        let r = feasibility_report(&with(table2(), Factor::Nu, 1.5));
        assert_eq!(r.conditions.len(), 1);
        assert!(r.conditions[0].name.contains("sufficient"));
    }

    #[test]
    fn bracket_examples() {
        let s = table2();
        let (lo, hi) = construct_bracket(&s).unwrap();
        let c = decision_coefficients(&s).unwrap();
        assert!((hi - c.a / c.b).abs() < 1e-6 * hi, "θ=ν makes the exponent 1");
        assert!((hi - 7611.1).abs() < 1.0, "{hi}");
        assert!(surplus_gradient(&s, hi).unwrap() < 0.0);
        assert!(surplus_gradient(&s, lo).unwrap() > 0.0);
        assert!(lo < 3797.0 && 3797.0 < hi);

        let secure = with(s, Factor::PiS, 0.0);
        let (lo, hi) = construct_bracket(&secure).unwrap();
        assert!(lo < hi);
        assert!(surplus_gradient(&secure, lo).unwrap() > 0.0);
        assert!(surplus_gradient(&secure, hi).unwrap() < 0.0);

        assert!(matches!(
            construct_bracket(&with(s, Factor::Nu, 1.5)),
            Err(Error::Usage(_))
        ));
    }

    #[test]
    fn golden_optimum() {
        let sol = solve_tradeoff(&table2()).unwrap();
        assert_eq!(sol.status, SolutionStatus::Interior);
        assert!((sol.l_opt - 3797.0).abs() < 1.0, "{}", sol.l_opt);
        assert!(sol.normalized_gradient.unwrap().abs() < 1e-6);
        assert!((sol.surplus - 36.0031).abs() < 1e-3);
        assert_eq!(sol.surplus, model::net_surplus(&table2(), sol.l_opt).unwrap());
    }

    #[test]
    fn saturated_and_zero() {
        let s = Scenario::case_study(10000.0, 0.2).unwrap();
        let sol = solve_tradeoff(&s).unwrap();
        assert_eq!(sol.status, SolutionStatus::ClampedAtLn);
        assert_eq!(sol.l_opt, 10000.0);

        let s = with(table2(), Factor::Price, 1.0);
        let sol = solve_tradeoff(&s).unwrap();
        assert_eq!(sol.status, SolutionStatus::AtZero);
        assert_eq!(sol.l_opt, 0.0);
    }

    #[test]
    fn nu_eq_1_closed_form() {
        let s = with(with(table2(), Factor::Nu, 1.0), Factor::LN, 5e4);
        let c = decision_coefficients(&s).unwrap();
        let expected = ((c.a - s.pi_s()) / c.b).powf(1.0 / s.theta());
        let sol = solve_tradeoff(&s).unwrap();
        assert_eq!(sol.status, SolutionStatus::Interior);
        assert!((sol.l_opt / expected - 1.0).abs() < 1e-12);

        // above the band, A <= π_s
        let sol = solve_tradeoff(&with(s, Factor::LN, 7e4)).unwrap();
        assert_eq!(sol.status, SolutionStatus::AtZero);
        // below the band, the root lies past the cap
        let sol = solve_tradeoff(&with(s, Factor::LN, 2e4)).unwrap();
        assert_eq!(sol.status, SolutionStatus::ClampedAtLn);
    }

    #[test]
    fn subcase_a_two_roots() {
        // Cheap data, strong benefit: gradient peak is positive.
        let s = Scenario::new(ScenarioParams {
            q_star: 250.0,
            p_star: 1.0,
            price: 0.1,
            nu: 1.1,
            theta: 0.5,
            alpha_n: 1.0,
            l_n: 5000.0,
            pi_s: 1e-2,
            pi_c_star: 1e-2,
        })
        .unwrap();
        assert_eq!(classify_regime(&s), Regime::SubcaseA);
        let sol = solve_tradeoff(&s).unwrap();
        assert_eq!(sol.critical_points.len(), 2);
        let (l, r) = (sol.critical_points[0], sol.critical_points[1]);
        assert!((l - 2.270334880815562).abs() < 1e-9 * l, "{l}");
        assert!((r - 2725.2483503070493).abs() < 1e-9 * r, "{r}");
        assert!(l < r);
        assert!(surplus_gradient(&s, l * 0.9).unwrap() < 0.0);
        assert!(surplus_gradient(&s, (l * r).sqrt()).unwrap() > 0.0);
        assert!(surplus_gradient(&s, r * 1.1).unwrap() < 0.0);
        let oracle = oracle_grid_argmax(&s, 200_001);
        assert!((sol.l_opt - oracle).abs() <= 2.0 * s.l_n() / 200_000.0);

        // at l_N = 500 the right root lies past the cap and is dropped
        let capped = solve_tradeoff(&with(with(s, Factor::LN, 500.0), Factor::PiS, 1e-3)).unwrap();
        assert!(capped.critical_points.iter().all(|&x| x < 500.0));
        assert_eq!(capped.status, SolutionStatus::ClampedAtLn);
    }

    #[test]
    fn subcase_b_endpoints() {
        let s = with(with(table2(), Factor::Nu, 1.8), Factor::Price, 0.0);
        assert_eq!(classify_regime(&s), Regime::SubcaseB);
        let sol = solve_tradeoff(&s).unwrap();
        assert_eq!(sol.critical_points.len(), 1);
        assert!(matches!(
            sol.status,
            SolutionStatus::AtZero | SolutionStatus::ClampedAtLn
        ));
        assert_eq!(sol.l_opt, oracle_grid_argmax(&s, 10_001));
    }

    #[test]
    fn discrete_examples() {
        let s = table2();
        let pick = solve_discrete(&s, &[1000.0, 3797.0, 8000.0]).unwrap();
        assert_eq!(pick.index, Some(1));
        let pick = solve_discrete(&s, &[9000.0, 9500.0]).unwrap();
        assert_eq!(pick.index, Some(0));
        let at_cap = with(s, Factor::Price, 1.0);
        let pick = solve_discrete(&at_cap, &[1.0, 10.0]).unwrap();
        assert_eq!(pick.index, None);
        assert_eq!(pick.loss, 0.0);
        assert!(solve_discrete(&s, &[10.0, 5.0]).is_err());
        assert!(solve_discrete(&s, &[10.0, 10.0]).is_err());
        assert!(solve_discrete(&s, &[0.0]).is_err());
    }

    #[test]
    fn oracle_examples() {
        let s = table2();
        let l = oracle_grid_argmax(&s, 1_000_001);
        assert!((l - 3796.918).abs() <= 0.01 + 1e-9);
        assert_eq!(oracle_grid_argmax(&with(s, Factor::Price, 1.0), 1000), 0.0);
        let sat = Scenario::case_study(5000.0, 0.2).unwrap();
        assert_eq!(oracle_grid_argmax(&sat, 1_000_000), 5000.0);
    }
}
