//! Demand curve, disclosure power law and the customer's net surplus.
//!
//! The customer faces a linear demand curve `q/q* + p/p* = 1`. Releasing
//! personal data worth a potential loss `l` rotates the curve outward by the
//! factor `1 + α(l)`, with `α(l) = α_N (l/l_N)^ν`. The net surplus is the
//! consumption surplus on the rotated curve minus the expected breach loss.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::breach::{self, BreachProfile};
use crate::error::{domain, Error, Result};

/// Raw scenario parameters as they appear in input files.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioParams {
    /// Maximum base quantity of service `q*`.
    pub q_star: f64,
    /// Willingness-to-pay `p*`.
    pub p_star: f64,
    /// Unit price charged by the provider.
    pub price: f64,
    /// Privacy parameter `ν`.
    pub nu: f64,
    /// Security parameter `θ`, strictly inside (0, 1).
    pub theta: f64,
    /// Maximum marginal demand factor `α_N`.
    pub alpha_n: f64,
    /// Maximum potential loss `l_N`.
    pub l_n: f64,
    /// Provider-side breach probability `π_s`.
    pub pi_s: f64,
    /// Maximum customer-side breach probability `π_c*`.
    pub pi_c_star: f64,
}

/// A validated customer/provider scenario.
///
/// Construction goes through [`Scenario::new`], so every value of this type
/// satisfies the parameter ranges.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ScenarioParams", into = "ScenarioParams")]
pub struct Scenario(ScenarioParams);

impl TryFrom<ScenarioParams> for Scenario {
    type Error = Error;

    fn try_from(params: ScenarioParams) -> Result<Self> {
        Scenario::new(params)
    }
}

impl From<Scenario> for ScenarioParams {
    fn from(s: Scenario) -> Self {
        s.0
    }
}

fn check(field: &'static str, value: f64, ok: bool, reason: &'static str) -> Result<()> {
    if value.is_finite() && ok {
        Ok(())
    } else {
        Err(Error::Validation {
            field,
            value,
            reason,
        })
    }
}

impl Scenario {
    pub fn new(p: ScenarioParams) -> Result<Self> {
        check("q_star", p.q_star, p.q_star > 0.0, "must be > 0")?;
        check("p_star", p.p_star, p.p_star > 0.0, "must be > 0")?;
        check("price", p.price, p.price >= 0.0, "must be >= 0")?;
        check("nu", p.nu, p.nu > 0.0, "must be > 0")?;
        check(
            "theta",
            p.theta,
            p.theta > 0.0 && p.theta < 1.0,
            "must lie in (0, 1)",
        )?;
        check("alpha_n", p.alpha_n, p.alpha_n > 0.0, "must be > 0")?;
        check("l_n", p.l_n, p.l_n > 0.0, "must be > 0")?;
        check(
            "pi_s",
            p.pi_s,
            (0.0..1.0).contains(&p.pi_s),
            "must lie in [0, 1)",
        )?;
        check(
            "pi_c_star",
            p.pi_c_star,
            p.pi_c_star > 0.0 && p.pi_c_star < 1.0,
            "must lie in (0, 1)",
        )?;
        Ok(Scenario(p))
    }

    /// The case-study parameter set: `q*=250`, `p*=1`, `ν=θ=0.138647`,
    /// `α_N=0.2`, `π_s=1e-5`, `π_c*=1e-4`, with the given cap and price.
    pub fn case_study(l_n: f64, price: f64) -> Result<Self> {
        Scenario::new(ScenarioParams {
            q_star: 250.0,
            p_star: 1.0,
            price,
            nu: 0.138647,
            theta: 0.138647,
            alpha_n: 0.2,
            l_n,
            pi_s: 1e-5,
            pi_c_star: 1e-4,
        })
    }

    /// Reference point of the sensitivity analysis (`p=0.5`, `l_N=10000`,
    /// `π_s=π_c*=1e-4`).
    pub fn sensitivity_reference() -> Self {
        Scenario(ScenarioParams {
            q_star: 250.0,
            p_star: 1.0,
            price: 0.5,
            nu: 0.138647,
            theta: 0.138647,
            alpha_n: 0.2,
            l_n: 10000.0,
            pi_s: 1e-4,
            pi_c_star: 1e-4,
        })
    }

    pub fn params(&self) -> ScenarioParams {
        self.0
    }

    pub fn q_star(&self) -> f64 {
        self.0.q_star
    }
    pub fn p_star(&self) -> f64 {
        self.0.p_star
    }
    pub fn price(&self) -> f64 {
        self.0.price
    }
    pub fn nu(&self) -> f64 {
        self.0.nu
    }
    pub fn theta(&self) -> f64 {
        self.0.theta
    }
    pub fn alpha_n(&self) -> f64 {
        self.0.alpha_n
    }
    pub fn l_n(&self) -> f64 {
        self.0.l_n
    }
    pub fn pi_s(&self) -> f64 {
        self.0.pi_s
    }
    pub fn pi_c_star(&self) -> f64 {
        self.0.pi_c_star
    }

    pub fn get(&self, factor: Factor) -> f64 {
        let p = &self.0;
        match factor {
            Factor::QStar => p.q_star,
            Factor::PStar => p.p_star,
            Factor::Price => p.price,
            Factor::LN => p.l_n,
            Factor::Nu => p.nu,
            Factor::Theta => p.theta,
            Factor::PiS => p.pi_s,
            Factor::PiCStar => p.pi_c_star,
        }
    }

    /// Returns a copy with one driving factor replaced, re-validated.
    pub fn with(&self, factor: Factor, value: f64) -> Result<Self> {
        let mut p = self.0;
        match factor {
            Factor::QStar => p.q_star = value,
            Factor::PStar => p.p_star = value,
            Factor::Price => p.price = value,
            Factor::LN => p.l_n = value,
            Factor::Nu => p.nu = value,
            Factor::Theta => p.theta = value,
            Factor::PiS => p.pi_s = value,
            Factor::PiCStar => p.pi_c_star = value,
        }
        Scenario::new(p)
    }

    pub fn breach_profile(&self) -> BreachProfile {
        BreachProfile {
            pi_s: self.0.pi_s,
            pi_c_star: self.0.pi_c_star,
            theta: self.0.theta,
            l_n: self.0.l_n,
        }
    }

    /// `(1 - p/p*)`, floored at zero once the price reaches `p*`.
    pub(crate) fn price_margin(&self) -> f64 {
        (1.0 - self.0.price / self.0.p_star).max(0.0)
    }

    /// Consumption surplus at zero disclosure, `(p* q*/2)(1 - p/p*)^2`.
    pub(crate) fn base_surplus(&self) -> f64 {
        let m = self.price_margin();
        0.5 * self.0.p_star * self.0.q_star * m * m
    }
}

/// The eight driving factors that sensitivity analysis can perturb.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Factor {
    #[serde(rename = "q_star")]
    QStar,
    #[serde(rename = "p_star")]
    PStar,
    #[serde(rename = "price")]
    Price,
    #[serde(rename = "l_n")]
    LN,
    #[serde(rename = "nu")]
    Nu,
    #[serde(rename = "theta")]
    Theta,
    #[serde(rename = "pi_s")]
    PiS,
    #[serde(rename = "pi_c_star")]
    PiCStar,
}

impl Factor {
    pub const ALL: [Factor; 8] = [
        Factor::QStar,
        Factor::PStar,
        Factor::Price,
        Factor::LN,
        Factor::Nu,
        Factor::Theta,
        Factor::PiS,
        Factor::PiCStar,
    ];

    /// Factors carrying a unit of measure (money or service units).
    pub fn is_dimensional(self) -> bool {
        matches!(
            self,
            Factor::QStar | Factor::PStar | Factor::Price | Factor::LN
        )
    }

    pub fn name(self) -> &'static str {
        match self {
            Factor::QStar => "q_star",
            Factor::PStar => "p_star",
            Factor::Price => "price",
            Factor::LN => "l_n",
            Factor::Nu => "nu",
            Factor::Theta => "theta",
            Factor::PiS => "pi_s",
            Factor::PiCStar => "pi_c_star",
        }
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Factor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Factor::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::Usage(format!("unknown factor `{s}`")))
    }
}

/// A (quantity, price) point on a demand curve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DemandPoint {
    pub quantity: f64,
    pub price: f64,
}

/// Quantities acceptable to both parties after a release of data.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConsumptionRegion {
    pub lower: f64,
    pub upper: f64,
    /// Customer surplus grows iff `q2 > q1 sqrt(1+α)`.
    pub customer_ok_lower: f64,
    pub provider_lower: f64,
    pub provider_upper: f64,
    pub discriminant: f64,
    pub empty: bool,
}

impl ConsumptionRegion {
    /// Open-interval membership test.
    pub fn contains(&self, q2: f64) -> bool {
        !self.empty && q2 > self.lower && q2 < self.upper
    }
}

const DISCRIMINANT_TOL: f64 = 1e-12;

/// `(l/l_N)^exponent` evaluated through logarithms; zero at `l = 0`.
#[inline]
pub(crate) fn ratio_pow(l: f64, l_n: f64, exponent: f64) -> f64 {
    if l == 0.0 {
        0.0
    } else {
        (exponent * (l.ln() - l_n.ln())).exp()
    }
}

fn check_loss(s: &Scenario, l: f64) -> Result<()> {
    if (0.0..=s.l_n()).contains(&l) {
        Ok(())
    } else {
        Err(domain("loss", l, format!("[0, {}]", s.l_n())))
    }
}

/// `α(l) = α_N (l/l_N)^ν`.
pub fn marginal_demand_factor(s: &Scenario, l: f64) -> Result<f64> {
    check_loss(s, l)?;
    Ok(s.alpha_n() * ratio_pow(l, s.l_n(), s.nu()))
}

/// Quantity on the demand curve rotated by `1 + alpha`, zero for `p >= p*`.
pub fn demand_quantity(s: &Scenario, alpha: f64, p: f64) -> Result<f64> {
    if !(alpha >= 0.0) {
        return Err(domain("alpha", alpha, "[0, inf)"));
    }
    if !(p >= 0.0) {
        return Err(domain("price", p, "[0, inf)"));
    }
    Ok(s.q_star() * (1.0 + alpha) * (1.0 - p / s.p_star()).max(0.0))
}

/// Demand point at the scenario's own price.
pub fn demand_point(s: &Scenario, alpha: f64) -> Result<DemandPoint> {
    Ok(DemandPoint {
        quantity: demand_quantity(s, alpha, s.price())?,
        price: s.price(),
    })
}

/// Provider revenue `p* [1 - q2/((1+α) q*)] q2` on the rotated curve.
pub fn provider_revenue(s: &Scenario, q2: f64, alpha: f64) -> Result<f64> {
    if !(alpha >= 0.0) {
        return Err(domain("alpha", alpha, "[0, inf)"));
    }
    let q_max = (1.0 + alpha) * s.q_star();
    if !(0.0..=q_max).contains(&q2) {
        return Err(domain("quantity", q2, format!("[0, {q_max}]")));
    }
    Ok(s.p_star() * (1.0 - q2 / q_max) * q2)
}

/// Region of post-release quantities that raise both the customer's surplus
/// and the provider's revenue, starting from `q1` on the base curve.
pub fn valid_demand_region(s: &Scenario, q1: f64, alpha: f64) -> Result<ConsumptionRegion> {
    let q_star = s.q_star();
    if !(q1 > 0.0 && q1 < q_star) {
        return Err(domain("q1", q1, format!("(0, {q_star})")));
    }
    if !(alpha > 0.0) {
        return Err(domain("alpha", alpha, "(0, inf)"));
    }
    let x = q1 / q_star;
    let scale = (1.0 + alpha) * q_star;
    let disc = 1.0 - 4.0 * x * (1.0 - x) / (1.0 + alpha);
    let customer_ok_lower = q1 * (1.0 + alpha).sqrt();

    let (provider_lower, provider_upper, negative) = if disc < -DISCRIMINANT_TOL {
        (0.5 * scale, 0.5 * scale, true)
    } else {
        let root = disc.max(0.0).sqrt();
        (0.5 * scale * (1.0 - root), 0.5 * scale * (1.0 + root), false)
    };
    let lower = customer_ok_lower.max(provider_lower);
    let upper = provider_upper;
    Ok(ConsumptionRegion {
        lower,
        upper,
        customer_ok_lower,
        provider_lower,
        provider_upper,
        discriminant: disc,
        empty: negative || lower >= upper,
    })
}

/// A price taker keeps the price and scales demand by `1 + α`.
pub fn price_taker_demand(q1: f64, alpha: f64) -> f64 {
    q1 * (1.0 + alpha)
}

/// Privacy parameter that maps a fraction of the loss onto a fraction of the
/// benefit: solves `benefit_fraction = loss_fraction^ν`.
pub fn pareto_privacy_parameter(benefit_fraction: f64, loss_fraction: f64) -> Result<f64> {
    for (what, v) in [("benefit_fraction", benefit_fraction), ("loss_fraction", loss_fraction)] {
        if !(v > 0.0 && v < 1.0) {
            return Err(domain(what, v, "(0, 1)"));
        }
    }
    Ok(benefit_fraction.ln() / loss_fraction.ln())
}

#[inline]
pub(crate) fn surplus_at(s: &Scenario, l: f64) -> f64 {
    let r_nu = ratio_pow(l, s.l_n(), s.nu());
    let consumption = s.base_surplus() * (1.0 + s.alpha_n() * r_nu);
    let pi_c = s.pi_c_star() * ratio_pow(l, s.l_n(), s.theta());
    consumption - breach::series_probability(s.pi_s(), pi_c) * l
}

/// `surplus_at(l) - surplus_at(0)` without the base term, so that gains far
/// below the base surplus still compare correctly.
pub(crate) fn surplus_gain(s: &Scenario, l: f64) -> f64 {
    let benefit = s.base_surplus() * s.alpha_n() * ratio_pow(l, s.l_n(), s.nu());
    let pi_c = s.pi_c_star() * ratio_pow(l, s.l_n(), s.theta());
    benefit - breach::series_probability(s.pi_s(), pi_c) * l
}

/// Net surplus: consumption surplus on the rotated curve minus the expected
/// breach loss `π(l) l`.
pub fn net_surplus(s: &Scenario, l: f64) -> Result<f64> {
    check_loss(s, l)?;
    Ok(surplus_at(s, l))
}

#[inline]
pub(crate) fn gradient_at(s: &Scenario, l: f64) -> f64 {
    let l_n = s.l_n();
    let benefit = s.base_surplus() * s.nu() * s.alpha_n() / l_n * ratio_pow(l, l_n, s.nu() - 1.0);
    let risk = s.pi_c_star() * (1.0 - s.pi_s()) * (s.theta() + 1.0) * ratio_pow(l, l_n, s.theta());
    benefit - s.pi_s() - risk
}

/// Analytic derivative of [`net_surplus`] with respect to the loss.
///
/// Not restricted to `l <= l_N`: the decision equation is studied on the whole
/// half-line.
pub fn surplus_gradient(s: &Scenario, l: f64) -> Result<f64> {
    if !(l > 0.0) || !l.is_finite() {
        return Err(domain("loss", l, "(0, inf)"));
    }
    Ok(gradient_at(s, l))
}
