//! The perfectly secure provider (`π_s = 0`).
//!
//! With no provider-side risk the decision equation has the closed-form root
//!
//! ```text
//! l* = [ (q* p* ν/2) α_N / (π_c* (θ+1)) · l_N^(θ-ν) · (1 - p/p*)^2 ]^(1/(θ-ν+1))
//! ```
//!
//! valid while `θ - ν + 1 > 0`. Elasticities of `l*` follow by logarithmic
//! differentiation and depend on `ν` and `θ` only through `θ - ν`.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::model::{Factor, Scenario};
use crate::solver::{self, REGIME_TOL};

/// Closed-form optimum for a secure provider.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SecureLoss {
    /// Root of the decision equation on `(0, ∞)`.
    pub raw: f64,
    /// `raw` clamped to `[0, l_N]`.
    pub clamped: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SecureElasticities {
    pub eps_q_star: f64,
    pub eps_p_star: f64,
    pub eps_l_n: f64,
    pub eps_price: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SecureQuasiElasticities {
    pub qeps_nu: f64,
    pub qeps_theta: f64,
    pub qeps_pi_c_star: f64,
}

/// Dimensionless factors with a closed-form quasi-elasticity sign change.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SignFactor {
    #[serde(rename = "nu")]
    Nu,
    #[serde(rename = "theta")]
    Theta,
}

/// `θ - ν + 1`, or an error when the closed form does not apply.
fn exponent_denominator(s: &Scenario) -> Result<f64> {
    let e = s.theta() - s.nu() + 1.0;
    if e <= REGIME_TOL {
        Err(Error::Inapplicable(format!(
            "theta - nu + 1 = {e} is not positive"
        )))
    } else {
        Ok(e)
    }
}

/// `ln(l*/l_N)` for the unclamped closed form; requires `p < p*`.
fn log_loss_ratio(s: &Scenario, e: f64) -> f64 {
    let k = s.base_surplus() * s.nu() * s.alpha_n() / (s.pi_c_star() * (s.theta() + 1.0));
    // ln l* = [ln k + (θ-ν) ln l_N] / e, so ln(l*/l_N) = [ln k - ln l_N] / e
    (k.ln() - s.l_n().ln()) / e
}

/// Closed-form optimal loss ignoring `π_s`.
pub fn secure_optimal_loss(s: &Scenario) -> Result<SecureLoss> {
    let e = exponent_denominator(s)?;
    if s.price() >= s.p_star() {
        return Ok(SecureLoss {
            raw: 0.0,
            clamped: 0.0,
        });
    }
    let raw = s.l_n() * log_loss_ratio(s, e).exp();
    Ok(SecureLoss {
        raw,
        clamped: raw.min(s.l_n()),
    })
}

/// Feasible secure optimum: the closed form when it applies, otherwise the
/// general solver with `π_s = 0`.
pub fn secure_feasible_loss(s: &Scenario) -> Result<f64> {
    match secure_optimal_loss(s) {
        Ok(v) => Ok(v.clamped),
        Err(Error::Inapplicable(_)) => {
            Ok(solver::solve_tradeoff(&s.with(Factor::PiS, 0.0)?)?.l_opt)
        }
        Err(e) => Err(e),
    }
}

/// `l*|_{π_s=0} / l*`, both feasible optima.
pub fn optimal_loss_ratio(s: &Scenario) -> Result<f64> {
    if s.pi_s() == 0.0 {
        return Ok(1.0);
    }
    let vulnerable = solver::solve_tradeoff(s)?.l_opt;
    if vulnerable == 0.0 {
        return Err(Error::UndefinedRatio(
            "optimal loss with a vulnerable provider is zero".into(),
        ));
    }
    Ok(secure_feasible_loss(s)? / vulnerable)
}

fn check_price(s: &Scenario) -> Result<()> {
    if s.price() < s.p_star() {
        Ok(())
    } else {
        Err(domain("price", s.price(), format!("[0, {})", s.p_star())))
    }
}

pub fn secure_elasticities(s: &Scenario) -> Result<SecureElasticities> {
    check_price(s)?;
    let e = exponent_denominator(s)?;
    let r = s.price() / s.p_star();
    Ok(SecureElasticities {
        eps_q_star: 1.0 / e,
        eps_p_star: (1.0 + r) / ((1.0 - r) * e),
        eps_l_n: (s.theta() - s.nu()) / e,
        // the margin enters squared
        eps_price: -2.0 * r / ((1.0 - r) * e),
    })
}

pub fn secure_quasi_elasticities(s: &Scenario) -> Result<SecureQuasiElasticities> {
    check_price(s)?;
    let e = exponent_denominator(s)?;
    let log_ratio = log_loss_ratio(s, e);
    Ok(SecureQuasiElasticities {
        qeps_nu: (1.0 / s.nu() + log_ratio) / e,
        qeps_theta: -(log_ratio + 1.0 / (s.theta() + 1.0)) / e,
        qeps_pi_c_star: -1.0 / (e * s.pi_c_star()),
    })
}

/// Ratio `l*/l_N` at which the quasi-elasticity changes sign.
pub fn sign_threshold_ratio(s: &Scenario, factor: SignFactor) -> f64 {
    match factor {
        SignFactor::Nu => (-1.0 / s.nu()).exp(),
        SignFactor::Theta => (-1.0 / (1.0 + s.theta())).exp(),
    }
}

/// Price in `(0, p*)` at which the secure quasi-elasticity changes sign, if
/// any. `ε̂_ν` is positive below it; `ε̂_θ` is positive above it.
pub fn sign_change_price(s: &Scenario, factor: SignFactor) -> Result<Option<f64>> {
    let free = s.with(Factor::Price, 0.0)?;
    let e = exponent_denominator(&free)?;
    let target = sign_threshold_ratio(s, factor).ln();
    // ln(l*/l_N) = ln(l*(0)/l_N) + (2/e) ln(1 - p/p*)
    let margin = (0.5 * e * (target - log_loss_ratio(&free, e))).exp();
    let r = 1.0 - margin;
    Ok((r > 0.0 && r < 1.0).then(|| r * s.p_star()))
}
