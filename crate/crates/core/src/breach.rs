//! Breach probability as a series system of provider and customer sides.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::model::ratio_pow;

/// Breach-related parameters of a scenario.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BreachProfile {
    pub pi_s: f64,
    pub pi_c_star: f64,
    pub theta: f64,
    pub l_n: f64,
}

/// Customer-side breach probability `π_c* (l/l_N)^θ`.
pub fn customer_breach_probability(bp: &BreachProfile, l: f64) -> Result<f64> {
    if !(0.0..=bp.l_n).contains(&l) {
        return Err(domain("loss", l, format!("[0, {}]", bp.l_n)));
    }
    Ok(bp.pi_c_star * ratio_pow(l, bp.l_n, bp.theta))
}

/// `π_s + π_c - π_s π_c`, computed as `π_s + π_c (1 - π_s)` so that no
/// subtraction of nearly equal terms occurs.
#[inline]
pub fn series_probability(pi_s: f64, pi_c: f64) -> f64 {
    pi_s + pi_c * (1.0 - pi_s)
}

/// Probability that either side is breached, the two sides failing
/// independently.
pub fn combined_breach_probability(pi_s: f64, pi_c: f64) -> Result<f64> {
    for (what, v) in [("pi_s", pi_s), ("pi_c", pi_c)] {
        if !(0.0..=1.0).contains(&v) {
            return Err(domain(what, v, "[0, 1]"));
        }
    }
    Ok(series_probability(pi_s, pi_c).min(1.0))
}
