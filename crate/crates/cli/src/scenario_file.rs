//! Scenario documents.
//!
//! A scenario file is one JSON object holding the nine model parameters and,
//! optionally, a `sweep` grid, a `tornado` plan and a `losses` menu:
//!
//! ```json
//! { "q_star": 250, "p_star": 1, "price": 0.5, "nu": 0.138647,
//!   "theta": 0.138647, "alpha_n": 0.2, "l_n": 10000,
//!   "pi_s": 1e-4, "pi_c_star": 1e-4,
//!   "sweep": { "pmin": 0, "pmax": 0.99, "points": 100 } }
//! ```

use std::path::Path;

use privtrade_core::{PlanItem, Scenario, ScenarioParams};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::failure::Failure;

pub const REQUIRED_KEYS: [&str; 9] = [
    "q_star",
    "p_star",
    "price",
    "nu",
    "theta",
    "alpha_n",
    "l_n",
    "pi_s",
    "pi_c_star",
];

pub const OPTIONAL_KEYS: [&str; 3] = ["sweep", "tornado", "losses"];

/// Price grid; missing bounds default to `[0, 0.99 p*]` with 100 points.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub pmin: Option<f64>,
    pub pmax: Option<f64>,
    pub points: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioFile {
    pub scenario: Scenario,
    pub sweep: Option<SweepSpec>,
    pub tornado: Option<Vec<PlanItem>>,
    pub losses: Option<Vec<f64>>,
}

fn block<T: DeserializeOwned>(map: &Map<String, Value>, key: &str) -> Result<Option<T>, Failure> {
    map.get(key)
        .map(|v| {
            serde_json::from_value(v.clone()).map_err(|e| Failure::Parse(format!("`{key}`: {e}")))
        })
        .transpose()
}

pub fn parse_scenario(text: &str) -> Result<ScenarioFile, Failure> {
    let map: Map<String, Value> = serde_json::from_str(text)
        .map_err(|e| Failure::Parse(format!("expected a single JSON object: {e}")))?;

    if let Some(k) = map
        .keys()
        .find(|k| !REQUIRED_KEYS.contains(&k.as_str()) && !OPTIONAL_KEYS.contains(&k.as_str()))
    {
        return Err(Failure::Parse(format!("unknown key `{k}`")));
    }
    let missing: Vec<&str> = REQUIRED_KEYS
        .iter()
        .copied()
        .filter(|k| !map.contains_key(*k))
        .collect();
    if !missing.is_empty() {
        return Err(Failure::Parse(format!(
            "missing required key(s): {}",
            missing.join(", ")
        )));
    }

    let required: Map<String, Value> = map
        .iter()
        .filter(|(k, _)| REQUIRED_KEYS.contains(&k.as_str()))
        .map(|(k, v)| (k.clone(), v.clone()))
        .collect();
    let params: ScenarioParams = serde_json::from_value(Value::Object(required))
        .map_err(|e| Failure::Parse(e.to_string()))?;
    let scenario = Scenario::new(params)?;

    let sweep: Option<SweepSpec> = block(&map, "sweep")?;
    if let Some(sw) = sweep {
        check_sweep(&sw)?;
    }
    Ok(ScenarioFile {
        scenario,
        sweep,
        tornado: block(&map, "tornado")?,
        losses: block(&map, "losses")?,
    })
}

pub(crate) fn check_sweep(sw: &SweepSpec) -> Result<(), Failure> {
    if let Some(n) = sw.points {
        if n < 2 {
            return Err(Failure::Validation(format!(
                "invalid parameter `sweep.points` = {n}: must be >= 2"
            )));
        }
    }
    for (name, v) in [("sweep.pmin", sw.pmin), ("sweep.pmax", sw.pmax)] {
        if let Some(v) = v {
            if !(v.is_finite() && v >= 0.0) {
                return Err(Failure::Validation(format!(
                    "invalid parameter `{name}` = {v}: must be finite and >= 0"
                )));
            }
        }
    }
    if let (Some(lo), Some(hi)) = (sw.pmin, sw.pmax) {
        if lo >= hi {
            return Err(Failure::Validation(format!(
                "invalid parameter `sweep.pmax` = {hi}: must exceed sweep.pmin = {lo}"
            )));
        }
    }
    Ok(())
}

/// Reads and validates a scenario file, returning it with the raw bytes.
pub fn load_scenario(path: &Path) -> Result<(ScenarioFile, Vec<u8>), Failure> {
    let bytes = std::fs::read(path)
        .map_err(|e| Failure::Io(format!("cannot read {}: {e}", path.display())))?;
    let text = std::str::from_utf8(&bytes)
        .map_err(|e| Failure::Parse(format!("{} is not UTF-8: {e}", path.display())))?;
    Ok((parse_scenario(text)?, bytes))
}
