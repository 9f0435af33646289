//! Report bundles and their JSON/CSV encodings.

use std::path::Path;

use clap::ValueEnum;
use privtrade_core::secure::{SecureElasticities, SecureLoss, SecureQuasiElasticities};
use privtrade_core::{
    DiscreteChoice, FeasibilityReport, Scenario, SweepSeries, TornadoBar, TradeoffSolution,
};
use serde::{Deserialize, Serialize};

use crate::failure::Failure;

pub const SWEEP_HEADER: [&str; 6] = ["factor", "value", "l_opt", "revenue", "olr", "status"];
pub const TORNADO_HEADER: [&str; 8] = [
    "factor",
    "kind",
    "low_delta",
    "low_value",
    "high_delta",
    "high_value",
    "magnitude",
    "base_l_opt",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Metadata {
    pub tool: String,
    pub version: String,
    pub command: String,
    /// RFC 3339 UTC time, absent with `--no-timestamp`.
    pub timestamp: Option<String>,
    /// SHA-256 of the input file (or of the inline arguments), hex.
    pub input_digest: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SecureReport {
    /// Unavailable when `θ - ν + 1 <= 0` or `p >= p*`.
    pub closed_form: Option<SecureLoss>,
    pub feasible_loss: f64,
    pub vulnerable_loss: f64,
    pub olr: Option<f64>,
    pub elasticities: Option<SecureElasticities>,
    pub quasi_elasticities: Option<SecureQuasiElasticities>,
    pub sign_change_nu: Option<f64>,
    pub sign_change_theta: Option<f64>,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParetoReport {
    pub benefit: f64,
    pub loss: f64,
    pub nu: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiscreteReport {
    pub losses: Vec<f64>,
    pub choice: DiscreteChoice,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RandomCheck {
    pub seed: u64,
    pub scenarios: usize,
    pub failures: usize,
    /// Largest `|solver - oracle| / tolerance` seen.
    pub worst_ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OracleReport {
    pub grid: usize,
    pub solver_l_opt: f64,
    pub oracle_l_opt: f64,
    pub tolerance: f64,
    pub agree: bool,
    pub random: Option<RandomCheck>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportBundle {
    pub metadata: Metadata,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scenario: Option<Scenario>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub solution: Option<TradeoffSolution>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub feasibility: Option<FeasibilityReport>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub sweeps: Vec<SweepSeries>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tornado: Option<Vec<TornadoBar>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub secure: Option<SecureReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pareto: Option<ParetoReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub discrete: Option<DiscreteReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleReport>,
}

impl ReportBundle {
    pub fn new(metadata: Metadata) -> Self {
        ReportBundle {
            metadata,
            scenario: None,
            solution: None,
            feasibility: None,
            sweeps: Vec::new(),
            tornado: None,
            secure: None,
            pareto: None,
            discrete: None,
            oracle: None,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string(self).expect("report fields are serializable");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, Failure> {
        serde_json::from_str(text).map_err(|e| Failure::Parse(e.to_string()))
    }
}

/// Shortest decimal that parses back to the same `f64`.
fn num(v: f64) -> String {
    format!("{v:?}")
}

fn csv_text(header: &[&str], rows: Vec<Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for row in rows {
        w.write_record(&row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii output")
}

pub fn sweep_csv(series: &[SweepSeries]) -> String {
    let mut rows = Vec::new();
    for s in series {
        for i in 0..s.grid.len() {
            rows.push(vec![
                s.factor.name().to_string(),
                num(s.grid[i]),
                num(s.l_opt[i]),
                num(s.revenue[i]),
                s.olr.as_ref().map(|o| num(o[i])).unwrap_or_default(),
                s.status[i].tag().to_string(),
            ]);
        }
    }
    csv_text(&SWEEP_HEADER, rows)
}

/// Bars in the given order, which [`privtrade_core::tornado`] leaves sorted
/// by decreasing magnitude.
pub fn tornado_csv(bars: &[TornadoBar]) -> String {
    let rows = bars
        .iter()
        .map(|b| {
            vec![
                b.factor.name().to_string(),
                b.low.kind.tag().to_string(),
                num(b.low.delta),
                num(b.low.value),
                num(b.high.delta),
                num(b.high.value),
                num(b.magnitude),
                num(b.low.base_l_opt),
            ]
        })
        .collect();
    csv_text(&TORNADO_HEADER, rows)
}

/// Encodes a bundle. CSV is defined for sweeps and tornado tables only.
pub fn render(bundle: &ReportBundle, format: Format) -> Result<String, Failure> {
    match format {
        Format::Json => Ok(bundle.to_json()),
        Format::Csv if !bundle.sweeps.is_empty() => Ok(sweep_csv(&bundle.sweeps)),
        Format::Csv => match &bundle.tornado {
            Some(bars) => Ok(tornado_csv(bars)),
            None => Err(Failure::Usage(
                "csv output is available for sweep and tornado commands only".into(),
            )),
        },
    }
}

pub fn write_report(bundle: &ReportBundle, format: Format, path: &Path) -> Result<(), Failure> {
    let text = render(bundle, format)?;
    std::fs::write(path, text)
        .map_err(|e| Failure::Io(format!("cannot write {}: {e}", path.display())))
}
