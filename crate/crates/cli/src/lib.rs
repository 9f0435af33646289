//! Command-line driver: loads scenario files, runs analyses and writes
//! reports.
//!
//! ```text
//! privtrade <command> <scenario-file> [--out PATH] [--format json|csv] [--grid N]
//!           [--pmin X --pmax Y --points N] [--seed N] [--no-timestamp]
//! privtrade pareto-nu --benefit 0.8 --loss 0.2
//! ```
//!
//! Exit codes: 0 success, 1 usage, 2 parse, 3 validation, 4 numeric failure,
//! 5 I/O.

pub mod failure;
pub mod oracle;
pub mod report;
pub mod scenario_file;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use privtrade_core::secure::{self, SignFactor};
use privtrade_core::sensitivity::{default_plan, default_price_grid, price_grid};
use privtrade_core::{
    feasibility_report, olr_sweep, pareto_privacy_parameter, price_sweep, revenue_sweep,
    solve_discrete, solve_tradeoff, tornado, Error, Scenario,
};
use sha2::{Digest, Sha256};

pub use failure::Failure;
pub use report::{Format, Metadata, ReportBundle};
pub use scenario_file::{load_scenario, parse_scenario, ScenarioFile, SweepSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Solve,
    Feasibility,
    SweepPrice,
    SweepRevenue,
    SweepOlr,
    Tornado,
    Secure,
    ParetoNu,
    SolveDiscrete,
    OracleCheck,
}

impl Command {
    pub fn name(self) -> String {
        self.to_possible_value()
            .expect("no skipped variants")
            .get_name()
            .to_string()
    }

    fn allows_csv(self) -> bool {
        matches!(
            self,
            Command::SweepPrice | Command::SweepRevenue | Command::SweepOlr | Command::Tornado
        )
    }
}

#[derive(Debug, Clone, Parser)]
#[command(name = "privtrade", version, about = "Optimal personal-data disclosure under breach risk")]
pub struct Args {
    #[arg(value_enum)]
    pub command: Command,
    /// Scenario JSON file (not used by pareto-nu).
    pub scenario: Option<PathBuf>,
    /// Write the machine-readable report here.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Oracle grid size for oracle-check.
    #[arg(long)]
    pub grid: Option<usize>,
    #[arg(long)]
    pub pmin: Option<f64>,
    #[arg(long)]
    pub pmax: Option<f64>,
    #[arg(long)]
    pub points: Option<usize>,
    /// With oracle-check, also test random scenarios drawn from this seed.
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub no_timestamp: bool,
    /// Fraction of the benefit obtained (pareto-nu).
    #[arg(long)]
    pub benefit: Option<f64>,
    /// Fraction of the potential loss disclosed (pareto-nu).
    #[arg(long)]
    pub loss: Option<f64>,
}

/// Random scenarios checked by `oracle-check --seed`.
pub const RANDOM_CHECKS: usize = 200;

fn digest(bytes: &[u8]) -> String {
    format!("{:x}", Sha256::digest(bytes))
}

fn metadata(args: &Args, input: &[u8]) -> Metadata {
    Metadata {
        tool: env!("CARGO_PKG_NAME").to_string(),
        version: env!("CARGO_PKG_VERSION").to_string(),
        command: args.command.name(),
        timestamp: (!args.no_timestamp).then(|| {
            chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true)
        }),
        input_digest: digest(input),
    }
}

fn sweep_grid(args: &Args, file: &ScenarioFile) -> Result<Vec<f64>, Failure> {
    let from_file = file.sweep.unwrap_or_default();
    let spec = SweepSpec {
        pmin: args.pmin.or(from_file.pmin),
        pmax: args.pmax.or(from_file.pmax),
        points: args.points.or(from_file.points),
    };
    scenario_file::check_sweep(&spec)?;
    let s = &file.scenario;
    let points = spec.points.unwrap_or(100);
    Ok(match (spec.pmin, spec.pmax) {
        (None, None) => default_price_grid(s, points),
        (lo, hi) => price_grid(lo.unwrap_or(0.0), hi.unwrap_or(0.99 * s.p_star()), points),
    })
}

/// Drops results a closed form cannot provide, keeping the reason.
fn optional<T>(r: privtrade_core::Result<T>, notes: &mut Vec<String>) -> Result<Option<T>, Failure> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(
            e @ (Error::Inapplicable(_)
            | Error::UndefinedRatio(_)
            | Error::Domain { .. }
            | Error::Degenerate { .. }),
        ) => {
            notes.push(e.to_string());
            Ok(None)
        }
        Err(e) => Err(e.into()),
    }
}

fn secure_report(s: &Scenario) -> Result<report::SecureReport, Failure> {
    let mut notes = Vec::new();
    let closed_form = optional(secure::secure_optimal_loss(s), &mut notes)?;
    let olr = optional(secure::optimal_loss_ratio(s), &mut notes)?;
    let elasticities = optional(secure::secure_elasticities(s), &mut notes)?;
    let quasi_elasticities = optional(secure::secure_quasi_elasticities(s), &mut notes)?;
    let sign_nu = optional(secure::sign_change_price(s, SignFactor::Nu), &mut notes)?;
    let sign_theta = optional(secure::sign_change_price(s, SignFactor::Theta), &mut notes)?;
    notes.dedup();
    Ok(report::SecureReport {
        closed_form,
        feasible_loss: secure::secure_feasible_loss(s)?,
        vulnerable_loss: solve_tradeoff(s)?.l_opt,
        olr,
        elasticities,
        quasi_elasticities,
        sign_change_nu: sign_nu.flatten(),
        sign_change_theta: sign_theta.flatten(),
        notes,
    })
}

fn opt(v: Option<f64>) -> String {
    v.map_or_else(|| "n/a".to_string(), |x| format!("{x:.6}"))
}

fn pareto(args: &Args) -> Result<(ReportBundle, String), Failure> {
    let (Some(benefit), Some(loss)) = (args.benefit, args.loss) else {
        return Err(Failure::Usage(
            "pareto-nu needs --benefit and --loss".into(),
        ));
    };
    let nu = pareto_privacy_parameter(benefit, loss)?;
    let key = format!("benefit={benefit:?};loss={loss:?}");
    let mut bundle = ReportBundle::new(metadata(args, key.as_bytes()));
    bundle.pareto = Some(report::ParetoReport { benefit, loss, nu });
    Ok((bundle, format!("nu = {nu:.6}\n")))
}

/// Runs one command without touching the output file.
pub fn execute(args: &Args) -> Result<(ReportBundle, String), Failure> {
    if args.format == Format::Csv && !args.command.allows_csv() {
        return Err(Failure::Usage(format!(
            "csv output is not available for {}",
            args.command.name()
        )));
    }
    if args.command == Command::ParetoNu {
        return pareto(args);
    }
    let path = args.scenario.as_ref().ok_or_else(|| {
        Failure::Usage(format!("{} needs a scenario file", args.command.name()))
    })?;
    let (file, bytes) = load_scenario(path)?;
    let s = file.scenario;

    let mut bundle = ReportBundle::new(metadata(args, &bytes));
    let solution = solve_tradeoff(&s)?;
    let feasibility = feasibility_report(&s);
    let mut out = format!(
        "l* = {:.3}  status {}  surplus {:.4}  regime {}\n",
        solution.l_opt,
        solution.status.tag(),
        solution.surplus,
        solution.regime.tag()
    );
    bundle.scenario = Some(s);

    match args.command {
        Command::Solve => {
            if let Some(g) = solution.normalized_gradient {
                writeln!(out, "normalized gradient {g:.3e}").unwrap();
            }
        }
        Command::Feasibility => {
            for c in &feasibility.conditions {
                writeln!(
                    out,
                    "{:<28} bound {:<14} {}",
                    c.name,
                    opt(c.bound),
                    if c.satisfied { "holds" } else { "fails" }
                )
                .unwrap();
            }
            writeln!(out, "guaranteed unique: {}", feasibility.guaranteed_unique).unwrap();
        }
        Command::SweepPrice | Command::SweepRevenue | Command::SweepOlr => {
            let grid = sweep_grid(args, &file)?;
            let series = match args.command {
                Command::SweepPrice => price_sweep(&s, &grid)?,
                Command::SweepRevenue => revenue_sweep(&s, &grid)?,
                _ => olr_sweep(&s, &grid)?,
            };
            writeln!(
                out,
                "{} prices in [{}, {}]",
                grid.len(),
                grid[0],
                grid[grid.len() - 1]
            )
            .unwrap();
            writeln!(out, "saturation price {}", opt(series.saturation_price)).unwrap();
            if args.command == Command::SweepRevenue {
                writeln!(out, "revenue-maximizing price {}", opt(series.revenue_argmax)).unwrap();
            }
            if args.command == Command::SweepOlr {
                writeln!(out, "secure kink price {}", opt(series.kink_price)).unwrap();
            }
            bundle.sweeps.push(series);
        }
        Command::Tornado => {
            let plan = file.tornado.clone().unwrap_or_else(default_plan);
            let bars = tornado(&s, &plan)?;
            for b in &bars {
                writeln!(
                    out,
                    "{:<10} {:>12.4} {:>12.4}",
                    b.factor.name(),
                    b.low.value,
                    b.high.value
                )
                .unwrap();
            }
            bundle.tornado = Some(bars);
        }
        Command::Secure => {
            let r = secure_report(&s)?;
            writeln!(out, "secure l* = {:.3}", r.feasible_loss).unwrap();
            writeln!(out, "loss ratio {}", opt(r.olr)).unwrap();
            writeln!(
                out,
                "sign change: nu at p = {}, theta at p = {}",
                opt(r.sign_change_nu),
                opt(r.sign_change_theta)
            )
            .unwrap();
            for n in &r.notes {
                writeln!(out, "note: {n}").unwrap();
            }
            bundle.secure = Some(r);
        }
        Command::SolveDiscrete => {
            let losses = file.losses.clone().ok_or_else(|| {
                Failure::Validation("`losses` is required for solve-discrete".into())
            })?;
            let choice = solve_discrete(&s, &losses)?;
            writeln!(
                out,
                "best menu entry {} (loss {}, surplus {:.4})",
                choice.index.map_or_else(|| "none".to_string(), |i| i.to_string()),
                choice.loss,
                choice.surplus
            )
            .unwrap();
            bundle.discrete = Some(report::DiscreteReport { losses, choice });
        }
        Command::OracleCheck => {
            let grid = args.grid.unwrap_or(oracle::DEFAULT_GRID);
            if grid < 2 {
                return Err(Failure::Usage("--grid must be at least 2".into()));
            }
            let a = oracle::check(&s, grid)?;
            let random = match args.seed {
                Some(seed) => {
                    let mut failures = 0;
                    let mut worst: f64 = 0.0;
                    for r in oracle::stratified_scenarios(seed, RANDOM_CHECKS) {
                        let c = oracle::check(&r, grid)?;
                        failures += usize::from(!c.ok());
                        worst = worst.max(c.ratio());
                    }
                    Some(report::RandomCheck {
                        seed,
                        scenarios: RANDOM_CHECKS,
                        failures,
                        worst_ratio: worst,
                    })
                }
                None => None,
            };
            let agree = a.ok() && random.map_or(true, |r| r.failures == 0);
            writeln!(
                out,
                "oracle l* = {:.3} on {grid} points, |diff| = {:.3e} (tolerance {:.3e}): {}",
                a.oracle,
                (a.solver - a.oracle).abs(),
                a.tolerance,
                if a.ok() { "agree" } else { "DISAGREE" }
            )
            .unwrap();
            if let Some(r) = random {
                writeln!(
                    out,
                    "{} random scenarios (seed {}): {} failures, worst |diff|/tolerance {:.3}",
                    r.scenarios, r.seed, r.failures, r.worst_ratio
                )
                .unwrap();
            }
            bundle.oracle = Some(report::OracleReport {
                grid,
                solver_l_opt: a.solver,
                oracle_l_opt: a.oracle,
                tolerance: a.tolerance,
                agree,
                random,
            });
            if !agree {
                bundle.solution = Some(solution);
                bundle.feasibility = Some(feasibility);
                return Err(Failure::Numeric(format!(
                    "solver and oracle disagree\n{out}"
                )));
            }
        }
        Command::ParetoNu => unreachable!("handled above"),
    }
    bundle.solution = Some(solution);
    bundle.feasibility = Some(feasibility);
    Ok((bundle, out))
}

/// Parses `argv`, runs the command and writes the report. Returns the exit
/// code; diagnostics go to standard error.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = match Args::try_parse_from(argv) {
        Ok(a) => a,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{e}");
                    0
                }
                _ => {
                    eprint!("{e}");
                    Failure::Usage(String::new()).exit_code()
                }
            };
        }
    };
    let result = execute(&args).and_then(|(bundle, summary)| {
        if let Some(path) = &args.out {
            report::write_report(&bundle, args.format, path)?;
        }
        stdout
            .write_all(summary.as_bytes())
            .map_err(|e| Failure::Io(e.to_string()))
    });
    match result {
        Ok(()) => 0,
        Err(f) => {
            eprintln!("{f}");
            f.exit_code()
        }
    }
}
