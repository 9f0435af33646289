use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use privtrade_cli::ReportBundle;

fn scenario(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../scenarios")
        .join(name)
}

fn privtrade(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_privtrade"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn table2() -> String {
    scenario("table2.json").display().to_string()
}

fn table1() -> String {
    scenario("table1.json").display().to_string()
}

#[test]
fn solve_prints_summary_and_json() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("solve.json");
    let o = privtrade(&["solve", &table2(), "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.contains("l* = 3796.9"), "{text}");
    assert!(text.contains("INTERIOR"));
    assert!(text.contains("surplus 36.00"));

    let json = std::fs::read_to_string(&out).unwrap();
    assert!(json.contains(r#""status":"INTERIOR""#));
    let bundle = ReportBundle::from_json(&json).unwrap();
    assert!(bundle.metadata.timestamp.is_some());
    assert_eq!(bundle.metadata.input_digest.len(), 64);
    let sol = bundle.solution.unwrap();
    assert!((sol.l_opt - 3797.0).abs() < 1.0);
}

#[test]
fn json_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    for cmd in ["solve", "sweep-olr", "tornado", "secure", "feasibility"] {
        let out = dir.path().join(format!("{cmd}.json"));
        let o = privtrade(&[cmd, &table2(), "--out", out.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{cmd}: {}", stderr(&o));
        let text = std::fs::read_to_string(&out).unwrap();
        let bundle = ReportBundle::from_json(&text).unwrap();
        assert_eq!(bundle.to_json(), text, "{cmd}");
        assert_eq!(ReportBundle::from_json(&bundle.to_json()).unwrap(), bundle);
    }
}

#[test]
fn output_is_deterministic_without_timestamp() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str, fmt: &str| {
        let out = dir.path().join(name);
        let o = privtrade(&[
            "sweep-revenue",
            &table1(),
            "--no-timestamp",
            "--format",
            fmt,
            "--out",
            out.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
        std::fs::read(out).unwrap()
    };
    assert_eq!(run("a.json", "json"), run("b.json", "json"));
    assert_eq!(run("a.csv", "csv"), run("b.csv", "csv"));
    let bundle = ReportBundle::from_json(&String::from_utf8(run("c.json", "json")).unwrap()).unwrap();
    assert_eq!(bundle.metadata.timestamp, None);
}

fn csv_rows(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

#[test]
fn price_sweep_csv_is_non_increasing() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("sweep.csv");
    let o = privtrade(&[
        "sweep-price",
        &table1(),
        "--format",
        "csv",
        "--pmin",
        "0",
        "--pmax",
        "0.95",
        "--points",
        "200",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let rows = csv_rows(&std::fs::read_to_string(out).unwrap());
    assert_eq!(rows[0], ["factor", "value", "l_opt", "revenue", "olr", "status"]);
    assert_eq!(rows.len(), 201);
    let l: Vec<f64> = rows[1..].iter().map(|r| r[2].parse().unwrap()).collect();
    assert!(l.windows(2).all(|w| w[1] <= w[0]));
    assert_eq!(rows[200][1], "0.95");
}

#[test]
fn tornado_csv_sorted_by_magnitude() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("tornado.csv");
    let o = privtrade(&["tornado", &table2(), "--format", "csv", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let rows = csv_rows(&std::fs::read_to_string(out).unwrap());
    assert_eq!(rows.len(), 9);
    let mags: Vec<f64> = rows[1..].iter().map(|r| r[6].parse().unwrap()).collect();
    assert!(mags.windows(2).all(|w| w[0] >= w[1]));
}

#[test]
fn pareto_nu_inline() {
    let o = privtrade(&["pareto-nu", "--benefit", "0.8", "--loss", "0.2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "nu = 0.138647");
    let o = privtrade(&["pareto-nu", "--benefit", "0.8"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let write = |name: &str, text: &str| {
        let p = dir.path().join(name);
        std::fs::write(&p, text).unwrap();
        p.display().to_string()
    };
    let base = std::fs::read_to_string(scenario("table2.json")).unwrap();

    assert_eq!(privtrade(&["frobnicate", &table2()]).status.code(), Some(1));
    assert_eq!(privtrade(&["solve"]).status.code(), Some(1));
    assert_eq!(privtrade(&["solve", &table2(), "--format", "csv"]).status.code(), Some(1));

    let bad_json = write("bad.json", "{ not json");
    assert_eq!(privtrade(&["solve", &bad_json]).status.code(), Some(2));
    let unknown = write("unknown.json", &base.replace("\"nu\"", "\"mu\""));
    let o = privtrade(&["solve", &unknown]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("mu"));

    let steep = write(
        "theta.json",
        &base.replace("\"theta\": 0.138647", "\"theta\": 1.5"),
    );
    let o = privtrade(&["solve", &steep]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("`theta`"), "{}", stderr(&o));
    assert_eq!(privtrade(&["solve-discrete", &table2()]).status.code(), Some(3));

    let missing = dir.path().join("absent.json").display().to_string();
    assert_eq!(privtrade(&["solve", &missing]).status.code(), Some(5));
    let unwritable = dir.path().join("no/such/dir/out.json");
    let o = privtrade(&["solve", &table2(), "--out", unwritable.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(5));

    let secure_only = write("secure.json", &base.replace("\"pi_s\": 1e-4", "\"pi_s\": 0"));
    assert_eq!(privtrade(&["sweep-olr", &secure_only]).status.code(), Some(1));
}

#[test]
fn discrete_menu_and_oracle() {
    let o = privtrade(&["solve-discrete", &table1()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("best menu entry 3 (loss 7500"), "{}", stdout(&o));

    let o = privtrade(&["oracle-check", &table2(), "--grid", "1000000", "--seed", "5"]);
    assert_eq!(o.status.code(), Some(0), "{}{}", stdout(&o), stderr(&o));
    assert!(stdout(&o).contains("agree"));
    assert!(stdout(&o).contains("0 failures"));
}

#[test]
fn help_and_version() {
    let o = privtrade(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("oracle-check"));
    assert_eq!(privtrade(&["--version"]).status.code(), Some(0));
}
