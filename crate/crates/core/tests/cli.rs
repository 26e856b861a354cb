use std::path::Path;
use std::process::{Command, Output};

use quantum_inspection::scenario::ScenarioConfig;
use serde_json::Value;

fn cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quantum-inspection")).args(args).output().unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_owned()
}

const EXAMPLE_1: &str = r#"{
  "inspection": {"v": 60, "g": 15, "h": 8, "w": 20},
  "state": [[1, 0], [0, 0], [0, 0], [0, 0]],
  "sampling": {"samples": 3000, "refinement_steps": 50}
}"#;

#[test]
fn find_ne_reports_the_classical_equilibrium() {
    let dir = tempfile::tempdir().unwrap();
    let config = write(dir.path(), "c.json", EXAMPLE_1);
    let out = cli(&["find-ne", "--config", &config]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    let eq = &report["equilibria"];
    assert_eq!(eq["equilibria"]["kind"], "point");
    assert_eq!(eq["equilibria"]["p"], 0.75);
    assert_eq!(eq["equilibria"]["q"], 0.6);
    assert!((eq["payoffs"][0]["payoff_a"].as_f64().unwrap() - 16.0).abs() < 1e-9);
    assert!((eq["payoffs"][0]["payoff_b"].as_f64().unwrap() - 5.0).abs() < 1e-9);
}

#[test]
fn every_scenario_subcommand_succeeds() {
    let dir = tempfile::tempdir().unwrap();
    let config = write(dir.path(), "c.json", EXAMPLE_1);
    let cases: [(&[&str], &str); 6] = [
        (&["classical"], "classical"),
        (&["payoff", "--p", "0.5", "--q", "0.5"], "quantum_payoff"),
        (&["corner-cases"], "corner_cases"),
        (&["pareto"], "pareto"),
        (&["interior-range", "--samples", "2000", "--seed", "3"], "interior_range"),
        (&["find-ne"], "equilibria"),
    ];
    for (args, section) in cases {
        let output = dir.path().join(format!("{section}.json"));
        let mut full = args.to_vec();
        full.extend(["--config", &config, "--output", output.to_str().unwrap()]);
        let out = cli(&full);
        assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        let report: Value = serde_json::from_str(&std::fs::read_to_string(&output).unwrap()).unwrap();
        assert!(report.get(section).is_some(), "{args:?} lacks {section}");
        assert_eq!(report["pass"], true);
    }
}

#[test]
fn exact_rationals_are_rendered() {
    let dir = tempfile::tempdir().unwrap();
    let config = write(dir.path(), "c.json", EXAMPLE_1);
    let out = cli(&["corner-cases", "--config", &config]);
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    let max = &report["corner_cases"][0]["range_a"]["max"];
    assert_eq!(max["num"], 58);
    assert_eq!(max["den"], 3);
    assert_eq!(max["fraction"], "58/3");
    let pareto = cli(&["pareto", "--config", &config]);
    let report: Value = serde_json::from_slice(&pareto.stdout).unwrap();
    for corner in report["pareto"]["corners"].as_array().unwrap() {
        assert_eq!(corner["optimum"]["fraction"], "21");
        assert_eq!(corner["floors_active"], true);
    }
}

#[test]
fn reports_are_deterministic_and_echo_the_config() {
    let dir = tempfile::tempdir().unwrap();
    let text = EXAMPLE_1
        .replace("\"sampling\"", "\"analysis\": {\"find_ne\": true, \"interior_range\": true},\n  \"sampling\"");
    let config = write(dir.path(), "c.json", &text);
    let first = cli(&["run", "--config", &config]);
    let second = cli(&["run", "--config", &config]);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);

    let report: Value = serde_json::from_slice(&first.stdout).unwrap();
    let echoed = serde_json::to_string(&report["config"]).unwrap();
    assert_eq!(ScenarioConfig::from_json(&echoed).unwrap(), ScenarioConfig::from_json(&text).unwrap());
}

#[test]
fn input_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let missing_state = write(dir.path(), "a.json", r#"{"inspection": {"v": 60, "g": 15, "h": 8, "w": 20}}"#);
    let unnormalized = write(
        dir.path(),
        "b.json",
        r#"{"inspection": {"v": 60, "g": 15, "h": 8, "w": 20}, "state": [[1,0],[1,0],[0,0],[0,0]]}"#,
    );
    let bad_params = write(
        dir.path(),
        "c.json",
        r#"{"inspection": {"v": 1, "g": 15, "h": 8, "w": 20}, "state": [[1,0],[0,0],[0,0],[0,0]]}"#,
    );
    let unknown_field = write(
        dir.path(),
        "d.json",
        r#"{"inspection": {"v": 60, "g": 15, "h": 8, "w": 20}, "state": [[1,0],[0,0],[0,0],[0,0]], "extra": 1}"#,
    );
    let config = write(dir.path(), "e.json", EXAMPLE_1);
    for args in [
        vec!["find-ne", "--config", &missing_state],
        vec!["find-ne", "--config", &unnormalized],
        vec!["classical", "--config", &bad_params],
        vec!["run", "--config", &unknown_field],
        vec!["run", "--config", "/nonexistent/config.json"],
        vec!["payoff", "--config", &config],
        vec!["payoff", "--config", &config, "--p", "2", "--q", "0.5"],
        vec!["no-such-command"],
    ] {
        let out = cli(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn pareto_improvement_is_an_analysis_failure() {
    let dir = tempfile::tempdir().unwrap();
    // Floors far below the classical payoffs leave room for improvement.
    let config = write(
        dir.path(),
        "c.json",
        r#"{"inspection": {"v": 60, "g": 15, "h": 8, "w": 20},
            "state": [[1,0],[0,0],[0,0],[0,0]],
            "floors": {"a": -100, "b": -100},
            "edge_grid": 10}"#,
    );
    let out = cli(&["pareto", "--config", &config]);
    assert_eq!(out.status.code(), Some(1));
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["pareto"]["improvement_found"], true);
    assert_eq!(report["pass"], false);
}

#[test]
fn reproduce_writes_json_and_a_summary_table() {
    let dir = tempfile::tempdir().unwrap();
    let output = dir.path().join("r.json");
    let summary = dir.path().join("s.txt");
    let out = cli(&[
        "reproduce",
        "--samples",
        "3000",
        "--output",
        output.to_str().unwrap(),
        "--summary",
        summary.to_str().unwrap(),
    ]);
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&output).unwrap()).unwrap();
    let pass = report["pass"].as_bool().unwrap();
    assert_eq!(out.status.code(), Some(if pass { 0 } else { 1 }));
    let table = std::fs::read_to_string(&summary).unwrap();
    assert_eq!(String::from_utf8_lossy(&out.stderr), table);
    for id in ["classical.payoffs", "pareto.C1", "example.6"] {
        let item = report["items"].as_array().unwrap().iter().find(|i| i["id"] == id).unwrap();
        assert_eq!(item["pass"], true, "{id}");
        assert!(table.lines().any(|l| l.starts_with(id) && l.contains("pass")));
    }
}
