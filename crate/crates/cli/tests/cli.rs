use serde_json::Value;
use std::path::Path;
use std::process::{Command, Output};

fn fairkc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fairkc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn generate_solve_evaluate() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("inst.json");
    let out = fairkc(&[
        "generate", "random", "--n", "40", "--proportions", "0.6,0.4", "--seed", "3", "--output", p(&inst),
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));

    for algo in ["color-blind", "alg-gf", "alg-ds", "gf-to-gfds", "ds-to-gfds"] {
        let sol = dir.path().join(format!("{algo}.json"));
        let out = fairkc(&["solve", "--algo", algo, "--k", "4", "--input", p(&inst), "--output", p(&sol)]);
        assert_eq!(code(&out), 0, "{algo}: {}", String::from_utf8_lossy(&out.stderr));

        let out = fairkc(&["evaluate", "--solution", p(&sol), "--input", p(&inst), "--k", "4"]);
        assert_eq!(code(&out), 0, "{algo}");
        let json: Value = serde_json::from_slice(&out.stdout).unwrap();
        for key in ["violations", "min_alpha_nr", "min_alpha_proportional", "socially_fair_cost"] {
            assert!(json.get(key).is_some(), "{algo} lacks {key}");
        }
        if algo.ends_with("gfds") {
            assert_eq!(json["violations"]["ds_violation"], Value::from(0), "{algo}: {json}");
        }
    }
}

#[test]
fn malformed_csv_exits_with_parse_code() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.csv");
    std::fs::write(&bad, "f0,f1,color\n0,0,a\n1,oops,b\n").unwrap();
    let sol = dir.path().join("sol.json");
    let out = fairkc(&["solve", "--algo", "color-blind", "--k", "1", "--input", p(&bad), "--output", p(&sol)]);
    assert_eq!(code(&out), 3);
    assert!(String::from_utf8_lossy(&out.stderr).contains("bad.csv"));
}

#[test]
fn missing_input_exits_with_io_code() {
    let out = fairkc(&["oracle", "--input", "/nonexistent/inst.json", "--k", "1"]);
    assert_eq!(code(&out), 1);
}

#[test]
fn bad_arguments_exit_with_usage_code() {
    assert_eq!(code(&fairkc(&["solve", "--algo", "k-means"])), 1);
    assert_eq!(code(&fairkc(&["frobnicate"])), 1);
    assert_eq!(code(&fairkc(&["--help"])), 0);
}

#[test]
fn unsatisfiable_quotas_exit_with_infeasible_code() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("inst.json");
    let out = fairkc(&[
        "generate", "random", "--n", "30", "--proportions", "0.4,0.3,0.3", "--output", p(&inst),
    ]);
    assert_eq!(code(&out), 0);
    // three colors each need a center but only one is allowed
    let sol = dir.path().join("sol.json");
    let out = fairkc(&["solve", "--algo", "alg-ds", "--k", "1", "--input", p(&inst), "--output", p(&sol)]);
    assert_eq!(code(&out), 2, "{}", String::from_utf8_lossy(&out.stderr));
    assert!(!sol.exists());
}

#[test]
fn oracle_prints_the_optimum() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("comm.json");
    let out = fairkc(&["generate", "l-community", "--l", "2", "--size", "4", "--output", p(&inst)]);
    assert_eq!(code(&out), 0);

    let out = fairkc(&["oracle", "--input", p(&inst), "--k", "2"]);
    assert_eq!(code(&out), 0);
    let json: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["cost"], Value::from(0.0));

    let sol = dir.path().join("opt.json");
    let out = fairkc(&["oracle", "--input", p(&inst), "--k", "2", "--delta", "0", "--output", p(&sol)]);
    assert_eq!(code(&out), 0);
    let json: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["cost"], Value::from(1.0));
    assert!(sol.exists());
}

#[test]
fn experiment_writes_report_and_timings() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("inst.json");
    let out = fairkc(&["generate", "random", "--n", "60", "--proportions", "0.5,0.5", "--output", p(&inst)]);
    assert_eq!(code(&out), 0);
    let config = dir.path().join("exp.json");
    std::fs::write(
        &config,
        r#"{"input":"inst.json","output":"rep.csv","k_values":[2,4],"delta":0.2,"theta":0.8,"seed":1}"#,
    )
    .unwrap();
    let out = fairkc(&["experiment", "--config", p(&config)]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));

    let csv = std::fs::read_to_string(dir.path().join("rep.csv")).unwrap();
    // header plus five algorithms for each k
    assert_eq!(csv.lines().count(), 1 + 2 * 5);
    let timings = std::fs::read_to_string(dir.path().join("rep.timings.json")).unwrap();
    serde_json::from_str::<Value>(&timings).unwrap();
}

#[test]
fn unknown_pattern_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("x.json");
    let out = fairkc(&[
        "generate", "l-community", "--l", "2", "--size", "2", "--pattern", "zigzag", "--output", p(&inst),
    ]);
    assert_eq!(code(&out), 1);
}
