use serde_json::Value;
use std::io::Write;
use std::process::{Command, Output, Stdio};

const SEVEN: &str = r#"{"intensities": [-14, -8, 2, 4, 6, 8, 8], "kappa": 3}"#;
const PIVOTAL: &str = r#"{"intensities": [-2, -1, -1, 8, 10], "kappa": 3}"#;

fn run(stdin: &str, args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_logroll"))
        .args(args)
        .envs(env.iter().copied())
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn json(stdin: &str, args: &[&str]) -> Value {
    let out = run(stdin, args, &[]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

fn strings(v: &Value) -> Vec<String> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_str().unwrap().to_string())
        .collect()
}

#[test]
fn classify_reports_regime_and_aggregates() {
    let v = json(SEVEN, &["classify"]);
    assert_eq!(v["regime"], "higher-order-preemption");
    assert_eq!(v["aggregates"]["G_S"], "10");
    assert_eq!(v["aggregates"]["delta_U_kappa_hat"], "4");
    assert_eq!(v["aggregates"]["U_S"], "22");
    assert_eq!(v["min_total_transfer"], "14");
    assert_eq!(v["critical_member"], 4);
}

#[test]
fn classify_reads_input_file() {
    let dir = std::env::temp_dir().join(format!("logroll-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("pivotal.json");
    std::fs::write(&path, PIVOTAL).unwrap();
    let v = json("", &["classify", "--input", path.to_str().unwrap()]);
    assert_eq!(v["regime"], "frustrated-pivotal");
    assert_eq!(v["aggregates"]["U_S"], "4");
    assert_eq!(v["aggregates"]["U_R"], "18");
}

#[test]
fn solve_emits_canonical_and_selection() {
    let v = json(SEVEN, &["solve"]);
    assert_eq!(
        strings(&v["canonical"]["promises"]),
        ["98/11", "56/11", "0", "-1", "-3", "-5", "-5"]
    );
    assert_eq!(
        strings(&v["selection"]["promises"]),
        ["10", "4", "0", "-1", "-3", "-5", "-5"]
    );
    let steps = v["selection"]["trace"]["steps"].as_array().unwrap();
    assert_eq!(steps.len(), 3);
    assert_eq!(
        strings(&steps[1]["intensities"]),
        ["-8", "-8", "2", "4", "16/3", "16/3", "16/3"]
    );
    assert_eq!(v["selection"]["trace"]["final_step"], "4");
}

#[test]
fn emitted_profiles_round_trip_through_check() {
    let solved = json(PIVOTAL, &["solve"]);
    for which in ["canonical", "selection"] {
        let profile = serde_json::to_string(&solved[which]["promises"]).unwrap();
        let v = json(PIVOTAL, &["check", "--profile", &profile]);
        assert_eq!(v["is_equilibrium"], true, "{which}");
        assert_eq!(v["stable"], true);
    }
}

#[test]
fn user_order_is_preserved() {
    let shuffled = r#"{"intensities": [8, -8, 4, 2, -14, 8, 6], "kappa": 3, "labels": ["a","b","c","d","e","f","g"]}"#;
    let v = json(shuffled, &["solve", "--mode", "selection"]);
    assert_eq!(
        strings(&v["selection"]["promises"]),
        ["-5", "4", "-1", "0", "10", "-5", "-3"]
    );
    assert_eq!(v["sorted_view"]["labels"][0], "e");
    let check = json(shuffled, &["check", "--profile", "-5,3,-1,0,11,-5,-3"]);
    assert_eq!(check["is_equilibrium"], true);
}

#[test]
fn check_reports_violation_and_witness() {
    let v = json(PIVOTAL, &["check", "--profile", "0,0,4,-6,2"]);
    assert_eq!(v["stable"], false);
    assert_eq!(v["enumeration_stable"], false);
    assert_eq!(v["blocking"]["coalition"], serde_json::json!([1, 2, 4]));
    let violations = v["equilibrium"]["violations"].as_array().unwrap();
    assert!(violations.iter().any(|x| x["condition"] == "ordering"));
}

#[test]
fn check_with_status_quo_promises() {
    let three = r#"{"intensities": [-4, 1, 5], "kappa": 2}"#;
    let v = json(three, &["check", "--profile", "0,0,0", "--status-quo", "-3,0,3"]);
    assert_eq!(v["stable"], true);
    assert_eq!(v["equilibrium"], Value::Null);
    assert_eq!(v["total_transfer"], "3");
}

#[test]
fn block_finds_grand_coalition_when_reform_fails() {
    let three = r#"{"intensities": [-4, 1, 5], "kappa": 3}"#;
    let v = json(three, &["block", "--profile", "0,0,0"]);
    assert_eq!(v["stable"], false);
    assert_eq!(v["blocking"]["direction"], "reform");
    assert_eq!(v["blocking"]["coalition"], serde_json::json!([1, 2, 3]));
    let stable = json(three, &["block", "--profile", "[\"14/3\", \"-1/3\", \"-13/3\"]"]);
    assert_eq!(stable["blocking"], Value::Null);
}

#[test]
fn verify_is_deterministic_per_seed() {
    let a = json(SEVEN, &["verify", "--seed", "9", "--samples", "4"]);
    let b = json(SEVEN, &["verify", "--seed", "9", "--samples", "4"]);
    assert_eq!(a["agree"], true);
    assert_eq!(a["lp_optimum"], "14");
    assert_eq!(a["samples"], b["samples"]);
    assert_eq!(a["samples"].as_array().unwrap().len(), 4);
}

#[test]
fn sweep_scales_linearly() {
    let v = json(SEVEN, &["sweep", "--lambdas", "1/2,1,3"]);
    let rows = v["rows"].as_array().unwrap();
    let totals: Vec<_> = rows.iter().map(|r| r["min_total_transfer"].clone()).collect();
    assert_eq!(totals, ["7", "14", "42"]);
}

#[test]
fn csv_output() {
    let out = run(SEVEN, &["sweep", "--lambdas", "1,2", "--output", "csv"], &[]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(
        text.lines().collect::<Vec<_>>(),
        [
            "lambda,min_total_transfer,regime",
            "1,14,higher-order-preemption",
            "2,28,higher-order-preemption"
        ]
    );
}

#[test]
fn enumeration_cap_comes_from_environment() {
    let out = run(
        SEVEN,
        &["check", "--profile", "11,3,0,-1,-3,-5,-5"],
        &[("LOGROLL_BRUTE_FORCE_CAP", "4")],
    );
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["enumeration_stable"], Value::Null);
    assert_eq!(v["stable"], true);
}

#[test]
fn exit_codes() {
    assert_eq!(run("not json", &["classify"], &[]).status.code(), Some(2));
    let inefficient = r#"{"intensities": [-4, 1, 2], "kappa": 2}"#;
    assert_eq!(run(inefficient, &["classify"], &[]).status.code(), Some(3));
    let bad_kappa = r#"{"intensities": [1, 2], "kappa": 3}"#;
    assert_eq!(run(bad_kappa, &["classify"], &[]).status.code(), Some(3));
    let not_zero_sum = run(SEVEN, &["check", "--profile", "1,0,0,0,0,0,0"], &[]);
    assert_eq!(not_zero_sum.status.code(), Some(3));
    let wrong_len = run(SEVEN, &["check", "--profile", "1,-1"], &[]);
    assert_eq!(wrong_len.status.code(), Some(3));
    let bad_scale = run(SEVEN, &["sweep", "--lambdas", "0"], &[]);
    assert_eq!(bad_scale.status.code(), Some(3));
    let too_big = run(SEVEN, &["verify"], &[("LOGROLL_LP_CAP", "5")]);
    assert_eq!(too_big.status.code(), Some(5));
    assert!(String::from_utf8_lossy(&too_big.stderr).contains("cap"));
}
