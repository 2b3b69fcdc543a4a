use std::process::{Command, Output};

use serde_json::Value;

fn galilei(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_galilei")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is one JSON document")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn envelope_carries_schema_and_seed() {
    let out = galilei(&["--seed", "7", "verify-rep", "--rep", "D(3,1,1)"]);
    assert_eq!(code(&out), 0);
    let doc = json(&out);
    assert_eq!(doc["schema"], "galilei/1");
    assert_eq!(doc["seed"], 7);
    assert_eq!(doc["command"], "verify-rep");
    assert_eq!(doc["pass"], true);
    assert_eq!(doc["report"]["carriers"][0]["dim"], 10);
}

#[test]
fn seed_defaults_to_zero() {
    assert_eq!(json(&galilei(&["contract-dkp"]))["seed"], 0);
}

#[test]
fn all_base_representations_verify() {
    let out = galilei(&["verify-rep"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["report"]["carriers"].as_array().unwrap().len(), 12);
}

#[test]
fn direct_sums_are_accepted() {
    let out = galilei(&["verify-rep", "--rep", "D(2,1,0)+D(0,1,0)"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["report"]["carriers"][0]["dim"], 8);
}

#[test]
fn empty_solution_space() {
    let out = galilei(&["solve-beta", "--left", "D(1,0,0)", "--right", "D(0,1,0)"]);
    assert_eq!(code(&out), 0);
    let doc = json(&out);
    assert_eq!(doc["report"]["dim"], 0);
    assert_eq!(doc["report"]["pair"], serde_json::json!(["D(1,0,0)", "D(0,1,0)"]));
}

#[test]
fn solution_basis_assembles_valid_systems() {
    let out = galilei(&["solve-beta", "--left", "D(3,1,1)", "--right", "D(3,1,1)"]);
    assert_eq!(code(&out), 0);
    let doc = json(&out);
    let dim = doc["report"]["dim"].as_u64().unwrap();
    assert!(dim > 0);
    assert_eq!(doc["report"]["conditions"].as_array().unwrap().len() as u64, dim);
}

#[test]
fn appendix_reproduces_every_cell() {
    let out = galilei(&["appendix", "--table", "all"]);
    let doc = json(&out);
    assert_eq!(doc["report"]["matched"], doc["report"]["total"]);
    assert_eq!(code(&out), 0);
}

#[test]
fn appendix_table_filter() {
    let doc = json(&galilei(&["appendix", "--table", "4"]));
    let cells = doc["report"]["cells"].as_array().unwrap();
    assert!(!cells.is_empty());
    assert!(cells.iter().all(|c| c["table"] == 4));
}

#[test]
fn small_classification_box() {
    let out = galilei(&["classify", "--n-max", "1", "--m-max", "1"]);
    assert_eq!(code(&out), 0);
    let doc = json(&out);
    assert_eq!(doc["report"]["expected"], 4);
    assert!(doc["report"]["missing"].as_array().unwrap().is_empty());
}

#[test]
fn spinor_minimal_reduction() {
    let out = galilei(&["reduce", "--system", "levy_leblond", "--coupling", "minimal"]);
    assert_eq!(code(&out), 0);
    let doc = json(&out);
    assert_eq!(doc["report"]["g"], "2");
    assert_eq!(doc["report"]["exact"], true);
}

#[test]
fn reduction_with_explicit_potentials() {
    let out = galilei(&["reduce", "--system", "levy_leblond", "--A0", "-x1 - 1/2*x2^2", "--A", "-1/2*x2;1/2*x1;0"]);
    assert_eq!(code(&out), 0);
    let doc = json(&out);
    assert_eq!(doc["report"]["g"], "2");
}

#[test]
fn spin_orbit_slice_from_the_command_line() {
    let out = galilei(&[
        "reduce",
        "--system",
        "levy_leblond",
        "--coupling",
        "anomalous",
        "--lambda2",
        "lambda3*mu^-1",
        "--lambda1",
        "-mu^-1-nu*lambda3*mu^-2",
        "--truncate",
        "lambda3:2,e:1",
    ]);
    assert_eq!(code(&out), 0);
    let terms = &json(&out)["report"]["terms"];
    assert_eq!(terms["spin_orbit"], "1/4*lambda3^2");
    assert_eq!(terms["darwin"], "-1/8*lambda3^2");
}

#[test]
fn interacting_proca_passes() {
    let out = galilei(&["proca", "--constant"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["report"]["g_is_two"], true);
}

#[test]
fn dkp_contraction_passes() {
    assert_eq!(code(&galilei(&["contract-dkp"])), 0);
}

#[test]
fn output_is_byte_identical_across_runs_and_thread_caps() {
    let a = galilei(&["--seed", "3", "catalog", "--system", "proca"]);
    let b = galilei(&["--seed", "3", "catalog", "--system", "proca"]);
    let c = Command::new(env!("CARGO_BIN_EXE_galilei"))
        .args(["--seed", "3", "catalog", "--system", "proca"])
        .env("GALILEI_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
}

#[test]
fn seed_changes_sampled_momenta() {
    let a = json(&galilei(&["--seed", "1", "catalog", "--system", "proca"]));
    let b = json(&galilei(&["--seed", "2", "catalog", "--system", "proca"]));
    assert_ne!(a["report"], b["report"]);
}

#[test]
fn table_format_is_plain_text() {
    let out = galilei(&["--format", "table", "verify-rep", "--rep", "D(1,1,0)"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l.starts_with("schema") && l.ends_with("galilei/1")));
}

#[test]
fn failed_verification_exits_one() {
    let out = galilei(&["catalog", "--system", "dkp_spin0"]);
    assert_eq!(code(&out), 1);
    assert_eq!(json(&out)["pass"], false);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code(&galilei(&["no-such-verb"])), 2);
    assert_eq!(code(&galilei(&["verify-rep", "--bogus"])), 2);
    assert_eq!(code(&galilei(&["verify-rep", "--rep", "D(9,9,9)"])), 2);
    assert_eq!(code(&galilei(&["reduce", "--system", "nonexistent"])), 2);
}

#[test]
fn field_expression_errors() {
    let out = galilei(&["reduce", "--system", "D311", "--A0", "3/0"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("zero denominator"));
    let out = galilei(&["reduce", "--system", "D311", "--A0", "x1 + * x2"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("position 5"));
    let out = galilei(&["reduce", "--system", "D311", "--A0", "x1*x2*x3"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("x1*x2*x3"));
    let ok = galilei(&["reduce", "--system", "D311", "--A0", "x1*x2*x3", "--degree-cap", "3"]);
    assert_ne!(code(&ok), 2);
}

#[test]
fn proca_is_not_a_beta_system() {
    let out = galilei(&["reduce", "--system", "proca"]);
    assert_eq!(code(&out), 2);
}
