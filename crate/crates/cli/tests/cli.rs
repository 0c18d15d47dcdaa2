use std::fs;
use std::process::{Command, Output};

use dqsim_cli::descriptor::{Algorithm, ExperimentDescriptor, InlineTable, OracleSource, OutputFormat};
use proptest::prelude::*;
use serde_json::Value;

fn dqsim(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dqsim"))
        .args(args)
        .output()
        .expect("spawn dqsim")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn run_descriptor(json: &str) -> (Output, Value) {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("experiment.json");
    fs::write(&path, json).unwrap();
    let out = dqsim(&["run", path.to_str().unwrap()]);
    let value = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (out, value)
}

#[test]
fn field_info_f9() {
    let o = dqsim(&["field-info", "--p", "3", "--degree", "2", "--format", "json"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["elements"], 9);
    assert_eq!(v["phases"], 4);
    let text = stdout(&dqsim(&["field-info", "--p", "3", "--degree", "2"]));
    assert!(text.contains("elements: 9"));
    assert!(text.contains("phases: 4"));
}

#[test]
fn field_info_rejects_p5_degree2() {
    let o = dqsim(&["field-info", "--p", "5", "--degree", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("reducible"));
}

#[test]
fn field_info_f2() {
    let o = dqsim(&["field-info", "--p", "2", "--degree", "1"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("elements: 2"));
}

#[test]
fn census_writes_file_and_prints_counts() {
    let dir = tempfile::tempdir().unwrap();
    for (p, summary) in [(3, "unit_vectors=24 classes=6 phases=4"), (7, "unit_vectors=336 classes=42 phases=8")] {
        let path = dir.path().join(format!("census{p}.json"));
        let o = dqsim(&["census", "--p", &p.to_string(), "--out", path.to_str().unwrap()]);
        assert!(o.status.success());
        assert!(stdout(&o).contains(summary));
        let v: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
        assert_eq!(v["reps"].as_array().unwrap().len(), v["classes"].as_u64().unwrap() as usize);
    }
    let o = dqsim(&["census", "--p", "11", "--format", "csv"]);
    assert!(o.status.success());
    let csv = stdout(&o);
    assert_eq!(csv.lines().next(), Some("class,a_re,a_im,b_re,b_im"));
    assert_eq!(csv.lines().count(), 1 + 110);
}

#[test]
fn census_rejects_bad_p() {
    assert_eq!(dqsim(&["census", "--p", "5"]).status.code(), Some(2));
}

#[test]
fn run_modal_unique_sat() {
    let (o, v) = run_descriptor(r#"{"algorithm":"usat-modal","p":2,"degree":1,"n":3,"oracle":"unique-sat(5)"}"#);
    assert!(o.status.success());
    assert_eq!(v["verdict"], "SAT");
    assert_eq!(v["oracle_evals"], 1);
}

#[test]
fn run_grover_f49() {
    let (o, v) = run_descriptor(r#"{"algorithm":"grover","p":7,"degree":2,"N":4,"marked":1,"iterations":1}"#);
    assert!(o.status.success());
    assert_eq!(v["verdict"], "FOUND");
    assert_eq!(v["final_support"], serde_json::json!([1]));
}

#[test]
fn run_discrete_unique_sat_inconclusive() {
    let (o, v) = run_descriptor(r#"{"algorithm":"usat-discrete","p":3,"degree":2,"n":3,"oracle":"unique-sat(0)"}"#);
    assert!(o.status.success());
    assert_eq!(v["verdict"], "INCONCLUSIVE");
}

#[test]
fn run_rejects_invalid_descriptors() {
    for bad in [
        r#"{"algorithm":"usat-modal","p":3,"degree":2,"n":2,"oracle":"unsat"}"#,
        r#"{"algorithm":"grover","p":3,"degree":2,"N":3,"marked":0}"#,
        r#"{"algorithm":"dj","p":3,"degree":2,"n":2,"oracle":"unique-sat(1)"}"#,
        r#"{"algorithm":"usat-modal","p":2,"degree":1,"n":40,"oracle":"unsat"}"#,
        r#"not json"#,
    ] {
        let (o, _) = run_descriptor(bad);
        assert_eq!(o.status.code(), Some(2), "{bad}");
    }
}

#[test]
fn run_output_is_byte_identical() {
    let json = r#"{"algorithm":"dj","p":7,"degree":2,"n":3,"oracle":"balanced(6)"}"#;
    let (a, _) = run_descriptor(json);
    let (b, _) = run_descriptor(json);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn verify_paper_filter() {
    let o = dqsim(&["verify-paper", "--filter", "modal", "--format", "json"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let checks = v["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 5);
    assert!(checks.iter().all(|c| c["group"] == "modal" && c["pass"] == true));
    assert_eq!(v["exit_code"], 0);
}

fn descriptor() -> impl Strategy<Value = ExperimentDescriptor> {
    let algorithm = prop::sample::select(vec![
        Algorithm::Grover,
        Algorithm::DeutschJozsa,
        Algorithm::UniqueSatModal,
        Algorithm::UniqueSatDiscrete,
    ]);
    let oracle = prop_oneof![
        (0usize..64).prop_map(|k| OracleSource::Generator(format!("unique-sat({k})"))),
        Just(OracleSource::Generator("constant-true".into())),
        (1usize..4).prop_flat_map(|n| prop::collection::vec(0u64..2, 1 << n)
            .prop_map(move |outputs| OracleSource::Table(InlineTable { n, outputs }))),
    ];
    (
        algorithm,
        prop::sample::select(vec![2u64, 3, 7, 11]),
        1u64..3,
        prop::option::of(1usize..8),
        prop::option::of(1u64..64),
        prop::option::of(oracle),
        prop::option::of(0usize..16),
        prop::option::of(0u64..8),
        prop::sample::select(vec![OutputFormat::Json, OutputFormat::Csv]),
    )
        .prop_map(|(algorithm, p, degree, n, database_size, oracle, marked, iterations, format)| {
            ExperimentDescriptor {
                algorithm,
                p,
                degree,
                n,
                database_size,
                oracle,
                marked,
                iterations,
                format,
            }
        })
}

proptest! {
    #[test]
    fn descriptor_round_trips(d in descriptor()) {
        prop_assert_eq!(ExperimentDescriptor::parse(&d.emit()).unwrap(), d);
    }
}
