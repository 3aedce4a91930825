use std::path::PathBuf;
use std::process::{Command, Output};

use pomset_cli::ProblemFile;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(format!("{name}.json"))
}

fn pomset(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pomset")).args(args).output().expect("binary runs")
}

fn on(name: &str, args: &[&str]) -> (i32, String) {
    let path = fixture(name);
    let mut all = vec!["-p", path.to_str().unwrap()];
    all.extend_from_slice(args);
    let out = pomset(&all);
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

fn value<'a>(stdout: &'a str, key: &str) -> Option<&'a str> {
    stdout.lines().find_map(|l| l.strip_prefix(key)?.strip_prefix('='))
}

const FIXTURES: [&str; 12] = [
    "v_shape",
    "lee_z5_1perfect",
    "pr_antichain",
    "pr_chain",
    "mds_z5_6",
    "mds_z5_3",
    "example_big_d",
    "example_small_d",
    "duality_z5_6",
    "z9_c",
    "z9_c_prime",
    "chain_z7",
];

#[test]
fn check_mds_on_the_six_coordinate_code() {
    let (code, out) = on("mds_z5_6", &["check-mds"]);
    assert_eq!(code, 0);
    assert!(out.contains("MDS: true, d=7, rhs=4"), "{out}");
}

#[test]
fn pr_is_not_4_perfect() {
    let (code, out) = on("pr_antichain", &["check-perfect", "--radius", "4", "--at", "2,1,0"]);
    assert_eq!(code, 1);
    assert_eq!(value(&out, "witness"), Some("(2,1,0)"));
    assert_eq!(value(&out, "kind"), Some("overlap"));
    let (code, out) = on("pr_antichain", &["check-perfect", "--radius", "4"]);
    assert_eq!(code, 1);
    assert!(value(&out, "witness").is_some());
}

#[test]
fn v_shape_has_two_ideals_of_cardinality_3() {
    let (code, out) = on("v_shape", &["ideals", "--cardinality", "3"]);
    assert_eq!(code, 0);
    assert_eq!(value(&out, "count"), Some("2"));
    assert!(out.contains("{2/1,1/2}") && out.contains("{2/1,1/3}"), "{out}");
}

#[test]
fn lee_code_is_1_perfect() {
    let (code, out) = on("lee_z5_1perfect", &["--machine", "check-perfect"]);
    assert_eq!(code, 0);
    assert_eq!(out, "perfect=true\n");
}

#[test]
fn z9_codes() {
    let (code, _) = on("z9_c", &["check-mds"]);
    assert_eq!(code, 1);
    let (code, _) = on("z9_c_prime", &["check-mds"]);
    assert_eq!(code, 0);
}

#[test]
fn closed_form_weight_distribution() {
    let (code, out) = on("chain_z7", &["weight-dist", "--closed-form"]);
    assert_eq!(code, 0);
    assert_eq!(value(&out, "agree"), Some("true"));
    let (code, _) = on("pr_chain", &["weight-dist", "--closed-form"]);
    assert_eq!(code, 2);
}

#[test]
fn duality_example_agrees() {
    let (code, out) = on("duality_z5_6", &["dual"]);
    assert_eq!(code, 0);
    assert_eq!(value(&out, "duality.all_agree"), Some("true"));
}

#[test]
fn every_fixture_loads_and_is_canonical() {
    for name in FIXTURES {
        let file = ProblemFile::read(&fixture(name)).unwrap();
        let canon = file.canonical().unwrap();
        assert_eq!(canon.canonical().unwrap(), canon, "{name}");
        let (code, out) = on(name, &["--machine", "canonical"]);
        assert_eq!(code, 0, "{name}");
        let printed = ProblemFile::parse(value(&out, "problem").unwrap()).unwrap();
        assert_eq!(printed, canon, "{name}");
    }
}

#[test]
fn canonical_file_round_trips_through_disk() {
    let file = ProblemFile::read(&fixture("pr_chain")).unwrap().canonical().unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p.json");
    std::fs::write(&path, file.to_json()).unwrap();
    assert_eq!(ProblemFile::read(&path).unwrap(), file);
    let out = pomset(&["-p", path.to_str().unwrap(), "check-mds"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn machine_output_is_deterministic() {
    let runs = [
        ("v_shape", vec!["oracle", "metric", "--triples", "500"]),
        ("mds_z5_3", vec!["oracle", "suite"]),
        ("pr_antichain", vec!["check-perfect", "--radius", "4"]),
        ("duality_z5_6", vec!["dual"]),
    ];
    for (name, args) in runs {
        let mut args: Vec<&str> = args;
        args.extend(["--machine", "--seed", "7"]);
        let (c1, a) = on(name, &args);
        let (c2, b) = on(name, &args);
        assert_eq!((c1, &a), (c2, &b), "{name}");
        assert!(!a.is_empty() && !a.contains('#'), "{name}");
    }
}

#[test]
fn exit_codes() {
    let (code, _) = on("v_shape", &["check-mds"]);
    assert_eq!(code, 2);
    let (code, _) = on("v_shape", &["weight", "--vector", "1,2"]);
    assert_eq!(code, 2);
    let (code, _) = on("v_shape", &["ideals", "--cardinality", "7"]);
    assert_eq!(code, 2);
    let (code, _) = on("mds_z5_6", &["--budget", "100", "oracle", "census"]);
    assert_eq!(code, 3);
    assert_eq!(pomset(&["check-mds"]).status.code(), Some(2));
    assert_eq!(pomset(&["-p", "/nonexistent.json", "check-mds"]).status.code(), Some(2));
    assert_eq!(pomset(&["frobnicate"]).status.code(), Some(2));

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, r#"{"m": 6, "pomset": {"s": 1}, "labeling": [1], "height": 3}"#).unwrap();
    assert_eq!(pomset(&["-p", path.to_str().unwrap(), "singleton"]).status.code(), Some(2));
}

#[test]
fn error_correction_witness() {
    let (code, out) = on("pr_antichain", &["check-error-correcting", "--radius", "3"]);
    assert_eq!(code, 1);
    assert!(value(&out, "witness").is_some() && value(&out, "centers").is_some());
    let (code, _) = on("pr_antichain", &["check-error-correcting", "--radius", "1"]);
    assert_eq!(code, 0);
}
