//! End-to-end tests of the `heegaard` binary: exit codes, report shapes, and
//! byte-stability across runs.

use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn heegaard(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_heegaard"))
        .args(args)
        .env_remove("HC_COLOR")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8")
}

#[test]
fn validate_exit_codes() {
    let ok = heegaard(&["validate", &fixture("gx3.model")]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(stdout(&ok).contains("status=valid"));

    let bad = heegaard(&["validate", &fixture("bad-r4.model")]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stdout(&bad).contains("violation.00=R4"));
}

#[test]
fn parse_errors_exit_two() {
    let dir = std::env::temp_dir().join("heegaard-cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("broken.model");
    std::fs::write(&path, "manifold genus=3 vminus=[] wminus=[]\nfrob x\n").unwrap();
    let out = heegaard(&["validate", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 2"), "{err}");
}

#[test]
fn classify_matches_spec_examples() {
    let out = heegaard(&["classify", &fixture("gx3.model"), "--pair", "V2,W1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "type=A_I\n");

    let all = heegaard(&["classify", &fixture("gx3.model"), "--all"]);
    let text = stdout(&all);
    assert!(text.contains("type.V1,W1=A_I"));
    assert!(text.contains("type.V2,W1=A_I"));

    let gb4 = heegaard(&["classify", &fixture("gb4.model"), "--pair", "V2,W1"]);
    assert_eq!(stdout(&gb4), "type=B_W_I\n");

    let gd4 = heegaard(&["classify", &fixture("gd4.model"), "--pair", "V1,W1"]);
    assert_eq!(stdout(&gd4), "type=D\n");
}

#[test]
fn reduce_raw_prints_preweak_levels() {
    let out = heegaard(&["reduce", &fixture("gx3.model"), "--pair", "V1,W1", "--raw"]);
    let text = stdout(&out);
    assert!(text.contains("thick=[g2{V1,V1}; g2{W1,W1}]"), "{text}");
    assert!(text.contains("thin=[g1{V1,V1,W1,W1}]"), "{text}");
}

#[test]
fn criticality_verdicts() {
    let out = heegaard(&["criticality", &fixture("two-island.model")]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("verdict=CRITICAL_INDEX_TWO_WITNESS"));

    let gx3 = heegaard(&["criticality", &fixture("gx3.model")]);
    assert!(stdout(&gx3).contains("verdict=NOT_TOPOLOGICALLY_MINIMAL_MODEL_LEVEL"));

    let hb = heegaard(&["criticality", &fixture("hbody4.model")]);
    let text = stdout(&hb);
    assert!(text.contains("verdict=HAS_NONEQUIVALENT_FACE"));
    assert!(text.contains("witness_face={V1,V2,W1}"));
}

#[test]
fn phi_needs_genus_three() {
    let out = heegaard(&["phi", &fixture("gb4.model")]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("error=Genus3Only"));

    let ok = heegaard(&["phi", &fixture("two-island.model")]);
    assert_eq!(ok.status.code(), Some(0));
    let text = stdout(&ok);
    assert!(text.contains(".size=2"), "{text}");
    assert!(text.contains("omega.caveat="));
}

#[test]
fn missing_meridians_error_unless_synthesized() {
    let out = heegaard(&["clusters", &fixture("missing-meridian.model")]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("error=MissingMeridian"));

    let closed = heegaard(&[
        "clusters",
        &fixture("missing-meridian.model"),
        "--synthesize-meridians",
    ]);
    assert_eq!(closed.status.code(), Some(0));
    assert!(stdout(&closed).contains("cluster.00.center=V2_m,W1"));
}

#[test]
fn oracle_check_passes_fixtures() {
    for name in ["gx3.model", "gb4.model", "gc6.model", "two-island.model"] {
        let out = heegaard(&["oracle-check", &fixture(name)]);
        assert_eq!(out.status.code(), Some(0), "{name}");
        assert!(stdout(&out).contains("result=pass"), "{name}");
    }
}

#[test]
fn reports_are_byte_stable() {
    for args in [
        vec!["clusters".to_string(), fixture("gx3-v3.model")],
        vec!["phi".to_string(), fixture("two-island.model")],
        vec!["export-graph".to_string(), fixture("gx3.model")],
        ["gen", "--genus", "4", "--disks", "6", "--seed", "9"]
            .map(str::to_string)
            .to_vec(),
    ] {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let a = stdout(&heegaard(&args));
        let b = stdout(&heegaard(&args));
        assert_eq!(a, b, "{args:?}");
        assert!(!a.is_empty());
    }
}

#[test]
fn gen_matches_the_golden_file() {
    let out = heegaard(&["gen", "--genus", "3", "--disks", "4", "--seed", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let golden = std::fs::read_to_string(fixture("golden-seed1.model")).unwrap();
    assert_eq!(stdout(&out), golden);
}

#[test]
fn gen_refuses_type_d_at_genus_three() {
    let out = heegaard(&[
        "gen", "--genus", "3", "--disks", "4", "--seed", "1", "--types", "d",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("R4"));
}

#[test]
fn gen_roundtrips_through_validate_and_out() {
    let dir = std::env::temp_dir().join("heegaard-cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    let path: PathBuf = dir.join("gen-rt.model");
    let out = heegaard(&[
        "gen",
        "--genus",
        "5",
        "--disks",
        "8",
        "--seed",
        "42",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let check = heegaard(&["validate", path.to_str().unwrap()]);
    assert_eq!(check.status.code(), Some(0));
    let oracle = heegaard(&["oracle-check", path.to_str().unwrap()]);
    assert_eq!(oracle.status.code(), Some(0));
}

#[test]
fn color_env_toggles_ansi() {
    let plain = Command::new(env!("CARGO_BIN_EXE_heegaard"))
        .args(["validate", &fixture("gx3.model")])
        .env("HC_COLOR", "0")
        .output()
        .unwrap();
    assert!(!stdout(&plain).contains('\x1b'));
    let colored = Command::new(env!("CARGO_BIN_EXE_heegaard"))
        .args(["validate", &fixture("gx3.model")])
        .env("HC_COLOR", "1")
        .output()
        .unwrap();
    assert!(stdout(&colored).contains("\x1b[32mvalid\x1b[0m"));
}

#[test]
fn export_graph_lines() {
    let out = heegaard(&["export-graph", &fixture("hbody4.model")]);
    let text = stdout(&out);
    assert!(text.contains("node V1 side=V kind=sep"));
    assert!(text.contains("edge V2 W1"));
    assert!(text.contains("face V1 V2 W1 oneclass=false"));
}
