use std::path::PathBuf;
use std::process::{Command, Output};

use btk::cli::parse_symbol;
use btk::ratmat::circle_point;
use btk::scalar_inner::BlaschkeProduct;
use serde_json::Value;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name).to_string_lossy().into_owned()
}

fn btk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_btk")).args(args).env_remove("BTK_TOL").output().expect("run btk")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn factorize_reports_degrees() {
    let out = btk(&["factorize", &fixture("degree_example.json")]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let v = json_of(&out);
    assert_eq!(v["ranks"]["degree"], 2);
    assert_eq!(v["certificates"]["coprime"], true);
    let out = btk(&["factorize", &fixture("z_identity.json")]);
    let v = json_of(&out);
    assert_eq!(v["ranks"]["degree"], 2);
    let zeros = v["certificates"]["scalar_form"]["zeros"].as_array().unwrap();
    assert_eq!(zeros.len(), 1);
    assert_eq!(zeros[0]["mult"], 1);
    let out = btk(&["factorize", &fixture("constant.json"), "--side", "left"]);
    assert_eq!(json_of(&out)["ranks"]["degree"], 0);
}

#[test]
fn hyponormal_and_hermite_fejer() {
    let out = btk(&["hyponormal", &fixture("abrahamse.json")]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let v = json_of(&out);
    assert_eq!(v["verdict"], "hyponormal");
    assert_eq!(v["certificates"]["abrahamse"]["verdict"], "no constraint");
    let out = btk(&["hermite-fejer", &fixture("scalar_4z_zbar.json"), "--json"]);
    let v = json_of(&out);
    assert_eq!(v["verdict"], "contractive solution exists");
    let k0 = v["certificates"]["k_coeffs"][0][0][0][0].as_f64().unwrap();
    assert!((k0 - 0.25).abs() < 1e-12);
}

#[test]
fn pair_counterexample_has_no_lambda() {
    let out = btk(&["pair", &fixture("pair_phi.json"), &fixture("pair_psi.json")]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let v = json_of(&out);
    assert_eq!(v["hyponormal"], true);
    assert!(v["lambda"].is_null());
}

#[test]
fn completion_family_a_is_normal() {
    let out = btk(&["completion", "--alpha", "0.3", "--beta", "0.3,0", &fixture("completion_phi.json"), &fixture("completion_psi.json")]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert_eq!(json_of(&out)["verdict"], "Normal");
    assert!(stderr(&out).starts_with("Normal"));
}

#[test]
fn rank_and_coprime() {
    let f = fixture("abrahamse.json");
    let v = json_of(&btk(&["rank", &f, &f]));
    assert_eq!(v["verdict"], "ranks coincide");
    let v = json_of(&btk(&["coprime", &fixture("theta_z3.json"), &fixture("theta_half.json")]));
    assert_eq!(v["verdict"], "not coprime");
    assert_eq!(v["certificates"]["gcd"]["zeros"][0]["mult"], 1);
    let v = json_of(&btk(&["coprime", &fixture("z_identity.json"), &fixture("theta_half.json")]));
    assert_eq!(v["verdict"], "not coprime");
    let v = json_of(&btk(&["coprime", &fixture("constant.json"), &fixture("theta_half.json")]));
    assert_eq!(v["verdict"], "coprime");
}

#[test]
fn model_gives_six_by_six() {
    let out = btk(&["model", &fixture("theta_z3.json"), &fixture("q_z2.json")]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let v = json_of(&out);
    let q = v["certificates"]["q_of_m"].as_array().unwrap();
    assert_eq!(q.len(), 6);
    assert!(q.iter().all(|row| row.as_array().unwrap().len() == 6));
    let ones: Vec<(usize, usize)> = (0..6)
        .flat_map(|i| (0..6).map(move |j| (i, j)))
        .filter(|&(i, j)| q[i][j][0].as_f64().unwrap() != 0.0)
        .collect();
    assert_eq!(ones, vec![(4, 0), (5, 1)]);
}

#[test]
fn compose_output_round_trips() {
    let out = btk(&["compose", &fixture("abrahamse.json"), &fixture("omega_z2.json")]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let v = json_of(&out);
    let back = parse_symbol(&v["symbol"].to_string()).unwrap();
    let orig = parse_symbol(&std::fs::read_to_string(fixture("abrahamse.json")).unwrap()).unwrap();
    let om = BlaschkeProduct::z_power(2);
    for j in 0..64 {
        let z = circle_point(j, 64);
        let d = (back.eval(z) - orig.eval(om.eval(z))).norm();
        assert!(d < 1e-10, "{d:e}");
    }
    // the written file is itself accepted by every reader
    let tmp = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("composed.json");
    std::fs::write(&tmp, v["symbol"].to_string()).unwrap();
    let out = btk(&["hyponormal", tmp.to_str().unwrap()]);
    assert_eq!(json_of(&out)["verdict"], "hyponormal");
}

#[test]
fn exit_codes() {
    assert_eq!(btk(&["hyponormal", "/nonexistent.json"]).status.code(), Some(2));
    let tmp = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("broken.json");
    std::fs::write(&tmp, "{\"n\": 1, \"entries\": 3}").unwrap();
    assert_eq!(btk(&["hyponormal", tmp.to_str().unwrap()]).status.code(), Some(2));
    let f = fixture("abrahamse.json");
    assert_eq!(btk(&["hyponormal", &f, "--tol", "0.5"]).status.code(), Some(2));
    assert_eq!(btk(&["hyponormal", &f, "--truncation", "4"]).status.code(), Some(2));
    assert_eq!(btk(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(btk(&["completion", "--alpha", "x", "--beta", "0", &f, &f]).status.code(), Some(2));
    // ker H_{Φ₊*} ⊄ ker H_{Φ_−*} makes C(Φ) empty
    let out = btk(&["hermite-fejer", &fixture("scalar_z_zbar2.json")]);
    assert_eq!(out.status.code(), Some(4), "{}", stderr(&out));
    assert_eq!(btk(&["--help"]).status.code(), Some(0));
}

#[test]
fn selftest_list_and_single() {
    let out = btk(&["selftest", "--list"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert_eq!(text.lines().count(), 14);
    assert!(text.contains("rank-formula"));
    let out = btk(&["selftest", "--only", "8", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["results"][0]["pass"], true);
}

#[test]
fn corrupted_tolerance_names_the_failure() {
    let out = btk(&["selftest", "--tol", "1e-16"]);
    assert_eq!(out.status.code(), Some(3));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.lines().any(|l| l.starts_with("FAIL") && l.contains("hermite-fejer-fidelity")));
    assert!(stderr(&out).contains("hermite-fejer-fidelity"));
    // BTK_TOL overrides the default tolerance
    let out = Command::new(env!("CARGO_BIN_EXE_btk")).args(["selftest", "--only", "13"]).env("BTK_TOL", "1e-16").output().unwrap();
    assert_eq!(out.status.code(), Some(3));
}
