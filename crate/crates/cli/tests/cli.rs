//! End-to-end tests driving the built binary.

use std::io::Write;
use std::process::{Command, Output, Stdio};

fn exela(args: &[&str], stdin: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_exela"));
    cmd.args(args);
    cmd.stdout(Stdio::piped()).stderr(Stdio::piped());
    match stdin {
        Some(text) => {
            cmd.stdin(Stdio::piped());
            let mut child = cmd.spawn().expect("spawn");
            child
                .stdin
                .as_mut()
                .unwrap()
                .write_all(text.as_bytes())
                .unwrap();
            child.wait_with_output().expect("wait")
        }
        None => {
            cmd.stdin(Stdio::null());
            cmd.output().expect("run")
        }
    }
}

fn stdout_json(out: &Output) -> serde_json::Value {
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("json output")
}

fn idti_doc() -> String {
    let out = exela(&["normal-form", "idti", "350", "200", "250"], None);
    assert!(out.status.success());
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn clips_subcommand() {
    let out = exela(&["clips", "O(2)", "O(2)"], None);
    let v = stdout_json(&out);
    assert_eq!(v["classes"], serde_json::json!(["Z2", "D2", "O(2)"]));
}

#[test]
fn enumerate_subcommand() {
    let out = exela(&["enumerate", "O(2)"], None);
    let v = stdout_json(&out);
    assert_eq!(v["rows"].as_array().unwrap().len(), 7);
    // csv rendering
    let out = exela(&["enumerate", "O(2)", "--format", "csv"], None);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("label,class,h_a,h_b,h4,pair_ab,pair_ah,pair_bh,generic\n"));
    assert_eq!(text.lines().count(), 8);
}

#[test]
fn eig_on_normal_form_via_stdin() {
    let doc = idti_doc();
    let out = exela(&["eig", "-"], Some(&doc));
    let v = stdout_json(&out);
    let eigs = v["eigenvalues"].as_array().unwrap();
    assert_eq!(eigs.len(), 6);
    let s51 = 51.0f64.sqrt();
    assert!((eigs[0].as_f64().unwrap() - 50.0 * (10.0 - s51)).abs() < 1e-9);
    assert_eq!(v["positive_definite"], serde_json::json!(true));
}

#[test]
fn classify_reports_material() {
    let doc = idti_doc();
    let out = exela(&["classify", "-"], Some(&doc));
    let v = stdout_json(&out);
    assert_eq!(v["material"], serde_json::json!("IDTI"));
    assert_eq!(v["matched"], serde_json::json!("O(2)^e_5"));
}

#[test]
fn structure_of_idti() {
    let doc = idti_doc();
    let out = exela(&["structure", "-"], Some(&doc));
    let v = stdout_json(&out);
    assert_eq!(
        v["structure"],
        serde_json::json!(["SO(3)", "O(2)", "SO(3)", "O(2)", "SO(3)", "O(2)", "O(2)"])
    );
}

#[test]
fn decompose_idti_has_vanishing_h_a_and_h4() {
    let doc = idti_doc();
    let out = exela(&["decompose", "--scheme", "cghd", "-"], Some(&doc));
    let v = stdout_json(&out);
    let d = &v["decomposition"];
    let norm2 = |m: &serde_json::Value| -> f64 {
        m.as_array()
            .unwrap()
            .iter()
            .flat_map(|r| r.as_array().unwrap())
            .map(|x| x.as_f64().unwrap().powi(2))
            .sum()
    };
    assert!(norm2(&d["h_a"]).sqrt() < 1e-9);
    assert!(norm2(&d["h4_kelvin"]).sqrt() < 1e-9);
    assert!(norm2(&d["h_b"]).sqrt() > 1.0);
}

#[test]
fn invert_flips_role_and_inverts() {
    let doc = idti_doc();
    let out = exela(&["invert", "-"], Some(&doc));
    let v = stdout_json(&out);
    assert_eq!(v["role"], serde_json::json!("compliance"));
    // invert twice returns the original matrix within tolerance
    let text = serde_json::to_string(&v).unwrap();
    let out2 = exela(&["invert", "-"], Some(&text));
    let v2 = stdout_json(&out2);
    let k = v2["kelvin"].as_array().unwrap();
    assert!((k[2][2].as_f64().unwrap() - 450.0).abs() < 1e-9);
    assert_eq!(v2["role"], serde_json::json!("stiffness"));
}

#[test]
fn young_csv_is_byte_stable() {
    let out = exela(&["normal-form", "iyti", "0.1", "-0.02", "-0.03"], None);
    let doc = String::from_utf8(out.stdout).unwrap();
    let run1 = exela(
        &["young", "--grid", "3,4", "--format", "csv", "-"],
        Some(&doc),
    );
    let run2 = exela(
        &["young", "--grid", "3,4", "--format", "csv", "-"],
        Some(&doc),
    );
    assert!(run1.status.success());
    assert_eq!(run1.stdout, run2.stdout);
    let text = String::from_utf8(run1.stdout).unwrap();
    assert!(text.starts_with("theta,phi,E\n"));
    assert_eq!(text.lines().count(), 13);
    // isotropic directional modulus: all samples identical
    let values: Vec<f64> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(2).unwrap().parse().unwrap())
        .collect();
    for v in &values {
        assert!((v - values[0]).abs() < 1e-12 * values[0].abs());
    }
}

#[test]
fn project_recovers_structure_and_is_seed_deterministic() {
    // a rotated UTI tensor: distance to the UTI structure is ~0
    let uti = exela(&["normal-form", "uti", "350", "200", "250", "60"], None);
    let doc = String::from_utf8(uti.stdout).unwrap();
    let args = ["project", "--target", "UTI", "--seed", "5", "-"];
    let run1 = exela(&args, Some(&doc));
    let run2 = exela(&args, Some(&doc));
    assert_eq!(run1.stdout, run2.stdout);
    let v = stdout_json(&run1);
    assert!(v["relative_distance"].as_f64().unwrap() < 1e-8);
    assert_eq!(v["target"], serde_json::json!("O(2)^e_2"));
}

#[test]
fn validation_errors_exit_2() {
    // asymmetric matrix
    let bad = serde_json::json!({
        "version": 1, "role": "stiffness",
        "kelvin": [
            [1.0, 0.5, 0.0, 0.0, 0.0, 0.0],
            [0.4, 1.0, 0.0, 0.0, 0.0, 0.0],
            [0.0, 0.0, 1.0, 0.0, 0.0, 0.0],
            [0.0, 0.0, 0.0, 1.0, 0.0, 0.0],
            [0.0, 0.0, 0.0, 0.0, 1.0, 0.0],
            [0.0, 0.0, 0.0, 0.0, 0.0, 1.0],
        ],
    })
    .to_string();
    let out = exela(&["eig", "-"], Some(&bad));
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("asymmetric"));

    // unknown class label
    let out = exela(&["clips", "Q5", "O(2)"], None);
    assert_eq!(out.status.code(), Some(2));

    // enumerate below orthotropy is out of scope
    let out = exela(&["enumerate", "D2"], None);
    assert_eq!(out.status.code(), Some(2));

    // csv not available for this command
    let doc = idti_doc();
    let out = exela(&["eig", "--format", "csv", "-"], Some(&doc));
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn numerical_errors_exit_3() {
    // a singular matrix cannot be inverted
    let singular = serde_json::json!({
        "version": 1, "role": "stiffness",
        "kelvin": [
            [1.0, 0.0, 0.0, 0.0, 0.0, 0.0],
            [0.0, 1.0, 0.0, 0.0, 0.0, 0.0],
            [0.0, 0.0, 1.0, 0.0, 0.0, 0.0],
            [0.0, 0.0, 0.0, 1.0, 0.0, 0.0],
            [0.0, 0.0, 0.0, 0.0, 1.0, 0.0],
            [0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        ],
    })
    .to_string();
    let out = exela(&["invert", "-"], Some(&singular));
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("singular"));
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("exela-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("clips.json");
    let out = exela(&["clips", "O", "O", "--out", path.to_str().unwrap()], None);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["classes"].as_array().unwrap().len(), 8);
    std::fs::remove_dir_all(&dir).ok();
}
