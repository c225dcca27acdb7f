use std::io::Write;
use std::process::{Command, Stdio};

use serde_json::Value;

const BIN: &str = env!("CARGO_BIN_EXE_toric");

fn toric(args: &[&str], stdin: &str) -> (i32, String, String) {
    let mut child = Command::new(BIN)
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn toric");
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    let out = child.wait_with_output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn builder(name: &str) -> String {
    let (code, out, _) = toric(&["builders", name], "");
    assert_eq!(code, 0);
    out
}

fn no_floats(v: &Value) -> bool {
    match v {
        Value::Number(n) => !n.is_f64(),
        Value::Array(a) => a.iter().all(no_floats),
        Value::Object(o) => o.values().all(no_floats),
        _ => true,
    }
}

#[test]
fn payne_certificate_from_pipe() {
    let (code, out, _) = toric(
        &[
            "certify",
            "-",
            "--wall",
            "(1,-1,-1),(1,-1,2)",
            "--degree",
            "1,-1,0",
        ],
        &builder("payne"),
    );
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["valid"], true);
    assert_eq!(v["sigma1"]["dim_f"], 0);
    assert_eq!(v["sigma2"]["dim_f"], 0);
    assert_eq!(v["tau"]["dim_f"], 1);
    assert!(no_floats(&v));
}

#[test]
fn octahedron_is_line_bundle_branch() {
    let (code, out, _) = toric(&["dichotomy", "-"], &builder("octahedron"));
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["branch"], "line_bundle");
}

#[test]
fn cube_search_exhausted_at_radius_zero() {
    let (code, out, err) = toric(&["dichotomy", "-", "--radius", "0"], &builder("cube"));
    assert_eq!(code, 2);
    assert!(out.is_empty());
    let v: Value = serde_json::from_str(&err).unwrap();
    assert_eq!(v["error"], "SearchExhausted");
    assert_eq!(v["exit_code"], 2);
}

#[test]
fn malformed_input_reports_json_error() {
    let (code, out, err) = toric(&["validate", "-"], "{\"rank\": 3,");
    assert_eq!(code, 1);
    assert!(out.is_empty());
    let v: Value = serde_json::from_str(&err).unwrap();
    assert_eq!(v["error"], "Parse");
}

#[test]
fn invalid_fan_fails_validation() {
    let fan = r#"{"rank": 2, "rays": [[1,0],[0,1],[1,1]], "maximal_cones": [[0,1],[0,2]]}"#;
    let (code, out, _) = toric(&["validate", "-"], fan);
    assert_eq!(code, 1);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["valid"], false);
}

#[test]
fn builders_round_trip_through_validate() {
    for name in ["cube", "octahedron", "payne"] {
        let fan = builder(name);
        let (code, out, _) = toric(&["validate", "-"], &fan);
        assert_eq!(code, 0, "{name}");
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["valid"], true);
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("fan.json");
        std::fs::write(&path, &fan).unwrap();
        let (code, from_file, _) = toric(&["stats", path.to_str().unwrap()], "");
        assert_eq!(code, 0);
        let (_, from_pipe, _) = toric(&["stats", "-"], &fan);
        assert_eq!(from_file, from_pipe);
    }
}

#[test]
fn output_file_gets_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("cpl.json");
    let (code, stdout, _) = toric(
        &["cpl", "-", "-o", out.to_str().unwrap()],
        &builder("octahedron"),
    );
    assert_eq!(code, 0);
    assert!(stdout.is_empty());
    let result: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(result["dim"], 6);
    let manifest_path = dir.path().join("cpl.json.manifest.json");
    let m: Value = serde_json::from_str(&std::fs::read_to_string(manifest_path).unwrap()).unwrap();
    assert_eq!(m["tool"], "toric");
    assert_eq!(m["command"], "cpl");
    assert_eq!(m["input_sha256"].as_str().unwrap().len(), 64);
    assert!(m["wall_clock_ms"].is_u64());
}

#[test]
fn repeated_runs_are_identical() {
    let fan = builder("payne");
    let cmds: [&[&str]; 4] = [
        &["stats", "-"],
        &["multival", "-"],
        &["dichotomy", "-"],
        &["fdim", "-", "--cone", "tau", "--degree", "1,-1,0"],
    ];
    for args in cmds {
        let first = toric(args, &fan);
        assert_eq!(first.0, 0, "{args:?}: {}", first.2);
        assert!(
            no_floats(&serde_json::from_str(&first.1).unwrap()),
            "{args:?}"
        );
        assert_eq!(toric(args, &fan), first, "{args:?}");
    }
}
