//! End-to-end tests of the `verify` binary: exit-status contract,
//! JSON-lines report shape, config validation, and byte-level determinism.

use std::process::Command;

fn verify() -> Command {
    Command::new(env!("CARGO_BIN_EXE_verify"))
}

const EXACT_SUITES: [&str; 10] = [
    "orbit",
    "cocycle",
    "pentagon",
    "multunitary",
    "bar",
    "stachura",
    "matchedpair",
    "selfdual",
    "decompose",
    "deformation",
];

fn exact_args(out: &std::path::Path) -> Vec<String> {
    let mut args = vec!["--model".into(), "axb".into()];
    for s in EXACT_SUITES {
        args.push("--suite".into());
        args.push(s.into());
    }
    args.push("--samples".into());
    args.push("2000".into());
    args.push("--out".into());
    args.push(out.to_str().unwrap().into());
    args
}

#[test]
fn exact_suites_pass_with_one_line_per_suite() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("reports.jsonl");
    let status = verify().args(exact_args(&out)).status().unwrap();
    assert_eq!(status.code(), Some(0));
    let text = std::fs::read_to_string(&out).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 10, "one report line per suite:\n{text}");
    for line in &lines {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["model"], "axb");
        assert_eq!(v["failed"], 0);
        // Wall times are segregated out of the deterministic payload.
        assert_eq!(v["millis"], 0);
    }
}

#[test]
fn reruns_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let out1 = dir.path().join("a.jsonl");
    let out2 = dir.path().join("b.jsonl");
    for (out, _) in [(&out1, 0), (&out2, 1)] {
        let status = verify()
            .args([
                "--model",
                "axb",
                "--suite",
                "cocycle",
                "--suite",
                "selfdual",
                "--samples",
                "1000",
                "--out",
                out.to_str().unwrap(),
            ])
            .status()
            .unwrap();
        assert_eq!(status.code(), Some(0));
    }
    let a = std::fs::read(&out1).unwrap();
    let b = std::fs::read(&out2).unwrap();
    assert_eq!(a, b, "reports must be byte-identical across reruns");
}

#[test]
fn suite_order_does_not_change_per_suite_results() {
    let dir = tempfile::tempdir().unwrap();
    let out1 = dir.path().join("a.jsonl");
    let out2 = dir.path().join("b.jsonl");
    let run = |order: [&str; 2], out: &std::path::Path| {
        let status = verify()
            .args([
                "--model",
                "axb",
                "--suite",
                order[0],
                "--suite",
                order[1],
                "--samples",
                "1000",
                "--out",
                out.to_str().unwrap(),
            ])
            .status()
            .unwrap();
        assert_eq!(status.code(), Some(0));
    };
    run(["cocycle", "selfdual"], &out1);
    run(["selfdual", "cocycle"], &out2);
    let mut a: Vec<String> = std::fs::read_to_string(&out1)
        .unwrap()
        .lines()
        .map(String::from)
        .collect();
    let mut b: Vec<String> = std::fs::read_to_string(&out2)
        .unwrap()
        .lines()
        .map(String::from)
        .collect();
    a.sort();
    b.sort();
    assert_eq!(a, b);
}

#[test]
fn unsupported_model_suite_pair_is_status_2() {
    let output = verify()
        .args(["--model", "gl2", "--suite", "stachura"])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(2));
    assert!(!String::from_utf8_lossy(&output.stderr).is_empty());
}

#[test]
fn unknown_names_are_status_2_before_any_work() {
    for args in [
        ["--model", "axb", "--suite", "nosuch"],
        ["--model", "nomodel", "--suite", "orbit"],
    ] {
        let output = verify().args(args).output().unwrap();
        assert_eq!(output.status.code(), Some(2), "args {args:?}");
    }
}

#[test]
fn config_file_with_unknown_field_is_status_2() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cfg.json");
    std::fs::write(&path, r#"{"model":"axb","suites":["orbit"],"bogus":1}"#).unwrap();
    let output = verify()
        .args(["--config", path.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn config_file_drives_a_run() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cfg.json");
    let out = dir.path().join("r.jsonl");
    std::fs::write(
        &path,
        format!(
            r#"{{"model":"gl1","suites":["orbit","selfdual"],"samples":1000,"output":{:?}}}"#,
            out.to_str().unwrap()
        ),
    )
    .unwrap();
    let status = verify()
        .args(["--config", path.to_str().unwrap()])
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    let text = std::fs::read_to_string(&out).unwrap();
    assert_eq!(text.lines().count(), 2);
}

#[test]
fn listings_contain_registered_names() {
    let out = verify().arg("--list-models").output().unwrap();
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("axb"));
    assert!(text.contains("exoo-negative"));
    let out = verify().arg("--list-suites").output().unwrap();
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("pentagon"));
    assert!(text.contains("duflomoore"));
}

#[test]
fn negative_model_orbit_passes_with_witness() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.jsonl");
    let status = verify()
        .args([
            "--model",
            "exoo-negative",
            "--suite",
            "orbit",
            "--out",
            out.to_str().unwrap(),
        ])
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    let text = std::fs::read_to_string(&out).unwrap();
    let v: serde_json::Value = serde_json::from_str(text.lines().next().unwrap()).unwrap();
    assert_eq!(v["failed"], 0);
    assert!(v["first_fail"]
        .as_str()
        .unwrap()
        .contains("expected violation recorded"));
}

#[test]
fn deformation_run_writes_csv_side_tables() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("def.jsonl");
    let status = verify()
        .args([
            "--model",
            "gl1",
            "--suite",
            "deformation",
            "--samples",
            "1000",
            "--out",
            out.to_str().unwrap(),
        ])
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    let csv = dir.path().join("def-deformation-exact.csv");
    let text = std::fs::read_to_string(&csv).unwrap();
    assert!(text.starts_with("model,theta,"));
    // Header plus the five θ rows.
    assert_eq!(text.lines().count(), 6);
}
