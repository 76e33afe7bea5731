use std::process::{Command, Output};

fn fuchs(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fuchs-verify"))
        .args(args)
        .env_remove("PFUCHS_PRIME")
        .env_remove("PFUCHS_SUITE")
        .output()
        .expect("binary runs")
}

#[test]
fn unitarity_passes_with_exit_zero() {
    let out = fuchs(&["--suite", "unitarity"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("PASS   unitarity"), "{text}");
}

#[test]
fn characteristic_two_is_a_config_error() {
    let out = fuchs(&["--prime", "2", "--suite", "unitarity"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(
        err.contains("characteristic 2") && err.contains("Q_2"),
        "{err}"
    );
}

#[test]
fn unknown_suite_is_rejected() {
    let out = fuchs(&["--suite", "nonsense"]);
    assert!(!out.status.success());
    assert!(String::from_utf8(out.stderr)
        .unwrap()
        .contains("unknown suite"));
}

#[test]
fn failing_check_gives_nonzero_exit() {
    // an impossible tolerance turns float checks into failures
    let out = fuchs(&["--suite", "twist-oracle", "--tolerance", "1e-300"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stdout).unwrap().contains("FAIL"));
}

#[test]
fn json_output_round_trips_and_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for path in [&a, &b] {
        let out = fuchs(&[
            "--suite",
            "xi-roundtrip",
            "--format",
            "json",
            "--seed",
            "17",
            "--omit-timing",
            "--output",
            path.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0));
    }
    let text_a = std::fs::read(&a).unwrap();
    assert_eq!(text_a, std::fs::read(&b).unwrap());
    let parsed: serde_json::Value = serde_json::from_slice(&text_a).unwrap();
    let records = parsed.as_array().unwrap();
    assert_eq!(records.len(), 2);
    for r in records {
        assert_eq!(r["schema_version"], 1);
        assert_eq!(r["parameters"]["seed"], 17);
        assert_eq!(r["pass"], true);
        assert_eq!(r["elapsed_ms"], 0.0);
    }
    let reports = padic_fuchs::parse_reports(std::str::from_utf8(&text_a).unwrap()).unwrap();
    assert_eq!(reports[0].name, "xi-roundtrip");
}

#[test]
fn environment_overrides_flags_defaults() {
    let out = Command::new(env!("CARGO_BIN_EXE_fuchs-verify"))
        .args(["--format", "json", "--omit-timing"])
        .env("PFUCHS_PRIME", "5")
        .env("PFUCHS_SUITE", "xi-permutation")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let parsed: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(parsed[0]["parameters"]["p"], 5);
    assert_eq!(parsed[0]["name"], "xi-permutation");
}

#[test]
fn out_of_budget_is_skipped_not_failed() {
    let out = fuchs(&["--suite", "cocycle", "--budget-mb", "0"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().contains("SKIP"));
}
