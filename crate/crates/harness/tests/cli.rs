//! The `bwv` exit-code contract and output formats.

use harness::cli::{exit_code, run, EXIT_FAILED, EXIT_OK, EXIT_USAGE};
use harness::{CheckResult, Report, RunConfig, Status};
use proptest::prelude::*;
use std::process::Command;

fn bwv(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("bwv").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

#[test]
fn matrix_json_has_table_entries() {
    let (code, out, _) = bwv(&["matrix", "betti_B", "--k", "2", "--json"]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["entries"][0][0], "1/80");
    assert_eq!(v["entries"][1][1], "-3/64");
}

#[test]
fn matrix_at_a_point_and_text_output() {
    let (code, out, _) = bwv(&["matrix", "beta", "--k", "2", "--u", "1/2"]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert!(out.contains("[1, 0]"), "{out}");
}

#[test]
fn moment_prints_classical_value() {
    let (code, out, _) = bwv(&[
        "moment",
        "IKM",
        "1",
        "2",
        "1",
        "--digits",
        "40",
        "--no-cache",
    ]);
    assert_eq!(code, EXIT_OK);
    // π/(3√3) = 0.6045997880780726168646927525473852...
    assert!(out.contains("6.04599788078072616864692752547385"), "{out}");
}

#[test]
fn vanhove_leading_coefficient() {
    let (code, out, _) = bwv(&["vanhove", "--m", "3", "--json"]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    // ℓ_{3,3} = u²(u-4)(u-16) = 64u² - 20u³ + u⁴
    assert_eq!(
        v["coefficients"][3],
        serde_json::json!(["0", "0", "64", "-20", "1"])
    );
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["frobnicate"][..],
        &["matrix", "Xi", "--k", "2"],
        &["matrix", "betti_B"],
        &["matrix", "betti_B", "--k", "2", "--u", "one half"],
        &["moment", "IKM", "1", "1", "1", "--no-cache"],
        &["moment", "IXM", "1", "2", "1", "--no-cache"],
        &["moment", "IvKM", "1", "4", "1", "--no-cache"],
        &["verify", "exact", "--max-k", "1"],
        &[
            "verify",
            "numeric",
            "--max-k",
            "2",
            "--digits",
            "20",
            "--no-cache",
        ],
        &["verify", "all", "--max-k-exact", "1", "--no-cache"],
    ] {
        let (code, _, err) = bwv(args);
        assert_eq!(code, EXIT_USAGE, "{args:?}: {err}");
        assert!(!err.is_empty());
    }
}

#[test]
fn help_exits_zero() {
    let (code, out, _) = bwv(&["--help"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("verify"));
}

#[test]
fn verify_exact_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let (code, out, _) = bwv(&[
        "--threads",
        "2",
        "verify",
        "exact",
        "--max-k",
        "2",
        "--report",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, EXIT_OK, "{out}");
    let r = Report::from_json(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert!(r.passed());
    assert_eq!(r.summary.total, r.checks.len());
    assert_eq!(r.config.max_k_exact, Some(2));
    assert!(r
        .checks
        .iter()
        .all(|c| !c.refs.is_empty() && c.residual.is_none()));
}

#[test]
fn binary_uses_cache_env() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m.jsonl");
    let exe = env!("CARGO_BIN_EXE_bwv");
    let o = Command::new(exe)
        .args(["cache", "path"])
        .env("BWV_CACHE", &path)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        String::from_utf8_lossy(&o.stdout).trim(),
        path.display().to_string()
    );

    let o = Command::new(exe)
        .args(["moment", "IKM", "1", "3", "1", "--digits", "30"])
        .env("BWV_CACHE", &path)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    let o = Command::new(exe)
        .args(["cache", "stats"])
        .env("BWV_CACHE", &path)
        .output()
        .unwrap();
    let stats: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(stats["entries"], 1);
    let o = Command::new(exe)
        .args(["cache", "verify"])
        .env("BWV_CACHE", &path)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));

    let o = Command::new(exe)
        .args(["verify", "numeric", "--max-k", "0"])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn corrupted_cache_entry_fails_verification() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m.jsonl");
    let line = r#"{"kind":"IKM","a":1,"b":2,"n":1,"u":null,"digits":30,"value":"0.5"}"#;
    std::fs::write(&path, format!("{line}\n")).unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_bwv"))
        .args(["cache", "verify"])
        .env("BWV_CACHE", &path)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
}

fn status() -> impl Strategy<Value = Status> {
    prop_oneof![
        Just(Status::Pass),
        Just(Status::Fail),
        Just(Status::Skipped),
        Just(Status::Error)
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Exit 0 exactly when no check failed or errored, whatever else is in
    /// the report; the JSON form round-trips.
    #[test]
    fn exit_code_contract(statuses in prop::collection::vec(status(), 0..12), seed in 0u64..1000) {
        let checks: Vec<CheckResult> = statuses.iter().enumerate().map(|(i, s)| {
            let mut c = if i % 2 == 0 {
                CheckResult::exact(format!("c{i}"), &["anchor"], true, None)
            } else {
                CheckResult::numeric(format!("c{i}"), &["anchor"], format!("{seed}e-50"), 50, true)
            };
            c.status = *s;
            c
        }).collect();
        let bad = statuses.iter().any(|s| matches!(s, Status::Fail | Status::Error));
        let r = Report::new(RunConfig::default(), checks);
        prop_assert_eq!(exit_code(&r), if bad { EXIT_FAILED } else { EXIT_OK });
        let s = &r.summary;
        prop_assert_eq!(s.pass + s.fail + s.skipped + s.error, s.total);
        prop_assert_eq!(Report::from_json(&r.to_json()).unwrap(), r);
    }
}
