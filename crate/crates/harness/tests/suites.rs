//! Suite preconditions, report invariants and reproducibility.

use besselnum::MomentCache;
use harness::{run_exact_suite, run_numeric_with, HarnessError, NumericOptions, Report, Status};
use std::sync::Arc;

#[test]
fn exact_suite_small_k() {
    assert!(matches!(
        run_exact_suite(1),
        Err(HarnessError::Precondition(_))
    ));
    let r = run_exact_suite(3).unwrap();
    assert!(r.passed(), "{r}");
    assert_eq!(r.summary.pass, r.checks.len());
    assert!(r.get("exact.table.k3").is_some());
    assert!(r.get("exact.bms.n4").is_some());
    assert_eq!(Report::from_json(&r.to_json()).unwrap(), r);
}

#[test]
fn numeric_preconditions() {
    assert!(matches!(
        run_numeric_with(&NumericOptions::new(1, 50)),
        Err(HarnessError::Precondition(_))
    ));
    assert!(matches!(
        run_numeric_with(&NumericOptions::new(2, 29)),
        Err(HarnessError::Precondition(_))
    ));
}

#[test]
fn numeric_suite_reproducible_with_warm_cache() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("moments.jsonl");
    let run = || {
        let cache = Arc::new(MomentCache::open(&path).unwrap());
        let opts = NumericOptions {
            cache: Some(cache),
            ..NumericOptions::new(2, 30)
        };
        run_numeric_with(&opts).unwrap()
    };
    let cold = run();
    assert!(cold.passed(), "{cold}");
    for c in &cold.checks {
        assert_eq!(c.status, Status::Pass);
        assert!(
            c.residual.is_some() && c.digits == Some(30) && !c.refs.is_empty(),
            "{c}"
        );
    }
    let warm = run();
    assert_eq!(cold.without_timings(), warm.without_timings());
}
