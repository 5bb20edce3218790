//! Machine-readable check results and suite reports.

use serde::{Deserialize, Serialize};
use std::fmt;
use std::time::Instant;

/// Bumped whenever a field changes meaning; readers ignore unknown fields.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
    Error,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIP",
            Status::Error => "ERROR",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub check_id: String,
    pub status: Status,
    /// Present exactly for numeric checks.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub residual: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub digits: Option<u32>,
    pub runtime_ms: u64,
    pub refs: Vec<String>,
    /// Mismatch description for failed exact checks, or the error message.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl CheckResult {
    pub fn exact(
        id: impl Into<String>,
        refs: &[&str],
        passed: bool,
        detail: Option<String>,
    ) -> Self {
        CheckResult {
            check_id: id.into(),
            status: if passed { Status::Pass } else { Status::Fail },
            residual: None,
            digits: None,
            runtime_ms: 0,
            refs: refs.iter().map(|s| s.to_string()).collect(),
            detail,
        }
    }

    pub fn numeric(
        id: impl Into<String>,
        refs: &[&str],
        residual: String,
        digits: u32,
        passed: bool,
    ) -> Self {
        CheckResult {
            residual: Some(residual),
            digits: Some(digits),
            ..Self::exact(id, refs, passed, None)
        }
    }

    pub fn error(id: impl Into<String>, refs: &[&str], msg: impl fmt::Display) -> Self {
        CheckResult {
            status: Status::Error,
            ..Self::exact(id, refs, false, Some(msg.to_string()))
        }
    }

    pub fn skipped(id: impl Into<String>, refs: &[&str], why: impl Into<String>) -> Self {
        CheckResult {
            status: Status::Skipped,
            ..Self::exact(id, refs, false, Some(why.into()))
        }
    }

    /// Fold a list of exact sub-checks into one result.
    pub fn from_items(id: impl Into<String>, refs: &[&str], rep: &vanhove::Report) -> Self {
        let failures: Vec<String> = rep
            .failures()
            .map(|i| {
                if i.detail.is_empty() {
                    i.label.clone()
                } else {
                    format!("{} ({})", i.label, i.detail)
                }
            })
            .collect();
        let detail = (!failures.is_empty()).then(|| failures.join("; "));
        Self::exact(
            id,
            refs,
            rep.items.iter().all(|i| i.passed) && !rep.items.is_empty(),
            detail,
        )
    }

    pub fn is_failure(&self) -> bool {
        matches!(self.status, Status::Fail | Status::Error)
    }
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}", self.status, self.check_id)?;
        if let Some(r) = &self.residual {
            write!(f, "  residual {r}")?;
        }
        write!(f, "  ({} ms)", self.runtime_ms)?;
        if let Some(d) = &self.detail {
            write!(f, "  {d}")?;
        }
        Ok(())
    }
}

/// Run `f` and stamp its wall-clock time onto the result.
pub fn timed(f: impl FnOnce() -> CheckResult) -> CheckResult {
    let t = Instant::now();
    let mut r = f();
    r.runtime_ms = t.elapsed().as_millis() as u64;
    r
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub suites: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_k_exact: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_k_numeric: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub digits: Option<u32>,
    #[serde(default)]
    pub extended: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub threads: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cache: Option<String>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
    pub error: usize,
}

impl Summary {
    pub fn tally(checks: &[CheckResult]) -> Self {
        let mut s = Summary {
            total: checks.len(),
            ..Default::default()
        };
        for c in checks {
            match c.status {
                Status::Pass => s.pass += 1,
                Status::Fail => s.fail += 1,
                Status::Skipped => s.skipped += 1,
                Status::Error => s.error += 1,
            }
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    /// Tool version.
    pub version: String,
    #[serde(default)]
    pub schema: u32,
    pub config: RunConfig,
    pub checks: Vec<CheckResult>,
    pub summary: Summary,
}

impl Report {
    pub fn new(config: RunConfig, checks: Vec<CheckResult>) -> Self {
        let summary = Summary::tally(&checks);
        Report {
            version: env!("CARGO_PKG_VERSION").to_string(),
            schema: SCHEMA_VERSION,
            config,
            checks,
            summary,
        }
    }

    /// Concatenate two reports; the configuration of `self` is merged with
    /// whatever `other` sets.
    pub fn merge(mut self, other: Report) -> Report {
        let c = &mut self.config;
        c.suites.extend(other.config.suites);
        c.max_k_exact = c.max_k_exact.or(other.config.max_k_exact);
        c.max_k_numeric = c.max_k_numeric.or(other.config.max_k_numeric);
        c.digits = c.digits.or(other.config.digits);
        c.extended |= other.config.extended;
        self.checks.extend(other.checks);
        Report::new(self.config, self.checks)
    }

    pub fn passed(&self) -> bool {
        self.summary.fail == 0 && self.summary.error == 0
    }

    pub fn get(&self, id: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.check_id == id)
    }

    /// All checks whose id starts with `prefix`.
    pub fn with_prefix<'a>(
        &'a self,
        prefix: &'a str,
    ) -> impl Iterator<Item = &'a CheckResult> + 'a {
        self.checks
            .iter()
            .filter(move |c| c.check_id.starts_with(prefix))
    }

    /// The same report with timings zeroed, for comparing runs.
    pub fn without_timings(&self) -> Report {
        let mut r = self.clone();
        for c in &mut r.checks {
            c.runtime_ms = 0;
        }
        r
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        let s = &self.summary;
        write!(
            f,
            "{} checks: {} pass, {} fail, {} skipped, {} error",
            s.total, s.pass, s.fail, s.skipped, s.error
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn summary_counts_and_unknown_fields() {
        let checks = vec![
            CheckResult::exact("a", &["x"], true, None),
            CheckResult::numeric("b", &["x"], "1e-3".into(), 30, false),
            CheckResult::skipped("c", &["x"], "not requested"),
        ];
        let r = Report::new(RunConfig::default(), checks);
        assert_eq!(
            r.summary,
            Summary {
                total: 3,
                pass: 1,
                fail: 1,
                skipped: 1,
                error: 0
            }
        );
        assert!(!r.passed());
        let mut v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        v["future_field"] = serde_json::json!([1, 2]);
        v["checks"][0]["extra"] = serde_json::json!("ignored");
        assert_eq!(Report::from_json(&v.to_string()).unwrap(), r);
    }
}
