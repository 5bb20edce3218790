//! Verification harness: the exact and numeric suites, their JSON reports,
//! and the `bwv` command-line front end.
//!
//! A suite is a list of independent jobs, each producing one
//! [`CheckResult`]; jobs run on the rayon pool and results are kept in
//! submission order so reports are reproducible.

pub mod cli;
mod exact;
mod numeric;
pub mod reference;
mod report;

pub use exact::{run_exact_suite, run_exact_with, ExactOptions};
pub use numeric::{run_numeric_suite, run_numeric_with, NumericOptions};
pub use report::{timed, CheckResult, Report, RunConfig, Status, Summary, SCHEMA_VERSION};

use rayon::prelude::*;

#[derive(Debug, thiserror::Error)]
pub enum HarnessError {
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("usage: {0}")]
    Usage(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Bessel(#[from] besselnum::BesselError),
    #[error(transparent)]
    Matrix(#[from] brmatrices::BrError),
    #[error(transparent)]
    Vanhove(#[from] vanhove::VanhoveError),
}

/// A deferred check.
pub type Job = Box<dyn Fn() -> CheckResult + Send + Sync>;

/// Run jobs in parallel, returning results in submission order.
pub fn run_jobs(jobs: Vec<Job>) -> Vec<CheckResult> {
    jobs.par_iter().map(|j| j()).collect()
}
