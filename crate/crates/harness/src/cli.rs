//! The `bwv` command line.
//!
//! Exit codes: 0 when nothing failed, 1 when a check failed (or a cache
//! entry did not reproduce), 2 for usage errors and violated preconditions.

use crate::{run_exact_with, run_numeric_with, ExactOptions, HarnessError, NumericOptions, Report};
use besselnum::{MomentCache, MomentKey, MomentKind};
use brmatrices::{matrix_json, FamilyName, MatrixFamily};
use clap::{Args, Parser, Subcommand};
use exactalg::parse_q;
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "bwv",
    version,
    about = "Bessel moments, Wrońskians and Vanhove operators: exact and numeric checks"
)]
pub struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the coefficients ℓ_{m,j}(u) of the Vanhove operator.
    Vanhove {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        json: bool,
    },
    /// Print a named matrix (see README for the names).
    Matrix {
        name: String,
        #[arg(long)]
        k: usize,
        /// Evaluate at a rational point P/Q.
        #[arg(long)]
        u: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Evaluate one Bessel moment.
    Moment {
        /// IKM, IvKM, IKvM, IpKM, IKpM or IKM_LOG.
        kind: String,
        a: u32,
        b: u32,
        n: u32,
        #[arg(long)]
        u: Option<String>,
        #[arg(long, default_value_t = 50)]
        digits: u32,
        /// Bypass the moment cache.
        #[arg(long)]
        no_cache: bool,
    },
    /// Run verification suites.
    Verify {
        #[command(subcommand)]
        suite: Suite,
    },
    /// Inspect the moment cache.
    Cache {
        #[command(subcommand)]
        action: CacheAction,
    },
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    /// Also write the JSON report to FILE.
    #[arg(long, value_name = "FILE")]
    pub report: Option<PathBuf>,
    /// Print the JSON report instead of the text summary.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct NumericArgs {
    #[arg(long, default_value_t = 50)]
    pub digits: u32,
    /// Heavy checks: k = 4, log-moment relations, Ň_5 sum rules.
    #[arg(long)]
    pub extended: bool,
    /// Keep moments in memory only.
    #[arg(long)]
    pub no_cache: bool,
}

#[derive(Debug, Subcommand)]
pub enum Suite {
    Exact {
        #[arg(long, default_value_t = 5)]
        max_k: usize,
        #[command(flatten)]
        out: ReportArgs,
    },
    Numeric {
        #[arg(long, default_value_t = 3)]
        max_k: usize,
        #[command(flatten)]
        num: NumericArgs,
        #[command(flatten)]
        out: ReportArgs,
    },
    All {
        /// Largest k of the exact suite.
        #[arg(long, default_value_t = 5)]
        max_k_exact: usize,
        /// Largest k of the numeric suite.
        #[arg(long, default_value_t = 3)]
        max_k: usize,
        #[command(flatten)]
        num: NumericArgs,
        #[command(flatten)]
        out: ReportArgs,
    },
}

#[derive(Debug, Subcommand)]
pub enum CacheAction {
    Stats,
    /// Recompute cached entries (cheapest first) and compare.
    Verify {
        #[arg(long, default_value_t = 20)]
        limit: usize,
    },
    Path,
}

/// Exit code for a finished report.
pub fn exit_code(report: &Report) -> i32 {
    if report.passed() {
        EXIT_OK
    } else {
        EXIT_FAILED
    }
}

fn is_usage(e: &HarnessError) -> bool {
    use besselnum::BesselError as B;
    use brmatrices::BrError as M;
    match e {
        HarnessError::Precondition(_) | HarnessError::Usage(_) => true,
        HarnessError::Bessel(b) => matches!(
            b,
            B::UnknownKind(_) | B::InvalidKey(_) | B::Divergent(_) | B::NonPositive(_)
        ),
        HarnessError::Matrix(m) => matches!(m, M::UnknownName(_) | M::Range { .. } | M::Shape(_)),
        HarnessError::Vanhove(_) => true,
        HarnessError::Io(_) => false,
    }
}

/// Parse `argv` (including the program name) and run; output goes to the
/// given writers.
pub fn run<I, T>(argv: I, out: &mut (dyn Write + Send), err: &mut (dyn Write + Send)) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return code;
        }
    };
    let result = match cli.threads {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| dispatch(cli.command, out, err)),
            Err(e) => Err(HarnessError::Usage(format!("--threads {n}: {e}"))),
        },
        None => dispatch(cli.command, out, err),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if is_usage(&e) {
                EXIT_USAGE
            } else {
                EXIT_FAILED
            }
        }
    }
}

fn parse_u(s: &Option<String>) -> Result<Option<exactalg::ExactScalar>, HarnessError> {
    s.as_deref()
        .map(|s| parse_q(s).map_err(|e| HarnessError::Usage(format!("--u {s}: {e}"))))
        .transpose()
}

fn json_line(v: &impl serde::Serialize) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

fn open_cache(no_cache: bool) -> Result<Arc<MomentCache>, HarnessError> {
    Ok(Arc::new(if no_cache {
        MomentCache::in_memory()
    } else {
        MomentCache::open_default()?
    }))
}

fn dispatch(
    cmd: Command,
    out: &mut (dyn Write + Send),
    err: &mut (dyn Write + Send),
) -> Result<i32, HarnessError> {
    match cmd {
        Command::Vanhove { m, json } => {
            let op = vanhove::vanhove_operator(m)?;
            if json {
                let coeffs: Vec<Vec<String>> = op
                    .coeffs
                    .iter()
                    .map(|p| p.coeffs().iter().map(exactalg::format_q).collect())
                    .collect();
                let v = serde_json::json!({ "m": m, "coefficients": coeffs });
                writeln!(out, "{}", json_line(&v))?;
            } else {
                for (j, p) in op.coeffs.iter().enumerate() {
                    writeln!(out, "l[{m},{j}](u) = {p}")?;
                }
            }
        }
        Command::Matrix { name, k, u, json } => {
            let name: FamilyName = name.parse()?;
            let fam = MatrixFamily {
                name,
                k,
                u: parse_u(&u)?,
            };
            let mj = matrix_json(&fam)?;
            if json {
                writeln!(out, "{}", json_line(&mj))?;
            } else {
                writeln!(out, "{} (k = {}, over {})", mj.name, mj.k, mj.ring)?;
                for row in &mj.entries {
                    writeln!(out, "  [{}]", row.join(", "))?;
                }
            }
        }
        Command::Moment {
            kind,
            a,
            b,
            n,
            u,
            digits,
            no_cache,
        } => {
            let kind: MomentKind = kind.parse()?;
            let u = u.as_deref().map(MomentKey::parse_u).transpose()?;
            let key = MomentKey::new(kind, a, b, n, u, digits);
            let v = open_cache(no_cache)?.get_or_compute(&key)?;
            writeln!(
                out,
                "{key} = {}",
                v.to_string_radix(10, Some(digits as usize))
            )?;
        }
        Command::Verify { suite } => return verify(suite, out, err),
        Command::Cache { action } => {
            let cache = MomentCache::open_default()?;
            match action {
                CacheAction::Path => writeln!(out, "{}", cache.path().display())?,
                CacheAction::Stats => writeln!(out, "{}", json_line(&cache.stats()))?,
                CacheAction::Verify { limit } => {
                    let v = cache.verify(limit);
                    writeln!(out, "{}", json_line(&v))?;
                    if !v.mismatched.is_empty() {
                        return Ok(EXIT_FAILED);
                    }
                }
            }
        }
    }
    Ok(EXIT_OK)
}

fn numeric_opts(max_k: usize, num: &NumericArgs) -> Result<NumericOptions, HarnessError> {
    Ok(NumericOptions {
        max_k,
        digits: num.digits,
        extended: num.extended,
        cache: Some(open_cache(num.no_cache)?),
    })
}

fn verify(
    suite: Suite,
    out: &mut (dyn Write + Send),
    err: &mut (dyn Write + Send),
) -> Result<i32, HarnessError> {
    let (report, args) = match suite {
        Suite::Exact { max_k, out } => (run_exact_with(&ExactOptions::new(max_k))?, out),
        Suite::Numeric { max_k, num, out } => (run_numeric_with(&numeric_opts(max_k, &num)?)?, out),
        Suite::All {
            max_k_exact,
            max_k,
            num,
            out,
        } => {
            // Check both preconditions before doing any work.
            let opts = numeric_opts(max_k, &num)?;
            if max_k_exact < 2 {
                return Err(HarnessError::Precondition(format!(
                    "exact suite needs max_k >= 2, got {max_k_exact}"
                )));
            }
            if max_k < 2 || num.digits < 30 {
                return Err(HarnessError::Precondition(
                    "numeric suite needs max_k >= 2 and digits >= 30".into(),
                ));
            }
            let exact = run_exact_with(&ExactOptions::new(max_k_exact))?;
            (exact.merge(run_numeric_with(&opts)?), out)
        }
    };
    emit(&report, &args, out, err)
}

/// Print a report and optionally save it; returns the exit code.
pub fn emit(
    report: &Report,
    args: &ReportArgs,
    out: &mut (dyn Write + Send),
    _err: &mut (dyn Write + Send),
) -> Result<i32, HarnessError> {
    if args.json {
        writeln!(out, "{}", report.to_json())?;
    } else {
        writeln!(out, "{report}")?;
    }
    if let Some(path) = &args.report {
        std::fs::write(path, report.to_json())?;
    }
    Ok(exit_code(report))
}
