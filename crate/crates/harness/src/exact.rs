//! The exact suite: operator structure, Verrill recursion, matrix
//! identities, determinant corollaries, de Rham representations, the
//! tabulated matrices and the Bessel-operator duality.  Every check is an
//! equality over `Q` or `Q(u)`.

use crate::reference::{
    betti_even_table, betti_odd_table, derham_even_table, derham_odd_table, TABLE_KS,
};
use crate::report::{timed, CheckResult, Report, RunConfig};
use crate::{run_jobs, HarnessError, Job};
use brmatrices::{
    betti_even, betti_minors, betti_odd, derham_alternatives, derham_even, derham_odd,
    mat_sigma_even, mat_sigma_even_inv_bernoulli, mat_sigma_odd, mat_sigma_odd_inv_bernoulli,
    mat_upsilon, mat_v, named_constant, verify_block_identities, BrError, ConstName, QMatrix,
};
use exactalg::{double_factorial, pow_q, q, ExactScalar};
use num_rational::BigRational;
use num_traits::Zero;
use vanhove::Report as CheckList;
use vanhove::{
    check_vanhove_structure, vanhove_operator, verify_bms_duality, verify_verrill_recursion,
};

const REF_OPERATOR: &str =
    "Vanhove operator: leading coefficient, sub-leading relation, divisibility, adjoint parity";
const REF_VERRILL: &str = "Verrill's recursion for the Vanhove operators";
const REF_BMS: &str = "Bessel symmetric-power operators: Borwein–Salvy vs Bronstein–Mulders–Weil";
const REF_SYMMETRY: &str = "Wrońskian kernels V, υ and constant matrices Σ, σ: (skew-)symmetry";
const REF_INVERSE: &str = "Bernoulli-number closed forms of Σ⁻¹ and σ⁻¹";
const REF_BLOCKS: &str = "block factorizations of Σ, σ and their inverses; recursions for 𝔖";
const REF_DET: &str = "determinant corollaries: Λ² det Σ = 1, det 𝔅, minor determinants";
const REF_DERHAM: &str =
    "de Rham matrix: anti-diagonal ((2k+1)!!/2^{k+1})² and vanishing lower anti-triangle";
const REF_ALT: &str = "alternative representations of the de Rham matrices (limits u → 0⁺, u → 1⁻)";
const REF_TABLE: &str = "tabulated Betti and de Rham matrices, k = 2..5";

/// Exact-suite parameters.
#[derive(Clone, Debug)]
pub struct ExactOptions {
    pub max_k: usize,
    /// Operators `L̃_m` checked for `m = 1..=max_m`.
    pub max_m: usize,
    pub verrill_max_m: usize,
    pub verrill_max_n: usize,
    pub bms_max_n: usize,
    pub bms_order: usize,
}

impl ExactOptions {
    pub fn new(max_k: usize) -> Self {
        ExactOptions {
            max_k,
            max_m: 9.max(2 * max_k - 1),
            verrill_max_m: 6,
            verrill_max_n: 12,
            bms_max_n: 4,
            bms_order: 14,
        }
    }
}

/// Run the exact suite with default ranges (`max_k >= 2`).
pub fn run_exact_suite(max_k: usize) -> Result<Report, HarnessError> {
    run_exact_with(&ExactOptions::new(max_k))
}

pub fn run_exact_with(opts: &ExactOptions) -> Result<Report, HarnessError> {
    if opts.max_k < 2 {
        return Err(HarnessError::Precondition(format!(
            "exact suite needs max_k >= 2, got {}",
            opts.max_k
        )));
    }
    let config = RunConfig {
        suites: vec!["exact".into()],
        max_k_exact: Some(opts.max_k),
        ..Default::default()
    };
    Ok(Report::new(config, run_jobs(exact_jobs(opts))))
}

fn from_br(id: String, refs: &[&str], r: Result<CheckList, BrError>) -> CheckResult {
    match r {
        Ok(rep) => CheckResult::from_items(id, refs, &rep),
        Err(e @ (BrError::Mismatch(_) | BrError::Shape(_))) => {
            CheckResult::exact(id, refs, false, Some(e.to_string()))
        }
        Err(e) => CheckResult::error(id, refs, e),
    }
}

fn job(
    id: String,
    refs: &'static [&'static str],
    f: impl Fn() -> Result<CheckList, BrError> + Send + Sync + 'static,
) -> Job {
    Box::new(move || timed(|| from_br(id.clone(), refs, f())))
}

fn exact_jobs(o: &ExactOptions) -> Vec<Job> {
    let mut jobs: Vec<Job> = vec![];
    for m in 1..=o.max_m {
        jobs.push(job(
            format!("exact.operator.m{m}"),
            &[REF_OPERATOR],
            move || Ok(check_vanhove_structure(&vanhove_operator(m)?)),
        ));
    }
    for m in 1..=o.verrill_max_m {
        let n = o.verrill_max_n;
        jobs.push(job(
            format!("exact.verrill.m{m}"),
            &[REF_VERRILL],
            move || Ok(verify_verrill_recursion(m, n)),
        ));
    }
    for k in 2..=o.max_k {
        jobs.push(job(
            format!("exact.symmetry.k{k}"),
            &[REF_SYMMETRY],
            move || symmetry(k),
        ));
        jobs.push(job(
            format!("exact.inverse.k{k}"),
            &[REF_INVERSE],
            move || Ok(inverses(k)),
        ));
        jobs.push(job(
            format!("exact.blocks.k{k}"),
            &[REF_BLOCKS],
            move || verify_block_identities(k),
        ));
        jobs.push(job(
            format!("exact.determinants.k{k}"),
            &[REF_DET],
            move || determinants(k),
        ));
        jobs.push(job(
            format!("exact.derham_shape.k{k}"),
            &[REF_DERHAM],
            move || derham_shape(k),
        ));
        jobs.push(job(
            format!("exact.derham_alternatives.k{k}"),
            &[REF_ALT],
            move || derham_alternatives(k).map(|a| a.report),
        ));
        if TABLE_KS.contains(&k) {
            jobs.push(job(format!("exact.table.k{k}"), &[REF_TABLE], move || {
                table(k)
            }));
        }
    }
    // The closed-form inverses also cover the degenerate k = 1 case.
    jobs.push(job("exact.inverse.k1".into(), &[REF_INVERSE], || {
        Ok(inverses(1))
    }));
    for n in 1..=o.bms_max_n {
        let order = o.bms_order;
        jobs.push(job(format!("exact.bms.n{n}"), &[REF_BMS], move || {
            Ok(verify_bms_duality(n, order)?)
        }));
    }
    jobs
}

fn symmetry(k: usize) -> Result<CheckList, BrError> {
    let mut r = CheckList::new(format!("symmetry, k = {k}"));
    r.check("V symmetric", mat_v(k)?.is_symmetric());
    r.check("υ skew-symmetric", mat_upsilon(k)?.is_skew_symmetric());
    r.check("Σ symmetric", mat_sigma_odd(k).is_symmetric());
    r.check("σ skew-symmetric", mat_sigma_even(k).is_skew_symmetric());
    r.check("𝔅 symmetric", betti_odd(k).is_symmetric());
    r.check("𝔟 skew-symmetric", betti_even(k).is_skew_symmetric());
    Ok(r)
}

fn inverses(k: usize) -> CheckList {
    let mut r = CheckList::new(format!("closed-form inverses, k = {k}"));
    r.check(
        "Σ Σ⁻¹ = I",
        mat_sigma_odd(k).mul(&mat_sigma_odd_inv_bernoulli(k)) == QMatrix::identity(2 * k - 1),
    );
    r.check(
        "σ σ⁻¹ = I",
        mat_sigma_even(k).mul(&mat_sigma_even_inv_bernoulli(k)) == QMatrix::identity(2 * k),
    );
    r
}

fn constant(name: ConstName, k: usize) -> Result<ExactScalar, BrError> {
    let c = named_constant(name, k)?;
    if !c.value.is_rational() {
        return Err(BrError::Mismatch(format!(
            "{name:?} at k = {k} is irrational"
        )));
    }
    Ok(c.value.coeff)
}

fn determinants(k: usize) -> Result<CheckList, BrError> {
    let mut r = CheckList::new(format!("determinants, k = {k}"));
    let l = constant(ConstName::LambdaOdd, k)?;
    r.check("Λ² det Σ = 1", &l * &l * mat_sigma_odd(k).det()? == q(1));
    let l = constant(ConstName::LambdaEven, k)?;
    r.check("λ² det σ = 1", &l * &l * mat_sigma_even(k).det()? == q(1));
    let d = betti_odd(k).det()?;
    r.check(
        "det 𝔅 closed form",
        d == constant(ConstName::DetBettiFormula, k)?,
    );
    let (odd, even) = betti_minors(k);
    r.check("det 𝔅 = det 𝔅^o · det 𝔅^e", d == odd.det()? * even.det()?);
    r.check(
        "det 𝔅^e closed form",
        even.det()? == constant(ConstName::DetBettiMinorEven, k)?,
    );
    if k % 2 == 1 {
        r.check("det 𝔟 = 0 for odd k", betti_even(k).det()?.is_zero());
    }
    Ok(r)
}

fn derham_shape(k: usize) -> Result<CheckList, BrError> {
    let mut r = CheckList::new(format!("de Rham shape, k = {k}"));
    let d = derham_odd(k)?;
    let e = derham_even(k)?;
    let anti =
        BigRational::from_integer(double_factorial(2 * k as i64 + 1)) / pow_q(&q(2), k as i64 + 1);
    let anti = &anti * &anti;
    let (mut diag_ok, mut zero_ok) = (true, true);
    for a in 1..=k {
        for b in 1..=k {
            if a + b == k + 1 {
                diag_ok &= d.at(a, b) == &anti;
            } else if a + b > k + 1 {
                zero_ok &= d.at(a, b).is_zero() && e.at(a, b).is_zero();
            }
        }
    }
    r.check("𝔇 symmetric", d.is_symmetric());
    r.check("𝔡 skew-symmetric", e.is_skew_symmetric());
    r.check("anti-diagonal of 𝔇", diag_ok);
    r.check("lower anti-triangles of 𝔇, 𝔡 vanish", zero_ok);
    Ok(r)
}

fn table(k: usize) -> Result<CheckList, BrError> {
    let mut r = CheckList::new(format!("table, k = {k}"));
    let cmp = |got: QMatrix, want: Option<QMatrix>| want.is_some_and(|w| w == got);
    r.check("𝔅_k", cmp(betti_odd(k), betti_odd_table(k)));
    r.check("𝔟_k", cmp(betti_even(k), betti_even_table(k)));
    r.check("𝔇_k", cmp(derham_odd(k)?, derham_odd_table(k)));
    r.check("𝔡_k", cmp(derham_even(k)?, derham_even_table(k)));
    Ok(r)
}
