//! The numeric suite: Broadhurst–Roberts quadratic relations, the
//! off-shell Wrońskian relation, Broadhurst–Mellit determinants, sum rules
//! and special values, all checked at a requested decimal precision.
//!
//! Every check reduces to one residual (relative for scalars, max-abs for
//! matrices with O(1) entries) compared against `10^{-(digits-10)}`.

use crate::report::{timed, CheckResult, Report, RunConfig};
use crate::{run_jobs, HarnessError, Job};
use besselnum::{
    bologna, ibp_residuals, pi_half_pow, q_to_float, residual, tolerance, Evaluator, MomentCache,
    MomentKind, NumMatrix,
};
use brmatrices::{
    aux_matrix, betti_even, betti_even_ring, betti_odd, betti_odd_ring, derham_even,
    derham_even_ring, derham_odd, derham_odd_ring, mat_sigma_odd, mat_sigma_odd_inv_bernoulli,
    mat_v, named_constant, AuxName, ConstName, Surd,
};
use exactalg::{double_factorial, qr};
use num_rational::BigRational;
use num_traits::{One, Signed};
use rug::float::Constant;
use rug::ops::Pow;
use rug::Float;
use std::fmt;
use std::sync::Arc;

const REF_QUADRATIC: &str = "quadratic relation M̌_k𝔇_kM̌_kᵀ = 𝔅_k, Ň_k𝔡_kŇ_kᵀ = 𝔟_k";
const REF_OFFSHELL: &str = "off-shell Wrońskian relation Ω̌ΣΩ̌ᵀ = V⁻¹/|𝔪| and det Ω̌ = Λ/|𝔪|^{k-1/2}";
const REF_BM: &str = "Broadhurst–Mellit determinant formulas for M_k and N_k";
const REF_REFLECTION: &str = "reflection formula for minor determinants";
const REF_SUM_RULES: &str = "sum rules for Ň_3 (and the linear ones for Ň_5)";
const REF_SEVEN: &str = "seven-Bessel relation read off from M̌_3 = 𝔅_3 cof M̌_3 / det M̌_3 · 𝔇_3⁻¹";
const REF_BOLOGNA: &str = "M̌_2 through the Bologna constant";
const REF_CLASSICAL: &str = "classical evaluation IKM(1,2;1) = π/(3√3)";
const REF_IBP: &str = "integration-by-parts relations among on-shell moments";
const REF_BLOCKS: &str = "on-shell block structure β(1)Ω̌(1)A = [[M̌ᵀ, 0], [m̌́ᵀ, -M̌_{k-1}ᵀ]]";
const REF_LOG: &str = "log-moment relations M̌𝔇̊M̌ᵀ = π𝔅̊ + M̊𝔇M̌ᵀ - M̌𝔇M̊ᵀ (and the Ň analogue)";

/// Numeric-suite parameters.
#[derive(Clone)]
pub struct NumericOptions {
    pub max_k: usize,
    pub digits: u32,
    /// Heavy checks: k = 4 relations and determinants, log-moment
    /// relations, the Ň_5 linear sum rules.
    pub extended: bool,
    pub cache: Option<Arc<MomentCache>>,
}

impl fmt::Debug for NumericOptions {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("NumericOptions")
            .field("max_k", &self.max_k)
            .field("digits", &self.digits)
            .field("extended", &self.extended)
            .field(
                "cache",
                &self.cache.as_ref().map(|c| c.path().display().to_string()),
            )
            .finish()
    }
}

impl NumericOptions {
    pub fn new(max_k: usize, digits: u32) -> Self {
        NumericOptions {
            max_k,
            digits,
            extended: false,
            cache: None,
        }
    }
}

/// Run the numeric suite with a process-local moment cache.
pub fn run_numeric_suite(max_k: usize, digits: u32) -> Result<Report, HarnessError> {
    run_numeric_with(&NumericOptions::new(max_k, digits))
}

pub fn run_numeric_with(opts: &NumericOptions) -> Result<Report, HarnessError> {
    if opts.max_k < 2 {
        return Err(HarnessError::Precondition(format!(
            "numeric suite needs max_k >= 2, got {}",
            opts.max_k
        )));
    }
    if opts.digits < 30 {
        return Err(HarnessError::Precondition(format!(
            "numeric suite needs digits >= 30, got {}",
            opts.digits
        )));
    }
    let cache = opts
        .cache
        .clone()
        .unwrap_or_else(|| Arc::new(MomentCache::in_memory()));
    let ev = Evaluator::new(opts.digits).with_cache(cache.clone());
    let config = RunConfig {
        suites: vec!["numeric".into()],
        max_k_numeric: Some(opts.max_k),
        digits: Some(opts.digits),
        extended: opts.extended,
        cache: cache
            .is_persistent()
            .then(|| cache.path().display().to_string()),
        ..Default::default()
    };
    Ok(Report::new(config, run_jobs(numeric_jobs(opts, ev))))
}

type Num = besselnum::Result<Float>;

fn fmt_residual(r: &Float) -> String {
    if r.is_zero() {
        "0".into()
    } else {
        r.to_string_radix(10, Some(3))
    }
}

/// One numeric check from a residual computation.
fn job(
    ev: &Evaluator,
    id: String,
    refs: &'static [&'static str],
    f: impl Fn(&Evaluator) -> Num + Send + Sync + 'static,
) -> Job {
    let ev = ev.clone();
    Box::new(move || {
        timed(|| match f(&ev) {
            Ok(r) => {
                let ok = r.is_finite() && r < tolerance(ev.digits);
                CheckResult::numeric(id.clone(), refs, fmt_residual(&r), ev.digits, ok)
            }
            Err(e) => CheckResult::error(id.clone(), refs, e),
        })
    })
}

fn numeric_jobs(o: &NumericOptions, ev: Evaluator) -> Vec<Job> {
    let mut jobs = vec![];
    let det_max = if o.extended { o.max_k.max(4) } else { o.max_k };
    for k in 1..=det_max as u32 {
        jobs.push(job(
            &ev,
            format!("numeric.bm_det.M.k{k}"),
            &[REF_BM],
            move |ev| bm_det(ev, k, true),
        ));
        jobs.push(job(
            &ev,
            format!("numeric.bm_det.N.k{k}"),
            &[REF_BM],
            move |ev| bm_det(ev, k, false),
        ));
    }
    let quad_max = if o.extended {
        o.max_k.max(4)
    } else {
        o.max_k.min(3)
    };
    for k in 2..=quad_max as u32 {
        jobs.push(job(
            &ev,
            format!("numeric.quadratic.M.k{k}"),
            &[REF_QUADRATIC],
            move |ev| quadratic(ev, k, true),
        ));
        jobs.push(job(
            &ev,
            format!("numeric.quadratic.N.k{k}"),
            &[REF_QUADRATIC],
            move |ev| quadratic(ev, k, false),
        ));
    }
    for (tag, u) in [("1_4", qr(1, 4)), ("1_2", qr(1, 2))] {
        for part in [OffShell::Relation, OffShell::Transposed, OffShell::Det] {
            let u = u.clone();
            jobs.push(job(
                &ev,
                format!("numeric.offshell.k2.u{tag}.{}", part.tag()),
                &[REF_OFFSHELL],
                move |ev| off_shell(ev, 2, &u, part),
            ));
        }
    }
    for k in [2u32, 3] {
        jobs.push(job(
            &ev,
            format!("numeric.reflection.k{k}"),
            &[REF_REFLECTION],
            move |ev| reflection(ev, k),
        ));
    }
    for rule in [N3Rule::First, N3Rule::Second, N3Rule::Det] {
        jobs.push(job(
            &ev,
            format!("numeric.sum_rule.N3.{}", rule.tag()),
            &[REF_SUM_RULES],
            move |ev| n3_rule(ev, rule),
        ));
    }
    jobs.push(job(
        &ev,
        "numeric.seven_bessel".into(),
        &[REF_SEVEN],
        seven_bessel,
    ));
    for (a, b) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
        jobs.push(job(
            &ev,
            format!("numeric.bologna.M2.{a}{b}"),
            &[REF_BOLOGNA],
            move |ev| bologna_entry(ev, a, b),
        ));
    }
    jobs.push(job(
        &ev,
        "numeric.classical.IKM_1_2_1".into(),
        &[REF_CLASSICAL],
        classical,
    ));
    for k in 2..=o.max_k as u32 {
        jobs.push(job(
            &ev,
            format!("numeric.ibp.k{k}"),
            &[REF_IBP],
            move |ev| ibp(ev, k),
        ));
    }
    for part in [
        Block::TopLeft,
        Block::TopRight,
        Block::BottomLeft,
        Block::BottomRight,
    ] {
        jobs.push(job(
            &ev,
            format!("numeric.block_structure.k2.{}", part.tag()),
            &[REF_BLOCKS],
            move |ev| block_structure(ev, 2, part),
        ));
    }
    if o.extended {
        for k in [2u32, 3] {
            jobs.push(job(
                &ev,
                format!("numeric.log_relation.M.k{k}"),
                &[REF_LOG],
                move |ev| log_relation(ev, k, true),
            ));
            jobs.push(job(
                &ev,
                format!("numeric.log_relation.N.k{k}"),
                &[REF_LOG],
                move |ev| log_relation(ev, k, false),
            ));
        }
        for rule in 0..7 {
            jobs.push(job(
                &ev,
                format!("numeric.sum_rule.N5.{}", rule + 1),
                &[REF_SUM_RULES],
                move |ev| n5_rule(ev, rule),
            ));
        }
    }
    jobs
}

fn pi_pow(e2: i32, prec: u32) -> Float {
    pi_half_pow(e2, prec)
}

fn surd_to_float(s: &Surd, prec: u32) -> Float {
    let c = q_to_float(&s.coeff, prec);
    let r = Float::with_val(
        prec,
        rug::Integer::from_str_radix(&s.radicand.to_str_radix(16), 16).expect("hex"),
    )
    .sqrt();
    c * r * pi_pow(s.pi_half as i32, prec)
}

/// `det M_k = ∏ (2j)^{k-j} π^j / √((2j+1)^{2j+1})` and
/// `det N_k = 2π^{(k+1)²/2} / Γ((k+1)/2) · ∏_{j≤k+1} (2j-1)^{k+1-j} / (2j)^j`.
fn bm_det(ev: &Evaluator, k: u32, odd: bool) -> Num {
    let p = ev.prec();
    let ki = k as i32;
    let (det, want) = if odd {
        let mut w = Float::with_val(p, 1);
        for j in 1..=ki {
            w *= Float::with_val(p, 2 * j).pow(ki - j);
            w /= Float::with_val(p, 2 * j + 1).pow(Float::with_val(p, 2 * j + 1) / 2u32);
        }
        (ev.mat_m_raw(k)?.det(), w * pi_pow(ki * (ki + 1), p))
    } else {
        let mut w = Float::with_val(p, 2) * pi_pow((ki + 1) * (ki + 1), p);
        w /= Float::with_val(p, Float::with_val(p, ki + 1) / 2u32).gamma();
        for j in 1..=ki + 1 {
            w *= Float::with_val(p, 2 * j - 1).pow(ki + 1 - j);
            w /= Float::with_val(p, 2 * j).pow(j);
        }
        (ev.mat_n_raw(k)?.det(), w)
    };
    Ok(residual(&det, &want))
}

fn qm(m: &brmatrices::QMatrix, p: u32) -> NumMatrix {
    NumMatrix::from_q(m, p)
}

fn err(e: impl fmt::Display) -> besselnum::BesselError {
    besselnum::BesselError::InvalidKey(e.to_string())
}

fn quadratic(ev: &Evaluator, k: u32, odd: bool) -> Num {
    let p = ev.prec();
    let ku = k as usize;
    let (m, d, b) = if odd {
        (ev.mat_m(k)?, derham_odd(ku).map_err(err)?, betti_odd(ku))
    } else {
        (ev.mat_n(k)?, derham_even(ku).map_err(err)?, betti_even(ku))
    };
    Ok(m.mul(&qm(&d, p))
        .mul(&m.transpose())
        .sub(&qm(&b, p))
        .max_abs())
}

#[derive(Clone, Copy)]
enum OffShell {
    Relation,
    Transposed,
    Det,
}

impl OffShell {
    fn tag(self) -> &'static str {
        match self {
            OffShell::Relation => "relation",
            OffShell::Transposed => "transposed",
            OffShell::Det => "det",
        }
    }
}

fn off_shell(ev: &Evaluator, k: u32, u: &BigRational, part: OffShell) -> Num {
    let p = ev.prec();
    let ku = k as usize;
    let om = ev.mat_omega(k, u)?;
    let lead = vanhove::vanhove_operator(2 * ku - 1)
        .map_err(err)?
        .leading()
        .eval(u)
        .abs();
    let inv_lead = BigRational::one() / &lead;
    Ok(match part {
        OffShell::Relation => {
            let v_inv = mat_v(ku)
                .map_err(err)?
                .eval(u)
                .map_err(err)?
                .inverse()
                .map_err(err)?;
            let s = qm(&mat_sigma_odd(ku), p);
            om.mul(&s)
                .mul(&om.transpose())
                .sub(&qm(&v_inv.scale(&inv_lead), p))
                .max_abs()
        }
        OffShell::Transposed => {
            let v = qm(&mat_v(ku).map_err(err)?.eval(u).map_err(err)?, p);
            let s_inv = mat_sigma_odd_inv_bernoulli(ku).scale(&inv_lead);
            om.transpose()
                .mul(&v)
                .mul(&om)
                .sub(&qm(&s_inv, p))
                .max_abs()
        }
        OffShell::Det => {
            // det Ω̌ · |𝔪|^{k-1/2} = Λ_{2k-1}
            let l = q_to_float(&lead, p);
            let scale = Float::with_val(p, l.clone().sqrt()) * l.pow(k as i32 - 1);
            let lambda = named_constant(ConstName::LambdaOdd, ku).map_err(err)?;
            residual(&(om.det() * scale), &surd_to_float(&lambda.value, p))
        }
    })
}

fn dfact(n: i64, p: u32) -> Float {
    let d = double_factorial(n);
    Float::with_val(
        p,
        rug::Integer::from_str_radix(&d.to_str_radix(16), 16).expect("hex"),
    )
}

/// Minor determinants of `M̌_k` on even rows versus odd rows:
/// `det(M̌)_{even} = ± √([(2k+1)!!]^{2-(-1)^k}) / (2^{⌊k/2⌋}(k-1)!!(k!!)^{1-(-1)^k}) · det(M̌)_{odd}`.
fn reflection(ev: &Evaluator, k: u32) -> Num {
    let p = ev.prec();
    let m = ev.mat_m(k)?;
    let ki = k as i64;
    let h = (k / 2) as usize;
    let hc = k.div_ceil(2) as usize;
    let even: Vec<usize> = (1..=h).map(|a| 2 * a).collect();
    let odd: Vec<usize> = (1..=hc).map(|a| 2 * a - 1).collect();
    let lhs = m.select(&even, &(1..=h).collect::<Vec<_>>()).det();
    let rhs_det = m.select(&odd, &(1..=hc).collect::<Vec<_>>()).det();
    let sign_exp = (ki + 1) / 4 + (ki / 2) / 2;
    let k_even = ki % 2 == 0;
    let num = dfact(2 * ki + 1, p)
        .pow(if k_even { 1u32 } else { 3u32 })
        .sqrt();
    let mut den = Float::with_val(p, 2).pow(ki / 2) * dfact(ki - 1, p);
    if !k_even {
        den *= dfact(ki, p).square();
    }
    let mut rhs = num / den * rhs_det;
    if sign_exp % 2 == 1 {
        rhs = -rhs;
    }
    Ok(residual(&lhs, &rhs))
}

#[derive(Clone, Copy)]
enum N3Rule {
    First,
    Second,
    Det,
}

impl N3Rule {
    fn tag(self) -> &'static str {
        match self {
            N3Rule::First => "first",
            N3Rule::Second => "second",
            N3Rule::Det => "det",
        }
    }
}

/// Sum rules read off from `Ň_3𝔡_3Ň_3ᵀ = 𝔟_3`, in terms of the entries
/// `(Ň_3)_{a,ℓ} = (-1)^{ℓ-1} ν̌^ℓ_{3,a}(1)`: `(Ň)_{1,1} = (Ň)_{3,1}`,
/// `c_1 = c_3` with `c_a = (Ň)_{a,2} + 2(Ň)_{a,3}`, and
/// `(Ň)_{2,1} c_3 - c_2 (Ň)_{3,1} = 5/(2¹¹·3)`.
fn n3_rule(ev: &Evaluator, rule: N3Rule) -> Num {
    let n = ev.mat_n(3)?;
    let p = ev.prec();
    let comb = |a| Float::with_val(p, n.at(a, 2) + Float::with_val(p, n.at(a, 3) * 2u32));
    Ok(match rule {
        N3Rule::First => residual(n.at(1, 1), n.at(3, 1)),
        N3Rule::Second => residual(&comb(1), &comb(3)),
        N3Rule::Det => {
            let d =
                Float::with_val(p, n.at(2, 1) * comb(3)) - Float::with_val(p, comb(2) * n.at(3, 1));
            residual(&d, &(Float::with_val(p, 5) / 6144u32))
        }
    })
}

/// `μ̌¹_{3,2}(1) = -(1/2²)√(5³·7³/3) · det` of the minor of `M̌_3` on rows
/// {1, 3} and columns {1, 2}, whose entries carry the signs `(-1)^{ℓ-1}`.
fn seven_bessel(ev: &Evaluator) -> Num {
    let p = ev.prec();
    let m = ev.mat_m(3)?;
    let minor = m.select(&[1, 3], &[1, 2]).det();
    let c = Float::with_val(p, Float::with_val(p, 42875u32) / 3u32).sqrt() / 4u32;
    Ok(residual(m.at(2, 1), &(-c * minor)))
}

/// `M̌_2 = [[C, -(2/15)²(13C - 1/(10C))], [(√15/2)C, -(√15/2)(2/15)²(13C + 1/(10C))]]`.
fn bologna_entry(ev: &Evaluator, a: usize, b: usize) -> Num {
    let p = ev.prec();
    let m = ev.mat_m(2)?;
    let c = bologna(ev.digits);
    let r15 = Float::with_val(p, 15).sqrt() / 2u32;
    let t = Float::with_val(p, 4) / 225u32;
    let inv = Float::with_val(p, &c * 10u32).recip();
    let c13 = Float::with_val(p, &c * 13u32);
    let want = match (a, b) {
        (1, 1) => c,
        (2, 1) => c * &r15,
        (1, 2) => -(t * (c13 - inv)),
        _ => -(t * (c13 + inv)) * &r15,
    };
    Ok(residual(m.at(a, b), &want))
}

fn classical(ev: &Evaluator) -> Num {
    let p = ev.prec();
    let v = ev.moment(MomentKind::IKM, 1, 2, 1, None)?;
    let want = Float::with_val(p, Constant::Pi) / (Float::with_val(p, 3).sqrt() * 3u32);
    Ok(residual(&v, &want))
}

fn ibp(ev: &Evaluator, k: u32) -> Num {
    let mut worst = Float::new(ev.prec());
    for (_, r) in ibp_residuals(ev, k)? {
        if r > worst {
            worst = r;
        }
    }
    Ok(worst)
}

#[derive(Clone, Copy)]
enum Block {
    TopLeft,
    TopRight,
    BottomLeft,
    BottomRight,
}

impl Block {
    fn tag(self) -> &'static str {
        match self {
            Block::TopLeft => "top_left",
            Block::TopRight => "top_right",
            Block::BottomLeft => "bottom_left",
            Block::BottomRight => "bottom_right",
        }
    }
}

/// `m̌́_k`, a `k × (k-1)` matrix of on-shell moments:
/// `(m̌́)_{1,b} = (-1)^b 2b/(2k+1) μ̌^b_{k,1}(1)` and, for `a >= 2`,
/// `(m̌́)_{a,b} = (-1)^b [2b/(2k+1) μ̌^b_{k,a}(1) - (1 - a/(2k+1)) μ̌^b_{k-1,a-1}(1)]`.
fn m_acute(ev: &Evaluator, k: u32) -> besselnum::Result<NumMatrix> {
    let p = ev.prec();
    let m = 2 * k + 1;
    let mut out = NumMatrix::zeros(k as usize, (k - 1) as usize, p);
    for a in 1..=k {
        for b in 1..k {
            let mut v = ev.mu_on_shell(k, a, b)? * (2 * b) / m;
            if a >= 2 {
                v -= ev.mu_on_shell(k - 1, a - 1, b)? * (m - a) / m;
            }
            out.set(
                (a - 1) as usize,
                (b - 1) as usize,
                if b % 2 == 1 { -v } else { v },
            );
        }
    }
    Ok(out)
}

fn block_structure(ev: &Evaluator, k: u32, part: Block) -> Num {
    let p = ev.prec();
    let ku = k as usize;
    let a = qm(&aux_matrix(AuxName::A, ku).map_err(err)?, p);
    let x = ev.beta_omega_at_one(k)?.mul(&a);
    let top: Vec<usize> = (1..=ku).collect();
    let bottom: Vec<usize> = (ku + 1..2 * ku).collect();
    Ok(match part {
        Block::TopLeft => x
            .select(&top, &top)
            .sub(&ev.mat_m(k)?.transpose())
            .max_abs(),
        Block::TopRight => x.select(&top, &bottom).max_abs(),
        Block::BottomLeft => x
            .select(&bottom, &top)
            .sub(&m_acute(ev, k)?.transpose())
            .max_abs(),
        Block::BottomRight => {
            let want = ev.mat_m(k - 1)?.transpose().scale(&Float::with_val(p, -1));
            x.select(&bottom, &bottom).sub(&want).max_abs()
        }
    })
}

fn log_relation(ev: &Evaluator, k: u32, odd: bool) -> Num {
    let p = ev.prec();
    let ku = k as usize;
    let (m, ring, d, d_ring, b_ring) = if odd {
        (
            ev.mat_m(k)?,
            ev.mat_m_ring(k)?,
            derham_odd(ku).map_err(err)?,
            derham_odd_ring(ku).map_err(err)?,
            betti_odd_ring(ku),
        )
    } else {
        (
            ev.mat_n(k)?,
            ev.mat_n_ring(k)?,
            derham_even(ku).map_err(err)?,
            derham_even_ring(ku).map_err(err)?,
            betti_even_ring(ku),
        )
    };
    let (d, d_ring) = (qm(&d, p), qm(&d_ring, p));
    let pi = Float::with_val(p, Constant::Pi);
    let lhs = m.mul(&d_ring).mul(&m.transpose());
    let rhs = qm(&b_ring, p)
        .scale(&pi)
        .add(&ring.mul(&d).mul(&m.transpose()))
        .sub(&m.mul(&d).mul(&ring.transpose()));
    Ok(lhs.sub(&rhs).max_abs())
}

/// Linear sum rules for `Ň_5`, in terms of its entries
/// `(Ň_5)_{a,ℓ} = (-1)^{ℓ-1} ν̌^ℓ_{5,a}(1)`: with
/// `s_ℓ = 3(Ň)_{1,ℓ} - 10(Ň)_{3,ℓ} + 3(Ň)_{5,ℓ}`, `s_1 = s_2 = 0`,
/// `3s_3 = 2s_5`, `2s_4 = -s_5`, and the values `s_3 = √π/2⁸`,
/// `s_4 = -3√π/2¹⁰`, `s_5 = 3√π/2⁹`.
fn n5_rule(ev: &Evaluator, rule: usize) -> Num {
    let p = ev.prec();
    let n = ev.mat_n(5)?;
    let s = |l: usize| -> Num {
        Ok(
            Float::with_val(p, n.at(1, l) * 3u32) - Float::with_val(p, n.at(3, l) * 10u32)
                + Float::with_val(p, n.at(5, l) * 3u32),
        )
    };
    let sqrt_pi = pi_pow(1, p);
    let zero = Float::new(p);
    Ok(match rule {
        0 => residual(&s(1)?, &zero),
        1 => residual(&s(2)?, &zero),
        2 => residual(&(s(3)? * 3u32 - s(5)? * 2u32), &zero),
        3 => residual(&(s(4)? * 2u32 + s(5)?), &zero),
        4 => residual(&s(3)?, &(sqrt_pi / 256u32)),
        5 => residual(&s(4)?, &(-sqrt_pi * 3u32 / 1024u32)),
        _ => residual(&s(5)?, &(sqrt_pi * 3u32 / 512u32)),
    })
}
