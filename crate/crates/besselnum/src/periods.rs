//! Normalized moment functions `μ̌, ν̌` (and their differentiated versions),
//! the Broadhurst–Roberts matrices `M̌_k, Ň_k`, their log-weighted
//! companions, and the Wrońskian matrices `Ω̌_{2k-1}(u)`, `ω̌_{2k}(u)`.

use crate::bessel::{bits_for, pi_half_pow};
use crate::cache::MomentCache;
use crate::moment::{compute_moment, q_to_float, MomentKey, MomentKind};
use crate::num::NumMatrix;
use crate::{BesselError, Result};
use brmatrices::{beta_matrix_at, CheckItem, Report};
use num_rational::BigRational;
use num_traits::One;
use rayon::prelude::*;
use rug::float::Constant;
use rug::ops::Pow;
use rug::Float;
use std::sync::Arc;

/// Moment evaluation at a fixed precision, optionally backed by a cache.
#[derive(Clone)]
pub struct Evaluator {
    pub digits: u32,
    cache: Option<Arc<MomentCache>>,
}

fn one() -> BigRational {
    BigRational::one()
}

impl Evaluator {
    pub fn new(digits: u32) -> Self {
        Evaluator {
            digits,
            cache: None,
        }
    }

    pub fn with_cache(mut self, cache: Arc<MomentCache>) -> Self {
        self.cache = Some(cache);
        self
    }

    /// Working precision of returned values (bits).
    pub fn prec(&self) -> u32 {
        bits_for(self.digits, 10)
    }

    pub fn moment(
        &self,
        kind: MomentKind,
        a: u32,
        b: u32,
        n: u32,
        u: Option<&BigRational>,
    ) -> Result<Float> {
        let key = MomentKey::new(kind, a, b, n, u.cloned(), self.digits);
        match &self.cache {
            Some(c) => c.get_or_compute(&key),
            None => compute_moment(&key),
        }
    }

    fn ikm(&self, a: u32, b: u32, n: u32) -> Result<Float> {
        self.moment(MomentKind::IKM, a, b, n, None)
    }

    fn pi_half(&self, e: i32) -> Float {
        pi_half_pow(e, self.prec())
    }

    /// `μ̌^ℓ_{k,j}(u)` (`acute` selects `μ́̌`), `j ∈ [1, 3k-1]`.
    pub fn mu(&self, k: u32, j: u32, l: u32, u: &BigRational, acute: bool) -> Result<Float> {
        let (iv, kv) = if acute {
            (MomentKind::IpKM, MomentKind::IKpM)
        } else {
            (MomentKind::IvKM, MomentKind::IKvM)
        };
        let n = 2 * l - 1;
        let (k_i, j_i) = (k as i32, j as i32);
        let p = self.prec();
        if j == 1 {
            let x = self.moment(iv, 1, 2 * k, n, Some(u))?;
            let y = self.moment(kv, 1, 2 * k, n, Some(u))?;
            let s = Float::with_val(p, &y * (2 * k)) + x;
            return Ok(s / (2 * k + 1) * self.pi_half(-2 * k_i));
        }
        if j <= k {
            return Ok(
                self.moment(iv, j, 2 * k + 1 - j, n, Some(u))? * self.pi_half(2 * (j_i - k_i - 1))
            );
        }
        if j < 3 * k {
            return Ok(self.moment(kv, j - k + 1, 3 * k - j, n, Some(u))?
                * self.pi_half(2 * (j_i - 2 * k_i)));
        }
        Err(BesselError::InvalidKey(format!(
            "mu index j = {j} outside [1, {}]",
            3 * k - 1
        )))
    }

    /// `ν̌^ℓ_{k,j}(u)` (`acute` selects `ν́̌`), `j ∈ [1, 3k+1]`.
    pub fn nu(&self, k: u32, j: u32, l: u32, u: &BigRational, acute: bool) -> Result<Float> {
        let (iv, kv) = if acute {
            (MomentKind::IpKM, MomentKind::IKpM)
        } else {
            (MomentKind::IvKM, MomentKind::IKvM)
        };
        let n = 2 * l - 1;
        let (k_i, j_i) = (k as i32, j as i32);
        let p = self.prec();
        if j == 1 {
            let x = self.moment(iv, 1, 2 * k + 1, n, Some(u))?;
            let y = self.moment(kv, 1, 2 * k + 1, n, Some(u))?;
            let s = Float::with_val(p, &y * (2 * k + 1)) + x;
            return Ok(s / (2 * (k + 1)) * self.pi_half(-2 * k_i - 1));
        }
        if j <= k + 1 {
            return Ok(
                self.moment(iv, j, 2 * k + 2 - j, n, Some(u))? * self.pi_half(2 * (j_i - k_i) - 3)
            );
        }
        if j <= 3 * k + 1 {
            return Ok(self.moment(kv, j - k, 3 * k + 2 - j, n, Some(u))?
                * self.pi_half(2 * (j_i - 2 * k_i) - 3));
        }
        Err(BesselError::InvalidKey(format!(
            "nu index j = {j} outside [1, {}]",
            3 * k + 1
        )))
    }

    /// On-shell `μ̌^ℓ_{k,a}(1) = π^{a-k-1} IKM(a, 2k+1-a; 2ℓ-1)`, `a ∈ [1, k]`.
    pub fn mu_on_shell(&self, k: u32, a: u32, l: u32) -> Result<Float> {
        Ok(self.ikm(a, 2 * k + 1 - a, 2 * l - 1)? * self.pi_half(2 * (a as i32 - k as i32 - 1)))
    }

    /// On-shell `ν̌^ℓ_{k,a}(1) = π^{a-k-3/2} IKM(a, 2k+2-a; 2ℓ-1)`, `a ∈ [1, k]`.
    pub fn nu_on_shell(&self, k: u32, a: u32, l: u32) -> Result<Float> {
        Ok(self.ikm(a, 2 * k + 2 - a, 2 * l - 1)? * self.pi_half(2 * (a as i32 - k as i32) - 3))
    }

    fn par_matrix(
        &self,
        rows: usize,
        cols: usize,
        f: impl Fn(u32, u32) -> Result<Float> + Sync,
    ) -> Result<NumMatrix> {
        let idx: Vec<(u32, u32)> = (1..=rows as u32)
            .flat_map(|a| (1..=cols as u32).map(move |b| (a, b)))
            .collect();
        let vals: Vec<Float> = idx
            .par_iter()
            .map(|&(a, b)| f(a, b))
            .collect::<Result<_>>()?;
        let mut it = vals.into_iter();
        Ok(NumMatrix::from_fn1(rows, cols, self.prec(), |_, _| {
            it.next().expect("one value per entry")
        }))
    }

    fn sign(b: u32, x: Float) -> Float {
        if b.is_multiple_of(2) {
            -x
        } else {
            x
        }
    }

    /// `M̌_k = ((-1)^{b-1} π^{a-k-1} IKM(a, 2k+1-a; 2b-1))`.
    pub fn mat_m(&self, k: u32) -> Result<NumMatrix> {
        self.par_matrix(k as usize, k as usize, |a, b| {
            Ok(Self::sign(b, self.mu_on_shell(k, a, b)?))
        })
    }

    /// `Ň_k = ((-1)^{b-1} π^{a-k-3/2} IKM(a, 2k+2-a; 2b-1))`.
    pub fn mat_n(&self, k: u32) -> Result<NumMatrix> {
        self.par_matrix(k as usize, k as usize, |a, b| {
            Ok(Self::sign(b, self.nu_on_shell(k, a, b)?))
        })
    }

    /// Unnormalized `M_k = (IKM(a, 2k+1-a; 2b-1))`.
    pub fn mat_m_raw(&self, k: u32) -> Result<NumMatrix> {
        self.par_matrix(k as usize, k as usize, |a, b| {
            self.ikm(a, 2 * k + 1 - a, 2 * b - 1)
        })
    }

    /// Unnormalized `N_k = (IKM(a, 2k+2-a; 2b-1))`.
    pub fn mat_n_raw(&self, k: u32) -> Result<NumMatrix> {
        self.par_matrix(k as usize, k as usize, |a, b| {
            self.ikm(a, 2 * k + 2 - a, 2 * b - 1)
        })
    }

    fn ring_entry(&self, a: u32, b: u32, total: u32, pi_exp2: i32) -> Result<Float> {
        let n = 2 * b - 1;
        let mut v = self.moment(MomentKind::IKM_LOG, a, total - a, n, None)?;
        if a == 1 {
            let c = self.ikm(0, total, n)? / total;
            v -= c;
        }
        Ok(Self::sign(b, v * self.pi_half(pi_exp2)))
    }

    /// `M̊_k`: log-weighted companion of `M̌_k`.
    pub fn mat_m_ring(&self, k: u32) -> Result<NumMatrix> {
        // {I₀^a log t / K₀^a − δ_{a,1}/(2k+1)} K₀^{2k+1} t^{2b-1}, scaled by π^{a-k-1}.
        self.par_matrix(k as usize, k as usize, |a, b| {
            self.ring_entry(a, b, 2 * k + 1, 2 * (a as i32 - k as i32 - 1))
        })
    }

    /// `Ň̊_k`: log-weighted companion of `Ň_k`.
    pub fn mat_n_ring(&self, k: u32) -> Result<NumMatrix> {
        self.par_matrix(k as usize, k as usize, |a, b| {
            self.ring_entry(a, b, 2 * k + 2, 2 * (a as i32 - k as i32) - 3)
        })
    }

    /// `β_m(u) Ω`: the moment vectors, column `j` holding
    /// `((-1)^{ℓ-1} ξ^ℓ_j)_{ℓ≤k}` then `((-1)^{ℓ-1} √u ξ́^ℓ_j)`.
    fn moment_columns(&self, m: u32, k: u32, u: &BigRational, odd: bool) -> Result<NumMatrix> {
        let p = self.prec();
        let su = q_to_float(u, p).sqrt();
        let top = k;
        let bottom = m - k;
        self.par_matrix(m as usize, m as usize, |row, j| {
            let (l, acute) = if row <= top {
                (row, false)
            } else {
                (row - top, true)
            };
            debug_assert!(!acute || l <= bottom);
            let v = if odd {
                self.mu(k, j, l, u, acute)?
            } else {
                self.nu(k, j, l, u, acute)?
            };
            let v = if acute { v * &su } else { v };
            Ok(if l % 2 == 0 { -v } else { v })
        })
    }

    /// `β_m(u) Ω̌_{2k-1}(u)` built from moments (no inversion).
    pub fn beta_omega(&self, k: u32, u: &BigRational) -> Result<NumMatrix> {
        self.moment_columns(2 * k - 1, k, u, true)
    }

    /// `Ω̌_{2k-1}(u)`: every derivative recovered exactly through `β_{2k-1}(u)^{-1}`.
    pub fn mat_omega(&self, k: u32, u: &BigRational) -> Result<NumMatrix> {
        let m = 2 * k - 1;
        let x = self.beta_omega(k, u)?;
        let binv = beta_matrix_at(m as usize, u)
            .inverse()
            .map_err(|e| BesselError::InvalidKey(e.to_string()))?;
        Ok(NumMatrix::from_q(&binv, self.prec()).mul(&x))
    }

    /// `ω̌_{2k}(u)`.
    pub fn mat_omega_even(&self, k: u32, u: &BigRational) -> Result<NumMatrix> {
        let m = 2 * k;
        let x = self.moment_columns(m, k, u, false)?;
        let binv = beta_matrix_at(m as usize, u)
            .inverse()
            .map_err(|e| BesselError::InvalidKey(e.to_string()))?;
        Ok(NumMatrix::from_q(&binv, self.prec()).mul(&x))
    }

    /// `β_{2k-1}(1) Ω̌_{2k-1}(1)` assembled from moments at `u = 1`.
    pub fn beta_omega_at_one(&self, k: u32) -> Result<NumMatrix> {
        self.beta_omega(k, &one())
    }
}

/// `C = Γ(1/15)Γ(2/15)Γ(4/15)Γ(8/15) / (240 √5 π²)`.
pub fn bologna(digits: u32) -> Float {
    let p = bits_for(digits, 10);
    let g = |n: u32| Float::with_val(p + 16, Float::with_val(p + 16, n) / 15u32).gamma();
    let num = g(1) * g(2) * g(4) * g(8);
    let pi = Float::with_val(p + 16, Constant::Pi);
    let den = Float::with_val(p + 16, 5u32).sqrt() * 240u32 * pi.square();
    Float::with_val(p, num / den)
}

/// Relative (or, for tiny references, absolute) discrepancy.
pub fn residual(x: &Float, reference: &Float) -> Float {
    let p = x.prec().max(reference.prec());
    let d = Float::with_val(p, x - reference).abs();
    let s = Float::with_val(p, reference.abs_ref()).max(&Float::with_val(p, 1u32));
    d / s
}

/// `10^{-(digits-10)}`: the pass threshold used by every numeric check.
pub fn tolerance(digits: u32) -> Float {
    Float::with_val(bits_for(digits, 10), 10u32).pow(-(digits as i32 - 10))
}

/// Integration-by-parts relations at `u = 1` for moments with `m = 2k+1`
/// Bessel factors: the first-column relation for `ℓ ∈ [1, k-1]` and the
/// three-term relation for `j ∈ [2, k]`, `ℓ ∈ [1, k-1]`.
pub fn ibp_sanity(k: u32, digits: u32) -> Result<Report> {
    if k < 2 {
        return Err(BesselError::InvalidKey(format!(
            "ibp_sanity needs k >= 2, got {k}"
        )));
    }
    let ev = Evaluator::new(digits);
    ibp_sanity_with(&ev, k)
}

pub fn ibp_sanity_with(ev: &Evaluator, k: u32) -> Result<Report> {
    let tol = tolerance(ev.digits);
    let mut rep = Report::new(format!("integration by parts, k = {k}"));
    for (label, r) in ibp_residuals(ev, k)? {
        let detail = format!("residual {}", r.to_string_radix(10, Some(3)));
        rep.items.push(CheckItem {
            label,
            passed: r < tol,
            detail,
        });
    }
    Ok(rep)
}

/// The residuals behind [`ibp_sanity`], labelled by `(j, ℓ)`.
pub fn ibp_residuals(ev: &Evaluator, k: u32) -> Result<Vec<(String, Float)>> {
    let m = 2 * k + 1;
    let p = ev.prec();
    let u1 = one();
    let mut out = vec![];
    for l in 1..k {
        let n = 2 * l - 1;
        // [IpKM(1,m-1) + (m-1) IKpM(1,m-1)]/m = -(2ℓ/m) IKM(1,m-1)
        let a = ev.moment(MomentKind::IpKM, 1, m - 1, n, Some(&u1))?;
        let b = ev.moment(MomentKind::IKpM, 1, m - 1, n, Some(&u1))?;
        let lhs = (Float::with_val(p, &b * (m - 1)) + a) / m;
        let rhs = -ev.moment(MomentKind::IKM, 1, m - 1, n, None)? * (2 * l) / m;
        out.push((format!("j=1, l={l}"), residual(&lhs, &rhs)));
        for j in 2..=k {
            // IpKM(j, m-j) = (1 - j/m) IKM(j-1, m-1-j) - (2ℓ/m) IKM(j, m-j)
            let lhs = ev.moment(MomentKind::IpKM, j, m - j, n, Some(&u1))?;
            let x = ev.moment(MomentKind::IKM, j - 1, m - 1 - j, n, None)? * (m - j) / m;
            let y = ev.moment(MomentKind::IKM, j, m - j, n, None)? * (2 * l) / m;
            out.push((format!("j={j}, l={l}"), residual(&lhs, &(x - y))));
        }
    }
    Ok(out)
}
