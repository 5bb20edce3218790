//! Construction and structural checks of `L̃_m`.

use crate::report::Report;
use crate::verrill::{alpha_tuples, verrill_poly};
use crate::{Result, VanhoveError};
use exactalg::{binom, q, DiffOp, RatFunc, UniPoly, Var};
use once_cell::sync::Lazy;
use parking_lot::Mutex;
use std::collections::HashMap;

/// `L̃_m = Σ_{j=0}^m ℓ_{m,j}(u) D^j` with integer polynomial coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VanhoveOperator {
    pub m: usize,
    pub coeffs: Vec<UniPoly>,
}

impl VanhoveOperator {
    /// `ℓ_{m,j}`.
    pub fn coeff(&self, j: usize) -> &UniPoly {
        &self.coeffs[j]
    }

    /// `ℓ_{m,m}`, i.e. `𝔪_{2k-1}` or `𝔫_{2k}`.
    pub fn leading(&self) -> &UniPoly {
        &self.coeffs[self.m]
    }

    pub fn diffop(&self) -> DiffOp {
        DiffOp::from_polys(Var::U, self.coeffs.clone())
    }

    /// `u^{⌊(m+1)/2⌋} ∏_{n ≤ m+1, n ≡ m+1 (2)} (u - n²)`.
    pub fn expected_leading(m: usize) -> UniPoly {
        let mut p = UniPoly::x(Var::U).pow(m.div_ceil(2));
        for n in (1..=m + 1).filter(|n| n % 2 == (m + 1) % 2) {
            p = p * UniPoly::from_ints(Var::U, &[-((n * n) as i64), 1]);
        }
        p
    }
}

fn u_pow(e: i64) -> RatFunc {
    let p = RatFunc::from_poly(UniPoly::x(Var::U).pow(e.unsigned_abs() as usize));
    if e >= 0 {
        p
    } else {
        p.recip().expect("u is nonzero")
    }
}

/// `Σ_k u^{1-k} 𝒱_{m,k}(k - θ̂)`, times `(-1)^m`.
fn route_verrill(m: usize) -> DiffOp {
    let th = DiffOp::theta_hat(Var::U);
    let mut acc = DiffOp::zero(Var::U);
    for k in 0..=m / 2 + 1 {
        let v = verrill_poly(m, k);
        if v.is_zero() {
            continue;
        }
        let shifted = v.compose(&UniPoly::from_ints(Var::T, &[k as i64, -1]));
        let op = DiffOp::poly_of(&shifted, &th).scale_mul(&u_pow(1 - k as i64));
        acc = acc.add(&op).expect("same variable");
    }
    if m % 2 == 1 {
        acc.scale(&q(-1))
    } else {
        acc
    }
}

/// Literal products of first-order factors `θ̂ - c`.
fn route_products(m: usize) -> DiffOp {
    let th = DiffOp::theta_hat(Var::U);
    let mut powers: HashMap<(i64, usize), DiffOp> = HashMap::new();
    let mut factor = |c: i64, e: usize| -> DiffOp {
        powers
            .entry((c, e))
            .or_insert_with(|| {
                let f = th
                    .sub(&DiffOp::identity(Var::U).scale(&q(c)))
                    .expect("same variable");
                f.pow(e)
            })
            .clone()
    };
    let mi = m as i64;
    let mut acc = DiffOp::mul_by(u_pow(1))
        .compose(&factor(0, m))
        .expect("same variable");
    for k in 1..=m / 2 + 1 {
        let ki = k as i64;
        let mut inner = DiffOp::zero(Var::U);
        for tup in alpha_tuples(m, k) {
            let mut term = factor(ki, (mi + 1 - tup.get(1)) as usize);
            let mut c = q(1);
            for n in 1..=k {
                let a = tup.get(n);
                c *= q(a * (a - mi - 2));
                let f = factor(ki - n as i64, (a - tup.get(n + 1)) as usize);
                term = term.compose(&f).expect("same variable");
            }
            inner = inner.add(&term.scale(&c)).expect("same variable");
        }
        acc = acc
            .add(&inner.scale_mul(&u_pow(1 - ki)))
            .expect("same variable");
    }
    acc
}

static CACHE: Lazy<Mutex<HashMap<usize, VanhoveOperator>>> = Lazy::new(Default::default);

/// Builds `L̃_m` by both routes, insisting that they agree and that every
/// coefficient is an integer polynomial.
pub fn vanhove_operator(m: usize) -> Result<VanhoveOperator> {
    if m == 0 {
        return Err(VanhoveError::ZeroOrder);
    }
    if let Some(op) = CACHE.lock().get(&m) {
        return Ok(op.clone());
    }
    let a = route_verrill(m);
    let b = route_products(m);
    let n = a.coeffs().len().max(b.coeffs().len());
    if let Some(j) = (0..n).find(|&j| a.coeff(j) != b.coeff(j)) {
        return Err(VanhoveError::RouteMismatch { m, j });
    }
    let mut coeffs = Vec::with_capacity(m + 1);
    for j in 0..=m {
        let c = a.coeff(j);
        match c.as_poly() {
            Some(p) if p.is_integral() => coeffs.push(p),
            _ => {
                return Err(VanhoveError::NonIntegral {
                    m,
                    j,
                    coeff: c.to_string(),
                })
            }
        }
    }
    if a.order() != Some(m) {
        return Err(VanhoveError::NonIntegral {
            m,
            j: m,
            coeff: "0".into(),
        });
    }
    let op = VanhoveOperator { m, coeffs };
    CACHE.lock().insert(m, op.clone());
    Ok(op)
}

/// Combinatorial constraint, divisibility, adjoint parity and the
/// leading/sub-leading closed forms.
pub fn check_vanhove_structure(op: &VanhoveOperator) -> Report {
    let m = op.m;
    let mut rep = Report::new(format!("Vanhove structure, m = {m}"));
    let sign = if m.is_multiple_of(2) { q(1) } else { q(-1) };

    let constraint = (0..=m).all(|j| {
        let rhs = (j..=m).fold(UniPoly::zero(Var::U), |acc, n| {
            let s = if n % 2 == 0 { q(1) } else { q(-1) };
            acc + op
                .coeff(n)
                .derivative_n(n - j)
                .scale(&(s * binom(n as i64, j as i64)))
        });
        op.coeff(j).scale(&sign) == rhs
    });
    rep.check("combinatorial constraint", constraint);

    let h = m.div_ceil(2) as i64;
    let divisible = (0..=m).all(|j| {
        let c = op.coeff(j);
        let need = -(m as i64 - j as i64 - h);
        c.is_integral() && (c.is_zero() || need <= 0 || c.valuation().unwrap() as i64 >= need)
    });
    rep.check("divisibility by powers of u", divisible);

    let l = op.diffop();
    rep.check("adjoint parity", l.adjoint() == l.scale(&sign));

    rep.check(
        "leading coefficient",
        *op.leading() == VanhoveOperator::expected_leading(m),
    );
    let sub = op.leading().derivative().scale(&exactalg::qr(m as i64, 2));
    rep.check("sub-leading coefficient", *op.coeff(m - 1) == sub);
    rep
}

#[cfg(test)]
mod tests {
    use super::*;

    fn up(c: &[i64]) -> UniPoly {
        UniPoly::from_ints(Var::U, c)
    }

    #[test]
    fn first_operators() {
        let l1 = vanhove_operator(1).unwrap();
        assert_eq!(l1.coeffs, vec![up(&[-2, 1]), up(&[0, -4, 1])]);
        let l2 = vanhove_operator(2).unwrap();
        assert_eq!(
            l2.coeffs,
            vec![up(&[-3, 1]), up(&[9, -20, 3]), up(&[0, 9, -10, 1])]
        );
    }

    #[test]
    fn l1_annihilates_inverse_sqrt() {
        // L̃_1 f = 0 for f = (u(4-u))^{-1/2}: f'/f = -(4-2u)/(2u(4-u)),
        // so ℓ_{1,1} f'/f + ℓ_{1,0} = (u-2) + (u-2)·(-1) = 0.
        let l1 = vanhove_operator(1).unwrap();
        let logderiv = RatFunc::new(up(&[-4, 2]), up(&[0, 8, -2])).unwrap();
        let r = &(&RatFunc::from_poly(l1.coeff(1).clone()) * &logderiv)
            + &RatFunc::from_poly(l1.coeff(0).clone());
        assert!(r.is_zero());
    }

    #[test]
    fn structure_up_to_nine() {
        for m in 1..=9 {
            let op = vanhove_operator(m).unwrap();
            let rep = check_vanhove_structure(&op);
            assert!(rep.passed(), "{rep}");
        }
    }

    #[test]
    fn zero_order_rejected() {
        assert!(vanhove_operator(0).is_err());
    }
}
