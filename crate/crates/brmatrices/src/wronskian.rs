//! Rational-function kernels `V_{2k-1}(u)`, `υ_{2k}(u)` built from Vanhove's
//! operators, and the Bessel matrices `β_m(u)`.

use crate::util::{fact, sgn, QMatrix, UMatrix, Q};
use crate::{BrError, Result};
use exactalg::{binom, pow_q, q, recip_fact_ext, ExactMatrix, RatFunc, UniPoly, Var};
use num_traits::Zero;
use vanhove::{vanhove_operator, VanhoveOperator};

/// `Σ_{n=a+b-1}^{m} (-1)^{a+n+shift} C(n-a, b-1) D^{n-a-b+1} ℓ_{m,n} / ℓ_{m,m}`.
fn kernel(op: &VanhoveOperator, shift: i64) -> Result<UMatrix> {
    let m = op.m as i64;
    let lead = op.leading();
    if *lead != VanhoveOperator::expected_leading(op.m) {
        return Err(BrError::Mismatch(format!(
            "leading coefficient of L̃_{m} differs from the product formula"
        )));
    }
    let mut out = UMatrix::zeros(op.m, op.m);
    for a in 1..=m {
        for b in 1..=m + 1 - a {
            let mut num = UniPoly::zero(Var::U);
            for n in a + b - 1..=m {
                let c = sgn(a + n + shift) * binom(n - a, b - 1);
                num = num
                    + op.coeff(n as usize)
                        .derivative_n((n - a - b + 1) as usize)
                        .scale(&c);
            }
            out.set(
                (a - 1) as usize,
                (b - 1) as usize,
                RatFunc::new(num, lead.clone())?,
            );
        }
    }
    Ok(out)
}

/// `V_{2k-1}(u)`, symmetric and upper-left triangular.
pub fn mat_v(k: usize) -> Result<UMatrix> {
    if k == 0 {
        return Err(BrError::Range {
            what: "k",
            value: k,
        });
    }
    kernel(&vanhove_operator(2 * k - 1)?, 0)
}

/// `υ_{2k}(u)`, skew-symmetric and upper-left triangular.
pub fn mat_upsilon(k: usize) -> Result<UMatrix> {
    if k == 0 {
        return Err(BrError::Range {
            what: "k",
            value: k,
        });
    }
    kernel(&vanhove_operator(2 * k)?, 1)
}

/// Coefficient and power of `u` in `(β_m(u))_{a,b}`.
fn beta_entry(m: i64, a: i64, b: i64) -> (Q, i64) {
    let h = (m + 1) / 2;
    if a <= h {
        let c = sgn(a - 1)
            * pow_q(&q(4), a - 1)
            * fact(a - 1)
            * recip_fact_ext(b - a)
            * binom(a - 1, b - a);
        (c, b - a)
    } else {
        let j = a - h;
        if b - a + h < 0 {
            return (Q::zero(), 0);
        }
        let c = sgn(j - 1)
            * pow_q(&q(4), j - 1)
            * q(2)
            * fact(j - 1)
            * recip_fact_ext(b - a + h - 1)
            * binom(j, b - a + h);
        (c, b - a + h)
    }
}

/// `β_m(u)` with polynomial entries in `u`.
pub fn beta_matrix(m: usize) -> UMatrix {
    ExactMatrix::from_fn1(m, m, |a, b| {
        let (c, e) = beta_entry(m as i64, a, b);
        if c.is_zero() {
            RatFunc::zero(Var::U)
        } else {
            RatFunc::from_poly(UniPoly::monomial(Var::U, c, e as usize))
        }
    })
}

/// `β_m(u0)` for a rational `u0`.
pub fn beta_matrix_at(m: usize, u0: &Q) -> QMatrix {
    ExactMatrix::from_fn1(m, m, |a, b| {
        let (c, e) = beta_entry(m as i64, a, b);
        if c.is_zero() {
            c
        } else {
            c * pow_q(u0, e)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use exactalg::qr;

    #[test]
    fn beta_two() {
        let b = beta_matrix_at(2, &q(3));
        assert_eq!(b, ExactMatrix::from_ints(&[&[1, 0], &[0, 6]]));
    }

    #[test]
    fn beta_determinant() {
        for m in 2..=7usize {
            for u0 in [q(1), qr(1, 3), q(-2)] {
                let d = beta_matrix_at(m, &u0).det().unwrap();
                let expect =
                    pow_q(&q(2), (m * (m - 1) / 2) as i64) * pow_q(&u0, (m * m / 4) as i64);
                assert!(d == expect || d == -expect.clone(), "m={m}");
            }
        }
    }

    #[test]
    fn v_antidiagonal() {
        for k in 1..=3 {
            let v = mat_v(k).unwrap();
            let n = 2 * k - 1;
            for a in 1..=n {
                assert_eq!(
                    v.at(a, n + 1 - a).as_poly().unwrap().coeff(0),
                    sgn(a as i64 - 1)
                );
            }
            assert!(v.is_symmetric());
            let ups = mat_upsilon(k).unwrap();
            assert!(ups.is_skew_symmetric());
            assert!(ups.at(1, 1).is_zero());
        }
    }
}
