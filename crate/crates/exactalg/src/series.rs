//! Truncated series `sum_{n<=N} a_n(u) t^n` with polynomial coefficients in `u`.

use crate::diffop::DiffOp;
use crate::poly::{UniPoly, Var};
use crate::scalar::{factorial, q, ExactScalar};
use crate::{ExactError, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TruncBiSeries {
    order: usize,
    coeffs: Vec<UniPoly>,
}

impl TruncBiSeries {
    /// Coefficients beyond `order` are dropped; missing ones are zero.
    pub fn new(order: usize, mut coeffs: Vec<UniPoly>) -> Self {
        coeffs.resize(order + 1, UniPoly::zero(Var::U));
        TruncBiSeries { order, coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self::new(order, vec![])
    }

    /// `I_0(sqrt(u) t) = sum_m (u/4)^m t^{2m} / (m!)^2`.
    pub fn bessel_i0_sqrt_u(order: usize) -> Self {
        let mut c = vec![UniPoly::zero(Var::U); order + 1];
        for m in 0..=order / 2 {
            let f = factorial(m as u64);
            let den = BigInt::from(4).pow(m as u32) * &f * &f;
            c[2 * m] = UniPoly::monomial(Var::U, BigRational::new(BigInt::one(), den), m);
        }
        Self::new(order, c)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[UniPoly] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> &UniPoly {
        &self.coeffs[n]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(UniPoly::is_zero)
    }

    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order, "cannot extend a truncated series");
        Self::new(order, self.coeffs[..=order].to_vec())
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.order.min(o.order);
        Self::new(n, (0..=n).map(|i| &self.coeffs[i] + &o.coeffs[i]).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&q(-1)))
    }

    pub fn scale(&self, c: &ExactScalar) -> Self {
        Self::new(self.order, self.coeffs.iter().map(|p| p.scale(c)).collect())
    }

    /// Multiply by `t^k`; known order grows by `k`.
    pub fn mul_t_pow(&self, k: usize) -> Self {
        let mut c = vec![UniPoly::zero(Var::U); k];
        c.extend(self.coeffs.iter().cloned());
        Self::new(self.order + k, c)
    }

    /// Multiply by a polynomial in `u`.
    pub fn mul_u_poly(&self, p: &UniPoly) -> Self {
        Self::new(self.order, self.coeffs.iter().map(|a| a * p).collect())
    }

    /// Apply an operator in `t` (acting on the grading) or in `u` (acting on
    /// every coefficient). Returns the result at the largest order it is known to.
    pub fn apply(&self, op: &DiffOp) -> Result<Self> {
        let coeffs = op.poly_coeffs()?;
        match op.var() {
            Var::U => {
                let out = self
                    .coeffs
                    .iter()
                    .map(|a| {
                        let mut acc = UniPoly::zero(Var::U);
                        let mut d = a.clone();
                        for c in &coeffs {
                            acc = &acc + &(&c.clone().with_var(Var::U) * &d);
                            d = d.derivative();
                        }
                        acc
                    })
                    .collect();
                Ok(Self::new(self.order, out))
            }
            Var::T => {
                let loss = coeffs
                    .iter()
                    .enumerate()
                    .filter_map(|(j, c)| c.valuation().map(|v| j as i64 - v as i64))
                    .max()
                    .unwrap_or(0)
                    .max(0) as usize;
                if loss > self.order {
                    return Err(ExactError::Truncation {
                        order: self.order,
                        loss,
                    });
                }
                let n_out = self.order - loss;
                let mut out = vec![UniPoly::zero(Var::U); n_out + 1];
                for (j, c) in coeffs.iter().enumerate() {
                    for (i, ci) in c.coeffs().iter().enumerate() {
                        if ci.is_zero() {
                            continue;
                        }
                        for (n, a) in self.coeffs.iter().enumerate().skip(j) {
                            let m = n + i - j;
                            if m > n_out {
                                break;
                            }
                            let ff: BigInt = ((n - j + 1)..=n).map(BigInt::from).product();
                            let s = ci * BigRational::from_integer(ff);
                            out[m] = &out[m] + &a.scale(&s);
                        }
                    }
                }
                Ok(Self::new(n_out, out))
            }
        }
    }
}

/// Free-function form of [`TruncBiSeries::apply`].
pub fn series_apply(op: &DiffOp, s: &TruncBiSeries) -> Result<TruncBiSeries> {
    s.apply(op)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratfunc::RatFunc;

    #[test]
    fn euler_operator_multiplies_by_degree() {
        let s = TruncBiSeries::bessel_i0_sqrt_u(10);
        let r = s.apply(&DiffOp::euler(Var::T)).unwrap();
        assert_eq!(r.order(), 10);
        for n in 0..=10 {
            assert_eq!(r.coeff(n), &s.coeff(n).scale(&q(n as i64)));
        }
    }

    #[test]
    fn identity_is_noop() {
        let s = TruncBiSeries::bessel_i0_sqrt_u(9);
        assert_eq!(s.apply(&DiffOp::identity(Var::T)).unwrap(), s);
        assert_eq!(s.apply(&DiffOp::identity(Var::U)).unwrap(), s);
    }

    #[test]
    fn bessel_equation_in_u() {
        // (u D_u^2 + D_u) I0(sqrt(u) t) = t^2/4 I0(sqrt(u) t)
        let s = TruncBiSeries::bessel_i0_sqrt_u(16);
        let op = DiffOp::from_polys(
            Var::U,
            vec![
                UniPoly::zero(Var::U),
                UniPoly::one(Var::U),
                UniPoly::x(Var::U),
            ],
        );
        let lhs = s.apply(&op).unwrap();
        let rhs = s.mul_t_pow(2).scale(&crate::qr(1, 4)).truncate(16);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn pure_derivative_loses_order() {
        let s = TruncBiSeries::bessel_i0_sqrt_u(6);
        let d2 = DiffOp::d(Var::T).pow(2);
        assert_eq!(s.apply(&d2).unwrap().order(), 4);
        assert!(s.apply(&DiffOp::d(Var::T).pow(7)).is_err());
        let non_poly = DiffOp::mul_by(RatFunc::from_poly(UniPoly::x(Var::T)).recip().unwrap());
        assert!(s.apply(&non_poly).is_err());
    }
}
