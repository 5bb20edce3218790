//! Linear differential operators `sum_j c_j(x) D^j` in right-normal form
//! (coefficients on the left, derivatives on the right).

use crate::poly::{UniPoly, Var};
use crate::ratfunc::RatFunc;
use crate::scalar::{binom, q};
use crate::{ExactError, Result};
use std::fmt;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DiffOp {
    var: Var,
    coeffs: Vec<RatFunc>,
}

impl DiffOp {
    pub fn new(var: Var, mut coeffs: Vec<RatFunc>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        DiffOp { var, coeffs }
    }

    pub fn from_polys(var: Var, coeffs: Vec<UniPoly>) -> Self {
        Self::new(var, coeffs.into_iter().map(RatFunc::from_poly).collect())
    }

    pub fn zero(var: Var) -> Self {
        DiffOp {
            var,
            coeffs: vec![],
        }
    }

    pub fn identity(var: Var) -> Self {
        Self::mul_by(RatFunc::one(var))
    }

    /// `d/dx`.
    pub fn d(var: Var) -> Self {
        Self::new(var, vec![RatFunc::zero(var), RatFunc::one(var)])
    }

    /// Multiplication by a function.
    pub fn mul_by(f: RatFunc) -> Self {
        let var = f.var();
        Self::new(var, vec![f])
    }

    /// `x d/dx`.
    pub fn euler(var: Var) -> Self {
        Self::new(
            var,
            vec![RatFunc::zero(var), RatFunc::from_poly(UniPoly::x(var))],
        )
    }

    /// `theta-hat = x D + 1`, i.e. `f -> D[x f]`.
    pub fn theta_hat(var: Var) -> Self {
        Self::new(
            var,
            vec![RatFunc::one(var), RatFunc::from_poly(UniPoly::x(var))],
        )
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn coeffs(&self) -> &[RatFunc] {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize) -> RatFunc {
        self.coeffs
            .get(j)
            .cloned()
            .unwrap_or_else(|| RatFunc::zero(self.var))
    }

    /// Order of the operator (`None` for zero).
    pub fn order(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn check(&self, o: &Self) -> Result<()> {
        if self.var != o.var {
            return Err(ExactError::VariableMismatch(self.var, o.var));
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let n = self.coeffs.len().max(o.coeffs.len());
        Ok(Self::new(
            self.var,
            (0..n).map(|j| &self.coeff(j) + &o.coeff(j)).collect(),
        ))
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.scale(&q(-1)))
    }

    pub fn scale(&self, c: &crate::ExactScalar) -> Self {
        Self::new(self.var, self.coeffs.iter().map(|f| f.scale(c)).collect())
    }

    /// `p * P` (left multiplication by a function).
    pub fn scale_mul(&self, p: &RatFunc) -> Self {
        Self::new(self.var, self.coeffs.iter().map(|f| p * f).collect())
    }

    /// `P o Q` in normal form via `D^i c = sum_r C(i,r) c^{(r)} D^{i-r}`.
    pub fn compose(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        if self.is_zero() || o.is_zero() {
            return Ok(Self::zero(self.var));
        }
        let n = self.coeffs.len() + o.coeffs.len() - 1;
        let mut out = vec![RatFunc::zero(self.var); n];
        for (j, qj) in o.coeffs.iter().enumerate() {
            if qj.is_zero() {
                continue;
            }
            let mut deriv = qj.clone();
            let mut derivs = vec![deriv.clone()];
            for _ in 1..self.coeffs.len() {
                deriv = deriv.derivative();
                derivs.push(deriv.clone());
            }
            for (i, pi) in self.coeffs.iter().enumerate() {
                if pi.is_zero() {
                    continue;
                }
                for (r, dq) in derivs.iter().enumerate().take(i + 1) {
                    if dq.is_zero() {
                        continue;
                    }
                    let c = &(pi * dq).scale(&binom(i as i64, r as i64));
                    out[i - r + j] = &out[i - r + j] + c;
                }
            }
        }
        Ok(Self::new(self.var, out))
    }

    pub fn pow(&self, e: usize) -> Self {
        (0..e).fold(Self::identity(self.var), |acc, _| {
            acc.compose(self).expect("same variable")
        })
    }

    /// `sum_i a_i base^i` for a scalar polynomial `sum_i a_i X^i`.
    pub fn poly_of(op_poly: &UniPoly, base: &Self) -> Self {
        op_poly
            .coeffs()
            .iter()
            .rev()
            .fold(Self::zero(base.var), |acc, c| {
                acc.compose(base)
                    .and_then(|p| p.add(&Self::mul_by(RatFunc::constant(base.var, c.clone()))))
                    .expect("same variable")
            })
    }

    /// Formal adjoint `sum_k (-1)^k D^k o c_k`.
    pub fn adjoint(&self) -> Self {
        let dd = Self::d(self.var);
        let mut acc = Self::zero(self.var);
        for (k, c) in self.coeffs.iter().enumerate() {
            let term = dd
                .pow(k)
                .compose(&Self::mul_by(c.clone()))
                .expect("same variable");
            let term = if k % 2 == 1 { term.scale(&q(-1)) } else { term };
            acc = acc.add(&term).expect("same variable");
        }
        acc
    }

    /// Apply to a function.
    pub fn apply(&self, f: &RatFunc) -> RatFunc {
        let mut acc = RatFunc::zero(self.var);
        let mut d = f.clone();
        for c in &self.coeffs {
            acc = &acc + &(c * &d);
            d = d.derivative();
        }
        acc
    }

    /// All coefficients as polynomials, if they are.
    pub fn poly_coeffs(&self) -> Result<Vec<UniPoly>> {
        self.coeffs
            .iter()
            .map(|c| {
                c.as_poly()
                    .ok_or_else(|| ExactError::NonPolynomial(c.to_string()))
            })
            .collect()
    }
}

impl fmt::Display for DiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| match j {
                0 => format!("({c})"),
                1 => format!("({c})*D"),
                _ => format!("({c})*D^{j}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}
