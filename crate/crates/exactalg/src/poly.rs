//! Dense univariate polynomials over the rationals.

use crate::scalar::{format_q, q, ExactScalar};
use crate::{ExactError, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Name of the indeterminate.  Constants are compatible with either tag.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Var {
    U,
    T,
}

impl Var {
    pub fn name(self) -> &'static str {
        match self {
            Var::U => "u",
            Var::T => "t",
        }
    }
}

/// `sum_i coeffs[i] x^i`; the coefficient list never ends in a zero.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct UniPoly {
    var: Var,
    coeffs: Vec<ExactScalar>,
}

impl UniPoly {
    pub fn new(var: Var, mut coeffs: Vec<ExactScalar>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { var, coeffs }
    }

    pub fn from_ints(var: Var, coeffs: &[i64]) -> Self {
        Self::new(var, coeffs.iter().map(|&c| q(c)).collect())
    }

    pub fn zero(var: Var) -> Self {
        UniPoly {
            var,
            coeffs: vec![],
        }
    }

    pub fn one(var: Var) -> Self {
        Self::constant(var, q(1))
    }

    pub fn constant(var: Var, c: ExactScalar) -> Self {
        Self::new(var, vec![c])
    }

    /// The indeterminate itself.
    pub fn x(var: Var) -> Self {
        Self::monomial(var, q(1), 1)
    }

    pub fn monomial(var: Var, c: ExactScalar, deg: usize) -> Self {
        let mut v = vec![ExactScalar::zero(); deg + 1];
        v[deg] = c;
        Self::new(var, v)
    }

    /// `prod (x - r)` over the given roots.
    pub fn from_roots(var: Var, roots: &[ExactScalar]) -> Self {
        roots.iter().fold(Self::one(var), |acc, r| {
            &acc * &Self::new(var, vec![-r.clone(), q(1)])
        })
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn with_var(mut self, var: Var) -> Self {
        self.var = var;
        self
    }

    pub fn coeffs(&self) -> &[ExactScalar] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> ExactScalar {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(ExactScalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> ExactScalar {
        self.coeffs
            .last()
            .cloned()
            .unwrap_or_else(ExactScalar::zero)
    }

    /// Lowest power with a nonzero coefficient (`None` for zero).
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.denom().is_one())
    }

    fn join_var(&self, other: &Self) -> Var {
        match (self.is_constant(), other.is_constant()) {
            (true, false) => other.var,
            (false, false) => {
                assert_eq!(
                    self.var, other.var,
                    "mixing polynomials in different variables"
                );
                self.var
            }
            _ => self.var,
        }
    }

    pub fn scale(&self, c: &ExactScalar) -> Self {
        if c.is_zero() {
            return Self::zero(self.var);
        }
        UniPoly {
            var: self.var,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiply by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![ExactScalar::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        UniPoly {
            var: self.var,
            coeffs: v,
        }
    }

    pub fn eval(&self, x: &ExactScalar) -> ExactScalar {
        self.coeffs
            .iter()
            .rev()
            .fold(ExactScalar::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * q(i as i64))
            .collect();
        Self::new(self.var, v)
    }

    pub fn derivative_n(&self, n: usize) -> Self {
        (0..n).fold(self.clone(), |p, _| p.derivative())
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut r = Self::one(self.var);
        for _ in 0..e {
            r = &r * self;
        }
        r
    }

    /// `self(g(x))`.
    pub fn compose(&self, g: &Self) -> Self {
        self.coeffs.iter().rev().fold(Self::zero(g.var), |acc, c| {
            &(&acc * g) + &Self::constant(g.var, c.clone())
        })
    }

    /// Euclidean division over the rationals.
    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self)> {
        if d.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        let var = self.join_var(d);
        let dd = d.coeffs.len() - 1;
        let lead_inv = d.lead().recip();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((Self::zero(var), Self::new(var, r)));
        }
        let mut quo = vec![ExactScalar::zero(); r.len() - dd];
        for i in (0..quo.len()).rev() {
            let c = &r[i + dd] * &lead_inv;
            if !c.is_zero() {
                for (j, dj) in d.coeffs.iter().enumerate() {
                    r[i + j] -= &c * dj;
                }
            }
            quo[i] = c;
        }
        r.truncate(dd);
        Ok((Self::new(var, quo), Self::new(var, r)))
    }

    /// Quotient of a division known to be exact.
    pub fn exact_div(&self, d: &Self) -> Self {
        let (quo, rem) = self.div_rem(d).expect("division by zero polynomial");
        debug_assert!(rem.is_zero(), "inexact polynomial division");
        quo
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.lead().recip())
    }

    /// Monic greatest common divisor (zero only if both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            // keep coefficients small between steps
            b = r.monic();
        }
        a.monic()
    }

    /// Smallest positive integer `d` with `d * self` integral.
    pub fn denominator_lcm(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    pub fn is_monic(&self) -> bool {
        self.lead().is_one()
    }

    /// Sign of the value at `x` (`0`, `1` or `-1`).
    pub fn sign_at(&self, x: &ExactScalar) -> i32 {
        let v = self.eval(x);
        if v.is_zero() {
            0
        } else if v.is_positive() {
            1
        } else {
            -1
        }
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let x = self.var.name();
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let coef = if a.is_one() && i > 0 {
                String::new()
            } else {
                format_q(&a)
            };
            let sep = if coef.is_empty() || i == 0 { "" } else { "*" };
            match i {
                0 => write!(f, "{coef}")?,
                1 => write!(f, "{coef}{sep}{x}")?,
                _ => write!(f, "{coef}{sep}{x}^{i}")?,
            }
        }
        Ok(())
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, o: &UniPoly) -> UniPoly {
        let var = self.join_var(o);
        let n = self.coeffs.len().max(o.coeffs.len());
        let v = (0..n).map(|i| self.coeff(i) + o.coeff(i)).collect();
        UniPoly::new(var, v)
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, o: &UniPoly) -> UniPoly {
        let var = self.join_var(o);
        let n = self.coeffs.len().max(o.coeffs.len());
        let v = (0..n).map(|i| self.coeff(i) - o.coeff(i)).collect();
        UniPoly::new(var, v)
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, o: &UniPoly) -> UniPoly {
        let var = self.join_var(o);
        if self.is_zero() || o.is_zero() {
            return UniPoly::zero(var);
        }
        let mut v = vec![ExactScalar::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        UniPoly::new(var, v)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly {
            var: self.var,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for UniPoly {
            type Output = UniPoly;
            fn $m(self, o: UniPoly) -> UniPoly { (&self).$m(&o) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::qr;

    fn u(c: &[i64]) -> UniPoly {
        UniPoly::from_ints(Var::U, c)
    }

    #[test]
    fn arithmetic_and_trimming() {
        let a = u(&[1, 2, 3]);
        let b = u(&[-1, -2, -3]);
        assert!((&a + &b).is_zero());
        assert_eq!((&a * &u(&[0, 1])).coeffs().len(), 4);
        assert_eq!(u(&[1, 1]).pow(3), u(&[1, 3, 3, 1]));
    }

    #[test]
    fn division_and_gcd() {
        let f = u(&[0, 9, -10, 1]); // u(u-1)(u-9)
        let g = u(&[-1, 1]);
        let (quo, r) = f.div_rem(&g).unwrap();
        assert!(r.is_zero());
        assert_eq!(quo, u(&[-9, 1]).shift(1));
        let h = u(&[-1, 0, 1]);
        assert_eq!(f.gcd(&h), g);
        assert!(f.div_rem(&UniPoly::zero(Var::U)).is_err());
    }

    #[test]
    fn derivative_eval_compose() {
        let f = u(&[0, 9, -10, 1]);
        assert_eq!(f.derivative(), u(&[9, -20, 3]));
        assert_eq!(f.eval(&q(1)), q(0));
        assert_eq!(f.eval(&qr(1, 2)), qr(17, 8));
        let sq = u(&[0, 0, 1]).compose(&u(&[1, 1]));
        assert_eq!(sq, u(&[1, 2, 1]));
    }

    #[test]
    fn roots_and_display() {
        let p = UniPoly::from_roots(Var::U, &[q(0), q(4)]);
        assert_eq!(p, u(&[0, -4, 1]));
        assert_eq!(p.to_string(), "u^2 - 4*u");
        assert_eq!(
            UniPoly::from_ints(Var::T, &[-3, 10, -10]).to_string(),
            "-10*t^2 + 10*t - 3"
        );
    }

    #[test]
    fn constants_mix_with_any_variable() {
        let c = UniPoly::constant(Var::U, q(2));
        let t = UniPoly::x(Var::T);
        assert_eq!((&c * &t).var(), Var::T);
    }
}
