//! Rational functions in lowest terms with a monic denominator.

use crate::poly::{UniPoly, Var};
use crate::scalar::{format_q, ExactScalar};
use crate::{ExactError, Result};
use num_traits::One;
use num_traits::Zero;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFunc {
    num: UniPoly,
    den: UniPoly,
}

impl RatFunc {
    /// Reduce `num/den`; fails on a zero denominator.
    pub fn new(num: UniPoly, den: UniPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero(den.var()));
        }
        let g = num.gcd(&den);
        let (mut n, mut d) = if g.is_one() {
            (num, den)
        } else {
            (num.exact_div(&g), den.exact_div(&g))
        };
        let lc = d.lead();
        if !lc.is_one() {
            let inv = lc.recip();
            n = n.scale(&inv);
            d = d.scale(&inv);
        }
        Ok(RatFunc { num: n, den: d })
    }

    pub fn from_poly(p: UniPoly) -> Self {
        let var = p.var();
        RatFunc {
            num: p,
            den: UniPoly::one(var),
        }
    }

    pub fn constant(var: Var, c: ExactScalar) -> Self {
        Self::from_poly(UniPoly::constant(var, c))
    }

    pub fn zero(var: Var) -> Self {
        Self::from_poly(UniPoly::zero(var))
    }

    pub fn one(var: Var) -> Self {
        Self::from_poly(UniPoly::one(var))
    }

    pub fn num(&self) -> &UniPoly {
        &self.num
    }

    pub fn den(&self) -> &UniPoly {
        &self.den
    }

    pub fn var(&self) -> Var {
        if self.num.is_constant() {
            self.den.var()
        } else {
            self.num.var()
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    /// The polynomial itself if the denominator is 1.
    pub fn as_poly(&self) -> Option<UniPoly> {
        self.is_polynomial().then(|| self.num.clone())
    }

    pub fn recip(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn scale(&self, c: &ExactScalar) -> Self {
        if c.is_zero() {
            return Self::zero(self.var());
        }
        RatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn derivative(&self) -> Self {
        let n = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        let d = &self.den * &self.den;
        Self::new(n, d).expect("nonzero denominator")
    }

    pub fn derivative_n(&self, n: usize) -> Self {
        (0..n).fold(self.clone(), |f, _| f.derivative())
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.recip()? } else { self.clone() };
        Ok(RatFunc {
            num: base.num.pow(e.unsigned_abs() as usize),
            den: base.den.pow(e.unsigned_abs() as usize),
        })
    }

    /// Value at `x`; errors at a pole.  Since the representation is reduced,
    /// this is also the limit at a removable singularity of the original
    /// expression.
    pub fn eval(&self, x: &ExactScalar) -> Result<ExactScalar> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(ExactError::Pole { at: format_q(x) });
        }
        Ok(self.num.eval(x) / d)
    }

    /// `f(u0)` on the reduced representative, i.e. the limit through any
    /// removable singularity.
    pub fn value_or_limit(&self, u0: &ExactScalar) -> Result<ExactScalar> {
        self.eval(u0)
    }

    pub fn is_normalized(&self) -> bool {
        !self.den.is_zero() && self.den.is_monic() && self.num.gcd(&self.den).is_one()
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, o: &RatFunc) -> RatFunc {
        if self.den == o.den {
            return RatFunc::new(&self.num + &o.num, self.den.clone()).unwrap();
        }
        let n = &(&self.num * &o.den) + &(&o.num * &self.den);
        RatFunc::new(n, &self.den * &o.den).unwrap()
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, o: &RatFunc) -> RatFunc {
        self + &(-o)
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, o: &RatFunc) -> RatFunc {
        if self.is_zero() || o.is_zero() {
            return RatFunc::zero(self.var());
        }
        if self.is_polynomial() && o.is_polynomial() {
            return RatFunc::new(&self.num * &o.num, &self.den * &o.den).unwrap();
        }
        // cross-cancel first to keep intermediate degrees low
        let g1 = self.num.gcd(&o.den);
        let g2 = o.num.gcd(&self.den);
        let n = &self.num.exact_div(&g1) * &o.num.exact_div(&g2);
        let d = &self.den.exact_div(&g2) * &o.den.exact_div(&g1);
        RatFunc::new(n, d).unwrap()
    }
}

impl Div for &RatFunc {
    type Output = RatFunc;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: &RatFunc) -> RatFunc {
        self * &o.recip().expect("division by zero rational function")
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for RatFunc {
            type Output = RatFunc;
            fn $m(self, o: RatFunc) -> RatFunc { (&self).$m(&o) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

impl From<UniPoly> for RatFunc {
    fn from(p: UniPoly) -> Self {
        RatFunc::from_poly(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, qr};

    fn u(c: &[i64]) -> UniPoly {
        UniPoly::from_ints(Var::U, c)
    }

    #[test]
    fn removable_singularities() {
        let f = RatFunc::new(u(&[-1, 0, 1]), u(&[-1, 1])).unwrap();
        assert_eq!(f.value_or_limit(&q(1)).unwrap(), q(2));
        let g = &RatFunc::from_poly(u(&[0, 1])) * &RatFunc::new(u(&[1]), u(&[0, 1])).unwrap();
        assert_eq!(g.value_or_limit(&q(0)).unwrap(), q(1));
        let h = RatFunc::new(u(&[0, 9, -10, 1]), u(&[-1, 1])).unwrap();
        assert_eq!(h.value_or_limit(&q(1)).unwrap(), q(-8));
    }

    #[test]
    fn surviving_pole_is_reported() {
        let f = RatFunc::new(u(&[1]), u(&[-1, 1])).unwrap();
        assert!(matches!(
            f.value_or_limit(&q(1)),
            Err(ExactError::Pole { .. })
        ));
        assert!(RatFunc::new(u(&[1]), UniPoly::zero(Var::U)).is_err());
    }

    #[test]
    fn normalization_after_operations() {
        let a = RatFunc::new(u(&[2, 2]), u(&[0, 4])).unwrap();
        assert!(a.is_normalized());
        assert_eq!(a.den(), &u(&[0, 1]));
        let b = RatFunc::new(u(&[3]), u(&[1, 1])).unwrap();
        for r in [&a + &b, &a - &b, &a * &b, &a / &b, a.derivative()] {
            assert!(r.is_normalized(), "{r}");
        }
        assert_eq!((&a - &a), RatFunc::zero(Var::U));
    }

    #[test]
    fn derivative_of_reciprocal() {
        let f = RatFunc::new(u(&[1]), u(&[0, 1])).unwrap();
        assert_eq!(f.derivative().eval(&q(2)).unwrap(), qr(-1, 4));
        assert_eq!(f.pow(-2).unwrap(), RatFunc::from_poly(u(&[0, 0, 1])));
    }
}
