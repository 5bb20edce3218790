//! Closed-form constants: the Wrońskian normalizations `Λ_{2k-1}`, `λ_{2k}`,
//! determinants of the normalized Broadhurst–Roberts matrices, and
//! determinants of Betti matrices and their even minors.
//!
//! Values that are not rational are kept as `c·√r·π^{p/2}` with `r`
//! square-free; only multiplication and comparison are supported.

use crate::constants::ConstName::*;
use crate::util::{fact, pow2, sgn, Q};
use crate::{BrError, Result};
use exactalg::{double_factorial, format_q, pow_q, q};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// `coeff · √radicand · π^{pi_half/2}` with a square-free positive radicand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Surd {
    pub coeff: Q,
    pub radicand: BigInt,
    pub pi_half: i64,
}

/// Square-free part and square root of the square part: `n = s² · f`.
fn split_square(n: u64) -> (u64, u64) {
    let (mut n, mut s, mut f) = (n, 1u64, 1u64);
    let mut p = 2u64;
    while p * p <= n {
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        s *= p.pow(e / 2);
        if e % 2 == 1 {
            f *= p;
        }
        p += 1;
    }
    (s, f * n)
}

impl Surd {
    pub fn rational(c: Q) -> Self {
        Surd {
            coeff: c,
            radicand: BigInt::one(),
            pi_half: 0,
        }
    }

    /// `√n` for a small positive integer.
    pub fn sqrt_int(n: u64) -> Self {
        assert!(n > 0, "square root of zero");
        let (s, f) = split_square(n);
        Surd {
            coeff: q(s as i64),
            radicand: BigInt::from(f),
            pi_half: 0,
        }
    }

    /// `√π^e`.
    pub fn sqrt_pi_pow(e: i64) -> Self {
        Surd {
            coeff: q(1),
            radicand: BigInt::one(),
            pi_half: e,
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        // Both radicands are square-free, so √a·√b = g·√((a/g)(b/g)), g = gcd.
        let g = self.radicand.gcd(&o.radicand);
        let rad = (&self.radicand / &g) * (&o.radicand / &g);
        Surd {
            coeff: &self.coeff * &o.coeff * BigRational::from_integer(g),
            radicand: rad,
            pi_half: self.pi_half + o.pi_half,
        }
    }

    pub fn recip(&self) -> Self {
        // 1/(c√r) = √r/(c r)
        Surd {
            coeff: (&self.coeff * BigRational::from_integer(self.radicand.clone())).recip(),
            radicand: self.radicand.clone(),
            pi_half: -self.pi_half,
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Surd::rational(q(1)), |acc, _| acc.mul(self))
    }

    pub fn is_rational(&self) -> bool {
        self.radicand.is_one() && self.pi_half == 0
    }

    pub fn signum(&self) -> i32 {
        if self.coeff.is_zero() {
            0
        } else if self.coeff.is_positive() {
            1
        } else {
            -1
        }
    }

    /// Double-precision value (for display and quick numeric comparisons).
    pub fn to_f64(&self) -> f64 {
        let c = self
            .coeff
            .numer()
            .to_string()
            .parse::<f64>()
            .unwrap_or(f64::NAN)
            / self
                .coeff
                .denom()
                .to_string()
                .parse::<f64>()
                .unwrap_or(f64::NAN);
        let r: f64 = self.radicand.to_string().parse().unwrap_or(f64::NAN);
        c * r.sqrt() * std::f64::consts::PI.powf(self.pi_half as f64 / 2.0)
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_q(&self.coeff))?;
        if !self.radicand.is_one() {
            write!(f, "·√{}", self.radicand)?;
        }
        if self.pi_half != 0 {
            write!(f, "·π^({}/2)", self.pi_half)?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ConstName {
    /// `Λ_{2k-1}`.
    LambdaOdd,
    /// `λ_{2k}`.
    LambdaEven,
    /// `det M̌_k`, normalized Broadhurst–Roberts matrix for odd moments.
    DetMFormula,
    /// `det Ň_k`, its even counterpart.
    DetNFormula,
    /// `det 𝔅_k` through `Λ_{2k-1}`.
    DetBettiFormula,
    /// `det 𝔅_k^e`.
    DetBettiMinorEven,
}

impl FromStr for ConstName {
    type Err = BrError;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "LambdaOdd" => LambdaOdd,
            "lambdaEven" => LambdaEven,
            "detM_formula" => DetMFormula,
            "detN_formula" => DetNFormula,
            "detBetti_formula" => DetBettiFormula,
            "detBettiMinorEven" => DetBettiMinorEven,
            _ => return Err(BrError::UnknownName(s.to_string())),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedConstant {
    pub name: ConstName,
    pub k: usize,
    pub value: Surd,
}

fn prod_pow_self(n: i64) -> Q {
    (1..=n).map(|j| pow_q(&q(j), j)).product()
}

fn lambda_odd(k: i64) -> Q {
    let f = fact(2 * k);
    q(k) / q(2 * k + 1) * sgn((k - 1) * (k - 2) / 2) / pow2(k * (2 * k - 3)) * pow_q(&f, 2 * k - 1)
        / prod_pow_self(2 * k)
}

fn lambda_even(k: i64) -> Q {
    let f = fact(2 * k + 1);
    q(2 * k + 1) / q(2 * (k + 1)) * sgn(k * (k - 1) / 2) / pow2((2 * k - 1) * k) * pow_q(&f, 2 * k)
        / prod_pow_self(2 * k + 1)
}

fn dfact(n: i64) -> Q {
    BigRational::from_integer(double_factorial(n))
}

/// `det M̌_k = (-1)^{k(k-1)/2} ∏_j (2j)^{k-j} / √((2j+1)^{2j+1})`.
fn det_m(k: i64) -> Surd {
    let mut v = Surd::rational(sgn(k * (k - 1) / 2));
    for j in 1..=k {
        let odd = (2 * j + 1) as u64;
        let s = Surd::sqrt_int(odd).pow((2 * j + 1) as u32).recip();
        v = v.mul(&Surd::rational(pow_q(&q(2 * j), k - j))).mul(&s);
    }
    v
}

/// `Γ(n/2)` as a surd.
fn gamma_half(n: i64) -> Surd {
    if n % 2 == 0 {
        Surd::rational(fact(n / 2 - 1))
    } else {
        // Γ(m + 1/2) = (2m-1)!!/2^m · √π
        let m = (n - 1) / 2;
        Surd::rational(dfact(2 * m - 1) / pow2(m)).mul(&Surd::sqrt_pi_pow(1))
    }
}

/// `det Ň_k`: the determinant formula for `N_k` times `π^{-k²/2-k}` and the
/// column signs `(-1)^{k(k-1)/2}`.
fn det_n(k: i64) -> Surd {
    let p: Q = (1..=k + 1)
        .map(|j| pow_q(&q(2 * j - 1), k + 1 - j) / pow_q(&q(2 * j), j))
        .product();
    // π exponent: (k+1)²/2 - k²/2 - k = 1/2.
    Surd::rational(q(2) * p * sgn(k * (k - 1) / 2))
        .mul(&Surd::sqrt_pi_pow(1))
        .mul(&gamma_half(k + 1).recip())
}

fn det_betti(k: i64) -> Q {
    sgn(k - 1) * fact(2 * k - 1) / pow2(5 * k - 1) * lambda_odd(k)
}

fn det_betti_even_minor(k: i64) -> Q {
    let d = dfact(2 * k + 1);
    let odd_k = k % 2 == 1;
    let num = if odd_k { &d * &d } else { d.clone() };
    let kk = if odd_k { pow_q(&dfact(k), 2) } else { q(1) };
    let den = pow_q(&q(-2), k / 2) * dfact(k - 1) * kk;
    let mid = pow_q(&(d / pow2(k + 1)), 2 * (k / 2));
    let prod: Q = (1..=k)
        .map(|j| pow_q(&q(2 * j), k - j) / pow_q(&q(2 * j + 1), j + 1))
        .product();
    num / den * mid * prod
}

/// Evaluate a named constant at `k >= 1`.
pub fn named_constant(name: ConstName, k: usize) -> Result<NamedConstant> {
    if k == 0 {
        return Err(BrError::Range {
            what: "k",
            value: k,
        });
    }
    let ki = k as i64;
    let value = match name {
        LambdaOdd => Surd::rational(lambda_odd(ki)),
        LambdaEven => Surd::rational(lambda_even(ki)),
        DetMFormula => det_m(ki),
        DetNFormula => det_n(ki),
        DetBettiFormula => Surd::rational(det_betti(ki)),
        DetBettiMinorEven => Surd::rational(det_betti_even_minor(ki)),
    };
    Ok(NamedConstant { name, k, value })
}

#[cfg(test)]
mod tests {
    use super::*;
    use exactalg::qr;

    #[test]
    fn lambda_values() {
        assert_eq!(lambda_odd(1), qr(1, 3));
        assert_eq!(lambda_odd(2), qr(1, 20));
    }

    #[test]
    fn det_m_three() {
        // -2^4 / √(3³ 5⁵ 7⁷)
        let want = Surd::rational(q(-16)).mul(&Surd::sqrt_int(27 * 3125 * 823543).recip());
        assert_eq!(det_m(3), want);
    }

    #[test]
    fn det_n_two() {
        assert_eq!(det_n(2), Surd::rational(qr(-1, 576)));
        assert!(!det_n(1).is_rational());
    }

    #[test]
    fn surd_arithmetic() {
        let s = Surd::sqrt_int(12);
        assert_eq!(
            (s.coeff.clone(), s.radicand.clone()),
            (q(2), BigInt::from(3))
        );
        assert_eq!(s.mul(&Surd::sqrt_int(3)), Surd::rational(q(6)));
        assert_eq!(s.mul(&s.recip()), Surd::rational(q(1)));
    }
}
