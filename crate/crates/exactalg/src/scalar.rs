//! Rational scalars and the combinatorial conventions used by every formula.

use crate::{ExactError, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Arbitrary-size rational, always in lowest terms with positive denominator.
pub type ExactScalar = BigRational;

/// Integer as a rational.
pub fn q(n: i64) -> ExactScalar {
    BigRational::from_integer(BigInt::from(n))
}

/// `n/d` in lowest terms; panics on `d == 0`.
pub fn qr(n: i64, d: i64) -> ExactScalar {
    assert!(d != 0, "zero denominator");
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// `(-1)^e` for any integer exponent.
pub fn sign_pow(e: i64) -> ExactScalar {
    if e.rem_euclid(2) == 0 {
        q(1)
    } else {
        q(-1)
    }
}

/// `x^e` for integer `e` (negative powers invert).
pub fn pow_q(x: &ExactScalar, e: i64) -> ExactScalar {
    let mut r = ExactScalar::one();
    for _ in 0..e.unsigned_abs() {
        r *= x;
    }
    if e < 0 {
        r.recip()
    } else {
        r
    }
}

/// `n!` for `n >= 0`.
pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// `n!!` with `0!! = (-1)!! = 1`.
pub fn double_factorial(n: i64) -> BigInt {
    let mut r = BigInt::one();
    let mut i = n;
    while i > 1 {
        r *= i;
        i -= 2;
    }
    r
}

/// Binomial coefficient with the out-of-range convention: `C(n,k) = 0` for
/// `k` outside `[0,n]`.  Negative `n` never occurs in the formulas and is
/// rejected.
pub fn binom_ext(n: i64, k: i64) -> Result<ExactScalar> {
    if n < 0 {
        return Err(ExactError::NegativeBinomial { n, k });
    }
    if k < 0 || k > n {
        return Ok(ExactScalar::zero());
    }
    let k = k.min(n - k);
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    Ok(BigRational::from_integer(r))
}

/// [`binom_ext`] for index ranges that are non-negative by construction.
pub fn binom(n: i64, k: i64) -> ExactScalar {
    binom_ext(n, k).expect("binomial with negative upper index")
}

/// `1/n!`, with `1/n! = 0` for negative `n`.
pub fn recip_fact_ext(n: i64) -> ExactScalar {
    if n < 0 {
        ExactScalar::zero()
    } else {
        BigRational::new(BigInt::one(), factorial(n as u64))
    }
}

/// Canonical `num/den` string (`den` omitted when 1).
pub fn format_q(x: &ExactScalar) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parse `"a"`, `"a/b"` or a terminating decimal such as `"-0.25"`.
pub fn parse_q(s: &str) -> Result<ExactScalar> {
    let s = s.trim();
    let err = || ExactError::Parse(s.to_string());
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| err())?;
        let d: BigInt = d.trim().parse().map_err(|_| err())?;
        if d.is_zero() {
            return Err(err());
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((ip, fp)) = s.split_once('.') {
        let neg = ip.starts_with('-');
        let ip = ip.trim_start_matches(['-', '+']);
        let digits = format!("{}{}", if ip.is_empty() { "0" } else { ip }, fp);
        let n: BigInt = digits.parse().map_err(|_| err())?;
        let d = num_traits::pow(BigInt::from(10), fp.len());
        let v = BigRational::new(n, d);
        return Ok(if neg { -v } else { v });
    }
    let n: BigInt = s.parse().map_err(|_| err())?;
    Ok(BigRational::from_integer(n))
}

/// Whether a rational is an integer.
pub fn is_integer(x: &ExactScalar) -> bool {
    x.denom().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_conventions() {
        assert_eq!(binom_ext(4, 6).unwrap(), q(0));
        assert_eq!(binom_ext(5, 2).unwrap(), q(10));
        assert_eq!(binom_ext(3, -1).unwrap(), q(0));
        assert!(binom_ext(-1, 0).is_err());
    }

    #[test]
    fn reciprocal_factorials() {
        assert_eq!(recip_fact_ext(-2), q(0));
        assert_eq!(recip_fact_ext(0), q(1));
        assert_eq!(recip_fact_ext(4), qr(1, 24));
    }

    #[test]
    fn double_factorials() {
        assert_eq!(double_factorial(7), BigInt::from(105));
        assert_eq!(double_factorial(8), BigInt::from(384));
        assert_eq!(double_factorial(0), BigInt::from(1));
        assert_eq!(double_factorial(-1), BigInt::from(1));
    }

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["0", "-3", "7/12", "-691/2730"] {
            assert_eq!(format_q(&parse_q(s).unwrap()), s);
        }
        assert_eq!(parse_q("-0.25").unwrap(), qr(-1, 4));
        assert_eq!(parse_q("4/6").unwrap(), qr(2, 3));
        assert!(parse_q("1/0").is_err());
    }

    #[test]
    fn signed_powers() {
        assert_eq!(sign_pow(-3), q(-1));
        assert_eq!(pow_q(&qr(2, 3), -2), qr(9, 4));
        assert!(is_integer(&q(5)) && !is_integer(&qr(1, 2)));
    }
}
