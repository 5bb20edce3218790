use crate::{BrError, Result};
use exactalg::{
    bernoulli, factorial, format_q, pow_q, q, sign_pow, ExactMatrix, ExactScalar, RatFunc, UniPoly,
};
use num_rational::BigRational;

pub type QMatrix = ExactMatrix<ExactScalar>;
pub type UMatrix = ExactMatrix<RatFunc>;

pub(crate) type Q = ExactScalar;

/// `⌊n/2⌋` for any sign of `n`.
pub(crate) fn fl2(n: i64) -> i64 {
    n.div_euclid(2)
}

pub(crate) fn delta(a: i64, b: i64) -> i64 {
    i64::from(a == b)
}

/// `n!` for `n >= 0`.
pub(crate) fn fact(n: i64) -> Q {
    assert!(n >= 0, "factorial of {n}");
    BigRational::from_integer(factorial(n as u64))
}

pub(crate) fn bern(n: i64) -> Q {
    assert!(n >= 0, "Bernoulli index {n}");
    bernoulli(n as usize)
}

pub(crate) fn pow2(e: i64) -> Q {
    pow_q(&q(2), e)
}

/// `(-1)^e` as a rational.
pub(crate) fn sgn(e: i64) -> Q {
    sign_pow(e)
}

/// Sign `s ∈ {±1}` with `|p(u)| = s·p(u)` on the interval containing
/// `sample`.  The caller states the sign it expects from counting negative
/// linear factors; the sample evaluation must agree.
pub fn resolved_sign(p: &UniPoly, sample: &Q, expected: i32) -> Result<Q> {
    let s = p.sign_at(sample);
    if s != expected {
        return Err(BrError::Sign {
            what: p.to_string(),
            at: format_q(sample),
        });
    }
    Ok(q(i64::from(s)))
}

/// Positions (0-based) of the first differing entry, for mismatch messages.
pub(crate) fn first_diff(a: &QMatrix, b: &QMatrix) -> Option<(usize, usize)> {
    if a.rows() != b.rows() || a.cols() != b.cols() {
        return Some((usize::MAX, usize::MAX));
    }
    (0..a.rows())
        .flat_map(|i| (0..a.cols()).map(move |j| (i, j)))
        .find(|&(i, j)| a.get(i, j) != b.get(i, j))
}

pub(crate) fn diff_detail(a: &QMatrix, b: &QMatrix) -> String {
    match first_diff(a, b) {
        None => String::new(),
        Some((usize::MAX, _)) => format!(
            "shape {}x{} vs {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        ),
        Some((i, j)) => format!(
            "first difference at ({}, {}): {} vs {}",
            i + 1,
            j + 1,
            format_q(a.get(i, j)),
            format_q(b.get(i, j))
        ),
    }
}
