//! The constant kernels `Σ_{2k-1}` (symmetric) and `σ_{2k}` (skew), and the
//! Bernoulli closed forms of their inverses.

use crate::util::{bern, delta, fact, fl2, pow2, sgn, QMatrix, Q};
use exactalg::{binom, q, ExactMatrix};
use num_traits::Zero;

fn sigma_odd_entry(k: i64, a: i64, b: i64) -> Q {
    let top = |x: i64| x <= k;
    match (top(a), top(b)) {
        (true, true) => {
            if (a + b) % 2 != 0 {
                return Q::zero();
            }
            let sum: Q = (1..=k + 1 - a)
                .map(|s| sgn(s) * binom(2 * k + 1 - a, k + s) * binom(k - s, b - 1))
                .sum();
            let pre = q(1 + 2 * k * delta(a, 1)) * q(1 + 2 * k * delta(b, 1)) * pow2(2 * k - 1);
            pre * sum / (sgn(fl2(a) + fl2(b) - k) * fact(a - 1) * fact(2 * k + 1 - a))
        }
        (true, false) => sigma_odd_b(k, a, b - k),
        (false, true) => sigma_odd_b(k, b, a - k),
        (false, false) => {
            let (a, b) = (a - k, b - k);
            if a % 2 != 0 || b % 2 != 0 {
                return Q::zero();
            }
            let k_fact = fact(k);
            q(4) * pow_neg4(k - 1) / (&k_fact * &k_fact) / sgn(fl2(a) + fl2(b))
                * binom(k, a + 1)
                * binom(k, b + 1)
        }
    }
}

/// Upper-right block entry `Σ^B_{a,b'}`.
fn sigma_odd_b(k: i64, a: i64, bp: i64) -> Q {
    // ((-1)^{a-1} + (-1)^{b'})/2 is 0 or ±1.
    let par = (sgn(a - 1) + sgn(bp)) / q(2);
    if par.is_zero() {
        return par;
    }
    let sum: Q = (1..=k + 1 - a)
        .map(|s| {
            sgn(s)
                * binom(2 * k + 1 - a, k + s)
                * (binom(k - s, bp + 1) + sgn(bp) * binom(k + s, bp + 1))
        })
        .sum();
    par * q(1 + 2 * k * delta(a, 1)) * pow2(2 * k - 1) * sum
        / (sgn(fl2(a) + fl2(bp) - k) * fact(a - 1) * fact(2 * k + 1 - a))
}

fn pow_neg4(e: i64) -> Q {
    sgn(e) * pow2(2 * e)
}

/// `Σ_{2k-1}`, a symmetric `(2k-1)×(2k-1)` rational matrix.
pub fn mat_sigma_odd(k: usize) -> QMatrix {
    assert!(k >= 1, "Σ_{{2k-1}} needs k >= 1");
    let n = 2 * k - 1;
    ExactMatrix::from_fn1(n, n, |a, b| sigma_odd_entry(k as i64, a, b))
}

/// The rewritten first row `Σ_{1,b}`, independent of the block formula.
pub fn sigma_first_row_alt(k: usize, b: usize) -> Q {
    let (k, b) = (k as i64, b as i64);
    let k_fact = fact(k);
    let scale = pow_neg4(k - 1) * q(2 * k + 1) / (&k_fact * &k_fact);
    let v = if b == 1 {
        q(2 * k + 1)
    } else if b <= k {
        if b % 2 == 0 {
            return Q::zero();
        }
        q(2) / sgn(fl2(b)) * q(b) / q(2 * k + 1 - b) * binom(k, b)
    } else {
        if (b - k) % 2 != 0 {
            return Q::zero();
        }
        q(2) / sgn(fl2(b - k)) * binom(k, b - k + 1)
    };
    scale * v
}

fn sigma_even_entry(k: i64, a: i64, b: i64) -> Q {
    let top = |x: i64| x <= k + 1;
    match (top(a), top(b)) {
        (true, true) => {
            if (a + b) % 2 == 0 {
                return Q::zero();
            }
            let sum: Q = (1..=k + 2 - a)
                .map(|s| sgn(s) * binom(2 * k + 2 - a, k + s) * binom(k + 1 - s, b - 1))
                .sum();
            let pre = q(2)
                * pow2(2 * k - 1)
                * q(1 + (2 * k + 1) * delta(a, 1))
                * q(1 + (2 * k + 1) * delta(b, 1));
            pre * sum / (sgn(fl2(a) + fl2(b - 1) + k - 1) * fact(a - 1) * fact(2 * k + 2 - a))
        }
        (true, false) => sigma_even_b(k, a, b - k - 1),
        (false, true) => -sigma_even_b(k, b, a - k - 1),
        (false, false) => Q::zero(),
    }
}

fn sigma_even_b(k: i64, a: i64, bp: i64) -> Q {
    if (a + bp) % 2 != 0 {
        return Q::zero();
    }
    let sum: Q = (1..=k + 2 - a)
        .map(|s| {
            sgn(s)
                * binom(2 * k + 2 - a, k + s)
                * (binom(k + 1 - s, bp + 1) + sgn(bp) * binom(k + s, bp + 1))
        })
        .sum();
    q(2) * pow2(2 * k - 1) * sum
        / (sgn(fl2(a - 1) + fl2(bp + 1) + k) * fact(a - 1) * fact(2 * k + 2 - a))
}

/// `σ_{2k}`, a skew-symmetric `2k×2k` rational matrix.
pub fn mat_sigma_even(k: usize) -> QMatrix {
    assert!(k >= 1, "σ_{{2k}} needs k >= 1");
    let n = 2 * k;
    ExactMatrix::from_fn1(n, n, |a, b| sigma_even_entry(k as i64, a, b))
}

/// Closed form of `Σ_{2k-1}^{-1}` in Bernoulli numbers (no inversion).
pub fn mat_sigma_odd_inv_bernoulli(k: usize) -> QMatrix {
    let n = 2 * k - 1;
    let k = k as i64;
    ExactMatrix::from_fn1(n, n, |a, b| {
        let (lo, hi) = (a.min(b), a.max(b));
        let c = pow2(2 - 2 * k);
        if hi <= k {
            if lo != 1 {
                return Q::zero();
            }
            c * fact(2 * k) / (q(2 * k + 1) * sgn(k + 1 + fl2(2 * k + 1 - a - b)))
                * bern(2 * k + 2 - a - b)
        } else if lo <= k {
            let corr = if lo == 1 {
                Q::new((k - a - b).into(), (2 * k + 1).into())
            } else {
                Q::zero()
            } + q(1);
            c * corr / sgn(hi + 1 + fl2(3 * k - a - b))
                * fact(3 * k - 1 - hi)
                * fact(2 * k + 1 - lo)
                / fact(3 * k + 1 - a - b)
                * bern(3 * k + 1 - a - b)
        } else {
            c * q(4 * k - 1 - a - b) / sgn(a + 1 + fl2(4 * k - 1 - a - b))
                * fact(3 * k - 1 - a)
                * fact(3 * k - 1 - b)
                / fact(4 * k - a - b)
                * bern(4 * k - a - b)
        }
    })
}

/// Closed form of `σ_{2k}^{-1}` in Bernoulli numbers (no inversion).
pub fn mat_sigma_even_inv_bernoulli(k: usize) -> QMatrix {
    let n = 2 * k;
    let k = k as i64;
    ExactMatrix::from_fn1(n, n, |a, b| {
        let (lo, hi) = (a.min(b), a.max(b));
        if hi <= k + 1 {
            if lo != 1 {
                return Q::zero();
            }
            pow2(1 - 2 * k) * fact(2 * k + 1) / (q(2 * k + 2) * sgn(k + a + fl2(2 * k + 2 - a - b)))
                * bern(2 * k + 3 - a - b)
        } else if lo <= k + 1 {
            let corr = if lo == 1 {
                Q::new((k + 1 - a - b).into(), (2 * k + 2).into())
            } else {
                Q::zero()
            } + q(1);
            let sign_ba = if b > a { q(1) } else { q(-1) };
            // The power of two here is 2^{1-2k}; 2^{2-2k} would make this
            // block twice the true inverse.
            pow2(1 - 2 * k) * corr / sgn(hi + 1 + fl2(3 * k + 2 - a - b))
                * fact(3 * k + 1 - hi)
                * fact(2 * k + 2 - lo)
                / (fact(3 * k + 3 - a - b) * sign_ba)
                * bern(3 * k + 3 - a - b)
        } else {
            pow2(1 - 2 * k) * q(4 * k + 2 - a - b) / sgn(a + fl2(4 * k + 2 - a - b))
                * fact(3 * k + 1 - a)
                * fact(3 * k + 1 - b)
                / fact(4 * k + 3 - a - b)
                * bern(4 * k + 3 - a - b)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        assert_eq!(mat_sigma_odd(1), ExactMatrix::from_ints(&[&[9]]));
        assert_eq!(*mat_sigma_odd(2).at(1, 1), q(-25));
        assert_eq!(sigma_first_row_alt(2, 1), q(-25));
    }

    #[test]
    fn first_row_two_ways() {
        for k in 1..=6 {
            let s = mat_sigma_odd(k);
            for b in 1..=2 * k - 1 {
                assert_eq!(*s.at(1, b), sigma_first_row_alt(k, b), "k={k} b={b}");
            }
        }
    }

    #[test]
    fn symmetry() {
        for k in 1..=6 {
            assert!(mat_sigma_odd(k).is_symmetric(), "k={k}");
            assert!(mat_sigma_even(k).is_skew_symmetric(), "k={k}");
            let s = mat_sigma_even(k);
            assert!(s.block(k + 1, k + 1, k - 1, k - 1).is_zero());
        }
    }

    #[test]
    fn closed_inverses() {
        for k in 2..=5 {
            let n = 2 * k - 1;
            assert_eq!(
                mat_sigma_odd(k).mul(&mat_sigma_odd_inv_bernoulli(k)),
                QMatrix::identity(n),
                "odd k={k}"
            );
            assert_eq!(
                mat_sigma_even(k).mul(&mat_sigma_even_inv_bernoulli(k)),
                QMatrix::identity(2 * k),
                "even k={k}"
            );
        }
    }
}
