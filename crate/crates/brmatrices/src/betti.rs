//! Betti matrices `𝔅_k`, `𝔟_k`, their companions `𝔅̊_k`, `𝔟̊_k`, and the
//! combinatorial matrices `𝔖_k = 𝔅_k^{-1}` and `𝔖̊_k`.

use crate::sigma::{mat_sigma_even_inv_bernoulli, mat_sigma_odd_inv_bernoulli};
use crate::util::{bern, fact, fl2, pow2, sgn, QMatrix, Q};
use exactalg::{binom, q, recip_fact_ext, ExactMatrix};
use num_traits::Zero;

/// `𝔅_k` from its Bernoulli closed form.
pub fn betti_odd(k: usize) -> QMatrix {
    let k = k as i64;
    ExactMatrix::from_fn1(k as usize, k as usize, |a, b| {
        sgn(a + 1) / pow2(2 * k + 2) * fact(2 * k + 1 - a) * fact(2 * k + 1 - b)
            / fact(2 * k + 2 - a - b)
            * bern(2 * k + 2 - a - b)
            / sgn(fl2(2 * k + 1 - a - b))
    })
}

/// `𝔟_k` from its Bernoulli closed form.
pub fn betti_even(k: usize) -> QMatrix {
    let k = k as i64;
    ExactMatrix::from_fn1(k as usize, k as usize, |a, b| {
        sgn(a + 1) / pow2(2 * k + 3) * fact(2 * k + 2 - a) * fact(2 * k + 2 - b)
            / fact(2 * k + 3 - a - b)
            * bern(2 * k + 3 - a - b)
            / sgn(fl2(2 * k + 2 - a - b))
    })
}

/// `𝔅_k` assembled from entries of `Σ_{2k+1}^{-1}` (closed form).
pub fn betti_odd_from_sigma_inv(k: usize) -> QMatrix {
    let inv = mat_sigma_odd_inv_bernoulli(k + 1);
    let den = q(4 * (2 * k as i64 + 3)) * sgn(k as i64);
    ExactMatrix::from_fn1(k, k, |a, b| {
        let (a, b, k) = (a as usize, b as usize, k);
        (inv.at(a + k + 1, b + k + 1) - inv.at(a + 1, b + k + 1) - inv.at(a + k + 1, b + 1)) / &den
    })
}

/// `𝔟_k` assembled from entries of `σ_{2k+2}^{-1}` (closed form).
pub fn betti_even_from_sigma_inv(k: usize) -> QMatrix {
    let inv = mat_sigma_even_inv_bernoulli(k + 1);
    let den = q(4 * (2 * k as i64 + 4)) * sgn(k as i64);
    ExactMatrix::from_fn1(k, k, |a, b| {
        let (a, b, k) = (a as usize, b as usize, k);
        (inv.at(a + k + 2, b + k + 2) - inv.at(a + 1, b + k + 2) - inv.at(a + k + 2, b + 1)) / &den
    })
}

/// `𝔅̊_k`.
pub fn betti_odd_ring(k: usize) -> QMatrix {
    let k = k as i64;
    ExactMatrix::from_fn1(k as usize, k as usize, |a, b| {
        let (lo, hi) = (a.min(b), a.max(b));
        if lo == 1 {
            fact(2 * k) / pow2(2 * k + 2) * bern(2 * k + 2 - hi) / sgn(a + fl2(2 * k + 1 - hi))
        } else {
            q(2 * k + 2 - a - b) / pow2(2 * k + 2) * fact(2 * k + 1 - a) * fact(2 * k + 1 - b)
                / fact(2 * k + 3 - a - b)
                * bern(2 * k + 3 - a - b)
                / sgn(a + fl2(2 * k + 2 - a - b))
        }
    })
}

/// `𝔟̊_k`.
pub fn betti_even_ring(k: usize) -> QMatrix {
    let k = k as i64;
    ExactMatrix::from_fn1(k as usize, k as usize, |a, b| {
        let (lo, hi) = (a.min(b), a.max(b));
        if lo == 1 {
            let corner = if a == 1 && b == 1 {
                Q::new(1.into(), (2 * k + 2).into())
            } else {
                Q::zero()
            };
            fact(2 * k + 1) / pow2(2 * k + 3) * bern(2 * k + 3 - hi) / sgn(a + fl2(2 * k + 2 - hi))
                * (q(1) + corner)
        } else {
            q(2 * k + 3 - a - b) / pow2(2 * k + 3) * fact(2 * k + 2 - a) * fact(2 * k + 2 - b)
                / fact(2 * k + 4 - a - b)
                * bern(2 * k + 4 - a - b)
                / sgn(a + fl2(2 * k + 3 - a - b))
        }
    })
}

/// Entry `(𝔖_k)_{a,b}` of the binomial-sum formula (1-based).
pub fn frak_s_entry(k: usize, a: i64, b: i64) -> Q {
    let k = k as i64;
    if (a + b) % 2 != 0 {
        return Q::zero();
    }
    let sum: Q = (1..=k + 1 - a)
        .map(|s| {
            sgn(s) * binom(2 * k + 1 - a, k + s) * (binom(k + 1 - s, b) - sgn(b) * binom(k + s, b))
        })
        .sum();
    q(2) * pow2(2 * (k + 1)) * sum / (sgn(fl2(a) + fl2(b) - 1) * fact(a) * fact(2 * k + 1 - a))
}

/// `𝔖_k`; its inverse is `𝔅_k`.
pub fn frak_s(k: usize) -> QMatrix {
    ExactMatrix::from_fn1(k, k, |a, b| frak_s_entry(k, a, b))
}

/// Entry `(𝔖̊_k)_{a,b}` of the binomial-sum formula, valid for the formal
/// indices `a, b ∈ [-1, k]` as well (row/column `-1` vanish through `1/(-1)! = 0`
/// and `C(n, -1) = 0`).
pub fn frak_s_ring_entry(k: usize, a: i64, b: i64) -> Q {
    let k = k as i64;
    if a < 0 || b < 0 || (a + b + 1) % 2 != 0 {
        return Q::zero();
    }
    let sum: Q = (1..=k + 1 - a)
        .map(|s| sgn(s) * binom(2 * k + 1 - a, k + s) * binom(k + 1 - s, b))
        .sum();
    q(2) * pow2(2 * (k + 1)) * sum * recip_fact_ext(a)
        / (sgn(fl2(a + 1) + fl2(b) - 1) * fact(2 * k + 1 - a))
}

/// `𝔖̊_k`.
pub fn frak_s_ring(k: usize) -> QMatrix {
    ExactMatrix::from_fn1(k, k, |a, b| frak_s_ring_entry(k, a, b))
}

/// The separately stated zeroth row `(𝔖̊_k)_{0,b}`, `b ∈ [0, k]`.
pub fn frak_s_ring_zeroth(k: usize, b: i64) -> Q {
    let k = k as i64;
    if b % 2 == 0 {
        return Q::zero();
    }
    q(2) / q(2 * k + 1 - b) * pow2(2 * (k + 1)) * sgn(fl2(b)) / (fact(b) * fact(k) * fact(k - b))
}

/// Odd/odd and even/even index minors `(𝔅_k^o, 𝔅_k^e)`; `𝔅_1^e` is `0×0`.
pub fn betti_minors(k: usize) -> (QMatrix, QMatrix) {
    let b = betti_odd(k);
    let odd: Vec<usize> = (0..k).step_by(2).collect();
    let even: Vec<usize> = (1..k).step_by(2).collect();
    (b.select(&odd, &odd), b.select(&even, &even))
}

#[cfg(test)]
mod tests {
    use super::*;
    use exactalg::qr;

    #[test]
    fn spot_values() {
        assert_eq!(*betti_odd(2).at(1, 1), qr(1, 80));
        assert_eq!(*betti_odd(3).at(1, 3), qr(3, 32));
        assert_eq!(
            betti_even(2),
            ExactMatrix::from_rows(vec![vec![q(0), qr(1, 32)], vec![qr(-1, 32), q(0)]]).unwrap()
        );
        assert_eq!(*frak_s(1).at(1, 1), q(48));
        assert_eq!(
            betti_odd(1),
            ExactMatrix::from_rows(vec![vec![qr(1, 48)]]).unwrap()
        );
    }

    #[test]
    fn two_routes_to_betti() {
        for k in 1..=5 {
            assert_eq!(betti_odd(k), betti_odd_from_sigma_inv(k), "𝔅 k={k}");
            assert_eq!(betti_even(k), betti_even_from_sigma_inv(k), "𝔟 k={k}");
        }
    }

    #[test]
    fn s_inverts_b() {
        for k in 1..=5 {
            assert_eq!(frak_s(k).mul(&betti_odd(k)), QMatrix::identity(k), "k={k}");
            let b = betti_odd(k);
            assert_eq!(
                b.mul(&frak_s_ring(k)).mul(&b),
                betti_odd_ring(k),
                "ring k={k}"
            );
        }
    }

    #[test]
    fn zeroth_row() {
        for k in 1..=6 {
            for b in 0..=k as i64 {
                let z = frak_s_ring_zeroth(k, b);
                assert_eq!(frak_s_ring_entry(k, 0, b), z, "k={k} b={b}");
                assert_eq!(frak_s_ring_entry(k, b, 0), -z, "k={k} b={b}");
            }
        }
    }

    #[test]
    fn ring_symmetry() {
        for k in 1..=5 {
            assert!(betti_odd_ring(k).is_skew_symmetric(), "𝔅̊ k={k}");
            assert!(frak_s_ring(k).is_skew_symmetric(), "𝔖̊ k={k}");
        }
    }

    #[test]
    fn minors() {
        let (o, e) = betti_minors(1);
        assert_eq!((o.rows(), e.rows()), (1, 0));
        assert_eq!(e.det().unwrap(), q(1));
    }
}
