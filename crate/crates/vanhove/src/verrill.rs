//! Verrill's polynomials `𝒱_{m,k}(t)` and the Bessel power numbers `W_p(2k)`.

use crate::report::Report;
use exactalg::{q, ExactScalar, UniPoly, Var};
use num_bigint::BigInt;
use num_traits::Zero;
use once_cell::sync::Lazy;
use parking_lot::Mutex;
use std::collections::HashMap;

/// Index tuple `α_1 > … > α_k` with gaps of at least two, entries in `[1, m+1]`.
/// The exponent terminator `α_{k+1} = 1` is implicit and unconstrained.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphaTuple {
    pub alpha: Vec<i64>,
}

impl AlphaTuple {
    /// `α_n` for `n ∈ [1, k+1]`, with the terminator at `k+1`.
    pub fn get(&self, n: usize) -> i64 {
        if n == self.alpha.len() + 1 {
            1
        } else {
            self.alpha[n - 1]
        }
    }

    pub fn len(&self) -> usize {
        self.alpha.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alpha.is_empty()
    }
}

/// All admissible tuples of length `k` for order `m`.
pub fn alpha_tuples(m: usize, k: usize) -> Vec<AlphaTuple> {
    fn rec(m: i64, k: usize, cur: &mut Vec<i64>, out: &mut Vec<AlphaTuple>) {
        if cur.len() == k {
            out.push(AlphaTuple { alpha: cur.clone() });
            return;
        }
        let hi = cur.last().map_or(m + 1, |&a| a - 2);
        for a in 1..=hi {
            cur.push(a);
            rec(m, k, cur, out);
            cur.pop();
        }
    }
    let mut out = vec![];
    rec(m as i64, k, &mut vec![], &mut out);
    out
}

static VERRILL: Lazy<Mutex<HashMap<(usize, usize), UniPoly>>> = Lazy::new(Default::default);

/// `𝒱_{m,0} = t^m`; for `k ≥ 1` the sum over [`alpha_tuples`] of
/// `t^{m+1-α_1} ∏_n α_n(α_n-m-2)(t-n)^{α_n-α_{n+1}}`.
pub fn verrill_poly(m: usize, k: usize) -> UniPoly {
    if let Some(p) = VERRILL.lock().get(&(m, k)) {
        return p.clone();
    }
    let t = UniPoly::x(Var::T);
    let p = if k == 0 {
        t.pow(m)
    } else {
        let mi = m as i64;
        alpha_tuples(m, k)
            .iter()
            .fold(UniPoly::zero(Var::T), |acc, tup| {
                let mut term = t.pow((mi + 1 - tup.get(1)) as usize);
                for n in 1..=k {
                    let a = tup.get(n);
                    let lin = UniPoly::from_ints(Var::T, &[-(n as i64), 1]);
                    term =
                        term.scale(&q(a * (a - mi - 2))) * lin.pow((a - tup.get(n + 1)) as usize);
                }
                acc + term
            })
    };
    VERRILL.lock().insert((m, k), p.clone());
    p
}

static WNUM: Lazy<Mutex<HashMap<(usize, usize), BigInt>>> = Lazy::new(Default::default);

/// `W_p(2k) = Σ_{a_1+…+a_p=k} (k!/(a_1!⋯a_p!))²`, via the split
/// `W_p(2k) = Σ_a C(k,a)² W_{p-1}(2(k-a))`.
pub fn bessel_power_number(p: usize, k: usize) -> BigInt {
    assert!(p >= 1, "p must be positive");
    if p == 1 || k == 0 {
        return BigInt::from(1);
    }
    if let Some(w) = WNUM.lock().get(&(p, k)) {
        return w.clone();
    }
    let mut w = BigInt::zero();
    let mut c = BigInt::from(1);
    for a in 0..=k {
        w += &c * &c * bessel_power_number(p - 1, k - a);
        c = c * BigInt::from(k - a) / BigInt::from(a + 1);
    }
    WNUM.lock().insert((p, k), w.clone());
    w
}

/// Checks `Σ_{k=0}^{⌊m/2⌋+1} 𝒱_{m,k}(n) W_{m+1}(2(n-k)) = 0` for `n = 1..n_max`.
pub fn verify_verrill_recursion(m: usize, n_max: usize) -> Report {
    let mut rep = Report::new(format!("Verrill recursion, m = {m}"));
    for n in 1..=n_max {
        let s: ExactScalar = (0..=m / 2 + 1)
            .filter(|&k| k <= n)
            .map(|k| {
                verrill_poly(m, k).eval(&q(n as i64))
                    * ExactScalar::from_integer(bessel_power_number(m + 1, n - k))
            })
            .sum();
        rep.push(
            format!("n = {n}"),
            s.is_zero(),
            if s.is_zero() {
                String::new()
            } else {
                format!("sum = {s}")
            },
        );
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute-force composition enumeration.
    fn w_brute(p: usize, k: usize) -> BigInt {
        fn rec(p: usize, k: usize, parts: &mut Vec<usize>, acc: &mut BigInt) {
            if parts.len() == p - 1 {
                parts.push(k);
                let num: BigInt = (1..=parts.iter().sum::<usize>())
                    .map(BigInt::from)
                    .product();
                let den: BigInt = parts
                    .iter()
                    .flat_map(|&a| (1..=a).map(BigInt::from))
                    .product();
                let r = num / den;
                *acc += &r * &r;
                parts.pop();
                return;
            }
            for a in 0..=k {
                parts.push(a);
                rec(p, k - a, parts, acc);
                parts.pop();
            }
        }
        let mut acc = BigInt::zero();
        rec(p, k, &mut vec![], &mut acc);
        acc
    }

    #[test]
    fn power_numbers() {
        assert_eq!(bessel_power_number(2, 1), BigInt::from(2));
        assert_eq!(bessel_power_number(3, 2), BigInt::from(15));
        let w3: Vec<_> = (0..4).map(|k| bessel_power_number(3, k)).collect();
        assert_eq!(w3, [1, 3, 15, 93].map(BigInt::from));
        for p in 1..=6 {
            assert_eq!(bessel_power_number(p, 0), BigInt::from(1));
            for k in 0..=6 {
                assert_eq!(bessel_power_number(p, k), w_brute(p, k), "p={p} k={k}");
            }
        }
    }

    #[test]
    fn small_verrill_polynomials() {
        assert_eq!(verrill_poly(5, 0), UniPoly::x(Var::T).pow(5));
        assert_eq!(
            verrill_poly(2, 1),
            UniPoly::from_ints(Var::T, &[-3, 10, -10])
        );
        assert_eq!(verrill_poly(2, 2), UniPoly::from_ints(Var::T, &[9, -18, 9]));
        assert_eq!(verrill_poly(1, 1), UniPoly::from_ints(Var::T, &[2, -4]));
    }

    #[test]
    fn empty_sum_convention_and_degree() {
        for m in 1..=9 {
            for k in 0..=m / 2 + 3 {
                let v = verrill_poly(m, k);
                if 2 * k > m + 2 {
                    assert!(v.is_zero(), "m={m} k={k}");
                }
                assert!(v.degree().is_none_or(|d| d <= m));
                assert!(v.is_integral());
            }
        }
    }

    #[test]
    fn recursion_examples() {
        // 4 W3(4) + V21(2) W3(2) + V22(2) W3(0) = 60 - 69 + 9
        assert_eq!(verrill_poly(2, 1).eval(&q(2)), q(-23));
        assert_eq!(verrill_poly(2, 2).eval(&q(2)), q(9));
        assert!(verify_verrill_recursion(1, 1).passed());
        assert!(verify_verrill_recursion(2, 2).passed());
        assert!(verify_verrill_recursion(4, 10).passed());
    }
}
