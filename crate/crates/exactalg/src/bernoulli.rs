//! Bernoulli numbers under the generating function `t/(e^t - 1)`.

use crate::scalar::{binom, q, ExactScalar};
use once_cell::sync::Lazy;
use parking_lot::Mutex;

static TABLE: Lazy<Mutex<Vec<ExactScalar>>> = Lazy::new(|| Mutex::new(vec![q(1)]));

/// `B_n` from `sum_{k=0}^{n} C(n+1,k) B_k = 0`, memoized across calls.
pub fn bernoulli(n: usize) -> ExactScalar {
    let mut table = TABLE.lock();
    while table.len() <= n {
        let m = table.len() as i64;
        let s: ExactScalar = table
            .iter()
            .enumerate()
            .map(|(k, b)| binom(m + 1, k as i64) * b)
            .sum();
        table.push(-s / q(m + 1));
    }
    table[n].clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::qr;

    #[test]
    fn small_values() {
        assert_eq!(bernoulli(0), q(1));
        assert_eq!(bernoulli(1), qr(-1, 2));
        assert_eq!(bernoulli(2), qr(1, 6));
        assert_eq!(bernoulli(3), q(0));
        assert_eq!(bernoulli(12), qr(-691, 2730));
    }

    #[test]
    fn odd_indices_vanish() {
        for n in (3..60).step_by(2) {
            assert_eq!(bernoulli(n), q(0), "B_{n}");
        }
    }

    // Independent oracle: t/(e^t-1) * (e^t-1)/t = 1 as power series, i.e.
    // sum_{k=0}^{n} B_k / (k! (n+1-k)!) = [n == 0].
    #[test]
    fn generating_function_product() {
        use crate::scalar::recip_fact_ext;
        for n in 0..=60i64 {
            let s: ExactScalar = (0..=n)
                .map(|k| bernoulli(k as usize) * recip_fact_ext(k) * recip_fact_ext(n + 1 - k))
                .sum();
            assert_eq!(s, if n == 0 { q(1) } else { q(0) }, "n = {n}");
        }
    }
}
