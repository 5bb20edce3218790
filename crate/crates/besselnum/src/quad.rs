//! Double-exponential quadrature with level doubling: tanh–sinh on `(0,1]`
//! and exp–sinh on `[1,∞)`.  Node evaluations run in parallel but are summed
//! in a fixed order, so results are bit-for-bit reproducible.

use rayon::prelude::*;
use rug::float::Constant;
use rug::Float;

/// Coarsest step is `2^{-MIN_LEVEL}`; the finest tried is `2^{-MAX_LEVEL}`.
const MIN_LEVEL: u32 = 2;
pub(crate) const MAX_LEVEL: u32 = 11;

/// Outcome of one adaptive run.
pub(crate) struct QuadResult {
    pub value: Float,
    pub converged: bool,
}

/// A change of variables `t = φ(s)` with Jacobian, on `|s| ≤ bound`.
trait Transform: Sync {
    fn map(&self, s: &Float) -> (Float, Float);
    fn range(&self) -> (f64, f64);
}

struct TanhSinh {
    prec: u32,
}

impl Transform for TanhSinh {
    // t = 1/(1+e^{-2v}), v = (π/2) sinh s, dt/ds = (π/4) cosh s / cosh² v.
    fn map(&self, s: &Float) -> (Float, Float) {
        let p = self.prec;
        let half_pi = Float::with_val(p, Constant::Pi) / 2u32;
        let v = Float::with_val(p, s.sinh_ref()) * &half_pi;
        let t = (Float::with_val(p, -2 * v.clone()).exp() + 1u32).recip();
        let c = Float::with_val(p, v.cosh_ref());
        let w = Float::with_val(p, s.cosh_ref()) * half_pi / 2u32 / c.square();
        (t, w)
    }
    fn range(&self) -> (f64, f64) {
        let nats = self.prec as f64 * std::f64::consts::LN_2;
        let v = nats + 4.0 * (nats + 10.0).ln() + 20.0;
        let s = (v / std::f64::consts::PI).asinh();
        (-s, s)
    }
}

struct ExpSinh {
    prec: u32,
    /// Decay rate of the integrand: `f(t) ≈ e^{-δ t}`.
    delta: f64,
    /// Power of `t` and logarithms multiplying the exponential.
    poly: f64,
}

impl Transform for ExpSinh {
    // t = 1 + e^{v}/δ, v = (π/2) sinh s.
    fn map(&self, s: &Float) -> (Float, Float) {
        let p = self.prec;
        let half_pi = Float::with_val(p, Constant::Pi) / 2u32;
        let v = Float::with_val(p, s.sinh_ref()) * &half_pi;
        let e = v.exp() / self.delta;
        let t = Float::with_val(p, &e + 1u32);
        let w = e * Float::with_val(p, s.cosh_ref()) * half_pi;
        (t, w)
    }
    fn range(&self) -> (f64, f64) {
        let nats = self.prec as f64 * std::f64::consts::LN_2 + 20.0;
        // Right end: δ(t-1) must exceed the target plus the polynomial growth.
        let tmax = (nats + self.poly * (nats / self.delta + 2.0).ln()) * 1.1;
        let right = (2.0 * tmax.ln() / std::f64::consts::PI).asinh();
        // Left end: e^{v}/δ below the target.
        let left = (2.0 * (nats + self.delta.ln().abs()) / std::f64::consts::PI).asinh();
        (-left, right)
    }
}

fn trapezoid_level<F>(tr: &dyn Transform, f: &F, level: u32, odd_only: bool, prec: u32) -> Float
where
    F: Fn(&Float) -> Float + Sync,
{
    let (lo, hi) = tr.range();
    let scale = (1u64 << level) as f64;
    let kmin = (lo * scale).floor() as i64;
    let kmax = (hi * scale).ceil() as i64;
    let ks: Vec<i64> = (kmin..=kmax)
        .filter(|k| !odd_only || k.rem_euclid(2) == 1)
        .collect();
    let terms: Vec<Float> = ks
        .par_iter()
        .map(|&k| {
            let s = Float::with_val(prec, k) >> level;
            let (t, w) = tr.map(&s);
            if w.is_zero() || t.is_zero() || !t.is_finite() {
                return Float::with_val(prec, 0u32);
            }
            let v = f(&t);
            if !v.is_finite() {
                return Float::with_val(prec, 0u32);
            }
            v * w
        })
        .collect();
    let mut sum = Float::with_val(prec, 0u32);
    for t in terms {
        sum += t;
    }
    sum >> level
}

fn adaptive<F>(tr: &dyn Transform, f: &F, prec: u32, tol: &Float) -> QuadResult
where
    F: Fn(&Float) -> Float + Sync,
{
    let mut est = trapezoid_level(tr, f, MIN_LEVEL, false, prec);
    for level in MIN_LEVEL + 1..=MAX_LEVEL {
        let odd = trapezoid_level(tr, f, level, true, prec);
        let next = Float::with_val(prec, &est / 2u32) + odd;
        let diff = Float::with_val(prec, &next - &est).abs();
        let scale = Float::with_val(prec, next.abs_ref()).max(&Float::with_val(prec, 1u32));
        est = next;
        if level > MIN_LEVEL + 1 && diff <= Float::with_val(prec, tol * &scale) {
            return QuadResult {
                value: est,
                converged: true,
            };
        }
    }
    QuadResult {
        value: est,
        converged: false,
    }
}

/// `∫₀^∞ f(t) dt` for `f` integrable at 0 (log singularities allowed) and
/// decaying like `t^poly e^{-δ t}`.  `tol` is relative to `max(1, |result|)`.
pub(crate) fn integrate_half_line<F>(
    f: &F,
    delta: f64,
    poly: f64,
    prec: u32,
    tol: &Float,
) -> QuadResult
where
    F: Fn(&Float) -> Float + Sync,
{
    let a = adaptive(&TanhSinh { prec }, f, prec, tol);
    let b = adaptive(&ExpSinh { prec, delta, poly }, f, prec, tol);
    QuadResult {
        value: a.value + b.value,
        converged: a.converged && b.converged,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn elementary_integrals() {
        let prec = 200;
        let tol = Float::with_val(prec, Float::parse("1e-50").unwrap());
        // ∫ t e^{-2t} = 1/4
        let r = integrate_half_line(
            &|t: &Float| Float::with_val(prec, -2 * t.clone()).exp() * t,
            2.0,
            1.0,
            prec,
            &tol,
        );
        assert!(r.converged);
        assert!((r.value - Float::with_val(prec, 0.25)).abs().to_f64() < 1e-50);
        // ∫ ln(t) e^{-t} = -γ
        let r = integrate_half_line(
            &|t: &Float| Float::with_val(prec, -t).exp() * Float::with_val(prec, t.ln_ref()),
            1.0,
            1.0,
            prec,
            &tol,
        );
        let g = Float::with_val(prec, Constant::Euler);
        assert!((r.value + g).abs().to_f64() < 1e-50);
    }
}
