//! Modified Bessel functions `I₀, I₁, K₀, K₁` at arbitrary precision.
//!
//! `I₀, I₁` come from their all-positive power series.  `K₀, K₁` use the
//! logarithmic series for `t ≤ 2` (carried with a few guard bits against its
//! mild cancellation) and, beyond that, the integral representation
//! `K₀(t) = ∫₀^∞ e^{-t cosh v} dv`.  Substituting `x = √(2t)·sinh(v/2)`
//! turns it into
//!
//! ```text
//! K₀(t) = e^{-t} ∫_ℝ e^{-x²} (2t + x²)^{-1/2} dx,
//! K₁(t) = e^{-t} ∫_ℝ e^{-x²} (1 + x²/t) (2t + x²)^{-1/2} dx,
//! ```
//!
//! whose integrands are entire apart from branch points at `±i√(2t)`, so the
//! trapezoidal rule converges geometrically with a step fixed by the
//! precision alone.  The Gaussian weights are cached per precision.

use crate::{BesselError, Result};
use once_cell::sync::Lazy;
use parking_lot::Mutex;
use rug::float::Constant;
use rug::ops::Pow;
use rug::Float;
use std::collections::HashMap;
use std::sync::Arc;

/// Which function.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BesselKind {
    I0,
    I1,
    K0,
    K1,
}

impl std::str::FromStr for BesselKind {
    type Err = BesselError;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "I0" => BesselKind::I0,
            "I1" => BesselKind::I1,
            "K0" => BesselKind::K0,
            "K1" => BesselKind::K1,
            _ => return Err(BesselError::UnknownKind(s.to_string())),
        })
    }
}

/// Bits of working precision for `digits` decimal digits plus `guard`.
pub fn bits_for(digits: u32, guard: u32) -> u32 {
    ((digits + guard) as f64 * std::f64::consts::LOG2_10).ceil() as u32 + 8
}

/// Where the K evaluation switches from the series to the integral.
const K_SWITCH: f64 = 2.0;

/// `(I₀(t), I₁(t))` at precision `prec` (bits), for `t ≥ 0`.
pub fn i0_i1(t: &Float, prec: u32) -> (Float, Float) {
    let p = prec + 16;
    let x = Float::with_val(p, t * t) / 4u32;
    let mut term = Float::with_val(p, 1u32); // x^m / (m!)²
    let mut s0 = Float::with_val(p, 1u32);
    let mut s1 = Float::with_val(p, 1u32); // Σ x^m/(m!(m+1)!)
    let mut m = 0u32;
    loop {
        m += 1;
        term *= &x;
        term /= m * m;
        let t1 = Float::with_val(p, &term / (m + 1));
        s0 += &term;
        s1 += &t1;
        if term.is_zero()
            || (term.get_exp().unwrap_or(i32::MIN) < s0.get_exp().unwrap_or(0) - p as i32 - 2)
        {
            break;
        }
    }
    let i1 = Float::with_val(prec, s1 * t) / 2u32;
    (Float::with_val(prec, s0), i1)
}

/// Logarithmic series for `(K₀, K₁)`, accurate for small `t`.
fn k_series(t: &Float, prec: u32) -> (Float, Float) {
    // K₀ = -(ln(t/2)+γ) I₀ + Σ_{m≥1} H_m x^m/(m!)²,
    // K₁ = 1/t + ln(t/2) I₁ - (t/4) Σ_{m≥0} (H_m + H_{m+1} - 2γ) x^m/(m!(m+1)!),  x = t²/4.
    let guard = 24 + (t.to_f64().max(0.0) * 3.0) as u32;
    let p = prec + guard;
    let (i0, i1) = i0_i1(t, p);
    let gamma = Float::with_val(p, Constant::Euler);
    let lt = Float::with_val(p, t / 2u32).ln();
    let x = Float::with_val(p, t * t) / 4u32;
    let mut a = Float::with_val(p, 1u32); // x^m/(m!)²
    let mut b = Float::with_val(p, 1u32); // x^m/(m!(m+1)!)
    let mut h = Float::with_val(p, 0u32); // H_m
    let mut s0 = Float::with_val(p, 0u32);
    let mut s1 = Float::with_val(p, 1u32) - Float::with_val(p, &gamma * 2u32); // m = 0: H_0 + H_1 - 2γ
    let mut m = 0u32;
    loop {
        m += 1;
        a *= &x;
        a /= m * m;
        b *= &x;
        b /= m * (m + 1);
        let h_next = Float::with_val(p, &h + Float::with_val(p, 1u32) / m);
        let h_next2 = Float::with_val(p, &h_next + Float::with_val(p, 1u32) / (m + 1));
        let c0 = Float::with_val(p, &a * &h_next);
        let c1 = Float::with_val(p, &h_next + &h_next2) - Float::with_val(p, &gamma * 2u32);
        let c1 = c1 * &b;
        s0 += &c0;
        s1 += &c1;
        h = h_next;
        let small = |c: &Float, s: &Float| {
            c.is_zero() || c.get_exp().unwrap_or(i32::MIN) < s.get_exp().unwrap_or(0) - p as i32 - 2
        };
        if small(&c0, &s0) && small(&c1, &s1) && m > 2 {
            break;
        }
    }
    let k0 = s0 - Float::with_val(p, &lt + &gamma) * &i0;
    let k1 = Float::with_val(p, 1u32) / t + Float::with_val(p, &lt * &i1)
        - Float::with_val(p, t * &s1) / 4u32;
    (Float::with_val(prec, k0), Float::with_val(prec, k1))
}

/// Trapezoid nodes `(x_j², w_j e^{-x_j²})` for `j ≥ 0` (the `j = 0` weight halved).
struct GaussNodes {
    x2: Vec<Float>,
    w: Vec<Float>,
}

static NODES: Lazy<Mutex<HashMap<u32, Arc<GaussNodes>>>> = Lazy::new(|| Mutex::new(HashMap::new()));

fn gauss_nodes(prec: u32) -> Arc<GaussNodes> {
    if let Some(n) = NODES.lock().get(&prec) {
        return n.clone();
    }
    let p = prec + 16;
    // Error terms: e^{-π²/h²} (Gaussian tail in frequency) and
    // e^{d² - 2πd/h} from the branch point at distance d = √(2t) ≥ 2.
    let nats = (p as f64) * std::f64::consts::LN_2 + 10.0;
    let h_gauss = std::f64::consts::PI / nats.sqrt();
    let d = (2.0 * K_SWITCH).sqrt();
    let h_pole = 2.0 * std::f64::consts::PI * d / (nats + d * d);
    let h = Float::with_val(p, h_gauss.min(h_pole));
    let mut x2 = Vec::new();
    let mut w = Vec::new();
    let mut j = 0u32;
    loop {
        let x = Float::with_val(p, &h * j);
        let xx = Float::with_val(p, x.square_ref());
        if xx.to_f64() > nats + 5.0 {
            break;
        }
        let mut wj = Float::with_val(p, -&xx).exp() * &h;
        if j == 0 {
            wj /= 2u32;
        }
        x2.push(xx);
        w.push(wj);
        j += 1;
    }
    // ∫_ℝ = 2 Σ_{j≥0}' — multiply all weights by 2.
    for wj in &mut w {
        *wj *= 2u32;
    }
    let nodes = Arc::new(GaussNodes { x2, w });
    NODES.lock().insert(prec, nodes.clone());
    nodes
}

fn k_integral(t: &Float, prec: u32) -> (Float, Float) {
    let nodes = gauss_nodes(prec);
    let p = prec + 16;
    let two_t = Float::with_val(p, t * 2u32);
    let mut s0 = Float::with_val(p, 0u32);
    let mut s1 = Float::with_val(p, 0u32);
    for (xx, w) in nodes.x2.iter().zip(&nodes.w) {
        let r = Float::with_val(p, &two_t + xx).recip_sqrt();
        let f0 = Float::with_val(p, w * &r);
        let f1 = Float::with_val(p, xx / t) * &f0;
        s1 += &f0;
        s1 += &f1;
        s0 += f0;
    }
    let e = Float::with_val(p, -t).exp();
    (
        Float::with_val(prec, s0 * &e),
        Float::with_val(prec, s1 * &e),
    )
}

/// `(K₀(t), K₁(t))` at precision `prec`, for `t > 0`.
pub fn k0_k1(t: &Float, prec: u32) -> (Float, Float) {
    if t.to_f64() <= K_SWITCH {
        k_series(t, prec)
    } else {
        k_integral(t, prec)
    }
}

/// One Bessel function at relative accuracy `10^{-digits}`.
pub fn bessel(kind: BesselKind, t: &Float, digits: u32) -> Result<Float> {
    if !(t.is_finite() && t.is_sign_positive() && !t.is_zero()) {
        return Err(BesselError::NonPositive(t.to_f64()));
    }
    let prec = bits_for(digits, 10);
    let t = Float::with_val(prec.max(t.prec()), t);
    Ok(match kind {
        BesselKind::I0 => i0_i1(&t, prec).0,
        BesselKind::I1 => i0_i1(&t, prec).1,
        BesselKind::K0 => k0_k1(&t, prec).0,
        BesselKind::K1 => k0_k1(&t, prec).1,
    })
}

/// `π^{e/2}` at precision `prec`.
pub fn pi_half_pow(e: i32, prec: u32) -> Float {
    let pi = Float::with_val(prec + 8, Constant::Pi);
    let r = if e % 2 == 0 {
        pi.pow(e / 2)
    } else {
        pi.sqrt().pow(e)
    };
    Float::with_val(prec, r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: &Float, b: &Float, digits: i32) -> bool {
        let d = Float::with_val(a.prec(), a - b).abs();
        let scale = Float::with_val(a.prec(), b.abs_ref()).max(&Float::with_val(a.prec(), 1e-300));
        (d / scale).to_f64() < 10f64.powi(-digits)
    }

    #[test]
    fn reference_values() {
        let p = bits_for(40, 10);
        let one = Float::with_val(p, 1u32);
        let i0 = bessel(BesselKind::I0, &one, 40).unwrap();
        let want = Float::with_val(
            p,
            Float::parse("1.266065877752008335598244625214717537607").unwrap(),
        );
        assert!(close(&i0, &want, 38));
        let k0 = bessel(BesselKind::K0, &one, 40).unwrap();
        let want = Float::with_val(
            p,
            Float::parse("0.4210244382407083333356273792126090361362").unwrap(),
        );
        assert!(close(&k0, &want, 38), "{k0}");
    }

    #[test]
    fn series_and_integral_agree_near_switch() {
        let p = bits_for(60, 10);
        for s in ["1.5", "2.0", "2.5", "3.75"] {
            let t = Float::with_val(p, Float::parse(s).unwrap());
            let (a0, a1) = k_series(&t, p);
            let (b0, b1) = k_integral(&t, p);
            assert!(close(&a0, &b0, 58), "K0 at {s}");
            assert!(close(&a1, &b1, 58), "K1 at {s}");
        }
    }

    #[test]
    fn wronskian_relation() {
        let p = bits_for(60, 10);
        for s in ["0.001", "0.5", "1.5", "7", "19.9", "60"] {
            let t = Float::with_val(p, Float::parse(s).unwrap());
            let (i0, i1) = i0_i1(&t, p);
            let (k0, k1) = k0_k1(&t, p);
            let w = Float::with_val(p, &i0 * &k1) + Float::with_val(p, &i1 * &k0);
            let want = Float::with_val(p, 1u32) / &t;
            assert!(close(&w, &want, 58), "t = {s}");
        }
        assert!(bessel(BesselKind::K0, &Float::with_val(64, 0u32), 20).is_err());
    }
}
