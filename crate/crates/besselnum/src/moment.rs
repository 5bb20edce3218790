//! Bessel moments `∫₀^∞ (product of I₀, K₀, I₁, K₁ factors) tⁿ dt`.

use crate::bessel::{bits_for, i0_i1, k0_k1};
use crate::quad::{integrate_half_line, MAX_LEVEL};
use crate::{BesselError, Result};
use exactalg::{format_q, parse_q};
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rug::ops::Pow;
use rug::Float;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// Which integral; `a` counts `I`-type and `b` counts `K`-type factors, the
/// `u`-scaled one included.
#[allow(non_camel_case_types)]
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum MomentKind {
    /// `∫ I₀^a K₀^b tⁿ`.
    IKM,
    /// `∫ I₀(√u t) I₀^{a-1} K₀^b tⁿ`.
    IvKM,
    /// `∫ K₀(√u t) I₀^a K₀^{b-1} tⁿ`.
    IKvM,
    /// `+∫ I₁(√u t) I₀^{a-1} K₀^b t^{n+1}`.
    IpKM,
    /// `-∫ K₁(√u t) I₀^a K₀^{b-1} t^{n+1}`.
    IKpM,
    /// `∫ I₀^a K₀^b tⁿ log t`.
    IKM_LOG,
}

impl MomentKind {
    pub const ALL: [MomentKind; 6] = [
        MomentKind::IKM,
        MomentKind::IvKM,
        MomentKind::IKvM,
        MomentKind::IpKM,
        MomentKind::IKpM,
        MomentKind::IKM_LOG,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MomentKind::IKM => "IKM",
            MomentKind::IvKM => "IvKM",
            MomentKind::IKvM => "IKvM",
            MomentKind::IpKM => "IpKM",
            MomentKind::IKpM => "IKpM",
            MomentKind::IKM_LOG => "IKM_LOG",
        }
    }

    /// Carries a `√u`-scaled factor.
    pub fn off_shell(self) -> bool {
        !matches!(self, MomentKind::IKM | MomentKind::IKM_LOG)
    }
}

impl FromStr for MomentKind {
    type Err = BesselError;
    fn from_str(s: &str) -> Result<Self> {
        MomentKind::ALL
            .iter()
            .copied()
            .find(|k| k.name() == s)
            .ok_or_else(|| BesselError::UnknownKind(s.to_string()))
    }
}

impl fmt::Display for MomentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One requested integral.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MomentKey {
    pub kind: MomentKind,
    pub a: u32,
    pub b: u32,
    pub n: u32,
    pub u: Option<BigRational>,
    pub digits: u32,
}

impl MomentKey {
    pub fn on_shell(a: u32, b: u32, n: u32, digits: u32) -> Self {
        MomentKey {
            kind: MomentKind::IKM,
            a,
            b,
            n,
            u: None,
            digits,
        }
    }

    pub fn new(
        kind: MomentKind,
        a: u32,
        b: u32,
        n: u32,
        u: Option<BigRational>,
        digits: u32,
    ) -> Self {
        MomentKey {
            kind,
            a,
            b,
            n,
            u,
            digits,
        }
    }

    /// `u` as the canonical `p/q` string.
    pub fn u_string(&self) -> Option<String> {
        self.u.as_ref().map(format_q)
    }

    pub fn parse_u(s: &str) -> Result<BigRational> {
        parse_q(s).map_err(|e| BesselError::InvalidKey(format!("u = {s:?}: {e}")))
    }

    /// Factor list and decay rate; rejects malformed and divergent keys.
    pub(crate) fn factors(&self) -> Result<Factors> {
        let bad = |why: &str| Err(BesselError::InvalidKey(format!("{self}: {why}")));
        if self.kind.off_shell() != self.u.is_some() {
            return bad(if self.kind.off_shell() {
                "u is required"
            } else {
                "u is not allowed"
            });
        }
        if let Some(u) = &self.u {
            if !u.is_positive() {
                return bad("u must be positive");
            }
        }
        if self.digits == 0 {
            return bad("digits must be positive");
        }
        let (a, b) = (self.a, self.b);
        let (ni0, nk0, extra, pow) = match self.kind {
            MomentKind::IKM | MomentKind::IKM_LOG => (a, b, None, self.n),
            MomentKind::IvKM if a >= 1 => (a - 1, b, Some(Extra::I0), self.n),
            MomentKind::IKvM if b >= 1 => (a, b - 1, Some(Extra::K0), self.n),
            MomentKind::IpKM if a >= 1 => (a - 1, b, Some(Extra::I1), self.n + 1),
            MomentKind::IKpM if b >= 1 => (a, b - 1, Some(Extra::K1), self.n + 1),
            _ => return bad("the scaled factor needs a ≥ 1 (I-type) or b ≥ 1 (K-type)"),
        };
        // δ = #K - #I ± √u must be positive.
        let c = nk0 as i64 - ni0 as i64;
        let u = self.u.clone().unwrap_or_else(BigRational::zero);
        let c2 = BigRational::from_integer((c * c).into());
        let convergent = match extra {
            None => c > 0,
            Some(Extra::I0 | Extra::I1) => c > 0 && c2 > u,
            Some(Extra::K0 | Extra::K1) => c >= 0 || c2 < u,
        };
        if !convergent {
            return Err(BesselError::Divergent(self.to_string()));
        }
        let su = u.to_f64().unwrap_or(0.0).sqrt();
        let delta = c as f64
            + match extra {
                None => 0.0,
                Some(Extra::I0 | Extra::I1) => -su,
                Some(Extra::K0 | Extra::K1) => su,
            };
        Ok(Factors {
            ni0,
            nk0,
            extra,
            pow,
            log: self.kind == MomentKind::IKM_LOG,
            u: self.u.clone(),
            delta,
        })
    }
}

impl fmt::Display for MomentKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({},{};{}", self.kind, self.a, self.b, self.n)?;
        if let Some(u) = &self.u {
            write!(f, "|{}", format_q(u))?;
        }
        write!(f, ")")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Extra {
    I0,
    K0,
    I1,
    K1,
}

#[derive(Clone, Debug)]
pub(crate) struct Factors {
    ni0: u32,
    nk0: u32,
    extra: Option<Extra>,
    pow: u32,
    log: bool,
    u: Option<BigRational>,
    delta: f64,
}

fn rational_float(q: &BigRational, prec: u32) -> Float {
    let n = rug::Integer::from_str(&q.numer().to_string()).expect("integer");
    let d = rug::Integer::from_str(&q.denom().to_string()).expect("integer");
    Float::with_val(prec, n) / Float::with_val(prec, d)
}

impl Factors {
    fn eval(&self, t: &Float, sqrt_u: Option<&Float>, unit: bool, prec: u32) -> Float {
        let need_i = self.ni0 > 0 || (unit && matches!(self.extra, Some(Extra::I0 | Extra::I1)));
        let need_k = self.nk0 > 0 || (unit && matches!(self.extra, Some(Extra::K0 | Extra::K1)));
        let iv = need_i.then(|| i0_i1(t, prec));
        let kv = need_k.then(|| k0_k1(t, prec));
        let mut v = Float::with_val(prec, t.pow(self.pow));
        if let Some((i0, _)) = &iv {
            if self.ni0 > 0 {
                v *= Float::with_val(prec, i0.pow(self.ni0));
            }
        }
        if let Some((k0, _)) = &kv {
            if self.nk0 > 0 {
                v *= Float::with_val(prec, k0.pow(self.nk0));
            }
        }
        if let Some(e) = self.extra {
            let x = match (unit, sqrt_u) {
                (true, _) | (_, None) => None,
                (false, Some(s)) => Some(Float::with_val(prec, s * t)),
            };
            let f = match e {
                Extra::I0 | Extra::I1 => {
                    let (i0, i1) = match &x {
                        Some(x) => i0_i1(x, prec),
                        None => iv.clone().expect("computed above"),
                    };
                    if e == Extra::I0 {
                        i0
                    } else {
                        i1
                    }
                }
                Extra::K0 | Extra::K1 => {
                    let (k0, k1) = match &x {
                        Some(x) => k0_k1(x, prec),
                        None => kv.clone().expect("computed above"),
                    };
                    if e == Extra::K0 {
                        k0
                    } else {
                        -k1
                    }
                }
            };
            v *= f;
        }
        if self.log {
            v *= Float::with_val(prec, t.ln_ref());
        }
        v
    }
}

/// Decimal significant digits stored for a result requested at `digits`.
pub(crate) fn stored_digits(digits: u32) -> usize {
    digits as usize + 10
}

/// Canonical decimal form of a computed value at `digits`.
pub(crate) fn to_decimal(v: &Float, digits: u32) -> String {
    v.to_string_radix(10, Some(stored_digits(digits)))
}

pub(crate) fn from_decimal(s: &str, digits: u32) -> Result<Float> {
    let p = Float::parse(s).map_err(|e| BesselError::Cache(format!("bad value {s:?}: {e}")))?;
    Ok(Float::with_val(bits_for(digits, 10), p))
}

/// Compute one moment without consulting any cache; the result is rounded
/// through its canonical decimal string so that cached and fresh values
/// are identical.
pub fn compute_moment(key: &MomentKey) -> Result<Float> {
    let fac = key.factors()?;
    let prec = bits_for(key.digits, 15);
    let tol = Float::with_val(prec, 10u32).pow(-(key.digits as i32) - 5);
    let sqrt_u = fac.u.as_ref().map(|u| rational_float(u, prec).sqrt());
    let unit = fac
        .u
        .as_ref()
        .is_some_and(|u| u == &BigRational::from_integer(1.into()));
    let f = |t: &Float| fac.eval(t, sqrt_u.as_ref(), unit, prec);
    let poly = fac.pow as f64 + if fac.log { 1.0 } else { 0.0 };
    let r = integrate_half_line(&f, fac.delta, poly, prec, &tol);
    if !r.converged {
        return Err(BesselError::NoConvergence {
            key: key.to_string(),
            levels: MAX_LEVEL,
        });
    }
    from_decimal(&to_decimal(&r.value, key.digits), key.digits)
}

/// `u` as a working-precision float.
pub fn q_to_float(q: &BigRational, prec: u32) -> Float {
    rational_float(q, prec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use exactalg::qr;
    use rug::float::Constant;

    fn rel(a: &Float, b: &Float) -> f64 {
        let d = Float::with_val(a.prec(), a - b).abs();
        (d / Float::with_val(a.prec(), b.abs_ref())).to_f64()
    }

    #[test]
    fn classical_values() {
        let p = bits_for(40, 10);
        let pi = Float::with_val(p, Constant::Pi);
        let v = compute_moment(&MomentKey::on_shell(1, 2, 1, 40)).unwrap();
        let want = Float::with_val(p, &pi / 3u32) / Float::with_val(p, 3u32).sqrt();
        assert!(rel(&v, &want) < 1e-40, "{v}");
        let v = compute_moment(&MomentKey::on_shell(0, 1, 0, 30)).unwrap();
        assert!(rel(&v, &Float::with_val(p, &pi / 2u32)) < 1e-30);
    }

    #[test]
    fn divergence_and_shape_errors() {
        assert!(matches!(
            compute_moment(&MomentKey::on_shell(1, 1, 1, 20)),
            Err(BesselError::Divergent(_))
        ));
        let k = MomentKey::new(MomentKind::IvKM, 1, 1, 1, Some(qr(1, 4)), 20);
        // δ = 1 - 1/2 > 0
        assert!(k.factors().is_ok());
        let k = MomentKey::new(MomentKind::IvKM, 2, 1, 1, Some(qr(1, 4)), 20);
        assert!(matches!(k.factors(), Err(BesselError::Divergent(_))));
        let k = MomentKey::new(MomentKind::IKvM, 2, 2, 1, Some(qr(1, 4)), 20);
        assert!(matches!(k.factors(), Err(BesselError::Divergent(_))));
        let k = MomentKey::new(MomentKind::IKvM, 2, 2, 1, Some(qr(9, 4)), 20);
        assert!(k.factors().is_ok());
        assert!(MomentKey::new(MomentKind::IKM, 1, 2, 1, Some(qr(1, 2)), 20)
            .factors()
            .is_err());
        assert!(MomentKey::new(MomentKind::IvKM, 1, 2, 1, None, 20)
            .factors()
            .is_err());
    }

    #[test]
    fn off_shell_at_one_is_on_shell() {
        let on = compute_moment(&MomentKey::on_shell(1, 4, 1, 30)).unwrap();
        let one = Some(qr(1, 1));
        let v =
            compute_moment(&MomentKey::new(MomentKind::IvKM, 1, 4, 1, one.clone(), 30)).unwrap();
        let k = compute_moment(&MomentKey::new(MomentKind::IKvM, 1, 4, 1, one, 30)).unwrap();
        assert!(rel(&v, &on) < 1e-30 && rel(&k, &on) < 1e-30);
    }
}
