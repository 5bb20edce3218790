//! Moment-level relations at moderate precision: quadratic relations, the
//! off-shell Wrońskian relation at a point the suites do not use, precision
//! scaling, Bessel Wrońskians at random arguments, and cache determinism.

use besselnum::*;
use brmatrices::{betti_odd, derham_odd, mat_sigma_odd, mat_v, named_constant, ConstName};
use exactalg::qr;
use num_traits::Signed;
use proptest::prelude::*;
use rug::Float;

const DIGITS: u32 = 30;

#[test]
fn quadratic_relation_k2() {
    let ev = Evaluator::new(DIGITS);
    let p = ev.prec();
    let m = ev.mat_m(2).unwrap();
    let d = NumMatrix::from_q(&derham_odd(2).unwrap(), p);
    let b = NumMatrix::from_q(&betti_odd(2), p);
    assert!(m.mul(&d).mul(&m.transpose()).sub(&b).max_abs() < tolerance(DIGITS));
}

#[test]
fn off_shell_relation_at_one_third() {
    let ev = Evaluator::new(DIGITS);
    let p = ev.prec();
    let u = qr(1, 3);
    let om = ev.mat_omega(2, &u).unwrap();
    let lead = vanhove::vanhove_operator(3)
        .unwrap()
        .leading()
        .eval(&u)
        .abs();
    let rhs = mat_v(2)
        .unwrap()
        .eval(&u)
        .unwrap()
        .inverse()
        .unwrap()
        .scale(&(qr(1, 1) / &lead));
    let s = NumMatrix::from_q(&mat_sigma_odd(2), p);
    let r = om
        .mul(&s)
        .mul(&om.transpose())
        .sub(&NumMatrix::from_q(&rhs, p))
        .max_abs();
    assert!(r < tolerance(DIGITS), "residual {r}");

    let l = q_to_float(&lead, p);
    let det = om.det() * Float::with_val(p, l.clone().sqrt()) * l;
    let lambda = named_constant(ConstName::LambdaOdd, 2).unwrap().value.coeff;
    assert!(residual(&det, &q_to_float(&lambda, p)) < tolerance(DIGITS));
}

#[test]
fn precision_scaling() {
    // A value at 30 digits is the 45-digit value rounded.
    let lo = compute_moment(&MomentKey::on_shell(1, 4, 3, 30)).unwrap();
    let hi = compute_moment(&MomentKey::on_shell(1, 4, 3, 45)).unwrap();
    assert!(residual(&lo, &hi) < Float::with_val(64, 1e-29));
    let key = MomentKey::new(MomentKind::IKvM, 2, 3, 1, Some(qr(1, 2)), 30);
    let hi_key = MomentKey {
        digits: 45,
        ..key.clone()
    };
    assert!(
        residual(
            &compute_moment(&key).unwrap(),
            &compute_moment(&hi_key).unwrap()
        ) < Float::with_val(64, 1e-29)
    );
}

#[test]
fn divergent_and_invalid_keys() {
    assert!(matches!(
        compute_moment(&MomentKey::on_shell(1, 1, 1, 30)),
        Err(BesselError::Divergent(_))
    ));
    assert!(matches!(
        compute_moment(&MomentKey::on_shell(2, 0, 1, 30)),
        Err(BesselError::Divergent(_))
    ));
    let no_u = MomentKey::new(MomentKind::IvKM, 1, 4, 1, None, 30);
    assert!(compute_moment(&no_u).is_err());
}

#[test]
fn cache_reproduces_fresh_values() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m.jsonl");
    let keys = [
        MomentKey::on_shell(2, 3, 1, 30),
        MomentKey::new(MomentKind::IpKM, 2, 3, 1, Some(qr(1, 1)), 30),
        MomentKey::new(MomentKind::IKM_LOG, 1, 4, 3, None, 30),
    ];
    let fresh: Vec<Float> = keys.iter().map(|k| compute_moment(k).unwrap()).collect();
    {
        let c = MomentCache::open(&path).unwrap();
        for k in &keys {
            c.get_or_compute(k).unwrap();
        }
    }
    let c = MomentCache::open(&path).unwrap();
    assert_eq!(c.len(), keys.len());
    for (k, v) in keys.iter().zip(&fresh) {
        assert_eq!(&c.get(k).unwrap(), v, "{k}");
        // Lower-precision requests are served by rounding the stored value.
        let low = MomentKey {
            digits: 20,
            ..k.clone()
        };
        assert_eq!(c.get(&low).unwrap(), compute_moment(&low).unwrap(), "{low}");
    }
    assert!(c.verify(10).mismatched.is_empty());
}

#[test]
fn in_memory_cache_never_writes() {
    let c = MomentCache::in_memory();
    c.get_or_compute(&MomentKey::on_shell(1, 2, 1, 30)).unwrap();
    assert_eq!(c.len(), 1);
    assert!(!c.is_persistent());
    assert_eq!(c.path().as_os_str(), "");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10))]

    /// `I₀(t)K₁(t) + I₁(t)K₀(t) = 1/t` on both sides of the series/integral
    /// switch.
    #[test]
    fn bessel_wronskian(t in 0.05f64..40.0) {
        let prec = bits_for(DIGITS, 10);
        let x = Float::with_val(prec, t);
        let (i0, i1) = i0_i1(&x, prec);
        let (k0, k1) = k0_k1(&x, prec);
        let w = Float::with_val(prec, &i0 * &k1) + Float::with_val(prec, &i1 * &k0);
        let want = Float::with_val(prec, x.recip_ref());
        prop_assert!(residual(&w, &want) < tolerance(DIGITS));
    }
}
