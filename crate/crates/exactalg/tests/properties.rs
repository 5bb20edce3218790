use exactalg::{bernoulli, binom, q, qr, DiffOp, ExactMatrix, ExactScalar, RatFunc, UniPoly, Var};
use proptest::prelude::*;

fn small_q() -> impl Strategy<Value = ExactScalar> {
    (-9i64..=9, 1i64..=5).prop_map(|(n, d)| qr(n, d))
}

fn upoly(max_deg: usize) -> impl Strategy<Value = UniPoly> {
    prop::collection::vec(-4i64..=4, 0..=max_deg + 1).prop_map(|c| UniPoly::from_ints(Var::U, &c))
}

fn diffop(max_order: usize) -> impl Strategy<Value = DiffOp> {
    prop::collection::vec(upoly(3), 1..=max_order + 1).prop_map(|c| DiffOp::from_polys(Var::U, c))
}

fn matrix4() -> impl Strategy<Value = ExactMatrix<ExactScalar>> {
    prop::collection::vec(small_q(), 16)
        .prop_map(|v| ExactMatrix::from_fn(4, 4, |i, j| v[4 * i + j].clone()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn det_is_multiplicative(a in matrix4(), b in matrix4()) {
        let ab = a.mul(&b);
        prop_assert_eq!(ab.det().unwrap(), a.det().unwrap() * b.det().unwrap());
    }

    #[test]
    fn inverse_is_two_sided(a in matrix4()) {
        if let Ok(inv) = a.inverse() {
            prop_assert_eq!(a.mul(&inv), ExactMatrix::identity(4));
            prop_assert_eq!(inv.mul(&a), ExactMatrix::identity(4));
        } else {
            prop_assert_eq!(a.det().unwrap(), q(0));
        }
    }

    #[test]
    fn adjoint_reverses_composition(p in diffop(3), r in diffop(3)) {
        let lhs = p.compose(&r).unwrap().adjoint();
        let rhs = r.adjoint().compose(&p.adjoint()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn adjoint_is_involution(p in diffop(4)) {
        prop_assert_eq!(p.adjoint().adjoint(), p);
    }

    #[test]
    fn ratfunc_stays_normalized(
        a in upoly(3), b in upoly(3), c in upoly(3), d in upoly(3)
    ) {
        prop_assume!(!b.is_zero() && !d.is_zero());
        let x = RatFunc::new(a, b).unwrap();
        let y = RatFunc::new(c, d).unwrap();
        prop_assert!(x.is_normalized() && y.is_normalized());
        for r in [&x + &y, &x - &y, &x * &y, x.derivative()] {
            prop_assert!(r.is_normalized());
        }
        if !y.is_zero() {
            let r = &x / &y;
            prop_assert!(r.is_normalized());
            prop_assert_eq!(&r * &y, x.clone());
        }
    }
}

#[test]
fn bernoulli_recurrence_to_60() {
    for n in 1..=60i64 {
        let s: ExactScalar = (0..=n)
            .map(|k| binom(n + 1, k) * bernoulli(k as usize))
            .sum();
        assert_eq!(s, q(0), "n = {n}");
    }
}
