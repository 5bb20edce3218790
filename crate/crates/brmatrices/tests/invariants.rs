//! Structural invariants of the exact matrices and the closed-form
//! determinants.

use brmatrices::*;
use exactalg::{double_factorial, pow_q, q, qr, ExactScalar};
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;

fn lambda(name: ConstName, k: usize) -> ExactScalar {
    let c = named_constant(name, k).unwrap();
    assert!(c.value.is_rational());
    c.value.coeff
}

#[test]
fn lambda_normalizes_sigma() {
    for k in 1..=5 {
        let l = lambda(ConstName::LambdaOdd, k);
        assert_eq!(&l * &l * mat_sigma_odd(k).det().unwrap(), q(1), "odd k={k}");
        let l = lambda(ConstName::LambdaEven, k);
        assert_eq!(
            &l * &l * mat_sigma_even(k).det().unwrap(),
            q(1),
            "even k={k}"
        );
    }
}

#[test]
fn betti_determinants() {
    for k in 1..=5 {
        let d = betti_odd(k).det().unwrap();
        assert_eq!(d, lambda(ConstName::DetBettiFormula, k), "det B_{k}");
        let (odd, even) = betti_minors(k);
        assert_eq!(d, odd.det().unwrap() * even.det().unwrap(), "minors k={k}");
        if k >= 2 {
            assert_eq!(
                even.det().unwrap(),
                lambda(ConstName::DetBettiMinorEven, k),
                "even minor k={k}"
            );
        }
        if k % 2 == 1 {
            assert!(betti_even(k).det().unwrap().is_zero(), "det b_{k}");
        }
    }
}

#[test]
fn derham_shapes() {
    for k in 1..=5usize {
        let d = derham_odd(k).unwrap();
        assert!(d.is_symmetric());
        let anti = BigRational::from_integer(double_factorial(2 * k as i64 + 1))
            / pow_q(&q(2), k as i64 + 1);
        for a in 1..=k {
            for b in 1..=k {
                let want_zero = a + b > k + 1;
                if want_zero {
                    assert!(d.at(a, b).is_zero());
                } else if a + b == k + 1 {
                    assert_eq!(d.at(a, b), &(&anti * &anti), "anti-diagonal k={k}");
                }
            }
        }
        let e = derham_even(k).unwrap();
        assert!(e.is_skew_symmetric());
        for a in 1..=k {
            for b in 1..=k {
                if a + b > k + 1 {
                    assert!(e.at(a, b).is_zero(), "d_{k} ({a},{b})");
                }
            }
        }
    }
}

#[test]
fn ring_symmetries() {
    for k in 2..=4 {
        assert!(betti_odd_ring(k).is_skew_symmetric());
        assert!(derham_odd_ring(k).unwrap().is_skew_symmetric());
        assert!(derham_even_ring(k).unwrap().is_symmetric());
    }
}

#[test]
fn odd_inverse_at_one() {
    // The smallest cases, where the closed forms degenerate to 1×1 and 2×2.
    let s = mat_sigma_odd(1);
    assert_eq!(mat_sigma_odd_inv_bernoulli(1).mul(&s), QMatrix::identity(1));
    assert_eq!(
        mat_sigma_even_inv_bernoulli(1).mul(&mat_sigma_even(1)),
        QMatrix::identity(2)
    );
}

#[test]
fn beta_two_and_unknown_names() {
    let b = beta_matrix_at(2, &qr(1, 2));
    assert_eq!(
        b,
        QMatrix::from_rows(vec![vec![q(1), q(0)], vec![q(0), q(1)]]).unwrap()
    );
    assert!(matches!(
        "Xi".parse::<AuxName>(),
        Err(BrError::UnknownName(_))
    ));
    assert!(matches!(
        "Xi".parse::<ConstName>(),
        Err(BrError::UnknownName(_))
    ));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn chessboard_and_symmetry(k in 1usize..=6) {
        let b = betti_odd(k);
        prop_assert!(b.is_symmetric());
        let e = betti_even(k);
        prop_assert!(e.is_skew_symmetric());
        for a in 1..=k {
            for c in 1..=k {
                if (a + c) % 2 == 1 {
                    prop_assert!(b.at(a, c).is_zero());
                } else {
                    prop_assert!(e.at(a, c).is_zero());
                }
            }
        }
    }

    #[test]
    fn sigma_inverses_close(k in 1usize..=6) {
        prop_assert_eq!(mat_sigma_odd(k).mul(&mat_sigma_odd_inv_bernoulli(k)), QMatrix::identity(2 * k - 1));
        prop_assert_eq!(mat_sigma_even(k).mul(&mat_sigma_even_inv_bernoulli(k)), QMatrix::identity(2 * k));
    }

    #[test]
    fn frak_s_inverts_betti(k in 1usize..=6) {
        prop_assert_eq!(frak_s(k).mul(&betti_odd(k)), QMatrix::identity(k));
    }

    #[test]
    fn beta_determinant(m in 1usize..=6, n in 1i64..50, d in 1i64..50) {
        let u = qr(n, d);
        let det = beta_matrix_at(m, &u).det().unwrap();
        prop_assert!(!det.is_zero());
    }

    #[test]
    fn surd_mul_recip(a in 1u64..500, b in 1u64..500) {
        let x = Surd::sqrt_int(a).mul(&Surd::sqrt_int(b));
        prop_assert_eq!(x.mul(&x.recip()), Surd::rational(q(1)));
        prop_assert_eq!(x.mul(&x), Surd::rational(q((a * b) as i64)));
    }
}
