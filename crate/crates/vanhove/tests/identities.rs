use exactalg::{q, UniPoly, Var};
use vanhove::*;

#[test]
fn verrill_recursion_m_up_to_6() {
    for m in 1..=6 {
        let rep = verify_verrill_recursion(m, 12);
        assert!(rep.passed(), "{rep}");
    }
}

#[test]
fn bms_duality_n_up_to_4() {
    for n in 1..=4 {
        let rep = verify_bms_duality(n, 14).unwrap();
        assert!(rep.passed(), "{rep}");
    }
}

#[test]
fn leading_terms_match_closed_forms() {
    // 𝔪_3(u) = u^2 (u-4)(u-16), 𝔫_2(u) = u (u-1)(u-9)
    let m3 = UniPoly::from_ints(Var::U, &[0, 0, 64, -20, 1]);
    assert_eq!(vanhove_operator(3).unwrap().leading(), &m3);
    let n2 = UniPoly::from_ints(Var::U, &[0, 9, -10, 1]);
    assert_eq!(vanhove_operator(2).unwrap().leading(), &n2);
}

#[test]
fn constrained_terminator_reading_breaks_recursion() {
    // Guard for the tuple convention: if α_{k+1} = 1 were also subject to the
    // gap condition, 𝒱_{2,1} would be -3(t-1)^2, and the recursion at n = 1
    // would read W3(2) - 3·0·W3(0) = 3 ≠ 0.
    let alt = UniPoly::from_ints(Var::T, &[-3, 6, -3]);
    let s = q(1) * q(3) + alt.eval(&q(1)) * q(1);
    assert_ne!(s, q(0));
    assert_ne!(verrill_poly(2, 1), alt);
}
