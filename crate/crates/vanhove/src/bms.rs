//! Borwein–Salvy operators and their duality with Vanhove's operators,
//! checked on truncated series of `I_0(√u t)/t`.

use crate::operator::vanhove_operator;
use crate::report::Report;
use crate::{Result, VanhoveError};
use exactalg::{q, qr, DiffOp, RatFunc, TruncBiSeries, UniPoly, Var};

/// `L_{n+2} = 𝓛_{n+2,n+2}` from `𝓛_{n+2,k+1} = tD 𝓛_{n+2,k} - k(n+2-k) t² 𝓛_{n+2,k-1}`.
pub fn borwein_salvy_operator(n: usize) -> DiffOp {
    let euler = DiffOp::euler(Var::T);
    let t2 = DiffOp::mul_by(RatFunc::from_poly(UniPoly::x(Var::T).pow(2)));
    let mut prev = DiffOp::identity(Var::T);
    let mut cur = euler.clone();
    for k in 1..=n + 1 {
        let c = q((k * (n + 2 - k)) as i64);
        let next = euler
            .compose(&cur)
            .and_then(|a| a.sub(&t2.compose(&prev)?.scale(&c)))
            .expect("same variable");
        prev = cur;
        cur = next;
    }
    cur
}

/// Both sides of the duality, evaluated on `t·(I_0(√u t)/t) = I_0(√u t)`:
/// the `u`-operator `L̃_n ∘ (uD² + D)` commutes with the `1/t`, while the
/// `t`-operator is conjugated to `t ∘ L*_{n+2} ∘ t^{-1}`.
fn sides(n: usize, s: &TruncBiSeries) -> Result<(TruncBiSeries, TruncBiSeries)> {
    let bessel_u = DiffOp::from_polys(
        Var::U,
        vec![
            UniPoly::zero(Var::U),
            UniPoly::one(Var::U),
            UniPoly::x(Var::U),
        ],
    );
    let left_op = vanhove_operator(n)?.diffop().compose(&bessel_u)?;
    let t = RatFunc::from_poly(UniPoly::x(Var::T));
    let adj = borwein_salvy_operator(n).adjoint();
    let conj = DiffOp::mul_by(t.clone())
        .compose(&adj)?
        .compose(&DiffOp::mul_by(t.recip()?))?;
    let sign = if n.is_multiple_of(2) { q(1) } else { q(-1) };
    let right_op = conj.scale(&(sign * qr(1, 1i64 << (n + 2))));
    Ok((s.apply(&left_op)?, s.apply(&right_op)?))
}

fn compare(lhs: &TruncBiSeries, rhs: &TruncBiSeries) -> (usize, bool) {
    let n = lhs.order().min(rhs.order());
    let eq = (0..=n).all(|i| lhs.coeff(i) == rhs.coeff(i));
    (n, eq)
}

/// Checks `L̃_n(uD²+D) I_0(√u t)/t = (-1)^n 2^{-n-2} L*_{n+2} I_0(√u t)/t`
/// coefficientwise at truncation orders `N`, `N+1`, `N+2`, plus the
/// zero-series sanity check.
pub fn verify_bms_duality(n: usize, order: usize) -> Result<Report> {
    let mut rep = Report::new(format!("Vanhove/Borwein-Salvy duality, n = {n}"));
    let mut previous: Option<TruncBiSeries> = None;
    for extra in 0..3 {
        let s = TruncBiSeries::bessel_i0_sqrt_u(order + extra);
        let (lhs, rhs) = sides(n, &s)?;
        let (matched, eq) = compare(&lhs, &rhs);
        let nonzero = (0..=matched).filter(|&i| !lhs.coeff(i).is_zero()).count();
        if nonzero < 3 {
            return Err(VanhoveError::TruncationTooSmall {
                order,
                reason: format!("only {nonzero} nonzero matched coefficients"),
            });
        }
        rep.push(
            format!("order {}", order + extra),
            eq,
            format!("{} coefficients", matched + 1),
        );
        if let Some(p) = &previous {
            let consistent = (0..=p.order()).all(|i| p.coeff(i) == lhs.coeff(i));
            rep.check(
                format!(
                    "orders {} and {} consistent",
                    order + extra - 1,
                    order + extra
                ),
                consistent,
            );
        }
        previous = Some(lhs);
    }
    let (z1, z2) = sides(n, &TruncBiSeries::zero(order))?;
    rep.check("zero series", z1.is_zero() && z2.is_zero());
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tp(c: &[i64]) -> RatFunc {
        RatFunc::from_poly(UniPoly::from_ints(Var::T, c))
    }

    #[test]
    fn low_order_borwein_salvy() {
        // (tD)^2 - t^2 = t^2 D^2 + t D - t^2
        let l2 = borwein_salvy_operator(0);
        assert_eq!(
            l2,
            DiffOp::new(Var::T, vec![tp(&[0, 0, -1]), tp(&[0, 1]), tp(&[0, 0, 1])])
        );
        // (tD)^3 - 4t^2 (tD) - 4t^2
        let e = DiffOp::euler(Var::T);
        let t2 = DiffOp::mul_by(tp(&[0, 0, 1]));
        let expect = e
            .pow(3)
            .sub(&t2.compose(&e).unwrap().scale(&q(4)))
            .unwrap()
            .sub(&t2.scale(&q(4)))
            .unwrap();
        assert_eq!(borwein_salvy_operator(1), expect);
    }

    #[test]
    fn duality_small_n() {
        let r = verify_bms_duality(1, 12).unwrap();
        assert!(r.passed(), "{r}");
        let r = verify_bms_duality(2, 14).unwrap();
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn too_short_truncation() {
        assert!(verify_bms_duality(1, 2).is_err());
    }
}
