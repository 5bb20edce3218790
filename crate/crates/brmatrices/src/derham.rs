//! De Rham matrices `𝔇_k`, `𝔡_k` from the kernels `V`, `υ` and the Bessel
//! matrices, together with the four alternative representations that also
//! produce the companions `𝔇̊_k`, `𝔡̊_k`.
//!
//! All limits `u → 1⁻` and `u → 0⁺` are taken on reduced rational functions;
//! the absolute values `|ℓ_{m,m}(u)|` are resolved into explicit signs that
//! are checked at a sample point of the relevant interval.

use crate::aux::{aux_matrix, AuxName};
use crate::util::{diff_detail, resolved_sign, sgn, QMatrix, UMatrix, Q};
use crate::wronskian::{beta_matrix, beta_matrix_at, mat_upsilon, mat_v};
use crate::{BrError, Report, Result};
use exactalg::{q, qr, RatFunc, UniPoly};
use vanhove::{vanhove_operator, VanhoveOperator};

/// `ℓ_{m,m}` together with the sign `s` making `s·ℓ_{m,m} = |ℓ_{m,m}|` on
/// `(0, 1)`.  Every linear factor `u - n²` is negative there, so the expected
/// sign is `(-1)^{#factors}`.
fn lead_with_sign(m: usize) -> Result<(UniPoly, Q)> {
    let lead = vanhove_operator(m)?.leading().clone();
    let factors = (1..=m + 1).filter(|n| n % 2 == (m + 1) % 2).count();
    let expected = if factors % 2 == 0 { 1 } else { -1 };
    let s = resolved_sign(&lead, &qr(1, 2), expected)?;
    debug_assert_eq!(lead, VanhoveOperator::expected_leading(m));
    Ok((lead, s))
}

/// `|ℓ_{m,m}(u)|·K(u)` with `|·|` resolved on `(0, 1)`.
fn weighted(kernel: &UMatrix, m: usize) -> Result<UMatrix> {
    let (lead, s) = lead_with_sign(m)?;
    let w = RatFunc::from_poly(lead.scale(&s));
    Ok(kernel.map(|x| x * &w))
}

fn congruence(inv: &QMatrix, x: &QMatrix) -> QMatrix {
    inv.transpose().mul(x).mul(inv)
}

/// `lim_{u→1⁻} |ℓ_{m,m}| β_m^{-T} K(u) β_m^{-1}`, with `K = V_m` or `υ_m`.
fn limit_at_one(kernel: &UMatrix, m: usize) -> Result<QMatrix> {
    let y = weighted(kernel, m)?.eval(&q(1))?;
    let binv = beta_matrix_at(m, &q(1)).inverse()?;
    Ok(congruence(&binv, &y))
}

/// `lim_{u→0⁺} |ℓ_{m,m}(u)| β_m(u)^{-T} K(u) β_m(u)^{-1}`.
fn limit_at_zero(kernel: &UMatrix, m: usize) -> Result<QMatrix> {
    let binv = beta_matrix(m).inverse()?;
    let x = binv.transpose().mul(&weighted(kernel, m)?).mul(&binv);
    Ok(x.eval(&q(0))?)
}

fn lower_right(x: &QMatrix, k: usize, offset: usize) -> QMatrix {
    x.block(offset, offset, k, k)
}

/// `𝔇_k` (`k×k`).
pub fn derham_odd(k: usize) -> Result<QMatrix> {
    if k == 0 {
        return Err(BrError::Range {
            what: "k",
            value: k,
        });
    }
    let m = 2 * k + 1;
    let x = limit_at_one(&mat_v(k + 1)?, m)?;
    let den = q(4 * (2 * k as i64 + 3)) * sgn(k as i64);
    Ok(lower_right(&x, k, k + 1).scale(&den.recip()))
}

/// `𝔡_k` (`k×k`), through the exact limit `u → 1⁻`.
pub fn derham_even(k: usize) -> Result<QMatrix> {
    if k == 0 {
        return Err(BrError::Range {
            what: "k",
            value: k,
        });
    }
    let m = 2 * k + 2;
    let x = limit_at_one(&mat_upsilon(k + 1)?, m)?;
    let den = q(4 * (2 * k as i64 + 4)) * sgn(k as i64);
    Ok(lower_right(&x, k, k + 1).scale(&den.recip()))
}

/// Outcome of [`derham_alternatives`].
#[derive(Clone, Debug)]
pub struct AlternativeForms {
    pub k: usize,
    /// `𝔇̊_k`.
    pub derham_odd_ring: QMatrix,
    /// `𝔡̊_{k-1}`.
    pub derham_even_ring_prev: QMatrix,
    pub report: Report,
}

fn expect_eq(report: &mut Report, label: String, got: &QMatrix, want: &QMatrix) -> Result<()> {
    let ok = got == want;
    report.push(label.clone(), ok, diff_detail(got, want));
    if ok {
        Ok(())
    } else {
        Err(BrError::Mismatch(format!(
            "{label}: {}",
            diff_detail(got, want)
        )))
    }
}

fn expect_zero(report: &mut Report, label: String, x: &QMatrix) -> Result<()> {
    let ok = x.is_zero();
    report.push(label.clone(), ok, "");
    if ok {
        Ok(())
    } else {
        Err(BrError::Shape(label))
    }
}

/// Evaluate the four alternative representations of `𝔇_k`, `𝔡_k` (`k >= 2`),
/// compare their blocks with [`derham_odd`]/[`derham_even`], and read off
/// `𝔇̊_k` and `𝔡̊_{k-1}`.
pub fn derham_alternatives(k: usize) -> Result<AlternativeForms> {
    if k < 2 {
        return Err(BrError::Range {
            what: "k",
            value: k,
        });
    }
    let ki = k as i64;
    let mut report = Report::new(format!("de Rham alternatives, k = {k}"));
    let d_k = derham_odd(k)?;
    let d_km1 = derham_odd(k - 1)?;
    let dd_k = derham_even(k)?;
    let dd_km1 = derham_even(k - 1)?;

    // Odd kernel at u = 1, conjugated by Θ.
    let v = mat_v(k)?;
    let x = limit_at_one(&v, 2 * k - 1)?;
    let th_inv = aux_matrix(AuxName::Theta, k)?.inverse()?;
    let lhs = congruence(&th_inv, &x).scale(&(q(4 * (2 * ki + 1)) * sgn(ki - 1)).recip());
    expect_zero(
        &mut report,
        "odd kernel at 1: off-diagonal blocks vanish".into(),
        &lhs.block(0, k, k, k - 1),
    )?;
    expect_zero(
        &mut report,
        "odd kernel at 1: off-diagonal blocks vanish (transpose)".into(),
        &lhs.block(k, 0, k - 1, k),
    )?;
    let c = qr(2, 2 * ki + 1);
    expect_eq(
        &mut report,
        "odd kernel at 1: top-left block = (2/(2k+1))² 𝔇_k".into(),
        &lhs.block(0, 0, k, k),
        &d_k.scale(&(&c * &c)),
    )?;
    expect_eq(
        &mut report,
        "odd kernel at 1: bottom-right block = 𝔇_{k-1}".into(),
        &lhs.block(k, k, k - 1, k - 1),
        &d_km1,
    )?;

    // Even kernel at u = 1: margin zeros, then truncation by ρ and conjugation by θ.
    let ups = mat_upsilon(k)?;
    let y = limit_at_one(&ups, 2 * k)?;
    expect_zero(
        &mut report,
        "even kernel at 1: last row vanishes".into(),
        &y.block(2 * k - 1, 0, 1, 2 * k),
    )?;
    expect_zero(
        &mut report,
        "even kernel at 1: last column vanishes".into(),
        &y.block(0, 2 * k - 1, 2 * k, 1),
    )?;
    let rho = aux_matrix(AuxName::Rho, k)?;
    let th_inv = aux_matrix(AuxName::ThetaSmall, k)?.inverse()?;
    let trunc = rho.mul(&y).mul(&rho.transpose());
    let lhs = congruence(&th_inv, &trunc).scale(&(q(8 * (ki + 1)) * sgn(ki - 1)).recip());
    expect_zero(
        &mut report,
        "even kernel at 1: off-diagonal blocks vanish".into(),
        &lhs.block(0, k, k, k - 1),
    )?;
    expect_zero(
        &mut report,
        "even kernel at 1: off-diagonal blocks vanish (transpose)".into(),
        &lhs.block(k, 0, k - 1, k),
    )?;
    let c = qr(1, ki + 1);
    expect_eq(
        &mut report,
        "even kernel at 1: top-left block = (1/(k+1))² 𝔡_k".into(),
        &lhs.block(0, 0, k, k),
        &dd_k.scale(&(&c * &c)),
    )?;
    expect_eq(
        &mut report,
        "even kernel at 1: bottom-right block = 𝔡_{k-1}".into(),
        &lhs.block(k, k, k - 1, k - 1),
        &dd_km1,
    )?;

    // Even kernel at u = 0 with the symbolic Bessel matrix.
    let z = limit_at_zero(&ups, 2 * k)?.scale(&(q(8) * sgn(ki)).recip());
    expect_zero(
        &mut report,
        "even kernel at 0: top-left block vanishes".into(),
        &z.block(0, 0, k, k),
    )?;
    expect_eq(
        &mut report,
        "even kernel at 0: top-right block = -𝔇_k".into(),
        &z.block(0, k, k, k),
        &d_k.neg(),
    )?;
    expect_eq(
        &mut report,
        "even kernel at 0: bottom-left block = 𝔇_k".into(),
        &z.block(k, 0, k, k),
        &d_k,
    )?;
    let d_ring = z.block(k, k, k, k);
    report.check(
        "even kernel at 0: 𝔇̊_k skew-symmetric",
        d_ring.is_skew_symmetric(),
    );

    // Odd kernel at u = 0, with column k removed by Ψ.
    let psi = aux_matrix(AuxName::PsiCap, k)?;
    let w = limit_at_zero(&v, 2 * k - 1)?;
    let w = psi
        .transpose()
        .mul(&w)
        .mul(&psi)
        .scale(&(q(8) * sgn(ki)).recip());
    let h = k - 1;
    expect_zero(
        &mut report,
        "odd kernel at 0: top-left block vanishes".into(),
        &w.block(0, 0, h, h),
    )?;
    expect_eq(
        &mut report,
        "odd kernel at 0: top-right block = -𝔡_{k-1}".into(),
        &w.block(0, h, h, h),
        &dd_km1.neg(),
    )?;
    expect_eq(
        &mut report,
        "odd kernel at 0: bottom-left block = 𝔡_{k-1}".into(),
        &w.block(h, 0, h, h),
        &dd_km1,
    )?;
    let dd_ring = w.block(h, h, h, h);
    report.check("odd kernel at 0: 𝔡̊_{k-1} symmetric", dd_ring.is_symmetric());

    Ok(AlternativeForms {
        k,
        derham_odd_ring: d_ring,
        derham_even_ring_prev: dd_ring,
        report,
    })
}

/// `𝔇̊_k` (`k >= 2`).
pub fn derham_odd_ring(k: usize) -> Result<QMatrix> {
    Ok(derham_alternatives(k)?.derham_odd_ring)
}

/// `𝔡̊_k` (`k >= 1`).
pub fn derham_even_ring(k: usize) -> Result<QMatrix> {
    Ok(derham_alternatives(k + 1)?.derham_even_ring_prev)
}

#[cfg(test)]
mod tests {
    use super::*;
    use exactalg::ExactMatrix;

    #[test]
    fn small_tables() {
        let d2 = derham_odd(2).unwrap();
        assert_eq!(
            d2,
            ExactMatrix::from_rows(vec![vec![qr(13, 8), qr(225, 64)], vec![qr(225, 64), q(0)]])
                .unwrap()
        );
        let dd2 = derham_even(2).unwrap();
        assert_eq!(dd2, ExactMatrix::from_ints(&[&[0, -18], &[18, 0]]));
    }

    #[test]
    fn alternatives_hold() {
        for k in 2..=3 {
            let alt = derham_alternatives(k).unwrap();
            assert!(alt.report.passed(), "{}", alt.report);
        }
    }
}
