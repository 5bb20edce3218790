//! Exact block identities tying `Σ`, `σ`, their inverses, and the Betti
//! and combinatorial matrices together.

use crate::aux::{aux_matrix, AuxName};
use crate::betti::{
    betti_even, betti_odd, betti_odd_ring, frak_s, frak_s_entry, frak_s_ring_entry,
    frak_s_ring_zeroth,
};
use crate::sigma::{
    mat_sigma_even, mat_sigma_even_inv_bernoulli, mat_sigma_odd, mat_sigma_odd_inv_bernoulli,
};
use crate::util::{diff_detail, fact, fl2, pow2, sgn, QMatrix, Q};
use crate::{Report, Result};
use exactalg::{binom, q, ExactMatrix};

fn compare(report: &mut Report, label: &str, got: &QMatrix, want: &QMatrix) {
    report.push(label, got == want, diff_detail(got, want));
}

fn block_diag_scaled(top: &QMatrix, c_top: Q, bottom: &QMatrix, c_bottom: Q) -> QMatrix {
    ExactMatrix::block_diag(&top.scale(&c_top), &bottom.scale(&c_bottom))
}

/// Check every block identity at index `k >= 2`; failures are report entries.
pub fn verify_block_identities(k: usize) -> Result<Report> {
    let ki = k as i64;
    let mut r = Report::new(format!("block identities, k = {k}"));
    let a = aux_matrix(AuxName::A, k)?;
    let phi = aux_matrix(AuxName::Phi, k)?;
    let phi_s = aux_matrix(AuxName::PhiSmall, k)?;
    let psi = aux_matrix(AuxName::PsiSmall, k)?;
    let rr = aux_matrix(AuxName::R, k)?;
    let s_k = frak_s(k);
    let s_km1 = frak_s(k - 1);
    let sr_k = ExactMatrix::from_fn1(k, k, |x, y| frak_s_ring_entry(k, x, y));
    let b_k = betti_odd(k);
    let b_km1 = betti_odd(k - 1);

    // Σ block-diagonalized by A and Φ.
    let m = phi.inverse()?.mul(&a.inverse()?);
    let lhs = m.mul(&mat_sigma_odd(k)).mul(&m.transpose());
    let want = block_diag_scaled(
        &s_k,
        q(2 * ki + 1) / (q(16) * sgn(ki - 1)),
        &s_km1,
        sgn(ki - 1) / q(4 * (2 * ki + 1)),
    );
    compare(
        &mut r,
        "Φ⁻¹A⁻¹ΣA⁻ᵀΦ⁻ᵀ = diag(𝔖_k, 𝔖_{k-1}) up to scalars",
        &lhs,
        &want,
    );

    // σ reshuffled by R.
    let rinv = rr.inverse()?;
    let lhs = rinv.transpose().mul(&mat_sigma_even(k)).mul(&rinv);
    let c = sgn(ki) / q(8);
    let want = ExactMatrix::from_blocks(
        &sr_k.scale(&c),
        &s_k.scale(&c).neg(),
        &s_k.scale(&c),
        &QMatrix::zeros(k, k),
    )?;
    compare(&mut r, "R⁻ᵀσR⁻¹ = (-1)^k/8 [[𝔖̊, -𝔖], [𝔖, 0]]", &lhs, &want);

    // Closed-form Σ⁻¹ block-diagonalized.
    let ap = a.mul(&phi);
    let lhs = ap.transpose().mul(&mat_sigma_odd_inv_bernoulli(k)).mul(&ap);
    let want = block_diag_scaled(
        &b_k,
        q(16) * sgn(ki - 1) / q(2 * ki + 1),
        &b_km1,
        q(4 * (2 * ki + 1)) * sgn(ki - 1),
    );
    compare(
        &mut r,
        "ΦᵀAᵀΣ⁻¹AΦ = diag(𝔅_k, 𝔅_{k-1}) up to scalars",
        &lhs,
        &want,
    );

    // Closed-form σ⁻¹ reshuffled by R.
    let sinv = mat_sigma_even_inv_bernoulli(k);
    let lhs = rr.mul(&sinv).mul(&rr.transpose());
    let c = q(8) * sgn(ki);
    let want = ExactMatrix::from_blocks(
        &QMatrix::zeros(k, k),
        &b_k.scale(&c),
        &b_k.scale(&c).neg(),
        &betti_odd_ring(k).scale(&c),
    )?;
    compare(&mut r, "Rσ⁻¹Rᵀ = 8(-1)^k [[0, 𝔅], [-𝔅, 𝔅̊]]", &lhs, &want);

    // Closed-form σ⁻¹ truncated by ψ and block-diagonalized.
    let t = psi.mul(&a).mul(&phi_s);
    let lhs = t.transpose().mul(&sinv).mul(&t);
    let want = block_diag_scaled(
        &betti_even(k),
        q(16) * sgn(ki - 1) / q(2 * ki + 2),
        &betti_even(k - 1),
        q(4 * (2 * ki + 2)) * sgn(ki - 1),
    );
    compare(
        &mut r,
        "φᵀAᵀψᵀσ⁻¹ψAφ = diag(𝔟_k, 𝔟_{k-1}) up to scalars",
        &lhs,
        &want,
    );

    // Recursion for 𝔖.
    let mut ok = true;
    for x in 1..=ki {
        for y in 1..=ki {
            let lhs = q(4) / q(2 * ki + 2 - y) * frak_s_entry(k, x, y);
            let par = if x % 2 == 0 { q(2) / sgn(fl2(x)) } else { q(0) };
            let rhs = par * binom(ki + 1, x + 1) * frak_s_entry(k + 1, 1, y + 1)
                - q(2 * ki + 2 - x) * frak_s_entry(k + 1, x + 1, y + 1);
            ok &= lhs == rhs;
        }
    }
    r.check("𝔖_k recursion from 𝔖_{k+1}", ok);

    // First row of 𝔖_{k+1}.
    let kf = fact(ki + 1);
    let ok = (1..=ki + 1).all(|y| {
        let par = if y % 2 == 1 { q(2) / sgn(fl2(y)) } else { q(0) };
        let want = pow2(2 * (ki + 2)) * q(2 * ki + 3) / (&kf * &kf) * par * binom(ki + 1, y)
            / q(2 * ki + 3 - y);
        frak_s_entry(k + 1, 1, y) == want
    });
    r.check("first row of 𝔖_{k+1}", ok);

    // Recursion for 𝔖̊ over the extended index range [-1, k].
    let mut ok = true;
    for x in -1..=ki {
        for y in -1..=ki {
            let lhs = q(4) / q(2 * ki + 2 - y) * frak_s_ring_entry(k, x, y);
            let par = if (x + y + 1) % 2 == 0 { q(2) } else { q(0) };
            let first = pow2(2 * (ki + 2)) * q(2 * ki + 3) / (&kf * &kf) * par
                / sgn(fl2(x) + fl2(y + 1))
                * binom(ki + 1, x + 1)
                * binom(ki + 1, y + 1)
                / q(2 * ki + 2 - y);
            let rhs = -first - q(2 * ki + 2 - x) * frak_s_ring_entry(k + 1, x + 1, y + 1);
            ok &= lhs == rhs;
        }
    }
    r.check("𝔖̊_k recursion from 𝔖̊_{k+1} on [-1, k]", ok);

    let ok = (0..=ki).all(|y| {
        let z = frak_s_ring_zeroth(k, y);
        frak_s_ring_entry(k, 0, y) == z && frak_s_ring_entry(k, y, 0) == -z
    });
    r.check("zeroth row/column of 𝔖̊_k", ok);

    // 𝔅 recursion 4(𝔅_{k+1})_{a+1,b+1} = -(2k+2-a)(2k+2-b)(𝔅_k)_{a,b}.
    let b_kp1 = betti_odd(k + 1);
    let ok = (1..=k).all(|x| {
        (1..=k).all(|y| {
            let (xi, yi) = (x as i64, y as i64);
            q(4) * b_kp1.at(x + 1, y + 1)
                == -q((2 * ki + 2 - xi) * (2 * ki + 2 - yi)) * b_k.at(x, y)
        })
    });
    r.check("𝔅_{k+1} shifted block is a rescaled 𝔅_k", ok);

    compare(&mut r, "𝔖_k 𝔅_k = I", &s_k.mul(&b_k), &QMatrix::identity(k));
    compare(
        &mut r,
        "𝔅̊_k = 𝔅_k 𝔖̊_k 𝔅_k",
        &b_k.mul(&sr_k).mul(&b_k),
        &betti_odd_ring(k),
    );
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identities_hold() {
        for k in 2..=4 {
            let r = verify_block_identities(k).unwrap();
            assert!(r.passed(), "{r}");
        }
    }
}
