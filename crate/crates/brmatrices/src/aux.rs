//! Pattern matrices used to reshuffle, truncate and block-diagonalize the
//! Wrońskian and kernel matrices.

use crate::util::{delta, QMatrix, Q};
use crate::{BrError, Result};
use exactalg::{q, ExactMatrix};
use serde::{Deserialize, Serialize};
use std::str::FromStr;

/// Which auxiliary matrix; `from_str` accepts `A psi rho Theta Phi theta phi R Psi`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AuxName {
    /// `A_{2k-1}`: subtracts columns `k+1..2k-1` from columns `2..k`.
    A,
    /// `ψ_k`, `2k×(2k-1)`: drops column `k+1`.
    PsiSmall,
    /// `ρ_k`, `(2k-1)×2k`: drops the bottom row.
    Rho,
    Theta,
    Phi,
    ThetaSmall,
    PhiSmall,
    /// `R_{2k}`, the reshuffling-rescaling matrix.
    R,
    /// `Ψ_k`, `(2k-1)×(2k-2)`: drops column `k`.
    PsiCap,
}

impl FromStr for AuxName {
    type Err = BrError;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "A" => AuxName::A,
            "psi" => AuxName::PsiSmall,
            "rho" => AuxName::Rho,
            "Theta" => AuxName::Theta,
            "Phi" => AuxName::Phi,
            "theta" => AuxName::ThetaSmall,
            "phi" => AuxName::PhiSmall,
            "R" => AuxName::R,
            "Psi" => AuxName::PsiCap,
            _ => return Err(BrError::UnknownName(s.to_string())),
        })
    }
}

fn ind(c: bool) -> Q {
    q(i64::from(c))
}

/// `Θ`/`θ` (`shift = 1` resp. `2` in `2k + shift`) below the diagonal.
fn theta_like(k: i64, shift: i64) -> QMatrix {
    let n = (2 * k - 1) as usize;
    ExactMatrix::from_fn1(n, n, |a, b| {
        let mut v = q(delta(a, b));
        if a > k && b == a - k {
            v += Q::new((2 * (a - k)).into(), (2 * k + shift).into());
        }
        v
    })
}

fn phi_like(k: i64, shift: i64) -> QMatrix {
    let n = (2 * k - 1) as usize;
    ExactMatrix::from_fn1(n, n, |a, b| {
        let mut v = q(delta(a, b));
        if a > k && b == a - k + 1 {
            v += q(1) - Q::new(b.into(), (2 * k + shift).into());
        }
        v
    })
}

/// The auxiliary matrix `name` at index `k >= 1`.
pub fn aux_matrix(name: AuxName, k: usize) -> Result<QMatrix> {
    if k == 0 {
        return Err(BrError::Range {
            what: "k",
            value: k,
        });
    }
    let ki = k as i64;
    let odd = 2 * k - 1;
    Ok(match name {
        AuxName::A => ExactMatrix::from_fn1(odd, odd, |a, b| {
            if (2..=ki).contains(&a) {
                q(delta(a, b) - delta(a + ki - 1, b))
            } else {
                q(delta(a, b))
            }
        }),
        AuxName::PsiSmall => ExactMatrix::from_fn1(2 * k, odd, |a, b| {
            if a <= ki {
                ind(a == b)
            } else {
                ind(a >= ki + 2 && a == b + 1)
            }
        }),
        AuxName::Rho => ExactMatrix::from_fn1(odd, 2 * k, |a, b| ind(a == b)),
        AuxName::Theta => theta_like(ki, 1),
        AuxName::Phi => phi_like(ki, 1),
        AuxName::ThetaSmall => theta_like(ki, 2),
        AuxName::PhiSmall => phi_like(ki, 2),
        AuxName::R => ExactMatrix::from_fn1(2 * k, 2 * k, |a, b| {
            if a <= ki {
                ind(a == b - 1)
            } else if a == ki + 1 {
                if b == 1 {
                    Q::new((2 * ki + 2).into(), (2 * ki + 1).into())
                } else {
                    q(0)
                }
            } else {
                ind(a == b)
            }
        }),
        AuxName::PsiCap => ExactMatrix::from_fn1(odd, odd - 1, |a, b| {
            if a <= ki {
                ind(a == b && a != ki)
            } else {
                ind(a == b + 1)
            }
        }),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_and_shapes() {
        let shapes = [
            ("A", 5, 5),
            ("psi", 6, 5),
            ("rho", 5, 6),
            ("R", 6, 6),
            ("Psi", 5, 4),
            ("theta", 5, 5),
        ];
        for (n, r, c) in shapes {
            let m = aux_matrix(n.parse().unwrap(), 3).unwrap();
            assert_eq!((m.rows(), m.cols()), (r, c), "{n}");
        }
        assert!("Omega".parse::<AuxName>().is_err());
    }

    #[test]
    fn truncation_drops_column_and_row() {
        let k = 3;
        let x = QMatrix::from_fn(6, 6, |i, j| q((10 * i + j) as i64));
        let rho = aux_matrix(AuxName::Rho, k).unwrap();
        let psi = aux_matrix(AuxName::PsiSmall, k).unwrap();
        let y = rho.mul(&x).mul(&psi);
        let cols: Vec<usize> = (0..6).filter(|&j| j != k).collect();
        let rows: Vec<usize> = (0..5).collect();
        assert_eq!(y, x.select(&rows, &cols));
    }

    #[test]
    fn unit_determinants() {
        for k in 1..=5 {
            for n in [
                AuxName::Theta,
                AuxName::Phi,
                AuxName::ThetaSmall,
                AuxName::PhiSmall,
                AuxName::A,
            ] {
                assert_eq!(
                    aux_matrix(n, k).unwrap().det().unwrap(),
                    q(1),
                    "{n:?} k={k}"
                );
            }
        }
    }
}
