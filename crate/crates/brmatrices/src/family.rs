//! Name-addressed access to every matrix of the crate, and its JSON form
//! `{"name", "k", "ring": "Q" | "Q(u)", "entries": [["num/den", …], …]}`.

use crate::aux::{aux_matrix, AuxName};
use crate::util::{QMatrix, UMatrix, Q};
use crate::{betti, derham, sigma, wronskian, BrError, Result};
use exactalg::parse_q;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FamilyName {
    V,
    Upsilon,
    Sigma,
    #[serde(rename = "sigma")]
    SigmaEven,
    SigmaInvB,
    #[serde(rename = "sigmaInvB")]
    SigmaEvenInvB,
    BettiB,
    Bettib,
    BettiBring,
    Bettibring,
    FrakS,
    FrakSring,
    DerhamD,
    Derhamd,
    DerhamDring,
    Derhamdring,
    Beta,
    A,
    #[serde(rename = "Psi_small")]
    PsiSmall,
    Rho,
    Theta,
    Phi,
    #[serde(rename = "theta_small")]
    ThetaSmall,
    #[serde(rename = "phi_small")]
    PhiSmall,
    R,
    PsiCap,
}

use FamilyName::*;

/// Every name with its accepted spellings: canonical, snake-case function
/// name, and the short forms `matV`, `betti_B`, … used on the command line.
const ALIASES: &[(FamilyName, &[&str])] = &[
    (V, &["V", "mat_v", "matV"]),
    (Upsilon, &["Upsilon", "mat_upsilon", "matUpsilon"]),
    (Sigma, &["Sigma", "mat_sigma_odd", "matSigma"]),
    (SigmaEven, &["sigma", "mat_sigma_even", "matsigma"]),
    (
        SigmaInvB,
        &[
            "SigmaInvB",
            "mat_sigma_odd_inv_bernoulli",
            "matSigmaInv_bernoulli",
        ],
    ),
    (
        SigmaEvenInvB,
        &[
            "sigmaInvB",
            "mat_sigma_even_inv_bernoulli",
            "matsigmaInv_bernoulli",
        ],
    ),
    (BettiB, &["BettiB", "betti_odd", "betti_B"]),
    (Bettib, &["Bettib", "betti_even", "betti_b"]),
    (BettiBring, &["BettiBring", "betti_odd_ring", "betti_Bring"]),
    (
        Bettibring,
        &["Bettibring", "betti_even_ring", "betti_bring"],
    ),
    (FrakS, &["FrakS", "frak_s", "frakS"]),
    (FrakSring, &["FrakSring", "frak_s_ring", "frakSring"]),
    (DerhamD, &["DerhamD", "derham_odd", "derham_D"]),
    (Derhamd, &["Derhamd", "derham_even", "derham_d"]),
    (
        DerhamDring,
        &["DerhamDring", "derham_odd_ring", "derham_Dring"],
    ),
    (
        Derhamdring,
        &["Derhamdring", "derham_even_ring", "derham_dring"],
    ),
    (Beta, &["Beta", "beta", "beta_matrix"]),
    (A, &["A"]),
    (PsiSmall, &["Psi_small", "psi"]),
    (Rho, &["Rho", "rho"]),
    (Theta, &["Theta"]),
    (Phi, &["Phi"]),
    (ThetaSmall, &["theta_small", "theta"]),
    (PhiSmall, &["phi_small", "phi"]),
    (R, &["R"]),
    (PsiCap, &["PsiCap", "Psi"]),
];

impl FamilyName {
    pub fn all() -> impl Iterator<Item = FamilyName> {
        ALIASES.iter().map(|(n, _)| *n)
    }

    pub fn canonical(self) -> &'static str {
        ALIASES
            .iter()
            .find(|(n, _)| *n == self)
            .map(|(_, a)| a[0])
            .unwrap_or("?")
    }

    /// Entries depend on `u` (before any evaluation).
    pub fn is_symbolic(self) -> bool {
        matches!(self, V | Upsilon | Beta)
    }

    fn aux(self) -> Option<AuxName> {
        Some(match self {
            A => AuxName::A,
            PsiSmall => AuxName::PsiSmall,
            Rho => AuxName::Rho,
            Theta => AuxName::Theta,
            Phi => AuxName::Phi,
            ThetaSmall => AuxName::ThetaSmall,
            PhiSmall => AuxName::PhiSmall,
            R => AuxName::R,
            PsiCap => AuxName::PsiCap,
            _ => return None,
        })
    }
}

impl FromStr for FamilyName {
    type Err = BrError;
    fn from_str(s: &str) -> Result<Self> {
        ALIASES
            .iter()
            .find(|(_, a)| a.contains(&s))
            .map(|(n, _)| *n)
            .ok_or_else(|| BrError::UnknownName(s.to_string()))
    }
}

impl fmt::Display for FamilyName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.canonical())
    }
}

/// A request for one matrix: its name, index (`k`, or `m` for `Beta`) and
/// an optional rational point for the `u`-dependent members.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixFamily {
    pub name: FamilyName,
    pub k: usize,
    pub u: Option<Q>,
}

/// A built matrix, constant or over `Q(u)`.
#[derive(Clone, Debug, PartialEq)]
pub enum Built {
    Q(QMatrix),
    U(UMatrix),
}

impl Built {
    pub fn shape(&self) -> (usize, usize) {
        match self {
            Built::Q(m) => (m.rows(), m.cols()),
            Built::U(m) => (m.rows(), m.cols()),
        }
    }
}

fn need_k(k: usize, min: usize) -> Result<()> {
    if k < min {
        return Err(BrError::Range {
            what: "k",
            value: k,
        });
    }
    Ok(())
}

/// Build the requested matrix; `u`, when given, is substituted into the
/// symbolic members and ignored by the constant ones.
pub fn build_family(f: &MatrixFamily) -> Result<Built> {
    let k = f.k;
    if let Some(a) = f.name.aux() {
        return aux_matrix(a, k).map(Built::Q);
    }
    let sym = match f.name {
        V => {
            need_k(k, 1)?;
            Some(wronskian::mat_v(k)?)
        }
        Upsilon => {
            need_k(k, 1)?;
            Some(wronskian::mat_upsilon(k)?)
        }
        Beta => {
            need_k(k, 1)?;
            if let Some(u0) = &f.u {
                return Ok(Built::Q(wronskian::beta_matrix_at(k, u0)));
            }
            Some(wronskian::beta_matrix(k))
        }
        _ => None,
    };
    if let Some(m) = sym {
        return Ok(match &f.u {
            Some(u0) => Built::Q(m.eval(u0)?),
            None => Built::U(m),
        });
    }
    need_k(k, 1)?;
    let m = match f.name {
        Sigma => sigma::mat_sigma_odd(k),
        SigmaEven => sigma::mat_sigma_even(k),
        SigmaInvB => sigma::mat_sigma_odd_inv_bernoulli(k),
        SigmaEvenInvB => sigma::mat_sigma_even_inv_bernoulli(k),
        BettiB => betti::betti_odd(k),
        Bettib => betti::betti_even(k),
        BettiBring => betti::betti_odd_ring(k),
        Bettibring => betti::betti_even_ring(k),
        FrakS => betti::frak_s(k),
        FrakSring => betti::frak_s_ring(k),
        DerhamD => derham::derham_odd(k)?,
        Derhamd => derham::derham_even(k)?,
        DerhamDring => {
            need_k(k, 2)?;
            derham::derham_odd_ring(k)?
        }
        Derhamdring => derham::derham_even_ring(k)?,
        _ => unreachable!("handled above"),
    };
    Ok(Built::Q(m))
}

/// Serialized matrix. Entries over `Q` are `num/den` strings; entries over
/// `Q(u)` are rendered rational functions of `u`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub name: String,
    pub k: usize,
    pub ring: String,
    pub entries: Vec<Vec<String>>,
}

impl MatrixJson {
    pub fn from_built(name: FamilyName, k: usize, b: &Built) -> Self {
        let (ring, entries) = match b {
            Built::Q(m) => ("Q", m.to_strings()),
            Built::U(m) => (
                "Q(u)",
                (0..m.rows())
                    .map(|i| m.row(i).iter().map(|x| x.to_string()).collect())
                    .collect(),
            ),
        };
        MatrixJson {
            name: name.canonical().to_string(),
            k,
            ring: ring.to_string(),
            entries,
        }
    }

    /// Parse back a constant matrix.
    pub fn to_q_matrix(&self) -> Result<QMatrix> {
        if self.ring != "Q" {
            return Err(BrError::Shape(format!("ring {} is not Q", self.ring)));
        }
        let rows = self
            .entries
            .iter()
            .map(|r| {
                r.iter()
                    .map(|s| parse_q(s).map_err(BrError::from))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(QMatrix::from_rows(rows)?)
    }
}

/// Build and serialize in one go.
pub fn matrix_json(f: &MatrixFamily) -> Result<MatrixJson> {
    Ok(MatrixJson::from_built(f.name, f.k, &build_family(f)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use exactalg::q;

    #[test]
    fn every_name_parses_back() {
        for n in FamilyName::all() {
            assert_eq!(n.canonical().parse::<FamilyName>().unwrap(), n);
            let js = serde_json::to_string(&n).unwrap();
            assert_eq!(serde_json::from_str::<FamilyName>(&js).unwrap(), n);
        }
        assert!(matches!(
            "Betti".parse::<FamilyName>(),
            Err(BrError::UnknownName(_))
        ));
    }

    #[test]
    fn betti_two_json() {
        let j = matrix_json(&MatrixFamily {
            name: "betti_B".parse().unwrap(),
            k: 2,
            u: None,
        })
        .unwrap();
        assert_eq!(j.ring, "Q");
        assert_eq!(j.entries[0][0], "1/80");
        assert_eq!(j.entries[1][1], "-3/64");
        let back: MatrixJson = serde_json::from_str(&serde_json::to_string(&j).unwrap()).unwrap();
        assert_eq!(back, j);
        assert_eq!(back.to_q_matrix().unwrap(), betti::betti_odd(2));
    }

    #[test]
    fn symbolic_members() {
        let f = MatrixFamily {
            name: V,
            k: 2,
            u: None,
        };
        assert_eq!(matrix_json(&f).unwrap().ring, "Q(u)");
        let at = MatrixFamily { u: Some(q(3)), ..f };
        assert_eq!(matrix_json(&at).unwrap().ring, "Q");
        for n in FamilyName::all() {
            let b = build_family(&MatrixFamily {
                name: n,
                k: 2,
                u: None,
            })
            .unwrap();
            assert!(b.shape().0 > 0, "{n}");
        }
    }
}
