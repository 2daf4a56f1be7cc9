use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{KroneckerModule, M0Presentation, M1Presentation, Presentation};
use crate::algebra::poly::num_monomials;
use crate::algebra::{Field, HomogPoly};
use crate::error::{Error, Result};

pub const DEFAULT_REJECTION_BUDGET: u64 = 10_000;

/// Which presentation shape to work with.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Stratum {
    M0,
    M1,
}

impl fmt::Display for Stratum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Stratum::M0 => "m0",
            Stratum::M1 => "m1",
        })
    }
}

impl FromStr for Stratum {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "m0" => Ok(Stratum::M0),
            "m1" => Ok(Stratum::M1),
            other => Err(Error::Parse(format!("unknown stratum {other:?}"))),
        }
    }
}

/// A sampled presentation with the number of rejected draws before it.
#[derive(Clone, Debug)]
pub struct Sampled {
    pub presentation: Presentation,
    pub rejections: u64,
}

pub(crate) fn random_form(field: &Field, degree: u32, rng: &mut impl Rng) -> HomogPoly {
    let p = field.p();
    let coeffs = (0..num_monomials(degree))
        .map(|_| rng.gen_range(0..p))
        .collect();
    HomogPoly::from_coeffs(field, degree, coeffs).expect("residues in range")
}

/// Draws presentation coefficients uniformly over the prime field and
/// rejects until the validity invariants hold.
pub fn sample_presentation(stratum: Stratum, field: &Field, rng: &mut impl Rng) -> Result<Sampled> {
    sample_with_budget(stratum, field, rng, DEFAULT_REJECTION_BUDGET)
}

pub fn sample_with_budget(
    stratum: Stratum,
    field: &Field,
    rng: &mut impl Rng,
    budget: u64,
) -> Result<Sampled> {
    if !field.is_prime_field() {
        return Err(Error::Precondition(
            "sampling is over the prime field".into(),
        ));
    }
    for rejections in 0..budget {
        let candidate = match stratum {
            Stratum::M0 => {
                let entries = [0, 1, 2].map(|_| [0, 1].map(|_| random_form(field, 1, rng)));
                let q = [0, 1, 2].map(|_| random_form(field, 2, rng));
                let lin = KroneckerModule::new(entries)?;
                M0Presentation::new(lin, q).map(Presentation::M0)
            }
            Stratum::M1 => {
                let z = [0, 1].map(|_| random_form(field, 1, rng));
                let q = [0, 1].map(|_| random_form(field, 3, rng));
                M1Presentation::new(z, q).map(Presentation::M1)
            }
        };
        match candidate {
            Ok(presentation) => {
                return Ok(Sampled {
                    presentation,
                    rejections,
                })
            }
            Err(Error::InvalidPresentation(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::RejectionBudget(budget))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn samples_are_valid_and_deterministic() {
        let f11 = Field::prime(11).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let a = sample_presentation(Stratum::M0, &f11, &mut rng).unwrap();
        let Presentation::M0(m0) = &a.presentation else {
            panic!("wrong shape")
        };
        assert!(m0.lin().is_stable());
        assert!(!m0.determinant().is_zero());
        let mut rng2 = ChaCha8Rng::seed_from_u64(42);
        let b = sample_presentation(Stratum::M0, &f11, &mut rng2).unwrap();
        assert_eq!(a.presentation, b.presentation);

        let f7 = Field::prime(7).unwrap();
        let c = sample_presentation(Stratum::M1, &f7, &mut rng).unwrap();
        assert!(matches!(c.presentation, Presentation::M1(_)));
        assert!(!c.presentation.determinant().is_zero());
    }

    #[test]
    fn budget_is_enforced() {
        let f = Field::prime(5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert!(matches!(
            sample_with_budget(Stratum::M0, &f, &mut rng, 0),
            Err(Error::RejectionBudget(0))
        ));
    }

    #[test]
    fn stratum_parsing() {
        assert_eq!("m0".parse::<Stratum>().unwrap(), Stratum::M0);
        assert_eq!(Stratum::M1.to_string(), "m1");
        assert!("m2".parse::<Stratum>().is_err());
    }
}
