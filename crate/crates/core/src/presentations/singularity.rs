//! Singularity deciders.
//!
//! A presentation defines a singular sheaf iff its submaximal minors have
//! a common zero over the algebraic closure, i.e. iff the matrix drops
//! rank by two somewhere. Three routes are implemented:
//!
//! * `Macaulay`: emptiness of the minors ideal via [`is_projectively_empty`];
//! * `Enumeration`: search of `P^2(F_{p^k})`, `k = 1, 2, 3`, for a point of
//!   rank `<= n - 2`. Complete because every such point lies in the zero
//!   set of the quadric Kronecker minors (a length-3 scheme, or a line plus
//!   a point, on which the cubic minors cut points of degree `<= 3`);
//! * `SupportPoint` (closed stratum only): evaluate the cubic row at the
//!   common zero of the linear row.

use serde::{Deserialize, Serialize};

use super::Presentation;
use crate::algebra::{is_projectively_empty, Field, HomogPoly};
use crate::error::{Error, Result};
use crate::plane::{plane_coords, plane_size, ProjPoint, DEFAULT_ENUMERATION_BUDGET};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Macaulay,
    Enumeration,
    SupportPoint,
}

/// Outcome of a singularity test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularityVerdict {
    pub singular: bool,
    /// A point where the rank drops by two, when the method produces one.
    pub witness: Option<ProjPoint>,
    pub method: Method,
}

/// Macaulay-matrix decision.
pub fn is_singular(a: &Presentation) -> Result<SingularityVerdict> {
    is_singular_with(a, Method::Macaulay)
}

pub fn is_singular_with(a: &Presentation, method: Method) -> Result<SingularityVerdict> {
    match method {
        Method::Macaulay => Ok(SingularityVerdict {
            singular: !is_projectively_empty(&a.submaximal_minors())?,
            witness: None,
            method,
        }),
        Method::Enumeration => enumeration_verdict(a),
        Method::SupportPoint => match a {
            Presentation::M1(m1) => {
                let pt = m1.support_point();
                let singular = m1
                    .q()
                    .iter()
                    .all(|q| q.eval_unchecked(m1.field(), pt.coords()) == 0);
                Ok(SingularityVerdict {
                    singular,
                    witness: singular.then_some(pt),
                    method,
                })
            }
            Presentation::M0(_) => Err(Error::Precondition(
                "the support-point test applies to the closed stratum only".into(),
            )),
        },
    }
}

fn linear_coeffs(l: &HomogPoly) -> [u32; 3] {
    let c = l.coeffs();
    [c[0], c[1], c[2]]
}

/// Linear entries as coefficient rows, so that most points are rejected
/// after a few field operations. Prime-field coefficients are valid codes
/// in every extension.
enum LinearPart {
    Open { z: [[u32; 3]; 3], w: [[u32; 3]; 3] },
    Closed { z: [[u32; 3]; 2] },
}

impl LinearPart {
    fn of(a: &Presentation) -> Self {
        match a {
            Presentation::M0(m0) => {
                let lin = m0.lin();
                LinearPart::Open {
                    z: [0, 1, 2].map(|r| linear_coeffs(lin.entry(r, 0))),
                    w: [0, 1, 2].map(|r| linear_coeffs(lin.entry(r, 1))),
                }
            }
            Presentation::M1(m1) => LinearPart::Closed {
                z: [0, 1].map(|r| linear_coeffs(&m1.z()[r])),
            },
        }
    }
}

fn dot(ext: &Field, c: &[u32; 3], pt: &[u32; 3]) -> u32 {
    ext.add(
        ext.add(ext.mul(c[0], pt[0]), ext.mul(c[1], pt[1])),
        ext.mul(c[2], pt[2]),
    )
}

const PAIRS: [(usize, usize); 3] = [(0, 1), (0, 2), (1, 2)];

fn minor(ext: &Field, i: usize, j: usize, u: &[u32; 3], v: &[u32; 3]) -> u32 {
    ext.sub(ext.mul(u[i], v[j]), ext.mul(u[j], v[i]))
}

/// Whether the rank drops by two at `pt`.
fn rank_drops_at(a: &Presentation, lin: &LinearPart, ext: &Field, pt: &[u32; 3]) -> bool {
    match (a, lin) {
        (Presentation::M0(m0), LinearPart::Open { z, w }) => {
            let zv = z.map(|c| dot(ext, &c, pt));
            let wv = w.map(|c| dot(ext, &c, pt));
            if PAIRS.iter().any(|&(i, j)| minor(ext, i, j, &zv, &wv) != 0) {
                return false;
            }
            let q = [0, 1, 2].map(|r| m0.q_column()[r].eval_unchecked(ext, pt));
            PAIRS
                .iter()
                .all(|&(i, j)| minor(ext, i, j, &zv, &q) == 0 && minor(ext, i, j, &wv, &q) == 0)
        }
        (Presentation::M1(m1), LinearPart::Closed { z }) => {
            z.iter().all(|c| dot(ext, c, pt) == 0)
                && m1.q().iter().all(|q| q.eval_unchecked(ext, pt) == 0)
        }
        _ => unreachable!("linear part prepared from the same presentation"),
    }
}

/// Exhaustive search over `P^2(F_{p^k})` for `k = 1, 2, 3`; at levels
/// `k > 1` only points not defined over `F_p` are visited.
pub fn enumeration_verdict(a: &Presentation) -> Result<SingularityVerdict> {
    enumeration_verdict_up_to(a, 3)
}

/// Enumeration restricted to `k <= max_k`; complete only for `max_k >= 3`.
pub fn enumeration_verdict_up_to(a: &Presentation, max_k: u32) -> Result<SingularityVerdict> {
    let p = a.field().p();
    let lin = LinearPart::of(a);
    for k in 1..=max_k {
        let ext = Field::of(p, k)?;
        let needed = plane_size(u64::from(ext.order()));
        if needed > DEFAULT_ENUMERATION_BUDGET {
            return Err(Error::BudgetExceeded {
                needed,
                budget: DEFAULT_ENUMERATION_BUDGET,
            });
        }
        for pt in plane_coords(&ext) {
            if k > 1 && pt.iter().all(|&c| c < p) {
                continue;
            }
            if rank_drops_at(a, &lin, &ext, &pt) {
                return Ok(SingularityVerdict {
                    singular: true,
                    witness: Some(ProjPoint::new(&ext, pt)?),
                    method: Method::Enumeration,
                });
            }
        }
    }
    Ok(SingularityVerdict {
        singular: false,
        witness: None,
        method: Method::Enumeration,
    })
}

#[cfg(test)]
mod tests {
    use super::super::{boundary_fixture, M0Presentation, M1Presentation};
    use super::*;

    fn quad(fl: &Field, terms: &[(i64, [u32; 3])]) -> HomogPoly {
        HomogPoly::from_terms(fl, 2, terms).unwrap()
    }

    #[test]
    fn boundary_fixture_is_non_singular() {
        for p in [7, 11] {
            let fl = Field::prime(p).unwrap();
            let a = Presentation::M0(boundary_fixture(&fl));
            assert!(!is_singular(&a).unwrap().singular);
            assert!(!enumeration_verdict(&a).unwrap().singular);
        }
    }

    #[test]
    fn rank_one_at_first_coordinate_point() {
        let fl = Field::prime(11).unwrap();
        let x1x2 = quad(&fl, &[(1, [0, 1, 1])]);
        let q0 = quad(&fl, &[(1, [2, 0, 0]), (2, [0, 0, 2])]);
        let a = Presentation::M0(M0Presentation::standard([q0, x1x2.clone(), x1x2]).unwrap());
        assert!(is_singular(&a).unwrap().singular);
        let v = enumeration_verdict(&a).unwrap();
        assert!(v.singular);
        let w = v.witness.unwrap();
        assert_eq!(w, ProjPoint::from_i64(&fl, [1, 0, 0]).unwrap());
        assert!(a.rank_at_point(&w).unwrap() <= 1);
    }

    #[test]
    fn rank_two_everywhere_on_frame_is_non_singular() {
        let fl = Field::prime(11).unwrap();
        let a = Presentation::M0(
            M0Presentation::standard([
                quad(&fl, &[(1, [0, 2, 0])]),
                quad(&fl, &[(1, [0, 0, 2])]),
                quad(&fl, &[(1, [2, 0, 0])]),
            ])
            .unwrap(),
        );
        assert!(!is_singular(&a).unwrap().singular);
        assert!(!enumeration_verdict(&a).unwrap().singular);
    }

    #[test]
    fn closed_stratum_methods() {
        let fl = Field::prime(7).unwrap();
        let z = [HomogPoly::var(&fl, 0), HomogPoly::var(&fl, 1)];
        // support point <0,0,1>; q1 = x0^3, q2 = x1^3 vanish there
        let sing = Presentation::M1(
            M1Presentation::new(
                z.clone(),
                [
                    HomogPoly::monomial(&fl, [3, 0, 0], 1),
                    HomogPoly::monomial(&fl, [0, 3, 0], 1),
                ],
            )
            .unwrap(),
        );
        let smooth = Presentation::M1(
            M1Presentation::new(
                z,
                [
                    HomogPoly::monomial(&fl, [0, 0, 3], 1),
                    HomogPoly::monomial(&fl, [0, 3, 0], 1),
                ],
            )
            .unwrap(),
        );
        for m in [Method::Macaulay, Method::Enumeration, Method::SupportPoint] {
            assert!(is_singular_with(&sing, m).unwrap().singular, "{m:?}");
            assert!(!is_singular_with(&smooth, m).unwrap().singular, "{m:?}");
        }
        let w = is_singular_with(&sing, Method::SupportPoint)
            .unwrap()
            .witness
            .unwrap();
        assert_eq!(sing.rank_at_point(&w).unwrap(), 0);
    }

    #[test]
    fn support_point_rejected_for_open_stratum() {
        let fl = Field::prime(7).unwrap();
        let a = Presentation::M0(boundary_fixture(&fl));
        assert!(is_singular_with(&a, Method::SupportPoint).is_err());
    }
}
