//! Points of the projective plane over finite fields and the coordinate
//! changes that move point triples to the coordinate frame.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::{ElemJson, Field, Mat3};
use crate::error::{Error, Result};

/// Default cap on the number of points `enumerate_plane` may emit.
pub const DEFAULT_ENUMERATION_BUDGET: u64 = 1 << 24;

/// A point of `P^2(F_{p^k})`, normalized so that its first nonzero
/// coordinate is 1.
#[derive(Clone, PartialEq, Eq)]
pub struct ProjPoint {
    field: Field,
    coords: [u32; 3],
}

impl ProjPoint {
    pub fn new(field: &Field, coords: [u32; 3]) -> Result<Self> {
        let lead = coords
            .iter()
            .copied()
            .find(|&c| c != 0)
            .ok_or(Error::ZeroPoint)?;
        let inv = field.inv(lead).expect("nonzero");
        Ok(ProjPoint {
            field: field.clone(),
            coords: coords.map(|c| field.mul(c, inv)),
        })
    }

    pub fn from_i64(field: &Field, coords: [i64; 3]) -> Result<Self> {
        Self::new(field, coords.map(|c| field.from_i64(c)))
    }

    /// The coordinate points `<1,0,0>, <0,1,0>, <0,0,1>`.
    pub fn standard_frame(field: &Field) -> [ProjPoint; 3] {
        [[1, 0, 0], [0, 1, 0], [0, 0, 1]].map(|c| ProjPoint {
            field: field.clone(),
            coords: c,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coords(&self) -> &[u32; 3] {
        &self.coords
    }

    /// Degree of the smallest field of definition: 1 when all normalized
    /// coordinates lie in `F_p`, otherwise `k` (no intermediate fields exist
    /// for `k <= 3`).
    pub fn degree(&self) -> u32 {
        if self.coords.iter().all(|&c| self.field.in_prime_subfield(c)) {
            1
        } else {
            self.field.k()
        }
    }

    /// Image under the Frobenius automorphism.
    pub fn conjugate(&self) -> ProjPoint {
        ProjPoint {
            field: self.field.clone(),
            coords: self.coords.map(|c| self.field.frobenius(c)),
        }
    }

    /// The Frobenius orbit, starting with this point.
    pub fn orbit(&self) -> Vec<ProjPoint> {
        let mut out = vec![self.clone()];
        let mut cur = self.conjugate();
        while cur != *self {
            out.push(cur.clone());
            cur = cur.conjugate();
        }
        out
    }

    /// Re-expresses a point rational over `F_p` in another field of the same
    /// characteristic.
    pub fn embed(&self, ext: &Field) -> Result<ProjPoint> {
        if self.degree() != 1 || ext.p() != self.field.p() {
            return Err(Error::NonRationalPoint);
        }
        Ok(ProjPoint {
            field: ext.clone(),
            coords: self.coords,
        })
    }

    pub fn to_json(&self) -> PointJson {
        PointJson {
            p: self.field.p(),
            k: self.field.k(),
            coords: self
                .coords
                .iter()
                .map(|&c| ElemJson::encode(&self.field, c))
                .collect(),
        }
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<String> = self.coords.iter().map(|&c| self.field.format(c)).collect();
        write!(f, "<{}>", c.join(", "))
    }
}

impl fmt::Debug for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} over {}", self, self.field)
    }
}

/// Serialized point: coordinate triple of element serializations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointJson {
    pub p: u32,
    #[serde(default = "one")]
    pub k: u32,
    pub coords: Vec<ElemJson>,
}

fn one() -> u32 {
    1
}

impl PointJson {
    pub fn decode(&self) -> Result<ProjPoint> {
        let field = Field::of(self.p, self.k)?;
        if self.coords.len() != 3 {
            return Err(Error::Parse("a point needs three coordinates".into()));
        }
        let c = self
            .coords
            .iter()
            .map(|e| e.decode(&field))
            .collect::<Result<Vec<_>>>()?;
        ProjPoint::new(&field, [c[0], c[1], c[2]])
    }
}

/// Number of points of `P^2(F_q)`.
pub fn plane_size(q: u64) -> u64 {
    q * q + q + 1
}

/// All points of `P^2` over `field` in a fixed order: `<1,a,b>` for codes
/// `a, b` ascending, then `<0,1,b>`, then `<0,0,1>`.
pub fn enumerate_plane(field: &Field) -> Result<impl Iterator<Item = ProjPoint>> {
    enumerate_plane_with_budget(field, DEFAULT_ENUMERATION_BUDGET)
}

/// As [`enumerate_plane`], failing when the point count exceeds `budget`.
pub fn enumerate_plane_with_budget(
    field: &Field,
    budget: u64,
) -> Result<impl Iterator<Item = ProjPoint>> {
    let q = field.order() as u64;
    let needed = plane_size(q);
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let field = field.clone();
    Ok(plane_coords(&field).map(move |coords| ProjPoint {
        field: field.clone(),
        coords,
    }))
}

/// Normalized coordinates of every point of `P^2(field)`, in the order of
/// [`enumerate_plane`], without budget checks.
pub fn plane_coords(field: &Field) -> impl Iterator<Item = [u32; 3]> {
    let q = field.order();
    let affine = (0..q).flat_map(move |a| (0..q).map(move |b| [1, a, b]));
    let at_infinity = (0..q).map(|b| [0, 1, b]);
    let last = std::iter::once([0, 0, 1]);
    affine.chain(at_infinity).chain(last)
}

/// Whether three points lie on a common line.
pub fn collinear(pts: &[ProjPoint; 3]) -> Result<bool> {
    let field = pts[0].field();
    if pts.iter().any(|pt| pt.field() != field) {
        return Err(Error::FieldMismatch {
            left: field.to_string(),
            right: pts
                .iter()
                .find(|pt| pt.field() != field)
                .unwrap()
                .field()
                .to_string(),
        });
    }
    let m = Mat3::new(
        field,
        [*pts[0].coords(), *pts[1].coords(), *pts[2].coords()],
    );
    Ok(m.det() == 0)
}

/// An invertible coordinate change with its inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjTransform {
    matrix: Mat3,
    inverse: Mat3,
}

impl ProjTransform {
    pub fn new(matrix: Mat3) -> Result<Self> {
        let inverse = matrix.inverse()?;
        Ok(ProjTransform { matrix, inverse })
    }

    pub fn matrix(&self) -> &Mat3 {
        &self.matrix
    }

    pub fn inverse_matrix(&self) -> &Mat3 {
        &self.inverse
    }

    pub fn inverse(&self) -> ProjTransform {
        ProjTransform {
            matrix: self.inverse.clone(),
            inverse: self.matrix.clone(),
        }
    }

    /// `T pt`, renormalized. Points over an extension of the transform's
    /// prime field are accepted.
    pub fn apply(&self, pt: &ProjPoint) -> ProjPoint {
        let ext = pt.field();
        let rows = self.matrix.rows();
        let mut out = [0u32; 3];
        for (i, o) in out.iter_mut().enumerate() {
            *o = (0..3).fold(0, |acc, l| ext.add(acc, ext.mul(rows[i][l], pt.coords[l])));
        }
        ProjPoint::new(ext, out).expect("invertible maps keep points nonzero")
    }
}

/// The transform `T` with `T e_i = pts[i]`, whose columns are the
/// normalized representatives of the points.
///
/// With the substitution convention `f -> f o T`, forms vanishing on `pts`
/// are carried to forms vanishing on the coordinate points.
pub fn transform_to_standard(pts: &[ProjPoint; 3]) -> Result<ProjTransform> {
    let field = pts[0].field().clone();
    if pts.iter().any(|pt| pt.field() != &field) {
        return Err(Error::FieldMismatch {
            left: field.to_string(),
            right: "mixed point fields".into(),
        });
    }
    if pts.iter().any(|pt| pt.degree() != 1) {
        return Err(Error::NonRationalPoint);
    }
    if pts[0] == pts[1] || pts[0] == pts[2] || pts[1] == pts[2] {
        return Err(Error::RepeatedPoints);
    }
    if collinear(pts)? {
        return Err(Error::CollinearPoints);
    }
    let base = field.prime_subfield();
    let m = Mat3::from_columns(
        &base,
        [*pts[0].coords(), *pts[1].coords(), *pts[2].coords()],
    );
    ProjTransform::new(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn point_counts() {
        for (p, k, n) in [(5, 1, 31), (7, 1, 57), (5, 2, 651)] {
            let f = Field::of(p, k).unwrap();
            assert_eq!(enumerate_plane(&f).unwrap().count(), n);
        }
    }

    #[test]
    fn enumeration_is_distinct_and_normalized() {
        let mut cases: Vec<(u32, u32)> = Vec::new();
        for p in [5, 7, 11, 13] {
            cases.push((p, 1));
            cases.push((p, 2));
        }
        cases.push((5, 3));
        cases.push((7, 3));
        for (p, k) in cases {
            let f = Field::of(p, k).unwrap();
            let pts: Vec<ProjPoint> = enumerate_plane(&f).unwrap().collect();
            let set: HashSet<[u32; 3]> = pts.iter().map(|pt| *pt.coords()).collect();
            let q = f.order() as u64;
            assert_eq!(pts.len() as u64, plane_size(q));
            assert_eq!(set.len(), pts.len());
            for pt in &pts {
                assert_eq!(&ProjPoint::new(&f, *pt.coords()).unwrap(), pt);
            }
        }
    }

    #[test]
    fn budget_guard() {
        let f = Field::of(7, 2).unwrap();
        assert!(matches!(
            enumerate_plane_with_budget(&f, 100),
            Err(Error::BudgetExceeded {
                needed: 2451,
                budget: 100
            })
        ));
    }

    #[test]
    fn normalization_is_canonical() {
        let f = Field::prime(7).unwrap();
        let a = ProjPoint::from_i64(&f, [0, 3, 6]).unwrap();
        let b = ProjPoint::from_i64(&f, [0, 1, 2]).unwrap();
        assert_eq!(a, b);
        assert_eq!(ProjPoint::from_i64(&f, [0, 0, 0]), Err(Error::ZeroPoint));
    }

    #[test]
    fn collinearity() {
        let f = Field::prime(7).unwrap();
        let p = |c| ProjPoint::from_i64(&f, c).unwrap();
        assert!(collinear(&[p([1, 0, 0]), p([0, 1, 0]), p([1, 1, 0])]).unwrap());
        assert!(!collinear(&ProjPoint::standard_frame(&f)).unwrap());
        // cofactor expansion along the first row: 1 * (1*4 - 1*2) = 2
        let m = Mat3::from_i64(&f, [[1, 0, 0], [1, 1, 1], [1, 2, 4]]);
        assert_eq!(m.det(), 2);
        assert!(!collinear(&[p([1, 0, 0]), p([1, 1, 1]), p([1, 2, 4])]).unwrap());
    }

    #[test]
    fn standard_triple_gives_identity_and_permutations() {
        let f = Field::prime(11).unwrap();
        let frame = ProjPoint::standard_frame(&f);
        let t = transform_to_standard(&frame).unwrap();
        assert_eq!(t.matrix(), &Mat3::identity(&f));
        let perm = [frame[1].clone(), frame[0].clone(), frame[2].clone()];
        let t = transform_to_standard(&perm).unwrap();
        assert_eq!(
            t.matrix(),
            &Mat3::from_i64(&f, [[0, 1, 0], [1, 0, 0], [0, 0, 1]])
        );
    }

    #[test]
    fn transform_maps_frame_to_points() {
        use rand::{Rng, SeedableRng};
        let f = Field::prime(11).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        let frame = ProjPoint::standard_frame(&f);
        let mut checked = 0;
        while checked < 100 {
            let mut pt = || ProjPoint::new(&f, [0, 1, 2].map(|_| rng.gen_range(0..11)));
            let (Ok(a), Ok(b), Ok(c)) = (pt(), pt(), pt()) else {
                continue;
            };
            let pts = [a, b, c];
            match transform_to_standard(&pts) {
                Ok(t) => {
                    for i in 0..3 {
                        assert_eq!(t.apply(&frame[i]), pts[i]);
                        assert_eq!(t.inverse().apply(&pts[i]), frame[i]);
                    }
                    checked += 1;
                }
                Err(Error::RepeatedPoints) | Err(Error::CollinearPoints) => {}
                Err(e) => panic!("{e}"),
            }
        }
    }

    #[test]
    fn transform_rejects_bad_triples() {
        let f = Field::prime(7).unwrap();
        let p = |c| ProjPoint::from_i64(&f, c).unwrap();
        assert_eq!(
            transform_to_standard(&[p([1, 0, 0]), p([1, 0, 0]), p([0, 0, 1])]),
            Err(Error::RepeatedPoints)
        );
        assert_eq!(
            transform_to_standard(&[p([1, 0, 0]), p([0, 1, 0]), p([1, 1, 0])]),
            Err(Error::CollinearPoints)
        );
    }

    #[test]
    fn frobenius_orbits() {
        let f = Field::of(5, 3).unwrap();
        let t = f.from_coords(&[0, 1, 0]).unwrap();
        let pt = ProjPoint::new(&f, [1, t, 0]).unwrap();
        assert_eq!(pt.degree(), 3);
        assert_eq!(pt.orbit().len(), 3);
        let rational = ProjPoint::new(&f, [1, 2, 3]).unwrap();
        assert_eq!(rational.orbit().len(), 1);
    }

    #[test]
    fn point_json() {
        let f = Field::of(7, 2).unwrap();
        let pt = ProjPoint::new(&f, [1, f.from_coords(&[2, 3]).unwrap(), 0]).unwrap();
        let j = serde_json::to_string(&pt.to_json()).unwrap();
        assert_eq!(j, r#"{"p":7,"k":2,"coords":[[1,0],[2,3],[0,0]]}"#);
        let back: PointJson = serde_json::from_str(&j).unwrap();
        assert_eq!(back.decode().unwrap(), pt);
    }
}
