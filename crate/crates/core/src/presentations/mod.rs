//! Matrix presentations of sheaves on plane quartics.
//!
//! Sheaves in the open stratum are cokernels of 3x3 matrices whose first
//! two columns are linear forms and whose last column holds quadrics; the
//! closed stratum uses 2x2 matrices with a linear first row and a cubic
//! second row. A presentation is valid when its determinant is not
//! identically zero (and, for the open stratum, its linear part is a
//! stable Kronecker module).

mod kronecker;
mod sample;
mod singularity;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::{linalg, Field, HomogPoly, Mat3, PolyJson};
use crate::error::{Error, Result};
use crate::plane::ProjPoint;

pub use kronecker::KroneckerModule;
pub(crate) use sample::random_form;
pub use sample::{
    sample_presentation, sample_with_budget, Sampled, Stratum, DEFAULT_REJECTION_BUDGET,
};
pub use singularity::{
    enumeration_verdict, enumeration_verdict_up_to, is_singular, is_singular_with, Method,
    SingularityVerdict,
};

/// Open-stratum presentation `(z | w | q)`.
#[derive(Clone, PartialEq, Eq)]
pub struct M0Presentation {
    lin: KroneckerModule,
    q: [HomogPoly; 3],
}

/// Closed-stratum presentation `(z1 z2; q1 q2)`.
#[derive(Clone, PartialEq, Eq)]
pub struct M1Presentation {
    z: [HomogPoly; 2],
    q: [HomogPoly; 2],
}

/// Either presentation shape.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Presentation {
    M0(M0Presentation),
    M1(M1Presentation),
}

fn same_field(polys: &[&HomogPoly]) -> Result<()> {
    let f = polys[0].field();
    for p in polys {
        if p.field() != f {
            return Err(Error::FieldMismatch {
                left: f.to_string(),
                right: p.field().to_string(),
            });
        }
    }
    Ok(())
}

impl M0Presentation {
    /// Validates stability of the linear part and a nonzero determinant.
    pub fn new(lin: KroneckerModule, q: [HomogPoly; 3]) -> Result<Self> {
        let a = Self::new_unchecked(lin, q)?;
        if !a.lin.is_stable() {
            return Err(Error::InvalidPresentation(
                "linear part is not stable".into(),
            ));
        }
        if a.determinant().is_zero() {
            return Err(Error::InvalidPresentation(
                "determinant vanishes identically".into(),
            ));
        }
        Ok(a)
    }

    /// Checks shapes and fields only.
    pub fn new_unchecked(lin: KroneckerModule, q: [HomogPoly; 3]) -> Result<Self> {
        for qi in &q {
            if qi.degree() != 2 {
                return Err(Error::DegreeMismatch {
                    expected: 2,
                    got: qi.degree(),
                });
            }
        }
        same_field(&[lin.entry(0, 0), &q[0], &q[1], &q[2]])?;
        Ok(M0Presentation { lin, q })
    }

    /// Builds the presentation from a 3x3 grid of entries.
    pub fn from_entries(entries: [[HomogPoly; 3]; 3]) -> Result<Self> {
        let [[z0, w0, q0], [z1, w1, q1], [z2, w2, q2]] = entries;
        let lin = KroneckerModule::new([[z0, w0], [z1, w1], [z2, w2]])?;
        Self::new(lin, [q0, q1, q2])
    }

    /// `(x0 x0 q0; x1 0 q1; 0 x2 q2)`.
    pub fn standard(q: [HomogPoly; 3]) -> Result<Self> {
        let lin = KroneckerModule::standard(q[0].field());
        Self::new(lin, q)
    }

    pub fn field(&self) -> &Field {
        self.q[0].field()
    }

    /// The linear part.
    pub fn lin(&self) -> &KroneckerModule {
        &self.lin
    }

    /// The quadric column `(q0, q1, q2)`.
    pub fn q_column(&self) -> &[HomogPoly; 3] {
        &self.q
    }

    pub fn entry(&self, row: usize, col: usize) -> &HomogPoly {
        if col < 2 {
            self.lin.entry(row, col)
        } else {
            &self.q[row]
        }
    }

    pub fn entries(&self) -> [[HomogPoly; 3]; 3] {
        [0, 1, 2].map(|r| [0, 1, 2].map(|c| self.entry(r, c).clone()))
    }

    /// Expansion along the quadric column: `d0 q0 + d1 q1 + d2 q2`.
    pub fn determinant(&self) -> HomogPoly {
        let d = self.lin.maximal_minors();
        let mut acc = &d[0] * &self.q[0];
        for (di, qi) in d.iter().zip(&self.q).skip(1) {
            acc = &acc + &(di * qi);
        }
        acc
    }

    /// Expansion along the first row; agrees with [`Self::determinant`].
    pub fn determinant_by_first_row(&self) -> HomogPoly {
        let a = |r: usize, c: usize| self.entry(r, c);
        let minor = |c0: usize, c1: usize| &(a(1, c0) * a(2, c1)) - &(a(1, c1) * a(2, c0));
        let t0 = a(0, 0) * &minor(1, 2);
        let t1 = a(0, 1) * &minor(0, 2);
        let t2 = a(0, 2) * &minor(0, 1);
        &(&t0 - &t1) + &t2
    }

    /// All nine 2x2 minors, rows `{i<j}` by columns `{a<b}` row-major:
    /// `A[i][a] A[j][b] - A[i][b] A[j][a]`. The three minors on columns
    /// `{0,1}` are quadrics, the rest are cubics.
    pub fn minors2x2(&self) -> Vec<HomogPoly> {
        const PAIRS: [(usize, usize); 3] = [(0, 1), (0, 2), (1, 2)];
        let mut out = Vec::with_capacity(9);
        for &(i, j) in &PAIRS {
            for &(a, b) in &PAIRS {
                out.push(
                    &(self.entry(i, a) * self.entry(j, b)) - &(self.entry(i, b) * self.entry(j, a)),
                );
            }
        }
        out
    }

    pub fn substitute(&self, t: &Mat3) -> Result<Self> {
        let lin = self.lin.substitute(t)?;
        let q = [
            self.q[0].substitute(t)?,
            self.q[1].substitute(t)?,
            self.q[2].substitute(t)?,
        ];
        Ok(M0Presentation { lin, q })
    }

    /// Replaces the quadric column.
    pub fn with_q_column(&self, q: [HomogPoly; 3]) -> Result<Self> {
        Self::new_unchecked(self.lin.clone(), q)
    }

    /// Applies a group element: `R A C` where `R` is an invertible constant
    /// matrix on rows and `C = (c00 c01 a; c10 c11 b; 0 0 lambda)` with an
    /// invertible constant 2x2 block, linear forms `a, b` and a nonzero
    /// scalar `lambda`.
    pub fn act(&self, rows: &Mat3, cols: GroupColumns<'_>) -> Result<Self> {
        let f = self.field();
        if rows.det() == 0 {
            return Err(Error::SingularMatrix);
        }
        let block = cols.block;
        let block_det = f.sub(
            f.mul(block[0][0], block[1][1]),
            f.mul(block[0][1], block[1][0]),
        );
        if block_det == 0 || cols.scale == 0 {
            return Err(Error::SingularMatrix);
        }
        let e = self.entries();
        // A C
        let mut ac: Vec<[HomogPoly; 3]> = Vec::with_capacity(3);
        for row in &e {
            let c0 = &row[0].scale(block[0][0]) + &row[1].scale(block[1][0]);
            let c1 = &row[0].scale(block[0][1]) + &row[1].scale(block[1][1]);
            let c2 = &(&(&row[0] * cols.a) + &(&row[1] * cols.b)) + &row[2].scale(cols.scale);
            ac.push([c0, c1, c2]);
        }
        // R (A C)
        let r = rows.rows();
        let mut out: Vec<[HomogPoly; 3]> = Vec::with_capacity(3);
        for ri in r {
            out.push([0, 1, 2].map(|c| {
                let mut acc = ac[0][c].scale(ri[0]);
                acc = &acc + &ac[1][c].scale(ri[1]);
                &acc + &ac[2][c].scale(ri[2])
            }));
        }
        let [r0, r1, r2]: [[HomogPoly; 3]; 3] = out.try_into().expect("three rows");
        let [[z0, w0, q0], [z1, w1, q1], [z2, w2, q2]] = [r0, r1, r2];
        let lin = KroneckerModule::new([[z0, w0], [z1, w1], [z2, w2]])?;
        Self::new_unchecked(lin, [q0, q1, q2])
    }
}

/// Column part of a group element acting on an open-stratum presentation.
#[derive(Clone, Copy, Debug)]
pub struct GroupColumns<'a> {
    pub block: [[u32; 2]; 2],
    pub a: &'a HomogPoly,
    pub b: &'a HomogPoly,
    pub scale: u32,
}

impl M1Presentation {
    /// Validates independence of `z1, z2` and a nonzero determinant.
    pub fn new(z: [HomogPoly; 2], q: [HomogPoly; 2]) -> Result<Self> {
        for zi in &z {
            if zi.degree() != 1 {
                return Err(Error::DegreeMismatch {
                    expected: 1,
                    got: zi.degree(),
                });
            }
        }
        for qi in &q {
            if qi.degree() != 3 {
                return Err(Error::DegreeMismatch {
                    expected: 3,
                    got: qi.degree(),
                });
            }
        }
        same_field(&[&z[0], &z[1], &q[0], &q[1]])?;
        let rows = vec![z[0].coeffs().to_vec(), z[1].coeffs().to_vec()];
        if linalg::rank(z[0].field(), &rows) < 2 {
            return Err(Error::InvalidPresentation(
                "linear entries are not independent".into(),
            ));
        }
        let a = M1Presentation { z, q };
        if a.determinant().is_zero() {
            return Err(Error::InvalidPresentation(
                "determinant vanishes identically".into(),
            ));
        }
        Ok(a)
    }

    pub fn field(&self) -> &Field {
        self.z[0].field()
    }

    pub fn z(&self) -> &[HomogPoly; 2] {
        &self.z
    }

    pub fn q(&self) -> &[HomogPoly; 2] {
        &self.q
    }

    /// `z1 q2 - z2 q1`.
    pub fn determinant(&self) -> HomogPoly {
        &(&self.z[0] * &self.q[1]) - &(&self.z[1] * &self.q[0])
    }

    /// The common zero of `z1` and `z2`, which is rational.
    pub fn support_point(&self) -> ProjPoint {
        let f = self.field();
        let a = self.z[0].coeffs();
        let b = self.z[1].coeffs();
        let cross = [
            f.sub(f.mul(a[1], b[2]), f.mul(a[2], b[1])),
            f.sub(f.mul(a[2], b[0]), f.mul(a[0], b[2])),
            f.sub(f.mul(a[0], b[1]), f.mul(a[1], b[0])),
        ];
        ProjPoint::new(f, cross).expect("independent linear forms")
    }

    pub fn entries(&self) -> [&HomogPoly; 4] {
        [&self.z[0], &self.z[1], &self.q[0], &self.q[1]]
    }

    pub fn substitute(&self, t: &Mat3) -> Result<Self> {
        Ok(M1Presentation {
            z: [self.z[0].substitute(t)?, self.z[1].substitute(t)?],
            q: [self.q[0].substitute(t)?, self.q[1].substitute(t)?],
        })
    }
}

impl Presentation {
    pub fn field(&self) -> &Field {
        match self {
            Presentation::M0(a) => a.field(),
            Presentation::M1(a) => a.field(),
        }
    }

    pub fn stratum(&self) -> Stratum {
        match self {
            Presentation::M0(_) => Stratum::M0,
            Presentation::M1(_) => Stratum::M1,
        }
    }

    /// Matrix size: 3 for the open stratum, 2 for the closed one.
    pub fn size(&self) -> usize {
        match self {
            Presentation::M0(_) => 3,
            Presentation::M1(_) => 2,
        }
    }

    pub fn determinant(&self) -> HomogPoly {
        match self {
            Presentation::M0(a) => a.determinant(),
            Presentation::M1(a) => a.determinant(),
        }
    }

    /// Generators of the ideal of submaximal minors: the nine 2x2 minors
    /// for the open stratum, the four entries for the closed stratum.
    pub fn submaximal_minors(&self) -> Vec<HomogPoly> {
        match self {
            Presentation::M0(a) => a.minors2x2(),
            Presentation::M1(a) => a.entries().into_iter().cloned().collect(),
        }
    }

    /// Rank of the scalar matrix of entry values at `pt`.
    pub fn rank_at_point(&self, pt: &ProjPoint) -> Result<usize> {
        let ext = pt.field();
        if ext.p() != self.field().p() {
            return Err(Error::FieldMismatch {
                left: self.field().to_string(),
                right: ext.to_string(),
            });
        }
        let rows: Vec<Vec<u32>> = match self {
            Presentation::M0(a) => (0..3)
                .map(|r| {
                    (0..3)
                        .map(|c| a.entry(r, c).eval_unchecked(ext, pt.coords()))
                        .collect()
                })
                .collect(),
            Presentation::M1(a) => vec![
                vec![
                    a.z[0].eval_unchecked(ext, pt.coords()),
                    a.z[1].eval_unchecked(ext, pt.coords()),
                ],
                vec![
                    a.q[0].eval_unchecked(ext, pt.coords()),
                    a.q[1].eval_unchecked(ext, pt.coords()),
                ],
            ],
        };
        Ok(linalg::rank(ext, &rows))
    }

    pub fn substitute(&self, t: &Mat3) -> Result<Self> {
        Ok(match self {
            Presentation::M0(a) => Presentation::M0(a.substitute(t)?),
            Presentation::M1(a) => Presentation::M1(a.substitute(t)?),
        })
    }

    pub fn to_json(&self) -> PresentationJson {
        let (shape, entries) = match self {
            Presentation::M0(a) => (
                Stratum::M0,
                a.entries()
                    .iter()
                    .map(|r| r.iter().map(HomogPoly::to_json).collect())
                    .collect(),
            ),
            Presentation::M1(a) => (
                Stratum::M1,
                vec![
                    vec![a.z[0].to_json(), a.z[1].to_json()],
                    vec![a.q[0].to_json(), a.q[1].to_json()],
                ],
            ),
        };
        PresentationJson {
            shape,
            p: self.field().p(),
            entries,
        }
    }
}

impl fmt::Debug for M0Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .entries()
            .iter()
            .map(|r| format!("{}, {}, {}", r[0], r[1], r[2]))
            .collect();
        write!(f, "M0[{}]", rows.join("; "))
    }
}

impl fmt::Debug for M1Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "M1[{}, {}; {}, {}]",
            self.z[0], self.z[1], self.q[0], self.q[1]
        )
    }
}

/// Presentation file: shape tag, characteristic and a grid of entries in
/// polynomial JSON (3x3 for `m0`, 2x2 for `m1`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationJson {
    pub shape: Stratum,
    pub p: u32,
    pub entries: Vec<Vec<PolyJson>>,
}

impl PresentationJson {
    /// Decodes and validates. When `p_override` is given, integer
    /// coefficients are reinterpreted modulo that prime instead.
    pub fn decode(&self, p_override: Option<u32>) -> Result<Presentation> {
        let p = p_override.unwrap_or(self.p);
        let field = Field::prime(p)?;
        let dec = |pj: &PolyJson| -> Result<HomogPoly> {
            if pj.k != 1 {
                return Err(Error::Parse(
                    "presentation entries must lie in the prime field".into(),
                ));
            }
            if p_override.is_some() {
                pj.decode_reinterpreted(&field)
            } else {
                pj.decode(&field)
            }
        };
        let grid = self
            .entries
            .iter()
            .map(|r| r.iter().map(dec).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        match self.shape {
            Stratum::M0 => {
                if grid.len() != 3 || grid.iter().any(|r| r.len() != 3) {
                    return Err(Error::Parse("m0 presentations are 3x3".into()));
                }
                let g = |r: usize, c: usize| grid[r][c].clone();
                let lin = KroneckerModule::new([
                    [g(0, 0), g(0, 1)],
                    [g(1, 0), g(1, 1)],
                    [g(2, 0), g(2, 1)],
                ])?;
                Ok(Presentation::M0(M0Presentation::new(
                    lin,
                    [g(0, 2), g(1, 2), g(2, 2)],
                )?))
            }
            Stratum::M1 => {
                if grid.len() != 2 || grid.iter().any(|r| r.len() != 2) {
                    return Err(Error::Parse("m1 presentations are 2x2".into()));
                }
                Ok(Presentation::M1(M1Presentation::new(
                    [grid[0][0].clone(), grid[0][1].clone()],
                    [grid[1][0].clone(), grid[1][1].clone()],
                )?))
            }
        }
    }
}

/// The boundary example `(x0 x1 0; 0 x0 x2^2; x2 0 x1^2)`: a non-singular
/// sheaf whose support curve is singular at a point of its zero scheme.
pub fn boundary_fixture(field: &Field) -> M0Presentation {
    let x = |i: usize| HomogPoly::var(field, i);
    let zero1 = HomogPoly::zero(field, 1);
    let lin = KroneckerModule::new([[x(0), x(1)], [zero1.clone(), x(0)], [x(2), zero1]])
        .expect("linear entries");
    let q = [
        HomogPoly::zero(field, 2),
        HomogPoly::monomial(field, [0, 0, 2], 1),
        HomogPoly::monomial(field, [0, 2, 0], 1),
    ];
    M0Presentation::new(lin, q).expect("the boundary fixture is a valid presentation")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::is_projectively_empty;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn f(p: u32) -> Field {
        Field::prime(p).unwrap()
    }

    fn quad(fl: &Field, terms: &[(i64, [u32; 3])]) -> HomogPoly {
        HomogPoly::from_terms(fl, 2, terms).unwrap()
    }

    fn random_form(fl: &Field, d: u32, rng: &mut impl Rng) -> HomogPoly {
        let n = crate::algebra::poly::num_monomials(d);
        HomogPoly::from_coeffs(fl, d, (0..n).map(|_| rng.gen_range(0..fl.p())).collect()).unwrap()
    }

    #[test]
    fn standard_form_determinant_formula() {
        let fl = f(11);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let x = |i| HomogPoly::var(&fl, i);
        for _ in 0..50 {
            let q = [0, 1, 2].map(|_| random_form(&fl, 2, &mut rng));
            let a =
                M0Presentation::new_unchecked(KroneckerModule::standard(&fl), q.clone()).unwrap();
            let expected = &(&(&(&x(1) * &x(2)) * &q[0]) - &(&(&x(0) * &x(2)) * &q[1]))
                - &(&(&x(0) * &x(1)) * &q[2]);
            assert_eq!(a.determinant(), expected);
            assert_eq!(a.determinant_by_first_row(), expected);
        }
    }

    #[test]
    fn standard_determinant_example() {
        let fl = f(11);
        let q0 = quad(&fl, &[(1, [2, 0, 0])]);
        let zero = HomogPoly::zero(&fl, 2);
        let a = M0Presentation::standard([q0, zero.clone(), zero]).unwrap();
        assert_eq!(a.determinant(), HomogPoly::monomial(&fl, [2, 1, 1], 1));
    }

    #[test]
    fn boundary_fixture_determinant() {
        let fl = f(11);
        let a = boundary_fixture(&fl);
        // x1 (x2^3 + x0^2 x1) = x0^2 x1^2 + x1 x2^3, via the first-row cofactor expansion
        let expected = HomogPoly::from_terms(&fl, 4, &[(1, [2, 2, 0]), (1, [0, 1, 3])]).unwrap();
        assert_eq!(a.determinant_by_first_row(), expected);
        assert_eq!(a.determinant(), expected);
    }

    #[test]
    fn m1_determinant() {
        let fl = f(7);
        let z = [HomogPoly::var(&fl, 0), HomogPoly::var(&fl, 1)];
        let q = [
            HomogPoly::monomial(&fl, [0, 3, 0], 1),
            HomogPoly::monomial(&fl, [3, 0, 0], 1),
        ];
        let a = M1Presentation::new(z, q).unwrap();
        let expected = HomogPoly::from_terms(&fl, 4, &[(1, [4, 0, 0]), (-1, [0, 4, 0])]).unwrap();
        assert_eq!(a.determinant(), expected);
        assert_eq!(
            a.support_point(),
            ProjPoint::from_i64(&fl, [0, 0, 1]).unwrap()
        );
    }

    #[test]
    fn m1_rejects_dependent_linear_row() {
        let fl = f(7);
        let z = [HomogPoly::var(&fl, 0), HomogPoly::var(&fl, 0).scale(3)];
        let q = [
            HomogPoly::monomial(&fl, [0, 3, 0], 1),
            HomogPoly::monomial(&fl, [3, 0, 0], 1),
        ];
        assert!(matches!(
            M1Presentation::new(z, q),
            Err(Error::InvalidPresentation(_))
        ));
    }

    #[test]
    fn zero_q_column_is_invalid_and_minors_reduce_to_kronecker() {
        let fl = f(7);
        let zero = HomogPoly::zero(&fl, 2);
        let z3 = [zero.clone(), zero.clone(), zero.clone()];
        assert!(M0Presentation::standard(z3.clone()).is_err());
        let a = M0Presentation::new_unchecked(KroneckerModule::standard(&fl), z3).unwrap();
        let minors = a.minors2x2();
        assert_eq!(minors.len(), 9);
        let quadric: Vec<&HomogPoly> = minors.iter().filter(|m| m.degree() == 2).collect();
        let cubic: Vec<&HomogPoly> = minors.iter().filter(|m| m.degree() == 3).collect();
        assert_eq!(quadric.len(), 3);
        assert!(cubic.iter().all(|m| m.is_zero()));
        let d = a.lin().maximal_minors();
        for m in quadric {
            assert!(d.iter().any(|di| di.proportional(m)));
        }
    }

    #[test]
    fn minors_match_listed_generators_in_standard_position() {
        // In standard position the minors are, up to sign,
        // (x0x1, x0x2, x1x2, x0q1, x0q2, x1q0, x1q2, x2q0, x2q1). The rank of A
        // at <0,1,0> drops to one iff q0 = q2 = 0 there, which needs x1q2 and
        // x2q1 rather than x1q1 and x2q2.
        let fl = f(7);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..30 {
            let q = [0, 1, 2].map(|_| random_form(&fl, 2, &mut rng));
            let a =
                M0Presentation::new_unchecked(KroneckerModule::standard(&fl), q.clone()).unwrap();
            let x = |i| HomogPoly::var(&fl, i);
            let listed = vec![
                HomogPoly::monomial(&fl, [1, 1, 0], 1),
                HomogPoly::monomial(&fl, [1, 0, 1], 1),
                HomogPoly::monomial(&fl, [0, 1, 1], 1),
                &x(0) * &q[1],
                &x(0) * &q[2],
                &x(1) * &q[0],
                &x(1) * &q[2],
                &x(2) * &q[0],
                &x(2) * &q[1],
            ];
            let minors = a.minors2x2();
            assert_eq!(
                is_projectively_empty(&minors).unwrap(),
                is_projectively_empty(&listed).unwrap()
            );
            for pt in crate::plane::enumerate_plane(&fl).unwrap() {
                let z1 = minors.iter().all(|m| m.eval(pt.coords()).unwrap() == 0);
                let z2 = listed.iter().all(|m| m.eval(pt.coords()).unwrap() == 0);
                assert_eq!(z1, z2);
            }
        }
    }

    #[test]
    fn rank_at_point_examples() {
        let fl = f(11);
        let x1x2 = quad(&fl, &[(1, [0, 1, 1])]);
        let q0 = quad(&fl, &[(3, [2, 0, 0]), (1, [0, 2, 0])]);
        let a = Presentation::M0(M0Presentation::standard([q0, x1x2.clone(), x1x2]).unwrap());
        let p0 = ProjPoint::from_i64(&fl, [1, 0, 0]).unwrap();
        assert_eq!(a.rank_at_point(&p0).unwrap(), 1);

        let b = Presentation::M0(
            M0Presentation::standard([
                quad(&fl, &[(1, [0, 2, 0])]),
                quad(&fl, &[(1, [0, 0, 2])]),
                quad(&fl, &[(1, [2, 0, 0])]),
            ])
            .unwrap(),
        );
        for pt in ProjPoint::standard_frame(&fl) {
            assert_eq!(b.rank_at_point(&pt).unwrap(), 2);
        }
        // off the support curve the matrix is invertible
        let det = b.determinant();
        for pt in crate::plane::enumerate_plane(&fl).unwrap() {
            if det.eval(pt.coords()).unwrap() != 0 {
                assert_eq!(b.rank_at_point(&pt).unwrap(), 3);
            }
        }
    }

    #[test]
    fn rank_at_point_ignores_representative() {
        let fl = f(7);
        let a = Presentation::M0(boundary_fixture(&fl));
        let ext = Field::of(7, 2).unwrap();
        for pt in crate::plane::enumerate_plane(&ext).unwrap().step_by(37) {
            let scaled = ProjPoint::new(&ext, pt.coords().map(|c| ext.mul(c, 5))).unwrap();
            assert_eq!(
                a.rank_at_point(&pt).unwrap(),
                a.rank_at_point(&scaled).unwrap()
            );
        }
    }

    #[test]
    fn json_round_trip() {
        let fl = f(11);
        let a = Presentation::M0(boundary_fixture(&fl));
        let text = serde_json::to_string(&a.to_json()).unwrap();
        let back: PresentationJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back.decode(None).unwrap(), a);
        let at7 = back.decode(Some(7)).unwrap();
        assert_eq!(at7.field().p(), 7);
    }
}
