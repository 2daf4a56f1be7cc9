//! Morphisms from open-stratum presentations to curves and point triples.
//!
//! * `nu`: the linear part of a presentation;
//! * `mu`: the determinant quartic, up to scalar;
//! * `h_points`: the zero scheme of the Kronecker minors (defined off the
//!   locus where the minors share a linear factor);
//! * `flag_of`: the pair (curve, zero scheme).
//!
//! The remaining operations make the inverse constructions explicit:
//! rebuilding a presentation from a flag, recognizing two presentations
//! with the same image through a unipotent column operation, and the
//! one-parameter family of presentations with the same image when the
//! minors share a linear factor.

use std::collections::BTreeSet;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::linalg::{det3, nullspace, solve};
use crate::algebra::poly::{monomials, num_monomials};
use crate::algebra::{is_projectively_empty, quadric_split, Field, HomogPoly, PolyJson};
use crate::error::{Error, Result};
use crate::plane::{transform_to_standard, PointJson, ProjPoint};
use crate::presentations::{KroneckerModule, M0Presentation};

/// One Frobenius orbit of geometric points, recorded by a representative
/// and the orbit size (the degree of its field of definition).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    pub point: ProjPoint,
    pub degree: u32,
}

/// Geometric points of the zero scheme of the Kronecker minors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroScheme {
    pub orbits: Vec<Orbit>,
}

impl ZeroScheme {
    pub fn degree_sum(&self) -> u32 {
        self.orbits.iter().map(|o| o.degree).sum()
    }

    /// Three geometric points: no multiplicity is hidden.
    pub fn is_reduced(&self) -> bool {
        self.degree_sum() == 3
    }

    /// Three distinct points, all rational.
    pub fn is_three_rational(&self) -> bool {
        self.orbits.len() == 3 && self.orbits.iter().all(|o| o.degree == 1)
    }

    /// Every geometric point, expanding each orbit.
    pub fn geometric_points(&self) -> Vec<ProjPoint> {
        self.orbits.iter().flat_map(|o| o.point.orbit()).collect()
    }
}

/// A quartic curve together with the points of a zero scheme on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Flag {
    /// Canonical representative (first nonzero coefficient 1).
    pub curve: HomogPoly,
    pub points: ZeroScheme,
}

impl Flag {
    /// Comparison of curve classes and point sets, ignoring orbit order.
    pub fn same_as(&self, other: &Flag) -> bool {
        let key = |f: &Flag| -> BTreeSet<(u32, u32, [u32; 3])> {
            f.points
                .orbits
                .iter()
                .map(|o| (o.degree, o.point.field().k(), *o.point.coords()))
                .collect()
        };
        self.curve.proportional(&other.curve) && key(self) == key(other)
    }

    pub fn to_json(&self) -> FlagJson {
        FlagJson {
            curve: self.curve.to_json(),
            points: self
                .points
                .orbits
                .iter()
                .map(|o| OrbitJson {
                    point: o.point.to_json(),
                    degree: o.degree,
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitJson {
    pub point: PointJson,
    pub degree: u32,
}

/// Serialized flag: `{curve, points: [{point, degree}]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlagJson {
    pub curve: PolyJson,
    pub points: Vec<OrbitJson>,
}

impl FlagJson {
    pub fn decode(&self) -> Result<Flag> {
        let field = Field::of(self.curve.p, self.curve.k)?;
        let curve = self.curve.decode(&field)?.canonical();
        let orbits = self
            .points
            .iter()
            .map(|o| {
                Ok(Orbit {
                    point: o.point.decode()?,
                    degree: o.degree,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Flag {
            curve,
            points: ZeroScheme { orbits },
        })
    }
}

/// The linear part.
pub fn nu(a: &M0Presentation) -> KroneckerModule {
    a.lin().clone()
}

/// The determinant, scaled to canonical form.
pub fn mu(a: &M0Presentation) -> Result<HomogPoly> {
    let det = a.determinant();
    if det.is_zero() {
        return Err(Error::InvalidPresentation(
            "determinant vanishes identically".into(),
        ));
    }
    Ok(det.canonical())
}

/// Whether `f` is divisible by the nonzero linear form `l` (same field):
/// substituting the solution of `l = 0` for one variable must kill `f`.
pub fn divisible_by_linear(f: &HomogPoly, l: &HomogPoly) -> bool {
    let field = l.field();
    let c = l.coeffs();
    let m = (0..3).find(|&i| c[i] != 0).expect("nonzero linear form");
    let inv = field.inv(c[m]).expect("nonzero");
    let mut rows = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];
    rows[m] = [0, 1, 2].map(|j| {
        if j == m {
            0
        } else {
            field.neg(field.mul(c[j], inv))
        }
    });
    f.compose_linear(&rows).is_zero()
}

/// A linear form dividing all three maximal minors, searched among the
/// linear factors of the first nonzero minor over `F_p` and `F_{p^2}`.
pub fn common_linear_factor(alpha: &KroneckerModule) -> Result<Option<HomogPoly>> {
    if !alpha.is_stable() {
        return Err(Error::Unstable);
    }
    let d = alpha.maximal_minors();
    let first = d
        .iter()
        .find(|m| !m.is_zero())
        .expect("stable modules have nonzero minors");
    for line in quadric_split(first)?.lines() {
        let ext = line.field().clone();
        let divides_all = d
            .iter()
            .all(|m| divisible_by_linear(&m.embed(&ext).expect("prime coefficients"), &line));
        if divides_all {
            return Ok(Some(line));
        }
    }
    Ok(None)
}

/// Geometric points of the zero scheme of the Kronecker minors.
///
/// A point `x` is a common zero iff the columns `z(x)` and `w(x)` are
/// dependent, i.e. `(s z + t w)(x) = 0` for some `(s : t)`. The roots of
/// the binary cubic `det(s Z + t W)` (with `Z`, `W` the coefficient
/// matrices of the columns) are found by enumerating `P^1(F_{p^k})`,
/// `k = 1, 2, 3`, and each root contributes the kernel point. Repeated
/// roots surface as a degree sum below three.
pub fn h_points(alpha: &KroneckerModule) -> Result<ZeroScheme> {
    if let Some(l) = common_linear_factor(alpha)? {
        return Err(Error::CommonLinearFactor(l.to_string()));
    }
    let base = alpha.field();
    let p = base.p();
    let zc: [[u32; 3]; 3] = [0, 1, 2].map(|r| {
        let c = alpha.entry(r, 0).coeffs();
        [c[0], c[1], c[2]]
    });
    let wc: [[u32; 3]; 3] = [0, 1, 2].map(|r| {
        let c = alpha.entry(r, 1).coeffs();
        [c[0], c[1], c[2]]
    });
    let mut orbits = Vec::new();
    for k in 1..=3u32 {
        let ext = if k == 1 {
            base.clone()
        } else {
            Field::of(p, k)?
        };
        let mut seen: BTreeSet<[u32; 3]> = BTreeSet::new();
        let pencil = (0..ext.order())
            .map(|t| [1, t])
            .chain(std::iter::once([0, 1]));
        for [s, t] in pencil {
            if k > 1 && ext.in_prime_subfield(s) && ext.in_prime_subfield(t) {
                continue;
            }
            let m: [[u32; 3]; 3] = [0, 1, 2]
                .map(|r| [0, 1, 2].map(|c| ext.add(ext.mul(s, zc[r][c]), ext.mul(t, wc[r][c]))));
            if det3(&ext, &m) != 0 {
                continue;
            }
            let rows: Vec<Vec<u32>> = m.iter().map(|r| r.to_vec()).collect();
            let kernel = nullspace(&ext, &rows, 3);
            if kernel.len() != 1 {
                return Err(Error::Precondition(
                    "Kronecker minors vanish on a line".into(),
                ));
            }
            let pt = ProjPoint::new(&ext, [kernel[0][0], kernel[0][1], kernel[0][2]])?;
            let rep = pt
                .orbit()
                .into_iter()
                .min_by_key(|q| *q.coords())
                .expect("orbit is non-empty");
            if seen.insert(*rep.coords()) {
                orbits.push(Orbit {
                    degree: rep.degree(),
                    point: rep,
                });
            }
        }
        if orbits.iter().map(|o| o.degree).sum::<u32>() >= 3 {
            break;
        }
    }
    Ok(ZeroScheme { orbits })
}

/// `(mu(A), h(nu(A)))`, checking that the points lie on the curve.
pub fn flag_of(a: &M0Presentation) -> Result<Flag> {
    let curve = mu(a)?;
    let points = h_points(a.lin())?;
    for o in &points.orbits {
        if curve.eval_in(o.point.field(), o.point.coords())? != 0 {
            return Err(Error::Precondition(format!(
                "zero-scheme point {} is not on the determinant curve",
                o.point
            )));
        }
    }
    Ok(Flag { curve, points })
}

/// Solves `g = d0 q0 + d1 q1 + d2 q2` for quadrics `q`, with free
/// unknowns set to zero under the monomial order.
fn solve_quadric_combination(d: &[HomogPoly; 3], g: &HomogPoly) -> Option<[HomogPoly; 3]> {
    let field = g.field();
    let quad_monos = monomials(2);
    let mut columns: Vec<Vec<u32>> = Vec::with_capacity(18);
    for di in d {
        for m in &quad_monos {
            columns.push((di * &HomogPoly::monomial(field, *m, 1)).coeffs().to_vec());
        }
    }
    let nrows = num_monomials(4);
    let a: Vec<Vec<u32>> = (0..nrows)
        .map(|r| columns.iter().map(|col| col[r]).collect())
        .collect();
    let x = solve(field, &a, g.coeffs())?;
    let q = [0, 1, 2].map(|i| {
        HomogPoly::from_coeffs(field, 2, x[6 * i..6 * i + 6].to_vec()).expect("six coefficients")
    });
    Some(q)
}

/// A presentation whose flag is `(f, pts)`.
///
/// The points are moved to the coordinate frame by `T`, where the ideal
/// of the frame is generated by the minors `(x1x2, -x0x2, -x0x1)` of the
/// standard Kronecker module; `f o T` is written as a combination of them
/// with quadric coefficients and the standard presentation is carried back
/// by `T^{-1}`.
pub fn build_from_flag(f: &HomogPoly, pts: &[ProjPoint; 3]) -> Result<M0Presentation> {
    if f.degree() != 4 {
        return Err(Error::DegreeMismatch {
            expected: 4,
            got: f.degree(),
        });
    }
    if f.is_zero() {
        return Err(Error::InvalidPresentation(
            "the zero form defines no curve".into(),
        ));
    }
    let t = transform_to_standard(pts)?;
    for pt in pts {
        if f.eval_in(pt.field(), pt.coords())? != 0 {
            return Err(Error::CurveMissesPoint(pt.to_string()));
        }
    }
    let field = f.field();
    let pts_field = pts[0].field();
    if pts_field.p() != field.p() {
        return Err(Error::FieldMismatch {
            left: field.to_string(),
            right: pts_field.to_string(),
        });
    }
    let g = f.substitute(t.matrix())?;
    let standard = KroneckerModule::standard(field);
    let q = solve_quadric_combination(&standard.maximal_minors(), &g).ok_or_else(|| {
        Error::Precondition("quartic through the frame is not in the ideal of the frame".into())
    })?;
    let a_std = M0Presentation::new(standard, q)?;
    let back = a_std.substitute(t.inverse_matrix())?;
    M0Presentation::new(back.lin().clone(), back.q_column().clone())
}

/// Witness that two presentations with equal linear part and proportional
/// determinants differ by a column operation: `q_B = scale (q_A - a z - b w)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyzygyCertificate {
    pub a: HomogPoly,
    pub b: HomogPoly,
    pub scale: u32,
}

impl SyzygyCertificate {
    /// Rebuilds `B` from `A`.
    pub fn apply(&self, a: &M0Presentation) -> Result<M0Presentation> {
        let z = a.lin().column(0);
        let w = a.lin().column(1);
        let q = a.q_column();
        let new_q = [0, 1, 2].map(|i| {
            let shifted = &(&q[i] - &(&self.a * &z[i])) - &(&self.b * &w[i]);
            shifted.scale(self.scale)
        });
        M0Presentation::new(a.lin().clone(), new_q)
    }
}

/// Finds linear forms `a, b` with `q_A - q_B / scale = a z + b w`, where
/// `det B = scale * det A`.
pub fn same_orbit_test(a: &M0Presentation, b: &M0Presentation) -> Result<SyzygyCertificate> {
    if a.lin() != b.lin() {
        return Err(Error::Precondition("linear parts differ".into()));
    }
    if let Some(l) = common_linear_factor(a.lin())? {
        return Err(Error::CommonLinearFactor(l.to_string()));
    }
    let field = a.field();
    let det_a = a.determinant();
    let det_b = b.determinant();
    let lead = det_a
        .coeffs()
        .iter()
        .position(|&c| c != 0)
        .ok_or_else(|| Error::Precondition("determinant of A vanishes".into()))?;
    let scale = field
        .div(det_b.coeffs()[lead], det_a.coeffs()[lead])
        .expect("nonzero leading coefficient");
    if scale == 0 || det_a.scale(scale) != det_b {
        return Err(Error::Precondition(
            "determinants are not proportional".into(),
        ));
    }
    let inv_scale = field.inv(scale).expect("nonzero");
    let z = a.lin().column(0);
    let w = a.lin().column(1);
    // Unknowns: coefficients of a (3) then b (3); one block of six quadric
    // coefficient equations per row.
    let mut rows: Vec<Vec<u32>> = Vec::with_capacity(18);
    let mut rhs: Vec<u32> = Vec::with_capacity(18);
    for i in 0..3 {
        let mut cols: Vec<Vec<u32>> = Vec::with_capacity(6);
        for col in [&z[i], &w[i]] {
            for v in 0..3 {
                cols.push((&HomogPoly::var(field, v) * col).coeffs().to_vec());
            }
        }
        let target = &a.q_column()[i] - &b.q_column()[i].scale(inv_scale);
        for r in 0..6 {
            rows.push(cols.iter().map(|c| c[r]).collect());
            rhs.push(target.coeffs()[r]);
        }
    }
    let x = solve(field, &rows, &rhs)
        .ok_or_else(|| Error::OrbitLemmaViolation(format!("A = {a:?}, B = {b:?}")))?;
    Ok(SyzygyCertificate {
        a: HomogPoly::linear(field, [x[0], x[1], x[2]]),
        b: HomogPoly::linear(field, [x[3], x[4], x[5]]),
        scale,
    })
}

/// The linear forms `(y0, y1, y2)` when `alpha = (y1 y2; y0 0; 0 y0)` with
/// independent `y`.
pub fn normal_form_forms(alpha: &KroneckerModule) -> Option<[HomogPoly; 3]> {
    let e = alpha.entries();
    if !e[1][1].is_zero() || !e[2][0].is_zero() || e[1][0] != e[2][1] {
        return None;
    }
    let ys = [e[1][0].clone(), e[0][0].clone(), e[0][1].clone()];
    let field = alpha.field();
    let m = ys
        .clone()
        .map(|y| [y.coeffs()[0], y.coeffs()[1], y.coeffs()[2]]);
    (det3(field, &m) != 0).then_some(ys)
}

/// `A_xi`: adds `(0, xi y2, -xi y1)` to the quadric column. The added
/// vector is a syzygy of the minors, so the determinant is unchanged.
pub fn fiber_twist(a: &M0Presentation, xi: &HomogPoly) -> Result<M0Presentation> {
    let [_, y1, y2] = normal_form_forms(a.lin()).ok_or(Error::NotNormalForm)?;
    if xi.degree() != 1 {
        return Err(Error::DegreeMismatch {
            expected: 1,
            got: xi.degree(),
        });
    }
    let q = a.q_column();
    let new_q = [q[0].clone(), &q[1] + &(xi * &y2), &q[2] - &(xi * &y1)];
    M0Presentation::new(a.lin().clone(), new_q)
}

/// `y2 d1 - y1 d2` for a module in normal form; identically zero.
pub fn normal_form_syzygy_residual(alpha: &KroneckerModule) -> Result<HomogPoly> {
    let [_, y1, y2] = normal_form_forms(alpha).ok_or(Error::NotNormalForm)?;
    let d = alpha.maximal_minors();
    Ok(&(&y2 * &d[1]) - &(&y1 * &d[2]))
}

/// Generators of `I_Z + I_{Sing C}`: the Kronecker minors and the three
/// partial derivatives of the determinant.
pub fn z_plus_sing_generators(a: &M0Presentation) -> Result<Vec<HomogPoly>> {
    let mut gens: Vec<HomogPoly> = a.lin().maximal_minors().to_vec();
    gens.extend(a.determinant().gradient()?);
    Ok(gens)
}

/// Whether the singular locus of the determinant curve meets the zero
/// scheme of the Kronecker minors (over the algebraic closure).
pub fn sing_curve_meets_z(a: &M0Presentation) -> Result<bool> {
    Ok(!is_projectively_empty(&z_plus_sing_generators(a)?)?)
}

/// Orbits of `Z` at which the determinant curve is singular.
pub fn singular_points_in_z(a: &M0Presentation, z: &ZeroScheme) -> Result<Vec<Orbit>> {
    let grad = a.determinant().gradient()?;
    let mut out = Vec::new();
    for o in &z.orbits {
        let ext = o.point.field();
        let mut all_zero = true;
        for g in &grad {
            if g.eval_in(ext, o.point.coords())? != 0 {
                all_zero = false;
                break;
            }
        }
        if all_zero {
            out.push(o.clone());
        }
    }
    Ok(out)
}

/// A uniformly random quartic through the given rational points, rejecting
/// the zero form.
pub fn random_curve_through(pts: &[ProjPoint], rng: &mut impl Rng) -> Result<HomogPoly> {
    let field = pts
        .first()
        .ok_or_else(|| Error::Precondition("no points given".into()))?
        .field()
        .prime_subfield();
    let monos = monomials(4);
    let eval_rows: Vec<Vec<u32>> = pts
        .iter()
        .map(|pt| {
            if pt.degree() != 1 {
                return Err(Error::NonRationalPoint);
            }
            Ok(monos
                .iter()
                .map(|m| HomogPoly::monomial(&field, *m, 1).eval_unchecked(&field, pt.coords()))
                .collect())
        })
        .collect::<Result<Vec<_>>>()?;
    let basis = nullspace(&field, &eval_rows, monos.len());
    loop {
        let mut coeffs = vec![0u32; monos.len()];
        for v in &basis {
            let c = rng.gen_range(0..field.p());
            for (acc, &vi) in coeffs.iter_mut().zip(v) {
                *acc = field.add(*acc, field.mul(c, vi));
            }
        }
        let f = HomogPoly::from_coeffs(&field, 4, coeffs)?;
        if !f.is_zero() {
            return Ok(f);
        }
    }
}
