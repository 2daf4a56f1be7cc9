//! Frozen identities about the standard-position presentation, the
//! boundary fixture, the normal form on the linear-factor locus, and the
//! parameter count. Each check is a named closure returning a description
//! of the first failure.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{is_projectively_empty, Field, HomogPoly};
use crate::experiments::{
    classify_boundary, dimension_bookkeeping, fuzz_boundary, fuzz_lemma_m03, BoundaryClass,
};
use crate::flags::{
    common_linear_factor, fiber_twist, flag_of, h_points, normal_form_syzygy_residual, nu,
    sing_curve_meets_z, singular_points_in_z,
};
use crate::plane::{enumerate_plane, ProjPoint};
use crate::presentations::{
    boundary_fixture, is_singular, random_form, KroneckerModule, M0Presentation, Presentation,
};

pub const DEFAULT_TRIALS: usize = 200;

type Outcome = std::result::Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn poly(field: &Field, degree: u32, terms: &[(i64, [u32; 3])]) -> HomogPoly {
    HomogPoly::from_terms(field, degree, terms).expect("exponents match degree")
}

fn x(field: &Field, i: usize) -> HomogPoly {
    HomogPoly::var(field, i)
}

fn random_quadrics(field: &Field, rng: &mut ChaCha8Rng) -> [HomogPoly; 3] {
    [0, 1, 2].map(|_| random_form(field, 2, rng))
}

/// Standard-form presentation with random quadrics, redrawn until valid.
fn random_standard(field: &Field, rng: &mut ChaCha8Rng) -> M0Presentation {
    loop {
        if let Ok(a) = M0Presentation::standard(random_quadrics(field, rng)) {
            return a;
        }
    }
}

/// `x1 x2 q0 - x0 x2 q1 - x0 x1 q2`.
pub fn standard_determinant_formula(q: &[HomogPoly; 3]) -> HomogPoly {
    let f = q[0].field();
    let (x0, x1, x2) = (x(f, 0), x(f, 1), x(f, 2));
    &(&(&(&x1 * &x2) * &q[0]) - &(&(&x0 * &x2) * &q[1])) - &(&(&x0 * &x1) * &q[2])
}

/// The three partial derivatives of the standard determinant, written out
/// term by term through the product rule.
pub fn standard_partials_formula(q: &[HomogPoly; 3]) -> crate::Result<[HomogPoly; 3]> {
    let f = q[0].field();
    let (x0, x1, x2) = (x(f, 0), x(f, 1), x(f, 2));
    let x0x1 = &x0 * &x1;
    let x0x2 = &x0 * &x2;
    let x1x2 = &x1 * &x2;
    let d = |i: usize, v: usize| q[i].partial(v);
    let f0 = &(&(&(&(&x1x2 * &d(0, 0)?) - &(&x2 * &q[1])) - &(&x0x2 * &d(1, 0)?)) - &(&x1 * &q[2]))
        - &(&x0x1 * &d(2, 0)?);
    let f1 = &(&(&(&(&x2 * &q[0]) + &(&x1x2 * &d(0, 1)?)) - &(&x0x2 * &d(1, 1)?)) - &(&x0 * &q[2]))
        - &(&x0x1 * &d(2, 1)?);
    let f2 = &(&(&(&(&x1 * &q[0]) + &(&x1x2 * &d(0, 2)?)) - &(&x0 * &q[1])) - &(&x0x2 * &d(1, 2)?))
        - &(&x0x1 * &d(2, 2)?);
    Ok([f0, f1, f2])
}

/// Generators of `I_Z + I_{Sing C}` in standard position: the frame ideal
/// and the partials reduced modulo it.
pub fn standard_z_sing_generators(q: &[HomogPoly; 3]) -> Vec<HomogPoly> {
    let f = q[0].field();
    let (x0, x1, x2) = (x(f, 0), x(f, 1), x(f, 2));
    vec![
        &x0 * &x1,
        &x0 * &x2,
        &x1 * &x2,
        &(-&(&x2 * &q[1])) - &(&x1 * &q[2]),
        &(&x2 * &q[0]) - &(&x0 * &q[2]),
        &(&x1 * &q[0]) - &(&x0 * &q[1]),
    ]
}

/// Exact determinant of the boundary fixture, `x0^2 x1^2 + x1 x2^3`.
pub fn fixture_determinant(field: &Field) -> HomogPoly {
    poly(field, 4, &[(1, [2, 2, 0]), (1, [0, 1, 3])])
}

/// Compares a determinant routine with the frozen fixture value.
pub fn check_fixture_determinant(
    field: &Field,
    det: impl Fn(&M0Presentation) -> HomogPoly,
) -> Outcome {
    let a = boundary_fixture(field);
    let got = det(&a);
    let want = fixture_determinant(field);
    ensure(got == want, || {
        format!("fixture determinant is {got}, expected {want}")
    })
}

fn coordinate_points(field: &Field) -> [ProjPoint; 3] {
    ProjPoint::standard_frame(field)
}

fn zero_set_on(gens: &[HomogPoly], pts: &[ProjPoint]) -> Vec<bool> {
    pts.iter()
        .map(|pt| {
            gens.iter()
                .all(|g| g.eval_unchecked(pt.field(), pt.coords()) == 0)
        })
        .collect()
}

fn normal_form(field: &Field, y: &[HomogPoly; 3]) -> crate::Result<KroneckerModule> {
    let zero = HomogPoly::zero(field, 1);
    KroneckerModule::new([
        [y[1].clone(), y[2].clone()],
        [y[0].clone(), zero.clone()],
        [zero, y[0].clone()],
    ])
}

fn random_independent_linear(field: &Field, rng: &mut ChaCha8Rng) -> [HomogPoly; 3] {
    loop {
        let y = [0, 1, 2].map(|_| random_form(field, 1, rng));
        let rows = y
            .clone()
            .map(|l| [l.coeffs()[0], l.coeffs()[1], l.coeffs()[2]]);
        if crate::algebra::linalg::det3(field, &rows) != 0 {
            return y;
        }
    }
}

struct Regression {
    name: &'static str,
    run: fn(&Field, &mut ChaCha8Rng) -> Outcome,
}

const REGRESSIONS: &[Regression] = &[
    Regression {
        name: "fixture-point-on-curve",
        run: |f, _| {
            let curve = poly(f, 4, &[(1, [0, 1, 3]), (1, [2, 2, 0])]);
            let v = curve.eval(&[0, 1, 0]).map_err(err)?;
            ensure(v == 0, || format!("value {v} at <0,1,0>"))
        },
    },
    Regression {
        name: "frame-ideal-non-empty",
        run: |f, _| {
            let ideal = [[1, 1, 0], [1, 0, 1], [0, 1, 1]].map(|m| HomogPoly::monomial(f, m, 1));
            let empty = is_projectively_empty(&ideal).map_err(err)?;
            ensure(!empty, || "frame ideal reported empty".into())
        },
    },
    Regression {
        name: "standard-kronecker-minors",
        run: |f, _| {
            let alpha = KroneckerModule::standard(f);
            let want = [
                poly(f, 2, &[(1, [0, 1, 1])]),
                poly(f, 2, &[(-1, [1, 0, 1])]),
                poly(f, 2, &[(-1, [1, 1, 0])]),
            ];
            ensure(alpha.is_stable() && alpha.maximal_minors() == want, || {
                format!("minors {:?}", alpha.maximal_minors())
            })
        },
    },
    Regression {
        name: "normal-form-minors",
        run: |f, _| {
            let alpha = normal_form(f, &[x(f, 0), x(f, 1), x(f, 2)]).map_err(err)?;
            let want = [
                poly(f, 2, &[(1, [2, 0, 0])]),
                poly(f, 2, &[(-1, [1, 1, 0])]),
                poly(f, 2, &[(-1, [1, 0, 1])]),
            ];
            ensure(alpha.is_stable() && alpha.maximal_minors() == want, || {
                format!("minors {:?}", alpha.maximal_minors())
            })?;
            let factor = common_linear_factor(&alpha).map_err(err)?;
            ensure(factor == Some(x(f, 0)), || {
                format!("common factor {factor:?}")
            })?;
            let none = common_linear_factor(&KroneckerModule::standard(f)).map_err(err)?;
            ensure(none.is_none(), || {
                "standard module has a common factor".into()
            })
        },
    },
    Regression {
        name: "fixture-determinant",
        run: |f, _| {
            check_fixture_determinant(f, M0Presentation::determinant)?;
            check_fixture_determinant(f, M0Presentation::determinant_by_first_row)?;
            let factored = &x(f, 1) * &poly(f, 3, &[(1, [0, 0, 3]), (1, [2, 1, 0])]);
            ensure(factored == fixture_determinant(f), || {
                "factored form differs".into()
            })
        },
    },
    Regression {
        name: "fixture-non-singular",
        run: |f, _| {
            let a = boundary_fixture(f);
            let empty = is_projectively_empty(&a.minors2x2()).map_err(err)?;
            let verdict = is_singular(&Presentation::M0(a)).map_err(err)?;
            ensure(empty && !verdict.singular, || {
                "fixture reported singular".into()
            })
        },
    },
    Regression {
        name: "fixture-flag",
        run: |f, _| {
            let a = boundary_fixture(f);
            let flag = flag_of(&a).map_err(err)?;
            ensure(flag.curve == fixture_determinant(f).canonical(), || {
                format!("curve {}", flag.curve)
            })?;
            let mut coords: Vec<([u32; 3], u32)> = flag
                .points
                .orbits
                .iter()
                .map(|o| (*o.point.coords(), o.degree))
                .collect();
            coords.sort();
            ensure(
                coords == vec![([0, 0, 1], 1), ([0, 1, 0], 1)] && !flag.points.is_reduced(),
                || format!("zero scheme {coords:?}"),
            )?;
            ensure(sing_curve_meets_z(&a).map_err(err)?, || {
                "Sing C misses Z".into()
            })?;
            let sing = singular_points_in_z(&a, &flag.points).map_err(err)?;
            ensure(
                sing.len() == 1 && *sing[0].point.coords() == [0, 1, 0],
                || format!("singular points of Z: {sing:?}"),
            )?;
            let class = classify_boundary(&a).map_err(err)?.class;
            ensure(class == BoundaryClass::NonReduced, || {
                format!("classified as {class:?}")
            })
        },
    },
    Regression {
        name: "standard-position",
        run: |f, rng| {
            let a = random_standard(f, rng);
            ensure(nu(&a) == KroneckerModule::standard(f), || {
                "linear part differs".into()
            })?;
            let z = h_points(a.lin()).map_err(err)?;
            let mut pts: Vec<[u32; 3]> = z.orbits.iter().map(|o| *o.point.coords()).collect();
            pts.sort();
            ensure(pts == vec![[0, 0, 1], [0, 1, 0], [1, 0, 0]], || {
                format!("points {pts:?}")
            })
        },
    },
    Regression {
        name: "determinant-formula",
        run: |f, rng| {
            for _ in 0..DEFAULT_TRIALS {
                let q = random_quadrics(f, rng);
                let a = M0Presentation::new_unchecked(KroneckerModule::standard(f), q.clone())
                    .map_err(err)?;
                let want = standard_determinant_formula(&q);
                ensure(
                    a.determinant() == want && a.determinant_by_first_row() == want,
                    || format!("q = {q:?}"),
                )?;
            }
            Ok(())
        },
    },
    Regression {
        name: "partial-formulas",
        run: |f, rng| {
            for _ in 0..DEFAULT_TRIALS {
                let q = random_quadrics(f, rng);
                let det = standard_determinant_formula(&q);
                let grad = det.gradient().map_err(err)?;
                let formula = standard_partials_formula(&q).map_err(err)?;
                ensure(grad == formula, || format!("q = {q:?}"))?;
            }
            Ok(())
        },
    },
    Regression {
        name: "z-sing-generators",
        run: |f, rng| {
            // A cubic lies in (x0x1, x0x2, x1x2) iff it has no pure-power terms.
            for _ in 0..DEFAULT_TRIALS {
                let q = random_quadrics(f, rng);
                let grad = standard_determinant_formula(&q).gradient().map_err(err)?;
                let gens = standard_z_sing_generators(&q);
                for (g, r) in grad.iter().zip(&gens[3..]) {
                    let diff = g - r;
                    let pure = [[3, 0, 0], [0, 3, 0], [0, 0, 3]]
                        .iter()
                        .all(|&m| diff.coeff(m) == 0);
                    ensure(pure, || format!("partial minus generator is {diff}"))?;
                }
            }
            Ok(())
        },
    },
    Regression {
        name: "minors-zero-set",
        run: |f, rng| {
            let frame = coordinate_points(f);
            let plane: Vec<ProjPoint> = enumerate_plane(f).map_err(err)?.collect();
            for _ in 0..DEFAULT_TRIALS {
                let a = random_standard(f, rng);
                let minors = a.minors2x2();
                let zs = standard_z_sing_generators(a.q_column());
                let e1 = is_projectively_empty(&minors).map_err(err)?;
                let e2 = is_projectively_empty(&zs).map_err(err)?;
                let mut both: Vec<HomogPoly> = minors.clone();
                both.extend(zs.iter().cloned());
                let e12 = is_projectively_empty(&both).map_err(err)?;
                ensure(e1 == e2 && e12 == e1, || {
                    format!("emptiness differs for {a:?}")
                })?;
                ensure(
                    zero_set_on(&minors, &frame) == zero_set_on(&zs, &frame),
                    || format!("frame zero sets differ for {a:?}"),
                )?;
                ensure(
                    zero_set_on(&minors, &plane) == zero_set_on(&zs, &plane),
                    || format!("rational zero sets differ for {a:?}"),
                )?;
            }
            Ok(())
        },
    },
    Regression {
        name: "normal-form-syzygy",
        run: |f, rng| {
            for _ in 0..DEFAULT_TRIALS {
                let y = random_independent_linear(f, rng);
                let alpha = normal_form(f, &y).map_err(err)?;
                let residual = normal_form_syzygy_residual(&alpha).map_err(err)?;
                ensure(residual.is_zero(), || format!("residual {residual}"))?;
                let Ok(a) = M0Presentation::new(alpha, random_quadrics(f, rng)) else {
                    continue;
                };
                let xi = random_form(f, 1, rng);
                let b = fiber_twist(&a, &xi).map_err(err)?;
                ensure(b.determinant() == a.determinant(), || {
                    format!("twist by {xi} changed det")
                })?;
            }
            Ok(())
        },
    },
    Regression {
        name: "dimension-table",
        run: |_, _| {
            let t = dimension_bookkeeping();
            ensure(
                t.dim_moduli == 17
                    && t.boundary_terms == [13, 0, 1, 1]
                    && t.dim_boundary == 15
                    && t.codim == 2,
                || format!("{t:?}"),
            )
        },
    },
    Regression {
        name: "three-point-criterion",
        run: |f, rng| {
            let seed = rng.gen();
            let lemma = fuzz_lemma_m03(&[f.p()], 1_000, seed, None).map_err(err)?;
            ensure(lemma.disagreements.is_empty(), || {
                format!("{} disagreements", lemma.disagreements.len())
            })?;
            let boundary = fuzz_boundary(&[f.p()], 1_000, seed, None).map_err(err)?;
            ensure(boundary.rows[0].three_rational_disagreements == 0, || {
                "disagreement with three rational zero points".into()
            })?;
            ensure(boundary.fixture.class == BoundaryClass::NonReduced, || {
                "fixture misclassified".into()
            })
        },
    },
];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: Option<String>,
    pub millis: u128,
}

pub fn regression_names() -> Vec<&'static str> {
    REGRESSIONS.iter().map(|r| r.name).collect()
}

/// Runs every regression over `F_p`; each check gets its own stream.
pub fn run_all(p: u32, seed: u64) -> crate::Result<Vec<CheckResult>> {
    let field = Field::prime(p)?;
    Ok(REGRESSIONS
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(i as u64));
            let start = Instant::now();
            let outcome = (r.run)(&field, &mut rng);
            CheckResult {
                name: r.name.into(),
                passed: outcome.is_ok(),
                detail: outcome.err(),
                millis: start.elapsed().as_millis(),
            }
        })
        .collect())
}
