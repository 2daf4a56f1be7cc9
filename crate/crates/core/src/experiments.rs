//! Finite-field experiments: singular fractions and slope fits, fuzzers for
//! the singularity criterion on the open stratum, and the parameter count.
//!
//! All sampling is split into fixed-size chunks. Each chunk draws from its
//! own ChaCha stream seeded by mixing `(seed, p, chunk index)`, so totals do
//! not depend on the number of worker threads, and a run over a range of
//! chunks equals the merge of runs over any partition of that range.

use std::ops::Range;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::Field;
use crate::error::{Error, Result};
use crate::flags::{
    build_from_flag, common_linear_factor, h_points, random_curve_through, sing_curve_meets_z,
    singular_points_in_z, Orbit,
};
use crate::plane::{transform_to_standard, PointJson, ProjPoint};
use crate::presentations::{
    boundary_fixture, is_singular, sample_presentation, M0Presentation, Presentation,
    PresentationJson, Stratum,
};

pub const REPORT_LABEL: &str = "heuristic reproduction";
pub const CHUNK_SIZE: u64 = 4096;
pub const MIN_SAMPLES: u64 = 10_000;
pub const MIN_TRIALS: u64 = 1_000;
/// Fewest singular hits at a prime before the sample count is escalated.
pub const MIN_HITS: u64 = 100;
pub const ESCALATION_FACTOR: u64 = 4;

/// SplitMix64 finalizer.
fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed of the RNG stream for one chunk of work at one prime.
pub fn chunk_seed(seed: u64, p: u32, chunk: u64) -> u64 {
    mix(mix(mix(seed) ^ u64::from(p)) ^ chunk)
}

fn chunk_rng(seed: u64, p: u32, chunk: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(chunk_seed(seed, p, chunk))
}

fn chunk_count(samples: u64) -> u64 {
    samples.div_ceil(CHUNK_SIZE)
}

fn chunk_len(samples: u64, chunk: u64) -> u64 {
    CHUNK_SIZE.min(samples - chunk * CHUNK_SIZE)
}

/// Runs `work` on each chunk index in parallel and folds the results in
/// chunk order.
fn run_chunks<T, W, M>(
    jobs: Option<usize>,
    chunks: Range<u64>,
    empty: T,
    work: W,
    merge: M,
) -> Result<T>
where
    T: Send + Clone,
    W: Fn(u64) -> Result<T> + Sync,
    M: Fn(T, T) -> T,
{
    let compute = || {
        chunks
            .clone()
            .into_par_iter()
            .map(&work)
            .collect::<Result<Vec<T>>>()
    };
    let parts = match jobs {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .map_err(|e| Error::Precondition(format!("cannot start worker pool: {e}")))?
            .install(compute)?,
        None => compute()?,
    };
    Ok(parts.into_iter().fold(empty, merge))
}

/// Singular counts over a set of samples; merging is associative and
/// commutative.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    pub samples: u64,
    pub singular: u64,
    pub rejections: u64,
}

impl Counts {
    pub fn merge(self, other: Counts) -> Counts {
        Counts {
            samples: self.samples + other.samples,
            singular: self.singular + other.singular,
            rejections: self.rejections + other.rejections,
        }
    }
}

/// Counts singular presentations over the chunks `chunks` of a run with
/// `samples` total draws at prime `p`.
pub fn count_singular(
    stratum: Stratum,
    p: u32,
    samples: u64,
    chunks: Range<u64>,
    seed: u64,
    jobs: Option<usize>,
) -> Result<Counts> {
    let field = Field::prime(p)?;
    let chunks = chunks.start..chunks.end.min(chunk_count(samples));
    let work = |chunk: u64| -> Result<Counts> {
        let mut rng = chunk_rng(seed, p, chunk);
        let mut counts = Counts::default();
        for _ in 0..chunk_len(samples, chunk) {
            let s = sample_presentation(stratum, &field, &mut rng)?;
            counts.samples += 1;
            counts.rejections += s.rejections;
            if is_singular(&s.presentation)?.singular {
                counts.singular += 1;
            }
        }
        Ok(counts)
    };
    run_chunks(jobs, chunks, Counts::default(), work, Counts::merge)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PrimeRow {
    pub p: u32,
    pub samples: u64,
    pub singular_count: u64,
    pub fraction: f64,
    /// Binomial standard error of `fraction`.
    pub std_error: f64,
}

impl PrimeRow {
    fn new(p: u32, c: Counts) -> Self {
        let fraction = c.singular as f64 / c.samples as f64;
        PrimeRow {
            p,
            samples: c.samples,
            singular_count: c.singular,
            fraction,
            std_error: (fraction * (1.0 - fraction) / c.samples as f64).sqrt(),
        }
    }
}

/// Ordinary least squares fit `y = intercept + slope * x`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SlopeFit {
    pub slope: f64,
    pub intercept: f64,
    /// Sum of squared residuals.
    pub residual: f64,
}

pub fn fit_line(xs: &[f64], ys: &[f64]) -> SlopeFit {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let residual = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| (y - intercept - slope * x).powi(2))
        .sum();
    SlopeFit {
        slope,
        intercept,
        residual,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub label: String,
    pub stratum: Stratum,
    pub seed: u64,
    pub requested_samples: u64,
    /// Set when some prime had fewer than [`MIN_HITS`] hits at the requested
    /// sample count and every prime was rerun with more samples.
    pub escalated: bool,
    pub rows: Vec<PrimeRow>,
    pub fit: SlopeFit,
    pub rejections: u64,
    pub version: String,
    /// Excluded from comparisons of reruns.
    pub wall_time_secs: Option<f64>,
}

impl ExperimentReport {
    pub fn without_timing(&self) -> Self {
        ExperimentReport {
            wall_time_secs: None,
            ..self.clone()
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("p,samples,singular_count,fraction\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{}\n",
                r.p, r.samples, r.singular_count, r.fraction
            ));
        }
        out
    }
}

fn validate_primes(primes: &[u32]) -> Result<()> {
    if primes.len() < 3 {
        return Err(Error::Precondition(
            "at least three primes are needed for a slope".into(),
        ));
    }
    for (i, &p) in primes.iter().enumerate() {
        if p < 5 {
            return Err(Error::Precondition(format!("prime {p} is below 5")));
        }
        Field::prime(p)?;
        if primes[..i].contains(&p) {
            return Err(Error::Precondition(format!("prime {p} is repeated")));
        }
    }
    Ok(())
}

/// Singular fractions per prime and the slope of `ln(fraction)` against
/// `ln(p)`, whose negative estimates the codimension of the singular locus.
pub fn estimate_codim(
    stratum: Stratum,
    primes: &[u32],
    samples: u64,
    seed: u64,
    jobs: Option<usize>,
) -> Result<ExperimentReport> {
    validate_primes(primes)?;
    if samples < MIN_SAMPLES {
        return Err(Error::Precondition(format!(
            "at least {MIN_SAMPLES} samples are needed"
        )));
    }
    let start = Instant::now();
    let mut counts = primes
        .iter()
        .map(|&p| count_singular(stratum, p, samples, 0..chunk_count(samples), seed, jobs))
        .collect::<Result<Vec<_>>>()?;
    let mut escalated = false;
    if counts.iter().any(|c| c.singular < MIN_HITS) {
        escalated = true;
        let total = samples * ESCALATION_FACTOR;
        // Chunk streams only depend on the chunk index, so the first run is
        // a prefix of the escalated one.
        let old_chunks = samples / CHUNK_SIZE;
        for (c, &p) in counts.iter_mut().zip(primes) {
            let keep = count_singular(stratum, p, samples, 0..old_chunks, seed, jobs)?;
            let rest = count_singular(
                stratum,
                p,
                total,
                old_chunks..chunk_count(total),
                seed,
                jobs,
            )?;
            *c = keep.merge(rest);
        }
    }
    let rows: Vec<PrimeRow> = primes
        .iter()
        .zip(&counts)
        .map(|(&p, &c)| PrimeRow::new(p, c))
        .collect();
    if let Some(r) = rows.iter().find(|r| r.singular_count == 0) {
        return Err(Error::BudgetExceeded {
            needed: MIN_HITS,
            budget: r.samples,
        });
    }
    let xs: Vec<f64> = rows.iter().map(|r| f64::from(r.p).ln()).collect();
    let ys: Vec<f64> = rows.iter().map(|r| r.fraction.ln()).collect();
    Ok(ExperimentReport {
        label: REPORT_LABEL.into(),
        stratum,
        seed,
        requested_samples: samples,
        escalated,
        fit: fit_line(&xs, &ys),
        rejections: counts.iter().map(|c| c.rejections).sum(),
        rows,
        version: env!("CARGO_PKG_VERSION").into(),
        wall_time_secs: Some(start.elapsed().as_secs_f64()),
    })
}

/// A presentation on which the two singularity predicates disagree.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Disagreement {
    pub p: u32,
    pub trial: u64,
    pub singular: bool,
    pub sing_curve_meets_z: bool,
    pub presentation: PresentationJson,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LemmaPrimeRow {
    pub p: u32,
    pub trials: u64,
    pub singular: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LemmaReport {
    pub seed: u64,
    pub rows: Vec<LemmaPrimeRow>,
    pub disagreements: Vec<Disagreement>,
}

#[derive(Clone, Debug, Default)]
struct LemmaChunk {
    trials: u64,
    singular: u64,
    disagreements: Vec<Disagreement>,
}

fn merge_lemma(mut a: LemmaChunk, b: LemmaChunk) -> LemmaChunk {
    a.trials += b.trials;
    a.singular += b.singular;
    a.disagreements.extend(b.disagreements);
    a
}

/// Distinct, non-collinear rational points, uniformly among such triples.
pub fn random_frame(field: &Field, rng: &mut impl Rng) -> [ProjPoint; 3] {
    let p = field.p();
    loop {
        let mut draw = || loop {
            if let Ok(pt) = ProjPoint::new(field, [0, 1, 2].map(|_| rng.gen_range(0..p))) {
                break pt;
            }
        };
        let pts = [draw(), draw(), draw()];
        if transform_to_standard(&pts).is_ok() {
            return pts;
        }
    }
}

fn check_trials(trials: u64) -> Result<()> {
    if trials < MIN_TRIALS {
        return Err(Error::Precondition(format!(
            "at least {MIN_TRIALS} trials are needed"
        )));
    }
    Ok(())
}

/// Builds open-stratum presentations with three distinct rational zero
/// points from random flags and compares the two singularity predicates.
pub fn fuzz_lemma_m03(
    primes: &[u32],
    trials: u64,
    seed: u64,
    jobs: Option<usize>,
) -> Result<LemmaReport> {
    check_trials(trials)?;
    let mut rows = Vec::new();
    let mut disagreements = Vec::new();
    for &p in primes {
        let field = Field::prime(p)?;
        let work = |chunk: u64| -> Result<LemmaChunk> {
            let mut rng = chunk_rng(seed, p, chunk);
            let mut out = LemmaChunk::default();
            for i in 0..chunk_len(trials, chunk) {
                let pts = random_frame(&field, &mut rng);
                let curve = random_curve_through(&pts, &mut rng)?;
                let a = build_from_flag(&curve, &pts)?;
                let pres = Presentation::M0(a.clone());
                let singular = is_singular(&pres)?.singular;
                let meets = sing_curve_meets_z(&a)?;
                out.trials += 1;
                out.singular += u64::from(singular);
                if singular != meets {
                    out.disagreements.push(Disagreement {
                        p,
                        trial: chunk * CHUNK_SIZE + i,
                        singular,
                        sing_curve_meets_z: meets,
                        presentation: pres.to_json(),
                    });
                }
            }
            Ok(out)
        };
        let total = run_chunks(
            jobs,
            0..chunk_count(trials),
            LemmaChunk::default(),
            work,
            merge_lemma,
        )?;
        rows.push(LemmaPrimeRow {
            p,
            trials: total.trials,
            singular: total.singular,
        });
        disagreements.extend(total.disagreements);
    }
    Ok(LemmaReport {
        seed,
        rows,
        disagreements,
    })
}

/// Why the two predicates can disagree off the three-point locus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundaryClass {
    /// The Kronecker minors share a linear factor; `Z` is not finite.
    LinearLocus,
    /// `Z` has a multiple point (orbit degrees sum below three).
    NonReduced,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassifiedOrbit {
    pub point: PointJson,
    pub degree: u32,
}

impl From<&Orbit> for ClassifiedOrbit {
    fn from(o: &Orbit) -> Self {
        ClassifiedOrbit {
            point: o.point.to_json(),
            degree: o.degree,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundaryCase {
    pub class: BoundaryClass,
    /// Orbits of `Z` (empty on the linear locus).
    pub z_orbits: Vec<ClassifiedOrbit>,
    /// Orbits of `Z` at which the curve is singular.
    pub singular_points: Vec<ClassifiedOrbit>,
    pub presentation: PresentationJson,
}

/// Classifies a presentation that is non-singular although the singular
/// locus of its curve meets `Z`. Fails if `Z` consists of three distinct
/// geometric points, where the predicates must agree.
pub fn classify_boundary(a: &M0Presentation) -> Result<BoundaryCase> {
    let presentation = Presentation::M0(a.clone()).to_json();
    if common_linear_factor(a.lin())?.is_some() {
        return Ok(BoundaryCase {
            class: BoundaryClass::LinearLocus,
            z_orbits: Vec::new(),
            singular_points: Vec::new(),
            presentation,
        });
    }
    let z = h_points(a.lin())?;
    let sing = singular_points_in_z(a, &z)?;
    if z.is_reduced() || sing.is_empty() {
        return Err(Error::Unclassifiable(
            serde_json::to_string(&presentation).unwrap_or_default(),
        ));
    }
    Ok(BoundaryCase {
        class: BoundaryClass::NonReduced,
        z_orbits: z.orbits.iter().map(ClassifiedOrbit::from).collect(),
        singular_points: sing.iter().map(ClassifiedOrbit::from).collect(),
        presentation,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundaryPrimeRow {
    pub p: u32,
    pub trials: u64,
    pub singular: u64,
    pub linear_locus: u64,
    pub non_reduced: u64,
    /// Trials whose `Z` is three distinct rational points.
    pub three_rational: u64,
    /// Disagreements among those trials; zero by the singularity criterion.
    pub three_rational_disagreements: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundaryReport {
    pub seed: u64,
    pub fixture: BoundaryCase,
    pub rows: Vec<BoundaryPrimeRow>,
    pub cases: Vec<BoundaryCase>,
}

impl BoundaryReport {
    pub fn disagreement_count(&self) -> u64 {
        self.rows
            .iter()
            .map(|r| r.linear_locus + r.non_reduced)
            .sum()
    }
}

#[derive(Clone, Debug, Default)]
struct BoundaryChunk {
    trials: u64,
    singular: u64,
    linear_locus: u64,
    non_reduced: u64,
    three_rational: u64,
    three_rational_disagreements: u64,
    cases: Vec<BoundaryCase>,
}

fn merge_boundary(mut a: BoundaryChunk, b: BoundaryChunk) -> BoundaryChunk {
    a.trials += b.trials;
    a.singular += b.singular;
    a.linear_locus += b.linear_locus;
    a.non_reduced += b.non_reduced;
    a.three_rational += b.three_rational;
    a.three_rational_disagreements += b.three_rational_disagreements;
    a.cases.extend(b.cases);
    a
}

/// Samples unrestricted open-stratum presentations, classifies every
/// disagreement between the predicates, and classifies the boundary
/// fixture first. An unclassifiable case is an error.
pub fn fuzz_boundary(
    primes: &[u32],
    trials: u64,
    seed: u64,
    jobs: Option<usize>,
) -> Result<BoundaryReport> {
    check_trials(trials)?;
    let fixture_field = Field::prime(
        *primes
            .first()
            .ok_or_else(|| Error::Precondition("no primes given".into()))?,
    )?;
    let fixture = classify_boundary(&boundary_fixture(&fixture_field))?;
    let mut rows = Vec::new();
    let mut cases = Vec::new();
    for &p in primes {
        let field = Field::prime(p)?;
        let work = |chunk: u64| -> Result<BoundaryChunk> {
            let mut rng = chunk_rng(seed, p, chunk);
            let mut out = BoundaryChunk::default();
            for _ in 0..chunk_len(trials, chunk) {
                let s = sample_presentation(Stratum::M0, &field, &mut rng)?;
                let Presentation::M0(a) = &s.presentation else {
                    unreachable!("sampled m0")
                };
                let singular = is_singular(&s.presentation)?.singular;
                let meets = sing_curve_meets_z(a)?;
                out.trials += 1;
                out.singular += u64::from(singular);
                let three_rational = common_linear_factor(a.lin())?.is_none()
                    && h_points(a.lin())?.is_three_rational();
                out.three_rational += u64::from(three_rational);
                if singular == meets {
                    continue;
                }
                if three_rational {
                    out.three_rational_disagreements += 1;
                }
                if singular {
                    // A rank drop by two is a singular point of the curve on Z.
                    return Err(Error::Unclassifiable(
                        serde_json::to_string(&s.presentation.to_json()).unwrap_or_default(),
                    ));
                }
                let case = classify_boundary(a)?;
                match case.class {
                    BoundaryClass::LinearLocus => out.linear_locus += 1,
                    BoundaryClass::NonReduced => out.non_reduced += 1,
                }
                out.cases.push(case);
            }
            Ok(out)
        };
        let total = run_chunks(
            jobs,
            0..chunk_count(trials),
            BoundaryChunk::default(),
            work,
            merge_boundary,
        )?;
        rows.push(BoundaryPrimeRow {
            p,
            trials: total.trials,
            singular: total.singular,
            linear_locus: total.linear_locus,
            non_reduced: total.non_reduced,
            three_rational: total.three_rational,
            three_rational_disagreements: total.three_rational_disagreements,
        });
        cases.extend(total.cases);
    }
    Ok(BoundaryReport {
        seed,
        fixture,
        rows,
        cases,
    })
}

/// Parameter count behind the codimension claim.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimensionTable {
    /// Coefficients of the linear block (six linear forms).
    pub linear_coefficients: u32,
    /// Coefficients of the quadric column (three quadrics).
    pub quadric_coefficients: u32,
    pub total_coefficients: u32,
    /// Row operations (`GL_3`).
    pub row_group: u32,
    /// Column operations: `GL_2` on the linear columns, `GL_1` on the last
    /// column, and the linear forms mixing them in.
    pub column_group: u32,
    /// Row and column groups share the scalars.
    pub acting_group: u32,
    pub dim_moduli: u32,
    /// Singular quartics, singular locus, and two more points on the curve.
    pub boundary_terms: [u32; 4],
    pub dim_boundary: u32,
    pub codim: u32,
}

pub fn dimension_bookkeeping() -> DimensionTable {
    let linear_forms = 3u32;
    let quadrics = 6u32;
    let linear_coefficients = 3 * 2 * linear_forms;
    let quadric_coefficients = 3 * quadrics;
    let total_coefficients = linear_coefficients + quadric_coefficients;
    let row_group = 9;
    let column_group = 4 + 1 + 2 * linear_forms;
    let acting_group = row_group + column_group - 1;
    let dim_moduli = total_coefficients - acting_group;
    let quartics = 15 - 1;
    let boundary_terms = [quartics - 1, 0, 1, 1];
    let dim_boundary = boundary_terms.iter().sum();
    DimensionTable {
        linear_coefficients,
        quadric_coefficients,
        total_coefficients,
        row_group,
        column_group,
        acting_group,
        dim_moduli,
        boundary_terms,
        dim_boundary,
        codim: dim_moduli - dim_boundary,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimension_table() {
        let t = dimension_bookkeeping();
        assert_eq!(t.total_coefficients, 36);
        assert_eq!(t.acting_group, 19);
        assert_eq!(t.dim_moduli, 17);
        assert_eq!(t.boundary_terms, [13, 0, 1, 1]);
        assert_eq!(t.dim_boundary, 15);
        assert_eq!(t.codim, 2);
    }

    #[test]
    fn line_fit_is_exact_on_a_line() {
        let xs = [1.0, 2.0, 3.0, 4.0];
        let ys: Vec<f64> = xs.iter().map(|x| 0.5 - 2.0 * x).collect();
        let fit = fit_line(&xs, &ys);
        assert!((fit.slope + 2.0).abs() < 1e-12);
        assert!((fit.intercept - 0.5).abs() < 1e-12);
        assert!(fit.residual < 1e-20);
    }

    #[test]
    fn prime_lists_are_validated() {
        let run = |ps: &[u32], n| estimate_codim(Stratum::M1, ps, n, 1, Some(1));
        assert!(matches!(run(&[7], 10_000), Err(Error::Precondition(_))));
        assert!(matches!(
            run(&[5, 7, 7], 10_000),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            run(&[3, 5, 7], 10_000),
            Err(Error::Precondition(_))
        ));
        assert!(run(&[5, 7, 9], 10_000).is_err());
        assert!(matches!(run(&[5, 7, 11], 100), Err(Error::Precondition(_))));
        assert!(fuzz_lemma_m03(&[7], 10, 1, None).is_err());
    }

    #[test]
    fn chunk_seeds_separate_streams() {
        assert_ne!(chunk_seed(42, 5, 0), chunk_seed(42, 5, 1));
        assert_ne!(chunk_seed(42, 5, 0), chunk_seed(42, 7, 0));
        assert_ne!(chunk_seed(42, 5, 0), chunk_seed(43, 5, 0));
    }

    #[test]
    fn counts_are_independent_of_partition_and_jobs() {
        let n = 3 * CHUNK_SIZE + 17;
        let whole = count_singular(Stratum::M1, 5, n, 0..4, 9, Some(1)).unwrap();
        let left = count_singular(Stratum::M1, 5, n, 0..1, 9, Some(2)).unwrap();
        let right = count_singular(Stratum::M1, 5, n, 1..4, 9, None).unwrap();
        assert_eq!(whole, left.merge(right));
        assert_eq!(whole.samples, n);
    }

    #[test]
    fn boundary_fixture_classification() {
        let case = classify_boundary(&boundary_fixture(&Field::prime(7).unwrap())).unwrap();
        assert_eq!(case.class, BoundaryClass::NonReduced);
        assert_eq!(case.singular_points.len(), 1);
        assert_eq!(
            *case.singular_points[0].point.decode().unwrap().coords(),
            [0, 1, 0]
        );
    }

    #[test]
    fn small_fuzz_runs_are_clean_and_reproducible() {
        let a = fuzz_lemma_m03(&[7], 1_000, 5, Some(1)).unwrap();
        assert!(a.disagreements.is_empty());
        let b = fuzz_lemma_m03(&[7], 1_000, 5, None).unwrap();
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
        let r = fuzz_boundary(&[5], 1_000, 5, None).unwrap();
        assert_eq!(r.rows[0].three_rational_disagreements, 0);
        assert_eq!(r.cases.len() as u64, r.disagreement_count());
    }
}
