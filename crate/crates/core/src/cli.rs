//! Command-line front end. Every command is deterministic given its flags.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{Field, PolyJson};
use crate::error::{Error, Result};
use crate::experiments::{estimate_codim, fuzz_boundary, fuzz_lemma_m03, random_frame};
use crate::flags::{
    build_from_flag, common_linear_factor, flag_of, h_points, random_curve_through,
    sing_curve_meets_z, singular_points_in_z, FlagJson, Orbit,
};
use crate::plane::{PointJson, ProjPoint};
use crate::presentations::{
    enumeration_verdict_up_to, is_singular, Presentation, PresentationJson, Stratum,
};
use crate::regressions;

pub const DEFAULT_SEED: u64 = 42;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_INVALID: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "plane-sheaves",
    version,
    about = "Exact matrix models of 4m+1 sheaves on the plane"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Seed for every random stream.
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Worker threads (default: available cores).
    #[arg(long)]
    pub jobs: Option<usize>,
    /// Write the JSON report (or CSV, for a `.csv` path) here.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide singularity of a presentation file and print its flag.
    Check {
        input: PathBuf,
        /// Reinterpret integer coefficients modulo this prime.
        #[arg(long)]
        p: Option<u32>,
        /// Largest extension degree searched by the enumeration oracle.
        #[arg(long, default_value_t = 3)]
        k: u32,
        /// Also run the enumeration oracle.
        #[arg(long)]
        oracle: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Compare the two singularity predicates on presentations built from
    /// three rational points and a quartic through them.
    FuzzLemma {
        #[arg(long, value_delimiter = ',', default_value = "7,11")]
        primes: Vec<u32>,
        #[arg(long, default_value_t = 10_000)]
        samples: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Classify disagreements of the predicates on random presentations.
    FuzzBoundary {
        #[arg(long, value_delimiter = ',', default_value = "7")]
        primes: Vec<u32>,
        #[arg(long, default_value_t = 10_000)]
        samples: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Singular fractions per prime and the fitted log-log slope.
    EstimateCodim {
        #[arg(long, default_value_t = Stratum::M0, value_parser = parse_stratum)]
        stratum: Stratum,
        #[arg(long, value_delimiter = ',', default_value = "5,7,11,13,17")]
        primes: Vec<u32>,
        #[arg(long, default_value_t = 200_000)]
        samples: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Build a presentation from a flag file (or a random flag over F_p)
    /// and recover the flag from it.
    Roundtrip {
        input: Option<PathBuf>,
        #[arg(long, default_value_t = 11)]
        p: u32,
        #[command(flatten)]
        common: Common,
    },
    /// Run the frozen regression suite.
    VerifyPaper {
        #[arg(long, default_value_t = 11)]
        p: u32,
        #[command(flatten)]
        common: Common,
    },
}

fn parse_stratum(s: &str) -> std::result::Result<Stratum, String> {
    s.parse::<Stratum>().map_err(|e| e.to_string())
}

/// Outcome of a command: text for stdout, an optional JSON payload for
/// `--out`, and the exit code.
struct Outcome {
    text: String,
    json: Option<serde_json::Value>,
    csv: Option<String>,
    code: i32,
}

fn to_value<T: Serialize>(v: &T) -> Result<serde_json::Value> {
    serde_json::to_value(v).map_err(|e| Error::Parse(e.to_string()))
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text =
        fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn write_out(path: &Path, outcome: &Outcome) -> Result<()> {
    let is_csv = path.extension().is_some_and(|e| e == "csv");
    let body = match (&outcome.csv, &outcome.json) {
        (Some(csv), _) if is_csv => csv.clone(),
        (_, Some(json)) => {
            serde_json::to_string_pretty(json).map_err(|e| Error::Parse(e.to_string()))? + "\n"
        }
        _ => return Ok(()),
    };
    fs::write(path, body).map_err(|e| Error::Precondition(format!("{}: {e}", path.display())))
}

/// Parses `args` and runs the command, writing human-readable output to
/// `stdout` and diagnostics to `stderr`. Returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut impl Write, stderr: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = write!(
                if code == 0 {
                    &mut *stdout as &mut dyn Write
                } else {
                    stderr
                },
                "{e}"
            );
            return code;
        }
    };
    let out_path = match &cli.command {
        Command::Check { common, .. }
        | Command::FuzzLemma { common, .. }
        | Command::FuzzBoundary { common, .. }
        | Command::EstimateCodim { common, .. }
        | Command::Roundtrip { common, .. }
        | Command::VerifyPaper { common, .. } => common.out.clone(),
    };
    let result = execute(&cli.command).and_then(|outcome| {
        if let Some(path) = &out_path {
            write_out(path, &outcome)?;
        }
        Ok(outcome)
    });
    match result {
        Ok(outcome) => {
            let _ = stdout.write_all(outcome.text.as_bytes());
            outcome.code
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code_for(&e)
        }
    }
}

fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::Parse(_) => EXIT_PARSE,
        Error::InvalidPresentation(_)
        | Error::Unstable
        | Error::DegreeMismatch { .. }
        | Error::FieldMismatch { .. }
        | Error::InvalidField(_)
        | Error::InvalidPolynomial(_) => EXIT_INVALID,
        _ => EXIT_FAILURE,
    }
}

fn execute(command: &Command) -> Result<Outcome> {
    match command {
        Command::Check {
            input,
            p,
            k,
            oracle,
            ..
        } => check(input, *p, *k, *oracle),
        Command::FuzzLemma {
            primes,
            samples,
            common,
        } => {
            let report = fuzz_lemma_m03(primes, *samples, common.seed, common.jobs)?;
            let mut text = String::new();
            for r in &report.rows {
                text.push_str(&format!(
                    "p = {}: {} trials, {} singular\n",
                    r.p, r.trials, r.singular
                ));
            }
            text.push_str(&format!("disagreements: {}\n", report.disagreements.len()));
            let code = if report.disagreements.is_empty() {
                EXIT_OK
            } else {
                EXIT_FAILURE
            };
            Ok(Outcome {
                text,
                json: Some(to_value(&report)?),
                csv: None,
                code,
            })
        }
        Command::FuzzBoundary {
            primes,
            samples,
            common,
        } => {
            let report = fuzz_boundary(primes, *samples, common.seed, common.jobs)?;
            let mut text = format!("fixture: {:?}\n", report.fixture.class);
            let mut bad = 0;
            for r in &report.rows {
                text.push_str(&format!(
                    "p = {}: {} trials, {} singular, {} linear-locus, {} non-reduced, \
                     {} with three rational points ({} disagreeing)\n",
                    r.p,
                    r.trials,
                    r.singular,
                    r.linear_locus,
                    r.non_reduced,
                    r.three_rational,
                    r.three_rational_disagreements
                ));
                bad += r.three_rational_disagreements;
            }
            let code = if bad == 0 { EXIT_OK } else { EXIT_FAILURE };
            Ok(Outcome {
                text,
                json: Some(to_value(&report)?),
                csv: None,
                code,
            })
        }
        Command::EstimateCodim {
            stratum,
            primes,
            samples,
            common,
        } => {
            let report = estimate_codim(*stratum, primes, *samples, common.seed, common.jobs)?;
            let mut text = format!("{} ({})\n", report.label, report.stratum);
            text.push_str(&report.to_csv());
            text.push_str(&format!(
                "slope {:.4} (residual {:.4}){}\n",
                report.fit.slope,
                report.fit.residual,
                if report.escalated {
                    ", samples escalated"
                } else {
                    ""
                }
            ));
            Ok(Outcome {
                text,
                json: Some(to_value(&report)?),
                csv: Some(report.to_csv()),
                code: EXIT_OK,
            })
        }
        Command::Roundtrip { input, p, common } => roundtrip(input.as_deref(), *p, common.seed),
        Command::VerifyPaper { p, common } => {
            let results = regressions::run_all(*p, common.seed)?;
            let mut text = String::new();
            for r in &results {
                let status = if r.passed { "PASS" } else { "FAIL" };
                text.push_str(&format!("{status} {} ({} ms)", r.name, r.millis));
                if let Some(d) = &r.detail {
                    text.push_str(&format!(": {d}"));
                }
                text.push('\n');
            }
            let failed = results.iter().filter(|r| !r.passed).count();
            text.push_str(&format!(
                "{} passed, {failed} failed\n",
                results.len() - failed
            ));
            let code = if failed == 0 { EXIT_OK } else { EXIT_FAILURE };
            Ok(Outcome {
                text,
                json: Some(to_value(&results)?),
                csv: None,
                code,
            })
        }
    }
}

#[derive(Debug, Serialize)]
struct OrbitReport {
    point: PointJson,
    degree: u32,
}

impl From<&Orbit> for OrbitReport {
    fn from(o: &Orbit) -> Self {
        OrbitReport {
            point: o.point.to_json(),
            degree: o.degree,
        }
    }
}

#[derive(Debug, Serialize)]
struct CheckReport {
    stratum: Stratum,
    stable: bool,
    determinant: PolyJson,
    singular: bool,
    enumeration_singular: Option<bool>,
    witness: Option<PointJson>,
    common_linear_factor: Option<String>,
    flag: Option<FlagJson>,
    sing_curve_meets_z: Option<bool>,
    singular_points_in_z: Vec<OrbitReport>,
    verdict: String,
}

fn orbit_text(o: &Orbit) -> String {
    format!("{} (degree {})", o.point, o.degree)
}

/// A point where the rank drops by two. For the open stratum it lies on
/// `Z`; elsewhere the enumeration oracle finds one.
fn find_witness(a: &Presentation) -> Result<Option<ProjPoint>> {
    match a {
        Presentation::M1(m1) => Ok(Some(m1.support_point())),
        Presentation::M0(m0) => {
            if common_linear_factor(m0.lin())?.is_none() {
                for pt in h_points(m0.lin())?.geometric_points() {
                    if a.rank_at_point(&pt)? + 2 <= a.size() {
                        return Ok(Some(pt));
                    }
                }
            }
            Ok(enumeration_verdict_up_to(a, 3)?.witness)
        }
    }
}

fn check(input: &Path, p: Option<u32>, k: u32, oracle: bool) -> Result<Outcome> {
    let json: PresentationJson = read_json(input)?;
    let a = json.decode(p)?;
    let det = a.determinant();
    let verdict = is_singular(&a)?;
    let enumeration = if oracle {
        Some(enumeration_verdict_up_to(&a, k)?)
    } else {
        None
    };
    let witness = if verdict.singular {
        find_witness(&a)?
    } else {
        None
    };

    let mut text = format!("stratum: {}\n", a.stratum());
    let mut report = CheckReport {
        stratum: a.stratum(),
        stable: true,
        determinant: det.canonical().to_json(),
        singular: verdict.singular,
        enumeration_singular: enumeration.as_ref().map(|v| v.singular),
        witness: witness.as_ref().map(ProjPoint::to_json),
        common_linear_factor: None,
        flag: None,
        sing_curve_meets_z: None,
        singular_points_in_z: Vec::new(),
        verdict: String::new(),
    };
    text.push_str("stable: yes\n");
    text.push_str(&format!("determinant: {}\n", det.canonical()));
    text.push_str(&format!(
        "macaulay: {}\n",
        if verdict.singular {
            "singular"
        } else {
            "non-singular"
        }
    ));
    if let Some(v) = &enumeration {
        text.push_str(&format!(
            "enumeration (k <= {k}): {}\n",
            if v.singular {
                "singular"
            } else {
                "non-singular"
            }
        ));
    }
    let mut boundary = false;
    if let Presentation::M0(m0) = &a {
        let meets = sing_curve_meets_z(m0)?;
        report.sing_curve_meets_z = Some(meets);
        boundary = meets && !verdict.singular;
        match common_linear_factor(m0.lin())? {
            Some(l) => {
                text.push_str(&format!("Z: minors share the linear factor {l}\n"));
                report.common_linear_factor = Some(l.to_string());
            }
            None => {
                let flag = flag_of(m0)?;
                let orbits: Vec<String> = flag.points.orbits.iter().map(orbit_text).collect();
                text.push_str(&format!(
                    "Z: {}{}\n",
                    orbits.join(", "),
                    if flag.points.is_reduced() {
                        ""
                    } else {
                        "; non-reduced"
                    }
                ));
                let sing = singular_points_in_z(m0, &flag.points)?;
                if !sing.is_empty() {
                    let pts: Vec<String> = sing.iter().map(orbit_text).collect();
                    text.push_str(&format!("Z ∩ Sing C: {}\n", pts.join(", ")));
                }
                report.singular_points_in_z = sing.iter().map(OrbitReport::from).collect();
                report.flag = Some(flag.to_json());
            }
        }
    }
    let line = match (&witness, verdict.singular) {
        (Some(w), true) => format!("singular; witness {w}"),
        (None, true) => "singular".to_string(),
        _ if boundary => "non-singular; Z ∩ Sing C non-empty; boundary case".to_string(),
        _ => "non-singular".to_string(),
    };
    text.push_str(&format!("verdict: {line}\n"));
    report.verdict = line;
    Ok(Outcome {
        text,
        json: Some(to_value(&report)?),
        csv: None,
        code: EXIT_OK,
    })
}

#[derive(Debug, Serialize)]
struct RoundtripReport {
    input: FlagJson,
    presentation: PresentationJson,
    recovered: FlagJson,
    matches: bool,
}

fn roundtrip(input: Option<&Path>, p: u32, seed: u64) -> Result<Outcome> {
    let (curve, pts) = match input {
        Some(path) => {
            let flag = read_json::<FlagJson>(path)?.decode()?;
            let pts: Vec<ProjPoint> = flag.points.orbits.iter().map(|o| o.point.clone()).collect();
            let pts: [ProjPoint; 3] = pts
                .try_into()
                .map_err(|_| Error::Precondition("a flag needs exactly three points".into()))?;
            (flag.curve, pts)
        }
        None => {
            let field = Field::prime(p)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let pts = random_frame(&field, &mut rng);
            (random_curve_through(&pts, &mut rng)?, pts)
        }
    };
    // The presentation depends on the scaling of the curve and the order of
    // the points, so both are normalized to make the output a function of the flag.
    let curve = curve.canonical();
    let mut pts = pts;
    pts.sort_by(|a, b| a.coords().cmp(b.coords()));
    let a = build_from_flag(&curve, &pts)?;
    let recovered = flag_of(&a)?;
    let given = crate::flags::Flag {
        curve,
        points: crate::flags::ZeroScheme {
            orbits: pts
                .iter()
                .map(|pt| Orbit {
                    point: pt.clone(),
                    degree: 1,
                })
                .collect(),
        },
    };
    let matches = recovered.same_as(&given);
    let text = format!(
        "curve: {}\npresentation determinant: {}\nround trip: {}\n",
        given.curve,
        recovered.curve,
        if matches { "exact" } else { "mismatch" }
    );
    let report = RoundtripReport {
        input: given.to_json(),
        presentation: Presentation::M0(a).to_json(),
        recovered: recovered.to_json(),
        matches,
    };
    Ok(Outcome {
        text,
        json: Some(to_value(&report)?),
        csv: None,
        code: if matches { EXIT_OK } else { EXIT_FAILURE },
    })
}
