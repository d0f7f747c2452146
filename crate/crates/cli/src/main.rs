//! `tracegeo`: JSON front end for trace-metric geometry on `GL(n, ℝ)`.

mod doc;
mod verify;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use tracegeo::curvature::{ricci, riemann_04, scalar_curvature, sectional};
use tracegeo::geodesy::{
    broken_arc, classify_arc, geodesic_from_velocity, unique_arc, ArcVerdict, Geodesic,
};
use tracegeo::metricspace::{signature_at, trace_metric};
use tracegeo::GeoError;

use doc::{load_matrix, sample, CliError, GeodesicDocument, ProfileDocument, Sample, Value};

#[derive(Parser)]
#[command(
    name = "tracegeo",
    version,
    about = "Trace-metric geometry of GL(n, R)"
)]
struct Cli {
    #[command(flatten)]
    tolerances: Tolerances,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct Tolerances {
    /// Eigenvalue clustering and rank tolerance.
    #[arg(long, global = true, default_value_t = 1e-8)]
    tol_cluster: f64,
    /// Assertion tolerance for verify checks.
    #[arg(long, global = true, env = "TRACEGEO_TOL", default_value_t = 1e-8)]
    tol_assert: f64,
    /// Central-difference step.
    #[arg(long, global = true, default_value_t = 1e-4)]
    fd_step: f64,
}

#[derive(Subcommand)]
enum Command {
    /// g_A(X, Y) = tr(A⁻¹ X A⁻¹ Y)
    Metric {
        #[arg(long)]
        at: String,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
    },
    /// Signature of the metric at a point.
    Signature {
        #[arg(long)]
        at: String,
    },
    /// Number of geodesic arcs from K0 to K1, with one witness.
    Classify {
        #[arg(long)]
        k0: String,
        #[arg(long)]
        k1: String,
        /// Overrides --tol-cluster.
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Samples t ↦ K e^{tC}.
    Geodesic {
        #[arg(long)]
        k: String,
        #[arg(
            long,
            conflicts_with = "velocity",
            required_unless_present = "velocity"
        )]
        c: Option<String>,
        /// Initial velocity S, so that C = K⁻¹S.
        #[arg(long)]
        velocity: Option<String>,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        t_from: f64,
        #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
        t_to: f64,
        #[arg(long, default_value_t = 2)]
        samples: usize,
    },
    /// The unique arc from K0 to K1, sampled on [0, 1].
    Arc {
        #[arg(long)]
        k0: String,
        #[arg(long)]
        k1: String,
        #[arg(long, default_value_t = 2)]
        samples: usize,
    },
    /// Two arcs K1 → Z → K2 through a joint Z.
    BrokenArc {
        #[arg(long)]
        k1: String,
        #[arg(long)]
        k2: String,
    },
    /// Curvature quantities at a point.
    Curvature {
        #[arg(long)]
        at: String,
        #[arg(long, value_enum)]
        kind: CurvatureKind,
        #[arg(long)]
        x: Option<String>,
        #[arg(long)]
        y: Option<String>,
        #[arg(long)]
        z: Option<String>,
        #[arg(long)]
        w: Option<String>,
    },
    /// Runs the seeded invariant suites.
    Verify {
        #[arg(long, value_parser = ["metric", "geodesic", "curvature", "foliation", "product", "all"])]
        suite: String,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        cases: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum CurvatureKind {
    Sectional,
    Riemann04,
    Ricci,
    Scalar,
}

#[derive(Serialize)]
struct ClassifyOutput {
    verdict: &'static str,
    profile: ProfileDocument,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<GeodesicDocument>,
}

#[derive(Serialize)]
struct ArcOutput {
    geodesic: GeodesicDocument,
    samples: Vec<Sample>,
}

#[derive(Serialize)]
struct BrokenArcOutput {
    joint: doc::MatrixDocument,
    first: GeodesicDocument,
    second: GeodesicDocument,
}

#[derive(Serialize)]
struct SignatureOutput {
    positive: usize,
    negative: usize,
}

#[derive(Serialize)]
struct ErrorOutput {
    error: &'static str,
    message: String,
}

/// A JSON document for standard output and the exit status that goes with it.
struct Outcome {
    json: String,
    status: u8,
}

fn emit<T: Serialize>(value: &T, status: u8) -> Result<Outcome, CliError> {
    let json = serde_json::to_string(value).map_err(|e| CliError::Parse(e.to_string()))?;
    Ok(Outcome { json, status })
}

fn required(name: &str, arg: &Option<String>) -> Result<tracegeo::SquareMatrix, CliError> {
    match arg {
        Some(s) => load_matrix(s),
        None => {
            Err(GeoError::InvalidArgument(format!("--{name} is required for this kind")).into())
        }
    }
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    let tol = cli.tolerances;
    match cli.command {
        Command::Metric { at, x, y } => {
            let value = trace_metric(&load_matrix(&at)?, &load_matrix(&x)?, &load_matrix(&y)?)?;
            emit(&Value { value }, 0)
        }
        Command::Signature { at } => {
            let s = signature_at(&load_matrix(&at)?)?;
            emit(
                &SignatureOutput {
                    positive: s.positive,
                    negative: s.negative,
                },
                0,
            )
        }
        Command::Classify { k0, k1, tol: local } => {
            let class = classify_arc(
                &load_matrix(&k0)?,
                &load_matrix(&k1)?,
                local.unwrap_or(tol.tol_cluster),
            )?;
            let status = if class.verdict == ArcVerdict::NoArc {
                2
            } else {
                0
            };
            emit(
                &ClassifyOutput {
                    verdict: class.verdict.as_str(),
                    profile: ProfileDocument::new(&class.profile),
                    witness: class.witness.as_ref().map(GeodesicDocument::new),
                },
                status,
            )
        }
        Command::Geodesic {
            k,
            c,
            velocity,
            t_from,
            t_to,
            samples,
        } => {
            let k = load_matrix(&k)?;
            let g = match (c, velocity) {
                (Some(c), _) => Geodesic::new(k, load_matrix(&c)?)?,
                (None, Some(v)) => geodesic_from_velocity(&k, &load_matrix(&v)?)?,
                (None, None) => {
                    return Err(CliError::Usage(
                        "one of --c or --velocity is required".into(),
                    ))
                }
            };
            emit(&sample(&g, t_from, t_to, samples), 0)
        }
        Command::Arc { k0, k1, samples } => {
            let g = unique_arc(&load_matrix(&k0)?, &load_matrix(&k1)?, tol.tol_cluster)?;
            emit(
                &ArcOutput {
                    geodesic: GeodesicDocument::new(&g),
                    samples: sample(&g, 0.0, 1.0, samples),
                },
                0,
            )
        }
        Command::BrokenArc { k1, k2 } => {
            let b = broken_arc(&load_matrix(&k1)?, &load_matrix(&k2)?, tol.tol_cluster)?;
            emit(
                &BrokenArcOutput {
                    joint: doc::MatrixDocument::from_matrix(&b.joint),
                    first: GeodesicDocument::new(&b.first),
                    second: GeodesicDocument::new(&b.second),
                },
                0,
            )
        }
        Command::Curvature {
            at,
            kind,
            x,
            y,
            z,
            w,
        } => {
            let k = load_matrix(&at)?;
            let value = match kind {
                CurvatureKind::Scalar => scalar_curvature(&k)?,
                CurvatureKind::Sectional => {
                    sectional(&k, &required("x", &x)?, &required("y", &y)?)?
                }
                CurvatureKind::Ricci => ricci(&k, &required("x", &x)?, &required("y", &y)?)?,
                CurvatureKind::Riemann04 => riemann_04(
                    &k,
                    &required("x", &x)?,
                    &required("y", &y)?,
                    &required("z", &z)?,
                    &required("w", &w)?,
                )?,
            };
            emit(&Value { value }, 0)
        }
        Command::Verify {
            suite,
            n,
            seed,
            cases,
        } => {
            let settings = verify::Settings {
                n,
                seed,
                cases,
                tol_assert: tol.tol_assert,
                tol_cluster: tol.tol_cluster,
                fd_step: tol.fd_step,
            };
            let report = verify::verify(&suite, settings)?;
            let status = if report.failures.is_empty() { 0 } else { 1 };
            emit(&report, status)
        }
    }
}

fn fail(e: &CliError) -> ExitCode {
    let out = ErrorOutput {
        error: e.code(),
        message: e.message(),
    };
    eprintln!("{}", serde_json::to_string(&out).unwrap_or_default());
    ExitCode::from(1)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => return fail(&CliError::Usage(e.render().to_string().trim().to_string())),
    };
    match run(cli) {
        Ok(out) => {
            println!("{}", out.json);
            ExitCode::from(out.status)
        }
        Err(e) => fail(&e),
    }
}
