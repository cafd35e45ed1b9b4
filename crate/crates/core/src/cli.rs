//! The `gh-simplex` command line.
//!
//! Exit codes: 0 ok, 1 usage, 2 invalid metric, 3 I/O or parse error,
//! 4 enumeration too large, 5 oracle mismatch.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::correspondence::{min_distortion, DEFAULT_CAP};
use crate::error::Error;
use crate::generate;
use crate::io::{fmt12, read_input, write_space, Input};
use crate::metric::{triangle_violations, FiniteMetricSpace, Tolerance, Validation};
use crate::simplex::{
    alpha_plus_via_mst, characteristics_with, classify_case, gh_to_simplex_with, lambda_range,
    sweep_characteristics, sweep_space, Characteristics, Preset, SweepRow,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INVALID_METRIC: i32 = 2;
pub const EXIT_IO: i32 = 3;
pub const EXIT_TOO_LARGE: i32 = 4;
pub const EXIT_MISMATCH: i32 = 5;

#[derive(Parser, Debug)]
#[command(name = "gh-simplex", version, about = "Gromov-Hausdorff distances to simplexes")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct GlobalArgs {
    /// Output format (default: csv for sweep, pretty otherwise)
    #[arg(long, value_enum, global = true)]
    format: Option<Format>,
    #[arg(long, default_value_t = 1e-9, global = true)]
    tolerance: f64,
    /// Enumeration cap for searches and the correspondence oracle
    #[arg(long, env = "GH_SIMPLEX_CAP", default_value_t = DEFAULT_CAP, global = true)]
    cap: u64,
    /// Worker threads for sweeps (0 = all cores)
    #[arg(long, default_value_t = 0, global = true)]
    threads: usize,
    /// Accept matrices that break the triangle inequality
    #[arg(long, global = true)]
    no_triangle_check: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
    Pretty,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the metric axioms of a distance-matrix file
    Validate {
        #[arg(long)]
        input: PathBuf,
    },
    /// 2·d_GH(λΔ_m, X) for one λ
    Distance {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        lambda: f64,
    },
    /// Partition characteristics and case of a space
    Characteristics {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        m: usize,
    },
    /// Exact values or bounds of g(λ) along a grid
    Sweep {
        #[arg(long, conflicts_with = "preset", required_unless_present = "preset")]
        input: Option<PathBuf>,
        /// circle-m2 or simplex-<n>-<λ>
        #[arg(long)]
        preset: Option<String>,
        #[arg(long)]
        m: Option<usize>,
        /// Explicit grid, comma separated
        #[arg(long, value_delimiter = ',', conflicts_with_all = ["lambda_min", "lambda_max", "lambda_step"])]
        lambda: Vec<f64>,
        #[arg(long, requires_all = ["lambda_max", "lambda_step"])]
        lambda_min: Option<f64>,
        #[arg(long)]
        lambda_max: Option<f64>,
        #[arg(long)]
        lambda_step: Option<f64>,
    },
    /// Compare the formula with the brute-force correspondence oracle
    OracleCheck {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        lambda: f64,
    },
    /// Write a distance-matrix file (.json for JSON, CSV otherwise)
    Generate {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1.0)]
        lambda: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 2)]
        dim: usize,
        #[arg(long, default_value_t = 2.0)]
        p: f64,
        /// Arc-length distances for circle samples (chordal otherwise)
        #[arg(long)]
        geodesic: bool,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Kind {
    Simplex,
    RandomMetric,
    LpPoints,
    CircleSample,
}

struct Ctx {
    format: Format,
    tol: Tolerance,
    cap: u64,
    validation: Validation,
}

/// Failure of a command: exit code plus message for stderr.
struct Failure(i32, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(exit_code(&e), e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure(EXIT_IO, e.to_string())
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        e if e.is_metric_violation() => EXIT_INVALID_METRIC,
        Error::Io(_) | Error::Parse(_) | Error::NotSquare { .. } | Error::NonFinite { .. } | Error::LabelCount { .. } | Error::ZeroPoints => EXIT_IO,
        Error::EnumerationTooLarge { .. } | Error::SizeThresholdExceeded { .. } | Error::Overflow => {
            EXIT_TOO_LARGE
        }
        _ => EXIT_USAGE,
    }
}

/// Runs the CLI on `args` (including the program name) and returns the
/// exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if e.use_stderr() {
                write!(err, "{e}")
            } else {
                write!(out, "{e}")
            };
            return code;
        }
    };
    match dispatch(cli, out) {
        Ok(code) => code,
        Err(Failure(code, msg)) => {
            let _ = writeln!(err, "error: {msg}");
            code
        }
    }
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> Result<i32, Failure> {
    let g = cli.global;
    let tol = Tolerance::new(g.tolerance)?;
    if g.cap == 0 {
        return Err(Failure(EXIT_USAGE, "cap must be at least 1".into()));
    }
    let is_sweep = matches!(cli.command, Command::Sweep { .. });
    let ctx = Ctx {
        format: g.format.unwrap_or(if is_sweep { Format::Csv } else { Format::Pretty }),
        tol,
        cap: g.cap,
        validation: Validation {
            strict_triangle: !g.no_triangle_check,
            tolerance: tol,
        },
    };
    match cli.command {
        Command::Validate { input } => cmd_validate(&ctx, &input, out),
        Command::Distance { input, m, lambda } => cmd_distance(&ctx, &input, m, lambda, out),
        Command::Characteristics { input, m } => cmd_characteristics(&ctx, &input, m, out),
        Command::Sweep {
            input,
            preset,
            m,
            lambda,
            lambda_min,
            lambda_max,
            lambda_step,
        } => {
            let grid = match (lambda_min, lambda_max, lambda_step) {
                (Some(lo), Some(hi), Some(step)) => lambda_range(lo, hi, step)?,
                _ if !lambda.is_empty() => lambda,
                _ => {
                    return Err(Failure(
                        EXIT_USAGE,
                        "sweep needs --lambda or --lambda-min/--lambda-max/--lambda-step".into(),
                    ))
                }
            };
            let source = match (input, preset) {
                (Some(path), _) => Source::Path(path),
                (None, Some(name)) => Source::Preset(name.parse::<Preset>()?),
                (None, None) => unreachable!("clap requires one of them"),
            };
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(g.threads)
                .build()
                .map_err(|e| Failure(EXIT_USAGE, e.to_string()))?;
            let rows = pool.install(|| sweep_rows(&ctx, source, m, &grid))?;
            write_sweep(ctx.format, &rows, out)?;
            Ok(EXIT_OK)
        }
        Command::OracleCheck { input, m, lambda } => cmd_oracle_check(&ctx, &input, m, lambda, out),
        Command::Generate {
            kind,
            n,
            lambda,
            seed,
            dim,
            p,
            geodesic,
            out: path,
        } => {
            let x = match kind {
                Kind::Simplex => FiniteMetricSpace::simplex(n, lambda)
                    .map_err(|e| Failure(EXIT_USAGE, e.to_string()))?,
                Kind::RandomMetric => generate::random_metric(n, seed)?,
                Kind::LpPoints => generate::lp_points(n, dim, p, seed)?,
                Kind::CircleSample => generate::circle_sample(n, geodesic)?,
            };
            write_space(&x, &path)?;
            writeln!(out, "wrote {} (n={})", path.display(), x.len())?;
            if kind == Kind::CircleSample {
                writeln!(
                    out,
                    "note: finite circle sample (sample ≠ continuum); the circle-m2 preset does not describe it"
                )?;
            }
            Ok(EXIT_OK)
        }
    }
}

fn load_space(ctx: &Ctx, path: &Path) -> Result<FiniteMetricSpace, Failure> {
    match read_input(path)? {
        Input::Matrix(raw) => Ok(raw.validate(ctx.validation)?),
        Input::Characteristics(_) => Err(Failure(
            EXIT_USAGE,
            format!("{} holds characteristics; this command needs a distance matrix", path.display()),
        )),
    }
}

fn emit_json(out: &mut dyn Write, v: &Value) -> Result<(), Failure> {
    writeln!(out, "{}", serde_json::to_string_pretty(v).expect("json values serialize"))?;
    Ok(())
}

/// A number rounded to the printed precision, as a JSON value.
fn num(x: f64) -> Value {
    if x.is_finite() {
        json!(fmt12(x).parse::<f64>().expect("formatted number parses"))
    } else {
        json!(fmt12(x))
    }
}

fn cmd_validate(ctx: &Ctx, path: &Path, out: &mut dyn Write) -> Result<i32, Failure> {
    let raw = match read_input(path)? {
        Input::Matrix(raw) => raw,
        Input::Characteristics(_) => {
            return Err(Failure(EXIT_USAGE, "not a distance matrix".into()))
        }
    };
    let n = raw.rows.len();
    match raw.clone().validate(ctx.validation) {
        Ok(x) => {
            match ctx.format {
                Format::Json => emit_json(
                    out,
                    &json!({"n": n, "diam": num(x.diam()), "eps": num(x.eps()), "valid": true}),
                )?,
                Format::Csv => {
                    writeln!(out, "n,diam,eps,valid")?;
                    writeln!(out, "{n},{},{},true", fmt12(x.diam()), fmt12(x.eps()))?;
                }
                Format::Pretty => {
                    writeln!(out, "n={n} diam={} eps={} OK", fmt12(x.diam()), fmt12(x.eps()))?
                }
            }
            Ok(EXIT_OK)
        }
        Err(e) if e.is_metric_violation() => {
            let triples = if matches!(e, Error::TriangleViolation { .. }) {
                triangle_violations(&raw.rows, ctx.tol)
            } else {
                Vec::new()
            };
            let name = |i: usize| raw.labels[i].clone();
            match ctx.format {
                Format::Json => emit_json(
                    out,
                    &json!({
                        "n": n,
                        "valid": false,
                        "error": e.to_string(),
                        "violations": triples.iter().map(|&(i, j, k)| json!([name(i), name(j), name(k)])).collect::<Vec<_>>(),
                    }),
                )?,
                _ => {
                    writeln!(out, "n={n} INVALID: {e}")?;
                    for &(i, j, k) in &triples {
                        writeln!(
                            out,
                            "violation: |{0}{2}| = {3} > |{0}{1}| + |{1}{2}| = {4}",
                            name(i),
                            name(j),
                            name(k),
                            fmt12(raw.rows[i][k]),
                            fmt12(raw.rows[i][j] + raw.rows[j][k]),
                        )?;
                    }
                }
            }
            Ok(EXIT_INVALID_METRIC)
        }
        Err(e) => Err(e.into()),
    }
}

fn cmd_distance(ctx: &Ctx, path: &Path, m: usize, lambda: f64, out: &mut dyn Write) -> Result<i32, Failure> {
    let x = load_space(ctx, path)?;
    let r = gh_to_simplex_with(&x, m, lambda, ctx.cap)?;
    match ctx.format {
        Format::Json => emit_json(
            out,
            &json!({
                "m": m,
                "lambda": num(lambda),
                "twice_gh": num(r.twice_gh),
                "gh": num(r.gh()),
                "branch": r.branch.name(),
                "argmin": r.argmin.as_ref().map(|p| p.to_json(&x)),
            }),
        )?,
        Format::Csv => {
            writeln!(out, "m,lambda,twice_gh,gh,branch")?;
            writeln!(out, "{m},{},{},{},{}", fmt12(lambda), fmt12(r.twice_gh), fmt12(r.gh()), r.branch)?;
        }
        Format::Pretty => {
            write!(out, "2dGH={} dGH={} branch={}", fmt12(r.twice_gh), fmt12(r.gh()), r.branch)?;
            if let Some(p) = &r.argmin {
                write!(out, " argmin={}", p.display_with(&x))?;
            }
            writeln!(out)?;
        }
    }
    Ok(EXIT_OK)
}

fn cmd_characteristics(ctx: &Ctx, path: &Path, m: usize, out: &mut dyn Write) -> Result<i32, Failure> {
    let (c, mst_ok) = match read_input(path)? {
        Input::Matrix(raw) => {
            let x = raw.validate(ctx.validation)?;
            let c = characteristics_with(&x, m, ctx.cap)?;
            let via_mst = alpha_plus_via_mst(&x, m)?;
            (c, Some(via_mst == c.alpha_plus))
        }
        Input::Characteristics(c) => (c, None),
    };
    let case = classify_case(&c, ctx.tol)?;
    let check = match mst_ok {
        Some(true) => "OK",
        Some(false) => "MISMATCH",
        None => "n/a",
    };
    match ctx.format {
        Format::Json => emit_json(
            out,
            &json!({
                "m": c.m,
                "diam": num(c.diam),
                "eps": c.eps.map(num),
                "alpha_minus": num(c.alpha_minus.to_f64()),
                "alpha_plus": num(c.alpha_plus.to_f64()),
                "d_minus": num(c.d_minus),
                "d_plus": num(c.d_plus),
                "case": case.name(),
                "mst_check": check,
            }),
        )?,
        Format::Csv => {
            writeln!(out, "m,diam,eps,alpha_minus,alpha_plus,d_minus,d_plus,case,mst_check")?;
            writeln!(
                out,
                "{},{},{},{},{},{},{},{case},{check}",
                c.m,
                fmt12(c.diam),
                c.eps.map(fmt12).unwrap_or_default(),
                fmt12(c.alpha_minus.to_f64()),
                fmt12(c.alpha_plus.to_f64()),
                fmt12(c.d_minus),
                fmt12(c.d_plus),
            )?;
        }
        Format::Pretty => {
            write!(out, "m={} diam={}", c.m, fmt12(c.diam))?;
            if let Some(e) = c.eps {
                write!(out, " eps={}", fmt12(e))?;
            }
            writeln!(
                out,
                " alpha-={} alpha+={} d-={} d+={} case={case} mst-check={check}",
                fmt12(c.alpha_minus.to_f64()),
                fmt12(c.alpha_plus.to_f64()),
                fmt12(c.d_minus),
                fmt12(c.d_plus),
            )?;
        }
    }
    Ok(if mst_ok == Some(false) { EXIT_MISMATCH } else { EXIT_OK })
}

enum Source {
    Path(PathBuf),
    Preset(Preset),
}

fn sweep_rows(ctx: &Ctx, source: Source, m: Option<usize>, grid: &[f64]) -> Result<Vec<SweepRow>, Failure> {
    let need_m = || m.ok_or_else(|| Failure(EXIT_USAGE, "--m is required for this input".into()));
    let rows = match source {
        Source::Path(path) => match read_input(&path)? {
            Input::Matrix(raw) => {
                let x = raw.validate(ctx.validation)?;
                sweep_space(&x, need_m()?, grid, ctx.tol, ctx.cap)?
            }
            Input::Characteristics(c) => {
                if m.is_some_and(|m| m != c.m) {
                    return Err(Failure(EXIT_USAGE, format!("file is for m = {}", c.m)));
                }
                sweep_characteristics(&c, grid, ctx.tol)?
            }
        },
        Source::Preset(p) => {
            let c: Characteristics = p.characteristics(m)?;
            sweep_characteristics(&c, grid, ctx.tol)?
        }
    };
    Ok(rows)
}

/// Sweep rows in the requested format. CSV columns:
/// `lambda,lo,hi,exact,case,region`.
fn write_sweep(format: Format, rows: &[SweepRow], out: &mut dyn Write) -> Result<(), Failure> {
    match format {
        Format::Csv => {
            writeln!(out, "lambda,lo,hi,exact,case,region")?;
            for r in rows {
                writeln!(
                    out,
                    "{},{},{},{},{},{}",
                    fmt12(r.lambda),
                    fmt12(r.bound.lo()),
                    fmt12(r.bound.hi()),
                    r.bound.is_exact(),
                    r.bound.case,
                    r.bound.region
                )?;
            }
        }
        Format::Json => {
            let v: Vec<Value> = rows
                .iter()
                .map(|r| {
                    json!({
                        "lambda": num(r.lambda),
                        "lo": num(r.bound.lo()),
                        "hi": num(r.bound.hi()),
                        "exact": r.bound.is_exact(),
                        "case": r.bound.case.name(),
                        "region": r.bound.region.to_string(),
                        "value": r.value.map(num),
                    })
                })
                .collect();
            emit_json(out, &Value::Array(v))?;
        }
        Format::Pretty => {
            for r in rows {
                let span = if r.bound.is_exact() {
                    format!("= {}", fmt12(r.bound.lo()))
                } else {
                    format!("in [{}, {}]", fmt12(r.bound.lo()), fmt12(r.bound.hi()))
                };
                write!(
                    out,
                    "lambda={} 2dGH {span} case={} region={}",
                    fmt12(r.lambda),
                    r.bound.case,
                    r.bound.region
                )?;
                if let Some(v) = r.value {
                    write!(out, " enumerated={}", fmt12(v))?;
                }
                writeln!(out)?;
            }
        }
    }
    Ok(())
}

fn cmd_oracle_check(ctx: &Ctx, path: &Path, m: usize, lambda: f64, out: &mut dyn Write) -> Result<i32, Failure> {
    let x = load_space(ctx, path)?;
    let formula = gh_to_simplex_with(&x, m, lambda, ctx.cap)?;
    let simplex = FiniteMetricSpace::simplex(m, lambda).map_err(|_| Error::NonPositiveLambda(lambda))?;
    let oracle = min_distortion(&simplex, &x, ctx.cap)?;
    let delta = (formula.twice_gh - oracle.min_distortion).abs();
    let pass = ctx.tol.eq(formula.twice_gh, oracle.min_distortion);
    let verdict = if pass { "PASS" } else { "FAIL" };
    match ctx.format {
        Format::Json => emit_json(
            out,
            &json!({
                "formula": num(formula.twice_gh),
                "oracle": num(oracle.min_distortion),
                "delta": num(delta),
                "branch": formula.branch.name(),
                "correspondences": oracle.visited,
                "verdict": verdict,
            }),
        )?,
        Format::Csv => {
            writeln!(out, "formula,oracle,delta,branch,verdict")?;
            writeln!(
                out,
                "{},{},{},{},{verdict}",
                fmt12(formula.twice_gh),
                fmt12(oracle.min_distortion),
                fmt12(delta),
                formula.branch
            )?;
        }
        Format::Pretty => writeln!(
            out,
            "formula={} oracle={} delta={} branch={} correspondences={} {verdict}",
            fmt12(formula.twice_gh),
            fmt12(oracle.min_distortion),
            fmt12(delta),
            formula.branch,
            oracle.visited
        )?,
    }
    Ok(if pass { EXIT_OK } else { EXIT_MISMATCH })
}
