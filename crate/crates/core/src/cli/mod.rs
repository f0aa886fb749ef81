//! The `framered` command-line interface.
//!
//! Exit codes: 0 success, 1 unreadable input or arguments, 2 failed
//! precondition, 3 infeasible construction request, 4 a checked property failed.

mod battery;

use std::ffi::OsString;
use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub use battery::{run_battery, CheckReport, PropertyResult};

use crate::construct::{
    frame_with_redundancies_logged, frame_with_spectrum_logged, tight_witness_logged,
    RedundancyRequest, SpectrumSpec,
};
use crate::error::{Error, Result};
use crate::framecore::{Frame, FrameBounds};
use crate::io::{
    any_frame_to_json, frame_to_csv, read_frame_csv, read_frame_json, to_json, AnyFrame,
};
use crate::numkernel::PlaneRotation;
use crate::partition::{
    ceil_guarded, floor_guarded, pack_spanning, partition_independent, IndexPartition,
    PartitionKind,
};
use crate::redundancy::{equivalent, redundancy_at, redundancy_report, RedundancyReport};
use crate::scalar::{Field, Scalar};
use crate::tol::Tolerances;

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 1;
pub const EXIT_PRECONDITION: i32 = 2;
pub const EXIT_INFEASIBLE: i32 = 3;
pub const EXIT_PROPERTY_FAILED: i32 = 4;

/// Environment variable that overrides `--seed`.
pub const SEED_ENV: &str = "FRAMERED_SEED";

#[derive(Debug, Parser)]
#[command(
    name = "framered",
    version,
    about = "Quantitative redundancy of finite frames"
)]
pub struct Cli {
    /// Seed for every randomized step (overridden by FRAMERED_SEED).
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Write the result here instead of standard output.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    /// Frame file format for input and constructed output.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Tolerance override, e.g. `--tol equivalence=1e-8`. Repeatable.
    #[arg(long = "tol", global = true, value_name = "KEY=VALUE", value_parser = parse_tolerance)]
    pub tolerances: Vec<(String, f64)>,
    /// Print diagnostics, such as the rotation log of a construction, to standard error.
    #[arg(long, short, global = true, action = clap::ArgAction::Count)]
    pub verbose: u8,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FieldArg {
    Real,
    Complex,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Independent,
    Spanning,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Redundancy report of a frame; with --at, also the redundancy at one unit vector.
    Compute {
        file: PathBuf,
        /// Unit vector entries; complex entries as `a+bi`.
        #[arg(long, num_args = 1.., allow_negative_numbers = true, value_delimiter = ',')]
        at: Option<Vec<String>>,
    },
    /// Build a unit-norm frame with a prescribed spectrum or redundancy pair.
    Construct(ConstructArgs),
    /// Split a frame into independent sets or pack disjoint spanning sets.
    Partition {
        file: PathBuf,
        #[arg(long, value_enum)]
        mode: Mode,
    },
    /// Run the property battery on a frame; with a second frame also report equivalence.
    Check {
        #[arg(num_args = 1..=2, required = true)]
        files: Vec<PathBuf>,
    },
    /// Two-frame check, reporting equivalence.
    Equiv { first: PathBuf, second: PathBuf },
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("request").required(true).args(["spectrum", "redundancies", "tight"])))]
pub struct ConstructArgs {
    /// Eigenvalues of the normalized frame operator; needs --count.
    #[arg(long, num_args = 1.., requires = "count", conflicts_with_all = ["dim"])]
    pub spectrum: Option<Vec<f64>>,
    /// Target lower and upper redundancy; needs --dim and --count.
    #[arg(long, num_args = 2, value_names = ["R1", "R2"], requires_all = ["dim", "count"])]
    pub redundancies: Option<Vec<f64>>,
    #[arg(long)]
    pub dim: Option<usize>,
    #[arg(long)]
    pub count: Option<usize>,
    /// Unit-norm tight frame of N vectors in dimension n.
    #[arg(long, num_args = 2, value_names = ["n", "N"], conflicts_with_all = ["dim", "count"])]
    pub tight: Option<Vec<usize>>,
    #[arg(long, value_enum, default_value_t = FieldArg::Real)]
    pub field: FieldArg,
}

fn parse_tolerance(s: &str) -> std::result::Result<(String, f64), String> {
    let (key, value) = s
        .split_once('=')
        .ok_or_else(|| format!("expected KEY=VALUE, got `{s}`"))?;
    let value: f64 = value
        .trim()
        .parse()
        .map_err(|e| format!("tolerance `{key}`: {e}"))?;
    Tolerances::default().set(key.trim(), value)?;
    Ok((key.trim().to_string(), value))
}

/// Exit code for a library error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) => EXIT_PARSE,
        Error::InfeasibleRequest(_) | Error::InvalidSpectrum(_) => EXIT_INFEASIBLE,
        _ => EXIT_PRECONDITION,
    }
}

/// `--seed`, unless the environment value is present.
pub fn resolve_seed(flag: u64, env: Option<&str>) -> Result<u64> {
    match env {
        Some(v) => v.trim().parse().map_err(|_| {
            Error::Parse(format!("{SEED_ENV} must be an unsigned integer, got `{v}`"))
        }),
        None => Ok(flag),
    }
}

/// Compute output: the redundancy report plus frame bounds and an optional point value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComputeOutput {
    #[serde(flatten)]
    pub report: RedundancyReport<f64>,
    pub frame_bounds: FrameBounds<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub at: Option<f64>,
}

/// Partition output: the partition plus the bound it is guaranteed to meet.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PartitionOutput {
    #[serde(flatten)]
    pub partition: IndexPartition,
    /// `⌈ℛ⁺⌉` for independent partitions, `⌊ℛ⁻⌋` for spanning packings.
    pub bound: Option<usize>,
}

macro_rules! with_frame {
    ($any:expr, $f:ident => $body:expr) => {
        match $any {
            AnyFrame::Real($f) => $body,
            AnyFrame::Complex($f) => $body,
        }
    };
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = if e.use_stderr() {
                write!(err, "{e}")
            } else {
                write!(out, "{e}")
            };
            return if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
        }
    };
    let env_seed = std::env::var(SEED_ENV).ok();
    match execute(&cli, env_seed.as_deref(), err) {
        Ok((text, code)) => match emit(cli.output.as_deref(), &text, out) {
            Ok(()) => code,
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                exit_code(&e)
            }
        },
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn emit(path: Option<&Path>, text: &str, out: &mut dyn Write) -> Result<()> {
    let write_err =
        |e: std::io::Error| Error::InvalidParameter(format!("cannot write output: {e}"));
    match path {
        Some(p) => fs::write(p, format!("{text}\n")).map_err(write_err),
        None => writeln!(out, "{text}").map_err(write_err),
    }
}

fn execute(cli: &Cli, env_seed: Option<&str>, err: &mut dyn Write) -> Result<(String, i32)> {
    let seed = resolve_seed(cli.seed, env_seed)?;
    let mut tol = Tolerances::default();
    for (k, v) in &cli.tolerances {
        tol.set(k, *v).map_err(Error::Parse)?;
    }
    match &cli.command {
        Command::Compute { file, at } => {
            let frame = read_frame(file, cli.format)?;
            let text = with_frame!(&frame, f => to_json(&compute(f, at.as_deref(), &tol)?));
            Ok((text, EXIT_OK))
        }
        Command::Construct(args) => {
            let frame = construct(args, &tol, cli.verbose > 0, err)?;
            let text = match cli.format {
                Format::Json => any_frame_to_json(&frame),
                Format::Csv => with_frame!(&frame, f => frame_to_csv(f)?)
                    .trim_end()
                    .to_string(),
            };
            Ok((text, EXIT_OK))
        }
        Command::Partition { file, mode } => {
            let frame = read_frame(file, cli.format)?;
            let output = with_frame!(&frame, f => partition(f, *mode, &tol)?);
            Ok((to_json(&output), EXIT_OK))
        }
        Command::Check { files } => check(files, cli.format, seed, &tol),
        Command::Equiv { first, second } => {
            check(&[first.clone(), second.clone()], cli.format, seed, &tol)
        }
    }
}

fn read_frame(path: &Path, format: Format) -> Result<AnyFrame> {
    let mut text = String::new();
    if path == Path::new("-") {
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| Error::Parse(format!("standard input: {e}")))?;
    } else {
        text = fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    }
    let parsed = match format {
        Format::Json => read_frame_json(&text),
        Format::Csv => read_frame_csv(&text),
    };
    parsed.map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn parse_point<S: Scalar>(tokens: &[String]) -> Result<Vec<S>> {
    tokens
        .iter()
        .map(|t| {
            let z = Complex64::from_str(t.trim())
                .map_err(|_| Error::Parse(format!("cannot parse `{t}` as a number")))?;
            if S::FIELD == Field::Real && z.im != 0.0 {
                return Err(Error::Parse(format!(
                    "complex entry `{t}` for a real frame"
                )));
            }
            Ok(S::from_f64_parts(z.re, z.im))
        })
        .collect()
}

fn compute<S: Scalar<Real = f64>>(
    f: &Frame<S>,
    at: Option<&[String]>,
    tol: &Tolerances,
) -> Result<ComputeOutput> {
    let report = redundancy_report(f, tol)?;
    let frame_bounds = f.frame_bounds(tol)?;
    let at = match at {
        Some(tokens) => Some(redundancy_at(f, &parse_point::<S>(tokens)?, tol)?),
        None => None,
    };
    Ok(ComputeOutput {
        report,
        frame_bounds,
        at,
    })
}

fn construct(
    args: &ConstructArgs,
    tol: &Tolerances,
    verbose: bool,
    err: &mut dyn Write,
) -> Result<AnyFrame> {
    match args.field {
        FieldArg::Real => construct_in::<f64>(args, tol, verbose, err).map(AnyFrame::from),
        FieldArg::Complex => construct_in::<Complex64>(args, tol, verbose, err).map(AnyFrame::from),
    }
}

fn construct_in<S: Scalar<Real = f64>>(
    args: &ConstructArgs,
    tol: &Tolerances,
    verbose: bool,
    err: &mut dyn Write,
) -> Result<Frame<S>> {
    let infeasible = |e: Error| match e {
        Error::InvalidParameter(msg) => Error::InfeasibleRequest(msg),
        other => other,
    };
    let (frame, log) = if let Some(values) = &args.spectrum {
        let count = args.count.expect("clap enforces --count");
        let spec = SpectrumSpec::new(values.clone(), count, tol)?;
        frame_with_spectrum_logged::<S>(&spec, tol)?
    } else if let Some(r) = &args.redundancies {
        let req = RedundancyRequest::new(
            args.dim.expect("clap enforces --dim"),
            args.count.expect("clap enforces --count"),
            r[0],
            r[1],
        );
        frame_with_redundancies_logged::<S>(&req, tol).map_err(infeasible)?
    } else {
        let t = args.tight.as_ref().expect("clap enforces one request");
        tight_witness_logged::<S>(t[0], t[1], tol).map_err(infeasible)?
    };
    if verbose {
        write_rotation_log(&log, err);
    }
    Ok(frame)
}

fn write_rotation_log<S: Scalar<Real = f64>>(log: &[PlaneRotation<S>], err: &mut dyn Write) {
    let _ = writeln!(
        err,
        "rotation log ({} rotations, applied left to right):",
        log.len()
    );
    for (k, r) in log.iter().enumerate() {
        let _ = writeln!(
            err,
            "  {k}: i={} j={} angle={:.16e} phase=({:.16e}, {:.16e})",
            r.i,
            r.j,
            r.angle,
            r.phase.re(),
            r.phase.im()
        );
    }
}

fn partition<S: Scalar<Real = f64>>(
    f: &Frame<S>,
    mode: Mode,
    tol: &Tolerances,
) -> Result<PartitionOutput> {
    let p = match mode {
        Mode::Independent => partition_independent(f, tol)?,
        Mode::Spanning => pack_spanning(f, tol)?,
    };
    p.verify(f, tol)?;
    let bound = if f.is_spanning() {
        let r = redundancy_report(f, tol)?;
        Some(match p.kind {
            PartitionKind::Independent => ceil_guarded(r.upper),
            PartitionKind::Spanning => floor_guarded(r.lower),
        })
    } else {
        None
    };
    Ok(PartitionOutput {
        partition: p,
        bound,
    })
}

fn check(files: &[PathBuf], format: Format, seed: u64, tol: &Tolerances) -> Result<(String, i32)> {
    let first = read_frame(&files[0], format)?;
    let mut report = with_frame!(&first, f => run_battery(f, seed, tol)?);
    if let Some(path) = files.get(1) {
        let second = read_frame(path, format)?;
        report.equivalent = Some(match (&first, &second) {
            (AnyFrame::Real(f), AnyFrame::Real(g)) => equivalent(f, g, tol)?,
            (AnyFrame::Complex(f), AnyFrame::Complex(g)) => equivalent(f, g, tol)?,
            _ => {
                return Err(Error::FieldMismatch {
                    expected: first.field(),
                    found: second.field(),
                })
            }
        });
    }
    let code = if report.all_pass {
        EXIT_OK
    } else {
        EXIT_PROPERTY_FAILED
    };
    Ok((to_json(&report), code))
}
