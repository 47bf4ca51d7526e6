//! Argument handling and the process entry point.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use capacity_core::{ChannelMatrix, LogConfig, OracleConfig};
use clap::{ArgGroup, Parser, ValueEnum};

use crate::report::{emit_report, Format};
use crate::solve::{solve, Method, SolveError, SolveOptions};
use crate::spec_file::{ingest_matrix, parse_spec, IngestError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INVALID_MATRIX: i32 = 3;
pub const EXIT_NOT_CONVERGED: i32 = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Json,
    Text,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Json => Format::Json,
            FormatArg::Text => Format::Text,
        }
    }
}

/// Shannon capacity of a discrete memoryless channel.
#[derive(Debug, Parser)]
#[command(name = "capacity", version)]
#[command(group(ArgGroup::new("channel").required(true).args(["matrix", "a"])))]
struct Args {
    /// JSON channel file: {"matrix": [[...], ...], "base": 2, "method": "auto"}
    #[arg(long, value_name = "PATH")]
    matrix: Option<PathBuf>,

    /// Binary channel: P(y2 | x1)
    #[arg(long, requires = "c", allow_negative_numbers = true)]
    a: Option<f64>,

    /// Binary channel: P(y2 | x2)
    #[arg(
        long,
        requires = "a",
        conflicts_with = "matrix",
        allow_negative_numbers = true
    )]
    c: Option<f64>,

    /// Logarithm base [default: 2, or the file's "base"]
    #[arg(long)]
    base: Option<f64>,

    /// Solver [default: auto, or the file's "method"]
    #[arg(long, value_parser = parse_method)]
    method: Option<Method>,

    /// Blahut-Arimoto stopping gap
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,

    /// Blahut-Arimoto iteration limit
    #[arg(long = "max-iter", default_value_t = 100_000)]
    max_iter: usize,

    #[arg(long, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,
}

fn parse_method(s: &str) -> Result<Method, String> {
    s.parse()
}

/// Fully resolved invocation.
struct Invocation {
    channel: ChannelMatrix,
    options: SolveOptions,
    format: Format,
}

/// Runs the tool on `argv` (program name first) and returns the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = match Args::try_parse_from(argv) {
        Ok(args) => args,
        Err(e) => {
            let code = if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                EXIT_USAGE
            } else {
                let _ = write!(out, "{}", e.render());
                EXIT_OK
            };
            return code;
        }
    };
    let inv = match resolve(args, err) {
        Ok(inv) => inv,
        Err((code, msg)) => {
            let _ = writeln!(err, "error: {msg}");
            return code;
        }
    };
    match solve(&inv.channel, &inv.options) {
        Ok(solved) => {
            for w in &solved.warnings {
                let _ = writeln!(err, "warning: {w}");
            }
            let _ = out.write_all(emit_report(&solved.result, inv.format).as_bytes());
            EXIT_OK
        }
        Err(SolveError::NotConverged(result)) => {
            let _ = out.write_all(emit_report(&result, inv.format).as_bytes());
            let _ = writeln!(err, "error: {}", SolveError::NotConverged(result));
            EXIT_NOT_CONVERGED
        }
        Err(e @ SolveError::Unsupported(_)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INVALID_MATRIX
        }
    }
}

/// Reads the channel and merges settings: command line over file over default.
fn resolve(args: Args, err: &mut dyn Write) -> Result<Invocation, (i32, String)> {
    let mut file_base = None;
    let mut file_method = None;
    let channel = if let Some(path) = &args.matrix {
        let text = std::fs::read_to_string(path)
            .map_err(|e| (EXIT_USAGE, format!("cannot read {}: {e}", path.display())))?;
        let spec = parse_spec(&text).map_err(ingest_failure)?;
        file_base = spec.base;
        file_method = spec.method;
        let ingested = ingest_matrix(&spec.matrix).map_err(ingest_failure)?;
        for w in &ingested.warnings {
            let _ = writeln!(err, "warning: {w}");
        }
        ingested.channel
    } else {
        let (a, c) = (args.a.unwrap_or_default(), args.c.unwrap_or_default());
        ChannelMatrix::binary(a, c).map_err(|e| (EXIT_INVALID_MATRIX, e.to_string()))?
    };

    let method = match (args.method, file_method) {
        (Some(m), _) => m,
        (None, Some(name)) => name
            .parse()
            .map_err(|e: String| (EXIT_USAGE, format!("channel file: {e}")))?,
        (None, None) => Method::Auto,
    };
    let base = args.base.or(file_base).unwrap_or(2.0);
    let log = LogConfig::with_base(base).map_err(|e| (EXIT_USAGE, e.to_string()))?;
    let oracle = OracleConfig {
        tolerance: args.tol,
        max_iterations: args.max_iter,
        ..OracleConfig::default()
    };
    oracle.validate().map_err(|e| (EXIT_USAGE, e.to_string()))?;

    Ok(Invocation {
        channel,
        options: SolveOptions {
            method,
            log,
            oracle,
        },
        format: args.format.into(),
    })
}

fn ingest_failure(e: IngestError) -> (i32, String) {
    let code = match e {
        IngestError::Malformed(_) => EXIT_USAGE,
        IngestError::InvalidMatrix(_) => EXIT_INVALID_MATRIX,
    };
    (code, e.to_string())
}
