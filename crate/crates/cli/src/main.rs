//! `qpack`: build moment-curve geometries, verify them, and tabulate bounds.
//!
//! Exit codes: 0 success, 1 a verification check failed, 2 usage or input
//! error. Results go to stdout as JSON lines or CSV; human-readable
//! summaries go to stderr.

mod commands;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "qpack",
    version,
    about = "Triangle-free line packings over finite fields"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the moment-curve line classes over GF(q) and write them as JSON.
    Construct {
        #[arg(long)]
        q: u64,
        /// Number of classes (default q - 1).
        #[arg(long)]
        count: Option<usize>,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a geometry JSON file or a plain incidence file.
    Verify {
        path: PathBuf,
        #[arg(
            long,
            value_enum,
            value_delimiter = ',',
            default_value = "pls,order,triangle,disjoint,union"
        )]
        checks: Vec<Check>,
        /// Count every violation instead of stopping at the first.
        #[arg(long)]
        exhaustive: bool,
        /// Worker threads (0 = all cores). QPACK_JOBS overrides this.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
    },
    /// Evaluate every bound at one (k, r).
    Bound {
        #[arg(long)]
        k: u64,
        #[arg(long)]
        r: u64,
        #[command(flatten)]
        constants: ConstantArgs,
    },
    /// Tabulate bounds over a grid of (k, r) as CSV.
    Scan {
        /// Inclusive range `a..b`, or a single value.
        #[arg(long)]
        k: String,
        #[arg(long)]
        r: String,
        #[command(flatten)]
        constants: ConstantArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exponents of k and r in the point-count lower bound.
    Exponent {
        #[arg(long, required_unless_present = "scan")]
        alpha: Option<f64>,
        /// Both orientations when omitted.
        #[arg(long, value_enum)]
        orientation: Option<OrientationArg>,
        /// Minimum total degree over alpha in {1, 1.01, ..., 3}.
        #[arg(long)]
        scan: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Check {
    Pls,
    Order,
    Triangle,
    Disjoint,
    Union,
    Gq,
    Counting,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum OrientationArg {
    HighT,
    HighS,
}

#[derive(clap::Args)]
pub struct ConstantArgs {
    /// Constant for the (r ln r)^3 (k ln k)^2 bound.
    #[arg(long, default_value_t = 1.0)]
    c_hrs: f64,
    /// Constant for the k^5 r^(5/2) bound.
    #[arg(long, default_value_t = 1.0)]
    c_bbl: f64,
    #[arg(long, default_value_t = 1.0)]
    c_lower: f64,
    #[arg(long, default_value_t = 1.0)]
    c_upper: f64,
    /// Search prime powers instead of primes for q.
    #[arg(long)]
    prime_powers: bool,
}

/// A failure carrying its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl std::fmt::Display) -> Self {
        Failure {
            code: 2,
            message: message.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::usage(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Construct { q, count, out } => commands::construct(q, count, out.as_deref()),
        Command::Verify {
            path,
            checks,
            exhaustive,
            jobs,
        } => verify::run(&path, &checks, exhaustive, jobs),
        Command::Bound { k, r, constants } => commands::bound(k, r, &constants),
        Command::Scan {
            k,
            r,
            constants,
            out,
        } => commands::scan(&k, &r, &constants, out.as_deref()),
        Command::Exponent {
            alpha,
            orientation,
            scan,
        } => commands::exponent(
            alpha,
            orientation.map(|o| match o {
                OrientationArg::HighT => qpack::bounds::Orientation::HighT,
                OrientationArg::HighS => qpack::bounds::Orientation::HighS,
            }),
            scan,
        ),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
