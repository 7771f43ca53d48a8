//! `hodgekit`: JSON in, JSON out.
//!
//! Exit codes: 0 success, 2 usage, 3 parse or schema error, 4 mathematical
//! rejection, 5 regime violation, 6 resource guard, 7 I/O failure.

mod commands;
mod record;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use hodgekit::Error;

#[derive(Parser, Debug)]
#[command(name = "hodgekit", version, about = "Exact mixed Hodge structure computations")]
struct Cli {
    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Also write a run record (command, input digests, output digest).
    #[arg(long, global = true)]
    record: Option<PathBuf>,

    #[command(subcommand)]
    verb: Verb,
}

#[derive(Subcommand, Debug)]
pub enum Verb {
    /// Check the MHS axioms and report every failure.
    Validate { mhs: PathBuf },
    /// Dual, End and the graded pieces; tensor and Hom with `--with`.
    Functors {
        mhs: PathBuf,
        #[arg(long)]
        with: Option<PathBuf>,
    },
    /// Weight-zero Hodge classes.
    HodgeClasses { mhs: PathBuf },
    /// Deligne bigrading and splitting.
    Split { mhs: PathBuf },
    /// The MHS at a point of a triple (a sampled point with `--seed`).
    Build {
        #[arg(long)]
        triple: PathBuf,
        #[arg(long)]
        point: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 10)]
        height: u32,
    },
    /// Section tuple of an MHS associated to a triple.
    Sections {
        #[arg(long)]
        triple: PathBuf,
        mhs: PathBuf,
    },
    /// Truncated triples, and truncated points with `--point`.
    Truncate {
        #[arg(long)]
        triple: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        p: i32,
        #[arg(long)]
        point: Option<PathBuf>,
    },
    /// The point of the fiber over `(x, y)` given by a section `psi`.
    Fiber {
        #[arg(long)]
        triple: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        p: i32,
        #[arg(long)]
        x: PathBuf,
        #[arg(long)]
        y: PathBuf,
        #[arg(long)]
        psi: PathBuf,
    },
    /// Lift a graded subobject (rows in graded coordinates).
    Lift {
        mhs: PathBuf,
        #[arg(long)]
        graded: PathBuf,
    },
    /// Hodge locus of a vector along a pencil.
    Locus {
        #[arg(long)]
        pencil: PathBuf,
        #[arg(long, required_unless_present = "witness")]
        construction: Option<PathBuf>,
        #[arg(long, required_unless_present = "witness")]
        vector: Option<PathBuf>,
        /// Use the splitting witness of the pencil's weight cut.
        #[arg(long, conflicts_with_all = ["construction", "vector"])]
        witness: bool,
    },
    /// `u_p` in the rank-one graded-Tate regime.
    Up {
        #[arg(long, allow_hyphen_values = true)]
        p: i32,
        mhs: PathBuf,
    },
    /// Whether `u` is large, cut by cut.
    ULarge { mhs: PathBuf },
    /// Upper bound for the Mumford–Tate Lie algebra from tensor degree `≤ d`.
    MtBound {
        mhs: PathBuf,
        #[arg(long, default_value_t = 2)]
        degree: usize,
    },
    /// Seeded genericity experiment on a rank-one Tate triple.
    Experiment {
        #[arg(long)]
        triple: PathBuf,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        height: u32,
    },
}

/// Failures of a command, with the exit code they map to.
#[derive(Debug)]
pub enum Failure {
    Io { path: PathBuf, message: String },
    Math(Error),
    /// The command ran and printed its report, but the answer is a rejection.
    Rejected(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Io { .. } => 7,
            Failure::Rejected(_) => 4,
            Failure::Math(e) => match e {
                Error::Parse { .. } | Error::DimensionMismatch { .. } => 3,
                Error::Regime(_) => 5,
                Error::ResourceGuard { .. } => 6,
                _ => 4,
            },
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Io { path, message } => format!("{}: {message}", path.display()),
            Failure::Math(e) => e.to_string(),
            Failure::Rejected(m) => m.clone(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Math(e)
    }
}

fn write_output(path: Option<&PathBuf>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure::Io {
            path: p.clone(),
            message: e.to_string(),
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut inputs = record::Inputs::default();
    let result = commands::run(&cli.verb, &mut inputs);
    let (text, failure) = match result {
        Ok(out) => (Some(out.text), out.rejection.map(Failure::Rejected)),
        Err(f) => (None, Some(f)),
    };
    if let Some(text) = &text {
        if let Err(f) = write_output(cli.out.as_ref(), text) {
            eprintln!("error: {}", f.message());
            return ExitCode::from(f.code());
        }
        if let Some(path) = &cli.record {
            let rec = record::RunRecord::new(&inputs, &cli.verb, cli.out.as_ref(), text);
            if let Err(f) = write_output(Some(path), &hodgekit::json::to_pretty(&rec)) {
                eprintln!("error: {}", f.message());
                return ExitCode::from(f.code());
            }
        }
    }
    match failure {
        None => ExitCode::SUCCESS,
        Some(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
