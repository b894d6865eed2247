//! `hypercert`: construct hyperbolic polynomials, test them, and verify
//! certificates from the command line.
//!
//! Exit codes: 0 passed or inside, 1 falsified or outside, 2 usage or
//! input error.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "hypercert", version, about = "Exact tools for hyperbolic polynomials and SOS certificates")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub global: Global,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Seed for randomized commands; falls back to HYPERCERT_SEED, then to a
    /// generated seed recorded in the report.
    #[arg(long, global = true)]
    pub seed: Option<u64>,

    /// Worker threads for sampling trials.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,

    /// Artifact destination. Without it the artifact goes to stdout.
    #[arg(long, short, global = true)]
    pub out: Option<PathBuf>,

    /// JSON-lines log of per-trial results, ordered by trial index.
    #[arg(long, global = true)]
    pub log: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build a polynomial file.
    #[command(subcommand)]
    Construct(Construct),
    /// Test hyperbolicity, membership, eigenvalues or interlacing.
    #[command(subcommand)]
    Check(Check),
    /// Verify an SOS or non-SOS certificate.
    #[command(subcommand)]
    Certify(Certify),
    /// Emit a Bézoutian, Hermite matrix or certificate functional.
    #[command(subcommand)]
    Matrix(MatrixCmd),
}

#[derive(Subcommand, Debug)]
pub enum Construct {
    /// Specialized Vámos quartic in 4 variables.
    Vamos,
    /// Cubic of a graph with clique parameter k.
    GraphCubic {
        /// Edge list or graph JSON.
        graph: PathBuf,
        /// Rational k > 1.
        k: String,
        /// Use coefficients (1, 3, sqrt(54k/(k-1))); the root must be rational.
        #[arg(long)]
        normalized: bool,
    },
    /// `x0^3 - 3 x0 |x|^2 + 2 q(x)` for a cubic form q.
    StdCubic { q: PathBuf },
    /// Determinant of a symmetric d x d matrix.
    Det { d: usize },
    /// Determinant of a singular 3 x 3 pencil.
    SingularCubic,
    /// Lifts that preserve hyperbolicity.
    #[command(subcommand)]
    Lift(Lift),
}

#[derive(Subcommand, Debug)]
pub enum Lift {
    /// `ell^k p` for a linear form ell positive at e and vanishing at u.
    Degree {
        poly: PathBuf,
        #[arg(long)]
        ell: PathBuf,
        #[arg(long)]
        u: String,
        #[arg(long, default_value_t = 1)]
        k: u32,
        #[arg(long)]
        e: Option<String>,
    },
    /// `q(e') p + q(x') D_e p` in added variables x'.
    Variable {
        poly: PathBuf,
        #[arg(long)]
        q: PathBuf,
        #[arg(long)]
        e_prime: String,
        #[arg(long)]
        e: Option<String>,
    },
    /// Vámos-based family in n variables of degree d.
    VamosFamily { n: usize, d: usize },
}

#[derive(Subcommand, Debug)]
pub enum Check {
    /// Randomized hyperbolicity test along sampled lines.
    Hyperbolic {
        poly: PathBuf,
        #[arg(long)]
        e: Option<String>,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        /// Sample only on a hyperplane not containing e.
        #[arg(long)]
        complement: bool,
    },
    /// Classify u against the closed hyperbolicity cone.
    Member {
        poly: PathBuf,
        #[arg(long)]
        u: String,
        #[arg(long)]
        e: Option<String>,
    },
    /// Hyperbolic eigenvalues of x, isolated to the given width.
    Eigenvalues {
        poly: PathBuf,
        #[arg(long)]
        x: String,
        #[arg(long)]
        e: Option<String>,
        #[arg(long, default_value = "1/1000000")]
        width: String,
    },
    /// Sampled check that q interlaces p.
    Interlace {
        poly: PathBuf,
        q: PathBuf,
        #[arg(long)]
        e: Option<String>,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value = "1/1000000")]
        width: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum Certify {
    /// Built-in separating functional for the Vámos sextic.
    VamosNotSos,
    /// Built-in correlation-matrix obstruction for the icosahedral cubic.
    IcosaNotSos,
    /// Gram certificate file.
    Gram { file: PathBuf },
    /// Separating functional file.
    Separation { file: PathBuf },
    /// Determinantal recovery of an SOS form from a Gram matrix file.
    SosRecovery { file: PathBuf },
}

#[derive(Subcommand, Debug)]
pub enum MatrixCmd {
    /// Parameterized Bézoutian `B_{p,e}(x)[u]`.
    Bezout(MatrixArgs),
    /// Parameterized Hermite matrix `H_{p,e}(x)[u]`.
    Hermite(MatrixArgs),
    /// Functional `phi(x, y)` as a coefficient vector.
    Phi {
        poly: PathBuf,
        #[arg(long)]
        e: Option<String>,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
    },
}

#[derive(Args, Debug)]
pub struct MatrixArgs {
    pub poly: PathBuf,
    #[arg(long)]
    pub e: Option<String>,
    #[arg(long)]
    pub u: String,
    /// Evaluate at a point; the result is a rational matrix.
    #[arg(long, conflicts_with_all = ["at", "symbolic"])]
    pub x: Option<String>,
    /// Fix variables, e.g. `x0=0` or `x0=0,x2=1/2`; others stay symbolic.
    #[arg(long)]
    pub at: Option<String>,
    /// Keep every variable symbolic (the default without --x).
    #[arg(long)]
    pub symbolic: bool,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match commands::run(&cli) {
        Ok(outcome) => ExitCode::from(outcome.code()),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
