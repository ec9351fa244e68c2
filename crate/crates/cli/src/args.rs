use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "xedp", version, about = "Energy-dependent potentials from exceptional orthogonal polynomials")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Tabulate a quantity on a grid (CSV unless --format json).
    Tabulate(Common),
    /// Modified norms (JSON unless --format csv).
    Norm(Common),
    /// Matrix of modified inner products over the --n list.
    Ortho(Common),
    /// Run the verification suite; exit 0 iff every check passes.
    Verify(VerifyArgs),
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// hermite12, jacobi111, laguerre1 or dirac.
    #[arg(long)]
    pub model: String,
    /// potential, density, wavefunction or q (tabulate only).
    #[arg(long)]
    pub quantity: Option<String>,
    /// Comma-separated indices; defaults to the lowest allowed index.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub n: Vec<i64>,
    /// lo:hi:step; defaults to the plot range of the largest n with 400 steps.
    #[arg(long, allow_hyphen_values = true)]
    pub range: Option<String>,
    /// Dirac mass M (dirac only, default 1).
    #[arg(long, allow_hyphen_values = true)]
    pub mass: Option<f64>,
    /// q variant, log or literal (dirac only, default log).
    #[arg(long)]
    pub variant: Option<String>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Relative quadrature tolerance.
    #[arg(long, allow_hyphen_values = true)]
    pub tol: Option<f64>,
    /// quadrature or wronskian_limit (norm only; the latter needs hermite12).
    #[arg(long)]
    pub method: Option<String>,
}

#[derive(Args, Debug, Clone)]
pub struct VerifyArgs {
    /// Replace every floating-point acceptance threshold by this value.
    #[arg(long, allow_hyphen_values = true)]
    pub tol: Option<f64>,
    /// Run only these checks (comma-separated ids).
    #[arg(long, value_delimiter = ',')]
    pub only: Vec<String>,
    /// Write the JSON summary to this file instead of after the table.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}
