//! The `hybridcomb` command line.
//!
//! Exit codes: 0 success, 2 invalid parameters, 3 I/O failure, 4 numerical failure.

mod commands;
mod config;
mod output;
mod sweep;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::Error;
use crate::params::{Comb, OneSpecies, TwoSpecies};

pub use output::{BandsDocument, Table, Value, SCHEMA_VERSION};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARAM: i32 = 2;
pub const EXIT_IO: i32 = 3;
pub const EXIT_NUMERICAL: i32 = 4;

pub const THREADS_ENV: &str = "HYBRIDCOMB_THREADS";

#[derive(Parser, Debug)]
#[command(
    name = "hybridcomb",
    version,
    about = "Bands, dispersion and density of states of periodic delta / delta-prime combs",
    long_about = "Bands, dispersion and density of states of periodic delta / delta-prime combs.\n\n\
        All inputs are dimensionless: lengths in Compton wavelengths hbar/(mc), energies in mc^2/2. \
        Use `units` to convert physical couplings. A two-species comb is selected by giving any of \
        --v0, --v1, --d.",
    args_override_self = true,
    allow_negative_numbers = true
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Allowed bands in the energy window, with edges and curvature
    Bands(BandsArgs),
    /// Dispersion eps(q) on [0, pi/a] for selected bands
    Dispersion(DispersionArgs),
    /// Density of states on a uniform energy grid, with optional occupation
    Dos(DosArgs),
    /// Discrete spectrum of the opaque comb (|w1| = 1)
    Discrete(DiscreteArgs),
    /// Effective single-node couplings of a coalescing two-species cell
    Merge(MergeArgs),
    /// Band mask, gap widths or curvature sign over a 1-D or 2-D parameter grid
    Sweep(SweepArgs),
    /// Convert physical couplings (eV, angstrom) to dimensionless ones
    Units(UnitsArgs),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Args, Debug, Clone, Default)]
pub struct Common {
    /// delta coupling of the first node
    #[arg(long)]
    pub w0: Option<f64>,
    /// delta-prime coupling of the first node
    #[arg(long)]
    pub w1: Option<f64>,
    /// delta coupling of the second node
    #[arg(long)]
    pub v0: Option<f64>,
    /// delta-prime coupling of the second node
    #[arg(long)]
    pub v1: Option<f64>,
    /// distance from the first to the second node, 0 < d < a
    #[arg(long)]
    pub d: Option<f64>,
    /// lattice spacing [default: 1]
    #[arg(long)]
    pub a: Option<f64>,
    /// lower energy limit [default: below every bound-state band]
    #[arg(long)]
    pub emin: Option<f64>,
    /// upper energy limit [default: 100]
    #[arg(long)]
    pub emax: Option<f64>,
    /// number of samples (meaning depends on the subcommand)
    #[arg(long)]
    pub grid: Option<usize>,
    /// band-edge tolerance in energy [default: 1e-10]
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
    /// write here instead of stdout; run metadata goes to PATH.meta.json
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// key = value file with default flag values; flags override it
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Args, Debug)]
#[command(allow_negative_numbers = true, args_override_self = true)]
pub struct BandsArgs {
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
#[command(allow_negative_numbers = true, args_override_self = true)]
pub struct DispersionArgs {
    #[command(flatten)]
    pub common: Common,
    /// comma-separated band indices [default: all]
    #[arg(long, value_delimiter = ',')]
    pub bands: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum StatisticsArg {
    FermiDirac,
    BoseEinstein,
}

#[derive(Args, Debug)]
#[command(allow_negative_numbers = true, args_override_self = true)]
pub struct DosArgs {
    #[command(flatten)]
    pub common: Common,
    /// attach an occupation factor; temperature in energy units (k_B = 1)
    #[arg(long, value_enum, requires_all = ["mu", "temperature"])]
    pub statistics: Option<StatisticsArg>,
    /// chemical potential
    #[arg(long)]
    pub mu: Option<f64>,
    #[arg(long)]
    pub temperature: Option<f64>,
}

#[derive(Args, Debug)]
#[command(allow_negative_numbers = true, args_override_self = true)]
pub struct DiscreteArgs {
    #[command(flatten)]
    pub common: Common,
    /// number of eigenvalues
    #[arg(long, default_value_t = 5)]
    pub count: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DirectionArg {
    ToZero,
    ToA,
    Both,
}

#[derive(Args, Debug)]
#[command(allow_negative_numbers = true, args_override_self = true)]
pub struct MergeArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, value_enum, default_value = "both")]
    pub direction: DirectionArg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Quantity {
    BandMask,
    GapWidths,
    CurvatureSign,
}

#[derive(Args, Debug)]
#[command(allow_negative_numbers = true, args_override_self = true)]
pub struct SweepArgs {
    #[command(flatten)]
    pub common: Common,
    /// first axis as NAME:MIN:MAX:STEPS, NAME in {w0, w1, v0, v1, d, a, eps}
    #[arg(long)]
    pub x: String,
    /// optional second axis, same syntax
    #[arg(long)]
    pub y: Option<String>,
    #[arg(long, value_enum)]
    pub quantity: Quantity,
    /// band whose curvature is reported
    #[arg(long, default_value_t = 0)]
    pub band: usize,
}

#[derive(Args, Debug)]
#[command(allow_negative_numbers = true, args_override_self = true)]
pub struct UnitsArgs {
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// delta strength in eV angstrom
    #[arg(long, default_value_t = 0.0)]
    pub mu: f64,
    /// delta-prime strength in eV angstrom^2
    #[arg(long, default_value_t = 0.0)]
    pub lambda: f64,
    /// lattice spacing in angstrom
    #[arg(long)]
    pub y0: f64,
    /// particle mass in electron masses
    #[arg(long, default_value_t = 1.0)]
    pub mass: f64,
}

#[derive(Debug)]
pub enum CliError {
    Param(String),
    Io(String),
    Numerical(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Param(_) => EXIT_PARAM,
            CliError::Io(_) => EXIT_IO,
            CliError::Numerical(_) => EXIT_NUMERICAL,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Param(m) | CliError::Io(m) | CliError::Numerical(m) => m,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::OpaqueRegime => CliError::Param(format!("{e}; use the `discrete` subcommand for the spectrum")),
            Error::PoleHit { .. }
            | Error::SingularConversion
            | Error::ScanTooCoarse { .. }
            | Error::QuadratureFailure { .. } => CliError::Numerical(e.to_string()),
            _ => CliError::Param(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl Common {
    fn is_two_species(&self) -> bool {
        self.v0.is_some() || self.v1.is_some() || self.d.is_some()
    }

    pub fn comb(&self) -> Result<Comb, CliError> {
        let (w0, w1, a) = (self.w0.unwrap_or(0.0), self.w1.unwrap_or(0.0), self.a.unwrap_or(1.0));
        if self.is_two_species() {
            let d = self.d.ok_or_else(|| CliError::Param("a two-species comb needs --d".into()))?;
            Ok(Comb::Two(TwoSpecies::new(w0, w1, self.v0.unwrap_or(0.0), self.v1.unwrap_or(0.0), d, a)?))
        } else {
            Ok(Comb::One(OneSpecies::new(w0, w1, a)?))
        }
    }
}

/// Parses `args` (including the program name), runs the command and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let args = match config::merge_config(&args) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {}", e.message());
            return e.exit_code();
        }
    };
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARAM } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match commands::execute(cli.command, &args) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {}", e.message());
            e.exit_code()
        }
    }
}
