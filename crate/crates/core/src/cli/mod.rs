//! Command-line front end.

mod commands;
mod config;
mod output;

use std::ffi::OsString;
use std::fmt;
use std::io;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

pub use commands::{cmd_euclid, cmd_lemma, cmd_moire, cmd_spherical, cmd_transform, cmd_validate, cmd_wave, preset};
pub use config::{parse_config_text, ConfigError, RunConfig, KEYS};
pub use output::{atomic_write, phase_gray, sibling};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_IO: i32 = 3;

#[derive(Debug)]
pub enum CliError {
    Config(ConfigError),
    Io {
        path: PathBuf,
        source: io::Error,
    },
    /// A computation or check did not meet its tolerance.
    Validation(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => EXIT_CONFIG,
            CliError::Io { .. } => EXIT_IO,
            CliError::Validation(_) => EXIT_VALIDATION,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(e) => write!(f, "{e}"),
            CliError::Io { path, source } => write!(f, "cannot access {}: {source}", path.display()),
            CliError::Validation(m) => f.write_str(m),
        }
    }
}

impl From<ConfigError> for CliError {
    fn from(e: ConfigError) -> Self {
        CliError::Config(e)
    }
}

impl From<crate::Error> for CliError {
    fn from(e: crate::Error) -> Self {
        match e {
            crate::Error::InvalidParameter { name, reason } => CliError::Config(ConfigError::new(name, reason)),
            other => CliError::Validation(other.to_string()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "helgason-moire",
    version,
    about = "Helgason waves and horocyclic superpositions on the Poincaré disk"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Render e_{λ,b0} on a polar grid.
    Wave(WaveArgs),
    /// Render the spherical function φ_λ centered at --x.
    Spherical(CommonArgs),
    /// Render a finite horocyclic sum of spherical functions and sweep the taper width.
    Moire(MoireArgs),
    /// Forward and inverse transform of a test field.
    Transform(TransformArgs),
    /// Evaluate both sides of the horocycle lemma.
    Lemma(TransformArgs),
    /// Render a Euclidean line sum of Bessel profiles.
    Euclid(EuclidArgs),
    /// Run the numerical property suites.
    Validate(ValidateArgs),
}

#[derive(Debug, Clone, Default, Args)]
pub struct CommonArgs {
    /// Spectral parameter λ (wavelength for `euclid`).
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Option<String>,
    /// Boundary direction b0 as an angle in radians.
    #[arg(long, allow_hyphen_values = true)]
    pub b0: Option<String>,
    /// Disk point as `re,im`.
    #[arg(long, allow_hyphen_values = true)]
    pub x: Option<String>,
    /// Polar grid `NxM`: N radii, M angles.
    #[arg(long, allow_hyphen_values = true)]
    pub grid: Option<String>,
    /// Geodesic radius of the grid.
    #[arg(long, allow_hyphen_values = true)]
    pub radius: Option<String>,
    /// Taper `kind:width` with kind gaussian, cosine or hard.
    #[arg(long, allow_hyphen_values = true)]
    pub taper: Option<String>,
    /// Output file.
    #[arg(long, allow_hyphen_values = true)]
    pub out: Option<String>,
    /// `key=value` file; flags take precedence.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Quadrature resolution override; its meaning depends on the subcommand.
    #[arg(long, allow_hyphen_values = true)]
    pub resolution: Option<String>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct WaveArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Named parameter set: phase-lines.
    #[arg(long, allow_hyphen_values = true)]
    pub preset: Option<String>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct MoireArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Number of centers on the horocycle.
    #[arg(long, allow_hyphen_values = true)]
    pub n: Option<String>,
    /// Arc-length spacing of the centers.
    #[arg(long, allow_hyphen_values = true)]
    pub spacing: Option<String>,
    /// Comma-separated increasing taper widths for the report.
    #[arg(long, allow_hyphen_values = true)]
    pub sigmas: Option<String>,
    /// Named parameter set: sum-5 or sum-60.
    #[arg(long, allow_hyphen_values = true)]
    pub preset: Option<String>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct TransformArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Test field: bump, narrow-bump or oscillating, centered at --x.
    #[arg(long, allow_hyphen_values = true)]
    pub field: Option<String>,
    /// Spectral cutoff Λ.
    #[arg(long, allow_hyphen_values = true)]
    pub lambda_max: Option<String>,
    /// Spectral step.
    #[arg(long, allow_hyphen_values = true)]
    pub lambda_step: Option<String>,
    /// Plancherel constant replacing the calibrated one.
    #[arg(long, allow_hyphen_values = true)]
    pub kappa: Option<String>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct EuclidArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[arg(long, allow_hyphen_values = true)]
    pub n: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub spacing: Option<String>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct ValidateArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Comma-separated suites: hypgeo, waves, hft, moire, euclid, figures.
    #[arg(long, allow_hyphen_values = true)]
    pub suite: Option<String>,
    /// Plancherel constant replacing the calibrated one.
    #[arg(long, allow_hyphen_values = true)]
    pub kappa: Option<String>,
}

impl CommonArgs {
    fn flags(&self) -> Vec<(&'static str, Option<String>)> {
        vec![
            ("lambda", self.lambda.clone()),
            ("b0", self.b0.clone()),
            ("x", self.x.clone()),
            ("grid", self.grid.clone()),
            ("radius", self.radius.clone()),
            ("taper", self.taper.clone()),
            ("out", self.out.clone()),
            ("resolution", self.resolution.clone()),
        ]
    }
}

fn load(common: &CommonArgs, extra: Vec<(&'static str, Option<String>)>) -> Result<RunConfig, CliError> {
    let mut flags = common.flags();
    flags.extend(extra);
    RunConfig::load(&flags, common.config.as_deref(), &preset)
}

/// Runs the command line and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
        }
    };
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(command: Command) -> Result<i32, CliError> {
    match command {
        Command::Wave(a) => {
            let mut cfg = load(&a.common, vec![("preset", a.preset)])?;
            cmd_wave(&mut cfg).map(|_| EXIT_OK)
        }
        Command::Spherical(a) => {
            let mut cfg = load(&a, vec![])?;
            cmd_spherical(&mut cfg).map(|_| EXIT_OK)
        }
        Command::Moire(a) => {
            let mut cfg = load(
                &a.common,
                vec![
                    ("n", a.n),
                    ("spacing", a.spacing),
                    ("sigmas", a.sigmas),
                    ("preset", a.preset),
                ],
            )?;
            cmd_moire(&mut cfg).map(|_| EXIT_OK)
        }
        Command::Transform(a) => {
            let mut cfg = load(&a.common, transform_flags(&a))?;
            cmd_transform(&mut cfg).map(|_| EXIT_OK)
        }
        Command::Lemma(a) => {
            let mut cfg = load(&a.common, transform_flags(&a))?;
            cmd_lemma(&mut cfg).map(|_| EXIT_OK)
        }
        Command::Euclid(a) => {
            let mut cfg = load(&a.common, vec![("n", a.n), ("spacing", a.spacing)])?;
            cmd_euclid(&mut cfg).map(|_| EXIT_OK)
        }
        Command::Validate(a) => {
            let mut cfg = load(&a.common, vec![("suite", a.suite), ("kappa", a.kappa)])?;
            let passed = cmd_validate(&mut cfg)?;
            Ok(if passed { EXIT_OK } else { EXIT_VALIDATION })
        }
    }
}

fn transform_flags(a: &TransformArgs) -> Vec<(&'static str, Option<String>)> {
    vec![
        ("field", a.field.clone()),
        ("lambda_max", a.lambda_max.clone()),
        ("lambda_step", a.lambda_step.clone()),
        ("kappa", a.kappa.clone()),
    ]
}
