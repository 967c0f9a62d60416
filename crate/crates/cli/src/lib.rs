//! `fracwave` command line: Mittag-Leffler tables, invariance reports,
//! exact-solution tables, residual checks and figure data.
//!
//! [`run`] is the whole program; the binary only forwards its arguments and
//! exit code.

mod commands;
mod output;
mod range;

use std::ffi::OsString;
use std::io::Write;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use fracwave::tolerances::Tolerances;
use fracwave::Scalar;

pub use range::Samples;

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_VERIFY: u8 = 3;

/// Environment variable overriding verification thresholds: either one
/// number applied to both, or `analytic=<v>,numerical=<v>`.
pub const TOL_ENV: &str = "FRACWAVE_TOL";

const RANGE_HELP: &str = "Ranges are start:stop:step (stop excluded) or comma lists";

#[derive(Debug, Parser)]
#[command(name = "fracwave", version, about = "Time-fractional dispersive equations: special functions, invariant subspaces, exact solutions", after_help = RANGE_HELP)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tabulate E_{a,b}(z), or the family E_{2α,1}(-t^{2α}) for several 2α
    Ml(MlArgs),
    /// Closure of an operator on a function basis
    Invariance(InvarianceArgs),
    /// Tabulate an exact solution u(x,t)
    Solve(SolveArgs),
    /// Residual check of an exact solution
    Verify(VerifyArgs),
    /// Figure data: E_{2α,1}(-μ̄²t^{2α}) for several 2α, long CSV
    Figure(FigureArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TextFormat {
    Text,
    Json,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Write to this file instead of standard output
    #[arg(long, short)]
    pub output: Option<std::path::PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PolicyArg {
    Auto,
    Series,
    Asymptotic,
    Integral,
    ExpSpecial,
    TrigSpecial,
}

#[derive(Debug, Args)]
pub struct MlArgs {
    #[arg(long, allow_hyphen_values = true, requires = "z", conflicts_with = "two_alpha")]
    pub a: Option<f64>,
    #[arg(long, allow_hyphen_values = true, default_value_t = 1.0)]
    pub b: f64,
    /// Arguments z
    #[arg(long, allow_hyphen_values = true)]
    pub z: Option<Samples>,
    #[arg(long, value_enum, default_value_t = PolicyArg::Auto)]
    pub policy: PolicyArg,
    /// Values of 2α for the family E_{2α,1}(-t^{2α})
    #[arg(long, allow_hyphen_values = true, requires = "t")]
    pub two_alpha: Option<Samples>,
    /// Times t for the family
    #[arg(long, allow_hyphen_values = true)]
    pub t: Option<Samples>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OpKind {
    /// d³/dx³ (u²/2)
    Third,
    /// ν d⁵(u²) + β d³(u²) + γ d(u²)
    Quintic,
    /// d³(u²) + d(u²)
    RosenauHyman,
    /// -a d(u²) - d(u u_xx)
    Odibat,
    /// ν d⁵(uᵖ) + β d³(uⁿ) + γ d(uᵐ) [+ δ d(u u_xx)]
    Custom,
}

#[derive(Debug, Args)]
pub struct InvarianceArgs {
    #[arg(long, value_enum)]
    pub op: OpKind,
    /// monomial:<degree>, trig:<ω> or hyperbolic:<ω> (ω may be sqrt(q))
    #[arg(long, allow_hyphen_values = true)]
    pub basis: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub nu: Option<Scalar>,
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<Scalar>,
    #[arg(long, allow_hyphen_values = true)]
    pub gamma: Option<Scalar>,
    #[arg(long, allow_hyphen_values = true, default_value_t = 2)]
    pub p: u32,
    #[arg(long, allow_hyphen_values = true, default_value_t = 2)]
    pub n: u32,
    #[arg(long, allow_hyphen_values = true, default_value_t = 2)]
    pub m: u32,
    /// Coefficient δ of d(u u_xx) for the custom operator
    #[arg(long, allow_hyphen_values = true)]
    pub convective: Option<Scalar>,
    /// Odibat parameter a
    #[arg(long, allow_hyphen_values = true, default_value = "1")]
    pub a: Scalar,
    #[arg(long, value_enum, default_value_t = TextFormat::Text)]
    pub format: TextFormat,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[command(subcommand)]
    pub family: Family,
}

#[derive(Debug, Args)]
pub struct GridArgs {
    /// Sample points x
    #[arg(long, allow_hyphen_values = true, default_value = "-3:3.01:0.5")]
    pub x: Samples,
    /// Sample times t [default: 0:5.01:0.5, or 0.5:5.01:0.5 for similarity]
    #[arg(long, allow_hyphen_values = true)]
    pub t: Option<Samples>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Subcommand)]
pub enum Family {
    /// (C₀ + C₁x + C₂x² + C₃x³) t^{-α}
    Similarity {
        #[arg(long, allow_hyphen_values = true)]
        alpha: f64,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// C + E_{2α,1}(-μ̄²t^{2α}) cos x - μ̄ t^α E_{2α,α+1}(-μ̄²t^{2α}) sin x
    Quintic {
        #[command(flatten)]
        params: QuinticParams,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Compact wave of D^α u + a d(u²) + d(u u_xx) = 0
    Odibat {
        #[command(flatten)]
        params: OdibatParams,
        #[command(flatten)]
        grid: GridArgs,
    },
}

#[derive(Debug, Args)]
pub struct QuinticParams {
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: f64,
    #[arg(long, allow_hyphen_values = true, default_value_t = 1.0)]
    pub nu: f64,
    #[arg(long, allow_hyphen_values = true, default_value_t = 4.5)]
    pub beta: f64,
    #[arg(long, allow_hyphen_values = true, default_value_t = 2.0)]
    pub gamma: f64,
    #[arg(long = "C", allow_hyphen_values = true, default_value_t = 1.0)]
    pub c: f64,
}

#[derive(Debug, Args)]
pub struct OdibatParams {
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: f64,
    #[arg(long, allow_hyphen_values = true, default_value_t = 1.0)]
    pub a: f64,
    #[arg(long, allow_hyphen_values = true, default_value_t = 1.0)]
    pub c: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TargetArg {
    SimilaritySystem,
    QuinticSystem,
    QuinticPde,
    OdibatPde,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub target: TargetArg,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: f64,
    /// Rate μ̄ of the quintic system
    #[arg(long, allow_hyphen_values = true, default_value_t = 1.0)]
    pub mubar: f64,
    #[arg(long, allow_hyphen_values = true, default_value_t = 1.0)]
    pub nu: f64,
    #[arg(long, allow_hyphen_values = true, default_value_t = 4.5)]
    pub beta: f64,
    #[arg(long, allow_hyphen_values = true, default_value_t = 2.0)]
    pub gamma: f64,
    #[arg(long = "C", allow_hyphen_values = true, default_value_t = 1.0)]
    pub c: f64,
    /// Odibat coefficient a
    #[arg(long, allow_hyphen_values = true, default_value_t = 1.0)]
    pub a: f64,
    /// Odibat speed c
    #[arg(long = "c", allow_hyphen_values = true, default_value_t = 1.0)]
    pub c_speed: f64,
    /// Finest time step
    #[arg(long, allow_hyphen_values = true, default_value_t = 2f64.powi(-11))]
    pub h: f64,
    /// Start of the residual window
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.5)]
    pub t0: f64,
    #[arg(long, allow_hyphen_values = true, default_value_t = 5.0)]
    pub t_end: f64,
    /// Number of coarser grids (h·2, h·4, …) for the order estimate
    #[arg(long, allow_hyphen_values = true, default_value_t = 2)]
    pub refinements: usize,
    /// Spatial sample points (PDE targets)
    #[arg(long, allow_hyphen_values = true)]
    pub x: Option<Samples>,
    #[arg(long, allow_hyphen_values = true)]
    pub tol_analytic: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub tol_numerical: Option<f64>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct FigureArgs {
    #[arg(long, allow_hyphen_values = true, default_value = "1,1.5,2")]
    pub two_alpha: Samples,
    #[arg(long, allow_hyphen_values = true, default_value_t = 10.0)]
    pub t_end: f64,
    /// Time step; the grid 0, dt, …, t_end includes both ends
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.05)]
    pub dt: f64,
    #[arg(long, allow_hyphen_values = true, default_value_t = 1.0)]
    pub mubar: f64,
    #[command(flatten)]
    pub out: OutputArgs,
}

/// Failure of a command: message plus exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: EXIT_USAGE, message: message.into() }
    }
}

impl From<fracwave::Error> for Failure {
    fn from(e: fracwave::Error) -> Self {
        Failure::usage(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::usage(format!("i/o error: {e}"))
    }
}

/// Parse `FRACWAVE_TOL`.
pub fn parse_tolerances(spec: &str) -> Result<Tolerances, String> {
    let mut tol = Tolerances::default();
    let spec = spec.trim();
    if let Ok(v) = spec.parse::<f64>() {
        tol.analytic = v;
        tol.numerical = v;
    } else {
        for part in spec.split(',') {
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| format!("expected key=value in {TOL_ENV}, got {part:?}"))?;
            let v: f64 = v.trim().parse().map_err(|_| format!("bad number {v:?} in {TOL_ENV}"))?;
            match k.trim() {
                "analytic" => tol.analytic = v,
                "numerical" => tol.numerical = v,
                other => return Err(format!("unknown tolerance {other:?} in {TOL_ENV}")),
            }
        }
    }
    if !(tol.analytic > 0.0 && tol.numerical > 0.0) {
        return Err(format!("{TOL_ENV} thresholds must be positive"));
    }
    Ok(tol)
}

/// Run with the tolerance override taken from the environment.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let env = std::env::var(TOL_ENV).ok();
    run_with(args, env.as_deref(), out, err)
}

pub fn run_with<I, T>(args: I, tol_spec: Option<&str>, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    return EXIT_OK;
                }
                _ => EXIT_USAGE,
            };
            let _ = write!(err, "{}", e.render());
            return code;
        }
    };
    let tol = match tol_spec.map(parse_tolerances).transpose() {
        Ok(t) => t.unwrap_or_default(),
        Err(m) => {
            let _ = writeln!(err, "error: {m}");
            return EXIT_USAGE;
        }
    };
    match commands::dispatch(cli.command, tol, out, err) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}
