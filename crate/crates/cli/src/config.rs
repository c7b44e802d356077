use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use deformed_coulomb::oracle::RadialGrid;
use deformed_coulomb::{DeformedCoulombModel, OrderingParams, Picture};

use crate::CliError;

#[derive(Debug, Parser)]
#[command(name = "dcoulomb", version, about = "Bound states of the deformed Coulomb problem")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PictureArg {
    /// Deformed canonical commutators
    Deformed,
    /// Position-dependent mass with ordering (delta, lambda)
    Pdm,
    /// Curved space with metric 1/f^2
    Curved,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Csv => "csv",
        }
    }
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    #[arg(long, value_enum, default_value_t = PictureArg::Deformed, global = true)]
    pub picture: PictureArg,

    /// Nuclear charge
    #[arg(long = "Z", default_value_t = 1.0, global = true, allow_negative_numbers = true)]
    pub z: f64,

    /// Deformation parameter
    #[arg(long, default_value_t = 0.1, global = true, allow_negative_numbers = true)]
    pub alpha: f64,

    /// Ordering parameter delta (pdm only, default 0)
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub delta: Option<f64>,

    /// Ordering parameter lambda (pdm only, default 0)
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub lambda: Option<f64>,

    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,

    /// Output file; stdout when absent. Relative paths resolve against $DCOULOMB_OUTPUT_DIR.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    /// Levels listed when the spectrum is infinite (alpha = 0)
    #[arg(long, default_value_t = 10, global = true)]
    pub levels: usize,

    /// Upper end of the default wavefunction sampling range
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub rho_max: Option<f64>,

    /// Number of wavefunction samples, or the minimum oracle grid size for `verify`
    #[arg(long, global = true)]
    pub n_points: Option<usize>,

    #[arg(long, default_value_t = 1.0, hide = true, global = true)]
    pub tolerance_scale: f64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Full bound-state table sorted by energy
    Spectrum,
    /// Samples of one radial wavefunction with its norm audit
    Wavefn(WavefnArgs),
    /// Runs the self-check suite
    Verify,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Spectrum => "spectrum",
            Command::Wavefn(_) => "wavefn",
            Command::Verify => "verify",
        }
    }
}

#[derive(Debug, Args)]
pub struct WavefnArgs {
    #[arg(long, default_value_t = 0)]
    pub k: u32,

    #[arg(long, default_value_t = 0)]
    pub l: u32,

    /// Comma-separated sample points; defaults to an even grid on (0, rho_max]
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub rho: Vec<f64>,
}

/// Validated parameters shared by every command.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub model: DeformedCoulombModel,
    pub picture: Picture,
    pub format: Format,
    pub output: Option<PathBuf>,
    pub levels: usize,
    pub rho_max: Option<f64>,
    pub n_points: Option<usize>,
    pub tolerance_scale: f64,
}

fn config_error(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}

impl RunConfig {
    pub fn from_args(args: &GlobalArgs) -> Result<Self, CliError> {
        let model = DeformedCoulombModel::new(args.z, args.alpha).map_err(|e| config_error(e.to_string()))?;
        let picture = match args.picture {
            PictureArg::Pdm => {
                let delta = args.delta.unwrap_or(0.0);
                let lambda = args.lambda.unwrap_or(0.0);
                if !delta.is_finite() || !lambda.is_finite() {
                    return Err(config_error("delta and lambda must be finite"));
                }
                Picture::PositionDependentMass(OrderingParams::new(delta, lambda))
            }
            other => {
                if args.delta.is_some() || args.lambda.is_some() {
                    return Err(config_error("--delta and --lambda apply only to --picture pdm"));
                }
                if other == PictureArg::Curved {
                    Picture::CurvedSpace
                } else {
                    Picture::Deformed
                }
            }
        };
        if let Some(r) = args.rho_max {
            if !(r > 0.0 && r.is_finite()) {
                return Err(config_error(format!("--rho-max must be positive and finite, got {r}")));
            }
        }
        if args.n_points == Some(0) {
            return Err(config_error("--n-points must be at least 1"));
        }
        if args.levels == 0 {
            return Err(config_error("--levels must be at least 1"));
        }
        if !(args.tolerance_scale > 0.0 && args.tolerance_scale.is_finite()) {
            return Err(config_error("tolerance scale must be positive and finite"));
        }
        Ok(Self {
            model,
            picture,
            format: args.format,
            output: args.output.clone(),
            levels: args.levels,
            rho_max: args.rho_max,
            n_points: args.n_points,
            tolerance_scale: args.tolerance_scale,
        })
    }

    /// Minimum oracle grid size for `verify`.
    pub fn min_points(&self) -> Result<usize, CliError> {
        match self.n_points {
            None => Ok(2000),
            Some(n) if n >= RadialGrid::MIN_POINTS => Ok(n),
            Some(n) => Err(config_error(format!(
                "--n-points {n} is too small for the grid oracle (minimum {})",
                RadialGrid::MIN_POINTS
            ))),
        }
    }
}
