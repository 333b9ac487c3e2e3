//! Command-line grammar.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cvtele::numerics::QuadratureSpec;
use cvtele::{Complex64, Cutoff, InputKind, ResourceKind};

#[derive(Debug, Parser)]
#[command(name = "cvtele", version, about = "Teleportation with squeezed and photon-subtracted resources")]
pub struct Cli {
    /// Write the table here instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Directory for `repro` files.
    #[arg(long, global = true, env = "CVTELE_OUT_DIR", default_value = ".")]
    pub out_dir: PathBuf,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closed-form properties of the entangled resources.
    #[command(subcommand)]
    State(StateCommand),
    /// Fidelities, output Wigner functions and thresholds.
    #[command(subcommand)]
    Teleport(TeleportCommand),
    /// Write the data behind a figure or table.
    Repro {
        figure: FigureId,
    },
    /// Run the equivalence and invariant checks.
    Verify {
        tier: Tier,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ResourceArg {
    Tmsv,
    Tps,
}

impl From<ResourceArg> for ResourceKind {
    fn from(arg: ResourceArg) -> Self {
        match arg {
            ResourceArg::Tmsv => ResourceKind::Tmsv,
            ResourceArg::Tps => ResourceKind::Tps,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct ResourceArgs {
    #[arg(long, value_enum, default_value = "tps")]
    pub kind: ResourceArg,
    /// Squeezing parameter.
    #[arg(long, default_value_t = 1.0)]
    pub r: f64,
    /// Squeezing phase.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub phi: f64,
}

#[derive(Debug, Clone, Args)]
pub struct GridArgs {
    /// Points per axis.
    #[arg(long, default_value_t = 121)]
    pub grid: usize,
    /// Half-width of the square sampled.
    #[arg(long, default_value_t = 3.0)]
    pub extent: f64,
}

#[derive(Debug, Clone, Args)]
pub struct ControlArgs {
    /// Initial Gauss-Hermite order; doubled until converged.
    #[arg(long, default_value_t = QuadratureSpec::DEFAULT_ORDER)]
    pub order: usize,
    /// Fock cutoff for oracle computations; automatic when absent.
    #[arg(long)]
    pub cutoff: Option<usize>,
}

impl ControlArgs {
    pub fn cutoff(&self) -> Cutoff {
        self.cutoff.map_or(Cutoff::Auto, Cutoff::Fixed)
    }
}

#[derive(Debug, Subcommand)]
pub enum StateCommand {
    /// W(alpha, beta) on the slice alpha = x, beta = y with x, y real.
    Wigner {
        #[command(flatten)]
        resource: ResourceArgs,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// |psi(x1, x2)|^2 in the rotated quadratures x_{a,b} = (x1 +- x2)/sqrt 2.
    Quadrature {
        #[command(flatten)]
        resource: ResourceArgs,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Probability of n photons in each mode.
    Pnd {
        #[command(flatten)]
        resource: ResourceArgs,
        #[arg(long, default_value_t = 10)]
        nmax: u64,
    },
    /// Squeezing of the summed mode for both resources across r.
    Squeezing {
        #[arg(long, default_value_t = 2.0)]
        rmax: f64,
        #[arg(long, default_value_t = 50)]
        steps: usize,
    },
    /// chi(alpha*, alpha), the slice entering teleportation.
    Chi {
        #[command(flatten)]
        resource: ResourceArgs,
        #[command(flatten)]
        grid: GridArgs,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InputArg {
    Coherent,
    Squeezed,
    Cat,
}

#[derive(Debug, Clone, Args)]
pub struct InputArgs {
    #[arg(long, value_enum, default_value = "cat")]
    pub input: InputArg,
    /// Coherent amplitude, real part.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub alpha0_re: f64,
    /// Coherent amplitude, imaginary part.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub alpha0_im: f64,
    /// Input squeezing.
    #[arg(long, default_value_t = 0.313)]
    pub rho: f64,
    /// Input squeezing phase.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub phase: f64,
}

impl InputArgs {
    pub fn kind(&self) -> InputKind {
        match self.input {
            InputArg::Coherent => InputKind::Coherent {
                alpha0: Complex64::new(self.alpha0_re, self.alpha0_im),
            },
            InputArg::Squeezed => InputKind::SqueezedVacuum {
                rho: self.rho,
                phase: self.phase,
            },
            InputArg::Cat => InputKind::CatLike {
                rho: self.rho,
                phase: self.phase,
            },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RouteArg {
    /// Closed form where one exists.
    Auto,
    Closed,
    Numeric,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ScanQuantity {
    Fidelity,
    W0,
    Negativity,
}

#[derive(Debug, Subcommand)]
pub enum TeleportCommand {
    /// Fidelity by closed form and by quadrature, with their agreement.
    Fidelity {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value = "tps")]
        resource: ResourceArg,
        /// Squeezing values, comma separated.
        #[arg(long, value_delimiter = ',', default_value = "0.5")]
        r: Vec<f64>,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        phi: f64,
        #[command(flatten)]
        controls: ControlArgs,
    },
    /// Output Wigner function on a grid.
    Wigner {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value = "tps")]
        resource: ResourceArg,
        #[arg(long, default_value_t = 0.5)]
        r: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        phi: f64,
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long, value_enum, default_value = "auto")]
        route: RouteArg,
        #[command(flatten)]
        controls: ControlArgs,
    },
    /// Squeezing at which the output Wigner function turns negative at the origin.
    Threshold {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value = "tmsv")]
        resource: ResourceArg,
        #[arg(long, default_value_t = 0.05)]
        r_min: f64,
        #[arg(long, default_value_t = 1.5)]
        r_max: f64,
        #[arg(long, default_value_t = 30)]
        steps: usize,
    },
    /// A teleportation quantity across r.
    Scan {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value = "tps")]
        resource: ResourceArg,
        #[arg(long, value_enum, default_value = "fidelity")]
        quantity: ScanQuantity,
        #[arg(long, default_value_t = 0.05)]
        r_min: f64,
        #[arg(long, default_value_t = 2.0)]
        r_max: f64,
        #[arg(long, default_value_t = 40)]
        steps: usize,
        #[command(flatten)]
        controls: ControlArgs,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FigureId {
    Fig2,
    Fig3,
    Fig4,
    Fig5,
    Fig6,
    Fig7,
    Fig8,
    Fig9,
    Fig10,
    Fig11,
    Fig12,
    Fig13,
    Table1,
}

impl FigureId {
    pub fn name(self) -> String {
        self.to_possible_value().expect("no skipped variants").get_name().to_owned()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Tier {
    /// Reduced parameter grids.
    Fast,
    /// Complete parameter grids.
    Full,
}
