use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub const DEFAULT_TOL: f64 = 1e-12;
pub const DEFAULT_SAMPLES: usize = 256;
pub const DEFAULT_RESOLUTION: usize = 256;

#[derive(Debug, Parser)]
#[command(name = "pellarcs", version, about = "Inverse polynomial images made of [-1, 1] and a symmetric arc")]
pub struct Cli {
    /// Series and root-finding tolerance, in (0, 1e-6].
    #[arg(long, global = true, env = "PELLARCS_TOL", default_value_t = DEFAULT_TOL)]
    pub tol: f64,
    /// Write the result here instead of standard output.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    /// Expected output format; rejected when the subcommand emits another one.
    #[arg(long, global = true)]
    pub format: Option<Format>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Svg,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Endpoint a3 = alpha + i beta for a modulus and rotation number.
    Map(MapArgs),
    /// Modulus and rotation number of an endpoint, any quadrant.
    Invert(InvertArgs),
    /// Configuration summary: endpoints, z*, intersection kind, extremal counts.
    Tuple(TupleArgs),
    /// Coefficients of T_n and U_{n-2} with the certified Pell residual.
    Pell(TupleArgs),
    /// Arc samples and the real preimage as CSV polylines.
    Trace(PlotArgs),
    /// Extremal points on the interval and on the arc.
    Extremals(SampledArgs),
    /// Curve z* = 1 in the endpoint plane as CSV.
    Boundary(CountArgs),
    /// Endpoint curves at fixed lambda and at fixed k as CSV.
    Paramcurves(CountArgs),
    /// SVG picture of the interval, the arc, the real preimage and the extremal points.
    Plot(PlotArgs),
}

#[derive(Debug, Args)]
pub struct MapArgs {
    #[arg(long)]
    pub k: f64,
    /// Rotation number in (0, 1); values from 1/2 on give the mirrored endpoint.
    #[arg(long)]
    pub lambda: f64,
}

#[derive(Debug, Args)]
pub struct InvertArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub beta: f64,
}

#[derive(Debug, Args)]
pub struct TupleArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub m: u32,
    #[arg(long)]
    pub k: f64,
}

#[derive(Debug, Args)]
pub struct SampledArgs {
    #[command(flatten)]
    pub tuple: TupleArgs,
    /// Arc samples.
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    pub samples: usize,
}

#[derive(Debug, Args)]
pub struct PlotArgs {
    #[command(flatten)]
    pub tuple: TupleArgs,
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    pub samples: usize,
    /// Grid cells per side for the real preimage.
    #[arg(long, default_value_t = DEFAULT_RESOLUTION)]
    pub resolution: usize,
}

#[derive(Debug, Args)]
pub struct CountArgs {
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    pub samples: usize,
}

impl Command {
    pub fn format(&self) -> Format {
        match self {
            Command::Map(_) | Command::Invert(_) | Command::Tuple(_) | Command::Pell(_) | Command::Extremals(_) => {
                Format::Json
            }
            Command::Trace(_) | Command::Boundary(_) | Command::Paramcurves(_) => Format::Csv,
            Command::Plot(_) => Format::Svg,
        }
    }
}
