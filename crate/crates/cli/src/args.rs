//! Command-line grammar.

use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use photonloc_core::analysis::{SuiteName, DEFAULT_SEED};
use photonloc_core::fields::{Axis, Component};
use photonloc_core::wavepacket::PoincareElement;

#[derive(Parser, Debug)]
#[command(name = "photonloc", version, about = "Field-expectation measures of single-photon localization")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Radial cutoff of momentum integrals, in units of sigma_k.
    #[arg(long, global = true)]
    pub kmax: Option<f64>,
    /// Quadrature tolerance; for `check`, replaces every suite tolerance.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    #[arg(long, global = true)]
    pub radial_nodes: Option<usize>,
    /// Polar and azimuthal node count.
    #[arg(long, global = true)]
    pub angular_nodes: Option<usize>,
    /// Output format; `profile` and `tail` default to csv, the rest to json.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true, env = "PHOTONLOC_THREADS")]
    pub threads: Option<usize>,
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Norm, mean four-momentum and mean helicity of a test state.
    State(StateArgs),
    /// Coherent-state field expectation at spacetime points.
    Field(FieldArgs),
    /// Narrow-beam closed forms against quadrature.
    Narrow(NarrowArgs),
    /// Dimensionless spherical-state profile e_i(rho_j) or b_i(rho_j).
    Profile(ProfileArgs),
    /// Invariant suites; exits 1 when a check fails.
    Check(CheckArgs),
    /// Tail envelope, log-slopes and model fits of a profile.
    Tail(TailArgs),
    /// Wigner phase of a rotation or boost acting on a momentum.
    Wigner(WignerArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum StateKind {
    Beam,
    Spherical,
}

#[derive(Args, Debug)]
pub struct StateArgs {
    #[arg(long = "type", value_enum)]
    pub kind: StateKind,
    /// Central momentum of a beam state.
    #[arg(long)]
    pub k_av: Option<f64>,
    #[arg(long)]
    pub sigma_k: f64,
    /// Transformation applied after the previous ones, e.g.
    /// `rotation:0,0,1,0.5`, `boost:0,0,0.3`, `translation:1,0,0,0`,
    /// `parity`, `time_reversal`.
    #[arg(long = "transform", value_parser = parse_transform)]
    pub transforms: Vec<PoincareElement>,
}

#[derive(Args, Debug)]
pub struct FieldArgs {
    #[command(flatten)]
    pub state: StateArgs,
    /// Spacetime point `t,x,y,z`; repeatable.
    #[arg(long = "point", value_parser = parse_four, default_value = "0,0,0,0")]
    pub points: Vec<[f64; 4]>,
}

#[derive(Args, Debug)]
pub struct NarrowArgs {
    #[arg(long)]
    pub k_av: f64,
    #[arg(long)]
    pub sigma_k: f64,
    #[arg(long = "point", value_parser = parse_four, default_value = "0,0,0,0")]
    pub points: Vec<[f64; 4]>,
}

#[derive(Args, Debug)]
pub struct ProfileArgs {
    #[arg(long)]
    pub component: Component,
    #[arg(long)]
    pub axis: Axis,
    #[arg(long, default_value_t = 0.0)]
    pub rho_min: f64,
    #[arg(long, default_value_t = 10.0)]
    pub rho_max: f64,
    #[arg(long, default_value_t = 101)]
    pub points: usize,
    /// Adds the column e(0) exp(-rho^2/4).
    #[arg(long)]
    pub compare_gaussian: bool,
    /// Adds the general 3D quadrature as a column.
    #[arg(long)]
    pub cross_check: bool,
    /// Momentum width behind the general path.
    #[arg(long, default_value_t = 1.0)]
    pub sigma_k: f64,
}

#[derive(Args, Debug)]
pub struct CheckArgs {
    #[arg(long, default_value = "all")]
    pub suite: SuiteName,
}

#[derive(Args, Debug)]
pub struct TailArgs {
    #[arg(long)]
    pub component: Component,
    #[arg(long)]
    pub axis: Axis,
    #[arg(long, default_value_t = 8.0)]
    pub rho_min: f64,
    #[arg(long, default_value_t = 24.0)]
    pub rho_max: f64,
    #[arg(long, default_value_t = 161)]
    pub points: usize,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("element").required(true).args(["rotation", "boost"])))]
pub struct WignerArgs {
    /// Rotation `ax,ay,az,angle`.
    #[arg(long, value_parser = parse_four)]
    pub rotation: Option<[f64; 4]>,
    /// Rapidity vector `zx,zy,zz`.
    #[arg(long, value_parser = parse_three)]
    pub boost: Option<[f64; 3]>,
    /// Photon momentum `kx,ky,kz`.
    #[arg(long, value_parser = parse_three)]
    pub k: [f64; 3],
}

fn parse_list<const N: usize>(s: &str) -> Result<[f64; N], String> {
    let v: Vec<f64> = s
        .split(',')
        .map(|p| p.trim().parse::<f64>().map_err(|e| format!("'{p}': {e}")))
        .collect::<Result<_, _>>()?;
    if v.iter().any(|x| !x.is_finite()) {
        return Err(format!("non-finite value in '{s}'"));
    }
    v.try_into().map_err(|v: Vec<f64>| format!("expected {N} comma-separated numbers, got {}", v.len()))
}

pub fn parse_three(s: &str) -> Result<[f64; 3], String> {
    parse_list(s)
}

pub fn parse_four(s: &str) -> Result<[f64; 4], String> {
    parse_list(s)
}

pub fn parse_transform(s: &str) -> Result<PoincareElement, String> {
    let (kind, rest) = s.split_once(':').unwrap_or((s, ""));
    match kind.trim() {
        "rotation" => {
            let [ax, ay, az, angle] = parse_four(rest)?;
            Ok(PoincareElement::Rotation { axis: [ax, ay, az], angle })
        }
        "boost" => Ok(PoincareElement::Boost { rapidity: parse_three(rest)? }),
        "translation" => Ok(PoincareElement::Translation { a: parse_four(rest)? }),
        "parity" if rest.is_empty() => Ok(PoincareElement::Parity),
        "time_reversal" if rest.is_empty() => Ok(PoincareElement::TimeReversal),
        _ => Err(format!("unknown transform '{s}' (rotation:ax,ay,az,angle | boost:zx,zy,zz | translation:t,x,y,z | parity | time_reversal)")),
    }
}
