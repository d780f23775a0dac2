//! Command-line definitions. Every option is optional so that values can
//! fall back to the config file before the built-in defaults.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "cavity-cat",
    version,
    about = "Cavity cat-state loss budgets and mode-overlap Monte Carlo"
)]
pub struct Cli {
    /// Master seed for every random draw.
    #[arg(long, global = true)]
    pub seed: Option<u64>,

    /// Write results here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Output format; each command has its own default.
    #[arg(long, value_enum, global = true)]
    pub format: Option<Format>,

    /// `key = value` file supplying defaults for any long option.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        <Format as ValueEnum>::from_str(s, true)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BranchArg {
    Up,
    Dn,
    Both,
}

impl std::str::FromStr for BranchArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        <BranchArg as ValueEnum>::from_str(s, true)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PolarizationArg {
    Circular,
    LinearX,
}

impl std::str::FromStr for PolarizationArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        <PolarizationArg as ValueEnum>::from_str(s, true)
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Reflected, emitted and mirror-lost amplitudes on resonance.
    Amplitudes(AmplitudesArgs),
    /// Loss coefficients and emitted amplitudes against the EIT parameter.
    Figure2(Figure2Args),
    /// Pair mode overlap against separation for several polarization angles.
    Figure3(Figure3Args),
    /// Mean mode mismatch against atom number, with a power-law fit.
    Figure4(Figure4Args),
    /// Loss budget and photon-number limit at the optimal operating point.
    Headline(HeadlineArgs),
    /// Ring-resonator and steady-state cross-checks of the closed forms.
    Xcheck(XcheckArgs),
    /// Collective mode overlap Monte Carlo at one atom number.
    Mc(McArgs),
}

#[derive(Debug, Args)]
pub struct CavityArgs {
    /// Escape efficiency through the coupling mirror.
    #[arg(long)]
    pub eta_esc: Option<f64>,

    /// Cooperativity.
    #[arg(long)]
    pub coop: Option<f64>,
}

#[derive(Debug, Args)]
pub struct AmplitudesArgs {
    #[command(flatten)]
    pub cavity: CavityArgs,

    /// EIT parameter of the transparent branch (>= 1).
    #[arg(long)]
    pub lambda_dn: Option<f64>,

    #[arg(long, value_enum)]
    pub branch: Option<BranchArg>,

    #[arg(long, allow_negative_numbers = true)]
    pub alpha_in: Option<f64>,

    #[arg(long, allow_negative_numbers = true)]
    pub alpha_in_im: Option<f64>,
}

#[derive(Debug, Args)]
pub struct Figure2Args {
    #[command(flatten)]
    pub cavity: CavityArgs,

    /// `lo:hi:n` (log-spaced) or a comma list.
    #[arg(long)]
    pub lambda_grid: Option<String>,
}

#[derive(Debug, Args)]
pub struct Figure3Args {
    /// `lo:hi:n` (linear) or a comma list of k·x values.
    #[arg(long)]
    pub kx_grid: Option<String>,

    /// Comma list of |e·ε| values in [0, 1].
    #[arg(long)]
    pub pol_projections: Option<String>,
}

#[derive(Debug, Args)]
pub struct CloudArgs {
    /// Rms cloud radii along x, y, z.
    #[arg(long)]
    pub sigmas: Option<String>,

    /// Signal wavelength, same unit as the radii.
    #[arg(long)]
    pub wavelength: Option<f64>,

    #[arg(long, value_enum)]
    pub polarization: Option<PolarizationArg>,

    /// Use the geometric-mean radius along every axis.
    #[arg(long)]
    pub isotropic: bool,
}

#[derive(Debug, Args)]
pub struct Figure4Args {
    #[command(flatten)]
    pub cloud: CloudArgs,

    /// `lo:hi` or a comma list of atom numbers (each >= 3).
    #[arg(long)]
    pub n_grid: Option<String>,

    /// Atom number at which to evaluate the fitted power law.
    #[arg(long)]
    pub extrapolate_to: Option<f64>,

    /// Also write the fit summary as JSON to this file.
    #[arg(long)]
    pub summary: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct HeadlineArgs {
    #[command(flatten)]
    pub cavity: CavityArgs,

    /// Evaluate in the limit of a very large EIT parameter instead of at
    /// the optimum.
    #[arg(long)]
    pub large_lambda: bool,
}

#[derive(Debug, Args)]
pub struct XcheckArgs {
    #[command(flatten)]
    pub cavity: CavityArgs,

    /// `lo:hi:n` (log-spaced) or a comma list of finesse values.
    #[arg(long)]
    pub finesse_grid: Option<String>,

    #[arg(long)]
    pub lambda_dn: Option<f64>,

    /// `up` or `dn`.
    #[arg(long, value_enum)]
    pub branch: Option<BranchArg>,

    /// Cavity detuning in units of κ.
    #[arg(long, allow_negative_numbers = true)]
    pub delta_c: Option<f64>,

    /// Signal detuning from the atomic transition in units of γ.
    #[arg(long, allow_negative_numbers = true)]
    pub delta_s: Option<f64>,

    /// Two-photon detuning of the transparent branch; the other branch is
    /// always blockaded.
    #[arg(long, allow_negative_numbers = true)]
    pub delta_2: Option<f64>,

    /// Also write the summary as JSON to this file.
    #[arg(long)]
    pub summary: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct McArgs {
    #[command(flatten)]
    pub cloud: CloudArgs,

    #[arg(long)]
    pub n_atoms: Option<usize>,

    #[arg(long)]
    pub runs: Option<usize>,
}
