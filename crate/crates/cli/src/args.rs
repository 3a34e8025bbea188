use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "willmin", version, about = "Bending-energy minimization and bubble-forest tools")]
pub struct Cli {
    /// Worker threads for parallel reductions; 1 gives bit-reproducible output.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Append log records to this file instead of standard error.
    #[arg(long, global = true)]
    pub log: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Constrained minimization of a bending energy.
    Minimize(MinimizeArgs),
    /// Energies, area, volume and the Gauss-Bonnet check for a mesh.
    Eval(EvalArgs),
    /// Bubble-forest tools.
    #[command(subcommand)]
    Forest(ForestCommand),
    /// Writes one of the procedural test meshes.
    Fixture(FixtureArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EnergyName {
    Willmore,
    Helfrich,
    Hawking,
}

#[derive(Debug, Args)]
pub struct EnergyArgs {
    #[arg(long, value_enum, default_value = "willmore")]
    pub energy: EnergyName,
    /// Constant spontaneous curvature.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub c: f64,
    /// Coefficient of the nonlocal term.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub b: f64,
    /// Ambient field for the Hawking energy: `none` or `const:<x>`.
    #[arg(long = "P", default_value = "none")]
    pub p_field: String,
}

#[derive(Debug, Args)]
pub struct MinimizeArgs {
    #[arg(long)]
    pub mesh: PathBuf,
    #[command(flatten)]
    pub energy: EnergyArgs,
    /// Target area; defaults to the area of the input mesh.
    #[arg(long)]
    pub area: Option<f64>,
    /// Target enclosed volume.
    #[arg(long)]
    pub volume: Option<f64>,
    #[arg(long, default_value_t = 1e-5)]
    pub gtol: f64,
    #[arg(long, default_value_t = 50)]
    pub max_outer: usize,
    #[arg(long, default_value_t = 500)]
    pub max_inner: usize,
    #[arg(long, default_value_t = 1e-3)]
    pub tol_rel: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Final mesh (OBJ or OFF by extension). The iteration log and summary
    /// go next to it with `.csv` and `.json` extensions.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[arg(long)]
    pub mesh: PathBuf,
    #[command(flatten)]
    pub energy: EnergyArgs,
    /// Also write the JSON report here.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum ForestCommand {
    /// Removes reducible ghosts until every ghost meets three components.
    Reduce {
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Structural checks: bubble tree or forest, valid and irreducible haunting.
    Validate { input: PathBuf },
    /// Exhaustive check of the tree coloring bound.
    Lemma {
        #[arg(long, default_value_t = 10)]
        max_vertices: usize,
    },
    /// Total curvature of a branched closed surface.
    Gb {
        #[arg(long)]
        genus: u32,
        /// Comma-separated branch multiplicities, possibly empty.
        #[arg(long, default_value = "")]
        branches: String,
        /// Also report the branch-point bound for this Willmore energy.
        #[arg(long)]
        willmore: Option<f64>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FixtureKind {
    Icosphere,
    Ellipsoid,
    PerturbedSphere,
    Torus,
}

#[derive(Debug, Args)]
pub struct FixtureArgs {
    #[arg(value_enum)]
    pub kind: FixtureKind,
    /// Subdivision level for sphere-like meshes.
    #[arg(long, default_value_t = 3)]
    pub level: u32,
    /// Semi-axes for ellipsoids, sphere radius for the others.
    #[arg(long, value_delimiter = ',', default_value = "1")]
    pub axes: Vec<f64>,
    /// Relative radial noise for perturbed spheres.
    #[arg(long, default_value_t = 0.05)]
    pub amplitude: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Rescale to this total area.
    #[arg(long)]
    pub area: Option<f64>,
    #[arg(long)]
    pub out: PathBuf,
}
