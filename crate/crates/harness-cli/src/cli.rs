use std::path::PathBuf;

use atam_core::DEFAULT_ASSEMBLY_CAP;
use clap::{Args, Parser, Subcommand, ValueEnum};
use iu_tables::DEFAULT_SLOT_CAP;
use supertile_engine::MAX_STEPS;

#[derive(Debug, Parser)]
#[command(name = "atam", version, about = "Tile assembly runs, simulation checks and universal-tile-set tables")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Grow a system with the exact model.
    Run(RunArgs),
    /// Check that a simulator represents a system.
    CheckSim(CheckSimArgs),
    /// Emit the lookup tape, probe table, superside layout and size report.
    IuTables(IuTablesArgs),
    /// Run the supertile lattice on a system.
    IuRun(IuRunArgs),
    /// Draw an assembly dump or a lattice state as SVG.
    Render(RenderArgs),
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be positive".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

/// Options shared by the subcommands.
#[derive(Debug, Clone, Args)]
pub struct RunConfig {
    /// Attachments beyond the seed.
    #[arg(long, default_value_t = 3)]
    pub depth: usize,
    /// Scheduler seed.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = DEFAULT_ASSEMBLY_CAP, value_parser = positive)]
    pub cap_assemblies: usize,
    /// Directory for artifacts. Without it, text goes to stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    pub system: PathBuf,
    #[command(flatten)]
    pub config: RunConfig,
    /// Dump every producible assembly up to the depth.
    #[arg(long)]
    pub all: bool,
    /// Length of the random sequence (defaults to the depth).
    #[arg(long, conflicts_with = "all")]
    pub steps: Option<usize>,
    /// Also write run.svg.
    #[arg(long)]
    pub svg: bool,
}

#[derive(Debug, Args)]
pub struct CheckSimArgs {
    /// The simulated system.
    pub target: PathBuf,
    #[command(flatten)]
    pub config: RunConfig,
    /// Simulator tile system, read through --rep.
    #[arg(long, requires = "rep", conflicts_with_all = ["iu", "identity"])]
    pub simulator: Option<PathBuf>,
    /// Block representation file.
    #[arg(long, requires = "simulator")]
    pub rep: Option<PathBuf>,
    /// Temperature the simulator runs at.
    #[arg(long)]
    pub temperature: Option<u32>,
    /// Check the supertile lattice.
    #[arg(long, conflicts_with = "identity")]
    pub iu: bool,
    /// Check the system against itself at scale 1.
    #[arg(long)]
    pub identity: bool,
}

#[derive(Debug, Args)]
pub struct IuTablesArgs {
    pub system: PathBuf,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Largest number of lookup slots allowed.
    #[arg(long, default_value_t = DEFAULT_SLOT_CAP)]
    pub cap_slots: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    One,
    Exhaustive,
}

#[derive(Debug, Args)]
pub struct IuRunArgs {
    pub system: PathBuf,
    #[command(flatten)]
    pub config: RunConfig,
    #[arg(long, value_enum, default_value_t = ModeArg::One)]
    pub mode: ModeArg,
    /// Event bound for one-run mode.
    #[arg(long, default_value_t = MAX_STEPS)]
    pub steps: usize,
    /// Also write lattice.svg (one-run mode).
    #[arg(long)]
    pub svg: bool,
}

#[derive(Debug, Args)]
pub struct RenderArgs {
    pub system: PathBuf,
    /// Assembly dump to draw. Without it, a one-run lattice is replayed.
    #[arg(long)]
    pub assembly: Option<PathBuf>,
    #[arg(long, default_value_t = 3)]
    pub depth: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = MAX_STEPS)]
    pub steps: usize,
    /// Output SVG path. Without it, the document goes to stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub no_labels: bool,
}
