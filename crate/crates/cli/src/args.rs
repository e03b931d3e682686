use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

/// Discrete A-homotopy computations on finite simple graphs.
///
/// Graph arguments take a JSON graph file or a standard name such as `C5`,
/// `I2`, `K4` or `Q3`. Map arguments (`--f`, `--g`) take `id`, `const<k>`,
/// a comma-separated assignment like `0,1,0,1`, or a JSON map file.
#[derive(Debug, Parser)]
#[command(name = "ahtop", version)]
pub struct Cli {
    #[command(subcommand)]
    pub verb: Verb,

    /// Cap on enumerated objects (maps, paths, search states, map-graph edges).
    #[arg(long, global = true, default_value_t = ahtop_core::limits::DEFAULT_CAP)]
    pub cap: u64,

    /// Recorded in the report; no command currently samples.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Verb {
    /// Build a standard graph (I_m, C_n, K_n, Q_n) as JSON.
    Make(MakeArgs),
    /// Check that an assignment is a graph map.
    MapCheck(MapArgs),
    /// Decide whether two maps are A-homotopic.
    Homotopy(HomotopyArgs),
    /// Homotopy classes [K, G].
    Classes(ClassesArgs),
    /// Fundamental group of the 3- and 4-cycle filled complex.
    A1(A1Args),
    /// Mapping fiber, optional tower and ladder check.
    Fiber(FiberArgs),
    /// Truncated path or loop graph plus the sublength check.
    Loops(LoopsArgs),
    /// Reduced suspension.
    Suspend(SuspendArgs),
    /// Compare [Σ_l G, H] with [G, Ω_{≤l} H].
    Adjunction(AdjunctionArgs),
    /// Puppe sequence exactness harness.
    Puppe(PuppeArgs),
    /// Render a graph as DOT.
    ExportDot(ExportDotArgs),
}

#[derive(Debug, Args)]
pub struct MakeArgs {
    /// I, C, K or Q.
    #[arg(long)]
    pub family: String,
    #[arg(long)]
    pub size: usize,
}

#[derive(Debug, Args)]
pub struct MapArgs {
    #[arg(long = "G")]
    pub g: String,
    /// Codomain; defaults to the domain.
    #[arg(long = "H")]
    pub h: Option<String>,
    #[arg(long = "f")]
    pub f: String,
    #[arg(long)]
    pub pointed: bool,
}

#[derive(Debug, Args)]
pub struct HomotopyArgs {
    #[arg(long = "G")]
    pub g: String,
    #[arg(long = "H")]
    pub h: Option<String>,
    #[arg(long = "f")]
    pub f: String,
    #[arg(long = "g")]
    pub other: String,
    #[arg(long)]
    pub pointed: bool,
    /// `homotopic` or `not-homotopic`; a mismatch exits with status 1.
    #[arg(long)]
    pub expect: Option<String>,
}

#[derive(Debug, Args)]
pub struct ClassesArgs {
    /// Probe graph.
    #[arg(long = "K")]
    pub k: String,
    #[arg(long = "G")]
    pub g: String,
    #[arg(long)]
    pub pointed: bool,
}

#[derive(Debug, Args)]
pub struct A1Args {
    #[arg(long = "G")]
    pub g: String,
    /// Tietze elimination steps.
    #[arg(long, default_value_t = 1000)]
    pub budget: usize,
    /// `trivial` or `nontrivial`.
    #[arg(long)]
    pub expect: Option<String>,
}

/// A pointed map given either as a map file or as `--G`/`--H`/`--f`.
#[derive(Debug, Args)]
pub struct MapSource {
    /// JSON map file.
    #[arg(long, conflicts_with_all = ["g", "h", "f"])]
    pub map: Option<String>,
    #[arg(long = "G")]
    pub g: Option<String>,
    #[arg(long = "H")]
    pub h: Option<String>,
    #[arg(long = "f")]
    pub f: Option<String>,
}

#[derive(Debug, Args)]
pub struct FiberArgs {
    #[command(flatten)]
    pub source: MapSource,
    /// Path truncation.
    #[arg(long = "L", default_value_t = 4)]
    pub max_len: usize,
    /// Tower depth, 1 to 3. Deeper stages use `--inner`.
    #[arg(long, default_value_t = 1)]
    pub depth: usize,
    /// Truncation for stages beyond the first.
    #[arg(long, default_value_t = 1)]
    pub inner: usize,
    /// Also check the ladder of homotopy fibers.
    #[arg(long)]
    pub ladder: bool,
    /// Maps visited by the fallback homotopy search in the ladder.
    #[arg(long, default_value_t = 100_000)]
    pub budget: u64,
}

#[derive(Debug, Args)]
pub struct LoopsArgs {
    #[arg(long = "G")]
    pub g: String,
    #[arg(long = "L", default_value_t = 4)]
    pub max_len: usize,
    /// Build the path graph instead of the loop graph.
    #[arg(long)]
    pub paths: bool,
    /// List every vertex trace.
    #[arg(long)]
    pub list: bool,
    /// Sublength bound.
    #[arg(long, default_value_t = 4)]
    pub bound: usize,
    /// `sublength-holds` or `sublength-fails`.
    #[arg(long)]
    pub expect: Option<String>,
}

#[derive(Debug, Args)]
pub struct SuspendArgs {
    #[arg(long = "G")]
    pub g: String,
    #[arg(long = "l", default_value_t = 2)]
    pub levels: usize,
}

#[derive(Debug, Args)]
pub struct AdjunctionArgs {
    #[arg(long = "G")]
    pub g: String,
    #[arg(long = "H")]
    pub h: String,
    #[arg(long = "l", default_value_t = 2)]
    pub levels: usize,
}

#[derive(Debug, Args)]
pub struct PuppeArgs {
    #[command(flatten)]
    pub source: MapSource,
    #[arg(long = "L", default_value_t = 6)]
    pub max_len: usize,
    #[arg(long, default_value_t = 1)]
    pub depth: usize,
    /// Truncation for loops in the fiber and in deeper loop levels.
    #[arg(long, default_value_t = 2)]
    pub inner: usize,
    /// Rechecks of a refuted position, each at L + 2.
    #[arg(long, default_value_t = 1)]
    pub retries: usize,
    /// `default` or a comma-separated list of graph names or files.
    #[arg(long, default_value = "default")]
    pub probes: String,
}

#[derive(Debug, Args)]
pub struct ExportDotArgs {
    #[arg(long = "G")]
    pub g: String,
    /// Graph name in the DOT header.
    #[arg(long, default_value = "G")]
    pub name: String,
}
