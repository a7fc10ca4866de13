use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "paradigms", version, about = "Sets, paradigms and their density matrices over finite universes")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Markdown, global = true)]
    pub format: Format,

    #[command(subcommand)]
    pub verb: Verb,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Markdown,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Verb {
    /// Summarize a universe: attributes, completeness, DNF of subsets.
    Universe(UniverseArgs),
    /// Boolean incidence matrices of sets and paradigms.
    Incidence(IncidenceArgs),
    /// Exact classical density matrices.
    Density(DensityArgs),
    /// Complex density matrices and measurement.
    Quantum(QuantumArgs),
    /// Particle statistics tables.
    Stats(StatsArgs),
}

#[derive(Debug, Args)]
pub struct UniverseArgs {
    #[arg(long)]
    pub universe: Option<PathBuf>,
    /// Build a truth-table universe from comma-separated predicate names.
    #[arg(long)]
    pub predicates: Option<String>,
    /// Subsets to report (default: every subset in the document).
    #[arg(long)]
    pub subset: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum IncidenceOp {
    Diag,
    Product,
    Blobsum,
    Meet,
    Negate,
    Indit,
    Sharpen,
}

#[derive(Debug, Args)]
pub struct IncidenceArgs {
    #[arg(value_enum)]
    pub op: IncidenceOp,
    #[arg(long)]
    pub universe: Option<PathBuf>,
    /// Subset name or bit string; repeat for blobsum/meet.
    #[arg(long)]
    pub subset: Vec<String>,
    /// Attribute name, `discrete`, `indiscrete` or blocks like `u1,u3|u2,u4`;
    /// repeat to sharpen in sequence.
    #[arg(long)]
    pub partition: Vec<String>,
    /// Sharpen In(ΔS) instead of In(S×S).
    #[arg(long)]
    pub diag: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DensityOp {
    Diag,
    Paradigm,
    Prob,
    Sharpen,
    Condition,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RhoKind {
    Diag,
    Paradigm,
}

#[derive(Debug, Args)]
pub struct DensityArgs {
    #[arg(value_enum)]
    pub op: DensityOp,
    #[arg(long)]
    pub universe: Option<PathBuf>,
    #[arg(long)]
    pub subset: Option<String>,
    #[arg(long)]
    pub partition: Option<String>,
    /// Point probabilities as comma-separated `num/den` (default: uniform).
    #[arg(long)]
    pub probs: Option<String>,
    /// Density the prob/sharpen/condition operations act on.
    #[arg(long, value_enum, default_value_t = RhoKind::Paradigm)]
    pub rho: RhoKind,
    /// Block to condition on: its attribute value, or its index.
    #[arg(long)]
    pub block: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum QuantumOp {
    Rho,
    Decohere,
    Luders,
    Measure,
    Sample,
    Distinguish,
}

#[derive(Debug, Args)]
pub struct QuantumArgs {
    #[arg(value_enum)]
    pub op: QuantumOp,
    /// Comma-separated complex amplitudes, e.g. `0.7071,0.7071` or `0.5+0.5i,0.7071`.
    #[arg(long, allow_hyphen_values = true)]
    pub psi: Option<String>,
    /// Eigenvalue blocks of basis indices, e.g. `0,2|1,3` (default: discrete).
    #[arg(long)]
    pub partition: Option<String>,
    /// One eigenvalue per block (default: block index).
    #[arg(long, allow_hyphen_values = true)]
    pub eigenvalues: Option<String>,
    /// `identity`, `hadamard`, or a JSON file with `re`/`im` arrays.
    #[arg(long)]
    pub unitary: Option<String>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Act on ρ(Δψ) instead of ρ(ψ).
    #[arg(long)]
    pub decohered: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StatsKind {
    Mb,
    Be,
    Fd,
}

#[derive(Debug, Args)]
pub struct StatsArgs {
    #[arg(value_enum)]
    pub kind: StatsKind,
    /// Comma-separated single-particle state labels.
    #[arg(long)]
    pub states: String,
    #[arg(long)]
    pub particles: usize,
}
