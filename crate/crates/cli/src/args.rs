use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "kappa",
    version,
    about = "Annular refinement κ of the transverse element for braid closures"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Directory for cached results.
    #[arg(long, global = true, env = "KAPPA_CACHE_DIR")]
    pub cache_dir: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// κ of the braid closure.
    Kappa(JobArgs),
    /// κ̃_p in the reduced subcomplex at a basepoint.
    KappaSub(JobArgs),
    /// κ̲_p in the reduced quotient complex at a basepoint.
    KappaQuot(JobArgs),
    /// The transverse element and its gradings.
    Psi(JobArgs),
    /// Annular Khovanov homology dimensions.
    Skh(JobArgs),
    /// Dimension of a spectral-sequence page at one trigrading.
    Ss(JobArgs),
    /// Decide whether the braid word is the identity.
    WordProblem(JobArgs),
    /// Certify right-veering when κ ≠ 2.
    Veering(JobArgs),
    /// Obstruct negative destabilization when κ ≠ 2.
    Destab(JobArgs),
    /// Run one job per line of a file (`n : w1 w2 ...`), printing JSON lines.
    Batch(BatchArgs),
}

/// Options shared by every single-braid job.
#[derive(Debug, Clone, Default, Args)]
pub struct JobOptions {
    /// Basepoint `position,gap` for the reduced commands.
    #[arg(long)]
    pub basepoint: Option<String>,

    /// Spectral-sequence page r ≥ 1.
    #[arg(long, default_value_t = 1)]
    pub page: u32,

    /// Homological grading (default 0).
    #[arg(long, allow_hyphen_values = true)]
    pub h: Option<i64>,

    /// Quantum grading (default: the self-linking number).
    #[arg(long, allow_hyphen_values = true)]
    pub q: Option<i64>,

    /// Annular grading (default −n).
    #[arg(long, allow_hyphen_values = true)]
    pub k: Option<i64>,

    /// Print the realizing chain as (resolution, labels) bitmask pairs.
    #[arg(long)]
    pub witness: bool,
}

#[derive(Debug, Args)]
pub struct JobArgs {
    /// Number of strands (default: one more than the largest generator).
    #[arg(long, short = 'n')]
    pub strands: Option<usize>,

    /// Letters ±i separated by commas or spaces, e.g. "1,-2,1".
    #[arg(long, short = 'w', allow_hyphen_values = true)]
    pub word: String,

    /// Print one JSON object instead of text.
    #[arg(long)]
    pub json: bool,

    #[command(flatten)]
    pub options: JobOptions,
}

#[derive(Debug, Args)]
pub struct BatchArgs {
    /// Input file, one `n : w1 w2 ...` braid per line; `#` starts a comment.
    pub file: PathBuf,

    /// Job to run on every line.
    #[arg(long, value_enum, default_value_t = JobKind::Kappa)]
    pub command: JobKind,

    #[command(flatten)]
    pub options: JobOptions,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, ValueEnum)]
pub enum JobKind {
    Kappa,
    KappaSub,
    KappaQuot,
    Psi,
    Skh,
    Ss,
    WordProblem,
    Veering,
    Destab,
}

impl JobKind {
    pub fn name(self) -> &'static str {
        match self {
            JobKind::Kappa => "kappa",
            JobKind::KappaSub => "kappa-sub",
            JobKind::KappaQuot => "kappa-quot",
            JobKind::Psi => "psi",
            JobKind::Skh => "skh",
            JobKind::Ss => "ss",
            JobKind::WordProblem => "word-problem",
            JobKind::Veering => "veering",
            JobKind::Destab => "destab",
        }
    }

    pub fn is_reduced(self) -> bool {
        matches!(self, JobKind::KappaSub | JobKind::KappaQuot)
    }
}
