use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use quotlab_core::Field;

fn parse_field(s: &str) -> Result<Field, String> {
    s.parse()
        .map_err(|e| format!("{e}; expected Q or Fp:<prime>"))
}

#[derive(Debug, Parser)]
#[command(
    name = "quotlab",
    version,
    about = "Exact experiments on matrix models of Quot schemes and framed sheaves"
)]
pub struct Cli {
    #[command(flatten)]
    pub output: OutputArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Jsonl,
    Csv,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Base seed; task `i` uses ChaCha stream `i` of this seed.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Jsonl)]
    pub format: Format,
    /// Write records here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Leave the timestamp out so repeated runs are byte-identical.
    #[arg(long, global = true)]
    pub no_timestamp: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PointKind {
    /// All matrices zero, `v_j = e_j`; needs `n = r`.
    Punctual,
    /// Diagonal matrices with distinct random supports.
    Etale,
    /// Random stable commuting point.
    Random,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Zariski tangent dimension of the Quot scheme at points.
    Tangent {
        #[arg(long, required_unless_present = "input")]
        m: Option<usize>,
        #[arg(long, required_unless_present = "input")]
        n: Option<usize>,
        #[arg(long, required_unless_present = "input")]
        r: Option<usize>,
        #[arg(long, value_enum, default_value_t = PointKind::Random)]
        point: PointKind,
        /// Representations as JSON lines; replaces `--point`.
        #[arg(long, conflicts_with_all = ["m", "n", "r"])]
        input: Option<PathBuf>,
        #[arg(long, value_parser = parse_field, default_value = "Q")]
        field: Field,
        #[arg(long, default_value_t = 1)]
        samples: usize,
        /// Local dimension to compare against; a default is used where known.
        #[arg(long)]
        expected_dim: Option<usize>,
    },
    /// Compare ker Hess f with ker d2 for f = Tr A1[A2,A3].
    Critcheck {
        #[arg(long, default_value_t = 3)]
        m: usize,
        /// Fixed n; drawn from 1..=3 per sample if absent.
        #[arg(long)]
        n: Option<usize>,
        /// Fixed r; drawn from 1..=2 per sample if absent.
        #[arg(long)]
        r: Option<usize>,
        #[arg(long, value_parser = parse_field, default_value = "Fp:7")]
        field: Field,
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
    /// ADHM data: dimension table or checks at random stable solutions.
    Adhm {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        /// Print (2nr, (r+1)n, n(r-1)) only.
        #[arg(long)]
        dims: bool,
        #[arg(long, value_parser = parse_field, default_value = "Q")]
        field: Field,
        #[arg(long, default_value_t = 1)]
        samples: usize,
    },
    /// Exhaustive count of F_q-points.
    Count {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        q: u32,
        /// Maximum number of tuples to visit.
        #[arg(long, env = "QUOTLAB_BUDGET")]
        budget: Option<u128>,
        /// Resume from and save progress to this file.
        #[arg(long)]
        checkpoint: Option<PathBuf>,
    },
    /// (H, delta)-slope of a framed module.
    Slope {
        #[arg(long = "c1H", allow_hyphen_values = true)]
        c1h: String,
        #[arg(long)]
        eps: u8,
        #[arg(long, allow_hyphen_values = true)]
        delta1: String,
        #[arg(long, allow_hyphen_values = true)]
        rank: String,
    },
    /// Embed two-loop points as ADHM data with j = 0.
    Embed {
        #[arg(long, required_unless_present = "input")]
        n: Option<usize>,
        #[arg(long, required_unless_present = "input")]
        r: Option<usize>,
        /// Two-loop representations as JSON lines.
        #[arg(long, conflicts_with_all = ["n", "r"])]
        input: Option<PathBuf>,
        #[arg(long, value_parser = parse_field, default_value = "Q")]
        field: Field,
        #[arg(long, default_value_t = 1)]
        samples: usize,
    },
}
