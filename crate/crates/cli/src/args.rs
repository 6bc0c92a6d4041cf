use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use daisylab::KernelFilter;
use serde::Serialize;

fn kernel(s: &str) -> Result<KernelFilter, String> {
    KernelFilter::parse(s).map_err(|e| e.to_string())
}

#[derive(Parser, Debug)]
#[command(
    name = "daisylab",
    version,
    about = "Daisy Ramsey numbers: verify, construct, search, bound"
)]
#[command(arg_required_else_help = true, propagate_version = true)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "camelCase", tag = "command")]
pub enum Command {
    /// Look for a monochromatic daisy (or level-homogeneous superdaisy).
    Verify(VerifyArgs),
    /// Build a coloring from another one.
    Construct(ConstructArgs),
    /// Exact small Ramsey values or resampling search.
    #[command(subcommand)]
    Search(SearchCommand),
    /// Shift graphs and lattice arc colorings.
    #[command(subcommand)]
    Shift(ShiftCommand),
    /// Local-lemma thresholds, towers and the numeric lemma.
    #[command(subcommand)]
    Bounds(BoundsCommand),
}

#[derive(Args, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct VerifyArgs {
    #[arg(long)]
    pub coloring: PathBuf,
    #[arg(long)]
    pub r: u32,
    #[arg(long)]
    pub m: u32,
    /// any, empty, k=K, simple or simple-k=K
    #[arg(long, default_value = "any", value_parser = kernel)]
    pub kernel: KernelFilter,
    #[arg(long)]
    pub superdaisy: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConstructKind {
    Complement,
    ParitySuperdaisy,
    PrefixVector,
    BlockSum,
    MiddleWindow,
    KernelPin,
    SizeParity,
    /// Uniform random coloring; needs --n, --ell and --seed.
    Random,
}

#[derive(Args, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ConstructArgs {
    pub kind: ConstructKind,
    #[arg(long = "in")]
    pub input: Option<PathBuf>,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long)]
    pub r: Option<u32>,
    #[arg(long)]
    pub k: Option<u32>,
    /// Expected color count of the input (or of the output for `random`).
    #[arg(long)]
    pub ell: Option<u16>,
    #[arg(long)]
    pub n: Option<u32>,
    /// Uniformity for `random`; omitted means a power coloring.
    #[arg(long)]
    pub uniformity: Option<u32>,
    /// Coordinate count for `random`.
    #[arg(long, default_value_t = 1)]
    pub product: u32,
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "camelCase", tag = "mode")]
pub enum SearchCommand {
    /// Least n in a range forcing a monochromatic daisy, by exhaustion.
    Exact(ExactArgs),
    /// Moser-Tardos resampling for a daisy-free coloring of P([n]).
    Lll(LllSearchArgs),
}

#[derive(Args, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ExactArgs {
    #[arg(long)]
    pub r: u32,
    #[arg(long)]
    pub m: u32,
    #[arg(long)]
    pub ell: u16,
    #[arg(long, default_value = "any", value_parser = kernel)]
    pub kernel: KernelFilter,
    #[arg(long)]
    pub n_min: u32,
    #[arg(long)]
    pub n_max: u32,
    /// Wall-clock budget in seconds for the whole range.
    #[arg(long)]
    pub budget: Option<f64>,
    /// Worker threads; defaults to the machine's parallelism.
    #[arg(long)]
    pub threads: Option<usize>,
    #[arg(long)]
    pub superdaisy: bool,
    /// Directory for avoidance certificates, one coloring file per n.
    #[arg(long)]
    pub certificates: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct LllSearchArgs {
    #[arg(long)]
    pub r: u32,
    #[arg(long)]
    pub m: u32,
    #[arg(long)]
    pub ell: u16,
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub seed: u64,
    /// Defaults to ten times the number of daisies on [n].
    #[arg(long)]
    pub max_rounds: Option<u64>,
    /// Where to write the coloring on success.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "camelCase", tag = "mode")]
pub enum ShiftCommand {
    /// Write Sh(n, r) as graph JSON.
    Build {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        r: u32,
        #[arg(long)]
        out: PathBuf,
    },
    /// Exact chromatic number with a certificate.
    Chi {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Lattice arc coloring from an optimal vertex coloring, with the
    /// longest monochromatic directed path per color.
    Fact2 {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        t: u32,
        #[arg(long)]
        d: u32,
    },
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "camelCase", tag = "mode")]
pub enum BoundsCommand {
    /// Least n where the local-lemma condition fails.
    Lll {
        #[arg(long)]
        r: u32,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        ell: u32,
        /// Also evaluate the condition at this n.
        #[arg(long)]
        n: Option<u64>,
    },
    /// t_j(x), or bt_j(x) with --binomial.
    Tower {
        #[arg(long)]
        j: u32,
        #[arg(long)]
        x: u64,
        #[arg(long)]
        binomial: bool,
    },
    /// Certified comparison of the two sides of the numeric lemma.
    Lemma {
        #[arg(long)]
        j: u32,
        /// Rational: a, a/b or a decimal.
        #[arg(long)]
        z: String,
        #[arg(long)]
        mu: String,
        /// Fixed-point bits.
        #[arg(long, default_value_t = 256)]
        precision: u32,
    },
}
