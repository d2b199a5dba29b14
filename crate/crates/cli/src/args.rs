use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;

#[derive(Parser, Debug)]
#[command(name = "weightenum", version, about = "Weight enumerators of binary linear codes")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Seed for every randomized step
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, default_value_t = 1)]
    pub threads: usize,
    /// Write the machine-readable result here, with a run manifest beside it
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Print JSON instead of a table
    #[arg(long, global = true)]
    pub json: bool,
    /// Work limit for exact counts, or orbit size for `mc expand`
    #[arg(long, global = true)]
    pub budget: Option<BigUint>,
    /// GA configuration file
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build or describe codes
    #[command(subcommand)]
    Code(CodeCmd),
    /// Genetic weight searches
    #[command(subcommand)]
    Search(SearchCmd),
    /// Exact or approximate counts of one weight
    #[command(subcommand)]
    Count(CountCmd),
    /// Transforms and identities on weight spectra
    #[command(subcommand)]
    Spectrum(SpectrumCmd),
    /// Parametric spectra from weight supports
    #[command(subcommand)]
    System(SystemCmd),
    /// Automorphism groups and congruences
    #[command(subcommand)]
    Group(GroupCmd),
    /// Monte Carlo estimation of one weight count
    #[command(subcommand)]
    Mc(McCmd),
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum CodeKind {
    Qr,
    Cyclic,
    Raw,
}

#[derive(Subcommand, Debug)]
pub enum CodeCmd {
    Build {
        kind: CodeKind,
        #[arg(long)]
        n: Option<u64>,
        /// Append an overall parity bit
        #[arg(long)]
        extended: bool,
        /// Generator polynomial, lowest degree first (cyclic)
        #[arg(long)]
        poly: Option<String>,
        /// Matrix text file (raw)
        #[arg(long)]
        matrix: Option<PathBuf>,
    },
    Info {
        code: PathBuf,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum VariantArg {
    A1,
    A2,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecoderArg {
    Infoset,
    Syndrome,
}

#[derive(Args, Debug, Clone)]
pub struct SearchOpts {
    #[arg(long, value_enum, default_value = "a1")]
    pub variant: VariantArg,
    /// Decoder used by A2
    #[arg(long, value_enum, default_value = "infoset")]
    pub decoder: DecoderArg,
}

#[derive(Subcommand, Debug)]
pub enum SearchCmd {
    Wga {
        code: PathBuf,
        #[arg(long)]
        weight: usize,
        #[command(flatten)]
        opts: SearchOpts,
    },
    Bega {
        code: PathBuf,
        #[command(flatten)]
        opts: SearchOpts,
    },
}

#[derive(Subcommand, Debug)]
pub enum CountCmd {
    M1 {
        code: PathBuf,
        #[arg(long)]
        weight: usize,
    },
    M2 {
        code: PathBuf,
        #[arg(long)]
        weight: usize,
    },
    M3 {
        code: PathBuf,
        #[arg(long)]
        weight: usize,
    },
    Exhaustive {
        code: PathBuf,
    },
    /// Normal approximation to the count of weight j in a primitive BCH code
    Sidelnikov {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        t: u32,
        #[arg(long)]
        j: u64,
        #[arg(long, default_value_t = 6)]
        digits: usize,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModeArg {
    Fsd,
    DoublyEven,
}

#[derive(Subcommand, Debug)]
pub enum SpectrumCmd {
    Exhaustive {
        code: PathBuf,
    },
    /// Spectrum of the dual code; `--k` is the dual's dimension
    Macwilliams {
        spectrum: PathBuf,
        #[arg(long)]
        k: usize,
    },
    /// Complete a QR spectrum from one member of each Pless pair; weights
    /// absent from the file are unknown
    Pless {
        partial: PathBuf,
    },
    /// Extended QR spectrum from the QR spectrum
    Extend {
        spectrum: PathBuf,
    },
    /// Fit the invariant basis to known coefficients
    Gleason {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        mode: ModeArg,
        /// Known coefficient, `w=value`; repeatable
        #[arg(long = "fix", value_name = "W=VALUE")]
        fixes: Vec<String>,
    },
}

#[derive(Subcommand, Debug)]
pub enum SystemCmd {
    Solve {
        #[arg(long)]
        n: usize,
        /// Code dimension; defaults to n/2
        #[arg(long)]
        k: Option<usize>,
        /// The dual support equals the code support
        #[arg(long)]
        self_dual: bool,
        /// Support {0, n} and multiples of 4 in [d, n-d]
        #[arg(long)]
        doubly_even: bool,
        #[arg(long)]
        min_weight: Option<usize>,
        /// Impose A_i = A_{n-i}
        #[arg(long)]
        symmetric: bool,
        /// JSON list of weights of the code
        #[arg(long)]
        support: Option<PathBuf>,
        /// JSON list of weights of the dual
        #[arg(long)]
        dual_support: Option<PathBuf>,
        /// Keep the content-1 parameters instead of the extended QR scaling
        #[arg(long)]
        raw_params: bool,
    },
    Substitute {
        family: PathBuf,
        /// `name=value`; repeatable
        #[arg(long = "set", value_name = "NAME=VALUE")]
        values: Vec<String>,
    },
    Threshold {
        family: PathBuf,
    },
    Lift {
        family: PathBuf,
        #[arg(long)]
        weight: usize,
        #[arg(long)]
        residue: String,
        #[arg(long)]
        modulus: String,
    },
    Bound {
        family: PathBuf,
        #[arg(long = "congruence", required = true)]
        congruences: Vec<PathBuf>,
    },
    Select {
        congruence: PathBuf,
        /// Estimate of the parameter, as `a/b` or a decimal
        #[arg(long)]
        estimate: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum GroupCmd {
    /// Generators of PSL(2, p) on the extended QR coordinates
    Psl2 {
        #[arg(long)]
        n: u64,
    },
    FixedSubcode {
        code: PathBuf,
        /// Group file; all its generators are used
        #[arg(long)]
        group: Option<PathBuf>,
        /// Permutation as a JSON image list; repeatable
        #[arg(long = "perm")]
        perms: Vec<String>,
    },
    OrderElement {
        #[arg(long)]
        group: PathBuf,
        #[arg(long)]
        q: u64,
        #[arg(long, default_value_t = 100_000)]
        attempts: usize,
    },
    Congruence {
        code: PathBuf,
        #[arg(long)]
        group: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        weights: Vec<usize>,
        /// Subcode counts `{"H2": {"28": "144"}, ...}` used instead of
        /// enumeration
        #[arg(long)]
        inject: Option<PathBuf>,
        #[arg(long, default_value_t = 26)]
        max_dimension: usize,
        #[arg(long, default_value_t = 100_000)]
        attempts: usize,
    },
    Crt {
        /// `residue:modulus`; repeatable
        #[arg(long = "residue", value_name = "R:M", required = true)]
        residues: Vec<String>,
    },
}

#[derive(Args, Debug, Clone)]
pub struct StabilityArgs {
    #[arg(long, default_value_t = 100)]
    pub batch: usize,
    #[arg(long, default_value_t = 10)]
    pub window: usize,
    #[arg(long, default_value_t = 0.01)]
    pub tolerance: f64,
    #[arg(long, default_value_t = 1_000_000)]
    pub max_samples: usize,
}

#[derive(Subcommand, Debug)]
pub enum McCmd {
    /// Spread witnesses of one weight by random group elements
    Expand {
        code: PathBuf,
        #[arg(long)]
        group: PathBuf,
        /// Witness archive from `search`
        #[arg(long)]
        witnesses: PathBuf,
        #[arg(long)]
        weight: usize,
    },
    Distinct {
        archive: PathBuf,
        #[arg(long)]
        code: PathBuf,
        #[command(flatten)]
        rule: StabilityArgs,
    },
    Dominance {
        archive: PathBuf,
        #[arg(long)]
        code: PathBuf,
        #[command(flatten)]
        rule: StabilityArgs,
    },
    /// `round(distinct * rate)`, or both estimates from an archive
    Estimate {
        archive: Option<PathBuf>,
        #[arg(long)]
        code: Option<PathBuf>,
        #[arg(long)]
        distinct: Option<BigUint>,
        #[arg(long)]
        rate: Option<String>,
        #[command(flatten)]
        rule: StabilityArgs,
    },
}
