use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pieri_core::{Composition, ParamsKind};

#[derive(Parser, Debug)]
#[command(name = "pieri", version, about = "Exact nonsymmetric Macdonald polynomials and their Pieri rules")]
pub struct Cli {
    /// Increase log verbosity (-v info, -vv debug).
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    pub verbose: u8,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ParamsArg {
    Std,
    Inv,
}

impl From<ParamsArg> for ParamsKind {
    fn from(p: ParamsArg) -> Self {
        match p {
            ParamsArg::Std => ParamsKind::Std,
            ParamsArg::Inv => ParamsKind::Inv,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Op {
    Zi,
    E1,
    En1,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Symbolic,
    Sampled,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ColengthArg {
    Plus,
    PrintedMinus,
}

fn composition(s: &str) -> Result<Composition, String> {
    s.parse().map_err(|e: pieri_core::CoreError| e.to_string())
}

#[derive(Args, Debug)]
pub struct Common {
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,

    /// Directory for the persistent polynomial cache.
    #[arg(long)]
    pub cache_dir: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Nonsymmetric Macdonald polynomial E_eta (std: at (q,t); inv: at (1/q,1/t)).
    #[command(name = "E")]
    E {
        #[arg(long, value_parser = composition)]
        eta: Composition,
        #[arg(long, value_enum, default_value = "std")]
        params: ParamsArg,
        #[command(flatten)]
        common: Common,
    },
    /// Interpolation polynomial E*_eta (std: at (q,t); inv: at (1/q,1/t)).
    #[command(name = "Estar")]
    Estar {
        #[arg(long, value_parser = composition)]
        eta: Composition,
        #[arg(long, value_enum, default_value = "std")]
        params: ParamsArg,
        #[command(flatten)]
        common: Common,
    },
    /// Closed-form expansion of z_i, e_1 or e_{n-1} times E_eta(z; 1/q, 1/t).
    /// With --params std every coefficient is reported at (q,t) instead.
    Expand {
        #[arg(long, value_enum)]
        op: Op,
        #[arg(long, value_parser = composition)]
        eta: Composition,
        /// Variable index for --op zi (1-based).
        #[arg(long)]
        i: Option<usize>,
        #[arg(long, value_enum, default_value = "inv")]
        params: ParamsArg,
        #[command(flatten)]
        common: Common,
    },
    /// Generalized binomial coefficient [nu; eta].
    Binom {
        #[arg(long, value_parser = composition)]
        nu: Composition,
        #[arg(long, value_parser = composition)]
        eta: Composition,
        #[arg(long, value_enum, default_value = "std")]
        params: ParamsArg,
        #[command(flatten)]
        common: Common,
    },
    /// k_eta = E*_eta(eta_bar).
    Keta {
        #[arg(long, value_parser = composition)]
        eta: Composition,
        #[arg(long, value_enum, default_value = "std")]
        params: ParamsArg,
        #[command(flatten)]
        common: Common,
    },
    /// Jack-limit e_1 Pieri coefficients.
    Jack {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        alpha: u32,
        #[arg(long, value_enum, default_value = "e1")]
        op: Op,
        #[arg(long, value_parser = composition)]
        eta: Composition,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Run verification suites.
    Verify(VerifyArgs),
    /// Manage the persistent cache.
    Cache {
        #[command(subcommand)]
        action: CacheAction,
    },
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Comma-separated suite names, or "all".
    #[arg(long, default_value = "all")]
    pub suites: String,
    /// Numbers of variables, comma-separated.
    #[arg(long, value_delimiter = ',', default_value = "1,2,3")]
    pub n: Vec<usize>,
    /// Largest modulus; defaults to 4 for n <= 2 and 3 otherwise.
    #[arg(long)]
    pub max_modulus: Option<u32>,
    #[arg(long, value_enum, default_value = "symbolic")]
    pub mode: ModeArg,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Sample points per case in sampled mode.
    #[arg(long, default_value_t = 3)]
    pub samples: usize,
    /// Worker threads (0: one per core).
    #[arg(long, default_value_t = 0)]
    pub jobs: usize,
    /// Leg-colength convention for eigenvalue checks (debugging aid).
    #[arg(long, value_enum, default_value = "plus", hide = true)]
    pub colength: ColengthArg,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Subcommand, Debug)]
pub enum CacheAction {
    /// Number of records and bytes on disk.
    Stats {
        #[arg(long, default_value = ".pieri-cache")]
        cache_dir: PathBuf,
    },
    /// Delete all records.
    Clear {
        #[arg(long, default_value = ".pieri-cache")]
        cache_dir: PathBuf,
    },
    /// Build and store E* for every composition in range, both orientations.
    Warm {
        #[arg(long, default_value = ".pieri-cache")]
        cache_dir: PathBuf,
        #[arg(long, value_delimiter = ',', default_value = "1,2,3")]
        n: Vec<usize>,
        #[arg(long)]
        max_modulus: Option<u32>,
    },
}
