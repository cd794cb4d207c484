mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use toric_basic::fan::Mode;

#[derive(Parser)]
#[command(
    name = "toric-basic",
    version,
    about = "Basic cohomology, equivalence and realization of marked fans"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
pub struct Global {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Seed for the randomized cover check.
    #[arg(long, global = true, env = "TORIC_BASIC_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Validation mode: `fast` samples directions, `exact` also intersects
    /// every pair of cones.
    #[arg(long, global = true, value_enum, default_value_t = ModeArg::Fast)]
    pub mode: ModeArg,
    /// Worker threads for multi-file commands (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    pub jobs: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum ModeArg {
    Fast,
    Exact,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Fast => Mode::Fast,
            ModeArg::Exact => Mode::Exact,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Check the fan axioms.
    Validate { files: Vec<PathBuf> },
    /// Basic Betti numbers of the canonical foliation.
    Betti {
        files: Vec<PathBuf>,
        /// Also print the ring presentation.
        #[arg(long)]
        ring: bool,
        /// Also print the multiplication table on standard monomials.
        #[arg(long)]
        cup: bool,
        #[arg(long, hide = true)]
        debug_hvector: bool,
    },
    /// Decide marked-fan isomorphism (p-equivalence).
    Iso { first: PathBuf, second: PathBuf },
    /// Build moment-angle data realizing a marked fan.
    Realize {
        file: PathBuf,
        /// Write the realization JSON here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Koszul homology of the linear forms on the face ring.
    Koszul {
        files: Vec<PathBuf>,
        /// Largest internal degree (default: the fan dimension).
        #[arg(long)]
        max_degree: Option<usize>,
    },
    /// Write the bundled example fans.
    Corpus {
        #[arg(long, default_value = "corpus")]
        out: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let g = cli.global;
    let code = match cli.command {
        Command::Validate { files } => commands::validate(&g, &files),
        Command::Betti {
            files,
            ring,
            cup,
            debug_hvector,
        } => commands::betti(&g, &files, ring, cup, debug_hvector),
        Command::Iso { first, second } => commands::iso(&g, &first, &second),
        Command::Realize { file, out } => commands::realize(&g, &file, out.as_deref()),
        Command::Koszul { files, max_degree } => commands::koszul(&g, &files, max_degree),
        Command::Corpus { out } => commands::corpus(&g, &out),
    };
    ExitCode::from(code)
}
