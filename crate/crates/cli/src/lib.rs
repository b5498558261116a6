//! Command-line front end for `coop-operad`: composition, analysis, solutions and the
//! seeded verification suites.

pub mod commands;
pub mod error;
pub mod suites;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub use error::{CliError, Result};
use suites::{GameClass, Suite, SuiteConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Debug, Parser)]
#[command(
    name = "coop",
    version,
    about = "Exact composition and analysis of cooperative games"
)]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Insert one game into a player of another, or compose a quotient with one game per player.
    Compose {
        #[arg(long, conflicts_with = "total", required_unless_present = "total")]
        at: Option<String>,
        #[arg(long)]
        total: bool,
        /// Also write the composite game here.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(required = true, num_args = 1..)]
        files: Vec<PathBuf>,
    },
    /// Report class membership with witnesses.
    Analyze {
        file: PathBuf,
        #[arg(long, default_value_t = 2)]
        k: usize,
    },
    /// Shapley and Banzhaf values, the core, and the imputation set.
    Solve {
        file: PathBuf,
        #[command(flatten)]
        concepts: SolveArgs,
    },
    /// Mobius, zeta, dual and derivative transforms.
    Transform {
        #[arg(value_enum)]
        op: TransformOp,
        file: PathBuf,
        /// Player (or comma-separated players) to differentiate at.
        #[arg(long)]
        at: Option<String>,
    },
    /// Express a unanimity game through the bargaining and dictator generators.
    Decompose {
        n: usize,
        /// 1-based members, e.g. `{1,3}`.
        coalition: String,
    },
    /// Run a randomized property suite; exits 1 on a hard violation.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = GameClass::All)]
        class: GameClass,
        #[arg(long, default_value_t = 3)]
        k: usize,
    },
    /// Two-tier weighted majority election with its power indices.
    DemoVoting,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = true)]
pub struct SolveArgs {
    #[arg(long)]
    pub shapley: bool,
    #[arg(long)]
    pub banzhaf: bool,
    #[arg(long)]
    pub core: bool,
    #[arg(long)]
    pub imputations: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TransformOp {
    Mobius,
    /// Reads unanimity coefficients and writes the game.
    Zeta,
    Dual,
    Derivative,
}

/// Rendered command output; `violation` selects exit code 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub text: String,
    pub violation: bool,
}

impl Output {
    fn ok(text: String) -> Self {
        Output {
            text,
            violation: false,
        }
    }
}

pub fn run(cli: &Cli) -> Result<Output> {
    let format = cli.format;
    match &cli.command {
        Command::Compose {
            at,
            total,
            out,
            files,
        } => commands::compose(format, at.as_deref(), *total, files, out.as_deref()),
        Command::Analyze { file, k } => commands::analyze_file(format, file, *k),
        Command::Solve { file, concepts } => commands::solve(format, file, concepts),
        Command::Transform { op, file, at } => {
            commands::transform(format, *op, file, at.as_deref())
        }
        Command::Decompose { n, coalition } => commands::decompose(format, *n, coalition),
        Command::Verify {
            suite,
            trials,
            seed,
            class,
            k,
        } => {
            let config = SuiteConfig {
                trials: *trials,
                seed: *seed,
                class: *class,
                k: *k,
            };
            commands::verify(format, *suite, &config)
        }
        Command::DemoVoting => commands::demo_voting(format),
    }
}
