//! Command-line front end: argument parsing, dispatch to the `schlicht`
//! library, and JSON/CSV rendering with a reproducibility header.
//!
//! Exit codes: 0 on success or a passing audit, 1 on a violation or a
//! non-passing verdict, 2 on a usage error.

mod commands;
mod output;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use schlicht::DEFAULT_ORDER;

pub use commands::{dispatch, CliError, Outcome, Status};
pub use output::render;

pub const TOOL: &str = "schlicht";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Parser)]
#[command(
    name = "schlicht",
    version,
    about = "Audits and constructions for the M_{alpha,beta} classes"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

/// Flags accepted by every command.
#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Series truncation order.
    #[arg(long, global = true, env = "SCHLICHT_TRUNC", default_value_t = DEFAULT_ORDER)]
    pub trunc: usize,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write to this file instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, global = true)]
    pub no_timestamp: bool,
    /// Number of evenly spaced rings up to radius 0.95 (default: the standard grid).
    #[arg(long, global = true)]
    pub grid_rings: Option<usize>,
    /// Angles per ring (default 720).
    #[arg(long, global = true)]
    pub grid_angles: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LineArg {
    /// `M_{0,β}`, selected by `--beta`.
    Beta,
    /// `M_{α,1-α}`, selected by `--alpha`.
    Alpha,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ClassArg {
    /// `M_{α,β}` for `--alpha`, `--beta`.
    M,
    Generator,
    StarlikeHalf,
    Convex,
    AHalf,
    /// All four classes of the convex ⇒ starlike-½ ⇒ A_½ ⇒ generator chain.
    Chain,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sharp extremal of a parameter line and its Fekete–Szegő values.
    Extremal {
        #[arg(long, value_enum)]
        line: LineArg,
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long)]
        beta: Option<f64>,
        #[arg(long, default_value_t = 2)]
        k: usize,
    },
    /// Grid-margin membership verdict for a function.
    Membership {
        #[arg(long, value_enum, default_value_t = ClassArg::M)]
        class: ClassArg,
        /// Built-in name (id, koebe, halfplane, neglog) or a JSON series file.
        #[arg(long)]
        function: String,
        #[arg(long, default_value_t = 0.0)]
        alpha: f64,
        #[arg(long, default_value_t = 0.0)]
        beta: f64,
    },
    /// Δ-region classifier: a w-plane table, or the range audit of a function.
    Region {
        #[arg(long, default_value_t = 0.0)]
        alpha: f64,
        #[arg(long, default_value_t = 0.0)]
        beta: f64,
        #[arg(long)]
        function: Option<String>,
    },
    /// Fekete–Szegő bound sweep over a λ-grid for extremals and sampled members.
    Sweep {
        #[arg(long, value_enum)]
        line: LineArg,
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long)]
        beta: Option<f64>,
        /// `default` or a comma list of `re` / `re:im` values.
        #[arg(long, default_value = "default")]
        lambda_grid: String,
        /// Sampled members in addition to the two extremals.
        #[arg(long, default_value_t = 0)]
        trials: usize,
    },
    /// Trajectory of the semigroup generated by a function.
    Semigroup {
        #[arg(long, default_value = "id")]
        function: String,
        /// Start point `re,im`.
        #[arg(long, default_value = "0.5,0")]
        z0: String,
        #[arg(long, default_value_t = 1.0)]
        t_end: f64,
        /// Number of equal output intervals on `[0, t_end]`.
        #[arg(long, default_value_t = 10)]
        steps: usize,
        /// Adds the `M_{α,1-α}` growth bound column.
        #[arg(long)]
        alpha: Option<f64>,
    },
    /// Forward inclusion audit along a parameter line, with a strictness probe.
    AuditFiltration {
        #[arg(long, value_enum)]
        line: LineArg,
        /// Starting parameter on the alpha line.
        #[arg(long)]
        alpha: Option<f64>,
        /// Starting parameter on the beta line.
        #[arg(long)]
        beta: Option<f64>,
        /// Comma list of larger parameters (default: steps of 0.1 up to 1).
        #[arg(long)]
        to: Option<String>,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        /// Larger-class samples tried against the smaller class per target.
        #[arg(long, default_value_t = 20)]
        probe: usize,
    },
    /// Schwarz-function coefficient inequalities on random Blaschke products.
    AuditSchwarz {
        #[arg(long, default_value_t = 10_000)]
        trials: usize,
    },
    /// Semigroup growth bound `|F_t(z)| ≤ e^{((1-2α)/(2α))t}|z|` on sampled members of `M_{α,1-α}`.
    AuditBound {
        #[arg(long)]
        alpha: f64,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        /// Comma list of times.
        #[arg(long, default_value = "0.5,1,2")]
        t_end: String,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Extremal { .. } => "extremal",
            Command::Membership { .. } => "membership",
            Command::Region { .. } => "region",
            Command::Sweep { .. } => "sweep",
            Command::Semigroup { .. } => "semigroup",
            Command::AuditFiltration { .. } => "audit-filtration",
            Command::AuditSchwarz { .. } => "audit-schwarz",
            Command::AuditBound { .. } => "audit-bound",
        }
    }
}

/// Parses `args`, runs the command and writes its artifact; returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return code;
        }
    };
    let outcome = match dispatch(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return e.exit_code();
        }
    };
    let text = match render(&cli, &outcome) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            return 1;
        }
    };
    if let Err(e) = output::emit(cli.common.output.as_deref(), &text) {
        eprintln!("error: writing output: {e}");
        return 1;
    }
    outcome.status.exit_code()
}
