use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;

#[derive(Parser)]
#[command(
    name = "lamplight",
    version,
    about = "Mealy automata of rational series over finite rings"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Ring and the parameters of `f = r(1 - at)/(1 - bt)`.
#[derive(Args, Clone)]
pub struct ParamArgs {
    /// Ring specification, e.g. `zmod:9`, `gr:2:2:2` or `zmod:3*gr:2:1:2`.
    pub ring: String,
    /// Unit scale factor of the series.
    #[arg(long)]
    pub r: String,
    /// Numerator coefficient.
    #[arg(long)]
    pub a: String,
    /// Denominator coefficient.
    #[arg(long)]
    pub b: String,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum Format {
    Json,
    Dot,
    Tsv,
}

#[derive(Subcommand)]
enum Command {
    /// Emit the automaton as JSON, DOT or TSV tables.
    Build {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Write transition.tsv and output.tsv into a directory.
    Tables {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        out: PathBuf,
    },
    /// Emit the automaton as Graphviz DOT.
    Dot {
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Report invertibility, reversibility and the minimal state count.
    Check {
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Run the finite-depth group checks, one JSON line per check.
    Verify {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value_t = 8)]
        depth: usize,
        #[arg(long, default_value_t = 3)]
        level: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of random words compared against the series computation.
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
    /// Decide whether a finite abelian group such as `Z/4 + Z/4` is realizable.
    Classify { group: String },
    /// Apply a state to a comma-separated word.
    Run {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        state: String,
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        word: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Build { params, format } => commands::build(&params, format).map(|s| (s, true)),
        Command::Tables { params, out } => commands::tables(&params, &out).map(|s| (s, true)),
        Command::Dot { params } => commands::build(&params, Format::Dot).map(|s| (s, true)),
        Command::Check { params } => commands::check(&params).map(|s| (s, true)),
        Command::Verify {
            params,
            depth,
            level,
            seed,
            samples,
        } => commands::verify(&params, depth, level, seed, samples),
        Command::Classify { group } => commands::classify(&group).map(|s| (s, true)),
        Command::Run {
            params,
            state,
            word,
        } => commands::run(&params, &state, &word).map(|s| (s, true)),
    };
    match result {
        Ok((out, ok)) => {
            print!("{out}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
