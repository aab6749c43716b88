use std::fs;
use std::io::{self, Read};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use daisy_hamming::exec::Exec;
use daisy_hamming::verify::{Suite, SuiteConfig};

mod commands;

#[derive(Parser)]
#[command(name = "daisy", version, about = "Daisy graphs of rooted Hamming graphs")]
struct Cli {
    /// Run every sweep on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// Build the daisy graph generated by a set of vertices.
    Build {
        /// Factor sizes, e.g. `2,2,2`.
        #[arg(long)]
        shape: String,
        /// Root vertex; defaults to the all-zero tuple.
        #[arg(long)]
        root: Option<String>,
        /// A generator; repeat for several.
        #[arg(long = "gen", required = true)]
        generators: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check daisy, isometry and host minimality of a document.
    Check {
        input: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// List the Δ-classes of a document with their root edges.
    Classes {
        input: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Expand along covering sets, or replay a decomposition script.
    Expand {
        /// Graph to expand (omit with --script).
        input: Option<PathBuf>,
        /// A covering set as `;`-separated vertices, or `all`; repeat in order W_0, W_1, ….
        #[arg(long)]
        cover: Vec<String>,
        /// Position of the new coordinate (labeled documents).
        #[arg(long, default_value_t = 1)]
        coord: usize,
        /// Decomposition script to replay.
        #[arg(long, conflicts_with_all = ["input", "cover"])]
        script: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Contract the Δ-class of a coordinate (or the given class of a generic graph).
    Contract {
        input: PathBuf,
        #[arg(long)]
        coord: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Contract down to K1, writing a replayable script.
    Decompose {
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the verification suite.
    Verify {
        #[arg(long, default_value = "quick")]
        suite: Suite,
        #[arg(long)]
        seed: Option<u64>,
        /// Largest host swept by the rooted-graph checks.
        #[arg(long)]
        budget: Option<usize>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Export a document for rendering.
    Export {
        input: PathBuf,
        #[arg(long, value_enum, default_value = "dot")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Outcome of a command that ran to completion.
pub enum Status {
    Ok,
    ChecksFailed,
}

pub fn read_input(path: &Path) -> Result<String> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        return Ok(s);
    }
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

/// Write `text` to `out`, or to stdout without one.
pub fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("cannot write {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<Status> {
    let exec = if cli.sequential { Exec::Sequential } else { Exec::Parallel };
    match cli.command {
        Command::Build {
            shape,
            root,
            generators,
            out,
        } => commands::build(&shape, root.as_deref(), &generators, out.as_deref()),
        Command::Check { input, format } => commands::check(&input, format),
        Command::Classes { input, format } => commands::classes(&input, format),
        Command::Expand {
            input,
            cover,
            coord,
            script,
            out,
        } => match (script, input) {
            (Some(script), _) => commands::replay(&script, out.as_deref()),
            (None, Some(input)) => commands::expand(&input, &cover, coord, out.as_deref()),
            (None, None) => bail!("expand needs an input document or --script"),
        },
        Command::Contract { input, coord, out } => commands::contract(&input, coord, out.as_deref()),
        Command::Decompose { input, out } => commands::decompose(&input, out.as_deref()),
        Command::Verify {
            suite,
            seed,
            budget,
            format,
            out,
        } => {
            let mut config = SuiteConfig::new(suite);
            if let Some(seed) = seed {
                config.seed = seed;
            }
            if let Some(budget) = budget {
                config.budget = budget;
            }
            commands::verify(&config, format, out.as_deref(), exec)
        }
        Command::Export { input, format, out } => commands::export(&input, format, out.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::ChecksFailed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
