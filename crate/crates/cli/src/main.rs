use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use toric_chern_cli::{self as cli, Format, Outcome};

#[derive(Parser)]
#[command(name = "toric-chern", version, about = "Exact cohomology and Chern classes of toric varieties")]
struct Args {
    /// Report style.
    #[arg(long, value_enum, global = true, default_value_t = FormatArg::Human)]
    format: FormatArg,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Human,
    Machine,
}

#[derive(Subcommand)]
enum Command {
    /// Check that a fan file describes a smooth complete fan.
    Validate { fan: PathBuf },
    /// Build the twisted fan of a base fan, fiber fan and twisting map.
    Twist { base: PathBuf, fiber: PathBuf, phi: PathBuf },
    /// Betti numbers, h-vector and monomial basis.
    Cohomology { fan: PathBuf },
    /// Total Chern class and Chern numbers.
    Chern { fan: PathBuf },
    /// Compare the bundle formula with the intrinsic total Chern class.
    Compare { base: PathBuf, fiber: PathBuf, phi: PathBuf },
    /// Fixed-point check of the equivariant total Chern class of a pair.
    Equivariant {
        pair: PathBuf,
        /// Highest cohomological degree kept (even); defaults to twice the rank.
        #[arg(long)]
        degree_bound: Option<usize>,
    },
    /// Chern classes of a toric bundle over a presented base.
    Bundle { presentation: PathBuf, lambda: PathBuf, fiber: PathBuf },
    /// Run every check on the built-in corpus.
    Corpus {
        /// Also write the corpus input files into this directory.
        #[arg(long)]
        export: Option<PathBuf>,
    },
}

fn read(path: &Path) -> Result<String, Outcome> {
    std::fs::read_to_string(path).map_err(|e| Outcome { text: format!("error: {}: {e}\n", path.display()), code: 1 })
}

fn run(args: &Args, format: Format) -> Result<Outcome, Outcome> {
    Ok(match &args.command {
        Command::Validate { fan } => cli::cmd_validate(&read(fan)?, format),
        Command::Twist { base, fiber, phi } => cli::cmd_twist(&read(base)?, &read(fiber)?, &read(phi)?, format),
        Command::Cohomology { fan } => cli::cmd_cohomology(&read(fan)?, format),
        Command::Chern { fan } => cli::cmd_chern(&read(fan)?, format),
        Command::Compare { base, fiber, phi } => cli::cmd_compare(&read(base)?, &read(fiber)?, &read(phi)?, format),
        Command::Equivariant { pair, degree_bound } => cli::cmd_equivariant(&read(pair)?, *degree_bound, format),
        Command::Bundle { presentation, lambda, fiber } => {
            cli::cmd_bundle(&read(presentation)?, &read(lambda)?, &read(fiber)?, format)
        }
        Command::Corpus { export } => {
            if let Some(dir) = export {
                cli::export_corpus(dir).map_err(|e| Outcome { text: format!("error: {}: {e}\n", dir.display()), code: 1 })?;
            }
            cli::cmd_corpus(format)
        }
    })
}

fn main() -> ExitCode {
    let args = Args::parse();
    let format = match args.format {
        FormatArg::Human => Format::Human,
        FormatArg::Machine => Format::Machine,
    };
    let out = run(&args, format).unwrap_or_else(|e| e);
    match &args.output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &out.text) {
                eprintln!("error: {}: {e}", path.display());
                return ExitCode::from(1);
            }
        }
        None => print!("{}", out.text),
    }
    ExitCode::from(out.code as u8)
}
