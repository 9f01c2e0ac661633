use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Parser, Subcommand, ValueEnum};
use liftlab_cli::commands;
use liftlab_cli::input::read_document;
use liftlab_cli::report::Report;
use liftlab_cli::RunOptions;

#[derive(Parser)]
#[command(
    name = "liftlab",
    version,
    about = "Exact checks for liftings, filters and partial magmas"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, value_enum, default_value = "json", global = true)]
    format: Format,
    /// Seed for every randomised check.
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
    #[arg(long, default_value_t = RunOptions::DEFAULT_MAX_ATOMS, global = true)]
    max_atoms: usize,
    #[arg(long, default_value_t = RunOptions::DEFAULT_MAX_ELEMS, global = true)]
    max_elems: usize,
    /// Spread sweeps over all cores. Output is identical either way.
    #[arg(long, global = true)]
    parallel: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Finite measure spaces and set transforms.
    #[command(subcommand)]
    Space(SpaceCommand),
    /// Partial magmas.
    #[command(subcommand)]
    Pm(PmCommand),
    /// Regular categories.
    #[command(subcommand)]
    Cat(CatCommand),
    /// Probe-natural transformations against ultrafilters.
    #[command(subcommand)]
    Yoneda(YonedaCommand),
    /// Run every exhaustive sweep.
    Report,
}

#[derive(Subcommand)]
enum SpaceCommand {
    /// Check a given transform against every property.
    Check { input: PathBuf },
    /// Enumerate and verify all liftings.
    Liftings { input: PathBuf },
    /// Round-trip every lifting through differentiation.
    Theorem1 { input: PathBuf },
}

#[derive(Subcommand)]
enum PmCommand {
    Classify { input: PathBuf },
    Interchange { input: PathBuf },
}

#[derive(Subcommand)]
enum CatCommand {
    Twin { input: PathBuf },
    Natequiv { input: PathBuf },
}

#[derive(Subcommand)]
enum YonedaCommand {
    Roundtrip { input: PathBuf },
}

fn run(cli: &Cli, opts: &RunOptions) -> Result<Report> {
    type Handler = fn(&liftlab_cli::input::InputDocument, &RunOptions) -> Result<Report>;
    let (handler, input): (Handler, &PathBuf) = match &cli.command {
        Command::Report => return Ok(commands::full_report(opts)),
        Command::Space(SpaceCommand::Check { input }) => (commands::space_check, input),
        Command::Space(SpaceCommand::Liftings { input }) => (commands::space_liftings, input),
        Command::Space(SpaceCommand::Theorem1 { input }) => (commands::space_equivalence, input),
        Command::Pm(PmCommand::Classify { input }) => (commands::pm_classify, input),
        Command::Pm(PmCommand::Interchange { input }) => (commands::pm_interchange, input),
        Command::Cat(CatCommand::Twin { input }) => (commands::cat_twin, input),
        Command::Cat(CatCommand::Natequiv { input }) => (commands::cat_natequiv, input),
        Command::Yoneda(YonedaCommand::Roundtrip { input }) => (commands::yoneda, input),
    };
    handler(&read_document(input)?, opts)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let opts = RunOptions {
        seed: cli.seed,
        max_atoms: cli.max_atoms,
        max_elems: cli.max_elems,
        parallel: cli.parallel,
    };
    if opts.max_atoms > RunOptions::DEFAULT_MAX_ATOMS {
        eprintln!(
            "warning: --max-atoms {} may make enumeration very slow",
            opts.max_atoms
        );
    }
    if opts.max_elems > RunOptions::DEFAULT_MAX_ELEMS {
        eprintln!(
            "warning: --max-elems {} may make enumeration very slow",
            opts.max_elems
        );
    }
    match run(&cli, &opts) {
        Ok(report) => {
            let out = match cli.format {
                Format::Json => report.to_json(),
                Format::Text => report.to_text(),
            };
            print!("{out}");
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
