use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use pbwforge_cli::{demo_lie, max_dim_from_env, run_text, CliError, LieDemo, Report, TaskKind};

/// PBW checks for deformations of cubic Yang-Mills type algebras.
///
/// Exit status: 0 every verdict passed, 1 some verdict failed, 2 invalid
/// input or I/O error, 3 resource limit (see PBWFORGE_MAX_DIM), 4 internal error.
#[derive(Parser)]
#[command(name = "pbwforge", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every task listed in the problem file.
    Run(Io),
    /// Verify the structural identities of a Yang-Mills type algebra.
    Identities(Io),
    /// Decide whether the problem's current gives a PBW deformation.
    CheckCurrent(Io),
    /// Solve the classification stages and compare with the predicted families.
    Classify(Io),
    /// Bounded brute-force comparison of filtered quotient dimensions.
    Oracle(Io),
    /// Graded dimensions of the homogeneous algebra.
    Hilbert(Io),
    /// Enveloping algebra of a 3-dimensional bracket.
    DemoLie {
        which: Demo,
        #[arg(long, default_value_t = 6)]
        n_max: usize,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Args)]
struct Io {
    /// Problem file (JSON).
    #[arg(long)]
    input: PathBuf,
    #[command(flatten)]
    out: Output,
}

#[derive(Args)]
struct Output {
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write dimension tables as TSV.
    #[arg(long)]
    tsv: Option<PathBuf>,
    /// Print a one-line-per-task summary to stderr.
    #[arg(long)]
    summary: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Demo {
    So3,
    Broken,
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Io { path: path.to_owned(), source })
}

fn emit(report: &Report, out: &Output) -> Result<(), CliError> {
    let json = report.to_json();
    match &out.out {
        Some(p) => write(p, &json)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            match stdout.write_all(json.as_bytes()).and_then(|_| stdout.flush()) {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => {
                    return Err(CliError::Io { path: PathBuf::from("<stdout>"), source: e });
                }
                _ => {}
            }
        }
    }
    if let Some(p) = &out.tsv {
        write(p, &report.to_tsv())?;
    }
    if out.summary {
        eprint!("{}", report.summary());
    }
    Ok(())
}

fn run_file(io: &Io, only: Option<TaskKind>, limit: u128) -> Result<Report, CliError> {
    let text = std::fs::read_to_string(&io.input).map_err(|source| CliError::Io { path: io.input.clone(), source })?;
    run_text(&text, only, limit)
}

fn main_inner(cli: Cli) -> Result<bool, CliError> {
    let limit = max_dim_from_env()?;
    let (report, out) = match &cli.command {
        Command::Run(io) => (run_file(io, None, limit)?, &io.out),
        Command::Identities(io) => (run_file(io, Some(TaskKind::Identities), limit)?, &io.out),
        Command::CheckCurrent(io) => (run_file(io, Some(TaskKind::Check), limit)?, &io.out),
        Command::Classify(io) => (run_file(io, Some(TaskKind::Classify), limit)?, &io.out),
        Command::Oracle(io) => (run_file(io, Some(TaskKind::Oracle), limit)?, &io.out),
        Command::Hilbert(io) => (run_file(io, Some(TaskKind::Hilbert), limit)?, &io.out),
        Command::DemoLie { which, n_max, out } => {
            let which = match which {
                Demo::So3 => LieDemo::So3,
                Demo::Broken => LieDemo::Broken,
            };
            (demo_lie(which, *n_max, limit)?, out)
        }
    };
    emit(&report, out)?;
    Ok(report.passed)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match main_inner(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("pbwforge: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
