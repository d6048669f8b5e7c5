use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use linkform::DEFAULT_CAP;
use linkform_cli::{run, CliError, Command, JobSpec, Options};

/// Exact torsion linking forms on finite abelian groups.
///
/// Reads a JSON document from --input or standard input and writes a JSON
/// report. Exit statuses: 0 success, 1 internal error, 2 parse error,
/// 3 input or precondition error, 4 enumeration cap exceeded.
#[derive(Debug, Parser)]
#[command(name = "linkform", version)]
struct Cli {
    #[arg(value_enum)]
    command: Command,
    /// Input document (default: standard input).
    #[arg(long)]
    input: Option<PathBuf>,
    /// Output file (default: standard output).
    #[arg(long)]
    output: Option<PathBuf>,
    /// Largest group or subgroup lattice enumerated exhaustively.
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: usize,
    /// Omit witnesses from the report.
    #[arg(long)]
    no_witnesses: bool,
    /// Omit the timing field, for byte-stable output.
    #[arg(long)]
    no_timing: bool,
    /// Print nothing on standard output or standard error; rely on the exit status.
    #[arg(long)]
    quiet: bool,
    /// For verify-example: the value of n, instead of an input document.
    #[arg(long)]
    n: Option<usize>,
}

fn io_error(path: &str, e: io::Error) -> CliError {
    CliError::Io { path: path.into(), message: e.to_string() }
}

fn execute(cli: &Cli) -> Result<(), CliError> {
    let options = Options { cap: cli.cap, witnesses: !cli.no_witnesses, timing: !cli.no_timing };
    let job = match (cli.command, cli.n) {
        (Command::VerifyExample, Some(n)) => JobSpec::verify_example(n, options),
        (_, Some(_)) => return Err(CliError::Parse("--n only applies to verify-example".into())),
        (command, None) => {
            let text = match &cli.input {
                Some(p) => fs::read(p).map_err(|e| io_error(&p.display().to_string(), e))?,
                None => {
                    let mut buf = Vec::new();
                    io::stdin().read_to_end(&mut buf).map_err(|e| io_error("standard input", e))?;
                    buf
                }
            };
            JobSpec::from_document(command, &text, options)?
        }
    };
    let report = run(&job)?.to_json();
    match &cli.output {
        Some(p) => fs::write(p, report).map_err(|e| io_error(&p.display().to_string(), e))?,
        None if !cli.quiet => io::stdout().write_all(report.as_bytes()).map_err(|e| io_error("standard output", e))?,
        None => {}
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            if !cli.quiet {
                eprintln!("linkform: {e}");
            }
            ExitCode::from(e.status() as u8)
        }
    }
}
