use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use hder_cli::commands::{self, read_json, CommandOutput, Workspace};
use hder_cli::CliError;

/// Higher derivations of incidence algebras of finite posets.
#[derive(Debug, Parser)]
#[command(name = "hder", version)]
struct Cli {
    /// Poset file: {"elements": [...], "covers": [[x, y], ...]}
    #[arg(long, global = true)]
    poset: Option<PathBuf>,
    /// Coefficient ring: z, q or zmod:<m>
    #[arg(long, global = true, default_value = "z")]
    ring: String,
    /// Write the result here instead of standard output
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Validate a higher derivation or transitive map record
    Check { record: PathBuf },
    /// Product d' * d'' of two higher derivations
    Mul { left: PathBuf, right: PathBuf },
    /// Group inverse of a higher derivation
    Inv { record: PathBuf },
    /// Random higher derivation of the form Δ_ρ * σ̃
    Gen {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 2)]
        order: usize,
        #[arg(long, default_value_t = 0.5)]
        sparsity: f64,
        #[arg(long, default_value_t = 3)]
        bound: u64,
    },
    /// Split a higher derivation into inner and transitive parts
    Decompose { record: PathBuf },
    /// Check a decomposition against the higher derivation it came from
    Verify { record: PathBuf, decomposition: PathBuf },
}

fn run(cli: &Cli) -> Result<CommandOutput, CliError> {
    let poset = cli
        .poset
        .as_ref()
        .ok_or_else(|| CliError::Format("--poset <file> is required".into()))?;
    let ws = Workspace::load(poset, &cli.ring)?;
    match &cli.command {
        Command::Check { record } => commands::cmd_check(&ws, &read_json(record)?),
        Command::Mul { left, right } => commands::cmd_mul(&ws, &read_json(left)?, &read_json(right)?),
        Command::Inv { record } => commands::cmd_inv(&ws, &read_json(record)?),
        Command::Gen { seed, order, sparsity, bound } => commands::cmd_gen(&ws, *seed, *order, *sparsity, *bound),
        Command::Decompose { record } => commands::cmd_decompose(&ws, &read_json(record)?),
        Command::Verify { record, decomposition } => {
            commands::cmd_verify(&ws, &read_json(record)?, &read_json(decomposition)?)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(output) => {
            match &cli.out {
                Some(path) => {
                    if let Err(e) = fs::write(path, &output.text) {
                        eprintln!("{}: {e}", path.display());
                        return ExitCode::from(1);
                    }
                }
                None => print!("{}", output.text),
            }
            ExitCode::from(output.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
