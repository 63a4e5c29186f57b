use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use spinejac::commands::{self, Command, CommandError};
use spinejac_core::Mode;

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Cmd {
    Spines,
    Decompositions,
    Enumerate,
    Classify,
    CheckThm,
    CheckProp35,
    TransformPolarization,
    Verify,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    Semistable,
    Stable,
    Quasistable,
}

/// Stability, spines and S-equivalence for rank-one sheaves on nodal curves.
#[derive(Debug, Parser)]
#[command(name = "spinejac", version)]
struct Cli {
    #[arg(value_enum)]
    command: Cmd,
    /// Dual graph JSON.
    #[arg(long, value_name = "FILE")]
    graph: String,
    /// Polarization JSON: {"chi", "a"} or {"rank", "degrees"}.
    #[arg(long, value_name = "FILE")]
    pol: Option<String>,
    /// Euler characteristic, overriding or supplying `chi`.
    #[arg(long, allow_negative_numbers = true)]
    chi: Option<i64>,
    #[arg(long, value_enum, default_value = "semistable")]
    mode: ModeArg,
    /// Only sheaves whose invertible nodes keep the curve connected.
    #[arg(long)]
    simple_only: bool,
    /// Print the JSON report (default).
    #[arg(long, conflicts_with = "table")]
    json: bool,
    /// Print a human-readable table instead of JSON.
    #[arg(long)]
    table: bool,
}

fn read(path: &str) -> Result<String, CommandError> {
    std::fs::read_to_string(path).map_err(|e| CommandError::Io { path: path.to_owned(), message: e.to_string() })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let command = match cli.command {
        Cmd::Spines => Command::Spines,
        Cmd::Decompositions => Command::Decompositions,
        Cmd::Enumerate => Command::Enumerate,
        Cmd::Classify => Command::Classify,
        Cmd::CheckThm => Command::CheckThm,
        Cmd::CheckProp35 => Command::CheckProp35,
        Cmd::TransformPolarization => Command::TransformPolarization,
        Cmd::Verify => Command::Verify,
    };
    let mode = match cli.mode {
        ModeArg::Semistable => Mode::Semistable,
        ModeArg::Stable => Mode::Stable,
        ModeArg::Quasistable => Mode::Quasistable,
    };
    let outcome = (|| {
        let graph = read(&cli.graph)?;
        let pol = cli.pol.as_deref().map(read).transpose()?;
        let req = commands::parse_request(command, &graph, pol.as_deref(), cli.chi, mode, cli.simple_only)?;
        commands::run(&req)
    })();
    match outcome {
        Ok(report) => {
            if cli.table {
                print!("{}", report.render_table());
            } else {
                println!("{}", report.to_json());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            let err = serde_json::json!({"error": e.code(), "message": e.to_string()});
            eprintln!("{err}");
            ExitCode::from(1)
        }
    }
}
