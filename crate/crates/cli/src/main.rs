use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use horn_lab_core::{HornError, Result};
use serde::Serialize;

mod commands;
mod output;
mod parse;

use output::{to_json, Format};

/// Horn's problem, Schur-Horn polytopes and moment-map examples.
///
/// Spectra are comma-separated lists, largest value first.
#[derive(Parser, Debug)]
#[command(name = "horn-lab", version)]
struct Cli {
    #[command(flatten)]
    global: Global,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Master seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub output: Format,

    /// Multiplies the solver's feasibility threshold.
    #[arg(long, global = true, default_value_t = 1.0)]
    pub tolerance_scale: f64,

    /// Write the report to this file instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Diagonals of isospectral orbits.
    #[command(subcommand)]
    SchurHorn(commands::SchurHorn),
    /// Triples of Hermitian matrices summing to zero.
    #[command(subcommand)]
    Horn(commands::Horn),
    /// Littlewood-Richardson coefficients and tensor invariants.
    #[command(subcommand)]
    Lr(commands::Lr),
    /// Flag manifolds and Plücker coordinates.
    #[command(subcommand)]
    Flag(commands::FlagCmd),
    /// Closed polygons with prescribed edge lengths.
    #[command(subcommand)]
    Polygon(commands::Polygon),
    /// Classified level sets of small quotients.
    #[command(subcommand)]
    Examples(commands::Examples),
}

#[derive(Serialize)]
struct ErrorObject<'a> {
    error: &'a str,
    field: Option<&'a str>,
    message: String,
}

fn configure_threads() -> Result<()> {
    let Ok(value) = std::env::var("HORN_LAB_THREADS") else {
        return Ok(());
    };
    let threads: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| HornError::domain("HORN_LAB_THREADS", format!("expected a positive integer, got {value:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| HornError::domain("HORN_LAB_THREADS", e.to_string()))
}

fn run(cli: Cli) -> Result<String> {
    configure_threads()?;
    let g = &cli.global;
    if !(g.tolerance_scale.is_finite() && g.tolerance_scale > 0.0) {
        return Err(HornError::domain("tolerance-scale", "must be a positive finite number"));
    }
    let report = match cli.command {
        Command::SchurHorn(c) => commands::schur_horn(c, g)?,
        Command::Horn(c) => commands::horn(c, g)?,
        Command::Lr(c) => commands::lr(c)?,
        Command::Flag(c) => commands::flag(c, g)?,
        Command::Polygon(c) => commands::polygon(c, g)?,
        Command::Examples(c) => commands::examples(c, g)?,
    };
    Ok(report.render(g.output))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = cli.global.out.clone();
    match run(cli) {
        Ok(text) => match out {
            Some(path) => match fs::write(&path, text) {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => fail(&HornError::domain("out", format!("cannot write {path}: {e}"))),
            },
            None => {
                print!("{text}");
                ExitCode::SUCCESS
            }
        },
        Err(e) => fail(&e),
    }
}

fn fail(e: &HornError) -> ExitCode {
    let obj = ErrorObject {
        error: e.kind(),
        field: e.field(),
        message: e.to_string(),
    };
    print!("{}", to_json(&obj));
    ExitCode::from(2)
}
