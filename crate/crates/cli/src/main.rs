use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

mod commands;
mod config;
mod document;
mod error;

use commands::Suite;
use config::{Format, Overrides, RunConfig};
use document::ReportDocument;
use error::CliError;

/// Numerical checks for spacetimes realized as sections of the six-dimensional null cone.
#[derive(Parser, Debug)]
#[command(name = "xfield", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    flags: Overrides,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Tabulate the scalar curvature from the embedding against the finite-difference oracle
    Ricci,
    /// Run a verification suite
    Verify {
        #[arg(value_enum)]
        suite: Suite,
    },
    /// Homogeneity degree giving mass m2 on (anti-)de Sitter with the constraint Fφ = 0
    AdsDegree,
}

fn run(cli: Cli) -> Result<ReportDocument, CliError> {
    match cli.command {
        Command::Ricci => commands::ricci(RunConfig::resolve("ricci", &cli.flags)?),
        Command::Verify { suite } => {
            let mut cfg = RunConfig::resolve("verify", &cli.flags)?;
            cfg.command = format!("verify {}", suite_name(suite));
            commands::verify(cfg, suite)
        }
        Command::AdsDegree => commands::ads_degree_cmd(RunConfig::resolve("ads-degree", &cli.flags)?),
    }
}

fn suite_name(s: Suite) -> &'static str {
    match s {
        Suite::Restriction => "restriction",
        Suite::Constraint => "constraint",
        Suite::Ads => "ads",
        Suite::Gms => "gms",
        Suite::All => "all",
    }
}

fn emit(doc: &ReportDocument) -> Result<(), CliError> {
    let text = match doc.config.format {
        Format::Json => doc.to_json()?,
        Format::Csv => doc.to_csv(),
    };
    match &doc.config.out {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn summarize(doc: &ReportDocument) {
    for e in doc.reports.iter().filter(|e| e.gating && !e.pass) {
        eprintln!(
            "FAIL {} [{}]: max_rel_residual {:e} > {:e}",
            e.check, e.family, e.max_rel_residual, e.tolerance
        );
    }
    if let Some(err) = &doc.error {
        eprintln!("error: {}", err.message);
    }
    if let Some(r) = doc.degree {
        eprintln!("r = {r}");
    }
    let gating = doc.reports.iter().filter(|e| e.gating).count();
    let passed = doc.reports.iter().filter(|e| e.gating && e.pass).count();
    if gating > 0 {
        eprintln!("{passed}/{gating} gating checks passed");
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => e.exit(),
    };
    let doc = match run(cli) {
        Ok(doc) => doc,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code());
        }
    };
    if let Err(e) = emit(&doc) {
        eprintln!("error: {e}");
        return ExitCode::from(e.exit_code());
    }
    summarize(&doc);
    if doc.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
