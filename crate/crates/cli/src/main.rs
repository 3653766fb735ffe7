use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use qhopf_cli::{output, CliError, ExperimentConfig, Params, SubcommandName, EXIT_USAGE};

#[derive(Debug, Parser)]
#[command(
    name = "qhopf",
    version,
    about = "Deformed Hopf algebra and thermofield experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Hopf-algebra relations on a theta grid.
    AlgebraCheck(Params),
    /// Bogoliubov pair residuals, generator and translation.
    BogoliubovDemo(Params),
    /// Amplitudes, occupation and entropy of a theta-vacuum.
    Vacuum(Params),
    /// Vacuum overlap against the number of modes.
    OverlapScan(Params),
    /// Pair-sector weights and partial sums.
    Weights(Params),
    /// Free-energy curve and its stationary angle.
    FreeEnergy(Params),
    /// Sector weights, Schmidt ranks and reduced entropies.
    Entangle(Params),
    /// Evolution trace along a theta schedule.
    Dissipate(Params),
    /// Every acceptance criterion; exit code names the first failure.
    Acceptance(Params),
    /// Runs the subcommand named in the config file.
    Run(Params),
}

fn resolve(command: Command) -> Result<ExperimentConfig, CliError> {
    let (name, params) = match command {
        Command::AlgebraCheck(p) => (Some(SubcommandName::AlgebraCheck), p),
        Command::BogoliubovDemo(p) => (Some(SubcommandName::BogoliubovDemo), p),
        Command::Vacuum(p) => (Some(SubcommandName::Vacuum), p),
        Command::OverlapScan(p) => (Some(SubcommandName::OverlapScan), p),
        Command::Weights(p) => (Some(SubcommandName::Weights), p),
        Command::FreeEnergy(p) => (Some(SubcommandName::FreeEnergy), p),
        Command::Entangle(p) => (Some(SubcommandName::Entangle), p),
        Command::Dissipate(p) => (Some(SubcommandName::Dissipate), p),
        Command::Acceptance(p) => (Some(SubcommandName::Acceptance), p),
        Command::Run(p) => (None, p),
    };
    let params = params.resolve()?;
    match name {
        Some(n) => ExperimentConfig::new(n, params),
        None => ExperimentConfig::from_params(params),
    }
}

fn execute(command: Command) -> Result<i32, CliError> {
    let config = resolve(command)?;
    let start = Instant::now();
    let report = qhopf_cli::run(&config)?;
    for c in &report.checks {
        eprintln!("{}", c.describe());
    }
    let code = report.exit_code();
    let table = report.finish(&config);
    output::write(&table, &config)?;
    eprintln!("wall time {:.3} s", start.elapsed().as_secs_f64());
    Ok(code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE as u8 } else { 0 });
        }
    };
    match execute(cli.command) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
