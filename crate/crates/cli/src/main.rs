use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rotkin::IntegratorChoice;
use rotkin_cli::commands::{parse_attitude, run_compare, run_deadreckon, run_verify, RunConfig, IDENTITY_ROW_MAJOR};
use rotkin_cli::{CliError, OutputFormat};

/// Attitude dead reckoning from gyro logs.
#[derive(Parser)]
#[command(name = "rotkin", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Integrate a gyro log into an attitude trajectory.
    Deadreckon {
        #[command(flatten)]
        common: Common,
        /// EULER_RAW, EULER_REPROJECT, EXPMAP_BODY or EXPMAP_WORLD.
        #[arg(long, default_value = "EXPMAP_BODY", value_parser = parse_integrator)]
        integrator: IntegratorChoice,
    },
    /// Run every integrator on a log and report drift against EXPMAP_BODY.
    Compare {
        #[command(flatten)]
        common: Common,
    },
    /// Run the randomized property suite.
    Verify {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
struct Common {
    /// Gyro CSV with header t,wx,wy,wz.
    #[arg(long)]
    input: PathBuf,
    /// Initial attitude, 9 comma-separated reals, row-major.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_attitude)]
    init_attitude: Option<[f64; 9]>,
    #[arg(long, value_enum, default_value = "csv")]
    format: OutputFormat,
    /// Output file; stdout when omitted.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Tolerance used to validate the initial attitude.
    #[arg(long, default_value_t = 1e-9)]
    tolerance: f64,
}

fn parse_integrator(s: &str) -> Result<IntegratorChoice, String> {
    s.parse().map_err(|e: rotkin::Error| e.to_string())
}

impl Common {
    fn into_config(self, integrator: IntegratorChoice) -> RunConfig {
        RunConfig {
            input_path: self.input,
            integrator,
            initial_attitude: self.init_attitude.unwrap_or(IDENTITY_ROW_MAJOR),
            output_format: self.format,
            output_path: self.output,
            recovery_tolerance: self.tolerance,
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Deadreckon { common, integrator } => run_deadreckon(&common.into_config(integrator)),
        Command::Compare { common } => run_compare(&common.into_config(IntegratorChoice::ExpmapBody)),
        Command::Verify { seed, output } => run_verify(seed, output.as_ref()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(CliError::Usage(String::new()).exit_code() as u8);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("rotkin: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
