use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use euler2d::cli::{cmd_field, cmd_figure, cmd_trajectories, cmd_verify, load_config, CliError};

/// Separated-variables solutions of the 2D incompressible Euler
/// equations: verification suites, particle trajectories and Eulerian
/// field sampling.
#[derive(Parser)]
#[command(name = "euler2d", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every applicable residual check and write report.json.
    Verify {
        /// Configuration file (JSON).
        #[arg(long)]
        config: PathBuf,
        /// Output directory (overrides the config's output.directory).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write particle trajectories as CSV.
    Trajectories {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sample the Eulerian velocity and vorticity field at one time.
    Field {
        #[arg(long)]
        config: PathBuf,
        /// Sampling time.
        #[arg(long, default_value_t = 0.0)]
        t: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verify and emit the data behind a built-in figure configuration.
    Figure {
        /// Figure number, 1..=4.
        #[arg(long)]
        figure: u8,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn run() -> Result<i32, CliError> {
    let cli = Cli::parse();
    match cli.command {
        Command::Verify { config, out } => {
            let cfg = load_config(&config)?;
            cmd_verify(&cfg, out.as_deref())
        }
        Command::Trajectories { config, out } => {
            let cfg = load_config(&config)?;
            cmd_trajectories(&cfg, out.as_deref())
        }
        Command::Field { config, t, out } => {
            let cfg = load_config(&config)?;
            cmd_field(&cfg, t, out.as_deref())
        }
        Command::Figure { figure, out } => cmd_figure(figure, out.as_deref()),
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code as u8),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
