//! Command-line front end of the `gn1d` binary.

pub mod commands;
pub mod config;
pub mod output;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::dispersion::ObjectiveComponents;
use crate::error::{Error, Result};
use commands::{AlphaArgs, AlphaMode, DispersionArgs};

pub use commands::{cmd_alpha, cmd_converge, cmd_dispersion, cmd_run, run_config, OUTPUT_DIR_ENV};
pub use config::{load_config, parse_config, PreparedRun, RunConfig, SolverSection};
pub use output::{fmt_num, CsvSink};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USER: i32 = 1;
pub const EXIT_NUMERICAL: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "gn1d", version, about = "One-dimensional Green-Naghdi wave solver")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Mode {
    Global,
    Local,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Objective {
    Phase,
    #[value(name = "phase+group")]
    PhaseGroup,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run a configured scenario and write CSV output.
    Run { config: PathBuf },
    /// Grid refinement study of a solitary-wave config.
    Converge {
        config: PathBuf,
        #[arg(long, default_value_t = 6)]
        levels: usize,
    },
    /// Phase and group velocity ratios against linear theory.
    Dispersion {
        #[arg(long, default_value_t = crate::config::DEFAULT_ALPHA)]
        alpha: f64,
        /// Time step [s].
        #[arg(long, default_value_t = 0.0)]
        dt: f64,
        #[arg(long, default_value_t = 4.0)]
        khmax: f64,
        #[arg(long, default_value_t = 1.0)]
        h0: f64,
        #[arg(long, default_value_t = crate::config::DEFAULT_G)]
        g: f64,
        #[arg(long, default_value_t = 400)]
        points: usize,
    },
    /// Optimal dispersion parameter, single value or swept.
    Alpha {
        #[arg(long, value_enum, default_value_t = Mode::Global)]
        mode: Mode,
        #[arg(long, default_value_t = std::f64::consts::PI)]
        kh0: f64,
        /// Time step [s].
        #[arg(long, default_value_t = 0.0)]
        dt: f64,
        #[arg(long, default_value_t = 4.0)]
        khmax: f64,
        #[arg(long, default_value_t = 1.0)]
        h0: f64,
        #[arg(long, default_value_t = crate::config::DEFAULT_G)]
        g: f64,
        #[arg(long, value_enum, default_value_t = Objective::Phase)]
        objective: Objective,
        /// Sweep dt·sqrt(g/h0) from 0 to this value.
        #[arg(long)]
        sweep_dt: Option<f64>,
        /// Sweep kh0 up to this value (local mode).
        #[arg(long)]
        sweep_kh: Option<f64>,
    },
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<()> {
    match command {
        Command::Run { config } => cmd_run(&config, out),
        Command::Converge { config, levels } => cmd_converge(&config, levels, out),
        Command::Dispersion {
            alpha,
            dt,
            khmax,
            h0,
            g,
            points,
        } => cmd_dispersion(
            &DispersionArgs {
                alpha,
                dt,
                kh_max: khmax,
                h0,
                g,
                points,
            },
            out,
        ),
        Command::Alpha {
            mode,
            kh0,
            dt,
            khmax,
            h0,
            g,
            objective,
            sweep_dt,
            sweep_kh,
        } => cmd_alpha(
            &AlphaArgs {
                mode: match mode {
                    Mode::Global => AlphaMode::Global,
                    Mode::Local => AlphaMode::Local,
                },
                kh0,
                dt,
                kh_max: khmax,
                h0,
                g,
                components: match objective {
                    Objective::Phase => ObjectiveComponents::Phase,
                    Objective::PhaseGroup => ObjectiveComponents::PhaseGroup,
                },
                sweep_dt,
                sweep_kh,
            },
            out,
        ),
    }
}

pub fn exit_code(e: &Error) -> i32 {
    if e.is_numerical() {
        EXIT_NUMERICAL
    } else {
        EXIT_USER
    }
}

/// Parses `args` and runs the command; returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return if e.use_stderr() { EXIT_USER } else { EXIT_OK };
        }
    };
    match dispatch(cli.command, out) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}
