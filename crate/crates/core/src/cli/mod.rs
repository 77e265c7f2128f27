//! The `qcog` command-line front end.
//!
//! Exit codes: 0 success, 1 usage or I/O failure, 2 parse errors, 3 validation errors.

mod report;
mod svg;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::analysis::{sweep_fallacy_map, RangeSpec};
use crate::dsl::{self, ExperimentSpec};

pub use report::{
    float, render, run_spec, simulate_spec, sweep_section, task_section, Section, SWEEP_HEADER,
};
pub use svg::heatmap;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_VALIDATION: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "qcog",
    version,
    about = "Quantum-probability models of judgment"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run every task of an experiment file.
    Run {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Replaces the seed of every simulate task.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Rasterize the fallacy flags over a (theta, theta_a) grid.
    Sweep {
        /// START:END:STEPS
        #[arg(long, allow_hyphen_values = true)]
        theta: RangeSpec,
        /// START:END:STEPS
        #[arg(long = "theta-a", allow_hyphen_values = true)]
        theta_a: RangeSpec,
        #[arg(long, default_value = "0", allow_hyphen_values = true, value_parser = parse_phi)]
        phi: f64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Run the simulate tasks of an experiment file with a given size and seed.
    Simulate {
        file: PathBuf,
        #[arg(long)]
        agents: u64,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_phi(text: &str) -> Result<f64, String> {
    dsl::parse_angle(text)
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn io(path: &Path, e: std::io::Error) -> Self {
        Self {
            code: EXIT_USAGE,
            message: format!("{}: {e}", path.display()),
        }
    }

    fn validation(e: crate::Error) -> Self {
        Self {
            code: EXIT_VALIDATION,
            message: e.to_string(),
        }
    }
}

fn load(path: &Path) -> Result<ExperimentSpec, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::io(path, e))?;
    dsl::parse(&text).map_err(|errors| Failure {
        code: EXIT_PARSE,
        message: errors
            .iter()
            .map(|e| format!("{}:{e}", path.display()))
            .collect::<Vec<_>>()
            .join("\n"),
    })
}

fn emit(bytes: &[u8], path: Option<&Path>, out: &mut dyn Write) -> Result<(), Failure> {
    match path {
        Some(p) => std::fs::write(p, bytes).map_err(|e| Failure::io(p, e)),
        None => out
            .write_all(bytes)
            .map_err(|e| Failure::io(Path::new("<stdout>"), e)),
    }
}

fn execute(command: Command, out: &mut dyn Write) -> Result<(), Failure> {
    match command {
        Command::Run {
            file,
            out: path,
            seed,
        } => {
            let spec = load(&file)?;
            let sections = run_spec(&spec, seed).map_err(Failure::validation)?;
            emit(&render(&sections), path.as_deref(), out)
        }
        Command::Sweep {
            theta,
            theta_a,
            phi,
            out: path,
            svg,
        } => {
            let map = sweep_fallacy_map(&theta, &theta_a, phi).map_err(Failure::validation)?;
            emit(&render(&[sweep_section(&map)]), path.as_deref(), out)?;
            match svg {
                Some(p) => std::fs::write(&p, heatmap(&map)).map_err(|e| Failure::io(&p, e)),
                None => Ok(()),
            }
        }
        Command::Simulate {
            file,
            agents,
            seed,
            out: path,
        } => {
            let spec = load(&file)?;
            let sections = simulate_spec(&spec, agents, seed).map_err(Failure::validation)?;
            emit(&render(&sections), path.as_deref(), out)
        }
    }
}

/// Runs the command line `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}
