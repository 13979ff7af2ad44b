//! Command-line front end: evaluate uncertainty bounds on one state, sweep
//! a state parameter into a CSV, reproduce the preset comparison figures,
//! or run the self-check property suite.

mod basis;
mod check;
mod figure;
mod fmt;
mod svg;
mod sweep;

use clap::{Parser, Subcommand};
use qbounds::StateSpec64;
use qbounds::bounds::{Bound, full_report};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Args(String),
    #[error("{0}")]
    Math(String),
    #[error("{0}")]
    Io(String),
    #[error("{failed} of {total} properties failed")]
    CheckFailed { failed: usize, total: usize },
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::CheckFailed { .. } => 1,
            CliError::Args(_) => 2,
            CliError::Math(_) => 3,
            CliError::Io(_) => 4,
        }
    }
}

impl From<qbounds::Error> for CliError {
    fn from(err: qbounds::Error) -> Self {
        use qbounds::Error as E;
        match err {
            E::UnknownBoundName { .. }
            | E::UnknownFamily { .. }
            | E::MissingParam { .. }
            | E::UnknownParam { .. }
            | E::BadSpec { .. }
            | E::ParamOutOfRange { .. } => CliError::Args(err.to_string()),
            _ => CliError::Math(err.to_string()),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "qbounds",
    version,
    about = "Entropic uncertainty bounds with and without quantum memory"
)]
struct Cli {
    /// Output path: CSV file for sweep, directory for figure.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Seed for random state families whose spec omits one, and for check.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Write an SVG line plot next to each CSV.
    #[arg(long, global = true)]
    svg: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate bounds on one state and print a report.
    Bounds {
        /// State spec such as werner:eta=0.5 or ginibre:dA=2,dB=2,seed=7.
        #[arg(long)]
        state: String,

        /// Comma-separated measurement bases: X, Y, Z or custom:<path>.
        #[arg(long, default_value = "X,Z")]
        bases: String,

        /// Comma-separated bound names; defaults to every registered bound.
        #[arg(long)]
        bounds: Option<String>,
    },

    /// Sweep one state parameter over an even grid and write a CSV.
    Sweep {
        /// Template state spec; the swept parameter is overridden per row.
        #[arg(long)]
        state: String,

        /// Name of the parameter to sweep, such as eta or p.
        #[arg(long)]
        param: String,

        #[arg(long)]
        from: f64,

        #[arg(long)]
        to: f64,

        /// Number of grid points, at least 2, endpoints included.
        #[arg(long)]
        steps: usize,

        /// Comma-separated measurement bases: X, Y, Z or custom:<path>.
        #[arg(long, default_value = "X,Z")]
        bases: String,

        /// Comma-separated bound names; defaults to every registered bound.
        #[arg(long)]
        bounds: Option<String>,
    },

    /// Write a preset comparison sweep: fig1, fig2 or fig3.
    Figure {
        /// Preset name.
        name: String,
    },

    /// Run the self-check property suite on seeded random states.
    Check {
        /// Number of sampled states, at least 1.
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
}

fn parse_bounds(text: Option<&str>) -> Result<Vec<Bound>, CliError> {
    match text {
        None => Ok(Bound::ALL.to_vec()),
        Some(list) => list
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|name| Bound::from_name(name).map_err(CliError::from))
            .collect(),
    }
}

fn cmd_bounds(
    state: &str,
    bases_text: &str,
    bounds_text: Option<&str>,
    seed: u64,
) -> Result<(), CliError> {
    let spec = StateSpec64::parse(state, Some(seed))?;
    let rho = spec.build()?;
    let bases = basis::parse_bases(bases_text)?;
    let bounds = parse_bounds(bounds_text)?;
    let report = full_report(&rho, &bases, &bounds)?;

    let labels: Vec<&str> = bases.iter().map(|b| b.label()).collect();
    println!("{:<14} {spec}", "state");
    println!("{:<14} {}", "bases", labels.join(","));
    println!("{:<14} {}", "lhs_entropy", fmt::sig12(report.lhs_entropy));
    println!("{:<14} {}", "lhs_coherence", fmt::sig12(report.lhs_coherence));
    println!();
    println!("{:<14} {:<18} {}", "bound", "value", "gap");
    for ((bound, value), (_, gap)) in report.bounds.iter().zip(&report.gaps) {
        println!("{:<14} {:<18} {}", bound.name(), fmt::sig12(*value), fmt::sig12(*gap));
    }
    println!();

    let names: Vec<&str> = report.bounds.iter().map(|(b, _)| b.name()).collect();
    println!("# lhs_entropy,lhs_coherence,{}", names.join(","));
    let mut row = vec![fmt::sig12(report.lhs_entropy), fmt::sig12(report.lhs_coherence)];
    row.extend(report.bounds.iter().map(|&(_, v)| fmt::sig12(v)));
    println!("{}", row.join(","));
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::Bounds { state, bases, bounds } => {
            cmd_bounds(state, bases, bounds.as_deref(), cli.seed)
        }
        Command::Sweep { state, param, from, to, steps, bases, bounds } => {
            let config = sweep::SweepConfig {
                template: StateSpec64::parse(state, Some(cli.seed))?,
                param: param.clone(),
                from: *from,
                to: *to,
                steps: *steps,
                bases: basis::parse_bases(bases)?,
                bounds: parse_bounds(bounds.as_deref())?,
                extras: Vec::new(),
            };
            let data = sweep::run(&config)?;
            let out = cli.out.clone().unwrap_or_else(|| PathBuf::from("sweep.csv"));
            sweep::write_outputs(&data, &out, cli.svg)
        }
        Command::Figure { name } => {
            let dir = cli.out.clone().unwrap_or_else(|| PathBuf::from("."));
            figure::write(name, Path::new(&dir), cli.svg)
        }
        Command::Check { samples } => check::run(*samples, cli.seed),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}
