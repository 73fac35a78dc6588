//! `ptnc`: run experiments from TOML configs into CSV, or print the
//! validation report.
//!
//! Exit status: 0 on success, 1 when a validation check fails (or the run
//! itself fails), 2 for configuration errors.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use ptnc_core::experiment::{default_config_path, run, ExperimentConfig, ExperimentId, CONFIG_DIR_ENV};
use ptnc_core::validation::{run_validation, Fault, ValidationOptions, DEFAULT_SEED};
use ptnc_core::Error;

const EXIT_FAILURE: u8 = 1;
const EXIT_CONFIG: u8 = 2;

#[derive(Parser)]
#[command(name = "ptnc", version, about = "PT-symmetric qubit nonclassicality experiments")]
#[command(args_conflicts_with_subcommands = true, arg_required_else_help = true)]
struct Cli {
    /// List the available experiments and exit.
    #[arg(long)]
    list: bool,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand)]
enum Command {
    /// Run one experiment and write its CSV table.
    Run {
        /// Experiment id, see --list.
        experiment: String,
        /// Config file; defaults to <dir>/<experiment>.toml with <dir> from
        /// PTNC_CONFIG_DIR or ./configs.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Output CSV; overrides the config's `output`. Use `-` for stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the analytic-vs-numeric checks and print the report.
    Validate {
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Perturb the beam-splitter unitary by this amount before checking.
        #[arg(long, value_name = "EPS")]
        inject_fault: Option<f64>,
    },
}

fn list() {
    for id in ExperimentId::ALL {
        println!("{:<24} {}", id.as_str(), id.description());
    }
}

fn run_experiment(experiment: &str, config: Option<PathBuf>, out: Option<PathBuf>) -> Result<(), Error> {
    let id: ExperimentId = experiment.parse()?;
    let path = config.unwrap_or_else(|| default_config_path(id));
    let cfg = ExperimentConfig::load(&path)?;
    if cfg.experiment != id {
        return Err(Error::Config(format!(
            "{} describes '{}', not '{id}'",
            path.display(),
            cfg.experiment
        )));
    }
    let table = run(&cfg)?;
    match out.or_else(|| cfg.output.clone()) {
        Some(p) if p.as_os_str() != "-" => {
            table.write_to_path(&p)?;
            eprintln!("{id}: {} rows -> {}", table.len(), p.display());
        }
        _ => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            table.write_csv(&mut lock)?;
            lock.flush()?;
        }
    }
    Ok(())
}

fn exit_for(e: &Error) -> u8 {
    match e {
        Error::Config(_) => EXIT_CONFIG,
        _ => EXIT_FAILURE,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.list {
        list();
        return ExitCode::SUCCESS;
    }
    match cli.command {
        None => {
            list();
            ExitCode::SUCCESS
        }
        Some(Command::Run {
            experiment,
            config,
            out,
        }) => match run_experiment(&experiment, config, out) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("error: {e}");
                if matches!(e, Error::Config(_)) {
                    eprintln!("(config directory can be set with {CONFIG_DIR_ENV})");
                }
                ExitCode::from(exit_for(&e))
            }
        },
        Some(Command::Validate { seed, inject_fault }) => {
            let opts = ValidationOptions {
                seed,
                fault: inject_fault.map(Fault::PerturbedBeamSplitter),
            };
            let report = run_validation(&opts);
            println!("{report}");
            if report.all_passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_FAILURE)
            }
        }
    }
}
