use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use hybridnet::golden::{reference_config, run_golden, Calibration, Figure};
use hybridnet::sweep::{run_sweep, Engine, SweepSpec};
use hybridnet::validate::cross_validate;
use hybridnet::{exit, CliError};
use hybridnet_core::analytic::HybridModel;
use hybridnet_core::config::{db_to_linear, load_config};
use hybridnet_core::montecarlo::MonteCarloConfig;
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "hybridnet",
    version,
    about = "Hybrid terrestrial/LEO downlink calculator"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Association, coverage and rate for one configuration, as JSON.
    Eval {
        #[arg(long)]
        config: PathBuf,
        /// Overrides the configured SINR threshold.
        #[arg(long, allow_hyphen_values = true)]
        gamma_db: Option<f64>,
    },
    /// Sweeps one parameter and writes a CSV file.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        sweep: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Comma-separated engines; overrides the sweep file.
        #[arg(long, value_delimiter = ',')]
        engines: Option<Vec<Engine>>,
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Compares against the reference curves of a figure.
    Golden {
        #[arg(long, value_parser = parse_figure)]
        figure: Figure,
        #[arg(long)]
        calibrate: Option<Calibration>,
    },
    /// Runs the Monte Carlo cross-checks against the closed forms.
    McValidate {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn parse_figure(s: &str) -> Result<Figure, String> {
    s.parse::<u8>()
        .ok()
        .and_then(Figure::from_number)
        .ok_or_else(|| format!("figure must be 3, 4 or 5, got `{s}`"))
}

fn configure_threads() -> Result<(), String> {
    let Ok(v) = std::env::var("HYBRIDNET_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| format!("HYBRIDNET_THREADS must be a positive integer, got `{v}`"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| e.to_string())
}

fn run(command: Command) -> Result<i32, CliError> {
    match command {
        Command::Eval { config, gamma_db } => {
            let mut cfg = load_config(config)?;
            if let Some(db) = gamma_db {
                cfg = cfg.with_threshold(db_to_linear(db));
                cfg.validate()?;
            }
            let model = HybridModel::new(&cfg)?;
            let coverage = model.coverage_total(cfg.sinr_threshold)?;
            let rate = model.rate_total()?;
            let doc = json!({
                "gamma_dB": hybridnet::golden::threshold_db(&cfg),
                "coverage": coverage,
                "rate_bps": rate,
            });
            println!(
                "{}",
                serde_json::to_string_pretty(&doc).expect("serializable")
            );
            Ok(exit::SUCCESS)
        }
        Command::Sweep {
            config,
            sweep,
            out,
            engines,
            trials,
            seed,
        } => {
            let cfg = load_config(config)?;
            let mut spec = SweepSpec::load(sweep)?;
            if let Some(e) = engines {
                spec.engines = e;
            }
            let csv = run_sweep(&cfg, &spec, &MonteCarloConfig::new(trials, seed))?;
            std::fs::write(out, csv)?;
            Ok(exit::SUCCESS)
        }
        Command::Golden { figure, calibrate } => {
            let report = run_golden(&reference_config(), figure, calibrate)?;
            println!("{report}");
            Ok(if report.passed() {
                exit::SUCCESS
            } else {
                exit::GOLDEN
            })
        }
        Command::McValidate {
            config,
            trials,
            seed,
        } => {
            let cfg = load_config(config)?;
            let report = cross_validate(&cfg, &MonteCarloConfig::new(trials, seed))?;
            println!("{report}");
            Ok(if report.passed() {
                exit::SUCCESS
            } else {
                exit::GOLDEN
            })
        }
    }
}

fn main() -> ExitCode {
    // clap's own usage exit code would collide with the numerical one
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            let code = if e.use_stderr() {
                exit::VALIDATION
            } else {
                exit::SUCCESS
            };
            return ExitCode::from(code as u8);
        }
    };
    if let Err(e) = configure_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(exit::VALIDATION as u8);
    }
    match run(cli.command) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
