//! `recalc`: runs the verification suites against a chosen R-matrix.

mod config;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use recalc_core::suite::{self, Context};
use recalc_core::tensor::set_dimension_cap;

use config::{ConfigError, Output, RawConfig, RunConfig};
use report::{Entry, Report};

#[derive(Parser)]
#[command(name = "recalc", version, about = "Exact verification of reflection equation identities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites.
    Run {
        /// standard:N, flip:N, super:m,n or file:PATH
        #[arg(long)]
        rmatrix: String,
        /// exact, specialized:q0 or random:SEED:COUNT (default exact for N ≤ 2, random:1:3 otherwise)
        #[arg(long)]
        qmode: Option<String>,
        /// Comma-separated suite names (default all)
        #[arg(long)]
        checks: Option<String>,
        /// text or json
        #[arg(long, default_value = "text")]
        output: String,
        /// Also write the JSON report here
        #[arg(long)]
        json_out: Option<PathBuf>,
        /// Worker threads, 0 for the default pool
        #[arg(long, default_value_t = 0)]
        workers: usize,
        /// Largest tensor power built; overrides RECALC_CAP_SITES
        #[arg(long)]
        max_sites: Option<usize>,
        #[arg(long, default_value_t = 4)]
        max_m_degree: usize,
        #[arg(long, default_value_t = 4)]
        max_del_degree: usize,
    },
    /// Print the statement a suite verifies.
    Explain { suite: String },
}

fn run(cfg: &RunConfig) -> Result<Report, ConfigError> {
    if let Some(s) = cfg.max_sites {
        set_dimension_cap(cfg.dim().saturating_pow(s as u32));
    }
    let mut entries = Vec::new();
    for (mode, seed) in cfg.qmode.modes() {
        let ctx = Context::new(cfg.source(&mode)?, mode.clone(), cfg.caps);
        let outcomes = suite::run_suites(&cfg.checks, &ctx, cfg.workers).map_err(|e| ConfigError::Other(e.to_string()))?;
        entries.extend(outcomes.into_iter().map(|outcome| Entry { qmode: mode.label(), seed, outcome }));
    }
    Ok(Report::new(cfg.rmatrix.label(), entries))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Explain { suite } => match suite::explain(&suite) {
            Ok(text) => {
                println!("{text}");
                ExitCode::SUCCESS
            }
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(2)
            }
        },
        Command::Run { rmatrix, qmode, checks, output, json_out, workers, max_sites, max_m_degree, max_del_degree } => {
            let raw = RawConfig {
                rmatrix: &rmatrix,
                qmode: qmode.as_deref(),
                checks: checks.as_deref(),
                output: &output,
                workers,
                json_out,
                max_sites,
                env_sites: std::env::var("RECALC_CAP_SITES").ok(),
                max_m_degree,
                max_del_degree,
            };
            let report = match RunConfig::from_raw(raw).and_then(|cfg| run(&cfg).map(|r| (cfg, r))) {
                Ok(x) => x,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            };
            let (cfg, report) = report;
            match cfg.output {
                Output::Text => print!("{}", report.to_text()),
                Output::Json => println!("{}", report.to_json()),
            }
            if let Some(path) = &cfg.json_out {
                if let Err(e) = std::fs::write(path, report.to_json()) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            }
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
    }
}
