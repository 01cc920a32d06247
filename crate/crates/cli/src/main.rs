use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use opcheck_core::discretize::{convergence_study, write_csv};
use opcheck_core::matcore::Tolerances;
use opcheck_core::runner::{parse_suites, run, RunConfig};
use opcheck_core::theorems::{DimRange, PropertyId};

#[derive(Parser)]
#[command(name = "opcheck", version, about = "Checks operator inequalities and invertibility results on generated matrices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Run property suites, the counterexample registry and the grid study.
    Run {
        /// Comma-separated suite names, `counterexamples`, `discretize` or `all`.
        #[arg(long, default_value = "all")]
        suites: String,
        #[arg(long, default_value_t = 500)]
        trials: usize,
        /// Inclusive dimension range, e.g. `2..8`.
        #[arg(long, default_value = "2..8", value_parser = parse_dims)]
        dims: DimRange,
        #[arg(long, env = "OPCHECK_SEED", default_value_t = 42)]
        seed: u64,
        /// Tolerance override `KEY=VALUE`; repeatable.
        #[arg(long = "tol", value_parser = parse_tol)]
        tol: Vec<(String, f64)>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Worker threads; 0 uses every core.
        #[arg(long, default_value_t = 0)]
        workers: usize,
        /// Grid sizes for the discretize suite.
        #[arg(long, value_delimiter = ',', default_value = "50,100,200")]
        ns: Vec<usize>,
    },
    /// Print the statement, hypotheses and check semantics of a property.
    Explain { property: String },
    /// Print the grid-refinement table as CSV.
    Discretize {
        #[arg(long, value_delimiter = ',', default_value = "50,100,200")]
        ns: Vec<usize>,
    },
}

fn parse_dims(s: &str) -> Result<DimRange, String> {
    let (lo, hi) = s.split_once("..").ok_or_else(|| format!("expected LO..HI, got {s:?}"))?;
    let lo = lo.trim().parse::<usize>().map_err(|e| e.to_string())?;
    let hi = hi.trim().parse::<usize>().map_err(|e| e.to_string())?;
    DimRange::new(lo, hi).map_err(|e| e.to_string())
}

fn parse_tol(s: &str) -> Result<(String, f64), String> {
    let (k, v) = s.split_once('=').ok_or_else(|| format!("expected KEY=VALUE, got {s:?}"))?;
    let v = v.trim().parse::<f64>().map_err(|e| format!("{k}: {e}"))?;
    Ok((k.trim().to_string(), v))
}

fn config_error(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Explain { property } => match property.parse::<PropertyId>() {
            Ok(p) => {
                print!("{}", p.explain());
                ExitCode::SUCCESS
            }
            Err(e) => config_error(e),
        },
        Command::Discretize { ns } => {
            let rows = match convergence_study(&ns) {
                Ok(r) => r,
                Err(e) => return config_error(e),
            };
            match write_csv(&rows, std::io::stdout().lock()) {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => config_error(e),
            }
        }
        Command::Run { suites, trials, dims, seed, tol, format, out, workers, ns } => {
            let suites = match parse_suites(&suites) {
                Ok(s) => s,
                Err(e) => return config_error(e),
            };
            let mut tolerances = Tolerances::default();
            for (k, v) in &tol {
                if let Err(e) = tolerances.set(k, *v) {
                    return config_error(e);
                }
            }
            let config = RunConfig { suites, trials, dims, master_seed: seed, tolerances, workers, discretize_ns: ns };
            let report = match run(&config) {
                Ok(r) => r,
                Err(e) => return config_error(e),
            };
            let body = match format {
                Format::Text => report.to_text(),
                Format::Json => report.to_json() + "\n",
            };
            match out {
                Some(path) => {
                    if let Err(e) = std::fs::write(&path, body) {
                        return config_error(format!("{}: {e}", path.display()));
                    }
                    print!("{}", report.to_text());
                }
                None => print!("{body}"),
            }
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
    }
}
