use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use speedlimit::commands::{self, ValidateConfig, EXIT_NUMERICAL, EXIT_OK};
use speedlimit::io::{read_hamiltonian, read_spec, read_state};
use speedlimit::saturation::DEFAULT_TOL;
use speedlimit::{Error, Result};

#[derive(Parser)]
#[command(name = "speedlimit", version, about = "Margolus-Levitin speed limit toolkit")]
struct Cli {
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// alpha(delta) on a uniform fidelity grid.
    AlphaSweep {
        #[arg(long, default_value_t = 1001)]
        n: usize,
    },
    /// The objective f_delta(z) across its domain, one curve per fidelity.
    ObjectiveCurves {
        #[arg(long = "delta", num_args = 1.., default_values_t = commands::DEFAULT_CURVE_DELTAS)]
        deltas: Vec<f64>,
    },
    /// Purity-resolved qubit alpha over each feasible fidelity range.
    QubitAlphaSweep {
        #[arg(long, default_value_t = 201)]
        n: usize,
        #[arg(long = "purity", num_args = 1.., default_values_t = commands::DEFAULT_PURITIES)]
        purities: Vec<f64>,
    },
    /// Randomized validity campaign for the standard and dual bounds.
    Validate {
        #[arg(long, default_value_t = 1000)]
        count: usize,
        #[arg(long, default_value_t = 2)]
        dim_min: usize,
        #[arg(long, default_value_t = 6)]
        dim_max: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Build a saturating state from a spec file and check it.
    Construct {
        #[arg(long)]
        spec: PathBuf,
        /// Build the dual-bound form, reading level1 as the top level.
        #[arg(long)]
        dual: bool,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Check an arbitrary state against the saturation conditions.
    Check {
        #[arg(long)]
        state: PathBuf,
        #[arg(long)]
        hamiltonian: PathBuf,
        #[arg(long)]
        tau: f64,
        #[arg(long)]
        delta: f64,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        #[arg(long)]
        dual: bool,
    },
    /// Earliest time the fidelity reaches delta, next to both bounds.
    MinimalTime {
        #[arg(long)]
        state: PathBuf,
        #[arg(long)]
        hamiltonian: PathBuf,
        #[arg(long)]
        delta: f64,
        #[arg(long)]
        horizon: Option<f64>,
    },
}

#[derive(Serialize)]
struct Rows<T> {
    schema: u32,
    rows: Vec<T>,
}

fn json<T: Serialize>(value: &T) -> Result<String> {
    let mut text =
        serde_json::to_string_pretty(value).map_err(|e| Error::Numerical(e.to_string()))?;
    text.push('\n');
    Ok(text)
}

fn rows<T: Serialize>(rows: Vec<T>) -> Result<String> {
    json(&Rows {
        schema: commands::SCHEMA_VERSION,
        rows,
    })
}

/// Output text and exit code.
fn run(cli: &Cli) -> Result<(String, i32)> {
    let csv = cli.format == Format::Csv;
    let ok = |text| Ok((text, EXIT_OK));
    match &cli.command {
        Command::AlphaSweep { n } => ok(if csv {
            commands::alpha_sweep_csv(*n)?
        } else {
            rows(commands::alpha_sweep(*n)?)?
        }),
        Command::ObjectiveCurves { deltas } => ok(if csv {
            commands::objective_curves_csv(deltas)?
        } else {
            rows(commands::objective_curves(deltas)?)?
        }),
        Command::QubitAlphaSweep { n, purities } => ok(if csv {
            commands::qubit_alpha_sweep_csv(*n, purities)?
        } else {
            rows(commands::qubit_alpha_sweep(*n, purities)?)?
        }),
        Command::Validate {
            count,
            dim_min,
            dim_max,
            seed,
            tol,
        } => {
            let report = commands::validate(&ValidateConfig {
                count: *count,
                dim_min: *dim_min,
                dim_max: *dim_max,
                seed: *seed,
                tol: *tol,
            })?;
            let code = if report.violations.is_empty() { EXIT_OK } else { EXIT_NUMERICAL };
            Ok((json(&report)?, code))
        }
        Command::Construct { spec, dual, tol } => {
            let out = commands::construct(&read_spec(spec)?, *dual, *tol)?;
            let code = if out.report.saturates { EXIT_OK } else { EXIT_NUMERICAL };
            Ok((json(&out)?, code))
        }
        Command::Check {
            state,
            hamiltonian,
            tau,
            delta,
            tol,
            dual,
        } => {
            let rho = read_state(state)?;
            let h = read_hamiltonian(hamiltonian)?;
            ok(json(&commands::check(&rho, &h, *tau, *delta, *tol, *dual)?)?)
        }
        Command::MinimalTime {
            state,
            hamiltonian,
            delta,
            horizon,
        } => {
            let rho = read_state(state)?;
            let h = read_hamiltonian(hamiltonian)?;
            ok(json(&commands::minimal_time(&rho, &h, *delta, *horizon)?)?)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (text, code) = match run(&cli) {
        Ok(done) => done,
        Err(err) => {
            eprintln!("error: {err}");
            return ExitCode::from(commands::exit_code(&err) as u8);
        }
    };
    let written = match &cli.out {
        Some(path) => std::fs::write(path, text).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    };
    if let Err(msg) = written {
        eprintln!("error: {msg}");
        return ExitCode::from(commands::EXIT_SCHEMA as u8);
    }
    ExitCode::from(code as u8)
}
