//! `ptdeco`: scenario runner for PT-symmetric dephasing simulations.

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::{emit, CliError};
use config::{parse_alpha_list, Layers, Scenario, ScenarioConfig};

#[derive(Parser)]
#[command(name = "ptdeco", version, about = "PT-symmetric qubit dephasing: spectra, decoherence curves, oracle checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Eigenvalues and phase classification of the PT qubit over an alpha grid.
    Spectrum(Overrides),
    /// Decoherence function D(t; alpha) for an alpha grid (critical slowing down).
    Figure1(Overrides),
    /// Closed-form reduced dynamics in the hermitian or PT representation.
    Evolve(Overrides),
    /// Analytic dynamics against a brute-force truncated bath.
    OracleCompare(Overrides),
}

#[derive(clap::Args, Debug, Default)]
struct Overrides {
    /// Flat key = value configuration file.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output CSV path (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Comma-separated alpha values.
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    beta: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    mu: Option<f64>,
    #[arg(long)]
    j0: Option<f64>,
    #[arg(long)]
    omega_c: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    t_end: Option<f64>,
    #[arg(long)]
    n_points: Option<usize>,
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    modes: Option<usize>,
    #[arg(long)]
    fock_dim: Option<usize>,
    /// Any configuration key, e.g. --set rho12_im=-0.3 (repeatable, applied last).
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
}

impl Overrides {
    fn layers(&self) -> Result<Layers, CliError> {
        let usage = |e: config::ConfigError| CliError::Usage(e.to_string());
        let mut layers = Layers::default();
        if let Some(path) = &self.config {
            layers.apply_file(path).map_err(usage)?;
        }
        if let Some(alpha) = &self.alpha {
            parse_alpha_list(alpha).map_err(usage)?;
            layers.set("alpha", alpha).map_err(usage)?;
        }
        let numeric = [
            ("beta", self.beta),
            ("mu", self.mu),
            ("j0", self.j0),
            ("omega_c", self.omega_c),
            ("t_end", self.t_end),
            ("tol", self.tol),
        ];
        for (key, value) in numeric {
            if let Some(v) = value {
                layers.set(key, &v.to_string()).map_err(usage)?;
            }
        }
        for (key, value) in [("n_points", self.n_points), ("modes", self.modes), ("fock_dim", self.fock_dim)] {
            if let Some(v) = value {
                layers.set(key, &v.to_string()).map_err(usage)?;
            }
        }
        if let Some(out) = &self.out {
            layers.set("out", &out.to_string_lossy()).map_err(usage)?;
        }
        for assignment in &self.set {
            layers.apply_assignment(assignment).map_err(usage)?;
        }
        Ok(layers)
    }
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var("PTDECO_THREADS") else { return Ok(()) };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Usage(format!("PTDECO_THREADS must be a positive integer, found '{raw}'")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Failure(format!("cannot configure thread pool: {e}")))
}

fn run(cli: Cli) -> Result<(), CliError> {
    configure_threads()?;
    let (scenario, overrides) = match &cli.command {
        Command::Spectrum(o) => (Scenario::Spectrum, o),
        Command::Figure1(o) => (Scenario::Figure1, o),
        Command::Evolve(o) => (Scenario::Evolve, o),
        Command::OracleCompare(o) => (Scenario::OracleCompare, o),
    };
    let cfg = ScenarioConfig::resolve(scenario, &overrides.layers()?).map_err(|e| CliError::Usage(e.to_string()))?;
    log::info!("running {} with {cfg:?}", cfg.scenario.name());
    let out = cfg.out.as_deref();
    match cfg.scenario {
        Scenario::Spectrum => emit(out, &commands::spectrum_csv(&cfg)?),
        Scenario::Figure1 => emit(out, &commands::figure1_csv(&cfg)?),
        Scenario::Evolve => emit(out, &commands::evolve_csv(&cfg)?),
        Scenario::OracleCompare => {
            let outcome = commands::oracle_compare(&cfg)?;
            emit(out, &outcome.csv)?;
            if out.is_some() {
                println!("{}", outcome.summary);
            } else {
                eprintln!("{}", outcome.summary);
            }
            if outcome.pass {
                Ok(())
            } else {
                Err(CliError::Failure("oracle comparison failed".into()))
            }
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
