use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use ptdeco_core::dephasing::{evolve_trajectory, qubit_energies, qubit_hamiltonian, qubit_transform, sweep_alpha, DephasingModel};
use ptdeco_core::oracle::{discretize_bath, run_comparison, OracleSetup};
use ptdeco_core::pt::{map_state_back, spectrum, DEFAULT_SPECTRAL_EPS};
use ptdeco_core::{CMatrix, Complex64};

use crate::config::{Representation, ScenarioConfig};

/// Failure category; decides the process exit code.
#[derive(Debug)]
pub enum CliError {
    /// Bad arguments or configuration (exit 2).
    Usage(String),
    /// Numerical or validation failure (exit 1).
    Failure(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Failure(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Failure(m) => f.write_str(m),
        }
    }
}

impl From<ptdeco_core::Error> for CliError {
    fn from(e: ptdeco_core::Error) -> Self {
        CliError::Failure(e.to_string())
    }
}

fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn header(out: &mut String, command: &str, cfg: &ScenarioConfig, extra: &[(&str, String)]) {
    let alphas: Vec<String> = cfg.alphas.iter().map(|a| a.to_string()).collect();
    let _ = writeln!(out, "# ptdeco {command}");
    let _ = writeln!(out, "# units: hbar = 1");
    let _ = writeln!(out, "# alpha = {}", alphas.join(","));
    let _ = writeln!(
        out,
        "# beta = {}, j0 = {}, mu = {}, omega_c = {}",
        cfg.beta,
        cfg.spectral.j0(),
        cfg.spectral.mu(),
        cfg.spectral.omega_c()
    );
    let _ = writeln!(out, "# t_start = {}, t_end = {}, n_points = {}, tol = {}", cfg.t_start, cfg.t_end, cfg.n_points, cfg.tol);
    for (k, v) in extra {
        let _ = writeln!(out, "# {k} = {v}");
    }
}

/// Writes `contents` to `path` through a temporary sibling, or to stdout without a path.
pub fn emit(path: Option<&Path>, contents: &str) -> Result<(), CliError> {
    let Some(path) = path else {
        print!("{contents}");
        return Ok(());
    };
    let mut tmp = PathBuf::from(path);
    tmp.as_mut_os_string().push(".partial");
    let result = std::fs::write(&tmp, contents).and_then(|_| std::fs::rename(&tmp, path));
    if let Err(e) = result {
        let _ = std::fs::remove_file(&tmp);
        return Err(CliError::Failure(format!("cannot write {}: {e}", path.display())));
    }
    Ok(())
}

pub fn spectrum_csv(cfg: &ScenarioConfig) -> Result<String, CliError> {
    let mut out = String::new();
    header(&mut out, "spectrum", cfg, &[("spectral_eps", DEFAULT_SPECTRAL_EPS.to_string())]);
    out.push_str("alpha,phase,e1_re,e1_im,e2_re,e2_im\n");
    for &alpha in &cfg.alphas {
        let report = spectrum(&qubit_hamiltonian(alpha), DEFAULT_SPECTRAL_EPS);
        let e = &report.eigenvalues;
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            num(alpha),
            report.phase,
            num(e[0].re),
            num(e[0].im),
            num(e[1].re),
            num(e[1].im)
        );
    }
    Ok(out)
}

pub fn figure1_csv(cfg: &ScenarioConfig) -> Result<String, CliError> {
    let times = cfg.times();
    let table = sweep_alpha(&cfg.alphas, &times, &cfg.spectral, cfg.beta, cfg.tol)?;
    let mut out = String::new();
    header(&mut out, "figure1", cfg, &[]);
    out.push('t');
    for a in &cfg.alphas {
        let _ = write!(out, ",D[alpha={a}]");
    }
    out.push('\n');
    for (t, row) in times.iter().zip(&table.values) {
        out.push_str(&num(*t));
        for d in row {
            out.push(',');
            out.push_str(&num(*d));
        }
        out.push('\n');
    }
    Ok(out)
}

fn initial_state(cfg: &ScenarioConfig) -> Result<CMatrix, CliError> {
    let r12 = Complex64::new(cfg.rho12_re, cfg.rho12_im);
    CMatrix::from_rows(&[[Complex64::new(cfg.rho11, 0.0), r12], [r12.conj(), Complex64::new(1.0 - cfg.rho11, 0.0)]])
        .map_err(|e| CliError::Usage(format!("initial state: {e}")))
}

pub fn evolve_csv(cfg: &ScenarioConfig) -> Result<String, CliError> {
    let [alpha] = cfg.alphas[..] else {
        return Err(CliError::Usage(format!("evolve takes a single alpha, found {}", cfg.alphas.len())));
    };
    let model = DephasingModel::new(alpha, cfg.beta, cfg.spectral)?;
    let rho0 = initial_state(cfg)?;
    let times = cfg.times();
    let mut states = evolve_trajectory(&model, &rho0, &times, cfg.tol)?;
    let rep = match cfg.representation {
        Representation::Hermitian => "hermitian",
        Representation::Pt => {
            let map = qubit_transform(alpha)?;
            states = states.iter().map(|s| map_state_back(s, &map)).collect::<Result<_, _>>()?;
            "pt"
        }
    };
    let (e1, _) = qubit_energies(alpha)?;
    let mut out = String::new();
    header(
        &mut out,
        "evolve",
        cfg,
        &[
            ("representation", rep.to_string()),
            ("E1", num(e1)),
            ("rho11(0), rho12(0)", format!("{}, {}{:+}i", cfg.rho11, cfg.rho12_re, cfg.rho12_im)),
        ],
    );
    out.push_str("t,rho11_re,rho11_im,rho12_re,rho12_im,rho21_re,rho21_im,rho22_re,rho22_im\n");
    for (t, s) in times.iter().zip(&states) {
        out.push_str(&num(*t));
        for z in s.as_slice() {
            let _ = write!(out, ",{},{}", num(z.re), num(z.im));
        }
        out.push('\n');
    }
    Ok(out)
}

pub struct OracleOutcome {
    pub csv: String,
    pub summary: String,
    pub pass: bool,
}

pub fn oracle_compare(cfg: &ScenarioConfig) -> Result<OracleOutcome, CliError> {
    let bath = discretize_bath(&cfg.spectral, cfg.modes, cfg.omega_max)?.with_fock_dim(cfg.fock_dim)?;
    let setup = OracleSetup {
        alphas: cfg.alphas.clone(),
        bath,
        beta: cfg.beta,
        analytic_beta: cfg.analytic_beta,
        rho0: initial_state(cfg)?,
        times: cfg.times(),
    };
    let report = run_comparison(&setup)?;
    let deviation = report.deviation_with_constant(cfg.convention_c);
    let pass = deviation <= cfg.tol;
    let fitted = report.fitted_c.map_or("none".to_string(), num);
    let tail = report.tail_population.unwrap_or(0.0);

    let mut out = String::new();
    header(
        &mut out,
        "oracle-compare",
        cfg,
        &[
            ("modes, fock_dim, omega_max", format!("{}, {}, {}", cfg.modes, cfg.fock_dim, cfg.omega_max)),
            ("analytic_beta", cfg.analytic_beta.to_string()),
            ("convention_c", cfg.convention_c.to_string()),
            ("fitted_c", fitted.clone()),
            ("fit_residual", num(report.fit_residual)),
            ("max_abs_dev (c = 1)", num(report.max_abs_dev)),
            ("deviation (c = convention_c)", num(deviation)),
            ("tail_population", num(tail)),
            ("verdict", if pass { "PASS" } else { "FAIL" }.to_string()),
        ],
    );
    out.push_str("alpha,t,exponent,d_analytic,d_brute,d_convention,abs_dev_convention,abs_dev_analytic,entry_dev\n");
    for (k, &alpha) in report.alphas.iter().enumerate() {
        for (i, &t) in report.times.iter().enumerate() {
            let x = report.exponent[k][i];
            let d_conv = (-cfg.convention_c * x).exp();
            let db = report.d_brute[k][i];
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{},{}",
                num(alpha),
                num(t),
                num(x),
                num(report.d_analytic[k][i]),
                num(db),
                num(d_conv),
                num((db - d_conv).abs()),
                num(report.d_deviation[k][i]),
                num(report.entry_deviation[k][i])
            );
        }
    }
    let summary = format!(
        "{} deviation={:.3e} tol={:.3e} convention_c={} fitted_c={} fit_residual={:.3e} tail_population={:.3e}",
        if pass { "PASS" } else { "FAIL" },
        deviation,
        cfg.tol,
        cfg.convention_c,
        report.fitted_c.map_or("none".to_string(), |c| format!("{c:.6}")),
        report.fit_residual,
        tail
    );
    Ok(OracleOutcome { csv: out, summary, pass })
}
