//! Flat `key = value` scenario configuration with last-wins overrides.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};

use ptdeco_core::dephasing::{SpectralDensity, DEFAULT_GAMMA_TOL};
use ptdeco_core::oracle::{DEFAULT_FOCK_DIM, DEFAULT_MODES, DEFAULT_OMEGA_MAX, OBSERVED_DECAY_CONSTANT};

pub const KEYS: &[&str] = &[
    "alpha",
    "beta",
    "mu",
    "j0",
    "omega_c",
    "t_start",
    "t_end",
    "n_points",
    "tol",
    "modes",
    "fock_dim",
    "omega_max",
    "rho11",
    "rho12_re",
    "rho12_im",
    "representation",
    "analytic_beta",
    "convention_c",
    "out",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scenario {
    Spectrum,
    Figure1,
    Evolve,
    OracleCompare,
}

impl Scenario {
    pub fn name(self) -> &'static str {
        match self {
            Scenario::Spectrum => "spectrum",
            Scenario::Figure1 => "figure1",
            Scenario::Evolve => "evolve",
            Scenario::OracleCompare => "oracle-compare",
        }
    }

    fn defaults(self) -> Vec<(&'static str, &'static str)> {
        let mut d = vec![
            ("beta", "0.5"),
            ("mu", "-0.5"),
            ("j0", "1"),
            ("omega_c", "1"),
            ("t_start", "0"),
            ("rho11", "0.5"),
            ("rho12_re", "0"),
            ("rho12_im", "-0.5"),
            ("representation", "hermitian"),
        ];
        match self {
            Scenario::Spectrum => d.extend([("alpha", "0,0.5,0.9,1,1.5"), ("t_end", "20"), ("n_points", "200")]),
            Scenario::Figure1 => d.extend([("alpha", "0,0.5,0.9,1"), ("t_end", "20"), ("n_points", "200")]),
            Scenario::Evolve => d.extend([("alpha", "0.6"), ("t_end", "10"), ("n_points", "101")]),
            Scenario::OracleCompare => d.extend([("alpha", "0,0.6"), ("t_end", "5"), ("n_points", "26"), ("tol", "1e-2")]),
        }
        d
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ConfigError {}

fn err<T>(msg: impl Into<String>) -> Result<T, ConfigError> {
    Err(ConfigError(msg.into()))
}

/// Raw key/value layers, applied in insertion order.
#[derive(Debug, Clone, Default)]
pub struct Layers {
    values: BTreeMap<String, String>,
}

impl Layers {
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), ConfigError> {
        let key = key.trim().replace('-', "_");
        if !KEYS.contains(&key.as_str()) {
            return err(format!("unknown configuration key '{key}'"));
        }
        self.values.insert(key, value.trim().to_string());
        Ok(())
    }

    /// Parses `key = value` lines; `#` starts a comment, blank lines are ignored.
    pub fn apply_text(&mut self, text: &str, origin: &str) -> Result<(), ConfigError> {
        for (no, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return err(format!("{origin}:{}: expected key = value, found '{line}'", no + 1));
            };
            self.set(key, value).map_err(|e| ConfigError(format!("{origin}:{}: {e}", no + 1)))?;
        }
        Ok(())
    }

    pub fn apply_file(&mut self, path: &Path) -> Result<(), ConfigError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ConfigError(format!("cannot read config {}: {e}", path.display())))?;
        self.apply_text(&text, &path.display().to_string())
    }

    /// `KEY=VALUE` override.
    pub fn apply_assignment(&mut self, assignment: &str) -> Result<(), ConfigError> {
        match assignment.split_once('=') {
            Some((k, v)) => self.set(k, v),
            None => err(format!("expected KEY=VALUE, found '{assignment}'")),
        }
    }

    fn get(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Representation {
    Hermitian,
    Pt,
}

#[derive(Debug, Clone)]
pub struct ScenarioConfig {
    pub scenario: Scenario,
    pub alphas: Vec<f64>,
    pub beta: f64,
    pub spectral: SpectralDensity,
    pub t_start: f64,
    pub t_end: f64,
    pub n_points: usize,
    pub tol: f64,
    pub modes: usize,
    pub fock_dim: usize,
    pub omega_max: f64,
    pub rho11: f64,
    pub rho12_re: f64,
    pub rho12_im: f64,
    pub representation: Representation,
    pub analytic_beta: f64,
    pub convention_c: f64,
    pub out: Option<PathBuf>,
}

fn parse_f64(key: &str, raw: &str) -> Result<f64, ConfigError> {
    match raw.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => err(format!("{key}: expected a finite number, found '{raw}'")),
    }
}

fn parse_usize(key: &str, raw: &str) -> Result<usize, ConfigError> {
    raw.parse::<usize>().or_else(|_| err(format!("{key}: expected a nonnegative integer, found '{raw}'")))
}

pub fn parse_alpha_list(raw: &str) -> Result<Vec<f64>, ConfigError> {
    let alphas = raw
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| parse_f64("alpha", s))
        .collect::<Result<Vec<_>, _>>()?;
    if alphas.is_empty() {
        return err("alpha: empty grid");
    }
    Ok(alphas)
}

impl ScenarioConfig {
    /// Resolves defaults, then `layers`, and validates ranges.
    pub fn resolve(scenario: Scenario, layers: &Layers) -> Result<Self, ConfigError> {
        let mut merged = Layers::default();
        for (k, v) in scenario.defaults() {
            merged.set(k, v)?;
        }
        for (k, v) in &layers.values {
            merged.set(k, v)?;
        }
        let text = |key: &str| merged.get(key);
        let num = |key: &str| -> Result<Option<f64>, ConfigError> { text(key).map(|v| parse_f64(key, v)).transpose() };
        let req = |key: &str| -> Result<f64, ConfigError> { num(key)?.ok_or_else(|| ConfigError(format!("missing {key}"))) };
        let int = |key: &str, default: usize| -> Result<usize, ConfigError> {
            text(key).map_or(Ok(default), |v| parse_usize(key, v))
        };

        let alphas = parse_alpha_list(text("alpha").unwrap_or(""))?;
        if scenario != Scenario::Spectrum {
            if let Some(a) = alphas.iter().find(|a| a.abs() > 1.0) {
                return err(format!("alpha {a} lies outside [-1, 1]"));
            }
        }
        let beta = req("beta")?;
        if beta <= 0.0 {
            return err(format!("beta must be positive, found {beta}"));
        }
        let spectral = SpectralDensity::new(req("j0")?, req("mu")?, req("omega_c")?).map_err(|e| ConfigError(e.to_string()))?;
        let (t_start, t_end) = (req("t_start")?, req("t_end")?);
        let n_points = int("n_points", 0)?;
        if n_points == 0 {
            return err("n_points must be at least 1");
        }
        if t_start < 0.0 || (n_points > 1 && t_end <= t_start) {
            return err(format!("time grid [{t_start}, {t_end}] must be ascending and nonnegative"));
        }
        let tol = num("tol")?.unwrap_or(DEFAULT_GAMMA_TOL);
        if tol <= 0.0 {
            return err(format!("tol must be positive, found {tol}"));
        }
        let representation = match text("representation").unwrap_or("hermitian") {
            "hermitian" => Representation::Hermitian,
            "pt" => Representation::Pt,
            other => return err(format!("representation must be 'hermitian' or 'pt', found '{other}'")),
        };
        let omega_max = num("omega_max")?.unwrap_or(DEFAULT_OMEGA_MAX);
        if omega_max <= 0.0 {
            return err(format!("omega_max must be positive, found {omega_max}"));
        }
        let analytic_beta = num("analytic_beta")?.unwrap_or(beta);
        if analytic_beta <= 0.0 {
            return err(format!("analytic_beta must be positive, found {analytic_beta}"));
        }
        let modes = int("modes", DEFAULT_MODES)?;
        let fock_dim = int("fock_dim", DEFAULT_FOCK_DIM)?;
        if modes == 0 || fock_dim < 2 {
            return err("modes must be at least 1 and fock_dim at least 2");
        }

        Ok(Self {
            scenario,
            alphas,
            beta,
            spectral,
            t_start,
            t_end,
            n_points,
            tol,
            modes,
            fock_dim,
            omega_max,
            rho11: req("rho11")?,
            rho12_re: req("rho12_re")?,
            rho12_im: req("rho12_im")?,
            representation,
            analytic_beta,
            convention_c: num("convention_c")?.unwrap_or(OBSERVED_DECAY_CONSTANT),
            out: text("out").filter(|s| !s.is_empty()).map(PathBuf::from),
        })
    }

    /// Evenly spaced grid from `t_start` to `t_end` inclusive.
    pub fn times(&self) -> Vec<f64> {
        if self.n_points == 1 {
            return vec![self.t_start];
        }
        let step = (self.t_end - self.t_start) / (self.n_points - 1) as f64;
        (0..self.n_points)
            .map(|i| if i + 1 == self.n_points { self.t_end } else { self.t_start + step * i as f64 })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn figure1_defaults() {
        let cfg = ScenarioConfig::resolve(Scenario::Figure1, &Layers::default()).unwrap();
        assert_eq!(cfg.alphas, vec![0.0, 0.5, 0.9, 1.0]);
        assert_eq!((cfg.beta, cfg.spectral), (0.5, SpectralDensity::figure1()));
        let t = cfg.times();
        assert_eq!(t.len(), 200);
        assert_eq!((t[0], t[199]), (0.0, 20.0));
        assert_eq!(cfg.tol, DEFAULT_GAMMA_TOL);
    }

    #[test]
    fn file_then_overrides_last_wins() {
        let mut layers = Layers::default();
        layers
            .apply_text("# bath\nbeta = 2.0\nmu=0 # ohmic\n\nalpha = 0.1, 0.2\n", "test.cfg")
            .unwrap();
        layers.set("beta", "3").unwrap();
        layers.apply_assignment("omega-c=5").unwrap();
        let cfg = ScenarioConfig::resolve(Scenario::Figure1, &layers).unwrap();
        assert_eq!(cfg.beta, 3.0);
        assert_eq!(cfg.spectral.mu(), 0.0);
        assert_eq!(cfg.spectral.omega_c(), 5.0);
        assert_eq!(cfg.alphas, vec![0.1, 0.2]);
    }

    #[test]
    fn rejects_bad_input() {
        let mut layers = Layers::default();
        assert!(layers.apply_text("nonsense", "x").is_err());
        assert!(layers.apply_text("colour = blue", "x").is_err());
        assert!(parse_alpha_list("").is_err());
        assert!(parse_alpha_list(" , ").is_err());
        assert!(parse_alpha_list("0.1,abc").is_err());

        for (k, v) in [("mu", "-1"), ("beta", "0"), ("tol", "-1"), ("n_points", "0"), ("t_end", "-3"), ("alpha", "1.2")] {
            let mut l = Layers::default();
            l.set(k, v).unwrap();
            assert!(ScenarioConfig::resolve(Scenario::Figure1, &l).is_err(), "{k} = {v}");
        }
        let mut l = Layers::default();
        l.set("alpha", "1.5").unwrap();
        assert!(ScenarioConfig::resolve(Scenario::Spectrum, &l).is_ok());
    }

    #[test]
    fn single_point_grid() {
        let mut l = Layers::default();
        l.set("n_points", "1").unwrap();
        l.set("t_start", "2.5").unwrap();
        let cfg = ScenarioConfig::resolve(Scenario::Evolve, &l).unwrap();
        assert_eq!(cfg.times(), vec![2.5]);
    }
}
