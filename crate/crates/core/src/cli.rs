//! Command-line front end: sweeps to CSV, crossing reports, regime
//! classification, and state dumps.
//!
//! Configuration comes from flags, from a JSON file (`--config`), or
//! both, with flags taking precedence. Exit codes: 0 success, 2
//! configuration error, 3 I/O error.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::analysis::{classify_regime, classify_state, linear_grid, sweep, RegimeReport, Scenario};
use crate::channel::{DecoherenceParams, ScenarioMode};
use crate::closed_form::Family;
use crate::error::Error;
use crate::linalg::ComplexMatrix;
use crate::states::{horodecki_state, isotropic_state, rotated_state, DensityMatrix};

/// The initial state selected by a run configuration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StateFamily {
    Horodecki,
    Rotated,
    Isotropic,
    Raw,
}

impl std::fmt::Display for StateFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            StateFamily::Horodecki => "horodecki",
            StateFamily::Rotated => "rotated",
            StateFamily::Isotropic => "isotropic",
            StateFamily::Raw => "raw",
        };
        f.write_str(s)
    }
}

impl std::str::FromStr for StateFamily {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "horodecki" => Ok(StateFamily::Horodecki),
            "rotated" => Ok(StateFamily::Rotated),
            "isotropic" => Ok(StateFamily::Isotropic),
            "raw" => Ok(StateFamily::Raw),
            other => Err(format!(
                "unknown family '{other}' (expected horodecki, rotated, isotropic, or raw)"
            )),
        }
    }
}

/// A fully resolved run configuration.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub family: StateFamily,
    pub family_param: Option<f64>,
    pub scenario: ScenarioMode,
    pub gamma1: f64,
    pub gamma2: f64,
    pub t_max: f64,
    pub steps: usize,
    pub raw_state_path: Option<PathBuf>,
}

/// The JSON configuration schema: every field optional so flags can
/// fill the gaps. Unknown keys are rejected.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartialConfig {
    pub family: Option<StateFamily>,
    pub family_param: Option<f64>,
    pub scenario: Option<ScenarioMode>,
    pub gamma1: Option<f64>,
    pub gamma2: Option<f64>,
    pub t_max: Option<f64>,
    pub steps: Option<usize>,
    pub raw_state_path: Option<PathBuf>,
}

impl PartialConfig {
    /// Fields of `self` win; gaps fall back to `base`.
    pub fn over(self, base: PartialConfig) -> PartialConfig {
        PartialConfig {
            family: self.family.or(base.family),
            family_param: self.family_param.or(base.family_param),
            scenario: self.scenario.or(base.scenario),
            gamma1: self.gamma1.or(base.gamma1),
            gamma2: self.gamma2.or(base.gamma2),
            t_max: self.t_max.or(base.t_max),
            steps: self.steps.or(base.steps),
            raw_state_path: self.raw_state_path.or(base.raw_state_path),
        }
    }

    /// Validates and fills defaults: Γ₁ = Γ₂ = 1, t_max = 1, steps = 501.
    pub fn finalize(self) -> Result<RunConfig, CliError> {
        let family = self
            .family
            .ok_or_else(|| CliError::config("missing family (use --family or a config file)"))?;
        let scenario = self
            .scenario
            .ok_or_else(|| CliError::config("missing scenario (use --scenario or a config file)"))?;
        let config = RunConfig {
            family,
            family_param: self.family_param,
            scenario,
            gamma1: self.gamma1.unwrap_or(1.0),
            gamma2: self.gamma2.unwrap_or(1.0),
            t_max: self.t_max.unwrap_or(1.0),
            steps: self.steps.unwrap_or(501),
            raw_state_path: self.raw_state_path,
        };
        if config.steps < 2 {
            return Err(CliError::config(format!(
                "steps must be at least 2 (got {})",
                config.steps
            )));
        }
        if !(config.t_max > 0.0) || !config.t_max.is_finite() {
            return Err(CliError::config(format!(
                "t_max must be positive and finite (got {})",
                config.t_max
            )));
        }
        DecoherenceParams::new(config.gamma1, config.gamma2).map_err(CliError::from)?;
        match config.family {
            StateFamily::Raw => {
                if config.family_param.is_some() {
                    return Err(CliError::config("family 'raw' does not take a parameter"));
                }
                if config.raw_state_path.is_none() {
                    return Err(CliError::config(
                        "family 'raw' requires a state file (use --state or raw_state_path)",
                    ));
                }
            }
            _ => {
                if config.family_param.is_none() {
                    return Err(CliError::config(
                        "missing family parameter (use --param or family_param)",
                    ));
                }
                if config.raw_state_path.is_some() {
                    return Err(CliError::config(
                        "a state file only applies to family 'raw'",
                    ));
                }
            }
        }
        Ok(config)
    }
}

/// A CLI failure with its process exit code: 2 configuration, 3 I/O.
#[derive(Debug)]
pub struct CliError {
    pub message: String,
    pub code: i32,
}

impl CliError {
    pub fn config(message: impl Into<String>) -> Self {
        CliError {
            message: message.into(),
            code: 2,
        }
    }

    pub fn io(message: impl Into<String>) -> Self {
        CliError {
            message: message.into(),
            code: 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::config(e.to_string())
    }
}

/// Loads a raw 9×9 state: JSON rows of [re, im] pairs. Read, parse,
/// and shape problems are I/O errors; an unphysical matrix is a
/// configuration error.
pub fn load_raw_state(path: &Path) -> Result<DensityMatrix, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::io(format!("cannot read state file {}: {e}", path.display())))?;
    let rows: Vec<Vec<[f64; 2]>> = serde_json::from_str(&text)
        .map_err(|e| CliError::io(format!("cannot parse state file {}: {e}", path.display())))?;
    if rows.len() != 9 || rows.iter().any(|r| r.len() != 9) {
        return Err(CliError::io(format!(
            "state file {} is not a 9x9 matrix",
            path.display()
        )));
    }
    let m = ComplexMatrix::from_fn(9, |i, j| Complex64::new(rows[i][j][0], rows[i][j][1]));
    DensityMatrix::new(3, 3, m)
        .map_err(|e| CliError::config(format!("state file {}: {e}", path.display())))
}

/// Serializes a state in the raw input format (rows of [re, im]).
pub fn state_to_json(rho: &DensityMatrix) -> String {
    let n = rho.dim();
    let rows: Vec<Vec<[f64; 2]>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let z = rho.matrix()[(i, j)];
                    [z.re, z.im]
                })
                .collect()
        })
        .collect();
    // 9x9 numeric arrays always serialize.
    serde_json::to_string_pretty(&rows).expect("state serialization cannot fail")
}

fn build_state(config: &RunConfig) -> Result<DensityMatrix, CliError> {
    match config.family {
        StateFamily::Horodecki => Ok(horodecki_state(config.family_param.unwrap())?),
        StateFamily::Rotated => Ok(rotated_state(config.family_param.unwrap())?),
        StateFamily::Isotropic => Ok(isotropic_state(config.family_param.unwrap())?),
        StateFamily::Raw => load_raw_state(config.raw_state_path.as_deref().unwrap()),
    }
}

fn build_scenario(config: &RunConfig) -> Result<Scenario, CliError> {
    let params = DecoherenceParams::new(config.gamma1, config.gamma2)?;
    Ok(Scenario::new(config.scenario, params))
}

fn classification(config: &RunConfig) -> Result<RegimeReport, CliError> {
    let scenario = build_scenario(config)?;
    match config.family {
        StateFamily::Horodecki => {
            Ok(classify_regime(Family::Horodecki, config.family_param.unwrap(), &scenario)?)
        }
        StateFamily::Rotated => {
            Ok(classify_regime(Family::Rotated, config.family_param.unwrap(), &scenario)?)
        }
        StateFamily::Isotropic => {
            Ok(classify_regime(Family::Isotropic, config.family_param.unwrap(), &scenario)?)
        }
        StateFamily::Raw => {
            let rho0 = build_state(config)?;
            Ok(classify_state(&rho0, &scenario)?)
        }
    }
}

fn config_comment(config: &RunConfig) -> String {
    let mut line = format!(
        "# family={} scenario={} gamma1={} gamma2={} t_max={} steps={}",
        config.family, config.scenario, config.gamma1, config.gamma2, config.t_max, config.steps
    );
    if let Some(p) = config.family_param {
        line.push_str(&format!(" param={p}"));
    }
    if let Some(path) = &config.raw_state_path {
        line.push_str(&format!(" state={}", path.display()));
    }
    line
}

/// Evolves the configured state over a uniform Γt grid and renders the
/// three signals as CSV. Deterministic: same config, same bytes.
pub fn cmd_sweep(config: &RunConfig) -> Result<String, CliError> {
    let rho0 = build_state(config)?;
    let scenario = build_scenario(config)?;
    let grid = linear_grid(config.t_max, config.steps)?;
    let records = sweep(&rho0, &scenario, &grid)?;
    let report = classification(config)?;

    let mut out = String::new();
    out.push_str(&config_comment(config));
    out.push('\n');
    out.push_str(&format!(
        "# gamma_t axis: Gamma*t with Gamma = max(gamma1, gamma2) = {}\n",
        scenario.reference_rate()
    ));
    for w in &report.warnings {
        out.push_str(&format!("# warning: {w}\n"));
    }
    out.push_str("gamma_t,negativity,ccnr_value,min_pt_eigenvalue\n");
    for r in &records {
        out.push_str(&format!(
            "{:.11e},{:.11e},{:.11e},{:.11e}\n",
            r.gamma_t, r.negativity, r.ccnr_value, r.min_pt_eigenvalue
        ));
    }
    Ok(out)
}

fn format_opt(value: Option<f64>) -> String {
    value.map_or("none".to_string(), |v| format!("{v:.9}"))
}

fn format_warnings(warnings: &[String]) -> String {
    if warnings.is_empty() {
        "none".to_string()
    } else {
        warnings.join("; ")
    }
}

/// Reports the expiry times of the two signals, line-oriented key=value.
pub fn cmd_crossings(config: &RunConfig) -> Result<String, CliError> {
    let report = classification(config)?;
    Ok(format!(
        "t_N={}\nt_R={}\nregime={}\nwarnings={}\n",
        format_opt(report.t_n),
        format_opt(report.t_r),
        report.regime,
        format_warnings(&report.warnings)
    ))
}

/// Reports the lifetime regime and, when one opens, the bound window.
pub fn cmd_classify(config: &RunConfig) -> Result<String, CliError> {
    let report = classification(config)?;
    let window = report
        .bound_window
        .map_or("none".to_string(), |(lo, hi)| format!("{lo:.9},{hi:.9}"));
    Ok(format!(
        "regime={}\nwindow={}\nwarnings={}\n",
        report.regime,
        window,
        format_warnings(&report.warnings)
    ))
}

/// Serializes the configured initial state in the raw input format.
pub fn cmd_dump_state(config: &RunConfig) -> Result<String, CliError> {
    let rho0 = build_state(config)?;
    Ok(state_to_json(&rho0))
}

#[derive(Parser)]
#[command(
    name = "qdsd",
    about = "Qutrit-qutrit dephasing: entanglement sweeps, crossing times, and regime reports",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evolve the configured state and print the signal curves as CSV
    Sweep(ConfigArgs),
    /// Report when negativity and the realignment signal expire
    Crossings(ConfigArgs),
    /// Report the entanglement-lifetime regime
    Classify(ConfigArgs),
    /// Write the configured initial state as a JSON matrix
    DumpState(ConfigArgs),
}

#[derive(Args)]
struct ConfigArgs {
    /// Initial state family: horodecki, rotated, isotropic, or raw
    #[arg(long)]
    family: Option<StateFamily>,
    /// Family parameter: α in [2, 5] or p in [0, 1]
    #[arg(long)]
    param: Option<f64>,
    /// Noise scenario: global, multilocal, or collective
    #[arg(long)]
    scenario: Option<ScenarioMode>,
    /// Local dephasing rate Γ₁ (default 1)
    #[arg(long)]
    gamma1: Option<f64>,
    /// Collective dephasing rate Γ₂ (default 1)
    #[arg(long)]
    gamma2: Option<f64>,
    /// Γt horizon of the sweep grid (default 1)
    #[arg(long = "t-max")]
    t_max: Option<f64>,
    /// Number of grid points including both endpoints (default 501)
    #[arg(long)]
    steps: Option<usize>,
    /// JSON config file; explicit flags override its fields
    #[arg(long)]
    config: Option<PathBuf>,
    /// Raw 9x9 state file (family 'raw' only)
    #[arg(long)]
    state: Option<PathBuf>,
    /// Write output here instead of stdout
    #[arg(long)]
    output: Option<PathBuf>,
}

impl ConfigArgs {
    fn resolve(&self) -> Result<RunConfig, CliError> {
        let flags = PartialConfig {
            family: self.family,
            family_param: self.param,
            scenario: self.scenario,
            gamma1: self.gamma1,
            gamma2: self.gamma2,
            t_max: self.t_max,
            steps: self.steps,
            raw_state_path: self.state.clone(),
        };
        let base = match &self.config {
            Some(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| {
                    CliError::io(format!("cannot read config file {}: {e}", path.display()))
                })?;
                serde_json::from_str::<PartialConfig>(&text).map_err(|e| {
                    CliError::config(format!("invalid config file {}: {e}", path.display()))
                })?
            }
            None => PartialConfig::default(),
        };
        flags.over(base).finalize()
    }
}

fn deliver(text: &str, output: Option<&Path>) -> Result<(), CliError> {
    match output {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::io(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Parses arguments, runs the selected command, and returns the
/// process exit code.
pub fn run() -> i32 {
    let cli = Cli::parse();
    let (args, result) = match &cli.command {
        Command::Sweep(a) => (a, a.resolve().and_then(|c| cmd_sweep(&c))),
        Command::Crossings(a) => (a, a.resolve().and_then(|c| cmd_crossings(&c))),
        Command::Classify(a) => (a, a.resolve().and_then(|c| cmd_classify(&c))),
        Command::DumpState(a) => (a, a.resolve().and_then(|c| cmd_dump_state(&c))),
    };
    match result.and_then(|text| deliver(&text, args.output.as_deref())) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.code
        }
    }
}
