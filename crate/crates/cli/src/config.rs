//! Integrator configuration: built-in defaults per qubit count, overlaid by
//! an optional JSON config file, overlaid by explicit CLI flags.

use std::fs;
use std::path::Path;

use qreact_core::{IntegrationMethod, IntegratorConfig};
use serde::Deserialize;

use crate::error::{CliError, CliResult};

/// On-disk shape: `{"method", "points", "samples", "seed",
/// "fix_first_detector"}`, all fields optional.
#[derive(Debug, Default, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IntegratorFileConfig {
    pub method: Option<String>,
    pub points: Option<usize>,
    pub samples: Option<usize>,
    pub seed: Option<u64>,
    pub fix_first_detector: Option<bool>,
}

pub fn load_integrator_file(path: &Path) -> CliResult<IntegratorFileConfig> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|e| CliError::Parse {
        path: path.to_path_buf(),
        message: e.to_string(),
    })
}

pub fn parse_method(name: &str) -> CliResult<IntegrationMethod> {
    match name {
        "grid" => Ok(IntegrationMethod::Grid),
        "mc" | "monte_carlo" => Ok(IntegrationMethod::MonteCarlo),
        other => Err(CliError::usage(format!(
            "unknown integration method `{other}` (expected `grid` or `mc`)"
        ))),
    }
}

/// Flag-level overrides collected from the command line.
#[derive(Debug, Default, Clone, Copy)]
pub struct IntegratorOverrides {
    pub method: Option<IntegrationMethod>,
    pub grid_points: Option<usize>,
    pub mc_samples: Option<usize>,
    pub seed: Option<u64>,
}

/// Precedence: CLI flags over config-file values over per-dimension
/// defaults.
pub fn resolve_integrator(
    qubits: usize,
    file: Option<&IntegratorFileConfig>,
    flags: &IntegratorOverrides,
) -> CliResult<IntegratorConfig> {
    let mut cfg = IntegratorConfig::recommended(qubits);
    if let Some(file) = file {
        if let Some(method) = &file.method {
            cfg.method = parse_method(method)?;
        }
        if let Some(points) = file.points {
            cfg.grid_points_per_angle = points;
        }
        if let Some(samples) = file.samples {
            cfg.mc_samples = samples;
        }
        if let Some(seed) = file.seed {
            cfg.rng_seed = seed;
        }
        if let Some(fix) = file.fix_first_detector {
            cfg.fix_first_detector = fix;
        }
    }
    if let Some(method) = flags.method {
        cfg.method = method;
    }
    if let Some(points) = flags.grid_points {
        cfg.grid_points_per_angle = points;
    }
    if let Some(samples) = flags.mc_samples {
        cfg.mc_samples = samples;
    }
    if let Some(seed) = flags.seed {
        cfg.rng_seed = seed;
    }
    cfg.validate()?;
    Ok(cfg)
}
