//! Argument definitions and dispatch.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use qreact_core::baselines::DiscordConfig;
use qreact_core::{IntegrationMethod, IntegratorConfig, StateFamily};

use crate::commands::{
    compare_csv, geometry_json, run_compare, run_geometry, run_schumacher, run_sweep,
    schumacher_json, sweep_csv, sweep_json, StateSource, SweepSpec,
};
use crate::config::{load_integrator_file, resolve_integrator, IntegratorOverrides};
use crate::error::{CliError, CliResult};
use crate::output::write_output;

#[derive(Parser, Debug)]
#[command(
    name = "qreact",
    version,
    about = "Entropic information geometry and reactivity of few-qubit states"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Sweep the entanglement parameter of a state family and report the
    /// reactivity per λ
    Sweep(SweepArgs),
    /// Entropies, distances, areas and volumes of one state at one
    /// explicit detector setting
    Geometry(GeometryArgs),
    /// Concurrence, discord and normalized reactivity of the bipartite
    /// Werner state on a shared λ grid
    Compare(CompareArgs),
    /// Schumacher quadrilateral edge lengths and metric violation
    Schumacher(SchumacherArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Grid,
    Mc,
}

impl From<MethodArg> for IntegrationMethod {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Grid => IntegrationMethod::Grid,
            MethodArg::Mc => IntegrationMethod::MonteCarlo,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Csv,
    Json,
}

#[derive(Args, Debug, Default)]
pub struct IntegratorArgs {
    /// Integration method (defaults to grid for 2 qubits, mc otherwise)
    #[arg(long, value_enum)]
    pub method: Option<MethodArg>,
    /// Midpoint nodes per angle for the grid method
    #[arg(long)]
    pub grid_points: Option<usize>,
    /// Sample count for the mc method
    #[arg(long)]
    pub mc_samples: Option<usize>,
    /// RNG seed for the mc method
    #[arg(long)]
    pub seed: Option<u64>,
    /// JSON config file; explicit flags take precedence over its values
    #[arg(long)]
    pub config: Option<PathBuf>,
}

impl IntegratorArgs {
    fn resolve(&self, qubits: usize) -> CliResult<IntegratorConfig> {
        let file = self
            .config
            .as_deref()
            .map(load_integrator_file)
            .transpose()?;
        let overrides = IntegratorOverrides {
            method: self.method.map(Into::into),
            grid_points: self.grid_points,
            mc_samples: self.mc_samples,
            seed: self.seed,
        };
        resolve_integrator(qubits, file.as_ref(), &overrides)
    }
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    /// State family id (werner2, werner3_ghz, werner3_w, werner4_ghz, …)
    #[arg(long)]
    pub family: String,
    #[arg(long, default_value_t = 0.0)]
    pub lambda_start: f64,
    #[arg(long, default_value_t = 1.0)]
    pub lambda_end: f64,
    /// Number of λ points, endpoints included
    #[arg(long, default_value_t = 21)]
    pub steps: usize,
    #[command(flatten)]
    pub integrator: IntegratorArgs,
    /// Also emit the affinely normalized curve (needs λ=0 and λ=1 rows)
    #[arg(long)]
    pub normalize: bool,
    /// Output file (stdout when omitted)
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    pub format: FormatArg,
}

#[derive(Args, Debug)]
pub struct GeometryArgs {
    /// State family id; alternative to --state-file
    #[arg(long, conflicts_with = "state_file")]
    pub family: Option<String>,
    /// Entanglement parameter for mixture families
    #[arg(long, default_value_t = 1.0)]
    pub lambda: f64,
    /// JSON density-matrix file; alternative to --family
    #[arg(long)]
    pub state_file: Option<PathBuf>,
    /// Detector angles in radians: "θ1,φ1;θ2,φ2;…", one pair per qubit
    #[arg(long)]
    pub angles: String,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct CompareArgs {
    #[arg(long, default_value_t = 0.0)]
    pub lambda_start: f64,
    #[arg(long, default_value_t = 1.0)]
    pub lambda_end: f64,
    #[arg(long, default_value_t = 21)]
    pub steps: usize,
    #[command(flatten)]
    pub integrator: IntegratorArgs,
    /// Discord optimizer coarse grid, e.g. 64x32
    #[arg(long, default_value = "64x32")]
    pub discord_grid: String,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct SchumacherArgs {
    /// Grid-search the most-violating detector quadruple
    #[arg(long)]
    pub search: bool,
    /// Coarse grid points per angle for --search
    #[arg(long, default_value_t = 16)]
    pub search_grid: usize,
    /// Explicit quadruple "a1θ,a1φ;a2θ,a2φ;b1θ,b1φ;b2θ,b2φ" (radians)
    #[arg(long, conflicts_with = "search")]
    pub angles: Option<String>,
    /// Two-qubit state family to probe
    #[arg(long, default_value = "singlet", conflicts_with = "state_file")]
    pub family: String,
    #[arg(long)]
    pub state_file: Option<PathBuf>,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

pub fn parse_angles(text: &str) -> CliResult<Vec<(f64, f64)>> {
    let mut out = Vec::new();
    for pair in text.split(';') {
        let parts: Vec<&str> = pair.split(',').map(str::trim).collect();
        if parts.len() != 2 {
            return Err(CliError::usage(format!(
                "bad angle pair `{pair}` (expected \"θ,φ\")"
            )));
        }
        let theta: f64 = parts[0]
            .parse()
            .map_err(|_| CliError::usage(format!("bad θ value `{}`", parts[0])))?;
        let phi: f64 = parts[1]
            .parse()
            .map_err(|_| CliError::usage(format!("bad φ value `{}`", parts[1])))?;
        out.push((theta, phi));
    }
    Ok(out)
}

fn parse_family(name: &str) -> CliResult<StateFamily> {
    name.parse::<StateFamily>().map_err(CliError::from)
}

fn parse_discord_grid(text: &str) -> CliResult<DiscordConfig> {
    let (nt, np) = text
        .split_once('x')
        .ok_or_else(|| CliError::usage(format!("bad discord grid `{text}` (expected NxM)")))?;
    let n_theta = nt
        .parse()
        .map_err(|_| CliError::usage(format!("bad discord grid `{text}`")))?;
    let n_phi = np
        .parse()
        .map_err(|_| CliError::usage(format!("bad discord grid `{text}`")))?;
    let cfg = DiscordConfig {
        n_theta,
        n_phi,
        ..Default::default()
    };
    cfg.validate()?;
    Ok(cfg)
}

/// Runs one parsed invocation end to end.
pub fn run_command(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Sweep(args) => {
            let family = parse_family(&args.family)?;
            let spec = SweepSpec {
                family,
                lambda_start: args.lambda_start,
                lambda_end: args.lambda_end,
                steps: args.steps,
                integrator: args.integrator.resolve(family.qubits())?,
                normalize: args.normalize,
            };
            let rows = run_sweep(&spec)?;
            let text = match args.format {
                FormatArg::Csv => sweep_csv(&rows),
                FormatArg::Json => sweep_json(&rows)?,
            };
            write_output(args.output.as_deref(), &text)
        }
        Command::Geometry(args) => {
            let source = match (&args.family, &args.state_file) {
                (Some(family), None) => StateSource::Family {
                    family: parse_family(family)?,
                    lambda: args.lambda,
                },
                (None, Some(path)) => StateSource::File(path.clone()),
                _ => {
                    return Err(CliError::usage(
                        "geometry needs exactly one of --family or --state-file",
                    ))
                }
            };
            let angles = parse_angles(&args.angles)?;
            let report = run_geometry(&source, &angles)?;
            write_output(args.output.as_deref(), &geometry_json(&report))
        }
        Command::Compare(args) => {
            let discord_cfg = parse_discord_grid(&args.discord_grid)?;
            let integrator = args.integrator.resolve(2)?;
            let rows = run_compare(
                args.lambda_start,
                args.lambda_end,
                args.steps,
                &discord_cfg,
                &integrator,
            )?;
            write_output(args.output.as_deref(), &compare_csv(&rows))
        }
        Command::Schumacher(args) => {
            let source = match &args.state_file {
                Some(path) => StateSource::File(path.clone()),
                None => StateSource::Family {
                    family: parse_family(&args.family)?,
                    lambda: 1.0,
                },
            };
            let explicit = match &args.angles {
                Some(text) => {
                    let pairs = parse_angles(text)?;
                    let four: [(f64, f64); 4] = pairs.try_into().map_err(|_| {
                        CliError::usage("schumacher --angles needs exactly four θ,φ pairs")
                    })?;
                    Some(four)
                }
                None => None,
            };
            let report = run_schumacher(&source, args.search, args.search_grid, explicit)?;
            write_output(args.output.as_deref(), &schumacher_json(&report))
        }
    }
}
