//! The four commands behind the CLI: λ-sweeps, single-setting geometry
//! reports, the concurrence/discord/reactivity comparison and the
//! Schumacher quadrilateral.

use std::collections::BTreeMap;
use std::path::PathBuf;

use serde::Serialize;

use qreact_core::baselines::{comparison_sweep, ComparisonRow, DiscordConfig};
use qreact_core::{
    joint_distribution, make_state, mean_geometry, normalize_curve, schumacher_quadrilateral,
    schumacher_search, DensityMatrix, EntropyTable, GeometryReport, IntegratorConfig,
    MeasurementSetting, StateFamily,
};

use crate::error::{CliError, CliResult};
use crate::labels::subset_name;
use crate::output::{fmt_f64, fmt_opt, CSV_SCHEMA_COMMENT};
use crate::statefile::load_density_matrix;

// ---------------------------------------------------------------------------
// sweep

#[derive(Debug, Clone)]
pub struct SweepSpec {
    pub family: StateFamily,
    pub lambda_start: f64,
    pub lambda_end: f64,
    pub steps: usize,
    pub integrator: IntegratorConfig,
    pub normalize: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepRow {
    pub lambda: f64,
    pub reactivity_raw: Option<f64>,
    pub reactivity_norm: Option<f64>,
    pub numerator_mean: f64,
    pub denominator_mean: f64,
    pub stderr: Option<f64>,
    pub samples: usize,
    pub degenerate: bool,
}

/// Evenly spaced λ grid with exact endpoints.
pub fn lambda_grid(start: f64, end: f64, steps: usize) -> Vec<f64> {
    (0..steps)
        .map(|i| {
            if i + 1 == steps {
                end
            } else {
                start + (end - start) * i as f64 / (steps - 1) as f64
            }
        })
        .collect()
}

/// One reactivity estimate per λ, reusing one sample/grid set across the
/// whole sweep (the integrator configuration, including the seed, is held
/// fixed, so every λ sees the same detector settings).
pub fn run_sweep(spec: &SweepSpec) -> CliResult<Vec<SweepRow>> {
    if spec.steps < 2 {
        return Err(CliError::usage("sweep needs at least 2 steps"));
    }
    if !(0.0 <= spec.lambda_start && spec.lambda_start < spec.lambda_end && spec.lambda_end <= 1.0)
    {
        return Err(CliError::usage(
            "lambda range must satisfy 0 <= start < end <= 1",
        ));
    }
    let mut rows = Vec::with_capacity(spec.steps);
    for lambda in lambda_grid(spec.lambda_start, spec.lambda_end, spec.steps) {
        let rho = make_state(spec.family, lambda)?;
        let mg = mean_geometry(&rho, &spec.integrator)?;
        let row = match mg.reactivity_result() {
            Ok(r) => SweepRow {
                lambda,
                reactivity_raw: Some(r.reactivity),
                reactivity_norm: None,
                numerator_mean: r.mean_numerator,
                denominator_mean: r.mean_denominator,
                stderr: r.stderr_estimate,
                samples: r.samples_used,
                degenerate: false,
            },
            // A vanishing denominator marks the row and the run continues.
            Err(qreact_core::Error::DegenerateGeometry(_)) => SweepRow {
                lambda,
                reactivity_raw: None,
                reactivity_norm: None,
                numerator_mean: mg.boundary_mean,
                denominator_mean: mg.bulk_mean,
                stderr: None,
                samples: mg.samples_used,
                degenerate: true,
            },
            Err(e) => return Err(e.into()),
        };
        rows.push(row);
    }
    if spec.normalize {
        let curve: Vec<(f64, f64)> = rows
            .iter()
            .filter_map(|r| r.reactivity_raw.map(|v| (r.lambda, v)))
            .collect();
        let normalized = normalize_curve(&curve)?;
        let mut values = normalized.iter();
        for row in rows.iter_mut() {
            if row.reactivity_raw.is_some() {
                row.reactivity_norm = values.next().map(|&(_, v)| v);
            }
        }
    }
    Ok(rows)
}

pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = String::new();
    out.push_str(CSV_SCHEMA_COMMENT);
    out.push('\n');
    out.push_str(
        "lambda,reactivity_raw,reactivity_norm,numerator_mean,denominator_mean,stderr,samples,degenerate_flag\n",
    );
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            fmt_f64(r.lambda),
            fmt_opt(r.reactivity_raw),
            fmt_opt(r.reactivity_norm),
            fmt_f64(r.numerator_mean),
            fmt_f64(r.denominator_mean),
            fmt_opt(r.stderr),
            r.samples,
            u8::from(r.degenerate),
        ));
    }
    out
}

pub fn sweep_json(rows: &[SweepRow]) -> CliResult<String> {
    let mut text = serde_json::to_string_pretty(rows).expect("rows serialize");
    text.push('\n');
    Ok(text)
}

// ---------------------------------------------------------------------------
// geometry

#[derive(Debug, Clone)]
pub enum StateSource {
    Family { family: StateFamily, lambda: f64 },
    File(PathBuf),
}

impl StateSource {
    pub fn load(&self) -> CliResult<(String, Option<f64>, DensityMatrix)> {
        match self {
            StateSource::Family { family, lambda } => Ok((
                family.id().to_string(),
                family.is_mixture().then_some(*lambda),
                make_state(*family, *lambda)?,
            )),
            StateSource::File(path) => Ok((
                path.display().to_string(),
                None,
                load_density_matrix(path)?,
            )),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct GeometryOutput {
    pub state: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<f64>,
    pub dim_qubits: usize,
    pub setting: Vec<[f64; 2]>,
    pub entropies: BTreeMap<String, f64>,
    pub distances: BTreeMap<String, f64>,
    pub areas: BTreeMap<String, f64>,
    pub volumes: BTreeMap<String, f64>,
    pub perimeter: f64,
    pub surface: f64,
    pub volume_total: f64,
}

/// Full entropic geometry of one state under one explicit setting.
pub fn run_geometry(source: &StateSource, angles: &[(f64, f64)]) -> CliResult<GeometryOutput> {
    let (state, lambda, rho) = source.load()?;
    let setting = MeasurementSetting::new(angles.to_vec())?;
    let dist = joint_distribution(&rho, &setting)?;
    let table = EntropyTable::from_distribution(&dist);
    let report = GeometryReport::from_table(&table)?;

    let d = rho.qubits();
    let mut entropies = BTreeMap::new();
    for mask in 1usize..(1 << d) {
        let vars: Vec<usize> = (0..d).filter(|v| mask >> v & 1 == 1).collect();
        entropies.insert(subset_name(&vars), table.entropy(&vars)?);
    }
    Ok(GeometryOutput {
        state,
        lambda,
        dim_qubits: d,
        setting: angles.iter().map(|&(t, p)| [t, p]).collect(),
        entropies,
        distances: report
            .distances
            .iter()
            .map(|(pair, v)| (subset_name(pair), *v))
            .collect(),
        areas: report
            .areas
            .iter()
            .map(|(t, v)| (subset_name(t), *v))
            .collect(),
        volumes: report
            .volumes
            .iter()
            .map(|(q, v)| (subset_name(q), *v))
            .collect(),
        perimeter: report.perimeter,
        surface: report.surface,
        volume_total: report.volume_total,
    })
}

pub fn geometry_json(out: &GeometryOutput) -> String {
    let mut text = serde_json::to_string_pretty(out).expect("report serializes");
    text.push('\n');
    text
}

// ---------------------------------------------------------------------------
// compare

/// Concurrence, discord and normalized reactivity of the bipartite Werner
/// state on a shared λ grid.
pub fn run_compare(
    lambda_start: f64,
    lambda_end: f64,
    steps: usize,
    discord_cfg: &DiscordConfig,
    integrator: &IntegratorConfig,
) -> CliResult<Vec<ComparisonRow>> {
    if steps < 2 {
        return Err(CliError::usage("compare needs at least 2 steps"));
    }
    let lambdas = lambda_grid(lambda_start, lambda_end, steps);
    Ok(comparison_sweep(&lambdas, discord_cfg, integrator)?)
}

pub fn compare_csv(rows: &[ComparisonRow]) -> String {
    let mut out = String::new();
    out.push_str(CSV_SCHEMA_COMMENT);
    out.push('\n');
    out.push_str("lambda,concurrence,discord,reactivity_norm\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{}\n",
            fmt_f64(r.lambda),
            fmt_f64(r.concurrence),
            fmt_f64(r.discord),
            fmt_f64(r.reactivity_norm),
        ));
    }
    out
}

// ---------------------------------------------------------------------------
// schumacher

#[derive(Debug, Serialize)]
pub struct SchumacherOutput {
    pub state: String,
    pub search: bool,
    pub angles: BTreeMap<String, [f64; 2]>,
    pub edges: BTreeMap<String, f64>,
    pub violation: f64,
}

/// Either evaluates an explicit quadruple of detector settings or runs the
/// deterministic grid search for the most-violating one.
pub fn run_schumacher(
    source: &StateSource,
    search: bool,
    search_grid: usize,
    explicit: Option<[(f64, f64); 4]>,
) -> CliResult<SchumacherOutput> {
    let (state, _, rho) = source.load()?;
    let report = if search {
        schumacher_search(&rho, search_grid)?
    } else {
        let [a1, a2, b1, b2] = explicit.ok_or_else(|| {
            CliError::usage("schumacher needs --angles \"a1;a2;b1;b2\" unless --search is given")
        })?;
        schumacher_quadrilateral(&rho, a1, a2, b1, b2)?
    };
    let pair = |x: (f64, f64)| [x.0, x.1];
    Ok(SchumacherOutput {
        state,
        search,
        angles: BTreeMap::from([
            ("a1".into(), pair(report.a1)),
            ("a2".into(), pair(report.a2)),
            ("b1".into(), pair(report.b1)),
            ("b2".into(), pair(report.b2)),
        ]),
        edges: BTreeMap::from([
            ("a1_b1".into(), report.d_a1_b1),
            ("b1_a2".into(), report.d_b1_a2),
            ("a2_b2".into(), report.d_a2_b2),
            ("a1_b2".into(), report.d_a1_b2),
        ]),
        violation: report.violation,
    })
}

pub fn schumacher_json(out: &SchumacherOutput) -> String {
    let mut text = serde_json::to_string_pretty(out).expect("report serializes");
    text.push('\n');
    text
}
