//! Averages of the entropic geometry over the space of detector settings
//! and the reactivity ratio, plus the Schumacher quadrilateral.
//!
//! The measure on the space of measurements is UNIFORM in each Stokes angle,
//! `dθ dφ` over `[0, π] × [0, 2π)` — not the `sinθ dθ dφ` Haar measure. This
//! is what makes the per-detector volume `∫dθ dφ = 2π²`, and it is the one
//! place the averaging differs from Haar sampling. Observer 0 is pinned at
//! `θ = φ = 0` by default; only the remaining detectors vary. Weights sum to
//! one, so the measure normalization is built into every average.
//!
//! Estimates are reproducible by construction: grid nodes are midpoints,
//! Monte Carlo settings are indexed ChaCha streams derived from one seed,
//! and the reduction is a chunked sum in sample-index order regardless of
//! how many workers run it.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

#[allow(unused_imports)]
use num_traits::Float;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::infogeo::{pairs, quadruples, triples, EntropyTable, GeometryReport};
use crate::qstate::{joint_distribution, DensityMatrix, MeasurementSetting};
use crate::{Error, Result};

/// Below this mean denominator the geometry is reported as degenerate
/// (perfectly correlated observers) instead of a huge ratio.
pub const DEGENERATE_DENOMINATOR_TOL: f64 = 1e-9;

/// Samples are reduced in fixed chunks of this size, in index order, so the
/// result is bit-identical however the chunks are scheduled.
const REDUCTION_CHUNK: usize = 1024;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IntegrationMethod {
    /// Tensor-product midpoint rule, `grid_points_per_angle` nodes per angle.
    Grid,
    /// I.i.d. uniform draws, one counter-mode RNG stream per sample index.
    MonteCarlo,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IntegratorConfig {
    pub method: IntegrationMethod,
    pub grid_points_per_angle: usize,
    pub mc_samples: usize,
    pub rng_seed: u64,
    pub fix_first_detector: bool,
}

impl Default for IntegratorConfig {
    fn default() -> Self {
        Self {
            method: IntegrationMethod::Grid,
            grid_points_per_angle: 128,
            mc_samples: 100_000,
            rng_seed: 0,
            fix_first_detector: true,
        }
    }
}

impl IntegratorConfig {
    /// Default integrator per dimension: the 2-angle case is cheap enough
    /// for a dense grid; 4 and 6 varying angles go to Monte Carlo.
    pub fn recommended(qubits: usize) -> Self {
        match qubits {
            2 => Self::default(),
            3 => Self {
                method: IntegrationMethod::MonteCarlo,
                mc_samples: 200_000,
                ..Self::default()
            },
            _ => Self {
                method: IntegrationMethod::MonteCarlo,
                mc_samples: 100_000,
                ..Self::default()
            },
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.grid_points_per_angle < 2 {
            return Err(Error::InvalidConfig("grid_points_per_angle must be at least 2"));
        }
        if self.mc_samples < 1 {
            return Err(Error::InvalidConfig("mc_samples must be at least 1"));
        }
        Ok(())
    }
}

/// Deterministic stream of weighted detector settings. `setting(i)` is pure
/// in `(config, i)`, so the same configuration always reproduces the same
/// sample set (common random numbers across a λ-sweep) and samples can be
/// evaluated in any order.
#[derive(Clone, Debug)]
pub struct SettingSampler {
    qubits: usize,
    varying_from: usize,
    cfg: IntegratorConfig,
    total: usize,
}

impl SettingSampler {
    pub fn new(qubits: usize, cfg: &IntegratorConfig) -> Result<Self> {
        if qubits < 2 {
            return Err(Error::UnsupportedDimension(qubits));
        }
        cfg.validate()?;
        let varying_from = usize::from(cfg.fix_first_detector);
        let varying = qubits - varying_from;
        let total = match cfg.method {
            IntegrationMethod::Grid => cfg
                .grid_points_per_angle
                .checked_pow(2 * varying as u32)
                .filter(|&t| t <= 1 << 31)
                .ok_or(Error::InvalidConfig("grid has more than 2^31 settings"))?,
            IntegrationMethod::MonteCarlo => cfg.mc_samples,
        };
        Ok(Self {
            qubits,
            varying_from,
            cfg: *cfg,
            total,
        })
    }

    pub fn len(&self) -> usize {
        self.total
    }

    pub fn is_empty(&self) -> bool {
        self.total == 0
    }

    /// Every sample carries the same weight `1 / len()`.
    pub fn weight(&self) -> f64 {
        1.0 / self.total as f64
    }

    pub fn setting(&self, index: usize) -> MeasurementSetting {
        debug_assert!(index < self.total);
        let mut angles = vec![(0.0f64, 0.0f64); self.qubits];
        match self.cfg.method {
            IntegrationMethod::Grid => {
                let p = self.cfg.grid_points_per_angle;
                let digits = 2 * (self.qubits - self.varying_from);
                let mut rem = index;
                // Least significant digit is the last detector's φ; the most
                // significant is the first varying detector's θ.
                for pos in (0..digits).rev() {
                    let digit = rem % p;
                    rem /= p;
                    let frac = (digit as f64 + 0.5) / p as f64;
                    let det = self.varying_from + pos / 2;
                    if pos % 2 == 0 {
                        angles[det].0 = frac * PI;
                    } else {
                        angles[det].1 = frac * 2.0 * PI;
                    }
                }
            }
            IntegrationMethod::MonteCarlo => {
                let mut rng = ChaCha8Rng::seed_from_u64(self.cfg.rng_seed);
                rng.set_stream(index as u64);
                for det in self.varying_from..self.qubits {
                    angles[det].0 = rng.random::<f64>() * PI;
                    angles[det].1 = rng.random::<f64>() * 2.0 * PI;
                }
            }
        }
        MeasurementSetting::new(angles).expect("sampled angles are in range")
    }

    pub fn iter(&self) -> impl Iterator<Item = (MeasurementSetting, f64)> + '_ {
        let w = self.weight();
        (0..self.total).map(move |i| (self.setting(i), w))
    }
}

/// Full geometry of one state under one detector setting.
pub fn geometry_at(rho: &DensityMatrix, setting: &MeasurementSetting) -> Result<GeometryReport> {
    let p = joint_distribution(rho, setting)?;
    let t = EntropyTable::from_distribution(&p);
    GeometryReport::from_table(&t)
}

fn boundary_bulk(qubits: usize, r: &GeometryReport) -> (f64, f64) {
    match qubits {
        // R = 1/⟨D⟩ is the d = 2 specialization: constant numerator.
        2 => (1.0, r.perimeter),
        3 => (r.perimeter, r.surface),
        _ => (r.surface, r.volume_total),
    }
}

#[derive(Clone)]
struct GeoAccum {
    pair_sums: Vec<f64>,
    triple_sums: Vec<f64>,
    quad_sums: Vec<f64>,
    perimeter: f64,
    surface: f64,
    volume: f64,
    boundary: f64,
    bulk: f64,
    boundary_sq: f64,
    bulk_sq: f64,
    cross: f64,
}

impl GeoAccum {
    fn new(np: usize, nt: usize, nq: usize) -> Self {
        Self {
            pair_sums: vec![0.0; np],
            triple_sums: vec![0.0; nt],
            quad_sums: vec![0.0; nq],
            perimeter: 0.0,
            surface: 0.0,
            volume: 0.0,
            boundary: 0.0,
            bulk: 0.0,
            boundary_sq: 0.0,
            bulk_sq: 0.0,
            cross: 0.0,
        }
    }

    fn push(&mut self, qubits: usize, r: &GeometryReport) {
        for (slot, (_, v)) in self.pair_sums.iter_mut().zip(&r.distances) {
            *slot += v;
        }
        for (slot, (_, v)) in self.triple_sums.iter_mut().zip(&r.areas) {
            *slot += v;
        }
        for (slot, (_, v)) in self.quad_sums.iter_mut().zip(&r.volumes) {
            *slot += v;
        }
        self.perimeter += r.perimeter;
        self.surface += r.surface;
        self.volume += r.volume_total;
        let (b, k) = boundary_bulk(qubits, r);
        self.boundary += b;
        self.bulk += k;
        self.boundary_sq += b * b;
        self.bulk_sq += k * k;
        self.cross += b * k;
    }

    fn merge(&mut self, o: &GeoAccum) {
        for (a, b) in self.pair_sums.iter_mut().zip(&o.pair_sums) {
            *a += b;
        }
        for (a, b) in self.triple_sums.iter_mut().zip(&o.triple_sums) {
            *a += b;
        }
        for (a, b) in self.quad_sums.iter_mut().zip(&o.quad_sums) {
            *a += b;
        }
        self.perimeter += o.perimeter;
        self.surface += o.surface;
        self.volume += o.volume;
        self.boundary += o.boundary;
        self.bulk += o.bulk;
        self.boundary_sq += o.boundary_sq;
        self.bulk_sq += o.bulk_sq;
        self.cross += o.cross;
    }
}

/// Sample second moments of the boundary and bulk integrands (Monte Carlo
/// runs only), for the delta-method error of their ratio.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct McMoments {
    pub boundary_variance: f64,
    pub bulk_variance: f64,
    pub covariance: f64,
}

/// Weight-averaged geometry of one state over the sampled settings.
#[derive(Clone, Debug)]
pub struct MeanGeometry {
    pub mean: GeometryReport,
    /// ⟨1⟩, ⟨𝒫⟩ or ⟨𝒮⟩ for d = 2, 3, 4.
    pub boundary_mean: f64,
    /// ⟨D⟩, ⟨𝒜⟩ or ⟨𝒱⟩ for d = 2, 3, 4.
    pub bulk_mean: f64,
    pub samples_used: usize,
    pub method: IntegrationMethod,
    pub mc_moments: Option<McMoments>,
}

/// Ratio of the mean boundary measure to the mean bulk measure.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ReactivityResult {
    pub mean_numerator: f64,
    pub mean_denominator: f64,
    pub reactivity: f64,
    /// First-order delta-method standard error; `None` for grid runs.
    pub stderr_estimate: Option<f64>,
    pub samples_used: usize,
}

impl MeanGeometry {
    pub fn reactivity_result(&self) -> Result<ReactivityResult> {
        if !(self.bulk_mean > DEGENERATE_DENOMINATOR_TOL) {
            return Err(Error::DegenerateGeometry(self.bulk_mean));
        }
        let ratio = self.boundary_mean / self.bulk_mean;
        let stderr_estimate = self.mc_moments.map(|m| {
            let n = self.samples_used as f64;
            let var =
                (m.boundary_variance - 2.0 * ratio * m.covariance + ratio * ratio * m.bulk_variance)
                    / n;
            var.max(0.0).sqrt() / self.bulk_mean
        });
        Ok(ReactivityResult {
            mean_numerator: self.boundary_mean,
            mean_denominator: self.bulk_mean,
            reactivity: ratio,
            stderr_estimate,
            samples_used: self.samples_used,
        })
    }
}

/// Per-setting geometry averaged over the space of measurements.
pub fn mean_geometry(rho: &DensityMatrix, cfg: &IntegratorConfig) -> Result<MeanGeometry> {
    let d = rho.qubits();
    if !(2..=4).contains(&d) {
        return Err(Error::UnsupportedDimension(d));
    }
    let sampler = SettingSampler::new(d, cfg)?;
    let n = sampler.len();
    let np = pairs(d).len();
    let nt = triples(d).len();
    let nq = quadruples(d).len();

    let eval_chunk = |chunk: usize| -> Result<GeoAccum> {
        let lo = chunk * REDUCTION_CHUNK;
        let hi = (lo + REDUCTION_CHUNK).min(n);
        let mut acc = GeoAccum::new(np, nt, nq);
        for i in lo..hi {
            let report = geometry_at(rho, &sampler.setting(i))?;
            acc.push(d, &report);
        }
        Ok(acc)
    };

    let nchunks = n.div_ceil(REDUCTION_CHUNK);
    #[cfg(feature = "parallel")]
    let partials = (0..nchunks)
        .into_par_iter()
        .map(eval_chunk)
        .collect::<Result<Vec<_>>>()?;
    #[cfg(not(feature = "parallel"))]
    let partials = (0..nchunks).map(eval_chunk).collect::<Result<Vec<_>>>()?;

    let mut acc = GeoAccum::new(np, nt, nq);
    for p in &partials {
        acc.merge(p);
    }

    let inv = 1.0 / n as f64;
    let mean = GeometryReport {
        num_vars: d,
        distances: pairs(d)
            .into_iter()
            .zip(acc.pair_sums.iter().map(|s| s * inv))
            .collect(),
        areas: triples(d)
            .into_iter()
            .zip(acc.triple_sums.iter().map(|s| s * inv))
            .collect(),
        volumes: quadruples(d)
            .into_iter()
            .zip(acc.quad_sums.iter().map(|s| s * inv))
            .collect(),
        perimeter: acc.perimeter * inv,
        surface: acc.surface * inv,
        volume_total: acc.volume * inv,
    };
    let boundary_mean = acc.boundary * inv;
    let bulk_mean = acc.bulk * inv;
    let mc_moments = (cfg.method == IntegrationMethod::MonteCarlo).then(|| {
        let nn = n as f64;
        let denom = if n > 1 { nn - 1.0 } else { 1.0 };
        McMoments {
            boundary_variance: ((acc.boundary_sq - nn * boundary_mean * boundary_mean) / denom)
                .max(0.0),
            bulk_variance: ((acc.bulk_sq - nn * bulk_mean * bulk_mean) / denom).max(0.0),
            covariance: (acc.cross - nn * boundary_mean * bulk_mean) / denom,
        }
    });
    Ok(MeanGeometry {
        mean,
        boundary_mean,
        bulk_mean,
        samples_used: n,
        method: cfg.method,
        mc_moments,
    })
}

/// Reactivity of a 2-, 3- or 4-qubit state: `1/⟨D⟩`, `⟨𝒫⟩/⟨𝒜⟩` or
/// `⟨𝒮⟩/⟨𝒱⟩` over the space of measurements.
pub fn reactivity(rho: &DensityMatrix, cfg: &IntegratorConfig) -> Result<ReactivityResult> {
    mean_geometry(rho, cfg)?.reactivity_result()
}

/// Affine rescaling so the λ=0 entry maps to 0 and the λ=1 entry to 1.
pub fn normalize_curve(values: &[(f64, f64)]) -> Result<Vec<(f64, f64)>> {
    const LAMBDA_EPS: f64 = 1e-12;
    let r0 = values
        .iter()
        .find(|(l, _)| l.abs() <= LAMBDA_EPS)
        .map(|&(_, r)| r)
        .ok_or(Error::MissingEndpoints)?;
    let r1 = values
        .iter()
        .find(|(l, _)| (l - 1.0).abs() <= LAMBDA_EPS)
        .map(|&(_, r)| r)
        .ok_or(Error::MissingEndpoints)?;
    if r1 == r0 {
        return Err(Error::ZeroRange);
    }
    let span = r1 - r0;
    Ok(values
        .iter()
        .map(|&(l, r)| (l, (r - r0) / span))
        .collect())
}

/// Edge lengths and metric violation of Schumacher's two-detector-per-side
/// quadrilateral. Each edge distance comes from the pairwise distribution
/// of one A-detector with one B-detector, measured on its own sub-ensemble.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SchumacherReport {
    pub a1: (f64, f64),
    pub a2: (f64, f64),
    pub b1: (f64, f64),
    pub b2: (f64, f64),
    pub d_a1_b1: f64,
    pub d_b1_a2: f64,
    pub d_a2_b2: f64,
    pub d_a1_b2: f64,
    /// `D(A1,B2) − [D(A1,B1) + D(B1,A2) + D(A2,B2)]`; positive means the
    /// direct edge exceeds the indirect path, impossible for any single
    /// classical joint distribution.
    pub violation: f64,
}

pub fn schumacher_quadrilateral(
    rho: &DensityMatrix,
    a1: (f64, f64),
    a2: (f64, f64),
    b1: (f64, f64),
    b2: (f64, f64),
) -> Result<SchumacherReport> {
    if rho.qubits() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            actual: rho.qubits(),
        });
    }
    let edge = |a: (f64, f64), b: (f64, f64)| -> Result<f64> {
        let setting = MeasurementSetting::new(vec![a, b])?;
        let table = EntropyTable::from_distribution(&joint_distribution(rho, &setting)?);
        table.info_distance(0, 1)
    };
    let d_a1_b1 = edge(a1, b1)?;
    let d_b1_a2 = edge(a2, b1)?;
    let d_a2_b2 = edge(a2, b2)?;
    let d_a1_b2 = edge(a1, b2)?;
    Ok(SchumacherReport {
        a1,
        a2,
        b1,
        b2,
        d_a1_b1,
        d_b1_a2,
        d_a2_b2,
        d_a1_b2,
        violation: d_a1_b2 - (d_a1_b1 + d_b1_a2 + d_a2_b2),
    })
}

/// Deterministic search for the most-violating quadrilateral: `A1` pinned
/// at `θ = φ = 0`, a coarse midpoint grid over the `(a2, b1, b2)` polar
/// angles with `φ = 0`, then one refinement pass of the same resolution
/// around the best cell. Ties keep the lowest grid index.
pub fn schumacher_search(rho: &DensityMatrix, coarse_points: usize) -> Result<SchumacherReport> {
    if coarse_points < 2 {
        return Err(Error::InvalidConfig("schumacher search needs at least 2 grid points"));
    }
    let a1 = (0.0, 0.0);
    let scan = |lo: [f64; 3], hi: [f64; 3]| -> Result<([f64; 3], SchumacherReport)> {
        let mut best: Option<([f64; 3], SchumacherReport)> = None;
        for ia in 0..coarse_points {
            for ib in 0..coarse_points {
                for ic in 0..coarse_points {
                    let frac = |i: usize| (i as f64 + 0.5) / coarse_points as f64;
                    let t = [
                        lo[0] + (hi[0] - lo[0]) * frac(ia),
                        lo[1] + (hi[1] - lo[1]) * frac(ib),
                        lo[2] + (hi[2] - lo[2]) * frac(ic),
                    ];
                    let report =
                        schumacher_quadrilateral(rho, a1, (t[0], 0.0), (t[1], 0.0), (t[2], 0.0))?;
                    if best
                        .as_ref()
                        .map_or(true, |(_, b)| report.violation > b.violation)
                    {
                        best = Some((t, report));
                    }
                }
            }
        }
        Ok(best.expect("non-empty grid"))
    };

    let full: ([f64; 3], SchumacherReport);
    {
        let lo = [0.0; 3];
        let hi = [PI; 3];
        full = scan(lo, hi)?;
    }
    let cell = PI / coarse_points as f64;
    let center = full.0;
    let lo = [
        (center[0] - cell).max(0.0),
        (center[1] - cell).max(0.0),
        (center[2] - cell).max(0.0),
    ];
    let hi = [
        (center[0] + cell).min(PI),
        (center[1] + cell).min(PI),
        (center[2] + cell).min(PI),
    ];
    let refined = scan(lo, hi)?;
    Ok(if refined.1.violation >= full.1.violation {
        refined.1
    } else {
        full.1
    })
}
