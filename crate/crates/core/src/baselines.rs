//! Reference two-qubit correlation measures for comparison curves:
//! Wootters concurrence, von Neumann entropy, quantum mutual information,
//! and Ollivier–Zurek discord with a deterministic measurement optimizer.

use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::linalg::{C64, CMatrix};
use crate::qstate::{build_projector, make_state, DensityMatrix, StateFamily};
use crate::reactivity::{normalize_curve, reactivity, IntegratorConfig};
use crate::{Error, Result};

fn wrap_phi(x: f64) -> f64 {
    let two_pi = 2.0 * core::f64::consts::PI;
    let r = x % two_pi;
    if r < 0.0 {
        r + two_pi
    } else {
        r
    }
}

fn sigma_y_pair() -> CMatrix {
    let mut sy = CMatrix::zeros(2);
    sy[(0, 1)] = C64::new(0.0, -1.0);
    sy[(1, 0)] = C64::new(0.0, 1.0);
    sy.kron(&sy)
}

/// `−Σ λ_i log₂ λ_i` over the eigenvalues, with `0·log 0 = 0`. Round-off
/// negatives within the PSD tolerance are clamped to zero.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> f64 {
    let mut s = 0.0f64;
    for l in rho.matrix().hermitian_eigenvalues() {
        if l > 0.0 {
            s -= l * l.log2();
        }
    }
    s.max(0.0)
}

/// `I(ρ_AB) = S(ρ_A) + S(ρ_B) − S(ρ_AB)` for a two-qubit state, in bits.
pub fn mutual_information(rho: &DensityMatrix) -> Result<f64> {
    if rho.qubits() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            actual: rho.qubits(),
        });
    }
    let sa = von_neumann_entropy(&rho.partial_trace(&[0])?);
    let sb = von_neumann_entropy(&rho.partial_trace(&[1])?);
    Ok((sa + sb - von_neumann_entropy(rho)).max(0.0))
}

/// Wootters concurrence `max(0, √λ₁ − √λ₂ − √λ₃ − √λ₄)`, where `λ_i` are
/// the eigenvalues (descending) of `ρ ρ̃` and
/// `ρ̃ = (σ_y ⊗ σ_y) ρ* (σ_y ⊗ σ_y)` with conjugation in the computational
/// basis. The spectrum is extracted from the Hermitian form
/// `√ρ ρ̃ √ρ`, which shares the eigenvalues of `ρ ρ̃`.
pub fn concurrence(rho: &DensityMatrix) -> Result<f64> {
    if rho.qubits() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            actual: rho.qubits(),
        });
    }
    let sysy = sigma_y_pair();
    let rho_tilde = sysy.matmul(&rho.matrix().conjugate()).matmul(&sysy);
    let sqrt_rho = rho.matrix().hermitian_sqrt_psd();
    let m = sqrt_rho.matmul(&rho_tilde).matmul(&sqrt_rho);
    let mut roots: Vec<f64> = m
        .hermitian_eigenvalues()
        .into_iter()
        .map(|l| l.max(0.0).sqrt())
        .collect();
    roots.sort_unstable_by(|a, b| b.partial_cmp(a).expect("finite roots"));
    let c = roots[0] - roots[1] - roots[2] - roots[3];
    Ok(c.clamp(0.0, 1.0))
}

/// Optimizer settings for the discord measurement maximization: a coarse
/// `n_theta × n_phi` midpoint grid, then alternating golden-section passes
/// on each angle within one grid cell.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DiscordConfig {
    pub n_theta: usize,
    pub n_phi: usize,
    pub refine_iterations: usize,
    pub tolerance: f64,
}

impl Default for DiscordConfig {
    fn default() -> Self {
        Self {
            n_theta: 64,
            n_phi: 32,
            refine_iterations: 3,
            tolerance: 1e-9,
        }
    }
}

impl DiscordConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_theta < 8 || self.n_phi < 8 {
            return Err(Error::InvalidConfig("discord grid must be at least 8×8"));
        }
        if !(self.tolerance > 0.0) {
            return Err(Error::InvalidConfig("discord tolerance must be positive"));
        }
        Ok(())
    }
}

/// Discord value together with the maximized classical correlation
/// `J = S(ρ_B) − Σ_j p_j S(ρ_{B|j})`. `converged` is false when the last
/// refinement pass still moved the maximum by more than the tolerance; the
/// best value found is reported either way.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DiscordResult {
    pub value: f64,
    pub classical_correlation: f64,
    pub converged: bool,
}

/// Entropy of the unnormalized conditional state `(Π_j ⊗ I) ρ (Π_j ⊗ I)`,
/// weighted by its probability. Outcomes with negligible probability
/// contribute nothing.
fn measured_branch_entropy(rho: &CMatrix, theta: f64, phi: f64, outcome: bool) -> f64 {
    let projector = build_projector(theta, phi, outcome).expect("angles in range");
    let m = projector.kron(&CMatrix::identity(2));
    let collapsed = m.matmul(rho).matmul(&m);
    let p = collapsed.trace().re;
    if p < 1e-12 {
        return 0.0;
    }
    // reduced state of B: trace out qubit A (the high-order index bit)
    let mut reduced = CMatrix::zeros(2);
    for i in 0..2 {
        for j in 0..2 {
            reduced[(i, j)] = collapsed[(i, j)] + collapsed[(2 + i, 2 + j)];
        }
    }
    let mut s = 0.0f64;
    for l in reduced.hermitian_eigenvalues() {
        let l = l / p;
        if l > 0.0 {
            s -= l * l.log2();
        }
    }
    p * s.max(0.0)
}

/// Ollivier–Zurek discord `D_A(ρ) = I(ρ) − max_Π J_Π(ρ)`, maximizing over
/// rank-1 projective measurements `{Π(θ,φ), I − Π(θ,φ)}` on qubit A.
pub fn discord(rho: &DensityMatrix, cfg: &DiscordConfig) -> Result<DiscordResult> {
    cfg.validate()?;
    if rho.qubits() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            actual: rho.qubits(),
        });
    }
    let total_mi = mutual_information(rho)?;
    let s_b = von_neumann_entropy(&rho.partial_trace(&[1])?);
    let mat = rho.matrix();

    let classical = |theta: f64, phi: f64| -> f64 {
        s_b - measured_branch_entropy(mat, theta, phi, true)
            - measured_branch_entropy(mat, theta, phi, false)
    };

    // Coarse midpoint grid; strict improvement keeps the lowest grid index
    // on ties, so the argmax is reproducible.
    let pi = core::f64::consts::PI;
    let mut best = (0.0f64, 0.0f64, f64::NEG_INFINITY);
    for it in 0..cfg.n_theta {
        let theta = (it as f64 + 0.5) * pi / cfg.n_theta as f64;
        for ip in 0..cfg.n_phi {
            let phi = (ip as f64 + 0.5) * 2.0 * pi / cfg.n_phi as f64;
            let j = classical(theta, phi);
            if j > best.2 {
                best = (theta, phi, j);
            }
        }
    }

    // Alternating golden-section passes on θ then φ around the best cell.
    let golden = |f: &dyn Fn(f64) -> f64, mut lo: f64, mut hi: f64| -> (f64, f64) {
        let inv_phi = (5.0f64.sqrt() - 1.0) / 2.0;
        let mut x1 = hi - inv_phi * (hi - lo);
        let mut x2 = lo + inv_phi * (hi - lo);
        let mut f1 = f(x1);
        let mut f2 = f(x2);
        while hi - lo > cfg.tolerance {
            if f1 >= f2 {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - inv_phi * (hi - lo);
                f1 = f(x1);
            } else {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + inv_phi * (hi - lo);
                f2 = f(x2);
            }
        }
        let mid = 0.5 * (lo + hi);
        (mid, f(mid))
    };

    let dt = pi / cfg.n_theta as f64;
    let dp = 2.0 * pi / cfg.n_phi as f64;
    let mut converged = cfg.refine_iterations == 0;
    for _ in 0..cfg.refine_iterations {
        let before = best.2;
        let phi = best.1;
        let (theta, j_t) = golden(
            &|t| classical(t, phi),
            (best.0 - dt).max(0.0),
            (best.0 + dt).min(pi),
        );
        if j_t > best.2 {
            best = (theta, phi, j_t);
        }
        let theta = best.0;
        let (phi, j_p) = golden(
            &|p| classical(theta, wrap_phi(p)),
            best.1 - dp,
            best.1 + dp,
        );
        if j_p > best.2 {
            best = (theta, wrap_phi(phi), j_p);
        }
        converged = best.2 - before <= cfg.tolerance;
    }

    Ok(DiscordResult {
        value: (total_mi - best.2).max(0.0),
        classical_correlation: best.2,
        converged,
    })
}

/// One row of the bipartite-Werner comparison table.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ComparisonRow {
    pub lambda: f64,
    pub concurrence: f64,
    pub discord: f64,
    pub reactivity_norm: f64,
}

/// Concurrence, discord and affinely normalized reactivity of the
/// bipartite Werner state on a shared λ grid (must include both
/// endpoints). The integrator configuration is reused across λ, so the
/// same settings weigh every point.
pub fn comparison_sweep(
    lambdas: &[f64],
    discord_cfg: &DiscordConfig,
    integrator: &IntegratorConfig,
) -> Result<Vec<ComparisonRow>> {
    for &l in lambdas {
        if !(0.0..=1.0).contains(&l) {
            return Err(Error::LambdaOutOfRange(l));
        }
    }
    let mut raw = Vec::with_capacity(lambdas.len());
    let mut rows = Vec::with_capacity(lambdas.len());
    for &lambda in lambdas {
        let rho = make_state(StateFamily::Werner2, lambda)?;
        let c = concurrence(&rho)?;
        let d = discord(&rho, discord_cfg)?.value;
        let r = reactivity(&rho, integrator)?.reactivity;
        raw.push((lambda, r));
        rows.push(ComparisonRow {
            lambda,
            concurrence: c,
            discord: d,
            reactivity_norm: f64::NAN,
        });
    }
    let normalized = normalize_curve(&raw)?;
    for (row, (_, r)) in rows.iter_mut().zip(normalized) {
        row.reactivity_norm = r;
    }
    Ok(rows)
}
