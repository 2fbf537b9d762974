//! Quantum-state algebra: density matrices, the Werner/GHZ/W state
//! families, Stokes-angle detector projectors, and the classical joint
//! distribution of measurement outcomes.
//!
//! Outcome labeling: bit `1` means the detector projector
//! `Π¹ = ½(I + n̂·σ)` fired, with `n̂ = (sinθ cosφ, sinθ sinφ, cosθ)`.
//! At `θ = 0` this is the projector onto `|0⟩`. Entropic quantities are
//! label-invariant, so the convention only affects raw probability tables.

use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

// f64 math comes from the trait in no_std builds.
#[allow(unused_imports)]
use num_traits::Float;

use crate::linalg::{C64, CMatrix};
use crate::{Error, Result};

/// Tolerance for Hermitian symmetry of a density matrix.
pub const HERMITICITY_TOL: f64 = 1e-12;
/// Tolerance for the unit trace of a density matrix.
pub const TRACE_TOL: f64 = 1e-12;
/// Eigenvalue floor below which a matrix is rejected as not PSD.
pub const PSD_MIN_EIGENVALUE: f64 = -1e-10;
/// Probabilities in `(-1e-10, 0)` are treated as round-off and clamped;
/// anything lower signals an invalid state.
pub const PROBABILITY_CLAMP_TOL: f64 = 1e-10;

/// Largest supported register: 6 qubits, 64×64 matrices. The cost of a
/// reactivity run is dominated by integration over settings, not by any
/// single dense-matrix operation, so no sparse representation is kept.
pub const MAX_QUBITS: usize = 6;

fn qubits_for_dim(dim: usize) -> crate::Result<usize> {
    for q in 1..=MAX_QUBITS {
        if dim == 1 << q {
            return Ok(q);
        }
    }
    Err(Error::DimensionMismatch {
        expected: 2,
        actual: dim,
    })
}

/// Normalized pure state on `2^d` amplitudes.
#[derive(Clone, Debug, PartialEq)]
pub struct PureStateVector {
    qubits: usize,
    amps: Vec<C64>,
}

impl PureStateVector {
    pub fn new(amps: Vec<C64>) -> Result<Self> {
        let qubits = qubits_for_dim(amps.len())?;
        let norm_sq: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        let norm = norm_sq.sqrt();
        if !(norm.is_finite() && (norm - 1.0).abs() <= 1e-12) {
            return Err(Error::NotNormalized(norm));
        }
        Ok(Self { qubits, amps })
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amps
    }

    /// `(|0…0⟩ + |1…1⟩)/√2` on `d ≥ 2` qubits.
    pub fn ghz(d: usize) -> Self {
        assert!((2..=MAX_QUBITS).contains(&d));
        let mut amps = vec![C64::new(0.0, 0.0); 1 << d];
        let a = C64::new(core::f64::consts::FRAC_1_SQRT_2, 0.0);
        amps[0] = a;
        amps[(1 << d) - 1] = a;
        Self { qubits: d, amps }
    }

    /// `(|001⟩ + |010⟩ + |100⟩)/√3`.
    pub fn w3() -> Self {
        let mut amps = vec![C64::new(0.0, 0.0); 8];
        let a = C64::new(1.0 / 3.0f64.sqrt(), 0.0);
        amps[0b001] = a;
        amps[0b010] = a;
        amps[0b100] = a;
        Self { qubits: 3, amps }
    }

    /// `(|01⟩ − |10⟩)/√2`.
    pub fn singlet() -> Self {
        let mut amps = vec![C64::new(0.0, 0.0); 4];
        amps[0b01] = C64::new(core::f64::consts::FRAC_1_SQRT_2, 0.0);
        amps[0b10] = C64::new(-core::f64::consts::FRAC_1_SQRT_2, 0.0);
        Self { qubits: 2, amps }
    }

    /// `|0…0⟩` on `d` qubits.
    pub fn product_zero(d: usize) -> Self {
        assert!((1..=MAX_QUBITS).contains(&d));
        let mut amps = vec![C64::new(0.0, 0.0); 1 << d];
        amps[0] = C64::new(1.0, 0.0);
        Self { qubits: d, amps }
    }

    /// The rank-1 density matrix `|ψ⟩⟨ψ|`.
    pub fn density(&self) -> DensityMatrix {
        DensityMatrix::new(self.qubits, CMatrix::outer(&self.amps))
            .expect("outer product of a unit vector is a valid state")
    }
}

/// Hermitian, unit-trace, positive-semidefinite operator on `d` qubits.
/// All states, pure or mixed, are carried in this form.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    qubits: usize,
    mat: CMatrix,
}

impl DensityMatrix {
    /// Validates every invariant: Hermitian within `1e-12`, unit trace
    /// within `1e-12`, smallest eigenvalue above `-1e-10`.
    pub fn new(qubits: usize, mat: CMatrix) -> Result<Self> {
        if !(1..=MAX_QUBITS).contains(&qubits) || mat.dim() != 1 << qubits {
            return Err(Error::DimensionMismatch {
                expected: 1 << qubits.clamp(1, MAX_QUBITS),
                actual: mat.dim(),
            });
        }
        for i in 0..mat.dim() {
            for j in 0..mat.dim() {
                let z = mat[(i, j)];
                if !(z.re.is_finite() && z.im.is_finite()) {
                    return Err(Error::NotHermitian(f64::INFINITY));
                }
            }
        }
        let herm = mat.hermiticity_error();
        if herm > HERMITICITY_TOL {
            return Err(Error::NotHermitian(herm));
        }
        let tr = mat.trace();
        if (tr.re - 1.0).abs() > TRACE_TOL || tr.im.abs() > TRACE_TOL {
            return Err(Error::TraceNotOne(tr.re));
        }
        let min_eig = mat
            .hermitian_eigenvalues()
            .first()
            .copied()
            .unwrap_or(0.0);
        if min_eig < PSD_MIN_EIGENVALUE {
            return Err(Error::NotPositiveSemidefinite(min_eig));
        }
        Ok(Self { qubits, mat })
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    pub fn dim(&self) -> usize {
        self.mat.dim()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.mat
    }

    /// `I / 2^d`.
    pub fn maximally_mixed(qubits: usize) -> Self {
        let dim = 1usize << qubits;
        Self::new(
            qubits,
            CMatrix::identity(dim).scaled_re(1.0 / dim as f64),
        )
        .expect("maximally mixed state is valid")
    }

    /// Reduced state on the given qubits (strictly increasing indices),
    /// tracing out the rest.
    pub fn partial_trace(&self, keep: &[usize]) -> Result<DensityMatrix> {
        if keep.is_empty() {
            return Err(Error::EmptySubset);
        }
        for w in keep.windows(2) {
            if w[1] <= w[0] {
                return Err(Error::RepeatedVariable);
            }
        }
        if let Some(&worst) = keep.iter().find(|&&q| q >= self.qubits) {
            return Err(Error::VariableOutOfRange {
                index: worst,
                num_vars: self.qubits,
            });
        }

        let d = self.qubits;
        let traced: Vec<usize> = (0..d).filter(|q| !keep.contains(q)).collect();
        let k = keep.len();
        let out_dim = 1usize << k;
        // Basis index bit for qubit q sits at position d-1-q (qubit 0 is
        // the most significant bit).
        let place = |qubit: usize, bit: usize| bit << (d - 1 - qubit);
        let mut out = CMatrix::zeros(out_dim);
        for i in 0..out_dim {
            for j in 0..out_dim {
                let mut base_i = 0usize;
                let mut base_j = 0usize;
                for (pos, &q) in keep.iter().enumerate() {
                    base_i |= place(q, (i >> (k - 1 - pos)) & 1);
                    base_j |= place(q, (j >> (k - 1 - pos)) & 1);
                }
                let mut sum = C64::new(0.0, 0.0);
                for t in 0..(1usize << traced.len()) {
                    let mut off = 0usize;
                    for (pos, &q) in traced.iter().enumerate() {
                        off |= place(q, (t >> (traced.len() - 1 - pos)) & 1);
                    }
                    sum += self.mat[(base_i | off, base_j | off)];
                }
                out[(i, j)] = sum;
            }
        }
        DensityMatrix::new(k, out)
    }
}

/// Built-in state families. Mixture families interpolate between the
/// maximally mixed state at `λ = 0` and a pure reference state at `λ = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StateFamily {
    /// `λ|ψ_singlet⟩⟨ψ_singlet| + (1−λ)/4 · I`
    Werner2,
    /// `λ|GHZ₃⟩⟨GHZ₃| + (1−λ)/8 · I`
    Werner3Ghz,
    /// `λ|W⟩⟨W| + (1−λ)/8 · I`
    Werner3W,
    /// `λ|GHZ₄⟩⟨GHZ₄| + (1−λ)/16 · I`
    Werner4Ghz,
    Singlet,
    Ghz3,
    W3,
    Ghz4,
    /// `|00⟩⟨00|`, the uncorrelated reference.
    ProductZero,
}

impl StateFamily {
    pub const ALL: [StateFamily; 9] = [
        StateFamily::Werner2,
        StateFamily::Werner3Ghz,
        StateFamily::Werner3W,
        StateFamily::Werner4Ghz,
        StateFamily::Singlet,
        StateFamily::Ghz3,
        StateFamily::W3,
        StateFamily::Ghz4,
        StateFamily::ProductZero,
    ];

    pub fn id(&self) -> &'static str {
        match self {
            StateFamily::Werner2 => "werner2",
            StateFamily::Werner3Ghz => "werner3_ghz",
            StateFamily::Werner3W => "werner3_w",
            StateFamily::Werner4Ghz => "werner4_ghz",
            StateFamily::Singlet => "singlet",
            StateFamily::Ghz3 => "ghz3",
            StateFamily::W3 => "w3",
            StateFamily::Ghz4 => "ghz4",
            StateFamily::ProductZero => "product_zero",
        }
    }

    pub fn qubits(&self) -> usize {
        match self {
            StateFamily::Werner2 | StateFamily::Singlet | StateFamily::ProductZero => 2,
            StateFamily::Werner3Ghz | StateFamily::Werner3W | StateFamily::Ghz3 | StateFamily::W3 => 3,
            StateFamily::Werner4Ghz | StateFamily::Ghz4 => 4,
        }
    }

    /// True for the `λ`-parameterized mixtures, false for fixed states.
    pub fn is_mixture(&self) -> bool {
        matches!(
            self,
            StateFamily::Werner2
                | StateFamily::Werner3Ghz
                | StateFamily::Werner3W
                | StateFamily::Werner4Ghz
        )
    }
}

impl core::str::FromStr for StateFamily {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        StateFamily::ALL
            .iter()
            .copied()
            .find(|f| f.id() == s)
            .ok_or_else(|| Error::UnknownStateFamily(s.to_string()))
    }
}

impl core::fmt::Display for StateFamily {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.id())
    }
}

/// Builds a family state. `lambda` must lie in `[0, 1]`; it is ignored by
/// the pure and product families.
pub fn make_state(family: StateFamily, lambda: f64) -> Result<DensityMatrix> {
    if !(0.0..=1.0).contains(&lambda) {
        return Err(Error::LambdaOutOfRange(lambda));
    }
    let pure = match family {
        StateFamily::Werner2 | StateFamily::Singlet => PureStateVector::singlet(),
        StateFamily::Werner3Ghz | StateFamily::Ghz3 => PureStateVector::ghz(3),
        StateFamily::Werner3W | StateFamily::W3 => PureStateVector::w3(),
        StateFamily::Werner4Ghz | StateFamily::Ghz4 => PureStateVector::ghz(4),
        StateFamily::ProductZero => PureStateVector::product_zero(2),
    };
    if !family.is_mixture() {
        return Ok(pure.density());
    }
    let d = family.qubits();
    let dim = 1usize << d;
    let projector = CMatrix::outer(pure.amplitudes());
    let mixed = CMatrix::identity(dim).scaled_re((1.0 - lambda) / dim as f64);
    let mat = &projector.scaled_re(lambda) + &mixed;
    DensityMatrix::new(d, mat)
}

/// Detector projector at Stokes angles `(θ, φ)`.
///
/// `outcome = true` gives `Π¹ = ½(I + n̂·σ)` with
/// `n̂ = (sinθ cosφ, sinθ sinφ, cosθ)`; `outcome = false` gives
/// `Π⁰ = I − Π¹`, so the pair sums to the identity exactly.
pub fn build_projector(theta: f64, phi: f64, outcome: bool) -> Result<CMatrix> {
    check_angles(theta, phi)?;
    let (st, ct) = (theta.sin(), theta.cos());
    let (sp, cp) = (phi.sin(), phi.cos());
    let mut p1 = CMatrix::zeros(2);
    p1[(0, 0)] = C64::new((1.0 + ct) / 2.0, 0.0);
    p1[(0, 1)] = C64::new(st * cp / 2.0, -st * sp / 2.0);
    p1[(1, 0)] = C64::new(st * cp / 2.0, st * sp / 2.0);
    p1[(1, 1)] = C64::new((1.0 - ct) / 2.0, 0.0);
    if outcome {
        Ok(p1)
    } else {
        Ok(&CMatrix::identity(2) - &p1)
    }
}

fn check_angles(theta: f64, phi: f64) -> Result<()> {
    if (0.0..=PI).contains(&theta) && (0.0..2.0 * PI).contains(&phi) {
        Ok(())
    } else {
        Err(Error::AngleOutOfRange { theta, phi })
    }
}

/// One projective detector per qubit, each at its own Stokes angles.
#[derive(Clone, Debug, PartialEq)]
pub struct MeasurementSetting {
    angles: Vec<(f64, f64)>,
}

impl MeasurementSetting {
    /// `angles[k]` is `(θ_k, φ_k)` for observer `k`, with `θ ∈ [0, π]`
    /// and `φ ∈ [0, 2π)`.
    pub fn new(angles: Vec<(f64, f64)>) -> Result<Self> {
        for &(theta, phi) in &angles {
            check_angles(theta, phi)?;
        }
        Ok(Self { angles })
    }

    pub fn len(&self) -> usize {
        self.angles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.angles.is_empty()
    }

    pub fn detectors(&self) -> &[(f64, f64)] {
        &self.angles
    }
}

/// Probability table over the `s^d` joint outcomes of `d` observers.
/// Outcome string `(a₁ … a_d)` is stored at the mixed-radix index with
/// observer 0 as the most significant digit.
#[derive(Clone, Debug, PartialEq)]
pub struct JointDistribution {
    num_vars: usize,
    outcomes_per_var: usize,
    probs: Vec<f64>,
}

impl JointDistribution {
    /// Clamps round-off negatives per the module policy, renormalizes the
    /// table to unit sum, and rejects entries below `-1e-10` or sums far
    /// from one.
    pub fn new(num_vars: usize, outcomes_per_var: usize, mut probs: Vec<f64>) -> Result<Self> {
        if num_vars == 0 || num_vars > 16 || outcomes_per_var < 2 {
            return Err(Error::InvalidConfig(
                "joint distribution needs 1..=16 variables with at least 2 outcomes each",
            ));
        }
        let expected = outcomes_per_var
            .checked_pow(num_vars as u32)
            .ok_or(Error::InvalidConfig("outcome table too large"))?;
        if probs.len() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                actual: probs.len(),
            });
        }
        let mut sum = 0.0f64;
        for p in probs.iter_mut() {
            if !p.is_finite() || *p < -PROBABILITY_CLAMP_TOL {
                return Err(Error::NegativeProbability(*p));
            }
            if *p < 0.0 {
                *p = 0.0;
            }
            sum += *p;
        }
        if !((sum - 1.0).abs() <= 1e-8) {
            return Err(Error::BadProbabilitySum(sum));
        }
        for p in probs.iter_mut() {
            *p /= sum;
        }
        Ok(Self {
            num_vars,
            outcomes_per_var,
            probs,
        })
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn outcomes_per_var(&self) -> usize {
        self.outcomes_per_var
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    /// Probability of one outcome string, given per-observer outcomes.
    pub fn prob(&self, outcomes: &[usize]) -> Result<f64> {
        if outcomes.len() != self.num_vars {
            return Err(Error::DimensionMismatch {
                expected: self.num_vars,
                actual: outcomes.len(),
            });
        }
        let mut idx = 0usize;
        for &o in outcomes {
            if o >= self.outcomes_per_var {
                return Err(Error::VariableOutOfRange {
                    index: o,
                    num_vars: self.outcomes_per_var,
                });
            }
            idx = idx * self.outcomes_per_var + o;
        }
        Ok(self.probs[idx])
    }

    /// Sums out every variable not in `keep`; result variable `j` is the
    /// source variable `keep[j]`.
    pub fn marginalize(&self, keep: &[usize]) -> Result<JointDistribution> {
        if keep.is_empty() {
            return Err(Error::EmptySubset);
        }
        let mut seen = [false; 16];
        for &v in keep {
            if v >= self.num_vars {
                return Err(Error::VariableOutOfRange {
                    index: v,
                    num_vars: self.num_vars,
                });
            }
            if seen[v] {
                return Err(Error::RepeatedVariable);
            }
            seen[v] = true;
        }
        let s = self.outcomes_per_var;
        let k = keep.len();
        let mut out = vec![0.0f64; s.pow(k as u32)];
        // digit_stride[v] is the stride of variable v in the source table
        let mut digit_stride = vec![1usize; self.num_vars];
        for v in (0..self.num_vars.saturating_sub(1)).rev() {
            digit_stride[v] = digit_stride[v + 1] * s;
        }
        for (idx, &p) in self.probs.iter().enumerate() {
            let mut dest = 0usize;
            for &v in keep {
                dest = dest * s + (idx / digit_stride[v]) % s;
            }
            out[dest] += p;
        }
        JointDistribution::new(k, s, out)
    }
}

/// Measurement-basis change: rows are `⟨n̂|` and `⟨n̂⊥|`, so that
/// `U Π¹ U† = |0⟩⟨0|`.
fn basis_unitary(theta: f64, phi: f64) -> [[C64; 2]; 2] {
    let c = (theta / 2.0).cos();
    let s = (theta / 2.0).sin();
    let em = C64::new(phi.cos(), -phi.sin()); // e^{-iφ}
    let ep = C64::new(phi.cos(), phi.sin());
    [
        [C64::new(c, 0.0), em * s],
        [ep * (-s), C64::new(c, 0.0)],
    ]
}

/// Conjugates one qubit in place: `m ← (U_k) m (U_k)†` acting on `qubit`.
fn conjugate_qubit(m: &mut CMatrix, d: usize, qubit: usize, u: &[[C64; 2]; 2]) {
    let n = 1usize << d;
    let bit = 1usize << (d - 1 - qubit);
    for i0 in 0..n {
        if i0 & bit != 0 {
            continue;
        }
        let i1 = i0 | bit;
        for j in 0..n {
            let x = m[(i0, j)];
            let y = m[(i1, j)];
            m[(i0, j)] = u[0][0] * x + u[0][1] * y;
            m[(i1, j)] = u[1][0] * x + u[1][1] * y;
        }
    }
    for j0 in 0..n {
        if j0 & bit != 0 {
            continue;
        }
        let j1 = j0 | bit;
        for i in 0..n {
            let x = m[(i, j0)];
            let y = m[(i, j1)];
            m[(i, j0)] = x * u[0][0].conj() + y * u[0][1].conj();
            m[(i, j1)] = x * u[1][0].conj() + y * u[1][1].conj();
        }
    }
}

/// Joint outcome distribution of projective measurements on `rho`.
///
/// Entry `(a₁ … a_d)` equals `Re Tr(ρ · ⊗_k Π^{a_k}(θ_k, φ_k))`. The
/// implementation rotates each qubit into its detector eigenbasis and reads
/// the diagonal, which is algebraically identical and O(4^d) per qubit.
pub fn joint_distribution(
    rho: &DensityMatrix,
    setting: &MeasurementSetting,
) -> Result<JointDistribution> {
    let d = rho.qubits();
    if setting.len() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            actual: setting.len(),
        });
    }
    let mut work = rho.matrix().clone();
    for (k, &(theta, phi)) in setting.detectors().iter().enumerate() {
        let u = basis_unitary(theta, phi);
        conjugate_qubit(&mut work, d, k, &u);
    }
    let n = 1usize << d;
    let full = n - 1;
    // Outcome bit 1 for observer k means its qubit landed on |0⟩ in the
    // rotated frame, so the basis index is the bitwise complement.
    let probs: Vec<f64> = (0..n).map(|o| work[(!o & full, !o & full)].re).collect();
    JointDistribution::new(d, 2, probs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::CMatrix;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Oracle: the same distribution from explicit Kronecker products and
    /// `Re Tr(ρ M)`, independent of the rotation path used by the library.
    fn joint_by_trace(rho: &DensityMatrix, setting: &MeasurementSetting) -> Vec<f64> {
        let d = rho.qubits();
        (0..1usize << d)
            .map(|o| {
                let mut m = CMatrix::identity(1);
                for k in 0..d {
                    let bit = (o >> (d - 1 - k)) & 1;
                    let (theta, phi) = setting.detectors()[k];
                    m = m.kron(&build_projector(theta, phi, bit == 1).unwrap());
                }
                rho.matrix().matmul(&m).trace().re
            })
            .collect()
    }

    fn random_setting(rng: &mut ChaCha8Rng, d: usize) -> MeasurementSetting {
        let angles = (0..d)
            .map(|_| {
                (
                    rng.random::<f64>() * core::f64::consts::PI,
                    rng.random::<f64>() * 2.0 * core::f64::consts::PI,
                )
            })
            .collect();
        MeasurementSetting::new(angles).unwrap()
    }

    #[test]
    fn projector_limits() {
        let p = build_projector(0.0, 0.0, true).unwrap();
        assert!((p[(0, 0)].re - 1.0).abs() < 1e-15 && p[(1, 1)].norm() < 1e-15);
        let p = build_projector(core::f64::consts::PI, 0.0, true).unwrap();
        assert!(p[(0, 0)].norm() < 1e-15 && (p[(1, 1)].re - 1.0).abs() < 1e-15);
        let p = build_projector(core::f64::consts::FRAC_PI_2, 0.0, true).unwrap();
        for (i, j) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            assert!((p[(i, j)].re - 0.5).abs() < 1e-15 && p[(i, j)].im.abs() < 1e-15);
        }
        assert!(build_projector(-0.1, 0.0, true).is_err());
        assert!(build_projector(0.1, 7.0, true).is_err());
    }

    #[test]
    fn projectors_are_idempotent_and_complete() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..1000 {
            let theta = rng.random::<f64>() * core::f64::consts::PI;
            let phi = rng.random::<f64>() * 2.0 * core::f64::consts::PI;
            let p1 = build_projector(theta, phi, true).unwrap();
            let p0 = build_projector(theta, phi, false).unwrap();
            // Π⁰ + Π¹ = I exactly by construction.
            assert_eq!(&p0 + &p1, CMatrix::identity(2));
            for p in [&p0, &p1] {
                assert!((&p.matmul(p) - p).frobenius_norm() < 1e-12);
                assert!(p.hermiticity_error() < 1e-15);
                assert!((p.trace().re - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn family_states_satisfy_invariants() {
        for family in StateFamily::ALL {
            for &lambda in &[0.0, 0.3, 1.0] {
                let rho = make_state(family, lambda).unwrap();
                assert_eq!(rho.qubits(), family.qubits());
                // DensityMatrix::new already validated Hermiticity, trace, PSD.
                assert!(rho.matrix().hermiticity_error() <= HERMITICITY_TOL);
            }
        }
        assert!(make_state(StateFamily::Werner2, -0.1).is_err());
        assert!(make_state(StateFamily::Werner2, 1.5).is_err());
        assert!("nonesuch".parse::<StateFamily>().is_err());
        assert_eq!("werner3_w".parse::<StateFamily>().unwrap(), StateFamily::Werner3W);
    }

    #[test]
    fn werner_endpoints() {
        let mixed = make_state(StateFamily::Werner2, 0.0).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let expect = if i == j { 0.25 } else { 0.0 };
                assert!((mixed.matrix()[(i, j)].re - expect).abs() < 1e-15);
                assert!(mixed.matrix()[(i, j)].im.abs() < 1e-15);
            }
        }
        let pure = make_state(StateFamily::Werner2, 1.0).unwrap();
        let singlet = PureStateVector::singlet().density();
        assert!((&pure.matrix().clone() - singlet.matrix()).frobenius_norm() < 1e-14);
    }

    #[test]
    fn ghz3_projector_corners() {
        let rho = make_state(StateFamily::Ghz3, 1.0).unwrap();
        for (i, j) in [(0, 0), (0, 7), (7, 0), (7, 7)] {
            assert!((rho.matrix()[(i, j)].re - 0.5).abs() < 1e-15);
        }
        assert!(rho.matrix()[(1, 1)].norm() < 1e-15);
        assert!(rho.matrix()[(0, 3)].norm() < 1e-15);
    }

    #[test]
    fn joint_distribution_matches_trace_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let states = [
            make_state(StateFamily::Werner2, 0.6).unwrap(),
            make_state(StateFamily::Ghz3, 1.0).unwrap(),
            make_state(StateFamily::Werner3W, 0.4).unwrap(),
            make_state(StateFamily::Werner4Ghz, 0.8).unwrap(),
        ];
        for rho in &states {
            for _ in 0..25 {
                let setting = random_setting(&mut rng, rho.qubits());
                let fast = joint_distribution(rho, &setting).unwrap();
                let slow = joint_by_trace(rho, &setting);
                for (a, b) in fast.probs().iter().zip(slow.iter()) {
                    assert!((a - b).abs() < 1e-12, "{a} vs {b}");
                }
            }
        }
    }

    #[test]
    fn product_zero_at_z_detectors() {
        let rho = make_state(StateFamily::ProductZero, 0.0).unwrap();
        let setting = MeasurementSetting::new(vec![(0.0, 0.0), (0.0, 0.0)]).unwrap();
        let p = joint_distribution(&rho, &setting).unwrap();
        // Outcome bit 1 encodes the projector onto |0⟩ at θ=0.
        assert!((p.prob(&[1, 1]).unwrap() - 1.0).abs() < 1e-14);
        assert!(p.prob(&[0, 0]).unwrap().abs() < 1e-14);
    }

    #[test]
    fn mixed_state_distribution_is_uniform_everywhere() {
        let rho = make_state(StateFamily::Werner2, 0.0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..50 {
            let setting = random_setting(&mut rng, 2);
            let p = joint_distribution(&rho, &setting).unwrap();
            for &x in p.probs() {
                assert!((x - 0.25).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn marginalize_collapses_and_commutes() {
        let rho = make_state(StateFamily::Ghz3, 1.0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..50 {
            let setting = random_setting(&mut rng, 3);
            let p = joint_distribution(&rho, &setting).unwrap();
            let direct = p.marginalize(&[0]).unwrap();
            let via_pair = p.marginalize(&[0, 1]).unwrap().marginalize(&[0]).unwrap();
            for (a, b) in direct.probs().iter().zip(via_pair.probs()) {
                assert!((a - b).abs() < 1e-14);
            }
            let all = p.marginalize(&[0, 1, 2]).unwrap();
            for (a, b) in all.probs().iter().zip(p.probs()) {
                assert!((a - b).abs() < 1e-15);
            }
            // GHZ singles are fair coins for every setting.
            for v in 0..3 {
                let single = p.marginalize(&[v]).unwrap();
                assert!((single.probs()[0] - 0.5).abs() < 1e-12);
            }
        }
        assert!(matches!(
            make_state(StateFamily::Ghz3, 1.0)
                .and_then(|r| joint_distribution(
                    &r,
                    &MeasurementSetting::new(vec![(0.0, 0.0); 3]).unwrap()
                ))
                .unwrap()
                .marginalize(&[]),
            Err(Error::EmptySubset)
        ));
    }

    #[test]
    fn joint_distribution_rejects_dimension_mismatch() {
        let rho = make_state(StateFamily::Singlet, 1.0).unwrap();
        let setting = MeasurementSetting::new(vec![(0.0, 0.0); 3]).unwrap();
        assert!(matches!(
            joint_distribution(&rho, &setting),
            Err(Error::DimensionMismatch { expected: 2, actual: 3 })
        ));
    }

    #[test]
    fn distribution_clamp_policy() {
        // A tiny negative is clamped and renormalized away.
        let p = JointDistribution::new(1, 2, vec![1.0 + 5e-11, -5e-11]).unwrap();
        assert_eq!(p.probs()[1], 0.0);
        assert!((p.probs()[0] - 1.0).abs() < 1e-15);
        // A structurally negative entry is an error.
        assert!(matches!(
            JointDistribution::new(1, 2, vec![1.0 + 1e-3, -1e-3]),
            Err(Error::NegativeProbability(_))
        ));
        assert!(matches!(
            JointDistribution::new(1, 2, vec![0.4, 0.4]),
            Err(Error::BadProbabilitySum(_))
        ));
    }

    #[test]
    fn partial_trace_of_singlet_is_maximally_mixed() {
        let rho = make_state(StateFamily::Singlet, 1.0).unwrap();
        for keep in [[0usize], [1usize]] {
            let red = rho.partial_trace(&keep).unwrap();
            for i in 0..2 {
                assert!((red.matrix()[(i, i)].re - 0.5).abs() < 1e-14);
            }
            assert!(red.matrix()[(0, 1)].norm() < 1e-14);
        }
        // keep everything is the identity operation
        let same = rho.partial_trace(&[0, 1]).unwrap();
        assert!((&same.matrix().clone() - rho.matrix()).frobenius_norm() < 1e-14);
    }

    #[test]
    fn partial_trace_of_product_splits() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        // ρ_A ⊗ ρ_B with randomly rotated single-qubit pure states
        let part = |rng: &mut ChaCha8Rng| {
            let th = rng.random::<f64>() * core::f64::consts::PI;
            let ph = rng.random::<f64>() * 2.0 * core::f64::consts::PI;
            build_projector(th, ph, true).unwrap()
        };
        let a = part(&mut rng);
        let b = part(&mut rng);
        let rho = DensityMatrix::new(2, a.kron(&b)).unwrap();
        let ra = rho.partial_trace(&[0]).unwrap();
        let rb = rho.partial_trace(&[1]).unwrap();
        assert!((&ra.matrix().clone() - &a).frobenius_norm() < 1e-13);
        assert!((&rb.matrix().clone() - &b).frobenius_norm() < 1e-13);
    }
}
