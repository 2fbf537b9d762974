//! Entropic information geometry of measured qubit states.
//!
//! A `d`-qubit density matrix is probed by `d` observers, each with a
//! projective detector oriented at Stokes angles `(θ, φ)` on its Bloch
//! sphere. The recorded outcomes form a classical joint distribution over
//! `2^d` bit strings, from which Shannon entropies define a geometry on the
//! observers: the Rokhlin–Rajski distance between pairs, and its area /
//! volume extensions for triples and quadruples. Averaging boundary and bulk
//! measures of that geometry over the whole space of detector settings gives
//! the *reactivity* ratio, a basis-free correlation measure that can be
//! compared against concurrence and discord.
//!
//! The crate is `no_std`-compatible (`alloc` required); integration can be
//! made data-parallel with the `parallel` feature without changing any
//! numerical result.

#![cfg_attr(not(feature = "std"), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod baselines;
pub mod infogeo;
pub mod linalg;
pub mod qstate;
pub mod reactivity;

pub use infogeo::{EntropyTable, GeometryReport};
pub use qstate::{
    build_projector, joint_distribution, make_state, DensityMatrix, JointDistribution,
    MeasurementSetting, PureStateVector, StateFamily,
};
pub use reactivity::{
    geometry_at, mean_geometry, normalize_curve, reactivity, schumacher_quadrilateral,
    schumacher_search, IntegrationMethod, IntegratorConfig, MeanGeometry, ReactivityResult,
    SchumacherReport, SettingSampler,
};

use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("unknown state family `{0}`")]
    UnknownStateFamily(alloc::string::String),
    #[error("lambda {0} outside [0, 1]")]
    LambdaOutOfRange(f64),
    #[error("detector angles out of range: theta={theta}, phi={phi}")]
    AngleOutOfRange { theta: f64, phi: f64 },
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("matrix is not Hermitian (max deviation {0:e})")]
    NotHermitian(f64),
    #[error("trace is {0}, expected 1")]
    TraceNotOne(f64),
    #[error("matrix is not positive semidefinite (min eigenvalue {0:e})")]
    NotPositiveSemidefinite(f64),
    #[error("state vector norm is {0}, expected 1")]
    NotNormalized(f64),
    #[error("probability {0:e} below the -1e-10 round-off tolerance")]
    NegativeProbability(f64),
    #[error("probabilities sum to {0}, expected 1")]
    BadProbabilitySum(f64),
    #[error("variable index {index} out of range for {num_vars} variables")]
    VariableOutOfRange { index: usize, num_vars: usize },
    #[error("variable subset is empty")]
    EmptySubset,
    #[error("repeated variable in subset")]
    RepeatedVariable,
    #[error("target and conditioning subsets overlap")]
    OverlappingSubsets,
    #[error("conditional entropy {0:e} below the -1e-12 round-off tolerance")]
    NegativeConditionalEntropy(f64),
    #[error("need at least {min} variables, got {got}")]
    TooFewVariables { min: usize, got: usize },
    #[error("unsupported qubit count {0}")]
    UnsupportedDimension(usize),
    #[error("degenerate geometry: mean denominator {0:e} is below 1e-9")]
    DegenerateGeometry(f64),
    #[error("invalid configuration: {0}")]
    InvalidConfig(&'static str),
    #[error("curve is missing its lambda=0 or lambda=1 endpoint")]
    MissingEndpoints,
    #[error("curve endpoints coincide, normalization range is zero")]
    ZeroRange,
}

pub type Result<T> = core::result::Result<T, Error>;
