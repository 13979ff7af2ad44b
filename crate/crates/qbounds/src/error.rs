//! Error type shared by every module of the crate.
//!
//! The enum is deliberately not generic over the scalar: diagnostic payloads
//! are widened to `f64` at the point of failure so the type stays a plain
//! value regardless of the precision the computation ran at.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix shape mismatch: {context}")]
    ShapeMismatch { context: String },

    #[error("subsystem dimensions invalid: {context}")]
    InvalidDims { context: String },

    #[error("matrix is not hermitian: max |a_ij - conj(a_ji)| = {deviation:e}")]
    NotHermitian { deviation: f64 },

    #[error("trace is {trace} instead of 1")]
    TraceNotOne { trace: f64 },

    #[error("matrix is not positive semidefinite: smallest eigenvalue {min_eigenvalue:e}")]
    NotPositive { min_eigenvalue: f64 },

    #[error("state vector has norm {norm} instead of 1")]
    NotNormalized { norm: f64 },

    #[error("basis is not orthonormal: max |<v_i|v_j> - delta_ij| = {deviation:e}")]
    NotOrthonormal { deviation: f64 },

    #[error("probabilities invalid: {context}")]
    NotAProbabilityVector { context: String },

    #[error("support of the first state leaks outside the second: weight {leakage:e}")]
    SupportViolation { leakage: f64 },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("subsystem index {index} out of range for {count} subsystems")]
    InvalidSubsystem { index: usize, count: usize },

    #[error("state is not bipartite: has {subsystems} subsystems")]
    NotBipartite { subsystems: usize },

    #[error("need at least two measurement bases, got {got}")]
    NeedAtLeastTwoBases { got: usize },

    #[error("measured subsystem has dimension {dim}; only dimension 2 is supported here")]
    UnsupportedDimension { dim: usize },

    #[error("parameter {name} = {value} outside [{min}, {max}]")]
    ParamOutOfRange {
        name: String,
        value: f64,
        min: f64,
        max: f64,
    },

    #[error("unknown bound name `{name}`; valid names: {valid}")]
    UnknownBoundName { name: String, valid: String },

    #[error("unknown state family `{name}`; valid families: {valid}")]
    UnknownFamily { name: String, valid: String },

    #[error("state family `{family}` is missing parameter `{name}`")]
    MissingParam { family: String, name: String },

    #[error("state family `{family}` has no parameter `{name}`")]
    UnknownParam { family: String, name: String },

    #[error("malformed state spec `{spec}`: {context}")]
    BadSpec { spec: String, context: String },

    #[error("eigensolver failed to converge after {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    #[error("internal consistency violated: {context} (value {value:e})")]
    Inconsistent { context: String, value: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
