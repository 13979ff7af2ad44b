//! Numerics for entropic uncertainty bounds of incompatible measurements,
//! with and without a quantum memory, plus the matching coherence bounds.
//!
//! The crate is generic over the floating-point scalar (see [`Scalar`]);
//! the aliases at the root pin the double-precision instantiation that the
//! command-line interface and the test suites use.

pub mod bounds;
pub mod coherence;
pub mod correlations;
pub mod error;
pub mod measurement;
mod optim;
pub mod qmat;
pub mod scalar;
pub mod states;

pub use error::{Error, Result};
pub use num_complex::Complex;
pub use scalar::Scalar;

/// Double-precision complex matrix.
pub type Mat64 = qmat::ComplexMatrix<f64>;
/// Double-precision pure state.
pub type Pure64 = qmat::PureState<f64>;
/// Double-precision density matrix.
pub type Density64 = qmat::DensityMatrix<f64>;
/// Double-precision orthonormal basis.
pub type Basis64 = measurement::OrthonormalBasis<f64>;
/// Double-precision state description.
pub type StateSpec64 = states::StateSpec<f64>;
