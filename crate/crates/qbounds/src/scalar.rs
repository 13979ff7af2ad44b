//! Floating-point abstraction for the numeric core.
//!
//! Every quantity in this crate is generic over a real scalar implementing
//! [`Scalar`]; complex values are `num_complex::Complex<T>` over the same
//! scalar. The trait carries the tolerance windows used by validating
//! constructors and by clamping rules, so each precision gets windows it can
//! actually meet: the `f64` constants are the contract the CLI and the test
//! suites run against, the `f32` ones are widened to sit above single
//! precision rounding noise.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, NumAssign};

/// Real scalar the whole crate is generic over.
pub trait Scalar:
    Float + FloatConst + NumAssign + FromPrimitive + Sum + Debug + Display + Send + Sync + 'static
{
    /// Unit-norm window for state vectors and the cutoff below which an
    /// outcome probability counts as zero.
    const TOL_STRICT: Self;
    /// Window for hermiticity, unit-trace, and orthonormality validation,
    /// and for clamping small negative eigenvalues to zero.
    const TOL_VALID: Self;
    /// Arithmetic-noise window for probability sums and entropy differences.
    const TOL_SUM: Self;
    /// Support-leakage threshold for relative entropy, the clamp window for
    /// discord, and the stopping diameter of the simplex refinement.
    const TOL_SUPPORT: Self;
    /// Slack allowed when an uncertainty lower bound is compared against the
    /// quantity it bounds.
    const TOL_GAP: Self;
    /// Same slack for bounds that depend on the numeric discord optimizer.
    const TOL_GAP_OPT: Self;
}

impl Scalar for f64 {
    const TOL_STRICT: f64 = 1e-12;
    const TOL_VALID: f64 = 1e-10;
    const TOL_SUM: f64 = 1e-9;
    const TOL_SUPPORT: f64 = 1e-8;
    const TOL_GAP: f64 = 1e-7;
    const TOL_GAP_OPT: f64 = 1e-6;
}

impl Scalar for f32 {
    const TOL_STRICT: f32 = 1e-6;
    const TOL_VALID: f32 = 3e-5;
    const TOL_SUM: f32 = 1e-4;
    const TOL_SUPPORT: f32 = 1e-3;
    const TOL_GAP: f32 = 3e-3;
    const TOL_GAP_OPT: f32 = 1e-2;
}

/// Shorthand for lifting an `f64` constant into the generic scalar.
pub(crate) fn real<T: Scalar>(x: f64) -> T {
    T::from_f64(x).expect("constant representable in every Scalar")
}

/// Complex number with the given real part and zero imaginary part.
pub(crate) fn cre<T: Scalar>(re: T) -> Complex<T> {
    Complex::new(re, T::zero())
}

/// x log2 x with the continuous extension 0 log 0 = 0.
pub(crate) fn xlog2x<T: Scalar>(x: T) -> T {
    if x > T::zero() { x * x.log2() } else { T::zero() }
}
