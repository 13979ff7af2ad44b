//! Correlation measures of bipartite states: entropic quantities, the
//! accessible information of measurements on A, and the discord split.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::measurement::{OrthonormalBasis, measure_on_a};
use crate::optim::nelder_mead_2d;
use crate::qmat::{ComplexMatrix, DensityMatrix, entropy_of_spectrum, von_neumann_entropy};
use crate::scalar::{Scalar, cre, real, xlog2x};

fn check_bipartite<T: Scalar>(rho_ab: &DensityMatrix<T>) -> Result<(usize, usize)> {
    if rho_ab.subsystems() != 2 {
        return Err(Error::NotBipartite { subsystems: rho_ab.subsystems() });
    }
    Ok((rho_ab.dims()[0], rho_ab.dims()[1]))
}

/// Conditional entropy S(A|B) = S(AB) - S(B). Negative exactly when the
/// state is entangled enough to beat any classical memory.
pub fn conditional_entropy<T: Scalar>(rho_ab: &DensityMatrix<T>) -> Result<T> {
    check_bipartite(rho_ab)?;
    let rho_b = rho_ab.partial_trace(&[1])?;
    Ok(von_neumann_entropy(rho_ab) - von_neumann_entropy(&rho_b))
}

fn clamp_nonneg<T: Scalar>(value: T, context: &str) -> Result<T> {
    if value < -T::TOL_SUM {
        return Err(Error::Inconsistent {
            context: context.into(),
            value: value.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(value.max(T::zero()))
}

/// Mutual information I(A:B) = S(A) + S(B) - S(AB).
pub fn mutual_information<T: Scalar>(rho_ab: &DensityMatrix<T>) -> Result<T> {
    check_bipartite(rho_ab)?;
    let rho_a = rho_ab.partial_trace(&[0])?;
    let rho_b = rho_ab.partial_trace(&[1])?;
    let value =
        von_neumann_entropy(&rho_a) + von_neumann_entropy(&rho_b) - von_neumann_entropy(rho_ab);
    clamp_nonneg(value, "mutual information must be nonnegative")
}

/// Information the measurement outcome on A carries about B:
/// I(M:B) = S(rho_B) - sum_i p_i S(rho_B|i).
pub fn holevo<T: Scalar>(
    rho_ab: &DensityMatrix<T>,
    basis: &OrthonormalBasis<T>,
) -> Result<T> {
    let outcome = measure_on_a(rho_ab, basis)?;
    let rho_b = rho_ab.partial_trace(&[1])?;
    let mut avg = T::zero();
    for (p, cond) in outcome.probabilities.iter().zip(&outcome.conditional_states) {
        if let Some(state) = cond {
            avg += *p * von_neumann_entropy(state);
        }
    }
    clamp_nonneg(
        von_neumann_entropy(&rho_b) - avg,
        "measured information about B must be nonnegative",
    )
}

/// Gap between the total correlations, counted once per extra measurement,
/// and the outcome information of all measurements:
/// (N - 1) I(A:B) - sum_m I(M_m:B). May take either sign.
pub fn delta_term<T: Scalar>(
    rho_ab: &DensityMatrix<T>,
    bases: &[OrthonormalBasis<T>],
) -> Result<T> {
    if bases.len() < 2 {
        return Err(Error::NeedAtLeastTwoBases { got: bases.len() });
    }
    let mutual = mutual_information(rho_ab)?;
    let mut value = mutual * real::<T>((bases.len() - 1) as f64);
    for basis in bases {
        value -= holevo(rho_ab, basis)?;
    }
    Ok(value)
}

/// Direction of a rank-one qubit measurement on the Bloch sphere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochAngles<T> {
    pub theta: T,
    pub phi: T,
}

impl<T: Scalar> BlochAngles<T> {
    pub fn new(theta: T, phi: T) -> Self {
        Self { theta, phi }
    }

    /// Equivalent angles with theta in [0, pi] and phi in [0, 2pi). The
    /// measurement basis is unchanged up to a global phase.
    pub fn folded(self) -> Self {
        let tau = T::PI() + T::PI();
        let mut theta = self.theta % tau;
        if theta < T::zero() {
            theta += tau;
        }
        let mut phi = self.phi;
        if theta > T::PI() {
            theta = tau - theta;
            phi += T::PI();
        }
        let mut phi = phi % tau;
        if phi < T::zero() {
            phi += tau;
        }
        Self { theta, phi }
    }
}

/// Measurement basis pointing along the Bloch direction (theta, phi):
/// v0 = (cos(t/2), sin(t/2) e^{i phi}), v1 = (-sin(t/2) e^{-i phi}, cos(t/2)).
pub fn basis_from_angles<T: Scalar>(angles: BlochAngles<T>) -> OrthonormalBasis<T> {
    let half = angles.theta / (T::one() + T::one());
    let (ct, st) = (half.cos(), half.sin());
    let phase = Complex::from_polar(T::one(), angles.phi);
    let vectors = vec![
        vec![cre(ct), phase.scale(st)],
        vec![-(phase.conj().scale(st)), cre(ct)],
    ];
    OrthonormalBasis::new("bloch", vectors).expect("Bloch vectors are orthonormal")
}

/// How the optimum over measurement directions was reached.
#[derive(Debug, Clone, Copy)]
pub struct OptimizationReport<T> {
    /// Smallest average post-measurement entropy of B that was found.
    pub best_value: T,
    pub best_angles: BlochAngles<T>,
    /// Best value seen on the coarse grid, before refinement.
    pub grid_best: T,
    /// Simplex iterations summed over all refinement starts.
    pub refinement_iterations: usize,
    /// Whether the winning refinement met its tolerance.
    pub converged: bool,
}

/// Decomposition of the total correlations into a classical part (the best
/// measurement on A) and the quantum remainder.
#[derive(Debug, Clone, Copy)]
pub struct CorrelationSplit<T> {
    pub mutual: T,
    pub classical: T,
    pub discord: T,
    pub report: OptimizationReport<T>,
}

const GRID_THETA: usize = 64;
const GRID_PHI: usize = 64;
const REFINE_STARTS: usize = 3;
const MAX_REFINE_ITERATIONS: usize = 500;

/// Average entropy of B after measuring the Bloch direction on the qubit A.
/// Works on the raw blocks; no state validation in the hot path. Outcomes
/// with negligible probability contribute nothing.
fn average_conditional_entropy<T: Scalar>(rho_ab: &DensityMatrix<T>, x: [T; 2]) -> T {
    let db = rho_ab.dims()[1];
    let two = T::one() + T::one();
    let (ct, st) = ((x[0] / two).cos(), (x[0] / two).sin());
    let phase = Complex::from_polar(T::one(), x[1]);
    let vs = [
        [cre(ct), phase.scale(st)],
        [-(phase.conj().scale(st)), cre(ct)],
    ];

    let mut total = T::zero();
    for v in &vs {
        let mut block = ComplexMatrix::zeros(db, db);
        for a in 0..2 {
            for b in 0..2 {
                let w = v[a].conj() * v[b];
                for k in 0..db {
                    for l in 0..db {
                        let e = block.get(k, l) + w * rho_ab.matrix().get(a * db + k, b * db + l);
                        block.set(k, l, e);
                    }
                }
            }
        }
        let p: T = block.trace().re;
        if p <= T::TOL_STRICT {
            continue;
        }
        let entropy = if db == 2 {
            // Closed-form eigenvalues of the 2x2 block.
            let det = block.get(0, 0).re * block.get(1, 1).re - block.get(0, 1).norm_sqr();
            let disc = (p * p - real::<T>(4.0) * det).max(T::zero()).sqrt();
            let hi = ((p + disc) / (two * p)).min(T::one());
            let lo = (T::one() - hi).max(T::zero());
            -xlog2x(hi) - xlog2x(lo)
        } else {
            let (mut spectrum, _) =
                block.eig_hermitian().expect("measurement block stays hermitian");
            for s in &mut spectrum {
                *s = (*s / p).max(T::zero());
            }
            entropy_of_spectrum(&spectrum)
        };
        total += p * entropy;
    }
    total
}

/// Splits the total correlations of a qubit-B system by minimizing the
/// average post-measurement entropy of B over all rank-one projective
/// measurements on A. Coarse 64 x 64 grid over the half sphere, then simplex
/// refinement from the three best cells.
pub fn classical_correlation<T: Scalar>(rho_ab: &DensityMatrix<T>) -> Result<CorrelationSplit<T>> {
    let (da, _) = check_bipartite(rho_ab)?;
    if da != 2 {
        return Err(Error::UnsupportedDimension { dim: da });
    }
    let mutual = mutual_information(rho_ab)?;
    let rho_b = rho_ab.partial_trace(&[1])?;
    let entropy_b = von_neumann_entropy(&rho_b);

    let mut cells: Vec<(T, usize, [T; 2])> = Vec::with_capacity(GRID_THETA * GRID_PHI);
    for j in 0..GRID_THETA {
        let theta = T::PI() * real::<T>(j as f64 + 0.5) / real::<T>(GRID_THETA as f64);
        for k in 0..GRID_PHI {
            let phi =
                (T::PI() + T::PI()) * real::<T>(k as f64) / real::<T>(GRID_PHI as f64);
            let value = average_conditional_entropy(rho_ab, [theta, phi]);
            cells.push((value, j * GRID_PHI + k, [theta, phi]));
        }
    }
    cells.sort_by(|a, b| {
        a.0.partial_cmp(&b.0).expect("objective values are ordered").then(a.1.cmp(&b.1))
    });
    let grid_best = cells[0].0;

    let steps = [
        T::PI() / real::<T>(2.0 * GRID_THETA as f64),
        (T::PI() + T::PI()) / real::<T>(2.0 * GRID_PHI as f64),
    ];
    let tol = real::<T>(1e-8);
    let mut refinement_iterations = 0;
    // The first start is the best grid cell and a simplex never loses its
    // best vertex, so the winner is at least as good as the grid.
    let mut best: Option<(T, [T; 2], bool)> = None;
    for cell in cells.iter().take(REFINE_STARTS) {
        let mut f = |x: [T; 2]| average_conditional_entropy(rho_ab, x);
        let r = nelder_mead_2d(&mut f, cell.2, steps, tol, MAX_REFINE_ITERATIONS);
        refinement_iterations += r.iterations;
        best = Some(match best {
            Some(b) if b.0 <= r.value => b,
            _ => (r.value, r.x, r.converged),
        });
    }
    let (best_value, best_x, converged) = best.expect("at least one refinement start");

    let report = OptimizationReport {
        best_value,
        best_angles: BlochAngles::new(best_x[0], best_x[1]).folded(),
        grid_best,
        refinement_iterations,
        converged,
    };
    let window = real::<T>(1e-8);
    let classical = entropy_b - best_value;
    if classical < -window {
        return Err(Error::Inconsistent {
            context: "classical correlations must be nonnegative".into(),
            value: classical.to_f64().unwrap_or(f64::NAN),
        });
    }
    let classical = classical.max(T::zero());
    let discord = mutual - classical;
    if discord < -window {
        return Err(Error::Inconsistent {
            context: "discord must be nonnegative".into(),
            value: discord.to_f64().unwrap_or(f64::NAN),
        });
    }
    let discord = discord.max(T::zero());
    Ok(CorrelationSplit { mutual, classical, discord, report })
}

/// Quantum part of the correlations under the best measurement on A.
pub fn discord<T: Scalar>(rho_ab: &DensityMatrix<T>) -> Result<T> {
    Ok(classical_correlation(rho_ab)?.discord)
}
