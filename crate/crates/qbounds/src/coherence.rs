//! Relative-entropy coherence measures, for a single system and for one side
//! of a bipartite state.

use crate::correlations::conditional_entropy;
use crate::error::{Error, Result};
use crate::measurement::{OrthonormalBasis, dephase_a, measure_on_a};
use crate::qmat::{DensityMatrix, shannon_entropy, von_neumann_entropy};
use crate::scalar::Scalar;

fn clamp_coherence<T: Scalar>(value: T, context: &str) -> Result<T> {
    if value < -T::TOL_SUM {
        return Err(Error::Inconsistent {
            context: context.into(),
            value: value.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(value.max(T::zero()))
}

/// Relative entropy of coherence S(diag(rho)) - S(rho), with the diagonal
/// taken in the given basis of the full space.
pub fn relative_entropy_of_coherence<T: Scalar>(
    rho: &DensityMatrix<T>,
    basis: &OrthonormalBasis<T>,
) -> Result<T> {
    if basis.dim() != rho.dim() {
        return Err(Error::DimensionMismatch { expected: rho.dim(), got: basis.dim() });
    }
    let d = rho.dim();
    let mut populations = Vec::with_capacity(d);
    for i in 0..d {
        let v = basis.vector(i);
        let mut p = T::zero();
        for a in 0..d {
            for b in 0..d {
                p += (v[a].conj() * rho.matrix().get(a, b) * v[b]).re;
            }
        }
        populations.push(p.max(T::zero()));
    }
    let value = shannon_entropy(&populations)? - von_neumann_entropy(rho);
    clamp_coherence(value, "coherence must be nonnegative")
}

/// Coherence of subsystem A relative to `basis`, measured jointly with B:
/// S(dephased rho_AB) - S(rho_AB).
pub fn unilateral_coherence<T: Scalar>(
    rho_ab: &DensityMatrix<T>,
    basis: &OrthonormalBasis<T>,
) -> Result<T> {
    let dephased = dephase_a(rho_ab, basis)?;
    let value = von_neumann_entropy(&dephased) - von_neumann_entropy(rho_ab);
    clamp_coherence(value, "unilateral coherence must be nonnegative")
}

/// The same quantity through the measurement route H(Q|B) - S(A|B), where Q
/// is the outcome register of measuring `basis` on A. Agrees with
/// [`unilateral_coherence`] up to arithmetic noise.
pub fn coherence_via_tradeoff<T: Scalar>(
    rho_ab: &DensityMatrix<T>,
    basis: &OrthonormalBasis<T>,
) -> Result<T> {
    let outcome = measure_on_a(rho_ab, basis)?;
    let rho_b = rho_ab.partial_trace(&[1])?;
    let h_q_given_b = von_neumann_entropy(&outcome.post_state) - von_neumann_entropy(&rho_b);
    let value = h_q_given_b - conditional_entropy(rho_ab)?;
    clamp_coherence(value, "unilateral coherence must be nonnegative")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measurement::{Pauli, pauli_basis, sample_a_incoherent};
    use crate::qmat::PureState;
    use crate::scalar::cre;
    use crate::states::{random_ginibre, werner};

    #[test]
    fn plus_state_reference_points() {
        let inv = std::f64::consts::FRAC_1_SQRT_2;
        let plus = PureState::new(vec![cre(inv), cre(inv)]).unwrap();
        let rho = DensityMatrix::from_pure(&plus, vec![2]).unwrap();
        let z = pauli_basis::<f64>(Pauli::Z);
        let x = pauli_basis::<f64>(Pauli::X);
        assert!((relative_entropy_of_coherence(&rho, &z).unwrap() - 1.0).abs() <= 1e-12);
        assert!(relative_entropy_of_coherence(&rho, &x).unwrap() <= 1e-12);
    }

    #[test]
    fn maximally_mixed_state_has_no_coherence() {
        let half = werner::<f64>(0.0).unwrap().partial_trace(&[0]).unwrap();
        for basis in [pauli_basis::<f64>(Pauli::X), pauli_basis(Pauli::Y), pauli_basis(Pauli::Z)]
        {
            assert!(relative_entropy_of_coherence(&half, &basis).unwrap() <= 1e-12);
        }
    }

    #[test]
    fn coherence_is_nonnegative_and_dim_checked() {
        for seed in 0..20u64 {
            let rho = random_ginibre::<f64>(&[2], 1000 + seed).unwrap();
            for basis in
                [pauli_basis::<f64>(Pauli::X), pauli_basis(Pauli::Y), pauli_basis(Pauli::Z)]
            {
                assert!(relative_entropy_of_coherence(&rho, &basis).unwrap() >= 0.0);
            }
        }
        let big = random_ginibre::<f64>(&[2, 2], 1100).unwrap();
        assert!(matches!(
            relative_entropy_of_coherence(&big, &pauli_basis(Pauli::Z)),
            Err(Error::DimensionMismatch { expected: 4, got: 2 })
        ));
    }

    #[test]
    fn both_routes_agree() {
        for seed in 0..20u64 {
            let rho = random_ginibre::<f64>(&[2, 2], 1200 + seed).unwrap();
            for basis in
                [pauli_basis::<f64>(Pauli::X), pauli_basis(Pauli::Y), pauli_basis(Pauli::Z)]
            {
                let direct = unilateral_coherence(&rho, &basis).unwrap();
                let via_measurement = coherence_via_tradeoff(&rho, &basis).unwrap();
                assert!(
                    (direct - via_measurement).abs() <= 1e-9,
                    "seed {seed} basis {}: {direct} vs {via_measurement}",
                    basis.label()
                );
                assert!(direct >= 0.0);
            }
        }
    }

    #[test]
    fn incoherent_states_score_zero() {
        let sigma = sample_a_incoherent::<f64>(2, 2, 77).unwrap();
        let comp = crate::measurement::OrthonormalBasis::computational(2);
        assert!(unilateral_coherence(&sigma, &comp).unwrap() <= 1e-9);
    }

    #[test]
    fn bell_state_carries_one_bit_in_every_basis() {
        let bell = werner::<f64>(1.0).unwrap();
        for basis in [pauli_basis::<f64>(Pauli::X), pauli_basis(Pauli::Y), pauli_basis(Pauli::Z)]
        {
            let c = unilateral_coherence(&bell, &basis).unwrap();
            assert!((c - 1.0).abs() <= 1e-9, "basis {}: {c}", basis.label());
        }
    }
}
