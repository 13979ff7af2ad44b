//! Projective measurements: orthonormal bases, overlap quantities, and the
//! action of a local measurement on one half of a bipartite state.

use itertools::Itertools;
use num_complex::Complex;
use rand::{RngExt, SeedableRng};
use rand::distr::{Distribution, StandardUniform};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::qmat::{ComplexMatrix, DensityMatrix};
use crate::scalar::{Scalar, cre};
use crate::states::ginibre_from_rng;

/// Complete orthonormal basis of a finite-dimensional Hilbert space.
#[derive(Debug, Clone, PartialEq)]
pub struct OrthonormalBasis<T> {
    dim: usize,
    label: String,
    vectors: Vec<Vec<Complex<T>>>,
}

impl<T: Scalar> OrthonormalBasis<T> {
    /// Validates that the vectors form a complete orthonormal set: exactly
    /// `dim` vectors of length `dim` with Gram matrix equal to the identity
    /// within `TOL_VALID`.
    pub fn new(label: impl Into<String>, vectors: Vec<Vec<Complex<T>>>) -> Result<Self> {
        if vectors.is_empty() {
            return Err(Error::ShapeMismatch { context: "basis has no vectors".into() });
        }
        let dim = vectors[0].len();
        if vectors.len() != dim || vectors.iter().any(|v| v.len() != dim) {
            return Err(Error::ShapeMismatch {
                context: format!(
                    "basis needs {dim} vectors of length {dim}, got lengths {:?}",
                    vectors.iter().map(Vec::len).collect::<Vec<_>>()
                ),
            });
        }
        let mut dev = T::zero();
        for i in 0..dim {
            for j in i..dim {
                let mut ip = Complex::new(T::zero(), T::zero());
                for k in 0..dim {
                    ip += vectors[i][k].conj() * vectors[j][k];
                }
                let target = if i == j { T::one() } else { T::zero() };
                dev = dev.max((ip - cre(target)).norm());
            }
        }
        if dev > T::TOL_VALID {
            return Err(Error::NotOrthonormal { deviation: dev.to_f64().unwrap_or(f64::NAN) });
        }
        Ok(Self { dim, label: label.into(), vectors })
    }

    /// Standard basis e_0 .. e_{dim-1}.
    pub fn computational(dim: usize) -> Self {
        let zero = Complex::new(T::zero(), T::zero());
        let vectors = (0..dim)
            .map(|i| {
                let mut v = vec![zero; dim];
                v[i] = cre(T::one());
                v
            })
            .collect();
        Self { dim, label: "comp".into(), vectors }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn vector(&self, i: usize) -> &[Complex<T>] {
        &self.vectors[i]
    }

    /// Rank-one projector onto the i-th basis vector.
    pub fn projector(&self, i: usize) -> ComplexMatrix<T> {
        ComplexMatrix::outer(&self.vectors[i], &self.vectors[i])
    }
}

/// The three qubit Pauli observables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Pauli {
    X,
    Y,
    Z,
}

/// Eigenbasis of a Pauli observable, in the fixed conventional order
/// X: {(1,1), (-1,1)}/sqrt2, Y: {(i,1), (-i,1)}/sqrt2, Z: {(0,1), (1,0)}.
pub fn pauli_basis<T: Scalar>(which: Pauli) -> OrthonormalBasis<T> {
    let zero = T::zero();
    let one = T::one();
    let inv = T::FRAC_1_SQRT_2();
    let vectors = match which {
        Pauli::X => vec![
            vec![Complex::new(inv, zero), Complex::new(inv, zero)],
            vec![Complex::new(-inv, zero), Complex::new(inv, zero)],
        ],
        Pauli::Y => vec![
            vec![Complex::new(zero, inv), Complex::new(inv, zero)],
            vec![Complex::new(zero, -inv), Complex::new(inv, zero)],
        ],
        Pauli::Z => vec![
            vec![Complex::new(zero, zero), Complex::new(one, zero)],
            vec![Complex::new(one, zero), Complex::new(zero, zero)],
        ],
    };
    let label = match which {
        Pauli::X => "X",
        Pauli::Y => "Y",
        Pauli::Z => "Z",
    };
    OrthonormalBasis::new(label, vectors).expect("fixed eigenvectors are orthonormal")
}

/// Overlap matrix c[i][j] = |<u_i | v_j>|^2. Doubly stochastic for complete
/// orthonormal bases.
pub fn overlap_matrix<T: Scalar>(
    a: &OrthonormalBasis<T>,
    b: &OrthonormalBasis<T>,
) -> Result<Vec<Vec<T>>> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch { expected: a.dim(), got: b.dim() });
    }
    let d = a.dim();
    let mut c = vec![vec![T::zero(); d]; d];
    for i in 0..d {
        for j in 0..d {
            let mut ip = Complex::new(T::zero(), T::zero());
            for k in 0..d {
                ip += a.vector(i)[k].conj() * b.vector(j)[k];
            }
            c[i][j] = ip.norm_sqr();
        }
    }
    Ok(c)
}

/// Incompatibility of a basis pair: -log2 of the largest overlap.
pub fn incompatibility<T: Scalar>(
    a: &OrthonormalBasis<T>,
    b: &OrthonormalBasis<T>,
) -> Result<T> {
    let c = overlap_matrix(a, b)?;
    let max = c.iter().flatten().copied().fold(T::zero(), T::max);
    Ok(-max.log2())
}

fn check_chain<'a, T: Scalar>(bases: &[&'a OrthonormalBasis<T>]) -> Result<usize> {
    if bases.len() < 2 {
        return Err(Error::NeedAtLeastTwoBases { got: bases.len() });
    }
    let d = bases[0].dim();
    for b in &bases[1..] {
        if b.dim() != d {
            return Err(Error::DimensionMismatch { expected: d, got: b.dim() });
        }
    }
    Ok(d)
}

/// Contraction shared by the sequential-measurement overlap quantities.
///
/// For the measurement sequence u^1 .. u^N, entry `j` of the result is
///   sum over middle indices of  max_{i1} c1[i1][i2] * prod_m cm[im][i(m+1)]
/// with the final index fixed at `j`. The sum deliberately runs over the
/// middle indices only; the last index stays bound by the caller (either a
/// maximum or a probability average), otherwise it would be counted twice.
fn chain_inner<T: Scalar>(bases: &[&OrthonormalBasis<T>]) -> Result<Vec<T>> {
    let d = check_chain(bases)?;
    let c0 = overlap_matrix(bases[0], bases[1])?;
    let mut v: Vec<T> =
        (0..d).map(|j| (0..d).map(|i| c0[i][j]).fold(T::zero(), T::max)).collect();
    for m in 1..bases.len() - 1 {
        let c = overlap_matrix(bases[m], bases[m + 1])?;
        v = (0..d)
            .map(|jn| (0..d).map(|jm| v[jm] * c[jm][jn]).fold(T::zero(), |a, b| a + b))
            .collect();
    }
    Ok(v)
}

/// Largest chained overlap of a measurement sequence. For two bases this is
/// exactly the largest entry of their overlap matrix.
pub fn liu_overlap_b<T: Scalar>(bases: &[OrthonormalBasis<T>]) -> Result<T> {
    let refs: Vec<&OrthonormalBasis<T>> = bases.iter().collect();
    let inner = chain_inner(&refs)?;
    Ok(inner.into_iter().fold(T::zero(), T::max))
}

fn zhang_ell_refs<T: Scalar>(
    rho_ab: &DensityMatrix<T>,
    bases: &[&OrthonormalBasis<T>],
) -> Result<T> {
    let inner = chain_inner(bases)?;
    let outcome = measure_on_a(rho_ab, bases[bases.len() - 1])?;
    let mut ell = T::zero();
    for (j, &p) in outcome.probabilities.iter().enumerate() {
        if p > T::zero() {
            debug_assert!(inner[j] > T::zero(), "chained overlap must stay positive");
            ell -= p * inner[j].log2();
        }
    }
    Ok(ell)
}

/// Probability-weighted chained overlap of a measurement sequence, with the
/// outcome distribution of the final measurement taken on the given state.
pub fn zhang_ell<T: Scalar>(
    rho_ab: &DensityMatrix<T>,
    bases: &[OrthonormalBasis<T>],
) -> Result<T> {
    let refs: Vec<&OrthonormalBasis<T>> = bases.iter().collect();
    zhang_ell_refs(rho_ab, &refs)
}

/// Maximum of [`zhang_ell`] over every ordering of the measurement list.
/// Orderings only; outcome relabelings within a basis are not searched.
pub fn zhang_ell_max<T: Scalar>(
    rho_ab: &DensityMatrix<T>,
    bases: &[OrthonormalBasis<T>],
) -> Result<T> {
    let refs: Vec<&OrthonormalBasis<T>> = bases.iter().collect();
    check_chain(&refs)?;
    let mut best: Option<T> = None;
    for perm in (0..refs.len()).permutations(refs.len()) {
        let ordered: Vec<&OrthonormalBasis<T>> = perm.iter().map(|&i| refs[i]).collect();
        let ell = zhang_ell_refs(rho_ab, &ordered)?;
        best = Some(match best {
            Some(b) if b >= ell => b,
            _ => ell,
        });
    }
    Ok(best.expect("at least two bases, hence at least one ordering"))
}

/// Result of measuring one basis on subsystem A of a bipartite state.
///
/// `post_state` is the joint state after the outcome is recorded in the
/// measured basis: block-diagonal with blocks p_i * rho_{B|i}. Outcomes with
/// probability at or below `TOL_STRICT` carry no conditional state and are
/// excluded from averages over outcomes.
#[derive(Debug, Clone)]
pub struct MeasurementOutcome<T> {
    pub probabilities: Vec<T>,
    pub conditional_states: Vec<Option<DensityMatrix<T>>>,
    pub post_state: DensityMatrix<T>,
}

/// Measures `basis` on subsystem A of a bipartite state.
pub fn measure_on_a<T: Scalar>(
    rho_ab: &DensityMatrix<T>,
    basis: &OrthonormalBasis<T>,
) -> Result<MeasurementOutcome<T>> {
    if rho_ab.subsystems() != 2 {
        return Err(Error::NotBipartite { subsystems: rho_ab.subsystems() });
    }
    let (da, db) = (rho_ab.dims()[0], rho_ab.dims()[1]);
    if basis.dim() != da {
        return Err(Error::DimensionMismatch { expected: da, got: basis.dim() });
    }

    let mut probabilities = Vec::with_capacity(da);
    let mut conditional_states = Vec::with_capacity(da);
    let mut post = ComplexMatrix::zeros(da * db, da * db);
    for i in 0..da {
        let v = basis.vector(i);
        let mut block = ComplexMatrix::zeros(db, db);
        for a in 0..da {
            for b in 0..da {
                let w = v[a].conj() * v[b];
                if w.re == T::zero() && w.im == T::zero() {
                    continue;
                }
                for k in 0..db {
                    for l in 0..db {
                        let x = block.get(k, l) + w * rho_ab.matrix().get(a * db + k, b * db + l);
                        block.set(k, l, x);
                    }
                }
            }
        }
        let p: T = block.trace().re;
        if p < -T::TOL_VALID {
            return Err(Error::Inconsistent {
                context: format!("outcome {i} has negative probability"),
                value: p.to_f64().unwrap_or(f64::NAN),
            });
        }
        let p = p.max(T::zero());
        post = post.add(&ComplexMatrix::outer(v, v).kron(&block));
        if p <= T::TOL_STRICT {
            conditional_states.push(None);
        } else {
            let state = DensityMatrix::new(vec![db], block.scaled(cre(T::one() / p)))?;
            conditional_states.push(Some(state));
        }
        probabilities.push(p);
    }
    debug_assert!(
        (probabilities.iter().copied().fold(T::zero(), |a, b| a + b) - T::one()).abs()
            <= T::TOL_SUM,
        "outcome probabilities of a unit-trace state sum to 1"
    );
    let post_state = DensityMatrix::new(rho_ab.dims().to_vec(), post)?;
    Ok(MeasurementOutcome { probabilities, conditional_states, post_state })
}

/// Removes coherence between the basis vectors on subsystem A:
/// sum_i (P_i (x) 1) rho (P_i (x) 1). Equals the measured `post_state` up to
/// arithmetic noise, computed here by explicit projector sandwiches.
pub fn dephase_a<T: Scalar>(
    rho_ab: &DensityMatrix<T>,
    basis: &OrthonormalBasis<T>,
) -> Result<DensityMatrix<T>> {
    if rho_ab.subsystems() != 2 {
        return Err(Error::NotBipartite { subsystems: rho_ab.subsystems() });
    }
    let (da, db) = (rho_ab.dims()[0], rho_ab.dims()[1]);
    if basis.dim() != da {
        return Err(Error::DimensionMismatch { expected: da, got: basis.dim() });
    }
    let eye_b = ComplexMatrix::identity(db);
    let mut acc = ComplexMatrix::zeros(da * db, da * db);
    for i in 0..da {
        let pi = basis.projector(i).kron(&eye_b);
        acc = acc.add(&pi.matmul(rho_ab.matrix()).matmul(&pi));
    }
    DensityMatrix::new(rho_ab.dims().to_vec(), acc)
}

/// Samples a bipartite state that is incoherent on A in the computational
/// basis: sum_i w_i |i><i| (x) sigma_i with a flat random weight vector and
/// independent Ginibre blocks. Deterministic in the seed (ChaCha8 stream).
pub fn sample_a_incoherent<T: Scalar>(da: usize, db: usize, seed: u64) -> Result<DensityMatrix<T>>
where
    StandardUniform: Distribution<T>,
    StandardNormal: Distribution<T>,
{
    if da < 2 || db < 2 {
        return Err(Error::InvalidDims {
            context: format!("subsystem dimensions ({da}, {db}) must both be at least 2"),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut weights: Vec<T> = (0..da)
        .map(|_| {
            let u: T = rng.sample(StandardUniform);
            -(T::one() - u).ln()
        })
        .collect();
    let total = weights.iter().copied().fold(T::zero(), |a, b| a + b);
    for w in &mut weights {
        *w = *w / total;
    }

    let mut m = ComplexMatrix::zeros(da * db, da * db);
    for (i, &w) in weights.iter().enumerate() {
        let block = ginibre_from_rng::<T>(db, &mut rng);
        for k in 0..db {
            for l in 0..db {
                m.set(i * db + k, i * db + l, block.get(k, l).scale(w));
            }
        }
    }
    DensityMatrix::new(vec![da, db], m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qmat::{PureState, tensor_product, von_neumann_entropy};
    use crate::states::{random_ginibre, werner};
    use std::f64::consts::FRAC_1_SQRT_2;

    type B = OrthonormalBasis<f64>;
    type M = ComplexMatrix<f64>;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    /// Eigenbasis of a random hermitian matrix: orthonormal to solver
    /// precision, deterministic in the seed.
    fn random_basis(dim: usize, seed: u64) -> B {
        use rand::SeedableRng;
        use rand_distr::{Distribution, StandardNormal};
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut g = M::zeros(dim, dim);
        for i in 0..dim {
            for j in 0..dim {
                let re: f64 = StandardNormal.sample(&mut rng);
                let im: f64 = StandardNormal.sample(&mut rng);
                g.set(i, j, c(re, im));
            }
        }
        let h = g.add(&g.adjoint()).scaled(c(0.5, 0.0));
        let (_, vecs) = h.eig_hermitian().unwrap();
        let vectors = (0..dim)
            .map(|col| (0..dim).map(|row| vecs.get(row, col)).collect())
            .collect();
        B::new(format!("rnd{seed}"), vectors).unwrap()
    }

    #[test]
    fn pauli_vectors_are_the_fixed_convention() {
        let x = pauli_basis::<f64>(Pauli::X);
        assert_eq!(x.vector(0), &[c(FRAC_1_SQRT_2, 0.0), c(FRAC_1_SQRT_2, 0.0)]);
        assert_eq!(x.vector(1), &[c(-FRAC_1_SQRT_2, 0.0), c(FRAC_1_SQRT_2, 0.0)]);

        let y = pauli_basis::<f64>(Pauli::Y);
        assert_eq!(y.vector(0), &[c(0.0, FRAC_1_SQRT_2), c(FRAC_1_SQRT_2, 0.0)]);
        assert_eq!(y.vector(1), &[c(0.0, -FRAC_1_SQRT_2), c(FRAC_1_SQRT_2, 0.0)]);

        let z = pauli_basis::<f64>(Pauli::Z);
        assert_eq!(z.vector(0), &[c(0.0, 0.0), c(1.0, 0.0)]);
        assert_eq!(z.vector(1), &[c(1.0, 0.0), c(0.0, 0.0)]);
    }

    #[test]
    fn basis_validation() {
        assert!(matches!(
            B::new("bad", vec![vec![c(1.0, 0.0), c(0.0, 0.0)], vec![c(1.0, 0.0), c(0.0, 0.0)]]),
            Err(Error::NotOrthonormal { .. })
        ));
        assert!(matches!(
            B::new("short", vec![vec![c(1.0, 0.0), c(0.0, 0.0)]]),
            Err(Error::ShapeMismatch { .. })
        ));
        assert!(B::new("ok", vec![vec![c(1.0, 0.0), c(0.0, 0.0)], vec![c(0.0, 0.0), c(0.0, 1.0)]]).is_ok());
    }

    #[test]
    fn overlap_reference_points() {
        let x = pauli_basis::<f64>(Pauli::X);
        let z = pauli_basis::<f64>(Pauli::Z);
        let czz = overlap_matrix(&z, &z).unwrap();
        assert_eq!(czz, vec![vec![1.0, 0.0], vec![0.0, 1.0]]);

        let cxz = overlap_matrix(&x, &z).unwrap();
        for row in &cxz {
            for &v in row {
                assert!((v - 0.5).abs() <= 1e-15);
            }
        }
    }

    #[test]
    fn overlap_is_doubly_stochastic() {
        for seed in 0..20u64 {
            let dim = 2 + (seed as usize % 3);
            let a = random_basis(dim, seed);
            let b = random_basis(dim, 100 + seed);
            let c = overlap_matrix(&a, &b).unwrap();
            for i in 0..dim {
                let row: f64 = c[i].iter().sum();
                let col: f64 = (0..dim).map(|k| c[k][i]).sum();
                assert!((row - 1.0).abs() <= 1e-12, "seed {seed} row {i}: {row}");
                assert!((col - 1.0).abs() <= 1e-12, "seed {seed} col {i}: {col}");
            }
        }
    }

    #[test]
    fn incompatibility_reference_points() {
        let x = pauli_basis::<f64>(Pauli::X);
        let y = pauli_basis::<f64>(Pauli::Y);
        let z = pauli_basis::<f64>(Pauli::Z);
        assert_eq!(incompatibility(&z, &z).unwrap(), 0.0);
        assert!((incompatibility(&x, &z).unwrap() - 1.0).abs() <= 1e-15);
        assert!((incompatibility(&x, &y).unwrap() - 1.0).abs() <= 1e-15);
    }

    /// Brute-force enumeration of the chained-overlap maximum, written as
    /// explicit nested products so the library contraction is checked by an
    /// independent route.
    fn chain_max_oracle(bases: &[&B]) -> f64 {
        let d = bases[0].dim();
        let n = bases.len();
        let cs: Vec<Vec<Vec<f64>>> =
            (0..n - 1).map(|m| overlap_matrix(bases[m], bases[m + 1]).unwrap()).collect();
        let mut best = f64::NEG_INFINITY;
        for j_last in 0..d {
            let mut sum = 0.0;
            let middle = n - 2;
            let mut tuple = vec![0usize; middle];
            loop {
                // Indices along the chain: j1 .. j_{n-2} from the tuple, then j_last.
                let mut path = tuple.clone();
                path.push(j_last);
                let first = (0..d).map(|i| cs[0][i][path[0]]).fold(f64::MIN, f64::max);
                let mut term = first;
                for m in 1..n - 1 {
                    term *= cs[m][path[m - 1]][path[m]];
                }
                sum += term;

                let mut pos = 0;
                loop {
                    if pos == middle {
                        break;
                    }
                    tuple[pos] += 1;
                    if tuple[pos] < d {
                        break;
                    }
                    tuple[pos] = 0;
                    pos += 1;
                }
                if pos == middle {
                    break;
                }
            }
            best = best.max(sum);
        }
        best
    }

    #[test]
    fn liu_b_collapses_to_max_overlap_for_pairs() {
        for seed in 0..20u64 {
            let dim = 2 + (seed as usize % 3);
            let a = random_basis(dim, 200 + seed);
            let b = random_basis(dim, 300 + seed);
            let c = overlap_matrix(&a, &b).unwrap();
            let max = c.iter().flatten().copied().fold(0.0, f64::max);
            let lb = liu_overlap_b(&[a, b]).unwrap();
            assert_eq!(lb, max, "seed {seed}: pair value must be the exact max entry");
        }
    }

    #[test]
    fn liu_b_three_paulis_is_half() {
        let bases =
            [pauli_basis::<f64>(Pauli::X), pauli_basis(Pauli::Y), pauli_basis(Pauli::Z)];
        let b = liu_overlap_b(&bases).unwrap();
        assert!((b - 0.5).abs() <= 1e-15, "got {b:e}");

        let refs: Vec<&B> = bases.iter().collect();
        assert!((b - chain_max_oracle(&refs)).abs() <= 1e-15);
    }

    #[test]
    fn liu_b_matches_enumeration_on_random_chains() {
        for seed in 0..10u64 {
            let n = 3 + (seed as usize % 2);
            let bases: Vec<B> = (0..n).map(|k| random_basis(2, 400 + seed * 10 + k as u64)).collect();
            let refs: Vec<&B> = bases.iter().collect();
            let via_chain = liu_overlap_b(&bases).unwrap();
            let via_enum = chain_max_oracle(&refs);
            assert!(
                (via_chain - via_enum).abs() <= 1e-12,
                "seed {seed}: contraction {via_chain} vs enumeration {via_enum}"
            );
        }
    }

    #[test]
    fn liu_b_identical_bases_is_one() {
        let z = pauli_basis::<f64>(Pauli::Z);
        assert_eq!(liu_overlap_b(&[z.clone(), z.clone(), z]).unwrap(), 1.0);
    }

    #[test]
    fn chain_quantities_reject_bad_input() {
        let z = pauli_basis::<f64>(Pauli::Z);
        assert!(matches!(
            liu_overlap_b(&[z.clone()]),
            Err(Error::NeedAtLeastTwoBases { got: 1 })
        ));
        let q3 = B::computational(3);
        assert!(matches!(
            liu_overlap_b(&[z, q3]),
            Err(Error::DimensionMismatch { expected: 2, got: 3 })
        ));
    }

    #[test]
    fn zhang_ell_reference_points() {
        let quarter = werner::<f64>(0.0).unwrap();
        let x = pauli_basis::<f64>(Pauli::X);
        let z = pauli_basis::<f64>(Pauli::Z);
        let ell = zhang_ell(&quarter, &[x, z]).unwrap();
        assert!((ell - 1.0).abs() <= 1e-12);

        // Repeating one basis makes every chained overlap 1, so the value
        // vanishes identically.
        let z2 = pauli_basis::<f64>(Pauli::Z);
        let rho = random_ginibre::<f64>(&[2, 2], 7).unwrap();
        assert_eq!(zhang_ell(&rho, &[z2.clone(), z2]).unwrap(), 0.0);
    }

    /// Independent evaluation of the probability-weighted chained overlap:
    /// recompute the inner value per final index by full enumeration, then
    /// average against the measured distribution.
    fn zhang_oracle(rho: &DensityMatrix<f64>, bases: &[&B]) -> f64 {
        let d = bases[0].dim();
        let n = bases.len();
        let cs: Vec<Vec<Vec<f64>>> =
            (0..n - 1).map(|m| overlap_matrix(bases[m], bases[m + 1]).unwrap()).collect();
        let outcome = measure_on_a(rho, bases[n - 1]).unwrap();
        let mut ell = 0.0;
        for j_last in 0..d {
            let mut inner = 0.0;
            let middle = n - 2;
            let count = d.pow(middle as u32);
            for code in 0..count {
                let mut path = Vec::with_capacity(middle + 1);
                let mut k = code;
                for _ in 0..middle {
                    path.push(k % d);
                    k /= d;
                }
                path.push(j_last);
                let first = (0..d).map(|i| cs[0][i][path[0]]).fold(f64::MIN, f64::max);
                let mut term = first;
                for m in 1..n - 1 {
                    term *= cs[m][path[m - 1]][path[m]];
                }
                inner += term;
            }
            let p = outcome.probabilities[j_last];
            if p > 0.0 {
                ell -= p * inner.log2();
            }
        }
        ell
    }

    #[test]
    fn zhang_ell_matches_independent_loop_ordering() {
        let x = pauli_basis::<f64>(Pauli::X);
        let y = pauli_basis::<f64>(Pauli::Y);
        let z = pauli_basis::<f64>(Pauli::Z);

        let w0 = werner::<f64>(0.0).unwrap();
        let via_lib = zhang_ell(&w0, &[x.clone(), y.clone(), z.clone()]).unwrap();
        let via_oracle = zhang_oracle(&w0, &[&x, &y, &z]);
        assert!((via_lib - via_oracle).abs() <= 1e-12);

        for seed in 0..5u64 {
            let rho = random_ginibre::<f64>(&[2, 2], 600 + seed).unwrap();
            let bases: Vec<B> = (0..3).map(|k| random_basis(2, 700 + seed * 10 + k)).collect();
            let refs: Vec<&B> = bases.iter().collect();
            let via_lib = zhang_ell(&rho, &bases).unwrap();
            let via_oracle = zhang_oracle(&rho, &refs);
            assert!(
                (via_lib - via_oracle).abs() <= 1e-12,
                "seed {seed}: {via_lib} vs {via_oracle}"
            );
        }
    }

    #[test]
    fn zhang_ell_max_searches_orderings() {
        let x = pauli_basis::<f64>(Pauli::X);
        let z = pauli_basis::<f64>(Pauli::Z);
        let rho = random_ginibre::<f64>(&[2, 2], 11).unwrap();
        let fwd = zhang_ell(&rho, &[x.clone(), z.clone()]).unwrap();
        let rev = zhang_ell(&rho, &[z.clone(), x.clone()]).unwrap();
        let max = zhang_ell_max(&rho, &[x, z]).unwrap();
        assert_eq!(max, fwd.max(rev));
    }

    #[test]
    fn measurement_on_bell_state_in_z() {
        let bell = werner::<f64>(1.0).unwrap();
        let z = pauli_basis::<f64>(Pauli::Z);
        let out = measure_on_a(&bell, &z).unwrap();
        assert!((out.probabilities[0] - 0.5).abs() <= 1e-12);
        assert!((out.probabilities[1] - 0.5).abs() <= 1e-12);

        // First Z vector is |1>, so the first conditional is |1><1| on B.
        let one = PureState::new(vec![c(0.0, 0.0), c(1.0, 0.0)]).unwrap();
        let zero = PureState::new(vec![c(1.0, 0.0), c(0.0, 0.0)]).unwrap();
        let d_one = DensityMatrix::from_pure(&one, vec![2]).unwrap();
        let d_zero = DensityMatrix::from_pure(&zero, vec![2]).unwrap();
        let c0 = out.conditional_states[0].as_ref().unwrap();
        let c1 = out.conditional_states[1].as_ref().unwrap();
        assert!(c0.matrix().max_abs_diff(d_one.matrix()) <= 1e-12);
        assert!(c1.matrix().max_abs_diff(d_zero.matrix()) <= 1e-12);

        // Post state keeps only the classical correlations.
        let mut expected = M::zeros(4, 4);
        expected.set(0, 0, c(0.5, 0.0));
        expected.set(3, 3, c(0.5, 0.0));
        assert!(out.post_state.matrix().max_abs_diff(&expected) <= 1e-12);
    }

    #[test]
    fn measurement_on_product_state_leaves_b_fixed() {
        let a = random_ginibre::<f64>(&[2], 21).unwrap();
        let b = random_ginibre::<f64>(&[2], 22).unwrap();
        let ab = tensor_product(&a, &b).unwrap();
        for basis in [pauli_basis::<f64>(Pauli::X), pauli_basis(Pauli::Y), pauli_basis(Pauli::Z)] {
            let out = measure_on_a(&ab, &basis).unwrap();
            for cond in out.conditional_states.iter().flatten() {
                assert!(cond.matrix().max_abs_diff(b.matrix()) <= 1e-12);
            }
        }
    }

    #[test]
    fn measurement_records_impossible_outcomes_as_absent() {
        let zero = PureState::new(vec![c(1.0, 0.0), c(0.0, 0.0)]).unwrap();
        let a = DensityMatrix::from_pure(&zero, vec![2]).unwrap();
        let b = random_ginibre::<f64>(&[2], 23).unwrap();
        let ab = tensor_product(&a, &b).unwrap();
        let out = measure_on_a(&ab, &pauli_basis(Pauli::Z)).unwrap();
        // Z vector 0 is |1>, orthogonal to the A marginal |0><0|.
        assert_eq!(out.probabilities[0], 0.0);
        assert!(out.conditional_states[0].is_none());
        assert!((out.probabilities[1] - 1.0).abs() <= 1e-12);
        assert!(out.post_state.matrix().max_abs_diff(ab.matrix()) <= 1e-12);
    }

    #[test]
    fn measurement_rejects_bad_shapes() {
        let single = random_ginibre::<f64>(&[4], 31).unwrap();
        assert!(matches!(
            measure_on_a(&single, &pauli_basis(Pauli::Z)),
            Err(Error::NotBipartite { subsystems: 1 })
        ));
        let rho = random_ginibre::<f64>(&[2, 2], 32).unwrap();
        let q3 = B::computational(3);
        assert!(matches!(
            measure_on_a(&rho, &q3),
            Err(Error::DimensionMismatch { expected: 2, got: 3 })
        ));
    }

    #[test]
    fn dephasing_agrees_with_measurement_and_is_idempotent() {
        for seed in 0..10u64 {
            let rho = random_ginibre::<f64>(&[2, 2], 800 + seed).unwrap();
            for basis in
                [pauli_basis::<f64>(Pauli::X), pauli_basis(Pauli::Y), pauli_basis(Pauli::Z)]
            {
                let deph = dephase_a(&rho, &basis).unwrap();
                let out = measure_on_a(&rho, &basis).unwrap();
                assert!(
                    deph.matrix().max_abs_diff(out.post_state.matrix()) <= 1e-12,
                    "seed {seed}: dephasing and measurement disagree"
                );
                let twice = dephase_a(&deph, &basis).unwrap();
                assert!(twice.matrix().max_abs_diff(deph.matrix()) <= 1e-12);

                // Removing coherence never lowers the entropy.
                assert!(
                    von_neumann_entropy(&deph) >= von_neumann_entropy(&rho) - 1e-9,
                    "seed {seed}: dephasing lowered entropy"
                );
            }
        }
    }

    #[test]
    fn incoherent_sample_is_deterministic_and_block_diagonal() {
        let s1 = sample_a_incoherent::<f64>(2, 2, 42).unwrap();
        let s2 = sample_a_incoherent::<f64>(2, 2, 42).unwrap();
        assert_eq!(s1.matrix(), s2.matrix(), "same seed must reproduce the same state");
        let s3 = sample_a_incoherent::<f64>(2, 2, 43).unwrap();
        assert!(s1.matrix().max_abs_diff(s3.matrix()) > 1e-6, "different seeds should differ");

        let deph = dephase_a(&s1, &B::computational(2)).unwrap();
        assert!(deph.matrix().max_abs_diff(s1.matrix()) <= 1e-10);

        let s4 = sample_a_incoherent::<f64>(3, 2, 9).unwrap();
        assert_eq!(s4.dims(), &[3, 2]);
        let deph4 = dephase_a(&s4, &B::computational(3)).unwrap();
        assert!(deph4.matrix().max_abs_diff(s4.matrix()) <= 1e-10);
    }
}
