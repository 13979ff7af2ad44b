//! The registered uncertainty bounds, the two left-hand sides they are
//! compared against, and a report that evaluates everything on one state.

use crate::coherence::unilateral_coherence;
use crate::correlations::{
    classical_correlation, conditional_entropy, holevo, mutual_information,
};
use crate::error::{Error, Result};
use crate::measurement::{OrthonormalBasis, liu_overlap_b, measure_on_a, zhang_ell_max};
use crate::qmat::{DensityMatrix, von_neumann_entropy};
use crate::scalar::{Scalar, real};

/// Registered lower bounds. `Mu` and `NoMemory` bound the plain outcome
/// entropies; the rest bound the memory-conditioned sum or the coherence sum
/// and are enforced against it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Bound {
    Mu,
    Berta,
    NoMemory,
    Pati,
    Adabi,
    Liu,
    LiuImproved,
    Zhang,
    ZhangImproved,
    CohBerta,
    CohAdabi,
    CohMulti,
}

impl Bound {
    pub const ALL: [Bound; 12] = [
        Bound::Mu,
        Bound::Berta,
        Bound::NoMemory,
        Bound::Pati,
        Bound::Adabi,
        Bound::Liu,
        Bound::LiuImproved,
        Bound::Zhang,
        Bound::ZhangImproved,
        Bound::CohBerta,
        Bound::CohAdabi,
        Bound::CohMulti,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Bound::Mu => "mu",
            Bound::Berta => "berta",
            Bound::NoMemory => "no_memory",
            Bound::Pati => "pati",
            Bound::Adabi => "adabi",
            Bound::Liu => "liu",
            Bound::LiuImproved => "liu_improved",
            Bound::Zhang => "zhang",
            Bound::ZhangImproved => "zhang_improved",
            Bound::CohBerta => "coh_berta",
            Bound::CohAdabi => "coh_adabi",
            Bound::CohMulti => "coh_multi",
        }
    }

    pub fn from_name(name: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|b| b.name() == name)
            .ok_or_else(|| Error::UnknownBoundName {
                name: name.into(),
                valid: Self::ALL.map(Bound::name).join(", "),
            })
    }

    /// Coherence bounds compare against the coherence sum, the others
    /// against the entropy sum.
    pub fn is_coherence(self) -> bool {
        matches!(self, Bound::CohBerta | Bound::CohAdabi | Bound::CohMulti)
    }

    /// Whether the bound holds against its left-hand side for every state.
    /// `Mu` and `NoMemory` do not condition on the memory, so the
    /// memory-conditioned sum may dip below them on entangled states.
    pub fn is_enforced(self) -> bool {
        !matches!(self, Bound::Mu | Bound::NoMemory)
    }

    /// Slack allowed when enforcing the bound; the discord optimizer makes
    /// the Pati correction slightly noisier than plain entropy arithmetic.
    fn tolerance<T: Scalar>(self) -> T {
        if self == Bound::Pati { T::TOL_GAP_OPT } else { T::TOL_GAP }
    }
}

/// Every scalar a bound formula draws from, computed once per state and
/// basis list. Two-basis formulas use the first two bases of the list.
#[derive(Debug, Clone)]
pub struct UncertaintyQuantities<T> {
    /// Incompatibility of the first two bases.
    pub q_mu: T,
    /// Chained-overlap maximum over the whole list.
    pub liu_b: T,
    /// Probability-weighted chained overlap, maximized over orderings.
    pub zhang_ell_max: T,
    /// S(A|B).
    pub s_cond: T,
    /// Entropy of the measured subsystem's marginal.
    pub s_rho: T,
    /// I(A:B).
    pub mutual: T,
    /// I(M_m:B) per basis.
    pub holevo_per_basis: Vec<T>,
    /// (N-1) I(A:B) - sum_m I(M_m:B) over the whole list.
    pub delta: T,
    /// Classical correlations, when subsystem A is a qubit.
    pub j_a: Option<T>,
    /// Discord, when subsystem A is a qubit.
    pub d_a: Option<T>,
    /// Unilateral coherence per basis.
    pub coherences: Vec<T>,
    dim_a: usize,
}

impl<T: Scalar> UncertaintyQuantities<T> {
    pub fn compute(rho_ab: &DensityMatrix<T>, bases: &[OrthonormalBasis<T>]) -> Result<Self> {
        if bases.len() < 2 {
            return Err(Error::NeedAtLeastTwoBases { got: bases.len() });
        }
        if rho_ab.subsystems() != 2 {
            return Err(Error::NotBipartite { subsystems: rho_ab.subsystems() });
        }
        let dim_a = rho_ab.dims()[0];
        if bases[0].dim() != dim_a {
            return Err(Error::DimensionMismatch { expected: dim_a, got: bases[0].dim() });
        }

        let overlap_pair = [bases[0].clone(), bases[1].clone()];
        let q_mu = -liu_overlap_b(&overlap_pair)?.log2();
        let liu_b = liu_overlap_b(bases)?;
        let zhang_ell_max = zhang_ell_max(rho_ab, bases)?;
        let s_cond = conditional_entropy(rho_ab)?;
        let rho_a = rho_ab.partial_trace(&[0])?;
        let s_rho = von_neumann_entropy(&rho_a);
        let mutual = mutual_information(rho_ab)?;
        let holevo_per_basis: Vec<T> =
            bases.iter().map(|b| holevo(rho_ab, b)).collect::<Result<_>>()?;
        let spent: T = holevo_per_basis.iter().copied().fold(T::zero(), |a, b| a + b);
        let delta = mutual * real::<T>((bases.len() - 1) as f64) - spent;
        let (j_a, d_a) = if dim_a == 2 {
            let split = classical_correlation(rho_ab)?;
            (Some(split.classical), Some(split.discord))
        } else {
            (None, None)
        };
        let coherences: Vec<T> =
            bases.iter().map(|b| unilateral_coherence(rho_ab, b)).collect::<Result<_>>()?;

        Ok(Self {
            q_mu,
            liu_b,
            zhang_ell_max,
            s_cond,
            s_rho,
            mutual,
            holevo_per_basis,
            delta,
            j_a,
            d_a,
            coherences,
            dim_a,
        })
    }

    pub fn n_bases(&self) -> usize {
        self.holevo_per_basis.len()
    }

    /// Correlation surplus of the first two bases:
    /// I(A:B) - I(M_1:B) - I(M_2:B). Equals `delta` when the list is a pair.
    pub fn delta_pair(&self) -> T {
        self.mutual - self.holevo_per_basis[0] - self.holevo_per_basis[1]
    }
}

/// Evaluates one bound from precomputed quantities.
pub fn bound_value<T: Scalar>(bound: Bound, q: &UncertaintyQuantities<T>) -> Result<T> {
    let n_minus_1 = real::<T>((q.n_bases() - 1) as f64);
    let clip = |x: T| x.max(T::zero());
    let value = match bound {
        Bound::Mu => q.q_mu,
        Bound::Berta => q.q_mu + q.s_cond,
        Bound::NoMemory => q.q_mu + q.s_rho,
        Bound::Pati => {
            let (Some(j), Some(d)) = (q.j_a, q.d_a) else {
                return Err(Error::UnsupportedDimension { dim: q.dim_a });
            };
            q.q_mu + q.s_cond + clip(d - j)
        }
        Bound::Adabi => q.q_mu + q.s_cond + clip(q.delta_pair()),
        Bound::Liu => -q.liu_b.log2() + n_minus_1 * q.s_cond,
        Bound::LiuImproved => -q.liu_b.log2() + n_minus_1 * q.s_cond + clip(q.delta),
        Bound::Zhang => q.zhang_ell_max + n_minus_1 * q.s_cond,
        Bound::ZhangImproved => q.zhang_ell_max + n_minus_1 * q.s_cond + clip(q.delta),
        Bound::CohBerta => q.q_mu - q.s_cond,
        Bound::CohAdabi => q.q_mu - q.s_cond + clip(q.delta_pair()),
        Bound::CohMulti => q.zhang_ell_max - q.s_cond + clip(q.delta),
    };
    Ok(value)
}

/// Sum of the memory-conditioned outcome entropies, sum_m H(M_m|B).
pub fn lhs_conditional<T: Scalar>(
    rho_ab: &DensityMatrix<T>,
    bases: &[OrthonormalBasis<T>],
) -> Result<T> {
    let rho_b = rho_ab.partial_trace(&[1])?;
    let entropy_b = von_neumann_entropy(&rho_b);
    let mut sum = T::zero();
    for basis in bases {
        let outcome = measure_on_a(rho_ab, basis)?;
        let term = von_neumann_entropy(&outcome.post_state) - entropy_b;
        if term < -T::TOL_SUM {
            return Err(Error::Inconsistent {
                context: format!(
                    "outcome entropy of basis {} conditioned on the memory must be nonnegative",
                    basis.label()
                ),
                value: term.to_f64().unwrap_or(f64::NAN),
            });
        }
        sum += term;
    }
    Ok(sum)
}

/// Sum of the unilateral coherences, sum_m C^(B|A) in basis m.
pub fn lhs_coherence<T: Scalar>(
    rho_ab: &DensityMatrix<T>,
    bases: &[OrthonormalBasis<T>],
) -> Result<T> {
    let mut sum = T::zero();
    for basis in bases {
        sum += unilateral_coherence(rho_ab, basis)?;
    }
    Ok(sum)
}

/// Turns any lower bound on the plain outcome entropies into one on the
/// memory-conditioned sum by paying each measurement's information about B:
/// returns `lb_no_memory - sum_m I(M_m:B)`.
pub fn memory_convert<T: Scalar>(
    lb_no_memory: T,
    rho_ab: &DensityMatrix<T>,
    bases: &[OrthonormalBasis<T>],
) -> Result<T> {
    let mut value = lb_no_memory;
    for basis in bases {
        value -= holevo(rho_ab, basis)?;
    }
    Ok(value)
}

/// Everything the library can say about one state and one measurement list.
#[derive(Debug, Clone)]
pub struct BoundReport<T> {
    /// sum_m H(M_m|B).
    pub lhs_entropy: T,
    /// sum_m C^(B|A) in basis m.
    pub lhs_coherence: T,
    /// Requested bounds in request order.
    pub bounds: Vec<(Bound, T)>,
    /// Left-hand side minus bound, against the side each bound addresses.
    pub gaps: Vec<(Bound, T)>,
    pub quantities: UncertaintyQuantities<T>,
}

impl<T: Scalar> BoundReport<T> {
    pub fn gap(&self, bound: Bound) -> Option<T> {
        self.gaps.iter().find(|(b, _)| *b == bound).map(|&(_, g)| g)
    }
}

/// Evaluates the requested bounds on one state. Fails with an inconsistency
/// if any always-valid bound exceeds its left-hand side beyond tolerance.
pub fn full_report<T: Scalar>(
    rho_ab: &DensityMatrix<T>,
    bases: &[OrthonormalBasis<T>],
    which: &[Bound],
) -> Result<BoundReport<T>> {
    let quantities = UncertaintyQuantities::compute(rho_ab, bases)?;
    let lhs_entropy = lhs_conditional(rho_ab, bases)?;
    let lhs_coherence: T = quantities.coherences.iter().copied().fold(T::zero(), |a, b| a + b);

    let mut bounds = Vec::with_capacity(which.len());
    let mut gaps = Vec::with_capacity(which.len());
    for &bound in which {
        let value = bound_value(bound, &quantities)?;
        let lhs = if bound.is_coherence() { lhs_coherence } else { lhs_entropy };
        let gap = lhs - value;
        if bound.is_enforced() && gap < -bound.tolerance::<T>() {
            return Err(Error::Inconsistent {
                context: format!("bound {} exceeds its left-hand side", bound.name()),
                value: gap.to_f64().unwrap_or(f64::NAN),
            });
        }
        bounds.push((bound, value));
        gaps.push((bound, gap));
    }
    Ok(BoundReport { lhs_entropy, lhs_coherence, bounds, gaps, quantities })
}
