//! Self-check suite: re-verifies the advertised inequalities and identities
//! on freshly sampled states, printing one line per property with the count
//! of individual checks and the worst margin seen.

use crate::{CliError, fmt};
use qbounds::bounds::{Bound, UncertaintyQuantities, bound_value, lhs_coherence, lhs_conditional};
use qbounds::coherence::{coherence_via_tradeoff, unilateral_coherence};
use qbounds::correlations::{BlochAngles, basis_from_angles, classical_correlation, holevo, mutual_information};
use qbounds::measurement::{Pauli, measure_on_a, pauli_basis};
use qbounds::qmat::{shannon_entropy, von_neumann_entropy};
use qbounds::states::random_ginibre;
use qbounds::{Basis64, Density64};
use std::f64::consts::PI;

/// States fed to the slow dense-grid optimizer oracle.
const ORACLE_STATES: usize = 10;

struct Property {
    name: &'static str,
    tolerance: f64,
    checks: usize,
    worst: f64,
}

impl Property {
    fn new(name: &'static str, tolerance: f64) -> Self {
        Self { name, tolerance, checks: 0, worst: f64::INFINITY }
    }

    /// Margins are signed slack: negative beyond the tolerance is a failure.
    fn record(&mut self, margin: f64) {
        self.checks += 1;
        if margin < self.worst {
            self.worst = margin;
        }
    }

    fn passed(&self) -> bool {
        self.worst >= -self.tolerance
    }
}

pub fn run(samples: usize, seed: u64) -> Result<(), CliError> {
    if samples == 0 {
        return Err(CliError::Args("check needs at least one sample".to_string()));
    }

    let mut dominance = Property::new("dominance", 1e-7);
    let mut dominance_pati = Property::new("dominance_pati", 1e-6);
    let mut ordering_improved = Property::new("ordering_improved", 0.0);
    let mut adabi_vs_pati = Property::new("adabi_vs_pati", 1e-6);
    let mut outcome_split = Property::new("identity_outcome_split", 1e-9);
    let mut coherence_routes = Property::new("identity_coherence_routes", 1e-9);
    let mut holevo_vs_mutual = Property::new("holevo_vs_mutual", 1e-9);
    let mut optimizer_vs_grid = Property::new("optimizer_vs_grid", 1e-6);
    let mut classical_vs_mutual = Property::new("classical_vs_mutual", 1e-8);

    let triple = [pauli_basis::<f64>(Pauli::X), pauli_basis(Pauli::Y), pauli_basis(Pauli::Z)];
    let pair = [triple[0].clone(), triple[2].clone()];

    for k in 0..samples {
        let rho = random_ginibre::<f64>(&[2, 2], seed.wrapping_add(k as u64))?;

        for bases in [&pair[..], &triple[..]] {
            let q = UncertaintyQuantities::compute(&rho, bases)?;
            let lhs_e = lhs_conditional(&rho, bases)?;
            let lhs_c = lhs_coherence(&rho, bases)?;
            for bound in Bound::ALL {
                if !bound.is_enforced() {
                    continue;
                }
                let value = bound_value(bound, &q)?;
                let lhs = if bound.is_coherence() { lhs_c } else { lhs_e };
                if bound == Bound::Pati {
                    dominance_pati.record(lhs - value);
                } else {
                    dominance.record(lhs - value);
                }
            }
            for (improved, base) in [
                (Bound::Adabi, Bound::Berta),
                (Bound::LiuImproved, Bound::Liu),
                (Bound::ZhangImproved, Bound::Zhang),
                (Bound::CohAdabi, Bound::CohBerta),
            ] {
                ordering_improved
                    .record(bound_value(improved, &q)? - bound_value(base, &q)?);
            }
            adabi_vs_pati.record(bound_value(Bound::Adabi, &q)? - bound_value(Bound::Pati, &q)?);
        }

        let rho_b = rho.partial_trace(&[1])?;
        let s_b = von_neumann_entropy(&rho_b);
        let mutual = mutual_information(&rho)?;
        for basis in &triple {
            let outcome = measure_on_a(&rho, basis)?;
            let h_m = shannon_entropy(&outcome.probabilities)?;
            let h_m_given_b = von_neumann_entropy(&outcome.post_state) - s_b;
            let i_mb = holevo(&rho, basis)?;
            outcome_split.record(-(h_m - h_m_given_b - i_mb).abs());
            coherence_routes.record(
                -(unilateral_coherence(&rho, basis)? - coherence_via_tradeoff(&rho, basis)?)
                    .abs(),
            );
            holevo_vs_mutual.record(mutual - i_mb);
        }

        if k < ORACLE_STATES {
            let grid_min = dense_grid_minimum(&rho)?;
            let split = classical_correlation(&rho)?;
            optimizer_vs_grid.record(grid_min - split.report.best_value);
            classical_vs_mutual.record(mutual - split.classical);
        }
    }

    let properties = [
        dominance,
        dominance_pati,
        ordering_improved,
        adabi_vs_pati,
        outcome_split,
        coherence_routes,
        holevo_vs_mutual,
        optimizer_vs_grid,
        classical_vs_mutual,
    ];
    let mut failed = 0;
    for p in &properties {
        let status = if p.passed() { "PASS" } else { "FAIL" };
        println!("{status} {} checks={} worst={}", p.name, p.checks, fmt::sig12(p.worst));
        failed += usize::from(!p.passed());
    }
    if failed > 0 {
        return Err(CliError::CheckFailed { failed, total: properties.len() });
    }
    println!("ok: {} properties, {samples} states, seed {seed}", properties.len());
    Ok(())
}

/// Smallest average post-measurement memory entropy on a dense 100 x 100
/// angle grid, evaluated through the public measurement route. Independent
/// oracle for the refined optimizer.
fn dense_grid_minimum(rho: &Density64) -> Result<f64, CliError> {
    let mut best = f64::INFINITY;
    for j in 0..100 {
        for k in 0..100 {
            let theta = PI * (j as f64 + 0.5) / 100.0;
            let phi = 2.0 * PI * (k as f64) / 100.0;
            let basis: Basis64 = basis_from_angles(BlochAngles::new(theta, phi));
            let outcome = measure_on_a(rho, &basis)?;
            let avg: f64 = outcome
                .probabilities
                .iter()
                .zip(&outcome.conditional_states)
                .filter_map(|(p, cond)| cond.as_ref().map(|c| p * von_neumann_entropy(c)))
                .sum();
            best = best.min(avg);
        }
    }
    Ok(best)
}
