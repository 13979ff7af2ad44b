//! Structural properties over randomized inputs: distributions stay
//! distributions, orderings between bounds never flip, and the state
//! factories keep their closed forms.

use proptest::prelude::*;
use qbounds::bounds::{Bound, UncertaintyQuantities, bound_value};
use qbounds::correlations::{BlochAngles, basis_from_angles, holevo, mutual_information};
use qbounds::measurement::{dephase_a, liu_overlap_b, measure_on_a, overlap_matrix, zhang_ell};
use qbounds::qmat::{DensityMatrix, relative_entropy, von_neumann_entropy};
use qbounds::states::{StateSpec, random_ginibre, random_product, werner, x_state};
use std::f64::consts::{PI, TAU};

fn angle() -> impl Strategy<Value = BlochAngles<f64>> {
    (0.0..PI, 0.0..TAU).prop_map(|(theta, phi)| BlochAngles::new(theta, phi))
}

proptest! {
    #[test]
    fn overlap_rows_and_columns_sum_to_one(a in angle(), b in angle()) {
        let c = overlap_matrix(&basis_from_angles(a), &basis_from_angles(b)).unwrap();
        for i in 0..2 {
            let row: f64 = c[i].iter().sum();
            let col: f64 = c.iter().map(|r| r[i]).sum();
            prop_assert!((row - 1.0).abs() <= 1e-9, "row {i} sums to {row}");
            prop_assert!((col - 1.0).abs() <= 1e-9, "column {i} sums to {col}");
        }
    }

    #[test]
    fn sampled_states_revalidate(seed in any::<u64>()) {
        for dims in [&[2usize, 2][..], &[2, 3]] {
            let rho = random_ginibre::<f64>(dims, seed).unwrap();
            DensityMatrix::new(dims.to_vec(), rho.matrix().clone()).unwrap();
        }
    }

    #[test]
    fn product_states_carry_no_correlations(seed in any::<u64>(), a in angle()) {
        let rho = random_product::<f64>(2, 2, seed).unwrap();
        prop_assert!(mutual_information(&rho).unwrap() <= 1e-9);
        prop_assert!(holevo(&rho, &basis_from_angles(a)).unwrap() <= 1e-9);
    }

    #[test]
    fn dephasing_never_lowers_entropy(seed in any::<u64>(), a in angle()) {
        let rho = random_ginibre::<f64>(&[2, 2], seed).unwrap();
        let dephased = dephase_a(&rho, &basis_from_angles(a)).unwrap();
        prop_assert!(von_neumann_entropy(&dephased) >= von_neumann_entropy(&rho) - 1e-10);
    }

    #[test]
    fn measurement_outcomes_form_a_distribution(seed in any::<u64>(), a in angle()) {
        let rho = random_ginibre::<f64>(&[2, 2], seed).unwrap();
        let outcome = measure_on_a(&rho, &basis_from_angles(a)).unwrap();
        let total: f64 = outcome.probabilities.iter().sum();
        prop_assert!((total - 1.0).abs() <= 1e-9);
        for (p, cond) in outcome.probabilities.iter().zip(&outcome.conditional_states) {
            prop_assert!(*p >= -1e-12);
            prop_assert_eq!(cond.is_some(), *p > 1e-12);
        }
    }

    #[test]
    fn improved_bounds_dominate_their_base(
        seed in any::<u64>(), a in angle(), b in angle(), c in angle(),
    ) {
        let rho = random_ginibre::<f64>(&[2, 2], seed).unwrap();
        let bases: Vec<_> = [a, b, c].iter().map(|&x| basis_from_angles(x)).collect();
        for n in [2, 3] {
            let q = UncertaintyQuantities::compute(&rho, &bases[..n]).unwrap();
            for (improved, base) in [
                (Bound::Adabi, Bound::Berta),
                (Bound::LiuImproved, Bound::Liu),
                (Bound::ZhangImproved, Bound::Zhang),
                (Bound::CohAdabi, Bound::CohBerta),
            ] {
                let hi = bound_value(improved, &q).unwrap();
                let lo = bound_value(base, &q).unwrap();
                prop_assert!(hi >= lo, "{} {hi} < {} {lo}", improved.name(), base.name());
            }
        }
    }

    /// With two measurements the chained overlap is the plain pairwise
    /// maximum, so the two bound formulas collapse to the same arithmetic.
    #[test]
    fn pair_liu_matches_berta_bitwise(seed in any::<u64>(), a in angle(), b in angle()) {
        let rho = random_ginibre::<f64>(&[2, 2], seed).unwrap();
        let bases = [basis_from_angles(a), basis_from_angles(b)];
        let q = UncertaintyQuantities::compute(&rho, &bases).unwrap();
        let liu = bound_value(Bound::Liu, &q).unwrap();
        let berta = bound_value(Bound::Berta, &q).unwrap();
        prop_assert_eq!(liu.to_bits(), berta.to_bits());
    }

    #[test]
    fn measured_information_never_exceeds_mutual(seed in any::<u64>(), a in angle()) {
        let rho = random_ginibre::<f64>(&[2, 2], seed).unwrap();
        let i_mb = holevo(&rho, &basis_from_angles(a)).unwrap();
        prop_assert!(i_mb >= 0.0);
        prop_assert!(i_mb <= mutual_information(&rho).unwrap() + 1e-9);
    }

    /// The weighted chained overlap beats the unweighted one for the same
    /// ordering, because every chain entry sits at or below the maximum.
    #[test]
    fn weighted_overlap_bound_dominates_plain(
        seed in any::<u64>(), a in angle(), b in angle(), c in angle(),
    ) {
        let rho = random_ginibre::<f64>(&[2, 2], seed).unwrap();
        let bases: Vec<_> = [a, b, c].iter().map(|&x| basis_from_angles(x)).collect();
        for n in [2, 3] {
            let ell = zhang_ell(&rho, &bases[..n]).unwrap();
            let plain = -liu_overlap_b(&bases[..n]).unwrap().log2();
            prop_assert!(ell >= plain - 1e-9, "{ell} < {plain}");
        }
    }

    #[test]
    fn werner_spectrum_is_closed_form(eta in 0.0..=1.0f64) {
        let rho = werner::<f64>(eta).unwrap();
        let expect = [(1.0 + 3.0 * eta) / 4.0, (1.0 - eta) / 4.0];
        let spectrum = rho.spectrum();
        prop_assert!((spectrum[0] - expect[0]).abs() <= 1e-12);
        for tail in &spectrum[1..] {
            prop_assert!((tail - expect[1]).abs() <= 1e-12);
        }
    }

    #[test]
    fn xstate_memory_marginal_is_closed_form(p in 0.0..=1.0f64) {
        let rho = x_state::<f64>(p).unwrap();
        let rho_b = rho.partial_trace(&[1]).unwrap();
        let m = rho_b.matrix();
        prop_assert!((m.get(0, 0).re - p / 2.0).abs() <= 1e-12);
        prop_assert!((m.get(1, 1).re - (1.0 - p / 2.0)).abs() <= 1e-12);
        prop_assert!(m.get(0, 1).norm() <= 1e-12);
    }

    #[test]
    fn spec_text_roundtrip_rebuilds_the_state(
        pick in 0usize..7, x in 0.0..=1.0f64, seed in any::<u64>(),
    ) {
        let spec: StateSpec<f64> = match pick {
            0 => StateSpec::Werner { eta: x },
            1 => StateSpec::XState { p: x },
            2 => StateSpec::Bell { d: 2 },
            3 => StateSpec::BellDiagonal { c: [x, -x, x] },
            4 => StateSpec::Product { da: 2, db: 2, seed },
            5 => StateSpec::Ginibre { da: 2, db: 3, seed },
            _ => StateSpec::AIncoherent { da: 2, db: 2, seed },
        };
        let reparsed = StateSpec::<f64>::parse(&spec.to_string(), None).unwrap();
        let direct = spec.build().unwrap();
        let rebuilt = reparsed.build().unwrap();
        prop_assert_eq!(direct.matrix().max_abs_diff(rebuilt.matrix()), 0.0);
    }

    #[test]
    fn folded_angles_keep_the_projector(theta in -10.0..10.0f64, phi in -10.0..10.0f64) {
        let raw = BlochAngles::new(theta, phi);
        let folded = raw.folded();
        prop_assert!((0.0..=PI).contains(&folded.theta));
        prop_assert!((0.0..TAU).contains(&folded.phi));
        let before = basis_from_angles(raw);
        let after = basis_from_angles(folded);
        for i in 0..2 {
            let diff = before.projector(i).max_abs_diff(&after.projector(i));
            prop_assert!(diff <= 1e-9, "projector {i} moved by {diff}");
        }
    }

    #[test]
    fn relative_entropy_stays_nonnegative(s1 in any::<u64>(), s2 in any::<u64>()) {
        let rho = random_ginibre::<f64>(&[2, 2], s1).unwrap();
        let sigma = random_ginibre::<f64>(&[2, 2], s2).unwrap();
        prop_assert!(relative_entropy(&rho, &sigma).unwrap() >= -1e-9);
        prop_assert!(relative_entropy(&rho, &rho).unwrap().abs() <= 1e-9);
    }
}
