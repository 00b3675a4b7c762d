use hybridcomb::bands::{enumerate_bands, ScanOptions};
use hybridcomb::dos::{density_of_states, dos_band_integral, DEFAULT_QUAD_NODES};
use hybridcomb::limits::exchange_map;
use hybridcomb::scattering::{one_species_amplitudes, two_species_amplitudes};
use hybridcomb::transfer::{monodromy_one_species, monodromy_two_species};
use hybridcomb::{Comb, Lattice, Momentum, OneSpecies, TwoSpecies};
use proptest::prelude::*;

fn w1_strategy() -> impl Strategy<Value = f64> {
    prop_oneof![-0.95..0.95f64, 1.05..4.0f64, -4.0..-1.05f64]
}

fn one_species() -> impl Strategy<Value = OneSpecies> {
    (-15.0..15.0f64, w1_strategy(), 0.5..2.0f64).prop_map(|(w0, w1, a)| OneSpecies::new(w0, w1, a).unwrap())
}

fn two_species() -> impl Strategy<Value = TwoSpecies> {
    (-10.0..10.0f64, w1_strategy(), -10.0..10.0f64, w1_strategy(), 0.05..0.95f64, 0.5..2.0f64)
        .prop_map(|(w0, w1, v0, v1, t, a)| TwoSpecies::new(w0, w1, v0, v1, t * a, a).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn one_species_matches_oracle(p in one_species(), eps in -40.0..200.0f64) {
        let f = p.secular(eps).unwrap().value;
        let m = monodromy_one_species(eps, &p).unwrap().half_trace();
        prop_assert!((f - m).abs() <= 1e-9 * f.abs().max(1.0), "{f} vs {m}");
    }

    #[test]
    fn two_species_matches_oracle(p in two_species(), eps in -40.0..200.0f64) {
        let f = p.secular(eps).unwrap().value;
        let m = monodromy_two_species(eps, &p).unwrap().half_trace();
        prop_assert!((f - m).abs() <= 1e-9 * f.abs().max(1.0), "{f} vs {m}");
    }

    #[test]
    fn exchange_leaves_the_band_function_unchanged(p in two_species(), eps in -20.0..100.0f64) {
        let f = p.secular(eps).unwrap().value;
        let g = exchange_map(&p).secular(eps).unwrap().value;
        prop_assert!((f - g).abs() <= 1e-9 * f.abs().max(1.0));
    }

    #[test]
    fn amplitudes_are_unitary(p in one_species(), q in two_species(), k in 0.05..20.0f64) {
        let k = Momentum::real(k).unwrap();
        for r in one_species_amplitudes(k, &p).unwrap().unitarity_residuals() {
            prop_assert!(r < 1e-10);
        }
        for r in two_species_amplitudes(k, &q).unwrap().unitarity_residuals() {
            prop_assert!(r < 1e-10);
        }
    }

    #[test]
    fn dos_vanishes_exactly_in_gaps(p in one_species(), eps in -40.0..100.0f64) {
        let s = density_of_states(eps, &p).unwrap();
        let f = p.secular(eps).unwrap().value;
        if f.abs() > 1.0 {
            prop_assert_eq!(s.g, 0.0);
        } else {
            prop_assert!(s.g > 0.0 || f.abs() == 1.0);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn bands_are_ordered_and_disjoint(p in two_species()) {
        let comb = Comb::Two(p);
        let bands = enumerate_bands(&comb, &ScanOptions::below_bound_states(&comb, 60.0), 9).unwrap();
        for (i, b) in bands.iter().enumerate() {
            prop_assert_eq!(b.index, i);
            prop_assert!(b.lower.epsilon <= b.upper.epsilon);
            for w in b.samples.windows(2) {
                prop_assert!(w[0].q < w[1].q);
            }
        }
        for w in bands.windows(2) {
            prop_assert!(w[0].upper.epsilon <= w[1].lower.epsilon);
        }
    }

    #[test]
    fn every_band_holds_one_state_per_cell(p in one_species()) {
        let comb = Comb::One(p);
        let bands = enumerate_bands(&comb, &ScanOptions::below_bound_states(&comb, 40.0), 2).unwrap();
        for b in bands.iter().take(3) {
            let n = dos_band_integral(b, &comb, DEFAULT_QUAD_NODES).unwrap();
            // deep bands: F is a difference of terms of size cosh(kappa a)
            prop_assert!((n - 1.0).abs() < 1e-4, "band {}: {n}", b.index);
        }
    }
}
