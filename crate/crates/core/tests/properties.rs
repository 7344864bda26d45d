// Copyright 2026 Qcorr Contributors
// SPDX-License-Identifier: Apache-2.0

//! Cross-module invariants and oracle cross-checks that do not belong
//! to any single unit-test suite.

mod common;

use proptest::prelude::*;
use qcorr::linalg::{c64, ComplexMatrix, Subsystem};
use qcorr::states::random_density_matrix_with_rng;
use qcorr::{
    max_singlet_fraction, mes_ket, one_way_deficit, quantum_discord,
    zero_discord_separable_check, DensityMatrix, MeasurementBasis, OptimizationSettings,
};
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

fn complex_entry() -> impl Strategy<Value = (f64, f64)> {
    ((-1.0..1.0f64), (-1.0..1.0f64))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn partial_trace_preserves_trace_for_any_bipartite_matrix(
        entries in proptest::collection::vec(complex_entry(), 36),
    ) {
        let m = ComplexMatrix::new(6, 6, entries.iter().map(|&(re, im)| c64(re, im)).collect())
            .unwrap();
        for keep in [Subsystem::A, Subsystem::B] {
            let red = m.partial_trace((2, 3), keep).unwrap();
            let diff = red.trace() - m.trace();
            prop_assert!(diff.norm() < 1e-12);
        }
    }

    #[test]
    fn tensor_trace_is_multiplicative_for_any_pair(
        a_entries in proptest::collection::vec(complex_entry(), 9),
        b_entries in proptest::collection::vec(complex_entry(), 4),
    ) {
        let a = ComplexMatrix::new(3, 3, a_entries.iter().map(|&(re, im)| c64(re, im)).collect())
            .unwrap();
        let b = ComplexMatrix::new(2, 2, b_entries.iter().map(|&(re, im)| c64(re, im)).collect())
            .unwrap();
        let diff = a.tensor(&b).trace() - a.trace() * b.trace();
        prop_assert!(diff.norm() < 1e-12);
    }

    #[test]
    fn measurement_bases_are_orthonormal_for_any_angles(
        params in proptest::collection::vec(-10.0..10.0f64, 6),
    ) {
        let basis = MeasurementBasis::from_parameters(3, &params).unwrap();
        let mut sum = ComplexMatrix::zeros(3, 3);
        for p in basis.projectors() {
            prop_assert!(p.multiply(p).unwrap().approx_eq(p, 1e-12));
            sum = sum.add(p);
        }
        prop_assert!(sum.approx_eq(&ComplexMatrix::identity(3), 1e-12));
    }

    #[test]
    fn post_measurement_preserves_trace_and_hermiticity(
        seed in 0u64..1000,
        theta in 0.0..std::f64::consts::PI,
        phi in 0.0..(2.0 * std::f64::consts::PI),
    ) {
        let rho = qcorr::random_density_matrix(4, seed);
        let basis = MeasurementBasis::from_parameters(2, &[theta, phi]).unwrap();
        let measured = qcorr::post_measurement_state(&rho, (2, 2), &basis).unwrap();
        prop_assert!((measured.matrix().trace().re - 1.0).abs() < 1e-10);
        prop_assert!(measured.matrix().hermiticity_defect() < 1e-10);
    }
}

#[test]
fn werner_state_discord_matches_dense_grid_oracle() {
    // ½|Φ₊⟩⟨Φ₊| + ½·I/4, cross-checked against the 10×-resolution
    // exhaustive oracle.
    let bell = DensityMatrix::pure(&mes_ket(2)).unwrap();
    let mixed = DensityMatrix::maximally_mixed(4);
    let werner = DensityMatrix::new(
        bell.matrix()
            .scale_re(0.5)
            .add(&mixed.matrix().scale_re(0.5)),
    )
    .unwrap();
    let settings = OptimizationSettings::default();
    let production = quantum_discord(&werner, (2, 2), &settings).unwrap();
    let oracle = common::discord_grid_oracle(&werner, 240);
    assert!(
        (production.value - oracle).abs() < 1e-4,
        "production {} vs oracle {oracle}",
        production.value
    );
    let production = one_way_deficit(&werner, (2, 2), &settings).unwrap();
    let oracle = common::deficit_grid_oracle(&werner, 240);
    assert!(
        (production.value - oracle).abs() < 1e-4,
        "production {} vs oracle {oracle}",
        production.value
    );
}

#[test]
fn discord_stays_below_deficit_across_two_hundred_random_states() {
    let settings = OptimizationSettings::default();
    let mut rng = ChaCha12Rng::seed_from_u64(2024);
    for i in 0..200 {
        let rho = random_density_matrix_with_rng(4, &mut rng);
        let deficit = one_way_deficit(&rho, (2, 2), &settings).unwrap();
        let discord = quantum_discord(&rho, (2, 2), &settings).unwrap();
        assert!(deficit.value >= -1e-7, "state {i}: deficit {}", deficit.value);
        assert!(discord.value >= -1e-7, "state {i}: discord {}", discord.value);
        assert!(
            discord.value <= deficit.value + 1e-6,
            "state {i}: discord {} > deficit {}",
            discord.value,
            deficit.value
        );
    }
}

#[test]
fn noncommuting_separable_decompositions_carry_discord() {
    // Separable states built with deliberately noncommuting B factors:
    // the commutator check must flag them, and the measured discord must
    // back it up on at least 95% of the samples.
    let settings = OptimizationSettings::default();
    let mut rng = ChaCha12Rng::seed_from_u64(77);
    let total = 40;
    let mut confirmed = 0;
    for _ in 0..total {
        let a1 = random_density_matrix_with_rng(2, &mut rng);
        let a2 = random_density_matrix_with_rng(2, &mut rng);
        let b1 = DensityMatrix::pure(&qcorr::states::random_pure_ket_with_rng(2, &mut rng))
            .unwrap();
        let b2 = DensityMatrix::pure(&qcorr::states::random_pure_ket_with_rng(2, &mut rng))
            .unwrap();
        let terms = vec![(0.5, a1, b1), (0.5, a2, b2)];
        let (commuting, norm) = zero_discord_separable_check(&terms);
        assert!(!commuting, "random pure B factors should not commute (norm {norm})");
        let mat = terms[0]
            .1
            .matrix()
            .tensor(terms[0].2.matrix())
            .scale_re(terms[0].0)
            .add(&terms[1].1.matrix().tensor(terms[1].2.matrix()).scale_re(terms[1].0));
        let rho = DensityMatrix::new(mat).unwrap();
        if quantum_discord(&rho, (2, 2), &settings).unwrap().value > 1e-4 {
            confirmed += 1;
        }
    }
    assert!(
        confirmed * 100 >= total * 95,
        "only {confirmed}/{total} noncommuting samples show discord above 1e-4"
    );
}

#[test]
fn commuting_ensembles_have_no_discord() {
    let settings = OptimizationSettings::default();
    for seed in [5u64, 6, 7] {
        let rho = qcorr::random_cq_ensemble((2, 2), seed).assemble();
        let discord = quantum_discord(&rho, (2, 2), &settings).unwrap();
        assert!(discord.value < 1e-7, "seed {seed}: {}", discord.value);
    }
}

#[test]
fn non_mixing_noise_can_increase_the_singlet_fraction() {
    // The monotonicity result is one-directional: outside the mixing
    // class, local noise may help. Damping the B side of
    // q·|Ψ−⟩⟨Ψ−| + (1−q)·|00⟩⟨00| raises F by q·p/4.
    let settings = OptimizationSettings::default();
    let s = 1.0 / 2f64.sqrt();
    let psi_minus =
        DensityMatrix::pure(&[c64(0.0, 0.0), c64(s, 0.0), c64(-s, 0.0), c64(0.0, 0.0)]).unwrap();
    let ground = DensityMatrix::pure(&[
        c64(1.0, 0.0),
        c64(0.0, 0.0),
        c64(0.0, 0.0),
        c64(0.0, 0.0),
    ])
    .unwrap();
    let q = 0.2;
    let rho = DensityMatrix::new(
        psi_minus
            .matrix()
            .scale_re(q)
            .add(&ground.matrix().scale_re(1.0 - q)),
    )
    .unwrap();
    let before = max_singlet_fraction(&rho, (2, 2), &settings).unwrap().fraction;
    let mut best_gain = f64::NEG_INFINITY;
    for p in [0.3, 0.6, 0.9] {
        let ch = qcorr::KrausChannel::amplitude_damping(p).unwrap();
        assert!(!ch.is_mixing().mixing);
        let after_state = ch.extend_on_b(2).apply(&rho).unwrap();
        let after = max_singlet_fraction(&after_state, (2, 2), &settings)
            .unwrap()
            .fraction;
        best_gain = best_gain.max(after - before);
        assert!(
            (after - before - q * p / 4.0).abs() < 1e-6,
            "p = {p}: gain {} departs from qp/4",
            after - before
        );
    }
    assert!(best_gain > 1e-3, "no fidelity increase found ({best_gain})");
}

#[test]
fn verifier_confirms_soundness_on_a_full_batch() {
    // Forward direction through the public verifier: a protected
    // channel leaves every one of 100 random half-classical inputs
    // below the witness threshold; an unprotected one does not.
    let settings = OptimizationSettings::default();
    let report = qcorr::verify_theorem1(
        &qcorr::KrausChannel::dephasing(0.7).unwrap(),
        100,
        2026,
        &settings,
    )
    .unwrap();
    assert_eq!(report.states_checked, 100);
    assert!(
        report.all_classical,
        "max deficit {} max discord {}",
        report.max_deficit, report.max_discord
    );

    let report = qcorr::verify_theorem1(
        &qcorr::KrausChannel::amplitude_damping(0.5).unwrap(),
        100,
        2026,
        &settings,
    )
    .unwrap();
    assert_eq!(report.states_checked, 101); // the witness joins the batch
    assert!(!report.all_classical);
    assert!(report.max_discord > 1e-3);
}

#[test]
fn singlet_fraction_matches_magic_basis_closed_form() {
    let settings = OptimizationSettings::default();
    let mut rng = ChaCha12Rng::seed_from_u64(99);
    for i in 0..20 {
        let rho = random_density_matrix_with_rng(4, &mut rng);
        let production = max_singlet_fraction(&rho, (2, 2), &settings).unwrap();
        let oracle = common::msf_magic_basis_oracle(&rho);
        assert!(
            (production.fraction - oracle).abs() < 1e-7,
            "state {i}: production {} vs closed form {oracle}",
            production.fraction
        );
    }
}
