// Copyright 2026 Qcorr Contributors
// SPDX-License-Identifier: Apache-2.0

//! Acceptance suite: one test per headline claim, each printing a
//! pass/fail line (visible with `cargo test --test acceptance --
//! --nocapture`). Criterion 9 (CLI byte-determinism) lives in the CLI
//! crate next to the binary it exercises.

mod common;

use std::time::{Duration, Instant};

use qcorr::channels::{random_channel_with_rng, random_unital_channel_with_rng};
use qcorr::linalg::{c64, ComplexMatrix, C64};
use qcorr::states::{random_cq_ensemble_with_rng, random_density_matrix_with_rng};
use qcorr::theorem::axis_angle_between;
use qcorr::{
    find_witness, max_singlet_fraction, mes_ket, msf_after_channel, one_way_deficit,
    qutrit_counterexample, quantum_discord, ChannelClass, ClassicalQuantumEnsemble, CqTerm,
    DensityMatrix, KrausChannel, LindbladGenerator, OptimizationSettings,
};
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

fn settings() -> OptimizationSettings {
    OptimizationSettings::default()
}

#[test]
fn criterion_1_mixing_equivalence_both_directions() {
    let start = Instant::now();
    let mut rng = ChaCha12Rng::seed_from_u64(0xAC01);

    // Forward: unital channels never decrease entropy.
    for k in 0..200usize {
        let ch = random_unital_channel_with_rng(2, 2 + k % 3, &mut rng);
        for _ in 0..50 {
            let rho = random_density_matrix_with_rng(2, &mut rng);
            let out = ch.apply(&rho).unwrap();
            assert!(
                out.von_neumann_entropy() >= rho.von_neumann_entropy() - 1e-9,
                "unital channel {k} decreased entropy"
            );
        }
    }

    // Converse: every non-unital channel strictly suppresses the
    // entropy of the maximally mixed state.
    let mm = DensityMatrix::maximally_mixed(2);
    let mut checked = 0usize;
    while checked < 200 {
        let ch = random_channel_with_rng(2, 2, &mut rng);
        if ch.is_mixing().defect <= 1e-3 {
            continue;
        }
        checked += 1;
        let s = ch.apply(&mm).unwrap().von_neumann_entropy();
        assert!(s < 1.0 - 1e-9, "non-unital channel left S(I/2) at {s}");
    }

    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(30), "took {elapsed:.1?}");
    println!(
        "[PASS] criterion 1: unital ⇒ entropy non-decreasing (200×50), non-unital ⇒ S(I/2) drop (200) [{elapsed:.1?}]"
    );
}

#[test]
fn criterion_2_protected_channels_never_create_correlation() {
    let start = Instant::now();
    let settings = settings();
    let mut channels: Vec<KrausChannel> = Vec::new();
    for i in 1..=9 {
        let p = i as f64 / 10.0;
        channels.push(KrausChannel::dephasing(p).unwrap());
        channels.push(KrausChannel::depolarizing(p).unwrap());
    }
    channels.push(KrausChannel::amplitude_damping(1.0).unwrap());

    let mut rng = ChaCha12Rng::seed_from_u64(0xAC02);
    let mut worst: f64 = 0.0;
    for (c_idx, ch) in channels.iter().enumerate() {
        let extended = ch.extend_on_b(2);
        for s_idx in 0..100 {
            let ens = random_cq_ensemble_with_rng((2, 2), &mut rng);
            let image = extended.apply(&ens.assemble()).unwrap();
            let deficit = one_way_deficit(&image, (2, 2), &settings).unwrap().value;
            let discord = quantum_discord(&image, (2, 2), &settings).unwrap().value;
            worst = worst.max(deficit.abs()).max(discord.abs());
            assert!(
                deficit < 1e-6 && discord < 1e-6,
                "channel {c_idx} state {s_idx}: deficit {deficit:.3e}, discord {discord:.3e}"
            );
        }
    }

    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(120), "took {elapsed:.1?}");
    println!(
        "[PASS] criterion 2: 19 mixing/decohering channels × 100 cq states stay classical (max measure {worst:.2e}) [{elapsed:.1?}]"
    );
}

#[test]
fn criterion_3_witness_construction_for_unprotected_channels() {
    let start = Instant::now();
    let settings = settings();

    for p in [0.2, 0.5, 0.8] {
        let ch = KrausChannel::amplitude_damping(p).unwrap();
        let w = find_witness(&ch, &settings).unwrap();
        assert!(
            w.discord > 1e-6,
            "damping p = {p}: witness discord {:.3e}",
            w.discord
        );
        if (p - 0.5).abs() < 1e-12 {
            let angle = axis_angle_between(w.theta, w.phi, std::f64::consts::FRAC_PI_2, 0.0);
            assert!(
                angle < 0.2,
                "p = 0.5 witness basis is {angle:.3} rad from the |±⟩ axis"
            );
        }
    }

    let mut found = 0usize;
    let mut seed = 0u64;
    let mut min_discord = f64::INFINITY;
    while found < 50 {
        let ch = qcorr::random_channel(2, 2, seed);
        seed += 1;
        if ch.classify_structure().unwrap().class != ChannelClass::Neither {
            continue;
        }
        found += 1;
        let w = find_witness(&ch, &settings).unwrap();
        min_discord = min_discord.min(w.discord);
        assert!(
            w.discord > 1e-6,
            "random channel seed {}: witness discord {:.3e}",
            seed - 1,
            w.discord
        );
    }

    let elapsed = start.elapsed();
    println!(
        "[PASS] criterion 3: witnesses found for damping p ∈ {{0.2, 0.5, 0.8}} (p = 0.5 at the |±⟩ axis) and 50 random channels (min discord {min_discord:.2e}) [{elapsed:.1?}]"
    );
}

#[test]
fn criterion_4_unital_qutrit_channel_creates_deficit() {
    let start = Instant::now();
    let s = 1.0 / 2f64.sqrt();
    let report = qutrit_counterexample(s, s, &settings()).unwrap();
    assert!(report.mixing, "the two-unitary mixture must be unital");
    assert!(
        report.shape_error < 1e-10,
        "commutator shape error {:.3e}",
        report.shape_error
    );
    assert!(
        report.deficit > 1e-4,
        "created deficit {:.3e}",
        report.deficit
    );
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(60), "took {elapsed:.1?}");
    println!(
        "[PASS] criterion 4: unital qutrit channel matches the antisymmetric commutator pattern (err {:.1e}) and creates deficit {:.3e} bits [{elapsed:.1?}]",
        report.shape_error, report.deficit
    );
}

#[test]
fn criterion_5_coefficient_matrix_criterion() {
    let start = Instant::now();
    let settings = settings();
    let mut rng = ChaCha12Rng::seed_from_u64(0xAC05);

    // The L(I) test and the imaginary-block test agree verdict for
    // verdict across random Hermitian γ, half of them symmetrized.
    for i in 0..100 {
        let g = ComplexMatrix::from_fn(4, 4, |_, _| {
            use rand::RngExt;
            c64(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5)
        });
        let mut gamma = g.add(&g.dagger()).scale_re(0.5);
        if i % 2 == 1 {
            // Real-symmetrize the dissipative block.
            for r in 1..4 {
                for c in 1..4 {
                    let avg = 0.5 * (gamma.get(r, c).re + gamma.get(c, r).re);
                    gamma.set(r, c, c64(avg, 0.0));
                }
            }
        }
        let gen =
            LindbladGenerator::new_without_psd_check(ComplexMatrix::zeros(2, 2), gamma).unwrap();
        let check = gen.preserves_classicality();
        let by_identity = check.identity_image_norm < 1e-9;
        let by_gamma = check.gamma_asymmetry < 1e-9;
        assert_eq!(
            by_identity, by_gamma,
            "sample {i}: ‖L(I)‖ = {:.3e} vs max|Im γ| = {:.3e}",
            check.identity_image_norm, check.gamma_asymmetry
        );
    }

    // A γ with an imaginary coupling creates discord at finite time; its
    // real-symmetrized counterpart never does.
    let mut gamma = ComplexMatrix::zeros(4, 4);
    gamma.set(1, 1, c64(0.2, 0.0));
    gamma.set(2, 2, c64(0.2, 0.0));
    gamma.set(1, 2, c64(0.0, 0.1));
    gamma.set(2, 1, c64(0.0, -0.1));
    let skew = LindbladGenerator::new(ComplexMatrix::zeros(2, 2), gamma.clone()).unwrap();
    let mut sym_gamma = gamma;
    sym_gamma.set(1, 2, C64::ZERO);
    sym_gamma.set(2, 1, C64::ZERO);
    let sym = LindbladGenerator::new(ComplexMatrix::zeros(2, 2), sym_gamma).unwrap();
    assert!(!skew.preserves_classicality().preserves);
    assert!(sym.preserves_classicality().preserves);

    let ensemble = random_cq_ensemble_with_rng((2, 2), &mut ChaCha12Rng::seed_from_u64(505));
    let times: Vec<f64> = (1..=20).map(|k| 0.25 * k as f64).collect();
    let created = skew.discord_trajectory(&ensemble, &times, &settings).unwrap();
    let peak = created.iter().map(|p| p.discord).fold(0.0f64, f64::max);
    assert!(peak > 1e-5, "imaginary coupling created only {peak:.3e}");
    let kept = sym.discord_trajectory(&ensemble, &times, &settings).unwrap();
    for p in &kept {
        assert!(
            p.discord < 1e-6,
            "symmetrized generator created {:.3e} at t = {}",
            p.discord,
            p.t
        );
    }

    let elapsed = start.elapsed();
    println!(
        "[PASS] criterion 5: L(I) and Im-γ tests agree 100/100; γ₁₂ = 0.1i creates {peak:.2e} bits while its symmetrization stays classical over 20 times [{elapsed:.1?}]"
    );
}

#[test]
fn criterion_6_damping_trajectory_rises_then_vanishes() {
    let start = Instant::now();
    let settings = settings();
    let s = 1.0 / 2f64.sqrt();
    let ensemble = ClassicalQuantumEnsemble::new(
        vec![
            CqTerm {
                weight: 0.7,
                block: DensityMatrix::pure(&[C64::ONE, C64::ZERO]).unwrap(),
                ket: vec![c64(s, 0.0), c64(s, 0.0)],
            },
            CqTerm {
                weight: 0.3,
                block: DensityMatrix::pure(&[C64::ZERO, C64::ONE]).unwrap(),
                ket: vec![c64(s, 0.0), c64(-s, 0.0)],
            },
        ],
        (2, 2),
    )
    .unwrap();
    let generator = LindbladGenerator::amplitude_damping(1.0);
    let times = [0.1, 0.5, 1.0, 2.0, 5.0, 50.0];
    let points = generator
        .discord_trajectory(&ensemble, &times, &settings)
        .unwrap();
    let peak = points[..5].iter().map(|p| p.discord).fold(0.0f64, f64::max);
    let tail = points.last().unwrap().discord;
    assert!(peak > 1e-3, "peak created discord only {peak:.3e}");
    assert!(tail < 1e-5, "discord at t = 50/γ still {tail:.3e}");

    let elapsed = start.elapsed();
    println!(
        "[PASS] criterion 6: damping creates {peak:.2e} bits at intermediate t and leaves {tail:.1e} at t = 50/γ [{elapsed:.1?}]"
    );
}

#[test]
fn criterion_7_singlet_fraction_monotonicity() {
    let start = Instant::now();
    let settings = settings();
    let mut rng = ChaCha12Rng::seed_from_u64(0xAC07);

    let states: Vec<DensityMatrix> = (0..100)
        .map(|_| random_density_matrix_with_rng(4, &mut rng))
        .collect();
    let channels: Vec<KrausChannel> = (0..20)
        .map(|k| random_unital_channel_with_rng(2, 2 + k % 2, &mut rng))
        .collect();

    let mut max_gap: f64 = 0.0;
    for (si, rho) in states.iter().enumerate() {
        let before = max_singlet_fraction(rho, (2, 2), &settings).unwrap();
        for (ci, ch) in channels.iter().enumerate() {
            let after_state = ch.extend_on_b(2).apply(rho).unwrap();
            let after = max_singlet_fraction(&after_state, (2, 2), &settings).unwrap();
            assert!(
                after.fraction <= before.fraction + 1e-7,
                "state {si} channel {ci}: F {} → {}",
                before.fraction,
                after.fraction
            );
            assert!(
                after.avg_fidelity <= before.avg_fidelity + 1e-7,
                "state {si} channel {ci}: f {} → {}",
                before.avg_fidelity,
                after.avg_fidelity
            );
        }
    }

    // Dual route and the analytic depolarizing point.
    for (si, rho) in states.iter().take(10).enumerate() {
        let cmp = msf_after_channel(rho, &channels[si % channels.len()], (2, 2), &settings)
            .unwrap();
        max_gap = max_gap.max(cmp.dual_route_gap);
        assert!(
            cmp.dual_route_gap < 1e-8,
            "state {si}: dual-route gap {:.3e}",
            cmp.dual_route_gap
        );
    }
    let bell = DensityMatrix::pure(&mes_ket(2)).unwrap();
    let cmp = msf_after_channel(
        &bell,
        &KrausChannel::depolarizing(0.5).unwrap(),
        (2, 2),
        &settings,
    )
    .unwrap();
    assert!(
        (cmp.after.fraction - 0.625).abs() < 1e-8,
        "isotropic overlap {} vs 1 − 3p/4 = 0.625",
        cmp.after.fraction
    );
    assert!(cmp.dual_route_gap < 1e-8);

    let elapsed = start.elapsed();
    println!(
        "[PASS] criterion 7: F never increased over 100×20 unital pairs; dual routes agree (max gap {max_gap:.1e}); depolarizing point matches 1 − 3p/4 [{elapsed:.1?}]"
    );
}

#[test]
fn criterion_8_production_optimizer_matches_grid_oracle() {
    let start = Instant::now();
    let settings = settings();
    let mut rng = ChaCha12Rng::seed_from_u64(0xAC08);
    let mut worst_gap: f64 = 0.0;
    for i in 0..20 {
        let rho = random_density_matrix_with_rng(4, &mut rng);
        let deficit = one_way_deficit(&rho, (2, 2), &settings).unwrap().value;
        let discord = quantum_discord(&rho, (2, 2), &settings).unwrap().value;

        let oracle_deficit = common::deficit_grid_oracle(&rho, 240);
        let oracle_discord = common::discord_grid_oracle(&rho, 240);
        worst_gap = worst_gap
            .max((deficit - oracle_deficit).abs())
            .max((discord - oracle_discord).abs());
        assert!(
            (deficit - oracle_deficit).abs() < 1e-4,
            "state {i}: deficit {deficit} vs oracle {oracle_deficit}"
        );
        assert!(
            (discord - oracle_discord).abs() < 1e-4,
            "state {i}: discord {discord} vs oracle {oracle_discord}"
        );
        assert!(
            discord <= deficit + 1e-6,
            "state {i}: discord {discord} > deficit {deficit}"
        );
    }
    let elapsed = start.elapsed();
    println!(
        "[PASS] criterion 8: optimizer agrees with the 240-point exhaustive oracle on 20 states (max gap {worst_gap:.2e}) and discord ≤ deficit throughout [{elapsed:.1?}]"
    );
}
