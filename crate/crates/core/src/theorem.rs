// Copyright 2026 Qcorr Contributors
// SPDX-License-Identifier: Apache-2.0

//! The qubit-channel classifier and its converse: a channel acting on B
//! never creates one-way deficit from half-classical two-qubit states
//! exactly when it is mixing (unital) or completely decohering. For
//! everything else a witness ensemble exists, and this module
//! constructs it by maximizing the basis-image commutator
//!
//!   C(u) = ‖[Λ(u|0⟩⟨0|u†), Λ(u|1⟩⟨1|u†)]‖_F
//!
//! over measurement directions u. The module also reproduces the qutrit
//! counterexample showing that unitality stops protecting classicality
//! in dimension three.

use crate::channels::{ChannelClass, KrausChannel};
use crate::correlation::{one_way_deficit, quantum_discord};
use crate::error::{QcorrError, Result};
use crate::linalg::{flag_unitary, ComplexMatrix, C64};
use crate::optim::{nelder_mead, OptimizationSettings};
use crate::states::{
    random_cq_ensemble_with_rng, ClassicalQuantumEnsemble, CqTerm, DensityMatrix,
};
use crate::tol;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

/// Fixed resolution of the deterministic (θ, φ) witness scan.
pub const WITNESS_SCAN_POINTS: usize = 48;

/// One sample of the basis-image commutator scan.
#[derive(Debug, Clone, Copy)]
pub struct ScanPoint {
    pub theta: f64,
    pub phi: f64,
    pub commutator_norm: f64,
}

/// A constructed discord-creating input for a channel.
#[derive(Debug, Clone)]
pub struct WitnessReport {
    pub ensemble: ClassicalQuantumEnsemble,
    /// Basis angles (half-angle convention) of the witness measurement
    /// direction.
    pub theta: f64,
    pub phi: f64,
    /// C(u) at the optimum.
    pub commutator_norm: f64,
    /// Measures of the channel image of the ensemble.
    pub discord: f64,
    pub deficit: f64,
    pub converged: bool,
}

/// Classification of a qubit channel with diagnostics; `witness` is
/// present exactly when the class is `Neither`.
#[derive(Debug, Clone)]
pub struct ClassificationReport {
    pub class: ChannelClass,
    pub unitality_defect: f64,
    pub decoherence_defect: f64,
    pub witness: Option<WitnessReport>,
    pub commutator_scan: Vec<ScanPoint>,
}

/// Output of the qutrit demonstration.
#[derive(Debug, Clone)]
pub struct QutritCounterexampleReport {
    pub mixing: bool,
    pub unitality_defect: f64,
    /// [Λ(|0⟩⟨0|), Λ(|1⟩⟨1|)].
    pub commutator: ComplexMatrix,
    /// Fitted positive scale of the antisymmetric pattern.
    pub coefficient: f64,
    /// Relative residual after removing the fitted pattern.
    pub shape_error: f64,
    pub deficit: f64,
    pub discord: f64,
    pub converged: bool,
}

/// Result of exercising a channel against sampled half-classical states.
#[derive(Debug, Clone)]
pub struct TheoremCheckReport {
    pub class: ChannelClass,
    pub states_checked: usize,
    pub max_deficit: f64,
    pub max_discord: f64,
    /// True when every sampled state stayed below the witness threshold.
    pub all_classical: bool,
    pub witness: Option<WitnessReport>,
}

/// C(u) for the direction (θ, φ).
pub fn basis_image_commutator(ch: &KrausChannel, theta: f64, phi: f64) -> f64 {
    let u = flag_unitary(2, &[theta, phi]).expect("two angles");
    let col0 = u.column(0);
    let col1 = u.column(1);
    let img0 = ch.apply_matrix(&ComplexMatrix::outer(&col0, &col0));
    let img1 = ch.apply_matrix(&ComplexMatrix::outer(&col1, &col1));
    img0.commutator(&img1).expect("square").frobenius_norm()
}

/// Deterministic grid of C(u) over θ ∈ [0, π), φ ∈ [0, 2π).
pub fn commutator_scan(ch: &KrausChannel, points: usize) -> Vec<ScanPoint> {
    use std::f64::consts::PI;
    let mut out = Vec::with_capacity(points * points);
    for i in 0..points {
        let theta = PI * i as f64 / points as f64;
        for j in 0..points {
            let phi = 2.0 * PI * j as f64 / points as f64;
            out.push(ScanPoint {
                theta,
                phi,
                commutator_norm: basis_image_commutator(ch, theta, phi),
            });
        }
    }
    out
}

/// Angle between two Bloch axes given in the half-angle basis
/// convention, ignoring orientation (axis vs. −axis).
pub fn axis_angle_between(theta1: f64, phi1: f64, theta2: f64, phi2: f64) -> f64 {
    let axis = |t: f64, p: f64| [t.sin() * p.cos(), t.sin() * p.sin(), t.cos()];
    let a = axis(theta1, phi1);
    let b = axis(theta2, phi2);
    let dot: f64 = a.iter().zip(&b).map(|(x, y)| x * y).sum();
    dot.abs().min(1.0).acos()
}

/// Search for a half-classical input whose channel image carries
/// discord. Fails with `WitnessNotFound` when the commutator scan stays
/// at numerical zero — the structural signature of Case 1/Case 2
/// channels — or when the constructed state fails to exhibit both
/// measures above `tol::WITNESS_MEASURE`.
pub fn find_witness(
    ch: &KrausChannel,
    settings: &OptimizationSettings,
) -> Result<WitnessReport> {
    if ch.dim() != 2 {
        return Err(QcorrError::DimensionMismatch(
            "witness construction is defined for qubit channels".into(),
        ));
    }
    let scan = commutator_scan(ch, WITNESS_SCAN_POINTS);
    find_witness_from_scan(ch, &scan, settings)
}

fn find_witness_from_scan(
    ch: &KrausChannel,
    scan: &[ScanPoint],
    settings: &OptimizationSettings,
) -> Result<WitnessReport> {
    if ch.dim() != 2 {
        return Err(QcorrError::DimensionMismatch(
            "witness construction is defined for qubit channels".into(),
        ));
    }
    let best = scan
        .iter()
        .map(|p| p.commutator_norm)
        .fold(f64::NEG_INFINITY, f64::max);
    // Earliest grid point attaining the maximum wins, so flat ridges
    // resolve deterministically toward small angles.
    let start = scan
        .iter()
        .find(|p| p.commutator_norm >= best - 1e-12)
        .expect("scan is non-empty");

    let step = std::f64::consts::PI / WITNESS_SCAN_POINTS as f64 / 2.0;
    let (refined, neg_c) = nelder_mead(
        |x| -basis_image_commutator(ch, x[0], x[1]),
        &[start.theta, start.phi],
        &[step, step],
        settings.refine_iterations,
        settings.refine_tolerance,
    );
    let commutator_norm = -neg_c;
    if commutator_norm < tol::WITNESS_COMMUTATOR {
        return Err(QcorrError::WitnessNotFound(format!(
            "basis-image commutator stays at {commutator_norm:.3e}; the channel is mixing or \
             completely decohering within tolerance"
        )));
    }

    let (theta, phi) = (refined[0], refined[1]);
    let ensemble = witness_ensemble(theta, phi)?;
    let image = ch.extend_on_b(2).apply(&ensemble.assemble())?;
    let deficit = one_way_deficit(&image, (2, 2), settings)?;
    let discord = quantum_discord(&image, (2, 2), settings)?;
    if discord.value <= tol::WITNESS_MEASURE || deficit.value <= tol::WITNESS_MEASURE {
        return Err(QcorrError::WitnessNotFound(format!(
            "candidate ensemble only reaches discord {:.3e}, deficit {:.3e}",
            discord.value, deficit.value
        )));
    }
    Ok(WitnessReport {
        ensemble,
        theta,
        phi,
        commutator_norm,
        discord: discord.value,
        deficit: deficit.value,
        converged: discord.converged && deficit.converged,
    })
}

/// The equal-weight ensemble {(½, |0⟩⟨0|, u|0⟩), (½, |1⟩⟨1|, u|1⟩)}:
/// maximally distinguishable A blocks attached to the basis that
/// maximizes the image commutator.
pub fn witness_ensemble(theta: f64, phi: f64) -> Result<ClassicalQuantumEnsemble> {
    let u = flag_unitary(2, &[theta, phi])?;
    ClassicalQuantumEnsemble::new(
        vec![
            CqTerm {
                weight: 0.5,
                block: DensityMatrix::pure(&[C64::ONE, C64::ZERO])?,
                ket: u.column(0),
            },
            CqTerm {
                weight: 0.5,
                block: DensityMatrix::pure(&[C64::ZERO, C64::ONE])?,
                ket: u.column(1),
            },
        ],
        (2, 2),
    )
}

/// Classify a qubit channel and, when it is in neither protected class,
/// attach the witness that certifies discord creation.
pub fn classify_qubit_channel(
    ch: &KrausChannel,
    settings: &OptimizationSettings,
) -> Result<ClassificationReport> {
    if ch.dim() != 2 {
        return Err(QcorrError::DimensionMismatch(
            "classification is defined for qubit channels; see the qutrit counterexample for d = 3"
                .into(),
        ));
    }
    let structure = ch.classify_structure()?;
    let scan = commutator_scan(ch, WITNESS_SCAN_POINTS);
    let witness = match structure.class {
        ChannelClass::Neither => Some(find_witness_from_scan(ch, &scan, settings)?),
        _ => None,
    };
    Ok(ClassificationReport {
        class: structure.class,
        unitality_defect: structure.unitality_defect,
        decoherence_defect: structure.decoherence_defect,
        witness,
        commutator_scan: scan,
    })
}

/// The antisymmetric matrix pattern the qutrit commutator must match,
/// entries (0, ½, −1/(2√2); −½, 0, −1/(2√2); 1/(2√2), 1/(2√2), 0).
fn qutrit_commutator_pattern() -> ComplexMatrix {
    let s = 1.0 / (2.0 * 2f64.sqrt());
    let entries = [
        0.0, 0.5, -s, //
        -0.5, 0.0, -s, //
        s, s, 0.0,
    ];
    ComplexMatrix::new(3, 3, entries.iter().map(|&x| C64::from(x)).collect()).unwrap()
}

/// Run the unital qutrit channel {e₀I, e₁V} on the classically
/// correlated state ½|0⟩⟨0|⊗|0⟩⟨0| + ½|1⟩⟨1|⊗|1⟩⟨1| and report the
/// created correlation together with the commutator structure.
pub fn qutrit_counterexample(
    e0: f64,
    e1: f64,
    settings: &OptimizationSettings,
) -> Result<QutritCounterexampleReport> {
    let ch = KrausChannel::qutrit_counterexample(e0, e1)?;
    let mixing = ch.is_mixing();

    let basis_ket = |k: usize| {
        let mut v = vec![C64::ZERO; 3];
        v[k] = C64::ONE;
        v
    };
    let p0 = ComplexMatrix::outer(&basis_ket(0), &basis_ket(0));
    let p1 = ComplexMatrix::outer(&basis_ket(1), &basis_ket(1));
    let commutator = ch
        .apply_matrix(&p0)
        .commutator(&ch.apply_matrix(&p1))
        .expect("3x3");

    let pattern = qutrit_commutator_pattern();
    let inner = |a: &ComplexMatrix, b: &ComplexMatrix| -> f64 {
        a.entries()
            .iter()
            .zip(b.entries())
            .map(|(x, y)| (x.conj() * y).re)
            .sum()
    };
    let coefficient = inner(&pattern, &commutator) / inner(&pattern, &pattern);
    let residual = commutator.sub(&pattern.scale_re(coefficient)).frobenius_norm();
    let shape_error = if commutator.frobenius_norm() < 1e-15 {
        0.0
    } else {
        residual / commutator.frobenius_norm()
    };

    let ensemble = ClassicalQuantumEnsemble::new(
        vec![
            CqTerm {
                weight: 0.5,
                block: DensityMatrix::pure(&basis_ket(0))?,
                ket: basis_ket(0),
            },
            CqTerm {
                weight: 0.5,
                block: DensityMatrix::pure(&basis_ket(1))?,
                ket: basis_ket(1),
            },
        ],
        (3, 3),
    )?;
    let image = ch.extend_on_b(3).apply(&ensemble.assemble())?;
    let deficit = one_way_deficit(&image, (3, 3), settings)?;
    let discord = quantum_discord(&image, (3, 3), settings)?;

    Ok(QutritCounterexampleReport {
        mixing: mixing.mixing,
        unitality_defect: mixing.defect,
        commutator,
        coefficient,
        shape_error,
        deficit: deficit.value,
        discord: discord.value,
        converged: deficit.converged && discord.converged,
    })
}

/// Exercise a qubit channel against `n_states` random half-classical
/// inputs (plus the constructed witness when one exists) and report the
/// largest correlation the channel created.
pub fn verify_theorem1(
    ch: &KrausChannel,
    n_states: usize,
    seed: u64,
    settings: &OptimizationSettings,
) -> Result<TheoremCheckReport> {
    if ch.dim() != 2 {
        return Err(QcorrError::DimensionMismatch(
            "the classifier covers qubit channels only".into(),
        ));
    }
    let structure = ch.classify_structure()?;
    let witness = match structure.class {
        ChannelClass::Neither => Some(find_witness(ch, settings)?),
        _ => None,
    };

    let extended = ch.extend_on_b(2);
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut ensembles: Vec<ClassicalQuantumEnsemble> = (0..n_states)
        .map(|_| random_cq_ensemble_with_rng((2, 2), &mut rng))
        .collect();
    if let Some(w) = &witness {
        ensembles.push(w.ensemble.clone());
    }

    let mut max_deficit = f64::NEG_INFINITY;
    let mut max_discord = f64::NEG_INFINITY;
    for ens in &ensembles {
        let image = extended.apply(&ens.assemble())?;
        max_deficit = max_deficit.max(one_way_deficit(&image, (2, 2), settings)?.value);
        max_discord = max_discord.max(quantum_discord(&image, (2, 2), settings)?.value);
    }
    Ok(TheoremCheckReport {
        class: structure.class,
        states_checked: ensembles.len(),
        max_deficit,
        max_discord,
        all_classical: max_deficit < tol::WITNESS_MEASURE && max_discord < tol::WITNESS_MEASURE,
        witness,
    })
}

/// max over random states ρ of ‖[Σᵢ E⁽ⁱ⁾E⁽ⁱ⁾†, Λ(ρ)]‖_F: the companion
/// form of the commutator criterion. It vanishes together with the
/// basis scan (C(u) is half this norm at ρ = uσzu† up to the identity
/// shift), which is what the consistency tests pin down.
pub fn image_commutator_max_over_states(ch: &KrausChannel, n_states: usize, seed: u64) -> f64 {
    let unital_image = ch.kraus_conjugate_sum();
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..n_states {
        let rho = crate::states::random_density_matrix_with_rng(ch.dim(), &mut rng);
        let norm = unital_image
            .commutator(&ch.apply_matrix(rho.matrix()))
            .expect("square")
            .frobenius_norm();
        worst = worst.max(norm);
    }
    worst
}
