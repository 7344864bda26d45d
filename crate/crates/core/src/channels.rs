// Copyright 2026 Qcorr Contributors
// SPDX-License-Identifier: Apache-2.0

//! Kraus channels: representation, application, validation, canonical
//! constructors, and the two structural tests that drive everything
//! downstream — unitality (Σᵢ E⁽ⁱ⁾E⁽ⁱ⁾† = I) and complete decoherence
//! (all outputs diagonal in one fixed basis).
//!
//! Kraus lists are kept as given; no canonical minimization is
//! attempted. Channel equality is decided by action on an operator
//! basis, because the Kraus freedom E′⁽ⁱ⁾ = Σⱼ U′ᵢⱼ E⁽ʲ⁾ makes the
//! operator sets themselves non-unique.

use rand::{Rng, RngExt, SeedableRng};
use rand_chacha::ChaCha12Rng;

use crate::error::{QcorrError, Result};
use crate::linalg::{c64, hermitian_operator_basis, pauli_x, pauli_y, pauli_z, ComplexMatrix, C64};
use crate::states::{random_unitary_with_rng, DensityMatrix};
use crate::tol;

/// Trace-preserving completely positive map Λ(ρ) = Σᵢ E⁽ⁱ⁾ρE⁽ⁱ⁾†.
#[derive(Debug, Clone)]
pub struct KrausChannel {
    dim: usize,
    kraus: Vec<ComplexMatrix>,
}

/// Outcome of the unitality test.
#[derive(Debug, Clone, Copy)]
pub struct MixingCheck {
    pub mixing: bool,
    /// ‖Σᵢ E⁽ⁱ⁾E⁽ⁱ⁾† − I‖_F.
    pub defect: f64,
}

/// Outcome of the complete-decoherence test.
#[derive(Debug, Clone)]
pub struct DecoherenceCheck {
    pub decohering: bool,
    /// Common eigenbasis U with U†Λ(ρ)U diagonal for all ρ, when it exists.
    pub basis: Option<ComplexMatrix>,
    /// Max pairwise commutator norm over channel images of the operator basis.
    pub defect: f64,
}

/// The four structural classes a channel can land in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChannelClass {
    MixingOnly,
    CompletelyDecoheringOnly,
    Both,
    Neither,
}

impl ChannelClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            ChannelClass::MixingOnly => "MixingOnly",
            ChannelClass::CompletelyDecoheringOnly => "CompletelyDecoheringOnly",
            ChannelClass::Both => "Both",
            ChannelClass::Neither => "Neither",
        }
    }
}

/// Structural classification with its diagnostics.
#[derive(Debug, Clone)]
pub struct StructuralClassification {
    pub class: ChannelClass,
    pub unitality_defect: f64,
    pub decoherence_defect: f64,
    pub decoherence_basis: Option<ComplexMatrix>,
}

impl KrausChannel {
    /// Validate a Kraus list: non-empty, square operators of equal
    /// dimension, trace-preserving within `tol::KRAUS_COMPLETENESS`.
    pub fn new(dim: usize, kraus: Vec<ComplexMatrix>) -> Result<Self> {
        Self::new_with_tol(dim, kraus, tol::KRAUS_COMPLETENESS)
    }

    pub fn new_with_tol(dim: usize, kraus: Vec<ComplexMatrix>, tp_tol: f64) -> Result<Self> {
        if kraus.is_empty() {
            return Err(QcorrError::InvalidChannel("empty Kraus list".into()));
        }
        for e in &kraus {
            if e.rows() != dim || e.cols() != dim {
                return Err(QcorrError::InvalidChannel(format!(
                    "Kraus operator is {}x{}, expected {}x{}",
                    e.rows(),
                    e.cols(),
                    dim,
                    dim
                )));
            }
        }
        let mut sum = ComplexMatrix::zeros(dim, dim);
        for e in &kraus {
            sum = sum.add(&e.dagger().multiply(e)?);
        }
        let defect = sum.sub(&ComplexMatrix::identity(dim)).frobenius_norm();
        if defect > tp_tol {
            return Err(QcorrError::InvalidChannel(format!(
                "not trace-preserving: ‖ΣE†E − I‖_F = {defect:.3e}"
            )));
        }
        Ok(Self { dim, kraus })
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kraus_operators(&self) -> &[ComplexMatrix] {
        &self.kraus
    }

    /// Identity channel {I}.
    pub fn identity(dim: usize) -> Self {
        Self {
            dim,
            kraus: vec![ComplexMatrix::identity(dim)],
        }
    }

    /// Single-unitary channel {U}.
    pub fn unitary(u: ComplexMatrix) -> Result<Self> {
        if u.unitarity_defect() > tol::STRUCTURAL {
            return Err(QcorrError::InvalidChannel(format!(
                "operator is not unitary (defect {:.3e})",
                u.unitarity_defect()
            )));
        }
        let dim = u.rows();
        Ok(Self { dim, kraus: vec![u] })
    }

    /// Amplitude damping with decay probability p:
    /// E⁽⁰⁾ = [[1, 0], [0, √(1−p)]], E⁽¹⁾ = [[0, √p], [0, 0]].
    pub fn amplitude_damping(p: f64) -> Result<Self> {
        check_unit_interval(p, "damping probability")?;
        let e0 = ComplexMatrix::new(
            2,
            2,
            vec![C64::ONE, C64::ZERO, C64::ZERO, c64((1.0 - p).sqrt(), 0.0)],
        )?;
        let e1 = ComplexMatrix::new(
            2,
            2,
            vec![C64::ZERO, c64(p.sqrt(), 0.0), C64::ZERO, C64::ZERO],
        )?;
        Ok(Self {
            dim: 2,
            kraus: vec![e0, e1],
        })
    }

    /// Phase damping {√(1−p)·I, √p·σz}. At p = 1/2 this kills all
    /// coherences in one step.
    pub fn dephasing(p: f64) -> Result<Self> {
        check_unit_interval(p, "dephasing probability")?;
        Ok(Self {
            dim: 2,
            kraus: vec![
                ComplexMatrix::identity(2).scale_re((1.0 - p).sqrt()),
                pauli_z().scale_re(p.sqrt()),
            ],
        })
    }

    /// Depolarizing channel Λ(ρ) = (1−p)ρ + p·I/2, realized as the Pauli
    /// mixture {√(1−3p/4)·I, √(p/4)·σx, √(p/4)·σy, √(p/4)·σz}.
    pub fn depolarizing(p: f64) -> Result<Self> {
        check_unit_interval(p, "depolarizing probability")?;
        Ok(Self {
            dim: 2,
            kraus: vec![
                ComplexMatrix::identity(2).scale_re((1.0 - 0.75 * p).sqrt()),
                pauli_x().scale_re((0.25 * p).sqrt()),
                pauli_y().scale_re((0.25 * p).sqrt()),
                pauli_z().scale_re((0.25 * p).sqrt()),
            ],
        })
    }

    /// Λ(ρ) = Σᵢ wᵢ uᵢρuᵢ† with Σᵢ wᵢ = 1. Always unital. Weight sums
    /// within 1e-6 of 1 (hand-entered precision) are renormalized.
    pub fn mixture_of_unitaries(weights: &[f64], unitaries: Vec<ComplexMatrix>) -> Result<Self> {
        if weights.len() != unitaries.len() || weights.is_empty() {
            return Err(QcorrError::InvalidParameter(
                "weights and unitaries must pair up".into(),
            ));
        }
        let sum: f64 = weights.iter().sum();
        if weights.iter().any(|&w| w < 0.0) || (sum - 1.0).abs() > 1e-6 {
            return Err(QcorrError::InvalidParameter(format!(
                "weights must be nonnegative and sum to 1, got sum {sum}"
            )));
        }
        let dim = unitaries[0].rows();
        let mut kraus = Vec::with_capacity(weights.len());
        for (w, u) in weights.iter().zip(unitaries) {
            if u.rows() != dim || u.unitarity_defect() > tol::STRUCTURAL {
                return Err(QcorrError::InvalidChannel(
                    "mixture component is not a unitary of the common dimension".into(),
                ));
            }
            kraus.push(u.scale_re((w / sum).sqrt()));
        }
        Self::new(dim, kraus)
    }

    /// The qutrit two-unitary mixture {e₀·I₃, e₁·V} with the fixed
    /// rotation V (rows (½, ½, 1/√2), (½, ½, −1/√2), (1/√2, −1/√2, 0)).
    /// A unital channel that nevertheless creates correlation from
    /// classically correlated qutrit states; see the theorem module.
    pub fn qutrit_counterexample(e0: f64, e1: f64) -> Result<Self> {
        let norm2 = e0 * e0 + e1 * e1;
        if e0 < 0.0 || e1 < 0.0 || (norm2 - 1.0).abs() > 1e-6 {
            return Err(QcorrError::InvalidParameter(format!(
                "need e0, e1 ≥ 0 with e0² + e1² = 1, got ({e0}, {e1})"
            )));
        }
        // Renormalize so hand-entered weights (0.70710678, …) still give
        // an exactly trace-preserving channel.
        let (e0, e1) = (e0 / norm2.sqrt(), e1 / norm2.sqrt());
        let s = 1.0 / 2f64.sqrt();
        let v = ComplexMatrix::new(
            3,
            3,
            [0.5, 0.5, s, 0.5, 0.5, -s, s, -s, 0.0]
                .iter()
                .map(|&x| c64(x, 0.0))
                .collect(),
        )?;
        Ok(Self {
            dim: 3,
            kraus: vec![ComplexMatrix::identity(3).scale_re(e0), v.scale_re(e1)],
        })
    }

    /// Linear action Σᵢ E⁽ⁱ⁾ m E⁽ⁱ⁾† on an arbitrary operator.
    pub fn apply_matrix(&self, m: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(
            (m.rows(), m.cols()),
            (self.dim, self.dim),
            "operator does not match channel dimension"
        );
        let mut out = ComplexMatrix::zeros(self.dim, self.dim);
        for e in &self.kraus {
            out = out.add(&(&(e * m) * &e.dagger()));
        }
        out
    }

    /// Apply the channel to a state; the output is validated.
    pub fn apply(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        if rho.dim() != self.dim {
            return Err(QcorrError::DimensionMismatch(format!(
                "channel dimension {} vs state dimension {}",
                self.dim,
                rho.dim()
            )));
        }
        DensityMatrix::new(self.apply_matrix(rho.matrix()))
    }

    /// Unitality test: mixing iff ‖Σᵢ E⁽ⁱ⁾E⁽ⁱ⁾† − I‖_F < `tol::UNITAL_DEFECT`.
    ///
    /// For qubits this is equivalent to "never decreases entropy". For
    /// dim > 2 unitality is reported as-is: unitary mixtures satisfy it,
    /// and no equivalence with entropy non-decrease is claimed.
    pub fn is_mixing(&self) -> MixingCheck {
        let defect = self
            .kraus_conjugate_sum()
            .sub(&ComplexMatrix::identity(self.dim))
            .frobenius_norm();
        MixingCheck {
            mixing: defect < tol::UNITAL_DEFECT,
            defect,
        }
    }

    /// Σᵢ E⁽ⁱ⁾E⁽ⁱ⁾† (the image of the identity).
    pub fn kraus_conjugate_sum(&self) -> ComplexMatrix {
        let mut sum = ComplexMatrix::zeros(self.dim, self.dim);
        for e in &self.kraus {
            sum = sum.add(&e.multiply(&e.dagger()).expect("square"));
        }
        sum
    }

    /// Complete-decoherence test. The channel is probed on the Hermitian
    /// operator basis; since Λ is linear, all outputs commuting pairwise
    /// is necessary and sufficient for every output to be diagonal in
    /// one common basis, which is extracted and verified when it exists.
    pub fn is_completely_decohering(&self) -> Result<DecoherenceCheck> {
        let probes: Vec<ComplexMatrix> = hermitian_operator_basis(self.dim)
            .iter()
            .map(|f| self.apply_matrix(f))
            .collect();
        let mut defect: f64 = 0.0;
        for i in 0..probes.len() {
            for j in (i + 1)..probes.len() {
                let norm = probes[i]
                    .commutator(&probes[j])
                    .expect("square probes")
                    .frobenius_norm();
                defect = defect.max(norm);
            }
        }
        if defect >= tol::DECOHERENCE_DEFECT {
            return Ok(DecoherenceCheck {
                decohering: false,
                basis: None,
                defect,
            });
        }
        let basis = common_eigenbasis(&probes)?;
        Ok(DecoherenceCheck {
            decohering: true,
            basis: Some(basis),
            defect,
        })
    }

    /// Extension I_{d_a} ⊗ Λ acting on the B side of a bipartite system.
    pub fn extend_on_b(&self, d_a: usize) -> Self {
        let eye = ComplexMatrix::identity(d_a);
        Self {
            dim: d_a * self.dim,
            kraus: self.kraus.iter().map(|e| eye.tensor(e)).collect(),
        }
    }

    /// The map Λ*(·) = Σᵢ E⁽ⁱ⁾†(·)E⁽ⁱ⁾. Trace-preserving exactly when
    /// the original is mixing, so non-mixing inputs are rejected.
    pub fn conjugate(&self) -> Result<Self> {
        let check = self.is_mixing();
        if !check.mixing {
            return Err(QcorrError::InvalidChannel(format!(
                "conjugate of a non-mixing channel is not trace-preserving (defect {:.3e})",
                check.defect
            )));
        }
        Self::new_with_tol(
            self.dim,
            self.kraus.iter().map(|e| e.dagger()).collect(),
            tol::UNITAL_DEFECT,
        )
    }

    /// Channel equality by action on the Hermitian operator basis.
    pub fn action_matches(&self, other: &Self, tolerance: f64) -> bool {
        if self.dim != other.dim {
            return false;
        }
        hermitian_operator_basis(self.dim)
            .iter()
            .all(|f| self.apply_matrix(f).approx_eq(&other.apply_matrix(f), tolerance))
    }

    /// Structural classification by the two tests above.
    pub fn classify_structure(&self) -> Result<StructuralClassification> {
        let mixing = self.is_mixing();
        let deco = self.is_completely_decohering()?;
        let class = match (mixing.mixing, deco.decohering) {
            (true, true) => ChannelClass::Both,
            (true, false) => ChannelClass::MixingOnly,
            (false, true) => ChannelClass::CompletelyDecoheringOnly,
            (false, false) => ChannelClass::Neither,
        };
        Ok(StructuralClassification {
            class,
            unitality_defect: mixing.defect,
            decoherence_defect: deco.defect,
            decoherence_basis: deco.basis,
        })
    }
}

fn check_unit_interval(p: f64, what: &str) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(QcorrError::InvalidParameter(format!(
            "{what} must lie in [0, 1], got {p}"
        )));
    }
    Ok(())
}

/// Common eigenbasis of a commuting Hermitian family: diagonalize a
/// random real-weighted combination, then verify against every member.
/// Degenerate draws are retried with fresh (deterministic) weights.
fn common_eigenbasis(family: &[ComplexMatrix]) -> Result<ComplexMatrix> {
    let n = family[0].rows();
    let scale = family
        .iter()
        .map(ComplexMatrix::frobenius_norm)
        .fold(1.0f64, f64::max);
    for attempt in 0..5u64 {
        let mut rng = ChaCha12Rng::seed_from_u64(0xDEC0_0000 + attempt);
        let mut combo = ComplexMatrix::zeros(n, n);
        for f in family {
            combo = combo.add(&f.scale_re(rng.random::<f64>() * 2.0 - 1.0));
        }
        let eigen = combo.hermitian_eigh()?;
        let u = &eigen.eigenvectors;
        let ok = family.iter().all(|f| {
            let rotated = u.dagger().multiply(f).unwrap().multiply(u).unwrap();
            off_diagonal_max(&rotated) < tol::DECOHERENCE_DEFECT * scale.max(1.0)
        });
        if ok {
            return Ok(u.clone());
        }
    }
    Err(QcorrError::NoConvergence(
        "common eigenbasis extraction kept hitting degenerate combinations".into(),
    ))
}

fn off_diagonal_max(m: &ComplexMatrix) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            if i != j {
                worst = worst.max(m.get(i, j).norm());
            }
        }
    }
    worst
}

/// Random channel from a Haar unitary dilation: the system is coupled to
/// an ancilla of dimension `env_dim` in |0⟩, a Haar-random unitary acts
/// on the pair, and the ancilla is traced out. Kraus operators are the
/// ancilla blocks E⁽ⁱ⁾ = ⟨i|U|0⟩.
pub fn random_channel_with_rng<R: Rng>(dim: usize, env_dim: usize, rng: &mut R) -> KrausChannel {
    let u = random_unitary_with_rng(dim * env_dim, rng);
    let kraus = (0..env_dim)
        .map(|i| {
            ComplexMatrix::from_fn(dim, dim, |a, b| u.get(a * env_dim + i, b * env_dim))
        })
        .collect();
    KrausChannel::new(dim, kraus).expect("dilation blocks are trace-preserving")
}

/// Seeded random channel.
pub fn random_channel(dim: usize, env_dim: usize, seed: u64) -> KrausChannel {
    random_channel_with_rng(dim, env_dim, &mut ChaCha12Rng::seed_from_u64(seed))
}

/// Random mixture of `k` Haar unitaries with simplex-uniform weights.
pub fn random_unital_channel_with_rng<R: Rng>(dim: usize, k: usize, rng: &mut R) -> KrausChannel {
    assert!(k >= 1, "need at least one unitary");
    let mut weights: Vec<f64> = (0..k)
        .map(|_| -(1.0f64 - rng.random::<f64>()).ln())
        .collect();
    let sum: f64 = weights.iter().sum();
    for w in &mut weights {
        *w /= sum;
    }
    let unitaries = (0..k).map(|_| random_unitary_with_rng(dim, rng)).collect();
    KrausChannel::mixture_of_unitaries(&weights, unitaries)
        .expect("weights normalized, components unitary")
}

/// Seeded random unital channel.
pub fn random_unital_channel(dim: usize, k: usize, seed: u64) -> KrausChannel {
    random_unital_channel_with_rng(dim, k, &mut ChaCha12Rng::seed_from_u64(seed))
}
