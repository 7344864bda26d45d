// Copyright 2026 Qcorr Contributors
// SPDX-License-Identifier: Apache-2.0

//! Qubit Markovian dynamics: Lindblad generators over the operator
//! basis {I, σx, σy, σz}, their superoperator matrices, time evolution
//! by exponentiation, and the classicality-preservation criterion on
//! the coefficient matrix.
//!
//! The generator is
//!   L(ρ) = −i[H, ρ] + Σ_{αβ} γ_{αβ} (F_α ρ F_β† − ½{F_β†F_α, ρ})
//! and classicality is preserved exactly when L(I) = 0, which for this
//! basis is the statement that the dissipative block of γ is symmetric
//! (all imaginary parts vanish).
//!
//! Evolution uses the superoperator exponential rather than ODE
//! stepping: exact for time-independent L, so acceptance tolerances do
//! not inherit an integrator error budget. Vectorization is
//! column-stacking: vec(AXB) = (Bᵀ ⊗ A)·vec(X).

use crate::correlation::{one_way_deficit, quantum_discord};
use crate::error::{QcorrError, Result};
use crate::linalg::{c64, hermitian_operator_basis, ComplexMatrix, C64};
use crate::optim::OptimizationSettings;
use crate::states::{ClassicalQuantumEnsemble, DensityMatrix};
use crate::tol;

/// Hamiltonian plus coefficient matrix γ over {I, σx, σy, σz} (ħ = 1).
#[derive(Debug, Clone)]
pub struct LindbladGenerator {
    hamiltonian: ComplexMatrix,
    gamma: ComplexMatrix,
}

/// Matrix form of the generator acting on column-stacked qubit states.
#[derive(Debug, Clone)]
pub struct Superoperator {
    mat: ComplexMatrix,
}

/// Both faces of the classicality criterion: the norm of L(I) and the
/// largest imaginary part in the dissipative block of γ. They vanish
/// together (‖L(I)‖_F = 4√2·‖Im γ_{i<j}‖₂ identically).
#[derive(Debug, Clone, Copy)]
pub struct ClassicalityCheck {
    pub preserves: bool,
    /// ‖L(I)‖_F.
    pub identity_image_norm: f64,
    /// max_{α,β ∈ {1,2,3}} |Im γ_{αβ}|.
    pub gamma_asymmetry: f64,
}

/// One evaluated trajectory sample.
#[derive(Debug, Clone, Copy)]
pub struct TrajectoryPoint {
    pub t: f64,
    pub deficit: f64,
    pub discord: f64,
    pub converged: bool,
}

impl LindbladGenerator {
    /// Validated constructor: H is 2×2 Hermitian, γ is 4×4 Hermitian,
    /// and the dissipative 3×3 block of γ is positive semidefinite.
    pub fn new(hamiltonian: ComplexMatrix, gamma: ComplexMatrix) -> Result<Self> {
        Self::build(hamiltonian, gamma, true)
    }

    /// Same as [`LindbladGenerator::new`] but skipping the PSD check on
    /// the dissipative block, for exploring the bare symmetry condition
    /// with coefficient matrices that are not completely positive.
    pub fn new_without_psd_check(hamiltonian: ComplexMatrix, gamma: ComplexMatrix) -> Result<Self> {
        Self::build(hamiltonian, gamma, false)
    }

    fn build(hamiltonian: ComplexMatrix, gamma: ComplexMatrix, check_psd: bool) -> Result<Self> {
        if hamiltonian.rows() != 2 || hamiltonian.cols() != 2 {
            return Err(QcorrError::InvalidGenerator(
                "Hamiltonian must be 2x2 (qubit generators only)".into(),
            ));
        }
        if gamma.rows() != 4 || gamma.cols() != 4 {
            return Err(QcorrError::InvalidGenerator(
                "coefficient matrix must be 4x4 over {I, σx, σy, σz}".into(),
            ));
        }
        if hamiltonian.hermiticity_defect() > tol::STRUCTURAL {
            return Err(QcorrError::InvalidGenerator(
                "Hamiltonian is not Hermitian".into(),
            ));
        }
        if gamma.hermiticity_defect() > tol::STRUCTURAL {
            return Err(QcorrError::InvalidGenerator(
                "γ must be Hermitian (the superoperator would not preserve Hermiticity)".into(),
            ));
        }
        if check_psd {
            let block = ComplexMatrix::from_fn(3, 3, |i, j| gamma.get(i + 1, j + 1));
            let min = block.hermitian_eigenvalues()?[0];
            if min < tol::GAMMA_PSD {
                return Err(QcorrError::InvalidGenerator(format!(
                    "dissipative block of γ has negative eigenvalue {min:.3e}"
                )));
            }
        }
        Ok(Self { hamiltonian, gamma })
    }

    /// Damping toward |0⟩ at the given rate: the γ matrix of
    /// rate·D[σ⁻] expressed over {I, σx, σy, σz}.
    pub fn amplitude_damping(rate: f64) -> Self {
        let mut gamma = ComplexMatrix::zeros(4, 4);
        gamma.set(1, 1, c64(rate / 4.0, 0.0));
        gamma.set(2, 2, c64(rate / 4.0, 0.0));
        gamma.set(1, 2, c64(0.0, -rate / 4.0));
        gamma.set(2, 1, c64(0.0, rate / 4.0));
        Self {
            hamiltonian: ComplexMatrix::zeros(2, 2),
            gamma,
        }
    }

    /// Pure dephasing at the given rate: γ₃₃ = rate, everything else 0.
    pub fn pure_dephasing(rate: f64) -> Self {
        let mut gamma = ComplexMatrix::zeros(4, 4);
        gamma.set(3, 3, c64(rate, 0.0));
        Self {
            hamiltonian: ComplexMatrix::zeros(2, 2),
            gamma,
        }
    }

    pub fn hamiltonian(&self) -> &ComplexMatrix {
        &self.hamiltonian
    }

    pub fn gamma(&self) -> &ComplexMatrix {
        &self.gamma
    }

    /// Direct term-by-term action of the generator on an operator.
    pub fn apply(&self, m: &ComplexMatrix) -> ComplexMatrix {
        let h = &self.hamiltonian;
        let mut out = h
            .commutator(m)
            .expect("2x2")
            .scale(c64(0.0, -1.0));
        let basis = hermitian_operator_basis(2);
        for (alpha, f_a) in basis.iter().enumerate() {
            for (beta, f_b) in basis.iter().enumerate() {
                let g = self.gamma.get(alpha, beta);
                if g == C64::ZERO {
                    continue;
                }
                // F_β† = F_β for the Hermitian basis.
                let sandwich = f_a.multiply(m).unwrap().multiply(f_b).unwrap();
                let fbfa = f_b.multiply(f_a).unwrap();
                let anti = fbfa.multiply(m).unwrap().add(&m.multiply(&fbfa).unwrap());
                out = out.add(&sandwich.sub(&anti.scale_re(0.5)).scale(g));
            }
        }
        out
    }

    /// The 4×4 matrix of the generator on column-stacked operators.
    pub fn superoperator(&self) -> Superoperator {
        let eye = ComplexMatrix::identity(2);
        let h = &self.hamiltonian;
        let mut mat = eye
            .tensor(h)
            .sub(&h.transpose().tensor(&eye))
            .scale(c64(0.0, -1.0));
        let basis = hermitian_operator_basis(2);
        for (alpha, f_a) in basis.iter().enumerate() {
            for (beta, f_b) in basis.iter().enumerate() {
                let g = self.gamma.get(alpha, beta);
                if g == C64::ZERO {
                    continue;
                }
                let fbfa = f_b.multiply(f_a).unwrap();
                let term = f_b
                    .conj()
                    .tensor(f_a)
                    .sub(&eye.tensor(&fbfa).add(&fbfa.transpose().tensor(&eye)).scale_re(0.5));
                mat = mat.add(&term.scale(g));
            }
        }
        Superoperator { mat }
    }

    /// Classicality criterion: L(I) = 0, equivalently a symmetric
    /// dissipative block. Both diagnostics are reported.
    pub fn preserves_classicality(&self) -> ClassicalityCheck {
        let identity_image_norm = self.apply(&ComplexMatrix::identity(2)).frobenius_norm();
        let mut gamma_asymmetry: f64 = 0.0;
        for i in 1..4 {
            for j in 1..4 {
                gamma_asymmetry = gamma_asymmetry.max(self.gamma.get(i, j).im.abs());
            }
        }
        ClassicalityCheck {
            preserves: identity_image_norm < tol::CLASSICALITY,
            identity_image_norm,
            gamma_asymmetry,
        }
    }

    /// ρ(t) = unvec(exp(Lt)·vec(ρ₀)). Invariant violations beyond
    /// `tol::EVOLVED_STATE` are reported as errors (the usual cause is a
    /// γ that is not PSD); smaller drift is repaired by symmetrization,
    /// trace normalization and eigenvalue clipping.
    pub fn evolve(&self, rho0: &DensityMatrix, t: f64) -> Result<DensityMatrix> {
        if rho0.dim() != 2 {
            return Err(QcorrError::DimensionMismatch(
                "generator evolves single-qubit states; use discord_trajectory for pairs".into(),
            ));
        }
        if t < 0.0 {
            return Err(QcorrError::InvalidParameter(format!(
                "evolution time must be nonnegative, got {t}"
            )));
        }
        let propagator = self.superoperator().propagator(t)?;
        let evolved = unvectorize(&propagator.mul_vec(&vectorize(rho0.matrix()))?, 2);
        repair_evolved_state(evolved)
    }

    /// Evolve the B side of an assembled classical-quantum two-qubit
    /// state and evaluate both correlation measures at each time.
    pub fn discord_trajectory(
        &self,
        ensemble: &ClassicalQuantumEnsemble,
        times: &[f64],
        settings: &OptimizationSettings,
    ) -> Result<Vec<TrajectoryPoint>> {
        if ensemble.dims() != (2, 2) {
            return Err(QcorrError::DimensionMismatch(
                "trajectories are defined for two-qubit ensembles".into(),
            ));
        }
        self.state_trajectory(&ensemble.assemble(), times, settings)
    }

    /// Same trajectory for an arbitrary two-qubit state: the generator
    /// drives B while A is untouched.
    pub fn state_trajectory(
        &self,
        rho0: &DensityMatrix,
        times: &[f64],
        settings: &OptimizationSettings,
    ) -> Result<Vec<TrajectoryPoint>> {
        if rho0.dim() != 4 {
            return Err(QcorrError::DimensionMismatch(
                "trajectories are defined for two-qubit states".into(),
            ));
        }
        let superop = self.superoperator();
        let mut points = Vec::with_capacity(times.len());
        for &t in times {
            if t < 0.0 {
                return Err(QcorrError::InvalidParameter(format!(
                    "evolution time must be nonnegative, got {t}"
                )));
            }
            let propagator = superop.propagator(t)?;
            let evolved = apply_propagator_on_b(&propagator, rho0.matrix(), (2, 2))?;
            let state = repair_evolved_state(evolved)?;
            let deficit = one_way_deficit(&state, (2, 2), settings)?;
            let discord = quantum_discord(&state, (2, 2), settings)?;
            points.push(TrajectoryPoint {
                t,
                deficit: deficit.value,
                discord: discord.value,
                converged: deficit.converged && discord.converged,
            });
        }
        Ok(points)
    }
}

impl Superoperator {
    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    /// exp(L·t).
    pub fn propagator(&self, t: f64) -> Result<ComplexMatrix> {
        self.mat.scale_re(t).expm()
    }

    /// ‖vec(I)†·L‖: zero exactly when the generator is trace-preserving.
    pub fn trace_preservation_defect(&self) -> f64 {
        let d = 2;
        let mut total = 0.0f64;
        for col in 0..d * d {
            let mut acc = C64::ZERO;
            // vec(I) has ones at the diagonal positions i·d + i.
            for i in 0..d {
                acc += self.mat.get(i * d + i, col);
            }
            total += acc.norm_sqr();
        }
        total.sqrt()
    }
}

/// Column-stacking vectorization.
pub fn vectorize(m: &ComplexMatrix) -> Vec<C64> {
    let d = m.rows();
    let mut v = Vec::with_capacity(d * d);
    for j in 0..d {
        for i in 0..d {
            v.push(m.get(i, j));
        }
    }
    v
}

/// Inverse of [`vectorize`].
pub fn unvectorize(v: &[C64], d: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(d, d, |i, j| v[j * d + i])
}

/// Apply a vectorized linear map to the B factor of a bipartite
/// operator: each A-indexed block goes through the propagator.
pub fn apply_propagator_on_b(
    propagator: &ComplexMatrix,
    rho: &ComplexMatrix,
    dims: (usize, usize),
) -> Result<ComplexMatrix> {
    let (da, db) = dims;
    if rho.rows() != da * db || propagator.rows() != db * db {
        return Err(QcorrError::DimensionMismatch(
            "propagator/state dimensions are inconsistent".into(),
        ));
    }
    let mut out = ComplexMatrix::zeros(da * db, da * db);
    for a in 0..da {
        for a2 in 0..da {
            let block = ComplexMatrix::from_fn(db, db, |b, b2| rho.get(a * db + b, a2 * db + b2));
            let mapped = unvectorize(&propagator.mul_vec(&vectorize(&block))?, db);
            for b in 0..db {
                for b2 in 0..db {
                    out.set(a * db + b, a2 * db + b2, mapped.get(b, b2));
                }
            }
        }
    }
    Ok(out)
}

/// Validate an evolved matrix as a state at the relaxed evolution
/// tolerance, then clean up the representation.
fn repair_evolved_state(m: ComplexMatrix) -> Result<DensityMatrix> {
    let window = tol::EVOLVED_STATE;
    let herm = m.hermiticity_defect();
    let tr = m.trace();
    if herm > window || (tr.re - 1.0).abs() > window || tr.im.abs() > window {
        return Err(QcorrError::InvalidState(format!(
            "evolved matrix violates state invariants (hermiticity {herm:.2e}, trace {tr}); \
             is the coefficient matrix PSD?"
        )));
    }
    let sym = m.add(&m.dagger()).scale_re(0.5);
    let sym = sym.scale_re(1.0 / sym.trace().re);
    let eigen = sym.hermitian_eigh()?;
    let min = eigen.eigenvalues[0];
    if min < -window {
        return Err(QcorrError::InvalidState(format!(
            "evolved matrix has eigenvalue {min:.3e}; is the coefficient matrix PSD?"
        )));
    }
    if min >= tol::PSD_FLOOR {
        return DensityMatrix::new(sym);
    }
    // Small negative drift: clip the spectrum and renormalize.
    let clipped: Vec<f64> = eigen.eigenvalues.iter().map(|&l| l.max(0.0)).collect();
    let total: f64 = clipped.iter().sum();
    let v = &eigen.eigenvectors;
    let d = sym.rows();
    let rebuilt = ComplexMatrix::from_fn(d, d, |i, j| {
        (0..d)
            .map(|k| v.get(i, k) * (clipped[k] / total) * v.get(j, k).conj())
            .sum()
    });
    DensityMatrix::new(rebuilt)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::KrausChannel;
    use crate::linalg::{pauli_x, pauli_z};
    use crate::states::{CqTerm, DensityMatrix};
    use approx::assert_abs_diff_eq;
    use rand::{RngExt, SeedableRng};
    use rand_chacha::ChaCha12Rng;

    fn zero_generator() -> LindbladGenerator {
        LindbladGenerator::new(ComplexMatrix::zeros(2, 2), ComplexMatrix::zeros(4, 4)).unwrap()
    }

    fn random_hermitian_gamma(rng: &mut ChaCha12Rng) -> ComplexMatrix {
        let g = ComplexMatrix::from_fn(4, 4, |_, _| {
            c64(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5)
        });
        g.add(&g.dagger()).scale_re(0.5)
    }

    #[test]
    fn zero_generator_is_the_zero_map() {
        let g = zero_generator();
        assert_eq!(g.apply(&pauli_x()).frobenius_norm(), 0.0);
        assert_eq!(g.superoperator().matrix().frobenius_norm(), 0.0);
    }

    #[test]
    fn pure_dephasing_decays_coherences_at_twice_the_rate() {
        let g = LindbladGenerator::pure_dephasing(0.8);
        let out = g.apply(&pauli_x());
        assert!(out.approx_eq(&pauli_x().scale_re(-1.6), 1e-13));
    }

    #[test]
    fn superoperator_matches_direct_action_on_the_operator_basis() {
        let mut rng = ChaCha12Rng::seed_from_u64(40);
        for _ in 0..10 {
            let h = {
                let g = ComplexMatrix::from_fn(2, 2, |_, _| {
                    c64(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5)
                });
                g.add(&g.dagger()).scale_re(0.5)
            };
            let gamma = random_hermitian_gamma(&mut rng);
            let g = LindbladGenerator::new_without_psd_check(h, gamma).unwrap();
            let superop = g.superoperator();
            for f in hermitian_operator_basis(2) {
                let direct = g.apply(&f);
                let via_matrix =
                    unvectorize(&superop.matrix().mul_vec(&vectorize(&f)).unwrap(), 2);
                assert!(
                    direct.approx_eq(&via_matrix, 1e-12),
                    "superoperator disagrees with term-by-term action"
                );
            }
        }
    }

    #[test]
    fn superoperator_is_trace_preserving() {
        let mut rng = ChaCha12Rng::seed_from_u64(41);
        for _ in 0..10 {
            let g = LindbladGenerator::new_without_psd_check(
                ComplexMatrix::zeros(2, 2),
                random_hermitian_gamma(&mut rng),
            )
            .unwrap();
            assert!(g.superoperator().trace_preservation_defect() < 1e-10);
        }
    }

    #[test]
    fn amplitude_damping_generator_matches_kraus_channel() {
        // e^{Lt} must reproduce the damping channel with p = 1 − e^{−γt}.
        let rate = 1.3;
        let g = LindbladGenerator::amplitude_damping(rate);
        let superop = g.superoperator();
        for t in [0.1 / rate, 1.0 / rate, 10.0 / rate] {
            let p = 1.0 - (-rate * t).exp();
            let ch = KrausChannel::amplitude_damping(p).unwrap();
            let propagator = superop.propagator(t).unwrap();
            for f in hermitian_operator_basis(2) {
                let via_exp = unvectorize(&propagator.mul_vec(&vectorize(&f)).unwrap(), 2);
                assert!(
                    via_exp.approx_eq(&ch.apply_matrix(&f), 1e-8),
                    "mismatch at t = {t}"
                );
            }
        }
    }

    #[test]
    fn classicality_criterion_spots_the_imaginary_block() {
        // Real symmetric dissipative block → preserved.
        let mut gamma = ComplexMatrix::zeros(4, 4);
        gamma.set(1, 1, c64(0.3, 0.0));
        gamma.set(2, 2, c64(0.5, 0.0));
        gamma.set(1, 2, c64(0.1, 0.0));
        gamma.set(2, 1, c64(0.1, 0.0));
        let g = LindbladGenerator::new(ComplexMatrix::zeros(2, 2), gamma).unwrap();
        let check = g.preserves_classicality();
        assert!(check.preserves);
        assert!(check.identity_image_norm < 1e-12);
        assert_eq!(check.gamma_asymmetry, 0.0);

        // Hermitian but not symmetric: γ₁₂ = i·0.1.
        let mut gamma = ComplexMatrix::zeros(4, 4);
        gamma.set(1, 1, c64(0.2, 0.0));
        gamma.set(2, 2, c64(0.2, 0.0));
        gamma.set(1, 2, c64(0.0, 0.1));
        gamma.set(2, 1, c64(0.0, -0.1));
        let g = LindbladGenerator::new(ComplexMatrix::zeros(2, 2), gamma).unwrap();
        let check = g.preserves_classicality();
        assert!(!check.preserves);
        assert!(check.identity_image_norm > 0.1);
        assert_abs_diff_eq!(check.gamma_asymmetry, 0.1, epsilon = 1e-15);

        // Amplitude damping shrinks I/2 toward the ground state.
        let check = LindbladGenerator::amplitude_damping(1.0).preserves_classicality();
        assert!(!check.preserves);
    }

    #[test]
    fn identity_image_norm_matches_gamma_asymmetry_identity() {
        // ‖L(I)‖_F = 4√2·sqrt(Σ_{i<j} Im²γ_ij) exactly.
        let mut rng = ChaCha12Rng::seed_from_u64(42);
        for _ in 0..100 {
            let gamma = random_hermitian_gamma(&mut rng);
            let g = LindbladGenerator::new_without_psd_check(ComplexMatrix::zeros(2, 2), gamma)
                .unwrap();
            let check = g.preserves_classicality();
            let mut imsq = 0.0;
            for i in 1..4 {
                for j in (i + 1)..4 {
                    imsq += g.gamma().get(i, j).im.powi(2);
                }
            }
            let predicted = 4.0 * 2f64.sqrt() * imsq.sqrt();
            assert_abs_diff_eq!(check.identity_image_norm, predicted, epsilon = 1e-10);
        }
    }

    #[test]
    fn evolve_at_zero_time_is_identity() {
        let g = LindbladGenerator::amplitude_damping(0.9);
        let rho = crate::states::random_density_matrix(2, 50);
        let out = g.evolve(&rho, 0.0).unwrap();
        assert!(out.matrix().approx_eq(rho.matrix(), 1e-12));
    }

    #[test]
    fn dephasing_kills_coherences_and_keeps_populations() {
        let g = LindbladGenerator::pure_dephasing(1.0);
        let s = 1.0 / 2f64.sqrt();
        let plus = DensityMatrix::pure(&[c64(s, 0.0), c64(s, 0.0)]).unwrap();
        let out = g.evolve(&plus, 50.0).unwrap();
        assert!(out.matrix().get(0, 1).norm() < 1e-9);
        assert_abs_diff_eq!(out.matrix().get(0, 0).re, 0.5, epsilon = 1e-10);
        assert_abs_diff_eq!(out.matrix().get(1, 1).re, 0.5, epsilon = 1e-10);
    }

    #[test]
    fn evolution_is_a_semigroup() {
        let g = LindbladGenerator::amplitude_damping(0.6);
        let rho = crate::states::random_density_matrix(2, 51);
        let direct = g.evolve(&rho, 1.9).unwrap();
        let stepped = g.evolve(&g.evolve(&rho, 0.7).unwrap(), 1.2).unwrap();
        assert!(direct.matrix().approx_eq(stepped.matrix(), 1e-9));
    }

    #[test]
    fn classicality_preservation_matches_maximally_mixed_fixed_point() {
        let mut rng = ChaCha12Rng::seed_from_u64(43);
        let mm = DensityMatrix::maximally_mixed(2);
        for _ in 0..20 {
            // PSD dissipative blocks so evolution stays physical.
            let block = {
                let g = ComplexMatrix::from_fn(3, 3, |_, _| {
                    c64(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5)
                });
                g.multiply(&g.dagger()).unwrap().scale_re(0.3)
            };
            let mut gamma = ComplexMatrix::zeros(4, 4);
            for i in 0..3 {
                for j in 0..3 {
                    gamma.set(i + 1, j + 1, block.get(i, j));
                }
            }
            let g = LindbladGenerator::new(ComplexMatrix::zeros(2, 2), gamma).unwrap();
            let preserved = g.preserves_classicality().preserves;
            let fixed = [0.1, 1.0, 10.0].iter().all(|&t| {
                g.evolve(&mm, t)
                    .unwrap()
                    .matrix()
                    .approx_eq(mm.matrix(), 1e-9)
            });
            assert_eq!(preserved, fixed);
        }
    }

    #[test]
    fn trace_is_preserved_along_trajectories() {
        let g = LindbladGenerator::amplitude_damping(1.0);
        let rho = crate::states::random_density_matrix(2, 52);
        for &t in &[0.3, 1.0, 4.0, 20.0] {
            let out = g.evolve(&rho, t).unwrap();
            assert_abs_diff_eq!(out.matrix().trace().re, 1.0, epsilon = 1e-10);
        }
    }

    fn plus_minus_ensemble() -> ClassicalQuantumEnsemble {
        let s = 1.0 / 2f64.sqrt();
        ClassicalQuantumEnsemble::new(
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
        .unwrap()
    }

    #[test]
    fn classicality_preserving_trajectory_stays_classical() {
        let mut gamma = ComplexMatrix::zeros(4, 4);
        gamma.set(1, 1, c64(0.4, 0.0));
        gamma.set(3, 3, c64(0.2, 0.0));
        let g = LindbladGenerator::new(ComplexMatrix::zeros(2, 2), gamma).unwrap();
        assert!(g.preserves_classicality().preserves);
        let points = g
            .discord_trajectory(
                &plus_minus_ensemble(),
                &[0.2, 1.0, 5.0],
                &OptimizationSettings::default(),
            )
            .unwrap();
        for p in points {
            assert!(p.deficit < 1e-6 && p.discord < 1e-6, "t = {}", p.t);
        }
    }

    #[test]
    fn amplitude_damping_creates_then_destroys_discord() {
        let g = LindbladGenerator::amplitude_damping(1.0);
        let points = g
            .discord_trajectory(
                &plus_minus_ensemble(),
                &[1.0, 50.0],
                &OptimizationSettings::default(),
            )
            .unwrap();
        assert!(points[0].discord > 1e-3, "created {}", points[0].discord);
        assert!(points[1].discord < 1e-5, "residual {}", points[1].discord);
    }

    #[test]
    fn sigma_plus_coupling_violates_psd_and_is_caught() {
        // γ with a negative dissipative eigenvalue is rejected up front…
        let mut gamma = ComplexMatrix::zeros(4, 4);
        gamma.set(1, 1, c64(0.1, 0.0));
        gamma.set(2, 2, c64(0.1, 0.0));
        gamma.set(1, 2, c64(0.0, -0.4));
        gamma.set(2, 1, c64(0.0, 0.4));
        assert!(LindbladGenerator::new(ComplexMatrix::zeros(2, 2), gamma.clone()).is_err());
        // …while the escape hatch admits it and evolution reports the
        // invariant violation instead.
        let g = LindbladGenerator::new_without_psd_check(ComplexMatrix::zeros(2, 2), gamma)
            .unwrap();
        let rho = DensityMatrix::pure(&[C64::ONE, C64::ZERO]).unwrap();
        assert!(g.evolve(&rho, 5.0).is_err());
    }

    #[test]
    fn constructor_rejects_non_hermitian_gamma() {
        let mut gamma = ComplexMatrix::zeros(4, 4);
        gamma.set(1, 2, c64(0.3, 0.0));
        assert!(matches!(
            LindbladGenerator::new(ComplexMatrix::zeros(2, 2), gamma),
            Err(QcorrError::InvalidGenerator(_))
        ));
        let h = pauli_z().scale(c64(0.0, 1.0));
        assert!(LindbladGenerator::new(h, ComplexMatrix::zeros(4, 4)).is_err());
    }
}
