// Copyright 2026 Qcorr Contributors
// SPDX-License-Identifier: Apache-2.0

//! Quantum discord and one-way quantum deficit, minimized over von
//! Neumann measurements on subsystem B, plus the commutator criterion
//! that decides zero discord for an explicitly separable state.
//!
//! The post-measurement state Σᵢ (I⊗Πᵢ)ρ(I⊗Πᵢ) is block-diagonal in the
//! measured basis, so the objectives are evaluated from the dA×dA blocks
//! Aᵢ = (I⊗⟨bᵢ|)ρ(I⊗|bᵢ⟩): S(ρᴰ) pools the block spectra and S(ρᴰ_B)
//! is the Shannon entropy of the block traces. No full (dA·dB)² matrix
//! is ever diagonalized inside the optimization loop.

use crate::error::{QcorrError, Result};
use crate::linalg::{flag_unitary, ComplexMatrix, Subsystem, C64};
use crate::optim::{minimize_grid_refine, OptimizationSettings, Optimum};
use crate::states::{entropy_of_spectrum, DensityMatrix};
use crate::tol;

/// Orthonormal rank-1 projector set {Πᵢ} on B, carrying the angles that
/// generated it (empty when built directly from kets).
#[derive(Debug, Clone)]
pub struct MeasurementBasis {
    dim_b: usize,
    projectors: Vec<ComplexMatrix>,
    parameters: Vec<f64>,
}

impl MeasurementBasis {
    /// Basis from `d·(d−1)` angles: one (θ, φ) pair per plane of the
    /// column unitary. All angles zero gives the computational basis;
    /// for a qubit, (θ = π/2, φ = 0) gives {|+⟩⟨+|, |−⟩⟨−|}.
    pub fn from_parameters(dim_b: usize, parameters: &[f64]) -> Result<Self> {
        let u = flag_unitary(dim_b, parameters)?;
        let projectors = (0..dim_b)
            .map(|i| {
                let col = u.column(i);
                ComplexMatrix::outer(&col, &col)
            })
            .collect();
        Ok(Self {
            dim_b,
            projectors,
            parameters: parameters.to_vec(),
        })
    }

    /// Basis from a complete orthonormal ket set.
    pub fn from_kets(kets: &[Vec<C64>]) -> Result<Self> {
        let dim_b = kets.len();
        for k in kets {
            if k.len() != dim_b {
                return Err(QcorrError::DimensionMismatch(
                    "measurement kets must form a square basis".into(),
                ));
            }
        }
        for i in 0..dim_b {
            for j in 0..=i {
                let overlap: C64 = kets[i]
                    .iter()
                    .zip(&kets[j])
                    .map(|(a, b)| a.conj() * b)
                    .sum();
                let expect = if i == j { 1.0 } else { 0.0 };
                if (overlap.norm() - expect).abs() > tol::STRUCTURAL {
                    return Err(QcorrError::InvalidParameter(format!(
                        "kets {j} and {i} are not orthonormal"
                    )));
                }
            }
        }
        Ok(Self {
            dim_b,
            projectors: kets.iter().map(|k| ComplexMatrix::outer(k, k)).collect(),
            parameters: Vec::new(),
        })
    }

    pub fn dim_b(&self) -> usize {
        self.dim_b
    }

    pub fn projectors(&self) -> &[ComplexMatrix] {
        &self.projectors
    }

    pub fn parameters(&self) -> &[f64] {
        &self.parameters
    }
}

/// A minimized correlation measure in bits, with the basis that attains
/// it. `converged` is false when the best two optimizer restarts
/// disagreed by more than `tol::RESTART_AGREEMENT`.
#[derive(Debug, Clone)]
pub struct CorrelationResult {
    pub value: f64,
    pub optimal_basis: MeasurementBasis,
    pub converged: bool,
}

/// Σᵢ (I⊗Πᵢ) ρ (I⊗Πᵢ): the state the demon reconstructs after a von
/// Neumann measurement on B. Measuring again in the same basis is a
/// fixed point.
pub fn post_measurement_state(
    rho: &DensityMatrix,
    dims: (usize, usize),
    basis: &MeasurementBasis,
) -> Result<DensityMatrix> {
    let (da, db) = check_dims(rho, dims)?;
    if basis.dim_b != db {
        return Err(QcorrError::DimensionMismatch(format!(
            "basis dimension {} does not match B dimension {}",
            basis.dim_b, db
        )));
    }
    let eye = ComplexMatrix::identity(da);
    let mut out = ComplexMatrix::zeros(da * db, da * db);
    for proj in &basis.projectors {
        let ext = eye.tensor(proj);
        out = out.add(&ext.multiply(rho.matrix())?.multiply(&ext)?);
    }
    DensityMatrix::new(out)
}

/// One-way quantum deficit Δ←: min over measurement bases of
/// S(ρᴰ) − S(ρ_AB). Zero exactly on classical-quantum states.
pub fn one_way_deficit(
    rho: &DensityMatrix,
    dims: (usize, usize),
    settings: &OptimizationSettings,
) -> Result<CorrelationResult> {
    minimize_measure(rho, dims, settings, Measure::Deficit)
}

/// Quantum discord δ←: min over measurement bases of
/// S_{A|B}(ρᴰ) − S_{A|B}(ρ_AB). Never exceeds the deficit (up to
/// optimizer tolerance) and vanishes on the same states.
pub fn quantum_discord(
    rho: &DensityMatrix,
    dims: (usize, usize),
    settings: &OptimizationSettings,
) -> Result<CorrelationResult> {
    minimize_measure(rho, dims, settings, Measure::Discord)
}

#[derive(Clone, Copy)]
enum Measure {
    Deficit,
    Discord,
}

fn check_dims(rho: &DensityMatrix, dims: (usize, usize)) -> Result<(usize, usize)> {
    let (da, db) = dims;
    if da == 0 || db < 2 || da * db != rho.dim() {
        return Err(QcorrError::DimensionMismatch(format!(
            "dims ({da}, {db}) do not factor state dimension {} (need d_b ≥ 2)",
            rho.dim()
        )));
    }
    Ok((da, db))
}

fn minimize_measure(
    rho: &DensityMatrix,
    dims: (usize, usize),
    settings: &OptimizationSettings,
    measure: Measure,
) -> Result<CorrelationResult> {
    settings.validate()?;
    let (da, db) = check_dims(rho, dims)?;
    let s_ab = rho.von_neumann_entropy();
    let s_b = match measure {
        Measure::Discord => rho.reduced(dims, Subsystem::B)?.von_neumann_entropy(),
        Measure::Deficit => 0.0,
    };

    let objective = |params: &[f64]| {
        measured_entropies(rho.matrix(), da, db, params, matches!(measure, Measure::Discord))
            .map(|(s_d, s_d_b)| match measure {
                Measure::Deficit => s_d - s_ab,
                Measure::Discord => (s_d - s_d_b) - (s_ab - s_b),
            })
            .unwrap_or(f64::INFINITY)
    };

    let ranges = angle_ranges(db);
    let points = settings.grid_for_dim(db);
    let Optimum {
        params,
        value,
        converged,
    } = minimize_grid_refine(objective, &ranges, points, settings);

    Ok(CorrelationResult {
        value,
        optimal_basis: MeasurementBasis::from_parameters(db, &params)?,
        converged,
    })
}

/// Angle box for the basis parametrization: θ ∈ [0, π), φ ∈ [0, 2π) per
/// plane. Projector relabeling makes the redundancy harmless.
pub(crate) fn angle_ranges(db: usize) -> Vec<(f64, f64)> {
    let planes = db * (db - 1) / 2;
    let mut ranges = Vec::with_capacity(2 * planes);
    for _ in 0..planes {
        ranges.push((0.0, std::f64::consts::PI));
        ranges.push((0.0, 2.0 * std::f64::consts::PI));
    }
    ranges
}

/// S(ρᴰ) and S(ρᴰ_B) for the basis generated by `params`, evaluated from
/// the measured-basis blocks. `need_marginal` skips the Shannon term for
/// the deficit path.
fn measured_entropies(
    rho: &ComplexMatrix,
    da: usize,
    db: usize,
    params: &[f64],
    need_marginal: bool,
) -> Result<(f64, f64)> {
    let u = flag_unitary(db, params)?;
    let mut pooled: Vec<f64> = Vec::with_capacity(da * db);
    let mut weights: Vec<f64> = Vec::with_capacity(db);
    for i in 0..db {
        let col = u.column(i);
        let block = ComplexMatrix::from_fn(da, da, |a, a2| {
            let mut acc = C64::ZERO;
            for b in 0..db {
                let coeff = col[b].conj();
                if coeff == C64::ZERO {
                    continue;
                }
                for (b2, &cb2) in col.iter().enumerate() {
                    acc += coeff * cb2 * rho.get(a * db + b, a2 * db + b2);
                }
            }
            acc
        });
        weights.push(block.trace().re);
        pooled.extend(block.hermitian_eigenvalues()?);
    }
    let s_d = entropy_of_spectrum(&pooled);
    let s_d_b = if need_marginal {
        entropy_of_spectrum(&weights)
    } else {
        0.0
    };
    Ok((s_d, s_d_b))
}

/// Commutator criterion for an explicitly separable state
/// Σᵢ pᵢ ξᴬᵢ ⊗ ξᴮᵢ: discord vanishes iff all B factors commute
/// pairwise. Returns the verdict and the largest pairwise commutator
/// norm.
pub fn zero_discord_separable_check(
    terms: &[(f64, DensityMatrix, DensityMatrix)],
) -> (bool, f64) {
    let mut worst: f64 = 0.0;
    for i in 0..terms.len() {
        for j in (i + 1)..terms.len() {
            let norm = terms[i]
                .2
                .matrix()
                .commutator(terms[j].2.matrix())
                .expect("equal B dimensions")
                .frobenius_norm();
            worst = worst.max(norm);
        }
    }
    (worst < tol::SEPARABLE_COMMUTATOR, worst)
}
