// Copyright 2026 Qcorr Contributors
// SPDX-License-Identifier: Apache-2.0

//! Maximal singlet fraction F = max_Φ ⟨Φ|ρ|Φ⟩ over maximally entangled
//! |Φ⟩, the average teleportation fidelity f = (dF + 1)/(d + 1), and
//! the back-propagated operator Ξ that expresses F after local noise as
//! Tr(ρ·Ξ).
//!
//! Every maximally entangled vector can be written (I⊗U)|Φ₊⟩ with |Φ₊⟩
//! = Σᵢ|ii⟩/√d, so the search is an ascent over one parametrized local
//! unitary.

use crate::channels::KrausChannel;
use crate::error::{QcorrError, Result};
use crate::linalg::{parametrized_unitary, ComplexMatrix, Subsystem, C64};
use crate::optim::{minimize_grid_refine, minimize_sampled, OptimizationSettings, Optimum};
use crate::states::DensityMatrix;
use crate::tol;

/// Result of a singlet-fraction maximization.
#[derive(Debug, Clone)]
pub struct SingletFractionResult {
    /// F ∈ [1/d², 1].
    pub fraction: f64,
    /// f = (dF + 1)/(d + 1).
    pub avg_fidelity: f64,
    /// The maximizing maximally entangled vector.
    pub optimal_mes: Vec<C64>,
    pub converged: bool,
}

/// Singlet fractions before and after a channel on B, with the value
/// recomputed through Ξ as a consistency route.
#[derive(Debug, Clone)]
pub struct MsfComparison {
    pub before: SingletFractionResult,
    pub after: SingletFractionResult,
    /// max_Φ Tr(ρ·Ξ(Φ)) — must agree with `after.fraction`.
    pub xi_route_value: f64,
    pub dual_route_gap: f64,
}

/// |Φ₊⟩ = Σᵢ |ii⟩/√d.
pub fn mes_ket(d: usize) -> Vec<C64> {
    let norm = 1.0 / (d as f64).sqrt();
    let mut v = vec![C64::ZERO; d * d];
    for i in 0..d {
        v[i * d + i] = C64::from(norm);
    }
    v
}

/// (I ⊗ U)|Φ₊⟩; component (a, b) is U[b][a]/√d.
pub fn mes_from_unitary(u: &ComplexMatrix) -> Vec<C64> {
    let d = u.rows();
    let norm = 1.0 / (d as f64).sqrt();
    let mut v = vec![C64::ZERO; d * d];
    for a in 0..d {
        for b in 0..d {
            v[a * d + b] = u.get(b, a) * norm;
        }
    }
    v
}

fn overlap(rho: &ComplexMatrix, ket: &[C64]) -> f64 {
    let mut acc = C64::ZERO;
    for (i, ki) in ket.iter().enumerate() {
        for (j, kj) in ket.iter().enumerate() {
            acc += ki.conj() * rho.get(i, j) * kj;
        }
    }
    acc.re
}

fn check_square_pair(rho: &DensityMatrix, dims: (usize, usize)) -> Result<usize> {
    let (da, db) = dims;
    if da != db || da * db != rho.dim() {
        return Err(QcorrError::DimensionMismatch(format!(
            "singlet fraction needs equal local dimensions factoring {}, got ({da}, {db})",
            rho.dim()
        )));
    }
    Ok(da)
}

/// Maximize ⟨Φ|ρ|Φ⟩ over maximally entangled |Φ⟩ = (I⊗U)|Φ₊⟩ by
/// multistart ascent over the d²−1 unitary parameters.
pub fn max_singlet_fraction(
    rho: &DensityMatrix,
    dims: (usize, usize),
    settings: &OptimizationSettings,
) -> Result<SingletFractionResult> {
    settings.validate()?;
    let d = check_square_pair(rho, dims)?;
    let objective = |params: &[f64]| {
        let u = parametrized_unitary(d, params).expect("parameter count fixed by caller");
        -overlap(rho.matrix(), &mes_from_unitary(&u))
    };
    let opt = maximize_over_unitary(objective, d, settings);
    let u = parametrized_unitary(d, &opt.params)?;
    let fraction = -opt.value;
    Ok(SingletFractionResult {
        fraction,
        avg_fidelity: avg_fidelity(d, fraction),
        optimal_mes: mes_from_unitary(&u),
        converged: opt.converged,
    })
}

fn avg_fidelity(d: usize, fraction: f64) -> f64 {
    (d as f64 * fraction + 1.0) / (d as f64 + 1.0)
}

/// The unitary-parameter search: a full (coarse) grid is affordable for
/// qubits; higher dimensions fall back to seeded sampling.
fn maximize_over_unitary<F: FnMut(&[f64]) -> f64>(
    objective: F,
    d: usize,
    settings: &OptimizationSettings,
) -> Optimum {
    use std::f64::consts::PI;
    let n_params = d * d - 1;
    let mut ranges = Vec::with_capacity(n_params);
    for k in 0..d * (d - 1) {
        ranges.push(if k % 2 == 0 { (0.0, PI) } else { (0.0, 2.0 * PI) });
    }
    for _ in 0..d - 1 {
        ranges.push((0.0, 2.0 * PI));
    }
    if n_params <= 3 {
        let points = settings.grid_points_per_angle.clamp(4, 8);
        minimize_grid_refine(objective, &ranges, points, settings)
    } else {
        minimize_sampled(objective, &ranges, 4096, 0x004d_4553, settings)
    }
}

/// Ξ = Σᵢ (I⊗E⁽ⁱ⁾†)|Φ⟩⟨Φ|(I⊗E⁽ⁱ⁾). For a mixing channel both marginals
/// of Ξ equal I/d, which is what makes the singlet fraction monotone.
pub fn xi_operator(ch: &KrausChannel, mes: &[C64], d: usize) -> Result<ComplexMatrix> {
    if ch.dim() != d || mes.len() != d * d {
        return Err(QcorrError::DimensionMismatch(format!(
            "Ξ needs a dimension-{d} channel and a {}-component vector",
            d * d
        )));
    }
    let proj = ComplexMatrix::outer(mes, mes);
    let marginal_defect = |s: Subsystem| -> Result<f64> {
        let red = proj.partial_trace((d, d), s)?;
        Ok(red
            .sub(&ComplexMatrix::identity(d).scale_re(1.0 / d as f64))
            .frobenius_norm())
    };
    if marginal_defect(Subsystem::A)? > tol::UNITAL_DEFECT
        || marginal_defect(Subsystem::B)? > tol::UNITAL_DEFECT
    {
        return Err(QcorrError::InvalidParameter(
            "vector is not maximally entangled".into(),
        ));
    }
    let eye = ComplexMatrix::identity(d);
    let mut xi = ComplexMatrix::zeros(d * d, d * d);
    for e in ch.kraus_operators() {
        let ext = eye.tensor(&e.dagger());
        xi = xi.add(&ext.multiply(&proj)?.multiply(&ext.dagger())?);
    }
    Ok(xi)
}

/// Singlet fraction before and after I⊗Λ, with the after-value also
/// obtained as max_Φ Tr(ρ·Ξ(Φ)). The two routes are algebraically equal;
/// their gap is reported as an implementation consistency check.
pub fn msf_after_channel(
    rho: &DensityMatrix,
    ch: &KrausChannel,
    dims: (usize, usize),
    settings: &OptimizationSettings,
) -> Result<MsfComparison> {
    settings.validate()?;
    let d = check_square_pair(rho, dims)?;
    if ch.dim() != d {
        return Err(QcorrError::DimensionMismatch(format!(
            "channel dimension {} does not match local dimension {d}",
            ch.dim()
        )));
    }
    let before = max_singlet_fraction(rho, dims, settings)?;
    let after_state = ch.extend_on_b(d).apply(rho)?;
    let after = max_singlet_fraction(&after_state, dims, settings)?;

    // Ξ route: Tr(ρ·Ξ(Φ)) = Σᵢ ⟨vᵢ|ρ|vᵢ⟩ with vᵢ = (I⊗E⁽ⁱ⁾†)|Φ⟩.
    let eye = ComplexMatrix::identity(d);
    let lifted: Vec<ComplexMatrix> = ch
        .kraus_operators()
        .iter()
        .map(|e| eye.tensor(&e.dagger()))
        .collect();
    let xi_objective = |params: &[f64]| {
        let u = parametrized_unitary(d, params).expect("parameter count fixed by caller");
        let mes = mes_from_unitary(&u);
        let total: f64 = lifted
            .iter()
            .map(|ext| {
                let v = ext.mul_vec(&mes).expect("dims fixed");
                overlap(rho.matrix(), &v)
            })
            .sum();
        -total
    };
    let xi_opt = maximize_over_unitary(xi_objective, d, settings);
    let xi_route_value = -xi_opt.value;
    Ok(MsfComparison {
        dual_route_gap: (after.fraction - xi_route_value).abs(),
        before,
        after,
        xi_route_value,
    })
}
