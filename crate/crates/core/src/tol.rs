// Copyright 2026 Qcorr Contributors
// SPDX-License-Identifier: Apache-2.0

//! Every numerical tolerance used anywhere in the crate, in one place.
//!
//! The structural default is 1e-10; classification thresholds sit two
//! orders above eigensolver noise so that physically distinct channels
//! are never confused with roundoff.

/// Default structural tolerance: hermiticity, unit trace, orthonormality,
/// eigendecomposition reconstruction.
pub const STRUCTURAL: f64 = 1e-10;

/// Most negative eigenvalue admitted in a density matrix; anything in
/// `[PSD_FLOOR, 0)` is treated as numerical PSD drift and clamped to zero
/// before entropies are taken.
pub const PSD_FLOOR: f64 = -1e-9;

/// Eigenvalues below this contribute nothing to von Neumann entropy.
pub const ENTROPY_EIGENVALUE_CUTOFF: f64 = 1e-12;

/// Kraus completeness: ‖Σᵢ E⁽ⁱ⁾†E⁽ⁱ⁾ − I‖_F must stay below this.
pub const KRAUS_COMPLETENESS: f64 = 1e-9;

/// Unitality threshold on ‖Σᵢ E⁽ⁱ⁾E⁽ⁱ⁾† − I‖_F separating mixing
/// channels from the rest.
pub const UNITAL_DEFECT: f64 = 1e-8;

/// Maximum pairwise commutator norm of probe outputs for a channel to
/// count as completely decohering.
pub const DECOHERENCE_DEFECT: f64 = 1e-8;

/// Commutator threshold in the zero-discord separable-state criterion.
pub const SEPARABLE_COMMUTATOR: f64 = 1e-8;

/// Cyclic Jacobi sweep termination: off-diagonal Frobenius norm relative
/// to max(1, ‖A‖_F).
pub const JACOBI_OFFDIAG: f64 = 1e-12;

/// ‖L(I)‖_F threshold for a Lindblad generator to preserve classicality.
pub const CLASSICALITY: f64 = 1e-9;

/// PSD tolerance on the dissipative block of a Lindblad coefficient matrix.
pub const GAMMA_PSD: f64 = -1e-9;

/// How far below zero an optimized correlation measure may undershoot.
pub const MEASURE_FLOOR: f64 = -1e-7;

/// Two refined restarts must agree this closely for `converged = true`.
pub const RESTART_AGREEMENT: f64 = 1e-6;

/// Agreement required between the direct singlet-fraction optimization
/// and the route through the back-propagated projector.
pub const DUAL_ROUTE: f64 = 1e-8;

/// Minimum basis-commutator norm for a witness search to proceed.
pub const WITNESS_COMMUTATOR: f64 = 1e-8;

/// Minimum discord/deficit a constructed witness state must achieve.
pub const WITNESS_MEASURE: f64 = 1e-6;

/// Invariant-violation window accepted (and repaired) on evolved states;
/// larger violations are reported as errors.
pub const EVOLVED_STATE: f64 = 1e-7;
