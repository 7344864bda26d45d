// Copyright 2026 Qcorr Contributors
// SPDX-License-Identifier: Apache-2.0

//! Independent oracles for the integration suites. These deliberately
//! avoid the production code paths they check: correlation measures are
//! evaluated by materializing the full post-measurement matrix on an
//! exhaustive grid (no simplex refinement), and the d = 2 singlet
//! fraction comes from the closed-form eigenproblem in the magic basis.

// Each test binary uses its own subset of the oracles.
#![allow(dead_code)]

use qcorr::linalg::{c64, ComplexMatrix, Subsystem, C64};
use qcorr::states::entropy_of_spectrum;
use qcorr::{DensityMatrix, MeasurementBasis};

/// Entropy of a raw Hermitian matrix (bits).
fn entropy(m: &ComplexMatrix) -> f64 {
    entropy_of_spectrum(&m.hermitian_eigenvalues().expect("Hermitian"))
}

/// Σᵢ (I⊗Πᵢ)ρ(I⊗Πᵢ) materialized through plain matrix products.
fn measured_matrix(
    rho: &ComplexMatrix,
    dims: (usize, usize),
    basis: &MeasurementBasis,
) -> ComplexMatrix {
    let (da, db) = dims;
    let eye = ComplexMatrix::identity(da);
    let mut out = ComplexMatrix::zeros(da * db, da * db);
    for proj in basis.projectors() {
        let ext = eye.tensor(proj);
        out = out.add(
            &ext.multiply(rho)
                .unwrap()
                .multiply(&ext)
                .unwrap(),
        );
    }
    out
}

/// Exhaustive-grid one-way deficit for two-qubit states: min over a
/// `points`×`points` (θ, φ) grid of S(ρᴰ) − S(ρ), no refinement.
pub fn deficit_grid_oracle(rho: &DensityMatrix, points: usize) -> f64 {
    use std::f64::consts::PI;
    let s_ab = rho.von_neumann_entropy();
    let mut best = f64::INFINITY;
    for i in 0..points {
        let theta = PI * i as f64 / points as f64;
        for j in 0..points {
            let phi = 2.0 * PI * j as f64 / points as f64;
            let basis = MeasurementBasis::from_parameters(2, &[theta, phi]).unwrap();
            let measured = measured_matrix(rho.matrix(), (2, 2), &basis);
            best = best.min(entropy(&measured) - s_ab);
        }
    }
    best
}

/// Exhaustive-grid quantum discord for two-qubit states.
pub fn discord_grid_oracle(rho: &DensityMatrix, points: usize) -> f64 {
    use std::f64::consts::PI;
    let s_ab = rho.von_neumann_entropy();
    let s_b = entropy(&rho.matrix().partial_trace((2, 2), Subsystem::B).unwrap());
    let mut best = f64::INFINITY;
    for i in 0..points {
        let theta = PI * i as f64 / points as f64;
        for j in 0..points {
            let phi = 2.0 * PI * j as f64 / points as f64;
            let basis = MeasurementBasis::from_parameters(2, &[theta, phi]).unwrap();
            let measured = measured_matrix(rho.matrix(), (2, 2), &basis);
            let s_d = entropy(&measured);
            let s_d_b = entropy(&measured.partial_trace((2, 2), Subsystem::B).unwrap());
            best = best.min((s_d - s_d_b) - (s_ab - s_b));
        }
    }
    best
}

/// Closed-form two-qubit singlet fraction: the largest eigenvalue of
/// the real part of ρ expressed in the magic basis, where maximally
/// entangled vectors are exactly the real unit combinations.
pub fn msf_magic_basis_oracle(rho: &DensityMatrix) -> f64 {
    let s = 1.0 / 2f64.sqrt();
    let i = c64(0.0, 1.0);
    let e: [[C64; 4]; 4] = [
        // (|00⟩ + |11⟩)/√2
        [c64(s, 0.0), C64::ZERO, C64::ZERO, c64(s, 0.0)],
        // i(|00⟩ − |11⟩)/√2
        [i * s, C64::ZERO, C64::ZERO, -i * s],
        // i(|01⟩ + |10⟩)/√2
        [C64::ZERO, i * s, i * s, C64::ZERO],
        // (|01⟩ − |10⟩)/√2
        [C64::ZERO, c64(s, 0.0), c64(-s, 0.0), C64::ZERO],
    ];
    let overlap = |u: &[C64; 4], v: &[C64; 4]| -> C64 {
        let mut acc = C64::ZERO;
        for (a, ua) in u.iter().enumerate() {
            for (b, vb) in v.iter().enumerate() {
                acc += ua.conj() * rho.matrix().get(a, b) * vb;
            }
        }
        acc
    };
    let real_part = ComplexMatrix::from_fn(4, 4, |k, l| c64(overlap(&e[k], &e[l]).re, 0.0));
    let sym = real_part.add(&real_part.transpose()).scale_re(0.5);
    *sym.hermitian_eigenvalues()
        .unwrap()
        .last()
        .expect("non-empty spectrum")
}
