// Copyright 2026 Qcorr Contributors
// SPDX-License-Identifier: Apache-2.0

//! Density matrices, entropy functionals, classical-quantum ensembles
//! and deterministic random-state sampling.
//!
//! Entropies are in bits (log base 2) throughout, so a maximally mixed
//! qubit carries exactly 1. Sampling functions take an explicit seed (or
//! generator) and are bit-reproducible.

use rand::{Rng, RngExt, SeedableRng};
use rand_chacha::ChaCha12Rng;

use crate::error::{QcorrError, Result};
use crate::linalg::{c64, ComplexMatrix, Subsystem, C64};
use crate::tol;

/// Hermitian, unit-trace, positive-semidefinite matrix: the state ρ.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    dim: usize,
    mat: ComplexMatrix,
}

impl DensityMatrix {
    /// Validate and wrap a matrix as a state. Hermiticity and unit trace
    /// are required within the structural tolerance; eigenvalues may dip
    /// to `tol::PSD_FLOOR` below zero to absorb roundoff.
    pub fn new(mat: ComplexMatrix) -> Result<Self> {
        Self::new_with_tol(mat, tol::STRUCTURAL, -tol::PSD_FLOOR)
    }

    /// Validation with caller-chosen tolerances (`herm_tol` for
    /// Hermiticity and trace, `psd_tol` for the eigenvalue floor).
    pub fn new_with_tol(mat: ComplexMatrix, herm_tol: f64, psd_tol: f64) -> Result<Self> {
        if !mat.is_square() {
            return Err(QcorrError::InvalidState(format!(
                "state matrix must be square, got {}x{}",
                mat.rows(),
                mat.cols()
            )));
        }
        let herm = mat.hermiticity_defect();
        if herm > herm_tol {
            return Err(QcorrError::InvalidState(format!(
                "not Hermitian (defect {herm:.3e})"
            )));
        }
        let tr = mat.trace();
        if (tr.re - 1.0).abs() > herm_tol || tr.im.abs() > herm_tol {
            return Err(QcorrError::InvalidState(format!(
                "trace is {tr}, expected 1"
            )));
        }
        // Work with the exactly Hermitian representative.
        let mat = mat.add(&mat.dagger()).scale_re(0.5);
        let min_eig = mat
            .hermitian_eigenvalues()?
            .first()
            .copied()
            .unwrap_or(0.0);
        if min_eig < -psd_tol {
            return Err(QcorrError::InvalidState(format!(
                "negative eigenvalue {min_eig:.3e}"
            )));
        }
        Ok(Self {
            dim: mat.rows(),
            mat,
        })
    }

    /// |ψ⟩⟨ψ| for a unit vector (checked within structural tolerance).
    pub fn pure(ket: &[C64]) -> Result<Self> {
        let norm2: f64 = ket.iter().map(|z| z.norm_sqr()).sum();
        if (norm2 - 1.0).abs() > tol::STRUCTURAL {
            return Err(QcorrError::InvalidState(format!(
                "ket norm² is {norm2}, expected 1"
            )));
        }
        Ok(Self {
            dim: ket.len(),
            mat: ComplexMatrix::outer(ket, ket),
        })
    }

    /// I/d.
    pub fn maximally_mixed(dim: usize) -> Self {
        Self {
            dim,
            mat: ComplexMatrix::identity(dim).scale_re(1.0 / dim as f64),
        }
    }

    /// Computational-basis diagonal state.
    pub fn from_probabilities(p: &[f64]) -> Result<Self> {
        let sum: f64 = p.iter().sum();
        if p.iter().any(|&x| x < 0.0) || (sum - 1.0).abs() > tol::STRUCTURAL {
            return Err(QcorrError::InvalidState(
                "probabilities must be nonnegative and sum to 1".into(),
            ));
        }
        Ok(Self {
            dim: p.len(),
            mat: ComplexMatrix::from_real_diag(p),
        })
    }

    pub(crate) fn from_matrix_unchecked(mat: ComplexMatrix) -> Self {
        Self {
            dim: mat.rows(),
            mat,
        }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    /// Tr ρ².
    pub fn purity(&self) -> f64 {
        self.mat
            .entries()
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
    }

    /// ρ_A ⊗ ρ_B.
    pub fn tensor(&self, other: &Self) -> Self {
        Self {
            dim: self.dim * other.dim,
            mat: self.mat.tensor(&other.mat),
        }
    }

    /// Reduced state of one subsystem.
    pub fn reduced(&self, dims: (usize, usize), keep: Subsystem) -> Result<Self> {
        let red = self.mat.partial_trace(dims, keep)?;
        Ok(Self::from_matrix_unchecked(red))
    }

    /// S(ρ) = −Σ λᵢ log₂ λᵢ in bits. Eigenvalues in `[PSD_FLOOR, 0)` are
    /// clamped to zero; anything below the entropy cutoff contributes 0.
    pub fn von_neumann_entropy(&self) -> f64 {
        let eigs = self
            .mat
            .hermitian_eigenvalues()
            .expect("states are Hermitian by construction");
        entropy_of_spectrum(&eigs)
    }

    /// S(A|B) = S(ρ_AB) − S(ρ_B) for a bipartite state.
    pub fn conditional_entropy(&self, dims: (usize, usize)) -> Result<f64> {
        if dims.0 * dims.1 != self.dim {
            return Err(QcorrError::DimensionMismatch(format!(
                "dims ({}, {}) do not factor dimension {}",
                dims.0, dims.1, self.dim
            )));
        }
        let s_ab = self.von_neumann_entropy();
        let s_b = self.reduced(dims, Subsystem::B)?.von_neumann_entropy();
        Ok(s_ab - s_b)
    }
}

/// Shannon entropy (bits) of a spectrum, with the clamping rules used for
/// states: small negatives are roundoff, near-zeros contribute nothing.
pub fn entropy_of_spectrum(eigs: &[f64]) -> f64 {
    let mut s = 0.0;
    for &lambda in eigs {
        if lambda < tol::ENTROPY_EIGENVALUE_CUTOFF {
            continue;
        }
        s -= lambda * lambda.log2();
    }
    s
}

/// One branch of a classical-quantum ensemble: with probability `weight`
/// subsystem A holds `block` while B points along the basis vector `ket`.
#[derive(Debug, Clone)]
pub struct CqTerm {
    pub weight: f64,
    pub block: DensityMatrix,
    pub ket: Vec<C64>,
}

/// Ensemble form of a half-classical bipartite state Σᵢ wᵢ ρᴬᵢ ⊗ |bᵢ⟩⟨bᵢ|
/// with {|bᵢ⟩} orthonormal on B. These are exactly the states with zero
/// discord and zero one-way deficit.
///
/// Branches are stored normalized with explicit weights; the assembled
/// state is identical to the unnormalized-block convention.
#[derive(Debug, Clone)]
pub struct ClassicalQuantumEnsemble {
    terms: Vec<CqTerm>,
    dims: (usize, usize),
}

impl ClassicalQuantumEnsemble {
    pub fn new(terms: Vec<CqTerm>, dims: (usize, usize)) -> Result<Self> {
        let (da, db) = dims;
        if terms.is_empty() || terms.len() > db {
            return Err(QcorrError::InvalidEnsemble(format!(
                "{} terms for B dimension {}",
                terms.len(),
                db
            )));
        }
        let mut weight_sum = 0.0;
        for t in &terms {
            if t.weight < 0.0 {
                return Err(QcorrError::InvalidEnsemble(format!(
                    "negative weight {}",
                    t.weight
                )));
            }
            weight_sum += t.weight;
            if t.block.dim() != da {
                return Err(QcorrError::InvalidEnsemble(format!(
                    "block dimension {} does not match A dimension {}",
                    t.block.dim(),
                    da
                )));
            }
            if t.ket.len() != db {
                return Err(QcorrError::InvalidEnsemble(format!(
                    "ket length {} does not match B dimension {}",
                    t.ket.len(),
                    db
                )));
            }
        }
        if (weight_sum - 1.0).abs() > tol::STRUCTURAL {
            return Err(QcorrError::InvalidEnsemble(format!(
                "weights sum to {weight_sum}, expected 1"
            )));
        }
        for i in 0..terms.len() {
            for j in 0..=i {
                let overlap: C64 = terms[i]
                    .ket
                    .iter()
                    .zip(&terms[j].ket)
                    .map(|(a, b)| a.conj() * b)
                    .sum();
                let expect = if i == j { 1.0 } else { 0.0 };
                if (overlap.norm() - expect).abs() > tol::STRUCTURAL {
                    return Err(QcorrError::InvalidEnsemble(format!(
                        "basis kets {j} and {i} are not orthonormal (⟨{j}|{i}⟩ = {overlap})"
                    )));
                }
            }
        }
        Ok(Self { terms, dims })
    }

    pub fn terms(&self) -> &[CqTerm] {
        &self.terms
    }

    pub fn dims(&self) -> (usize, usize) {
        self.dims
    }

    /// The assembled density matrix Σᵢ wᵢ ρᴬᵢ ⊗ |bᵢ⟩⟨bᵢ|.
    pub fn assemble(&self) -> DensityMatrix {
        let (da, db) = self.dims;
        let mut mat = ComplexMatrix::zeros(da * db, da * db);
        for t in &self.terms {
            let proj = ComplexMatrix::outer(&t.ket, &t.ket);
            mat = mat.add(&t.block.matrix().tensor(&proj).scale_re(t.weight));
        }
        DensityMatrix::from_matrix_unchecked(mat)
    }
}

/// Standard normal via Box-Muller, fed from the uniform stream so the
/// crate needs no distribution dependency.
fn standard_normal<R: Rng>(rng: &mut R) -> f64 {
    let u1: f64 = 1.0 - rng.random::<f64>(); // (0, 1]
    let u2: f64 = rng.random();
    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}

/// Complex standard Gaussian.
fn complex_normal<R: Rng>(rng: &mut R) -> C64 {
    c64(standard_normal(rng), standard_normal(rng))
}

/// Square matrix of independent complex standard Gaussians.
pub fn ginibre_matrix<R: Rng>(dim: usize, rng: &mut R) -> ComplexMatrix {
    ComplexMatrix::from_fn(dim, dim, |_, _| complex_normal(rng))
}

/// Hilbert-Schmidt random state: G·G†/Tr(G·G†) with Ginibre G.
pub fn random_density_matrix_with_rng<R: Rng>(dim: usize, rng: &mut R) -> DensityMatrix {
    let g = ginibre_matrix(dim, rng);
    let w = g.multiply(&g.dagger()).expect("square");
    let tr = w.trace().re;
    DensityMatrix::from_matrix_unchecked(w.scale_re(1.0 / tr))
}

/// Seeded Hilbert-Schmidt random state; deterministic given the seed.
pub fn random_density_matrix(dim: usize, seed: u64) -> DensityMatrix {
    random_density_matrix_with_rng(dim, &mut ChaCha12Rng::seed_from_u64(seed))
}

/// Haar-uniform pure state as a normalized complex Gaussian vector.
pub fn random_pure_ket_with_rng<R: Rng>(dim: usize, rng: &mut R) -> Vec<C64> {
    let v: Vec<C64> = (0..dim).map(|_| complex_normal(rng)).collect();
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    v.into_iter().map(|z| z / norm).collect()
}

/// Seeded Haar-uniform pure state.
pub fn random_pure_ket(dim: usize, seed: u64) -> Vec<C64> {
    random_pure_ket_with_rng(dim, &mut ChaCha12Rng::seed_from_u64(seed))
}

/// Haar-random unitary: modified Gram-Schmidt of a Ginibre matrix with
/// positive-real normalization (the QR convention that makes Q Haar).
pub fn random_unitary_with_rng<R: Rng>(dim: usize, rng: &mut R) -> ComplexMatrix {
    let g = ginibre_matrix(dim, rng);
    let mut cols: Vec<Vec<C64>> = (0..dim).map(|j| g.column(j)).collect();
    for j in 0..dim {
        // Two orthogonalization passes keep unitarity at machine level.
        for _ in 0..2 {
            for k in 0..j {
                let proj: C64 = cols[k]
                    .iter()
                    .zip(&cols[j])
                    .map(|(a, b)| a.conj() * b)
                    .sum();
                let projected: Vec<C64> = cols[k].iter().map(|&x| proj * x).collect();
                for (target, corr) in cols[j].iter_mut().zip(projected) {
                    *target -= corr;
                }
            }
        }
        let norm = cols[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for z in &mut cols[j] {
            *z /= norm;
        }
    }
    ComplexMatrix::from_fn(dim, dim, |i, j| cols[j][i])
}

/// Seeded Haar-random unitary.
pub fn random_unitary(dim: usize, seed: u64) -> ComplexMatrix {
    random_unitary_with_rng(dim, &mut ChaCha12Rng::seed_from_u64(seed))
}

/// Random classical-quantum ensemble: simplex-uniform weights, Hilbert-
/// Schmidt random A blocks, basis kets from a Haar-random unitary on B.
pub fn random_cq_ensemble_with_rng<R: Rng>(
    dims: (usize, usize),
    rng: &mut R,
) -> ClassicalQuantumEnsemble {
    let (da, db) = dims;
    let basis = random_unitary_with_rng(db, rng);
    let mut weights: Vec<f64> = (0..db)
        .map(|_| -(1.0f64 - rng.random::<f64>()).ln())
        .collect();
    let sum: f64 = weights.iter().sum();
    for w in &mut weights {
        *w /= sum;
    }
    let terms = (0..db)
        .map(|i| CqTerm {
            weight: weights[i],
            block: random_density_matrix_with_rng(da, rng),
            ket: basis.column(i),
        })
        .collect();
    ClassicalQuantumEnsemble::new(terms, dims).expect("construction satisfies the invariants")
}

/// Seeded random classical-quantum ensemble.
pub fn random_cq_ensemble(dims: (usize, usize), seed: u64) -> ClassicalQuantumEnsemble {
    random_cq_ensemble_with_rng(dims, &mut ChaCha12Rng::seed_from_u64(seed))
}
