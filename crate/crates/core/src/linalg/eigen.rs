// Copyright 2026 Qcorr Contributors
// SPDX-License-Identifier: Apache-2.0

//! Cyclic Jacobi eigendecomposition for complex Hermitian matrices.
//!
//! Each rotation phases the pivot entry real, then applies the classic
//! symmetric Jacobi rotation; sweeps repeat until the off-diagonal
//! Frobenius norm falls below `tol::JACOBI_OFFDIAG` (relative to the
//! matrix norm). Quadratic convergence makes a handful of sweeps enough
//! at the dimensions this crate works at.

use super::{c64, require_hermitian, ComplexMatrix, C64};
use crate::error::{QcorrError, Result};
use crate::tol;

const MAX_SWEEPS: usize = 64;

/// Eigendecomposition of a Hermitian matrix: `V · diag(λ) · V†`
/// reconstructs the input, eigenvalues ascending, eigenvectors as the
/// columns of a unitary `V`.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

impl ComplexMatrix {
    /// Full Hermitian eigendecomposition. Rejects matrices that are not
    /// Hermitian within the structural tolerance.
    pub fn hermitian_eigh(&self) -> Result<HermitianEigen> {
        require_hermitian(self)?;
        let (vals, vecs) = jacobi(self, true)?;
        Ok(HermitianEigen {
            eigenvalues: vals,
            eigenvectors: vecs.expect("vectors requested"),
        })
    }

    /// Eigenvalues only (ascending); skips accumulating the rotations.
    pub fn hermitian_eigenvalues(&self) -> Result<Vec<f64>> {
        require_hermitian(self)?;
        Ok(jacobi(self, false)?.0)
    }
}

impl HermitianEigen {
    /// `V · diag(λ) · V†`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let n = self.eigenvalues.len();
        let v = &self.eigenvectors;
        ComplexMatrix::from_fn(n, n, |i, j| {
            (0..n)
                .map(|k| v.get(i, k) * self.eigenvalues[k] * v.get(j, k).conj())
                .sum()
        })
    }
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let mut s = 0.0;
    for p in 0..n {
        for q in (p + 1)..n {
            s += a.get(p, q).norm_sqr();
        }
    }
    (2.0 * s).sqrt()
}

/// One complex Jacobi rotation zeroing a[p][q]. Updates `a` in place and
/// accumulates into `v` when present.
fn rotate(a: &mut ComplexMatrix, v: Option<&mut ComplexMatrix>, p: usize, q: usize) {
    let apq = a.get(p, q);
    let abs = apq.norm();
    if abs == 0.0 {
        return;
    }
    let phase = apq / abs; // e^{iφ}
    let app = a.get(p, p).re;
    let aqq = a.get(q, q).re;
    let theta = (aqq - app) / (2.0 * abs);
    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    let n = a.rows();
    // A ← A·R with R[p][p] = c, R[p][q] = s, R[q][p] = −s·e^{−iφ},
    // R[q][q] = c·e^{−iφ}.
    let pc = phase.conj();
    for k in 0..n {
        let akp = a.get(k, p);
        let akq = a.get(k, q);
        a.set(k, p, akp * c - akq * pc * s);
        a.set(k, q, akp * s + akq * pc * c);
    }
    // A ← R†·A.
    for k in 0..n {
        let apk = a.get(p, k);
        let aqk = a.get(q, k);
        a.set(p, k, apk * c - aqk * phase * s);
        a.set(q, k, apk * s + aqk * phase * c);
    }
    // Pin the analytically known entries to kill rounding drift.
    a.set(p, q, C64::ZERO);
    a.set(q, p, C64::ZERO);
    a.set(p, p, c64(app - t * abs, 0.0));
    a.set(q, q, c64(aqq + t * abs, 0.0));

    if let Some(v) = v {
        for k in 0..n {
            let vkp = v.get(k, p);
            let vkq = v.get(k, q);
            v.set(k, p, vkp * c - vkq * pc * s);
            v.set(k, q, vkp * s + vkq * pc * c);
        }
    }
}

fn jacobi(m: &ComplexMatrix, want_vectors: bool) -> Result<(Vec<f64>, Option<ComplexMatrix>)> {
    let n = m.rows();
    // Work on the exactly symmetrized copy.
    let mut a = m.add(&m.dagger()).scale_re(0.5);
    let mut v = want_vectors.then(|| ComplexMatrix::identity(n));

    let scale = a.frobenius_norm().max(1.0);
    let target = tol::JACOBI_OFFDIAG * scale;
    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&a) <= target {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                if a.get(p, q).norm() > target / (n as f64 * n as f64) {
                    rotate(&mut a, v.as_mut(), p, q);
                }
            }
        }
    }
    if !converged && off_diagonal_norm(&a) > target {
        return Err(QcorrError::NoConvergence(format!(
            "Jacobi sweeps exhausted at off-diagonal norm {:.3e}",
            off_diagonal_norm(&a)
        )));
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| a.get(i, i).re).collect();
    order.sort_by(|&i, &j| diag[i].total_cmp(&diag[j]));
    let eigenvalues: Vec<f64> = order.iter().map(|&i| diag[i]).collect();
    let eigenvectors = v.map(|v| {
        ComplexMatrix::from_fn(n, n, |i, j| v.get(i, order[j]))
    });
    Ok((eigenvalues, eigenvectors))
}
