// Copyright 2026 Qcorr Contributors
// SPDX-License-Identifier: Apache-2.0

//! Dense complex linear algebra for small dimensions (d ≤ ~16).
//!
//! Everything here is a pure function on immutable inputs: tensor
//! products, partial traces, commutators, Hermitian eigendecomposition
//! (cyclic Jacobi) and the matrix exponential (scaling and squaring).
//! Dimensions in this crate are tiny, so storage is dense row-major and
//! no attempt is made at blocking or sparsity.

mod eigen;
mod expm;

pub use eigen::HermitianEigen;

use num_complex::Complex64;

use crate::error::{QcorrError, Result};
use crate::tol;

/// Complex scalar used throughout.
pub type C64 = Complex64;

/// Shorthand for a complex number.
#[inline]
pub fn c64(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Dense complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

/// Which tensor factor of a bipartite system an operation refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    A,
    B,
}

impl ComplexMatrix {
    /// Build a matrix from row-major entries, rejecting NaN/Inf.
    pub fn new(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self> {
        if rows == 0 || cols == 0 || data.len() != rows * cols {
            return Err(QcorrError::DimensionMismatch(format!(
                "{}x{} matrix needs {} entries, got {}",
                rows,
                cols,
                rows * cols,
                data.len()
            )));
        }
        for (k, z) in data.iter().enumerate() {
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(QcorrError::NonFinite {
                    row: k / cols,
                    col: k % cols,
                });
            }
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![C64::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, C64::ONE);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Diagonal matrix with the given real entries.
    pub fn from_real_diag(diag: &[f64]) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(n, n);
        for (i, &d) in diag.iter().enumerate() {
            m.set(i, i, c64(d, 0.0));
        }
        m
    }

    /// Outer product |u⟩⟨v|.
    pub fn outer(u: &[C64], v: &[C64]) -> Self {
        Self::from_fn(u.len(), v.len(), |i, j| u[i] * v[j].conj())
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: C64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[C64] {
        &self.data
    }

    /// Column `j` as a vector.
    pub fn column(&self, j: usize) -> Vec<C64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    /// Matrix product, checked. Inner dimensions must agree.
    pub fn multiply(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(QcorrError::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == C64::ZERO {
                    continue;
                }
                for j in 0..rhs.cols {
                    out.data[i * rhs.cols + j] += a * rhs.get(k, j);
                }
            }
        }
        Ok(out)
    }

    /// Matrix-vector product.
    pub fn mul_vec(&self, v: &[C64]) -> Result<Vec<C64>> {
        if self.cols != v.len() {
            return Err(QcorrError::DimensionMismatch(format!(
                "cannot apply {}x{} to vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) * v[j]).sum())
            .collect())
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, s: C64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * s).collect(),
        }
    }

    pub fn scale_re(&self, s: f64) -> Self {
        self.scale(c64(s, 0.0))
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn conj(&self) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z.conj()).collect(),
        }
    }

    pub fn trace(&self) -> C64 {
        debug_assert!(self.is_square());
        (0..self.rows).map(|i| self.get(i, i)).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Kronecker product. `(a ⊗ b)[(i·rb + k), (j·cb + l)] = a[i,j]·b[k,l]`.
    pub fn tensor(&self, b: &Self) -> Self {
        let (rb, cb) = (b.rows, b.cols);
        Self::from_fn(self.rows * rb, self.cols * cb, |r, c| {
            self.get(r / rb, c / cb) * b.get(r % rb, c % cb)
        })
    }

    /// Commutator `ab − ba`, checked.
    pub fn commutator(&self, b: &Self) -> Result<Self> {
        if !self.is_square() || self.rows != b.rows || b.rows != b.cols {
            return Err(QcorrError::DimensionMismatch(format!(
                "commutator needs equal square dims, got {}x{} and {}x{}",
                self.rows, self.cols, b.rows, b.cols
            )));
        }
        Ok(self.multiply(b)?.sub(&b.multiply(self)?))
    }

    /// Reduced matrix of a bipartite operator with subsystem dimensions
    /// `(d_a, d_b)`; index convention `(a, b) ↦ a·d_b + b`.
    pub fn partial_trace(&self, dims: (usize, usize), keep: Subsystem) -> Result<Self> {
        let (da, db) = dims;
        if !self.is_square() || self.rows != da * db {
            return Err(QcorrError::DimensionMismatch(format!(
                "partial trace of {}x{} with dims ({}, {})",
                self.rows, self.cols, da, db
            )));
        }
        Ok(match keep {
            Subsystem::A => Self::from_fn(da, da, |a, a2| {
                (0..db).map(|b| self.get(a * db + b, a2 * db + b)).sum()
            }),
            Subsystem::B => Self::from_fn(db, db, |b, b2| {
                (0..da).map(|a| self.get(a * db + b, a * db + b2)).sum()
            }),
        })
    }

    /// Hermiticity defect ‖m − m†‖_F.
    pub fn hermiticity_defect(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        self.sub(&self.dagger()).frobenius_norm()
    }

    pub fn is_hermitian_within(&self, tol: f64) -> bool {
        self.hermiticity_defect() <= tol
    }

    /// ‖m†m − I‖_F.
    pub fn unitarity_defect(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        self.dagger()
            .multiply(self)
            .expect("square")
            .sub(&Self::identity(self.rows))
            .frobenius_norm()
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.sub(other).max_abs() <= tol
    }
}

impl std::ops::Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.multiply(rhs).expect("dimension mismatch in `*`")
    }
}

impl std::ops::Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.add(rhs)
    }
}

impl std::ops::Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.sub(rhs)
    }
}

/// σx.
pub fn pauli_x() -> ComplexMatrix {
    ComplexMatrix::new(2, 2, vec![C64::ZERO, C64::ONE, C64::ONE, C64::ZERO]).unwrap()
}

/// σy.
pub fn pauli_y() -> ComplexMatrix {
    ComplexMatrix::new(
        2,
        2,
        vec![C64::ZERO, c64(0.0, -1.0), c64(0.0, 1.0), C64::ZERO],
    )
    .unwrap()
}

/// σz.
pub fn pauli_z() -> ComplexMatrix {
    ComplexMatrix::new(
        2,
        2,
        vec![C64::ONE, C64::ZERO, C64::ZERO, c64(-1.0, 0.0)],
    )
    .unwrap()
}

/// Hermitian operator basis for dimension `d`: the identity followed by
/// the generalized Gell-Mann set (symmetric, antisymmetric, diagonal).
/// For d = 2 this is {I, σx, σy, σz}. The basis spans all Hermitian d×d
/// matrices, so a linear map is pinned down by its action on it.
pub fn hermitian_operator_basis(d: usize) -> Vec<ComplexMatrix> {
    let mut ops = vec![ComplexMatrix::identity(d)];
    // Symmetric and antisymmetric off-diagonal generators.
    for j in 0..d {
        for k in (j + 1)..d {
            let mut sym = ComplexMatrix::zeros(d, d);
            sym.set(j, k, C64::ONE);
            sym.set(k, j, C64::ONE);
            ops.push(sym);
            let mut asym = ComplexMatrix::zeros(d, d);
            asym.set(j, k, c64(0.0, -1.0));
            asym.set(k, j, c64(0.0, 1.0));
            ops.push(asym);
        }
    }
    // Diagonal generators diag(1, …, 1, −l, 0, …)/norm.
    for l in 1..d {
        let norm = (2.0 / (l as f64 * (l + 1) as f64)).sqrt();
        let mut diag = ComplexMatrix::zeros(d, d);
        for i in 0..l {
            diag.set(i, i, c64(norm, 0.0));
        }
        diag.set(l, l, c64(-(l as f64) * norm, 0.0));
        ops.push(diag);
    }
    ops
}

/// Two-level rotation acting in the (p, q) plane with half-angle
/// convention: the (p, q) block is
/// `[[cos(θ/2), −sin(θ/2)e^{−iφ}], [sin(θ/2)e^{iφ}, cos(θ/2)]]`.
pub fn givens_rotation(d: usize, p: usize, q: usize, theta: f64, phi: f64) -> ComplexMatrix {
    debug_assert!(p < q && q < d);
    let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
    let phase = C64::from_polar(1.0, phi);
    let mut g = ComplexMatrix::identity(d);
    g.set(p, p, c64(c, 0.0));
    g.set(p, q, -phase.conj() * s);
    g.set(q, p, phase * s);
    g.set(q, q, c64(c, 0.0));
    g
}

/// Unitary built from d(d−1) angles: one (θ, φ) pair per plane (p < q),
/// multiplied in plane order. Spans all orthonormal bases up to column
/// phases and relabeling, which is what measurement optimization needs.
pub fn flag_unitary(d: usize, params: &[f64]) -> Result<ComplexMatrix> {
    let expected = d * (d - 1);
    if params.len() != expected {
        return Err(QcorrError::InvalidParameter(format!(
            "flag unitary in dimension {} takes {} angles, got {}",
            d,
            expected,
            params.len()
        )));
    }
    let mut u = ComplexMatrix::identity(d);
    let mut k = 0;
    for p in 0..d {
        for q in (p + 1)..d {
            let g = givens_rotation(d, p, q, params[k], params[k + 1]);
            u = u.multiply(&g)?;
            k += 2;
        }
    }
    Ok(u)
}

/// Unitary built from d²−1 angles: a flag unitary followed by d−1
/// relative column phases. Covers U(d) up to global phase.
pub fn parametrized_unitary(d: usize, params: &[f64]) -> Result<ComplexMatrix> {
    let expected = d * d - 1;
    if params.len() != expected {
        return Err(QcorrError::InvalidParameter(format!(
            "parametrized unitary in dimension {} takes {} angles, got {}",
            d,
            expected,
            params.len()
        )));
    }
    let (flag, phases) = params.split_at(d * (d - 1));
    let mut u = flag_unitary(d, flag)?;
    for (j, &chi) in phases.iter().enumerate() {
        let ph = C64::from_polar(1.0, chi);
        for i in 0..d {
            let v = u.get(i, j + 1);
            u.set(i, j + 1, v * ph);
        }
    }
    Ok(u)
}

/// Checks the basic Hermiticity contract shared by eigendecomposition
/// callers; exact symmetrization is then safe.
pub(crate) fn require_hermitian(m: &ComplexMatrix) -> Result<()> {
    if !m.is_square() {
        return Err(QcorrError::DimensionMismatch(format!(
            "Hermitian operation on {}x{} matrix",
            m.rows(),
            m.cols()
        )));
    }
    let defect = m.hermiticity_defect();
    if defect > tol::STRUCTURAL {
        return Err(QcorrError::NotHermitian { defect });
    }
    Ok(())
}
