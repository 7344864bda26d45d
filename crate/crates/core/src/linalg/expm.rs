// Copyright 2026 Qcorr Contributors
// SPDX-License-Identifier: Apache-2.0

//! Matrix exponential by scaling and squaring.
//!
//! The argument is scaled down to Frobenius norm ≤ 1/2, expanded as a
//! Taylor series to machine precision, and squared back up. For the
//! norms this crate encounters (‖m‖ ≲ 10, superoperators included) the
//! result is accurate to well below 1e-10.

use super::ComplexMatrix;
use crate::error::{QcorrError, Result};

const TAYLOR_MAX_TERMS: usize = 80;

impl ComplexMatrix {
    /// exp(m) for square m.
    pub fn expm(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(QcorrError::DimensionMismatch(format!(
                "matrix exponential of {}x{}",
                self.rows(),
                self.cols()
            )));
        }
        let norm = self.frobenius_norm();
        let squarings = if norm <= 0.5 {
            0
        } else {
            (norm / 0.5).log2().ceil() as u32
        };
        let scaled = self.scale_re(0.5f64.powi(squarings as i32));

        // exp(scaled) = Σ scaledᵏ/k!
        let n = self.rows();
        let mut sum = ComplexMatrix::identity(n);
        let mut term = ComplexMatrix::identity(n);
        let mut converged = false;
        for k in 1..=TAYLOR_MAX_TERMS {
            term = term.multiply(&scaled)?.scale_re(1.0 / k as f64);
            sum = sum.add(&term);
            if term.frobenius_norm() <= f64::EPSILON * sum.frobenius_norm() {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(QcorrError::NoConvergence(
                "matrix exponential Taylor series".into(),
            ));
        }

        let mut result = sum;
        for _ in 0..squarings {
            result = result.multiply(&result)?;
        }
        Ok(result)
    }
}
