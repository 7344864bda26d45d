// Copyright 2026 Qcorr Contributors
// SPDX-License-Identifier: Apache-2.0

//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum QcorrError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not Hermitian (defect {defect:.3e})")]
    NotHermitian { defect: f64 },

    #[error("non-finite matrix entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("invalid density matrix: {0}")]
    InvalidState(String),

    #[error("invalid ensemble: {0}")]
    InvalidEnsemble(String),

    #[error("invalid channel: {0}")]
    InvalidChannel(String),

    #[error("invalid generator: {0}")]
    InvalidGenerator(String),

    #[error("parameter out of range: {0}")]
    InvalidParameter(String),

    #[error("witness not found: {0}")]
    WitnessNotFound(String),

    #[error("numerical routine failed to converge: {0}")]
    NoConvergence(String),

    #[error("schema error: {0}")]
    Schema(String),
}

pub type Result<T> = std::result::Result<T, QcorrError>;
