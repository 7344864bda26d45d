// Copyright 2026 Qcorr Contributors
// SPDX-License-Identifier: Apache-2.0

//! Numerical toolkit answering one question: can a given local quantum
//! channel create quantum correlation (discord, one-way deficit) from a
//! classically correlated state?
//!
//! The crate provides Kraus channels with structural tests (unitality,
//! complete decoherence), correlation measures minimized over von
//! Neumann measurements, qubit Lindblad dynamics with a classicality
//! criterion on the coefficient matrix, singlet-fraction monotonicity
//! under unital noise, and a classifier that produces an explicit
//! witness state whenever a qubit channel can create correlation.
//!
//! Everything is deterministic: samplers take explicit seeds, and the
//! measurement optimizer is a fixed grid followed by simplex refinement.

pub mod channels;
pub mod correlation;
pub mod dynamics;
pub mod error;
pub mod json;
pub mod linalg;
pub mod optim;
pub mod states;
pub mod teleportation;
pub mod theorem;
pub mod tol;

pub use channels::{
    random_channel, random_unital_channel, ChannelClass, DecoherenceCheck, KrausChannel,
    MixingCheck, StructuralClassification,
};
pub use correlation::{
    one_way_deficit, post_measurement_state, quantum_discord, zero_discord_separable_check,
    CorrelationResult, MeasurementBasis,
};
pub use dynamics::{ClassicalityCheck, LindbladGenerator, Superoperator, TrajectoryPoint};
pub use error::{QcorrError, Result};
pub use linalg::{c64, ComplexMatrix, HermitianEigen, Subsystem, C64};
pub use optim::OptimizationSettings;
pub use states::{
    random_cq_ensemble, random_density_matrix, random_pure_ket, random_unitary,
    ClassicalQuantumEnsemble, CqTerm, DensityMatrix,
};
pub use teleportation::{
    max_singlet_fraction, mes_from_unitary, mes_ket, msf_after_channel, xi_operator,
    MsfComparison, SingletFractionResult,
};
pub use theorem::{
    classify_qubit_channel, find_witness, qutrit_counterexample, verify_theorem1,
    ClassificationReport, QutritCounterexampleReport, TheoremCheckReport, WitnessReport,
};
