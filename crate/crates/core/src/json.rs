// Copyright 2026 Qcorr Contributors
// SPDX-License-Identifier: Apache-2.0

//! JSON schemas for states and channels, and a deterministic emitter.
//!
//! State schema: `{"dim": n, "mat": [[[re, im], …], …]}` row-major.
//! Channel schema: `{"dim": n, "kraus": [mat, …]}` where each `mat` uses
//! the state matrix layout. Parsing goes through serde so malformed
//! documents fail with line-anchored messages; emission goes through a
//! small ordered value type that renders every float with 17 significant
//! digits, so reports round-trip exactly and identical runs are
//! byte-identical.

use serde::Deserialize;

use crate::error::{QcorrError, Result};
use crate::linalg::{c64, ComplexMatrix, C64};
use crate::states::{ClassicalQuantumEnsemble, DensityMatrix};
use crate::channels::KrausChannel;

#[derive(Debug, Deserialize)]
struct StateJson {
    dim: usize,
    mat: Vec<Vec<[f64; 2]>>,
}

#[derive(Debug, Deserialize)]
struct ChannelJson {
    dim: usize,
    kraus: Vec<Vec<Vec<[f64; 2]>>>,
}

fn rows_to_matrix(dim: usize, rows: &[Vec<[f64; 2]>]) -> Result<ComplexMatrix> {
    if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
        return Err(QcorrError::Schema(format!(
            "matrix must be {dim}x{dim} to match \"dim\""
        )));
    }
    let mut data = Vec::with_capacity(dim * dim);
    for row in rows {
        for &[re, im] in row {
            data.push(c64(re, im));
        }
    }
    ComplexMatrix::new(dim, dim, data)
}

fn schema_err(e: serde_json::Error) -> QcorrError {
    QcorrError::Schema(e.to_string())
}

/// Parse and validate a density matrix document.
pub fn parse_state(text: &str) -> Result<DensityMatrix> {
    let raw: StateJson = serde_json::from_str(text).map_err(schema_err)?;
    DensityMatrix::new(rows_to_matrix(raw.dim, &raw.mat)?)
}

/// Parse and validate a Kraus channel document.
pub fn parse_channel(text: &str) -> Result<KrausChannel> {
    let raw: ChannelJson = serde_json::from_str(text).map_err(schema_err)?;
    let kraus = raw
        .kraus
        .iter()
        .map(|rows| rows_to_matrix(raw.dim, rows))
        .collect::<Result<Vec<_>>>()?;
    KrausChannel::new(raw.dim, kraus)
}

/// Parse a bare matrix document (`{"dim": n, "mat": …}`) without state
/// validation; used for Hamiltonians and coefficient matrices.
pub fn parse_matrix(text: &str) -> Result<ComplexMatrix> {
    let raw: StateJson = serde_json::from_str(text).map_err(schema_err)?;
    rows_to_matrix(raw.dim, &raw.mat)
}

/// Order-preserving JSON value with fixed float formatting.
#[derive(Debug, Clone)]
pub enum JsonValue {
    Null,
    Bool(bool),
    Int(i64),
    Float(f64),
    Str(String),
    Array(Vec<JsonValue>),
    Object(Vec<(String, JsonValue)>),
}

impl JsonValue {
    pub fn object(fields: Vec<(&str, JsonValue)>) -> Self {
        JsonValue::Object(fields.into_iter().map(|(k, v)| (k.to_string(), v)).collect())
    }

    /// Render with two-space indentation and a trailing newline.
    pub fn render(&self) -> String {
        let mut out = String::new();
        self.write(&mut out, 0);
        out.push('\n');
        out
    }

    fn write(&self, out: &mut String, indent: usize) {
        match self {
            JsonValue::Null => out.push_str("null"),
            JsonValue::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
            JsonValue::Int(i) => out.push_str(&i.to_string()),
            JsonValue::Float(x) => out.push_str(&format_float(*x)),
            JsonValue::Str(s) => {
                out.push('"');
                for ch in s.chars() {
                    match ch {
                        '"' => out.push_str("\\\""),
                        '\\' => out.push_str("\\\\"),
                        '\n' => out.push_str("\\n"),
                        c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
                        c => out.push(c),
                    }
                }
                out.push('"');
            }
            JsonValue::Array(items) => {
                if items.is_empty() {
                    out.push_str("[]");
                    return;
                }
                out.push('[');
                for (i, item) in items.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    out.push('\n');
                    out.push_str(&"  ".repeat(indent + 1));
                    item.write(out, indent + 1);
                }
                out.push('\n');
                out.push_str(&"  ".repeat(indent));
                out.push(']');
            }
            JsonValue::Object(fields) => {
                if fields.is_empty() {
                    out.push_str("{}");
                    return;
                }
                out.push('{');
                for (i, (key, value)) in fields.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    out.push('\n');
                    out.push_str(&"  ".repeat(indent + 1));
                    out.push('"');
                    out.push_str(key);
                    out.push_str("\": ");
                    value.write(out, indent + 1);
                }
                out.push('\n');
                out.push_str(&"  ".repeat(indent));
                out.push('}');
            }
        }
    }
}

/// 17 significant digits; every f64 round-trips exactly.
pub fn format_float(x: f64) -> String {
    format!("{x:.16e}")
}

/// `[[ [re, im], … ], …]` rows of a matrix.
pub fn matrix_value(m: &ComplexMatrix) -> JsonValue {
    JsonValue::Array(
        (0..m.rows())
            .map(|i| {
                JsonValue::Array(
                    (0..m.cols())
                        .map(|j| {
                            let z = m.get(i, j);
                            JsonValue::Array(vec![JsonValue::Float(z.re), JsonValue::Float(z.im)])
                        })
                        .collect(),
                )
            })
            .collect(),
    )
}

pub fn ket_value(ket: &[C64]) -> JsonValue {
    JsonValue::Array(
        ket.iter()
            .map(|z| JsonValue::Array(vec![JsonValue::Float(z.re), JsonValue::Float(z.im)]))
            .collect(),
    )
}

/// Full state document matching the parse schema.
pub fn state_value(rho: &DensityMatrix) -> JsonValue {
    JsonValue::object(vec![
        ("dim", JsonValue::Int(rho.dim() as i64)),
        ("mat", matrix_value(rho.matrix())),
    ])
}

/// Full channel document matching the parse schema.
pub fn channel_value(ch: &KrausChannel) -> JsonValue {
    JsonValue::object(vec![
        ("dim", JsonValue::Int(ch.dim() as i64)),
        (
            "kraus",
            JsonValue::Array(ch.kraus_operators().iter().map(matrix_value).collect()),
        ),
    ])
}

pub fn ensemble_value(ens: &ClassicalQuantumEnsemble) -> JsonValue {
    let (da, db) = ens.dims();
    JsonValue::object(vec![
        (
            "dims",
            JsonValue::Array(vec![JsonValue::Int(da as i64), JsonValue::Int(db as i64)]),
        ),
        (
            "terms",
            JsonValue::Array(
                ens.terms()
                    .iter()
                    .map(|t| {
                        JsonValue::object(vec![
                            ("weight", JsonValue::Float(t.weight)),
                            ("block", matrix_value(t.block.matrix())),
                            ("ket", ket_value(&t.ket)),
                        ])
                    })
                    .collect(),
            ),
        ),
    ])
}
