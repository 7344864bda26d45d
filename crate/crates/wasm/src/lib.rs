// Copyright 2026 Qcorr Contributors
// SPDX-License-Identifier: Apache-2.0

//! Browser bindings for the interactive demo page. Three operations,
//! each returning a JSON string the page renders onto canvases:
//! classify a one-parameter qubit channel family (with the witness scan
//! as a heat map), trace discord created by a Lindblad generator over
//! time, and sweep the unital qutrit channel's mixing weight.
//!
//! All numerical work happens in the `qcorr` crate; this layer only
//! chooses demo inputs and serializes results, so the same functions
//! are unit-tested natively.

use wasm_bindgen::prelude::*;

mod demo;

#[wasm_bindgen]
pub fn classify_channel(kind: &str, p: f64, scan_points: u32) -> Result<String, JsValue> {
    demo::classify_channel(kind, p, scan_points as usize).map_err(to_js)
}

#[wasm_bindgen]
pub fn discord_trajectory(
    generator: &str,
    t_max: f64,
    points: u32,
    grid: u32,
) -> Result<String, JsValue> {
    demo::discord_trajectory(generator, t_max, points as usize, grid as usize).map_err(to_js)
}

#[wasm_bindgen]
pub fn qutrit_sweep(points: u32, grid: u32) -> Result<String, JsValue> {
    demo::qutrit_sweep(points as usize, grid as usize).map_err(to_js)
}

fn to_js(e: qcorr::QcorrError) -> JsValue {
    JsValue::from_str(&e.to_string())
}
