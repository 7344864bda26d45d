// Copyright 2026 Qcorr Contributors
// SPDX-License-Identifier: Apache-2.0

//! Demo logic behind the wasm exports, kept free of browser types.

use qcorr::json::JsonValue;
use qcorr::theorem::{commutator_scan, find_witness};
use qcorr::{
    ChannelClass, KrausChannel, LindbladGenerator, OptimizationSettings, QcorrError, Result,
};

fn channel_from_kind(kind: &str, p: f64) -> Result<KrausChannel> {
    match kind {
        "amplitude-damping" => KrausChannel::amplitude_damping(p),
        "dephasing" => KrausChannel::dephasing(p),
        "depolarizing" => KrausChannel::depolarizing(p),
        other => Err(QcorrError::InvalidParameter(format!(
            "unknown channel family \"{other}\""
        ))),
    }
}

fn settings_with_grid(grid: usize) -> Result<OptimizationSettings> {
    let settings = OptimizationSettings {
        grid_points_per_angle: grid,
        ..OptimizationSettings::default()
    };
    settings.validate()?;
    Ok(settings)
}

/// Classification of one channel family member: class, defects, the
/// witness (when one exists) and the full commutator scan for the heat
/// map.
pub fn classify_channel(kind: &str, p: f64, scan_points: usize) -> Result<String> {
    let ch = channel_from_kind(kind, p)?;
    let structure = ch.classify_structure()?;
    let settings = OptimizationSettings::default();
    let witness = match structure.class {
        ChannelClass::Neither => Some(find_witness(&ch, &settings)?),
        _ => None,
    };
    let scan_points = scan_points.clamp(8, 96);
    let scan = commutator_scan(&ch, scan_points);
    let mut max_norm: f64 = 0.0;
    let mut rows = Vec::with_capacity(scan_points);
    for row in scan.chunks(scan_points) {
        rows.push(JsonValue::Array(
            row.iter()
                .map(|pt| {
                    max_norm = max_norm.max(pt.commutator_norm);
                    JsonValue::Float(pt.commutator_norm)
                })
                .collect(),
        ));
    }

    let witness_value = witness.map_or(JsonValue::Null, |w| {
        JsonValue::object(vec![
            ("theta", JsonValue::Float(w.theta)),
            ("phi", JsonValue::Float(w.phi)),
            ("commutator_norm", JsonValue::Float(w.commutator_norm)),
            ("discord_bits", JsonValue::Float(w.discord)),
            ("deficit_bits", JsonValue::Float(w.deficit)),
        ])
    });
    Ok(JsonValue::object(vec![
        ("kind", JsonValue::Str(kind.into())),
        ("p", JsonValue::Float(p)),
        (
            "channel_class",
            JsonValue::Str(structure.class.as_str().into()),
        ),
        (
            "unitality_defect",
            JsonValue::Float(structure.unitality_defect),
        ),
        (
            "decoherence_defect",
            JsonValue::Float(structure.decoherence_defect),
        ),
        ("witness", witness_value),
        ("scan_points", JsonValue::Int(scan_points as i64)),
        ("scan_max", JsonValue::Float(max_norm)),
        ("scan", JsonValue::Array(rows)),
    ])
    .render())
}

fn generator_from_kind(kind: &str) -> Result<LindbladGenerator> {
    use qcorr::linalg::{c64, ComplexMatrix};
    match kind {
        "amplitude-damping" => Ok(LindbladGenerator::amplitude_damping(1.0)),
        "pure-dephasing" => Ok(LindbladGenerator::pure_dephasing(1.0)),
        "imaginary-coupling" => {
            let mut gamma = ComplexMatrix::zeros(4, 4);
            gamma.set(1, 1, c64(0.2, 0.0));
            gamma.set(2, 2, c64(0.2, 0.0));
            gamma.set(1, 2, c64(0.0, 0.1));
            gamma.set(2, 1, c64(0.0, -0.1));
            LindbladGenerator::new(ComplexMatrix::zeros(2, 2), gamma)
        }
        "symmetric-coupling" => {
            let mut gamma = ComplexMatrix::zeros(4, 4);
            gamma.set(1, 1, c64(0.2, 0.0));
            gamma.set(2, 2, c64(0.2, 0.0));
            gamma.set(1, 2, c64(0.1, 0.0));
            gamma.set(2, 1, c64(0.1, 0.0));
            LindbladGenerator::new(ComplexMatrix::zeros(2, 2), gamma)
        }
        other => Err(QcorrError::InvalidParameter(format!(
            "unknown generator \"{other}\""
        ))),
    }
}

/// Discord and deficit created from the canonical |±⟩ half-classical
/// ensemble as the chosen generator drives B.
pub fn discord_trajectory(
    generator: &str,
    t_max: f64,
    points: usize,
    grid: usize,
) -> Result<String> {
    if !t_max.is_finite() || t_max <= 0.0 {
        return Err(QcorrError::InvalidParameter(
            "t_max must be positive".into(),
        ));
    }
    let gen = generator_from_kind(generator)?;
    let settings = settings_with_grid(grid.clamp(8, 32))?;
    let points = points.clamp(2, 200);
    let ensemble = qcorr::theorem::witness_ensemble(std::f64::consts::FRAC_PI_2, 0.0)?;
    let times: Vec<f64> = (0..points)
        .map(|k| t_max * k as f64 / (points - 1) as f64)
        .collect();
    let trajectory = gen.discord_trajectory(&ensemble, &times, &settings)?;
    let rows = trajectory
        .iter()
        .map(|p| {
            JsonValue::object(vec![
                ("t", JsonValue::Float(p.t)),
                ("deficit_bits", JsonValue::Float(p.deficit)),
                ("discord_bits", JsonValue::Float(p.discord)),
            ])
        })
        .collect();
    Ok(JsonValue::object(vec![
        ("generator", JsonValue::Str(generator.into())),
        (
            "preserves_classicality",
            JsonValue::Bool(gen.preserves_classicality().preserves),
        ),
        ("trajectory", JsonValue::Array(rows)),
    ])
    .render())
}

/// The qutrit story on one curve: sweep the rotation weight e₁² and
/// report the commutator coefficient and the created deficit. Every
/// point is a unital channel.
pub fn qutrit_sweep(points: usize, grid: usize) -> Result<String> {
    let settings = settings_with_grid(grid.clamp(2, 8))?;
    let points = points.clamp(3, 19);
    let mut rows = Vec::with_capacity(points);
    for k in 1..=points {
        let e1_sq = k as f64 / (points + 1) as f64;
        let e1 = e1_sq.sqrt();
        let e0 = (1.0 - e1_sq).sqrt();
        let report = qcorr::qutrit_counterexample(e0, e1, &settings)?;
        rows.push(JsonValue::object(vec![
            ("e1_sq", JsonValue::Float(e1_sq)),
            ("mixing", JsonValue::Bool(report.mixing)),
            (
                "commutator_coefficient",
                JsonValue::Float(report.coefficient),
            ),
            ("deficit_bits", JsonValue::Float(report.deficit)),
            ("discord_bits", JsonValue::Float(report.discord)),
        ]));
    }
    Ok(JsonValue::object(vec![("sweep", JsonValue::Array(rows))]).render())
}
