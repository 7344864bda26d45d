// Copyright 2026 Qcorr Contributors
// SPDX-License-Identifier: Apache-2.0

//! `qcorr` — load states and channels from JSON, run the correlation
//! analyses, and emit deterministic JSON or CSV reports.
//!
//! Exit codes: 0 success, 2 validation failure (malformed input, bad
//! state/channel, bad parameters), 3 optimizer non-convergence.
//!
//! This binary is a thin adapter: every number it prints comes straight
//! out of the `qcorr` library.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use qcorr::json::{
    ensemble_value, format_float, ket_value, parse_channel, parse_matrix,
    parse_state, JsonValue,
};
use qcorr::{
    ChannelClass, ComplexMatrix, KrausChannel, LindbladGenerator,
    OptimizationSettings, QcorrError, TrajectoryPoint, WitnessReport,
};

#[derive(Parser)]
#[command(
    name = "qcorr",
    version,
    about = "Decide whether a local channel can create quantum correlation, and measure it"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a qubit channel; construct a witness when it can create correlation
    Classify(ClassifyArgs),
    /// Quantum discord of a bipartite state (bits)
    Discord(MeasureArgs),
    /// One-way quantum deficit of a bipartite state (bits)
    Deficit(MeasureArgs),
    /// Find a half-classical input whose channel image carries discord
    Witness(ClassifyArgs),
    /// Evolve the B qubit of a two-qubit state under a Lindblad generator
    Evolve(EvolveArgs),
    /// Maximal singlet fraction, optionally before/after a channel on B
    Msf(MsfArgs),
    /// Unital qutrit channel that still creates quantum deficit
    DemoQutrit(DemoQutritArgs),
    /// Amplitude damping walkthrough: classification, witness, trajectory
    DemoAd(DemoAdArgs),
    /// Exercise a channel against random half-classical states
    Verify(VerifyArgs),
}

#[derive(Args)]
struct CommonOpts {
    /// Classification tolerance on structural defects
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    /// Seed for random sampling
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Grid points per angle for the measurement optimizer
    #[arg(long)]
    grid: Option<usize>,
    /// Write the report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output format (csv is available for trajectories only)
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct ClassifyArgs {
    /// Channel JSON: {"dim": n, "kraus": [matrix, ...]}
    #[arg(long)]
    channel: PathBuf,
    #[command(flatten)]
    common: CommonOpts,
}

#[derive(Args)]
struct MeasureArgs {
    /// State JSON: {"dim": n, "mat": [[[re, im], ...], ...]}
    #[arg(long)]
    state: PathBuf,
    /// Subsystem dimensions dA dB
    #[arg(long, num_args = 2, value_names = ["DA", "DB"])]
    dims: Vec<usize>,
    #[command(flatten)]
    common: CommonOpts,
}

#[derive(Args)]
struct EvolveArgs {
    /// Two-qubit state JSON to evolve on B
    #[arg(long)]
    state: PathBuf,
    /// Coefficient matrix JSON (4x4 over {I, σx, σy, σz})
    #[arg(long)]
    gamma: PathBuf,
    /// Hamiltonian JSON (2x2); zero when omitted
    #[arg(long)]
    hamiltonian: Option<PathBuf>,
    /// Sample times as t0:t1:steps
    #[arg(long)]
    times: String,
    /// Skip the PSD check on the dissipative block of γ
    #[arg(long)]
    no_psd_check: bool,
    #[command(flatten)]
    common: CommonOpts,
}

#[derive(Args)]
struct MsfArgs {
    /// Bipartite state JSON with equal local dimensions
    #[arg(long)]
    state: PathBuf,
    /// Optional channel applied to B before re-maximizing
    #[arg(long)]
    channel: Option<PathBuf>,
    /// Subsystem dimensions dA dB
    #[arg(long, num_args = 2, value_names = ["DA", "DB"], default_values_t = [2, 2])]
    dims: Vec<usize>,
    #[command(flatten)]
    common: CommonOpts,
}

#[derive(Args)]
struct DemoQutritArgs {
    /// Weight of the identity Kraus operator
    #[arg(long, default_value_t = std::f64::consts::FRAC_1_SQRT_2)]
    e0: f64,
    /// Weight of the rotation Kraus operator
    #[arg(long, default_value_t = std::f64::consts::FRAC_1_SQRT_2)]
    e1: f64,
    #[command(flatten)]
    common: CommonOpts,
}

#[derive(Args)]
struct DemoAdArgs {
    /// Damping probability of the demonstrated channel
    #[arg(long, default_value_t = 0.5)]
    p: f64,
    #[command(flatten)]
    common: CommonOpts,
}

#[derive(Args)]
struct VerifyArgs {
    /// Channel JSON to exercise
    #[arg(long)]
    channel: PathBuf,
    /// Number of random half-classical inputs
    #[arg(long, default_value_t = 50)]
    states: usize,
    #[command(flatten)]
    common: CommonOpts,
}

/// Exit disposition of a command.
enum Outcome {
    /// Rendered report plus a non-convergence flag.
    Report(String, bool),
}

#[derive(Debug)]
struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    fn validation(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }

    fn non_convergence(message: impl Into<String>) -> Self {
        Self {
            code: 3,
            message: message.into(),
        }
    }
}

impl From<QcorrError> for CliError {
    fn from(e: QcorrError) -> Self {
        match e {
            QcorrError::WitnessNotFound(_) | QcorrError::NoConvergence(_) => {
                CliError::non_convergence(e.to_string())
            }
            _ => CliError::validation(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    let (outcome, common) = match cli.command {
        Command::Classify(args) => (cmd_classify(&args, false)?, args.common),
        Command::Witness(args) => (cmd_classify(&args, true)?, args.common),
        Command::Discord(args) => (cmd_measure(&args, true)?, args.common),
        Command::Deficit(args) => (cmd_measure(&args, false)?, args.common),
        Command::Evolve(args) => (cmd_evolve(&args)?, args.common),
        Command::Msf(args) => (cmd_msf(&args)?, args.common),
        Command::DemoQutrit(args) => (cmd_demo_qutrit(&args)?, args.common),
        Command::DemoAd(args) => (cmd_demo_ad(&args)?, args.common),
        Command::Verify(args) => (cmd_verify(&args)?, args.common),
    };
    let Outcome::Report(rendered, unconverged) = outcome;
    match &common.out {
        Some(path) => std::fs::write(path, rendered.as_bytes())
            .map_err(|e| CliError::validation(format!("cannot write {}: {e}", path.display())))?,
        None => print!("{rendered}"),
    }
    Ok(if unconverged {
        ExitCode::from(3)
    } else {
        ExitCode::SUCCESS
    })
}

fn validate_common(common: &CommonOpts, trajectory: bool) -> Result<OptimizationSettings, CliError> {
    if common.tol <= 0.0 {
        return Err(CliError::validation("--tol must be positive"));
    }
    if let Some(grid) = common.grid {
        if grid < 4 {
            return Err(CliError::validation("--grid must be at least 4"));
        }
    }
    if common.format == Format::Csv && !trajectory {
        return Err(CliError::validation(
            "csv format is only available for trajectory output (evolve)",
        ));
    }
    let mut settings = OptimizationSettings::default();
    if let Some(grid) = common.grid {
        settings.grid_points_per_angle = grid;
    }
    settings.validate()?;
    Ok(settings)
}

fn read(path: &PathBuf) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::validation(format!("cannot read {}: {e}", path.display())))
}

fn dims_pair(dims: &[usize]) -> Result<(usize, usize), CliError> {
    match dims {
        [da, db] => Ok((*da, *db)),
        _ => Err(CliError::validation("--dims takes exactly two values")),
    }
}

/// Reclassify from reported defects under the CLI tolerance.
fn class_with_tol(unitality: f64, decoherence: f64, tol: f64) -> ChannelClass {
    match (unitality < tol, decoherence < tol) {
        (true, true) => ChannelClass::Both,
        (true, false) => ChannelClass::MixingOnly,
        (false, true) => ChannelClass::CompletelyDecoheringOnly,
        (false, false) => ChannelClass::Neither,
    }
}

fn witness_value(w: &WitnessReport) -> JsonValue {
    JsonValue::object(vec![
        ("theta", JsonValue::Float(w.theta)),
        ("phi", JsonValue::Float(w.phi)),
        ("commutator_norm", JsonValue::Float(w.commutator_norm)),
        ("discord_bits", JsonValue::Float(w.discord)),
        ("deficit_bits", JsonValue::Float(w.deficit)),
        ("converged", JsonValue::Bool(w.converged)),
        ("ensemble", ensemble_value(&w.ensemble)),
    ])
}

fn cmd_classify(args: &ClassifyArgs, witness_only: bool) -> Result<Outcome, CliError> {
    let settings = validate_common(&args.common, false)?;
    let ch = parse_channel(&read(&args.channel)?)?;
    if ch.dim() != 2 {
        return Err(CliError::validation(
            "classification covers qubit channels; use demo-qutrit for the d = 3 story",
        ));
    }
    let structure = ch.classify_structure()?;
    let class = class_with_tol(
        structure.unitality_defect,
        structure.decoherence_defect,
        args.common.tol,
    );
    let witness = if class == ChannelClass::Neither {
        Some(qcorr::find_witness(&ch, &settings)?)
    } else if witness_only {
        return Err(CliError::non_convergence(format!(
            "channel classifies as {}; no correlation-creating input exists",
            class.as_str()
        )));
    } else {
        None
    };
    let unconverged = witness.as_ref().is_some_and(|w| !w.converged);

    let mut fields = vec![
        (
            "command",
            JsonValue::Str(if witness_only { "witness" } else { "classify" }.into()),
        ),
        ("channel_class", JsonValue::Str(class.as_str().into())),
        (
            "unitality_defect",
            JsonValue::Float(structure.unitality_defect),
        ),
        (
            "decoherence_defect",
            JsonValue::Float(structure.decoherence_defect),
        ),
        ("tol", JsonValue::Float(args.common.tol)),
    ];
    fields.push((
        "witness",
        witness.as_ref().map_or(JsonValue::Null, witness_value),
    ));
    Ok(Outcome::Report(
        JsonValue::object(fields).render(),
        unconverged,
    ))
}

fn cmd_measure(args: &MeasureArgs, discord: bool) -> Result<Outcome, CliError> {
    let settings = validate_common(&args.common, false)?;
    let rho = parse_state(&read(&args.state)?)?;
    let dims = dims_pair(&args.dims)?;
    let result = if discord {
        qcorr::quantum_discord(&rho, dims, &settings)?
    } else {
        qcorr::one_way_deficit(&rho, dims, &settings)?
    };
    let report = JsonValue::object(vec![
        (
            "command",
            JsonValue::Str(if discord { "discord" } else { "deficit" }.into()),
        ),
        ("value_bits", JsonValue::Float(result.value)),
        ("converged", JsonValue::Bool(result.converged)),
        (
            "optimal_basis_parameters",
            JsonValue::Array(
                result
                    .optimal_basis
                    .parameters()
                    .iter()
                    .map(|&x| JsonValue::Float(x))
                    .collect(),
            ),
        ),
    ]);
    Ok(Outcome::Report(report.render(), !result.converged))
}

fn parse_times(spec: &str) -> Result<Vec<f64>, CliError> {
    let parts: Vec<&str> = spec.split(':').collect();
    let err = || CliError::validation("--times must look like t0:t1:steps");
    if parts.len() != 3 {
        return Err(err());
    }
    let t0: f64 = parts[0].parse().map_err(|_| err())?;
    let t1: f64 = parts[1].parse().map_err(|_| err())?;
    let steps: usize = parts[2].parse().map_err(|_| err())?;
    if steps == 0 || t0 < 0.0 || t1 < t0 {
        return Err(CliError::validation(
            "--times needs 0 ≤ t0 ≤ t1 and at least one step",
        ));
    }
    Ok(if steps == 1 {
        vec![t0]
    } else {
        (0..steps)
            .map(|k| t0 + (t1 - t0) * k as f64 / (steps - 1) as f64)
            .collect()
    })
}

fn trajectory_csv(points: &[TrajectoryPoint]) -> String {
    let mut out = String::from("t,deficit_bits,discord_bits,converged_flag\n");
    for p in points {
        out.push_str(&format!(
            "{},{},{},{}\n",
            format_float(p.t),
            format_float(p.deficit),
            format_float(p.discord),
            if p.converged { 1 } else { 0 }
        ));
    }
    out
}

fn trajectory_json(points: &[TrajectoryPoint]) -> JsonValue {
    JsonValue::Array(
        points
            .iter()
            .map(|p| {
                JsonValue::object(vec![
                    ("t", JsonValue::Float(p.t)),
                    ("deficit_bits", JsonValue::Float(p.deficit)),
                    ("discord_bits", JsonValue::Float(p.discord)),
                    ("converged", JsonValue::Bool(p.converged)),
                ])
            })
            .collect(),
    )
}

fn cmd_evolve(args: &EvolveArgs) -> Result<Outcome, CliError> {
    let settings = validate_common(&args.common, true)?;
    let rho = parse_state(&read(&args.state)?)?;
    let gamma = parse_matrix(&read(&args.gamma)?)?;
    let hamiltonian = match &args.hamiltonian {
        Some(path) => parse_matrix(&read(path)?)?,
        None => ComplexMatrix::zeros(2, 2),
    };
    let generator = if args.no_psd_check {
        LindbladGenerator::new_without_psd_check(hamiltonian, gamma)?
    } else {
        LindbladGenerator::new(hamiltonian, gamma)?
    };
    let times = parse_times(&args.times)?;
    let points = generator.state_trajectory(&rho, &times, &settings)?;
    let unconverged = points.iter().any(|p| !p.converged);
    let rendered = match args.common.format {
        Format::Csv => trajectory_csv(&points),
        Format::Json => JsonValue::object(vec![
            ("command", JsonValue::Str("evolve".into())),
            (
                "preserves_classicality",
                JsonValue::Bool(generator.preserves_classicality().preserves),
            ),
            ("trajectory", trajectory_json(&points)),
        ])
        .render(),
    };
    Ok(Outcome::Report(rendered, unconverged))
}

fn cmd_msf(args: &MsfArgs) -> Result<Outcome, CliError> {
    let settings = validate_common(&args.common, false)?;
    let rho = parse_state(&read(&args.state)?)?;
    let dims = dims_pair(&args.dims)?;
    let report = match &args.channel {
        None => {
            let r = qcorr::max_singlet_fraction(&rho, dims, &settings)?;
            let unconverged = !r.converged;
            (
                JsonValue::object(vec![
                    ("command", JsonValue::Str("msf".into())),
                    ("fraction", JsonValue::Float(r.fraction)),
                    ("avg_fidelity", JsonValue::Float(r.avg_fidelity)),
                    ("converged", JsonValue::Bool(r.converged)),
                    ("optimal_mes", ket_value(&r.optimal_mes)),
                ])
                .render(),
                unconverged,
            )
        }
        Some(path) => {
            let ch = parse_channel(&read(path)?)?;
            let cmp = qcorr::msf_after_channel(&rho, &ch, dims, &settings)?;
            let unconverged = !cmp.before.converged || !cmp.after.converged;
            (
                JsonValue::object(vec![
                    ("command", JsonValue::Str("msf".into())),
                    ("fraction_before", JsonValue::Float(cmp.before.fraction)),
                    ("fraction_after", JsonValue::Float(cmp.after.fraction)),
                    (
                        "avg_fidelity_before",
                        JsonValue::Float(cmp.before.avg_fidelity),
                    ),
                    (
                        "avg_fidelity_after",
                        JsonValue::Float(cmp.after.avg_fidelity),
                    ),
                    ("xi_route_value", JsonValue::Float(cmp.xi_route_value)),
                    ("dual_route_gap", JsonValue::Float(cmp.dual_route_gap)),
                    (
                        "channel_is_mixing",
                        JsonValue::Bool(ch.is_mixing().mixing),
                    ),
                    (
                        "converged",
                        JsonValue::Bool(cmp.before.converged && cmp.after.converged),
                    ),
                ])
                .render(),
                unconverged,
            )
        }
    };
    Ok(Outcome::Report(report.0, report.1))
}

fn cmd_demo_qutrit(args: &DemoQutritArgs) -> Result<Outcome, CliError> {
    let settings = validate_common(&args.common, false)?;
    let report = qcorr::qutrit_counterexample(args.e0, args.e1, &settings)?;
    let rendered = JsonValue::object(vec![
        ("command", JsonValue::Str("demo-qutrit".into())),
        ("e0", JsonValue::Float(args.e0)),
        ("e1", JsonValue::Float(args.e1)),
        ("mixing", JsonValue::Bool(report.mixing)),
        ("unitality_defect", JsonValue::Float(report.unitality_defect)),
        (
            "commutator",
            qcorr::json::matrix_value(&report.commutator),
        ),
        ("pattern_coefficient", JsonValue::Float(report.coefficient)),
        ("pattern_shape_error", JsonValue::Float(report.shape_error)),
        ("deficit_bits", JsonValue::Float(report.deficit)),
        ("discord_bits", JsonValue::Float(report.discord)),
        ("converged", JsonValue::Bool(report.converged)),
    ])
    .render();
    Ok(Outcome::Report(rendered, !report.converged))
}

fn cmd_demo_ad(args: &DemoAdArgs) -> Result<Outcome, CliError> {
    let settings = validate_common(&args.common, false)?;
    let ch = KrausChannel::amplitude_damping(args.p)?;
    let structure = ch.classify_structure()?;
    let witness = match structure.class {
        ChannelClass::Neither => Some(qcorr::find_witness(&ch, &settings)?),
        _ => None,
    };

    // Continuous-time view of the same noise: damping at unit rate
    // passes through p(t) = 1 − e^{−t}.
    let generator = LindbladGenerator::amplitude_damping(1.0);
    let ensemble = qcorr::theorem::witness_ensemble(std::f64::consts::FRAC_PI_2, 0.0)?;
    let times = [0.05, 0.1, 0.25, 0.5, 1.0, 2.0, 5.0, 10.0, 50.0];
    let points = generator.discord_trajectory(&ensemble, &times, &settings)?;
    let unconverged =
        witness.as_ref().is_some_and(|w| !w.converged) || points.iter().any(|p| !p.converged);

    let rendered = JsonValue::object(vec![
        ("command", JsonValue::Str("demo-ad".into())),
        ("p", JsonValue::Float(args.p)),
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
        (
            "witness",
            witness.as_ref().map_or(JsonValue::Null, witness_value),
        ),
        ("trajectory_rate", JsonValue::Float(1.0)),
        ("trajectory", trajectory_json(&points)),
    ])
    .render();
    Ok(Outcome::Report(rendered, unconverged))
}

fn cmd_verify(args: &VerifyArgs) -> Result<Outcome, CliError> {
    let settings = validate_common(&args.common, false)?;
    let ch = parse_channel(&read(&args.channel)?)?;
    let report = qcorr::verify_theorem1(&ch, args.states, args.common.seed, &settings)?;
    let unconverged = report.witness.as_ref().is_some_and(|w| !w.converged);
    let rendered = JsonValue::object(vec![
        ("command", JsonValue::Str("verify".into())),
        (
            "channel_class",
            JsonValue::Str(report.class.as_str().into()),
        ),
        ("states_checked", JsonValue::Int(report.states_checked as i64)),
        ("seed", JsonValue::Int(args.common.seed as i64)),
        ("max_deficit_bits", JsonValue::Float(report.max_deficit)),
        ("max_discord_bits", JsonValue::Float(report.max_discord)),
        ("all_classical", JsonValue::Bool(report.all_classical)),
        (
            "witness",
            report.witness.as_ref().map_or(JsonValue::Null, witness_value),
        ),
    ])
    .render();
    Ok(Outcome::Report(rendered, unconverged))
}
