use std::path::{Path, PathBuf};

use serde_json::{json, Value};

use purity_probe_core::discriminate::{
    decay_bound_spectrum, prob_outcome0_dual, prob_outcome0_spectrum, sample_spectrum, Mode, PurityFunctional,
};
use purity_probe_core::estimate::{
    estimate_h, estimate_spectrum, plan_shots, run_experiment_spectrum, ExperimentRecord, Policy, ShotPlan,
    SpectrumEstimate,
};
use purity_probe_core::qstate::{SizeCap, Spectrum, STRICT_TOLERANCE};
use purity_probe_core::symgroup::{rank_outcome_probs, rank_outcome_probs_spectral};
use purity_probe_core::Error as CoreError;

use crate::error::CliError;
use crate::state::load_state;

/// Outputs and echoed inputs of one command, before timing is attached.
pub struct CommandResult {
    pub inputs: Value,
    pub outputs: Value,
    pub seed: Option<u64>,
}

fn rank_rows(probs: &[f64]) -> Value {
    probs
        .iter()
        .enumerate()
        .map(|(i, &p)| json!({ "outcome": i + 1, "meaning": format!("rank >= {}", i + 1), "probability": p }))
        .collect()
}

fn purity_of(spectrum: &Spectrum) -> f64 {
    PurityFunctional::TraceSquare.evaluate(spectrum)
}

pub fn exact(state: &Path, n: usize, cap: SizeCap, skip_cross_check: bool) -> Result<CommandResult, CliError> {
    let st = load_state(state)?;
    let spectrum = st.spectrum();
    let p0 = prob_outcome0_spectrum(spectrum, n);

    let cross_check = match (st.density(), skip_cross_check) {
        (None, _) => json!({ "status": "skipped", "reason": "eigenvalue-only input has no matrix to project" }),
        (Some(_), true) => json!({ "status": "skipped", "reason": "disabled by --skip-cross-check" }),
        (Some(rho), false) => {
            let dual = prob_outcome0_dual(rho, n, cap)?;
            let residual = dual.residual();
            if residual > STRICT_TOLERANCE {
                return Err(CliError::Failure(format!(
                    "projector and spectral probabilities disagree by {residual:e}"
                )));
            }
            json!({ "status": "ok", "projector_p0": dual.projector, "residual": residual })
        }
    };

    Ok(CommandResult {
        inputs: json!({
            "state": st.describe(state),
            "n": n,
            "max_dim": cap.0,
            "skip_cross_check": skip_cross_check,
        }),
        outputs: json!({
            "p0": p0,
            "p1": 1.0 - p0,
            "decay_bound": decay_bound_spectrum(spectrum, n),
            "spectrum": spectrum.values(),
            "purity": purity_of(spectrum),
            "rank_probabilities": rank_rows(&rank_outcome_probs_spectral(spectrum, n)),
            "cross_check": cross_check,
        }),
        seed: None,
    })
}

pub fn sample(state: &Path, n: usize, shots: u64, seed: u64, mode: Mode) -> Result<CommandResult, CliError> {
    let st = load_state(state)?;
    let report = sample_spectrum(st.spectrum(), n, shots, seed, mode)?;
    let label0 = mode.label(0)?.meaning.to_string();
    let label1 = mode.label(1)?.meaning.to_string();
    let freq = |c: u64| c as f64 / shots as f64;
    Ok(CommandResult {
        inputs: json!({
            "state": st.describe(state),
            "n": n,
            "shots": shots,
            "mode": mode.to_string(),
        }),
        outputs: json!({
            "p0": prob_outcome0_spectrum(st.spectrum(), n),
            "shots": report.shots,
            "count0": report.count0,
            "count1": report.count1,
            "outcomes": [
                { "raw": 0, "meaning": label0, "count": report.count0, "frequency": freq(report.count0) },
                { "raw": 1, "meaning": label1, "count": report.count1, "frequency": freq(report.count1) },
            ],
            "counts": { label0: report.count0, label1: report.count1 },
        }),
        seed: Some(seed),
    })
}

pub fn rank(state: &Path, n: usize, cap: SizeCap) -> Result<CommandResult, CliError> {
    let st = load_state(state)?;
    let spectral = rank_outcome_probs_spectral(st.spectrum(), n);
    let (method, probs, residual) = match st.density() {
        Some(rho) => {
            let probs = rank_outcome_probs(rho, n, cap)?;
            let residual = probs.iter().zip(&spectral).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
            ("projector", probs, Some(residual))
        }
        None => ("spectral", spectral, None),
    };
    let certified = probs.iter().rposition(|&p| p > STRICT_TOLERANCE).map(|i| i + 1).unwrap_or(1);
    Ok(CommandResult {
        inputs: json!({ "state": st.describe(state), "n": n, "max_dim": cap.0 }),
        outputs: json!({
            "method": method,
            "semantics": "outcome i certifies rank >= i",
            "probabilities": probs,
            "rank_probabilities": rank_rows(&probs),
            "highest_reachable_outcome": certified,
            "spectral_residual": residual,
        }),
        seed: None,
    })
}

pub enum PuritySource {
    Simulate { state: PathBuf, copies: u64, seed: u64 },
    Record(PathBuf),
}

fn plan_json(plan: &ShotPlan) -> Value {
    json!({ "dim": plan.dim, "groups": plan.groups, "total_copies": plan.total_copies() })
}

fn estimate_json(est: &SpectrumEstimate) -> Value {
    json!({
        "spectrum": est.spectrum.values(),
        "purity": est.purity,
        "h_estimates": est.h_estimates.values(),
        "e_estimates": est.e_estimates.values(),
    })
}

/// Reads lab counts: either a bare record or a previous `purity` envelope.
pub fn load_record(path: &Path) -> Result<ExperimentRecord, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    let value: Value = serde_json::from_str(&text)
        .map_err(|e| CliError::Input(format!("{}: not JSON ({e})", path.display())))?;
    let inner = value.pointer("/outputs/record").cloned().unwrap_or(value);
    let record: ExperimentRecord = serde_json::from_value(inner)
        .map_err(|e| CliError::Input(format!("{}: not an experiment record ({e})", path.display())))?;
    record.validate()?;
    Ok(record)
}

pub fn purity(source: PuritySource, policy: Policy) -> Result<CommandResult, CliError> {
    let (inputs, record, plan, truth, seed) = match source {
        PuritySource::Simulate { state, copies, seed } => {
            let st = load_state(&state)?;
            let plan = plan_shots(copies, st.dim(), policy)?;
            let record = run_experiment_spectrum(st.spectrum(), &plan, seed)?;
            let truth = json!({ "spectrum": st.spectrum().values(), "purity": purity_of(st.spectrum()) });
            let inputs = json!({
                "state": st.describe(&state),
                "copies": copies,
                "policy": policy_name(policy),
                "source": "simulation",
            });
            (inputs, record, Some(plan), Some(truth), Some(seed))
        }
        PuritySource::Record(path) => {
            let record = load_record(&path)?;
            let inputs = json!({ "record": path.display().to_string(), "source": "record" });
            (inputs, record, None, None, None)
        }
    };

    let m = record.dim;
    let h = estimate_h(&record, m)?;
    let mut outputs = json!({
        "record": record,
        "plan": plan.as_ref().map(plan_json),
        "truth": truth,
    });
    match estimate_spectrum(&h, m) {
        Ok(est) => {
            outputs["status"] = json!("ok");
            outputs["estimate"] = estimate_json(&est);
            outputs["diagnostics"] = json!(est.diagnostics);
        }
        Err(CoreError::ComplexRoots { diagnostics }) => {
            outputs["status"] = json!("unstable");
            outputs["estimate"] = Value::Null;
            outputs["h_estimates"] = json!(h.values());
            outputs["diagnostics"] = json!(diagnostics);
        }
        Err(e) => return Err(e.into()),
    }
    Ok(CommandResult { inputs, outputs, seed })
}

pub fn policy_name(policy: Policy) -> &'static str {
    match policy {
        Policy::EqualMeasurements => "equal-measurements",
        Policy::EqualCopies => "equal-copies",
    }
}
