//! Purity estimation from measurement counts.
//!
//! Copies are split into groups `k = 2..=m`. Group `k` runs the symmetric
//! measurement `N_k` times on `k` copies; the frequency of outcome `0`
//! estimates `h_k`. The `h` estimates give `e` estimates, hence the
//! characteristic polynomial, whose roots are the spectrum.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::discriminate::{derive_seed, prob_outcome0_spectrum, sample_count0, PurityFunctional};
use crate::error::{Error, Result};
use crate::qstate::{eigenvalues, DensityMatrix, Spectrum};
use crate::sympoly::{char_poly, e_from_h, solve_spectrum_with, ESequence, HSequence, RootDiagnostics, RootPolicy};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Policy {
    /// Same number of measurements in every group.
    #[default]
    EqualMeasurements,
    /// Same number of copies in every group.
    EqualCopies,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlannedGroup {
    pub k: usize,
    pub measurements: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShotPlan {
    pub dim: usize,
    pub groups: Vec<PlannedGroup>,
}

impl ShotPlan {
    pub fn total_copies(&self) -> u64 {
        self.groups.iter().map(|g| g.k as u64 * g.measurements).sum()
    }
}

/// Smallest budget that gives every group one measurement.
pub fn minimum_budget(m: usize) -> u64 {
    (2..=m as u64).sum()
}

pub fn plan_shots(budget: u64, m: usize, policy: Policy) -> Result<ShotPlan> {
    if m == 0 {
        return Err(Error::InvalidArgument("dimension must be at least 1".into()));
    }
    let required = minimum_budget(m);
    if budget == 0 || budget < required {
        return Err(Error::BudgetTooSmall { budget, required });
    }
    let groups: Vec<PlannedGroup> = match policy {
        // h_1 = 1 is known, so a single level needs no measurements at all
        _ if m == 1 => Vec::new(),
        Policy::EqualMeasurements => {
            let each = budget / required;
            (2..=m).map(|k| PlannedGroup { k, measurements: each }).collect()
        }
        Policy::EqualCopies => {
            let per_group = budget / (m as u64 - 1);
            (2..=m)
                .map(|k| PlannedGroup { k, measurements: (per_group / k as u64).max(1) })
                .collect()
        }
    };
    let plan = ShotPlan { dim: m, groups };
    if plan.total_copies() > budget {
        return Err(Error::BudgetTooSmall { budget, required: plan.total_copies() });
    }
    Ok(plan)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupRecord {
    pub k: usize,
    pub measurements: u64,
    /// Number of `0` outcomes.
    pub zeros: u64,
}

/// Counts per group; the same shape is accepted for real laboratory data.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExperimentRecord {
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub groups: Vec<GroupRecord>,
}

impl ExperimentRecord {
    pub fn validate(&self) -> Result<()> {
        for g in &self.groups {
            if g.measurements == 0 {
                return Err(Error::InvalidArgument(format!("group k={} has no measurements", g.k)));
            }
            if g.zeros > g.measurements {
                return Err(Error::InvalidArgument(format!(
                    "group k={} has {} zeros out of {} measurements",
                    g.k, g.zeros, g.measurements
                )));
            }
        }
        Ok(())
    }
}

/// Group `k` draws from the substream `derive_seed(seed, k)`.
pub fn run_experiment_spectrum(spectrum: &Spectrum, plan: &ShotPlan, seed: u64) -> Result<ExperimentRecord> {
    if spectrum.dim() != plan.dim {
        return Err(Error::DimensionMismatch { expected: plan.dim, found: spectrum.dim() });
    }
    let groups = plan
        .groups
        .par_iter()
        .map(|g| {
            let p0 = prob_outcome0_spectrum(spectrum, g.k);
            let zeros = sample_count0(p0, g.measurements, derive_seed(seed, g.k as u64));
            GroupRecord { k: g.k, measurements: g.measurements, zeros }
        })
        .collect();
    Ok(ExperimentRecord { dim: plan.dim, seed: Some(seed), groups })
}

pub fn run_experiment(rho: &DensityMatrix, plan: &ShotPlan, seed: u64) -> Result<ExperimentRecord> {
    run_experiment_spectrum(&eigenvalues(rho)?, plan, seed)
}

/// `ĥ_0 = ĥ_1 = 1` and `ĥ_k = S_k / N_k` clamped into `[0, 1]` for `k = 2..=m`.
pub fn estimate_h(record: &ExperimentRecord, m: usize) -> Result<HSequence> {
    record.validate()?;
    let mut values = vec![1.0; m.max(1) + 1];
    for (k, slot) in values.iter_mut().enumerate().skip(2) {
        let g = record.groups.iter().find(|g| g.k == k).ok_or(Error::MissingGroup { k })?;
        *slot = (g.zeros as f64 / g.measurements as f64).clamp(0.0, 1.0);
    }
    HSequence::new(values)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumEstimate {
    pub spectrum: Spectrum,
    pub purity: f64,
    pub h_estimates: HSequence,
    pub e_estimates: ESequence,
    pub diagnostics: RootDiagnostics,
}

pub fn estimate_spectrum(h: &HSequence, m: usize) -> Result<SpectrumEstimate> {
    estimate_spectrum_with(h, m, &RootPolicy::default())
}

pub fn estimate_spectrum_with(h: &HSequence, m: usize, policy: &RootPolicy) -> Result<SpectrumEstimate> {
    if m == 0 {
        return Err(Error::InvalidArgument("dimension must be at least 1".into()));
    }
    let e = e_from_h(h, m)?;
    let solution = solve_spectrum_with(&char_poly(&e), policy)?;
    Ok(SpectrumEstimate {
        purity: PurityFunctional::TraceSquare.evaluate(&solution.spectrum),
        spectrum: solution.spectrum,
        h_estimates: h.clone(),
        e_estimates: e,
        diagnostics: solution.diagnostics,
    })
}

pub fn estimate_purity_from_spectrum(spectrum: &Spectrum, budget: u64, policy: Policy, seed: u64) -> Result<SpectrumEstimate> {
    let m = spectrum.dim();
    let plan = plan_shots(budget, m, policy)?;
    let record = run_experiment_spectrum(spectrum, &plan, seed)?;
    estimate_spectrum(&estimate_h(&record, m)?, m)
}

/// `plan_shots`, `run_experiment`, `estimate_h` and `estimate_spectrum` in turn.
pub fn estimate_purity_end_to_end(rho: &DensityMatrix, budget: u64, policy: Policy, seed: u64) -> Result<SpectrumEstimate> {
    estimate_purity_from_spectrum(&eigenvalues(rho)?, budget, policy, seed)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(m: usize, groups: &[(usize, u64, u64)]) -> ExperimentRecord {
        ExperimentRecord {
            dim: m,
            seed: None,
            groups: groups.iter().map(|&(k, measurements, zeros)| GroupRecord { k, measurements, zeros }).collect(),
        }
    }

    fn pairs(plan: &ShotPlan) -> Vec<(usize, u64)> {
        plan.groups.iter().map(|g| (g.k, g.measurements)).collect()
    }

    #[test]
    fn plan_examples() {
        assert_eq!(pairs(&plan_shots(500, 2, Policy::EqualMeasurements).unwrap()), vec![(2, 250)]);
        assert_eq!(pairs(&plan_shots(500, 3, Policy::EqualMeasurements).unwrap()), vec![(2, 100), (3, 100)]);
        assert_eq!(pairs(&plan_shots(600, 3, Policy::EqualCopies).unwrap()), vec![(2, 150), (3, 100)]);
        assert_eq!(
            plan_shots(3, 3, Policy::EqualMeasurements),
            Err(Error::BudgetTooSmall { budget: 3, required: 5 })
        );
    }

    #[test]
    fn plan_invariants() {
        for m in 2..=5 {
            for budget in [minimum_budget(m), minimum_budget(m) + 1, 97, 1000, 123_457] {
                for policy in [Policy::EqualMeasurements, Policy::EqualCopies] {
                    let Ok(plan) = plan_shots(budget, m, policy) else {
                        assert!(budget < minimum_budget(m));
                        continue;
                    };
                    let ks: Vec<usize> = plan.groups.iter().map(|g| g.k).collect();
                    assert_eq!(ks, (2..=m).collect::<Vec<_>>());
                    assert!(plan.groups.iter().all(|g| g.measurements >= 1));
                    assert!(plan.total_copies() <= budget);
                }
            }
        }
    }

    #[test]
    fn qubit_plan_has_no_groups_below_two() {
        let plan = plan_shots(1, 1, Policy::EqualMeasurements).unwrap();
        assert!(plan.groups.is_empty());
        let est = estimate_purity_from_spectrum(&Spectrum::pure(1), 1, Policy::EqualCopies, 0).unwrap();
        assert_eq!(est.spectrum.values(), &[1.0]);
        assert_eq!(est.purity, 1.0);
    }

    #[test]
    fn pure_states_give_all_zeros() {
        let plan = plan_shots(1000, 3, Policy::EqualMeasurements).unwrap();
        let rec = run_experiment(&DensityMatrix::diagonal(&[1.0, 0.0, 0.0]).unwrap(), &plan, 11).unwrap();
        assert!(rec.groups.iter().all(|g| g.zeros == g.measurements));
        let h = estimate_h(&rec, 3).unwrap();
        assert_eq!(h.values(), &[1.0; 4]);
    }

    #[test]
    fn qubit_frequency_interval() {
        let plan = ShotPlan { dim: 2, groups: vec![PlannedGroup { k: 2, measurements: 100_000 }] };
        let inside = (0..100u64)
            .filter(|&seed| {
                let rec = run_experiment(&DensityMatrix::maximally_mixed(2), &plan, seed).unwrap();
                let f = rec.groups[0].zeros as f64 / 1e5;
                (0.7457..=0.7543).contains(&f)
            })
            .count();
        assert!(inside >= 99, "{inside}");
    }

    #[test]
    fn estimate_h_examples() {
        let h = estimate_h(&record(2, &[(2, 100, 79)]), 2).unwrap();
        assert_eq!(h.values(), &[1.0, 1.0, 0.79]);
        let h = estimate_h(&record(2, &[(2, 4, 3)]), 2).unwrap();
        assert_eq!(h.values(), &[1.0, 1.0, 0.75]);
        assert_eq!(estimate_h(&record(3, &[(2, 4, 3)]), 3), Err(Error::MissingGroup { k: 3 }));
        assert!(estimate_h(&record(2, &[(2, 4, 5)]), 2).is_err());
    }

    #[test]
    fn estimate_spectrum_examples() {
        let est = estimate_spectrum(&HSequence::new(vec![1.0, 1.0, 0.79]).unwrap(), 2).unwrap();
        assert!((est.spectrum.values()[0] - 0.7).abs() < 1e-12 && (est.spectrum.values()[1] - 0.3).abs() < 1e-12);
        assert!((est.purity - 0.58).abs() < 1e-12);
        let est = estimate_spectrum(&HSequence::new(vec![1.0, 1.0, 1.0]).unwrap(), 2).unwrap();
        assert_eq!(est.spectrum.values(), &[1.0, 0.0]);
        assert_eq!(est.purity, 1.0);
        let est = estimate_spectrum(&HSequence::new(vec![1.0, 1.0, 0.75]).unwrap(), 2).unwrap();
        assert!((est.spectrum.values()[0] - 0.5).abs() < 1e-12);
        assert!((est.purity - 0.5).abs() < 1e-12);
    }

    #[test]
    fn inconsistent_counts_surface_diagnostics() {
        // h_2 = 0.3 is below the qubit minimum of 0.75: roots 0.5 ± 0.59i.
        match estimate_spectrum(&HSequence::new(vec![1.0, 1.0, 0.3]).unwrap(), 2) {
            Err(Error::ComplexRoots { diagnostics }) => assert!(diagnostics.max_imag > 0.5),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn end_to_end_pure_qubit() {
        let est = estimate_purity_end_to_end(&DensityMatrix::diagonal(&[1.0, 0.0]).unwrap(), 10_000, Policy::EqualMeasurements, 3)
            .unwrap();
        assert_eq!(est.purity, 1.0);
    }

    #[test]
    fn record_json_round_trip() {
        let rec = record(3, &[(2, 10, 7), (3, 10, 4)]);
        let text = serde_json::to_string(&rec).unwrap();
        assert_eq!(text, r#"{"dim":3,"groups":[{"k":2,"measurements":10,"zeros":7},{"k":3,"measurements":10,"zeros":4}]}"#);
        assert_eq!(serde_json::from_str::<ExperimentRecord>(&text).unwrap(), rec);
    }
}
