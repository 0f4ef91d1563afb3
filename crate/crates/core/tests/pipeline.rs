use purity_probe_core::estimate::{estimate_purity_end_to_end, estimate_spectrum, Policy};
use purity_probe_core::qstate::{DensityMatrix, Spectrum};
use purity_probe_core::sympoly::HSequence;

/// Spectra with entries in multiples of 0.05, each at least 0.05, descending.
fn simplex_grid(m: usize) -> Vec<Vec<f64>> {
    fn fill(remaining: usize, slots: usize, cap: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<f64>>) {
        if slots == 0 {
            if remaining == 0 {
                out.push(prefix.iter().map(|&u| u as f64 * 0.05).collect());
            }
            return;
        }
        for u in (1..=cap.min(remaining)).rev() {
            prefix.push(u);
            fill(remaining - u, slots - 1, u, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    fill(20, m, 20, &mut Vec::new(), &mut out);
    out
}

fn max_error(estimate: &Spectrum, truth: &[f64]) -> f64 {
    estimate.values().iter().zip(truth).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
}

fn median(mut xs: Vec<f64>) -> f64 {
    xs.sort_by(f64::total_cmp);
    let n = xs.len();
    if n % 2 == 1 { xs[n / 2] } else { 0.5 * (xs[n / 2 - 1] + xs[n / 2]) }
}

#[test]
fn noiseless_round_trip_on_simplex_grid() {
    let mut checked = 0;
    for m in 1..=4 {
        for truth in simplex_grid(m) {
            let h = HSequence::from_variables(&truth, m);
            let est = estimate_spectrum(&h, m).unwrap();
            let err = max_error(&est.spectrum, &truth);
            assert!(err <= 1e-6, "{truth:?} -> {:?} (error {err:e})", est.spectrum.values());
            checked += 1;
        }
    }
    assert!(checked > 100);
}

#[test]
fn qubit_eigenvalues_within_two_hundredths() {
    let rho = DensityMatrix::diagonal(&[0.7, 0.3]).unwrap();
    let good = (0..100u64)
        .filter(|&seed| {
            let est = estimate_purity_end_to_end(&rho, 200_000, Policy::EqualMeasurements, seed).unwrap();
            max_error(&est.spectrum, &[0.7, 0.3]) <= 0.02
        })
        .count();
    assert!(good >= 95, "{good} of 100");
}

#[test]
fn maximally_mixed_qutrit_purity_within_two_hundredths() {
    let rho = DensityMatrix::maximally_mixed(3);
    let good = (0..100u64)
        .filter(|&seed| match estimate_purity_end_to_end(&rho, 1_000_000, Policy::EqualMeasurements, seed) {
            Ok(est) => (est.purity - 1.0 / 3.0).abs() <= 0.02,
            Err(_) => false,
        })
        .count();
    assert!(good >= 95, "{good} of 100");
}

#[test]
fn median_error_shrinks_as_budget_doubles() {
    let rho = DensityMatrix::diagonal(&[0.7, 0.3]).unwrap();
    let mut budget = 10_000u64;
    let mut previous = f64::INFINITY;
    while budget <= 1_000_000 {
        let errors = (0..100u64)
            .map(|seed| {
                let est = estimate_purity_end_to_end(&rho, budget, Policy::EqualMeasurements, seed).unwrap();
                max_error(&est.spectrum, &[0.7, 0.3])
            })
            .collect();
        let med = median(errors);
        assert!(med <= previous, "median {med} at N={budget} exceeds {previous}");
        previous = med;
        budget *= 2;
    }
}

#[test]
fn estimates_are_bitwise_reproducible() {
    let rho = DensityMatrix::diagonal(&[0.5, 0.3, 0.2]).unwrap();
    for policy in [Policy::EqualMeasurements, Policy::EqualCopies] {
        let a = estimate_purity_end_to_end(&rho, 300_000, policy, 99).unwrap();
        let b = estimate_purity_end_to_end(&rho, 300_000, policy, 99).unwrap();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
        let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let c = pool.install(|| estimate_purity_end_to_end(&rho, 300_000, policy, 99).unwrap());
        assert_eq!(a, c);
    }
}

#[test]
fn pure_qubit_purity_is_exactly_one() {
    let rho = DensityMatrix::diagonal(&[1.0, 0.0]).unwrap();
    for seed in 0..10 {
        let est = estimate_purity_end_to_end(&rho, 10_000, Policy::EqualMeasurements, seed).unwrap();
        assert_eq!(est.purity, 1.0);
    }
}

#[test]
fn purity_bounds_hold_for_simulated_runs() {
    for (truth, budget) in [(vec![0.4, 0.35, 0.25], 50_000u64), (vec![0.6, 0.2, 0.1, 0.1], 200_000)] {
        let m = truth.len();
        let rho = DensityMatrix::diagonal(&truth).unwrap();
        for seed in 0..30 {
            if let Ok(est) = estimate_purity_end_to_end(&rho, budget, Policy::EqualCopies, seed) {
                assert!(est.purity >= 1.0 / m as f64 - 1e-6 && est.purity <= 1.0 + 1e-6);
            }
        }
    }
}
