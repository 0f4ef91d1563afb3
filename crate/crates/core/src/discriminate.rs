//! Pure-versus-mixed discrimination with the measurement
//! `{Π_0 = Φ(sym), Π_1 = I - Φ(sym)}` on `n` copies.
//!
//! The same pair of operators serves both strategies; only the reading of
//! outcome `0` differs. In unambiguous mode it is inconclusive, in
//! maximum-confidence mode it announces "pure". Outcome `1` always means
//! mixed, and never fires on a pure state.

use std::fmt;

use num_traits::ToPrimitive;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qstate::{binomial, eigenvalues, tensor_power, ComplexMatrix, DensityMatrix, SizeCap, Spectrum, STRICT_TOLERANCE};
use crate::symgroup::{antisymmetric_complement, symmetric_projector};
use crate::sympoly::complete_h;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Unambiguous,
    #[serde(rename = "maxconf")]
    MaxConfidence,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Unambiguous => "unambiguous",
            Mode::MaxConfidence => "maxconf",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Meaning {
    Inconclusive,
    Pure,
    Mixed,
}

impl fmt::Display for Meaning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Meaning::Inconclusive => "inconclusive",
            Meaning::Pure => "pure",
            Meaning::Mixed => "mixed",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutcomeLabel {
    pub raw: u8,
    pub meaning: Meaning,
}

impl Mode {
    pub fn label(self, raw: u8) -> Result<OutcomeLabel> {
        let meaning = match (self, raw) {
            (Mode::Unambiguous, 0) => Meaning::Inconclusive,
            (Mode::MaxConfidence, 0) => Meaning::Pure,
            (_, 1) => Meaning::Mixed,
            _ => return Err(Error::InvalidArgument(format!("no outcome {raw}; outcomes are 0 and 1"))),
        };
        Ok(OutcomeLabel { raw, meaning })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiscriminationPovm {
    pub copies: usize,
    pub dim: usize,
    pub pi0: ComplexMatrix,
    pub pi1: ComplexMatrix,
    pub mode: Mode,
}

impl DiscriminationPovm {
    /// `Tr(ρ^{⊗n} Π_0)` computed from the explicit operators.
    pub fn prob_outcome0(&self, rho: &DensityMatrix, cap: SizeCap) -> Result<f64> {
        if rho.dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: rho.dim() });
        }
        let state = tensor_power(rho, self.copies, cap)?;
        Ok(state.trace_product(&self.pi0)?.re)
    }
}

/// Builds the measurement; the operators do not depend on `mode`.
pub fn build_povm(m: usize, n: usize, mode: Mode, cap: SizeCap) -> Result<DiscriminationPovm> {
    let pi0 = symmetric_projector(m, n, cap)?;
    let pi1 = antisymmetric_complement(&pi0)?;
    Ok(DiscriminationPovm { copies: n, dim: m, pi0, pi1, mode })
}

/// Probability of outcome `0` on `n` copies, `h_n(λ_1, ..., λ_m)`.
pub fn prob_outcome0_spectrum(spectrum: &Spectrum, n: usize) -> f64 {
    complete_h(n, spectrum.values()).clamp(0.0, 1.0)
}

pub fn prob_outcome0(rho: &DensityMatrix, n: usize) -> Result<f64> {
    Ok(prob_outcome0_spectrum(&eigenvalues(rho)?, n))
}

/// Both routes to `p_0`: spectral and `Tr(ρ^{⊗n} Π_0)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DualPath {
    pub spectral: f64,
    pub projector: f64,
}

impl DualPath {
    pub fn residual(&self) -> f64 {
        (self.spectral - self.projector).abs()
    }
}

pub fn prob_outcome0_dual(rho: &DensityMatrix, n: usize, cap: SizeCap) -> Result<DualPath> {
    let spectral = prob_outcome0(rho, n)?;
    let projector = build_povm(rho.dim(), n, Mode::MaxConfidence, cap)?.prob_outcome0(rho, cap)?;
    Ok(DualPath { spectral, projector })
}

/// `C(n+m-1, n) (λ*)^n`, an upper bound on `p_0(n)`.
pub fn decay_bound_spectrum(spectrum: &Spectrum, n: usize) -> f64 {
    let m = spectrum.dim() as u64;
    let count = binomial(n as u64 + m - 1, n as u64).to_f64().unwrap_or(f64::INFINITY);
    count * spectrum.max_eigenvalue().powi(n as i32)
}

pub fn decay_bound(rho: &DensityMatrix, n: usize) -> Result<f64> {
    Ok(decay_bound_spectrum(&eigenvalues(rho)?, n))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleReport {
    pub shots: u64,
    pub count0: u64,
    pub count1: u64,
    pub seed: u64,
    pub mode: Mode,
}

impl SampleReport {
    pub fn label0(&self) -> Meaning {
        self.mode.label(0).expect("0 is an outcome").meaning
    }
}

/// Shots per independent random substream.
pub const SHOTS_PER_CHUNK: u64 = 1 << 16;

/// splitmix64 finalizer; used to derive independent seeds.
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed ^ index.wrapping_add(1).wrapping_mul(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Number of `0` outcomes in `shots` independent trials with probability `p0`.
///
/// Shots are cut into fixed chunks of [`SHOTS_PER_CHUNK`]; chunk `c` draws
/// from ChaCha stream `c` of `seed`, so the count does not depend on how many
/// worker threads process the chunks.
pub fn sample_count0(p0: f64, shots: u64, seed: u64) -> u64 {
    let p0 = p0.clamp(0.0, 1.0);
    if p0 == 1.0 {
        return shots;
    }
    if p0 == 0.0 {
        return 0;
    }
    let chunks = shots.div_ceil(SHOTS_PER_CHUNK);
    (0..chunks)
        .into_par_iter()
        .map(|c| {
            let len = SHOTS_PER_CHUNK.min(shots - c * SHOTS_PER_CHUNK);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(c);
            Binomial::new(len, p0).expect("p0 in [0, 1]").sample(&mut rng)
        })
        .sum()
}

/// Simulates `shots` runs of the measurement on `n` fresh copies each.
pub fn sample_spectrum(spectrum: &Spectrum, n: usize, shots: u64, seed: u64, mode: Mode) -> Result<SampleReport> {
    if shots == 0 {
        return Err(Error::InvalidArgument("shots must be at least 1".into()));
    }
    let count0 = sample_count0(prob_outcome0_spectrum(spectrum, n), shots, seed);
    Ok(SampleReport { shots, count0, count1: shots - count0, seed, mode })
}

pub fn sample(rho: &DensityMatrix, n: usize, shots: u64, seed: u64, mode: Mode) -> Result<SampleReport> {
    sample_spectrum(&eigenvalues(rho)?, n, shots, seed, mode)
}

/// `μ(ρ)`, a unitarily invariant purity functional.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PurityFunctional {
    /// `Tr(ρ²) = Σ λ_i²`.
    #[default]
    TraceSquare,
}

impl PurityFunctional {
    pub fn evaluate(self, spectrum: &Spectrum) -> f64 {
        match self {
            PurityFunctional::TraceSquare => spectrum.values().iter().map(|x| x * x).sum(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct EnsembleEntry {
    pub state: DensityMatrix,
    pub weight: f64,
    pub is_pure: bool,
    spectrum: Spectrum,
}

/// A finite prior over states, each tagged pure or mixed.
#[derive(Debug, Clone)]
pub struct PriorEnsemble {
    entries: Vec<EnsembleEntry>,
}

impl PriorEnsemble {
    /// Weights must be positive and sum to one; each `is_pure` flag must agree
    /// with the state's second eigenvalue being at most `1e-9`.
    pub fn new(entries: Vec<(DensityMatrix, f64, bool)>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidEnsemble("no entries".into()));
        }
        let total: f64 = entries.iter().map(|e| e.1).sum();
        if (total - 1.0).abs() > STRICT_TOLERANCE {
            return Err(Error::InvalidEnsemble(format!("weights sum to {total}")));
        }
        let mut out = Vec::with_capacity(entries.len());
        for (i, (state, weight, is_pure)) in entries.into_iter().enumerate() {
            if weight.is_nan() || weight <= 0.0 {
                return Err(Error::InvalidEnsemble(format!("entry {i} has non-positive weight {weight}")));
            }
            let spectrum = eigenvalues(&state)?;
            if spectrum.is_pure(STRICT_TOLERANCE) != is_pure {
                return Err(Error::InvalidEnsemble(format!(
                    "entry {i} is flagged {} but has spectrum {:?}",
                    if is_pure { "pure" } else { "mixed" },
                    spectrum.values()
                )));
            }
            out.push(EnsembleEntry { state, weight, is_pure, spectrum });
        }
        Ok(PriorEnsemble { entries: out })
    }

    pub fn entries(&self) -> &[EnsembleEntry] {
        &self.entries
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Posterior {
    /// `P(pure | outcome 0)`, `None` when outcome 0 cannot occur.
    pub pure_given_0: Option<f64>,
    /// `P(mixed | outcome 1)`, `None` when outcome 1 cannot occur.
    pub mixed_given_1: Option<f64>,
}

impl Posterior {
    pub fn pure_given_0(&self) -> Result<f64> {
        self.pure_given_0.ok_or(Error::UndefinedPosterior { outcome: 0 })
    }

    pub fn mixed_given_1(&self) -> Result<f64> {
        self.mixed_given_1.ok_or(Error::UndefinedPosterior { outcome: 1 })
    }
}

/// Posterior confidence in each announced label on `n` copies.
///
/// Entries flagged pure are evaluated as exact rank-one states, so they never
/// produce outcome 1 and `P(mixed | 1)` is exactly one whenever defined.
pub fn posterior_confidence(ensemble: &PriorEnsemble, n: usize) -> Posterior {
    let (mut pure0, mut all0, mut mixed1, mut all1) = (0.0, 0.0, 0.0, 0.0);
    for e in &ensemble.entries {
        let p0 = if e.is_pure { 1.0 } else { prob_outcome0_spectrum(&e.spectrum, n) };
        let p1 = 1.0 - p0;
        all0 += e.weight * p0;
        all1 += e.weight * p1;
        if e.is_pure {
            pure0 += e.weight * p0;
        } else {
            mixed1 += e.weight * p1;
        }
    }
    Posterior {
        pure_given_0: (all0 > 0.0).then(|| pure0 / all0),
        mixed_given_1: (all1 > 0.0).then(|| mixed1 / all1),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qstate::random;
    use rand_chacha::ChaCha8Rng;

    const CAP: SizeCap = SizeCap(4096);

    fn rank_of(m: &ComplexMatrix) -> f64 {
        m.trace().re
    }

    #[test]
    fn povm_examples() {
        let p = build_povm(2, 2, Mode::Unambiguous, CAP).unwrap();
        assert!((rank_of(&p.pi0) - 3.0).abs() < 1e-12 && (rank_of(&p.pi1) - 1.0).abs() < 1e-12);
        let p = build_povm(2, 1, Mode::MaxConfidence, CAP).unwrap();
        assert_eq!(p.pi0, ComplexMatrix::identity(2));
        assert_eq!(p.pi1.max_abs(), 0.0);
        let p = build_povm(3, 2, Mode::MaxConfidence, CAP).unwrap();
        assert!((rank_of(&p.pi0) - 6.0).abs() < 1e-12 && (rank_of(&p.pi1) - 3.0).abs() < 1e-12);
    }

    #[test]
    fn modes_share_operators() {
        for (m, n) in [(2, 2), (2, 3), (3, 3)] {
            let a = build_povm(m, n, Mode::Unambiguous, CAP).unwrap();
            let b = build_povm(m, n, Mode::MaxConfidence, CAP).unwrap();
            assert_eq!(a.pi0, b.pi0);
            assert_eq!(a.pi1, b.pi1);
            assert!((&a.pi0 + &a.pi1).max_abs_diff(&ComplexMatrix::identity(a.pi0.rows())) < 1e-12);
        }
    }

    #[test]
    fn labels() {
        assert_eq!(Mode::Unambiguous.label(0).unwrap().meaning, Meaning::Inconclusive);
        assert_eq!(Mode::MaxConfidence.label(0).unwrap().meaning, Meaning::Pure);
        assert_eq!(Mode::Unambiguous.label(1).unwrap().meaning, Meaning::Mixed);
        assert_eq!(Mode::MaxConfidence.label(1).unwrap().meaning, Meaning::Mixed);
        assert!(Mode::MaxConfidence.label(2).is_err());
    }

    #[test]
    fn outcome0_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let pure = DensityMatrix::pure(&random::random_pure_state(&mut rng, 3));
        for n in 1..6 {
            assert!((prob_outcome0(&pure, n).unwrap() - 1.0).abs() < 1e-9);
        }
        let half = DensityMatrix::maximally_mixed(2);
        assert!((prob_outcome0(&half, 2).unwrap() - 0.75).abs() < 1e-12);
        assert!((prob_outcome0(&half, 3).unwrap() - 0.5).abs() < 1e-12);
        let dual = prob_outcome0_dual(&half, 3, CAP).unwrap();
        assert!(dual.residual() < 1e-12);
    }

    #[test]
    fn decay_bound_examples() {
        let half = DensityMatrix::maximally_mixed(2);
        assert!((decay_bound(&half, 2).unwrap() - 0.75).abs() < 1e-12);
        assert!((decay_bound_spectrum(&Spectrum::pure(2), 5) - 6.0).abs() < 1e-12);
        let s = Spectrum::new(vec![0.7, 0.3]).unwrap();
        let expected = 11.0 * 0.7f64.powi(10);
        assert!((decay_bound_spectrum(&s, 10) - expected).abs() < 1e-12);
        assert!((expected - 0.3107).abs() < 1e-4);
    }

    #[test]
    fn sampler_edge_cases() {
        let pure = Spectrum::pure(2);
        let r = sample_spectrum(&pure, 3, 1000, 5, Mode::Unambiguous).unwrap();
        assert_eq!((r.count0, r.count1), (1000, 0));
        assert_eq!(r.label0(), Meaning::Inconclusive);
        let r = sample(&DensityMatrix::diagonal(&[1.0, 0.0]).unwrap(), 4, 777, 9, Mode::MaxConfidence).unwrap();
        assert_eq!(r.count1, 0);
        assert!(sample_spectrum(&pure, 1, 0, 0, Mode::Unambiguous).is_err());
    }

    #[test]
    fn sampler_is_deterministic_across_thread_counts() {
        let s = Spectrum::uniform(2);
        let shots = 5 * SHOTS_PER_CHUNK + 123;
        let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let four = rayon::ThreadPoolBuilder::new().num_threads(4).build().unwrap();
        let a = one.install(|| sample_spectrum(&s, 2, shots, 42, Mode::MaxConfidence).unwrap());
        let b = four.install(|| sample_spectrum(&s, 2, shots, 42, Mode::MaxConfidence).unwrap());
        assert_eq!(a, b);
        let c = sample_spectrum(&s, 2, shots, 43, Mode::MaxConfidence).unwrap();
        assert_ne!(a.count0, c.count0);
    }

    /// ±3.16σ around 0.75 at 10^5 shots; at most 1% of seeds may fall outside.
    #[test]
    fn sampler_frequency_interval() {
        let s = Spectrum::uniform(2);
        let inside = (0..200u64)
            .filter(|&seed| {
                let r = sample_spectrum(&s, 2, 100_000, seed, Mode::MaxConfidence).unwrap();
                let f = r.count0 as f64 / 1e5;
                (0.7457..=0.7543).contains(&f)
            })
            .count();
        assert!(inside >= 198, "{inside} of 200 inside");
    }

    #[test]
    fn posterior_examples() {
        let pure = DensityMatrix::diagonal(&[1.0, 0.0]).unwrap();
        let half = DensityMatrix::maximally_mixed(2);
        let ens = PriorEnsemble::new(vec![(pure.clone(), 0.5, true), (half, 0.5, false)]).unwrap();
        let post = posterior_confidence(&ens, 2);
        assert!((post.pure_given_0().unwrap() - 4.0 / 7.0).abs() < 1e-12);
        assert_eq!(post.mixed_given_1().unwrap(), 1.0);

        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let other = DensityMatrix::pure(&random::random_pure_state(&mut rng, 2));
        let ens = PriorEnsemble::new(vec![(pure, 0.3, true), (other, 0.7, true)]).unwrap();
        let post = posterior_confidence(&ens, 2);
        assert_eq!(post.pure_given_0().unwrap(), 1.0);
        assert_eq!(post.mixed_given_1(), Err(Error::UndefinedPosterior { outcome: 1 }));

        let ens = PriorEnsemble::new(vec![(DensityMatrix::diagonal(&[0.7, 0.3]).unwrap(), 1.0, false)]).unwrap();
        assert_eq!(posterior_confidence(&ens, 2).pure_given_0().unwrap(), 0.0);
    }

    #[test]
    fn ensemble_validation() {
        let half = DensityMatrix::maximally_mixed(2);
        assert!(PriorEnsemble::new(vec![(half.clone(), 0.5, false)]).is_err());
        assert!(PriorEnsemble::new(vec![(half.clone(), 1.0, true)]).is_err());
        assert!(PriorEnsemble::new(vec![(half.clone(), 1.5, false), (half, -0.5, false)]).is_err());
    }

    #[test]
    fn purity_functional() {
        let f = PurityFunctional::TraceSquare;
        assert_eq!(f.evaluate(&Spectrum::pure(3)), 1.0);
        assert!((f.evaluate(&Spectrum::uniform(4)) - 0.25).abs() < 1e-15);
        assert!((f.evaluate(&Spectrum::new(vec![0.7, 0.3]).unwrap()) - 0.58).abs() < 1e-15);
    }
}
