//! All-roots solver for characteristic polynomials and the projection of the
//! roots onto a probability spectrum.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::CharPoly;
use crate::error::{Error, Result};
use crate::qstate::Spectrum;

/// Default bound on the imaginary part of any root before the polynomial is
/// declared inconsistent with a real spectrum.
pub const DEFAULT_MAX_IMAG: f64 = 0.2;

const MAX_RESIDUAL: f64 = 1e-8;
const MAX_ITERATIONS: usize = 2000;
// Roots closer than this are one cluster even when all of them are real.
const REAL_LINK_TOLERANCE: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootPolicy {
    pub max_imag: f64,
}

impl Default for RootPolicy {
    fn default() -> Self {
        RootPolicy { max_imag: DEFAULT_MAX_IMAG }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RootDiagnostics {
    /// Largest `|Im|` among the raw roots.
    pub max_imag: f64,
    /// Total probability moved by clamping cluster centres into `[0, 1]`.
    pub clamped_mass: f64,
    /// Largest `|p(z)|` over the raw roots of the monic polynomial.
    pub residual: f64,
    /// Raw roots as `[re, im]` pairs.
    pub roots: Vec<[f64; 2]>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RootSolution {
    pub spectrum: Spectrum,
    pub diagnostics: RootDiagnostics,
}

fn horner(coeffs: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &c in coeffs {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// Simultaneous Aberth–Ehrlich iteration on a monic polynomial.
fn aberth_roots(monic: &[f64]) -> Result<Vec<Complex64>> {
    let degree = monic.len() - 1;
    if degree == 1 {
        return Ok(vec![Complex64::new(-monic[1], 0.0)]);
    }
    // Cauchy bound on root moduli sets the starting circle.
    let radius = 1.0 + monic[1..].iter().fold(0.0f64, |acc, c| acc.max(c.abs()));
    let start = 0.5 * radius;
    let mut z: Vec<Complex64> = (0..degree)
        .map(|k| Complex64::from_polar(start, 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / degree as f64))
        .collect();

    for _ in 0..MAX_ITERATIONS {
        let mut largest_step: f64 = 0.0;
        for i in 0..degree {
            let (p, dp) = horner(monic, z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex64 = (0..degree).filter(|&j| j != i).map(|j| (z[i] - z[j]).inv()).sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if step.is_finite() {
                z[i] -= step;
                largest_step = largest_step.max(step.norm() / (1.0 + z[i].norm()));
            } else {
                // derivative vanished; nudge off the critical point
                z[i] += Complex64::new(1e-6, 1e-6);
                largest_step = f64::INFINITY;
            }
        }
        if largest_step <= 4.0 * f64::EPSILON {
            break;
        }
    }
    Ok(z)
}

/// Groups roots that stand for one degenerate real root: two roots are linked
/// when their real parts differ by at most twice the larger imaginary part
/// (so a conjugate pair always links, and pulls in nearby real roots) plus
/// [`REAL_LINK_TOLERANCE`].
fn cluster_centres(roots: &[Complex64]) -> Vec<(f64, usize, f64)> {
    let n = roots.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for i in 0..n {
        for j in i + 1..n {
            let reach = 2.0 * roots[i].im.abs().max(roots[j].im.abs()) + REAL_LINK_TOLERANCE;
            if (roots[i].re - roots[j].re).abs() <= reach {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            }
        }
    }
    let mut sums: Vec<(f64, usize)> = vec![(0.0, 0); n];
    for (i, z) in roots.iter().enumerate() {
        let r = find(&mut parent, i);
        sums[r].0 += z.re;
        sums[r].1 += 1;
    }
    let mut spread: Vec<f64> = vec![0.0; n];
    for (i, z) in roots.iter().enumerate() {
        let r = find(&mut parent, i);
        let centre = sums[r].0 / sums[r].1 as f64;
        spread[r] = spread[r].max((z - centre).norm());
    }
    sums.into_iter()
        .zip(spread)
        .filter(|&((_, count), _)| count > 0)
        .map(|((s, count), spread)| (s / count as f64, count, spread))
        .collect()
}

/// Coefficients of the `order`-th derivative, highest degree first.
fn derivative(coeffs: &[f64], order: usize) -> Vec<f64> {
    let degree = coeffs.len() - 1;
    coeffs[..=degree - order]
        .iter()
        .enumerate()
        .map(|(i, &c)| {
            let power = degree - i;
            c * ((power - order + 1)..=power).map(|f| f as f64).product::<f64>()
        })
        .collect()
}

/// A root of multiplicity `c` is a simple root of the `(c-1)`-th derivative,
/// so Newton on that derivative sharpens a cluster centre. The refined value
/// is kept only if it stays within the cluster.
fn refine_centre(monic: &[f64], centre: f64, count: usize, spread: f64) -> f64 {
    if count < 2 {
        return centre;
    }
    let d = derivative(monic, count - 1);
    let mut x = centre;
    for _ in 0..50 {
        let (p, dp) = horner(&d, Complex64::new(x, 0.0));
        if dp.re == 0.0 {
            break;
        }
        let step = p.re / dp.re;
        x -= step;
        if step.abs() <= f64::EPSILON * x.abs().max(1.0) {
            break;
        }
    }
    if x.is_finite() && (x - centre).abs() <= spread + REAL_LINK_TOLERANCE {
        x
    } else {
        centre
    }
}

/// Roots of the characteristic polynomial as a spectrum, with default policy.
pub fn solve_spectrum(p: &CharPoly) -> Result<Spectrum> {
    solve_spectrum_with(p, &RootPolicy::default()).map(|s| s.spectrum)
}

/// Finds every root, then maps them to a probability spectrum:
///
/// 1. any root with `|Im| > policy.max_imag` is an error;
/// 2. near-degenerate clusters (see `cluster_centres`) are replaced by one
///    real centre, repeated with the cluster's multiplicity;
/// 3. centres are clamped into `[0, 1]`, renormalized, and sorted descending.
pub fn solve_spectrum_with(p: &CharPoly, policy: &RootPolicy) -> Result<RootSolution> {
    let degree = p.degree();
    if degree == 0 {
        return Err(Error::InvalidArgument("constant polynomial has no roots".into()));
    }
    let lead = p.coefficients()[0];
    let monic: Vec<f64> = p.coefficients().iter().map(|c| c / lead).collect();
    if monic.iter().any(|c| !c.is_finite()) {
        return Err(Error::InvalidArgument("non-finite coefficient".into()));
    }

    let roots = aberth_roots(&monic)?;
    let residual = roots.iter().map(|&z| horner(&monic, z).0.norm()).fold(0.0, f64::max);
    if residual.is_nan() || residual > MAX_RESIDUAL {
        return Err(Error::NoConvergence { residual });
    }
    let max_imag = roots.iter().map(|z| z.im.abs()).fold(0.0, f64::max);
    let mut diagnostics = RootDiagnostics {
        max_imag,
        clamped_mass: 0.0,
        residual,
        roots: roots.iter().map(|z| [z.re, z.im]).collect(),
    };
    if max_imag > policy.max_imag {
        return Err(Error::ComplexRoots { diagnostics });
    }

    let mut values = Vec::with_capacity(degree);
    for (centre, count, spread) in cluster_centres(&roots) {
        let centre = refine_centre(&monic, centre, count, spread);
        let clamped = centre.clamp(0.0, 1.0);
        diagnostics.clamped_mass += count as f64 * (clamped - centre).abs();
        values.extend(std::iter::repeat_n(clamped, count));
    }
    let total: f64 = values.iter().sum();
    if total <= 0.0 {
        return Err(Error::InvalidSpectrum("all roots clamp to zero".into()));
    }
    values.iter_mut().for_each(|x| *x /= total);
    let spectrum = Spectrum::new(values)?;
    Ok(RootSolution { spectrum, diagnostics })
}
