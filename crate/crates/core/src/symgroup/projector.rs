use std::collections::HashMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::qstate::{tensor_power, ComplexMatrix, DensityMatrix, SizeCap, Spectrum};
use crate::sympoly::schur_poly;

use super::character::character;
use super::diagram::{partitions, YoungDiagram};
use super::permutation::{basis_action, Permutation};

/// `Σ_σ coeff(σ) V_σ`, accumulated directly from each permutation's basis action.
fn permutation_sum(m: usize, n: usize, cap: SizeCap, mut coeff: impl FnMut(&Permutation) -> f64) -> Result<ComplexMatrix> {
    let dim = cap.check_power(m, n)?;
    let mut acc = vec![0.0f64; dim * dim];
    for sigma in Permutation::all(n) {
        let c = coeff(&sigma);
        if c == 0.0 {
            continue;
        }
        for (input, output) in basis_action(&sigma, m, dim).into_iter().enumerate() {
            acc[output * dim + input] += c;
        }
    }
    ComplexMatrix::from_row_major(dim, dim, acc.into_iter().map(Into::into).collect())
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

/// `Φ(H^{⊗n}_sym) = (1/n!) Σ_σ V_σ`.
pub fn symmetric_projector(m: usize, n: usize, cap: SizeCap) -> Result<ComplexMatrix> {
    let weight = 1.0 / factorial(n);
    permutation_sum(m, n, cap, |_| weight)
}

/// `I - P` for a projector `P`.
pub fn antisymmetric_complement(p_sym: &ComplexMatrix) -> Result<ComplexMatrix> {
    if !p_sym.is_square() {
        return Err(Error::NotSquare { rows: p_sym.rows(), cols: p_sym.cols() });
    }
    Ok(&ComplexMatrix::identity(p_sym.rows()) - p_sym)
}

/// Central projector `(f^λ / n!) Σ_σ χ^λ(σ) V_σ` onto the sum of all
/// subspaces of `(C^m)^{⊗n}` carrying the `S_n` irrep labelled by `shape`.
///
/// Shapes with more rows than `m` give the zero operator.
pub fn isotypic_projector(shape: &YoungDiagram, m: usize, cap: SizeCap) -> Result<ComplexMatrix> {
    let n = shape.size();
    let dim = cap.check_power(m, n)?;
    if shape.rows() > m {
        return Ok(ComplexMatrix::zeros(dim, dim));
    }
    let weight = shape.standard_tableaux_count() as f64 / factorial(n);
    let mut class_values: HashMap<YoungDiagram, f64> = HashMap::new();
    permutation_sum(m, n, cap, |sigma| {
        let class = sigma.cycle_type();
        *class_values
            .entry(class)
            .or_insert_with_key(|c| weight * character(shape, c).expect("same n") as f64)
    })
}

/// A labelled family of orthogonal projectors.
#[derive(Debug, Clone)]
pub struct ProjectorSet {
    pub labels: Vec<String>,
    pub operators: Vec<ComplexMatrix>,
}

/// Worst-case residuals of the projector-set invariants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProjectorResiduals {
    pub hermitian: f64,
    pub idempotent: f64,
    pub orthogonality: f64,
    pub completeness: f64,
}

impl ProjectorResiduals {
    pub fn max(&self) -> f64 {
        self.hermitian.max(self.idempotent).max(self.orthogonality).max(self.completeness)
    }
}

impl ProjectorSet {
    pub fn dim(&self) -> usize {
        self.operators.first().map_or(0, ComplexMatrix::rows)
    }

    pub fn residuals(&self) -> ProjectorResiduals {
        let dim = self.dim();
        let mut sum = ComplexMatrix::zeros(dim, dim);
        let mut res = ProjectorResiduals { hermitian: 0.0, idempotent: 0.0, orthogonality: 0.0, completeness: 0.0 };
        for (i, p) in self.operators.iter().enumerate() {
            res.hermitian = res.hermitian.max(p.hermitian_residual());
            res.idempotent = res.idempotent.max(p.idempotent_residual());
            for q in &self.operators[i + 1..] {
                res.orthogonality = res.orthogonality.max((p * q).max_abs());
            }
            sum = &sum + p;
        }
        res.completeness = sum.max_abs_diff(&ComplexMatrix::identity(dim));
        res
    }

    /// `Tr(Π_i ρ)` for each operator.
    pub fn probabilities(&self, state: &ComplexMatrix) -> Result<Vec<f64>> {
        self.operators.iter().map(|p| Ok(p.trace_product(state)?.re)).collect()
    }
}

/// Isotypic projectors for every shape of `n` with at most `m` rows.
pub fn isotypic_decomposition(m: usize, n: usize, cap: SizeCap) -> Result<ProjectorSet> {
    cap.check_power(m, n)?;
    let shapes = partitions(n, m);
    let operators = shapes
        .par_iter()
        .map(|shape| isotypic_projector(shape, m, cap))
        .collect::<Result<Vec<_>>>()?;
    Ok(ProjectorSet { labels: shapes.iter().map(ToString::to_string).collect(), operators })
}

/// The semi-unambiguous rank measurement `{Π_1, ..., Π_m}` on `n` copies:
/// `Π_i` sums the isotypic projectors of every shape with exactly `i` rows.
pub fn rank_povm(m: usize, n: usize, cap: SizeCap) -> Result<ProjectorSet> {
    let iso = isotypic_decomposition(m, n, cap)?;
    let dim = iso.dim();
    let shapes = partitions(n, m);
    let mut operators = vec![ComplexMatrix::zeros(dim, dim); m];
    for (shape, p) in shapes.iter().zip(&iso.operators) {
        operators[shape.rows() - 1] = &operators[shape.rows() - 1] + p;
    }
    Ok(ProjectorSet { labels: (1..=m).map(|i| format!("rank>={i}")).collect(), operators })
}

/// `p_i = Tr(Π_i ρ^{⊗n})` from explicitly built projectors.
pub fn rank_outcome_probs(rho: &DensityMatrix, n: usize, cap: SizeCap) -> Result<Vec<f64>> {
    let povm = rank_povm(rho.dim(), n, cap)?;
    let state = tensor_power(rho, n, cap)?;
    povm.probabilities(&state)
}

/// Same probabilities from the spectrum alone:
/// `p_i = Σ_{h(λ) = i} f^λ s_λ(spectrum)`.
pub fn rank_outcome_probs_spectral(spectrum: &Spectrum, n: usize) -> Vec<f64> {
    let m = spectrum.dim();
    let mut probs = vec![0.0; m];
    for shape in partitions(n, m) {
        probs[shape.rows() - 1] += shape.standard_tableaux_count() as f64 * schur_poly(&shape, spectrum.values());
    }
    probs
}
