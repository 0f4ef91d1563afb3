use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::matrix::{ComplexMatrix, SizeCap};
use crate::error::{Error, Result};

/// Tolerance for algebraic identities and validated invariants.
pub const STRICT_TOLERANCE: f64 = 1e-9;
/// Tolerance for accepting noisy user-supplied input.
pub const INPUT_TOLERANCE: f64 = 1e-6;

/// A Hermitian, positive semidefinite, unit-trace operator.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    /// `diag(values)`; the values must form a valid spectrum.
    pub fn diagonal(values: &[f64]) -> Result<Self> {
        validate_density(ComplexMatrix::from_diagonal(values))
    }

    pub fn maximally_mixed(m: usize) -> Self {
        DensityMatrix { matrix: ComplexMatrix::identity(m).scale_real(1.0 / m as f64) }
    }

    pub fn pure(psi: &PureStateVector) -> Self {
        DensityMatrix { matrix: ComplexMatrix::outer(psi.amplitudes()) }
    }

    /// Accepts input at [`INPUT_TOLERANCE`], then symmetrizes and rescales the
    /// trace so the strict invariants hold for downstream algebra.
    pub fn from_noisy(raw: ComplexMatrix) -> Result<Self> {
        let checked = validate_density_with(raw, INPUT_TOLERANCE)?;
        let herm = (&checked.matrix + &checked.matrix.adjoint()).scale_real(0.5);
        let tr = herm.trace().re;
        Ok(DensityMatrix { matrix: herm.scale_real(1.0 / tr) })
    }

    /// `U ρ U†`.
    pub fn conjugate_by(&self, unitary: &ComplexMatrix) -> Result<Self> {
        let rotated = unitary.matmul(&self.matrix)?.matmul(&unitary.adjoint())?;
        validate_density(rotated)
    }
}

/// Eigenvalues of a density matrix, sorted descending.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct Spectrum {
    values: Vec<f64>,
}

impl Spectrum {
    /// Validates a probability vector: entries in `[0, 1]` and sum `1 ± 1e-9`.
    ///
    /// Entries within `1e-9` outside `[0, 1]` are clamped; the result is
    /// sorted descending.
    pub fn new(mut values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidSpectrum("empty spectrum".into()));
        }
        if let Some(bad) = values
            .iter()
            .find(|&&x| !(-STRICT_TOLERANCE..=1.0 + STRICT_TOLERANCE).contains(&x))
        {
            return Err(Error::InvalidSpectrum(format!("value {bad} outside [0, 1]")));
        }
        let sum: f64 = values.iter().sum();
        if (sum - 1.0).abs() > STRICT_TOLERANCE {
            return Err(Error::InvalidSpectrum(format!("values sum to {sum}, not 1")));
        }
        values.iter_mut().for_each(|x| *x = x.clamp(0.0, 1.0));
        values.sort_by(|a, b| b.total_cmp(a));
        Ok(Spectrum { values })
    }

    /// Clamp-and-renormalize policy applied to raw eigenvalues.
    ///
    /// Values are clamped to `[0, 1]`; if the clamped sum is within `1e-6` of
    /// one it is rescaled to exactly one.
    pub fn from_raw_eigenvalues(raw: &[f64]) -> Result<Self> {
        let mut values: Vec<f64> = raw.iter().map(|x| x.clamp(0.0, 1.0)).collect();
        let sum: f64 = values.iter().sum();
        if (sum - 1.0).abs() <= INPUT_TOLERANCE && sum > 0.0 {
            values.iter_mut().for_each(|x| *x /= sum);
        }
        Spectrum::new(values)
    }

    pub fn pure(m: usize) -> Self {
        let mut values = vec![0.0; m];
        values[0] = 1.0;
        Spectrum { values }
    }

    pub fn uniform(m: usize) -> Self {
        Spectrum { values: vec![1.0 / m as f64; m] }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn dim(&self) -> usize {
        self.values.len()
    }

    /// The largest eigenvalue λ*.
    pub fn max_eigenvalue(&self) -> f64 {
        self.values[0]
    }

    /// Number of eigenvalues above `tol`.
    pub fn rank(&self, tol: f64) -> usize {
        self.values.iter().filter(|&&x| x > tol).count()
    }

    pub fn is_pure(&self, tol: f64) -> bool {
        self.values.get(1).is_none_or(|&x| x <= tol)
    }
}

impl TryFrom<Vec<f64>> for Spectrum {
    type Error = Error;

    fn try_from(values: Vec<f64>) -> Result<Self> {
        Spectrum::new(values)
    }
}

impl From<Spectrum> for Vec<f64> {
    fn from(s: Spectrum) -> Vec<f64> {
        s.values
    }
}

/// A normalized state vector `|ψ>`.
#[derive(Debug, Clone, PartialEq)]
pub struct PureStateVector {
    amplitudes: Vec<Complex64>,
}

impl PureStateVector {
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        let norm = norm(&amplitudes);
        if amplitudes.is_empty() || (norm - 1.0).abs() > STRICT_TOLERANCE {
            return Err(Error::NotNormalized { norm });
        }
        Ok(PureStateVector { amplitudes })
    }

    /// Rescales a nonzero vector to unit norm.
    pub fn normalized(amplitudes: Vec<Complex64>) -> Result<Self> {
        let norm = norm(&amplitudes);
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::NotNormalized { norm });
        }
        Ok(PureStateVector { amplitudes: amplitudes.into_iter().map(|z| z / norm).collect() })
    }

    pub fn basis(m: usize, index: usize) -> Self {
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); m];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        PureStateVector { amplitudes }
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn inner(&self, other: &PureStateVector) -> Complex64 {
        self.amplitudes.iter().zip(&other.amplitudes).map(|(a, b)| a.conj() * b).sum()
    }

    /// `|v_1> ⊗ |v_2> ⊗ ... ⊗ |v_n>` as a flat amplitude vector.
    pub fn tensor_product(factors: &[PureStateVector]) -> Vec<Complex64> {
        factors.iter().fold(vec![Complex64::new(1.0, 0.0)], |acc, f| {
            acc.iter().flat_map(|&a| f.amplitudes.iter().map(move |&b| a * b)).collect()
        })
    }
}

fn norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Checks the three density-matrix invariants at [`STRICT_TOLERANCE`].
pub fn validate_density(raw: ComplexMatrix) -> Result<DensityMatrix> {
    validate_density_with(raw, STRICT_TOLERANCE)
}

pub fn validate_density_with(raw: ComplexMatrix, tolerance: f64) -> Result<DensityMatrix> {
    if !raw.is_square() || raw.rows() == 0 {
        return Err(Error::NotSquare { rows: raw.rows(), cols: raw.cols() });
    }
    let residual = raw.hermitian_residual();
    if residual > tolerance || !residual.is_finite() {
        return Err(Error::NotHermitian { residual, tolerance });
    }
    let tr = raw.trace();
    let residual = (tr - Complex64::new(1.0, 0.0)).norm();
    if residual > tolerance || !residual.is_finite() {
        return Err(Error::NotUnitTrace { residual, tolerance });
    }
    let min_eigenvalue = hermitian_eigenvalues(&raw)?.into_iter().fold(f64::INFINITY, f64::min);
    if min_eigenvalue < -tolerance {
        return Err(Error::NotPsd { min_eigenvalue, tolerance });
    }
    Ok(DensityMatrix { matrix: raw })
}

fn hermitian_eigenvalues(matrix: &ComplexMatrix) -> Result<Vec<f64>> {
    let eigen = nalgebra::SymmetricEigen::try_new(matrix.to_nalgebra(), f64::EPSILON, 10_000)
        .ok_or(Error::ConvergenceFailure)?;
    Ok(eigen.eigenvalues.iter().copied().collect())
}

/// Descending spectrum of `rho`, clamped to `[0, 1]` and renormalized.
pub fn eigenvalues(rho: &DensityMatrix) -> Result<Spectrum> {
    Spectrum::from_raw_eigenvalues(&hermitian_eigenvalues(rho.matrix())?)
}

/// The n-fold Kronecker power `ρ^{⊗n}`.
pub fn tensor_power(rho: &DensityMatrix, n: usize, cap: SizeCap) -> Result<ComplexMatrix> {
    if n == 0 {
        return Err(Error::InvalidArgument("tensor power needs n >= 1".into()));
    }
    cap.check_power(rho.dim(), n)?;
    let base = rho.matrix();
    Ok((1..n).fold(base.clone(), |acc, _| acc.kron(base)))
}

/// `G[i,j] = <v_i|v_j>`.
pub fn gram_matrix(vectors: &[PureStateVector]) -> Result<ComplexMatrix> {
    let k = vectors.len();
    if let Some(first) = vectors.first() {
        if let Some(bad) = vectors.iter().find(|v| v.dim() != first.dim()) {
            return Err(Error::DimensionMismatch { expected: first.dim(), found: bad.dim() });
        }
    }
    let mut g = ComplexMatrix::zeros(k, k);
    for i in 0..k {
        for j in 0..k {
            g[(i, j)] = vectors[i].inner(&vectors[j]);
        }
    }
    Ok(g)
}
