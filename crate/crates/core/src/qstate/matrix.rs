//! Dense row-major complex matrices.
//!
//! Everything in this crate lives at desk scale (at most a few thousand rows),
//! so a flat `Vec<Complex64>` with straightforward loops is all we need.

use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Default cap on the row count of any explicitly materialized operator.
pub const DEFAULT_MAX_DIM: usize = 4096;

/// Upper bound on the dimension of `m^n`-sized operators we are willing to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SizeCap(pub usize);

impl Default for SizeCap {
    fn default() -> Self {
        SizeCap(DEFAULT_MAX_DIM)
    }
}

impl SizeCap {
    /// Returns `m^n` if it fits under the cap.
    pub fn check_power(self, m: usize, n: usize) -> Result<usize> {
        let mut dim: usize = 1;
        for _ in 0..n {
            dim = dim.checked_mul(m).ok_or(Error::SizeCapExceeded {
                requested: usize::MAX,
                cap: self.0,
            })?;
            if dim > self.0 {
                return Err(Error::SizeCapExceeded { requested: m.saturating_pow(n as u32), cap: self.0 });
            }
        }
        Ok(dim)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ComplexMatrix { rows, cols, data: vec![Complex64::new(0.0, 0.0); rows * cols] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut out = Self::zeros(dim, dim);
        for i in 0..dim {
            out[(i, i)] = Complex64::new(1.0, 0.0);
        }
        out
    }

    /// Builds a matrix from row-major entries.
    pub fn from_row_major(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch { expected: rows * cols, found: data.len() });
        }
        Ok(ComplexMatrix { rows, cols, data })
    }

    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(n_rows * n_cols);
        for row in rows {
            if row.len() != n_cols {
                return Err(Error::DimensionMismatch { expected: n_cols, found: row.len() });
            }
            data.extend(row.iter().map(|&x| Complex64::new(x, 0.0)));
        }
        Ok(ComplexMatrix { rows: n_rows, cols: n_cols, data })
    }

    pub fn from_diagonal(diag: &[f64]) -> Self {
        let mut out = Self::zeros(diag.len(), diag.len());
        for (i, &d) in diag.iter().enumerate() {
            out[(i, i)] = Complex64::new(d, 0.0);
        }
        out
    }

    /// The rank-one operator `|v><v|`.
    pub fn outer(v: &[Complex64]) -> Self {
        let n = v.len();
        let mut out = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] = v[i] * v[j].conj();
            }
        }
        out
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&z| z * factor).collect(),
        }
    }

    pub fn scale_real(&self, factor: f64) -> Self {
        self.scale(Complex64::new(factor, 0.0))
    }

    pub fn kron(&self, other: &ComplexMatrix) -> Self {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..self.rows {
            for k in 0..other.rows {
                for j in 0..self.cols {
                    let a = self[(i, j)];
                    data.extend(other.row(k).iter().map(|&b| a * b));
                }
            }
        }
        ComplexMatrix { rows, cols, data }
    }

    pub fn matmul(&self, other: &ComplexMatrix) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, found: other.rows });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            let out_row = &mut out.data[i * other.cols..(i + 1) * other.cols];
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                for (o, &b) in out_row.iter_mut().zip(other.row(k)) {
                    *o += a * b;
                }
            }
        }
        Ok(out)
    }

    pub fn mat_vec(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, found: v.len() });
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(&a, &b)| a * b).sum())
            .collect())
    }

    /// `Tr(self · other)` without forming the product.
    pub fn trace_product(&self, other: &ComplexMatrix) -> Result<Complex64> {
        if self.cols != other.rows || self.rows != other.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, found: other.rows });
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..self.rows {
            for j in 0..self.cols {
                acc += self[(i, j)] * other[(j, i)];
            }
        }
        Ok(acc)
    }

    /// `<v| self |v>`.
    pub fn expectation(&self, v: &[Complex64]) -> Result<Complex64> {
        let av = self.mat_vec(v)?;
        Ok(v.iter().zip(&av).map(|(a, b)| a.conj() * b).sum())
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest entrywise modulus of `self - other`; infinite on shape mismatch.
    pub fn max_abs_diff(&self, other: &ComplexMatrix) -> f64 {
        if self.rows != other.rows || self.cols != other.cols {
            return f64::INFINITY;
        }
        self.data.iter().zip(&other.data).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    /// `max |A[i,j] - conj(A[j,i])|`.
    pub fn hermitian_residual(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let mut worst: f64 = 0.0;
        for i in 0..self.rows {
            for j in i..self.cols {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    /// `max |P·P - P|`.
    pub fn idempotent_residual(&self) -> f64 {
        match self.matmul(self) {
            Ok(sq) => sq.max_abs_diff(self),
            Err(_) => f64::INFINITY,
        }
    }

    pub(crate) fn to_nalgebra(&self) -> nalgebra::DMatrix<Complex64> {
        nalgebra::DMatrix::from_row_slice(self.rows, self.cols, &self.data)
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch in add");
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch in sub");
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.matmul(rhs).expect("shape mismatch in mul")
    }
}
