//! Complete homogeneous and elementary symmetric polynomials of a spectrum,
//! the identity linking them, and the characteristic polynomial whose roots
//! give the spectrum back.

mod roots;

use serde::{Deserialize, Serialize};

use crate::symgroup::YoungDiagram;

pub use roots::{solve_spectrum, solve_spectrum_with, RootDiagnostics, RootPolicy, RootSolution, DEFAULT_MAX_IMAG};

/// `h_0, ..., h_n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HSequence {
    values: Vec<f64>,
}

impl HSequence {
    /// `values[k]` is `h_k`; `h_0` must be 1.
    pub fn new(values: Vec<f64>) -> crate::Result<Self> {
        if values.first() != Some(&1.0) {
            return Err(crate::Error::InvalidArgument("an h-sequence starts with h_0 = 1".into()));
        }
        Ok(HSequence { values })
    }

    /// Exact `h_0..=h_order` of the given variables.
    pub fn from_variables(vars: &[f64], order: usize) -> Self {
        HSequence { values: complete_h_all(order, vars) }
    }

    pub fn order(&self) -> usize {
        self.values.len() - 1
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn get(&self, k: usize) -> Option<f64> {
        self.values.get(k).copied()
    }
}

/// `e_0, ..., e_m`; `e_r = 0` for `r > m`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ESequence {
    values: Vec<f64>,
}

impl ESequence {
    pub fn new(values: Vec<f64>) -> crate::Result<Self> {
        if values.first() != Some(&1.0) {
            return Err(crate::Error::InvalidArgument("an e-sequence starts with e_0 = 1".into()));
        }
        Ok(ESequence { values })
    }

    pub fn dim(&self) -> usize {
        self.values.len() - 1
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn get(&self, r: usize) -> f64 {
        self.values.get(r).copied().unwrap_or(0.0)
    }
}

/// Monic polynomial `Σ_j a_j x^{m-j}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CharPoly {
    coefficients: Vec<f64>,
}

impl CharPoly {
    /// `coefficients[j]` multiplies `x^{m-j}`.
    pub fn new(coefficients: Vec<f64>) -> crate::Result<Self> {
        match coefficients.first() {
            Some(&a0) if a0 != 0.0 && a0.is_finite() => Ok(CharPoly { coefficients }),
            _ => Err(crate::Error::InvalidArgument("leading coefficient must be nonzero".into())),
        }
    }

    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }
}

/// All of `h_0..=order` by the prefix recurrence
/// `h_t(x_1..x_j) = h_t(x_1..x_{j-1}) + x_j h_{t-1}(x_1..x_j)`.
pub fn complete_h_all(order: usize, vars: &[f64]) -> Vec<f64> {
    let mut h = vec![0.0; order + 1];
    h[0] = 1.0;
    for &x in vars {
        for t in 1..=order {
            h[t] += x * h[t - 1];
        }
    }
    h
}

/// `h_k`: the sum of all degree-`k` monomials in `vars`.
pub fn complete_h(k: usize, vars: &[f64]) -> f64 {
    complete_h_all(k, vars)[k]
}

/// `h_k` read off as the `t^k` coefficient of `Π_i 1/(1 - t x_i)`, by
/// multiplying truncated geometric series.
pub fn h_via_generating(k: usize, vars: &[f64]) -> f64 {
    let mut series = vec![0.0; k + 1];
    series[0] = 1.0;
    for &x in vars {
        let geometric: Vec<f64> = std::iter::successors(Some(1.0), |p| Some(p * x)).take(k + 1).collect();
        let mut next = vec![0.0; k + 1];
        for (i, &a) in series.iter().enumerate() {
            for (j, &g) in geometric.iter().take(k + 1 - i).enumerate() {
                next[i + j] += a * g;
            }
        }
        series = next;
    }
    series[k]
}

/// `e_k`: the sum over `k`-subsets of products, from `Π_i (1 + t x_i)`.
pub fn elementary_e(k: usize, vars: &[f64]) -> f64 {
    if k > vars.len() {
        return 0.0;
    }
    let mut e = vec![0.0; k + 1];
    e[0] = 1.0;
    for &x in vars {
        for t in (1..=k).rev() {
            e[t] += x * e[t - 1];
        }
    }
    e[k]
}

/// `e_0..=e_m` from `h_1..=h_m` via `Σ_{r=0}^{k} (-1)^r e_r h_{k-r} = 0`, i.e.
/// `e_k = Σ_{r=1}^{k} (-1)^{r+1} e_{k-r} h_r`.
pub fn e_from_h(h: &HSequence, m: usize) -> crate::Result<ESequence> {
    if h.order() < m {
        return Err(crate::Error::InvalidArgument(format!(
            "need h up to order {m}, have {}",
            h.order()
        )));
    }
    let mut e = vec![1.0];
    for k in 1..=m {
        let ek = (1..=k)
            .map(|r| {
                let term = e[k - r] * h.values[r];
                if r % 2 == 1 { term } else { -term }
            })
            .sum();
        e.push(ek);
    }
    Ok(ESequence { values: e })
}

/// Viète: `a_j = (-1)^j e_j`.
pub fn char_poly(e: &ESequence) -> CharPoly {
    let coefficients = e
        .values
        .iter()
        .enumerate()
        .map(|(j, &ej)| if j % 2 == 0 { ej } else { -ej })
        .collect();
    CharPoly { coefficients }
}

/// Schur polynomial `s_λ` by the Jacobi–Trudi determinant
/// `det[h_{λ_i - i + j}]`.
pub fn schur_poly(shape: &YoungDiagram, vars: &[f64]) -> f64 {
    let k = shape.rows();
    if k > vars.len() {
        return 0.0;
    }
    let h = complete_h_all(shape.parts()[0] + k, vars);
    let mut m = vec![vec![0.0; k]; k];
    for (i, row) in m.iter_mut().enumerate() {
        for (j, entry) in row.iter_mut().enumerate() {
            let idx = shape.parts()[i] as isize - i as isize + j as isize;
            *entry = if idx < 0 { 0.0 } else { h[idx as usize] };
        }
    }
    determinant(m)
}

fn determinant(mut m: Vec<Vec<f64>>) -> f64 {
    let n = m.len();
    let mut det = 1.0;
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&a, &b| m[a][col].abs().total_cmp(&m[b][col].abs()))
            .expect("nonempty range");
        if m[pivot][col] == 0.0 {
            return 0.0;
        }
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        det *= m[col][col];
        let (top, bottom) = m.split_at_mut(col + 1);
        let pivot_row = &top[col];
        for row in bottom.iter_mut() {
            let factor = row[col] / pivot_row[col];
            for (x, p) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                *x -= factor * p;
            }
        }
    }
    det
}
