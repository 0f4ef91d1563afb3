use crate::error::{Error, Result};
use crate::qstate::{ComplexMatrix, SizeCap};

use super::diagram::YoungDiagram;

/// A bijection on `{0, ..., n-1}`; `mapping[i]` is the image of `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    mapping: Vec<usize>,
}

impl Permutation {
    pub fn new(mapping: Vec<usize>) -> Result<Self> {
        let n = mapping.len();
        let mut seen = vec![false; n];
        for &x in &mapping {
            if x >= n || std::mem::replace(&mut seen[x], true) {
                return Err(Error::InvalidArgument(format!("{mapping:?} is not a bijection on 0..{n}")));
            }
        }
        Ok(Permutation { mapping })
    }

    pub fn identity(n: usize) -> Self {
        Permutation { mapping: (0..n).collect() }
    }

    /// Swaps `a` and `b`.
    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut mapping: Vec<usize> = (0..n).collect();
        mapping.swap(a, b);
        Permutation { mapping }
    }

    pub fn size(&self) -> usize {
        self.mapping.len()
    }

    pub fn mapping(&self) -> &[usize] {
        &self.mapping
    }

    pub fn apply(&self, i: usize) -> usize {
        self.mapping[i]
    }

    pub fn inverse(&self) -> Self {
        let mut mapping = vec![0; self.size()];
        for (i, &x) in self.mapping.iter().enumerate() {
            mapping[x] = i;
        }
        Permutation { mapping }
    }

    /// The product whose tensor-factor operator is `V_self · V_other`:
    /// `i ↦ other(self(i))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.size(), other.size(), "permutations act on different sets");
        Permutation { mapping: self.mapping.iter().map(|&i| other.mapping[i]).collect() }
    }

    /// Cycle lengths, sorted descending, as a partition of `n`.
    pub fn cycle_type(&self) -> YoungDiagram {
        let mut seen = vec![false; self.size()];
        let mut lengths = Vec::new();
        for start in 0..self.size() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.mapping[i];
                len += 1;
            }
            lengths.push(len);
        }
        YoungDiagram::from_unsorted(lengths).expect("nonempty permutation")
    }

    /// All `n!` permutations in lexicographic order.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut current: Vec<usize> = (0..n).collect();
        let mut out = vec![Permutation { mapping: current.clone() }];
        // standard next-permutation walk
        loop {
            let Some(i) = (1..n).rev().find(|&i| current[i - 1] < current[i]) else {
                return out;
            };
            let pivot = i - 1;
            let j = (i..n).rev().find(|&j| current[j] > current[pivot]).expect("suffix has a larger entry");
            current.swap(pivot, j);
            current[i..].reverse();
            out.push(Permutation { mapping: current.clone() });
        }
    }
}

/// For each basis index of `(C^m)^{⊗n}` (factor 0 most significant), the
/// index it is sent to by `V_σ`, where `V_σ |ψ_1 … ψ_n> = |ψ_σ(1) … ψ_σ(n)>`.
pub(crate) fn basis_action(sigma: &Permutation, m: usize, dim: usize) -> Vec<usize> {
    let n = sigma.size();
    let mut digits = vec![0usize; n];
    let mut out = Vec::with_capacity(dim);
    for index in 0..dim {
        let mut rest = index;
        for slot in (0..n).rev() {
            digits[slot] = rest % m;
            rest /= m;
        }
        let image = (0..n).fold(0, |acc, j| acc * m + digits[sigma.apply(j)]);
        out.push(image);
    }
    out
}

/// The 0/1 matrix `V_σ` on `(C^m)^{⊗n}`: factor `j` of the output is factor
/// `σ(j)` of the input.
pub fn permutation_operator(sigma: &Permutation, m: usize, cap: SizeCap) -> Result<ComplexMatrix> {
    let dim = cap.check_power(m, sigma.size())?;
    let mut v = ComplexMatrix::zeros(dim, dim);
    for (input, output) in basis_action(sigma, m, dim).into_iter().enumerate() {
        v[(output, input)] = 1.0.into();
    }
    Ok(v)
}
