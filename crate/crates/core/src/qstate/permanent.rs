use num_bigint::BigUint;
use num_complex::Complex64;

use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};

/// Largest matrix accepted by [`permanent`].
pub const MAX_PERMANENT_SIZE: usize = 20;

/// `per(A) = Σ_σ Π_i A[i, σ(i)]`, evaluated by Ryser's inclusion–exclusion
/// formula with a Gray-code walk over column subsets (`O(2^k · k)`).
pub fn permanent(a: &ComplexMatrix) -> Result<Complex64> {
    if !a.is_square() {
        return Err(Error::NotSquare { rows: a.rows(), cols: a.cols() });
    }
    let k = a.rows();
    if k > MAX_PERMANENT_SIZE {
        return Err(Error::SizeCapExceeded { requested: k, cap: MAX_PERMANENT_SIZE });
    }
    if k == 0 {
        return Ok(Complex64::new(1.0, 0.0));
    }

    // row_sums[i] = Σ_{j ∈ S} A[i, j] for the current subset S
    let mut row_sums = vec![Complex64::new(0.0, 0.0); k];
    let mut total = Complex64::new(0.0, 0.0);
    let mut gray: u64 = 0;
    for step in 1u64..(1 << k) {
        let next = step ^ (step >> 1);
        let flipped = (gray ^ next).trailing_zeros() as usize;
        let entering = next & (1 << flipped) != 0;
        for (i, s) in row_sums.iter_mut().enumerate() {
            if entering {
                *s += a[(i, flipped)];
            } else {
                *s -= a[(i, flipped)];
            }
        }
        gray = next;
        let prod: Complex64 = row_sums.iter().product();
        if (k - next.count_ones() as usize).is_multiple_of(2) {
            total += prod;
        } else {
            total -= prod;
        }
    }
    Ok(total)
}

/// Exact binomial coefficient `C(n, k)`; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::ZERO;
    }
    let k = k.min(n - k);
    let mut acc = BigUint::from(1u32);
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use itertools::Itertools;

    fn naive_permanent(a: &ComplexMatrix) -> Complex64 {
        let k = a.rows();
        (0..k)
            .permutations(k)
            .map(|sigma| sigma.iter().enumerate().map(|(i, &j)| a[(i, j)]).product::<Complex64>())
            .sum()
    }

    #[test]
    fn small_examples() {
        let id = ComplexMatrix::identity(2);
        assert!((permanent(&id).unwrap() - 1.0).norm() < 1e-15);
        let ones = ComplexMatrix::from_real_rows(&[vec![1.0, 1.0], vec![1.0, 1.0]]).unwrap();
        assert!((permanent(&ones).unwrap() - 2.0).norm() < 1e-15);
        let a = ComplexMatrix::from_real_rows(&[vec![1.0, 0.5], vec![0.5, 1.0]]).unwrap();
        assert!((permanent(&a).unwrap() - 1.25).norm() < 1e-15);
        assert_eq!(permanent(&ComplexMatrix::zeros(0, 0)).unwrap(), Complex64::new(1.0, 0.0));
    }

    #[test]
    fn matches_permutation_sum() {
        let mut seed = 0x2545f4914f6cdd1du64;
        let mut next = || {
            seed ^= seed << 13;
            seed ^= seed >> 7;
            seed ^= seed << 17;
            (seed >> 11) as f64 / (1u64 << 53) as f64 - 0.5
        };
        for k in 1..=6 {
            let data = (0..k * k).map(|_| Complex64::new(next(), next())).collect();
            let a = ComplexMatrix::from_row_major(k, k, data).unwrap();
            let fast = permanent(&a).unwrap();
            let slow = naive_permanent(&a);
            assert!((fast - slow).norm() <= 1e-12 * slow.norm().max(1.0), "k = {k}");
        }
    }

    #[test]
    fn all_ones_permanent_is_factorial() {
        let a = ComplexMatrix::from_row_major(8, 8, vec![Complex64::new(1.0, 0.0); 64]).unwrap();
        assert!((permanent(&a).unwrap().re - 40320.0).abs() < 1e-8);
    }

    #[test]
    fn rejects_oversize_and_non_square() {
        assert!(matches!(permanent(&ComplexMatrix::zeros(21, 21)), Err(Error::SizeCapExceeded { .. })));
        assert!(matches!(permanent(&ComplexMatrix::zeros(2, 3)), Err(Error::NotSquare { .. })));
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(3, 2), BigUint::from(3u32));
        assert_eq!(binomial(4, 3), BigUint::from(4u32));
        assert_eq!(binomial(6, 3), BigUint::from(20u32));
        assert_eq!(binomial(2, 5), BigUint::ZERO);
        // Pascal recurrence
        for n in 1..40u64 {
            for k in 1..n {
                assert_eq!(binomial(n, k), binomial(n - 1, k - 1) + binomial(n - 1, k));
            }
        }
        assert_eq!(binomial(100, 50).to_string(), "100891344545564193334812497256");
    }
}
