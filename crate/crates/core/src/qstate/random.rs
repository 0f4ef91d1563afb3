//! Seeded generators for random states and unitaries.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use super::density::{validate_density, DensityMatrix, PureStateVector};
use super::matrix::ComplexMatrix;

fn gaussian_complex<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Haar-random pure state.
pub fn random_pure_state<R: Rng + ?Sized>(rng: &mut R, m: usize) -> PureStateVector {
    let amps = (0..m).map(|_| gaussian_complex(rng)).collect();
    PureStateVector::normalized(amps).expect("gaussian vector is nonzero")
}

/// Random pure state with real amplitudes.
pub fn random_real_state<R: Rng + ?Sized>(rng: &mut R, m: usize) -> PureStateVector {
    let amps = (0..m).map(|_| Complex64::new(rng.sample(StandardNormal), 0.0)).collect();
    PureStateVector::normalized(amps).expect("gaussian vector is nonzero")
}

/// Haar-random unitary via Gram–Schmidt on a complex Ginibre matrix.
pub fn random_unitary<R: Rng + ?Sized>(rng: &mut R, m: usize) -> ComplexMatrix {
    let mut columns: Vec<Vec<Complex64>> = Vec::with_capacity(m);
    while columns.len() < m {
        let mut v: Vec<Complex64> = (0..m).map(|_| gaussian_complex(rng)).collect();
        for _ in 0..2 {
            for c in &columns {
                let overlap: Complex64 = c.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                v.iter_mut().zip(c).for_each(|(x, y)| *x -= overlap * y);
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-8 {
            columns.push(v.into_iter().map(|z| z / norm).collect());
        }
    }
    let mut u = ComplexMatrix::zeros(m, m);
    for (j, c) in columns.iter().enumerate() {
        for (i, &z) in c.iter().enumerate() {
            u[(i, j)] = z;
        }
    }
    u
}

/// Random mixed state of the given rank: `U diag(p) U†` with `p` drawn
/// uniformly from the simplex over `rank` components.
pub fn random_density_of_rank<R: Rng + ?Sized>(rng: &mut R, m: usize, rank: usize) -> DensityMatrix {
    assert!(rank >= 1 && rank <= m, "rank must lie in 1..=m");
    let mut weights: Vec<f64> = (0..rank).map(|_| -rng.random::<f64>().max(1e-300).ln()).collect();
    let total: f64 = weights.iter().sum();
    weights.iter_mut().for_each(|w| *w /= total);
    weights.resize(m, 0.0);
    let u = random_unitary(rng, m);
    let d = ComplexMatrix::from_diagonal(&weights);
    let rho = u.matmul(&d).and_then(|x| x.matmul(&u.adjoint())).expect("square shapes");
    let herm = (&rho + &rho.adjoint()).scale_real(0.5);
    let tr = herm.trace().re;
    validate_density(herm.scale_real(1.0 / tr)).expect("constructed state is valid")
}

/// Random full-rank mixed state.
pub fn random_density<R: Rng + ?Sized>(rng: &mut R, m: usize) -> DensityMatrix {
    random_density_of_rank(rng, m, m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn unitary_is_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for m in 1..5 {
            let u = random_unitary(&mut rng, m);
            let prod = &u * &u.adjoint();
            assert!(prod.max_abs_diff(&ComplexMatrix::identity(m)) < 1e-12);
        }
    }

    #[test]
    fn density_of_rank_has_that_rank() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let rho = random_density_of_rank(&mut rng, 3, 2);
        let spec = super::super::eigenvalues(&rho).unwrap();
        assert_eq!(spec.rank(1e-9), 2);
    }
}
