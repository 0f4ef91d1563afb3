//! Dense complex linear algebra for density matrices and their tensor powers.

mod density;
mod matrix;
mod permanent;
pub mod random;

pub use density::{
    eigenvalues, gram_matrix, tensor_power, validate_density, validate_density_with, DensityMatrix,
    PureStateVector, Spectrum, INPUT_TOLERANCE, STRICT_TOLERANCE,
};
pub use matrix::{ComplexMatrix, SizeCap, DEFAULT_MAX_DIM};
pub use permanent::{binomial, permanent, MAX_PERMANENT_SIZE};
