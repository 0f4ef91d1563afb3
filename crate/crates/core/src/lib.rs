//! Testing whether a quantum state is pure from copies of it.
//!
//! The symmetric-subspace projector on `n` copies accepts every pure state
//! with certainty, while a mixed state with spectrum `λ` lands there with
//! probability `h_n(λ)`. The modules build that measurement and its
//! generalizations, and turn outcome frequencies into spectrum and purity
//! estimates.
//!
//! - [`qstate`]: dense complex matrices, density matrices, spectra.
//! - [`sympoly`]: symmetric polynomials of a spectrum and root recovery.
//! - [`symgroup`]: permutations, Young diagrams, characters, isotypic projectors.
//! - [`discriminate`]: the pure/mixed measurement, its statistics and sampler.
//! - [`estimate`]: the purity-estimation pipeline.

mod error;

pub mod discriminate;
pub mod estimate;
pub mod qstate;
pub mod symgroup;
pub mod sympoly;

pub use error::{Error, Result};
