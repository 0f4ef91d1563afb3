//! Symmetric-group machinery on `(C^m)^{⊗n}`: partitions and tableaux,
//! characters, permutation operators, and the isotypic projectors that make
//! up the rank measurement.

mod character;
mod diagram;
mod permutation;
mod projector;

pub use character::{character, character_table};
pub use diagram::{partitions, standard_tableaux, YoungDiagram, YoungTableau};
pub use permutation::{permutation_operator, Permutation};
pub use projector::{
    antisymmetric_complement, isotypic_decomposition, isotypic_projector, rank_outcome_probs,
    rank_outcome_probs_spectral, rank_povm, symmetric_projector, ProjectorResiduals, ProjectorSet,
};
