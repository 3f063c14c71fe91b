//! Koszul-type resolutions of the V-filtration pieces: the complexes `C̄_G`,
//! their graded pieces, the augmentation `σ_α` and the monodromy endomorphism.

mod complex;
mod forms;
mod graded;

pub use complex::{
    augmentation_zero_check, build_cbar, canonical_generator, random_dy_operator, sigma_alpha, structure_check,
    twist_for, verify_thm42_iii, Chain, FilteredKoszulComplex,
};
pub use forms::{binomial, LogFormSymbol};
pub use graded::{graded_cohomology, inclusion_check, verify_thm42_i, verify_thm42_ii, GradedKoszul, GradedPiece};
