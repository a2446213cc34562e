//! Reduced field states and the quantities derived from them.

pub mod field;
pub mod husimi;
pub mod symmetry;

pub use field::{linear_entropy, photon_probabilities, reduce_field, FieldDensityMatrix};
pub use husimi::{
    husimi, husimi_at, husimi_polar, husimi_two_fock, GridSpec, HusimiEvaluator, HusimiGrid,
};
pub use symmetry::{
    coherence_support, detect_cyclic_symmetry, detect_cyclic_symmetry_with, residual_samples,
    rotation_residual, symmetry_angle, SymmetryReport, DEFAULT_SYMMETRY_TOL,
};
