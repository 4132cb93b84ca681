//! Brauer maps, exact Hom-space dimensions and numeric model checks.

pub mod brauer;
pub mod matrix;
pub mod model;

pub use brauer::{
    delta, gram_matrix, hom_dimension, stacked_rank, t_map, verify_composition_rule,
    verify_composition_with, BrauerMap, Model,
};
pub use matrix::{rank_fraction_free, rank_over_field, Matrix};
pub use model::{
    halflib_model_check, halflib_model_check_with, projective_relation_check,
    projective_relation_check_with, Corruption, HalfLibModel, ModelReport, ProjectiveKind,
    ProjectiveModel,
};
