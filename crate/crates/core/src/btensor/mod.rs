//! Exact coefficient algebra of B-tensors.

pub mod build;
pub mod coefficients;
pub mod combine;
pub mod named;
pub mod predicates;
pub mod profile;
pub mod sample;

pub use build::{build_derivative, build_tensor, class_identity_residual};
pub use coefficients::{BCoefficients, NCOEF};
pub use combine::{combine, predict_combination};
pub use named::{all_rows, catalog, default_params, parse_named, TensorName};
pub use predicates::{gct_canonical_form, is_gct, is_proper_gct, is_skew_endomorphism, GctCanonicalForm};
pub use profile::{class_relations_check, classify, contraction_profile, ClassId, Classification, ContractionProfile};
