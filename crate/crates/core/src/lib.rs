//! Classification and numerical verification of B-tensors: linear
//! combinations of the Riemann tensor, Ricci products and scalar-curvature
//! products with eleven coefficients.

pub mod btensor;
pub mod catalog;
pub mod cli;
pub mod engine;
pub mod error;
pub mod jet;
pub mod metric;
pub mod scalar;
pub mod structure;
pub mod tensor;
pub mod verify;

pub use error::{Error, Result};
