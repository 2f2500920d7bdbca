pub mod cli;
pub mod error;
pub mod operators;
pub mod quad;
pub mod report;
pub(crate) mod serde_complex;
pub mod special;
pub mod spectrum;
pub mod states;
pub mod verify;

pub use error::{Error, Result};

/// Double-precision complex number used for s, ρ and function values.
pub type ComplexScalar = num_complex::Complex64;
