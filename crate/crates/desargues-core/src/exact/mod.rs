//! Exact Gaussian-rational scalars and dense matrices, plus their
//! floating-point mirror.

mod float;
mod matrix;
mod scalar;

pub use float::{ComplexFloat, FloatMatrix};
pub use matrix::{ExactMatrix, MatrixError};
pub use scalar::{GaussianRational, Rational};
