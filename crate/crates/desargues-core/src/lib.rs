//! Desargues configurations in Boolean algebra and in the subspace lattice
//! of finite-dimensional complex spaces.
//!
//! The crate builds the same geometric property twice:
//!
//! - over the powerset Boolean algebra of a finite set, where it appears as
//!   a one-way implication between two gate networks ([`boolean`]);
//! - over the modular orthocomplemented lattice of subspaces of a
//!   d-dimensional complex space, where two coplanar triangles have
//!   concurrent cross lines exactly when their cross points are collinear
//!   ([`desargues`]).
//!
//! All lattice predicates run over exact Gaussian-rational arithmetic
//! ([`exact`], [`lattice`]); floating point appears only in the
//! projective-measurement simulator ([`measure`]) and in display rounding.
//! The [`worked_example`] module carries a fully worked five-dimensional
//! instance with reference values for every derived quantity.

pub mod boolean;
pub mod desargues;
pub mod exact;
pub mod lattice;
pub mod measure;
pub mod tolerances;
pub mod worked_example;

pub use boolean::{BooleanConfig, BooleanDesarguesInput, GroundSet, ScanReport, Subset};
pub use desargues::{
    ConfigReport, DerivedConfig, DesarguesConfig, DesarguesConfigFile, PointTriple,
};
pub use exact::{ComplexFloat, ExactMatrix, FloatMatrix, GaussianRational, Rational};
pub use lattice::{Projector, Subspace};
pub use measure::{ExperimentPair, MeasurementStep, StateVector};
