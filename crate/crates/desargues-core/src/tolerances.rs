//! The single table of floating-point tolerances used anywhere in the crate.
//!
//! Exact-arithmetic predicates have no tolerances at all; these constants
//! only govern the measurement simulator, decimal reference matching and the
//! float rank fallback. The CLI prints this table under `--tolerances`.

use serde::Serialize;

/// Ray equality: `|⟨a|b⟩|²` must be at least `1 − RAY_FIDELITY`.
pub const RAY_FIDELITY: f64 = 1e-9;

/// Half-width for matching quantities quoted to three decimal places
/// (the measurement probabilities of the worked example).
pub const REFERENCE_DECIMAL: f64 = 1e-3;

/// Entrywise half-width for matching projector tables quoted to four
/// decimal places.
pub const PROJECTOR_TABLE: f64 = 5e-5;

/// Probabilities below this have no defined collapse and raise an error.
pub const ZERO_PROBABILITY: f64 = 1e-12;

/// `‖P·v − v‖` bound for calling `v` an eigenstate of the projector `P`.
pub const EIGENSTATE: f64 = 1e-8;

/// Largest tolerated imaginary part of `⟨s|P|s⟩` before the projector is
/// rejected as non-Hermitian.
pub const IMAGINARY_PART: f64 = 1e-10;

/// Largest tolerated deviation of an input state's norm from 1 before the
/// state is rejected instead of renormalized.
pub const STATE_NORM: f64 = 1e-3;

/// Complementary-outcome probabilities must sum to 1 within this bound.
pub const PROBABILITY_SUM: f64 = 1e-10;

/// Width around 1 for probabilities that should be exactly 1 (second-stage
/// outcomes under absorption).
pub const UNIT_PROBABILITY: f64 = 1e-9;

/// Collapsed states must match reference rays with fidelity at least
/// `1 − COLLAPSE_FIDELITY`.
pub const COLLAPSE_FIDELITY: f64 = 1e-6;

/// Relative column-norm threshold for the floating-point rank fallback.
pub const FLOAT_RANK_RELATIVE: f64 = 1e-10;

#[derive(Debug, Clone, Serialize)]
pub struct ToleranceEntry {
    pub name: &'static str,
    pub value: f64,
    pub description: &'static str,
}

/// Every tolerance constant with its meaning, in a fixed order.
pub fn table() -> Vec<ToleranceEntry> {
    vec![
        ToleranceEntry {
            name: "ray_fidelity",
            value: RAY_FIDELITY,
            description: "two states are the same ray when |<a|b>|^2 >= 1 - ray_fidelity",
        },
        ToleranceEntry {
            name: "reference_decimal",
            value: REFERENCE_DECIMAL,
            description: "half-width for matching values quoted to three decimals",
        },
        ToleranceEntry {
            name: "projector_table",
            value: PROJECTOR_TABLE,
            description: "entrywise half-width for projector tables quoted to four decimals",
        },
        ToleranceEntry {
            name: "zero_probability",
            value: ZERO_PROBABILITY,
            description: "probabilities below this have no defined collapse",
        },
        ToleranceEntry {
            name: "eigenstate",
            value: EIGENSTATE,
            description: "norm bound on P*v - v for the eigenstate check",
        },
        ToleranceEntry {
            name: "imaginary_part",
            value: IMAGINARY_PART,
            description: "largest tolerated imaginary part of <s|P|s>",
        },
        ToleranceEntry {
            name: "state_norm",
            value: STATE_NORM,
            description: "largest input-norm deviation that is renormalized instead of rejected",
        },
        ToleranceEntry {
            name: "probability_sum",
            value: PROBABILITY_SUM,
            description: "complementary outcome probabilities sum to 1 within this",
        },
        ToleranceEntry {
            name: "unit_probability",
            value: UNIT_PROBABILITY,
            description: "width around 1 for probabilities that should be exactly 1",
        },
        ToleranceEntry {
            name: "collapse_fidelity",
            value: COLLAPSE_FIDELITY,
            description: "collapsed states match reference rays with fidelity >= 1 - this",
        },
        ToleranceEntry {
            name: "float_rank_relative",
            value: FLOAT_RANK_RELATIVE,
            description: "relative column-norm threshold of the float rank fallback",
        },
    ]
}
