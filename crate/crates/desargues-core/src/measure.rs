//! Two-stage projective-measurement simulation.
//!
//! Experiment 1 measures `Π(ℋ1∧ℋ2)` then `Π(ℋ3)`; experiment 2 measures
//! `Π(𝔥3)` then `Π(𝔥1∨𝔥2)`. On a configuration whose absorption identities
//! hold, the second measurement of each experiment leaves the collapsed
//! state unchanged for every input state that survives the first stage —
//! the selective correlation this crate exists to demonstrate.
//!
//! Only the `yes` branch of each measurement is modeled; a `no` outcome
//! (projection onto the complement) is not followed.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::desargues::{derive_config, DegenerateConfig, DesarguesConfig};
use crate::lattice::Projector;
use crate::tolerances;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MeasureError {
    #[error("state has dimension {state}, projector expects {expected}")]
    DimMismatch { state: usize, expected: usize },
    #[error("state norm {norm} deviates from 1 by more than {max}", max = tolerances::STATE_NORM)]
    NotNormalized { norm: f64 },
    #[error("state has a non-finite amplitude")]
    NonFinite,
    #[error("zero-probability outcome at stage {stage} ({label}); collapse is undefined")]
    ZeroProbability { stage: usize, label: String },
    #[error("expectation value has imaginary part {imag}, projector is not Hermitian")]
    ImaginaryExpectation { imag: f64 },
    #[error("probability {value} outside [0, 1]")]
    ProbabilityOutOfRange { value: f64 },
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ExperimentError {
    #[error(transparent)]
    Degenerate(#[from] DegenerateConfig),
    #[error(transparent)]
    Measure(#[from] MeasureError),
}

/// A normalized pure state with finite amplitudes.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    /// Accepts amplitudes whose norm deviates from 1 by less than
    /// [`tolerances::STATE_NORM`] and renormalizes them; anything further
    /// off is rejected rather than silently rescaled.
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self, MeasureError> {
        if amplitudes
            .iter()
            .any(|a| !a.re.is_finite() || !a.im.is_finite())
        {
            return Err(MeasureError::NonFinite);
        }
        let norm = norm(&amplitudes);
        if (norm - 1.0).abs() >= tolerances::STATE_NORM {
            return Err(MeasureError::NotNormalized { norm });
        }
        let amplitudes = amplitudes.into_iter().map(|a| a / norm).collect();
        Ok(Self { amplitudes })
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &Self) -> Complex64 {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch");
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }
}

fn norm(v: &[Complex64]) -> f64 {
    v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
}

/// Ray equality: `|⟨a|b⟩|² ≥ 1 − RAY_FIDELITY`, so global phase is ignored.
pub fn ray_equal(a: &StateVector, b: &StateVector) -> bool {
    a.inner(b).norm_sqr() >= 1.0 - tolerances::RAY_FIDELITY
}

/// One projective measurement with a `yes` outcome.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementStep {
    pub projector_label: String,
    pub probability: f64,
    pub post_state: StateVector,
}

/// Measures `projector` on `state`: probability `⟨s|P|s⟩` and collapse
/// `P|s⟩/√p`. Outcomes below [`tolerances::ZERO_PROBABILITY`] are an error
/// since the collapse divides by `√p`.
pub fn measure(
    state: &StateVector,
    projector: &Projector,
    label: impl Into<String>,
) -> Result<MeasurementStep, MeasureError> {
    let label = label.into();
    if state.dim() != projector.ambient_dim() {
        return Err(MeasureError::DimMismatch {
            state: state.dim(),
            expected: projector.ambient_dim(),
        });
    }
    let matrix = projector
        .to_float()
        .expect("projector entries are small rationals");
    let image = matrix.mul_vec(state.amplitudes());
    let expectation: Complex64 = state
        .amplitudes()
        .iter()
        .zip(&image)
        .map(|(a, b)| a.conj() * b)
        .sum();
    if expectation.im.abs() >= tolerances::IMAGINARY_PART {
        return Err(MeasureError::ImaginaryExpectation {
            imag: expectation.im,
        });
    }
    let probability = expectation.re;
    if probability < tolerances::ZERO_PROBABILITY {
        if probability < -tolerances::ZERO_PROBABILITY {
            return Err(MeasureError::ProbabilityOutOfRange { value: probability });
        }
        return Err(MeasureError::ZeroProbability { stage: 1, label });
    }
    if probability > 1.0 + tolerances::ZERO_PROBABILITY {
        return Err(MeasureError::ProbabilityOutOfRange { value: probability });
    }
    let probability = probability.min(1.0);
    let scale = probability.sqrt();
    let post = image.into_iter().map(|a| a / scale).collect();
    Ok(MeasurementStep {
        projector_label: label,
        probability,
        post_state: StateVector {
            amplitudes: post,
        },
    })
}

/// Two measurements in sequence with collapse chaining. A zero-probability
/// outcome carries the stage (1 or 2) at which it occurred.
pub fn run_sequence(
    state: &StateVector,
    first: &Projector,
    first_label: impl Into<String>,
    second: &Projector,
    second_label: impl Into<String>,
) -> Result<(MeasurementStep, MeasurementStep), MeasureError> {
    let step1 = measure(state, first, first_label)?;
    let step2 = measure(&step1.post_state, second, second_label).map_err(|e| match e {
        MeasureError::ZeroProbability { label, .. } => {
            MeasureError::ZeroProbability { stage: 2, label }
        }
        other => other,
    })?;
    Ok((step1, step2))
}

/// True when the post-measurement state is an eigenstate of `projector`:
/// `‖P·v − v‖ < EIGENSTATE`.
pub fn eigenstate_check(step: &MeasurementStep, projector: &Projector) -> bool {
    assert_eq!(
        step.post_state.dim(),
        projector.ambient_dim(),
        "dimension mismatch"
    );
    let matrix = projector
        .to_float()
        .expect("projector entries are small rationals");
    let image = matrix.mul_vec(step.post_state.amplitudes());
    let diff: f64 = image
        .iter()
        .zip(step.post_state.amplitudes())
        .map(|(a, b)| (a - b).norm_sqr())
        .sum::<f64>()
        .sqrt();
    diff < tolerances::EIGENSTATE
}

/// Transcript of both two-stage experiments on a common input state.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentPair {
    /// `Π(ℋ1∧ℋ2)` then `Π(ℋ3)`.
    pub exp1: [MeasurementStep; 2],
    /// `Π(𝔥3)` then `Π(𝔥1∨𝔥2)`.
    pub exp2: [MeasurementStep; 2],
    /// Whether the second measurement of experiment 1 left the state
    /// unchanged as a ray.
    pub unchanged1: bool,
    /// Same for experiment 2.
    pub unchanged2: bool,
}

/// The four protocol projectors with their report labels, in measurement
/// order: the two stages of experiment 1, then the two stages of
/// experiment 2.
pub fn protocol_projectors(
    config: &DesarguesConfig,
) -> Result<[(&'static str, Projector); 4], DegenerateConfig> {
    let derived = derive_config(config)?;
    let cal_meet_12 = derived
        .cross_line(0)
        .meet(derived.cross_line(1))
        .expect("same ambient");
    let frak_join_12 = derived
        .cross_point(0)
        .join(derived.cross_point(1))
        .expect("same ambient");
    Ok([
        ("P(H1 ^ H2)", cal_meet_12.projector()),
        ("P(H3)", derived.cross_line(2).projector()),
        ("P(h3)", derived.cross_point(2).projector()),
        ("P(h1 v h2)", frak_join_12.projector()),
    ])
}

/// Runs both experiments of the selective-correlation protocol on `state`.
///
/// The configuration is derived on the fly; degenerate configurations and
/// zero-probability stages propagate as errors. No concurrency is required
/// of the configuration — on generic ones the unchanged flags simply come
/// out false for most states.
pub fn run_experiment_pair(
    config: &DesarguesConfig,
    state: &StateVector,
) -> Result<ExperimentPair, ExperimentError> {
    let [(label1a, first1), (label1b, second1), (label2a, first2), (label2b, second2)] =
        protocol_projectors(config)?;
    let (s1, s2) = run_sequence(state, &first1, label1a, &second1, label1b)?;
    let (t1, t2) = run_sequence(state, &first2, label2a, &second2, label2b)?;
    let unchanged1 = ray_equal(&s1.post_state, &s2.post_state);
    let unchanged2 = ray_equal(&t1.post_state, &t2.post_state);
    Ok(ExperimentPair {
        exp1: [s1, s2],
        exp2: [t1, t2],
        unchanged1,
        unchanged2,
    })
}

/// On-disk form of a state: decimal floats, `[re, im]` per amplitude.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StateFile {
    pub d: usize,
    pub amplitudes: Vec<[f64; 2]>,
}

impl StateFile {
    pub fn to_state(&self) -> Result<StateVector, MeasureError> {
        if self.amplitudes.len() != self.d {
            return Err(MeasureError::DimMismatch {
                state: self.amplitudes.len(),
                expected: self.d,
            });
        }
        StateVector::new(
            self.amplitudes
                .iter()
                .map(|&[re, im]| Complex64::new(re, im))
                .collect(),
        )
    }

    pub fn from_state(state: &StateVector) -> Self {
        Self {
            d: state.dim(),
            amplitudes: state.amplitudes().iter().map(|a| [a.re, a.im]).collect(),
        }
    }
}

fn round4(x: f64) -> f64 {
    (x * 1e4).round() / 1e4
}

/// Report form of one measurement step: probability rounded to four
/// decimals next to the full-precision value.
#[derive(Debug, Clone, Serialize)]
pub struct StepDoc {
    pub projector: String,
    pub probability: f64,
    pub probability_full: f64,
    pub post_state: Vec<[f64; 2]>,
}

impl StepDoc {
    fn new(step: &MeasurementStep) -> Self {
        Self {
            projector: step.projector_label.clone(),
            probability: round4(step.probability),
            probability_full: step.probability,
            post_state: step
                .post_state
                .amplitudes()
                .iter()
                .map(|a| [a.re, a.im])
                .collect(),
        }
    }
}

/// Report form of an [`ExperimentPair`].
#[derive(Debug, Clone, Serialize)]
pub struct ExperimentPairDoc {
    pub exp1: [StepDoc; 2],
    pub exp2: [StepDoc; 2],
    pub unchanged1: bool,
    pub unchanged2: bool,
}

impl ExperimentPairDoc {
    pub fn new(pair: &ExperimentPair) -> Self {
        Self {
            exp1: [StepDoc::new(&pair.exp1[0]), StepDoc::new(&pair.exp1[1])],
            exp2: [StepDoc::new(&pair.exp2[0]), StepDoc::new(&pair.exp2[1])],
            unchanged1: pair.unchanged1,
            unchanged2: pair.unchanged2,
        }
    }
}
