//! The powerset Boolean algebra on a finite ground set and its Desargues
//! property.
//!
//! Two triplets of subsets `(A1,A2,A3)` and `(A'1,A'2,A'3)` generate the
//! pairwise joins `B_ij = A_i ∨ A_j`, the cross meets `𝔅_k = B_ij ∧ B'_ij`
//! and the vertex joins `𝒞_i = A_i ∨ A'_i`. The property under test is the
//! one-way implication
//!
//! ```text
//! 𝒞1 ∧ 𝒞2 ⊆ 𝒞3   ⟹   𝔅3 ⊆ 𝔅1 ∨ 𝔅2
//! ```
//!
//! whose converse fails; [`exhaustive_scan`] verifies the implication over
//! every configuration of a small ground set and produces a concrete
//! converse counterexample.

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const MAX_GROUND: usize = 16;
pub const MAX_SCAN_GROUND: usize = 4;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BooleanError {
    #[error("ground set size {n} outside 1..={max}", max = MAX_GROUND)]
    GroundSize { n: usize },
    #[error("ground set too large for exhaustive scan: {n} > {max}", max = MAX_SCAN_GROUND)]
    ScanTooLarge { n: usize },
    #[error("element {element} outside ground set of size {n}")]
    ElementOutOfRange { element: usize, n: usize },
    #[error("subsets belong to different ground sets ({left} vs {right})")]
    GroundMismatch { left: usize, right: usize },
    #[error("{triplet} triplet is not pairwise distinct (positions {i} and {j})")]
    NotDistinct {
        triplet: &'static str,
        i: usize,
        j: usize,
    },
    #[error("unknown label {label:?}")]
    UnknownLabel { label: String },
    #[error("duplicate label {label:?} in ground set")]
    DuplicateLabel { label: String },
}

/// Finite ground set; elements are `0..size`.
#[derive(Debug, Copy, Clone, PartialEq, Eq, Hash)]
pub struct GroundSet {
    size: usize,
}

impl GroundSet {
    pub fn new(size: usize) -> Result<Self, BooleanError> {
        if (1..=MAX_GROUND).contains(&size) {
            Ok(Self { size })
        } else {
            Err(BooleanError::GroundSize { n: size })
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn full_mask(&self) -> u32 {
        (1u32 << self.size) - 1
    }

    /// All subsets in mask order.
    pub fn subsets(&self) -> impl Iterator<Item = Subset> + '_ {
        let ground = *self;
        (0..=self.full_mask()).map(move |bits| Subset { ground, bits })
    }
}

/// Subset of a [`GroundSet`], stored as a bitmask.
#[derive(Debug, Copy, Clone, PartialEq, Eq, Hash)]
pub struct Subset {
    ground: GroundSet,
    bits: u32,
}

impl Subset {
    pub fn empty(ground: GroundSet) -> Self {
        Self { ground, bits: 0 }
    }

    pub fn from_bits(ground: GroundSet, bits: u32) -> Result<Self, BooleanError> {
        if bits & !ground.full_mask() != 0 {
            return Err(BooleanError::ElementOutOfRange {
                element: (31 - bits.leading_zeros()) as usize,
                n: ground.size,
            });
        }
        Ok(Self { ground, bits })
    }

    pub fn from_elements(ground: GroundSet, elements: &[usize]) -> Result<Self, BooleanError> {
        let mut bits = 0u32;
        for &e in elements {
            if e >= ground.size {
                return Err(BooleanError::ElementOutOfRange {
                    element: e,
                    n: ground.size,
                });
            }
            bits |= 1 << e;
        }
        Ok(Self { ground, bits })
    }

    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn elements(&self) -> Vec<usize> {
        (0..self.ground.size).filter(|&e| self.bits & (1 << e) != 0).collect()
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    fn check_ground(&self, other: &Self) -> Result<(), BooleanError> {
        if self.ground != other.ground {
            return Err(BooleanError::GroundMismatch {
                left: self.ground.size,
                right: other.ground.size,
            });
        }
        Ok(())
    }

    /// Logical OR.
    pub fn union(&self, other: &Self) -> Result<Self, BooleanError> {
        self.check_ground(other)?;
        Ok(Self {
            ground: self.ground,
            bits: self.bits | other.bits,
        })
    }

    /// Logical AND.
    pub fn intersect(&self, other: &Self) -> Result<Self, BooleanError> {
        self.check_ground(other)?;
        Ok(Self {
            ground: self.ground,
            bits: self.bits & other.bits,
        })
    }

    /// Logical NOT relative to the ground set.
    pub fn complement(&self) -> Self {
        Self {
            ground: self.ground,
            bits: !self.bits & self.ground.full_mask(),
        }
    }

    /// Partial order: `self ⊆ other`.
    pub fn leq(&self, other: &Self) -> Result<bool, BooleanError> {
        self.check_ground(other)?;
        Ok(self.bits & !other.bits == 0)
    }
}

/// Pair index excluding `k`, in increasing order: `PAIR[k] = (i, j)` with
/// `{i, j, k} = {0, 1, 2}`.
const PAIR: [(usize, usize); 3] = [(1, 2), (0, 2), (0, 1)];

/// Two triplets of pairwise-distinct subsets over a common ground set.
///
/// Distinctness is required within each triplet only; a subset may appear in
/// both triplets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BooleanDesarguesInput {
    ground: GroundSet,
    a: [Subset; 3],
    a_prime: [Subset; 3],
}

impl BooleanDesarguesInput {
    pub fn new(a: [Subset; 3], a_prime: [Subset; 3]) -> Result<Self, BooleanError> {
        let ground = a[0].ground;
        for s in a.iter().chain(a_prime.iter()) {
            a[0].check_ground(s)?;
        }
        for (name, triplet) in [("first", &a), ("second", &a_prime)] {
            for i in 0..3 {
                for j in i + 1..3 {
                    if triplet[i] == triplet[j] {
                        return Err(BooleanError::NotDistinct {
                            triplet: name,
                            i,
                            j,
                        });
                    }
                }
            }
        }
        Ok(Self { ground, a, a_prime })
    }

    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    pub fn a(&self) -> &[Subset; 3] {
        &self.a
    }

    pub fn a_prime(&self) -> &[Subset; 3] {
        &self.a_prime
    }

    /// The same input with the two triplets swapped.
    pub fn swapped(&self) -> Self {
        Self {
            ground: self.ground,
            a: self.a_prime,
            a_prime: self.a,
        }
    }
}

/// All quantities derived from a [`BooleanDesarguesInput`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BooleanDerived {
    b: [Subset; 3],
    b_prime: [Subset; 3],
    frak_b: [Subset; 3],
    c: [Subset; 3],
}

impl BooleanDerived {
    /// `B_ij` for `i ≠ j` (0-indexed, order-insensitive).
    pub fn b(&self, i: usize, j: usize) -> Subset {
        self.b[pair_to_k(i, j)]
    }

    pub fn b_prime(&self, i: usize, j: usize) -> Subset {
        self.b_prime[pair_to_k(i, j)]
    }

    /// `𝔅_k = B_ij ∧ B'_ij` with `{i,j,k} = {0,1,2}`.
    pub fn frak_b(&self, k: usize) -> Subset {
        self.frak_b[k]
    }

    /// `𝒞_i = A_i ∨ A'_i`.
    pub fn c(&self, i: usize) -> Subset {
        self.c[i]
    }
}

fn pair_to_k(i: usize, j: usize) -> usize {
    assert!(i < 3 && j < 3 && i != j, "invalid side pair ({i}, {j})");
    3 - i - j
}

/// Populates every `B_ij`, `B'_ij`, `𝔅_k` and `𝒞_i`.
pub fn derive(input: &BooleanDesarguesInput) -> BooleanDerived {
    let or = |x: &Subset, y: &Subset| x.union(y).expect("same ground");
    let and = |x: &Subset, y: &Subset| x.intersect(y).expect("same ground");
    let b = PAIR.map(|(i, j)| or(&input.a[i], &input.a[j]));
    let b_prime = PAIR.map(|(i, j)| or(&input.a_prime[i], &input.a_prime[j]));
    let frak_b = [0, 1, 2].map(|k| and(&b[k], &b_prime[k]));
    let c = [0, 1, 2].map(|i| or(&input.a[i], &input.a_prime[i]));
    BooleanDerived {
        b,
        b_prime,
        frak_b,
        c,
    }
}

/// True when `𝒞1 ∧ 𝒞2 ⊆ 𝒞3`.
pub fn antecedent(d: &BooleanDerived) -> bool {
    let c12 = d.c[0].intersect(&d.c[1]).expect("same ground");
    c12.leq(&d.c[2]).expect("same ground")
}

/// True when `𝔅3 ⊆ 𝔅1 ∨ 𝔅2`.
pub fn consequent(d: &BooleanDerived) -> bool {
    let b12 = d.frak_b[0].union(&d.frak_b[1]).expect("same ground");
    d.frak_b[2].leq(&b12).expect("same ground")
}

/// The gate network for the left-hand side: `(𝒞1 ∧ 𝒞2) ∨ 𝒞3`.
/// Its output equals `𝒞3` exactly when the antecedent holds.
pub fn antecedent_circuit(input: &BooleanDesarguesInput) -> Subset {
    let d = derive(input);
    let c12 = d.c[0].intersect(&d.c[1]).expect("same ground");
    c12.union(&d.c[2]).expect("same ground")
}

/// The gate network for the right-hand side: `𝔅3 ∧ (𝔅1 ∨ 𝔅2)`.
/// Its output equals `𝔅3` exactly when the consequent holds.
pub fn consequent_circuit(input: &BooleanDesarguesInput) -> Subset {
    let d = derive(input);
    let b12 = d.frak_b[0].union(&d.frak_b[1]).expect("same ground");
    d.frak_b[2].intersect(&b12).expect("same ground")
}

/// On-disk form of a configuration: string labels, mapped to indices in
/// sorted order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BooleanConfig {
    pub ground: Vec<String>,
    #[serde(rename = "A")]
    pub a: [Vec<String>; 3],
    #[serde(rename = "Aprime")]
    pub a_prime: [Vec<String>; 3],
}

impl BooleanConfig {
    pub fn to_input(&self) -> Result<(BooleanDesarguesInput, Vec<String>), BooleanError> {
        let mut labels = self.ground.clone();
        labels.sort();
        for w in labels.windows(2) {
            if w[0] == w[1] {
                return Err(BooleanError::DuplicateLabel {
                    label: w[0].clone(),
                });
            }
        }
        let ground = GroundSet::new(labels.len())?;
        let lookup = |names: &[String]| -> Result<Subset, BooleanError> {
            let mut bits = 0u32;
            for name in names {
                let idx = labels
                    .binary_search(name)
                    .map_err(|_| BooleanError::UnknownLabel {
                        label: name.clone(),
                    })?;
                bits |= 1 << idx;
            }
            Ok(Subset { ground, bits })
        };
        let a = [
            lookup(&self.a[0])?,
            lookup(&self.a[1])?,
            lookup(&self.a[2])?,
        ];
        let a_prime = [
            lookup(&self.a_prime[0])?,
            lookup(&self.a_prime[1])?,
            lookup(&self.a_prime[2])?,
        ];
        Ok((BooleanDesarguesInput::new(a, a_prime)?, labels))
    }

    pub fn from_input(input: &BooleanDesarguesInput, labels: &[String]) -> Self {
        assert_eq!(labels.len(), input.ground.size(), "label count mismatch");
        let render = |s: &Subset| subset_labels(s, labels);
        Self {
            ground: labels.to_vec(),
            a: [
                render(&input.a[0]),
                render(&input.a[1]),
                render(&input.a[2]),
            ],
            a_prime: [
                render(&input.a_prime[0]),
                render(&input.a_prime[1]),
                render(&input.a_prime[2]),
            ],
        }
    }
}

/// Renders a subset as its sorted label list.
pub fn subset_labels(s: &Subset, labels: &[String]) -> Vec<String> {
    s.elements().iter().map(|&e| labels[e].clone()).collect()
}

/// Default labels `"1".."n"` for a bare ground set.
pub fn default_labels(ground: GroundSet) -> Vec<String> {
    (1..=ground.size()).map(|i| i.to_string()).collect()
}

/// Result of an exhaustive sweep over all distinct-triplet configurations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanReport {
    /// Configurations satisfying the distinctness invariant.
    pub total: u64,
    /// How many of those have a true antecedent.
    pub antecedent_true: u64,
    /// Configurations where the antecedent holds but the consequent fails.
    /// Any nonzero value falsifies the implication and means a bug.
    pub violations: u64,
    /// First configuration, in enumeration order, whose consequent holds
    /// while the antecedent fails; it witnesses that the converse of the
    /// implication is not a theorem.
    pub converse_counterexample: Option<BooleanConfig>,
}

/// Enumerates all `(2^n)^6` raw six-tuples over the ground set, filters the
/// distinctness invariant and checks the implication on every survivor.
///
/// Tuples are ordered lexicographically by `(A1, A2, A3, A'1, A'2, A'3)`
/// bitmasks, `A1` most significant.
pub fn exhaustive_scan(ground: GroundSet) -> Result<ScanReport, BooleanError> {
    exhaustive_scan_parallel(ground, 1)
}

/// Same as [`exhaustive_scan`] but with the enumeration range split across
/// `workers` threads. Counts merge associatively and the reported
/// counterexample is the first in enumeration order, so the result is
/// identical for any worker count.
pub fn exhaustive_scan_parallel(
    ground: GroundSet,
    workers: usize,
) -> Result<ScanReport, BooleanError> {
    if ground.size() > MAX_SCAN_GROUND {
        return Err(BooleanError::ScanTooLarge { n: ground.size() });
    }
    let m = 1u64 << ground.size();
    let raw_total = m.pow(6);
    let workers = workers.clamp(1, 64) as u64;
    let chunk = raw_total.div_ceil(workers);

    let mut partials: Vec<Partial> = Vec::new();
    std::thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let start = w * chunk;
                let end = raw_total.min(start + chunk);
                scope.spawn(move || scan_range(ground, start, end))
            })
            .collect();
        for h in handles {
            partials.push(h.join().expect("scan worker panicked"));
        }
    });

    let mut merged = Partial::default();
    for p in partials {
        merged.total += p.total;
        merged.antecedent_true += p.antecedent_true;
        merged.violations += p.violations;
        merged.first_converse = match (merged.first_converse, p.first_converse) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
    }

    let labels = default_labels(ground);
    let converse_counterexample = merged.first_converse.map(|idx| {
        let input = decode_tuple(ground, idx);
        BooleanConfig::from_input(&input, &labels)
    });
    Ok(ScanReport {
        total: merged.total,
        antecedent_true: merged.antecedent_true,
        violations: merged.violations,
        converse_counterexample,
    })
}

#[derive(Default)]
struct Partial {
    total: u64,
    antecedent_true: u64,
    violations: u64,
    first_converse: Option<u64>,
}

fn decode_masks(ground: GroundSet, index: u64) -> [u32; 6] {
    let m = 1u64 << ground.size();
    let mut masks = [0u32; 6];
    let mut rest = index;
    for slot in (0..6).rev() {
        masks[slot] = (rest % m) as u32;
        rest /= m;
    }
    masks
}

fn decode_tuple(ground: GroundSet, index: u64) -> BooleanDesarguesInput {
    let mk = decode_masks(ground, index);
    let s = |bits: u32| Subset { ground, bits };
    BooleanDesarguesInput::new([s(mk[0]), s(mk[1]), s(mk[2])], [s(mk[3]), s(mk[4]), s(mk[5])])
        .expect("scan only decodes distinct tuples")
}

fn scan_range(ground: GroundSet, start: u64, end: u64) -> Partial {
    let full = ground.full_mask();
    let mut out = Partial::default();
    for idx in start..end {
        let [a1, a2, a3, p1, p2, p3] = decode_masks(ground, idx);
        if a1 == a2 || a1 == a3 || a2 == a3 || p1 == p2 || p1 == p3 || p2 == p3 {
            continue;
        }
        out.total += 1;
        let c1 = a1 | p1;
        let c2 = a2 | p2;
        let c3 = a3 | p3;
        let ante = (c1 & c2) & !c3 & full == 0;
        let fb1 = (a2 | a3) & (p2 | p3);
        let fb2 = (a1 | a3) & (p1 | p3);
        let fb3 = (a1 | a2) & (p1 | p2);
        let cons = fb3 & !(fb1 | fb2) & full == 0;
        if ante {
            out.antecedent_true += 1;
            if !cons {
                out.violations += 1;
            }
        } else if cons && out.first_converse.is_none() {
            out.first_converse = Some(idx);
        }
    }
    out
}
