//! Desargues configurations in the subspace lattice: two coplanar point
//! triangles, their side lines and cross structure, the
//! concurrent-iff-collinear equivalence, and seeded instance generators.
//!
//! For triangles `(h1,h2,h3)` and `(h'1,h'2,h'3)` spanning a common plane,
//! the engine derives the side lines `H_ij = h_i ∨ h_j`, the cross points
//! `𝔥_k = H_ij ∧ H'_ij` and the cross lines `ℋ_i = h_i ∨ h'_i`, then decides
//! exactly whether the cross lines are concurrent and whether the cross
//! points are collinear. The two predicates agree on every valid
//! non-degenerate configuration, and each is equivalent to an exact
//! projector absorption identity.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::{ExactMatrix, GaussianRational};
use crate::lattice::{LatticeError, Subspace};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConfigError {
    #[error("{triple} vertex {index} is not a point (dimension {dim})")]
    NotAPoint {
        triple: &'static str,
        index: usize,
        dim: usize,
    },
    #[error("operand {index} is not a line (dimension {dim})")]
    NotALine { index: usize, dim: usize },
    #[error("lines are not pairwise distinct")]
    LinesNotDistinct,
    #[error("{triple} triangle repeats a vertex (positions {i} and {j})")]
    DuplicateVertex {
        triple: &'static str,
        i: usize,
        j: usize,
    },
    #[error("{triple} points are collinear, not a triangle")]
    NotATriangle { triple: &'static str },
    #[error("the two triangles span different planes")]
    PlaneMismatch,
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// A configuration whose cross structure collapses; the indices are
/// 1-based to match the vertex numbering.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DegenerateConfig {
    #[error("vertices h{index} and h'{index} coincide, cross line {index} is not a line")]
    SharedVertex { index: usize },
    #[error("cross point {index} has dimension {dim}, the triangles share side {index}")]
    CrossPointDim { index: usize, dim: usize },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenerateError {
    #[error("ambient dimension {d} is below 3")]
    DimensionTooSmall { d: usize },
    #[error("no valid configuration found in {attempts} attempts")]
    AttemptsExhausted { attempts: usize },
}

/// Three distinct one-dimensional subspaces of a common ambient space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointTriple {
    points: [Subspace; 3],
}

impl PointTriple {
    pub fn new(points: [Subspace; 3]) -> Result<Self, ConfigError> {
        Self::named(points, "first")
    }

    fn named(points: [Subspace; 3], triple: &'static str) -> Result<Self, ConfigError> {
        for (index, p) in points.iter().enumerate() {
            if p.dim() != 1 {
                return Err(ConfigError::NotAPoint {
                    triple,
                    index,
                    dim: p.dim(),
                });
            }
        }
        points[0].join(&points[1]).map_err(LatticeError::from)?;
        points[0].join(&points[2]).map_err(LatticeError::from)?;
        for i in 0..3 {
            for j in i + 1..3 {
                if points[i] == points[j] {
                    return Err(ConfigError::DuplicateVertex { triple, i, j });
                }
            }
        }
        Ok(Self { points })
    }

    pub fn point(&self, i: usize) -> &Subspace {
        &self.points[i]
    }

    pub fn points(&self) -> &[Subspace; 3] {
        &self.points
    }

    /// Join of the three points.
    pub fn span(&self) -> Subspace {
        self.points[0]
            .join(&self.points[1])
            .and_then(|s| s.join(&self.points[2]))
            .expect("same ambient")
    }
}

/// True exactly when the three points span a three-dimensional space;
/// false means the three spanning vectors are linearly dependent.
pub fn is_point_triangle(t: &PointTriple) -> bool {
    t.span().dim() == 3
}

/// True exactly when three distinct lines have empty common intersection.
/// Errors unless the inputs are distinct two-dimensional subspaces.
pub fn is_line_triangle(
    l1: &Subspace,
    l2: &Subspace,
    l3: &Subspace,
) -> Result<bool, ConfigError> {
    for (index, l) in [l1, l2, l3].iter().enumerate() {
        if l.dim() != 2 {
            return Err(ConfigError::NotALine {
                index,
                dim: l.dim(),
            });
        }
    }
    if l1 == l2 || l1 == l3 || l2 == l3 {
        return Err(ConfigError::LinesNotDistinct);
    }
    let meet = l1.meet(l2)?.meet(l3)?;
    Ok(meet.dim() == 0)
}

/// Two coplanar triangles and their common plane.
///
/// Construction validates every invariant and reports the first violation:
/// each triple consists of three distinct points forming a triangle, and
/// both triangles span the same three-dimensional plane.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DesarguesConfig {
    triangle: PointTriple,
    triangle_prime: PointTriple,
    plane: Subspace,
}

impl DesarguesConfig {
    pub fn new(triangle: PointTriple, triangle_prime: PointTriple) -> Result<Self, ConfigError> {
        let triangle = PointTriple::named(triangle.points, "first")?;
        let triangle_prime = PointTriple::named(triangle_prime.points, "second")?;
        if !is_point_triangle(&triangle) {
            return Err(ConfigError::NotATriangle { triple: "first" });
        }
        if !is_point_triangle(&triangle_prime) {
            return Err(ConfigError::NotATriangle { triple: "second" });
        }
        let plane = triangle.span();
        if triangle_prime.span() != plane {
            return Err(ConfigError::PlaneMismatch);
        }
        Ok(Self {
            triangle,
            triangle_prime,
            plane,
        })
    }

    pub fn from_vectors(
        d: usize,
        triangle: &[Vec<GaussianRational>; 3],
        triangle_prime: &[Vec<GaussianRational>; 3],
    ) -> Result<Self, ConfigError> {
        let mk = |vs: &[Vec<GaussianRational>; 3]| -> Result<[Subspace; 3], ConfigError> {
            Ok([
                Subspace::from_vectors(d, &vs[0..1])?,
                Subspace::from_vectors(d, &vs[1..2])?,
                Subspace::from_vectors(d, &vs[2..3])?,
            ])
        };
        Self::new(
            PointTriple {
                points: mk(triangle)?,
            },
            PointTriple {
                points: mk(triangle_prime)?,
            },
        )
    }

    pub fn triangle(&self) -> &PointTriple {
        &self.triangle
    }

    pub fn triangle_prime(&self) -> &PointTriple {
        &self.triangle_prime
    }

    pub fn plane(&self) -> &Subspace {
        &self.plane
    }

    pub fn ambient_dim(&self) -> usize {
        self.plane.ambient_dim()
    }

    /// The configuration with both triangles relabeled by the same
    /// permutation of `{0,1,2}`.
    pub fn permuted(&self, perm: [usize; 3]) -> Self {
        let pick = |t: &PointTriple| PointTriple {
            points: [
                t.points[perm[0]].clone(),
                t.points[perm[1]].clone(),
                t.points[perm[2]].clone(),
            ],
        };
        Self {
            triangle: pick(&self.triangle),
            triangle_prime: pick(&self.triangle_prime),
            plane: self.plane.clone(),
        }
    }
}

/// Index pairs for the side opposite each vertex: `PAIR[k] = (i, j)` with
/// `{i, j, k} = {0, 1, 2}`.
const PAIR: [(usize, usize); 3] = [(1, 2), (0, 2), (0, 1)];

/// Sides, cross points and cross lines derived from a configuration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivedConfig {
    sides: [Subspace; 3],
    sides_prime: [Subspace; 3],
    cross_points: [Subspace; 3],
    cross_lines: [Subspace; 3],
}

impl DerivedConfig {
    /// `H_ij = h_i ∨ h_j` (0-indexed, order-insensitive).
    pub fn side(&self, i: usize, j: usize) -> &Subspace {
        &self.sides[pair_to_k(i, j)]
    }

    pub fn side_prime(&self, i: usize, j: usize) -> &Subspace {
        &self.sides_prime[pair_to_k(i, j)]
    }

    /// `𝔥_k = H_ij ∧ H'_ij` with `{i,j,k} = {0,1,2}`.
    pub fn cross_point(&self, k: usize) -> &Subspace {
        &self.cross_points[k]
    }

    pub fn cross_points(&self) -> &[Subspace; 3] {
        &self.cross_points
    }

    /// `ℋ_i = h_i ∨ h'_i`.
    pub fn cross_line(&self, i: usize) -> &Subspace {
        &self.cross_lines[i]
    }

    pub fn cross_lines(&self) -> &[Subspace; 3] {
        &self.cross_lines
    }
}

fn pair_to_k(i: usize, j: usize) -> usize {
    assert!(i < 3 && j < 3 && i != j, "invalid side pair ({i}, {j})");
    3 - i - j
}

/// Computes all sides, cross points and cross lines. Fails on degenerate
/// configurations: a shared vertex collapses a cross line below dimension 2,
/// a shared side pushes a cross point off dimension 1.
pub fn derive_config(config: &DesarguesConfig) -> Result<DerivedConfig, DegenerateConfig> {
    let h = config.triangle.points();
    let hp = config.triangle_prime.points();
    let join = |a: &Subspace, b: &Subspace| a.join(b).expect("same ambient");
    let meet = |a: &Subspace, b: &Subspace| a.meet(b).expect("same ambient");

    let cross_lines = [0, 1, 2].map(|i| join(&h[i], &hp[i]));
    for (i, line) in cross_lines.iter().enumerate() {
        if line.dim() != 2 {
            return Err(DegenerateConfig::SharedVertex { index: i + 1 });
        }
    }

    let sides = PAIR.map(|(i, j)| join(&h[i], &h[j]));
    let sides_prime = PAIR.map(|(i, j)| join(&hp[i], &hp[j]));
    let cross_points = [0, 1, 2].map(|k| meet(&sides[k], &sides_prime[k]));
    for (k, p) in cross_points.iter().enumerate() {
        if p.dim() != 1 {
            return Err(DegenerateConfig::CrossPointDim {
                index: k + 1,
                dim: p.dim(),
            });
        }
    }

    Ok(DerivedConfig {
        sides,
        sides_prime,
        cross_points,
        cross_lines,
    })
}

/// Whether the three cross lines meet in a single point; returns that
/// center when they do.
pub fn concurrent(derived: &DerivedConfig) -> (bool, Option<Subspace>) {
    let meet = derived.cross_lines[0]
        .meet(&derived.cross_lines[1])
        .and_then(|m| m.meet(&derived.cross_lines[2]))
        .expect("same ambient");
    if meet.dim() == 1 {
        (true, Some(meet))
    } else {
        (false, None)
    }
}

/// Whether the three cross points lie on one line; returns that axis when
/// they do.
pub fn collinear(derived: &DerivedConfig) -> (bool, Option<Subspace>) {
    let join = derived.cross_points[0]
        .join(&derived.cross_points[1])
        .and_then(|j| j.join(&derived.cross_points[2]))
        .expect("same ambient");
    if join.dim() == 2 {
        (true, Some(join))
    } else {
        (false, None)
    }
}

/// Full verification report for one configuration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigReport {
    pub concurrent: bool,
    pub collinear: bool,
    /// `concurrent == collinear`; must hold on every valid non-degenerate
    /// configuration.
    pub equivalence_ok: bool,
    /// `Π(ℋ3)·Π(ℋ1∧ℋ2) = Π(ℋ1∧ℋ2)`, exact.
    pub absorption_lhs: bool,
    /// `Π(𝔥1∨𝔥2)·Π(𝔥3) = Π(𝔥3)`, exact.
    pub absorption_rhs: bool,
    pub center: Option<Subspace>,
    pub axis: Option<Subspace>,
}

/// Derives the configuration and evaluates every predicate: concurrency,
/// collinearity, their equivalence, and both projector absorption
/// identities.
pub fn desargues_check(config: &DesarguesConfig) -> Result<ConfigReport, DegenerateConfig> {
    let derived = derive_config(config)?;
    let (is_concurrent, center) = concurrent(&derived);
    let (is_collinear, axis) = collinear(&derived);

    let cal_meet_12 = derived.cross_lines[0]
        .meet(&derived.cross_lines[1])
        .expect("same ambient");
    let absorption_lhs = derived.cross_lines[2]
        .projector()
        .absorbs(&cal_meet_12.projector())
        .expect("same ambient");

    let frak_join_12 = derived.cross_points[0]
        .join(&derived.cross_points[1])
        .expect("same ambient");
    let absorption_rhs = frak_join_12
        .projector()
        .absorbs(&derived.cross_points[2].projector())
        .expect("same ambient");

    Ok(ConfigReport {
        concurrent: is_concurrent,
        collinear: is_collinear,
        equivalence_ok: is_concurrent == is_collinear,
        absorption_lhs,
        absorption_rhs,
        center,
        axis,
    })
}

fn gaussian_integer(rng: &mut ChaCha8Rng) -> GaussianRational {
    GaussianRational::from_integers(rng.gen_range(-5..=5), rng.gen_range(-5..=5))
}

fn random_ambient_vector(rng: &mut ChaCha8Rng, d: usize) -> Vec<GaussianRational> {
    loop {
        let v: Vec<GaussianRational> = (0..d).map(|_| gaussian_integer(rng)).collect();
        if v.iter().any(|x| !x.is_zero()) {
            return v;
        }
    }
}

/// A nonzero Gaussian-integer combination of the columns of `basis`.
fn random_combo(rng: &mut ChaCha8Rng, basis: &ExactMatrix) -> Vec<GaussianRational> {
    loop {
        let coeffs: Vec<GaussianRational> =
            (0..basis.cols()).map(|_| gaussian_integer(rng)).collect();
        if coeffs.iter().all(GaussianRational::is_zero) {
            continue;
        }
        let mut out = vec![GaussianRational::zero(); basis.rows()];
        for (c, coeff) in coeffs.iter().enumerate() {
            for (r, slot) in out.iter_mut().enumerate() {
                *slot = &*slot + &(coeff * &basis[(r, c)]);
            }
        }
        // independent columns: nonzero coefficients give a nonzero vector
        return out;
    }
}

/// A random plane, returned with its raw Gaussian-integer spanning vectors
/// so that combinations drawn over them keep integer coordinates.
fn random_plane(rng: &mut ChaCha8Rng, d: usize) -> Option<ExactMatrix> {
    let vs = [
        random_ambient_vector(rng, d),
        random_ambient_vector(rng, d),
        random_ambient_vector(rng, d),
    ];
    let raw = ExactMatrix::from_columns(&vs, d).expect("lengths match");
    (raw.rank() == 3).then_some(raw)
}

const GENERATOR_ATTEMPTS: usize = 1000;

/// Deterministically generates a configuration whose cross lines are
/// concurrent by construction: a center point, three distinct lines through
/// it inside a random plane, and one vertex pair on each line.
///
/// Randomness comes from a ChaCha8 stream seeded with `seed`, with every
/// primitive draw a Gaussian integer whose components are uniform in
/// `[-5, 5]`; identical `(seed, d)` always yield the identical
/// configuration.
pub fn generate_desarguesian(seed: u64, d: usize) -> Result<DesarguesConfig, GenerateError> {
    if d < 3 {
        return Err(GenerateError::DimensionTooSmall { d });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..GENERATOR_ATTEMPTS {
        let Some(basis) = random_plane(&mut rng, d) else {
            continue;
        };
        let center_vec = random_combo(&mut rng, &basis);
        let center = Subspace::from_vectors(d, std::slice::from_ref(&center_vec))
            .expect("length matches");

        // three distinct lines through the center
        let mut directions = Vec::with_capacity(3);
        let mut lines: Vec<Subspace> = Vec::with_capacity(3);
        for _ in 0..3 {
            let dir = random_combo(&mut rng, &basis);
            let line = Subspace::from_vectors(d, &[center_vec.clone(), dir.clone()])
                .expect("length matches");
            if line.dim() != 2 || lines.contains(&line) {
                break;
            }
            directions.push(dir);
            lines.push(line);
        }
        if lines.len() != 3 {
            continue;
        }

        // on each line pick two points distinct from each other and from
        // the center: a·center + b·direction with b nonzero
        let pick_point = |rng: &mut ChaCha8Rng, dir: &[GaussianRational]| {
            loop {
                let a = gaussian_integer(rng);
                let b = gaussian_integer(rng);
                if b.is_zero() {
                    continue;
                }
                let v: Vec<GaussianRational> = center_vec
                    .iter()
                    .zip(dir)
                    .map(|(c, u)| &(&a * c) + &(&b * u))
                    .collect();
                return Subspace::from_vectors(d, &[v]).expect("length matches");
            }
        };
        let mut vertices = Vec::with_capacity(3);
        let mut vertices_prime = Vec::with_capacity(3);
        let mut ok = true;
        for dir in &directions {
            let h = pick_point(&mut rng, dir);
            let hp = pick_point(&mut rng, dir);
            if h == hp || h == center || hp == center {
                ok = false;
                break;
            }
            vertices.push(h);
            vertices_prime.push(hp);
        }
        if !ok {
            continue;
        }

        let triangle = match PointTriple::new([
            vertices[0].clone(),
            vertices[1].clone(),
            vertices[2].clone(),
        ]) {
            Ok(t) => t,
            Err(_) => continue,
        };
        let triangle_prime = match PointTriple::new([
            vertices_prime[0].clone(),
            vertices_prime[1].clone(),
            vertices_prime[2].clone(),
        ]) {
            Ok(t) => t,
            Err(_) => continue,
        };
        let Ok(config) = DesarguesConfig::new(triangle, triangle_prime) else {
            continue;
        };
        if derive_config(&config).is_ok() {
            return Ok(config);
        }
    }
    Err(GenerateError::AttemptsExhausted {
        attempts: GENERATOR_ATTEMPTS,
    })
}

/// Deterministically generates two random triangles in a common random
/// plane with no concurrency constraint. Same PRNG and coordinate
/// distribution as [`generate_desarguesian`].
pub fn generate_generic(seed: u64, d: usize) -> Result<DesarguesConfig, GenerateError> {
    if d < 3 {
        return Err(GenerateError::DimensionTooSmall { d });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..GENERATOR_ATTEMPTS {
        let Some(basis) = random_plane(&mut rng, d) else {
            continue;
        };
        let point = |rng: &mut ChaCha8Rng| {
            let v = random_combo(rng, &basis);
            Subspace::from_vectors(d, &[v]).expect("length matches")
        };
        let triangle = match PointTriple::new([
            point(&mut rng),
            point(&mut rng),
            point(&mut rng),
        ]) {
            Ok(t) => t,
            Err(_) => continue,
        };
        let triangle_prime = match PointTriple::new([
            point(&mut rng),
            point(&mut rng),
            point(&mut rng),
        ]) {
            Ok(t) => t,
            Err(_) => continue,
        };
        let Ok(config) = DesarguesConfig::new(triangle, triangle_prime) else {
            continue;
        };
        if derive_config(&config).is_ok() {
            return Ok(config);
        }
    }
    Err(GenerateError::AttemptsExhausted {
        attempts: GENERATOR_ATTEMPTS,
    })
}

/// On-disk form of a configuration: one spanning vector per vertex; the
/// plane is inferred, never supplied.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DesarguesConfigFile {
    pub d: usize,
    pub triangle: [Vec<GaussianRational>; 3],
    pub triangle_prime: [Vec<GaussianRational>; 3],
}

impl DesarguesConfigFile {
    pub fn to_config(&self) -> Result<DesarguesConfig, ConfigError> {
        DesarguesConfig::from_vectors(self.d, &self.triangle, &self.triangle_prime)
    }

    /// Canonical rendering: each vertex as its ray normalized to leading
    /// entry 1.
    pub fn from_config(config: &DesarguesConfig) -> Self {
        let ray = |s: &Subspace| s.ray().expect("vertices are points");
        Self {
            d: config.ambient_dim(),
            triangle: [
                ray(config.triangle().point(0)),
                ray(config.triangle().point(1)),
                ray(config.triangle().point(2)),
            ],
            triangle_prime: [
                ray(config.triangle_prime().point(0)),
                ray(config.triangle_prime().point(1)),
                ray(config.triangle_prime().point(2)),
            ],
        }
    }
}

/// Report form of a [`ConfigReport`]: rays rendered as exact vectors
/// normalized to leading entry 1, the axis as its canonical basis.
#[derive(Debug, Clone, Serialize)]
pub struct ConfigReportDoc {
    pub concurrent: bool,
    pub collinear: bool,
    pub equivalence_ok: bool,
    pub absorption_lhs: bool,
    pub absorption_rhs: bool,
    pub center: Option<Vec<GaussianRational>>,
    pub axis: Option<Vec<Vec<GaussianRational>>>,
}

impl ConfigReportDoc {
    pub fn new(report: &ConfigReport) -> Self {
        Self {
            concurrent: report.concurrent,
            collinear: report.collinear,
            equivalence_ok: report.equivalence_ok,
            absorption_lhs: report.absorption_lhs,
            absorption_rhs: report.absorption_rhs,
            center: report
                .center
                .as_ref()
                .map(|c| c.ray().expect("center is a point")),
            axis: report.axis.as_ref().map(|a| a.basis().columns()),
        }
    }
}
