//! The modular orthocomplemented lattice of subspaces of a d-dimensional
//! complex space.
//!
//! A [`Subspace`] is stored as the canonical reduced-column-echelon basis of
//! its span, so equality of subspaces is plain structural equality and every
//! lattice predicate (join, meet, order, orthocomplement, the dimension
//! formula, modularity) is decided exactly over Gaussian rationals.
//!
//! Meets are computed two independent ways — through the null space of the
//! stacked system `B1·x = B2·y` and through De Morgan duality — and the test
//! suite holds the two routes to exact agreement.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::{ExactMatrix, FloatMatrix, GaussianRational, MatrixError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("ambient dimensions differ: {left} vs {right}")]
    AmbientMismatch { left: usize, right: usize },
    #[error("vector {index} has length {found}, expected {expected}")]
    VectorLength {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("first operand is not contained in the second")]
    NotWithin,
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// A linear subspace of the ambient `d`-dimensional complex space, in
/// canonical form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient_dim: usize,
    basis: ExactMatrix,
}

impl Subspace {
    /// The zero subspace `O`.
    pub fn zero(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            basis: ExactMatrix::zeros(ambient_dim, 0),
        }
    }

    /// The full space `I`.
    pub fn full(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            basis: ExactMatrix::identity(ambient_dim),
        }
    }

    /// Canonical span of the given vectors; the list may be empty or
    /// linearly dependent.
    pub fn from_vectors(
        ambient_dim: usize,
        vectors: &[Vec<GaussianRational>],
    ) -> Result<Self, LatticeError> {
        for (index, v) in vectors.iter().enumerate() {
            if v.len() != ambient_dim {
                return Err(LatticeError::VectorLength {
                    index,
                    expected: ambient_dim,
                    found: v.len(),
                });
            }
        }
        let m = ExactMatrix::from_columns(vectors, ambient_dim).expect("lengths checked");
        Ok(Self::from_matrix(&m))
    }

    /// Canonical span of the columns of `m`.
    pub fn from_matrix(m: &ExactMatrix) -> Self {
        let (basis, _rank) = m.rcef();
        Self {
            ambient_dim: m.rows(),
            basis,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    /// Canonical basis, one column per dimension.
    pub fn basis(&self) -> &ExactMatrix {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim
    }

    /// For a one-dimensional subspace, the canonical spanning vector
    /// (leading entry 1).
    pub fn ray(&self) -> Option<Vec<GaussianRational>> {
        (self.dim() == 1).then(|| self.basis.column(0))
    }

    fn check_ambient(&self, other: &Self) -> Result<(), LatticeError> {
        if self.ambient_dim != other.ambient_dim {
            return Err(LatticeError::AmbientMismatch {
                left: self.ambient_dim,
                right: other.ambient_dim,
            });
        }
        Ok(())
    }

    /// `H1 ∨ H2`: the span of the union.
    pub fn join(&self, other: &Self) -> Result<Self, LatticeError> {
        self.check_ambient(other)?;
        let stacked = self.basis.hstack(&other.basis).expect("same ambient");
        Ok(Self::from_matrix(&stacked))
    }

    /// `H1 ∧ H2`: the intersection, via the null space of the stacked
    /// system `B1·x = B2·y`.
    pub fn meet(&self, other: &Self) -> Result<Self, LatticeError> {
        self.check_ambient(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.ambient_dim));
        }
        let minus_b2 = other.basis.scale(&-GaussianRational::one());
        let stacked = self.basis.hstack(&minus_b2).expect("same ambient");
        let kernel = stacked.null_space();
        // each kernel column (x, y) gives the intersection vector B1·x
        let k1 = self.basis.cols();
        let mut coeffs = ExactMatrix::zeros(k1, kernel.cols());
        for r in 0..k1 {
            for c in 0..kernel.cols() {
                coeffs[(r, c)] = kernel[(r, c)].clone();
            }
        }
        let vectors = self.basis.mul(&coeffs).expect("shapes agree");
        Ok(Self::from_matrix(&vectors))
    }

    /// `H1 ∧ H2` computed through De Morgan duality:
    /// `(H1⊥ ∨ H2⊥)⊥`. Exists as an independent cross-check of [`meet`].
    ///
    /// [`meet`]: Self::meet
    pub fn meet_via_complements(&self, other: &Self) -> Result<Self, LatticeError> {
        self.check_ambient(other)?;
        Ok(self
            .orthocomplement()
            .join(&other.orthocomplement())?
            .orthocomplement())
    }

    /// Partial order: true when `self` is a subspace of `other`.
    pub fn leq(&self, other: &Self) -> Result<bool, LatticeError> {
        Ok(&self.join(other)? == other)
    }

    /// `H⊥`: all vectors orthogonal to `H`.
    pub fn orthocomplement(&self) -> Self {
        Self::from_matrix(&self.basis.adjoint().null_space())
    }

    /// Orthocomplement of `self` taken inside `within`, i.e. the unique `R`
    /// with `self ∧ R = O`, `self ∨ R = within` and `R ⊥ self`.
    pub fn relative_orthocomplement(&self, within: &Self) -> Result<Self, LatticeError> {
        if !self.leq(within)? {
            return Err(LatticeError::NotWithin);
        }
        self.orthocomplement().meet(within)
    }

    /// The projector onto this subspace, `Π = A(A†A)⁻¹A†`, computed exactly
    /// from the canonical basis. The zero subspace maps to the zero matrix.
    pub fn projector(&self) -> Projector {
        let matrix = if self.is_zero() {
            ExactMatrix::zeros(self.ambient_dim, self.ambient_dim)
        } else {
            let a = &self.basis;
            let adj = a.adjoint();
            let gram = adj.mul(a).expect("shapes agree");
            let gram_inv = gram
                .inverse()
                .expect("Gram matrix of an independent basis is invertible");
            a.mul(&gram_inv)
                .and_then(|m| m.mul(&adj))
                .expect("shapes agree")
        };
        Projector {
            ambient_dim: self.ambient_dim,
            source_dim: self.dim(),
            matrix,
        }
    }

    /// Exact membership test for a single vector.
    pub fn contains_vector(&self, v: &[GaussianRational]) -> Result<bool, LatticeError> {
        if v.len() != self.ambient_dim {
            return Err(LatticeError::VectorLength {
                index: 0,
                expected: self.ambient_dim,
                found: v.len(),
            });
        }
        if v.iter().all(GaussianRational::is_zero) {
            return Ok(true);
        }
        if self.is_zero() {
            return Ok(false);
        }
        Ok(self.basis.solve(v).is_some())
    }
}

/// `dim(H1∨H2) + dim(H1∧H2) = dim(H1) + dim(H2)` — the dimension identity
/// of modular lattices, exposed as a self-test.
pub fn dim_formula_check(h1: &Subspace, h2: &Subspace) -> Result<bool, LatticeError> {
    let join = h1.join(h2)?;
    let meet = h1.meet(h2)?;
    Ok(join.dim() + meet.dim() == h1.dim() + h2.dim())
}

/// `H1 ≺ H3 ⟹ H1 ∨ (H2 ∧ H3) = (H1 ∨ H2) ∧ H3` — the modular law,
/// exposed as a self-test. Errors when the precondition `H1 ≺ H3` fails.
pub fn modularity_check(
    h1: &Subspace,
    h2: &Subspace,
    h3: &Subspace,
) -> Result<bool, LatticeError> {
    if !h1.leq(h3)? {
        return Err(LatticeError::NotWithin);
    }
    let lhs = h1.join(&h2.meet(h3)?)?;
    let rhs = h1.join(h2)?.meet(h3)?;
    Ok(lhs == rhs)
}

/// Hermitian idempotent matrix projecting onto a subspace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Projector {
    ambient_dim: usize,
    source_dim: usize,
    matrix: ExactMatrix,
}

impl Projector {
    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Dimension of the range, equal to the exact trace.
    pub fn source_dim(&self) -> usize {
        self.source_dim
    }

    pub fn matrix(&self) -> &ExactMatrix {
        &self.matrix
    }

    /// Absorption: `self · other == other`, i.e. `range(other) ⊆ range(self)`.
    /// Strictly stronger than commutation.
    pub fn absorbs(&self, other: &Self) -> Result<bool, LatticeError> {
        self.check_ambient(other)?;
        Ok(self.matrix.mul(&other.matrix).expect("same shape") == other.matrix)
    }

    /// Exact commutator test `[self, other] = 0`.
    pub fn commutes_with(&self, other: &Self) -> Result<bool, LatticeError> {
        self.check_ambient(other)?;
        let ab = self.matrix.mul(&other.matrix).expect("same shape");
        let ba = other.matrix.mul(&self.matrix).expect("same shape");
        Ok(ab == ba)
    }

    pub fn to_float(&self) -> Result<FloatMatrix, MatrixError> {
        self.matrix.to_float()
    }

    fn check_ambient(&self, other: &Self) -> Result<(), LatticeError> {
        if self.ambient_dim != other.ambient_dim {
            return Err(LatticeError::AmbientMismatch {
                left: self.ambient_dim,
                right: other.ambient_dim,
            });
        }
        Ok(())
    }
}

/// On-disk form of a subspace: spanning vectors that need not be canonical.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SubspaceConfig {
    pub d: usize,
    pub vectors: Vec<Vec<GaussianRational>>,
}

impl SubspaceConfig {
    pub fn to_subspace(&self) -> Result<Subspace, LatticeError> {
        Subspace::from_vectors(self.d, &self.vectors)
    }

    pub fn from_subspace(s: &Subspace) -> Self {
        Self {
            d: s.ambient_dim(),
            vectors: s.basis().columns(),
        }
    }
}

/// Report form of a projector: exact entries plus a four-decimal float
/// rendering matching printed tables.
#[derive(Debug, Clone, Serialize)]
pub struct ProjectorReport {
    pub d: usize,
    pub dim: usize,
    pub exact: Vec<Vec<GaussianRational>>,
    pub float: Vec<Vec<[f64; 2]>>,
}

impl ProjectorReport {
    pub fn new(p: &Projector) -> Self {
        let float = p
            .to_float()
            .expect("projector entries are small rationals")
            .rounded(4);
        let exact = (0..p.ambient_dim())
            .map(|r| {
                (0..p.ambient_dim())
                    .map(|c| p.matrix()[(r, c)].clone())
                    .collect()
            })
            .collect();
        Self {
            d: p.ambient_dim(),
            dim: p.source_dim(),
            exact,
            float,
        }
    }
}
