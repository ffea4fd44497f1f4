//! Dense matrices over Gaussian rationals with exact elimination.
//!
//! Everything here is exact: ranks, echelon forms, null spaces and inverses
//! are computed with no tolerances, which is what makes subspace equality a
//! total, decidable relation in the lattice layer.

use std::fmt;
use std::ops::{Index, IndexMut};

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use super::float::FloatMatrix;
use super::scalar::GaussianRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatrixError {
    #[error("shape mismatch: {left_rows}x{left_cols} vs {right_rows}x{right_cols}")]
    ShapeMismatch {
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },
    #[error("ragged input: row {row} has length {found}, expected {expected}")]
    RaggedInput {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("entry does not fit in a finite double")]
    NonFinite,
}

/// Dense row-major matrix over [`GaussianRational`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<GaussianRational>,
}

// Wire format: row-major nested arrays.
impl Serialize for ExactMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<&GaussianRational>> = (0..self.rows)
            .map(|r| (0..self.cols).map(|c| &self[(r, c)]).collect())
            .collect();
        rows.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ExactMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let rows = Vec::<Vec<GaussianRational>>::deserialize(deserializer)?;
        Self::from_rows(rows).map_err(D::Error::custom)
    }
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![GaussianRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = GaussianRational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<GaussianRational>>) -> Result<Self, MatrixError> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != ncols {
                return Err(MatrixError::RaggedInput {
                    row: i,
                    expected: ncols,
                    found: row.len(),
                });
            }
        }
        Ok(Self {
            rows: nrows,
            cols: ncols,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// Builds a matrix whose columns are the given vectors. The row count is
    /// explicit so that an empty list still has a well-defined shape.
    pub fn from_columns(
        columns: &[Vec<GaussianRational>],
        rows: usize,
    ) -> Result<Self, MatrixError> {
        for (i, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(MatrixError::RaggedInput {
                    row: i,
                    expected: rows,
                    found: col.len(),
                });
            }
        }
        let mut m = Self::zeros(rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            for (r, v) in col.iter().enumerate() {
                m[(r, c)] = v.clone();
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, c: usize) -> Vec<GaussianRational> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<GaussianRational>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].conj();
            }
        }
        t
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self, MatrixError> {
        if self.cols != rhs.rows {
            return Err(self.shape_mismatch(rhs));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for c in 0..rhs.cols {
                let mut acc = GaussianRational::zero();
                for k in 0..self.cols {
                    if !self[(r, k)].is_zero() && !rhs[(k, c)].is_zero() {
                        acc = &acc + &(&self[(r, k)] * &rhs[(k, c)]);
                    }
                }
                out[(r, c)] = acc;
            }
        }
        Ok(out)
    }

    pub fn add(&self, rhs: &Self) -> Result<Self, MatrixError> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(self.shape_mismatch(rhs));
        }
        let mut out = self.clone();
        for (a, b) in out.entries.iter_mut().zip(&rhs.entries) {
            *a = &*a + b;
        }
        Ok(out)
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self, MatrixError> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(self.shape_mismatch(rhs));
        }
        let mut out = self.clone();
        for (a, b) in out.entries.iter_mut().zip(&rhs.entries) {
            *a = &*a - b;
        }
        Ok(out)
    }

    pub fn scale(&self, k: &GaussianRational) -> Self {
        let mut out = self.clone();
        for e in &mut out.entries {
            *e = &*e * k;
        }
        out
    }

    /// Horizontal concatenation `[self | rhs]`.
    pub fn hstack(&self, rhs: &Self) -> Result<Self, MatrixError> {
        if self.rows != rhs.rows {
            return Err(self.shape_mismatch(rhs));
        }
        let mut out = Self::zeros(self.rows, self.cols + rhs.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out[(r, c)] = self[(r, c)].clone();
            }
            for c in 0..rhs.cols {
                out[(r, self.cols + c)] = rhs[(r, c)].clone();
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(GaussianRational::is_zero)
    }

    pub fn is_hermitian(&self) -> bool {
        if self.rows != self.cols {
            return false;
        }
        for r in 0..self.rows {
            for c in r..self.cols {
                if self[(r, c)] != self[(c, r)].conj() {
                    return false;
                }
            }
        }
        true
    }

    /// Sum of diagonal entries. Panics on non-square input.
    pub fn trace(&self) -> GaussianRational {
        assert_eq!(self.rows, self.cols, "trace of a non-square matrix");
        let mut acc = GaussianRational::zero();
        for i in 0..self.rows {
            acc = &acc + &self[(i, i)];
        }
        acc
    }

    /// Reduced row echelon form together with the pivot column indices.
    ///
    /// Pivot rows come first, are scaled to a leading 1 and are the only
    /// rows with a nonzero entry in their pivot column.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut next_row = 0;
        for col in 0..m.cols {
            if next_row == m.rows {
                break;
            }
            let Some(pivot_row) = (next_row..m.rows).find(|&r| !m[(r, col)].is_zero()) else {
                continue;
            };
            m.swap_rows(pivot_row, next_row);
            let inv = m[(next_row, col)].inv().expect("pivot is nonzero");
            for c in col..m.cols {
                m[(next_row, c)] = &m[(next_row, c)] * &inv;
            }
            for r in 0..m.rows {
                if r != next_row && !m[(r, col)].is_zero() {
                    let factor = m[(r, col)].clone();
                    for c in col..m.cols {
                        let delta = &factor * &m[(next_row, c)];
                        m[(r, c)] = &m[(r, c)] - &delta;
                    }
                }
            }
            pivots.push(col);
            next_row += 1;
        }
        (m, pivots)
    }

    /// Canonical reduced column echelon form of the column space.
    ///
    /// Zero columns are dropped, every pivot is 1, pivot rows are zero in all
    /// other columns, and pivot positions move strictly down the matrix from
    /// one column to the next. Two matrices have the same canonical form
    /// exactly when their column spans coincide, so this is the normal form
    /// behind subspace equality.
    pub fn rcef(&self) -> (Self, usize) {
        let (reduced, pivots) = self.transpose().rref();
        let rank = pivots.len();
        let mut canonical = Self::zeros(self.rows, rank);
        for r in 0..rank {
            for c in 0..self.rows {
                canonical[(c, r)] = reduced[(r, c)].clone();
            }
        }
        (canonical, rank)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// A basis of `{x : Mx = 0}`, one column per free variable of the
    /// reduced system. The result has `cols() - rank()` columns and
    /// `M · null_space(M) = 0` exactly.
    pub fn null_space(&self) -> Self {
        let (reduced, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Self::zeros(self.cols, free.len());
        for (k, &f) in free.iter().enumerate() {
            basis[(f, k)] = GaussianRational::one();
            for (i, &p) in pivots.iter().enumerate() {
                basis[(p, k)] = -&reduced[(i, f)];
            }
        }
        basis
    }

    /// A particular solution of `self · x = rhs`, or `None` when the system
    /// is inconsistent. Free variables are set to zero.
    pub fn solve(&self, rhs: &[GaussianRational]) -> Option<Vec<GaussianRational>> {
        assert_eq!(rhs.len(), self.rows, "right-hand side length mismatch");
        let rhs_col = Self::from_columns(&[rhs.to_vec()], self.rows).expect("checked length");
        let augmented = self.hstack(&rhs_col).expect("same row count");
        let (reduced, pivots) = augmented.rref();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![GaussianRational::zero(); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = reduced[(i, self.cols)].clone();
        }
        Some(x)
    }

    /// Exact inverse by Gauss-Jordan elimination.
    ///
    /// The callers in this crate apply it to Gram matrices `A†A` of
    /// full-column-rank `A`, which are Hermitian positive definite and hence
    /// always invertible; a `Singular` error there means the caller broke
    /// that precondition.
    pub fn inverse(&self) -> Result<Self, MatrixError> {
        if self.rows != self.cols {
            return Err(MatrixError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let augmented = self.hstack(&Self::identity(n))?;
        let (reduced, pivots) = augmented.rref();
        if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| i != p) {
            return Err(MatrixError::Singular);
        }
        let mut inv = Self::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                inv[(r, c)] = reduced[(r, n + c)].clone();
            }
        }
        Ok(inv)
    }

    /// Nearest-double conversion of every entry.
    pub fn to_float(&self) -> Result<FloatMatrix, MatrixError> {
        let mut entries = Vec::with_capacity(self.entries.len());
        for e in &self.entries {
            entries.push(e.to_complex_f64().ok_or(MatrixError::NonFinite)?);
        }
        Ok(FloatMatrix::from_entries(self.rows, self.cols, entries))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn shape_mismatch(&self, rhs: &Self) -> MatrixError {
        MatrixError::ShapeMismatch {
            left_rows: self.rows,
            left_cols: self.cols,
            right_rows: rhs.rows,
            right_cols: rhs.cols,
        }
    }
}

impl Index<(usize, usize)> for ExactMatrix {
    type Output = GaussianRational;
    fn index(&self, (r, c): (usize, usize)) -> &GaussianRational {
        assert!(r < self.rows && c < self.cols, "index out of bounds");
        &self.entries[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for ExactMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut GaussianRational {
        assert!(r < self.rows && c < self.cols, "index out of bounds");
        &mut self.entries[r * self.cols + c]
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            write!(f, "[")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self[(r, c)])?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}
