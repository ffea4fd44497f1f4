//! Floating-point mirror of the exact matrices.
//!
//! Used only where exactness is impossible or pointless: measurement
//! arithmetic on decimal input states and display rounding. Lattice
//! predicates never go through this module.

use std::ops::Index;

use num_complex::Complex64;

use crate::tolerances;

pub type ComplexFloat = Complex64;

/// Dense row-major matrix over `Complex64`. All entries are finite.
#[derive(Debug, Clone, PartialEq)]
pub struct FloatMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Complex64>,
}

impl FloatMatrix {
    pub fn from_entries(rows: usize, cols: usize, entries: Vec<Complex64>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count mismatch");
        debug_assert!(entries.iter().all(|e| e.re.is_finite() && e.im.is_finite()));
        Self {
            rows,
            cols,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn mul_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        (0..self.rows)
            .map(|r| {
                (0..self.cols)
                    .map(|c| self[(r, c)] * v[c])
                    .sum::<Complex64>()
            })
            .collect()
    }

    /// Numerical column rank by column-pivoted Gram-Schmidt orthogonalization.
    ///
    /// A column counts toward the rank while its residual norm exceeds
    /// [`tolerances::FLOAT_RANK_RELATIVE`] times the largest input column
    /// norm. This is the fallback for caller-supplied decimal data; exact
    /// inputs should use [`ExactMatrix::rank`](super::ExactMatrix::rank).
    pub fn rank(&self) -> usize {
        let mut cols: Vec<Vec<Complex64>> = (0..self.cols)
            .map(|c| (0..self.rows).map(|r| self[(r, c)]).collect())
            .collect();
        let norm = |v: &[Complex64]| v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let max_norm = cols.iter().map(|c| norm(c)).fold(0.0, f64::max);
        if max_norm == 0.0 {
            return 0;
        }
        let threshold = tolerances::FLOAT_RANK_RELATIVE * max_norm;
        let mut rank = 0;
        while !cols.is_empty() {
            let (best, best_norm) = cols
                .iter()
                .enumerate()
                .map(|(i, c)| (i, norm(c)))
                .max_by(|a, b| a.1.total_cmp(&b.1))
                .expect("nonempty");
            if best_norm <= threshold {
                break;
            }
            rank += 1;
            let q: Vec<Complex64> = cols.swap_remove(best)
                .into_iter()
                .map(|z| z / best_norm)
                .collect();
            for col in &mut cols {
                let overlap: Complex64 = q.iter().zip(col.iter()).map(|(a, b)| a.conj() * b).sum();
                for (ci, qi) in col.iter_mut().zip(&q) {
                    *ci -= overlap * qi;
                }
            }
        }
        rank
    }

    /// Entries as `[re, im]` pairs rounded to `decimals` places, row-major.
    pub fn rounded(&self, decimals: u32) -> Vec<Vec<[f64; 2]>> {
        let scale = 10f64.powi(decimals as i32);
        let round = |x: f64| (x * scale).round() / scale;
        (0..self.rows)
            .map(|r| {
                (0..self.cols)
                    .map(|c| [round(self[(r, c)].re), round(self[(r, c)].im)])
                    .collect()
            })
            .collect()
    }

    /// Largest entrywise absolute difference against another matrix of the
    /// same shape.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

impl Index<(usize, usize)> for FloatMatrix {
    type Output = Complex64;
    fn index(&self, (r, c): (usize, usize)) -> &Complex64 {
        assert!(r < self.rows && c < self.cols, "index out of bounds");
        &self.entries[r * self.cols + c]
    }
}
