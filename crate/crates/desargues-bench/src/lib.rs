//! Shared helpers for the benchmark targets.

use desargues_core::exact::{ExactMatrix, GaussianRational};
use desargues_core::lattice::Subspace;

/// A reproducible pseudo-random Gaussian-integer matrix (splitmix-style
/// stream; no external RNG needed for fixtures).
pub fn fixture_matrix(seed: u64, rows: usize, cols: usize) -> ExactMatrix {
    let mut state = seed.wrapping_add(0x9E3779B97F4A7C15);
    let mut next = move || {
        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        let x = (state >> 33) as i64;
        (x % 11) - 5
    };
    let entries: Vec<Vec<GaussianRational>> = (0..rows)
        .map(|_| {
            (0..cols)
                .map(|_| GaussianRational::from_integers(next(), next()))
                .collect()
        })
        .collect();
    ExactMatrix::from_rows(entries).expect("rectangular")
}

pub fn fixture_subspace(seed: u64, d: usize, k: usize) -> Subspace {
    Subspace::from_matrix(&fixture_matrix(seed, d, k))
}
