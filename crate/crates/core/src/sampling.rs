//! Seeded random matrices for property checks and the verification suites.
//!
//! Invertible samples draw entries uniformly from `[−1, 1]` and are redrawn
//! until `|det| ≥ 0.1` and `σ_max / σ_min ≤ 100`.

use rand::Rng;

use crate::matcore::{polar_decompose, PolarSide};
use crate::matrix::SquareMatrix;

pub const MIN_ABS_DET: f64 = 0.1;
pub const MAX_CONDITION: f64 = 100.0;

/// Entries uniform in `[−1, 1]`.
pub fn random_matrix<R: Rng + ?Sized>(rng: &mut R, n: usize) -> SquareMatrix {
    let entries = (0..n * n).map(|_| rng.random_range(-1.0..=1.0)).collect();
    SquareMatrix::new(n, entries).expect("finite entries")
}

pub fn random_invertible<R: Rng + ?Sized>(rng: &mut R, n: usize) -> SquareMatrix {
    loop {
        let m = random_matrix(rng, n);
        if m.det().abs() >= MIN_ABS_DET && m.rcond() * MAX_CONDITION >= 1.0 {
            return m;
        }
    }
}

/// Invertible sample with determinant of the requested sign.
pub fn random_invertible_with_sign<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    positive: bool,
) -> SquareMatrix {
    let m = random_invertible(rng, n);
    if (m.det() > 0.0) == positive {
        m
    } else {
        let mut flip = SquareMatrix::identity(n);
        flip = flip - SquareMatrix::unit(n, 0, 0) * 2.0;
        &flip * &m
    }
}

/// `G Gᵀ` for an invertible sample `G`.
pub fn random_spd<R: Rng + ?Sized>(rng: &mut R, n: usize) -> SquareMatrix {
    let g = random_invertible(rng, n);
    (&g * &g.transpose()).symmetric_part()
}

pub fn random_symmetric<R: Rng + ?Sized>(rng: &mut R, n: usize) -> SquareMatrix {
    random_matrix(rng, n).symmetric_part()
}

/// Invertible sample rescaled to determinant one.
pub fn random_unimodular<R: Rng + ?Sized>(rng: &mut R, n: usize) -> SquareMatrix {
    let g = random_invertible_with_sign(rng, n, true);
    let scale = g.det().powf(-1.0 / n as f64);
    g * scale
}

/// Orthogonal factor of an invertible sample, with determinant `+1`.
pub fn random_rotation<R: Rng + ?Sized>(rng: &mut R, n: usize) -> SquareMatrix {
    let g = random_invertible_with_sign(rng, n, true);
    polar_decompose(&g, PolarSide::Left)
        .expect("sample is invertible")
        .orthogonal
}
