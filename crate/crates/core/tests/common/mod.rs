#![allow(dead_code)]

use proptest::prelude::*;
use tracegeo::matcore::mat_exp;
use tracegeo::sampling::{MAX_CONDITION, MIN_ABS_DET};
use tracegeo::SquareMatrix;

pub fn entries(n: usize) -> impl Strategy<Value = SquareMatrix> {
    prop::collection::vec(-1.0f64..=1.0, n * n).prop_map(move |v| SquareMatrix::new(n, v).unwrap())
}

/// Uniform entries, kept when `|det| ≥ 0.1` and the condition number is at most 100.
pub fn invertible(n: usize) -> impl Strategy<Value = SquareMatrix> {
    entries(n).prop_filter("ill-conditioned sample", |m| {
        m.det().abs() >= MIN_ABS_DET && m.rcond() * MAX_CONDITION >= 1.0
    })
}

pub fn positive_det(n: usize) -> impl Strategy<Value = SquareMatrix> {
    invertible(n).prop_map(|m| {
        if m.det() > 0.0 {
            m
        } else {
            let mut flip = vec![1.0; m.n()];
            flip[0] = -1.0;
            &SquareMatrix::diag(&flip).unwrap() * &m
        }
    })
}

pub fn unimodular(n: usize) -> impl Strategy<Value = SquareMatrix> {
    positive_det(n).prop_map(|m| {
        let s = m.det().powf(-1.0 / m.n() as f64);
        m.scale(s)
    })
}

pub fn spd(n: usize) -> impl Strategy<Value = SquareMatrix> {
    invertible(n).prop_map(|g| (&g * &g.transpose()).symmetric_part())
}

pub fn symmetric(n: usize) -> impl Strategy<Value = SquareMatrix> {
    entries(n).prop_map(|m| m.symmetric_part())
}

/// `e^B` with `‖B‖₂ ≤ 3`, so the spectrum stays clear of the negative real axis.
pub fn principal_domain(n: usize) -> impl Strategy<Value = SquareMatrix> {
    entries(n).prop_map(|b| {
        let norm = b.spectral_norm();
        let b = if norm > 3.0 { b.scale(3.0 / norm) } else { b };
        mat_exp(&b)
    })
}

/// `G D G⁻¹` with `D` diagonal in `[0.5, 2]`.
pub fn positive_spectrum(n: usize) -> impl Strategy<Value = SquareMatrix> {
    (invertible(n), prop::collection::vec(0.5f64..=2.0, n)).prop_map(|(g, d)| {
        let d = SquareMatrix::diag(&d).unwrap();
        &(&g * &d) * &g.inverse().unwrap()
    })
}

pub fn order() -> impl Strategy<Value = usize> {
    2usize..=4
}

pub fn rel_close(got: f64, want: f64, tol: f64) -> bool {
    (got - want).abs() <= tol * want.abs().max(1.0)
}

/// Uniform entries rescaled so that `‖C‖₂ ≤ 1`.
pub fn direction(n: usize) -> impl Strategy<Value = SquareMatrix> {
    entries(n).prop_map(|c| {
        let norm = c.spectral_norm();
        if norm > 1.0 {
            c.scale(1.0 / norm)
        } else {
            c
        }
    })
}
