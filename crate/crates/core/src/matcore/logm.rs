//! Principal real logarithm and real fractional powers.
//!
//! The logarithm runs the block Schur–Parlett recurrence on the complex Schur
//! form; each diagonal block is handled by inverse scaling and squaring
//! (repeated triangular square roots followed by a Gauss–Legendre evaluation
//! of `log(I + X)`, which coincides with the diagonal Padé approximant).

use std::sync::OnceLock;

use nalgebra::DMatrix;

use super::expm::expm_dense;
use super::schur::{schur_parlett, solve_upper, sqrt_upper_triangular, ComplexSchur, C64};
use crate::error::{GeoError, Result};
use crate::matrix::SquareMatrix;

const QUADRATURE_POINTS: usize = 8;
const ISS_RADIUS: f64 = 0.25;
const MAX_SQRTS: usize = 100;

/// Gauss–Legendre nodes and weights on `[0, 1]`.
fn gauss_legendre() -> &'static [(f64, f64)] {
    static NODES: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    NODES.get_or_init(|| {
        let m = QUADRATURE_POINTS;
        let mut out = Vec::with_capacity(m);
        for i in 0..m {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (m as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                // Legendre recurrence for P_m(x) and P_m'(x)
                let (mut p0, mut p1) = (1.0, x);
                for k in 2..=m {
                    let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                    p0 = p1;
                    p1 = p2;
                }
                dp = m as f64 * (x * p1 - p0) / (x * x - 1.0);
                let step = p1 / dp;
                x -= step;
                if step.abs() < 1e-16 {
                    break;
                }
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            out.push(((x + 1.0) / 2.0, w / 2.0));
        }
        out
    })
}

fn one_norm_c(a: &DMatrix<C64>) -> f64 {
    a.column_iter()
        .map(|c| c.iter().map(|x| x.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Principal logarithm of an upper-triangular block by inverse scaling and squaring.
fn iss_log_triangular(t: &DMatrix<C64>) -> Result<DMatrix<C64>> {
    let m = t.nrows();
    let eye = DMatrix::<C64>::identity(m, m);
    let mut r = t.clone();
    let mut s = 0;
    while one_norm_c(&(&r - &eye)) > ISS_RADIUS {
        if s == MAX_SQRTS {
            return Err(GeoError::InvalidMatrix(
                "inverse scaling and squaring did not converge".into(),
            ));
        }
        r = sqrt_upper_triangular(&r);
        s += 1;
    }
    let x = &r - &eye;
    let mut f = DMatrix::<C64>::zeros(m, m);
    for &(node, weight) in gauss_legendre() {
        let denom = &eye + &x * C64::new(node, 0.0);
        f += solve_upper(&denom, &x) * C64::new(weight, 0.0);
    }
    f *= C64::new(2f64.powi(s as i32), 0.0);
    for i in 0..m {
        f[(i, i)] = t[(i, i)].ln();
    }
    Ok(f)
}

/// `true` when `λ` counts as a negative real number at tolerance `tol`.
pub(crate) fn is_negative_real(l: C64, tol: f64) -> bool {
    l.im.abs() <= tol * l.norm().max(1.0) && l.re < 0.0
}

/// `true` when `λ` counts as a positive real number at tolerance `tol`.
pub(crate) fn is_positive_real(l: C64, tol: f64) -> bool {
    l.im.abs() <= tol * l.norm().max(1.0) && l.re > 0.0
}

pub(crate) fn principal_log_dense(a: &DMatrix<f64>, tol: f64) -> Result<DMatrix<f64>> {
    let mut schur = ComplexSchur::of_real(a)?;
    for l in schur.eigenvalues() {
        if is_negative_real(l, tol) {
            return Err(GeoError::SpectrumOnCut { re: l.re, im: l.im });
        }
    }
    let f = schur_parlett(&mut schur, iss_log_triangular)?;
    let l = &schur.q * f * schur.q.adjoint();
    Ok(l.map(|z| z.re))
}

/// Principal real logarithm: the real `L` with `e^L = A` and spectrum in `|Im| < π`.
pub fn real_log_principal(a: &SquareMatrix, tol: f64) -> Result<SquareMatrix> {
    let rcond = a.rcond();
    if !(rcond > crate::matrix::SINGULAR_RCOND) {
        return Err(GeoError::Singular { rcond });
    }
    principal_log_dense(a.as_dmatrix(), tol).map(SquareMatrix::wrap)
}

/// Real fractional power `A^t = exp(t log A)` for a matrix with positive real spectrum.
pub fn fractional_power(a: &SquareMatrix, t: f64, tol: f64) -> Result<SquareMatrix> {
    let schur = ComplexSchur::of_real(a.as_dmatrix())?;
    for l in schur.eigenvalues() {
        if !is_positive_real(l, tol) {
            return Err(GeoError::SpectrumNotPositive { re: l.re, im: l.im });
        }
    }
    let log = real_log_principal(a, tol)?;
    Ok(SquareMatrix::wrap(expm_dense(&(log.as_dmatrix() * t))))
}
