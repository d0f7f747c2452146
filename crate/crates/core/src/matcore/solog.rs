use std::f64::consts::PI;

use nalgebra::DMatrix;

use super::schur::real_schur;
use crate::error::{GeoError, Result};
use crate::matrix::SquareMatrix;

fn canonical_angle(theta: f64) -> f64 {
    if theta <= -PI {
        PI
    } else {
        theta
    }
}

/// Skew-symmetric logarithm of a special orthogonal matrix.
///
/// The real Schur form of an orthogonal matrix is block diagonal with planar
/// rotations and `±1` entries. Each rotation contributes its angle in
/// `(−π, π]`; the `−1` entries (an even number of them) are paired in order
/// into rotations by `π`.
pub fn so_log(o: &SquareMatrix, tol: f64) -> Result<SquareMatrix> {
    let n = o.n();
    let a = o.as_dmatrix();
    let defect = (a.transpose() * a - DMatrix::<f64>::identity(n, n)).norm();
    let det = o.det();
    if defect > tol * (n as f64).max(1.0) || det <= 0.0 {
        return Err(GeoError::NotSpecialOrthogonal { defect, det });
    }

    let (z, t) = real_schur(a)?;
    let mut log_t = DMatrix::<f64>::zeros(n, n);
    let mut negatives = Vec::new();
    let mut i = 0;
    while i < n {
        let is_pair = i + 1 < n && t[(i + 1, i)] != 0.0;
        if is_pair {
            let theta = canonical_angle(f64::atan2(
                0.5 * (t[(i + 1, i)] - t[(i, i + 1)]),
                0.5 * (t[(i, i)] + t[(i + 1, i + 1)]),
            ));
            log_t[(i, i + 1)] = -theta;
            log_t[(i + 1, i)] = theta;
            i += 2;
        } else {
            if t[(i, i)] < 0.0 {
                negatives.push(i);
            }
            i += 1;
        }
    }
    if negatives.len() % 2 == 1 {
        return Err(GeoError::NotSpecialOrthogonal { defect, det });
    }
    for pair in negatives.chunks(2) {
        let (p, q) = (pair[0], pair[1]);
        log_t[(p, q)] = -PI;
        log_t[(q, p)] = PI;
    }
    let l = &z * log_t * z.transpose();
    Ok(SquareMatrix::wrap((&l - l.transpose()) * 0.5))
}
