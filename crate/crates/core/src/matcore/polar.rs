use nalgebra::DMatrix;

use crate::error::{GeoError, Result};
use crate::matrix::{SquareMatrix, SINGULAR_RCOND};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolarSide {
    /// `A = O · P`
    Left,
    /// `A = P · O`
    Right,
}

/// Orthogonal and symmetric positive definite factors of an invertible matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct PolarFactors {
    pub orthogonal: SquareMatrix,
    pub positive: SquareMatrix,
    pub side: PolarSide,
}

impl PolarFactors {
    /// Product of the factors in the declared order.
    pub fn recompose(&self) -> SquareMatrix {
        match self.side {
            PolarSide::Left => &self.orthogonal * &self.positive,
            PolarSide::Right => &self.positive * &self.orthogonal,
        }
    }
}

/// Polar decomposition from the SVD `A = U Σ Vᵀ`: `O = U Vᵀ`, and
/// `P = V Σ Vᵀ` (left) or `P = U Σ Uᵀ` (right).
pub fn polar_decompose(a: &SquareMatrix, side: PolarSide) -> Result<PolarFactors> {
    let rcond = a.rcond();
    if !(rcond > SINGULAR_RCOND) {
        return Err(GeoError::Singular { rcond });
    }
    let svd = a.as_dmatrix().clone().svd(true, true);
    let u = svd.u.expect("requested U");
    let v_t = svd.v_t.expect("requested Vᵀ");
    let sigma = DMatrix::from_diagonal(&svd.singular_values);
    let orthogonal = &u * &v_t;
    let positive = match side {
        PolarSide::Left => v_t.transpose() * sigma * &v_t,
        PolarSide::Right => &u * sigma * u.transpose(),
    };
    let positive = (&positive + positive.transpose()) * 0.5;
    Ok(PolarFactors {
        orthogonal: SquareMatrix::wrap(orthogonal),
        positive: SquareMatrix::wrap(positive),
        side,
    })
}
