//! The trace metric, its signature, isometries, the determinant foliation and
//! the product splitting of the positive component.

mod foliation;
mod isometry;

pub use foliation::{
    leaf_base_point, leaf_isometry, leaf_of, product_forward, product_inverse, product_pushforward,
    sl_tangent_project, ProductPoint,
};
pub use isometry::{apply_isometry, pushforward, IsometryMap};

use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::{GeoError, Result};
use crate::matrix::SquareMatrix;

/// Counts of positive and negative directions of the metric at a point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MetricSignature {
    pub positive: usize,
    pub negative: usize,
}

impl MetricSignature {
    /// `(n(n+1)/2, n(n−1)/2)`
    pub fn expected(n: usize) -> Self {
        MetricSignature {
            positive: n * (n + 1) / 2,
            negative: n * (n - 1) / 2,
        }
    }
}

/// `g_A(V, W) = tr(A⁻¹ V A⁻¹ W)`
pub fn trace_metric(a: &SquareMatrix, v: &SquareMatrix, w: &SquareMatrix) -> Result<f64> {
    a.check_same_order(v)?;
    a.check_same_order(w)?;
    let inv = a.inverse()?;
    Ok(metric_with_inverse(&inv, v, w))
}

pub(crate) fn metric_with_inverse(inv: &SquareMatrix, v: &SquareMatrix, w: &SquareMatrix) -> f64 {
    let left = inv * v;
    let right = inv * w;
    // tr(LR) without forming the product
    let (l, r) = (left.as_dmatrix(), right.as_dmatrix());
    l.iter().zip(r.transpose().iter()).map(|(x, y)| x * y).sum()
}

/// Coordinate basis `{E_α}` of `M_n`, enumerated column by column:
/// `α = i + n·j` is the matrix unit `E_ij`.
pub fn coordinate_basis(n: usize) -> Vec<SquareMatrix> {
    (0..n * n)
        .map(|alpha| SquareMatrix::unit(n, alpha % n, alpha / n))
        .collect()
}

/// Gram matrix `g_A(E_α, E_β)` in the coordinate basis.
pub fn gram_matrix(a: &SquareMatrix) -> Result<DMatrix<f64>> {
    let inv = a.inverse()?;
    Ok(gram_with_inverse(&inv))
}

pub(crate) fn gram_with_inverse(inv: &SquareMatrix) -> DMatrix<f64> {
    let n = inv.n();
    let dim = n * n;
    // tr(A⁻¹ E_ij A⁻¹ E_kl) = (A⁻¹)_jk (A⁻¹)_li
    DMatrix::from_fn(dim, dim, |alpha, beta| {
        let (i, j) = (alpha % n, alpha / n);
        let (k, l) = (beta % n, beta / n);
        inv.get(j, k) * inv.get(l, i)
    })
}

/// Signature of `g_A` from the eigenvalues of its Gram matrix.
///
/// Eigenvalues with magnitude at most `1e−10` times the largest are treated as
/// a numerical breakdown and reported as [`GeoError::DegenerateMetric`].
pub fn signature_at(a: &SquareMatrix) -> Result<MetricSignature> {
    let gram = gram_matrix(a)?;
    let eig = SymmetricEigen::new(gram).eigenvalues;
    let largest = eig.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let threshold = 1e-10 * largest;
    let smallest = eig.iter().fold(f64::INFINITY, |m, x| m.min(x.abs()));
    if smallest <= threshold {
        return Err(GeoError::DegenerateMetric { smallest });
    }
    Ok(MetricSignature {
        positive: eig.iter().filter(|&&x| x > 0.0).count(),
        negative: eig.iter().filter(|&&x| x < 0.0).count(),
    })
}
