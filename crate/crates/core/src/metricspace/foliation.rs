use crate::error::{GeoError, Result};
use crate::matrix::SquareMatrix;

use super::IsometryMap;

const UNIMODULAR_TOL: f64 = 1e-10;

/// `g_K`-orthogonal projection onto `T_K SL_n(det K) = {W : tr(K⁻¹W) = 0}`.
pub fn sl_tangent_project(k: &SquareMatrix, w: &SquareMatrix) -> Result<SquareMatrix> {
    k.check_same_order(w)?;
    let k_inv = k.inverse()?;
    let coeff = (&k_inv * w).trace() / k.n() as f64;
    Ok(w - &k.scale(coeff))
}

/// Point of `SL_n × ℝ`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductPoint {
    sl_part: SquareMatrix,
    line_part: f64,
}

impl ProductPoint {
    pub fn new(sl_part: SquareMatrix, line_part: f64) -> Result<Self> {
        let det = sl_part.det();
        if !((det - 1.0).abs() <= UNIMODULAR_TOL) {
            return Err(GeoError::NotUnimodular { det });
        }
        if !line_part.is_finite() {
            return Err(GeoError::InvalidArgument(format!(
                "line part {line_part} is not finite"
            )));
        }
        Ok(ProductPoint { sl_part, line_part })
    }

    pub fn sl_part(&self) -> &SquareMatrix {
        &self.sl_part
    }

    pub fn line_part(&self) -> f64 {
        self.line_part
    }
}

/// `F(P, x) = e^{x/√n} P`
pub fn product_forward(p: &ProductPoint) -> SquareMatrix {
    let n = p.sl_part.n() as f64;
    p.sl_part.scale((p.line_part / n.sqrt()).exp())
}

/// `F⁻¹(Q) = (Q / det(Q)^{1/n}, log det(Q) / √n)`
pub fn product_inverse(q: &SquareMatrix) -> Result<ProductPoint> {
    let det = q.det();
    if !(det > 0.0) {
        return Err(GeoError::NonPositiveDeterminant { det });
    }
    let n = q.n() as f64;
    let sl_part = q.scale(det.powf(-1.0 / n));
    ProductPoint::new(sl_part, det.ln() / n.sqrt())
}

/// `DF_{(P,x)}(M, a) = e^{x/√n} (M + (a/√n) P)`
pub fn product_pushforward(p: &ProductPoint, m: &SquareMatrix, a: f64) -> Result<SquareMatrix> {
    p.sl_part.check_same_order(m)?;
    let n = p.sl_part.n() as f64;
    let scale = (p.line_part / n.sqrt()).exp();
    Ok((m + &p.sl_part.scale(a / n.sqrt())).scale(scale))
}

/// Leaf label `c = det Q` of the foliation by `SL_n(c)`.
pub fn leaf_of(q: &SquareMatrix) -> Result<f64> {
    q.inverse()?;
    Ok(q.det())
}

/// `P₀ = |c|^{1/n} diag(sign c, 1, …, 1)`, a fixed point of the leaf `SL_n(c)`.
pub fn leaf_base_point(n: usize, c: f64) -> Result<SquareMatrix> {
    if n == 0 || c == 0.0 || !c.is_finite() {
        return Err(GeoError::InvalidArgument(format!(
            "no leaf with label {c} in order {n}"
        )));
    }
    let mut d = vec![c.abs().powf(1.0 / n as f64); n];
    d[0] *= c.signum();
    SquareMatrix::diag(&d)
}

/// Left translation by `P₀⁻¹`, carrying the leaf through `q` onto `SL_n`.
pub fn leaf_isometry(q: &SquareMatrix) -> Result<IsometryMap> {
    let c = leaf_of(q)?;
    let p0 = leaf_base_point(q.n(), c)?;
    Ok(IsometryMap::LeftTranslate(p0.inverse()?))
}
