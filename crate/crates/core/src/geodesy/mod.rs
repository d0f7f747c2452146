//! Levi-Civita connection, geodesics `t ↦ K e^{tC}`, arcs between two points
//! and singly broken arcs.

mod arcs;

pub use arcs::{broken_arc, classify_arc, unique_arc, ArcClassification, ArcVerdict, BrokenArc};

use nalgebra::SymmetricEigen;

use crate::error::{GeoError, Result};
use crate::matcore::mat_exp;
use crate::matrix::SquareMatrix;

/// Default central-difference step.
pub const DEFAULT_FD_STEP: f64 = 1e-4;

const SYMMETRY_TOL: f64 = 1e-10;

/// The curve `t ↦ K e^{tC}`.
#[derive(Debug, Clone, PartialEq)]
pub struct Geodesic {
    base: SquareMatrix,
    direction: SquareMatrix,
}

impl Geodesic {
    pub fn new(base: SquareMatrix, direction: SquareMatrix) -> Result<Self> {
        base.check_same_order(&direction)?;
        base.inverse()?;
        Ok(Geodesic { base, direction })
    }

    pub fn base(&self) -> &SquareMatrix {
        &self.base
    }

    pub fn direction(&self) -> &SquareMatrix {
        &self.direction
    }

    pub fn eval(&self, t: f64) -> SquareMatrix {
        &self.base * &mat_exp(&self.direction.scale(t))
    }

    /// `Ṗ(t) = K e^{tC} C`
    pub fn velocity(&self, t: f64) -> SquareMatrix {
        &self.eval(t) * &self.direction
    }

    /// The same direction started from `P(s)`.
    pub fn shifted(&self, s: f64) -> Geodesic {
        Geodesic {
            base: self.eval(s),
            direction: self.direction.clone(),
        }
    }
}

/// Geodesic through `K` with initial velocity `S`: `(K, K⁻¹S)`.
pub fn geodesic_from_velocity(k: &SquareMatrix, s: &SquareMatrix) -> Result<Geodesic> {
    k.check_same_order(s)?;
    let c = &k.inverse()? * s;
    Geodesic::new(k.clone(), c)
}

fn check_symmetric(m: &SquareMatrix) -> Result<()> {
    let asymmetry = m.asymmetry();
    if asymmetry > SYMMETRY_TOL * m.frobenius_norm().max(1.0) {
        return Err(GeoError::NotSymmetric { asymmetry });
    }
    Ok(())
}

/// `K^{1/2} exp(t K^{-1/2} S K^{-1/2}) K^{1/2}` for `K` positive definite and `S` symmetric.
pub fn spd_geodesic(k: &SquareMatrix, s: &SquareMatrix, t: f64) -> Result<SquareMatrix> {
    k.check_same_order(s)?;
    check_symmetric(k)?;
    check_symmetric(s)?;
    let eig = SymmetricEigen::new(k.symmetric_part().into_dmatrix());
    if eig.eigenvalues.iter().any(|&l| !(l > 0.0)) {
        return Err(GeoError::NotSpd);
    }
    let q = &eig.eigenvectors;
    let root =
        q * nalgebra::DMatrix::from_diagonal(&eig.eigenvalues.map(f64::sqrt)) * q.transpose();
    let inv_root = q
        * nalgebra::DMatrix::from_diagonal(&eig.eigenvalues.map(|l| l.sqrt().recip()))
        * q.transpose();
    let inner = SquareMatrix::wrap(&inv_root * s.as_dmatrix() * &inv_root).symmetric_part();
    let mid = mat_exp(&inner.scale(t));
    Ok(SquareMatrix::wrap(&root * mid.as_dmatrix() * &root).symmetric_part())
}

/// `(∇_X Y)_P = X(Y)_P − ½(X_P P⁻¹ Y_P + Y_P P⁻¹ X_P)`
pub fn nabla(
    p: &SquareMatrix,
    xp: &SquareMatrix,
    yp: &SquareMatrix,
    euc_deriv: &SquareMatrix,
) -> Result<SquareMatrix> {
    p.check_same_order(xp)?;
    p.check_same_order(yp)?;
    p.check_same_order(euc_deriv)?;
    let p_inv = p.inverse()?;
    let sym = &(&(xp * &p_inv) * yp) + &(&(yp * &p_inv) * xp);
    Ok(euc_deriv - &sym.scale(0.5))
}

/// `‖P̈ − Ṗ P⁻¹ Ṗ‖_F` at `t`, with both derivatives by central differences of step `h`.
pub fn curve_residual<F>(curve: F, t: f64, h: f64) -> Result<f64>
where
    F: Fn(f64) -> SquareMatrix,
{
    if !(h > 0.0) {
        return Err(GeoError::InvalidArgument(format!(
            "step {h} must be positive"
        )));
    }
    let (before, at, after) = (curve(t - h), curve(t), curve(t + h));
    let first = (&after - &before).scale(0.5 / h);
    let second = (&(&after - &at.scale(2.0)) + &before).scale(1.0 / (h * h));
    let correction = &(&first * &at.inverse()?) * &first;
    Ok((&second - &correction).frobenius_norm())
}

pub fn geodesic_residual(geo: &Geodesic, t: f64, h: f64) -> Result<f64> {
    curve_residual(|s| geo.eval(s), t, h)
}
