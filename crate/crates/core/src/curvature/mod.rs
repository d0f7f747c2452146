//! Riemann, sectional, Ricci and scalar curvature of the trace metric, with
//! `R_{XY}Z = −∇_X∇_Y Z + ∇_Y∇_X Z`.

mod oracle;

pub use oracle::{
    christoffel_closed, christoffel_fd, christoffel_fd_oracle, christoffel_fd_tolerance,
    ricci_trace_oracle, Christoffel, ChristoffelCheck, ROUNDOFF_CONSTANT, TRUNCATION_CONSTANT,
};

use nalgebra::DMatrix;

use crate::error::{GeoError, Result};
use crate::matrix::SquareMatrix;
use crate::metricspace::trace_metric;

const TANGENT_TOL: f64 = 1e-10;
const SECTION_TOL: f64 = 1e-10;
const DEPENDENCE_TOL: f64 = 1e-12;

fn check_orders(k: &SquareMatrix, args: &[&SquareMatrix]) -> Result<()> {
    args.iter().try_for_each(|a| k.check_same_order(a))
}

pub(crate) fn riemann_13_with_inverse(
    k_inv: &SquareMatrix,
    x: &SquareMatrix,
    y: &SquareMatrix,
    z: &SquareMatrix,
) -> SquareMatrix {
    let left = (k_inv * x).commutator(&(k_inv * y));
    let right = (x * k_inv).commutator(&(y * k_inv));
    (&(z * &left) - &(&right * z)).scale(-0.25)
}

/// `(R_{XY}Z)_K = −¼ (Z [K⁻¹X, K⁻¹Y] − [XK⁻¹, YK⁻¹] Z)`
pub fn riemann_13(
    k: &SquareMatrix,
    x: &SquareMatrix,
    y: &SquareMatrix,
    z: &SquareMatrix,
) -> Result<SquareMatrix> {
    check_orders(k, &[x, y, z])?;
    Ok(riemann_13_with_inverse(&k.inverse()?, x, y, z))
}

/// `R_{XYZW}(K) = ¼ tr([K⁻¹X, K⁻¹Y] [K⁻¹Z, K⁻¹W])`
pub fn riemann_04(
    k: &SquareMatrix,
    x: &SquareMatrix,
    y: &SquareMatrix,
    z: &SquareMatrix,
    w: &SquareMatrix,
) -> Result<f64> {
    check_orders(k, &[x, y, z, w])?;
    let k_inv = k.inverse()?;
    let first = (&k_inv * x).commutator(&(&k_inv * y));
    let second = (&k_inv * z).commutator(&(&k_inv * w));
    Ok(0.25 * (&first * &second).trace())
}

/// Sectional curvature of the plane spanned by `X` and `Y` at `K`.
///
/// The denominator is compared against `‖K⁻¹X‖²_F ‖K⁻¹Y‖²_F`, which bounds it.
pub fn sectional(k: &SquareMatrix, x: &SquareMatrix, y: &SquareMatrix) -> Result<f64> {
    check_orders(k, &[x, y])?;
    let n = k.n();
    let pair = DMatrix::from_fn(n * n, 2, |r, c| {
        let m = if c == 0 { x } else { y };
        m.as_dmatrix()[r]
    });
    let sv = pair.singular_values();
    let (hi, lo) = (sv.max(), sv.min());
    if !(lo > DEPENDENCE_TOL * hi) {
        return Err(GeoError::LinearlyDependent);
    }
    let k_inv = k.inverse()?;
    let (kx, ky) = (&k_inv * x, &k_inv * y);
    let gxx = (&kx * &kx).trace();
    let gyy = (&ky * &ky).trace();
    let gxy = (&kx * &ky).trace();
    let denominator = gxx * gyy - gxy * gxy;
    let scale = (kx.frobenius_norm() * ky.frobenius_norm()).powi(2);
    if denominator.abs() <= SECTION_TOL * scale {
        return Err(GeoError::DegenerateSection { denominator });
    }
    let c = kx.commutator(&ky);
    Ok(0.25 * (&c * &c).trace() / denominator)
}

/// `Ric_K(X, Y) = ½ tr(K⁻¹X) tr(K⁻¹Y) − (n/2) g_K(X, Y)`
pub fn ricci(k: &SquareMatrix, x: &SquareMatrix, y: &SquareMatrix) -> Result<f64> {
    check_orders(k, &[x, y])?;
    let k_inv = k.inverse()?;
    let (kx, ky) = (&k_inv * x, &k_inv * y);
    let n = k.n() as f64;
    Ok(0.5 * kx.trace() * ky.trace() - 0.5 * n * (&kx * &ky).trace())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Causal {
    SpaceLike,
    TimeLike,
}

impl Causal {
    pub fn sign(self) -> f64 {
        match self {
            Causal::SpaceLike => 1.0,
            Causal::TimeLike => -1.0,
        }
    }
}

/// Orthonormal frame `{K D_i, K S_ij, K A_ij}` with
/// `D_i = E_ii`, `S_ij = (E_ij + E_ji)/√2`, `A_ij = (E_ij − E_ji)/√2`, `i < j`.
#[derive(Debug, Clone, PartialEq)]
pub struct OrthonormalFrame {
    pub base_point: SquareMatrix,
    pub vectors: Vec<SquareMatrix>,
    pub causal: Vec<Causal>,
}

impl OrthonormalFrame {
    pub fn at_identity(n: usize) -> Self {
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let mut vectors = Vec::with_capacity(n * n);
        let mut causal = Vec::with_capacity(n * n);
        for i in 0..n {
            vectors.push(SquareMatrix::unit(n, i, i));
            causal.push(Causal::SpaceLike);
        }
        for (sign, kind) in [(1.0, Causal::SpaceLike), (-1.0, Causal::TimeLike)] {
            for i in 0..n {
                for j in i + 1..n {
                    let v = &SquareMatrix::unit(n, i, j) + &SquareMatrix::unit(n, j, i).scale(sign);
                    vectors.push(v.scale(r));
                    causal.push(kind);
                }
            }
        }
        OrthonormalFrame {
            base_point: SquareMatrix::identity(n),
            vectors,
            causal,
        }
    }

    /// Left translate of the frame at `I`.
    pub fn at(k: &SquareMatrix) -> Result<Self> {
        k.inverse()?;
        let base = Self::at_identity(k.n());
        Ok(OrthonormalFrame {
            base_point: k.clone(),
            vectors: base.vectors.iter().map(|v| k * v).collect(),
            causal: base.causal,
        })
    }

    /// Largest deviation of `g(v_a, v_b)` from `±δ_ab`.
    pub fn orthonormality_defect(&self) -> Result<f64> {
        let mut worst = 0.0f64;
        for (a, va) in self.vectors.iter().enumerate() {
            for (b, vb) in self.vectors.iter().enumerate() {
                let want = if a == b { self.causal[a].sign() } else { 0.0 };
                worst = worst.max((trace_metric(&self.base_point, va, vb)? - want).abs());
            }
        }
        Ok(worst)
    }
}

/// `Σ_a ε_a Ric_K(e_a, e_a)` over the orthonormal frame at `K`.
pub fn scalar_curvature(k: &SquareMatrix) -> Result<f64> {
    let frame = OrthonormalFrame::at(k)?;
    frame
        .vectors
        .iter()
        .zip(&frame.causal)
        .map(|(v, c)| Ok(c.sign() * ricci(k, v, v)?))
        .sum()
}

/// `−(n+1) n (n−1) / 2`
pub fn expected_scalar_curvature(n: usize) -> f64 {
    let n = n as f64;
    -(n + 1.0) * n * (n - 1.0) / 2.0
}

/// `(Ric_K(X, Y), −(n/2) g_K(X, Y))` for `X`, `Y` tangent to the leaf through `K`.
pub fn sl_einstein_check(
    k: &SquareMatrix,
    x: &SquareMatrix,
    y: &SquareMatrix,
) -> Result<(f64, f64)> {
    check_orders(k, &[x, y])?;
    let k_inv = k.inverse()?;
    for v in [x, y] {
        let kv = &k_inv * v;
        let trace = kv.trace();
        if trace.abs() > TANGENT_TOL * kv.frobenius_norm().max(1.0) {
            return Err(GeoError::NotTangent { trace });
        }
    }
    let n = k.n() as f64;
    Ok((ricci(k, x, y)?, -0.5 * n * trace_metric(k, x, y)?))
}
