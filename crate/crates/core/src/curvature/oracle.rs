//! Independent numerical checks of the closed curvature formulas: the Ricci
//! trace over the coordinate basis, and Christoffel symbols two ways.

use nalgebra::DMatrix;

use super::riemann_13_with_inverse;
use crate::error::{GeoError, Result};
use crate::matrix::SquareMatrix;
use crate::metricspace::{coordinate_basis, gram_matrix, gram_with_inverse, metric_with_inverse};

pub const TRUNCATION_CONSTANT: f64 = 1e3;
pub const ROUNDOFF_CONSTANT: f64 = 1e2;

fn inverse_gram(k_inv: &SquareMatrix) -> Result<DMatrix<f64>> {
    gram_with_inverse(k_inv)
        .try_inverse()
        .ok_or(GeoError::DegenerateMetric { smallest: 0.0 })
}

/// Trace of `Z ↦ R_{XZ}Y`, reading each coordinate through the metric:
/// `V^α = Σ_β g^{αβ} g(V, E_β)`.
pub fn ricci_trace_oracle(k: &SquareMatrix, x: &SquareMatrix, y: &SquareMatrix) -> Result<f64> {
    k.check_same_order(x)?;
    k.check_same_order(y)?;
    let k_inv = k.inverse()?;
    let g_inv = inverse_gram(&k_inv)?;
    let basis = coordinate_basis(k.n());
    let mut trace = 0.0;
    for (alpha, e_alpha) in basis.iter().enumerate() {
        let v = riemann_13_with_inverse(&k_inv, x, e_alpha, y);
        trace += basis
            .iter()
            .enumerate()
            .map(|(beta, e_beta)| g_inv[(alpha, beta)] * metric_with_inverse(&k_inv, &v, e_beta))
            .sum::<f64>();
    }
    Ok(trace)
}

/// Christoffel symbols `Γ^γ_{αβ}` in the coordinate basis.
#[derive(Debug, Clone, PartialEq)]
pub struct Christoffel {
    dim: usize,
    values: Vec<f64>,
}

impl Christoffel {
    fn zeros(dim: usize) -> Self {
        Christoffel {
            dim,
            values: vec![0.0; dim * dim * dim],
        }
    }

    fn index(&self, gamma: usize, alpha: usize, beta: usize) -> usize {
        (gamma * self.dim + alpha) * self.dim + beta
    }

    /// Number of coordinates, `n²`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, gamma: usize, alpha: usize, beta: usize) -> f64 {
        self.values[self.index(gamma, alpha, beta)]
    }

    fn set(&mut self, gamma: usize, alpha: usize, beta: usize, value: f64) {
        let i = self.index(gamma, alpha, beta);
        self.values[i] = value;
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn max_difference(&self, other: &Christoffel) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }

    /// Largest `|Γ^γ_{αβ} − Γ^γ_{βα}|`.
    pub fn asymmetry(&self) -> f64 {
        let d = self.dim;
        let mut worst = 0.0f64;
        for g in 0..d {
            for a in 0..d {
                for b in 0..d {
                    worst = worst.max((self.get(g, a, b) - self.get(g, b, a)).abs());
                }
            }
        }
        worst
    }

    /// `∇_X Y = Σ X^α Y^β Γ^γ_{αβ} E_γ` for constant fields `X`, `Y`.
    pub fn covariant_derivative(&self, x: &SquareMatrix, y: &SquareMatrix) -> SquareMatrix {
        let n = x.n();
        let (xs, ys) = (x.as_dmatrix().as_slice(), y.as_dmatrix().as_slice());
        let mut out = DMatrix::zeros(n, n);
        for g in 0..self.dim {
            let mut s = 0.0;
            for a in 0..self.dim {
                for b in 0..self.dim {
                    s += xs[a] * ys[b] * self.get(g, a, b);
                }
            }
            out[g] = s;
        }
        SquareMatrix::wrap(out)
    }
}

/// `Γ^γ_{αβ} = −½ Σ_δ g^{γδ} {tr(P⁻¹E_α P⁻¹E_β P⁻¹E_δ) + tr(P⁻¹E_β P⁻¹E_α P⁻¹E_δ)}`
pub fn christoffel_closed(p: &SquareMatrix) -> Result<Christoffel> {
    let q = p.inverse()?;
    let g_inv = inverse_gram(&q)?;
    let basis = coordinate_basis(p.n());
    let dim = basis.len();
    let qeq: Vec<SquareMatrix> = basis.iter().map(|e| &(&q * e) * &q).collect();
    let mut out = Christoffel::zeros(dim);
    for alpha in 0..dim {
        for beta in alpha..dim {
            let m = &(&qeq[alpha] * &basis[beta]) + &(&qeq[beta] * &basis[alpha]);
            // tr(M E_kl) = M_lk
            let traces: Vec<f64> = (0..dim)
                .map(|delta| {
                    let (k, l) = (delta % p.n(), delta / p.n());
                    (&m * &q).get(l, k)
                })
                .collect();
            for gamma in 0..dim {
                let s: f64 = (0..dim)
                    .map(|delta| g_inv[(gamma, delta)] * traces[delta])
                    .sum();
                out.set(gamma, alpha, beta, -0.5 * s);
                out.set(gamma, beta, alpha, -0.5 * s);
            }
        }
    }
    Ok(out)
}

/// `Γ^γ_{αβ} = ½ Σ_δ g^{γδ} (g_{αδ,β} + g_{βδ,α} − g_{αβ,δ})` with metric
/// derivatives by central differences of step `h`.
pub fn christoffel_fd(p: &SquareMatrix, h: f64) -> Result<Christoffel> {
    if !(h > 0.0) {
        return Err(GeoError::InvalidArgument(format!(
            "step {h} must be positive"
        )));
    }
    let g_inv = inverse_gram(&p.inverse()?)?;
    let basis = coordinate_basis(p.n());
    let dim = basis.len();
    let derivatives = basis
        .iter()
        .map(|e| {
            let plus = gram_matrix(&(p + &e.scale(h)))?;
            let minus = gram_matrix(&(p - &e.scale(h)))?;
            Ok((plus - minus) / (2.0 * h))
        })
        .collect::<Result<Vec<DMatrix<f64>>>>()?;
    let mut out = Christoffel::zeros(dim);
    for gamma in 0..dim {
        for alpha in 0..dim {
            for beta in 0..dim {
                let s: f64 = (0..dim)
                    .map(|delta| {
                        let bracket = derivatives[beta][(alpha, delta)]
                            + derivatives[alpha][(beta, delta)]
                            - derivatives[delta][(alpha, beta)];
                        g_inv[(gamma, delta)] * bracket
                    })
                    .sum();
                out.set(gamma, alpha, beta, 0.5 * s);
            }
        }
    }
    Ok(out)
}

/// Both Christoffel tables and their largest disagreement.
#[derive(Debug, Clone, PartialEq)]
pub struct ChristoffelCheck {
    pub closed: Christoffel,
    pub finite_difference: Christoffel,
    pub discrepancy: f64,
    pub tolerance: f64,
}

/// Error budget for [`christoffel_fd`] at `p`:
/// `max(1, max|Γ|) · (10³ (h/σ)² + 10² ε/(hσ))` with `σ = σ_min(p)`.
pub fn christoffel_fd_tolerance(p: &SquareMatrix, closed: &Christoffel, h: f64) -> f64 {
    let sigma = p
        .singular_values()
        .into_iter()
        .fold(f64::INFINITY, f64::min);
    let truncation = TRUNCATION_CONSTANT * (h / sigma).powi(2);
    let roundoff = ROUNDOFF_CONSTANT * f64::EPSILON / (h * sigma);
    closed.max_abs().max(1.0) * (truncation + roundoff)
}

/// Compares the closed Christoffel formula with the finite-difference one
/// against [`christoffel_fd_tolerance`].
pub fn christoffel_fd_oracle(p: &SquareMatrix, h: f64) -> Result<ChristoffelCheck> {
    let closed = christoffel_closed(p)?;
    let finite_difference = christoffel_fd(p, h)?;
    let discrepancy = closed.max_difference(&finite_difference);
    let tolerance = christoffel_fd_tolerance(p, &closed, h);
    if !(discrepancy <= tolerance) {
        return Err(GeoError::OracleMismatch {
            discrepancy,
            tolerance,
        });
    }
    Ok(ChristoffelCheck {
        closed,
        finite_difference,
        discrepancy,
        tolerance,
    })
}
