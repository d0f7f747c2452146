//! Matrix analysis: exponential, logarithms, fractional powers, Jordan
//! structure, polar factors and the Cartan–Killing form of `gl(n)`.

mod expm;
mod jordan;
mod logm;
mod polar;
mod reallog;
pub(crate) mod schur;
mod solog;

pub use expm::mat_exp;
pub use jordan::{spectral_profile, EigenCluster, SpectralProfile};
pub use logm::{fractional_power, real_log_principal};
pub use polar::{polar_decompose, PolarFactors, PolarSide};
pub use reallog::real_log_any;
pub use solog::so_log;

use crate::error::Result;
use crate::matrix::SquareMatrix;

/// Default tolerance for eigenvalue clustering and spectrum-location decisions.
pub const DEFAULT_TOL: f64 = 1e-8;

/// `B(X, Y) = 2n tr(XY) − 2 tr(X) tr(Y)`.
pub fn cartan_killing(x: &SquareMatrix, y: &SquareMatrix) -> Result<f64> {
    x.check_same_order(y)?;
    let n = x.n() as f64;
    Ok(2.0 * n * (x * y).trace() - 2.0 * x.trace() * y.trace())
}
