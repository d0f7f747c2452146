//! Semi-Riemannian geometry of `GL(n, ℝ)` under the trace metric
//! `g_A(V, W) = tr(A⁻¹ V A⁻¹ W)`.
//!
//! * [`matcore`]: exponential, real logarithms, fractional powers, Jordan
//!   structure, polar factors.
//! * [`metricspace`]: the metric, its signature, isometries, the `SL_n(c)`
//!   foliation and the product splitting `GL⁺_n ≅ SL_n × ℝ`.
//! * [`geodesy`]: Levi-Civita connection, geodesics, arcs between two points
//!   and singly broken arcs.
//! * [`curvature`]: Riemann, sectional, Ricci and scalar curvature with
//!   independent numerical oracles.
//!
//! Curvature follows the sign convention `R_{XY}Z = −∇_X∇_Y Z + ∇_Y∇_X Z`.

pub mod curvature;
pub mod error;
pub mod geodesy;
pub mod matcore;
pub mod matrix;
pub mod metricspace;
pub mod sampling;

pub use error::{GeoError, Result};
pub use matrix::SquareMatrix;
