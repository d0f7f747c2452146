use thiserror::Error;

/// Errors raised by the geometry and matrix-analysis routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeoError {
    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),
    #[error("dimension mismatch: expected order {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("matrix is singular (reciprocal condition {rcond:e})")]
    Singular { rcond: f64 },
    #[error("spectrum touches the closed negative real axis at {re} + {im}i")]
    SpectrumOnCut { re: f64, im: f64 },
    #[error("spectrum is not positive real: eigenvalue {re} + {im}i")]
    SpectrumNotPositive { re: f64, im: f64 },
    #[error("matrix is not special orthogonal (orthogonality defect {defect:e}, det {det})")]
    NotSpecialOrthogonal { defect: f64, det: f64 },
    #[error("metric Gram matrix is degenerate (smallest |eigenvalue| {smallest:e})")]
    DegenerateMetric { smallest: f64 },
    #[error("matrix is not unimodular: det = {det}")]
    NotUnimodular { det: f64 },
    #[error("determinant must be positive, got {det}")]
    NonPositiveDeterminant { det: f64 },
    #[error("matrix is not symmetric positive definite")]
    NotSpd,
    #[error("matrix is not symmetric (asymmetry {asymmetry:e})")]
    NotSymmetric { asymmetry: f64 },
    #[error("arc classification is ambiguous at tolerance {tol:e}")]
    IllConditioned { tol: f64 },
    #[error("the geodesic arc is not unique (verdict: {verdict})")]
    NotUnique { verdict: String },
    #[error("endpoints lie in different components of GL(n)")]
    DifferentComponents,
    #[error("2-section is degenerate (denominator {denominator:e})")]
    DegenerateSection { denominator: f64 },
    #[error("vectors are linearly dependent")]
    LinearlyDependent,
    #[error("closed-form and finite-difference values disagree by {discrepancy:e} (tolerance {tolerance:e})")]
    OracleMismatch { discrepancy: f64, tolerance: f64 },
    #[error("vector is not tangent to the leaf: tr(K^-1 X) = {trace:e}")]
    NotTangent { trace: f64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl GeoError {
    /// Stable kebab-case identifier used in machine-readable output.
    pub fn code(&self) -> &'static str {
        match self {
            GeoError::InvalidMatrix(_) => "invalid-matrix",
            GeoError::DimensionMismatch { .. } => "dimension-mismatch",
            GeoError::Singular { .. } => "singular",
            GeoError::SpectrumOnCut { .. } => "spectrum-on-cut",
            GeoError::SpectrumNotPositive { .. } => "spectrum-not-positive",
            GeoError::NotSpecialOrthogonal { .. } => "not-special-orthogonal",
            GeoError::DegenerateMetric { .. } => "degenerate-metric",
            GeoError::NotUnimodular { .. } => "not-unimodular",
            GeoError::NonPositiveDeterminant { .. } => "non-positive-determinant",
            GeoError::NotSpd => "not-spd",
            GeoError::NotSymmetric { .. } => "not-symmetric",
            GeoError::IllConditioned { .. } => "ill-conditioned",
            GeoError::NotUnique { .. } => "not-unique",
            GeoError::DifferentComponents => "different-components",
            GeoError::DegenerateSection { .. } => "degenerate-section",
            GeoError::LinearlyDependent => "linearly-dependent",
            GeoError::OracleMismatch { .. } => "oracle-mismatch",
            GeoError::NotTangent { .. } => "not-tangent",
            GeoError::InvalidArgument(_) => "invalid-argument",
        }
    }
}

pub type Result<T> = std::result::Result<T, GeoError>;
