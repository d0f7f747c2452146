//! Dense real square matrices: points of GL(n) and tangent vectors alike.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::DMatrix;

use crate::error::{GeoError, Result};

/// Reciprocal condition number below which a matrix is treated as singular.
pub const SINGULAR_RCOND: f64 = 1e-13;

/// A dense real `n × n` matrix with finite entries.
#[derive(Clone, PartialEq)]
pub struct SquareMatrix(DMatrix<f64>);

impl SquareMatrix {
    /// Builds a matrix of order `n` from row-major entries.
    pub fn new(n: usize, row_major: Vec<f64>) -> Result<Self> {
        if n == 0 {
            return Err(GeoError::InvalidMatrix("order must be positive".into()));
        }
        if row_major.len() != n * n {
            return Err(GeoError::InvalidMatrix(format!(
                "expected {} entries for order {n}, got {}",
                n * n,
                row_major.len()
            )));
        }
        Self::from_dmatrix(DMatrix::from_row_slice(n, n, &row_major))
    }

    /// Builds a matrix from a slice of rows; every row must have the same length as the number of rows.
    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let n = rows.len();
        let mut flat = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != n {
                return Err(GeoError::InvalidMatrix(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            flat.extend_from_slice(row);
        }
        Self::new(n, flat)
    }

    pub fn from_dmatrix(m: DMatrix<f64>) -> Result<Self> {
        if !m.is_square() || m.nrows() == 0 {
            return Err(GeoError::InvalidMatrix(format!(
                "matrix must be square and non-empty, got {}x{}",
                m.nrows(),
                m.ncols()
            )));
        }
        if m.iter().any(|x| !x.is_finite()) {
            return Err(GeoError::InvalidMatrix("entries must be finite".into()));
        }
        Ok(SquareMatrix(m))
    }

    /// Wraps the output of internal arithmetic without re-validating it.
    pub(crate) fn wrap(m: DMatrix<f64>) -> Self {
        debug_assert!(m.is_square());
        SquareMatrix(m)
    }

    pub fn identity(n: usize) -> Self {
        SquareMatrix(DMatrix::identity(n, n))
    }

    pub fn zeros(n: usize) -> Self {
        SquareMatrix(DMatrix::zeros(n, n))
    }

    /// The matrix unit `E_ij` (zero-based indices).
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = DMatrix::zeros(n, n);
        m[(i, j)] = 1.0;
        SquareMatrix(m)
    }

    pub fn diag(values: &[f64]) -> Result<Self> {
        let n = values.len();
        let mut flat = vec![0.0; n * n];
        for (i, v) in values.iter().enumerate() {
            flat[i * n + i] = *v;
        }
        Self::new(n, flat)
    }

    pub fn n(&self) -> usize {
        self.0.nrows()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.0[(i, j)]
    }

    pub fn as_dmatrix(&self) -> &DMatrix<f64> {
        &self.0
    }

    pub fn into_dmatrix(self) -> DMatrix<f64> {
        self.0
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        (0..self.n())
            .map(|i| (0..self.n()).map(|j| self.0[(i, j)]).collect())
            .collect()
    }

    pub fn transpose(&self) -> Self {
        SquareMatrix(self.0.transpose())
    }

    pub fn trace(&self) -> f64 {
        self.0.trace()
    }

    pub fn det(&self) -> f64 {
        self.0.determinant()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.0.norm()
    }

    /// Largest singular value.
    pub fn spectral_norm(&self) -> f64 {
        self.singular_values().first().copied().unwrap_or(0.0)
    }

    /// Singular values in non-increasing order.
    pub fn singular_values(&self) -> Vec<f64> {
        let mut s: Vec<f64> = self.0.singular_values().iter().copied().collect();
        s.sort_by(|a, b| b.total_cmp(a));
        s
    }

    /// `σ_min / σ_max`; zero for the zero matrix.
    pub fn rcond(&self) -> f64 {
        let s = self.singular_values();
        let max = s[0];
        if max == 0.0 {
            0.0
        } else {
            s[s.len() - 1] / max
        }
    }

    pub fn scale(&self, a: f64) -> Self {
        SquareMatrix(&self.0 * a)
    }

    /// Inverse, refusing matrices whose reciprocal condition is below [`SINGULAR_RCOND`].
    pub fn inverse(&self) -> Result<Self> {
        let rcond = self.rcond();
        if !(rcond > SINGULAR_RCOND) {
            return Err(GeoError::Singular { rcond });
        }
        self.0
            .clone()
            .lu()
            .try_inverse()
            .map(SquareMatrix)
            .ok_or(GeoError::Singular { rcond })
    }

    pub fn is_invertible(&self) -> bool {
        self.rcond() > SINGULAR_RCOND
    }

    pub fn commutator(&self, other: &SquareMatrix) -> SquareMatrix {
        self * other - other * self
    }

    /// Largest absolute entry of `self - selfᵀ`.
    pub fn asymmetry(&self) -> f64 {
        (&self.0 - self.0.transpose()).amax()
    }

    pub fn symmetric_part(&self) -> Self {
        SquareMatrix((&self.0 + self.0.transpose()) * 0.5)
    }

    pub fn skew_part(&self) -> Self {
        SquareMatrix((&self.0 - self.0.transpose()) * 0.5)
    }

    /// Frobenius distance to `other`.
    pub fn distance(&self, other: &SquareMatrix) -> f64 {
        (&self.0 - &other.0).norm()
    }

    pub(crate) fn check_same_order(&self, other: &SquareMatrix) -> Result<()> {
        if self.n() != other.n() {
            return Err(GeoError::DimensionMismatch {
                expected: self.n(),
                got: other.n(),
            });
        }
        Ok(())
    }
}

impl fmt::Debug for SquareMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SquareMatrix{:?}", self.to_rows())
    }
}

impl fmt::Display for SquareMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

macro_rules! impl_binop {
    ($tr:ident, $method:ident, $op:tt) => {
        impl $tr<&SquareMatrix> for &SquareMatrix {
            type Output = SquareMatrix;
            fn $method(self, rhs: &SquareMatrix) -> SquareMatrix {
                SquareMatrix(&self.0 $op &rhs.0)
            }
        }
        impl $tr<SquareMatrix> for SquareMatrix {
            type Output = SquareMatrix;
            fn $method(self, rhs: SquareMatrix) -> SquareMatrix {
                SquareMatrix(self.0 $op rhs.0)
            }
        }
        impl $tr<&SquareMatrix> for SquareMatrix {
            type Output = SquareMatrix;
            fn $method(self, rhs: &SquareMatrix) -> SquareMatrix {
                SquareMatrix(self.0 $op &rhs.0)
            }
        }
        impl $tr<SquareMatrix> for &SquareMatrix {
            type Output = SquareMatrix;
            fn $method(self, rhs: SquareMatrix) -> SquareMatrix {
                SquareMatrix(&self.0 $op rhs.0)
            }
        }
    };
}

impl_binop!(Add, add, +);
impl_binop!(Sub, sub, -);
impl_binop!(Mul, mul, *);

impl Mul<f64> for &SquareMatrix {
    type Output = SquareMatrix;
    fn mul(self, rhs: f64) -> SquareMatrix {
        SquareMatrix(&self.0 * rhs)
    }
}

impl Mul<f64> for SquareMatrix {
    type Output = SquareMatrix;
    fn mul(self, rhs: f64) -> SquareMatrix {
        SquareMatrix(self.0 * rhs)
    }
}

impl Neg for &SquareMatrix {
    type Output = SquareMatrix;
    fn neg(self) -> SquareMatrix {
        SquareMatrix(-&self.0)
    }
}

impl Neg for SquareMatrix {
    type Output = SquareMatrix;
    fn neg(self) -> SquareMatrix {
        SquareMatrix(-self.0)
    }
}
