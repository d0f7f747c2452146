//! Matrix exponential by scaling and squaring with diagonal Padé approximants.
//!
//! The approximant degree is picked from the 1-norm using the backward-error
//! thresholds θ_m of Higham (2005); beyond θ_13 the argument is halved until
//! it fits and the result is squared back.

use nalgebra::DMatrix;

use crate::matrix::SquareMatrix;

const THETA: [(usize, f64); 5] = [
    (3, 1.495_585_217_958_292e-2),
    (5, 2.539_398_330_063_23e-1),
    (7, 9.504_178_996_162_932e-1),
    (9, 2.097_847_961_257_068),
    (13, 5.371_920_351_148_152),
];

/// `b_j = (2m - j)! m! / ((2m)! j! (m - j)!)`
fn pade_coefficients(m: usize) -> Vec<f64> {
    let mut b = vec![1.0; m + 1];
    for j in 1..=m {
        // ratio b_j / b_{j-1} = (m - j + 1) / (j (2m - j + 1))
        b[j] = b[j - 1] * (m - j + 1) as f64 / (j as f64 * (2 * m - j + 1) as f64);
    }
    b
}

fn one_norm(a: &DMatrix<f64>) -> f64 {
    a.column_iter()
        .map(|c| c.iter().map(|x| x.abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

fn pade(a: &DMatrix<f64>, m: usize) -> DMatrix<f64> {
    let n = a.nrows();
    let b = pade_coefficients(m);
    let eye = DMatrix::<f64>::identity(n, n);
    let a2 = a * a;
    let (u, v) = if m == 13 {
        let a4 = &a2 * &a2;
        let a6 = &a4 * &a2;
        let u_inner = &a6 * (b[13] * &a6 + b[11] * &a4 + b[9] * &a2)
            + b[7] * &a6
            + b[5] * &a4
            + b[3] * &a2
            + b[1] * &eye;
        let u = a * u_inner;
        let v = &a6 * (b[12] * &a6 + b[10] * &a4 + b[8] * &a2)
            + b[6] * &a6
            + b[4] * &a4
            + b[2] * &a2
            + b[0] * &eye;
        (u, v)
    } else {
        // Even powers A^0, A^2, ..., A^(m-1).
        let mut powers = vec![eye.clone(), a2.clone()];
        while powers.len() < m.div_ceil(2) {
            let next = powers.last().unwrap() * &a2;
            powers.push(next);
        }
        let mut u_inner = DMatrix::zeros(n, n);
        let mut v = DMatrix::zeros(n, n);
        for (k, p) in powers.iter().enumerate() {
            u_inner += b[2 * k + 1] * p;
            v += b[2 * k] * p;
        }
        (a * u_inner, v)
    };
    let numer = &v + &u;
    let denom = v - u;
    denom
        .lu()
        .solve(&numer)
        .expect("Padé denominator is nonsingular within the θ_m bounds")
}

pub(crate) fn expm_dense(a: &DMatrix<f64>) -> DMatrix<f64> {
    let norm = one_norm(a);
    for &(m, theta) in &THETA[..4] {
        if norm <= theta {
            return pade(a, m);
        }
    }
    let theta13 = THETA[4].1;
    let s = if norm > theta13 {
        (norm / theta13).log2().ceil().max(0.0) as i32
    } else {
        0
    };
    let scaled = a * 2f64.powi(-s);
    let mut r = pade(&scaled, 13);
    for _ in 0..s {
        r = &r * &r;
    }
    r
}

/// Matrix exponential `e^A`.
pub fn mat_exp(a: &SquareMatrix) -> SquareMatrix {
    SquareMatrix::wrap(expm_dense(a.as_dmatrix()))
}
