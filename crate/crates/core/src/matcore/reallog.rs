//! A real logarithm for any matrix that admits one.
//!
//! Without negative eigenvalues the principal logarithm is returned. Otherwise
//! every negative eigenvalue `λ` splits off its real generalized eigenspace,
//! where the matrix is `−S` with `S` of positive spectrum. When the Jordan
//! blocks of `λ` come in equal pairs there is a complex structure `J`
//! (`J² = −I`) commuting with `S`, built by pairing Jordan chains, and
//! `log S + πJ` is a real logarithm of `−S`.

use nalgebra::DMatrix;

use super::jordan::{spectral_profile, EigenCluster};
use super::logm::{principal_log_dense, real_log_principal};
use crate::error::{GeoError, Result};
use crate::matrix::SquareMatrix;

/// Singular triplets sorted by decreasing singular value.
fn sorted_svd(a: &DMatrix<f64>) -> (DMatrix<f64>, Vec<f64>, DMatrix<f64>) {
    let svd = a.clone().svd(true, true);
    let u = svd.u.expect("requested U");
    let v = svd.v_t.expect("requested Vᵀ").transpose();
    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&i, &j| svd.singular_values[j].total_cmp(&svd.singular_values[i]));
    let u = DMatrix::from_columns(&order.iter().map(|&i| u.column(i)).collect::<Vec<_>>());
    let v = DMatrix::from_columns(&order.iter().map(|&i| v.column(i)).collect::<Vec<_>>());
    let s = order.iter().map(|&i| svd.singular_values[i]).collect();
    (u, s, v)
}

/// Orthonormal basis for the `dim`-dimensional numerical null space of a square matrix.
fn null_basis(a: &DMatrix<f64>, dim: usize) -> DMatrix<f64> {
    let (_, _, v) = sorted_svd(a);
    let cols = v.ncols();
    v.columns(cols - dim, dim).into_owned()
}

/// Orthonormal basis for the dominant `dim`-dimensional range of `a`.
fn range_basis(a: &DMatrix<f64>, dim: usize) -> DMatrix<f64> {
    let (u, _, _) = sorted_svd(a);
    u.columns(0, dim).into_owned()
}

fn power(a: &DMatrix<f64>, k: usize) -> DMatrix<f64> {
    let mut p = DMatrix::identity(a.nrows(), a.ncols());
    for _ in 0..k {
        p = &p * a;
    }
    p
}

/// Complex structure commuting with the nilpotent `nil`, whose Jordan block
/// sizes are `sizes` (non-increasing, each size repeated an even number of times).
fn pairing_structure(nil: &DMatrix<f64>, sizes: &[usize]) -> Result<DMatrix<f64>> {
    let m = nil.nrows();
    let top = sizes.first().copied().unwrap_or(0);
    // kernel dimensions are fixed by the partition
    let kernels: Vec<DMatrix<f64>> = (0..=top)
        .map(|j| {
            let dim: usize = sizes.iter().map(|&s| s.min(j)).sum();
            null_basis(&power(nil, j), dim)
        })
        .collect();

    let mut chains: Vec<Vec<nalgebra::DVector<f64>>> = Vec::new();
    for k in (1..=top).rev() {
        let count = sizes.iter().filter(|&&s| s == k).count();
        if count == 0 {
            continue;
        }
        let mut spanning: Vec<nalgebra::DVector<f64>> = kernels[k - 1]
            .column_iter()
            .map(|c| c.into_owned())
            .collect();
        for chain in &chains {
            spanning.push(chain[chain.len() - k].clone());
        }
        let projector = if spanning.is_empty() {
            DMatrix::identity(m, m)
        } else {
            let basis = range_basis(&DMatrix::from_columns(&spanning), spanning.len());
            DMatrix::identity(m, m) - &basis * basis.transpose()
        };
        let candidates = range_basis(&(projector * &kernels[k]), count);
        for g in candidates.column_iter() {
            let mut chain = vec![g.into_owned()];
            for _ in 1..k {
                let next = nil * chain.last().unwrap();
                chain.push(next);
            }
            chains.push(chain);
        }
    }

    let columns: Vec<_> = chains.iter().flatten().cloned().collect();
    if columns.len() != m {
        return Err(GeoError::InvalidArgument(
            "Jordan chains do not span the generalized eigenspace".into(),
        ));
    }
    let w = DMatrix::from_columns(&columns);
    let mut j_w = DMatrix::<f64>::zeros(m, m);
    let mut offset = 0;
    let mut idx = 0;
    while idx < chains.len() {
        let len = chains[idx].len();
        if idx + 1 >= chains.len() || chains[idx + 1].len() != len {
            return Err(GeoError::InvalidArgument("unpaired Jordan chain".into()));
        }
        for i in 0..len {
            let a = offset + i;
            let b = offset + len + i;
            j_w[(b, a)] = 1.0;
            j_w[(a, b)] = -1.0;
        }
        offset += 2 * len;
        idx += 2;
    }
    let w_inv = w
        .clone()
        .lu()
        .try_inverse()
        .ok_or(GeoError::Singular { rcond: 0.0 })?;
    Ok(w * j_w * w_inv)
}

fn negative_block_log(
    block: &DMatrix<f64>,
    cluster: &EigenCluster,
    tol: f64,
) -> Result<DMatrix<f64>> {
    let m = block.nrows();
    let lambda = cluster.eigenvalue.re;
    let nil = block - DMatrix::<f64>::identity(m, m) * lambda;
    let j = pairing_structure(&nil, &cluster.block_sizes)?;
    let log_s = principal_log_dense(&(-block), tol)?;
    Ok(log_s + j * std::f64::consts::PI)
}

/// Some real `C` with `e^C = M`, or `SpectrumOnCut` when no real logarithm exists.
pub fn real_log_any(m: &SquareMatrix, tol: f64) -> Result<SquareMatrix> {
    let profile = spectral_profile(m, tol);
    let negatives: Vec<&EigenCluster> = profile
        .clusters
        .iter()
        .filter(|c| c.is_real() && c.eigenvalue.re < 0.0)
        .collect();
    if negatives.is_empty() {
        return real_log_principal(m, tol);
    }
    if let Some(c) = negatives.iter().find(|c| !c.blocks_paired()) {
        return Err(GeoError::SpectrumOnCut {
            re: c.eigenvalue.re,
            im: 0.0,
        });
    }

    let n = m.n();
    let a = m.as_dmatrix();
    let eye = DMatrix::<f64>::identity(n, n);
    let mut columns = Vec::new();
    let mut annihilator = eye.clone();
    for c in &negatives {
        let mult = c.multiplicity();
        let shifted = power(&(a - &eye * c.eigenvalue.re), mult);
        annihilator = &annihilator * &shifted;
        columns.extend(
            null_basis(&shifted, mult)
                .column_iter()
                .map(|v| v.into_owned()),
        );
    }
    let rest = n - columns.len();
    if rest > 0 {
        columns.extend(
            range_basis(&annihilator, rest)
                .column_iter()
                .map(|v| v.into_owned()),
        );
    }
    let v = DMatrix::from_columns(&columns);
    let v_inv = v
        .clone()
        .lu()
        .try_inverse()
        .ok_or(GeoError::Singular { rcond: 0.0 })?;
    let b = &v_inv * a * &v;

    let mut log_b = DMatrix::<f64>::zeros(n, n);
    let mut offset = 0;
    for c in &negatives {
        let mult = c.multiplicity();
        let block = b.view((offset, offset), (mult, mult)).into_owned();
        let l = negative_block_log(&block, c, tol)?;
        log_b.view_mut((offset, offset), (mult, mult)).copy_from(&l);
        offset += mult;
    }
    if rest > 0 {
        let block = b.view((offset, offset), (rest, rest)).into_owned();
        let l = principal_log_dense(&block, tol)?;
        log_b.view_mut((offset, offset), (rest, rest)).copy_from(&l);
    }
    Ok(SquareMatrix::wrap(v * log_b * v_inv))
}
