//! Complex Schur machinery: triangularization, reordering by adjacent swaps,
//! triangular square roots, triangular Sylvester solves and the block
//! Schur–Parlett recurrence built on top of them.

use nalgebra::{Complex, DMatrix};

use crate::error::{GeoError, Result};

pub(crate) type C64 = Complex<f64>;

const SCHUR_EPS_LADDER: [f64; 4] = [1.0, 4.0, 16.0, 256.0];

pub(crate) fn to_complex(a: &DMatrix<f64>) -> DMatrix<C64> {
    a.map(|x| C64::new(x, 0.0))
}

/// Real Schur form `A = Z T Zᵀ`, retrying with a looser deflation test when
/// the iteration stalls.
pub(crate) fn real_schur(a: &DMatrix<f64>) -> Result<(DMatrix<f64>, DMatrix<f64>)> {
    let n = a.nrows();
    SCHUR_EPS_LADDER
        .iter()
        .find_map(|&k| nalgebra::Schur::try_new(a.clone(), k * f64::EPSILON, 1000 * n.max(1)))
        .map(|s| s.unpack())
        .ok_or_else(|| GeoError::InvalidMatrix("Schur iteration did not converge".into()))
}

/// Unitary `Q` and upper-triangular `T` with `A = Q T Qᴴ`.
pub(crate) struct ComplexSchur {
    pub q: DMatrix<C64>,
    pub t: DMatrix<C64>,
}

impl ComplexSchur {
    pub fn of_real(a: &DMatrix<f64>) -> Result<Self> {
        Self::of_complex(to_complex(a))
    }

    pub fn of_complex(a: DMatrix<C64>) -> Result<Self> {
        let n = a.nrows();
        // An exact-epsilon deflation test can stall on repeated eigenvalues.
        let schur = SCHUR_EPS_LADDER
            .iter()
            .find_map(|&k| nalgebra::Schur::try_new(a.clone(), k * f64::EPSILON, 1000 * n.max(1)))
            .ok_or_else(|| GeoError::InvalidMatrix("Schur iteration did not converge".into()))?;
        let (q, mut t) = schur.unpack();
        for j in 0..n {
            for i in (j + 1)..n {
                t[(i, j)] = C64::new(0.0, 0.0);
            }
        }
        Ok(ComplexSchur { q, t })
    }

    pub fn eigenvalues(&self) -> Vec<C64> {
        (0..self.t.nrows()).map(|i| self.t[(i, i)]).collect()
    }

    /// Swaps the diagonal entries `k` and `k + 1` with a unitary rotation.
    fn swap_adjacent(&mut self, k: usize) {
        let n = self.t.nrows();
        let t11 = self.t[(k, k)];
        let t22 = self.t[(k + 1, k + 1)];
        let t12 = self.t[(k, k + 1)];
        if t11 == t22 {
            return;
        }
        // First column of G spans the eigenvector of t22.
        let a = t12;
        let b = t22 - t11;
        let r = (a.norm_sqr() + b.norm_sqr()).sqrt();
        let (a, b) = (a / r, b / r);
        // G = [[a, -conj(b)], [b, conj(a)]]
        let g = [[a, -b.conj()], [b, a.conj()]];
        // T <- Gᴴ T on rows k, k+1
        for j in 0..n {
            let x = self.t[(k, j)];
            let y = self.t[(k + 1, j)];
            self.t[(k, j)] = g[0][0].conj() * x + g[1][0].conj() * y;
            self.t[(k + 1, j)] = g[0][1].conj() * x + g[1][1].conj() * y;
        }
        // T <- T G, Q <- Q G on columns k, k+1
        for m in [&mut self.t, &mut self.q] {
            for i in 0..n {
                let x = m[(i, k)];
                let y = m[(i, k + 1)];
                m[(i, k)] = x * g[0][0] + y * g[1][0];
                m[(i, k + 1)] = x * g[0][1] + y * g[1][1];
            }
        }
        self.t[(k + 1, k)] = C64::new(0.0, 0.0);
        self.t[(k, k)] = t22;
        self.t[(k + 1, k + 1)] = t11;
    }

    /// Reorders the diagonal so that entries sharing a key become contiguous,
    /// keys appearing in ascending order. Returns the keys in their final order.
    pub fn reorder_by_key(&mut self, keys: &[usize]) -> Vec<usize> {
        let mut keys = keys.to_vec();
        let n = keys.len();
        for pass in 0..n {
            let mut swapped = false;
            for k in 0..n.saturating_sub(1 + pass) {
                if keys[k] > keys[k + 1] {
                    self.swap_adjacent(k);
                    keys.swap(k, k + 1);
                    swapped = true;
                }
            }
            if !swapped {
                break;
            }
        }
        keys
    }
}

/// Principal square root of an upper-triangular matrix.
pub(crate) fn sqrt_upper_triangular(t: &DMatrix<C64>) -> DMatrix<C64> {
    let n = t.nrows();
    let mut r = DMatrix::<C64>::zeros(n, n);
    for j in 0..n {
        r[(j, j)] = t[(j, j)].sqrt();
        for i in (0..j).rev() {
            let mut s = t[(i, j)];
            for k in (i + 1)..j {
                s -= r[(i, k)] * r[(k, j)];
            }
            r[(i, j)] = s / (r[(i, i)] + r[(j, j)]);
        }
    }
    r
}

/// Solves `A X − X B = C` for upper-triangular `A`, `B` with disjoint spectra.
pub(crate) fn solve_triangular_sylvester(
    a: &DMatrix<C64>,
    b: &DMatrix<C64>,
    c: &DMatrix<C64>,
) -> DMatrix<C64> {
    let p = a.nrows();
    let q = b.nrows();
    let mut x = DMatrix::<C64>::zeros(p, q);
    for col in 0..q {
        let mut rhs: Vec<C64> = (0..p).map(|i| c[(i, col)]).collect();
        for r in 0..col {
            let brc = b[(r, col)];
            for i in 0..p {
                rhs[i] += x[(i, r)] * brc;
            }
        }
        let shift = b[(col, col)];
        for i in (0..p).rev() {
            let mut s = rhs[i];
            for k in (i + 1)..p {
                s -= a[(i, k)] * x[(k, col)];
            }
            x[(i, col)] = s / (a[(i, i)] - shift);
        }
    }
    x
}

/// Solves `U X = B` for upper-triangular `U`.
pub(crate) fn solve_upper(u: &DMatrix<C64>, b: &DMatrix<C64>) -> DMatrix<C64> {
    let n = u.nrows();
    let mut x = b.clone();
    for col in 0..b.ncols() {
        for i in (0..n).rev() {
            let mut s = x[(i, col)];
            for k in (i + 1)..n {
                s -= u[(i, k)] * x[(k, col)];
            }
            x[(i, col)] = s / u[(i, i)];
        }
    }
    x
}

/// Groups eigenvalues whose single-linkage distance is at most `delta`.
/// Returns a cluster index per eigenvalue, numbered by first appearance.
pub(crate) fn single_linkage(values: &[C64], delta: f64) -> Vec<usize> {
    let n = values.len();
    let mut label: Vec<Option<usize>> = vec![None; n];
    let mut next = 0;
    for start in 0..n {
        if label[start].is_some() {
            continue;
        }
        label[start] = Some(next);
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            for j in 0..n {
                if label[j].is_none() && (values[i] - values[j]).norm() <= delta {
                    label[j] = Some(next);
                    stack.push(j);
                }
            }
        }
        next += 1;
    }
    label.into_iter().map(|l| l.unwrap()).collect()
}

/// Separation used to split the Schur form into diagonal blocks.
const PARLETT_DELTA: f64 = 0.1;

/// Evaluates a primary matrix function on an upper-triangular `T` by the block
/// Schur–Parlett recurrence, after `schur` has been reordered so that close
/// eigenvalues form contiguous blocks. `block_fn` handles one diagonal block.
pub(crate) fn schur_parlett<F>(schur: &mut ComplexSchur, block_fn: F) -> Result<DMatrix<C64>>
where
    F: Fn(&DMatrix<C64>) -> Result<DMatrix<C64>>,
{
    let eig = schur.eigenvalues();
    let labels = single_linkage(&eig, PARLETT_DELTA);
    let ordered = schur.reorder_by_key(&labels);

    let mut bounds = Vec::new();
    let mut start = 0;
    for k in 1..=ordered.len() {
        if k == ordered.len() || ordered[k] != ordered[start] {
            bounds.push((start, k));
            start = k;
        }
    }

    let t = &schur.t;
    let n = t.nrows();
    let mut f = DMatrix::<C64>::zeros(n, n);
    let block = |m: &DMatrix<C64>, (r0, r1): (usize, usize), (c0, c1): (usize, usize)| {
        m.view((r0, c0), (r1 - r0, c1 - c0)).into_owned()
    };

    for &b in &bounds {
        let fb = block_fn(&block(t, b, b))?;
        f.view_mut((b.0, b.0), (b.1 - b.0, b.1 - b.0))
            .copy_from(&fb);
    }
    let nb = bounds.len();
    for d in 1..nb {
        for i in 0..(nb - d) {
            let j = i + d;
            let (bi, bj) = (bounds[i], bounds[j]);
            let tij = block(t, bi, bj);
            let mut rhs = block(&f, bi, bi) * &tij - &tij * block(&f, bj, bj);
            for bk in &bounds[(i + 1)..j] {
                rhs +=
                    block(&f, bi, *bk) * block(t, *bk, bj) - block(t, bi, *bk) * block(&f, *bk, bj);
            }
            let fij = solve_triangular_sylvester(&block(t, bi, bi), &block(t, bj, bj), &rhs);
            f.view_mut((bi.0, bj.0), (bi.1 - bi.0, bj.1 - bj.0))
                .copy_from(&fij);
        }
    }
    Ok(f)
}
