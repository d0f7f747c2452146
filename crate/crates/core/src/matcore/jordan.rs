//! Numerical Jordan structure: eigenvalue clusters and their block sizes.

use nalgebra::{Complex, DMatrix};

use super::schur::{single_linkage, ComplexSchur, C64};
use crate::matrix::SquareMatrix;

/// One eigenvalue cluster and the sizes of its Jordan blocks (non-increasing).
#[derive(Debug, Clone, PartialEq)]
pub struct EigenCluster {
    pub eigenvalue: Complex<f64>,
    pub block_sizes: Vec<usize>,
}

impl EigenCluster {
    pub fn multiplicity(&self) -> usize {
        self.block_sizes.iter().sum()
    }

    pub fn is_real(&self) -> bool {
        self.eigenvalue.im == 0.0
    }

    /// `true` when some block size occurs more than once.
    pub fn has_repeated_block(&self) -> bool {
        self.block_sizes.windows(2).any(|w| w[0] == w[1])
    }

    /// `true` when every block size occurs an even number of times.
    pub fn blocks_paired(&self) -> bool {
        let mut i = 0;
        while i < self.block_sizes.len() {
            let j = self.block_sizes[i..]
                .iter()
                .take_while(|&&s| s == self.block_sizes[i])
                .count();
            if j % 2 == 1 {
                return false;
            }
            i += j;
        }
        true
    }
}

/// Eigenvalue clusters with Jordan block sizes, plus the tolerance that produced them.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralProfile {
    pub clusters: Vec<EigenCluster>,
    pub tolerance: f64,
}

impl SpectralProfile {
    pub fn total_multiplicity(&self) -> usize {
        self.clusters.iter().map(EigenCluster::multiplicity).sum()
    }
}

fn numerical_rank(m: &DMatrix<C64>, threshold: f64) -> usize {
    m.singular_values()
        .iter()
        .filter(|&&s| s > threshold)
        .count()
}

/// Block sizes from nullities `d_k = dim ker N^k`, `k = 1..=m`, forced into a partition of `m`.
fn partition_from_nullities(nullities: &[usize], m: usize) -> Vec<usize> {
    let mut d = Vec::with_capacity(m + 1);
    d.push(0);
    for &x in nullities {
        let prev = *d.last().unwrap();
        d.push(x.clamp(prev, m));
    }
    d[m] = m;
    // b[k] = number of blocks of size >= k
    let mut b = vec![0usize; m + 2];
    for k in 1..=m {
        b[k] = d[k] - d[k - 1];
        if k > 1 {
            b[k] = b[k].min(b[k - 1]);
        }
    }
    let mut sizes = Vec::new();
    for k in (1..=m).rev() {
        for _ in 0..(b[k] - b[k + 1]) {
            sizes.push(k);
        }
    }
    let covered: usize = sizes.iter().sum();
    sizes.extend(std::iter::repeat_n(1, m - covered));
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    sizes
}

/// Clusters the spectrum of `a` and recovers Jordan block sizes by rank counting.
///
/// Eigenvalues merge when `|λᵢ − λⱼ| ≤ tol · max(1, ‖A‖₂)`; an eigenvalue is
/// real when `|Im λ| ≤ tol · max(1, |λ|)`. For a cluster of multiplicity `m`
/// the Schur form is reordered to bring the cluster to the leading `m × m`
/// block `T₁₁`, and ranks of `(T₁₁ − λI)^k` decide the block sizes, with
/// singular values at most `tol · max(1, ‖A‖₂)` counted as zero.
pub fn spectral_profile(a: &SquareMatrix, tol: f64) -> SpectralProfile {
    let scale = a.spectral_norm().max(1.0);
    let threshold = tol * scale;
    let schur = match ComplexSchur::of_real(a.as_dmatrix()) {
        Ok(s) => s,
        Err(_) => {
            return SpectralProfile {
                clusters: Vec::new(),
                tolerance: tol,
            }
        }
    };
    let eig: Vec<C64> = schur
        .eigenvalues()
        .into_iter()
        .map(|l| {
            if l.im.abs() <= tol * l.norm().max(1.0) {
                C64::new(l.re, 0.0)
            } else {
                l
            }
        })
        .collect();
    let labels = single_linkage(&eig, threshold);
    let n_clusters = labels.iter().max().map_or(0, |m| m + 1);

    let mut clusters = Vec::new();
    for c in 0..n_clusters {
        let members: Vec<C64> = labels
            .iter()
            .zip(&eig)
            .filter(|(l, _)| **l == c)
            .map(|(_, v)| *v)
            .collect();
        let m = members.len();
        let mean = members.iter().fold(C64::new(0.0, 0.0), |s, v| s + v) / m as f64;
        let real =
            members.iter().all(|v| v.im == 0.0) || mean.im.abs() <= tol * mean.norm().max(1.0);
        if !real && mean.im < 0.0 {
            continue;
        }
        let eigenvalue = if real { C64::new(mean.re, 0.0) } else { mean };

        let mut local = ComplexSchur {
            q: schur.q.clone(),
            t: schur.t.clone(),
        };
        let keys: Vec<usize> = labels.iter().map(|&l| usize::from(l != c)).collect();
        local.reorder_by_key(&keys);
        let t11 = local.t.view((0, 0), (m, m)).into_owned();
        let nil = t11 - DMatrix::<C64>::identity(m, m) * eigenvalue;
        let mut power = nil.clone();
        let mut nullities = Vec::with_capacity(m);
        for k in 1..=m {
            if k > 1 {
                power = &power * &nil;
            }
            nullities.push(m - numerical_rank(&power, threshold));
        }
        let block_sizes = partition_from_nullities(&nullities, m);
        if !real {
            clusters.push(EigenCluster {
                eigenvalue: eigenvalue.conj(),
                block_sizes: block_sizes.clone(),
            });
        }
        clusters.push(EigenCluster {
            eigenvalue,
            block_sizes,
        });
    }
    clusters.sort_by(|x, y| {
        x.eigenvalue
            .re
            .total_cmp(&y.eigenvalue.re)
            .then(x.eigenvalue.im.total_cmp(&y.eigenvalue.im))
    });
    SpectralProfile {
        clusters,
        tolerance: tol,
    }
}
