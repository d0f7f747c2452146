use std::fmt;

use super::Geodesic;
use crate::error::{GeoError, Result};
use crate::matcore::{
    polar_decompose, real_log_any, real_log_principal, so_log, spectral_profile, PolarSide,
    SpectralProfile,
};
use crate::matrix::SquareMatrix;

const ENDPOINT_TOL: f64 = 1e-8;

/// How many geodesic arcs join two points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ArcVerdict {
    NoArc,
    Unique,
    CountablyInfinite,
    Continuum,
}

impl ArcVerdict {
    pub fn as_str(self) -> &'static str {
        match self {
            ArcVerdict::NoArc => "no-arc",
            ArcVerdict::Unique => "unique",
            ArcVerdict::CountablyInfinite => "countable",
            ArcVerdict::Continuum => "continuum",
        }
    }

    /// Verdict from the Jordan structure of `K₀⁻¹K₁`.
    pub fn from_profile(profile: &SpectralProfile) -> ArcVerdict {
        let clusters = &profile.clusters;
        let negative = |c: &&crate::matcore::EigenCluster| c.is_real() && c.eigenvalue.re < 0.0;
        if clusters.iter().filter(negative).any(|c| !c.blocks_paired()) {
            return ArcVerdict::NoArc;
        }
        let real_ok = clusters
            .iter()
            .filter(|c| c.is_real())
            .all(|c| c.eigenvalue.re > 0.0 && !c.has_repeated_block());
        if !real_ok {
            return ArcVerdict::Continuum;
        }
        let mut complex = clusters.iter().filter(|c| !c.is_real()).peekable();
        if complex.peek().is_none() {
            return ArcVerdict::Unique;
        }
        if complex.all(|c| c.block_sizes.len() == 1) {
            ArcVerdict::CountablyInfinite
        } else {
            ArcVerdict::Continuum
        }
    }
}

impl fmt::Display for ArcVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ArcClassification {
    pub verdict: ArcVerdict,
    /// One arc from `K₀` to `K₁`, absent exactly when the verdict is `NoArc`.
    pub witness: Option<Geodesic>,
    /// Spectral profile of `K₀⁻¹K₁`.
    pub profile: SpectralProfile,
}

/// Counts the geodesic arcs from `k0` to `k1` and builds one of them.
///
/// The verdict is recomputed at `tol/10` and `10·tol`; disagreement is
/// reported as [`GeoError::IllConditioned`].
pub fn classify_arc(k0: &SquareMatrix, k1: &SquareMatrix, tol: f64) -> Result<ArcClassification> {
    k0.check_same_order(k1)?;
    if !(tol > 0.0) {
        return Err(GeoError::InvalidArgument(format!(
            "tolerance {tol} must be positive"
        )));
    }
    k1.inverse()?;
    let m = &k0.inverse()? * k1;
    let profile = spectral_profile(&m, tol);
    let verdict = ArcVerdict::from_profile(&profile);
    for probe in [tol / 10.0, tol * 10.0] {
        if ArcVerdict::from_profile(&spectral_profile(&m, probe)) != verdict {
            return Err(GeoError::IllConditioned { tol });
        }
    }
    let witness = match verdict {
        ArcVerdict::NoArc => None,
        ArcVerdict::Unique => Some(Geodesic::new(k0.clone(), real_log_principal(&m, tol)?)?),
        _ => Some(Geodesic::new(k0.clone(), real_log_any(&m, tol)?)?),
    };
    Ok(ArcClassification {
        verdict,
        witness,
        profile,
    })
}

/// `γ(t) = K₀ (K₀⁻¹K₁)^t`, available only when the arc is unique.
pub fn unique_arc(k0: &SquareMatrix, k1: &SquareMatrix, tol: f64) -> Result<Geodesic> {
    let class = classify_arc(k0, k1, tol)?;
    match (class.verdict, class.witness) {
        (ArcVerdict::Unique, Some(w)) => Ok(w),
        (v, _) => Err(GeoError::NotUnique {
            verdict: v.as_str().to_string(),
        }),
    }
}

/// Two arcs `K₁ → Z → K₂` meeting at the joint `Z`.
#[derive(Debug, Clone, PartialEq)]
pub struct BrokenArc {
    pub first: Geodesic,
    pub second: Geodesic,
    pub joint: SquareMatrix,
}

fn check_endpoint(got: &SquareMatrix, want: &SquareMatrix) -> Result<()> {
    let tolerance = ENDPOINT_TOL * want.frobenius_norm().max(1.0);
    let discrepancy = got.distance(want);
    if !(discrepancy <= tolerance) {
        return Err(GeoError::OracleMismatch {
            discrepancy,
            tolerance,
        });
    }
    Ok(())
}

/// Joins two points of the same component through `Z = P₂O₁`, where
/// `K₁ = O₁P₁` and `K₂ = P₂O₂`.
pub fn broken_arc(k1: &SquareMatrix, k2: &SquareMatrix, tol: f64) -> Result<BrokenArc> {
    k1.check_same_order(k2)?;
    let left = polar_decompose(k1, PolarSide::Left)?;
    let right = polar_decompose(k2, PolarSide::Right)?;
    if k1.det().signum() != k2.det().signum() {
        return Err(GeoError::DifferentComponents);
    }
    let o1 = &left.orthogonal;
    let joint = &right.positive * o1;
    let c1 = real_log_principal(&(&k1.inverse()? * &joint), tol)?;
    let c2 = so_log(&(&o1.transpose() * &right.orthogonal), tol)?;
    let first = Geodesic::new(k1.clone(), c1)?;
    let second = Geodesic::new(joint.clone(), c2)?;
    check_endpoint(&first.eval(1.0), &joint)?;
    check_endpoint(&second.eval(1.0), k2)?;
    Ok(BrokenArc {
        first,
        second,
        joint,
    })
}
