use crate::error::Result;
use crate::matrix::SquareMatrix;

/// One of the named isometries of the trace metric.
#[derive(Debug, Clone, PartialEq)]
pub enum IsometryMap {
    /// `X ↦ GX`
    LeftTranslate(SquareMatrix),
    /// `X ↦ XG`
    RightTranslate(SquareMatrix),
    /// `X ↦ G⁻¹XG`
    Conjugate(SquareMatrix),
    /// `X ↦ GᵀXG`
    Congruence(SquareMatrix),
    /// `X ↦ X⁻¹`
    Inversion,
    /// `X ↦ Xᵀ`
    Transposition,
    /// `X ↦ −X`
    Negation,
    /// `X ↦ AX⁻¹A`, the symmetry fixing `A`.
    PointSymmetry(SquareMatrix),
}

impl IsometryMap {
    pub fn kind(&self) -> &'static str {
        match self {
            IsometryMap::LeftTranslate(_) => "left-translate",
            IsometryMap::RightTranslate(_) => "right-translate",
            IsometryMap::Conjugate(_) => "conjugate",
            IsometryMap::Congruence(_) => "congruence",
            IsometryMap::Inversion => "inversion",
            IsometryMap::Transposition => "transposition",
            IsometryMap::Negation => "negation",
            IsometryMap::PointSymmetry(_) => "point-symmetry",
        }
    }

    pub fn parameter(&self) -> Option<&SquareMatrix> {
        match self {
            IsometryMap::LeftTranslate(g)
            | IsometryMap::RightTranslate(g)
            | IsometryMap::Conjugate(g)
            | IsometryMap::Congruence(g)
            | IsometryMap::PointSymmetry(g) => Some(g),
            _ => None,
        }
    }

    fn check_parameter(&self, x: &SquareMatrix) -> Result<()> {
        if let Some(g) = self.parameter() {
            g.check_same_order(x)?;
            g.inverse()?;
        }
        Ok(())
    }
}

pub fn apply_isometry(f: &IsometryMap, x: &SquareMatrix) -> Result<SquareMatrix> {
    f.check_parameter(x)?;
    let x_inv = x.inverse()?;
    Ok(match f {
        IsometryMap::LeftTranslate(g) => g * x,
        IsometryMap::RightTranslate(g) => x * g,
        IsometryMap::Conjugate(g) => &(&g.inverse()? * x) * g,
        IsometryMap::Congruence(g) => &(&g.transpose() * x) * g,
        IsometryMap::Inversion => x_inv,
        IsometryMap::Transposition => x.transpose(),
        IsometryMap::Negation => -x,
        IsometryMap::PointSymmetry(a) => &(a * &x_inv) * a,
    })
}

/// Differential of `f` at `a` applied to `v`.
pub fn pushforward(f: &IsometryMap, a: &SquareMatrix, v: &SquareMatrix) -> Result<SquareMatrix> {
    f.check_parameter(a)?;
    a.check_same_order(v)?;
    let a_inv = a.inverse()?;
    let inversion = || -(&(&a_inv * v) * &a_inv);
    Ok(match f {
        IsometryMap::LeftTranslate(g) => g * v,
        IsometryMap::RightTranslate(g) => v * g,
        IsometryMap::Conjugate(g) => &(&g.inverse()? * v) * g,
        IsometryMap::Congruence(g) => &(&g.transpose() * v) * g,
        IsometryMap::Inversion => inversion(),
        IsometryMap::Transposition => v.transpose(),
        IsometryMap::Negation => -v,
        // R_A ∘ L_A ∘ Dφ
        IsometryMap::PointSymmetry(p) => &(p * &inversion()) * p,
    })
}
