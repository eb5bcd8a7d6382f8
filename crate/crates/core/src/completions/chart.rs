use crate::bipoly::BiPoly;
use crate::error::{Error, Result};
use crate::homog::{self, HomogPoly};
use crate::unipoly::UniPoly;

use super::Completion;

/// A curve written in the boundary charts of a completion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CurveEmbedding {
    P2 {
        form: HomogPoly,
    },
    /// Chart forms on `𝔽ₙ`, each cleared of the boundary coordinates.
    Fn {
        n: u32,
        /// Degree in `x`: the intersection number with the fibre `L`.
        x_degree: u32,
        /// `max(n i + j)` over the support.
        weighted_degree: u32,
        /// In `(a, v) = (x/yⁿ, 1/y)`, where `L` is `v = 0`.
        near_line: BiPoly,
        /// In `(b, v) = (yⁿ/x, 1/y)`, where `E` is `b = 0` and `L` is `v = 0`.
        corner: BiPoly,
        /// In `(c, y) = (1/x, y)`, where `E` is `c = 0`.
        near_section: BiPoly,
    },
}

impl CurveEmbedding {
    pub fn completion(&self) -> Completion {
        match self {
            CurveEmbedding::P2 { .. } => Completion::P2,
            CurveEmbedding::Fn { n, .. } => Completion::Fn(*n),
        }
    }

    /// Total intersection with `E` on `𝔽ₙ`.
    pub fn section_total(&self) -> Option<u32> {
        match self {
            CurveEmbedding::P2 { .. } => None,
            CurveEmbedding::Fn { n, x_degree, weighted_degree, .. } => Some(weighted_degree - n * x_degree),
        }
    }

    /// Total intersection with the line or fibre at infinity.
    pub fn line_total(&self) -> u32 {
        match self {
            CurveEmbedding::P2 { form } => form.degree(),
            CurveEmbedding::Fn { x_degree, .. } => *x_degree,
        }
    }

    /// On `𝔽ₙ`: the polynomial in `x/yⁿ` whose roots are the points of
    /// `L \ E` on the curve.
    pub(crate) fn line_polynomial(&self) -> Option<UniPoly> {
        match self {
            CurveEmbedding::Fn { near_line, .. } => Some(near_line.eval_y(&near_line.field().zero())),
            _ => None,
        }
    }

    /// On `𝔽ₙ`: the polynomial in `y` whose roots are the points of `E \ L`
    /// on the curve.
    pub(crate) fn section_polynomial(&self) -> Option<UniPoly> {
        match self {
            CurveEmbedding::Fn { near_section, .. } => Some(near_section.eval_x(&near_section.field().zero())),
            _ => None,
        }
    }
}

/// Writes the closure of `F = 0` in the charts of `X`.
pub fn embed_curve(f: &BiPoly, x: Completion) -> Result<CurveEmbedding> {
    if f.is_zero() {
        return Err(Error::ZeroInput("curve"));
    }
    if f.is_constant() {
        return Err(Error::InvalidInput("a nonzero constant defines no curve".into()));
    }
    match x {
        Completion::P2 => Ok(CurveEmbedding::P2 { form: homog::homogenize(f, f.degree().unwrap())? }),
        Completion::Fn(0) => Err(Error::InvalidInput("F0 is not a natural completion".into())),
        Completion::Fn(n) => {
            let dx = f.deg_x().unwrap();
            let big_n = f.terms().map(|(m, _)| n * m.0 + m.1).max().unwrap();
            Ok(CurveEmbedding::Fn {
                n,
                x_degree: dx,
                weighted_degree: big_n,
                near_line: f.map_monomials(|i, j| (i, big_n - n * i - j)),
                corner: f.map_monomials(|i, j| (dx - i, big_n - n * i - j)),
                near_section: f.map_monomials(|i, j| (dx - i, j)),
            })
        }
    }
}
