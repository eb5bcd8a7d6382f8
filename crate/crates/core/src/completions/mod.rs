//! Natural completions of the affine plane, their boundary points,
//! elementary links between them and chains of links.
//!
//! Curves always travel as affine equations; boundary data is recomputed
//! on demand from a fixed chart atlas (see `docs/completions.md`).

mod chain;
mod chart;
mod link;
mod profile;

use std::fmt;

use serde_json::{json, Value};

use crate::field::{Field, Scalar};
use crate::unipoly::UniPoly;

pub use chain::{automorphism_to_chain, chain_to_automorphism, LinkChain};
pub use chart::{embed_curve, CurveEmbedding};
pub use link::{link_apply, ElementaryLink, LinkKind};
pub use profile::{boundary_profile, boundary_profile_with, BoundaryProfile, ProfileEntry, ProfileOptions};

/// `ℙ²` with its line at infinity, or the Hirzebruch surface `𝔽ₙ` (n ≥ 1)
/// with the negative section and a fibre.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Completion {
    P2,
    Fn(u32),
}

impl Completion {
    /// `𝔽ₙ` for `n ≥ 1`; `None` for `n = 0`.
    pub fn hirzebruch(n: u32) -> Option<Completion> {
        (n >= 1).then_some(Completion::Fn(n))
    }

    pub fn index(&self) -> Option<u32> {
        match self {
            Completion::P2 => None,
            Completion::Fn(n) => Some(*n),
        }
    }
}

impl fmt::Display for Completion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Completion::P2 => write!(f, "P2"),
            Completion::Fn(n) => write!(f, "F{n}"),
        }
    }
}

impl std::str::FromStr for Completion {
    type Err = crate::Error;

    fn from_str(s: &str) -> crate::Result<Completion> {
        let t = s.trim().to_ascii_lowercase();
        if t == "p2" {
            return Ok(Completion::P2);
        }
        t.strip_prefix('f')
            .and_then(|n| n.parse::<u32>().ok())
            .and_then(Completion::hirzebruch)
            .ok_or_else(|| crate::Error::InvalidInput(format!("unknown completion {s:?}; use p2 or f<n> with n >= 1")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BoundaryComponent {
    /// The line at infinity of `ℙ²`, or the fibre at infinity of `𝔽ₙ`.
    LineAtInfinity,
    /// The section of self-intersection `-n` on `𝔽ₙ`.
    NegativeSection,
}

impl BoundaryComponent {
    pub fn label(&self) -> &'static str {
        match self {
            BoundaryComponent::LineAtInfinity => "L",
            BoundaryComponent::NegativeSection => "E",
        }
    }
}

/// Where a boundary point sits on its component.
///
/// Coordinates: on the line at infinity of `ℙ²`, `t` names `(1:t:0)`; on the
/// fibre at infinity of `𝔽ₙ`, the value of `x/yⁿ`; on the negative section,
/// the value of `y`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Position {
    Rational(Scalar),
    /// A Galois orbit of conjugate points, given by the monic irreducible
    /// polynomial of the coordinate.
    Orbit(UniPoly),
    /// `(0:1:0)` on `ℙ²`; the corner `E ∩ L` on `𝔽ₙ`.
    Special,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryPoint {
    pub completion: Completion,
    pub component: BoundaryComponent,
    pub position: Position,
    pub field: Field,
}

impl BoundaryPoint {
    pub fn on_line(completion: Completion, field: &Field, position: Position) -> BoundaryPoint {
        BoundaryPoint { completion, component: BoundaryComponent::LineAtInfinity, position, field: field.clone() }
    }

    pub fn on_section(completion: Completion, field: &Field, position: Position) -> BoundaryPoint {
        BoundaryPoint { completion, component: BoundaryComponent::NegativeSection, position, field: field.clone() }
    }

    /// The corner `Eₙ ∩ L` of `𝔽ₙ`.
    pub fn corner(n: u32, field: &Field) -> BoundaryPoint {
        BoundaryPoint::on_line(Completion::Fn(n), field, Position::Special)
    }

    pub fn is_rational(&self) -> bool {
        !matches!(self.position, Position::Orbit(_))
    }

    pub fn is_corner(&self) -> bool {
        matches!(self.completion, Completion::Fn(_)) && self.position == Position::Special
    }

    pub fn orbit_size(&self) -> usize {
        match &self.position {
            Position::Orbit(m) => m.degree().unwrap_or(1),
            _ => 1,
        }
    }

    pub fn to_json(&self) -> Value {
        let (kind, coord) = match &self.position {
            Position::Rational(c) => ("rational", json!(self.field.format(c))),
            Position::Orbit(m) => ("orbit", json!(m.to_string_var("t"))),
            Position::Special => ("special", Value::Null),
        };
        json!({
            "completion": self.completion.to_string(),
            "component": self.component.label(),
            "kind": kind,
            "coordinate": coord,
            "label": self.to_string(),
        })
    }
}

impl fmt::Display for BoundaryPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = &self.field;
        match (self.completion, self.component, &self.position) {
            (Completion::P2, _, Position::Rational(t)) => write!(f, "(1:{}:0)", k.format(t)),
            (Completion::P2, _, Position::Special) => write!(f, "(0:1:0)"),
            (Completion::P2, _, Position::Orbit(m)) => write!(f, "(1:t:0) with {} = 0", m.to_string_var("t")),
            (Completion::Fn(_), _, Position::Special) => write!(f, "E∩L"),
            (Completion::Fn(_), c, Position::Rational(v)) => {
                let var = if c == BoundaryComponent::LineAtInfinity { "x/y^n" } else { "y" };
                write!(f, "{} at {var} = {}", c.label(), k.format(v))
            }
            (Completion::Fn(_), c, Position::Orbit(m)) => {
                write!(f, "{} at roots of {}", c.label(), m.to_string_var("t"))
            }
        }
    }
}
