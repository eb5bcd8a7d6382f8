use std::fmt;

use serde_json::{json, Value};

use crate::automorphism::PlaneAutomorphism;
use crate::bipoly::BiPoly;
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};

use super::{BoundaryPoint, Completion, Position};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LinkKind {
    /// `ℙ² ⇢ 𝔽₁`: blow up a point of the line at infinity.
    I,
    /// `𝔽ₙ ⇢ 𝔽ₙ₊₁` (at the corner) or `𝔽ₙ ⇢ 𝔽ₙ₋₁` (elsewhere on `L`).
    II,
    /// `𝔽₁ → ℙ²`: contract the negative section.
    III,
}

impl LinkKind {
    pub fn label(&self) -> &'static str {
        match self {
            LinkKind::I => "I",
            LinkKind::II => "II",
            LinkKind::III => "III",
        }
    }
}

/// An elementary link together with the automorphism of `𝔸²` it induces
/// through the canonical embeddings of its source and target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementaryLink {
    kind: LinkKind,
    source: Completion,
    target: Completion,
    /// The base point on the source; `None` for type III, which is a morphism.
    base: Option<BoundaryPoint>,
    map: PlaneAutomorphism,
}

impl ElementaryLink {
    /// Type I based at a k-rational point of the line at infinity. The
    /// induced map is the linear change of coordinates sending that point
    /// to `(1:0:0)`.
    pub fn type_one(k: &Field, base: Position) -> Result<ElementaryLink> {
        let (o, z) = (k.one(), k.zero());
        let map = match &base {
            Position::Rational(t) => PlaneAutomorphism::affine(k, &o, &z, &k.neg(t), &o, &z, &z)?,
            Position::Special => PlaneAutomorphism::swap(k),
            Position::Orbit(_) => return Err(Error::InvalidInput("link base points are k-rational".into())),
        };
        Ok(ElementaryLink {
            kind: LinkKind::I,
            source: Completion::P2,
            target: Completion::Fn(1),
            base: Some(BoundaryPoint::on_line(Completion::P2, k, base)),
            map,
        })
    }

    /// Type III: `𝔽₁ → ℙ²`, the identity on `𝔸²`; the section is contracted
    /// to `(1:0:0)`.
    pub fn type_three(k: &Field) -> ElementaryLink {
        ElementaryLink {
            kind: LinkKind::III,
            source: Completion::Fn(1),
            target: Completion::P2,
            base: None,
            map: PlaneAutomorphism::identity(k),
        }
    }

    /// Type II at the corner of `𝔽ₙ`, towards `𝔽ₙ₊₁`; the identity on `𝔸²`.
    pub fn ascending(k: &Field, n: u32) -> Result<ElementaryLink> {
        if n == 0 {
            return Err(Error::InvalidInput("F0 is not a natural completion".into()));
        }
        Ok(ElementaryLink {
            kind: LinkKind::II,
            source: Completion::Fn(n),
            target: Completion::Fn(n + 1),
            base: Some(BoundaryPoint::corner(n, k)),
            map: PlaneAutomorphism::identity(k),
        })
    }

    /// Type II at the point `x/yⁿ = a` of `L` on `𝔽ₙ` (n ≥ 2), towards
    /// `𝔽ₙ₋₁`; induces `(x - a yⁿ, y)`.
    pub fn descending(k: &Field, n: u32, a: &Scalar) -> Result<ElementaryLink> {
        if n < 2 {
            return Err(Error::InvalidInput(format!("no descending link from F{n}")));
        }
        Ok(ElementaryLink {
            kind: LinkKind::II,
            source: Completion::Fn(n),
            target: Completion::Fn(n - 1),
            base: Some(BoundaryPoint::on_line(Completion::Fn(n), k, Position::Rational(a.clone()))),
            map: PlaneAutomorphism::elementary_shear(k, &k.neg(a), n as usize),
        })
    }

    pub fn kind(&self) -> LinkKind {
        self.kind
    }

    pub fn source(&self) -> Completion {
        self.source
    }

    pub fn target(&self) -> Completion {
        self.target
    }

    pub fn base(&self) -> Option<&BoundaryPoint> {
        self.base.as_ref()
    }

    pub fn map(&self) -> &PlaneAutomorphism {
        &self.map
    }

    pub fn is_ascending(&self) -> bool {
        matches!((self.source, self.target), (Completion::Fn(a), Completion::Fn(b)) if b == a + 1)
    }

    pub fn is_descending(&self) -> bool {
        matches!((self.source, self.target), (Completion::Fn(a), Completion::Fn(b)) if b + 1 == a)
    }

    /// The base point of the inverse link, on the target: where the
    /// contracted curve lands. Defined for type III and ascending links.
    pub(crate) fn image_point(&self) -> Option<Position> {
        let k = self.map.field();
        match self.kind {
            LinkKind::III => Some(Position::Rational(k.zero())),
            LinkKind::II if self.is_ascending() => Some(Position::Rational(k.zero())),
            _ => None,
        }
    }

    /// Base position on the source, when rational.
    pub(crate) fn base_position(&self) -> Option<&Position> {
        self.base.as_ref().map(|b| &b.position)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "type": self.kind.label(),
            "source": self.source.to_string(),
            "target": self.target.to_string(),
            "base": self.base.as_ref().map(BoundaryPoint::to_json),
            "map": [self.map.f().to_string(), self.map.g().to_string()],
        })
    }
}

impl fmt::Display for ElementaryLink {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} -> {}", self.kind.label(), self.source, self.target)?;
        if let Some(b) = &self.base {
            write!(f, " at {b}")?;
        }
        Ok(())
    }
}

/// The curve `F = 0` transported through the link, in the target's
/// canonical coordinates.
pub fn link_apply(link: &ElementaryLink, f: &BiPoly) -> Result<BiPoly> {
    crate::automorphism::pushforward_curve(&link.map, f)
}

/// Whether `alpha` preserves the boundary of `x`: affine on `ℙ²`, and of the
/// form `(a x + P(y), b y + c)` with `deg P ≤ n` on `𝔽ₙ`.
pub(crate) fn preserves_boundary(x: Completion, alpha: &PlaneAutomorphism) -> bool {
    match x {
        Completion::P2 => alpha.is_affine(),
        Completion::Fn(n) => alpha.triangular_parts().is_some_and(|t| t.p.degree().unwrap_or(0) <= n as usize),
    }
}

/// Action of a boundary-preserving automorphism on the rational points of
/// the line (or fibre) at infinity.
pub(crate) fn act_on_line(x: Completion, alpha: &PlaneAutomorphism, pos: &Position) -> Result<Position> {
    let k = alpha.field();
    match x {
        Completion::P2 => {
            let a = alpha.affine_parts().ok_or_else(|| Error::InvalidInput("not affine".into()))?;
            let (u, v) = match pos {
                Position::Rational(t) => (k.one(), t.clone()),
                Position::Special => (k.zero(), k.one()),
                Position::Orbit(_) => return Err(Error::Unsupported("action on orbits".into())),
            };
            let u2 = k.add(&k.mul(&a.a, &u), &k.mul(&a.b, &v));
            let v2 = k.add(&k.mul(&a.c, &u), &k.mul(&a.d, &v));
            if u2.is_zero() {
                Ok(Position::Special)
            } else {
                Ok(Position::Rational(k.div(&v2, &u2)?))
            }
        }
        Completion::Fn(n) => {
            let t = alpha.triangular_parts().ok_or_else(|| Error::InvalidInput("not triangular".into()))?;
            match pos {
                Position::Special => Ok(Position::Special),
                Position::Rational(a) => {
                    let top = t.p.coeff(n as usize);
                    let num = k.add(&k.mul(&t.a, a), &top);
                    Ok(Position::Rational(k.div(&num, &k.pow(&t.b, n as u64))?))
                }
                Position::Orbit(_) => Err(Error::Unsupported("action on orbits".into())),
            }
        }
    }
}

/// The point of `L` on `𝔽₁` lying over a point of the line at infinity of
/// `ℙ²` other than `(1:0:0)`, under the contraction of the section.
pub(crate) fn lift_to_f1(k: &Field, pos: &Position) -> Result<Position> {
    match pos {
        Position::Special => Ok(Position::Rational(k.zero())),
        Position::Rational(t) if !t.is_zero() => Ok(Position::Rational(k.inv(t)?)),
        Position::Rational(_) => Ok(Position::Special),
        Position::Orbit(_) => Err(Error::Unsupported("action on orbits".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::completions::profile::boundary_profile;
    use crate::unipoly::UniPoly;

    fn q() -> Field {
        Field::rationals()
    }

    fn p(t: &[(u32, u32, i64)]) -> BiPoly {
        BiPoly::from_i64s(&q(), t)
    }

    #[test]
    fn type_one_moves_the_point_onto_the_section() {
        let k = q();
        let f = p(&[(0, 1, 1), (2, 0, -1)]);
        let before = boundary_profile(&f, Completion::P2).unwrap();
        assert_eq!(before.entries[0].point.position, Position::Special);
        let l = ElementaryLink::type_one(&k, Position::Special).unwrap();
        let g = link_apply(&l, &f).unwrap();
        let after = boundary_profile(&g, Completion::Fn(1)).unwrap();
        // x - y^2 on F1 touches E at the corner.
        assert!(after.meets_corner());
        assert_eq!(after.corner().unwrap().intersection_section, Some(1));
    }

    #[test]
    fn ascending_lowers_section_contact() {
        let k = q();
        let f = p(&[(1, 0, 1), (0, 5, -1)]);
        let mut n = 2;
        let mut contact =
            boundary_profile(&f, Completion::Fn(n)).unwrap().corner().unwrap().intersection_section.unwrap();
        while contact > 0 {
            let l = ElementaryLink::ascending(&k, n).unwrap();
            let g = link_apply(&l, &f).unwrap();
            n += 1;
            let pr = boundary_profile(&g, Completion::Fn(n)).unwrap();
            let next = pr.corner().and_then(|c| c.intersection_section).unwrap_or(0);
            assert_eq!(next + 1, contact);
            contact = next;
        }
        assert_eq!(n, 5);
    }

    #[test]
    fn line_action_of_jonquieres_maps() {
        let k = q();
        // (2x + 3y^2, y) on F2 sends a to 2a + 3.
        let t = PlaneAutomorphism::triangular(
            &k.from_i64(2),
            &UniPoly::monomial(&k, k.from_i64(3), 2),
            &k.one(),
            &k.zero(),
        )
        .unwrap();
        let img = act_on_line(Completion::Fn(2), &t, &Position::Rational(k.from_i64(1))).unwrap();
        assert_eq!(img, Position::Rational(k.from_i64(5)));
        // The swap exchanges (1:0:0) and (0:1:0).
        let s = PlaneAutomorphism::swap(&k);
        assert_eq!(act_on_line(Completion::P2, &s, &Position::Rational(k.zero())).unwrap(), Position::Special);
    }

    #[test]
    fn descending_needs_room() {
        assert!(ElementaryLink::descending(&q(), 1, &q().one()).is_err());
        assert!(ElementaryLink::type_one(&q(), Position::Orbit(UniPoly::from_i64s(&q(), &[1, 0, 1]))).is_err());
    }
}
