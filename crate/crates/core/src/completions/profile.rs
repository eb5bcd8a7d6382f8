use serde_json::{json, Value};

use crate::bipoly::{self, BiPoly};
use crate::config::Caps;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::orbit::{self, Orbit};
use crate::singularity;
use crate::unipoly::UniPoly;

use super::chart::{embed_curve, CurveEmbedding};
use super::{BoundaryPoint, Completion, Position};

#[derive(Clone, Copy, Debug)]
pub struct ProfileOptions {
    /// Compute heights (blow-up recursion) at every point.
    pub heights: bool,
    pub caps: Caps,
}

impl Default for ProfileOptions {
    fn default() -> Self {
        ProfileOptions { heights: true, caps: Caps::from_env() }
    }
}

/// One boundary point (or Galois orbit of points) on the curve's closure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProfileEntry {
    pub point: BoundaryPoint,
    pub orbit_size: usize,
    /// Local intersection with the line or fibre at infinity, when the point
    /// lies on it.
    pub intersection_line: Option<u32>,
    /// Local intersection with the negative section, when the point lies on it.
    pub intersection_section: Option<u32>,
    pub multiplicity: u32,
    pub height: Option<u32>,
}

impl ProfileEntry {
    /// Largest local intersection with a boundary component.
    pub fn worst_intersection(&self) -> u32 {
        self.intersection_line.unwrap_or(0).max(self.intersection_section.unwrap_or(0))
    }

    pub fn is_transversal(&self) -> bool {
        self.worst_intersection() <= 1
    }

    pub fn to_json(&self) -> Value {
        json!({
            "point": self.point.to_json(),
            "orbit_size": self.orbit_size.to_string(),
            "intersection_line": self.intersection_line.map(|v| v.to_string()),
            "intersection_section": self.intersection_section.map(|v| v.to_string()),
            "multiplicity": self.multiplicity.to_string(),
            "height": self.height.map(|v| v.to_string()),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryProfile {
    pub completion: Completion,
    pub field: Field,
    pub entries: Vec<ProfileEntry>,
    /// Total degree of the affine equation.
    pub degree: u32,
    /// Intersection with the line or fibre at infinity predicted by degrees.
    pub line_total: u32,
    /// Intersection with the negative section predicted by degrees.
    pub section_total: Option<u32>,
}

impl BoundaryProfile {
    pub fn is_transversal(&self) -> bool {
        self.entries.iter().all(ProfileEntry::is_transversal)
    }

    /// Whether the closure passes through `Eₙ ∩ L`.
    pub fn meets_corner(&self) -> bool {
        self.corner().is_some()
    }

    pub fn corner(&self) -> Option<&ProfileEntry> {
        self.entries.iter().find(|e| e.point.is_corner())
    }

    /// Sum of local intersections with `L`, counted over orbits.
    pub fn line_sum(&self) -> u32 {
        self.entries.iter().map(|e| e.intersection_line.unwrap_or(0) * e.orbit_size as u32).sum()
    }

    pub fn section_sum(&self) -> u32 {
        self.entries.iter().map(|e| e.intersection_section.unwrap_or(0) * e.orbit_size as u32).sum()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "completion": self.completion.to_string(),
            "degree": self.degree.to_string(),
            "line_total": self.line_total.to_string(),
            "section_total": self.section_total.map(|v| v.to_string()),
            "entries": self.entries.iter().map(ProfileEntry::to_json).collect::<Vec<_>>(),
        })
    }
}

pub fn boundary_profile(f: &BiPoly, x: Completion) -> Result<BoundaryProfile> {
    boundary_profile_with(f, x, &ProfileOptions::default())
}

pub fn boundary_profile_with(f: &BiPoly, x: Completion, opts: &ProfileOptions) -> Result<BoundaryProfile> {
    let emb = embed_curve(f, x)?;
    if !bipoly::is_squarefree(f)? {
        return Err(Error::NotSquarefree);
    }
    let k = f.field().clone();
    let mut entries = Vec::new();
    match &emb {
        CurveEmbedding::P2 { form } => {
            let near = form.chart_x();
            let slopes = near.eval_y(&k.zero());
            entries.extend(orbit_entries(&slopes, x, Side::Line, opts, |o| {
                near.lift(&o.field).translate(&o.point, &o.field.zero())
            })?);
            if form.coeff(0, form.degree()).is_zero() {
                let germ = form.chart_y();
                let e = local_entry(&germ, true, false, opts)?;
                entries.push(e.into_entry(BoundaryPoint::on_line(x, &k, Position::Special), 1));
            }
        }
        CurveEmbedding::Fn { near_line, corner, near_section, .. } => {
            let line_poly = emb.line_polynomial().unwrap();
            entries.extend(orbit_entries(&line_poly, x, Side::Line, opts, |o| {
                near_line.lift(&o.field).translate(&o.point, &o.field.zero())
            })?);
            if corner.constant_term().is_zero() {
                let e = local_entry(corner, true, true, opts)?;
                entries.push(e.into_entry(BoundaryPoint::corner(x.index().unwrap(), &k), 1));
            }
            let section_poly = emb.section_polynomial().unwrap();
            entries.extend(orbit_entries(&section_poly, x, Side::Section, opts, |o| {
                near_section.lift(&o.field).translate(&o.field.zero(), &o.point)
            })?);
        }
    }
    let profile = BoundaryProfile {
        completion: x,
        field: k,
        entries,
        degree: f.degree().unwrap_or(0),
        line_total: emb.line_total(),
        section_total: emb.section_total(),
    };
    debug_assert_eq!(profile.line_sum(), profile.line_total);
    debug_assert_eq!(profile.section_sum(), profile.section_total.unwrap_or(0));
    Ok(profile)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Side {
    Line,
    Section,
}

struct Local {
    line: Option<u32>,
    section: Option<u32>,
    multiplicity: u32,
    height: Option<u32>,
}

impl Local {
    fn into_entry(self, point: BoundaryPoint, orbit_size: usize) -> ProfileEntry {
        ProfileEntry {
            point,
            orbit_size,
            intersection_line: self.line,
            intersection_section: self.section,
            multiplicity: self.multiplicity,
            height: self.height,
        }
    }
}

/// Invariants of a germ at the chart origin. In every chart the line at
/// infinity is the second coordinate axis `v = 0` and the section is the
/// first, `b = 0` or `c = 0`.
fn local_entry(germ: &BiPoly, on_line: bool, on_section: bool, opts: &ProfileOptions) -> Result<Local> {
    let k = germ.field();
    let line = if on_line { Some(singularity::local_intersection(germ, &BiPoly::y(k))?) } else { None };
    let section = if on_section { Some(singularity::local_intersection(germ, &BiPoly::x(k))?) } else { None };
    let multiplicity = singularity::multiplicity_at_origin(germ)?;
    let height = if opts.heights { Some(singularity::height_with_caps(germ, &opts.caps)?.0) } else { None };
    Ok(Local { line, section, multiplicity, height })
}

fn orbit_entries(
    poly: &UniPoly,
    x: Completion,
    side: Side,
    opts: &ProfileOptions,
    germ_at: impl Fn(&Orbit) -> BiPoly,
) -> Result<Vec<ProfileEntry>> {
    if poly.degree().unwrap_or(0) == 0 {
        return Ok(Vec::new());
    }
    let base = poly.field().clone();
    let orbits = orbit::orbits(poly, "t")?;
    let found = orbit::map_orbits(orbits, "t", &mut |o: &Orbit| {
        let germ = germ_at(o);
        local_entry(&germ, side == Side::Line, side == Side::Section, opts)
    })?;
    Ok(found
        .into_iter()
        .map(|(o, local)| {
            let position = match o.rational_value() {
                Some(v) => Position::Rational(v.clone()),
                None => Position::Orbit(o.minpoly.clone()),
            };
            let point = match side {
                Side::Line => BoundaryPoint::on_line(x, &base, position),
                Side::Section => BoundaryPoint::on_section(x, &base, position),
            };
            local.into_entry(point, o.size())
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::completions::BoundaryComponent;

    fn q() -> Field {
        Field::rationals()
    }

    fn p(t: &[(u32, u32, i64)]) -> BiPoly {
        BiPoly::from_i64s(&q(), t)
    }

    #[test]
    fn parabola_on_p2() {
        let pr = boundary_profile(&p(&[(0, 1, 1), (2, 0, -1)]), Completion::P2).unwrap();
        assert_eq!(pr.entries.len(), 1);
        let e = &pr.entries[0];
        assert_eq!(e.point.position, Position::Special);
        assert_eq!(e.intersection_line, Some(2));
        assert_eq!(e.multiplicity, 1);
        assert_eq!(e.height, Some(0));
    }

    #[test]
    fn hyperbola_on_p2() {
        let pr = boundary_profile(&p(&[(1, 1, 1), (0, 0, -1)]), Completion::P2).unwrap();
        assert_eq!(pr.entries.len(), 2);
        assert_eq!(pr.entries[0].point.position, Position::Rational(q().zero()));
        assert_eq!(pr.entries[1].point.position, Position::Special);
        assert!(pr.entries.iter().all(|e| e.intersection_line == Some(1) && e.height == Some(0)));
    }

    #[test]
    fn circle_has_one_conjugate_pair() {
        let pr = boundary_profile(&p(&[(2, 0, 1), (0, 2, 1), (0, 0, -1)]), Completion::P2).unwrap();
        assert_eq!(pr.entries.len(), 1);
        let e = &pr.entries[0];
        assert_eq!(e.orbit_size, 2);
        assert_eq!(e.point.position, Position::Orbit(UniPoly::from_i64s(&q(), &[1, 0, 1])));
        assert!(pr.is_transversal());
    }

    #[test]
    fn fibre_meets_section_once() {
        let pr = boundary_profile(&p(&[(0, 1, 1)]), Completion::Fn(1)).unwrap();
        assert_eq!(pr.entries.len(), 1);
        let e = &pr.entries[0];
        assert_eq!(e.point.component, BoundaryComponent::NegativeSection);
        assert_eq!(e.point.position, Position::Rational(q().zero()));
        assert_eq!(e.intersection_section, Some(1));
        assert_eq!(pr.line_total, 0);
    }

    #[test]
    fn corner_contact() {
        // x - y^5 on F2 passes through E∩L with (Γ·E) = 5 - 2 = 3 there and
        // meets L only at the corner.
        let pr = boundary_profile(&p(&[(1, 0, 1), (0, 5, -1)]), Completion::Fn(2)).unwrap();
        let c = pr.corner().unwrap();
        assert_eq!(c.intersection_section, Some(3));
        assert_eq!(c.intersection_line, Some(1));
        assert_eq!(pr.line_sum(), 1);
        assert_eq!(pr.section_sum(), pr.section_total.unwrap());
    }

    #[test]
    fn rejects_squares() {
        assert!(matches!(boundary_profile(&p(&[(0, 1, 1)]).pow(2), Completion::P2), Err(Error::NotSquarefree)));
    }
}
