//! Local invariants of plane curve germs at the origin: multiplicity,
//! tangent cone, intersection numbers, blow-ups and heights.

use serde::Serialize;

use crate::bipoly::{self, BiPoly};
use crate::config::Caps;
use crate::error::{Error, Result};
use crate::orbit::{self, Orbit};
use crate::unipoly::UniPoly;

/// Which standard chart of the blow-up a point lies in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum BlowChart {
    /// `(x, y) = (x, x*y1)`: exceptional points `(0, y1)`.
    Slope,
    /// `(x, y) = (x0*y, y)`: only its origin, the vertical direction, is used.
    Vertical,
}

/// A point on the exceptional line lying on the strict transform.
#[derive(Clone, Debug)]
pub struct BlownUpPoint {
    pub chart: BlowChart,
    /// The direction as an orbit of slopes; `None` for the vertical direction.
    pub orbit: Option<Orbit>,
    /// The strict transform, translated so the point is the origin, over
    /// the orbit's field.
    pub germ: BiPoly,
}

/// One orbit of lines in the tangent cone.
#[derive(Clone, Debug, Serialize)]
pub struct ConeFactor {
    /// `"x"` for the vertical line, otherwise the minimal polynomial of the
    /// slope `t` of the lines `y = t x`.
    pub slope_minpoly: String,
    pub multiplicity: usize,
    pub orbit_size: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct SingularityReport {
    pub multiplicity: u32,
    pub tangent_cone: Vec<ConeFactor>,
    pub height: u32,
    /// Deepest level of the blow-up tree visited.
    pub depth: usize,
}

fn check_on_curve(f: &BiPoly) -> Result<()> {
    if f.is_zero() {
        return Err(Error::ZeroInput("germ"));
    }
    if !f.constant_term().is_zero() {
        return Err(Error::PointNotOnCurve);
    }
    Ok(())
}

/// In an orbit algebra whose modulus is only asserted irreducible, make
/// sure every coefficient is zero or a unit so that support-based decisions
/// mean the same on every factor.
fn screen(f: &BiPoly) -> Result<()> {
    let k = f.field();
    if k.has_asserted() {
        for (_, c) in f.terms() {
            k.check_unit(c)?;
        }
    }
    Ok(())
}

pub fn multiplicity_at_origin(f: &BiPoly) -> Result<u32> {
    check_on_curve(f)?;
    Ok(f.low_degree().unwrap())
}

/// `f_m(1, t)` for the lowest form `f_m`: its roots are the slopes of the
/// non-vertical tangent lines.
fn slope_polynomial(f: &BiPoly, m: u32) -> UniPoly {
    let k = f.field();
    UniPoly::new(k.clone(), (0..=m).map(|j| f.coeff(m - j, j)).collect())
}

pub fn tangent_cone(f: &BiPoly) -> Result<Vec<ConeFactor>> {
    let m = multiplicity_at_origin(f)?;
    let slopes = slope_polynomial(f, m);
    let mut out = Vec::new();
    for o in orbit::orbits(&slopes, "t")? {
        out.push(ConeFactor {
            slope_minpoly: o.minpoly.to_string_var("t"),
            multiplicity: o.multiplicity,
            orbit_size: o.size(),
        });
    }
    let vertical = m as usize - slopes.degree().unwrap_or(0);
    if vertical > 0 {
        out.push(ConeFactor { slope_minpoly: "x".into(), multiplicity: vertical, orbit_size: 1 });
    }
    Ok(out)
}

/// Strict transform in the slope chart: `f(x, x*y) / x^m`.
fn slope_chart(f: &BiPoly, m: u32) -> BiPoly {
    f.map_monomials(|i, j| (i + j - m, j))
}

/// Strict transform in the vertical chart: `f(x*y, y) / y^m`.
fn vertical_chart(f: &BiPoly, m: u32) -> BiPoly {
    f.map_monomials(|i, j| (i, i + j - m))
}

/// Points above the origin on the strict transform, one per orbit.
pub fn blow_up_germ(f: &BiPoly) -> Result<Vec<BlownUpPoint>> {
    let m = multiplicity_at_origin(f)?;
    let mut out = Vec::new();
    let f1 = slope_chart(f, m);
    for o in orbit::orbits(&slope_polynomial(f, m), "s")? {
        let germ = f1.lift(&o.field).translate(&o.field.zero(), &o.point);
        out.push(BlownUpPoint { chart: BlowChart::Slope, orbit: Some(o), germ });
    }
    if f.coeff(0, m).is_zero() {
        out.push(BlownUpPoint { chart: BlowChart::Vertical, orbit: None, germ: vertical_chart(f, m) });
    }
    debug_assert!(out.iter().all(|p| p.germ.low_degree().unwrap_or(0) <= m));
    Ok(out)
}

pub fn height_at_origin(f: &BiPoly) -> Result<u32> {
    height_with_caps(f, &Caps::from_env()).map(|(h, _)| h)
}

/// Height and the depth of the blow-up tree that was explored.
pub fn height_with_caps(f: &BiPoly, caps: &Caps) -> Result<(u32, usize)> {
    check_on_curve(f)?;
    height_rec(f, 0, caps)
}

fn height_rec(f: &BiPoly, depth: usize, caps: &Caps) -> Result<(u32, usize)> {
    screen(f)?;
    let m = f.low_degree().unwrap();
    if m <= 1 {
        return Ok((0, depth));
    }
    if depth >= caps.depth {
        return Err(Error::ResourceCap {
            what: "blow-up depth",
            limit: caps.depth,
            trace: vec![format!("germ {f} still has multiplicity {m}")],
        });
    }
    let f1 = slope_chart(f, m);
    let var = format!("s{}", depth + 1);
    let orbits = orbit::orbits(&slope_polynomial(f, m), &var)?;
    let mut best = (0, depth + 1);
    let found = orbit::map_orbits(orbits, &var, &mut |o: &Orbit| {
        let germ = f1.lift(&o.field).translate(&o.field.zero(), &o.point);
        height_rec(&germ, depth + 1, caps)
    })?;
    for (_, (h, d)) in found {
        best = (best.0.max(h), best.1.max(d));
    }
    if f.coeff(0, m).is_zero() {
        let (h, d) = height_rec(&vertical_chart(f, m), depth + 1, caps)?;
        best = (best.0.max(h), best.1.max(d));
    }
    Ok((best.0 + 1, best.1))
}

pub fn analyze_germ(f: &BiPoly) -> Result<SingularityReport> {
    analyze_germ_with_caps(f, &Caps::from_env())
}

pub fn analyze_germ_with_caps(f: &BiPoly, caps: &Caps) -> Result<SingularityReport> {
    let multiplicity = multiplicity_at_origin(f)?;
    let tangent_cone = tangent_cone(f)?;
    let (height, depth) = height_with_caps(f, caps)?;
    Ok(SingularityReport { multiplicity, tangent_cone, height, depth })
}

/// Intersection multiplicity of `f = 0` and `g = 0` at the origin.
///
/// Fulton's reduction: lower the `x`-degree of the restrictions to `y = 0`
/// by subtracting multiples, and split off factors of `y`, which contribute
/// the order of vanishing of the other restriction.
///
/// Work is done modulo `m^(T+1)` for a budget `T`, where `m = (x, y)`. An
/// answer `N ≤ T` found there is exact: then `m^N` lies in the truncated
/// ideal and, by Nakayama, in `(f, g)` itself. The budget starts at the
/// product of multiplicities and doubles up to the Bezout bound.
pub fn local_intersection(f: &BiPoly, g: &BiPoly) -> Result<u32> {
    if f.field() != g.field() {
        return Err(Error::FieldMismatch(f.field().to_string(), g.field().to_string()));
    }
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroInput("local intersection"));
    }
    if !f.constant_term().is_zero() || !g.constant_term().is_zero() {
        return Ok(0);
    }
    let h = bipoly::gcd(f, g)?;
    if !h.is_constant() && h.constant_term().is_zero() {
        return Err(Error::CommonComponent);
    }
    let bezout = f.degree().unwrap() * g.degree().unwrap();
    let mut budget = (f.low_degree().unwrap() * g.low_degree().unwrap()).max(1);
    loop {
        if let Some(n) = truncated_intersection(f, g, budget)? {
            return Ok(n);
        }
        if budget >= bezout {
            return Err(Error::CommonComponent);
        }
        budget = (2 * budget).min(bezout);
    }
}

/// `Some(I(f, g))` when it is at most `budget`, `None` when it exceeds it.
fn truncated_intersection(f: &BiPoly, g: &BiPoly, mut budget: u32) -> Result<Option<u32>> {
    let k = f.field().clone();
    let zero = k.zero();
    let (mut f, mut g) = (f.truncate(budget), g.truncate(budget));
    let mut total = 0u32;
    loop {
        if !f.constant_term().is_zero() || !g.constant_term().is_zero() {
            return Ok(Some(total));
        }
        screen(&f)?;
        screen(&g)?;
        let (mut fr, mut gr) = (f.eval_y(&zero), g.eval_y(&zero));
        if fr.is_zero() && gr.is_zero() {
            // Both lie in (y) + m^(budget+1).
            return Ok(None);
        }
        let key = |p: &UniPoly| p.degree().unwrap_or(usize::MAX);
        if key(&fr) > key(&gr) {
            std::mem::swap(&mut f, &mut g);
            std::mem::swap(&mut fr, &mut gr);
        }
        if gr.is_zero() {
            // g = y * g1, and I(f, y) is the order of f(x, 0).
            let a = fr.order().unwrap() as u32;
            if a > budget {
                return Ok(None);
            }
            total += a;
            budget -= a;
            g = g.map_monomials(|i, j| (i, j - 1)).truncate(budget);
            f = f.truncate(budget);
            continue;
        }
        let (r, s) = (fr.degree().unwrap(), gr.degree().unwrap());
        let c = k.div(&gr.leading(), &fr.leading())?;
        g = (&g - &(&BiPoly::monomial(&k, c, (s - r) as u32, 0) * &f)).truncate(budget);
    }
}

/// The multiplicity of `f` at the origin, or 0 when `f` misses it.
pub fn multiplicity_or_zero(f: &BiPoly) -> u32 {
    if f.constant_term().is_zero() {
        f.low_degree().unwrap_or(0)
    } else {
        0
    }
}
