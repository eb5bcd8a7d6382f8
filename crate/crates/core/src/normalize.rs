//! Driving a curve to a fence or to a minimal-degree position on `ℙ²` by
//! chains of elementary links.
//!
//! Each step is a macro move built from links: a type I link at a rational
//! point `q` of the line at infinity where the curve is not transversal,
//! ascending links up to `𝔽ₙ`, a descending link at a rational point of the
//! fibre at infinity, descending links back to `𝔽₁`, and a type III link.
//! Its induced map is `(x - c yⁿ, y) ∘ β_q`. A move is taken only when it
//! lowers the degree, so the driver terminates.

use serde_json::{json, Value};

use crate::automorphism::PlaneAutomorphism;
use crate::bipoly::{self, BiPoly};
use crate::completions::{
    boundary_profile_with, BoundaryPoint, BoundaryProfile, Completion, ElementaryLink, LinkChain, Position,
    ProfileOptions,
};
use crate::config::Caps;
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::unipoly::UniPoly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NormalizationOutcome {
    /// The conjugated equation is a polynomial in `x` alone.
    Fence { conjugator: PlaneAutomorphism, equation: UniPoly },
    /// Every boundary point meets the line at infinity transversally.
    Transversal { completion: Completion, conjugator: PlaneAutomorphism },
    /// Every non-transversal boundary point is irrational.
    RationalityHalt { completion: Completion, conjugator: PlaneAutomorphism, obstruction: Vec<BoundaryPoint> },
    /// Minimal degree reached with rational non-transversal points left:
    /// no link based at them lowers the degree.
    Stable { completion: Completion, conjugator: PlaneAutomorphism, points: Vec<BoundaryPoint> },
}

impl NormalizationOutcome {
    pub fn conjugator(&self) -> &PlaneAutomorphism {
        match self {
            NormalizationOutcome::Fence { conjugator, .. }
            | NormalizationOutcome::Transversal { conjugator, .. }
            | NormalizationOutcome::RationalityHalt { conjugator, .. }
            | NormalizationOutcome::Stable { conjugator, .. } => conjugator,
        }
    }

    pub fn tag(&self) -> &'static str {
        match self {
            NormalizationOutcome::Fence { .. } => "Fence",
            NormalizationOutcome::Transversal { .. } => "Transversal",
            NormalizationOutcome::RationalityHalt { .. } => "RationalityHalt",
            NormalizationOutcome::Stable { .. } => "Stable",
        }
    }
}

/// Result of [`normalize`]: the outcome, the conjugated equation, the
/// chain of links realising the conjugator, and a readable trace.
#[derive(Clone, Debug)]
pub struct Normalization {
    pub outcome: NormalizationOutcome,
    /// The input pushed forward by the conjugator, normalised.
    pub curve: BiPoly,
    pub chain: LinkChain,
    /// Boundary profile of `curve` on `ℙ²`; absent for fences.
    pub profile: Option<BoundaryProfile>,
    pub trace: Vec<String>,
}

impl Normalization {
    pub fn to_json(&self) -> Value {
        let c = self.outcome.conjugator();
        let mut v = json!({
            "outcome": self.outcome.tag(),
            "conjugator": [c.f().to_string(), c.g().to_string()],
            "curve": self.curve.to_string(),
            "chain": self.chain.to_json(),
            "trace": self.trace,
        });
        match &self.outcome {
            NormalizationOutcome::Fence { equation, .. } => v["equation"] = json!(equation.to_string_var("x")),
            NormalizationOutcome::RationalityHalt { obstruction, .. } => {
                v["obstruction"] = json!(obstruction.iter().map(BoundaryPoint::to_json).collect::<Vec<_>>())
            }
            NormalizationOutcome::Stable { points, .. } => {
                v["points"] = json!(points.iter().map(BoundaryPoint::to_json).collect::<Vec<_>>())
            }
            NormalizationOutcome::Transversal { .. } => {}
        }
        if let Some(p) = &self.profile {
            v["profile"] = p.to_json();
        }
        v
    }
}

pub fn normalize(f: &BiPoly) -> Result<Normalization> {
    normalize_with_caps(f, &Caps::from_env())
}

pub fn normalize_with_caps(f: &BiPoly, caps: &Caps) -> Result<Normalization> {
    if f.is_zero() {
        return Err(Error::ZeroInput("normalize"));
    }
    if f.is_constant() {
        return Err(Error::InvalidInput("a nonzero constant defines no curve".into()));
    }
    let d0 = f.degree().unwrap() as usize;
    if d0 > caps.degree {
        return Err(Error::ResourceCap {
            what: "degree",
            limit: caps.degree,
            trace: vec![format!("input degree {d0}")],
        });
    }
    if !bipoly::is_squarefree(f)? {
        return Err(Error::NotSquarefree);
    }
    let k = f.field().clone();
    let mut psi = PlaneAutomorphism::identity(&k);
    let mut chain = LinkChain::identity(&k);
    let mut cur = f.normalized();
    let mut trace = vec![format!("start on P2 with {cur} (degree {d0})")];

    for _ in 0..caps.iterations {
        if let Some((lin, eq)) = fence_form(&cur)? {
            psi = lin.compose(&psi);
            let curve = lin.pushforward(&cur);
            chain = chain.then(&LinkChain::isomorphism(Completion::P2, lin)?)?;
            trace.push(format!("fence: {}", eq.to_string_var("x")));
            return Ok(Normalization {
                outcome: NormalizationOutcome::Fence { conjugator: psi, equation: eq },
                curve,
                chain: chain.reduce()?,
                profile: None,
                trace,
            });
        }
        let Some(mv) = best_move(&cur)? else { break };
        trace.push(format!(
            "move at {} with n = {}, c = {}: degree {} -> {}",
            BoundaryPoint::on_line(Completion::P2, &k, mv.point.clone()),
            mv.n,
            k.format(&mv.c),
            cur.degree().unwrap(),
            mv.curve.degree().unwrap()
        ));
        chain = chain.then(&macro_chain(&k, &mv)?)?;
        psi = mv.map.compose(&psi);
        cur = mv.curve;
    }
    if best_move(&cur)?.is_some() {
        return Err(Error::ResourceCap { what: "driver iterations", limit: caps.iterations, trace });
    }

    let opts = ProfileOptions { heights: true, caps: *caps };
    let profile = boundary_profile_with(&cur, Completion::P2, &opts)?;
    let bad: Vec<BoundaryPoint> =
        profile.entries.iter().filter(|e| !e.is_transversal()).map(|e| e.point.clone()).collect();
    let completion = Completion::P2;
    let outcome = if bad.is_empty() {
        trace.push("transversal on P2".into());
        NormalizationOutcome::Transversal { completion, conjugator: psi }
    } else if bad.iter().all(|p| !p.is_rational()) {
        trace.push(format!("halt: {} irrational non-transversal orbit(s)", bad.len()));
        NormalizationOutcome::RationalityHalt { completion, conjugator: psi, obstruction: bad }
    } else {
        trace.push(format!("stable at degree {}: no link lowers the degree", cur.degree().unwrap()));
        NormalizationOutcome::Stable { completion, conjugator: psi, points: bad }
    };
    Ok(Normalization { outcome, curve: cur, chain: chain.reduce()?, profile: Some(profile), trace })
}

/// A linear form `l` with monic normalisation: `y - t x` for the direction
/// `(1:t)`, `x` for `(0:1)`.
pub(crate) fn linear_form(k: &Field, pos: &Position) -> BiPoly {
    match pos {
        Position::Rational(t) => BiPoly::from_terms(k, [(0, 1, k.one()), (1, 0, k.neg(t))]),
        Position::Special => BiPoly::x(k),
        Position::Orbit(_) => unreachable!("linear forms come from rational directions"),
    }
}

/// Rational points at infinity of `f` with their intersection numbers with
/// the line at infinity, `(1:t:0)` sorted by `t`, then `(0:1:0)`.
pub(crate) fn rational_points_at_infinity(f: &BiPoly) -> Result<Vec<(Position, u32)>> {
    let k = f.field();
    let d = f.degree().unwrap_or(0);
    let lead = f.leading_form();
    let slopes = UniPoly::new(k.clone(), (0..=d).map(|j| lead.coeff(d - j, j)).collect());
    let mut out: Vec<(Position, u32)> =
        slopes.roots()?.into_iter().map(|(t, m)| (Position::Rational(t), m as u32)).collect();
    let vertical = d as usize - slopes.degree().unwrap_or(0);
    if vertical > 0 {
        out.push((Position::Special, vertical as u32));
    }
    Ok(out)
}

/// The affine change of coordinates `(l, l')` when `f = P(l)` for a linear
/// form `l`, together with `P`.
pub(crate) fn fence_form(f: &BiPoly) -> Result<Option<(PlaneAutomorphism, UniPoly)>> {
    let k = f.field().clone();
    let d = f.degree().unwrap_or(0);
    let pts = rational_points_at_infinity(f)?;
    let dir = match pts.as_slice() {
        [(p, m)] if *m == d => p.clone(),
        _ => return Ok(None),
    };
    let l = linear_form(&k, &dir);
    let other = if dir == Position::Special { BiPoly::y(&k) } else { BiPoly::x(&k) };
    let lin = PlaneAutomorphism::from_pairs(
        l.clone(),
        other.clone(),
        // Inverse of (l, other): for l = x it is the identity; for l = y - t x,
        // other = x, it is (y, x + t y).
        if dir == Position::Special { BiPoly::x(&k) } else { BiPoly::y(&k) },
        if dir == Position::Special {
            BiPoly::y(&k)
        } else {
            let Position::Rational(t) = &dir else { unreachable!() };
            BiPoly::from_terms(&k, [(1, 0, k.one()), (0, 1, t.clone())])
        },
    )?;
    let g = lin.pushforward(f);
    Ok(g.as_uni_x().map(|p| (lin, p)))
}

pub(crate) struct Move {
    pub point: Position,
    pub contact: u32,
    pub n: u32,
    pub c: Scalar,
    /// `(x - c yⁿ, y) ∘ β_q`.
    pub map: PlaneAutomorphism,
    pub curve: BiPoly,
}

/// The linear map sending the direction `q` to `(1:0:0)`.
fn beta(k: &Field, q: &Position) -> Result<PlaneAutomorphism> {
    let (o, z) = (k.one(), k.zero());
    match q {
        Position::Rational(t) => PlaneAutomorphism::affine(k, &o, &z, &k.neg(t), &o, &z, &z),
        Position::Special => Ok(PlaneAutomorphism::swap(k)),
        Position::Orbit(_) => Err(Error::InvalidInput("irrational direction".into())),
    }
}

/// Top part of `f` for the weight `n` on `x` and `1` on `y`, as a
/// polynomial in `A = x/yⁿ`.
fn weighted_top(f: &BiPoly, n: u32) -> UniPoly {
    let k = f.field();
    let top = f.terms().map(|(m, _)| n * m.0 + m.1).max().unwrap_or(0);
    let dx = f.deg_x().unwrap_or(0) as usize;
    let mut c = vec![k.zero(); dx + 1];
    for (m, v) in f.terms() {
        if n * m.0 + m.1 == top {
            c[m.0 as usize] = v.clone();
        }
    }
    UniPoly::new(k.clone(), c)
}

/// The degree-lowering move with the largest drop; ties go to the larger
/// contact with the line at infinity, then to the first point, weight and
/// root in the fixed enumeration order.
pub(crate) fn best_move(f: &BiPoly) -> Result<Option<Move>> {
    let k = f.field().clone();
    let d = f.degree().unwrap_or(0);
    let mut best: Option<(u32, Move)> = None;
    for (q, contact) in rational_points_at_infinity(f)? {
        if contact < 2 {
            continue;
        }
        let b = beta(&k, &q)?;
        let g = b.pushforward(f);
        for n in 2..=d.max(2) {
            let top = weighted_top(&g, n);
            if top.degree().unwrap_or(0) == 0 {
                continue;
            }
            for (c, _) in top.roots()? {
                if c.is_zero() {
                    continue;
                }
                let tau = PlaneAutomorphism::elementary_shear(&k, &k.neg(&c), n as usize);
                let h = tau.pushforward(&g);
                let dh = h.degree().unwrap_or(0);
                if dh >= d {
                    continue;
                }
                let drop = d - dh;
                let better = match &best {
                    None => true,
                    Some((bd, bm)) => (drop, contact) > (*bd, bm.contact),
                };
                if better {
                    let mv = Move { point: q.clone(), contact, n, c, map: tau.compose(&b), curve: h };
                    best = Some((drop, mv));
                }
            }
        }
    }
    Ok(best.map(|(_, m)| m))
}

/// The links realising a move: `I_q`, ascents to `𝔽ₙ`, the descent at
/// `x/yⁿ = c`, descents at `0` to `𝔽₁`, and `III`.
pub(crate) fn macro_chain(k: &Field, mv: &Move) -> Result<LinkChain> {
    let mut links = vec![ElementaryLink::type_one(k, mv.point.clone())?];
    for m in 1..mv.n {
        links.push(ElementaryLink::ascending(k, m)?);
    }
    links.push(ElementaryLink::descending(k, mv.n, &mv.c)?);
    for m in (2..mv.n).rev() {
        links.push(ElementaryLink::descending(k, m, &k.zero())?);
    }
    links.push(ElementaryLink::type_three(k));
    let alphas = vec![PlaneAutomorphism::identity(k); links.len() + 1];
    LinkChain::from_parts(Completion::P2, alphas, links)
}
