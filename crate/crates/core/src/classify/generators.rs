//! Parametric generators of the automorphism group of a normal form, and
//! their conjugates in the coordinates of the input curve.

use rand::Rng;
use serde_json::{json, Value};

use crate::automorphism::PlaneAutomorphism;
use crate::bipoly::BiPoly;
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::unipoly::UniPoly;

/// Finite fields at most this large are enumerated exhaustively.
const ENUMERATION_LIMIT: u64 = 64;

/// A family of automorphisms of a normal form, in normal coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    /// `(a x, b y + P(x))`, `a, b ∈ k*`, `P ∈ k[x]`.
    LineStabilizer,
    /// `(t^wx x, t^wy y)`, `t ∈ k*`.
    Torus { wx: i64, wy: i64 },
    /// `(x, c y)`, `c ∈ k*`.
    FenceTorus,
    /// `(x, y + P(x))`, `P ∈ k[x]`.
    FenceShift,
    /// `(a x - ν b y, λ b x + a y)` with `a² + λν b² = 1`.
    Rotation { lambda: Scalar, nu: Scalar },
    /// `(a x + b y, b x + (a + μ b) y)` with `a² + μ a b + b² = 1`.
    Char2Rotation { mu: Scalar },
    /// A single automorphism.
    Discrete { name: String, map: PlaneAutomorphism },
}

impl Family {
    pub fn name(&self) -> &str {
        match self {
            Family::LineStabilizer => "line-stabilizer",
            Family::Torus { .. } => "torus",
            Family::FenceTorus => "fence-torus",
            Family::FenceShift => "fence-shift",
            Family::Rotation { .. } => "rotation",
            Family::Char2Rotation { .. } => "char2-rotation",
            Family::Discrete { name, .. } => name,
        }
    }

    /// Readable form in normal coordinates.
    pub fn expression(&self, k: &Field) -> String {
        match self {
            Family::LineStabilizer => "(a*x, b*y + P(x)) for a, b in k*, P in k[x]".into(),
            Family::Torus { wx, wy } => format!("(t^{wx}*x, t^{wy}*y) for t in k*"),
            Family::FenceTorus => "(x, c*y) for c in k*".into(),
            Family::FenceShift => "(x, y + P(x)) for P in k[x]".into(),
            Family::Rotation { lambda, nu } => {
                let (l, n, ln) = (factor(k, lambda), factor(k, nu), factor(k, &k.mul(lambda, nu)));
                format!("(a*x - {n}b*y, {l}b*x + a*y) for a^2 + {ln}b^2 = 1")
            }
            Family::Char2Rotation { mu } => {
                let m = factor(k, mu);
                format!("(a*x + b*y, b*x + (a + {m}b)*y) for a^2 + {m}a*b + b^2 = 1")
            }
            Family::Discrete { map, .. } => map.to_string(),
        }
    }

    /// Members of the family: every scalar parameter value over small
    /// finite fields, `samples` random ones otherwise. Polynomial
    /// parameters are always random of degree at most 3.
    pub fn members<R: Rng + ?Sized>(&self, k: &Field, rng: &mut R, samples: usize) -> Result<Vec<PlaneAutomorphism>> {
        let units = unit_values(k, rng, samples);
        let (o, z) = (k.one(), k.zero());
        let mut out = Vec::new();
        match self {
            Family::LineStabilizer => {
                let pairs: Vec<(Scalar, Scalar)> = if k.is_finite() {
                    units.iter().flat_map(|a| units.iter().map(move |b| (a.clone(), b.clone()))).collect()
                } else {
                    units.iter().map(|a| (a.clone(), nonzero(k, rng))).collect()
                };
                for (a, b) in pairs {
                    let p = random_poly(k, rng, 3);
                    let f = BiPoly::monomial(k, a, 1, 0);
                    let g = &BiPoly::monomial(k, b, 0, 1) + &BiPoly::from_uni_x(&p);
                    out.push(triangular_in_x(f, g)?);
                }
            }
            Family::Torus { wx, wy } => {
                for t in units {
                    let (sx, sy) = (k.pow_i64(&t, *wx)?, k.pow_i64(&t, *wy)?);
                    out.push(PlaneAutomorphism::affine(k, &sx, &z, &z, &sy, &z, &z)?);
                }
            }
            Family::FenceTorus => {
                for c in units {
                    out.push(PlaneAutomorphism::affine(k, &o, &z, &z, &c, &z, &z)?);
                }
            }
            Family::FenceShift => {
                for _ in 0..samples.max(1) {
                    let p = random_poly(k, rng, 3);
                    let g = &BiPoly::y(k) + &BiPoly::from_uni_x(&p);
                    out.push(triangular_in_x(BiPoly::x(k), g)?);
                }
            }
            Family::Rotation { lambda, nu } => {
                let ln = k.mul(lambda, nu);
                for (a, b) in conic_points(k, rng, samples, |a, b| k.add(&k.mul(a, a), &k.mul(&ln, &k.mul(b, b))), &ln)?
                {
                    let nb = k.neg(&k.mul(nu, &b));
                    let lb = k.mul(lambda, &b);
                    out.push(PlaneAutomorphism::affine(k, &a, &nb, &lb, &a, &z, &z)?);
                }
            }
            Family::Char2Rotation { mu } => {
                let pts =
                    finite_solutions(k, |a, b| k.add(&k.add(&k.mul(a, a), &k.mul(mu, &k.mul(a, b))), &k.mul(b, b)))?;
                for (a, b) in pts {
                    let d = k.add(&a, &k.mul(mu, &b));
                    out.push(PlaneAutomorphism::affine(k, &a, &b, &b, &d, &z, &z)?);
                }
            }
            Family::Discrete { map, .. } => out.push(map.clone()),
        }
        Ok(out)
    }
}

/// A family transported into the input's coordinates: each member `g`
/// becomes `ψ⁻¹ ∘ g ∘ ψ`, where `ψ` is the classification conjugator.
/// `c` as a leading factor: empty for one, `(c)*` otherwise.
fn factor(k: &Field, c: &Scalar) -> String {
    if c.is_one() {
        String::new()
    } else {
        format!("({})*", k.format(c))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub family: Family,
    pub conjugator: PlaneAutomorphism,
}

impl Generator {
    pub fn instantiate(&self, member: &PlaneAutomorphism) -> PlaneAutomorphism {
        self.conjugator.inverse().compose(member).compose(&self.conjugator)
    }

    /// Sampled members in the input's coordinates.
    pub fn members<R: Rng + ?Sized>(&self, rng: &mut R, samples: usize) -> Result<Vec<PlaneAutomorphism>> {
        let k = self.conjugator.field().clone();
        Ok(self.family.members(&k, rng, samples)?.iter().map(|g| self.instantiate(g)).collect())
    }

    pub fn to_json(&self) -> Value {
        let k = self.conjugator.field();
        json!({
            "family": self.family.name(),
            "normal_form_expression": self.family.expression(k),
            "conjugated_by": [self.conjugator.f().to_string(), self.conjugator.g().to_string()],
        })
    }
}

/// `(f, g)` where `f` is linear in `x` alone and `g = b y + P(x)`.
fn triangular_in_x(f: BiPoly, g: BiPoly) -> Result<PlaneAutomorphism> {
    // Conjugating a y-triangular map by the swap gives the x-triangular one.
    let k = f.field().clone();
    let a = f.coeff(1, 0);
    let b = g.coeff(0, 1);
    let p = (&g - &BiPoly::monomial(&k, b.clone(), 0, 1))
        .as_uni_x()
        .ok_or_else(|| Error::InvalidInput("second component is not b*y + P(x)".into()))?;
    let t = PlaneAutomorphism::triangular(&b, &p, &a, &k.zero())?;
    Ok(t.conjugate_by(&PlaneAutomorphism::swap(&k)))
}

fn unit_values<R: Rng + ?Sized>(k: &Field, rng: &mut R, samples: usize) -> Vec<Scalar> {
    match k.elements(ENUMERATION_LIMIT) {
        Some(all) => all.into_iter().filter(|a| !a.is_zero()).collect(),
        None => (0..samples).map(|_| nonzero(k, rng)).collect(),
    }
}

fn nonzero<R: Rng + ?Sized>(k: &Field, rng: &mut R) -> Scalar {
    loop {
        let a = random_scalar(k, rng);
        if !a.is_zero() {
            return a;
        }
    }
}

/// Uniform over finite fields; small fractions `p/q` over the rationals.
fn random_scalar<R: Rng + ?Sized>(k: &Field, rng: &mut R) -> Scalar {
    match k {
        Field::Rationals => {
            let n = k.from_i64(rng.gen_range(-9..=9));
            let d = k.from_i64(rng.gen_range(1..=4));
            k.div(&n, &d).expect("nonzero denominator")
        }
        _ => k.random_element(rng),
    }
}

fn random_poly<R: Rng + ?Sized>(k: &Field, rng: &mut R, max_deg: usize) -> UniPoly {
    let d = rng.gen_range(0..=max_deg);
    UniPoly::new(k.clone(), (0..=d).map(|_| random_scalar(k, rng)).collect())
}

/// All `(a, b)` with `q(a, b) = 1` over a small finite field.
fn finite_solutions(k: &Field, q: impl Fn(&Scalar, &Scalar) -> Scalar) -> Result<Vec<(Scalar, Scalar)>> {
    let all = k
        .elements(ENUMERATION_LIMIT)
        .ok_or_else(|| Error::Unsupported(format!("enumerating the points of a conic over {k}")))?;
    let mut out = Vec::new();
    for a in &all {
        for b in &all {
            if q(a, b).is_one() {
                out.push((a.clone(), b.clone()));
            }
        }
    }
    Ok(out)
}

/// Points of `a² + ln b² = 1`: all of them over small finite fields, and
/// over the rationals the stereographic parametrisation
/// `a = (1 - m)/(1 + m)`, `b = 2s/(1 + m)` with `m = ln s²`.
fn conic_points<R: Rng + ?Sized>(
    k: &Field,
    rng: &mut R,
    samples: usize,
    q: impl Fn(&Scalar, &Scalar) -> Scalar,
    ln: &Scalar,
) -> Result<Vec<(Scalar, Scalar)>> {
    if k.is_finite() {
        return finite_solutions(k, q);
    }
    let mut out = vec![(k.one(), k.zero())];
    while out.len() < samples.max(1) {
        let s = nonzero(k, rng);
        let m = k.mul(ln, &k.mul(&s, &s));
        let den = k.add(&k.one(), &m);
        if den.is_zero() {
            continue;
        }
        let a = k.div(&k.sub(&k.one(), &m), &den)?;
        let b = k.div(&k.mul(&k.from_i64(2), &s), &den)?;
        debug_assert!(q(&a, &b).is_one());
        out.push((a, b));
    }
    Ok(out)
}
