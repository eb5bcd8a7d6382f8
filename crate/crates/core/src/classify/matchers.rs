//! Recognising the normal forms with infinite automorphism group among
//! curves in minimal position on `ℙ²`.
//!
//! Every matcher returns the affine change of coordinates `χ` with
//! `χ_*(F)` equal to the normal form up to a scalar.

use num_integer::Integer;

use crate::automorphism::PlaneAutomorphism;
use crate::bipoly::{self, BiPoly};
use crate::completions::Position;
use crate::error::Result;
use crate::field::{Field, Scalar};
use crate::normalize::{linear_form, rational_points_at_infinity};
use crate::unipoly::UniPoly;

use super::NormalForm;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Match {
    pub form: NormalForm,
    /// Affine map taking the curve to the normal form.
    pub map: PlaneAutomorphism,
}

/// Tries the line, quasi-homogeneous, monomial-hyperbola and conic
/// patterns in that order.
pub fn match_normal_form(f: &BiPoly) -> Result<Option<Match>> {
    let d = f.degree().unwrap_or(0);
    if d == 0 {
        return Ok(None);
    }
    if d == 1 {
        return match_line(f).map(Some);
    }
    if let Some(m) = match_quasi_homogeneous(f)? {
        return Ok(Some(m));
    }
    if let Some(m) = match_monomial_hyperbola(f)? {
        return Ok(Some(m));
    }
    if d == 2 && rational_points_at_infinity(f)?.is_empty() {
        return if f.field().characteristic() == 2 { match_char2_conic(f) } else { match_anisotropic_conic(f) };
    }
    Ok(None)
}

fn match_line(f: &BiPoly) -> Result<Match> {
    let k = f.field();
    let (a, b, c) = (f.coeff(1, 0), f.coeff(0, 1), f.coeff(0, 0));
    // Complete a x + b y + c to a basis with x or y.
    let map = if b.is_zero() {
        PlaneAutomorphism::affine(k, &a, &b, &k.zero(), &k.one(), &c, &k.zero())?
    } else {
        PlaneAutomorphism::affine(k, &a, &b, &k.one(), &k.zero(), &c, &k.zero())?
    };
    Ok(Match { form: NormalForm::Line, map })
}

/// The linear map `(l₁, l₂)` for two independent linear forms.
fn linear_pair(k: &Field, l1: &BiPoly, l2: &BiPoly) -> Result<PlaneAutomorphism> {
    let z = k.zero();
    PlaneAutomorphism::affine(k, &l1.coeff(1, 0), &l1.coeff(0, 1), &l2.coeff(1, 0), &l2.coeff(0, 1), &z, &z)
}

fn support_is(f: &BiPoly, expected: &[(u32, u32)]) -> bool {
    let mut s = f.support();
    s.sort();
    let mut e = expected.to_vec();
    e.sort();
    s == e
}

/// The k-rational singular points of the affine curve `F = 0`.
pub fn rational_singular_points(f: &BiPoly) -> Result<Vec<(Scalar, Scalar)>> {
    let k = f.field().clone();
    if f.deg_y().unwrap_or(0) == 0 {
        return Ok(Vec::new());
    }
    let partials = [f.partial_x(), f.partial_y()];
    let mut r = UniPoly::zero(&k);
    for p in partials.iter().filter(|p| !p.is_zero()) {
        let res = bipoly::resultant_y(f, p)?;
        if !res.is_zero() {
            r = r.gcd(&res)?;
        }
    }
    if r.is_zero() || r.is_constant() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for (x0, _) in r.roots()? {
        let mut g = UniPoly::zero(&k);
        for p in std::iter::once(f).chain(partials.iter()) {
            let row = p.eval_x(&x0);
            if !row.is_zero() {
                g = g.gcd(&row)?;
            }
        }
        if g.is_zero() || g.is_constant() {
            continue;
        }
        for (y0, _) in g.roots()? {
            if std::iter::once(f).chain(partials.iter()).all(|p| p.eval(&x0, &y0).is_zero()) {
                out.push((x0.clone(), y0));
            }
        }
    }
    out.sort();
    Ok(out)
}

/// `x^b - λ y^a` with `1 < b < a` coprime: one point at infinity, one
/// singular point whose tangent cone is a single line different from the
/// direction at infinity.
fn match_quasi_homogeneous(f: &BiPoly) -> Result<Option<Match>> {
    let k = f.field().clone();
    let d = f.degree().unwrap_or(0);
    let dir = match rational_points_at_infinity(f)?.as_slice() {
        [(p, m)] if *m == d => p.clone(),
        _ => return Ok(None),
    };
    let (x0, y0) = match rational_singular_points(f)?.as_slice() {
        [p] => p.clone(),
        _ => return Ok(None),
    };
    let shift = PlaneAutomorphism::translation(&k, &k.neg(&x0), &k.neg(&y0));
    let g = shift.pushforward(f);
    let cone = g.lowest_form();
    let m = cone.degree().unwrap_or(0);
    let cone_dir = match rational_points_at_infinity(&cone)?.as_slice() {
        [(p, mm)] if *mm == m => p.clone(),
        _ => return Ok(None),
    };
    if cone_dir == dir || matches!(cone_dir, Position::Orbit(_)) {
        return Ok(None);
    }
    let lin = linear_pair(&k, &linear_form(&k, &cone_dir), &linear_form(&k, &dir))?;
    let map = lin.compose(&shift);
    let h = map.pushforward(f);
    let (b, a) = (m, d);
    if b < 2 || a <= b || b.gcd(&a) != 1 || !support_is(&h, &[(b, 0), (0, a)]) {
        return Ok(None);
    }
    let lambda = k.neg(&k.div(&h.coeff(0, a), &h.coeff(b, 0))?);
    Ok(Some(Match { form: NormalForm::QuasiHomogeneous { a, b, lambda }, map }))
}

/// `x^b y^a - λ` with `b ≤ a` coprime: two rational points at infinity,
/// asymptotic to the axes after translation.
fn match_monomial_hyperbola(f: &BiPoly) -> Result<Option<Match>> {
    let k = f.field().clone();
    let pts = rational_points_at_infinity(f)?;
    let [(p1, m1), (p2, m2)] = pts.as_slice() else { return Ok(None) };
    if m1 + m2 != f.degree().unwrap_or(0) {
        return Ok(None);
    }
    // The point of smaller contact becomes the y-axis direction x = 0.
    let ((ps, b), (pb, a)) = if m2 < m1 { ((p2, *m2), (p1, *m1)) } else { ((p1, *m1), (p2, *m2)) };
    if b.gcd(&a) != 1 {
        return Ok(None);
    }
    let lin = linear_pair(&k, &linear_form(&k, ps), &linear_form(&k, pb))?;
    let g = lin.pushforward(f);
    // The x^b coefficient must be c (y - y0)^a and the y^a one c (x - x0)^b.
    let Some(y0) = single_root(&g.x_coeffs().get(b as usize).cloned(), a)? else { return Ok(None) };
    let Some(x0) = single_root(&g.y_coeffs().get(a as usize).cloned(), b)? else { return Ok(None) };
    let shift = PlaneAutomorphism::translation(&k, &k.neg(&x0), &k.neg(&y0));
    let map = shift.compose(&lin);
    let h = map.pushforward(f);
    if !support_is(&h, &[(b, a), (0, 0)]) {
        return Ok(None);
    }
    let lambda = k.neg(&k.div(&h.coeff(0, 0), &h.coeff(b, a))?);
    Ok(Some(Match { form: NormalForm::MonomialHyperbola { a, b, lambda, swap: a == 1 && b == 1 }, map }))
}

/// The root `r` when `p = c (t - r)^e`.
fn single_root(p: &Option<UniPoly>, e: u32) -> Result<Option<Scalar>> {
    let Some(p) = p else { return Ok(None) };
    if p.degree() != Some(e as usize) {
        return Ok(None);
    }
    Ok(match p.roots()?.as_slice() {
        [(r, m)] if *m == e as usize => Some(r.clone()),
        _ => None,
    })
}

/// `λ x² + ν y² = 1` with `-λν` a non-square, in odd characteristic.
fn match_anisotropic_conic(f: &BiPoly) -> Result<Option<Match>> {
    let k = f.field().clone();
    let (al, be, ga) = (f.coeff(2, 0), f.coeff(1, 1), f.coeff(0, 2));
    let (de, ep) = (f.coeff(1, 0), f.coeff(0, 1));
    // Centre: 2α x + β y + δ = 0, β x + 2γ y + ε = 0.
    let two = k.from_i64(2);
    let det = k.sub(&k.mul(&k.mul(&two, &al), &k.mul(&two, &ga)), &k.mul(&be, &be));
    let x0 = k.div(&k.sub(&k.mul(&be, &ep), &k.mul(&k.mul(&two, &ga), &de)), &det)?;
    let y0 = k.div(&k.sub(&k.mul(&be, &de), &k.mul(&k.mul(&two, &al), &ep)), &det)?;
    if f.eval(&x0, &y0).is_zero() {
        return Ok(None);
    }
    let shift = PlaneAutomorphism::translation(&k, &k.neg(&x0), &k.neg(&y0));
    // Complete the square: X = x + β/(2α) y.
    let s = k.div(&be, &k.mul(&two, &al))?;
    let (o, z) = (k.one(), k.zero());
    let diag = PlaneAutomorphism::affine(&k, &o, &s, &z, &o, &z, &z)?;
    let map = diag.compose(&shift);
    let h = map.pushforward(f);
    if !support_is(&h, &[(2, 0), (0, 2), (0, 0)]) {
        return Ok(None);
    }
    let c0 = k.neg(&h.coeff(0, 0));
    let lambda = k.div(&h.coeff(2, 0), &c0)?;
    let nu = k.div(&h.coeff(0, 2), &c0)?;
    if k.is_square(&k.neg(&k.mul(&lambda, &nu)))? {
        return Ok(None);
    }
    Ok(Some(Match { form: NormalForm::AnisotropicConic { lambda, nu }, map }))
}

/// `x² + μ x y + y² = 1` with `x² + μ x + 1` rootless, in characteristic 2.
fn match_char2_conic(f: &BiPoly) -> Result<Option<Match>> {
    let k = f.field().clone();
    let (be, de, ep) = (f.coeff(1, 1), f.coeff(1, 0), f.coeff(0, 1));
    if be.is_zero() {
        return Ok(None);
    }
    let x0 = k.div(&ep, &be)?;
    let y0 = k.div(&de, &be)?;
    let shift = PlaneAutomorphism::translation(&k, &k.neg(&x0), &k.neg(&y0));
    let g = shift.pushforward(f);
    let c0 = g.coeff(0, 0);
    if c0.is_zero() {
        return Ok(None);
    }
    let (al, be, ga) = (g.coeff(2, 0), g.coeff(1, 1), g.coeff(0, 2));
    let (Some(s), Some(t)) = (k.sqrt(&k.div(&al, &c0)?)?, k.sqrt(&k.div(&ga, &c0)?)?) else {
        return Ok(None);
    };
    let mu = k.div(&be, &k.mul(&c0, &k.mul(&s, &t)))?;
    let z = k.zero();
    let scale = PlaneAutomorphism::affine(&k, &s, &z, &z, &t, &z, &z)?;
    let map = scale.compose(&shift);
    let quad = UniPoly::new(k.clone(), vec![k.one(), mu.clone(), k.one()]);
    if !quad.roots()?.is_empty() {
        return Ok(None);
    }
    Ok(Some(Match { form: NormalForm::Char2Conic { mu }, map }))
}
