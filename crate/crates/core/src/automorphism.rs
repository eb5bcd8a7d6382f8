//! Polynomial automorphisms of the affine plane and their factorisation
//! into affine and triangular pieces.

use std::fmt;

use crate::bipoly::BiPoly;
use crate::config::Caps;
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::unipoly::UniPoly;

/// An automorphism `(x, y) -> (f, g)` stored together with its inverse.
///
/// Composition reads right to left: `a.compose(&b)` is `p -> a(b(p))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneAutomorphism {
    f: BiPoly,
    g: BiPoly,
    fi: BiPoly,
    gi: BiPoly,
}

/// Kind of a tame factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
pub enum FactorKind {
    Affine,
    Triangular,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TameFactor {
    pub kind: FactorKind,
    pub map: PlaneAutomorphism,
}

/// Factors listed left to right: the automorphism is
/// `factors[0] ∘ factors[1] ∘ ... ∘ factors[last]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TameFactorization {
    pub factors: Vec<TameFactor>,
}

/// Coefficients of an affine map `(a x + b y + e, c x + d y + f)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineParts {
    pub a: Scalar,
    pub b: Scalar,
    pub c: Scalar,
    pub d: Scalar,
    pub e: Scalar,
    pub f: Scalar,
}

/// Coefficients of a triangular map `(a x + P(y), b y + c)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangularParts {
    pub a: Scalar,
    pub p: UniPoly,
    pub b: Scalar,
    pub c: Scalar,
}

fn lin(k: &Field, a: &Scalar, b: &Scalar, e: &Scalar) -> BiPoly {
    BiPoly::from_terms(k, [(1, 0, a.clone()), (0, 1, b.clone()), (0, 0, e.clone())])
}

impl PlaneAutomorphism {
    pub fn identity(k: &Field) -> PlaneAutomorphism {
        let (x, y) = (BiPoly::x(k), BiPoly::y(k));
        PlaneAutomorphism { f: x.clone(), g: y.clone(), fi: x, gi: y }
    }

    /// `(x, y) -> (y, x)`.
    pub fn swap(k: &Field) -> PlaneAutomorphism {
        let (x, y) = (BiPoly::x(k), BiPoly::y(k));
        PlaneAutomorphism { f: y.clone(), g: x.clone(), fi: y, gi: x }
    }

    pub fn translation(k: &Field, e: &Scalar, f: &Scalar) -> PlaneAutomorphism {
        let (o, z) = (k.one(), k.zero());
        PlaneAutomorphism::affine(k, &o, &z, &z, &o, e, f).expect("translation is invertible")
    }

    /// `(a x + b y + e, c x + d y + f)`; fails when `ad - bc = 0`.
    pub fn affine(
        k: &Field,
        a: &Scalar,
        b: &Scalar,
        c: &Scalar,
        d: &Scalar,
        e: &Scalar,
        f: &Scalar,
    ) -> Result<PlaneAutomorphism> {
        let det = k.sub(&k.mul(a, d), &k.mul(b, c));
        if det.is_zero() {
            return Err(Error::NotAnAutomorphism("singular linear part".into()));
        }
        let di = k.inv(&det)?;
        // Inverse linear part is (1/det) [d -b; -c a]; inverse translation is -M^{-1}(e, f).
        let ia = k.mul(d, &di);
        let ib = k.neg(&k.mul(b, &di));
        let ic = k.neg(&k.mul(c, &di));
        let id = k.mul(a, &di);
        let ie = k.neg(&k.add(&k.mul(&ia, e), &k.mul(&ib, f)));
        let if_ = k.neg(&k.add(&k.mul(&ic, e), &k.mul(&id, f)));
        Ok(PlaneAutomorphism {
            f: lin(k, a, b, e),
            g: lin(k, c, d, f),
            fi: lin(k, &ia, &ib, &ie),
            gi: lin(k, &ic, &id, &if_),
        })
    }

    /// `(a x + P(y), b y + c)` with `a, b` nonzero.
    pub fn triangular(a: &Scalar, p: &UniPoly, b: &Scalar, c: &Scalar) -> Result<PlaneAutomorphism> {
        let k = p.field().clone();
        if a.is_zero() || b.is_zero() {
            return Err(Error::NotAnAutomorphism("triangular map with zero diagonal".into()));
        }
        let (ai, bi) = (k.inv(a)?, k.inv(b)?);
        let py = BiPoly::from_uni_y(p);
        let f = &BiPoly::monomial(&k, a.clone(), 1, 0) + &py;
        let g = BiPoly::from_terms(&k, [(0, 1, b.clone()), (0, 0, c.clone())]);
        // y' = (y - c)/b,  x' = (x - P(y'))/a.
        let gi = BiPoly::from_terms(&k, [(0, 1, bi.clone()), (0, 0, k.neg(&k.mul(c, &bi)))]);
        let p_at = py.compose(&BiPoly::x(&k), &gi);
        let fi = (&BiPoly::x(&k) - &p_at).scale(&ai);
        Ok(PlaneAutomorphism { f, g, fi, gi })
    }

    /// `(x + c y^k, y)`.
    pub fn elementary_shear(k: &Field, c: &Scalar, deg: usize) -> PlaneAutomorphism {
        let p = UniPoly::monomial(k, c.clone(), deg);
        PlaneAutomorphism::triangular(&k.one(), &p, &k.one(), &k.zero()).expect("shear is invertible")
    }

    /// Validates `(f, g)` by factorisation and builds the inverse.
    pub fn new(f: BiPoly, g: BiPoly) -> Result<PlaneAutomorphism> {
        Self::new_with_caps(f, g, &Caps::from_env())
    }

    pub fn new_with_caps(f: BiPoly, g: BiPoly, caps: &Caps) -> Result<PlaneAutomorphism> {
        let fac = jvdk_factorize_with_caps(&f, &g, caps)?;
        let mut inv = PlaneAutomorphism::identity(f.field());
        for t in &fac.factors {
            inv = t.map.inverse().compose(&inv);
        }
        Ok(PlaneAutomorphism { f, g, fi: inv.f, gi: inv.g })
    }

    /// Builds from a forward and a claimed inverse pair, checking both
    /// compositions are the identity.
    pub fn from_pairs(f: BiPoly, g: BiPoly, fi: BiPoly, gi: BiPoly) -> Result<PlaneAutomorphism> {
        let k = f.field().clone();
        let (x, y) = (BiPoly::x(&k), BiPoly::y(&k));
        let ok =
            f.compose(&fi, &gi) == x && g.compose(&fi, &gi) == y && fi.compose(&f, &g) == x && gi.compose(&f, &g) == y;
        if !ok {
            return Err(Error::NotAnAutomorphism("inverse pair does not compose to the identity".into()));
        }
        Ok(PlaneAutomorphism { f, g, fi, gi })
    }

    pub fn field(&self) -> &Field {
        self.f.field()
    }

    pub fn f(&self) -> &BiPoly {
        &self.f
    }

    pub fn g(&self) -> &BiPoly {
        &self.g
    }

    pub fn inverse_f(&self) -> &BiPoly {
        &self.fi
    }

    pub fn inverse_g(&self) -> &BiPoly {
        &self.gi
    }

    pub fn degree(&self) -> u32 {
        self.f.degree().unwrap_or(0).max(self.g.degree().unwrap_or(0))
    }

    pub fn inverse(&self) -> PlaneAutomorphism {
        PlaneAutomorphism { f: self.fi.clone(), g: self.gi.clone(), fi: self.f.clone(), gi: self.g.clone() }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &PlaneAutomorphism) -> PlaneAutomorphism {
        PlaneAutomorphism {
            f: self.f.compose(&other.f, &other.g),
            g: self.g.compose(&other.f, &other.g),
            fi: other.fi.compose(&self.fi, &self.gi),
            gi: other.gi.compose(&self.fi, &self.gi),
        }
    }

    /// Checked composition: errors on differing fields.
    pub fn try_compose(&self, other: &PlaneAutomorphism) -> Result<PlaneAutomorphism> {
        if self.field() != other.field() {
            return Err(Error::FieldMismatch(self.field().to_string(), other.field().to_string()));
        }
        Ok(self.compose(other))
    }

    pub fn is_identity(&self) -> bool {
        let k = self.field();
        self.f == BiPoly::x(k) && self.g == BiPoly::y(k)
    }

    pub fn is_affine(&self) -> bool {
        self.degree() <= 1
    }

    pub fn apply(&self, x: &Scalar, y: &Scalar) -> (Scalar, Scalar) {
        (self.f.eval(x, y), self.g.eval(x, y))
    }

    pub fn apply_inverse(&self, x: &Scalar, y: &Scalar) -> (Scalar, Scalar) {
        (self.fi.eval(x, y), self.gi.eval(x, y))
    }

    pub fn jacobian(&self) -> BiPoly {
        &(&self.f.partial_x() * &self.g.partial_y()) - &(&self.f.partial_y() * &self.g.partial_x())
    }

    pub fn affine_parts(&self) -> Option<AffineParts> {
        if !self.is_affine() {
            return None;
        }
        let (f, g) = (&self.f, &self.g);
        Some(AffineParts {
            a: f.coeff(1, 0),
            b: f.coeff(0, 1),
            c: g.coeff(1, 0),
            d: g.coeff(0, 1),
            e: f.coeff(0, 0),
            f: g.coeff(0, 0),
        })
    }

    /// The data `(a, P, b, c)` when the map is `(a x + P(y), b y + c)`.
    pub fn triangular_parts(&self) -> Option<TriangularParts> {
        let k = self.field();
        if self.g.degree().unwrap_or(0) > 1 || !self.g.coeff(1, 0).is_zero() {
            return None;
        }
        if self.f.terms().any(|(m, _)| m.0 > 1 || (m.0 == 1 && m.1 > 0)) {
            return None;
        }
        let a = self.f.coeff(1, 0);
        let p = (&self.f - &BiPoly::monomial(k, a.clone(), 1, 0)).as_uni_y()?;
        Some(TriangularParts { a, p, b: self.g.coeff(0, 1), c: self.g.coeff(0, 0) })
    }

    /// Image curve: the equation `F ∘ φ⁻¹`, normalised.
    pub fn pushforward(&self, curve: &BiPoly) -> BiPoly {
        curve.compose(&self.fi, &self.gi).normalized()
    }

    /// Preimage curve: `F ∘ φ`, normalised.
    pub fn pullback(&self, curve: &BiPoly) -> BiPoly {
        curve.compose(&self.f, &self.g).normalized()
    }

    /// Conjugate `c ∘ self ∘ c⁻¹`.
    pub fn conjugate_by(&self, c: &PlaneAutomorphism) -> PlaneAutomorphism {
        c.compose(self).compose(&c.inverse())
    }
}

impl fmt::Display for PlaneAutomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.f, self.g)
    }
}

/// `pushforward_curve(φ, F)`: the normalised equation of `φ(Γ)`.
pub fn pushforward_curve(phi: &PlaneAutomorphism, curve: &BiPoly) -> Result<BiPoly> {
    if phi.field() != curve.field() {
        return Err(Error::FieldMismatch(phi.field().to_string(), curve.field().to_string()));
    }
    if curve.is_zero() {
        return Err(Error::ZeroInput("pushforward"));
    }
    Ok(phi.pushforward(curve))
}

/// Factorises `(f, g)` into affine and triangular pieces, or proves it is
/// not an automorphism.
pub fn jvdk_factorize(f: &BiPoly, g: &BiPoly) -> Result<TameFactorization> {
    jvdk_factorize_with_caps(f, g, &Caps::from_env())
}

pub fn jvdk_factorize_with_caps(f: &BiPoly, g: &BiPoly, caps: &Caps) -> Result<TameFactorization> {
    if f.field() != g.field() {
        return Err(Error::FieldMismatch(f.field().to_string(), g.field().to_string()));
    }
    let k = f.field().clone();
    let deg0 = f.degree().unwrap_or(0).max(g.degree().unwrap_or(0)) as usize;
    if deg0 > caps.degree {
        return Err(Error::ResourceCap {
            what: "degree",
            limit: caps.degree,
            trace: vec![format!("input degree {deg0}")],
        });
    }
    let jac = &(&f.partial_x() * &g.partial_y()) - &(&f.partial_y() * &g.partial_x());
    if jac.is_zero() || !jac.is_constant() {
        return Err(Error::NotAnAutomorphism("Jacobian determinant is not a nonzero constant".into()));
    }
    let swap = PlaneAutomorphism::swap(&k);
    let mut left: Vec<TameFactor> = Vec::new();
    let (mut f, mut g) = (f.clone(), g.clone());
    loop {
        let (df, dg) = (f.degree().unwrap_or(0), g.degree().unwrap_or(0));
        if df <= 1 && dg <= 1 {
            let aff = PlaneAutomorphism::affine(
                &k,
                &f.coeff(1, 0),
                &f.coeff(0, 1),
                &g.coeff(1, 0),
                &g.coeff(0, 1),
                &f.coeff(0, 0),
                &g.coeff(0, 0),
            )?;
            left.push(TameFactor { kind: FactorKind::Affine, map: aff });
            break;
        }
        if df == 0 || dg == 0 {
            return Err(Error::NotAnAutomorphism("a component is constant".into()));
        }
        let (lf, lg) = (f.leading_form(), g.leading_form());
        if df == dg {
            let c = lf.ratio_to(&lg).ok_or_else(|| {
                Error::NotAnAutomorphism(format!("leading forms of equal degree {df} are not proportional"))
            })?;
            // (f, g) = (x + c y, y) ∘ (f - c g, g)
            let sh = PlaneAutomorphism::affine(&k, &k.one(), &c, &k.zero(), &k.one(), &k.zero(), &k.zero())?;
            left.push(TameFactor { kind: FactorKind::Affine, map: sh });
            f = &f - &g.scale(&c);
            continue;
        }
        let (hi, lo, flip) = if df > dg { (&lf, &lg, false) } else { (&lg, &lf, true) };
        let (dh, dl) = (hi.degree().unwrap(), lo.degree().unwrap());
        if dh % dl != 0 {
            return Err(Error::NotAnAutomorphism(format!("degree {dh} is not a multiple of degree {dl}")));
        }
        let e = dh / dl;
        let c = hi.ratio_to(&lo.pow(e)).ok_or_else(|| {
            Error::NotAnAutomorphism(format!("leading form of degree {dh} is not a power of the other"))
        })?;
        let t = PlaneAutomorphism::elementary_shear(&k, &c, e as usize);
        if flip {
            // (f, g) = s ∘ (x + c y^e, y) ∘ s ∘ (f, g - c f^e)
            left.push(TameFactor { kind: FactorKind::Affine, map: swap.clone() });
            left.push(TameFactor { kind: FactorKind::Triangular, map: t });
            left.push(TameFactor { kind: FactorKind::Affine, map: swap.clone() });
            g = &g - &f.pow(e).scale(&c);
        } else {
            left.push(TameFactor { kind: FactorKind::Triangular, map: t });
            f = &f - &g.pow(e).scale(&c);
        }
    }
    Ok(TameFactorization { factors: simplify_factors(left) })
}

/// Merges adjacent factors of the same kind, retags low-degree triangular
/// factors as affine and drops identities, until nothing changes.
fn simplify_factors(mut fs: Vec<TameFactor>) -> Vec<TameFactor> {
    loop {
        let mut out: Vec<TameFactor> = Vec::with_capacity(fs.len());
        let mut changed = false;
        for mut t in fs {
            if t.kind == FactorKind::Triangular && t.map.is_affine() {
                t.kind = FactorKind::Affine;
                changed = true;
            }
            if t.map.is_identity() {
                changed = true;
                continue;
            }
            match out.last_mut() {
                Some(prev) if prev.kind == t.kind => {
                    prev.map = prev.map.compose(&t.map);
                    changed = true;
                }
                _ => out.push(t),
            }
        }
        fs = out;
        if !changed {
            return fs;
        }
    }
}

impl TameFactorization {
    /// The composite automorphism.
    pub fn compose_all(&self, k: &Field) -> PlaneAutomorphism {
        self.factors.iter().fold(PlaneAutomorphism::identity(k), |acc, t| acc.compose(&t.map))
    }

    pub fn triangular_count(&self) -> usize {
        self.factors.iter().filter(|t| t.kind == FactorKind::Triangular).count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::rationals()
    }

    fn p(t: &[(u32, u32, i64)]) -> BiPoly {
        BiPoly::from_i64s(&q(), t)
    }

    #[test]
    fn make_examples() {
        let t = PlaneAutomorphism::new(p(&[(1, 0, 1), (0, 0, 1)]), p(&[(0, 1, 1)])).unwrap();
        assert_eq!(t.inverse_f(), &p(&[(1, 0, 1), (0, 0, -1)]));
        let h = PlaneAutomorphism::new(p(&[(0, 1, 1)]), p(&[(1, 0, 1), (0, 2, 1)])).unwrap();
        assert_eq!(h.inverse_f(), &p(&[(0, 1, 1), (2, 0, -1)]));
        assert_eq!(h.inverse_g(), &p(&[(1, 0, 1)]));
        assert!(matches!(PlaneAutomorphism::new(p(&[(2, 0, 1)]), p(&[(0, 1, 1)])), Err(Error::NotAnAutomorphism(_))));
    }

    #[test]
    fn compose_examples() {
        let h = PlaneAutomorphism::new(p(&[(0, 1, 1)]), p(&[(1, 0, 1), (0, 2, 1)])).unwrap();
        assert!(h.compose(&h.inverse()).is_identity());
        let hh = h.compose(&h);
        // (x + y^2, y + (x + y^2)^2)
        let u = p(&[(1, 0, 1), (0, 2, 1)]);
        assert_eq!(hh.f(), &u);
        assert_eq!(hh.g(), &(&p(&[(0, 1, 1)]) + &u.pow(2)));
        assert_eq!(hh.degree(), 4);
        let k = q();
        let t1 = PlaneAutomorphism::translation(&k, &k.from_i64(1), &k.from_i64(2));
        let t2 = PlaneAutomorphism::translation(&k, &k.from_i64(-3), &k.from_i64(5));
        assert_eq!(t1.compose(&t2), PlaneAutomorphism::translation(&k, &k.from_i64(-2), &k.from_i64(7)));
    }

    #[test]
    fn factorize_examples() {
        let k = q();
        let fac = jvdk_factorize(&p(&[(0, 1, 1)]), &p(&[(1, 0, 1), (0, 2, 1)])).unwrap();
        assert_eq!(fac.factors.len(), 2);
        assert_eq!(fac.factors[0].kind, FactorKind::Affine);
        assert_eq!(fac.factors[0].map, PlaneAutomorphism::swap(&k));
        assert_eq!(fac.factors[1].kind, FactorKind::Triangular);
        assert_eq!(fac.factors[1].map.f(), &p(&[(1, 0, 1), (0, 2, 1)]));

        let aff = jvdk_factorize(&p(&[(1, 0, 2), (0, 1, 3), (0, 0, 1)]), &p(&[(1, 0, 1), (0, 1, -1)])).unwrap();
        assert_eq!(aff.factors.len(), 1);
        assert_eq!(aff.factors[0].kind, FactorKind::Affine);

        let u = p(&[(1, 0, 1), (0, 2, 1)]);
        let g = &p(&[(0, 1, 1)]) + &u.pow(3);
        let fac = jvdk_factorize(&u, &g).unwrap();
        assert_eq!(fac.triangular_count(), 2);
        let back = fac.compose_all(&k);
        assert_eq!((back.f(), back.g()), (&u, &g));
    }

    #[test]
    fn pushforward_examples() {
        let k = q();
        let phi = PlaneAutomorphism::triangular(&k.one(), &UniPoly::zero(&k), &k.one(), &k.zero())
            .unwrap()
            .conjugate_by(&PlaneAutomorphism::swap(&k));
        assert!(phi.is_identity());
        let shear = PlaneAutomorphism::new(p(&[(1, 0, 1)]), p(&[(0, 1, 1), (2, 0, 1)])).unwrap();
        assert_eq!(pushforward_curve(&shear, &p(&[(0, 1, 1)])).unwrap(), p(&[(0, 1, 1), (2, 0, -1)]).normalized());
        let cusp = p(&[(2, 0, 1), (0, 3, -1)]);
        assert_eq!(
            pushforward_curve(&PlaneAutomorphism::swap(&k), &cusp).unwrap(),
            p(&[(0, 2, 1), (3, 0, -1)]).normalized()
        );
    }

    mod props {
        use super::*;
        use crate::corpus::{random_affine, random_tame, random_triangular, TameOptions};
        use proptest::prelude::*;
        use rand::SeedableRng;
        use rand_chacha::ChaCha8Rng;

        fn tame(seed: u64) -> PlaneAutomorphism {
            let opts = TameOptions { max_factors: 4, coeff_bound: 5, max_triangular_degree: 3, max_degree: 12 };
            random_tame(&q(), &mut ChaCha8Rng::seed_from_u64(seed), &opts)
        }

        fn curve(i: usize) -> BiPoly {
            match i {
                0 => p(&[(0, 1, 1)]),
                1 => p(&[(1, 1, 1), (0, 0, -1)]),
                _ => p(&[(0, 2, 1), (3, 0, -1), (1, 0, 1)]),
            }
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(24))]

            #[test]
            fn inverse_undoes_pushforward(seed in any::<u64>(), i in 0usize..3) {
                let (phi, f) = (tame(seed), curve(i));
                prop_assert_eq!(phi.inverse().pushforward(&phi.pushforward(&f)), f.normalized());
            }

            #[test]
            fn pushforward_is_functorial(s1 in any::<u64>(), s2 in any::<u64>(), i in 0usize..3) {
                let (a, b, f) = (tame(s1), tame(s2), curve(i));
                prop_assert_eq!(a.compose(&b).pushforward(&f), a.pushforward(&b.pushforward(&f)));
            }

            #[test]
            fn jacobian_is_a_unit(seed in any::<u64>()) {
                let j = tame(seed).jacobian();
                prop_assert!(j.is_constant() && !j.is_zero());
            }

            #[test]
            fn degree_multiplies_on_reduced_words(seed in any::<u64>(), d1 in 2usize..=3, d2 in 2usize..=3) {
                let k = q();
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let (t1, t2) = (random_triangular(&k, &mut rng, 4, d1), random_triangular(&k, &mut rng, 4, d2));
                // An affine map outside the triangular group keeps the word reduced.
                let a = loop {
                    let a = random_affine(&k, &mut rng, 4);
                    if !a.g().coeff(1, 0).is_zero() {
                        break a;
                    }
                };
                let left = t1.compose(&a);
                prop_assert_eq!(left.compose(&t2).degree(), left.degree() * t2.degree());
                prop_assert_eq!(left.compose(&t2).degree(), (d1 * d2) as u32);
            }

            #[test]
            fn factorization_recomposes(seed in any::<u64>()) {
                let phi = tame(seed);
                let back = jvdk_factorize(phi.f(), phi.g()).unwrap().compose_all(&q());
                prop_assert_eq!(back, phi);
            }
        }
    }
}
