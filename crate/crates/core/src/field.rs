//! Exact coefficient fields: the rationals, prime fields `F_p`, and simple
//! extensions `k[t]/(m(t))` stacked to any depth.
//!
//! Elements are plain [`Scalar`] values in canonical form; all arithmetic
//! goes through the owning [`Field`] so that extension elements can be
//! reduced modulo their minimal polynomial.

use std::fmt;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::unipoly::UniPoly;

/// An exact field element in canonical form.
///
/// Rationals are reduced with positive denominator, residues lie in
/// `0..p`, and extension elements are coefficient vectors (lowest degree
/// first) with trailing zeros stripped and length below the modulus degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scalar {
    Q(BigRational),
    P(u64),
    E(Vec<Scalar>),
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_zero(),
            Scalar::P(v) => *v == 0,
            Scalar::E(c) => c.is_empty(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_one(),
            Scalar::P(v) => *v == 1,
            Scalar::E(c) => c.len() == 1 && c[0].is_one(),
        }
    }

    /// The rational value, if this is an element of the rationals.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Q(q) => Some(q),
            _ => None,
        }
    }
}

/// How much we know about an extension modulus being irreducible.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Irreducibility {
    /// Checked: root search for degree at most 3, or a full test over a finite field.
    Verified,
    /// Taken on trust; a reducible modulus surfaces later as `Error::NonInvertible`.
    Asserted,
}

#[derive(Debug, PartialEq, Eq, Hash)]
pub struct ExtField {
    base: Field,
    modulus: Vec<Scalar>,
    irreducibility: Irreducibility,
    var: String,
}

/// A coefficient field. Cheap to clone.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rationals,
    Prime(u64),
    Ext(Arc<ExtField>),
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "Q"),
            Field::Prime(p) => write!(f, "GF({p})"),
            Field::Ext(e) => {
                let m = UniPoly::new(e.base.clone(), e.modulus.clone());
                write!(f, "{}[{}]/({})", e.base, e.var, m.to_string_var(&e.var))
            }
        }
    }
}

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut a: u64, mut e: u64| {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = mulmod(r, a);
            }
            a = mulmod(a, a);
            e >>= 1;
        }
        r
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl Field {
    pub fn rationals() -> Field {
        Field::Rationals
    }

    pub fn prime(p: u64) -> Result<Field> {
        if is_prime_u64(p) {
            Ok(Field::Prime(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    /// `base[var]/(modulus)`. The modulus must be monic of degree at least 1
    /// over `base`. Irreducibility is verified when cheap (degree at most 3,
    /// or any degree over a finite field); otherwise it is recorded as asserted.
    pub fn extension(base: &Field, modulus: &UniPoly, var: &str) -> Result<Field> {
        if modulus.field() != base {
            return Err(Error::FieldMismatch(modulus.field().to_string(), base.to_string()));
        }
        let deg = modulus.degree().ok_or(Error::BadModulus("zero modulus".into()))?;
        if deg == 0 {
            return Err(Error::BadModulus("constant modulus".into()));
        }
        if !modulus.leading().is_one() {
            return Err(Error::BadModulus("modulus must be monic".into()));
        }
        let irreducibility = if base.is_finite() {
            if !crate::roots::is_irreducible_finite(modulus)? {
                return Err(Error::BadModulus(format!("{} is reducible", modulus)));
            }
            Irreducibility::Verified
        } else if deg <= 3 {
            if !modulus.is_squarefree()? || !modulus.roots()?.is_empty() {
                return Err(Error::BadModulus(format!("{} is reducible", modulus)));
            }
            Irreducibility::Verified
        } else {
            Irreducibility::Asserted
        };
        Ok(Field::Ext(Arc::new(ExtField {
            base: base.clone(),
            modulus: modulus.coeffs().to_vec(),
            irreducibility,
            var: var.to_string(),
        })))
    }

    /// Like [`Field::extension`] but skips every irreducibility check. Used
    /// for lazily split orbit algebras whose factors are refined on demand.
    pub fn extension_asserted(base: &Field, modulus: &UniPoly, var: &str) -> Result<Field> {
        Field::extension_with(base, modulus, var, Irreducibility::Asserted)
    }

    /// An extension whose irreducibility status the caller has already
    /// established (for example by complete factorisation).
    pub fn extension_with(base: &Field, modulus: &UniPoly, var: &str, irreducibility: Irreducibility) -> Result<Field> {
        let deg = modulus.degree().ok_or(Error::BadModulus("zero modulus".into()))?;
        if deg == 0 || !modulus.leading().is_one() {
            return Err(Error::BadModulus(format!("{modulus}")));
        }
        Ok(Field::Ext(Arc::new(ExtField {
            base: base.clone(),
            modulus: modulus.coeffs().to_vec(),
            irreducibility,
            var: var.to_string(),
        })))
    }

    pub fn base(&self) -> Option<&Field> {
        match self {
            Field::Ext(e) => Some(&e.base),
            _ => None,
        }
    }

    /// The defining polynomial of an extension, over its base.
    pub fn modulus(&self) -> Option<UniPoly> {
        match self {
            Field::Ext(e) => Some(UniPoly::new(e.base.clone(), e.modulus.clone())),
            _ => None,
        }
    }

    pub fn irreducibility(&self) -> Irreducibility {
        match self {
            Field::Ext(e) => e.irreducibility,
            _ => Irreducibility::Verified,
        }
    }

    pub fn var(&self) -> &str {
        match self {
            Field::Ext(e) => &e.var,
            _ => "",
        }
    }

    /// The bottom of the tower: either the rationals or a prime field.
    pub fn prime_subfield(&self) -> Field {
        match self {
            Field::Ext(e) => e.base.prime_subfield(),
            other => other.clone(),
        }
    }

    /// Degree over the prime subfield.
    pub fn absolute_degree(&self) -> usize {
        match self {
            Field::Ext(e) => (e.modulus.len() - 1) * e.base.absolute_degree(),
            _ => 1,
        }
    }

    /// Degree of an extension over its immediate base (1 for prime fields).
    pub fn relative_degree(&self) -> usize {
        match self {
            Field::Ext(e) => e.modulus.len() - 1,
            _ => 1,
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) => *p,
            Field::Ext(e) => e.base.characteristic(),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.characteristic() != 0
    }

    /// Number of elements, for finite fields.
    pub fn order(&self) -> Option<BigUint> {
        match self.characteristic() {
            0 => None,
            p => Some(num_traits::pow(BigUint::from(p), self.absolute_degree())),
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            Field::Rationals => Scalar::Q(BigRational::zero()),
            Field::Prime(_) => Scalar::P(0),
            Field::Ext(_) => Scalar::E(Vec::new()),
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_bigint(&self, n: &BigInt) -> Scalar {
        match self {
            Field::Rationals => Scalar::Q(BigRational::from_integer(n.clone())),
            Field::Prime(p) => {
                let r = n.mod_floor(&BigInt::from(*p));
                Scalar::P(r.to_u64().expect("residue fits"))
            }
            Field::Ext(e) => self.embed(e.base.from_bigint(n)),
        }
    }

    /// Reduce a rational into this field; fails when the denominator vanishes.
    pub fn from_rational(&self, q: &BigRational) -> Result<Scalar> {
        match self {
            Field::Rationals => Ok(Scalar::Q(q.clone())),
            Field::Prime(_) => {
                let n = self.from_bigint(q.numer());
                let d = self.from_bigint(q.denom());
                if d.is_zero() {
                    return Err(Error::NotRepresentable(q.to_string()));
                }
                self.div(&n, &d)
            }
            Field::Ext(e) => Ok(self.embed(e.base.from_rational(q)?)),
        }
    }

    /// Lift an element of the immediate base field.
    pub fn embed(&self, a: Scalar) -> Scalar {
        match self {
            Field::Ext(_) => {
                if a.is_zero() {
                    Scalar::E(Vec::new())
                } else {
                    Scalar::E(vec![a])
                }
            }
            _ => a,
        }
    }

    /// Lift an element of any field lower in the tower (or this field itself).
    pub fn lift_from(&self, from: &Field, a: &Scalar) -> Scalar {
        if from == self {
            return a.clone();
        }
        match self {
            Field::Ext(e) => self.embed(e.base.lift_from(from, a)),
            _ => panic!("{from} is not a subfield of {self}"),
        }
    }

    /// Whether `sub` appears in this field's tower (including itself).
    pub fn contains_subfield(&self, sub: &Field) -> bool {
        if self == sub {
            return true;
        }
        match self {
            Field::Ext(e) => e.base.contains_subfield(sub),
            _ => false,
        }
    }

    /// The class of the adjoined variable in an extension.
    pub fn generator(&self) -> Option<Scalar> {
        match self {
            Field::Ext(e) => {
                if e.modulus.len() == 2 {
                    // Degree-one modulus t + c: the generator is the base element -c.
                    Some(self.embed(e.base.neg(&e.modulus[0])))
                } else {
                    Some(Scalar::E(vec![e.base.zero(), e.base.one()]))
                }
            }
            _ => None,
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (Field::Rationals, Scalar::Q(x), Scalar::Q(y)) => Scalar::Q(x + y),
            (Field::Prime(p), Scalar::P(x), Scalar::P(y)) => Scalar::P(((*x as u128 + *y as u128) % *p as u128) as u64),
            (Field::Ext(e), Scalar::E(x), Scalar::E(y)) => {
                let n = x.len().max(y.len());
                let z = e.base.zero();
                let mut out: Vec<Scalar> =
                    (0..n).map(|i| e.base.add(x.get(i).unwrap_or(&z), y.get(i).unwrap_or(&z))).collect();
                trim(&mut out);
                Scalar::E(out)
            }
            _ => panic!("scalar {a:?} or {b:?} does not belong to {self}"),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match (self, a) {
            (Field::Rationals, Scalar::Q(x)) => Scalar::Q(-x),
            (Field::Prime(p), Scalar::P(x)) => Scalar::P(if *x == 0 { 0 } else { p - x }),
            (Field::Ext(e), Scalar::E(x)) => Scalar::E(x.iter().map(|c| e.base.neg(c)).collect()),
            _ => panic!("scalar {a:?} does not belong to {self}"),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (Field::Rationals, Scalar::Q(x), Scalar::Q(y)) => Scalar::Q(x * y),
            (Field::Prime(p), Scalar::P(x), Scalar::P(y)) => Scalar::P(((*x as u128 * *y as u128) % *p as u128) as u64),
            (Field::Ext(e), Scalar::E(x), Scalar::E(y)) => {
                if x.is_empty() || y.is_empty() {
                    return Scalar::E(Vec::new());
                }
                let k = &e.base;
                let mut prod = vec![k.zero(); x.len() + y.len() - 1];
                for (i, xi) in x.iter().enumerate() {
                    if xi.is_zero() {
                        continue;
                    }
                    for (j, yj) in y.iter().enumerate() {
                        let t = k.mul(xi, yj);
                        prod[i + j] = k.add(&prod[i + j], &t);
                    }
                }
                Scalar::E(reduce_mod(k, prod, &e.modulus))
            }
            _ => panic!("scalar {a:?} or {b:?} does not belong to {self}"),
        }
    }

    /// Multiplicative inverse.
    ///
    /// In an extension whose modulus turns out to be reducible, a nonzero
    /// zero-divisor yields `Error::NonInvertible` carrying the common factor.
    pub fn inv(&self, a: &Scalar) -> Result<Scalar> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match (self, a) {
            (Field::Rationals, Scalar::Q(x)) => Ok(Scalar::Q(x.recip())),
            (Field::Prime(p), Scalar::P(x)) => {
                let e = BigInt::from(*x).extended_gcd(&BigInt::from(*p));
                if !e.gcd.is_one() {
                    return Err(Error::DivisionByZero);
                }
                Ok(self.from_bigint(&e.x))
            }
            (Field::Ext(e), Scalar::E(x)) => {
                let m = UniPoly::new(e.base.clone(), e.modulus.clone());
                let ap = UniPoly::new(e.base.clone(), x.clone());
                let (g, s, _) = ap.xgcd(&m)?;
                if g.degree() != Some(0) {
                    return Err(Error::NonInvertible { field: self.clone(), witness: g });
                }
                // g is monic, so s * a = 1 mod m.
                let s = s.rem(&m)?;
                Ok(Scalar::E(s.coeffs().to_vec()))
            }
            _ => panic!("scalar {a:?} does not belong to {self}"),
        }
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Result<Scalar> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn pow(&self, a: &Scalar, e: u64) -> Scalar {
        self.pow_big(a, &BigUint::from(e))
    }

    pub fn pow_big(&self, a: &Scalar, e: &BigUint) -> Scalar {
        let mut result = self.one();
        let mut base = a.clone();
        let bits = e.bits();
        for i in 0..bits {
            if e.bit(i) {
                result = self.mul(&result, &base);
            }
            if i + 1 < bits {
                base = self.mul(&base, &base);
            }
        }
        result
    }

    /// Signed integer power; negative exponents need an invertible base.
    pub fn pow_i64(&self, a: &Scalar, e: i64) -> Result<Scalar> {
        if e >= 0 {
            Ok(self.pow(a, e as u64))
        } else {
            Ok(self.pow(&self.inv(a)?, e.unsigned_abs()))
        }
    }

    /// Whether `a` is invertible. Only extensions with an unverified modulus
    /// can have nonzero non-units; those report the splitting witness.
    pub fn check_unit(&self, a: &Scalar) -> Result<bool> {
        if a.is_zero() {
            return Ok(false);
        }
        if self.has_asserted() {
            self.inv(a)?;
        }
        Ok(true)
    }

    /// Whether some modulus in the tower is only asserted irreducible.
    pub fn has_asserted(&self) -> bool {
        match self {
            Field::Ext(e) => e.irreducibility == Irreducibility::Asserted || e.base.has_asserted(),
            _ => false,
        }
    }

    /// The inverse Frobenius `a^(1/p)`, defined on perfect fields of
    /// positive characteristic.
    pub fn pth_root(&self, a: &Scalar) -> Result<Scalar> {
        let q = self.order().ok_or_else(|| Error::Unsupported("p-th root in characteristic 0".into()))?;
        let p = self.characteristic();
        Ok(self.pow_big(a, &(q / BigUint::from(p))))
    }

    /// Whether `a` is a square in this field.
    pub fn is_square(&self, a: &Scalar) -> Result<bool> {
        if a.is_zero() {
            return Ok(true);
        }
        match self {
            Field::Rationals => Ok(self.sqrt(a)?.is_some()),
            _ if self.characteristic() == 2 => Ok(true),
            _ if self.is_finite() => {
                let q = self.order().unwrap();
                let e = (q - BigUint::one()) / BigUint::from(2u32);
                Ok(self.pow_big(a, &e).is_one())
            }
            _ => Err(Error::Unsupported(format!("square test over {self}"))),
        }
    }

    /// A square root in this field, if one exists.
    pub fn sqrt(&self, a: &Scalar) -> Result<Option<Scalar>> {
        if a.is_zero() {
            return Ok(Some(self.zero()));
        }
        match (self, a) {
            (Field::Rationals, Scalar::Q(x)) => {
                if x.is_negative() {
                    return Ok(None);
                }
                let n = x.numer().sqrt();
                let d = x.denom().sqrt();
                if &(&n * &n) == x.numer() && &(&d * &d) == x.denom() {
                    Ok(Some(Scalar::Q(BigRational::new(n, d))))
                } else {
                    Ok(None)
                }
            }
            _ if self.characteristic() == 2 => Ok(Some(self.pth_root(a)?)),
            _ if self.is_finite() => {
                let t2 = UniPoly::new(self.clone(), vec![self.neg(a), self.zero(), self.one()]);
                Ok(t2.roots()?.into_iter().map(|(r, _)| r).next())
            }
            _ => Err(Error::Unsupported(format!("square root over {self}"))),
        }
    }

    /// All elements of a finite field with at most `limit` elements.
    pub fn elements(&self, limit: u64) -> Option<Vec<Scalar>> {
        let q = self.order()?.to_u64()?;
        if q > limit {
            return None;
        }
        match self {
            Field::Prime(p) => Some((0..*p).map(Scalar::P).collect()),
            Field::Ext(e) => {
                let base_elems = e.base.elements(limit)?;
                let d = e.modulus.len() - 1;
                let mut out = vec![Vec::<Scalar>::new()];
                for _ in 0..d {
                    let mut next = Vec::with_capacity(out.len() * base_elems.len());
                    for v in &out {
                        for b in &base_elems {
                            let mut w = v.clone();
                            w.push(b.clone());
                            next.push(w);
                        }
                    }
                    out = next;
                }
                Some(
                    out.into_iter()
                        .map(|mut v| {
                            trim(&mut v);
                            Scalar::E(v)
                        })
                        .collect(),
                )
            }
            Field::Rationals => None,
        }
    }

    /// A uniformly random element of a finite field.
    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Scalar {
        match self {
            Field::Prime(p) => Scalar::P(rng.gen_range(0..*p)),
            Field::Ext(e) => {
                let d = e.modulus.len() - 1;
                let mut v: Vec<Scalar> = (0..d).map(|_| e.base.random_element(rng)).collect();
                trim(&mut v);
                Scalar::E(v)
            }
            Field::Rationals => Scalar::Q(rat(rng.gen_range(-9..=9))),
        }
    }

    /// Canonical text form of an element.
    pub fn format(&self, a: &Scalar) -> String {
        match (self, a) {
            (Field::Rationals, Scalar::Q(x)) => x.to_string(),
            (Field::Prime(_), Scalar::P(v)) => v.to_string(),
            (Field::Ext(e), Scalar::E(c)) => {
                let p = UniPoly::new(e.base.clone(), c.clone());
                p.to_string_var(&e.var)
            }
            _ => format!("{a:?}"),
        }
    }

    /// Whether `a` is an element of the prime subfield lifted through the
    /// tower; returns that element.
    pub fn as_prime_element(&self, a: &Scalar) -> Option<Scalar> {
        match (self, a) {
            (Field::Ext(e), Scalar::E(c)) => match c.len() {
                0 => Some(e.base.prime_subfield().zero()),
                1 => e.base.as_prime_element(&c[0]),
                _ => None,
            },
            _ => Some(a.clone()),
        }
    }
}

fn trim(v: &mut Vec<Scalar>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

/// Reduce a coefficient vector modulo a monic modulus.
fn reduce_mod(k: &Field, mut a: Vec<Scalar>, modulus: &[Scalar]) -> Vec<Scalar> {
    let d = modulus.len() - 1;
    while a.len() > d {
        let top = a.pop().unwrap();
        if top.is_zero() {
            continue;
        }
        let shift = a.len() - d;
        for i in 0..d {
            let t = k.mul(&top, &modulus[i]);
            a[shift + i] = k.sub(&a[shift + i], &t);
        }
    }
    trim(&mut a);
    a
}
