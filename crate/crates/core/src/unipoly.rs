//! Dense univariate polynomials over a [`Field`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};

/// A univariate polynomial, coefficients lowest degree first, with no
/// trailing zeros. The zero polynomial has degree `None` (minus infinity).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UniPoly {
    field: Field,
    coeffs: Vec<Scalar>,
}

impl UniPoly {
    pub fn new(field: Field, mut coeffs: Vec<Scalar>) -> UniPoly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { field, coeffs }
    }

    pub fn zero(field: &Field) -> UniPoly {
        UniPoly { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn one(field: &Field) -> UniPoly {
        UniPoly::constant(field, field.one())
    }

    pub fn constant(field: &Field, c: Scalar) -> UniPoly {
        UniPoly::new(field.clone(), vec![c])
    }

    /// The polynomial `c * x^deg`.
    pub fn monomial(field: &Field, c: Scalar, deg: usize) -> UniPoly {
        let mut v = vec![field.zero(); deg + 1];
        v[deg] = c;
        UniPoly::new(field.clone(), v)
    }

    /// The variable itself.
    pub fn x(field: &Field) -> UniPoly {
        UniPoly::monomial(field, field.one(), 1)
    }

    /// `x - c`.
    pub fn linear_root(field: &Field, c: &Scalar) -> UniPoly {
        UniPoly::new(field.clone(), vec![field.neg(c), field.one()])
    }

    pub fn from_i64s(field: &Field, c: &[i64]) -> UniPoly {
        UniPoly::new(field.clone(), c.iter().map(|&v| field.from_i64(v)).collect())
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Scalar> {
        self.coeffs
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn coeff(&self, i: usize) -> Scalar {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// Leading coefficient (zero for the zero polynomial).
    pub fn leading(&self) -> Scalar {
        self.coeffs.last().cloned().unwrap_or_else(|| self.field.zero())
    }

    /// Order of vanishing at 0 (`None` for the zero polynomial).
    pub fn order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    fn check_field(&self, other: &UniPoly) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field.to_string(), other.field.to_string()));
        }
        Ok(())
    }

    pub fn scale(&self, c: &Scalar) -> UniPoly {
        let k = &self.field;
        UniPoly::new(k.clone(), self.coeffs.iter().map(|a| k.mul(a, c)).collect())
    }

    /// Multiply by `x^k`.
    pub fn shift_up(&self, k: usize) -> UniPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![self.field.zero(); k];
        v.extend(self.coeffs.iter().cloned());
        UniPoly::new(self.field.clone(), v)
    }

    pub fn monic(&self) -> Result<UniPoly> {
        if self.is_zero() {
            return Ok(self.clone());
        }
        let inv = self.field.inv(&self.leading())?;
        Ok(self.scale(&inv))
    }

    /// Euclidean division; the divisor's leading coefficient must be a unit.
    pub fn div_rem(&self, d: &UniPoly) -> Result<(UniPoly, UniPoly)> {
        self.check_field(d)?;
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        let k = &self.field;
        let inv = k.inv(&d.leading())?;
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((UniPoly::zero(k), self.clone()));
        }
        let mut q = vec![k.zero(); r.len() - dd];
        for i in (dd..r.len()).rev() {
            let c = k.mul(&r[i], &inv);
            if c.is_zero() {
                continue;
            }
            for (j, dj) in d.coeffs.iter().enumerate() {
                let t = k.mul(&c, dj);
                r[i - dd + j] = k.sub(&r[i - dd + j], &t);
            }
            q[i - dd] = c;
        }
        r.truncate(dd);
        Ok((UniPoly::new(k.clone(), q), UniPoly::new(k.clone(), r)))
    }

    pub fn rem(&self, d: &UniPoly) -> Result<UniPoly> {
        Ok(self.div_rem(d)?.1)
    }

    /// Quotient of an exact division; errors if the remainder is nonzero.
    pub fn exact_div(&self, d: &UniPoly) -> Result<UniPoly> {
        let (q, r) = self.div_rem(d)?;
        if !r.is_zero() {
            return Err(Error::InvalidInput(format!("{d} does not divide {self}")));
        }
        Ok(q)
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &UniPoly) -> Result<UniPoly> {
        self.check_field(other)?;
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            // Monic remainders keep rational coefficients from swelling.
            let r = a.rem(&b)?;
            a = b;
            b = if r.is_zero() { r } else { r.monic()? };
        }
        a.monic()
    }

    /// Extended gcd: returns `(g, s, t)` with `g = s*self + t*other`, `g` monic.
    pub fn xgcd(&self, other: &UniPoly) -> Result<(UniPoly, UniPoly, UniPoly)> {
        self.check_field(other)?;
        let k = &self.field;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (UniPoly::one(k), UniPoly::zero(k));
        let (mut t0, mut t1) = (UniPoly::zero(k), UniPoly::one(k));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1)?;
            let s = &s0 - &(&q * &s1);
            let t = &t0 - &(&q * &t1);
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
            t0 = t1;
            t1 = t;
        }
        if r0.is_zero() {
            return Ok((r0, s0, t0));
        }
        let inv = k.inv(&r0.leading())?;
        Ok((r0.scale(&inv), s0.scale(&inv), t0.scale(&inv)))
    }

    pub fn derivative(&self) -> UniPoly {
        let k = &self.field;
        let v = self.coeffs.iter().enumerate().skip(1).map(|(i, c)| k.mul(c, &k.from_i64(i as i64))).collect();
        UniPoly::new(k.clone(), v)
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let k = &self.field;
        let mut acc = k.zero();
        for c in self.coeffs.iter().rev() {
            acc = k.add(&k.mul(&acc, x), c);
        }
        acc
    }

    /// `self(g)`.
    pub fn compose(&self, g: &UniPoly) -> UniPoly {
        let k = &self.field;
        let mut acc = UniPoly::zero(k);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * g) + &UniPoly::constant(k, c.clone());
        }
        acc
    }

    /// `self(x + c)`.
    pub fn shift(&self, c: &Scalar) -> UniPoly {
        let k = &self.field;
        self.compose(&UniPoly::new(k.clone(), vec![c.clone(), k.one()]))
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, e: &BigUint, m: &UniPoly) -> Result<UniPoly> {
        let mut result = UniPoly::one(&self.field).rem(m)?;
        let mut base = self.rem(m)?;
        let bits = e.bits();
        for i in 0..bits {
            if e.bit(i) {
                result = (&result * &base).rem(m)?;
            }
            if i + 1 < bits {
                base = (&base * &base).rem(m)?;
            }
        }
        Ok(result)
    }

    pub fn pow(&self, e: usize) -> UniPoly {
        let mut result = UniPoly::one(&self.field);
        for _ in 0..e {
            result = &result * self;
        }
        result
    }

    /// For a polynomial in `x^p` over a perfect field of characteristic `p`,
    /// the polynomial whose `p`-th power it is.
    fn pth_root_poly(&self) -> Result<UniPoly> {
        let k = &self.field;
        let p = k.characteristic() as usize;
        let mut v = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if i % p == 0 {
                v.push(k.pth_root(c)?);
            } else if !c.is_zero() {
                return Err(Error::InvalidInput("not a polynomial in x^p".into()));
            }
        }
        Ok(UniPoly::new(k.clone(), v))
    }

    /// Squarefree factorisation `self = lc * prod g_i^i` over a perfect
    /// field; returns the monic, pairwise coprime, nonconstant `(g_i, i)`.
    pub fn squarefree_decomposition(&self) -> Result<Vec<(UniPoly, usize)>> {
        if self.is_zero() {
            return Err(Error::ZeroInput("squarefree decomposition"));
        }
        let f = self.monic()?;
        let mut out = Vec::new();
        sqf_rec(&f, 1, &mut out)?;
        out.sort_by_key(|(_, m)| *m);
        Ok(out)
    }

    /// Product of the distinct monic irreducible factors.
    pub fn radical(&self) -> Result<UniPoly> {
        let mut r = UniPoly::one(&self.field);
        for (g, _) in self.squarefree_decomposition()? {
            r = &r * &g;
        }
        Ok(r)
    }

    pub fn is_squarefree(&self) -> Result<bool> {
        if self.is_zero() {
            return Err(Error::ZeroInput("is_squarefree"));
        }
        Ok(self.squarefree_decomposition()?.iter().all(|(_, m)| *m == 1))
    }

    /// Roots lying in the coefficient field, with multiplicities. Supported
    /// over the rationals and every finite field.
    pub fn roots(&self) -> Result<Vec<(Scalar, usize)>> {
        crate::roots::roots_with_multiplicity(self)
    }

    /// Reinterpret over a field that contains this one.
    pub fn lift(&self, to: &Field) -> UniPoly {
        UniPoly::new(to.clone(), self.coeffs.iter().map(|c| to.lift_from(&self.field, c)).collect())
    }

    /// Rewrite coefficients over another field via a map.
    pub fn map_coeffs(&self, to: &Field, f: impl Fn(&Scalar) -> Scalar) -> UniPoly {
        UniPoly::new(to.clone(), self.coeffs.iter().map(f).collect())
    }

    pub fn to_string_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let terms: Vec<(Scalar, Vec<(String, usize)>)> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (c.clone(), vec![(var.to_string(), i)]))
            .collect();
        crate::bipoly::format_terms(&self.field, &terms)
    }
}

fn sqf_rec(f: &UniPoly, scale: usize, out: &mut Vec<(UniPoly, usize)>) -> Result<()> {
    if f.degree().unwrap_or(0) == 0 {
        return Ok(());
    }
    let k = f.field().clone();
    let p = k.characteristic() as usize;
    let d = f.derivative();
    if d.is_zero() {
        return sqf_rec(&f.pth_root_poly()?, scale * p, out);
    }
    let mut c = f.gcd(&d)?;
    let mut w = f.exact_div(&c)?;
    let mut i = 1;
    while w.degree().unwrap_or(0) > 0 {
        let y = w.gcd(&c)?;
        let z = w.exact_div(&y)?;
        if z.degree().unwrap_or(0) > 0 {
            push_factor(out, z.monic()?, i * scale);
        }
        i += 1;
        w = y;
        c = c.exact_div(&w)?;
    }
    if c.degree().unwrap_or(0) > 0 {
        sqf_rec(&c.monic()?.pth_root_poly()?, scale * p, out)?;
    }
    Ok(())
}

fn push_factor(out: &mut Vec<(UniPoly, usize)>, g: UniPoly, m: usize) {
    if let Some(slot) = out.iter_mut().find(|(_, mm)| *mm == m) {
        slot.0 = &slot.0 * &g;
    } else {
        out.push((g, m));
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_var("x"))
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        assert_eq!(self.field, rhs.field, "field mismatch");
        let k = &self.field;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let z = k.zero();
        let v = (0..n).map(|i| k.add(self.coeffs.get(i).unwrap_or(&z), rhs.coeffs.get(i).unwrap_or(&z))).collect();
        UniPoly::new(k.clone(), v)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        let k = &self.field;
        UniPoly::new(k.clone(), self.coeffs.iter().map(|c| k.neg(c)).collect())
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        self + &(-rhs)
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        assert_eq!(self.field, rhs.field, "field mismatch");
        let k = &self.field;
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero(k);
        }
        let mut v = vec![k.zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let t = k.mul(a, b);
                v[i + j] = k.add(&v[i + j], &t);
            }
        }
        UniPoly::new(k.clone(), v)
    }
}

/// Greatest common divisor of two univariate polynomials over the same field.
pub fn gcd_uni(a: &UniPoly, b: &UniPoly) -> Result<UniPoly> {
    a.gcd(b)
}
