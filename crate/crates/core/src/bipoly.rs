//! Sparse bivariate polynomials in `x` and `y`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::unipoly::UniPoly;

/// Exponent pair `(i, j)` for the monomial `x^i y^j`.
pub type Mono = (u32, u32);

/// A polynomial in `x, y` stored as a map from exponents to nonzero
/// coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BiPoly {
    field: Field,
    terms: BTreeMap<Mono, Scalar>,
}

/// Graded-lex key: higher total degree first, then higher `x` exponent.
fn grlex(m: &Mono) -> (u32, u32) {
    (m.0 + m.1, m.0)
}

impl BiPoly {
    pub fn zero(field: &Field) -> BiPoly {
        BiPoly { field: field.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(field: &Field, c: Scalar) -> BiPoly {
        BiPoly::monomial(field, c, 0, 0)
    }

    pub fn one(field: &Field) -> BiPoly {
        BiPoly::constant(field, field.one())
    }

    pub fn monomial(field: &Field, c: Scalar, i: u32, j: u32) -> BiPoly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((i, j), c);
        }
        BiPoly { field: field.clone(), terms }
    }

    pub fn x(field: &Field) -> BiPoly {
        BiPoly::monomial(field, field.one(), 1, 0)
    }

    pub fn y(field: &Field) -> BiPoly {
        BiPoly::monomial(field, field.one(), 0, 1)
    }

    /// Build from `(i, j, c)` triples; repeated exponents are summed.
    pub fn from_terms(field: &Field, terms: impl IntoIterator<Item = (u32, u32, Scalar)>) -> BiPoly {
        let mut p = BiPoly::zero(field);
        for (i, j, c) in terms {
            p.add_term((i, j), &c);
        }
        p
    }

    /// Convenience constructor from small integer coefficients.
    pub fn from_i64s(field: &Field, terms: &[(u32, u32, i64)]) -> BiPoly {
        BiPoly::from_terms(field, terms.iter().map(|&(i, j, c)| (i, j, field.from_i64(c))))
    }

    fn add_term(&mut self, m: Mono, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let k = &self.field;
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v = k.add(v, c);
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, i: u32, j: u32) -> Scalar {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.0 + m.1).max()
    }

    pub fn deg_x(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.0).max()
    }

    pub fn deg_y(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.1).max()
    }

    /// Lowest total degree of a monomial in the support.
    pub fn low_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.0 + m.1).min()
    }

    pub fn is_constant(&self) -> bool {
        self.degree().unwrap_or(0) == 0
    }

    pub fn constant_term(&self) -> Scalar {
        self.coeff(0, 0)
    }

    pub fn support(&self) -> Vec<Mono> {
        self.terms.keys().copied().collect()
    }

    /// The homogeneous part of total degree `d`.
    pub fn form(&self, d: u32) -> BiPoly {
        BiPoly {
            field: self.field.clone(),
            terms: self.terms.iter().filter(|(m, _)| m.0 + m.1 == d).map(|(m, c)| (*m, c.clone())).collect(),
        }
    }

    /// Terms of total degree at most `d`.
    pub fn truncate(&self, d: u32) -> BiPoly {
        BiPoly {
            field: self.field.clone(),
            terms: self.terms.iter().filter(|(m, _)| m.0 + m.1 <= d).map(|(m, c)| (*m, c.clone())).collect(),
        }
    }

    /// Top-degree homogeneous part.
    pub fn leading_form(&self) -> BiPoly {
        match self.degree() {
            Some(d) => self.form(d),
            None => self.clone(),
        }
    }

    /// Lowest-degree homogeneous part (the tangent cone at the origin).
    pub fn lowest_form(&self) -> BiPoly {
        match self.low_degree() {
            Some(d) => self.form(d),
            None => self.clone(),
        }
    }

    /// Leading monomial and coefficient in graded-lex order (`x` before `y`).
    pub fn leading_term(&self) -> Option<(Mono, Scalar)> {
        self.terms.iter().max_by_key(|(m, _)| grlex(m)).map(|(m, c)| (*m, c.clone()))
    }

    pub fn scale(&self, c: &Scalar) -> BiPoly {
        if c.is_zero() {
            return BiPoly::zero(&self.field);
        }
        let k = &self.field;
        BiPoly { field: k.clone(), terms: self.terms.iter().map(|(m, a)| (*m, k.mul(a, c))).collect() }
    }

    /// Divide by the graded-lex leading coefficient, so that equations equal
    /// up to a scalar become equal.
    pub fn normalized(&self) -> BiPoly {
        match self.leading_term() {
            Some((_, c)) => self.scale(&self.field.inv(&c).expect("nonzero leading coefficient")),
            None => self.clone(),
        }
    }

    /// `Some(c)` with `self = c * other` when the two are proportional.
    pub fn ratio_to(&self, other: &BiPoly) -> Option<Scalar> {
        if self.is_zero() || other.is_zero() || self.terms.len() != other.terms.len() {
            return None;
        }
        let (m, a) = self.leading_term()?;
        let b = other.terms.get(&m)?;
        let c = self.field.div(&a, b).ok()?;
        if &other.scale(&c) == self {
            Some(c)
        } else {
            None
        }
    }

    pub fn pow(&self, e: u32) -> BiPoly {
        let mut result = BiPoly::one(&self.field);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn eval(&self, x: &Scalar, y: &Scalar) -> Scalar {
        let k = &self.field;
        let mut acc = k.zero();
        for ((i, j), c) in &self.terms {
            let t = k.mul(c, &k.mul(&k.pow(x, *i as u64), &k.pow(y, *j as u64)));
            acc = k.add(&acc, &t);
        }
        acc
    }

    pub fn partial_x(&self) -> BiPoly {
        let k = &self.field;
        BiPoly::from_terms(
            k,
            self.terms.iter().filter(|(m, _)| m.0 > 0).map(|(m, c)| (m.0 - 1, m.1, k.mul(c, &k.from_i64(m.0 as i64)))),
        )
    }

    pub fn partial_y(&self) -> BiPoly {
        self.swap().partial_x().swap()
    }

    /// Exchange the roles of `x` and `y`.
    pub fn swap(&self) -> BiPoly {
        BiPoly { field: self.field.clone(), terms: self.terms.iter().map(|(m, c)| ((m.1, m.0), c.clone())).collect() }
    }

    /// `self(f, g)`: substitute `f` for `x` and `g` for `y`.
    pub fn compose(&self, f: &BiPoly, g: &BiPoly) -> BiPoly {
        let k = &self.field;
        if self.is_zero() {
            return self.clone();
        }
        if let Some(p) = crate::fastpath::compose(self, f, g) {
            return p;
        }
        // Horner in y over cached powers of f.
        let dy = self.deg_y().unwrap();
        let dx = self.deg_x().unwrap();
        let mut fpow = vec![BiPoly::one(k)];
        for i in 1..=dx as usize {
            fpow.push(&fpow[i - 1] * f);
        }
        let mut acc = BiPoly::zero(k);
        for j in (0..=dy).rev() {
            let mut row = BiPoly::zero(k);
            for ((i, jj), c) in &self.terms {
                if *jj == j {
                    row = &row + &fpow[*i as usize].scale(c);
                }
            }
            acc = &(&acc * g) + &row;
        }
        acc
    }

    /// `self(x + a, y + b)`.
    pub fn translate(&self, a: &Scalar, b: &Scalar) -> BiPoly {
        let k = &self.field;
        let xa = &BiPoly::x(k) + &BiPoly::constant(k, a.clone());
        let yb = &BiPoly::y(k) + &BiPoly::constant(k, b.clone());
        self.compose(&xa, &yb)
    }

    /// Coefficients as a polynomial in `y` over `k[x]`, lowest first.
    pub fn y_coeffs(&self) -> Vec<UniPoly> {
        let k = &self.field;
        let n = self.deg_y().map_or(0, |d| d as usize + 1);
        let mut rows: Vec<Vec<Scalar>> = vec![Vec::new(); n];
        for ((i, j), c) in &self.terms {
            let row = &mut rows[*j as usize];
            if row.len() <= *i as usize {
                row.resize(*i as usize + 1, k.zero());
            }
            row[*i as usize] = c.clone();
        }
        rows.into_iter().map(|r| UniPoly::new(k.clone(), r)).collect()
    }

    /// Inverse of [`BiPoly::y_coeffs`].
    pub fn from_y_coeffs(field: &Field, rows: &[UniPoly]) -> BiPoly {
        let mut p = BiPoly::zero(field);
        for (j, r) in rows.iter().enumerate() {
            for (i, c) in r.coeffs().iter().enumerate() {
                if !c.is_zero() {
                    p.terms.insert((i as u32, j as u32), c.clone());
                }
            }
        }
        p
    }

    /// Coefficients as a polynomial in `x` over `k[y]`, lowest first.
    pub fn x_coeffs(&self) -> Vec<UniPoly> {
        self.swap().y_coeffs()
    }

    /// The univariate polynomial in `x` when `self` does not involve `y`.
    pub fn as_uni_x(&self) -> Option<UniPoly> {
        if self.terms.keys().any(|m| m.1 > 0) {
            return None;
        }
        Some(self.y_coeffs().into_iter().next().unwrap_or_else(|| UniPoly::zero(&self.field)))
    }

    pub fn as_uni_y(&self) -> Option<UniPoly> {
        self.swap().as_uni_x()
    }

    pub fn from_uni_x(p: &UniPoly) -> BiPoly {
        BiPoly::from_y_coeffs(p.field(), std::slice::from_ref(p))
    }

    pub fn from_uni_y(p: &UniPoly) -> BiPoly {
        BiPoly::from_uni_x(p).swap()
    }

    /// Substitute `y = c`, giving a polynomial in `x`.
    pub fn eval_y(&self, c: &Scalar) -> UniPoly {
        let k = &self.field;
        let mut acc = UniPoly::zero(k);
        for r in self.y_coeffs().iter().rev() {
            acc = &acc.scale(c) + r;
        }
        acc
    }

    /// Substitute `x = c`, giving a polynomial in `y`.
    pub fn eval_x(&self, c: &Scalar) -> UniPoly {
        self.swap().eval_y(c)
    }

    /// Reinterpret over a field containing this one.
    pub fn lift(&self, to: &Field) -> BiPoly {
        BiPoly {
            field: to.clone(),
            terms: self.terms.iter().map(|(m, c)| (*m, to.lift_from(&self.field, c))).collect(),
        }
    }

    /// Apply a map to every coefficient.
    pub fn map_coeffs(&self, to: &Field, f: impl Fn(&Scalar) -> Scalar) -> BiPoly {
        BiPoly::from_terms(to, self.terms.iter().map(|(m, c)| (m.0, m.1, f(c))))
    }

    /// Rewrite the exponents of every term. Colliding images are summed.
    pub fn map_monomials(&self, f: impl Fn(u32, u32) -> (u32, u32)) -> BiPoly {
        BiPoly::from_terms(
            &self.field,
            self.terms.iter().map(|(m, c)| {
                let (a, b) = f(m.0, m.1);
                (a, b, c.clone())
            }),
        )
    }

    /// Divide out the largest powers of `x` and `y` dividing every term.
    pub fn strip_monomial_factor(&self) -> (BiPoly, u32, u32) {
        let a = self.terms.keys().map(|m| m.0).min().unwrap_or(0);
        let b = self.terms.keys().map(|m| m.1).min().unwrap_or(0);
        (self.map_monomials(|i, j| (i - a, j - b)), a, b)
    }

    /// Exact division by a polynomial in `x` only, coefficientwise in `y`.
    pub fn div_uni_x(&self, d: &UniPoly) -> Result<BiPoly> {
        let rows: Result<Vec<UniPoly>> = self.y_coeffs().iter().map(|r| r.exact_div(d)).collect();
        Ok(BiPoly::from_y_coeffs(&self.field, &rows?))
    }

    /// Exact quotient `self / d`; errors if `d` does not divide.
    pub fn exact_div(&self, d: &BiPoly) -> Result<BiPoly> {
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let k = &self.field;
        let (lm, lc) = d.leading_term().unwrap();
        let inv = k.inv(&lc)?;
        let mut r = self.clone();
        let mut q = BiPoly::zero(k);
        while let Some((m, c)) = r.leading_term() {
            if m.0 < lm.0 || m.1 < lm.1 {
                return Err(Error::InvalidInput(format!("{d} does not divide {self}")));
            }
            let t = BiPoly::monomial(k, k.mul(&c, &inv), m.0 - lm.0, m.1 - lm.1);
            r = &r - &(&t * d);
            q = &q + &t;
        }
        Ok(q)
    }

    pub fn to_string_vars(&self, vx: &str, vy: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut ms: Vec<(&Mono, &Scalar)> = self.terms.iter().collect();
        ms.sort_by_key(|(m, _)| std::cmp::Reverse(grlex(m)));
        let terms: Vec<(Scalar, Vec<(String, usize)>)> = ms
            .into_iter()
            .map(|(m, c)| (c.clone(), vec![(vx.to_string(), m.0 as usize), (vy.to_string(), m.1 as usize)]))
            .collect();
        format_terms(&self.field, &terms)
    }
}

/// Render a sum of terms `coefficient * var^exp * ...` in canonical text.
pub(crate) fn format_terms(k: &Field, terms: &[(Scalar, Vec<(String, usize)>)]) -> String {
    let mut out = String::new();
    for (idx, (c, vars)) in terms.iter().enumerate() {
        let mono: Vec<String> = vars
            .iter()
            .filter(|(_, e)| *e > 0)
            .map(|(v, e)| if *e == 1 { v.clone() } else { format!("{v}^{e}") })
            .collect();
        let (neg, mag) = match c {
            Scalar::Q(q) if q < &num_rational::BigRational::zero() => (true, Scalar::Q(-q)),
            _ => (false, c.clone()),
        };
        let mut cs = k.format(&mag);
        if matches!(mag, Scalar::E(ref v) if v.len() > 1) || (matches!(mag, Scalar::E(_)) && cs.contains(' ')) {
            cs = format!("({cs})");
        }
        if idx == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if mono.is_empty() {
            out.push_str(&cs);
        } else {
            if !mag.is_one() {
                out.push_str(&cs);
                out.push('*');
            }
            out.push_str(&mono.join("*"));
        }
    }
    out
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_vars("x", "y"))
    }
}

impl Add for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        assert_eq!(self.field, rhs.field, "field mismatch");
        let (big, small) = if self.terms.len() >= rhs.terms.len() { (self, rhs) } else { (rhs, self) };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term(*m, c);
        }
        out
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        let k = &self.field;
        BiPoly { field: k.clone(), terms: self.terms.iter().map(|(m, c)| (*m, k.neg(c))).collect() }
    }
}

impl Sub for &BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        self + &(-rhs)
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        assert_eq!(self.field, rhs.field, "field mismatch");
        if let Some(p) = crate::fastpath::mul(self, rhs) {
            return p;
        }
        let k = &self.field;
        let mut acc: std::collections::HashMap<Mono, Scalar> = std::collections::HashMap::new();
        for (ma, a) in &self.terms {
            for (mb, b) in &rhs.terms {
                let m = (ma.0 + mb.0, ma.1 + mb.1);
                let t = k.mul(a, b);
                acc.entry(m).and_modify(|v| *v = k.add(v, &t)).or_insert(t);
            }
        }
        BiPoly { field: k.clone(), terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }
}

// ---------------------------------------------------------------------------
// gcd, squarefreeness and resultants via the recursive view k[x][y].

fn content(rows: &[UniPoly]) -> Result<UniPoly> {
    let mut g = UniPoly::zero(rows[0].field());
    for r in rows {
        g = g.gcd(r)?;
        if g.degree() == Some(0) {
            break;
        }
    }
    Ok(g)
}

fn primitive_part(rows: &[UniPoly]) -> Result<Vec<UniPoly>> {
    let c = content(rows)?;
    let rows = rows.iter().map(|r| r.exact_div(&c)).collect::<Result<Vec<_>>>()?;
    Ok(integral_rows(rows))
}

/// Over the rationals, rescale to integer coefficients without a common
/// factor, so that pseudo-remainder sequences do not accumulate scalars.
fn integral_rows(rows: Vec<UniPoly>) -> Vec<UniPoly> {
    let Some(k) = rows.first().map(|r| r.field().clone()) else {
        return rows;
    };
    if k.characteristic() != 0 || k.base().is_some() {
        return rows;
    }
    let coeffs = || rows.iter().flat_map(|r| r.coeffs().iter().filter_map(Scalar::as_rational));
    let den = coeffs().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let num = coeffs().fold(BigInt::zero(), |acc, c| acc.gcd(&(c.numer() * (&den / c.denom()))));
    if num.is_zero() {
        return rows;
    }
    let s = k.from_rational(&BigRational::new(den, num)).expect("nonzero denominator");
    rows.iter().map(|r| r.scale(&s)).collect()
}

/// Whether some specialisation `x = x0` keeping both leading coefficients
/// in `y` alive has coprime images, which rules out common factors involving
/// `y`.
fn coprime_by_specialisation(p: &[UniPoly], q: &[UniPoly]) -> Result<bool> {
    let k = p[0].field().clone();
    let candidates: Vec<Scalar> = match k.elements(64) {
        Some(e) => e,
        None if k.characteristic() == 0 => (0..8).map(|i| k.from_i64(i)).collect(),
        None => return Ok(false),
    };
    let (lp, lq) = (p.last().unwrap(), q.last().unwrap());
    for x0 in candidates {
        if lp.eval(&x0).is_zero() || lq.eval(&x0).is_zero() {
            continue;
        }
        let at = |rows: &[UniPoly]| UniPoly::new(k.clone(), rows.iter().map(|r| r.eval(&x0)).collect());
        if at(p).gcd(&at(q))?.is_constant() {
            return Ok(true);
        }
    }
    Ok(false)
}

fn trim_rows(rows: &mut Vec<UniPoly>) {
    while rows.last().is_some_and(|r| r.is_zero()) {
        rows.pop();
    }
}

/// Pseudo-remainder of `a` by `b` as polynomials in `y`.
fn prem(a: &[UniPoly], b: &[UniPoly]) -> Vec<UniPoly> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lb = b[db].clone();
    while r.len() > db {
        let top = r.len() - 1;
        let lr = r[top].clone();
        let shift = top - db;
        for row in r.iter_mut() {
            *row = &*row * &lb;
        }
        for (i, bi) in b.iter().enumerate() {
            r[shift + i] = &r[shift + i] - &(&lr * bi);
        }
        trim_rows(&mut r);
    }
    r
}

/// Greatest common divisor of two bivariate polynomials, normalised
/// (graded-lex leading coefficient 1); `gcd(0, 0) = 0`.
pub fn gcd(a: &BiPoly, b: &BiPoly) -> Result<BiPoly> {
    if a.field != b.field {
        return Err(Error::FieldMismatch(a.field.to_string(), b.field.to_string()));
    }
    let k = a.field.clone();
    if a.is_zero() {
        return Ok(b.normalized());
    }
    if b.is_zero() {
        return Ok(a.normalized());
    }
    let (ra, rb) = (a.y_coeffs(), b.y_coeffs());
    let cg = content(&ra)?.gcd(&content(&rb)?)?;
    let (mut p, mut q) = (primitive_part(&ra)?, primitive_part(&rb)?);
    if p.len() < q.len() {
        std::mem::swap(&mut p, &mut q);
    }
    if q.len() > 1 && coprime_by_specialisation(&p, &q)? {
        q = vec![UniPoly::one(&k)];
    }
    while q.len() > 1 {
        let r = prem(&p, &q);
        p = q;
        if r.is_empty() {
            q = Vec::new();
            break;
        }
        q = primitive_part(&r)?;
    }
    let g = if q.len() == 1 { vec![UniPoly::one(&k)] } else { p };
    let gy = BiPoly::from_y_coeffs(&k, &g);
    Ok((&gy * &BiPoly::from_uni_x(&cg)).normalized())
}

/// Whether `f` has no repeated factor over the algebraic closure.
///
/// Uses `gcd(f, f_x, f_y) = 1`, which is exact over perfect fields in every
/// characteristic: an irreducible factor dividing both partials would be a
/// polynomial in `x^p, y^p`, hence a `p`-th power.
pub fn is_squarefree(f: &BiPoly) -> Result<bool> {
    if f.is_zero() {
        return Err(Error::ZeroInput("is_squarefree"));
    }
    if f.is_constant() {
        return Ok(true);
    }
    if specialisation_certifies_squarefree(f)? {
        return Ok(true);
    }
    let g = gcd(&gcd(f, &f.partial_x())?, &f.partial_y())?;
    Ok(g.is_constant())
}

/// Cheap sufficient test: `f = c(x) * P(x, y)` with `P` primitive in `y`
/// is squarefree when `c` is and some specialisation `P(x0, y)` keeps its
/// `y`-degree and is squarefree.
fn specialisation_certifies_squarefree(f: &BiPoly) -> Result<bool> {
    let k = f.field.clone();
    let rows = f.y_coeffs();
    let c = content(&rows)?;
    if !c.is_constant() && !c.is_squarefree()? {
        return Ok(false);
    }
    if rows.len() == 1 {
        return Ok(true);
    }
    let p = primitive_part(&rows)?;
    let lc = p.last().unwrap().clone();
    let candidates: Vec<Scalar> = match k.elements(64) {
        Some(e) => e,
        None if k.characteristic() == 0 => (0..8).map(|i| k.from_i64(i)).collect(),
        None => return Ok(false),
    };
    for x0 in candidates {
        if lc.eval(&x0).is_zero() {
            continue;
        }
        let spec = UniPoly::new(k.clone(), p.iter().map(|r| r.eval(&x0)).collect());
        return spec.is_squarefree();
    }
    Ok(false)
}

/// Sylvester resultant with respect to `y`, a polynomial in `x`.
///
/// Convention: the Sylvester matrix lists the `deg_y b` shifted rows of `a`
/// first, then the `deg_y a` rows of `b`, each row with the highest
/// coefficient on the left. So `Res_y(y^2 - x^3, y) = -x^3`.
pub fn resultant_y(a: &BiPoly, b: &BiPoly) -> Result<UniPoly> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroInput("resultant"));
    }
    if a.field != b.field {
        return Err(Error::FieldMismatch(a.field.to_string(), b.field.to_string()));
    }
    let k = a.field.clone();
    let ra = a.y_coeffs();
    let rb = b.y_coeffs();
    let (m, n) = (ra.len() - 1, rb.len() - 1);
    let size = m + n;
    if size == 0 {
        return Ok(UniPoly::one(&k));
    }
    let mut mat = vec![vec![UniPoly::zero(&k); size]; size];
    for r in 0..n {
        for (i, c) in ra.iter().rev().enumerate() {
            mat[r][r + i] = c.clone();
        }
    }
    for r in 0..m {
        for (i, c) in rb.iter().rev().enumerate() {
            mat[n + r][r + i] = c.clone();
        }
    }
    bareiss_det(mat)
}

/// Fraction-free determinant over `k[x]`.
fn bareiss_det(mut m: Vec<Vec<UniPoly>>) -> Result<UniPoly> {
    let n = m.len();
    let k = m[0][0].field().clone();
    let mut sign = false;
    let mut prev = UniPoly::one(&k);
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Ok(UniPoly::zero(&k));
        };
        if piv != col {
            m.swap(piv, col);
            sign = !sign;
        }
        for r in col + 1..n {
            for c in col + 1..n {
                let t = &(&m[r][c] * &m[col][col]) - &(&m[r][col] * &m[col][c]);
                m[r][c] = t.exact_div(&prev)?;
            }
            m[r][col] = UniPoly::zero(&k);
        }
        prev = m[col][col].clone();
    }
    let d = m[n - 1][n - 1].clone();
    Ok(if sign { -&d } else { d })
}
