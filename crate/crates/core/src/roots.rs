//! Root finding and factorisation of univariate polynomials.
//!
//! Rational roots use p-adic Newton lifting from a good small prime.
//! Finite fields use the Frobenius gcd followed by Cantor-Zassenhaus
//! equal-degree splitting.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{is_prime_u64, Field, Irreducibility, Scalar};
use crate::unipoly::UniPoly;

/// Fields small enough to enumerate instead of splitting.
const BRUTE_FORCE_ORDER: u64 = 256;

/// Roots in the coefficient field with multiplicities, sorted by value.
pub fn roots_with_multiplicity(f: &UniPoly) -> Result<Vec<(Scalar, usize)>> {
    if f.is_zero() {
        return Err(Error::ZeroInput("roots"));
    }
    let mut out = Vec::new();
    for (g, m) in f.squarefree_decomposition()? {
        for r in distinct_roots(&g)? {
            out.push((r, m));
        }
    }
    out.sort();
    Ok(out)
}

/// Distinct roots of a squarefree polynomial in its coefficient field.
pub fn distinct_roots(f: &UniPoly) -> Result<Vec<Scalar>> {
    let k = f.field().clone();
    match f.degree() {
        None => return Err(Error::ZeroInput("roots")),
        Some(0) => return Ok(Vec::new()),
        Some(1) => {
            let c = k.div(&k.neg(&f.coeff(0)), &f.coeff(1))?;
            return Ok(vec![c]);
        }
        _ => {}
    }
    let mut roots = match &k {
        Field::Rationals => rational_roots(f)?,
        _ if k.is_finite() => finite_roots(f)?,
        _ => return Err(Error::Unsupported(format!("root finding over {k}"))),
    };
    roots.sort();
    Ok(roots)
}

fn to_integer_poly(f: &UniPoly) -> Vec<BigInt> {
    let mut den = BigInt::one();
    for c in f.coeffs() {
        let q = c.as_rational().expect("rational coefficient");
        den = den.lcm(q.denom());
    }
    let ints: Vec<BigInt> = f
        .coeffs()
        .iter()
        .map(|c| (c.as_rational().unwrap() * BigRational::from_integer(den.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    ints.into_iter().map(|c| c / &g).collect()
}

fn eval_mod(f: &[BigInt], x: &BigInt, m: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for c in f.iter().rev() {
        acc = (acc * x + c).mod_floor(m);
    }
    acc
}

fn small_primes() -> impl Iterator<Item = u64> {
    (3u64..).filter(|&p| is_prime_u64(p))
}

fn rational_roots(f: &UniPoly) -> Result<Vec<Scalar>> {
    let q = Field::rationals();
    let mut coeffs = to_integer_poly(f);
    let mut roots = Vec::new();
    let zeros = coeffs.iter().position(|c| !c.is_zero()).unwrap_or(0);
    if zeros > 0 {
        roots.push(q.zero());
        coeffs.drain(..zeros);
    }
    if coeffs.len() <= 1 {
        return Ok(roots);
    }
    let lc = coeffs.last().unwrap().clone();
    let deriv: Vec<BigInt> = coeffs.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect();

    // A prime not dividing the leading coefficient for which f stays squarefree.
    let mut chosen = None;
    for p in small_primes().take(2000) {
        let pb = BigInt::from(p);
        if (&lc % &pb).is_zero() {
            continue;
        }
        let fp = Field::Prime(p);
        let red = UniPoly::new(fp.clone(), coeffs.iter().map(|c| fp.from_bigint(c)).collect());
        if red.gcd(&red.derivative())?.degree() == Some(0) {
            chosen = Some((p, red));
            break;
        }
    }
    let (p, red) = chosen.ok_or_else(|| Error::Unsupported("no good reduction prime".into()))?;
    let residues = distinct_roots(&red)?;

    let bound = coeffs.iter().map(|c| c.abs()).max().unwrap() * lc.abs() * 2 + 1;
    let pb = BigInt::from(p);
    let qr = Field::rationals();
    let fq = UniPoly::new(qr.clone(), coeffs.iter().map(|c| qr.from_bigint(c)).collect());
    for r in residues {
        let Scalar::P(r0) = r else { unreachable!() };
        let mut x = BigInt::from(r0);
        let mut m = pb.clone();
        while m <= bound {
            m = &m * &m;
            let fx = eval_mod(&coeffs, &x, &m);
            let dx = eval_mod(&deriv, &x, &m);
            let inv = dx.extended_gcd(&m).x.mod_floor(&m);
            x = (x - fx * inv).mod_floor(&m);
        }
        let mut w = (&lc * &x).mod_floor(&m);
        if &w * 2 > m {
            w -= &m;
        }
        let cand = Scalar::Q(BigRational::new(w, lc.clone()));
        if fq.eval(&cand).is_zero() {
            roots.push(cand);
        }
    }
    Ok(roots)
}

fn frobenius_gcd(f: &UniPoly) -> Result<UniPoly> {
    let k = f.field();
    let q = k.order().expect("finite field");
    let x = UniPoly::x(k);
    let xq = x.pow_mod(&q, f)?;
    f.gcd(&(&xq - &x))
}

fn rng() -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0x5eed)
}

fn finite_roots(f: &UniPoly) -> Result<Vec<Scalar>> {
    let k = f.field().clone();
    if let Some(elems) = k.elements(BRUTE_FORCE_ORDER) {
        return Ok(elems.into_iter().filter(|a| f.eval(a).is_zero()).collect());
    }
    let g = frobenius_gcd(f)?;
    let mut rng = rng();
    let mut out = Vec::new();
    for h in equal_degree_split(&g, 1, &mut rng)? {
        out.push(k.neg(&h.coeff(0)));
    }
    Ok(out)
}

/// Splits a monic squarefree product of irreducibles of degree `d`.
fn equal_degree_split(f: &UniPoly, d: usize, rng: &mut ChaCha8Rng) -> Result<Vec<UniPoly>> {
    let n = f.degree().unwrap_or(0);
    if n == 0 {
        return Ok(Vec::new());
    }
    if n == d {
        return Ok(vec![f.monic()?]);
    }
    let k = f.field().clone();
    let q = k.order().unwrap();
    let p = k.characteristic();
    loop {
        let a = UniPoly::new(k.clone(), (0..n).map(|_| k.random_element(rng)).collect());
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let b = if p == 2 {
            // Absolute trace map a + a^2 + ... + a^(2^(e*d - 1)).
            let e = k.absolute_degree() * d;
            let mut t = a.rem(f)?;
            let mut s = t.clone();
            for _ in 1..e {
                t = (&t * &t).rem(f)?;
                s = &s + &t;
            }
            s
        } else {
            let exp = (num_traits::pow(q.clone(), d) - BigUint::one()) / BigUint::from(2u32);
            &a.pow_mod(&exp, f)? - &UniPoly::one(&k)
        };
        let g = f.gcd(&b)?;
        let gd = g.degree().unwrap_or(0);
        if gd > 0 && gd < n {
            let mut out = equal_degree_split(&g, d, rng)?;
            out.extend(equal_degree_split(&f.exact_div(&g)?, d, rng)?);
            return Ok(out);
        }
    }
}

/// Complete factorisation of a monic squarefree polynomial over a finite
/// field into monic irreducibles, sorted by degree then coefficients.
pub fn factor_squarefree_finite(f: &UniPoly) -> Result<Vec<UniPoly>> {
    let k = f.field().clone();
    let q = k.order().ok_or_else(|| Error::Unsupported(format!("factoring over {k}")))?;
    let x = UniPoly::x(&k);
    let mut rest = f.monic()?;
    let mut h = x.clone();
    let mut rng = rng();
    let mut out = Vec::new();
    let mut d = 0;
    while rest.degree().unwrap_or(0) > 0 {
        d += 1;
        if 2 * d > rest.degree().unwrap() {
            out.push(rest.clone());
            break;
        }
        h = h.pow_mod(&q, &rest)?;
        let g = rest.gcd(&(&h - &x))?;
        if g.degree().unwrap_or(0) > 0 {
            out.extend(equal_degree_split(&g, d, &mut rng)?);
            rest = rest.exact_div(&g)?;
            h = h.rem(&rest)?;
        }
    }
    out.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.coeffs().cmp(b.coeffs())));
    Ok(out)
}

/// Whether a polynomial over a finite field is irreducible.
pub fn is_irreducible_finite(f: &UniPoly) -> Result<bool> {
    let k = f.field().clone();
    let q = k.order().ok_or_else(|| Error::Unsupported(format!("irreducibility over {k}")))?;
    let n = match f.degree() {
        None | Some(0) => return Ok(false),
        Some(n) => n,
    };
    let f = f.monic()?;
    let x = UniPoly::x(&k);
    let mut h = x.clone();
    for _ in 1..=n / 2 {
        h = h.pow_mod(&q, &f)?;
        if f.gcd(&(&h - &x))?.degree() != Some(0) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Splits a monic squarefree polynomial into pieces whose roots form
/// Galois orbits (or, where full factorisation is out of reach, unions of
/// orbits flagged as asserted).
///
/// Over the rationals linear factors are split off by root finding; a
/// cofactor of degree at most 3 is then irreducible. Over finite fields the
/// factorisation is complete. Over other fields the polynomial is returned
/// whole and refined lazily by `Error::NonInvertible`.
pub fn orbit_factors(f: &UniPoly) -> Result<Vec<(UniPoly, Irreducibility)>> {
    let k = f.field().clone();
    let f = f.monic()?;
    if f.degree().unwrap_or(0) == 0 {
        return Ok(Vec::new());
    }
    if f.degree() == Some(1) {
        return Ok(vec![(f, Irreducibility::Verified)]);
    }
    if k.is_finite() {
        return Ok(factor_squarefree_finite(&f)?.into_iter().map(|g| (g, Irreducibility::Verified)).collect());
    }
    if k != Field::Rationals {
        return Ok(vec![(f, Irreducibility::Asserted)]);
    }
    let mut out = Vec::new();
    let mut rest = f.clone();
    for r in distinct_roots(&f)? {
        let lin = UniPoly::linear_root(&k, &r);
        rest = rest.exact_div(&lin)?;
        out.push((lin, Irreducibility::Verified));
    }
    match rest.degree() {
        Some(d) if d >= 4 => out.push((rest, Irreducibility::Asserted)),
        Some(d) if d >= 1 => out.push((rest, Irreducibility::Verified)),
        _ => {}
    }
    Ok(out)
}

/// The nonnegative integer value of a rational scalar, if it is one.
pub fn as_small_int(s: &Scalar) -> Option<i64> {
    let q = s.as_rational()?;
    if q.is_integer() {
        q.to_integer().to_i64()
    } else {
        None
    }
}
