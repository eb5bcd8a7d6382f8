//! Specialised kernels for the two base fields that dominate run time.
//!
//! Over the rationals a polynomial is scaled to integer coefficients so the
//! inner loops avoid per-term gcd normalisation; over `F_p` the residues are
//! multiplied in `u128`. Both return `None` for other fields.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::bipoly::{BiPoly, Mono};
use crate::field::{Field, Scalar};

/// Below this many term products the generic path is just as fast.
const MIN_WORK: usize = 16;

struct IntPoly {
    den: BigInt,
    terms: Vec<(Mono, BigInt)>,
}

fn to_int(p: &BiPoly) -> IntPoly {
    let mut den = BigInt::one();
    for (_, c) in p.terms() {
        den = den.lcm(c.as_rational().unwrap().denom());
    }
    let terms = p
        .terms()
        .map(|(m, c)| {
            let q = c.as_rational().unwrap();
            (*m, q.numer() * (&den / q.denom()))
        })
        .collect();
    IntPoly { den, terms }
}

fn from_int(k: &Field, den: &BigInt, acc: HashMap<Mono, BigInt>) -> BiPoly {
    let terms: BTreeMap<Mono, Scalar> = acc
        .into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(m, c)| (m, Scalar::Q(BigRational::new(c, den.clone()))))
        .collect();
    BiPoly::from_terms(k, terms.into_iter().map(|(m, c)| (m.0, m.1, c)))
}

fn int_mul(a: &IntPoly, b: &IntPoly) -> HashMap<Mono, BigInt> {
    let mut acc: HashMap<Mono, BigInt> = HashMap::with_capacity(a.terms.len() * 2);
    for (ma, ca) in &a.terms {
        for (mb, cb) in &b.terms {
            let m = (ma.0 + mb.0, ma.1 + mb.1);
            let e = acc.entry(m).or_default();
            *e += ca * cb;
        }
    }
    acc
}

fn mod_terms(p: &BiPoly) -> Vec<(Mono, u64)> {
    p.terms()
        .map(|(m, c)| match c {
            Scalar::P(v) => (*m, *v),
            _ => unreachable!(),
        })
        .collect()
}

fn mod_mul(p: u64, a: &[(Mono, u64)], b: &[(Mono, u64)]) -> HashMap<Mono, u64> {
    let mut acc: HashMap<Mono, u64> = HashMap::with_capacity(a.len() * 2);
    for (ma, ca) in a {
        for (mb, cb) in b {
            let m = (ma.0 + mb.0, ma.1 + mb.1);
            let t = ((*ca as u128 * *cb as u128) % p as u128) as u64;
            let e = acc.entry(m).or_insert(0);
            *e = ((*e as u128 + t as u128) % p as u128) as u64;
        }
    }
    acc
}

fn from_mod(k: &Field, acc: HashMap<Mono, u64>) -> BiPoly {
    BiPoly::from_terms(k, acc.into_iter().filter(|(_, c)| *c != 0).map(|(m, c)| (m.0, m.1, Scalar::P(c))))
}

pub(crate) fn mul(a: &BiPoly, b: &BiPoly) -> Option<BiPoly> {
    if a.num_terms() * b.num_terms() < MIN_WORK {
        return None;
    }
    match a.field() {
        Field::Rationals => {
            let (ia, ib) = (to_int(a), to_int(b));
            let den = &ia.den * &ib.den;
            Some(from_int(a.field(), &den, int_mul(&ia, &ib)))
        }
        Field::Prime(p) => Some(from_mod(a.field(), mod_mul(*p, &mod_terms(a), &mod_terms(b)))),
        Field::Ext(_) => None,
    }
}

/// `f(g, h)` with every intermediate kept in the fast representation.
pub(crate) fn compose(f: &BiPoly, g: &BiPoly, h: &BiPoly) -> Option<BiPoly> {
    match f.field() {
        Field::Rationals => Some(compose_q(f, g, h)),
        Field::Prime(p) => Some(compose_p(*p, f, g, h)),
        Field::Ext(_) => None,
    }
}

fn compose_q(f: &BiPoly, g: &BiPoly, h: &BiPoly) -> BiPoly {
    let k = f.field();
    let (ig, ih) = (to_int(g), to_int(h));
    let dx = f.deg_x().unwrap() as usize;
    let dy = f.deg_y().unwrap() as usize;
    // Powers of g and h as integer polynomials with denominators den^i.
    let mut gp: Vec<IntPoly> = vec![IntPoly { den: BigInt::one(), terms: vec![((0, 0), BigInt::one())] }];
    for i in 1..=dx {
        let prev = &gp[i - 1];
        let prod = int_mul(prev, &ig);
        gp.push(IntPoly { den: &prev.den * &ig.den, terms: prod.into_iter().filter(|(_, c)| !c.is_zero()).collect() });
    }
    let mut hp: Vec<IntPoly> = vec![IntPoly { den: BigInt::one(), terms: vec![((0, 0), BigInt::one())] }];
    for j in 1..=dy {
        let prev = &hp[j - 1];
        let prod = int_mul(prev, &ih);
        hp.push(IntPoly { den: &prev.den * &ih.den, terms: prod.into_iter().filter(|(_, c)| !c.is_zero()).collect() });
    }
    // Common denominator: D = den_f * gden^dx * hden^dy.
    let fi = to_int(f);
    let gden_top = &gp[dx].den;
    let hden_top = &hp[dy].den;
    let mut acc: HashMap<Mono, BigInt> = HashMap::new();
    // Group terms of f by y-exponent so each g-power product is formed once per row.
    let mut rows: BTreeMap<u32, Vec<(u32, BigInt)>> = BTreeMap::new();
    for ((i, j), c) in fi.terms {
        rows.entry(j).or_default().push((i, c));
    }
    for (j, row) in rows {
        let mut row_acc: HashMap<Mono, BigInt> = HashMap::new();
        for (i, c) in row {
            let scale = &c * (gden_top / &gp[i as usize].den);
            for (m, v) in &gp[i as usize].terms {
                *row_acc.entry(*m).or_default() += &scale * v;
            }
        }
        let row_poly =
            IntPoly { den: BigInt::one(), terms: row_acc.into_iter().filter(|(_, c)| !c.is_zero()).collect() };
        let hs = hden_top / &hp[j as usize].den;
        let hj =
            IntPoly { den: BigInt::one(), terms: hp[j as usize].terms.iter().map(|(m, v)| (*m, v * &hs)).collect() };
        for (m, v) in int_mul(&row_poly, &hj) {
            *acc.entry(m).or_default() += v;
        }
    }
    let den = &fi.den * gden_top * hden_top;
    from_int(k, &den, acc)
}

fn compose_p(p: u64, f: &BiPoly, g: &BiPoly, h: &BiPoly) -> BiPoly {
    let k = f.field();
    let (tg, th) = (mod_terms(g), mod_terms(h));
    let dx = f.deg_x().unwrap() as usize;
    let dy = f.deg_y().unwrap() as usize;
    let one = vec![((0u32, 0u32), 1u64)];
    let mut gp = vec![one.clone()];
    for i in 1..=dx {
        gp.push(mod_mul(p, &gp[i - 1], &tg).into_iter().filter(|(_, c)| *c != 0).collect());
    }
    let mut hp = vec![one];
    for j in 1..=dy {
        hp.push(mod_mul(p, &hp[j - 1], &th).into_iter().filter(|(_, c)| *c != 0).collect());
    }
    let mut rows: BTreeMap<u32, Vec<(u32, u64)>> = BTreeMap::new();
    for ((i, j), c) in mod_terms(f) {
        rows.entry(j).or_default().push((i, c));
    }
    let mut acc: HashMap<Mono, u64> = HashMap::new();
    for (j, row) in rows {
        let mut row_acc: HashMap<Mono, u64> = HashMap::new();
        for (i, c) in row {
            for (m, v) in &gp[i as usize] {
                let t = ((c as u128 * *v as u128) % p as u128) as u64;
                let e = row_acc.entry(*m).or_insert(0);
                *e = ((*e as u128 + t as u128) % p as u128) as u64;
            }
        }
        let row_terms: Vec<(Mono, u64)> = row_acc.into_iter().filter(|(_, c)| *c != 0).collect();
        for (m, v) in mod_mul(p, &row_terms, &hp[j as usize]) {
            let e = acc.entry(m).or_insert(0);
            *e = ((*e as u128 + v as u128) % p as u128) as u64;
        }
    }
    from_mod(k, acc)
}
