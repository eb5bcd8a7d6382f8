//! Seeded random tame automorphisms, for property tests and the corpus
//! runner.

use rand::Rng;

use crate::automorphism::PlaneAutomorphism;
use crate::bipoly::BiPoly;
use crate::field::{Field, Scalar};
use crate::unipoly::UniPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TameOptions {
    /// Most affine and triangular factors composed.
    pub max_factors: usize,
    /// Integer coefficients are drawn from `-coeff_bound..=coeff_bound`.
    pub coeff_bound: i64,
    /// Largest degree of a triangular factor.
    pub max_triangular_degree: usize,
    /// Largest degree of the composite.
    pub max_degree: u32,
}

impl Default for TameOptions {
    fn default() -> Self {
        TameOptions { max_factors: 5, coeff_bound: 9, max_triangular_degree: 4, max_degree: 64 }
    }
}

fn coeff<R: Rng + ?Sized>(k: &Field, rng: &mut R, bound: i64) -> Scalar {
    match k {
        Field::Rationals => k.from_i64(rng.gen_range(-bound..=bound)),
        _ => k.random_element(rng),
    }
}

fn unit<R: Rng + ?Sized>(k: &Field, rng: &mut R, bound: i64) -> Scalar {
    loop {
        let c = coeff(k, rng, bound);
        if !c.is_zero() {
            return c;
        }
    }
}

pub fn random_affine<R: Rng + ?Sized>(k: &Field, rng: &mut R, bound: i64) -> PlaneAutomorphism {
    loop {
        let c: Vec<Scalar> = (0..6).map(|_| coeff(k, rng, bound)).collect();
        if let Ok(a) = PlaneAutomorphism::affine(k, &c[0], &c[1], &c[2], &c[3], &c[4], &c[5]) {
            return a;
        }
    }
}

/// `(a x + P(y), b y + c)` with `deg P` exactly `deg` when `deg ≥ 2`.
pub fn random_triangular<R: Rng + ?Sized>(k: &Field, rng: &mut R, bound: i64, deg: usize) -> PlaneAutomorphism {
    let mut p: Vec<Scalar> = (0..=deg).map(|_| coeff(k, rng, bound)).collect();
    if deg >= 2 {
        p[deg] = unit(k, rng, bound);
    }
    let p = UniPoly::new(k.clone(), p);
    let (a, b, c) = (unit(k, rng, bound), unit(k, rng, bound), coeff(k, rng, bound));
    PlaneAutomorphism::triangular(&a, &p, &b, &c).expect("nonzero diagonal")
}

/// Alternating affine and triangular factors, redrawn until the composite
/// has degree at most `max_degree`.
pub fn random_tame<R: Rng + ?Sized>(k: &Field, rng: &mut R, opts: &TameOptions) -> PlaneAutomorphism {
    loop {
        let n = rng.gen_range(1..=opts.max_factors.max(1));
        let mut phi = PlaneAutomorphism::identity(k);
        let mut affine_next = rng.gen_bool(0.5);
        for _ in 0..n {
            let factor = if affine_next {
                random_affine(k, rng, opts.coeff_bound)
            } else {
                let d = rng.gen_range(1..=opts.max_triangular_degree.max(1));
                random_triangular(k, rng, opts.coeff_bound, d)
            };
            phi = factor.compose(&phi);
            affine_next = !affine_next;
        }
        if phi.degree() <= opts.max_degree {
            return phi;
        }
    }
}

/// Small representatives of the normal forms with infinite automorphism
/// group that make sense over `k`.
pub fn normal_form_suite(k: &Field) -> Vec<BiPoly> {
    let p = k.characteristic();
    let mut out = vec![
        BiPoly::from_i64s(k, &[(1, 0, 1)]),
        BiPoly::from_i64s(k, &[(1, 1, 1), (0, 0, -1)]),
        BiPoly::from_i64s(k, &[(1, 2, 1), (0, 0, -1)]),
        BiPoly::from_i64s(k, &[(2, 3, 1), (0, 0, -1)]),
    ];
    if p == 0 || p > 3 {
        out.push(BiPoly::from_i64s(k, &[(2, 0, 1), (0, 3, -2)]));
    }
    if p == 2 {
        out.push(BiPoly::from_i64s(k, &[(2, 0, 1), (1, 1, 1), (0, 2, 1), (0, 0, 1)]));
    } else {
        // x^2 - n y^2 = 1 with n a non-square; some n ≤ p works over F_p.
        let n = (1..).map(|n| k.from_i64(n)).find(|n| !k.is_square(n).unwrap_or(true)).expect("a non-square");
        out.push(BiPoly::from_terms(k, [(2, 0, k.one()), (0, 2, k.neg(&n)), (0, 0, k.from_i64(-1))]));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn respects_degree_bound() {
        let k = Field::rationals();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let opts = TameOptions { max_degree: 8, ..TameOptions::default() };
        for _ in 0..20 {
            let phi = random_tame(&k, &mut rng, &opts);
            assert!(phi.degree() <= 8);
            assert!(phi.compose(&phi.inverse()).is_identity());
        }
    }

    #[test]
    fn deterministic_given_seed() {
        let k = Field::prime(7).unwrap();
        let a = random_tame(&k, &mut ChaCha8Rng::seed_from_u64(5), &TameOptions::default());
        let b = random_tame(&k, &mut ChaCha8Rng::seed_from_u64(5), &TameOptions::default());
        assert_eq!(a, b);
    }
}
