//! Affine substitutions preserving a polynomial in one variable up to a
//! constant factor: the solutions of `F(a x + b) = c F(x)`.

use serde_json::{json, Value};

use crate::bipoly::BiPoly;
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::unipoly::UniPoly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FenceSymmetries {
    /// `F = f₁ x + f₀`: every `a ∈ k*` with `b = (a - 1) f₀ / f₁`, `c = a`.
    Family { f0: Scalar, f1: Scalar },
    /// The finitely many `(a, b, c)` for `deg F ≥ 2`, sorted.
    Finite(Vec<(Scalar, Scalar, Scalar)>),
}

impl FenceSymmetries {
    /// The member of a linear family at `a`.
    pub fn family_member(k: &Field, f0: &Scalar, f1: &Scalar, a: &Scalar) -> Result<(Scalar, Scalar, Scalar)> {
        let b = k.div(&k.mul(&k.sub(a, &k.one()), f0), f1)?;
        Ok((a.clone(), b, a.clone()))
    }

    pub fn to_json(&self, k: &Field) -> Value {
        match self {
            FenceSymmetries::Family { f0, f1 } => json!({
                "kind": "family",
                "description": format!("a in k*, b = (a - 1)*({})/({}), c = a", k.format(f0), k.format(f1)),
            }),
            FenceSymmetries::Finite(v) => json!({
                "kind": "finite",
                "solutions": v.iter().map(|(a, b, c)| json!({"a": k.format(a), "b": k.format(b), "c": k.format(c)})).collect::<Vec<_>>(),
            }),
        }
    }
}

/// `F(a x + b) - a^d F(x)` as a polynomial in `(x, b)`.
fn defect(f: &UniPoly, a: &Scalar) -> BiPoly {
    let k = f.field();
    let d = f.degree().unwrap_or(0);
    let ax_b = BiPoly::from_terms(k, [(1, 0, a.clone()), (0, 1, k.one())]);
    let fx = BiPoly::from_uni_x(f);
    &fx.compose(&ax_b, &BiPoly::y(k)) - &fx.scale(&k.pow(a, d as u64))
}

pub fn fence_symmetries(f: &UniPoly) -> Result<FenceSymmetries> {
    let k = f.field().clone();
    let d = match f.degree() {
        None => return Err(Error::ZeroInput("fence")),
        Some(0) => return Err(Error::InvalidInput("a constant defines no fence".into())),
        Some(d) => d,
    };
    if !f.is_squarefree()? {
        return Err(Error::NotSquarefree);
    }
    if d == 1 {
        return Ok(FenceSymmetries::Family { f0: f.coeff(0), f1: f.coeff(1) });
    }
    // x -> a x + b permutes the roots, so a has order dividing d or d - 1.
    let e = d * (d - 1);
    let unity = &UniPoly::monomial(&k, k.one(), e) - &UniPoly::one(&k);
    let mut out = Vec::new();
    for (a, _) in unity.roots()? {
        // b must be a common root of every x-coefficient of the defect.
        let mut g = UniPoly::zero(&k);
        for row in defect(f, &a).x_coeffs() {
            g = g.gcd(&row)?;
        }
        if g.is_zero() {
            return Err(Error::InvalidInput("every b works, so F is constant".into()));
        }
        if g.degree() == Some(0) {
            continue;
        }
        for (b, _) in g.roots()? {
            out.push((a.clone(), b, k.pow(&a, d as u64)));
        }
    }
    out.sort();
    Ok(FenceSymmetries::Finite(out))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::rationals()
    }

    fn sols(v: &[(i64, i64, i64)]) -> FenceSymmetries {
        let k = q();
        let mut s: Vec<_> = v.iter().map(|&(a, b, c)| (k.from_i64(a), k.from_i64(b), k.from_i64(c))).collect();
        s.sort();
        FenceSymmetries::Finite(s)
    }

    #[test]
    fn linear_fences_form_a_family() {
        let k = q();
        let fs = fence_symmetries(&UniPoly::from_i64s(&k, &[0, 1])).unwrap();
        assert_eq!(fs, FenceSymmetries::Family { f0: k.zero(), f1: k.one() });
    }

    #[test]
    fn two_points_swap() {
        let fs = fence_symmetries(&UniPoly::from_i64s(&q(), &[0, -1, 1])).unwrap();
        assert_eq!(fs, sols(&[(1, 0, 1), (-1, 1, 1)]));
    }

    #[test]
    fn three_points_reflect() {
        let fs = fence_symmetries(&UniPoly::from_i64s(&q(), &[0, -1, 0, 1])).unwrap();
        assert_eq!(fs, sols(&[(1, 0, 1), (-1, 0, -1)]));
    }

    #[test]
    fn translations_in_characteristic_p() {
        // x^3 - x over F3 is invariant under every translation.
        let k = Field::prime(3).unwrap();
        let fs = fence_symmetries(&UniPoly::from_i64s(&k, &[0, -1, 0, 1])).unwrap();
        let FenceSymmetries::Finite(v) = fs else { panic!() };
        assert_eq!(v.len(), 6);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn solutions_rescale_the_fence(roots in prop::collection::btree_set(-4i64..=4, 2..5), lead in 1i64..4) {
                let k = q();
                let mut f = UniPoly::from_i64s(&k, &[lead]);
                for r in &roots {
                    f = &f * &UniPoly::from_i64s(&k, &[-r, 1]);
                }
                let FenceSymmetries::Finite(sols) = fence_symmetries(&f).unwrap() else {
                    return Err(TestCaseError::fail("fences of degree ≥ 2 have finitely many symmetries"));
                };
                prop_assert!(sols.contains(&(k.one(), k.zero(), k.one())));
                for (a, b, c) in &sols {
                    let moved = f.compose(&UniPoly::new(k.clone(), vec![b.clone(), a.clone()]));
                    prop_assert_eq!(moved, f.scale(c));
                }
            }
        }
    }
}
