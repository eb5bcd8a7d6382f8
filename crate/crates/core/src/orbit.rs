//! Galois orbits of roots, represented by their minimal polynomial and a
//! generic point in the residue field.
//!
//! When a minimal polynomial is only asserted irreducible, computations in
//! its residue algebra may hit a zero divisor. [`map_orbits`] catches the
//! resulting `Error::NonInvertible`, splits the orbit along the witness and
//! reruns the job on each piece.

use crate::error::{Error, Result};
use crate::field::{Field, Irreducibility, Scalar};
use crate::roots;
use crate::unipoly::UniPoly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    /// Monic minimal polynomial over the base field.
    pub minpoly: UniPoly,
    /// Field holding the generic point: the base for rational orbits.
    pub field: Field,
    /// The generic point.
    pub point: Scalar,
    /// Multiplicity of the root in the polynomial the orbit came from.
    pub multiplicity: usize,
    pub irreducibility: Irreducibility,
}

impl Orbit {
    pub fn size(&self) -> usize {
        self.minpoly.degree().unwrap_or(0)
    }

    pub fn is_rational(&self) -> bool {
        self.size() == 1
    }

    /// The base-field value of a rational orbit.
    pub fn rational_value(&self) -> Option<&Scalar> {
        if self.is_rational() {
            Some(&self.point)
        } else {
            None
        }
    }

    fn build(minpoly: UniPoly, multiplicity: usize, irreducibility: Irreducibility, var: &str) -> Result<Orbit> {
        let base = minpoly.field().clone();
        if minpoly.degree() == Some(1) {
            let point = base.neg(&minpoly.coeff(0));
            return Ok(Orbit { minpoly, field: base, point, multiplicity, irreducibility: Irreducibility::Verified });
        }
        let field = Field::extension_with(&base, &minpoly, var, irreducibility)?;
        let point = field.generator().expect("extension has a generator");
        Ok(Orbit { minpoly, field, point, multiplicity, irreducibility })
    }
}

/// Orbits of the roots of `f` over its coefficient field, grouped by
/// multiplicity. Rational orbits come first, ordered by value.
pub fn orbits(f: &UniPoly, var: &str) -> Result<Vec<Orbit>> {
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return Ok(out);
    }
    for (g, m) in f.squarefree_decomposition()? {
        for (h, irr) in roots::orbit_factors(&g)? {
            out.push(Orbit::build(h, m, irr, var)?);
        }
    }
    out.sort_by(|a, b| a.size().cmp(&b.size()).then_with(|| a.point.cmp(&b.point)));
    Ok(out)
}

/// Runs `job` on every orbit, splitting asserted orbits whose residue
/// algebra turns out not to be a field.
pub fn map_orbits<T>(
    orbits: Vec<Orbit>,
    var: &str,
    job: &mut dyn FnMut(&Orbit) -> Result<T>,
) -> Result<Vec<(Orbit, T)>> {
    let mut out = Vec::new();
    let mut queue = orbits;
    queue.reverse();
    while let Some(o) = queue.pop() {
        match job(&o) {
            Ok(v) => out.push((o, v)),
            Err(Error::NonInvertible { field, witness }) if field == o.field => {
                let w = witness.monic()?;
                let rest = o.minpoly.exact_div(&w)?;
                let mut pieces = Vec::new();
                for piece in [w, rest] {
                    for (h, irr) in refine(&piece)? {
                        pieces.push(Orbit::build(h, o.multiplicity, irr, var)?);
                    }
                }
                queue.extend(pieces.into_iter().rev());
            }
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

fn refine(piece: &UniPoly) -> Result<Vec<(UniPoly, Irreducibility)>> {
    let d = piece.degree().unwrap_or(0);
    if d == 0 {
        return Ok(Vec::new());
    }
    if piece.field() == &Field::Rationals || piece.field().is_finite() {
        return roots::orbit_factors(piece);
    }
    let irr = if d == 1 { Irreducibility::Verified } else { Irreducibility::Asserted };
    Ok(vec![(piece.clone(), irr)])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orbit_split_on_zero_divisor() {
        // Pretend (t^2 - 2)(t^2 - 3) is irreducible over Q(sqrt 5); the job
        // inverts t^2 - 2, which exposes the factorisation.
        let q = Field::rationals();
        let k5 = Field::extension(&q, &UniPoly::from_i64s(&q, &[-5, 0, 1]), "r").unwrap();
        let m = UniPoly::from_i64s(&k5, &[6, 0, -5, 0, 1]);
        let o = Orbit::build(m, 1, Irreducibility::Asserted, "t").unwrap();
        let res = map_orbits(vec![o], "t", &mut |o: &Orbit| {
            let k = &o.field;
            let z = k.sub(&k.mul(&o.point, &o.point), &k.from_i64(2));
            if z.is_zero() {
                return Ok(2);
            }
            k.inv(&z)?;
            Ok(3)
        })
        .unwrap();
        let got: Vec<(UniPoly, i32)> = res.into_iter().map(|(o, v)| (o.minpoly, v)).collect();
        assert_eq!(got, vec![(UniPoly::from_i64s(&k5, &[-2, 0, 1]), 2), (UniPoly::from_i64s(&k5, &[-3, 0, 1]), 3)]);
    }

    #[test]
    fn rational_orbits_first() {
        let q = Field::rationals();
        let f = &UniPoly::from_i64s(&q, &[1, 0, 1]) * &UniPoly::from_i64s(&q, &[-3, 1]).pow(2);
        let os = orbits(&f, "t").unwrap();
        assert_eq!(os.len(), 2);
        assert_eq!(os[0].rational_value(), Some(&q.from_i64(3)));
        assert_eq!(os[0].multiplicity, 2);
        assert_eq!(os[1].size(), 2);
    }
}
