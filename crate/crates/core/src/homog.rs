//! Homogeneous forms in `x, y, z` and the passage to and from the affine
//! chart `z = 1`.

use std::fmt;

use crate::bipoly::{self, BiPoly};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};

/// A homogeneous form of fixed degree, stored through its `z = 1`
/// dehomogenisation; the `z` exponent of `x^i y^j` is `degree - i - j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomogPoly {
    degree: u32,
    affine: BiPoly,
}

/// `z^degree * f(x/z, y/z)`.
pub fn homogenize(f: &BiPoly, degree: u32) -> Result<HomogPoly> {
    let actual = f.degree().unwrap_or(0);
    if degree < actual {
        return Err(Error::DegreeTooSmall { requested: degree as usize, actual: actual as usize });
    }
    Ok(HomogPoly { degree, affine: f.clone() })
}

impl HomogPoly {
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn field(&self) -> &Field {
        self.affine.field()
    }

    pub fn is_zero(&self) -> bool {
        self.affine.is_zero()
    }

    /// Setting `z = 1`.
    pub fn dehomogenize(&self) -> BiPoly {
        self.affine.clone()
    }

    /// Coefficient of `x^i y^j z^(d-i-j)`.
    pub fn coeff(&self, i: u32, j: u32) -> Scalar {
        self.affine.coeff(i, j)
    }

    /// Value at a representative `(x, y, z)`.
    pub fn eval(&self, x: &Scalar, y: &Scalar, z: &Scalar) -> Scalar {
        let k = self.field();
        let mut acc = k.zero();
        for ((i, j), c) in self.affine.terms() {
            let t = k.mul(
                c,
                &k.mul(&k.pow(x, *i as u64), &k.mul(&k.pow(y, *j as u64), &k.pow(z, (self.degree - i - j) as u64))),
            );
            acc = k.add(&acc, &t);
        }
        acc
    }

    /// Restriction to the line `z = 0`: the top-degree part, as a binary form.
    pub fn at_infinity(&self) -> BiPoly {
        self.affine.form(self.degree)
    }

    /// The chart `x = 1`, as a polynomial in `(y, z)` (returned with `y` as
    /// the first variable).
    pub fn chart_x(&self) -> BiPoly {
        let d = self.degree;
        self.affine.map_monomials(|i, j| (j, d - i - j))
    }

    /// The chart `y = 1`, as a polynomial in `(x, z)`.
    pub fn chart_y(&self) -> BiPoly {
        let d = self.degree;
        self.affine.map_monomials(|i, j| (i, d - i - j))
    }

    /// Largest power of `z` dividing the form.
    pub fn z_order(&self) -> u32 {
        self.affine.terms().map(|(m, _)| self.degree - m.0 - m.1).min().unwrap_or(0)
    }
}

/// Greatest common divisor of homogeneous forms, itself homogeneous.
pub fn gcd_forms(forms: &[HomogPoly]) -> Result<HomogPoly> {
    let k = forms[0].field().clone();
    let mut g = BiPoly::zero(&k);
    let mut zo = u32::MAX;
    for f in forms {
        if f.is_zero() {
            continue;
        }
        g = bipoly::gcd(&g, &f.affine)?;
        zo = zo.min(f.z_order());
    }
    if g.is_zero() {
        return Ok(HomogPoly { degree: 0, affine: g });
    }
    let d = g.degree().unwrap_or(0) + zo;
    Ok(HomogPoly { degree: d, affine: g })
}

/// Exact quotient of homogeneous forms.
pub fn div_forms(a: &HomogPoly, b: &HomogPoly) -> Result<HomogPoly> {
    if b.degree > a.degree || b.z_order() > a.z_order() {
        return Err(Error::InvalidInput("form does not divide".into()));
    }
    Ok(HomogPoly { degree: a.degree - b.degree, affine: a.affine.exact_div(&b.affine)? })
}

impl fmt::Display for HomogPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.affine.is_zero() {
            return write!(f, "0");
        }
        let d = self.degree;
        let mut ms: Vec<_> = self.affine.terms().collect();
        ms.sort_by_key(|(m, _)| std::cmp::Reverse((m.0, m.1)));
        let terms: Vec<(Scalar, Vec<(String, usize)>)> = ms
            .into_iter()
            .map(|(m, c)| {
                (
                    c.clone(),
                    vec![
                        ("x".to_string(), m.0 as usize),
                        ("y".to_string(), m.1 as usize),
                        ("z".to_string(), (d - m.0 - m.1) as usize),
                    ],
                )
            })
            .collect();
        write!(f, "{}", bipoly::format_terms(self.field(), &terms))
    }
}
