//! Classification of `Aut(𝔸², Γ)`: normalise by links, then recognise the
//! normal forms whose group is infinite. Each result carries the
//! conjugator to normal coordinates and generators of the group there.

mod generators;
mod matchers;

use serde_json::{json, Value};

use crate::automorphism::PlaneAutomorphism;
use crate::bipoly::{self, BiPoly};
use crate::config::Caps;
use crate::error::{Error, Result};
use crate::fence::{fence_symmetries, FenceSymmetries};
use crate::field::{Field, Scalar};
use crate::normalize::{normalize_with_caps, Normalization, NormalizationOutcome};
use crate::unipoly::UniPoly;

pub use generators::{Family, Generator};
pub use matchers::{match_normal_form, rational_singular_points, Match};

/// Ambient algebraic group certified to contain the automorphism group.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ambient {
    Affine,
    Jonquieres(u32),
}

impl std::fmt::Display for Ambient {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Ambient::Affine => write!(f, "Aff"),
            Ambient::Jonquieres(n) => write!(f, "J{n}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NormalForm {
    /// `F(x) = 0` with `deg F ≥ 2`.
    FenceCase { equation: UniPoly },
    /// `x = 0`.
    Line,
    /// `x^b = λ y^a`, `1 < b < a` coprime.
    QuasiHomogeneous { a: u32, b: u32, lambda: Scalar },
    /// `x^b y^a = λ`, `b ≤ a` coprime; `swap` when `a = b = 1`.
    MonomialHyperbola { a: u32, b: u32, lambda: Scalar, swap: bool },
    /// `λ x² + ν y² = 1` with `-λν` a non-square.
    AnisotropicConic { lambda: Scalar, nu: Scalar },
    /// `x² + μ x y + y² = 1` in characteristic 2, `x² + μ x + 1` rootless.
    Char2Conic { mu: Scalar },
    /// No infinite family; the group is an algebraic subgroup of `ambient`.
    FiniteCase { ambient: Ambient },
}

impl NormalForm {
    pub fn tag(&self) -> &'static str {
        match self {
            NormalForm::FenceCase { .. } => "FenceCase",
            NormalForm::Line => "Line",
            NormalForm::QuasiHomogeneous { .. } => "QuasiHomogeneous",
            NormalForm::MonomialHyperbola { .. } => "MonomialHyperbola",
            NormalForm::AnisotropicConic { .. } => "AnisotropicConic",
            NormalForm::Char2Conic { .. } => "Char2Conic",
            NormalForm::FiniteCase { .. } => "FiniteCase",
        }
    }

    /// The normal-form equation as written; `None` for the finite case.
    pub fn equation(&self, k: &Field) -> Option<BiPoly> {
        let one = k.one();
        let eq = match self {
            NormalForm::FenceCase { equation } => BiPoly::from_uni_x(equation),
            NormalForm::Line => BiPoly::x(k),
            NormalForm::QuasiHomogeneous { a, b, lambda } => {
                BiPoly::from_terms(k, [(*b, 0, one), (0, *a, k.neg(lambda))])
            }
            NormalForm::MonomialHyperbola { a, b, lambda, .. } => {
                BiPoly::from_terms(k, [(*b, *a, one), (0, 0, k.neg(lambda))])
            }
            NormalForm::AnisotropicConic { lambda, nu } => {
                BiPoly::from_terms(k, [(2, 0, lambda.clone()), (0, 2, nu.clone()), (0, 0, k.neg(&one))])
            }
            NormalForm::Char2Conic { mu } => BiPoly::from_terms(
                k,
                [(2, 0, one.clone()), (1, 1, mu.clone()), (0, 2, one.clone()), (0, 0, k.neg(&one))],
            ),
            NormalForm::FiniteCase { .. } => return None,
        };
        Some(eq)
    }

    /// Exponent pair `(a, b)` for the binomial cases.
    pub fn exponents(&self) -> Option<(u32, u32)> {
        match self {
            NormalForm::QuasiHomogeneous { a, b, .. } | NormalForm::MonomialHyperbola { a, b, .. } => Some((*a, *b)),
            _ => None,
        }
    }

    pub fn parameters_json(&self, k: &Field) -> Value {
        match self {
            NormalForm::FenceCase { equation } => json!({"equation": equation.to_string_var("x")}),
            NormalForm::Line => json!({}),
            NormalForm::QuasiHomogeneous { a, b, lambda } => {
                json!({"a": a.to_string(), "b": b.to_string(), "lambda": k.format(lambda)})
            }
            NormalForm::MonomialHyperbola { a, b, lambda, swap } => json!({
                "a": a.to_string(), "b": b.to_string(), "lambda": k.format(lambda), "with_swap": swap,
            }),
            NormalForm::AnisotropicConic { lambda, nu } => json!({"lambda": k.format(lambda), "nu": k.format(nu)}),
            NormalForm::Char2Conic { mu } => json!({"mu": k.format(mu)}),
            NormalForm::FiniteCase { ambient } => json!({"ambient": ambient.to_string()}),
        }
    }

    /// Generating families of the automorphism group, in normal coordinates.
    fn families(&self, k: &Field) -> Result<Vec<Family>> {
        let (o, z) = (k.one(), k.zero());
        Ok(match self {
            NormalForm::Line => vec![Family::LineStabilizer],
            NormalForm::FenceCase { equation } => {
                let mut v = vec![Family::FenceTorus, Family::FenceShift];
                if let FenceSymmetries::Finite(sols) = fence_symmetries(equation)? {
                    for (a, b, _) in sols {
                        if a.is_one() && b.is_zero() {
                            continue;
                        }
                        let map = PlaneAutomorphism::affine(k, &a, &z, &z, &o, &b, &z)?;
                        v.push(Family::Discrete { name: "fence-symmetry".into(), map });
                    }
                }
                v
            }
            NormalForm::QuasiHomogeneous { a, b, .. } => vec![Family::Torus { wx: *a as i64, wy: *b as i64 }],
            NormalForm::MonomialHyperbola { a, b, swap, .. } => {
                let mut v = vec![Family::Torus { wx: *a as i64, wy: -(*b as i64) }];
                if *swap {
                    v.push(Family::Discrete { name: "swap".into(), map: PlaneAutomorphism::swap(k) });
                }
                v
            }
            NormalForm::AnisotropicConic { lambda, nu } => vec![
                Family::Rotation { lambda: lambda.clone(), nu: nu.clone() },
                Family::Discrete {
                    name: "reflection".into(),
                    map: PlaneAutomorphism::affine(k, &o, &z, &z, &k.neg(&o), &z, &z)?,
                },
            ],
            NormalForm::Char2Conic { mu } => vec![
                Family::Char2Rotation { mu: mu.clone() },
                Family::Discrete {
                    name: "reflection".into(),
                    map: PlaneAutomorphism::affine(k, &o, mu, &z, &o, &z, &z)?,
                },
            ],
            NormalForm::FiniteCase { .. } => Vec::new(),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Confidence {
    /// The case and the group are certified.
    Proved,
    /// No pattern matched where completeness is not certified.
    MatchedNone,
}

#[derive(Clone, Copy, Debug)]
pub struct ClassifyOptions {
    /// Caller's assertion that the curve is geometrically irreducible.
    pub irreducible: bool,
    pub caps: Caps,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions { irreducible: false, caps: Caps::from_env() }
    }
}

#[derive(Clone, Debug)]
pub struct Classification {
    pub form: NormalForm,
    /// Automorphism of `𝔸²` taking the input curve to the normal form.
    pub conjugator: PlaneAutomorphism,
    pub generators: Vec<Generator>,
    pub confidence: Confidence,
    pub normalization: Normalization,
}

impl Classification {
    pub fn tag(&self) -> &'static str {
        self.form.tag()
    }

    pub fn to_json(&self) -> Value {
        let k = self.conjugator.field();
        json!({
            "case": self.form.tag(),
            "parameters": self.form.parameters_json(k),
            "normal_form": self.form.equation(k).map(|e| e.to_string()),
            "conjugator": [self.conjugator.f().to_string(), self.conjugator.g().to_string()],
            "generators": self.generators.iter().map(Generator::to_json).collect::<Vec<_>>(),
            "confidence": match self.confidence {
                Confidence::Proved => "Proved",
                Confidence::MatchedNone => "MatchedNone",
            },
            "normalization": self.normalization.to_json(),
        })
    }
}

/// `Some(c)` when `F ∘ φ⁻¹ = c F`.
pub fn verify_invariance(f: &BiPoly, phi: &PlaneAutomorphism) -> Option<Scalar> {
    if f.is_zero() || f.field() != phi.field() {
        return None;
    }
    f.compose(phi.inverse_f(), phi.inverse_g()).ratio_to(f)
}

pub fn classify(f: &BiPoly) -> Result<Classification> {
    classify_with(f, &ClassifyOptions::default())
}

pub fn classify_with(f: &BiPoly, opts: &ClassifyOptions) -> Result<Classification> {
    let k = f.field().clone();
    let norm = normalize_with_caps(f, &opts.caps)?;
    let (form, conjugator, confidence) = match &norm.outcome {
        NormalizationOutcome::Fence { conjugator, equation } => {
            if equation.degree() == Some(1) {
                // Move f₁ x + f₀ to x.
                let (f0, f1) = (equation.coeff(0), equation.coeff(1));
                let z = k.zero();
                let fix = PlaneAutomorphism::affine(&k, &f1, &z, &z, &k.one(), &f0, &z)?;
                (NormalForm::Line, fix.compose(conjugator), Confidence::Proved)
            } else {
                let equation = equation.monic()?;
                (NormalForm::FenceCase { equation }, conjugator.clone(), Confidence::Proved)
            }
        }
        outcome => {
            screen_irreducible(f)?;
            match match_normal_form(&norm.curve)? {
                Some(m) => (m.form, m.map.compose(outcome.conjugator()), Confidence::Proved),
                None => {
                    let certified = matches!(
                        outcome,
                        NormalizationOutcome::Transversal { .. } | NormalizationOutcome::RationalityHalt { .. }
                    );
                    let confidence =
                        if certified && opts.irreducible { Confidence::Proved } else { Confidence::MatchedNone };
                    let form = NormalForm::FiniteCase { ambient: Ambient::Affine };
                    (form, outcome.conjugator().clone(), confidence)
                }
            }
        }
    };
    if let Some(eq) = form.equation(&k) {
        debug_assert!(conjugator.pullback(&eq).ratio_to(&f.normalized()).is_some());
    }
    let generators =
        form.families(&k)?.into_iter().map(|family| Generator { family, conjugator: conjugator.clone() }).collect();
    Ok(Classification { form, conjugator, generators, confidence, normalization: norm })
}

/// Rejects curves with a visible factor: a monomial, or a polynomial in
/// one variable dividing every coefficient in the other.
fn screen_irreducible(f: &BiPoly) -> Result<()> {
    let (_, i, j) = f.strip_monomial_factor();
    if i + j > 0 {
        return Err(Error::InvalidInput(format!("{f} is divisible by x^{i}*y^{j}; an irreducible curve is required")));
    }
    for (rows, var) in [(f.y_coeffs(), "x"), (f.x_coeffs(), "y")] {
        let mut g = UniPoly::zero(f.field());
        for r in &rows {
            g = g.gcd(r)?;
        }
        if rows.len() > 1 && !g.is_constant() {
            return Err(Error::InvalidInput(format!(
                "{f} has the factor {} in {var} alone; an irreducible curve is required",
                g.to_string_var(var)
            )));
        }
    }
    debug_assert!(bipoly::is_squarefree(f).unwrap_or(true));
    Ok(())
}
