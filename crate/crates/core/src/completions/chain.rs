use std::fmt;

use serde_json::{json, Value};

use crate::automorphism::{jvdk_factorize, FactorKind, PlaneAutomorphism};
use crate::error::{Error, Result};
use crate::field::Field;

use super::link::{act_on_line, lift_to_f1, preserves_boundary, ElementaryLink, LinkKind};
use super::{BoundaryPoint, Completion, Position};

/// `[α₀, ℓ₁, α₁, …, ℓₘ, αₘ]` with composite `αₘ ∘ ℓₘ ∘ … ∘ ℓ₁ ∘ α₀`, each
/// `αᵢ` preserving the boundary of the completion it acts on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkChain {
    source: Completion,
    alphas: Vec<PlaneAutomorphism>,
    links: Vec<ElementaryLink>,
}

impl LinkChain {
    /// The chain of a single boundary-preserving automorphism of `x`.
    pub fn isomorphism(x: Completion, alpha: PlaneAutomorphism) -> Result<LinkChain> {
        if !preserves_boundary(x, &alpha) {
            return Err(Error::InvalidInput(format!("{alpha} does not preserve the boundary of {x}")));
        }
        Ok(LinkChain { source: x, alphas: vec![alpha], links: Vec::new() })
    }

    /// Builds and validates a chain from its parts.
    pub fn from_parts(
        source: Completion,
        alphas: Vec<PlaneAutomorphism>,
        links: Vec<ElementaryLink>,
    ) -> Result<LinkChain> {
        if alphas.len() != links.len() + 1 {
            return Err(Error::InvalidInput("a chain has one more isomorphism than links".into()));
        }
        let mut here = source;
        for (alpha, link) in alphas.iter().zip(&links) {
            if !preserves_boundary(here, alpha) {
                return Err(Error::InvalidInput(format!("{alpha} does not preserve the boundary of {here}")));
            }
            if link.source() != here {
                return Err(Error::InvalidInput(format!("link {link} does not start on {here}")));
            }
            here = link.target();
        }
        if !preserves_boundary(here, alphas.last().unwrap()) {
            return Err(Error::InvalidInput(format!("last isomorphism does not preserve the boundary of {here}")));
        }
        Ok(LinkChain { source, alphas, links })
    }

    pub fn identity(k: &Field) -> LinkChain {
        LinkChain { source: Completion::P2, alphas: vec![PlaneAutomorphism::identity(k)], links: Vec::new() }
    }

    pub fn source(&self) -> Completion {
        self.source
    }

    pub fn target(&self) -> Completion {
        self.links.last().map_or(self.source, |l| l.target())
    }

    pub fn links(&self) -> &[ElementaryLink] {
        &self.links
    }

    pub fn isomorphisms(&self) -> &[PlaneAutomorphism] {
        &self.alphas
    }

    /// Completions visited, source first.
    pub fn completions(&self) -> Vec<Completion> {
        std::iter::once(self.source).chain(self.links.iter().map(|l| l.target())).collect()
    }

    /// `other ∘ self`: run `self`, then `other`.
    pub fn then(&self, other: &LinkChain) -> Result<LinkChain> {
        if self.target() != other.source {
            return Err(Error::InvalidInput(format!(
                "chain ends on {} but the next starts on {}",
                self.target(),
                other.source
            )));
        }
        let mut alphas = self.alphas.clone();
        let last = alphas.pop().unwrap();
        alphas.push(other.alphas[0].compose(&last));
        alphas.extend(other.alphas[1..].iter().cloned());
        let mut links = self.links.clone();
        links.extend(other.links.iter().cloned());
        Ok(LinkChain { source: self.source, alphas, links })
    }

    /// The composite automorphism of `𝔸²`.
    pub fn composite(&self) -> PlaneAutomorphism {
        let mut acc = self.alphas[0].clone();
        for (link, alpha) in self.links.iter().zip(&self.alphas[1..]) {
            acc = alpha.compose(&link.map().compose(&acc));
        }
        acc
    }

    /// Index `i` of the first window `ℓᵢ₊₂ ∘ αᵢ₊₁ ∘ ℓᵢ₊₁` (zero-based on
    /// links) that composes to an isomorphism.
    fn first_cancelling_window(&self) -> Result<Option<usize>> {
        for i in 0..self.links.len().saturating_sub(1) {
            if window_cancels(&self.links[i], &self.alphas[i + 1], &self.links[i + 1])? {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }

    pub fn is_reduced(&self) -> Result<bool> {
        Ok(self.first_cancelling_window()?.is_none())
    }

    /// Cancels windows, leftmost first, until none is left.
    pub fn reduce(&self) -> Result<LinkChain> {
        let mut c = self.clone();
        while let Some(i) = c.first_cancelling_window()? {
            let merged = c.alphas[i + 2]
                .compose(c.links[i + 1].map())
                .compose(&c.alphas[i + 1])
                .compose(c.links[i].map())
                .compose(&c.alphas[i]);
            let here = if i == 0 { c.source } else { c.links[i - 1].target() };
            debug_assert!(preserves_boundary(here, &merged), "merged window leaves Aut({here})");
            c.alphas.splice(i..i + 3, [merged]);
            c.links.drain(i..i + 2);
        }
        Ok(c)
    }

    fn require_reduced(&self) -> Result<()> {
        if self.is_reduced()? {
            Ok(())
        } else {
            Err(Error::ChainNotReduced)
        }
    }

    /// Number of links of a reduced chain.
    pub fn length(&self) -> Result<usize> {
        self.require_reduced()?;
        Ok(self.links.len())
    }

    /// The unique proper base point of the composite, on the source.
    pub fn predicted_base_point(&self) -> Result<Option<BoundaryPoint>> {
        self.require_reduced()?;
        let Some(first) = self.links.first() else {
            return Ok(None);
        };
        let k = self.alphas[0].field().clone();
        let back = self.alphas[0].inverse();
        let pos = match first.kind() {
            LinkKind::I | LinkKind::II => first.base_position().cloned().expect("links of type I and II have bases"),
            LinkKind::III => {
                let second = self.links.get(1).ok_or_else(|| Error::Unsupported("III as the only link".into()))?;
                let on_p2 = act_on_line(Completion::P2, &self.alphas[1].inverse(), second.base_position().unwrap())?;
                lift_to_f1(&k, &on_p2)?
            }
        };
        let pos = act_on_line(self.source, &back, &pos)?;
        Ok(Some(BoundaryPoint::on_line(self.source, &k, pos)))
    }

    pub fn to_json(&self) -> Value {
        let iso = |a: &PlaneAutomorphism| json!([a.f().to_string(), a.g().to_string()]);
        json!({
            "source": self.source.to_string(),
            "target": self.target().to_string(),
            "completions": self.completions().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            "isomorphisms": self.alphas.iter().map(iso).collect::<Vec<_>>(),
            "links": self.links.iter().map(ElementaryLink::to_json).collect::<Vec<_>>(),
            "length": self.links.len().to_string(),
        })
    }
}

impl fmt::Display for LinkChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.source)?;
        for l in &self.links {
            let tag = if l.kind() == LinkKind::II {
                if l.is_ascending() {
                    "II+"
                } else {
                    "II-"
                }
            } else {
                l.kind().label()
            };
            write!(f, " -{tag}-> {}", l.target())?;
        }
        Ok(())
    }
}

/// Whether `second ∘ alpha ∘ first` is an isomorphism of completions.
fn window_cancels(first: &ElementaryLink, alpha: &PlaneAutomorphism, second: &ElementaryLink) -> Result<bool> {
    let mid = first.target();
    Ok(match (first.kind(), second.kind()) {
        (LinkKind::I, LinkKind::III) => true,
        (LinkKind::III, LinkKind::I) => {
            let img = act_on_line(mid, alpha, &first.image_point().unwrap())?;
            Some(&img) == second.base_position()
        }
        (LinkKind::II, LinkKind::II) if first.is_descending() && second.is_ascending() => true,
        (LinkKind::II, LinkKind::II) if first.is_ascending() && second.is_descending() => {
            let img = act_on_line(mid, alpha, &first.image_point().unwrap())?;
            Some(&img) == second.base_position()
        }
        _ => false,
    })
}

/// The canonical chain of `(a x + P(y), b y + c)` with `deg P = n ≥ 2`:
/// up from `ℙ²` to `𝔽ₙ` through the corners, the map itself as an
/// automorphism of `𝔽ₙ`, and back down through `x/yⁿ = 0`.
fn triangular_chain(tau: &PlaneAutomorphism, n: u32) -> Result<LinkChain> {
    let k = tau.field().clone();
    let id = PlaneAutomorphism::identity(&k);
    let mut links = vec![ElementaryLink::type_one(&k, Position::Rational(k.zero()))?];
    for m in 1..n {
        links.push(ElementaryLink::ascending(&k, m)?);
    }
    for m in (2..=n).rev() {
        links.push(ElementaryLink::descending(&k, m, &k.zero())?);
    }
    links.push(ElementaryLink::type_three(&k));
    let mut alphas = vec![id.clone(); links.len() + 1];
    alphas[n as usize] = tau.clone();
    LinkChain::from_parts(Completion::P2, alphas, links)
}

/// A reduced chain from `ℙ²` to itself whose composite is `φ`.
pub fn automorphism_to_chain(phi: &PlaneAutomorphism) -> Result<LinkChain> {
    let k = phi.field().clone();
    let fac = jvdk_factorize(phi.f(), phi.g())?;
    let mut chain = LinkChain::identity(&k);
    // φ = f₀ ∘ f₁ ∘ … : the rightmost factor acts first.
    for t in fac.factors.iter().rev() {
        let piece = match t.kind {
            FactorKind::Affine => LinkChain::isomorphism(Completion::P2, t.map.clone())?,
            FactorKind::Triangular => {
                let n = t.map.triangular_parts().map(|p| p.p.degree().unwrap_or(0)).unwrap_or(0);
                if n < 2 {
                    LinkChain::isomorphism(Completion::P2, t.map.clone())?
                } else {
                    triangular_chain(&t.map, n as u32)?
                }
            }
        };
        chain = chain.then(&piece)?;
    }
    chain.reduce()
}

pub fn chain_to_automorphism(chain: &LinkChain) -> PlaneAutomorphism {
    chain.composite()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::unipoly::UniPoly;

    fn q() -> Field {
        Field::rationals()
    }

    fn tri(k: &Field, coeffs: &[i64]) -> PlaneAutomorphism {
        PlaneAutomorphism::triangular(&k.one(), &UniPoly::from_i64s(k, coeffs), &k.one(), &k.zero()).unwrap()
    }

    #[test]
    fn affine_maps_have_empty_chains() {
        let k = q();
        let a =
            PlaneAutomorphism::affine(&k, &k.from_i64(2), &k.one(), &k.zero(), &k.one(), &k.one(), &k.zero()).unwrap();
        let c = automorphism_to_chain(&a).unwrap();
        assert_eq!(c.length().unwrap(), 0);
        assert_eq!(c.predicted_base_point().unwrap(), None);
        assert_eq!(chain_to_automorphism(&c), a);
    }

    #[test]
    fn quadratic_shear_has_length_four() {
        let k = q();
        let phi = tri(&k, &[0, 0, 1]);
        let c = automorphism_to_chain(&phi).unwrap();
        assert_eq!(c.length().unwrap(), 4);
        assert_eq!(
            c.completions(),
            vec![Completion::P2, Completion::Fn(1), Completion::Fn(2), Completion::Fn(1), Completion::P2]
        );
        assert_eq!(chain_to_automorphism(&c), phi);
        let b = c.predicted_base_point().unwrap().unwrap();
        assert_eq!(b.position, Position::Rational(k.zero()));
    }

    #[test]
    fn reduced_words_add_lengths() {
        let k = q();
        let s = PlaneAutomorphism::swap(&k);
        let t = tri(&k, &[0, 0, 1]);
        let w = t.compose(&s).compose(&t);
        let c = automorphism_to_chain(&w).unwrap();
        assert_eq!(c.length().unwrap(), 8);
        assert_eq!(chain_to_automorphism(&c), w);
        assert_eq!(c.reduce().unwrap(), c);
    }

    #[test]
    fn non_reduced_words_collapse() {
        let k = q();
        // Two shears in a row are one shear: 4 links, not 8.
        let w = tri(&k, &[0, 0, 1]).compose(&tri(&k, &[0, 1, 2]));
        let c = automorphism_to_chain(&w).unwrap();
        assert_eq!(c.length().unwrap(), 4);
        // And a shear followed by its inverse is nothing.
        let t = tri(&k, &[0, 0, 1]);
        let c = automorphism_to_chain(&t.compose(&t.inverse())).unwrap();
        assert_eq!(c.length().unwrap(), 0);
    }

    #[test]
    fn concatenated_chains_reduce_by_windows() {
        let k = q();
        let t = triangular_chain(&tri(&k, &[0, 0, 1]), 2).unwrap();
        let t_inv = triangular_chain(&tri(&k, &[0, 0, -1]), 2).unwrap();
        let both = t.then(&t_inv).unwrap();
        assert!(matches!(both.length(), Err(Error::ChainNotReduced)));
        let r = both.reduce().unwrap();
        assert_eq!(r.length().unwrap(), 0);
        assert!(r.composite().is_identity());
    }

    #[test]
    fn base_point_is_a_common_zero_of_leading_forms() {
        let k = q();
        let s = PlaneAutomorphism::swap(&k);
        let phi = s.compose(&tri(&k, &[0, 0, 1])).compose(&s);
        let c = automorphism_to_chain(&phi).unwrap();
        let b = c.predicted_base_point().unwrap().unwrap();
        assert_eq!(b.position, Position::Special);
        let (fx, gx) = (phi.f().leading_form(), phi.g().leading_form());
        let d = phi.degree();
        for form in [fx, gx] {
            if form.degree() == Some(d) {
                assert!(form.eval(&k.zero(), &k.one()).is_zero());
            }
        }
    }

    mod props {
        use super::*;
        use crate::corpus::{random_tame, TameOptions};
        use proptest::prelude::*;
        use rand::SeedableRng;
        use rand_chacha::ChaCha8Rng;

        fn tame(seed: u64) -> PlaneAutomorphism {
            let opts = TameOptions { max_factors: 4, coeff_bound: 4, max_triangular_degree: 3, max_degree: 12 };
            random_tame(&q(), &mut ChaCha8Rng::seed_from_u64(seed), &opts)
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(24))]

            #[test]
            fn chain_round_trip(seed in any::<u64>()) {
                let phi = tame(seed);
                let chain = automorphism_to_chain(&phi).unwrap();
                prop_assert!(chain.is_reduced().unwrap());
                prop_assert_eq!(chain_to_automorphism(&chain), phi);
            }

            #[test]
            fn reduction_is_idempotent_and_sound(s1 in any::<u64>(), s2 in any::<u64>(), cancel in any::<bool>()) {
                let a = tame(s1);
                let b = if cancel { a.inverse().compose(&tame(s2)) } else { tame(s2) };
                let glued = automorphism_to_chain(&a).unwrap().then(&automorphism_to_chain(&b).unwrap()).unwrap();
                let once = glued.reduce().unwrap();
                prop_assert!(once.is_reduced().unwrap());
                prop_assert_eq!(once.composite(), glued.composite());
                let twice = once.reduce().unwrap();
                prop_assert_eq!(twice.length().unwrap(), once.length().unwrap());
                prop_assert_eq!(twice.composite(), once.composite());
            }
        }
    }
}
