//! Acceptance suite: one line per criterion, nonzero exit on any failure.
//!
//! Every check is exact. Where a criterion asks for an independent oracle,
//! the oracle is written here from scratch rather than calling the routine
//! under test.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use curveaut::automorphism::jvdk_factorize;
use curveaut::bipoly::{gcd, resultant_y};
use curveaut::classify::{classify, verify_invariance, Classification, Confidence, NormalForm};
use curveaut::completions::{
    automorphism_to_chain, boundary_profile, chain_to_automorphism, link_apply, BoundaryPoint, Completion,
    ElementaryLink, LinkChain, Position,
};
use curveaut::corpus::{normal_form_suite, random_affine, random_tame, random_triangular, TameOptions};
use curveaut::fence::{fence_symmetries, FenceSymmetries};
use curveaut::homog::{div_forms, gcd_forms, homogenize};
use curveaut::normalize::{normalize, NormalizationOutcome};
use curveaut::singularity::{height_at_origin, local_intersection, multiplicity_at_origin};
use curveaut::{BiPoly, Field, PlaneAutomorphism, Scalar, UniPoly};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn q() -> Field {
    Field::rationals()
}

fn fp(p: u64) -> Field {
    Field::prime(p).unwrap()
}

fn poly(k: &Field, t: &[(u32, u32, i64)]) -> BiPoly {
    BiPoly::from_i64s(k, t)
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn e<T: std::fmt::Display>(x: T) -> String {
    x.to_string()
}

// ---------------------------------------------------------------- 1

fn tame_round_trip() -> Outcome {
    let k = q();
    let mut r = rng(1);
    let opts = TameOptions::default();
    let mut max_deg = 0;
    for i in 0..100 {
        let phi = random_tame(&k, &mut r, &opts);
        max_deg = max_deg.max(phi.degree());
        let fac = jvdk_factorize(phi.f(), phi.g()).map_err(e)?;
        ensure!(fac.compose_all(&k) == phi, "map {i}: factors do not recompose to {phi}");
        let chain = automorphism_to_chain(&phi).map_err(e)?;
        ensure!(chain_to_automorphism(&chain) == phi, "map {i}: chain does not recompose to {phi}");
    }
    Ok(format!("100 maps, degree up to {max_deg}"))
}

// ---------------------------------------------------------------- 2

/// An affine map outside the triangular subgroup: its second component
/// involves `x`.
fn proper_affine(k: &Field, r: &mut ChaCha8Rng) -> PlaneAutomorphism {
    loop {
        let a = random_affine(k, r, 9);
        if !a.g().coeff(1, 0).is_zero() {
            return a;
        }
    }
}

/// Alternating word in proper affine maps and triangular maps of degree
/// at least 2, with the triangular degrees. Such words are reduced in the
/// amalgamated product, so the chain length is the sum of `2 deg`.
fn reduced_word(k: &Field, r: &mut ChaCha8Rng) -> Vec<(PlaneAutomorphism, u32)> {
    let n = r.gen_range(1..=5);
    let mut affine_next = r.gen_bool(0.5);
    let mut w = Vec::new();
    for _ in 0..n {
        if affine_next {
            w.push((proper_affine(k, r), 0));
        } else {
            let d = r.gen_range(2..=4);
            w.push((random_triangular(k, r, 9, d), d as u32));
        }
        affine_next = !affine_next;
    }
    w
}

fn word_map(k: &Field, w: &[(PlaneAutomorphism, u32)]) -> PlaneAutomorphism {
    w.iter().fold(PlaneAutomorphism::identity(k), |acc, (g, _)| acc.compose(g))
}

fn base_point_annihilates(phi: &PlaneAutomorphism, b: &BoundaryPoint) -> Result<(), String> {
    let k = phi.field();
    ensure!(b.completion == Completion::P2, "base point {b:?} is not on P2");
    let d = phi.degree();
    let comps = [
        homogenize(phi.f(), d).map_err(e)?,
        homogenize(phi.g(), d).map_err(e)?,
        homogenize(&BiPoly::one(k), d).map_err(e)?,
    ];
    let common = gcd_forms(&comps).map_err(e)?;
    let (u, v) = match &b.position {
        Position::Rational(t) => (k.one(), t.clone()),
        Position::Special => (k.zero(), k.one()),
        Position::Orbit(m) => return Err(format!("irrational base point {m}")),
    };
    for c in &comps {
        let c = div_forms(c, &common).map_err(e)?;
        ensure!(c.eval(&u, &v, &k.zero()).is_zero(), "component does not vanish at the base point of {phi}");
    }
    Ok(())
}

fn reduced_chains() -> Outcome {
    let k = q();
    let mut r = rng(2);
    let (mut words, mut splits, mut based) = (0, 0, 0);
    while words < 100 {
        let w = reduced_word(&k, &mut r);
        let phi = word_map(&k, &w);
        if phi.degree() > 64 {
            continue;
        }
        words += 1;
        let expected: u32 = w.iter().map(|(_, d)| 2 * d).sum();
        let chain = automorphism_to_chain(&phi).map_err(e)?;
        let len = chain.length().map_err(e)?;
        ensure!(len as u32 == expected, "word {words}: length {len}, expected {expected}");
        ensure!(chain.reduce().map_err(e)? == chain, "word {words}: reduce is not idempotent");
        if len >= 1 {
            based += 1;
            let b = chain.predicted_base_point().map_err(e)?.ok_or("no base point on a nonempty chain")?;
            base_point_annihilates(&phi, &b)?;
        }
        for s in 1..w.len() {
            splits += 1;
            let (w1, w2) = w.split_at(s);
            let (c1, c2) = (
                automorphism_to_chain(&word_map(&k, w1)).map_err(e)?,
                automorphism_to_chain(&word_map(&k, w2)).map_err(e)?,
            );
            let (l1, l2) = (c1.length().map_err(e)?, c2.length().map_err(e)?);
            ensure!(l1 + l2 == len, "word {words} split at {s}: {l1} + {l2} != {len}");
            // w = w1 ∘ w2, so the chain of w2 runs first.
            let glued = c2.then(&c1).map_err(e)?;
            ensure!(glued.is_reduced().map_err(e)?, "word {words} split at {s}: glued chain has a cancelling window");
            ensure!(glued.composite() == phi, "word {words} split at {s}: glued chain has the wrong composite");
            let once = glued.reduce().map_err(e)?;
            ensure!(once.reduce().map_err(e)? == once, "word {words} split at {s}: reduce is not idempotent");
        }
    }
    Ok(format!("{words} words, {splits} splits, {based} base points checked"))
}

// ---------------------------------------------------------------- 3

/// Random `(a x + P(y), b y + c)` with `deg P ≤ n`; returns it with the
/// coefficient of `yⁿ` in `P` and `b`.
fn jonquieres(k: &Field, r: &mut ChaCha8Rng, n: u32) -> (PlaneAutomorphism, Scalar, Scalar) {
    let unit = |r: &mut ChaCha8Rng| loop {
        let c = k.from_i64(r.gen_range(-9..=9));
        if !c.is_zero() {
            return c;
        }
    };
    let p: Vec<Scalar> = (0..=n).map(|_| k.from_i64(r.gen_range(-9..=9))).collect();
    let top = p[n as usize].clone();
    let (a, b, c) = (unit(r), unit(r), k.from_i64(r.gen_range(-9..=9)));
    let map = PlaneAutomorphism::triangular(&a, &UniPoly::new(k.clone(), p), &b, &c).unwrap();
    (map, top, b)
}

/// Membership in the boundary-preserving group of `x`, read off the
/// coefficients directly.
fn preserves(x: Completion, phi: &PlaneAutomorphism) -> bool {
    let (f, g) = (phi.f(), phi.g());
    match x {
        Completion::P2 => f.degree() == Some(1) && g.degree() == Some(1),
        Completion::Fn(n) => {
            g.degree() == Some(1)
                && g.coeff(1, 0).is_zero()
                && !f.coeff(1, 0).is_zero()
                && f.terms().all(|(m, _)| *m == (1, 0) || (m.0 == 0 && m.1 <= n))
        }
    }
}

/// Where the affine map sends `(1:0:0)`.
fn image_of_x_direction(k: &Field, a: &PlaneAutomorphism) -> Position {
    let (a11, a21) = (a.f().coeff(1, 0), a.g().coeff(1, 0));
    if a11.is_zero() {
        Position::Special
    } else {
        Position::Rational(k.div(&a21, &a11).unwrap())
    }
}

fn other_position(k: &Field, r: &mut ChaCha8Rng, avoid: &Position) -> Position {
    loop {
        let p = if r.gen_bool(0.2) { Position::Special } else { Position::Rational(k.from_i64(r.gen_range(-9..=9))) };
        if &p != avoid {
            return p;
        }
    }
}

struct Window {
    label: &'static str,
    chain: LinkChain,
    cancels: bool,
}

fn windows(k: &Field) -> Vec<Window> {
    let mut r = rng(3);
    let mut out = Vec::new();
    let id = || PlaneAutomorphism::identity(k);
    let pos = |r: &mut ChaCha8Rng| {
        if r.gen_bool(0.2) {
            Position::Special
        } else {
            Position::Rational(k.from_i64(r.gen_range(-9..=9)))
        }
    };
    // I then III between P2 endpoints: always an isomorphism.
    for _ in 0..8 {
        let (alpha, ..) = jonquieres(k, &mut r, 1);
        let links = vec![ElementaryLink::type_one(k, pos(&mut r)).unwrap(), ElementaryLink::type_three(k)];
        let alphas = vec![random_affine(k, &mut r, 9), alpha, random_affine(k, &mut r, 9)];
        out.push(Window {
            label: "I.III",
            chain: LinkChain::from_parts(Completion::P2, alphas, links).unwrap(),
            cancels: true,
        });
    }
    // III, alpha, I: cancels iff alpha sends the contracted point to the base.
    for i in 0..18 {
        let alpha = random_affine(k, &mut r, 9);
        let img = image_of_x_direction(k, &alpha);
        let cancels = i < 8;
        let base = if cancels { img } else { other_position(k, &mut r, &img) };
        let links = vec![ElementaryLink::type_three(k), ElementaryLink::type_one(k, base).unwrap()];
        let alphas = vec![jonquieres(k, &mut r, 1).0, alpha, jonquieres(k, &mut r, 1).0];
        out.push(Window {
            label: "III.I",
            chain: LinkChain::from_parts(Completion::Fn(1), alphas, links).unwrap(),
            cancels,
        });
    }
    // Ascend from Fn, then descend at a point of F(n+1): cancels iff alpha
    // sends the image of the corner, x/y^(n+1) = 0, to that point.
    for i in 0..17 {
        let n = 1 + i % 3;
        let (alpha, top, b) = jonquieres(k, &mut r, n + 1);
        let img = k.div(&top, &k.pow(&b, (n + 1) as u64)).unwrap();
        let cancels = i < 7;
        let a = if cancels {
            img
        } else {
            loop {
                let a = k.from_i64(r.gen_range(-9..=9));
                if a != img {
                    break a;
                }
            }
        };
        let links = vec![ElementaryLink::ascending(k, n).unwrap(), ElementaryLink::descending(k, n + 1, &a).unwrap()];
        let alphas = vec![jonquieres(k, &mut r, n).0, alpha, jonquieres(k, &mut r, n).0];
        out.push(Window {
            label: "II+.II-",
            chain: LinkChain::from_parts(Completion::Fn(n), alphas, links).unwrap(),
            cancels,
        });
    }
    // Descend from F(n+1) to Fn and ascend back: always an isomorphism.
    for i in 0..7 {
        let n = 1 + i % 3;
        let a = k.from_i64(r.gen_range(-9..=9));
        let links = vec![ElementaryLink::descending(k, n + 1, &a).unwrap(), ElementaryLink::ascending(k, n).unwrap()];
        let alphas = vec![jonquieres(k, &mut r, n + 1).0, jonquieres(k, &mut r, n).0, jonquieres(k, &mut r, n + 1).0];
        out.push(Window {
            label: "II-.II+",
            chain: LinkChain::from_parts(Completion::Fn(n + 1), alphas, links).unwrap(),
            cancels: true,
        });
    }
    // Windows whose endpoints differ can never cancel.
    for _ in 0..5 {
        let links = vec![ElementaryLink::type_one(k, pos(&mut r)).unwrap(), ElementaryLink::ascending(k, 1).unwrap()];
        let alphas = vec![random_affine(k, &mut r, 9), jonquieres(k, &mut r, 1).0, id()];
        out.push(Window {
            label: "I.II+",
            chain: LinkChain::from_parts(Completion::P2, alphas, links).unwrap(),
            cancels: false,
        });
    }
    for i in 0..5 {
        let n = 3 + i % 2;
        let (a, b) = (k.from_i64(r.gen_range(-9..=9)), k.from_i64(r.gen_range(-9..=9)));
        let links =
            vec![ElementaryLink::descending(k, n, &a).unwrap(), ElementaryLink::descending(k, n - 1, &b).unwrap()];
        let alphas = vec![id(), jonquieres(k, &mut r, n - 1).0, id()];
        out.push(Window {
            label: "II-.II-",
            chain: LinkChain::from_parts(Completion::Fn(n), alphas, links).unwrap(),
            cancels: false,
        });
    }
    out
}

fn window_cancellations() -> Outcome {
    let k = q();
    let all = windows(&k);
    let (yes, no) = (all.iter().filter(|w| w.cancels).count(), all.iter().filter(|w| !w.cancels).count());
    ensure!(yes == 30 && no == 30, "suite has {yes} cancelling and {no} non-cancelling windows");
    for (i, w) in all.iter().enumerate() {
        let phi = w.chain.composite();
        let red = w.chain.reduce().map_err(e)?;
        ensure!(red.composite() == phi, "window {i} ({}): reduction changed the composite", w.label);
        let len = red.length().map_err(e)?;
        let iso = w.chain.source() == w.chain.target() && preserves(w.chain.source(), &phi);
        ensure!(iso == w.cancels, "window {i} ({}): composite isomorphism is {iso}, expected {}", w.label, w.cancels);
        let expected = if w.cancels { 0 } else { 2 };
        ensure!(len == expected, "window {i} ({}): reduced to {len} links, expected {expected}", w.label);
    }
    Ok("30 cancelling, 30 non-cancelling".into())
}

// ---------------------------------------------------------------- 4

fn slope_chart(f: &BiPoly, m: u32) -> BiPoly {
    f.map_monomials(|i, j| (i + j - m, j))
}

fn vertical_chart(f: &BiPoly, m: u32) -> BiPoly {
    f.map_monomials(|i, j| (i, i + j - m))
}

/// `f(0, y)` as a polynomial in `y`.
fn on_axis(f: &BiPoly) -> UniPoly {
    let k = f.field();
    let d = f.deg_y().unwrap_or(0);
    UniPoly::new(k.clone(), (0..=d).map(|j| f.coeff(0, j)).collect())
}

/// Rational roots of `p` when every irrational factor is simple; `None`
/// when a repeated irrational factor would need an extension.
fn rational_roots_if_split_enough(p: &UniPoly) -> Option<Vec<(Scalar, usize)>> {
    let roots = p.roots().ok()?;
    let mut rest = p.clone();
    for (t, mult) in &roots {
        for _ in 0..*mult {
            rest = rest.exact_div(&UniPoly::linear_root(p.field(), t)).ok()?;
        }
    }
    rest.is_squarefree().ok()?.then_some(roots)
}

/// Height by explicit blow-ups at rational points. Points over simple
/// irrational tangent directions are smooth on the strict transform.
fn height_oracle(f: &BiPoly) -> Option<u32> {
    let m = f.low_degree()?;
    if m <= 1 {
        return Some(0);
    }
    let k = f.field().clone();
    let f1 = slope_chart(f, m);
    let mut best = 0;
    for (t, _) in rational_roots_if_split_enough(&on_axis(&f1))? {
        best = best.max(height_oracle(&f1.translate(&k.zero(), &t))?);
    }
    if f.coeff(0, m).is_zero() {
        best = best.max(height_oracle(&vertical_chart(f, m))?);
    }
    Some(best + 1)
}

/// `I(f, g)` at the origin by Noether's formula: the sum of products of
/// multiplicities over all common infinitely near points.
fn noether_oracle(f: &BiPoly, g: &BiPoly, depth: u32) -> Option<u32> {
    if !f.constant_term().is_zero() || !g.constant_term().is_zero() {
        return Some(0);
    }
    if depth > 64 {
        return None;
    }
    let k = f.field().clone();
    let (m, n) = (f.low_degree()?, g.low_degree()?);
    let (f1, g1) = (slope_chart(f, m), slope_chart(g, n));
    let mut total = m * n;
    let common = on_axis(&f1).gcd(&on_axis(&g1)).ok()?;
    if !common.is_constant() {
        let roots = common.roots().ok()?;
        let found: usize = roots.iter().map(|(_, m)| m).sum();
        if found != common.degree()? {
            return None;
        }
        for (t, _) in roots {
            total += noether_oracle(&f1.translate(&k.zero(), &t), &g1.translate(&k.zero(), &t), depth + 1)?;
        }
    }
    if f.coeff(0, m).is_zero() && g.coeff(0, n).is_zero() {
        total += noether_oracle(&vertical_chart(f, m), &vertical_chart(g, n), depth + 1)?;
    }
    Some(total)
}

/// `ord_x Res_y` after a shear `x ↦ x + c y` that makes both curves monic
/// in `y` and leaves the origin as the only common point on `x = 0`.
fn resultant_oracle(f: &BiPoly, g: &BiPoly) -> Option<u32> {
    let k = f.field().clone();
    for c in 0..32 {
        let sx = BiPoly::from_terms(&k, [(1, 0, k.one()), (0, 1, k.from_i64(c))]);
        let (fs, gs) = (f.compose(&sx, &BiPoly::y(&k)), g.compose(&sx, &BiPoly::y(&k)));
        if fs.deg_y() != fs.degree() || gs.deg_y() != gs.degree() {
            continue;
        }
        let h = on_axis(&fs).gcd(&on_axis(&gs)).ok()?;
        if h.order() != h.degree() {
            continue;
        }
        return resultant_y(&fs, &gs).ok()?.order().map(|o| o as u32);
    }
    None
}

struct Germ {
    name: String,
    f: BiPoly,
    mult: u32,
    height: u32,
}

/// Name, terms, multiplicity, height.
type CatalogEntry = (&'static str, Vec<(u32, u32, i64)>, u32, u32);

fn catalog(k: &Field) -> Vec<Germ> {
    let base: Vec<CatalogEntry> = vec![
        ("smooth line", vec![(0, 1, 1)], 1, 0),
        ("smooth parabola", vec![(0, 1, 1), (2, 0, -1)], 1, 0),
        ("node", vec![(0, 2, 1), (2, 0, -1), (3, 0, -1)], 2, 1),
        ("cusp", vec![(0, 2, 1), (3, 0, -1)], 2, 1),
        ("tacnode", vec![(0, 2, 1), (4, 0, -1)], 2, 2),
        ("ramphoid cusp", vec![(0, 2, 1), (5, 0, -1)], 2, 2),
        ("ordinary triple point", vec![(2, 1, 1), (1, 2, -1), (0, 4, 1)], 3, 1),
        ("triple point, conjugate tangents", vec![(2, 1, 1), (0, 3, 1)], 3, 1),
        ("E6", vec![(0, 3, 1), (4, 0, -1)], 3, 1),
        ("E8", vec![(0, 3, 1), (5, 0, -1)], 3, 2),
        ("A5", vec![(0, 2, 1), (6, 0, -1)], 2, 3),
        ("A6", vec![(0, 2, 1), (7, 0, -1)], 2, 3),
        ("y^4 = x^5", vec![(0, 4, 1), (5, 0, -1)], 4, 1),
        ("y^3 = x^7", vec![(0, 3, 1), (7, 0, -1)], 3, 2),
        ("line and cubic contact", vec![(0, 2, 1), (3, 1, -1)], 2, 3),
        ("D5", vec![(2, 1, 1), (0, 4, 1)], 3, 1),
        ("y^4 = x^6", vec![(0, 4, 1), (6, 0, -1)], 4, 3),
    ];
    let mut out: Vec<Germ> =
        base.iter().map(|(n, t, m, h)| Germ { name: n.to_string(), f: poly(k, t), mult: *m, height: *h }).collect();
    // Copies: a shear tangent to the identity, and a change of coordinates
    // moving the germ to (1, -2), analysed after translating back.
    let (x, y) = (BiPoly::x(k), BiPoly::y(k));
    let shear = (&x + &y.pow(2), y.clone());
    let moved_x = &(&x - &BiPoly::one(k)) + &(&y + &BiPoly::constant(k, k.from_i64(2))).scale(&k.from_i64(3));
    let moved_y = &(&y + &BiPoly::constant(k, k.from_i64(2))) - &(&x - &BiPoly::one(k)).pow(2);
    for idx in [2usize, 3, 4, 5, 6, 8] {
        let g = &out[idx];
        let (name, f, mult, height) = (g.name.clone(), g.f.clone(), g.mult, g.height);
        out.push(Germ { name: format!("{name}, sheared"), f: f.compose(&shear.0, &shear.1), mult, height });
        let copy = f.compose(&moved_x, &moved_y);
        ensure_at(&copy, k);
        out.push(Germ { name: format!("{name}, moved"), f: copy.translate(&k.one(), &k.from_i64(-2)), mult, height });
    }
    out
}

fn ensure_at(copy: &BiPoly, k: &Field) {
    assert!(copy.eval(&k.one(), &k.from_i64(-2)).is_zero(), "moved copy misses (1, -2)");
}

fn singularity_oracles() -> Outcome {
    let k = q();
    let germs = catalog(&k);
    ensure!(germs.len() >= 20, "catalog has only {} germs", germs.len());
    for g in &germs {
        let m = multiplicity_at_origin(&g.f).map_err(e)?;
        ensure!(m == g.mult, "{}: multiplicity {m}, expected {}", g.name, g.mult);
        let h = height_at_origin(&g.f).map_err(e)?;
        let oracle = height_oracle(&g.f).ok_or(format!("{}: height oracle needs an extension", g.name))?;
        ensure!(oracle == g.height, "{}: oracle height {oracle}, catalog says {}", g.name, g.height);
        ensure!(h == g.height, "{}: height {h}, expected {}", g.name, g.height);
    }
    let (mut pairs, mut noether, mut skipped) = (0, 0, 0);
    for (i, a) in germs.iter().enumerate() {
        for b in &germs[i + 1..] {
            let common = gcd(&a.f, &b.f).map_err(e)?;
            if !common.is_constant() && common.constant_term().is_zero() {
                skipped += 1;
                continue;
            }
            pairs += 1;
            let which = format!("{} / {}", a.name, b.name);
            let i_ab = local_intersection(&a.f, &b.f).map_err(|x| format!("{which}: {x}"))?;
            let res = resultant_oracle(&a.f, &b.f).ok_or(format!("{which}: no admissible shear"))?;
            ensure!(i_ab == res, "{which}: intersection {i_ab}, resultant order {res}");
            if let Some(n) = noether_oracle(&a.f, &b.f, 0) {
                noether += 1;
                ensure!(i_ab == n, "{which}: intersection {i_ab}, Noether sum {n}");
            }
            let bound = a.mult * b.mult;
            ensure!(i_ab >= bound, "{which}: {i_ab} < {bound}");
            let cones = gcd(&a.f.lowest_form(), &b.f.lowest_form()).map_err(e)?;
            ensure!(
                (i_ab == bound) == cones.is_constant(),
                "{which}: equality {} but shared tangent {}",
                i_ab == bound,
                !cones.is_constant()
            );
        }
    }
    Ok(format!(
        "{} germs, {pairs} pairs ({noether} also by Noether's formula), {skipped} pairs with a common component skipped",
        germs.len()
    ))
}

// ---------------------------------------------------------------- 5

fn ascending_descent() -> Outcome {
    let k = q();
    let mut r = rng(5);
    let shapes = [(1u32, 2u32), (1, 3), (1, 5), (2, 3), (2, 4), (2, 5), (2, 7), (3, 5), (3, 6), (4, 7)];
    let mut steps = 0;
    for (n, m) in shapes {
        // c x = b(y) with deg b = m > n: through the corner of Fn with
        // contact m - n against the negative section.
        let mut t = vec![(1, 0, r.gen_range(1..=9)), (0, m, 1)];
        for j in 0..m {
            t.push((0, j, r.gen_range(-9..=9)));
        }
        let f = poly(&k, &t);
        let mut here = n;
        let mut contact = boundary_profile(&f, Completion::Fn(here))
            .map_err(e)?
            .corner()
            .and_then(|c| c.intersection_section)
            .ok_or(format!("{f} misses the corner of F{n}"))?;
        ensure!(contact == m - n, "{f} on F{n}: contact {contact}, expected {}", m - n);
        while contact > 0 {
            let g = link_apply(&ElementaryLink::ascending(&k, here).map_err(e)?, &f).map_err(e)?;
            here += 1;
            let pr = boundary_profile(&g, Completion::Fn(here)).map_err(e)?;
            let next = pr.corner().and_then(|c| c.intersection_section).unwrap_or(0);
            ensure!(next + 1 == contact, "{f} on F{here}: contact went from {contact} to {next}");
            contact = next;
            steps += 1;
        }
        ensure!(here == m, "{f}: cleared on F{here}, expected F{m}");
    }
    Ok(format!("10 curves, {steps} ascending steps"))
}

// ---------------------------------------------------------------- 6

fn check_generators(f: &BiPoly, c: &Classification, seed: u64) -> Result<usize, String> {
    let mut r = rng(seed);
    let mut n = 0;
    for g in &c.generators {
        for m in g.members(&mut r, 10).map_err(e)? {
            ensure!(verify_invariance(f, &m).is_some(), "{}: member {m} of {} moves the curve", f, g.family.name());
            n += 1;
        }
    }
    Ok(n)
}

fn expected_forms() -> Vec<(&'static str, BiPoly, NormalForm)> {
    let (k, k3, k2) = (q(), fp(3), fp(2));
    vec![
        ("x = 0", poly(&k, &[(1, 0, 1)]), NormalForm::Line),
        (
            "x^2 = 2y^3",
            poly(&k, &[(2, 0, 1), (0, 3, -2)]),
            NormalForm::QuasiHomogeneous { a: 3, b: 2, lambda: k.from_i64(2) },
        ),
        (
            "xy = 1",
            poly(&k, &[(1, 1, 1), (0, 0, -1)]),
            NormalForm::MonomialHyperbola { a: 1, b: 1, lambda: k.one(), swap: true },
        ),
        (
            "xy^2 = 1",
            poly(&k, &[(1, 2, 1), (0, 0, -1)]),
            NormalForm::MonomialHyperbola { a: 2, b: 1, lambda: k.one(), swap: false },
        ),
        (
            "x^2y^3 = 1",
            poly(&k, &[(2, 3, 1), (0, 0, -1)]),
            NormalForm::MonomialHyperbola { a: 3, b: 2, lambda: k.one(), swap: false },
        ),
        (
            "x^2 + y^2 = 1 over Q",
            poly(&k, &[(2, 0, 1), (0, 2, 1), (0, 0, -1)]),
            NormalForm::AnisotropicConic { lambda: k.one(), nu: k.one() },
        ),
        (
            "x^2 + y^2 = 1 over F3",
            poly(&k3, &[(2, 0, 1), (0, 2, 1), (0, 0, -1)]),
            NormalForm::AnisotropicConic { lambda: k3.one(), nu: k3.one() },
        ),
        (
            "x^2 + xy + y^2 = 1 over F2",
            poly(&k2, &[(2, 0, 1), (1, 1, 1), (0, 2, 1), (0, 0, 1)]),
            NormalForm::Char2Conic { mu: k2.one() },
        ),
    ]
}

fn normal_form_reproduction() -> Outcome {
    let mut members = 0;
    for (i, (name, f, want)) in expected_forms().into_iter().enumerate() {
        let c = classify(&f).map_err(|x| format!("{name}: {x}"))?;
        ensure!(c.form == want, "{name}: got {:?}, expected {want:?}", c.form);
        ensure!(c.confidence == Confidence::Proved, "{name}: not proved");
        ensure!(!c.generators.is_empty(), "{name}: no generators");
        if want == NormalForm::Line {
            ensure!(
                c.generators.iter().any(|g| g.family.name() == "line-stabilizer"),
                "{name}: missing the line stabilizer family"
            );
        }
        members += check_generators(&f, &c, 60 + i as u64)?;
    }
    // The whole suite over small prime fields, every parameter enumerated.
    for p in [2u64, 3, 5, 7] {
        let k = fp(p);
        for (j, f) in normal_form_suite(&k).into_iter().enumerate() {
            let c = classify(&f).map_err(|x| format!("{f} over F{p}: {x}"))?;
            ensure!(
                c.confidence == Confidence::Proved && !matches!(c.form, NormalForm::FiniteCase { .. }),
                "{f} over F{p}: {:?}",
                c.form
            );
            members += check_generators(&f, &c, 600 + 10 * p + j as u64)?;
        }
    }
    Ok(format!("8 forms reproduced, {members} generator members verified"))
}

// ---------------------------------------------------------------- 7

/// The affine map agreeing with `point` at the origin and the two unit
/// vectors.
fn affine_through(k: &Field, point: impl Fn(&Scalar, &Scalar) -> (Scalar, Scalar)) -> Option<PlaneAutomorphism> {
    let (o, z) = (k.one(), k.zero());
    let (p0, p1, p2) = (point(&z, &z), point(&o, &z), point(&z, &o));
    let d = |a: &Scalar, b: &Scalar| k.sub(a, b);
    PlaneAutomorphism::affine(k, &d(&p1.0, &p0.0), &d(&p2.0, &p0.0), &d(&p1.1, &p0.1), &d(&p2.1, &p0.1), &p0.0, &p0.1)
        .ok()
}

fn recovery() -> Outcome {
    let mut runs = 0;
    for (i, (name, base, _)) in expected_forms().into_iter().enumerate() {
        let k = base.field().clone();
        let c0 = classify(&base).map_err(e)?;
        let eq0 = c0.form.equation(&k).unwrap();
        let mut r = rng(70 + i as u64);
        let opts = TameOptions { max_degree: 8, ..TameOptions::default() };
        for run in 0..50 {
            let psi = random_tame(&k, &mut r, &opts);
            let f = psi.pushforward(&base);
            let c1 = classify(&f).map_err(|x| format!("{name}, run {run}: {x}"))?;
            ensure!(c1.confidence == Confidence::Proved, "{name}, run {run}: {:?} with MatchedNone", c1.form);
            ensure!(c1.tag() == c0.tag(), "{name}, run {run}: {} instead of {}", c1.tag(), c0.tag());
            ensure!(
                c1.form.exponents() == c0.form.exponents(),
                "{name}, run {run}: exponents {:?}",
                c1.form.exponents()
            );
            let eq1 = c1.form.equation(&k).unwrap();
            ensure!(
                c1.conjugator.pullback(&eq1).ratio_to(&f).is_some(),
                "{name}, run {run}: conjugator does not reach the normal form"
            );
            // Parameters agree when some affine map carries one normal form to
            // the other; c0 ∘ ψ⁻¹ ∘ c1⁻¹ is the candidate, read off at three points.
            let cand = affine_through(&k, |x, y| {
                let (u, v) = c1.conjugator.apply_inverse(x, y);
                let (u, v) = psi.apply_inverse(&u, &v);
                c0.conjugator.apply(&u, &v)
            })
            .ok_or(format!("{name}, run {run}: degenerate certificate"))?;
            ensure!(
                cand.pullback(&eq0).ratio_to(&eq1).is_some(),
                "{name}, run {run}: {:?} is not affinely equivalent to {:?}",
                c1.form,
                c0.form
            );
            runs += 1;
        }
    }
    Ok(format!("{runs} runs, all recovered"))
}

// ---------------------------------------------------------------- 8

/// All `(a, b, c)` with `F(a x + b) = c F(x)` for `F` split with distinct
/// rational roots, found by sending two roots to every ordered pair.
fn fence_oracle(f: &UniPoly) -> Vec<(Scalar, Scalar, Scalar)> {
    let k = f.field().clone();
    let roots: Vec<Scalar> = f.roots().unwrap().into_iter().map(|(t, _)| t).collect();
    assert_eq!(roots.len(), f.degree().unwrap());
    let mut out = Vec::new();
    for s0 in &roots {
        for s1 in &roots {
            if s0 == s1 {
                continue;
            }
            // The candidate x ↦ a x + b sends r0 to s0 and r1 to s1.
            let a = k.div(&k.sub(s0, s1), &k.sub(&roots[0], &roots[1])).unwrap();
            let b = k.sub(s0, &k.mul(&a, &roots[0]));
            let sub = f.compose(&UniPoly::new(k.clone(), vec![b.clone(), a.clone()]));
            let c = k.div(&sub.leading(), &f.leading()).unwrap();
            if sub == f.scale(&c) && !out.iter().any(|(a2, b2, _)| a2 == &a && b2 == &b) {
                out.push((a, b, c));
            }
        }
    }
    out.sort();
    out
}

fn affinely_equal(k: &Field, e1: &UniPoly, e2: &UniPoly) -> bool {
    if e1.degree() != e2.degree() {
        return false;
    }
    let (r1, r2) = (e1.roots().unwrap(), e2.roots().unwrap());
    if r1.len() < 2 {
        return true;
    }
    r2.iter().any(|(s0, _)| {
        r2.iter().any(|(s1, _)| {
            if s0 == s1 {
                return false;
            }
            let a = k.div(&k.sub(s0, s1), &k.sub(&r1[0].0, &r1[1].0)).unwrap();
            let b = k.sub(s0, &k.mul(&a, &r1[0].0));
            // e2(a x + b) vanishes on r1, so compare up to scalar.
            let sub = e2.compose(&UniPoly::new(k.clone(), vec![b, a]));
            let c = k.div(&sub.leading(), &e1.leading()).unwrap();
            sub == e1.scale(&c)
        })
    })
}

fn fence_case() -> Outcome {
    let k = q();
    let fences =
        [UniPoly::from_i64s(&k, &[0, 1]), UniPoly::from_i64s(&k, &[0, -1, 1]), UniPoly::from_i64s(&k, &[0, -1, 0, 1])];
    let mut r = rng(8);
    let opts = TameOptions { max_degree: 8, ..TameOptions::default() };
    let mut shifts = 0;
    for f in &fences {
        match fence_symmetries(f).map_err(e)? {
            FenceSymmetries::Family { f0, f1 } => {
                ensure!(f.degree() == Some(1) && f0 == f.coeff(0) && f1 == f.coeff(1), "{f}: wrong family");
            }
            FenceSymmetries::Finite(sols) => {
                let mut sols = sols;
                sols.sort();
                ensure!(sols == fence_oracle(f), "{f}: solutions {sols:?} differ from the root-permutation oracle");
            }
        }
        let base = BiPoly::from_uni_x(f);
        for run in 0..20 {
            let psi = random_tame(&k, &mut r, &opts);
            let input = psi.pushforward(&base);
            let norm = normalize(&input).map_err(e)?;
            let NormalizationOutcome::Fence { conjugator, equation } = &norm.outcome else {
                return Err(format!("{f}, run {run}: outcome {}", norm.outcome.tag()));
            };
            let eq = BiPoly::from_uni_x(equation);
            ensure!(
                conjugator.pullback(&eq).ratio_to(&input).is_some(),
                "{f}, run {run}: conjugator does not reach {equation}"
            );
            ensure!(affinely_equal(&k, f, equation), "{f}, run {run}: {equation} is not an affine image");
            for _ in 0..10 {
                let d = r.gen_range(0..=3);
                let p = UniPoly::new(k.clone(), (0..=d).map(|_| k.from_i64(r.gen_range(-9..=9))).collect());
                let shift = PlaneAutomorphism::triangular(&k.one(), &p, &k.one(), &k.zero()).unwrap();
                // The shift is triangular in y; swap it into y ↦ y + P(x).
                let s = PlaneAutomorphism::swap(&k).compose(&shift).compose(&PlaneAutomorphism::swap(&k));
                ensure!(verify_invariance(&eq, &s) == Some(k.one()), "{equation}: moved by {s}");
                ensure!(verify_invariance(&base, &s) == Some(k.one()), "{f}: moved by {s}");
                shifts += 1;
            }
        }
    }
    // Spot values.
    let sols = |f: &UniPoly| match fence_symmetries(f).unwrap() {
        FenceSymmetries::Finite(v) => v.into_iter().map(|(a, b, _)| (a, b)).collect::<Vec<_>>(),
        FenceSymmetries::Family { .. } => Vec::new(),
    };
    let ab = |a: i64, b: i64| (k.from_i64(a), k.from_i64(b));
    let quad = sols(&fences[1]);
    ensure!(quad.len() == 2 && quad.contains(&ab(1, 0)) && quad.contains(&ab(-1, 1)), "x(x-1): {quad:?}");
    ensure!(sols(&fences[2]).contains(&ab(-1, 0)), "x^3 - x lacks x -> -x");
    Ok(format!("3 fences, 60 conjugated runs, {shifts} shifts verified"))
}

// ---------------------------------------------------------------- 9

fn swap_asymmetry() -> Outcome {
    let k = q();
    let s = PlaneAutomorphism::swap(&k);
    let lopsided = poly(&k, &[(2, 1, 1), (0, 0, -1)]);
    let balanced = poly(&k, &[(1, 1, 1), (0, 0, -1)]);
    ensure!(verify_invariance(&lopsided, &s).is_none(), "swap preserves x^2 y = 1");
    ensure!(verify_invariance(&balanced, &s) == Some(k.one()), "swap moves xy = 1");
    Ok("swap rejected on x^2 y = 1, accepted on xy = 1".into())
}

// ---------------------------------------------------------------- 10

fn additive_example() -> Outcome {
    let mut n = 0;
    for p in [2u64, 3, 5] {
        let k = fp(p);
        for a in [2u32, 3] {
            for qx in [vec![], vec![(1, 0, -1)], vec![(2, 0, -1)]] {
                let mut t = vec![(0, p as u32, 1), (a * (p as u32 - 1), 1, -1)];
                t.extend(qx);
                let f = poly(&k, &t);
                let (x, y) = (BiPoly::x(&k), BiPoly::y(&k));
                let xa = x.pow(a);
                let phi = PlaneAutomorphism::from_pairs(x.clone(), &y + &xa, x, &y - &xa).map_err(e)?;
                let c = verify_invariance(&f, &phi);
                ensure!(c == Some(k.one()), "{f} over F{p}: scalar {c:?}");
                n += 1;
            }
        }
    }
    Ok(format!("{n} curves invariant with scalar 1"))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("tame round trip", tame_round_trip),
        ("reduced chains", reduced_chains),
        ("window cancellations", window_cancellations),
        ("singularity oracles", singularity_oracles),
        ("ascending descent", ascending_descent),
        ("normal forms", normal_form_reproduction),
        ("end-to-end recovery", recovery),
        ("fence case", fence_case),
        ("swap asymmetry", swap_asymmetry),
        ("additive invariance", additive_example),
    ];
    let only: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let n = i + 1;
        if !only.is_empty() && !only.contains(&n) {
            continue;
        }
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("criterion {n:>2} {name}: PASS ({detail}; {secs:.1}s)"),
            Err(why) => {
                failed += 1;
                println!("criterion {n:>2} {name}: FAIL ({why}; {secs:.1}s)");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
