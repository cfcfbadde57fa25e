//! Seeded random instances: small categories, natural systems, functors and
//! transformations between them, 2-morphisms of `Nat_F` with coefficient
//! data, and (co)localizations.
//!
//! Every generator builds its output from constructions that are valid by
//! design and then runs the ordinary validators, so a generator bug shows up
//! as an error rather than as a bogus instance.

use std::sync::Arc;

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::abelian::{GroupHom, IntMatrix, PresentedGroup};
use crate::factorization::{FactorizationCategory, TwoMorphism};
use crate::fincat::{FiniteCategory, Functor, Morphism, MorphismId, NaturalTransformation, ObjectId};
use crate::localization::{Reflection, Side};
use crate::natsys::{AbFunctor, NatFTwoMorphism, NatSysError, NatSysMorphism, NaturalSystem};

/// Deterministic generator for case `case` of a run seeded with `seed`.
pub fn case_rng(seed: u64, stream: u64, case: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng.set_word_pos(u128::from(case) << 20);
    ChaCha8Rng::seed_from_u64(rng.gen())
}

fn names(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

fn refs(v: &[String]) -> Vec<&str> {
    v.iter().map(String::as_str).collect()
}

/// A random preorder on at most `max_objects` objects whose morphism count
/// (including identities) stays within `max_morphisms`.
pub fn random_preorder<R: Rng>(rng: &mut R, max_morphisms: usize) -> FiniteCategory {
    loop {
        let n = rng.gen_range(1..=max_morphisms.clamp(1, 5));
        let objs = names("p", n);
        let mut arrows = Vec::new();
        for a in 0..n {
            for b in 0..n {
                // acyclic most of the time; occasional cycles give isomorphic objects
                if (a < b && rng.gen_bool(0.45)) || (a > b && rng.gen_bool(0.05)) {
                    arrows.push((objs[a].clone(), objs[b].clone()));
                }
            }
        }
        let arrows: Vec<(&str, &str)> = arrows.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
        let c = FiniteCategory::preorder(&refs(&objs), &arrows).expect("preorder");
        if c.morphism_count() <= max_morphisms {
            return c;
        }
    }
}

/// A random monoid with `size` elements, found by rejection sampling of
/// multiplication tables.
pub fn random_monoid<R: Rng>(rng: &mut R, size: usize) -> Option<FiniteCategory> {
    if size == 0 {
        return None;
    }
    let names: Vec<String> = (0..size)
        .map(|k| if k == 0 { "1".into() } else { format!("m{k}") })
        .collect();
    for _ in 0..4000 {
        let mut table = vec![vec![0; size]; size];
        for (a, row) in table.iter_mut().enumerate() {
            for (b, v) in row.iter_mut().enumerate() {
                *v = if a == 0 {
                    b
                } else if b == 0 {
                    a
                } else {
                    rng.gen_range(0..size)
                };
            }
        }
        let assoc =
            (1..size).all(|a| (1..size).all(|b| (1..size).all(|c| table[table[a][b]][c] == table[a][table[b][c]])));
        if assoc {
            return FiniteCategory::monoid(&refs(&names), &table).ok();
        }
    }
    None
}

/// Sources and sinks joined by random arrows; nothing composes.
pub fn random_bipartite<R: Rng>(rng: &mut R, max_morphisms: usize) -> FiniteCategory {
    let objs = rng.gen_range(2..=3.min(max_morphisms.max(2)));
    let names = names("q", objs);
    let budget = max_morphisms.saturating_sub(objs).max(1);
    let arrows: Vec<(String, String, String)> = (0..rng.gen_range(1..=budget))
        .map(|i| {
            let a = rng.gen_range(0..objs - 1);
            let b = rng.gen_range(a + 1..objs);
            (format!("u{i}"), names[a].clone(), names[b].clone())
        })
        .collect();
    // a sink is never a source: keep only arrows out of q0 when there are 3 objects
    let arrows: Vec<(String, String, String)> = if objs == 3 {
        arrows.into_iter().filter(|(_, a, _)| a == "q0").collect()
    } else {
        arrows
    };
    let arrows: Vec<(&str, &str, &str)> = arrows
        .iter()
        .map(|(n, a, b)| (n.as_str(), a.as_str(), b.as_str()))
        .collect();
    FiniteCategory::from_named(&refs(&names), &arrows, &[]).expect("bipartite quiver")
}

/// A random small category with at most `max_morphisms` morphisms, drawn from
/// preorders, cyclic groups, small monoids, quivers without composites,
/// indiscrete categories, and sums and products of these.
pub fn random_category<R: Rng>(rng: &mut R, max_morphisms: usize) -> FiniteCategory {
    let m = max_morphisms.max(1);
    loop {
        let c = match rng.gen_range(0..9) {
            0 | 1 => random_preorder(rng, m),
            2 => FiniteCategory::cyclic_group(rng.gen_range(1..=m.min(5))),
            3 => {
                let size = rng.gen_range(2..=m.clamp(2, 4));
                match random_monoid(rng, size) {
                    Some(c) => c,
                    None => continue,
                }
            }
            4 => random_bipartite(rng, m),
            5 => FiniteCategory::indiscrete(&["a", "b"]),
            6 => {
                let a = random_preorder(rng, (m / 2).max(1));
                let b = FiniteCategory::cyclic_group(rng.gen_range(1..=3));
                a.disjoint_union(&b)
            }
            7 => {
                let a = FiniteCategory::arrow();
                let b = FiniteCategory::cyclic_group(2);
                if rng.gen_bool(0.5) {
                    a.product(&b)
                } else {
                    a.disjoint_union(&b)
                }
            }
            _ => FiniteCategory::arrow(),
        };
        if c.morphism_count() <= m {
            return c;
        }
    }
}

/// A random finite poset on `1..=max_objects` objects (thin, antisymmetric).
pub fn random_poset<R: Rng>(rng: &mut R, max_objects: usize) -> FiniteCategory {
    let n = rng.gen_range(1..=max_objects.max(1));
    let objs = names("p", n);
    let p = rng.gen_range(0.2..0.7);
    let arrows: Vec<(String, String)> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .filter(|_| rng.gen_bool(p))
        .map(|(a, b)| (objs[a].clone(), objs[b].clone()))
        .collect();
    let arrows: Vec<(&str, &str)> = arrows.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    FiniteCategory::preorder(&refs(&objs), &arrows).expect("poset")
}

/// `Z^a ⊕ Z/n…` with small parameters.
pub fn random_group<R: Rng>(rng: &mut R) -> PresentedGroup {
    match rng.gen_range(0..7) {
        0 | 1 => PresentedGroup::free(1),
        2 => PresentedGroup::cyclic(2),
        3 => PresentedGroup::cyclic(3),
        4 => PresentedGroup::cyclic(4),
        5 => PresentedGroup::free(2),
        _ => {
            let rel = IntMatrix::from_rows(&[[0], [2]]);
            PresentedGroup::new(2, rel).expect("Z ⊕ Z/2")
        }
    }
}

/// Replaces every value `Z^r` by `(Z/n)^r`, keeping the matrices.
fn reduce_mod(values: &[usize], n: u64) -> Vec<PresentedGroup> {
    values
        .iter()
        .map(|&r| {
            if n == 0 {
                PresentedGroup::free(r)
            } else {
                PresentedGroup::new(r, IntMatrix::scalar(r, n as i64)).expect("(Z/n)^r")
            }
        })
        .collect()
}

/// Linearization of a set-valued natural system: `D(f)` has basis `basis(f)`
/// and `(h, k)` acts by `act(h, k, u)` on basis elements.
fn linearize(
    fc: &Arc<FactorizationCategory>,
    modulus: u64,
    basis: impl Fn(MorphismId) -> Vec<MorphismId>,
    act: impl Fn(MorphismId, MorphismId, MorphismId) -> MorphismId,
) -> Result<NaturalSystem, NatSysError> {
    let c = fc.base();
    let bases: Vec<Vec<MorphismId>> = (0..c.morphism_count()).map(&basis).collect();
    let ranks: Vec<usize> = bases.iter().map(Vec::len).collect();
    let values = reduce_mod(&ranks, modulus);
    let actions = fc
        .pairs()
        .iter()
        .map(|p| {
            let (src, tgt) = (&bases[p.source], &bases[p.target]);
            let mut m = IntMatrix::zeros(tgt.len(), src.len());
            for (j, &u) in src.iter().enumerate() {
                let v = act(p.h, p.k, u);
                let i = tgt.iter().position(|&w| w == v).expect("action lands in the basis");
                m.set(i, j, BigInt::from(1));
            }
            GroupHom::new(values[p.source].clone(), values[p.target].clone(), m)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let functor = AbFunctor::new(fc.category().clone(), values, actions)?;
    NaturalSystem::new(fc.clone(), functor)
}

/// `Z` (or `Z/n`) on a sieve of `FC` (closed under incoming morphisms) or a
/// cosieve (closed under outgoing ones), zero elsewhere.
fn indicator(
    fc: &Arc<FactorizationCategory>,
    members: &[bool],
    group: &PresentedGroup,
) -> Result<NaturalSystem, NatSysError> {
    let zero = PresentedGroup::trivial();
    let values: Vec<PresentedGroup> = members
        .iter()
        .map(|&b| if b { group.clone() } else { zero.clone() })
        .collect();
    let actions = fc
        .pairs()
        .iter()
        .map(|p| {
            if members[p.source] && members[p.target] {
                GroupHom::identity(group)
            } else {
                GroupHom::zero(&values[p.source], &values[p.target])
            }
        })
        .collect();
    let functor = AbFunctor::new(fc.category().clone(), values, actions)?;
    NaturalSystem::new(fc.clone(), functor)
}

fn close(fc: &FactorizationCategory, seed: &mut [bool], downward: bool) {
    let mut changed = true;
    while changed {
        changed = false;
        for p in fc.pairs() {
            let (from, to) = if downward {
                (p.target, p.source)
            } else {
                (p.source, p.target)
            };
            if seed[from] && !seed[to] {
                seed[to] = true;
                changed = true;
            }
        }
    }
}

/// A random natural system on `C`: constants, linearized hom functors
/// (covariant, contravariant, two-sided), indicators of (co)sieves, and
/// direct sums of these, optionally with finite coefficients.
pub fn random_system<R: Rng>(rng: &mut R, fc: &Arc<FactorizationCategory>) -> NaturalSystem {
    let d = random_simple_system(rng, fc);
    if rng.gen_bool(0.2) {
        let e = random_simple_system(rng, fc);
        NaturalSystem::direct_sum(&[&d, &e]).expect("direct sum")
    } else {
        d
    }
}

fn random_simple_system<R: Rng>(rng: &mut R, fc: &Arc<FactorizationCategory>) -> NaturalSystem {
    let c = fc.base().clone();
    let modulus = *[0u64, 0, 0, 2, 3].choose(rng).unwrap();
    let n_obj = c.object_count();
    if n_obj == 0 {
        return NaturalSystem::constant(fc.clone(), &PresentedGroup::trivial());
    }
    let x0 = rng.gen_range(0..n_obj);
    let built = match rng.gen_range(0..6) {
        0 => Ok(NaturalSystem::constant(fc.clone(), &random_group(rng))),
        1 => linearize(
            fc,
            modulus,
            |f| c.hom(x0, c.target(f)).collect(),
            |_, k, u| c.composite(k, u).expect("k ∘ u"),
        ),
        2 => linearize(
            fc,
            modulus,
            |f| c.hom(c.source(f), x0).collect(),
            |h, _, u| c.composite(u, h).expect("u ∘ h"),
        ),
        3 => linearize(
            fc,
            modulus,
            |f| c.hom(c.source(f), c.target(f)).collect(),
            |h, k, u| c.compose_chain(&[k, u, h]).expect("k ∘ u ∘ h"),
        ),
        _ => {
            let m = c.morphism_count();
            let mut members: Vec<bool> = (0..m).map(|_| rng.gen_bool(0.25)).collect();
            close(fc, &mut members, rng.gen_bool(0.5));
            indicator(fc, &members, &random_group(rng))
        }
    };
    built.expect("generated systems are valid by construction")
}

/// All functors `D → C`, in a fixed order, stopping after `limit`.
pub fn enumerate_functors(d: &Arc<FiniteCategory>, c: &Arc<FiniteCategory>, limit: usize) -> Vec<Functor> {
    let (nd, nc) = (d.object_count(), c.object_count());
    let mut out = Vec::new();
    if nd > 0 && nc == 0 {
        return out;
    }
    let mut objects = vec![0; nd];
    loop {
        let mut morphisms = vec![usize::MAX; d.morphism_count()];
        for x in 0..nd {
            morphisms[d.identity(x)] = c.identity(objects[x]);
        }
        let free: Vec<MorphismId> = (0..d.morphism_count()).filter(|&g| !d.is_identity(g)).collect();
        assign_morphisms(d, c, &objects, &free, 0, &mut morphisms, &mut out, limit);
        if out.len() >= limit {
            out.truncate(limit);
            return out;
        }
        // next object map
        let mut i = 0;
        loop {
            if i == nd {
                return out;
            }
            objects[i] += 1;
            if objects[i] < nc {
                break;
            }
            objects[i] = 0;
            i += 1;
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn assign_morphisms(
    d: &Arc<FiniteCategory>,
    c: &Arc<FiniteCategory>,
    objects: &[ObjectId],
    free: &[MorphismId],
    i: usize,
    morphisms: &mut Vec<MorphismId>,
    out: &mut Vec<Functor>,
    limit: usize,
) {
    if out.len() >= limit {
        return;
    }
    if i == free.len() {
        if let Ok(f) = Functor::new(d.clone(), c.clone(), objects.to_vec(), morphisms.clone()) {
            out.push(f);
        }
        return;
    }
    let g = free[i];
    let candidates: Vec<MorphismId> = c.hom(objects[d.source(g)], objects[d.target(g)]).collect();
    for u in candidates {
        morphisms[g] = u;
        // prune on composites already determined
        let consistent = free[..=i].iter().all(|&a| {
            free[..=i].iter().all(|&b| match d.composite(a, b) {
                Some(ab) if morphisms[ab] != usize::MAX => {
                    c.composite(morphisms[a], morphisms[b]) == Some(morphisms[ab])
                }
                _ => true,
            })
        });
        if consistent {
            assign_morphisms(d, c, objects, free, i + 1, morphisms, out, limit);
        }
        morphisms[g] = usize::MAX;
    }
}

/// All natural transformations `φ ⇒ ψ`, stopping after `limit`.
pub fn enumerate_transformations(phi: &Functor, psi: &Functor, limit: usize) -> Vec<NaturalTransformation> {
    let d = phi.source().clone();
    let c = phi.target().clone();
    let mut out = Vec::new();
    let mut comps = vec![usize::MAX; d.object_count()];
    fn go(
        x: usize,
        d: &FiniteCategory,
        c: &FiniteCategory,
        phi: &Functor,
        psi: &Functor,
        comps: &mut Vec<MorphismId>,
        out: &mut Vec<NaturalTransformation>,
        limit: usize,
    ) {
        if out.len() >= limit {
            return;
        }
        if x == d.object_count() {
            if let Ok(t) = NaturalTransformation::new(phi.clone(), psi.clone(), comps.clone()) {
                out.push(t);
            }
            return;
        }
        let cands: Vec<MorphismId> = c.hom(phi.object(x), psi.object(x)).collect();
        for a in cands {
            comps[x] = a;
            let ok = (0..d.morphism_count()).all(|g| {
                let (s, t) = (d.source(g), d.target(g));
                if s > x || t > x {
                    return true;
                }
                c.composite(psi.morphism(g), comps[s]) == c.composite(comps[t], phi.morphism(g))
            });
            if ok {
                go(x + 1, d, c, phi, psi, comps, out, limit);
            }
        }
        comps[x] = usize::MAX;
    }
    go(0, &d, &c, phi, psi, &mut comps, &mut out, limit);
    out
}

const FUNCTOR_LIMIT: usize = 400;
const NAT_LIMIT: usize = 64;

/// A random transformation `φ ⇒ ψ` out of `φ` (`forward`) or into `φ`,
/// preferring non-identities; falls back to `1_φ`.
fn random_transformation<R: Rng>(
    rng: &mut R,
    functors: &[Functor],
    phi: &Functor,
    forward: bool,
) -> NaturalTransformation {
    for _ in 0..6 {
        let other = functors.choose(rng).expect("some functor");
        let nats = if forward {
            enumerate_transformations(phi, other, NAT_LIMIT)
        } else {
            enumerate_transformations(other, phi, NAT_LIMIT)
        };
        let nontrivial: Vec<&NaturalTransformation> = nats.iter().filter(|t| !t.is_identity()).collect();
        if let Some(t) = nontrivial.choose(rng) {
            return (*t).clone();
        }
    }
    NaturalTransformation::identity(phi)
}

/// Random `ε: ξ ⇒ φ`, `γ: ψ ⇒ ζ` around a given `α: φ ⇒ ψ`.
fn random_bracket<R: Rng>(rng: &mut R, functors: &[Functor], alpha: &NaturalTransformation) -> TwoMorphism {
    let eps = random_transformation(rng, functors, alpha.source(), false);
    let gam = random_transformation(rng, functors, alpha.target(), true);
    let beta =
        NaturalTransformation::vertical_compose(&gam, &NaturalTransformation::vertical_compose(alpha, &eps).unwrap())
            .unwrap();
    TwoMorphism::new(eps, gam, alpha.clone(), beta).expect("bracketed 2-morphism")
}

/// `s: D F(β) ⇒ E` for a random target `E`: `E = D F(β)` with `s` a scalar,
/// or `E = D F(β) ⊕ E′` with `s` the scaled inclusion.
fn random_target_morphism<R: Rng>(
    rng: &mut R,
    d: &Arc<NaturalSystem>,
    fd: &Arc<FactorizationCategory>,
    beta: &NaturalTransformation,
) -> NatSysMorphism {
    let pulled = d.pullback_along_nat(fd.clone(), beta).expect("pullback");
    let k = *[1i64, 1, -1, 2, 3].choose(rng).unwrap();
    let base = fd.base();
    if rng.gen_bool(0.3) {
        let extra = random_system(rng, fd);
        let e = NaturalSystem::direct_sum(&[&pulled, &extra]).expect("direct sum");
        let components = (0..base.morphism_count())
            .map(|s| {
                let (a, b) = (pulled.value(s), e.value(s));
                let mut m = IntMatrix::zeros(b.generators(), a.generators());
                m.paste(0, 0, &IntMatrix::scalar(a.generators(), k));
                GroupHom::new(a.clone(), b.clone(), m).expect("inclusion")
            })
            .collect();
        NatSysMorphism::new(beta.clone(), d.clone(), Arc::new(e), components).expect("scaled inclusion is natural")
    } else {
        let components = (0..base.morphism_count())
            .map(|s| GroupHom::scalar(pulled.value(s), k))
            .collect();
        NatSysMorphism::new(beta.clone(), d.clone(), Arc::new(pulled), components).expect("scalar is natural")
    }
}

/// A 2-morphism `(ε, γ): (α, t) ⇒ (β, s)` of `Nat_F` with its coefficient
/// systems `D` on `C` and `E` on `𝒟`.
#[derive(Clone, Debug)]
pub struct NatFInstance {
    pub source: Arc<NaturalSystem>,
    pub target: Arc<NaturalSystem>,
    pub two: NatFTwoMorphism,
}

/// Shapes for `𝒟`: small enough that functor enumeration stays cheap.
fn random_small_category<R: Rng>(rng: &mut R) -> FiniteCategory {
    match rng.gen_range(0..6) {
        0 => FiniteCategory::terminal(),
        1 | 2 => FiniteCategory::arrow(),
        3 => FiniteCategory::cyclic_group(2),
        4 => FiniteCategory::discrete(&["a", "b"]),
        _ => FiniteCategory::preorder(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap(),
    }
}

struct Frame {
    c: Arc<FiniteCategory>,
    d: Arc<FiniteCategory>,
    fc: Arc<FactorizationCategory>,
    fd: Arc<FactorizationCategory>,
    functors: Vec<Functor>,
}

fn random_frame<R: Rng>(rng: &mut R, max_morphisms: usize) -> Frame {
    loop {
        let c = Arc::new(random_category(rng, max_morphisms));
        let d = Arc::new(random_small_category(rng));
        let functors = enumerate_functors(&d, &c, FUNCTOR_LIMIT);
        if functors.is_empty() {
            continue;
        }
        return Frame {
            fc: Arc::new(FactorizationCategory::build(c.clone())),
            fd: Arc::new(FactorizationCategory::build(d.clone())),
            c,
            d,
            functors,
        };
    }
}

fn random_alpha<R: Rng>(rng: &mut R, functors: &[Functor]) -> NaturalTransformation {
    let phi = functors.choose(rng).unwrap().clone();
    random_transformation(rng, functors, &phi, true)
}

pub fn random_natf_instance<R: Rng>(rng: &mut R, max_morphisms: usize) -> NatFInstance {
    let frame = random_frame(rng, max_morphisms);
    let d = Arc::new(random_system(rng, &frame.fc));
    let alpha = random_alpha(rng, &frame.functors);
    let two = random_bracket(rng, &frame.functors, &alpha);
    let s = random_target_morphism(rng, &d, &frame.fd, &two.beta);
    let target = s.target().clone();
    let two = NatFTwoMorphism::induced_from_target(two, s).expect("induced 2-morphism");
    let _ = &frame.d;
    let _ = &frame.c;
    NatFInstance { source: d, target, two }
}

/// Vertically composable `first: (α, t) ⇒ (α′, t′)` and
/// `second: (α′, t′) ⇒ (β, s)`.
#[derive(Clone, Debug)]
pub struct VerticalInstance {
    pub source: Arc<NaturalSystem>,
    pub target: Arc<NaturalSystem>,
    pub first: NatFTwoMorphism,
    pub second: NatFTwoMorphism,
}

pub fn random_vertical_instance<R: Rng>(rng: &mut R, max_morphisms: usize) -> VerticalInstance {
    let frame = random_frame(rng, max_morphisms);
    let d = Arc::new(random_system(rng, &frame.fc));
    let alpha = random_alpha(rng, &frame.functors);
    let first = random_bracket(rng, &frame.functors, &alpha);
    let second = random_bracket(rng, &frame.functors, &first.beta);
    let s = random_target_morphism(rng, &d, &frame.fd, &second.beta);
    let target = s.target().clone();
    let second = NatFTwoMorphism::induced_from_target(second, s).expect("second");
    let first = NatFTwoMorphism::induced_from_target(first, second.from.clone()).expect("first");
    VerticalInstance {
        source: d,
        target,
        first,
        second,
    }
}

/// `outer` over `𝒟 → C` and `inner` over `𝒟′ → 𝒟`, with the intermediate
/// system `E` on `𝒟`.
#[derive(Clone, Debug)]
pub struct HorizontalInstance {
    pub source: Arc<NaturalSystem>,
    pub middle: Arc<NaturalSystem>,
    pub target: Arc<NaturalSystem>,
    pub outer: NatFTwoMorphism,
    pub inner: NatFTwoMorphism,
}

pub fn random_horizontal_instance<R: Rng>(rng: &mut R, max_morphisms: usize) -> HorizontalInstance {
    let outer = random_natf_instance(rng, max_morphisms);
    let d = outer.target.base().clone();
    let fd = outer.target.factorization().clone();
    let d2 = Arc::new(random_small_category(rng));
    let fd2 = Arc::new(FactorizationCategory::build(d2.clone()));
    let functors = enumerate_functors(&d2, &d, FUNCTOR_LIMIT);
    let alpha = random_alpha(rng, &functors);
    let two = random_bracket(rng, &functors, &alpha);
    let s = random_target_morphism(rng, &outer.target, &fd2, &two.beta);
    let target = s.target().clone();
    let inner = NatFTwoMorphism::induced_from_target(two, s).expect("inner");
    let _ = fd;
    HorizontalInstance {
        source: outer.source,
        middle: outer.target,
        target,
        outer: outer.two,
        inner,
    }
}

/// Pairs of vertically composable 2-morphisms over `𝒟 → C` and `𝒟′ → 𝒟`,
/// for the interchange law.
#[derive(Clone, Debug)]
pub struct InterchangeInstance {
    pub outer: (TwoMorphism, TwoMorphism),
    pub inner: (TwoMorphism, TwoMorphism),
}

pub fn random_interchange_instance<R: Rng>(rng: &mut R, max_morphisms: usize) -> InterchangeInstance {
    let frame = random_frame(rng, max_morphisms);
    let a = random_alpha(rng, &frame.functors);
    let t1 = random_bracket(rng, &frame.functors, &a);
    let t2 = random_bracket(rng, &frame.functors, &t1.beta);
    let d2 = Arc::new(random_small_category(rng));
    let functors = enumerate_functors(&d2, &frame.d, FUNCTOR_LIMIT);
    let b = random_alpha(rng, &functors);
    let s1 = random_bracket(rng, &functors, &b);
    let s2 = random_bracket(rng, &functors, &s1.beta);
    InterchangeInstance {
        outer: (t1, t2),
        inner: (s1, s2),
    }
}

/// Adjoins to `d` one new object `x_i` per entry of `targets`, with a unit
/// `η_i: x_i → targets[i]` through which every map out of `x_i` factors
/// uniquely. `𝒟 ⊂ C` is then reflective; the localization is returned.
pub fn adjoin_reflections(d: &FiniteCategory, targets: &[ObjectId]) -> (Arc<FiniteCategory>, Reflection) {
    let (n, m) = (d.object_count(), d.morphism_count());
    let mut objects: Vec<String> = d.objects().to_vec();
    let mut morphisms: Vec<Morphism> = d.morphisms().to_vec();
    let mut identities: Vec<MorphismId> = d.identities().to_vec();
    // (new object, u) for each adjoined morphism u η_i
    let mut adjoined: Vec<(usize, MorphismId)> = Vec::new();
    let outgoing = d.outgoing();
    for (i, &y0) in targets.iter().enumerate() {
        let x = n + i;
        objects.push(format!("x{i}"));
        identities.push(morphisms.len());
        morphisms.push(Morphism {
            name: format!("1_x{i}"),
            source: x,
            target: x,
        });
        adjoined.push((x, usize::MAX));
        for &u in &outgoing[y0] {
            morphisms.push(Morphism {
                name: if d.is_identity(u) {
                    format!("η{i}")
                } else {
                    format!("{}·η{i}", d.morphism_name(u))
                },
                source: x,
                target: d.target(u),
            });
            adjoined.push((x, u));
        }
    }
    let total = morphisms.len();
    let lookup = |x: usize, u: MorphismId| m + adjoined.iter().position(|&(a, b)| a == x && b == u).unwrap();
    let mut composition = vec![None; total * total];
    for f in 0..m {
        for g in 0..m {
            composition[f * total + g] = d.composite(f, g);
        }
    }
    for (j, &(x, u)) in adjoined.iter().enumerate() {
        let id = m + j;
        if u == usize::MAX {
            // 1_x composes with itself and with every u η out of x
            composition[id * total + id] = Some(id);
            for (k, &(x2, _)) in adjoined.iter().enumerate() {
                if x2 == x {
                    composition[(m + k) * total + id] = Some(m + k);
                }
            }
        } else {
            for v in 0..m {
                if let Some(vu) = d.composite(v, u) {
                    composition[v * total + id] = Some(lookup(x, vu));
                }
            }
        }
    }
    let c = Arc::new(FiniteCategory::build(objects, morphisms, identities, composition).expect("reflective extension"));
    let d = Arc::new(d.clone());
    let phi_objects: Vec<ObjectId> = (0..n).chain(targets.iter().copied()).collect();
    let phi_morphisms: Vec<MorphismId> = (0..m)
        .chain(adjoined.iter().enumerate().map(|(j, &(x, u))| {
            if u == usize::MAX {
                d.identity(targets[x - n])
            } else {
                let _ = j;
                u
            }
        }))
        .collect();
    let phi = Functor::new(c.clone(), d.clone(), phi_objects, phi_morphisms).expect("φ");
    let psi = Functor::new(d.clone(), c.clone(), (0..n).collect(), (0..m).collect()).expect("ψ");
    let xi = Functor::compose(&psi, &phi).unwrap();
    let alpha_components: Vec<MorphismId> = (0..n)
        .map(|y| c.identity(y))
        .chain((0..targets.len()).map(|i| lookup(n + i, d.identity(targets[i]))))
        .collect();
    let alpha = NaturalTransformation::new(Functor::identity(c.clone()), xi, alpha_components).expect("unit");
    let l = Reflection::new(Side::Local, phi, psi, alpha).expect("reflective extension is a localization");
    (c, l)
}

/// Localizations found by exhaustive search of idempotent endofunctors `ξ`
/// with `α: 1 ⇒ ξ` satisfying `1_ξ * α = 1_ξ = α * 1_ξ`.
pub fn search_localizations(c: &Arc<FiniteCategory>, limit: usize) -> Vec<Reflection> {
    let mut out = Vec::new();
    let id = Functor::identity(c.clone());
    for xi in enumerate_functors(c, c, FUNCTOR_LIMIT) {
        if Functor::compose(&xi, &xi).map(|x2| x2 != xi).unwrap_or(true) {
            continue;
        }
        for alpha in enumerate_transformations(&id, &xi, NAT_LIMIT) {
            if let Ok(l) = Reflection::from_idempotent(Side::Local, &xi, alpha) {
                out.push(l);
                if out.len() >= limit {
                    return out;
                }
            }
        }
    }
    out
}

/// A random localization on a category with at most `max_morphisms`
/// morphisms: either a reflective extension of a random category or one
/// found by search.
pub fn random_localization<R: Rng>(rng: &mut R, max_morphisms: usize) -> Reflection {
    loop {
        if rng.gen_bool(0.7) {
            let d = random_category(rng, (max_morphisms / 2).max(1));
            if d.object_count() == 0 {
                continue;
            }
            let k = rng.gen_range(1..=2);
            let targets: Vec<ObjectId> = (0..k).map(|_| rng.gen_range(0..d.object_count())).collect();
            let (c, l) = adjoin_reflections(&d, &targets);
            if c.morphism_count() <= max_morphisms {
                return l;
            }
        } else {
            let c = Arc::new(random_category(rng, max_morphisms));
            let found = search_localizations(&c, 32);
            let nontrivial: Vec<&Reflection> = found.iter().filter(|l| !l.xi().is_identity()).collect();
            if let Some(l) = nontrivial.choose(rng) {
                return (*l).clone();
            }
            if rng.gen_bool(0.25) {
                if let Some(l) = found.choose(rng) {
                    return l.clone();
                }
            }
        }
    }
}

/// A random colocalization: the mirror of a random localization.
pub fn random_colocalization<R: Rng>(rng: &mut R, max_morphisms: usize) -> Reflection {
    random_localization(rng, max_morphisms).mirror()
}

/// `E F(α)` for a random `E`: (co)local by construction.
pub fn pulled_back_system<R: Rng>(rng: &mut R, l: &Reflection) -> Arc<NaturalSystem> {
    let fc = Arc::new(FactorizationCategory::build(l.big().clone()));
    let e = random_system(rng, &fc);
    Arc::new(e.pullback_along_nat(fc, l.alpha()).expect("pullback along α"))
}

/// Replaces the action of one decomposable pair `(h, k)` (both non-identity)
/// by a different homomorphism. `None` when no pair admits one.
pub fn mutate_decomposable_action<R: Rng>(rng: &mut R, d: &NaturalSystem) -> Option<(MorphismId, AbFunctor)> {
    let fc = d.factorization();
    let c = fc.base();
    let mut candidates: Vec<MorphismId> = fc
        .pairs()
        .iter()
        .enumerate()
        .filter(|(_, p)| !c.is_identity(p.h) && !c.is_identity(p.k))
        .map(|(i, _)| i)
        .collect();
    candidates.shuffle(rng);
    for p in candidates {
        let old = d.action(p);
        let (rows, cols) = (old.target().generators(), old.source().generators());
        for r in 0..rows {
            for col in 0..cols {
                let mut m = old.matrix().clone();
                let v = m.get(r, col) + BigInt::from(1);
                m.set(r, col, v);
                if let Ok(h) = GroupHom::new(old.source().clone(), old.target().clone(), m) {
                    if !h.equals(old) {
                        return Some((p, d.functor().with_action(p, h)));
                    }
                }
            }
        }
    }
    None
}
