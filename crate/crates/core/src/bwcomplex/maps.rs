use std::sync::Arc;

use crate::abelian::{GroupHom, IntMatrix};
use crate::fincat::{Functor, MorphismId, ObjectId};
use crate::natsys::NatSysMorphism;

use super::blockmap::{BlockMap, RowBuilder};
use super::complex::CochainComplex;
use super::BWError;

/// A summand `sign · c(sequence)` of a cochain formula; `object` names the
/// sequence when it is empty.
pub(crate) struct Term {
    pub sign: i64,
    pub sequence: Vec<MorphismId>,
    pub object: ObjectId,
}

/// Evaluation recipe at one target sequence: every summand lies in the same
/// group `D(u)`; the result is `post ∘ D(1, k)` applied to their sum.
pub(crate) struct Recipe {
    pub terms: Vec<Term>,
    pub k: MorphismId,
    /// Applied after `D(1, k)`, first to last.
    pub post: Vec<IntMatrix>,
}

/// Assembles the block map into degree `n` of `target` whose row at the
/// `i`-th sequence is given by `recipe(i, X_0…X_n, σ1…σn)`.
pub(crate) fn assemble<F>(
    source: &CochainComplex,
    target: &CochainComplex,
    n: usize,
    source_degree: usize,
    mut recipe: F,
) -> Result<BlockMap, BWError>
where
    F: FnMut(usize, &[ObjectId], &[MorphismId]) -> Result<Recipe, BWError>,
{
    let tb = target.basis();
    let sb = source.basis();
    let d = source.system();
    let fc = d.factorization();
    let c = &**sb.category();
    let mut rows = Vec::with_capacity(tb.len(n));
    for i in 0..tb.len(n) {
        let objects = tb.objects(n, i);
        let r = recipe(i, &objects, tb.morphisms(n, i))?;
        let mut builder = RowBuilder::default();
        let mut u = None;
        let mut indices = Vec::with_capacity(r.terms.len());
        for t in &r.terms {
            debug_assert_eq!(t.sequence.len(), source_degree);
            let j = sb.index(&t.sequence, t.object);
            let uj = sb.composite(source_degree, j);
            match u {
                None => u = Some(uj),
                Some(u0) if u0 != uj => {
                    return Err(BWError::Bookkeeping(format!(
                        "summands at target sequence {i} of degree {n} live in different groups"
                    )))
                }
                _ => {}
            }
            indices.push((j, t.sign));
        }
        let Some(u) = u else {
            rows.push(Vec::new());
            continue;
        };
        let p = fc.pair_id(u, c.identity(c.source(u)), r.k).ok_or_else(|| {
            BWError::Bookkeeping(format!("correction (1, {}) does not apply at {i} in degree {n}", r.k))
        })?;
        let mut a = d.action(p).matrix().clone();
        for m in &r.post {
            a = m.checked_mul(&a).map_err(|_| {
                BWError::Bookkeeping(format!(
                    "component shapes disagree at target sequence {i} of degree {n}"
                ))
            })?;
        }
        if a.rows() != target.group(n).block_group(i).generators() {
            return Err(BWError::Bookkeeping(format!(
                "result lands outside E(σ) at target sequence {i} of degree {n}"
            )));
        }
        for (j, s) in indices {
            builder.add_signed(j, s, &a);
        }
        rows.push(builder.finish());
    }
    Ok(BlockMap::from_rows(sb.len(source_degree), rows))
}

/// A degree-0 map of complexes, given on every computed degree.
#[derive(Clone, Debug)]
pub struct CochainMap {
    source: Arc<CochainComplex>,
    target: Arc<CochainComplex>,
    components: Vec<BlockMap>,
}

impl CochainMap {
    pub(crate) fn from_components(
        source: Arc<CochainComplex>,
        target: Arc<CochainComplex>,
        components: Vec<BlockMap>,
    ) -> Self {
        CochainMap {
            source,
            target,
            components,
        }
    }

    pub fn identity(complex: Arc<CochainComplex>) -> Self {
        let components = (0..=complex.max_degree())
            .map(|n| {
                let g = complex.group(n);
                let rows = (0..g.blocks())
                    .map(|i| vec![(i, IntMatrix::identity(g.block_group(i).generators()))])
                    .collect();
                BlockMap::from_rows(g.blocks(), rows)
            })
            .collect();
        CochainMap {
            source: complex.clone(),
            target: complex,
            components,
        }
    }

    pub fn source(&self) -> &Arc<CochainComplex> {
        &self.source
    }

    pub fn target(&self) -> &Arc<CochainComplex> {
        &self.target
    }

    pub fn component(&self, n: usize) -> &BlockMap {
        &self.components[n]
    }

    pub fn components(&self) -> &[BlockMap] {
        &self.components
    }

    /// `self ∘ inner`.
    pub fn after(&self, inner: &CochainMap) -> Result<CochainMap, BWError> {
        if !same_complex(&inner.target, &self.source) {
            return Err(BWError::ShapeMismatch("cochain maps are not composable".into()));
        }
        let components = self
            .components
            .iter()
            .zip(&inner.components)
            .map(|(a, b)| BlockMap::compose(a, b))
            .collect();
        Ok(CochainMap {
            source: inner.source.clone(),
            target: self.target.clone(),
            components,
        })
    }

    /// Checks `d p = p d` in every degree.
    pub fn check_chain_map(&self) -> Result<(), BWError> {
        for n in 0..self.source.max_degree() {
            let dp = BlockMap::compose(self.target.differential(n), &self.components[n]);
            let pd = BlockMap::compose(&self.components[n + 1], self.source.differential(n));
            let diff = BlockMap::combination(&[(1, &dp), (-1, &pd)]);
            if let Some((target, source)) = diff.first_nonzero(self.target.group(n + 1)) {
                return Err(BWError::NotAChainMap {
                    degree: n,
                    row: target,
                    column: source,
                });
            }
        }
        Ok(())
    }

    /// Equality of the two maps in every degree, modulo relations.
    pub fn equals(&self, other: &CochainMap) -> bool {
        self.first_difference(other).is_none()
    }

    /// First `(degree, target, source)` where the maps differ.
    pub fn first_difference(&self, other: &CochainMap) -> Option<(usize, usize, usize)> {
        for (n, (a, b)) in self.components.iter().zip(&other.components).enumerate() {
            let diff = BlockMap::combination(&[(1, a), (-1, b)]);
            if let Some((t, s)) = diff.first_nonzero(self.target.group(n)) {
                return Some((n, t, s));
            }
        }
        None
    }

    /// Induced map `H^n(source) → H^n(target)` on the subquotient presentations.
    pub fn on_cohomology(&self, n: usize) -> Result<GroupHom, BWError> {
        let hs = self.source.cohomology_subquotient(n)?;
        let ht = self.target.cohomology_subquotient(n)?;
        let p = self.components[n].to_dense(self.source.group(n), self.target.group(n));
        let image = p.checked_mul(&hs.cycles)?;
        let coords = ht
            .coordinates(&image)
            .ok_or_else(|| BWError::Bookkeeping(format!("image of a cycle is not a cycle in degree {n}")))?;
        Ok(GroupHom::new(hs.group(), ht.group(), coords)?)
    }
}

pub(crate) fn same_complex(a: &Arc<CochainComplex>, b: &Arc<CochainComplex>) -> bool {
    Arc::ptr_eq(a, b) || (a.max_degree() == b.max_degree() && **a.system() == **b.system())
}

fn check_common_degree(a: &CochainComplex, b: &CochainComplex) -> Result<usize, BWError> {
    if a.max_degree() != b.max_degree() {
        return Err(BWError::ShapeMismatch(
            "complexes are truncated at different degrees".into(),
        ));
    }
    Ok(a.max_degree())
}

/// `F*(φ, t)(c)(σ1…σn) = t_σ c(φσ1, …, φσn)` for `t: D F(φ) ⇒ E`.
pub fn induced_map_nat(
    phi: &Functor,
    t: &NatSysMorphism,
    source: Arc<CochainComplex>,
    target: Arc<CochainComplex>,
) -> Result<CochainMap, BWError> {
    if t.anchor().source() != phi || t.anchor().target() != phi || !t.anchor().is_identity() {
        return Err(BWError::ShapeMismatch("t is not anchored at 1_φ".into()));
    }
    check_systems(t, &source, &target)?;
    let big = source.basis().category().clone();
    let nmax = check_common_degree(&source, &target)?;
    let mut components = Vec::with_capacity(nmax + 1);
    for n in 0..=nmax {
        let tb = target.basis().clone();
        let m = assemble(&source, &target, n, n, |i, objects, morphisms| {
            let sequence: Vec<MorphismId> = morphisms.iter().map(|&f| phi.morphism(f)).collect();
            Ok(Recipe {
                terms: vec![Term {
                    sign: 1,
                    sequence,
                    object: phi.object(objects[0]),
                }],
                k: big.identity(phi.object(objects[0])),
                post: vec![t.component(tb.composite(n, i)).matrix().clone()],
            })
        })?;
        components.push(m);
    }
    Ok(CochainMap::from_components(source, target, components))
}

/// `F*(α, t)(c)(σ1…σn) = t_σ D(1, α_{X_0}) c(φσ1, …, φσn)` for
/// `α: φ ⇒ ψ` and `t: D F(α) ⇒ E`.
pub fn induced_map_2(
    t: &NatSysMorphism,
    source: Arc<CochainComplex>,
    target: Arc<CochainComplex>,
) -> Result<CochainMap, BWError> {
    check_systems(t, &source, &target)?;
    let alpha = t.anchor();
    let phi = alpha.source();
    let nmax = check_common_degree(&source, &target)?;
    let tb = target.basis().clone();
    let mut components = Vec::with_capacity(nmax + 1);
    for n in 0..=nmax {
        let m = assemble(&source, &target, n, n, |i, objects, morphisms| {
            Ok(Recipe {
                terms: vec![Term {
                    sign: 1,
                    sequence: morphisms.iter().map(|&f| phi.morphism(f)).collect(),
                    object: phi.object(objects[0]),
                }],
                k: alpha.component(objects[0]),
                post: vec![t.component(tb.composite(n, i)).matrix().clone()],
            })
        })?;
        components.push(m);
    }
    Ok(CochainMap::from_components(source, target, components))
}

pub(crate) fn check_systems(
    t: &NatSysMorphism,
    source: &CochainComplex,
    target: &CochainComplex,
) -> Result<(), BWError> {
    if **t.source() != **source.system() || **t.target() != **target.system() {
        return Err(BWError::ShapeMismatch(
            "complexes do not match the morphism of systems".into(),
        ));
    }
    Ok(())
}
