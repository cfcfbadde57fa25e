use std::collections::BTreeMap;
use std::fmt;

use super::{FinCatError, MorphismId, ObjectId, Report};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Morphism {
    pub name: String,
    pub source: ObjectId,
    pub target: ObjectId,
}

/// A finite category given by its full composition table.
///
/// Morphism ids are dense indices; `composition[g * m + f]` holds `g∘f`
/// whenever `target(f) = source(g)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteCategory {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identities: Vec<MorphismId>,
    composition: Vec<Option<MorphismId>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CategoryViolation {
    IdentityWrongEnds {
        object: ObjectId,
        morphism: MorphismId,
    },
    MissingComposite {
        f: MorphismId,
        g: MorphismId,
    },
    SpuriousComposite {
        f: MorphismId,
        g: MorphismId,
    },
    CompositeWrongEnds {
        f: MorphismId,
        g: MorphismId,
        gf: MorphismId,
    },
    LeftIdentity {
        f: MorphismId,
    },
    RightIdentity {
        f: MorphismId,
    },
    NotAssociative {
        f: MorphismId,
        g: MorphismId,
        h: MorphismId,
    },
}

impl fmt::Display for CategoryViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::IdentityWrongEnds { object, morphism } => {
                write!(
                    f,
                    "identity of object {object} is morphism {morphism}, which is not an endomorphism of it"
                )
            }
            Self::MissingComposite { f: a, g } => write!(f, "composite of ({a}, {g}) is missing"),
            Self::SpuriousComposite { f: a, g } => {
                write!(f, "composite of non-composable ({a}, {g}) is defined")
            }
            Self::CompositeWrongEnds { f: a, g, gf } => {
                write!(f, "composition ({a}, {g}, {gf}) has wrong source or target")
            }
            Self::LeftIdentity { f: a } => write!(f, "identity is not a left unit for {a}"),
            Self::RightIdentity { f: a } => write!(f, "identity is not a right unit for {a}"),
            Self::NotAssociative { f: a, g, h } => {
                write!(f, "composition not associative on ({a}, {g}, {h})")
            }
        }
    }
}

impl FiniteCategory {
    /// Assembles a category from raw tables, checking only that every index
    /// is in range. Use [`FiniteCategory::validate`] for the axioms.
    pub fn from_tables(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identities: Vec<MorphismId>,
        composition: Vec<Option<MorphismId>>,
    ) -> Result<Self, FinCatError> {
        let (n, m) = (objects.len(), morphisms.len());
        if identities.len() != n {
            return Err(FinCatError::Malformed(format!(
                "{} identities for {n} objects",
                identities.len()
            )));
        }
        if composition.len() != m * m {
            return Err(FinCatError::Malformed(format!(
                "composition table has {} entries, expected {}",
                composition.len(),
                m * m
            )));
        }
        if morphisms.iter().any(|f| f.source >= n || f.target >= n)
            || identities.iter().any(|&i| i >= m)
            || composition.iter().flatten().any(|&c| c >= m)
        {
            return Err(FinCatError::Malformed("index out of range".into()));
        }
        Ok(FiniteCategory {
            objects,
            morphisms,
            identities,
            composition,
        })
    }

    /// [`FiniteCategory::from_tables`] followed by validation.
    pub fn build(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identities: Vec<MorphismId>,
        composition: Vec<Option<MorphismId>>,
    ) -> Result<Self, FinCatError> {
        let c = Self::from_tables(objects, morphisms, identities, composition)?;
        let report = c.validate();
        if report.is_ok() {
            Ok(c)
        } else {
            Err(FinCatError::InvalidCategory(report))
        }
    }

    /// Builds a category from named composites `(f, g, g∘f)`. Composites with
    /// identities may be omitted and are filled in.
    pub fn from_named(
        objects: &[&str],
        arrows: &[(&str, &str, &str)],
        composites: &[(&str, &str, &str)],
    ) -> Result<Self, FinCatError> {
        let objects: Vec<String> = objects.iter().map(|s| s.to_string()).collect();
        let obj = |s: &str| {
            objects
                .iter()
                .position(|o| o == s)
                .ok_or_else(|| FinCatError::Malformed(format!("unknown object {s}")))
        };
        let mut morphisms: Vec<Morphism> = objects
            .iter()
            .enumerate()
            .map(|(i, o)| Morphism {
                name: format!("1_{o}"),
                source: i,
                target: i,
            })
            .collect();
        let identities: Vec<MorphismId> = (0..objects.len()).collect();
        for (name, s, t) in arrows {
            morphisms.push(Morphism {
                name: name.to_string(),
                source: obj(s)?,
                target: obj(t)?,
            });
        }
        let mor = |s: &str| {
            morphisms
                .iter()
                .position(|f| f.name == s)
                .ok_or_else(|| FinCatError::Malformed(format!("unknown morphism {s}")))
        };
        let m = morphisms.len();
        let mut table = vec![None; m * m];
        for f in 0..m {
            let (s, t) = (morphisms[f].source, morphisms[f].target);
            table[identities[t] * m + f] = Some(f);
            table[f * m + identities[s]] = Some(f);
        }
        for (f, g, gf) in composites {
            let (f, g, gf) = (mor(f)?, mor(g)?, mor(gf)?);
            table[g * m + f] = Some(gf);
        }
        Self::build(objects, morphisms, identities, table)
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn object_name(&self, x: ObjectId) -> &str {
        &self.objects[x]
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn morphism_name(&self, f: MorphismId) -> &str {
        &self.morphisms[f].name
    }

    pub fn object_by_name(&self, name: &str) -> Option<ObjectId> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn morphism_by_name(&self, name: &str) -> Option<MorphismId> {
        self.morphisms.iter().position(|f| f.name == name)
    }

    #[inline]
    pub fn source(&self, f: MorphismId) -> ObjectId {
        self.morphisms[f].source
    }

    #[inline]
    pub fn target(&self, f: MorphismId) -> ObjectId {
        self.morphisms[f].target
    }

    #[inline]
    pub fn identity(&self, x: ObjectId) -> MorphismId {
        self.identities[x]
    }

    pub fn identities(&self) -> &[MorphismId] {
        &self.identities
    }

    pub fn is_identity(&self, f: MorphismId) -> bool {
        self.identities[self.source(f)] == f
    }

    /// Raw table entry for `outer ∘ inner`.
    #[inline]
    pub fn composite(&self, outer: MorphismId, inner: MorphismId) -> Option<MorphismId> {
        self.composition[outer * self.morphisms.len() + inner]
    }

    /// `outer ∘ inner`, written `outer inner` by juxtaposition.
    pub fn compose(&self, outer: MorphismId, inner: MorphismId) -> Result<MorphismId, FinCatError> {
        if self.target(inner) != self.source(outer) {
            return Err(FinCatError::NotComposable { outer, inner });
        }
        self.composite(outer, inner)
            .ok_or(FinCatError::NotComposable { outer, inner })
    }

    /// Composite `f1 ∘ f2 ∘ ... ∘ fn` of a chain written left to right.
    pub fn compose_chain(&self, chain: &[MorphismId]) -> Result<MorphismId, FinCatError> {
        let (&last, rest) = chain
            .split_last()
            .ok_or_else(|| FinCatError::Malformed("empty chain".into()))?;
        rest.iter().rev().try_fold(last, |acc, &f| self.compose(f, acc))
    }

    /// Morphisms `X → Y`.
    pub fn hom(&self, x: ObjectId, y: ObjectId) -> impl Iterator<Item = MorphismId> + '_ {
        (0..self.morphisms.len()).filter(move |&f| self.source(f) == x && self.target(f) == y)
    }

    /// Morphisms with the given source, grouped per object.
    pub fn outgoing(&self) -> Vec<Vec<MorphismId>> {
        let mut out = vec![Vec::new(); self.objects.len()];
        for f in 0..self.morphisms.len() {
            out[self.source(f)].push(f);
        }
        out
    }

    /// Morphisms with the given target, grouped per object.
    pub fn incoming(&self) -> Vec<Vec<MorphismId>> {
        let mut inc = vec![Vec::new(); self.objects.len()];
        for f in 0..self.morphisms.len() {
            inc[self.target(f)].push(f);
        }
        inc
    }

    /// Inverse of `f`, if `f` is an isomorphism.
    pub fn inverse(&self, f: MorphismId) -> Option<MorphismId> {
        let (x, y) = (self.source(f), self.target(f));
        self.hom(y, x)
            .find(|&g| self.composite(g, f) == Some(self.identity(x)) && self.composite(f, g) == Some(self.identity(y)))
    }

    pub fn is_isomorphism(&self, f: MorphismId) -> bool {
        self.inverse(f).is_some()
    }

    /// Checks every category axiom exhaustively.
    pub fn validate(&self) -> Report<CategoryViolation> {
        let mut report = Report::default();
        let m = self.morphisms.len();
        for (x, &i) in self.identities.iter().enumerate() {
            if self.source(i) != x || self.target(i) != x {
                report.push(CategoryViolation::IdentityWrongEnds { object: x, morphism: i });
            }
        }
        for f in 0..m {
            for g in 0..m {
                let composable = self.target(f) == self.source(g);
                match (composable, self.composite(g, f)) {
                    (true, None) => report.push(CategoryViolation::MissingComposite { f, g }),
                    (false, Some(_)) => report.push(CategoryViolation::SpuriousComposite { f, g }),
                    (true, Some(gf)) => {
                        if self.source(gf) != self.source(f) || self.target(gf) != self.target(g) {
                            report.push(CategoryViolation::CompositeWrongEnds { f, g, gf });
                        }
                    }
                    (false, None) => {}
                }
            }
        }
        if !report.is_ok() {
            return report;
        }
        for f in 0..m {
            if self.composite(self.identity(self.target(f)), f) != Some(f) {
                report.push(CategoryViolation::LeftIdentity { f });
            }
            if self.composite(f, self.identity(self.source(f))) != Some(f) {
                report.push(CategoryViolation::RightIdentity { f });
            }
        }
        let out = self.outgoing();
        for f in 0..m {
            for &g in &out[self.target(f)] {
                let gf = self.composite(g, f).unwrap();
                for &h in &out[self.target(g)] {
                    let hg = self.composite(h, g).unwrap();
                    if self.composite(h, gf) != self.composite(hg, f) {
                        report.push(CategoryViolation::NotAssociative { f, g, h });
                    }
                }
            }
        }
        report
    }

    /// Connected components: each object's component index, components
    /// numbered in order of their least object.
    pub fn pi0(&self) -> Vec<Vec<ObjectId>> {
        let n = self.objects.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for f in &self.morphisms {
            let (a, b) = (find(&mut parent, f.source), find(&mut parent, f.target));
            if a != b {
                let (lo, hi) = (a.min(b), a.max(b));
                parent[hi] = lo;
            }
        }
        let mut groups: BTreeMap<usize, Vec<ObjectId>> = BTreeMap::new();
        for x in 0..n {
            let r = find(&mut parent, x);
            groups.entry(r).or_default().push(x);
        }
        groups.into_values().collect()
    }

    /// The subcategory spanned by `morphisms` (identities of their ends are
    /// added). Returns it with the embedding tables for objects and morphisms.
    pub fn subcategory(
        &self,
        morphisms: &[MorphismId],
    ) -> Result<(FiniteCategory, Vec<ObjectId>, Vec<MorphismId>), FinCatError> {
        let mut objs: Vec<ObjectId> = morphisms
            .iter()
            .flat_map(|&f| [self.source(f), self.target(f)])
            .collect();
        objs.sort_unstable();
        objs.dedup();
        let mut mors: Vec<MorphismId> = morphisms.to_vec();
        mors.extend(objs.iter().map(|&x| self.identity(x)));
        mors.sort_unstable();
        mors.dedup();
        let obj_index: BTreeMap<ObjectId, usize> = objs.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let mor_index: BTreeMap<MorphismId, usize> = mors.iter().enumerate().map(|(i, &f)| (f, i)).collect();
        let m = mors.len();
        let mut composition = vec![None; m * m];
        for (i, &f) in mors.iter().enumerate() {
            for (j, &g) in mors.iter().enumerate() {
                if let Some(fg) = self.composite(f, g) {
                    let k = mor_index.get(&fg).ok_or_else(|| {
                        FinCatError::Malformed(format!(
                            "{} ∘ {} leaves the subcategory",
                            self.morphism_name(f),
                            self.morphism_name(g)
                        ))
                    })?;
                    composition[i * m + j] = Some(*k);
                }
            }
        }
        let sub = FiniteCategory::from_tables(
            objs.iter().map(|&x| self.object_name(x).to_string()).collect(),
            mors.iter()
                .map(|&f| Morphism {
                    name: self.morphism_name(f).to_string(),
                    source: obj_index[&self.source(f)],
                    target: obj_index[&self.target(f)],
                })
                .collect(),
            objs.iter().map(|&x| mor_index[&self.identity(x)]).collect(),
            composition,
        )?;
        Ok((sub, objs, mors))
    }

    /// The opposite category; morphism and object ids are unchanged.
    pub fn opposite(&self) -> FiniteCategory {
        let m = self.morphisms.len();
        let morphisms = self
            .morphisms
            .iter()
            .map(|f| Morphism {
                name: f.name.clone(),
                source: f.target,
                target: f.source,
            })
            .collect();
        let mut composition = vec![None; m * m];
        for g in 0..m {
            for f in 0..m {
                // g ∘op f = f ∘ g
                composition[g * m + f] = self.composite(f, g);
            }
        }
        FiniteCategory {
            objects: self.objects.clone(),
            morphisms,
            identities: self.identities.clone(),
            composition,
        }
    }

    /// Product category. Object `(x, y)` has id `x * |Obj(d)| + y`, morphism
    /// `(f, g)` has id `f * |Mor(d)| + g`.
    pub fn product(&self, d: &FiniteCategory) -> FiniteCategory {
        let (nc, nd) = (self.objects.len(), d.objects.len());
        let (mc, md) = (self.morphisms.len(), d.morphisms.len());
        let mut objects = Vec::with_capacity(nc * nd);
        for x in &self.objects {
            for y in &d.objects {
                objects.push(format!("({x},{y})"));
            }
        }
        let mut morphisms = Vec::with_capacity(mc * md);
        for f in &self.morphisms {
            for g in &d.morphisms {
                morphisms.push(Morphism {
                    name: format!("({},{})", f.name, g.name),
                    source: f.source * nd + g.source,
                    target: f.target * nd + g.target,
                });
            }
        }
        let mut identities = Vec::with_capacity(nc * nd);
        for x in 0..nc {
            for y in 0..nd {
                identities.push(self.identity(x) * md + d.identity(y));
            }
        }
        let m = mc * md;
        let mut composition = vec![None; m * m];
        for outer in 0..m {
            let (o1, o2) = (outer / md, outer % md);
            for inner in 0..m {
                let (i1, i2) = (inner / md, inner % md);
                if let (Some(a), Some(b)) = (self.composite(o1, i1), d.composite(o2, i2)) {
                    composition[outer * m + inner] = Some(a * md + b);
                }
            }
        }
        FiniteCategory {
            objects,
            morphisms,
            identities,
            composition,
        }
    }

    /// Disjoint union; the second category's ids are shifted.
    pub fn disjoint_union(&self, d: &FiniteCategory) -> FiniteCategory {
        let (nc, mc, md) = (self.objects.len(), self.morphisms.len(), d.morphisms.len());
        let mut objects = self.objects.clone();
        objects.extend(d.objects.iter().cloned());
        let mut morphisms = self.morphisms.clone();
        morphisms.extend(d.morphisms.iter().map(|f| Morphism {
            name: f.name.clone(),
            source: f.source + nc,
            target: f.target + nc,
        }));
        let mut identities = self.identities.clone();
        identities.extend(d.identities.iter().map(|i| i + mc));
        let m = mc + md;
        let mut composition = vec![None; m * m];
        for g in 0..mc {
            for f in 0..mc {
                composition[g * m + f] = self.composite(g, f);
            }
        }
        for g in 0..md {
            for f in 0..md {
                composition[(g + mc) * m + f + mc] = d.composite(g, f).map(|x| x + mc);
            }
        }
        FiniteCategory {
            objects,
            morphisms,
            identities,
            composition,
        }
    }

    /// The category with no objects.
    pub fn empty() -> FiniteCategory {
        FiniteCategory {
            objects: Vec::new(),
            morphisms: Vec::new(),
            identities: Vec::new(),
            composition: Vec::new(),
        }
    }

    /// One object, one morphism.
    pub fn terminal() -> FiniteCategory {
        Self::discrete(&["*"])
    }

    pub fn discrete(objects: &[&str]) -> FiniteCategory {
        Self::from_named(objects, &[], &[]).expect("discrete categories are valid")
    }

    /// `x --f--> y`.
    pub fn arrow() -> FiniteCategory {
        Self::from_named(&["x", "y"], &[("f", "x", "y")], &[]).expect("arrow category is valid")
    }

    /// Thin category generated by the given arrows (reflexive-transitive
    /// closure). Morphisms `a → b` are named `a<b`.
    pub fn preorder(objects: &[&str], arrows: &[(&str, &str)]) -> Result<FiniteCategory, FinCatError> {
        let n = objects.len();
        let idx = |s: &str| {
            objects
                .iter()
                .position(|o| *o == s)
                .ok_or_else(|| FinCatError::Malformed(format!("unknown object {s}")))
        };
        let mut reach = vec![vec![false; n]; n];
        for (i, row) in reach.iter_mut().enumerate() {
            row[i] = true;
        }
        for (a, b) in arrows {
            reach[idx(a)?][idx(b)?] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if reach[i][k] {
                    for j in 0..n {
                        if reach[k][j] {
                            reach[i][j] = true;
                        }
                    }
                }
            }
        }
        Ok(Self::thin(objects, &reach))
    }

    /// Thin category from a reflexive, transitive relation matrix.
    pub fn thin(objects: &[&str], reach: &[Vec<bool>]) -> FiniteCategory {
        let n = objects.len();
        let mut morphisms = Vec::new();
        let mut id_of = vec![vec![None; n]; n];
        let mut identities = vec![0; n];
        for i in 0..n {
            identities[i] = morphisms.len();
            id_of[i][i] = Some(morphisms.len());
            morphisms.push(Morphism {
                name: format!("1_{}", objects[i]),
                source: i,
                target: i,
            });
        }
        for i in 0..n {
            for j in 0..n {
                if i != j && reach[i][j] {
                    id_of[i][j] = Some(morphisms.len());
                    morphisms.push(Morphism {
                        name: format!("{}<{}", objects[i], objects[j]),
                        source: i,
                        target: j,
                    });
                }
            }
        }
        let m = morphisms.len();
        let mut composition = vec![None; m * m];
        for f in 0..m {
            for g in 0..m {
                if morphisms[f].target == morphisms[g].source {
                    composition[g * m + f] = id_of[morphisms[f].source][morphisms[g].target];
                }
            }
        }
        FiniteCategory {
            objects: objects.iter().map(|s| s.to_string()).collect(),
            morphisms,
            identities,
            composition,
        }
    }

    /// Every pair of objects has exactly one morphism between them.
    pub fn indiscrete(objects: &[&str]) -> FiniteCategory {
        let n = objects.len();
        Self::thin(objects, &vec![vec![true; n]; n])
    }

    /// One-object category of a finite monoid. `table[a][b]` is `a·b`, read
    /// as composition `a ∘ b`; element 0 must be the unit.
    pub fn monoid(names: &[&str], table: &[Vec<usize>]) -> Result<FiniteCategory, FinCatError> {
        let m = names.len();
        if table.len() != m || table.iter().any(|r| r.len() != m) {
            return Err(FinCatError::Malformed("monoid table shape".into()));
        }
        let morphisms = names
            .iter()
            .map(|s| Morphism {
                name: s.to_string(),
                source: 0,
                target: 0,
            })
            .collect();
        let mut composition = vec![None; m * m];
        for a in 0..m {
            for b in 0..m {
                composition[a * m + b] = Some(table[a][b]);
            }
        }
        Self::build(vec!["*".into()], morphisms, vec![0], composition)
    }

    /// The cyclic group `Z/n` as a one-object category; element `k` is `g^k`.
    pub fn cyclic_group(n: usize) -> FiniteCategory {
        let names: Vec<String> = (0..n)
            .map(|k| match k {
                0 => "1".to_string(),
                1 => "g".to_string(),
                _ => format!("g{k}"),
            })
            .collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let table: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::monoid(&refs, &table).expect("cyclic groups are valid")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn terminal_is_valid() {
        let t = FiniteCategory::terminal();
        assert!(t.validate().is_ok());
        assert_eq!(t.morphism_count(), 1);
    }

    #[test]
    fn arrow_identity_law() {
        let a = FiniteCategory::arrow();
        let f = a.morphism_by_name("f").unwrap();
        let one_y = a.identity(a.object_by_name("y").unwrap());
        assert_eq!(a.compose(one_y, f).unwrap(), f);
        assert!(matches!(a.compose(f, one_y), Err(FinCatError::NotComposable { .. })));
    }

    #[test]
    fn z2_monoid() {
        let c = FiniteCategory::monoid(&["1", "g"], &[vec![0, 1], vec![1, 0]]).unwrap();
        assert!(c.validate().is_ok());
        assert_eq!(c.compose(1, 1).unwrap(), 0);
    }

    #[test]
    fn broken_table_is_reported() {
        let bad = FiniteCategory::monoid(&["1", "a", "b"], &[vec![0, 1, 2], vec![1, 2, 0], vec![2, 1, 1]]);
        match bad {
            Err(FinCatError::InvalidCategory(r)) => assert!(!r.is_ok()),
            other => panic!("expected invalid, got {other:?}"),
        }
    }

    #[test]
    fn components() {
        assert_eq!(FiniteCategory::discrete(&["a", "b", "c"]).pi0().len(), 3);
        assert_eq!(FiniteCategory::arrow().pi0().len(), 1);
        let u = FiniteCategory::arrow().disjoint_union(&FiniteCategory::terminal());
        assert!(u.validate().is_ok());
        assert_eq!(u.pi0(), vec![vec![0, 1], vec![2]]);
    }

    #[test]
    fn opposite_and_product() {
        let t = FiniteCategory::terminal();
        assert_eq!(t.opposite(), t);
        let c = FiniteCategory::preorder(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap();
        let op = c.opposite();
        assert!(op.validate().is_ok());
        assert_eq!(op.morphism_count(), c.morphism_count());
        let p = t.product(&c);
        assert!(p.validate().is_ok());
        assert_eq!(p.morphism_count(), c.morphism_count());
        assert_eq!(p.object_count(), c.object_count());
        let pp = c.product(&FiniteCategory::cyclic_group(2));
        assert!(pp.validate().is_ok());
    }

    #[test]
    fn empty_category_is_legal() {
        let e = FiniteCategory::empty();
        assert!(e.validate().is_ok());
        assert!(e.pi0().is_empty());
    }
}
