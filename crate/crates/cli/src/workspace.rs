//! Resolves a [`WorkspaceFile`] into validated library objects.
//!
//! Unknown names and definition cycles are reference errors. Structures that
//! fail their axioms are collected as violations; anything defined in terms
//! of an invalid structure is reported as well and left out.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::path::Path;
use std::sync::Arc;

use bwcohom::abelian::{IntMatrix, PresentedGroup};
use bwcohom::factorization::FactorizationCategory;
use bwcohom::fincat::{CategoryViolation, FiniteCategory, Functor, Morphism, MorphismId, NaturalTransformation};
use bwcohom::localization::{Reflection, Side};
use bwcohom::natsys::NaturalSystem;

use crate::error::CliError;
use crate::schema::*;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Violation {
    pub section: &'static str,
    pub name: String,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} `{}`: {}", self.section, self.name, self.detail)
    }
}

/// Outcome of resolving one entry.
enum Slot<T> {
    Pending,
    Ready(T),
    Invalid,
}

#[derive(Default)]
pub struct Workspace {
    pub file: WorkspaceFile,
    categories: BTreeMap<String, Arc<FiniteCategory>>,
    factorizations: BTreeMap<String, Arc<FactorizationCategory>>,
    functors: BTreeMap<String, Functor>,
    transformations: BTreeMap<String, NaturalTransformation>,
    systems: BTreeMap<String, (String, Arc<NaturalSystem>)>,
    localizations: BTreeMap<String, Reflection>,
    pub violations: Vec<Violation>,
}

pub fn read(path: &Path) -> Result<WorkspaceFile, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse(path, &text)
}

pub fn parse(path: &Path, text: &str) -> Result<WorkspaceFile, CliError> {
    let file: WorkspaceFile = serde_json::from_str(text).map_err(|e| CliError::Parse {
        path: path.to_path_buf(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    if file.format != FORMAT || file.version != VERSION {
        return Err(CliError::Parse {
            path: path.to_path_buf(),
            line: 1,
            column: 1,
            message: format!(
                "expected format `{FORMAT}` version {VERSION}, found `{}` version {}",
                file.format, file.version
            ),
        });
    }
    Ok(file)
}

pub fn load(path: &Path) -> Result<Workspace, CliError> {
    Workspace::resolve(read(path)?)
}

/// Parses `"0"`, `"Z"`, `"Z^3"`, `"Z/4"` and sums joined by `+` or `⊕`.
pub fn parse_group(spec: &GroupSpec) -> Result<PresentedGroup, String> {
    match spec {
        GroupSpec::Presented { generators, relations } => {
            let mut m = IntMatrix::zeros(*generators, relations.len());
            for (j, r) in relations.iter().enumerate() {
                if r.len() != *generators {
                    return Err(format!(
                        "relation {j} has {} entries for {generators} generators",
                        r.len()
                    ));
                }
                for (i, &v) in r.iter().enumerate() {
                    m.set(i, j, v.into());
                }
            }
            PresentedGroup::new(*generators, m).map_err(|e| e.to_string())
        }
        GroupSpec::Named(s) => {
            let mut orders: Vec<u64> = Vec::new();
            for part in s.split(['+', '⊕']) {
                let part = part.trim();
                if part == "0" {
                    continue;
                }
                if let Some(n) = part.strip_prefix("Z/") {
                    let n: u64 = n.trim().parse().map_err(|_| format!("bad cyclic order in `{part}`"))?;
                    if n == 0 {
                        return Err(format!("`{part}`: write Z for the infinite cyclic group"));
                    }
                    orders.push(n);
                } else if let Some(r) = part.strip_prefix("Z^") {
                    let r: usize = r.trim().parse().map_err(|_| format!("bad rank in `{part}`"))?;
                    orders.extend(std::iter::repeat_n(0, r));
                } else if part == "Z" {
                    orders.push(0);
                } else {
                    return Err(format!("cannot read group `{part}`"));
                }
            }
            let n = orders.len();
            let mut m = IntMatrix::zeros(n, 0);
            let finite: Vec<(usize, u64)> = orders.iter().copied().enumerate().filter(|&(_, o)| o > 0).collect();
            if !finite.is_empty() {
                m = IntMatrix::zeros(n, finite.len());
                for (j, (i, o)) in finite.into_iter().enumerate() {
                    m.set(i, j, o.into());
                }
            }
            PresentedGroup::new(n, m).map_err(|e| e.to_string())
        }
    }
}

pub fn matrix(rows: &[Vec<i64>], expect_rows: usize, expect_cols: usize) -> Result<IntMatrix, String> {
    if rows.len() != expect_rows || rows.iter().any(|r| r.len() != expect_cols) {
        return Err(format!("matrix must be {expect_rows} × {expect_cols}"));
    }
    let mut m = IntMatrix::zeros(expect_rows, expect_cols);
    for (i, r) in rows.iter().enumerate() {
        for (j, &v) in r.iter().enumerate() {
            m.set(i, j, v.into());
        }
    }
    Ok(m)
}

/// Describes a category violation by morphism names.
pub fn describe_category_violation(c: &FiniteCategory, v: &CategoryViolation) -> String {
    let n = |f: MorphismId| c.morphism_name(f).to_string();
    match v {
        CategoryViolation::IdentityWrongEnds { object, .. } => {
            format!("identity of {} is not an endomorphism of it", c.object_name(*object))
        }
        CategoryViolation::MissingComposite { f, g } => format!("composite {} ∘ {} is missing", n(*g), n(*f)),
        CategoryViolation::SpuriousComposite { f, g } => {
            format!("composite {} ∘ {} is defined but they are not composable", n(*g), n(*f))
        }
        CategoryViolation::CompositeWrongEnds { f, g, gf } => {
            format!(
                "composite ({}, {}, {}) has the wrong source or target",
                n(*f),
                n(*g),
                n(*gf)
            )
        }
        CategoryViolation::LeftIdentity { f } => format!("identity is not a left unit for {}", n(*f)),
        CategoryViolation::RightIdentity { f } => format!("identity is not a right unit for {}", n(*f)),
        CategoryViolation::NotAssociative { f, g, h } => {
            format!("composition is not associative on ({}, {}, {})", n(*f), n(*g), n(*h))
        }
    }
}

fn explicit_category(
    name: &str,
    objects: &[String],
    arrows: &[(String, String, String)],
    identities: Option<&[String]>,
    composites: &[(String, String, String)],
) -> Result<Result<FiniteCategory, String>, CliError> {
    let dangling = |what: &str, s: &str| CliError::Reference(format!("category `{name}`: unknown {what} `{s}`"));
    let obj = |s: &str| objects.iter().position(|o| o == s).ok_or_else(|| dangling("object", s));
    let mut morphisms: Vec<Morphism> = Vec::new();
    if identities.is_none() {
        morphisms.extend(objects.iter().enumerate().map(|(i, o)| Morphism {
            name: format!("1_{o}"),
            source: i,
            target: i,
        }));
    }
    for (f, s, t) in arrows {
        if morphisms.iter().any(|g| &g.name == f) {
            return Ok(Err(format!("morphism `{f}` is declared twice")));
        }
        morphisms.push(Morphism {
            name: f.clone(),
            source: obj(s)?,
            target: obj(t)?,
        });
    }
    let mor = |s: &str| {
        morphisms
            .iter()
            .position(|f| f.name == s)
            .ok_or_else(|| dangling("morphism", s))
    };
    let identities: Vec<usize> = match identities {
        None => (0..objects.len()).collect(),
        Some(ids) => {
            if ids.len() != objects.len() {
                return Ok(Err(format!("{} identities for {} objects", ids.len(), objects.len())));
            }
            ids.iter().map(|i| mor(i)).collect::<Result<_, _>>()?
        }
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
    let c = match FiniteCategory::from_tables(objects.to_vec(), morphisms, identities, table) {
        Ok(c) => c,
        Err(e) => return Ok(Err(e.to_string())),
    };
    let report = c.validate();
    if !report.is_ok() {
        let lines: Vec<String> = report
            .violations()
            .iter()
            .map(|v| describe_category_violation(&c, v))
            .collect();
        return Ok(Err(lines.join("; ")));
    }
    Ok(Ok(c))
}

fn refs(v: &[String]) -> Vec<&str> {
    v.iter().map(String::as_str).collect()
}

impl Workspace {
    /// Resolves every section. Reference errors abort; axiom violations are
    /// collected in [`Workspace::violations`].
    pub fn resolve(file: WorkspaceFile) -> Result<Workspace, CliError> {
        let mut ws = Workspace {
            file,
            ..Default::default()
        };
        let mut state: HashMap<(&'static str, String), Slot<()>> = HashMap::new();
        let cats: Vec<String> = ws.file.categories.keys().cloned().collect();
        for name in &cats {
            ws.resolve_category(name, &mut state)?;
        }
        let names: Vec<String> = ws.file.functors.keys().cloned().collect();
        for name in &names {
            ws.resolve_functor(name)?;
        }
        let names: Vec<String> = ws.file.natural_transformations.keys().cloned().collect();
        for name in &names {
            ws.resolve_transformation(name)?;
        }
        let names: Vec<String> = ws.file.natural_systems.keys().cloned().collect();
        for name in &names {
            ws.resolve_system(name, &mut state)?;
        }
        let names: Vec<String> = ws.file.localizations.keys().cloned().collect();
        for name in &names {
            ws.resolve_localization(name)?;
        }
        for (i, task) in ws.file.tasks.clone().iter().enumerate() {
            let (section, name) = match task {
                TaskSpec::Cohomology { category, system, .. } => {
                    ws.require_category_name(category, &format!("task {i}"))?;
                    ("natural_systems", system)
                }
                TaskSpec::LocalizationCheck {
                    localization, system, ..
                } => {
                    if !ws.file.localizations.contains_key(localization) {
                        return Err(CliError::Reference(format!(
                            "task {i}: unknown localization `{localization}`"
                        )));
                    }
                    ("natural_systems", system)
                }
            };
            if !ws.file.natural_systems.contains_key(name) && !name.starts_with("constant:") {
                return Err(CliError::Reference(format!(
                    "task {i}: unknown {section} entry `{name}`"
                )));
            }
        }
        ws.violations.sort();
        Ok(ws)
    }

    fn invalid(&mut self, section: &'static str, name: &str, detail: impl Into<String>) {
        self.violations.push(Violation {
            section,
            name: name.to_string(),
            detail: detail.into(),
        });
    }

    fn require_category_name(&self, name: &str, context: &str) -> Result<(), CliError> {
        if self.file.categories.contains_key(name) {
            Ok(())
        } else {
            Err(CliError::Reference(format!("{context}: unknown category `{name}`")))
        }
    }

    fn resolve_category(
        &mut self,
        name: &str,
        state: &mut HashMap<(&'static str, String), Slot<()>>,
    ) -> Result<Option<Arc<FiniteCategory>>, CliError> {
        let key = ("categories", name.to_string());
        match state.get(&key) {
            Some(Slot::Ready(())) => return Ok(self.categories.get(name).cloned()),
            Some(Slot::Invalid) => return Ok(None),
            Some(Slot::Pending) => {
                return Err(CliError::Reference(format!(
                    "category `{name}` is defined in terms of itself"
                )))
            }
            None => {}
        }
        let Some(spec) = self.file.categories.get(name).cloned() else {
            return Err(CliError::Reference(format!("unknown category `{name}`")));
        };
        state.insert(key.clone(), Slot::Pending);
        let mut dep = |ws: &mut Self, other: &str| -> Result<Option<Arc<FiniteCategory>>, CliError> {
            ws.resolve_category(other, state)
        };
        let built: Result<FiniteCategory, String> = match &spec {
            CategorySpec::Explicit {
                objects,
                morphisms,
                identities,
                composites,
            } => explicit_category(name, objects, morphisms, identities.as_deref(), composites)?,
            CategorySpec::Preorder { objects, arrows } => {
                let arrows: Vec<(&str, &str)> = arrows.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
                FiniteCategory::preorder(&refs(objects), &arrows).map_err(|e| e.to_string())
            }
            CategorySpec::Monoid { elements, table } => {
                FiniteCategory::monoid(&refs(elements), table).map_err(|e| e.to_string())
            }
            CategorySpec::CyclicGroup { order } => {
                if *order == 0 {
                    Err("cyclic group of order 0".into())
                } else {
                    Ok(FiniteCategory::cyclic_group(*order))
                }
            }
            CategorySpec::Discrete { objects } => Ok(FiniteCategory::discrete(&refs(objects))),
            CategorySpec::Indiscrete { objects } => Ok(FiniteCategory::indiscrete(&refs(objects))),
            CategorySpec::Terminal => Ok(FiniteCategory::terminal()),
            CategorySpec::Empty => Ok(FiniteCategory::empty()),
            CategorySpec::Arrow => Ok(FiniteCategory::arrow()),
            CategorySpec::Opposite { of } => match dep(self, of)? {
                Some(c) => Ok(c.opposite()),
                None => Err(format!("depends on invalid category `{of}`")),
            },
            CategorySpec::Product { left, right } | CategorySpec::DisjointUnion { left, right } => {
                match (dep(self, left)?, dep(self, right)?) {
                    (Some(a), Some(b)) => Ok(if matches!(spec, CategorySpec::Product { .. }) {
                        a.product(&b)
                    } else {
                        a.disjoint_union(&b)
                    }),
                    _ => Err(format!("depends on invalid category `{left}` or `{right}`")),
                }
            }
            CategorySpec::Factorization { of } => match dep(self, of)? {
                Some(c) => Ok((**FactorizationCategory::build(c).category()).clone()),
                None => Err(format!("depends on invalid category `{of}`")),
            },
        };
        match built {
            Ok(c) => {
                let c = Arc::new(c);
                self.categories.insert(name.to_string(), c.clone());
                state.insert(key, Slot::Ready(()));
                Ok(Some(c))
            }
            Err(detail) => {
                self.invalid("categories", name, detail);
                state.insert(key, Slot::Invalid);
                Ok(None)
            }
        }
    }

    fn resolve_functor(&mut self, name: &str) -> Result<(), CliError> {
        let spec = self.file.functors[name].clone();
        let ctx = format!("functor `{name}`");
        self.require_category_name(&spec.source, &ctx)?;
        self.require_category_name(&spec.target, &ctx)?;
        let (Some(src), Some(tgt)) = (self.category(&spec.source), self.category(&spec.target)) else {
            self.invalid("functors", name, "depends on an invalid category");
            return Ok(());
        };
        let mut objects = Vec::with_capacity(src.object_count());
        for x in src.objects() {
            let Some(y) = spec.objects.get(x) else {
                self.invalid("functors", name, format!("no image for object `{x}`"));
                return Ok(());
            };
            let y = tgt
                .object_by_name(y)
                .ok_or_else(|| CliError::Reference(format!("{ctx}: unknown object `{y}` of `{}`", spec.target)))?;
            objects.push(y);
        }
        for key in spec.objects.keys() {
            if src.object_by_name(key).is_none() {
                return Err(CliError::Reference(format!(
                    "{ctx}: unknown object `{key}` of `{}`",
                    spec.source
                )));
            }
        }
        let mut morphisms = Vec::with_capacity(src.morphism_count());
        for f in 0..src.morphism_count() {
            let fname = src.morphism_name(f);
            let image = match spec.morphisms.get(fname) {
                Some(g) => tgt.morphism_by_name(g).ok_or_else(|| {
                    CliError::Reference(format!("{ctx}: unknown morphism `{g}` of `{}`", spec.target))
                })?,
                None if src.is_identity(f) => tgt.identity(objects[src.source(f)]),
                None => {
                    self.invalid("functors", name, format!("no image for morphism `{fname}`"));
                    return Ok(());
                }
            };
            morphisms.push(image);
        }
        for key in spec.morphisms.keys() {
            if src.morphism_by_name(key).is_none() {
                return Err(CliError::Reference(format!(
                    "{ctx}: unknown morphism `{key}` of `{}`",
                    spec.source
                )));
            }
        }
        match Functor::new(src, tgt, objects, morphisms) {
            Ok(f) => {
                self.functors.insert(name.to_string(), f);
            }
            Err(e) => self.invalid("functors", name, e.to_string()),
        }
        Ok(())
    }

    fn resolve_transformation(&mut self, name: &str) -> Result<(), CliError> {
        let spec = self.file.natural_transformations[name].clone();
        let ctx = format!("natural transformation `{name}`");
        for f in [&spec.source, &spec.target] {
            if !self.file.functors.contains_key(f) {
                return Err(CliError::Reference(format!("{ctx}: unknown functor `{f}`")));
            }
        }
        let (Some(phi), Some(psi)) = (
            self.functors.get(&spec.source).cloned(),
            self.functors.get(&spec.target).cloned(),
        ) else {
            self.invalid("natural_transformations", name, "depends on an invalid functor");
            return Ok(());
        };
        if phi.source() != psi.source() || phi.target() != psi.target() {
            self.invalid("natural_transformations", name, "functors are not parallel");
            return Ok(());
        }
        let (d, c) = (phi.source().clone(), phi.target().clone());
        let mut components = Vec::with_capacity(d.object_count());
        for x in d.objects() {
            let Some(a) = spec.components.get(x) else {
                self.invalid("natural_transformations", name, format!("no component at `{x}`"));
                return Ok(());
            };
            components.push(
                c.morphism_by_name(a)
                    .ok_or_else(|| CliError::Reference(format!("{ctx}: unknown morphism `{a}`")))?,
            );
        }
        for key in spec.components.keys() {
            if d.object_by_name(key).is_none() {
                return Err(CliError::Reference(format!("{ctx}: unknown object `{key}`")));
            }
        }
        match NaturalTransformation::new(phi, psi, components) {
            Ok(t) => {
                self.transformations.insert(name.to_string(), t);
            }
            Err(e) => self.invalid("natural_transformations", name, e.to_string()),
        }
        Ok(())
    }

    /// `FC` for a category, built once.
    pub fn factorization(&mut self, category: &str) -> Option<Arc<FactorizationCategory>> {
        if let Some(fc) = self.factorizations.get(category) {
            return Some(fc.clone());
        }
        let c = self.category(category)?;
        let fc = Arc::new(FactorizationCategory::build(c));
        self.factorizations.insert(category.to_string(), fc.clone());
        Some(fc)
    }

    /// Name of the workspace category equal to `c`, if any.
    fn category_name_of(&self, c: &FiniteCategory) -> Option<String> {
        self.categories.iter().find(|(_, d)| ***d == *c).map(|(n, _)| n.clone())
    }

    fn resolve_system(
        &mut self,
        name: &str,
        state: &mut HashMap<(&'static str, String), Slot<()>>,
    ) -> Result<Option<(String, Arc<NaturalSystem>)>, CliError> {
        let key = ("natural_systems", name.to_string());
        match state.get(&key) {
            Some(Slot::Ready(())) => return Ok(self.systems.get(name).cloned()),
            Some(Slot::Invalid) => return Ok(None),
            Some(Slot::Pending) => {
                return Err(CliError::Reference(format!(
                    "natural system `{name}` is defined in terms of itself"
                )))
            }
            None => {}
        }
        let Some(spec) = self.file.natural_systems.get(name).cloned() else {
            return Err(CliError::Reference(format!("unknown natural system `{name}`")));
        };
        state.insert(key.clone(), Slot::Pending);
        let ctx = format!("natural system `{name}`");
        let built: Result<(String, NaturalSystem), String> = match &spec {
            SystemSpec::Constant { category, group } => {
                self.require_category_name(category, &ctx)?;
                match self.factorization(category) {
                    None => Err(format!("depends on invalid category `{category}`")),
                    Some(fc) => parse_group(group).map(|g| (category.clone(), NaturalSystem::constant(fc, &g))),
                }
            }
            SystemSpec::Generators {
                category,
                values,
                left,
                right,
            } => {
                self.require_category_name(category, &ctx)?;
                match self.factorization(category) {
                    None => Err(format!("depends on invalid category `{category}`")),
                    Some(fc) => self
                        .generated_system(&ctx, fc, values, left, right)?
                        .map(|d| (category.clone(), d)),
                }
            }
            SystemSpec::Pullback {
                system,
                along_transformation,
                along_functor,
            } => {
                if !self.file.natural_systems.contains_key(system) {
                    return Err(CliError::Reference(format!("{ctx}: unknown natural system `{system}`")));
                }
                let inner = self.resolve_system(system, state)?;
                let along = match (along_transformation, along_functor) {
                    (Some(t), None) => {
                        if !self.file.natural_transformations.contains_key(t) {
                            return Err(CliError::Reference(format!(
                                "{ctx}: unknown natural transformation `{t}`"
                            )));
                        }
                        self.transformations.get(t).cloned()
                    }
                    (None, Some(f)) => {
                        if !self.file.functors.contains_key(f) {
                            return Err(CliError::Reference(format!("{ctx}: unknown functor `{f}`")));
                        }
                        self.functors.get(f).map(NaturalTransformation::identity)
                    }
                    _ => {
                        return Err(CliError::Usage(format!(
                            "{ctx}: give exactly one of along_transformation and along_functor"
                        )))
                    }
                };
                match (inner, along) {
                    (Some((_, d)), Some(alpha)) => {
                        if **d.base() != **alpha.codomain() {
                            Err("the transformation does not land in the system's category".into())
                        } else {
                            match self.category_name_of(alpha.domain()) {
                                None => Err("the domain category is not declared in the workspace".into()),
                                Some(dom) => {
                                    let fd = self.factorization(&dom).expect("declared category");
                                    d.pullback_along_nat(fd, &alpha)
                                        .map(|p| (dom, p))
                                        .map_err(|e| e.to_string())
                                }
                            }
                        }
                    }
                    _ => Err("depends on an invalid structure".into()),
                }
            }
        };
        match built {
            Ok((cat, d)) => {
                let entry = (cat, Arc::new(d));
                self.systems.insert(name.to_string(), entry.clone());
                state.insert(key, Slot::Ready(()));
                Ok(Some(entry))
            }
            Err(detail) => {
                self.invalid("natural_systems", name, detail);
                state.insert(key, Slot::Invalid);
                Ok(None)
            }
        }
    }

    fn generated_system(
        &self,
        ctx: &str,
        fc: Arc<FactorizationCategory>,
        values: &BTreeMap<String, GroupSpec>,
        left: &[GeneratorAction],
        right: &[GeneratorAction],
    ) -> Result<Result<NaturalSystem, String>, CliError> {
        let c = fc.base().clone();
        let mor = |s: &str| {
            c.morphism_by_name(s)
                .ok_or_else(|| CliError::Reference(format!("{ctx}: unknown morphism `{s}`")))
        };
        for key in values.keys() {
            mor(key)?;
        }
        let mut groups = Vec::with_capacity(c.morphism_count());
        for f in 0..c.morphism_count() {
            let Some(g) = values.get(c.morphism_name(f)) else {
                return Ok(Err(format!("no value at `{}`", c.morphism_name(f))));
            };
            match parse_group(g) {
                Ok(g) => groups.push(g),
                Err(e) => return Ok(Err(e)),
            }
        }
        let mut tables = [HashMap::new(), HashMap::new()];
        for (side, actions) in [left, right].into_iter().enumerate() {
            for a in actions {
                let (f, u) = (mor(&a.on)?, mor(&a.by)?);
                let end = if side == 0 {
                    c.composite(f, u)
                } else {
                    c.composite(u, f)
                };
                let Some(end) = end else {
                    return Ok(Err(format!("`{}` does not compose with `{}`", a.by, a.on)));
                };
                match matrix(&a.matrix, groups[end].generators(), groups[f].generators()) {
                    Ok(m) => {
                        tables[side].insert((f, u), m);
                    }
                    Err(e) => return Ok(Err(format!("action of `{}` on `{}`: {e}", a.by, a.on))),
                }
            }
        }
        Ok(NaturalSystem::from_generators(fc, groups, &tables[0], &tables[1]).map_err(|e| e.to_string()))
    }

    fn resolve_localization(&mut self, name: &str) -> Result<(), CliError> {
        let spec = self.file.localizations[name].clone();
        let ctx = format!("localization `{name}`");
        for f in [&spec.phi, &spec.psi] {
            if !self.file.functors.contains_key(f) {
                return Err(CliError::Reference(format!("{ctx}: unknown functor `{f}`")));
            }
        }
        if !self.file.natural_transformations.contains_key(&spec.alpha) {
            return Err(CliError::Reference(format!(
                "{ctx}: unknown natural transformation `{}`",
                spec.alpha
            )));
        }
        let parts = (
            self.functors.get(&spec.phi).cloned(),
            self.functors.get(&spec.psi).cloned(),
            self.transformations.get(&spec.alpha).cloned(),
        );
        let (Some(phi), Some(psi), Some(alpha)) = parts else {
            self.invalid("localizations", name, "depends on an invalid structure");
            return Ok(());
        };
        let side = match spec.side {
            SideSpec::Local => Side::Local,
            SideSpec::Colocal => Side::Colocal,
        };
        match Reflection::new(side, phi, psi, alpha) {
            Ok(l) => {
                self.localizations.insert(name.to_string(), l);
            }
            Err(e) => self.invalid("localizations", name, e.to_string()),
        }
        Ok(())
    }

    pub fn category(&self, name: &str) -> Option<Arc<FiniteCategory>> {
        self.categories.get(name).cloned()
    }

    pub fn categories(&self) -> &BTreeMap<String, Arc<FiniteCategory>> {
        &self.categories
    }

    pub fn functor(&self, name: &str) -> Option<&Functor> {
        self.functors.get(name)
    }

    pub fn transformation(&self, name: &str) -> Option<&NaturalTransformation> {
        self.transformations.get(name)
    }

    /// A declared system, or `constant:<group>` on `category`.
    pub fn system(&mut self, name: &str, category: Option<&str>) -> Result<(String, Arc<NaturalSystem>), CliError> {
        if let Some(group) = name.strip_prefix("constant:") {
            let Some(category) = category else {
                return Err(CliError::Usage("a constant system needs a category".into()));
            };
            self.require_category_name(category, "constant system")?;
            let g = parse_group(&GroupSpec::Named(group.to_string())).map_err(CliError::Usage)?;
            let fc = self
                .factorization(category)
                .ok_or_else(|| CliError::Invalid(format!("category `{category}` is invalid")))?;
            return Ok((category.to_string(), Arc::new(NaturalSystem::constant(fc, &g))));
        }
        if !self.file.natural_systems.contains_key(name) {
            return Err(CliError::Reference(format!("unknown natural system `{name}`")));
        }
        self.systems
            .get(name)
            .cloned()
            .ok_or_else(|| CliError::Invalid(format!("natural system `{name}` is invalid")))
    }

    pub fn system_names(&self) -> BTreeSet<String> {
        self.systems.keys().cloned().collect()
    }

    pub fn localization(&self, name: &str) -> Result<&Reflection, CliError> {
        if !self.file.localizations.contains_key(name) {
            return Err(CliError::Reference(format!("unknown localization `{name}`")));
        }
        self.localizations
            .get(name)
            .ok_or_else(|| CliError::Invalid(format!("localization `{name}` is invalid")))
    }

    /// Counts of resolved entries per section.
    pub fn summary(&self) -> Vec<(&'static str, usize, usize)> {
        vec![
            ("categories", self.categories.len(), self.file.categories.len()),
            ("functors", self.functors.len(), self.file.functors.len()),
            (
                "natural_transformations",
                self.transformations.len(),
                self.file.natural_transformations.len(),
            ),
            ("natural_systems", self.systems.len(), self.file.natural_systems.len()),
            ("localizations", self.localizations.len(), self.file.localizations.len()),
        ]
    }
}
