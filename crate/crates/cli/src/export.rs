//! Canonical, diff-stable exports.

use std::collections::BTreeMap;

use bwcohom::abelian::{GroupInvariants, IntMatrix, PresentedGroup};
use bwcohom::bwcomplex::CochainComplex;
use bwcohom::factorization::FactorizationCategory;
use bwcohom::fincat::{enumerate_sequences, FiniteCategory};
use bwcohom::natsys::NaturalSystem;
use num_bigint::BigInt;
use serde::Serialize;
use serde_json::Number;

use crate::error::CliError;
use crate::schema::*;

pub fn number(n: &BigInt) -> Number {
    n.to_string().parse().expect("decimal integers are JSON numbers")
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct InvariantsJson {
    pub rank: usize,
    pub torsion: Vec<Number>,
}

impl From<&GroupInvariants> for InvariantsJson {
    fn from(g: &GroupInvariants) -> Self {
        InvariantsJson {
            rank: g.free_rank,
            torsion: g.torsion.iter().map(number).collect(),
        }
    }
}

/// Row-major with explicit shape.
#[derive(Clone, Debug, Serialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Number>,
}

impl From<&IntMatrix> for MatrixJson {
    fn from(m: &IntMatrix) -> Self {
        MatrixJson {
            rows: m.rows(),
            cols: m.cols(),
            entries: m.entries().iter().map(number).collect(),
        }
    }
}

fn small_rows(m: &IntMatrix) -> Result<Vec<Vec<i64>>, CliError> {
    m.to_i64_rows()
        .ok_or_else(|| CliError::Usage("a matrix entry does not fit in 64 bits".into()))
}

fn group_spec(g: &PresentedGroup) -> Result<GroupSpec, CliError> {
    let columns = small_rows(&g.relations().transpose())?;
    Ok(GroupSpec::Presented {
        generators: g.generators(),
        relations: columns,
    })
}

/// Every identity and composite written out, so that the file does not
/// depend on naming conventions.
pub fn category_spec(c: &FiniteCategory) -> CategorySpec {
    let m = c.morphism_count();
    let morphisms = c
        .morphisms()
        .iter()
        .map(|f| {
            (
                f.name.clone(),
                c.object_name(f.source).to_string(),
                c.object_name(f.target).to_string(),
            )
        })
        .collect();
    let identities = c.identities().iter().map(|&i| c.morphism_name(i).to_string()).collect();
    let mut composites = Vec::new();
    for f in 0..m {
        for g in 0..m {
            if c.is_identity(f) || c.is_identity(g) {
                continue;
            }
            if let Some(gf) = c.composite(g, f) {
                composites.push((
                    c.morphism_name(f).to_string(),
                    c.morphism_name(g).to_string(),
                    c.morphism_name(gf).to_string(),
                ));
            }
        }
    }
    CategorySpec::Explicit {
        objects: c.objects().to_vec(),
        morphisms,
        identities: Some(identities),
        composites,
    }
}

pub fn category_file(name: &str, c: &FiniteCategory) -> WorkspaceFile {
    let mut file = WorkspaceFile::new();
    file.categories.insert(name.to_string(), category_spec(c));
    file
}

/// `FC` as an explicit category, annotated with the base morphism behind
/// each object and the pair `(h, k)` behind each morphism.
pub fn factorization_file(name: &str, fc: &FactorizationCategory) -> WorkspaceFile {
    let c = fc.base();
    let target = format!("F({name})");
    let mut file = category_file(&target, fc.category());
    let mut notes = BTreeMap::new();
    for f in 0..c.morphism_count() {
        notes.insert(
            c.morphism_name(f).to_string(),
            format!(
                "object for {}: {} -> {}",
                c.morphism_name(f),
                c.object_name(c.source(f)),
                c.object_name(c.target(f))
            ),
        );
    }
    for (i, p) in fc.pairs().iter().enumerate() {
        notes.insert(
            fc.category().morphism_name(i).to_string(),
            format!(
                "h = {}, k = {}: {} -> {}",
                c.morphism_name(p.h),
                c.morphism_name(p.k),
                c.morphism_name(p.source),
                c.morphism_name(p.target)
            ),
        );
    }
    file.annotations.insert(target, notes);
    file
}

/// The base category and the system given by values and generating actions.
pub fn system_file(category: &str, name: &str, d: &NaturalSystem) -> Result<WorkspaceFile, CliError> {
    let fc = d.factorization();
    let c = fc.base();
    let mut file = category_file(category, c);
    let mut values = BTreeMap::new();
    for f in 0..c.morphism_count() {
        values.insert(c.morphism_name(f).to_string(), group_spec(d.value(f))?);
    }
    let (incoming, outgoing) = (c.incoming(), c.outgoing());
    let (mut left, mut right) = (Vec::new(), Vec::new());
    for f in 0..c.morphism_count() {
        for &h in incoming[c.source(f)].iter().filter(|&&h| !c.is_identity(h)) {
            let p = fc.left(f, h).expect("composable");
            left.push(GeneratorAction {
                on: c.morphism_name(f).to_string(),
                by: c.morphism_name(h).to_string(),
                matrix: small_rows(d.action(p).matrix())?,
            });
        }
        for &k in outgoing[c.target(f)].iter().filter(|&&k| !c.is_identity(k)) {
            let p = fc.right(f, k).expect("composable");
            right.push(GeneratorAction {
                on: c.morphism_name(f).to_string(),
                by: c.morphism_name(k).to_string(),
                matrix: small_rows(d.action(p).matrix())?,
            });
        }
    }
    file.natural_systems.insert(
        name.to_string(),
        SystemSpec::Generators {
            category: category.to_string(),
            values,
            left,
            right,
        },
    );
    Ok(file)
}

#[derive(Debug, Serialize)]
pub struct NerveCell {
    pub dimension: usize,
    /// `x0, …, xn` along the chain.
    pub vertices: Vec<String>,
    /// `σ1, …, σn` of the sequence `x0 ← σ1 ⋯ ← σn xn`.
    pub morphisms: Vec<String>,
    pub degenerate: bool,
}

#[derive(Debug, Serialize)]
pub struct NerveFile {
    pub format: &'static str,
    pub version: u32,
    pub category: String,
    pub max_dimension: usize,
    pub counts: Vec<usize>,
    pub cells: Vec<NerveCell>,
}

/// Simplices of the nerve in dimensions `0..n`, degenerate ones flagged.
pub fn nerve_file(name: &str, c: &FiniteCategory, n: usize) -> NerveFile {
    let mut cells = Vec::new();
    let mut counts = Vec::new();
    for dim in 0..n {
        let seqs = enumerate_sequences(c, dim);
        counts.push(seqs.len());
        for s in seqs {
            cells.push(NerveCell {
                dimension: dim,
                vertices: s.objects(c).iter().map(|&x| c.object_name(x).to_string()).collect(),
                morphisms: s.morphisms().iter().map(|&f| c.morphism_name(f).to_string()).collect(),
                degenerate: s.morphisms().iter().any(|&f| c.is_identity(f)),
            });
        }
    }
    NerveFile {
        format: "bwcohom-nerve",
        version: VERSION,
        category: name.to_string(),
        max_dimension: n.saturating_sub(1),
        counts,
        cells,
    }
}

#[derive(Debug, Serialize)]
pub struct BasisElement {
    /// Morphism ids `σ1, …, σn`.
    pub ids: Vec<usize>,
    pub morphisms: Vec<String>,
    /// `x0` for the empty sequence.
    pub object: String,
    /// The composite whose value is the coefficient group.
    pub composite: String,
}

#[derive(Debug, Serialize)]
pub struct DegreeJson {
    pub degree: usize,
    pub basis: Vec<BasisElement>,
    pub generators: usize,
    /// One column per relation.
    pub relations: MatrixJson,
    /// `d^n: F^n → F^{n+1}`; absent in the top degree.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub differential: Option<MatrixJson>,
    /// `H^n`; absent in the top degree.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cohomology: Option<InvariantsJson>,
}

#[derive(Debug, Serialize)]
pub struct ComplexFile {
    pub format: &'static str,
    pub version: u32,
    pub category: String,
    pub system: String,
    pub max_degree: usize,
    pub degrees: Vec<DegreeJson>,
}

pub fn complex_file(category: &str, system: &str, k: &CochainComplex) -> Result<ComplexFile, CliError> {
    let c = k.system().base().clone();
    let basis = k.basis();
    let n = k.max_degree();
    let mut degrees = Vec::with_capacity(n + 1);
    for deg in 0..=n {
        let elements = (0..basis.len(deg))
            .map(|i| {
                let ids = basis.morphisms(deg, i).to_vec();
                BasisElement {
                    morphisms: ids.iter().map(|&f| c.morphism_name(f).to_string()).collect(),
                    ids,
                    object: c.object_name(basis.head(deg, i)).to_string(),
                    composite: c.morphism_name(basis.composite(deg, i)).to_string(),
                }
            })
            .collect();
        let group = k.presented(deg);
        let (differential, cohomology) = if deg < n {
            let d = k.differential_hom(deg).map_err(|e| CliError::Invalid(e.to_string()))?;
            let h = k.cohomology(deg).map_err(|e| CliError::Invalid(e.to_string()))?;
            (Some(MatrixJson::from(d.matrix())), Some(InvariantsJson::from(&h)))
        } else {
            (None, None)
        };
        degrees.push(DegreeJson {
            degree: deg,
            basis: elements,
            generators: group.generators(),
            relations: MatrixJson::from(group.relations()),
            differential,
            cohomology,
        });
    }
    Ok(ComplexFile {
        format: "bwcohom-complex",
        version: VERSION,
        category: category.to_string(),
        system: system.to_string(),
        max_degree: n,
        degrees,
    })
}
