//! On-disk workspace format.
//!
//! A workspace is one JSON document:
//!
//! ```json
//! {
//!   "format": "bwcohom-workspace",
//!   "version": 1,
//!   "categories": { "C": { "kind": "explicit", "objects": ["x", "y"],
//!                          "morphisms": [["f", "x", "y"]], "composites": [] } },
//!   "functors": {},
//!   "natural_transformations": {},
//!   "natural_systems": { "D": { "kind": "constant", "category": "C", "group": "Z" } },
//!   "localizations": {},
//!   "tasks": []
//! }
//! ```
//!
//! Identities are named `1_<object>` and not listed, unless an explicit
//! category gives an `identities` list naming them. A composite entry
//! `[f, g, h]` states `g ∘ f = h`. Groups are written `"0"`, `"Z"`, `"Z^2"`,
//! `"Z/4"` or sums such as `"Z + Z/2"`, or as an explicit presentation whose
//! relations are integer vectors in the generators. Matrices are lists of
//! rows; a homomorphism `Z^m → Z^n` is an `n × m` matrix.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

pub const FORMAT: &str = "bwcohom-workspace";
pub const VERSION: u32 = 1;

#[derive(Clone, Debug, Default, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct WorkspaceFile {
    pub format: String,
    pub version: u32,
    #[serde(default)]
    pub categories: BTreeMap<String, CategorySpec>,
    #[serde(default)]
    pub functors: BTreeMap<String, FunctorSpec>,
    #[serde(default)]
    pub natural_transformations: BTreeMap<String, TransformationSpec>,
    #[serde(default)]
    pub natural_systems: BTreeMap<String, SystemSpec>,
    #[serde(default)]
    pub localizations: BTreeMap<String, LocalizationSpec>,
    #[serde(default)]
    pub tasks: Vec<TaskSpec>,
    /// Free-form notes keyed by category name, then by object or morphism
    /// name. Ignored on load.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub annotations: BTreeMap<String, BTreeMap<String, String>>,
}

impl WorkspaceFile {
    pub fn new() -> Self {
        WorkspaceFile {
            format: FORMAT.into(),
            version: VERSION,
            ..Default::default()
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum CategorySpec {
    Explicit {
        objects: Vec<String>,
        /// `[name, source, target]`.
        morphisms: Vec<(String, String, String)>,
        /// Names of the identities, one per object, when they are listed
        /// among `morphisms`. Otherwise identities are implicit `1_<object>`.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        identities: Option<Vec<String>>,
        /// `[f, g, g∘f]`.
        #[serde(default)]
        composites: Vec<(String, String, String)>,
    },
    /// Thin category generated by the listed arrows.
    Preorder {
        objects: Vec<String>,
        arrows: Vec<(String, String)>,
    },
    /// One object; `table[a][b] = a ∘ b`, element 0 the unit.
    Monoid {
        elements: Vec<String>,
        table: Vec<Vec<usize>>,
    },
    CyclicGroup {
        order: usize,
    },
    Discrete {
        objects: Vec<String>,
    },
    Indiscrete {
        objects: Vec<String>,
    },
    Terminal,
    Empty,
    Arrow,
    Opposite {
        of: String,
    },
    Product {
        left: String,
        right: String,
    },
    DisjointUnion {
        left: String,
        right: String,
    },
    /// The factorization category `FC`.
    Factorization {
        of: String,
    },
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct FunctorSpec {
    pub source: String,
    pub target: String,
    pub objects: BTreeMap<String, String>,
    /// Identities may be omitted.
    #[serde(default)]
    pub morphisms: BTreeMap<String, String>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct TransformationSpec {
    pub source: String,
    pub target: String,
    /// Object of the domain to morphism of the codomain.
    pub components: BTreeMap<String, String>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(untagged)]
pub enum GroupSpec {
    Named(String),
    Presented {
        generators: usize,
        #[serde(default)]
        relations: Vec<Vec<i64>>,
    },
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct GeneratorAction {
    /// The morphism `f` the action starts from.
    pub on: String,
    /// `h` for `D(h, 1): D(f) → D(fh)`, `k` for `D(1, k): D(f) → D(kf)`.
    pub by: String,
    pub matrix: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum SystemSpec {
    Constant {
        category: String,
        group: GroupSpec,
    },
    /// Values on every morphism and the generating actions. Actions by
    /// identities default to identity matrices.
    Generators {
        category: String,
        values: BTreeMap<String, GroupSpec>,
        #[serde(default)]
        left: Vec<GeneratorAction>,
        #[serde(default)]
        right: Vec<GeneratorAction>,
    },
    /// `D F(α)` along a natural transformation, or `D F(φ)` along a functor.
    Pullback {
        system: String,
        #[serde(default)]
        along_transformation: Option<String>,
        #[serde(default)]
        along_functor: Option<String>,
    },
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum SideSpec {
    Local,
    Colocal,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct LocalizationSpec {
    pub side: SideSpec,
    /// `C → 𝒟`.
    pub phi: String,
    /// `𝒟 → C`.
    pub psi: String,
    /// Unit `1_C ⇒ ψφ` or counit `ψφ ⇒ 1_C`.
    pub alpha: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(tag = "command", rename_all = "kebab-case", deny_unknown_fields)]
pub enum TaskSpec {
    Cohomology {
        category: String,
        system: String,
        max_degree: usize,
    },
    LocalizationCheck {
        localization: String,
        system: String,
        max_degree: usize,
    },
}
