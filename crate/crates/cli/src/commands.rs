use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use bwcohom::abelian::GroupInvariants;
use bwcohom::bwcomplex::CochainComplex;
use bwcohom::fincat::{count_sequences, FiniteCategory};
use bwcohom::laws::{check_case, check_law, Law, LawConfig, LawReport};
use bwcohom::localization::{local_characterization, verify_theorem, LocalizationError};
use bwcohom::natsys::NaturalSystem;
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::error::CliError;
use crate::export::{self, InvariantsJson};
use crate::schema::TaskSpec;
use crate::workspace::{self, Workspace};

/// Sequence count per degree above which a warning is printed.
pub const SEQUENCE_WARNING: u128 = 100_000;

#[derive(Debug, Parser)]
#[command(name = "bwcohom", version, about = "Baues-Wirsching cohomology of finite categories")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Human,
    Machine,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ExportKind {
    Complex,
    Factorization,
    Nerve,
    Category,
    System,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Load a workspace and report every invalid structure.
    Validate {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// H^0 … H^{N-1} of a category with coefficients in a natural system.
    /// SYSTEM is a declared system or `constant:<group>`, e.g. `constant:Z/2`.
    Cohomology {
        file: PathBuf,
        category: String,
        system: String,
        #[arg(long, default_value_t = 4)]
        max_degree: usize,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Run the law suites on seeded random instances.
    CheckLaws {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        cases: u64,
        #[arg(long, default_value_t = 6)]
        max_morphisms: usize,
        #[arg(long, default_value_t = 4)]
        max_degree: usize,
        /// A law name such as `dh+hd`, or `all`.
        #[arg(long, default_value = "all")]
        law: String,
        /// Replay a single case.
        #[arg(long)]
        case: Option<u64>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Verify the (co)localization theorem for a declared localization.
    LocalizationCheck {
        file: PathBuf,
        localization: String,
        system: String,
        #[arg(long, default_value_t = 4)]
        max_degree: usize,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Write a canonical file for a category or system.
    Export {
        file: PathBuf,
        /// A category, or a system for `complex` and `system`.
        target: String,
        #[arg(long, value_enum)]
        what: ExportKind,
        /// Category of a `constant:<group>` target.
        #[arg(long)]
        category: Option<String>,
        #[arg(long, default_value_t = 4)]
        max_degree: usize,
        /// Write here instead of standard output.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Execute the tasks listed in a workspace.
    Run {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
}

pub struct Io<'a> {
    pub out: &'a mut dyn Write,
    pub err: &'a mut dyn Write,
}

impl Io<'_> {
    fn line(&mut self, s: impl AsRef<str>) -> Result<(), CliError> {
        writeln!(self.out, "{}", s.as_ref()).map_err(stdout_error)
    }

    fn warn(&mut self, s: impl AsRef<str>) {
        let _ = writeln!(self.err, "warning: {}", s.as_ref());
    }

    fn json<T: Serialize>(&mut self, value: &T) -> Result<(), CliError> {
        let text = serde_json::to_string_pretty(value).expect("serializable report");
        self.line(text)
    }
}

fn stdout_error(source: std::io::Error) -> CliError {
    CliError::Io {
        path: PathBuf::from("<stdout>"),
        source,
    }
}

pub fn execute(cli: Cli, io: &mut Io<'_>) -> Result<(), CliError> {
    match cli.command {
        Command::Validate { file, format } => validate(&file, format, io),
        Command::Cohomology {
            file,
            category,
            system,
            max_degree,
            format,
        } => {
            let mut ws = workspace::load(&file)?;
            cohomology(&mut ws, &category, &system, max_degree, format, io)
        }
        Command::CheckLaws {
            seed,
            cases,
            max_morphisms,
            max_degree,
            law,
            case,
            format,
        } => {
            let config = LawConfig {
                seed,
                cases,
                max_morphisms,
                max_degree,
            };
            check_laws(&config, &law, case, format, io)
        }
        Command::LocalizationCheck {
            file,
            localization,
            system,
            max_degree,
            format,
        } => {
            let mut ws = workspace::load(&file)?;
            localization_check(&mut ws, &localization, &system, max_degree, format, io)
        }
        Command::Export {
            file,
            target,
            what,
            category,
            max_degree,
            output,
        } => {
            let mut ws = workspace::load(&file)?;
            let text = export(&mut ws, &target, what, category.as_deref(), max_degree, io)?;
            match output {
                Some(path) => std::fs::write(&path, text).map_err(|source| CliError::Io { path, source }),
                None => io.out.write_all(text.as_bytes()).map_err(stdout_error),
            }
        }
        Command::Run { file, format } => run(&file, format, io),
    }
}

fn require_degree(n: usize) -> Result<(), CliError> {
    if n == 0 {
        return Err(CliError::Usage("--max-degree must be at least 1".into()));
    }
    Ok(())
}

#[derive(Serialize)]
struct ViolationJson<'a> {
    section: &'a str,
    name: &'a str,
    detail: &'a str,
}

#[derive(Serialize)]
struct SectionJson {
    section: &'static str,
    valid: usize,
    declared: usize,
}

#[derive(Serialize)]
struct ValidateJson<'a> {
    valid: bool,
    sections: Vec<SectionJson>,
    violations: Vec<ViolationJson<'a>>,
}

pub fn validate(file: &Path, format: Format, io: &mut Io<'_>) -> Result<(), CliError> {
    let ws = workspace::load(file)?;
    let valid = ws.violations.is_empty();
    match format {
        Format::Human => {
            for (section, ok, total) in ws.summary() {
                io.line(format!("{section}: {ok}/{total} valid"))?;
            }
            for v in &ws.violations {
                io.line(format!("invalid {v}"))?;
            }
        }
        Format::Machine => io.json(&ValidateJson {
            valid,
            sections: ws
                .summary()
                .into_iter()
                .map(|(section, valid, declared)| SectionJson {
                    section,
                    valid,
                    declared,
                })
                .collect(),
            violations: ws
                .violations
                .iter()
                .map(|v| ViolationJson {
                    section: v.section,
                    name: &v.name,
                    detail: &v.detail,
                })
                .collect(),
        })?,
    }
    if valid {
        Ok(())
    } else {
        Err(CliError::Invalid(
            ws.violations
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join("\n"),
        ))
    }
}

fn warn_sequences(c: &FiniteCategory, max_degree: usize, io: &mut Io<'_>) {
    for n in 0..=max_degree {
        let count = count_sequences(c, n);
        if count > SEQUENCE_WARNING {
            io.warn(format!(
                "degree {n} has {count} composable sequences (more than {SEQUENCE_WARNING}); this may be slow"
            ));
        }
    }
}

/// The system `name` on `category`, which must be where it lives.
fn system_on(ws: &mut Workspace, category: &str, name: &str) -> Result<Arc<NaturalSystem>, CliError> {
    let (home, d) = ws.system(name, Some(category))?;
    if ws.category(category).is_none() {
        return Err(CliError::Invalid(format!("category `{category}` is invalid")));
    }
    if home != category && ws.category(&home) != ws.category(category) {
        return Err(CliError::Invalid(format!(
            "natural system `{name}` lives on `{home}`, not `{category}`"
        )));
    }
    Ok(d)
}

fn build_complex(d: Arc<NaturalSystem>, max_degree: usize, io: &mut Io<'_>) -> Result<CochainComplex, CliError> {
    require_degree(max_degree)?;
    warn_sequences(d.base(), max_degree, io);
    CochainComplex::build(d, max_degree).map_err(|e| CliError::Failed(e.to_string()))
}

/// `H0=Z H1=0 H2=Z/2`, with direct sums written without spaces.
pub fn human_line(groups: &[GroupInvariants]) -> String {
    groups
        .iter()
        .enumerate()
        .map(|(n, g)| format!("H{n}={}", g.human().replace(" ⊕ ", "⊕")))
        .collect::<Vec<_>>()
        .join(" ")
}

#[derive(Serialize)]
struct DegreeGroup {
    degree: usize,
    #[serde(flatten)]
    group: InvariantsJson,
}

#[derive(Serialize)]
struct CohomologyJson<'a> {
    format: &'static str,
    version: u32,
    category: &'a str,
    system: &'a str,
    max_degree: usize,
    cohomology: Vec<DegreeGroup>,
}

fn degree_groups(groups: &[GroupInvariants]) -> Vec<DegreeGroup> {
    groups
        .iter()
        .enumerate()
        .map(|(degree, g)| DegreeGroup {
            degree,
            group: g.into(),
        })
        .collect()
}

pub fn cohomology(
    ws: &mut Workspace,
    category: &str,
    system: &str,
    max_degree: usize,
    format: Format,
    io: &mut Io<'_>,
) -> Result<(), CliError> {
    let d = system_on(ws, category, system)?;
    let k = build_complex(d, max_degree, io)?;
    let groups = k.cohomology_all().map_err(|e| CliError::Failed(e.to_string()))?;
    match format {
        Format::Human => io.line(human_line(&groups)),
        Format::Machine => io.json(&CohomologyJson {
            format: "bwcohom-cohomology",
            version: crate::schema::VERSION,
            category,
            system,
            max_degree,
            cohomology: degree_groups(&groups),
        }),
    }
}

#[derive(Serialize)]
struct FailureJson<'a> {
    case: u64,
    detail: &'a str,
    replay: String,
}

#[derive(Serialize)]
struct LawJson<'a> {
    law: &'static str,
    cases: u64,
    passed: bool,
    failures: Vec<FailureJson<'a>>,
}

#[derive(Serialize)]
struct LawsJson<'a> {
    seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    case: Option<u64>,
    cases: u64,
    max_morphisms: usize,
    max_degree: usize,
    laws: Vec<LawJson<'a>>,
}

fn replay(config: &LawConfig, law: Law, case: u64) -> String {
    format!(
        "bwcohom check-laws --seed {} --max-morphisms {} --max-degree {} --law '{}' --case {case}",
        config.seed,
        config.max_morphisms,
        config.max_degree,
        law.name()
    )
}

pub fn check_laws(
    config: &LawConfig,
    law: &str,
    case: Option<u64>,
    format: Format,
    io: &mut Io<'_>,
) -> Result<(), CliError> {
    require_degree(config.max_degree)?;
    let laws: Vec<Law> = if law == "all" {
        Law::ALL.to_vec()
    } else {
        vec![law
            .parse()
            .map_err(|e: bwcohom::laws::UnknownLaw| CliError::Usage(e.to_string()))?]
    };
    let bound = (config.max_morphisms as u128).saturating_pow(config.max_degree as u32 + 1);
    if bound > SEQUENCE_WARNING {
        io.warn(format!(
            "up to {bound} sequences per degree at --max-morphisms {} --max-degree {}",
            config.max_morphisms, config.max_degree
        ));
    }
    let reports: Vec<LawReport> = laws
        .iter()
        .map(|&l| match case {
            None => check_law(l, config),
            Some(k) => LawReport {
                law: l,
                cases: 1,
                failures: check_case(l, config, k).err().into_iter().collect(),
            },
        })
        .collect();
    match format {
        Format::Human => {
            for r in &reports {
                if r.passed() {
                    io.line(format!("PASS {} ({} cases)", r.law.name(), r.cases))?;
                } else {
                    io.line(format!(
                        "FAIL {} ({} of {} cases)",
                        r.law.name(),
                        r.failures.len(),
                        r.cases
                    ))?;
                    for f in &r.failures {
                        io.line(format!("  {f}"))?;
                        io.line(format!("  replay: {}", replay(config, f.law, f.case)))?;
                    }
                }
            }
        }
        Format::Machine => io.json(&LawsJson {
            seed: config.seed,
            case,
            cases: case.map_or(config.cases, |_| 1),
            max_morphisms: config.max_morphisms,
            max_degree: config.max_degree,
            laws: reports
                .iter()
                .map(|r| LawJson {
                    law: r.law.name(),
                    cases: r.cases,
                    passed: r.passed(),
                    failures: r
                        .failures
                        .iter()
                        .map(|f| FailureJson {
                            case: f.case,
                            detail: &f.detail,
                            replay: replay(config, f.law, f.case),
                        })
                        .collect(),
                })
                .collect(),
        })?,
    }
    let failed: Vec<&str> = reports.iter().filter(|r| !r.passed()).map(|r| r.law.name()).collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Failed(format!("laws failed: {}", failed.join(", "))))
    }
}

#[derive(Serialize)]
struct DegreeVerdictJson {
    degree: usize,
    big: InvariantsJson,
    small: InvariantsJson,
}

#[derive(Serialize)]
struct CharacterizationJson {
    local: bool,
    canonical_iso: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    nonlocal_at: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    canonical_fails_at: Option<String>,
}

#[derive(Serialize)]
struct LocalizationJson<'a> {
    format: &'static str,
    version: u32,
    localization: &'a str,
    side: String,
    system: &'a str,
    max_degree: usize,
    /// `pass`, `not-local` or `certificate-failed`.
    status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    detail: Option<String>,
    degrees: Vec<DegreeVerdictJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    homotopy_route: Option<String>,
    characterization: CharacterizationJson,
}

pub fn localization_check(
    ws: &mut Workspace,
    name: &str,
    system: &str,
    max_degree: usize,
    format: Format,
    io: &mut Io<'_>,
) -> Result<(), CliError> {
    require_degree(max_degree)?;
    let l = ws.localization(name)?.clone();
    let big = l.big().clone();
    let home = ws
        .categories()
        .iter()
        .find(|(_, c)| **c == big)
        .map(|(n, _)| n.clone())
        .ok_or_else(|| CliError::Invalid(format!("the category of `{name}` is not declared")))?;
    let d = system_on(ws, &home, system)?;
    warn_sequences(&big, max_degree, io);
    let verdict = local_characterization(&d, &l).map_err(|e| CliError::Failed(e.to_string()))?;
    let outcome = verify_theorem(&d, &l, max_degree);
    let characterization = CharacterizationJson {
        local: verdict.local,
        canonical_iso: verdict.canonical_iso,
        nonlocal_at: verdict.nonlocal_witness.map(|f| big.morphism_name(f).to_string()),
        canonical_fails_at: verdict.canonical_witness.map(|f| big.morphism_name(f).to_string()),
    };
    let side = l.side().to_string();
    let (status, detail, degrees, route) = match &outcome {
        Ok(report) => (
            "pass",
            None,
            report
                .degrees
                .iter()
                .map(|v| DegreeVerdictJson {
                    degree: v.degree,
                    big: (&v.big).into(),
                    small: (&v.small).into(),
                })
                .collect(),
            Some(report.homotopy_route.clone()),
        ),
        Err(LocalizationError::NotLocal { name, .. }) => (
            "not-local",
            Some(format!("the action at `{name}` is not invertible")),
            Vec::new(),
            None,
        ),
        Err(e) => ("certificate-failed", Some(e.to_string()), Vec::new(), None),
    };
    match format {
        Format::Human => {
            match &outcome {
                Ok(_) => io.line(format!("{side}ization `{name}` with `{system}`: pass"))?,
                Err(LocalizationError::NotLocal { .. }) => io.line(format!(
                    "{side}ization `{name}`: system `{system}` is NOT {side}: {}",
                    detail.as_deref().unwrap_or_default()
                ))?,
                Err(e) => io.line(format!("{side}ization `{name}` with `{system}`: FAIL: {e}"))?,
            }
            for v in &degrees {
                io.line(format!(
                    "  H{}: {} ≅ {}",
                    v.degree,
                    human_of(&v.big),
                    human_of(&v.small)
                ))?;
            }
            if let Some(route) = &route {
                io.line(format!("  homotopy: {route}"))?;
            }
            io.line(format!(
                "  characterization: {side} = {}, canonical map iso = {}",
                characterization.local, characterization.canonical_iso
            ))?;
        }
        Format::Machine => io.json(&LocalizationJson {
            format: "bwcohom-localization",
            version: crate::schema::VERSION,
            localization: name,
            side: side.clone(),
            system,
            max_degree,
            status,
            detail: detail.clone(),
            degrees,
            homotopy_route: route,
            characterization,
        })?,
    }
    match outcome {
        Ok(_) => Ok(()),
        Err(LocalizationError::NotLocal { name: f, .. }) => Err(CliError::Failed(format!(
            "system `{system}` is not {side} (action at `{f}`)"
        ))),
        Err(e) => Err(CliError::Failed(e.to_string())),
    }
}

fn human_of(g: &InvariantsJson) -> String {
    let mut parts = Vec::new();
    match g.rank {
        0 => {}
        1 => parts.push("Z".to_string()),
        r => parts.push(format!("Z^{r}")),
    }
    parts.extend(g.torsion.iter().map(|d| format!("Z/{d}")));
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" ⊕ ")
    }
}

fn pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable export");
    s.push('\n');
    s
}

fn category_or_error(ws: &Workspace, name: &str) -> Result<Arc<FiniteCategory>, CliError> {
    if !ws.file.categories.contains_key(name) {
        return Err(CliError::Reference(format!("unknown category `{name}`")));
    }
    ws.category(name)
        .ok_or_else(|| CliError::Invalid(format!("category `{name}` is invalid")))
}

pub fn export(
    ws: &mut Workspace,
    target: &str,
    what: ExportKind,
    category: Option<&str>,
    max_degree: usize,
    io: &mut Io<'_>,
) -> Result<String, CliError> {
    match what {
        ExportKind::Category => Ok(pretty(&export::category_file(target, &*category_or_error(ws, target)?))),
        ExportKind::Factorization => {
            category_or_error(ws, target)?;
            let fc = ws.factorization(target).expect("valid category");
            Ok(pretty(&export::factorization_file(target, &fc)))
        }
        ExportKind::Nerve => {
            require_degree(max_degree)?;
            let c = category_or_error(ws, target)?;
            Ok(pretty(&export::nerve_file(target, &c, max_degree)))
        }
        ExportKind::System => {
            let (home, d) = ws.system(target, category)?;
            let name = if target.starts_with("constant:") { "D" } else { target };
            Ok(pretty(&export::system_file(&home, name, &d)?))
        }
        ExportKind::Complex => {
            let (home, d) = ws.system(target, category)?;
            let k = build_complex(d, max_degree, io)?;
            Ok(pretty(&export::complex_file(&home, target, &k)?))
        }
    }
}

pub fn run(file: &Path, format: Format, io: &mut Io<'_>) -> Result<(), CliError> {
    let mut ws = workspace::load(file)?;
    let mut failure: Option<CliError> = None;
    for (i, task) in ws.file.tasks.clone().into_iter().enumerate() {
        if format == Format::Human {
            io.line(format!("task {i}:"))?;
        }
        let result = match task {
            TaskSpec::Cohomology {
                category,
                system,
                max_degree,
            } => cohomology(&mut ws, &category, &system, max_degree, format, io),
            TaskSpec::LocalizationCheck {
                localization,
                system,
                max_degree,
            } => localization_check(&mut ws, &localization, &system, max_degree, format, io),
        };
        if let Err(e) = result {
            let _ = writeln!(io.err, "task {i}: {e}");
            // keep the most severe failure: reference/parse, then invalid, then failed
            let worse = match &failure {
                None => true,
                Some(f) => e.exit_code() > f.exit_code(),
            };
            if worse {
                failure = Some(e);
            }
        }
    }
    failure.map_or(Ok(()), Err)
}
