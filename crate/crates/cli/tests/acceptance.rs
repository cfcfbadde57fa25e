//! Acceptance report: one PASS/FAIL line per criterion.
//!
//! Every comparison is exact. Time budgets are checked against wall-clock
//! time in the test profile.

#[path = "../../core/tests/oracle/mod.rs"]
mod oracle;

use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use bwcohom::laws::{check_law, Law, LawConfig};
use bwcohom::localization::{local_characterization, verify_theorem, Side};
use bwcohom_cli::workspace;
use oracle::criteria;

const SEED: u64 = 20240601;

struct Outcome {
    name: &'static str,
    result: Result<String, String>,
    elapsed: Duration,
    budget: Option<Duration>,
}

fn timed(name: &'static str, budget: Option<Duration>, f: impl FnOnce() -> Result<String, String>) -> Outcome {
    let start = Instant::now();
    let result =
        std::panic::catch_unwind(std::panic::AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".to_string()));
    Outcome {
        name,
        result,
        elapsed: start.elapsed(),
        budget,
    }
}

fn laws(list: &[(Law, u64)], max_morphisms: usize, max_degree: usize) -> Result<String, String> {
    let mut parts = Vec::new();
    for &(law, cases) in list {
        let config = LawConfig {
            seed: SEED,
            cases,
            max_morphisms,
            max_degree,
        };
        let report = check_law(law, &config);
        if let Some(f) = report.failures.first() {
            return Err(f.to_string());
        }
        parts.push(format!("{} x{}", law.name(), report.cases));
    }
    Ok(parts.join(", "))
}

fn arrow_workspace() -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("workspaces/arrow.json")
        .to_string_lossy()
        .into_owned()
}

/// The arrow bundle: every local system passes all certificates, and the
/// characterization agrees on the non-local ones.
fn arrow_example() -> Result<String, String> {
    let mut ws = workspace::load(Path::new(&arrow_workspace())).map_err(|e| e.to_string())?;
    let cases = [
        ("reflect", "Z", true),
        ("reflect", "Z+Z/2", true),
        ("reflect", "double_left", true),
        ("reflect", "double_right", false),
        ("coreflect", "Z", true),
        ("coreflect", "double_right", true),
        ("coreflect", "double_left", false),
    ];
    for (l, d, local) in cases {
        let refl = ws.localization(l).map_err(|e| e.to_string())?.clone();
        let (_, system) = ws.system(d, None).map_err(|e| e.to_string())?;
        let verdict = local_characterization(&system, &refl).map_err(|e| e.to_string())?;
        if !verdict.agree() || verdict.local != local {
            return Err(format!("{l}/{d}: characterization {verdict:?}"));
        }
        if local {
            verify_theorem(&system, &refl, 4).map_err(|e| format!("{l}/{d}: {e}"))?;
        }
    }
    let sides = [
        ws.localization("reflect").unwrap().side(),
        ws.localization("coreflect").unwrap().side(),
    ];
    if sides != [Side::Local, Side::Colocal] {
        return Err("arrow bundle sides".into());
    }
    Ok("arrow bundle".into())
}

fn localization() -> Result<String, String> {
    let arrow = arrow_example()?;
    let generated = laws(&[(Law::Localization, 50), (Law::Colocalization, 50)], 6, 4)?;
    Ok(format!("{arrow}; {generated}"))
}

fn bwcohom(args: &[&str]) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_bwcohom"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!("{args:?} exited with {}", out.status));
    }
    Ok(out.stdout)
}

fn determinism() -> Result<String, String> {
    let arrow = arrow_workspace();
    let commands: Vec<Vec<&str>> = vec![
        vec!["validate", &arrow, "--format", "machine"],
        vec!["cohomology", &arrow, "arrow", "Z+Z/2", "--format", "machine"],
        vec!["check-laws", "--seed", "5", "--cases", "5", "--format", "machine"],
        vec!["localization-check", &arrow, "reflect", "Z", "--format", "machine"],
        vec!["export", &arrow, "Z", "--what", "complex"],
        vec!["export", &arrow, "arrow", "--what", "factorization"],
        vec!["export", &arrow, "arrow", "--what", "nerve"],
        vec!["export", &arrow, "double_left", "--what", "system"],
        vec!["run", &arrow, "--format", "machine"],
    ];
    for args in &commands {
        let first = bwcohom(args)?;
        for _ in 0..2 {
            if bwcohom(args)? != first {
                return Err(format!("{args:?} differs between runs"));
            }
        }
    }
    Ok(format!("{} commands, 3 runs each", commands.len()))
}

fn main() {
    let secs = Duration::from_secs;
    let outcomes = vec![
        timed("differential d∘d = 0", Some(secs(60)), || {
            laws(&[(Law::DD, 200)], 6, 4)
        }),
        timed("homotopy identities h, r, r′", Some(secs(300)), || {
            laws(&[(Law::DhHd, 100), (Law::DrRd, 100), (Law::DrPrimeRd, 100)], 6, 4)
        }),
        timed("group cohomology vs bar resolution", None, criteria::group_cohomology),
        timed("nerve oracle", None, || criteria::nerve(SEED, 24, 4)),
        timed("localization theorem", None, localization),
        timed("local characterization (1) ⇔ (3)", None, || {
            laws(&[(Law::LocalCharacterization, 100)], 6, 4)
        }),
        timed("equivalence invariance", None, criteria::equivalence_invariance),
        timed("SNF/HNF oracles", Some(secs(10)), || {
            criteria::linear_algebra(SEED, 500)
        }),
        timed("CLI determinism", None, determinism),
    ];
    let mut failed = 0;
    for o in &outcomes {
        let over = o.budget.is_some_and(|b| o.elapsed > b);
        let budget = o.budget.map_or(String::new(), |b| format!(" / {}s", b.as_secs()));
        let time = format!("[{:.2}s{budget}]", o.elapsed.as_secs_f64());
        match &o.result {
            Ok(detail) if !over => println!("PASS {}: {detail} {time}", o.name),
            Ok(detail) => {
                failed += 1;
                println!("FAIL {}: over time budget: {detail} {time}", o.name);
            }
            Err(e) => {
                failed += 1;
                println!("FAIL {}: {e} {time}", o.name);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
