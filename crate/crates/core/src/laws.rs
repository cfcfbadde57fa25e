//! Executable law suites over seeded random instances.
//!
//! Each case draws its own generator from `(seed, law, case)`, so a failing
//! case can be replayed on its own with [`check_case`].

use std::fmt;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::str::FromStr;
use std::sync::Arc;

use crate::bwcomplex::{
    homotopy_h, homotopy_r_horizontal, homotopy_r_vertical, induced_map_2, induced_map_nat, CochainComplex,
};
use crate::factorization::{factor_two_morphism, FactorizationCategory};
use crate::fincat::NaturalTransformation;
use crate::generate::{self, case_rng};
use crate::localization::{local_characterization, verify_theorem, Side};
use crate::natsys::NatSysMorphism;

use rand::Rng;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Law {
    /// `d ∘ d = 0`.
    DD,
    /// `d h + h d = −F*(α, t) + F*(β, s)`.
    DhHd,
    /// `d r − r d = −h − h′ + h_{composite}` for vertical composites.
    DrRd,
    /// `d r′ − r′ d = −h′ F*(α, t) − F*(β′, s′) h + h_{composite}` for
    /// horizontal composites.
    DrPrimeRd,
    /// Interchange of vertical and horizontal composition of 2-morphisms.
    Interchange,
    /// `F(ε, γ)` preserves vertical and horizontal composition.
    TwoFunctor,
    /// `F*` turns composites of `Nat_F` 1-morphisms into composites.
    Functoriality,
    /// Induced maps commute with the differential.
    ChainMap,
    /// Conditions (1) and (3) for (co)local systems agree, and colocality
    /// matches locality of the mirrored data.
    LocalCharacterization,
    Localization,
    Colocalization,
}

impl Law {
    pub const ALL: [Law; 11] = [
        Law::DD,
        Law::DhHd,
        Law::DrRd,
        Law::DrPrimeRd,
        Law::Interchange,
        Law::TwoFunctor,
        Law::Functoriality,
        Law::ChainMap,
        Law::LocalCharacterization,
        Law::Localization,
        Law::Colocalization,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Law::DD => "dd",
            Law::DhHd => "dh+hd",
            Law::DrRd => "dr-rd",
            Law::DrPrimeRd => "dr'-r'd",
            Law::Interchange => "interchange",
            Law::TwoFunctor => "2-functor",
            Law::Functoriality => "functoriality",
            Law::ChainMap => "chain-map",
            Law::LocalCharacterization => "local-characterization",
            Law::Localization => "localization",
            Law::Colocalization => "colocalization",
        }
    }

    fn stream(self) -> u64 {
        Law::ALL.iter().position(|&l| l == self).unwrap() as u64 + 1
    }
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, thiserror::Error)]
#[error("unknown law `{0}`")]
pub struct UnknownLaw(pub String);

impl FromStr for Law {
    type Err = UnknownLaw;

    /// Accepts the ASCII names and their typographic spellings (`−`, `′`).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let norm: String = s
            .trim()
            .chars()
            .map(|c| match c {
                '−' | '–' => '-',
                '′' => '\'',
                c => c.to_ascii_lowercase(),
            })
            .filter(|c| !c.is_whitespace())
            .collect();
        Law::ALL
            .iter()
            .copied()
            .find(|l| l.name() == norm)
            .ok_or_else(|| UnknownLaw(s.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawConfig {
    pub seed: u64,
    pub cases: u64,
    pub max_morphisms: usize,
    pub max_degree: usize,
}

impl Default for LawConfig {
    fn default() -> Self {
        LawConfig {
            seed: 1,
            cases: 50,
            max_morphisms: 6,
            max_degree: 4,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawFailure {
    pub law: Law,
    pub seed: u64,
    pub case: u64,
    pub detail: String,
}

impl fmt::Display for LawFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} failed: seed {} case {}: {}",
            self.law, self.seed, self.case, self.detail
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawReport {
    pub law: Law,
    pub cases: u64,
    pub failures: Vec<LawFailure>,
}

impl LawReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Runs cases `0..config.cases` of `law`.
pub fn check_law(law: Law, config: &LawConfig) -> LawReport {
    let failures = (0..config.cases)
        .filter_map(|case| check_case(law, config, case).err())
        .collect();
    LawReport {
        law,
        cases: config.cases,
        failures,
    }
}

/// Runs one case. Panics inside the generators or the checked code are
/// reported as failures of that case.
pub fn check_case(law: Law, config: &LawConfig, case: u64) -> Result<(), LawFailure> {
    let outcome = catch_unwind(AssertUnwindSafe(|| run_case(law, config, case)));
    let detail = match outcome {
        Ok(Ok(())) => return Ok(()),
        Ok(Err(detail)) => detail,
        Err(panic) => {
            let msg = panic
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            format!("panicked: {msg}")
        }
    };
    Err(LawFailure {
        law,
        seed: config.seed,
        case,
        detail,
    })
}

fn err<E: fmt::Display>(e: E) -> String {
    e.to_string()
}

fn run_case(law: Law, config: &LawConfig, case: u64) -> Result<(), String> {
    let rng = &mut case_rng(config.seed, law.stream(), case);
    let (m, n) = (config.max_morphisms.max(1), config.max_degree.max(1));
    match law {
        Law::DD => {
            let c = Arc::new(generate::random_category(rng, m));
            let fc = Arc::new(FactorizationCategory::build(c));
            let d = Arc::new(generate::random_system(rng, &fc));
            CochainComplex::build(d, n).map(|_| ()).map_err(err)
        }
        Law::DhHd => {
            let inst = generate::random_natf_instance(rng, m);
            let src = Arc::new(CochainComplex::build(inst.source, n).map_err(err)?);
            let tgt = Arc::new(CochainComplex::build(inst.target, n).map_err(err)?);
            homotopy_h(&inst.two, src, tgt).map(|_| ()).map_err(err)
        }
        Law::DrRd => {
            let inst = generate::random_vertical_instance(rng, m);
            let src = Arc::new(CochainComplex::build(inst.source, n).map_err(err)?);
            let tgt = Arc::new(CochainComplex::build(inst.target, n).map_err(err)?);
            homotopy_r_vertical(&inst.first, &inst.second, src, tgt)
                .map(|_| ())
                .map_err(err)
        }
        Law::DrPrimeRd => {
            let inst = generate::random_horizontal_instance(rng, m);
            let src = Arc::new(CochainComplex::build(inst.source, n).map_err(err)?);
            let mid = Arc::new(CochainComplex::build(inst.middle, n).map_err(err)?);
            let tgt = Arc::new(CochainComplex::build(inst.target, n).map_err(err)?);
            homotopy_r_horizontal(&inst.outer, &inst.inner, src, mid, tgt)
                .map(|_| ())
                .map_err(err)
        }
        Law::Interchange => {
            let inst = generate::random_interchange_instance(rng, m);
            let (t1, t2) = &inst.outer;
            let (s1, s2) = &inst.inner;
            let lhs = t1.then(t2).and_then(|t| t.horizontal(&s1.then(s2)?)).map_err(err)?;
            let rhs = t1
                .horizontal(s1)
                .and_then(|a| a.then(&t2.horizontal(s2)?))
                .map_err(err)?;
            if lhs != rhs {
                return Err("(t1 t2) * (s1 s2) differs from (t1 * s1)(t2 * s2)".into());
            }
            Ok(())
        }
        Law::TwoFunctor => {
            let inst = generate::random_interchange_instance(rng, m);
            let (t1, t2) = &inst.outer;
            let (s1, _) = &inst.inner;
            let c = t1.alpha.codomain().clone();
            let d = t1.alpha.domain().clone();
            let d2 = s1.alpha.domain().clone();
            let fc = FactorizationCategory::build(c);
            let fd = FactorizationCategory::build(d);
            let fd2 = FactorizationCategory::build(d2);
            let f1 = factor_two_morphism(t1, &fd, &fc).map_err(err)?;
            let f2 = factor_two_morphism(t2, &fd, &fc).map_err(err)?;
            let f12 = factor_two_morphism(&t1.then(t2).map_err(err)?, &fd, &fc).map_err(err)?;
            let v = NaturalTransformation::vertical_compose(&f2, &f1).map_err(err)?;
            if let Some(x) = (0..v.components().len()).find(|&x| v.component(x) != f12.component(x)) {
                return Err(format!("vertical composite differs at FD object {x}"));
            }
            let g1 = factor_two_morphism(s1, &fd2, &fd).map_err(err)?;
            let h = factor_two_morphism(&t1.horizontal(s1).map_err(err)?, &fd2, &fc).map_err(err)?;
            let hh = NaturalTransformation::horizontal_compose(&f1, &g1).map_err(err)?;
            if let Some(x) = (0..h.components().len()).find(|&x| h.component(x) != hh.component(x)) {
                return Err(format!("horizontal composite differs at FD′ object {x}"));
            }
            Ok(())
        }
        Law::Functoriality => {
            let inst = generate::random_horizontal_instance(rng, m);
            let src = Arc::new(CochainComplex::build(inst.source, n).map_err(err)?);
            let mid = Arc::new(CochainComplex::build(inst.middle, n).map_err(err)?);
            let tgt = Arc::new(CochainComplex::build(inst.target, n).map_err(err)?);
            let composite: NatSysMorphism = inst.outer.from.then(&inst.inner.from).map_err(err)?;
            let whole = induced_map_2(&composite, src.clone(), tgt.clone()).map_err(err)?;
            let first = induced_map_2(&inst.outer.from, src, mid.clone()).map_err(err)?;
            let second = induced_map_2(&inst.inner.from, mid, tgt).map_err(err)?;
            let parts = second.after(&first).map_err(err)?;
            match whole.first_difference(&parts) {
                None => Ok(()),
                Some((deg, t, s)) => Err(format!(
                    "F* of the composite differs in degree {deg}: target sequence {t}, source sequence {s}"
                )),
            }
        }
        Law::ChainMap => {
            let inst = generate::random_natf_instance(rng, m);
            let src = Arc::new(CochainComplex::build(inst.source.clone(), n).map_err(err)?);
            let tgt = Arc::new(CochainComplex::build(inst.target.clone(), n).map_err(err)?);
            for t in [&inst.two.from, &inst.two.to] {
                induced_map_2(t, src.clone(), tgt.clone())
                    .and_then(|p| p.check_chain_map())
                    .map_err(err)?;
            }
            // F*(φ, 1) into the pulled-back system D F(φ)
            let phi = inst.two.two.alpha.source();
            let fd = inst.target.factorization().clone();
            let one = NatSysMorphism::tautological(inst.source.clone(), fd, &NaturalTransformation::identity(phi))
                .map_err(err)?;
            let ptgt = Arc::new(CochainComplex::build(one.target().clone(), n).map_err(err)?);
            induced_map_nat(phi, &one, src, ptgt)
                .and_then(|p| p.check_chain_map())
                .map_err(err)
        }
        Law::LocalCharacterization => {
            let l = if rng.gen_bool(0.5) {
                generate::random_localization(rng, m)
            } else {
                generate::random_colocalization(rng, m)
            };
            let d = if rng.gen_bool(0.5) {
                generate::pulled_back_system(rng, &l)
            } else {
                let fc = Arc::new(FactorizationCategory::build(l.big().clone()));
                Arc::new(generate::random_system(rng, &fc))
            };
            let v = local_characterization(&d, &l).map_err(err)?;
            if !v.agree() {
                return Err(format!(
                    "{} conditions disagree: condition (1) {} (witness {:?}), condition (3) {} (witness {:?})",
                    v.side, v.local, v.nonlocal_witness, v.canonical_iso, v.canonical_witness
                ));
            }
            let ml = l.mirror();
            let fc_op = Arc::new(FactorizationCategory::build(ml.big().clone()));
            let md = d.mirror(fc_op).map_err(err)?;
            let mv = local_characterization(&md, &ml).map_err(err)?;
            if mv.local != v.local {
                return Err(format!(
                    "{} on C is {} but {} on the mirror is {}",
                    v.side, v.local, mv.side, mv.local
                ));
            }
            Ok(())
        }
        Law::Localization | Law::Colocalization => {
            let l = if law == Law::Localization {
                generate::random_localization(rng, m)
            } else {
                generate::random_colocalization(rng, m)
            };
            debug_assert_eq!(
                l.side(),
                if law == Law::Localization {
                    Side::Local
                } else {
                    Side::Colocal
                }
            );
            if !l.is_idempotent_unit() {
                return Err("α * α ≠ α".into());
            }
            let d = generate::pulled_back_system(rng, &l);
            verify_theorem(&d, &l, n.min(3)).map(|_| ()).map_err(err)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for law in Law::ALL {
            assert_eq!(law.name().parse::<Law>().unwrap(), law);
        }
        assert_eq!("dr−rd".parse::<Law>().unwrap(), Law::DrRd);
        assert_eq!("dr′−r′d".parse::<Law>().unwrap(), Law::DrPrimeRd);
        assert!("nope".parse::<Law>().is_err());
    }

    #[test]
    fn every_law_passes_a_few_cases() {
        let config = LawConfig {
            seed: 7,
            cases: 4,
            max_morphisms: 5,
            max_degree: 3,
        };
        for law in Law::ALL {
            let report = check_law(law, &config);
            assert!(report.passed(), "{:?}", report.failures);
        }
    }

    #[test]
    fn cases_are_deterministic() {
        let config = LawConfig::default();
        let a = generate::random_natf_instance(&mut case_rng(config.seed, 2, 3), 5);
        let b = generate::random_natf_instance(&mut case_rng(config.seed, 2, 3), 5);
        assert_eq!(*a.source, *b.source);
        assert_eq!(*a.target, *b.target);
        assert_eq!(a.two.two, b.two.two);
    }
}
