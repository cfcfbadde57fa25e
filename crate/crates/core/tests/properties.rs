use std::sync::Arc;

use bwcohom::bwcomplex::{homotopy_h, homotopy_h_unchecked, induced_map_2, BlockMap, CochainComplex};
use bwcohom::factorization::FactorizationCategory;
use bwcohom::generate::{self, case_rng};
use bwcohom::laws::{check_case, Law, LawConfig};
use bwcohom::localization::{is_local, local_characterization};
use proptest::prelude::*;
use rand::Rng;

fn config(seed: u64) -> LawConfig {
    LawConfig {
        seed,
        cases: 1,
        max_morphisms: 6,
        max_degree: 4,
    }
}

fn holds(law: Law, seed: u64) -> Result<(), TestCaseError> {
    match check_case(law, &config(seed), 0) {
        Ok(()) => Ok(()),
        Err(f) => Err(TestCaseError::fail(f.to_string())),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn differential_squares_to_zero(seed in any::<u64>()) { holds(Law::DD, seed)?; }

    #[test]
    fn h_is_a_homotopy(seed in any::<u64>()) { holds(Law::DhHd, seed)?; }

    #[test]
    fn vertical_r_relates_the_h(seed in any::<u64>()) { holds(Law::DrRd, seed)?; }

    #[test]
    fn horizontal_r_relates_the_h(seed in any::<u64>()) { holds(Law::DrPrimeRd, seed)?; }

    #[test]
    fn interchange_holds(seed in any::<u64>()) { holds(Law::Interchange, seed)?; }

    #[test]
    fn factorization_is_a_two_functor(seed in any::<u64>()) { holds(Law::TwoFunctor, seed)?; }

    #[test]
    fn induced_maps_compose(seed in any::<u64>()) { holds(Law::Functoriality, seed)?; }

    #[test]
    fn induced_maps_are_chain_maps(seed in any::<u64>()) { holds(Law::ChainMap, seed)?; }

    #[test]
    fn characterizations_agree(seed in any::<u64>()) { holds(Law::LocalCharacterization, seed)?; }

    #[test]
    fn localization_theorem(seed in any::<u64>()) { holds(Law::Localization, seed)?; }

    #[test]
    fn colocalization_theorem(seed in any::<u64>()) { holds(Law::Colocalization, seed)?; }

    #[test]
    fn mutated_decomposable_actions_are_rejected(seed in any::<u64>()) {
        let rng = &mut case_rng(seed, 0, 0);
        let c = Arc::new(generate::random_category(rng, 6));
        let fc = Arc::new(FactorizationCategory::build(c));
        let d = generate::random_system(rng, &fc);
        prop_assert!(d.validate().is_ok());
        if let Some((pair, mutated)) = generate::mutate_decomposable_action(rng, &d) {
            prop_assert!(!mutated.validate().is_ok(), "mutating pair {} went unnoticed", pair);
        }
    }

    #[test]
    fn pulled_back_systems_are_local(seed in any::<u64>()) {
        let rng = &mut case_rng(seed, 0, 1);
        let l = if rng.gen_bool(0.5) {
            generate::random_localization(rng, 6)
        } else {
            generate::random_colocalization(rng, 6)
        };
        prop_assert!(l.validate().is_ok());
        let d = generate::pulled_back_system(rng, &l);
        prop_assert!(is_local(&d, &l).unwrap());
        prop_assert!(local_characterization(&d, &l).unwrap().agree());
    }

    #[test]
    fn mirror_is_an_involution(seed in any::<u64>()) {
        let rng = &mut case_rng(seed, 0, 2);
        let l = generate::random_localization(rng, 6);
        let back = l.mirror().mirror();
        prop_assert_eq!(back.side(), l.side());
        prop_assert_eq!(back.alpha().components(), l.alpha().components());
    }
}

/// `h` must not also satisfy the identity with `F*(α, t)` and `F*(β, s)`
/// swapped; guards against a check that passes vacuously.
#[test]
fn identity_check_detects_wrong_maps() {
    let mut detected = 0;
    for case in 0..60 {
        let rng = &mut case_rng(3, 99, case);
        let inst = generate::random_natf_instance(rng, 5);
        let src = Arc::new(CochainComplex::build(inst.source.clone(), 3).unwrap());
        let tgt = Arc::new(CochainComplex::build(inst.target.clone(), 3).unwrap());
        homotopy_h(&inst.two, src.clone(), tgt.clone()).unwrap();
        let p = induced_map_2(&inst.two.from, src.clone(), tgt.clone()).unwrap();
        let q = induced_map_2(&inst.two.to, src.clone(), tgt.clone()).unwrap();
        // skip instances where 2 (q − p) = 0: both conventions then agree
        let twice = (0..=3).any(|n| {
            let d = BlockMap::combination(&[(2, q.component(n)), (-2, p.component(n))]);
            d.first_nonzero(q.target().group(n)).is_some()
        });
        if !twice {
            continue;
        }
        let h = homotopy_h_unchecked(&inst.two, src, tgt).unwrap();
        let mut all_equal = true;
        for n in 0..3 {
            let b = h.boundary(n);
            let diff = BlockMap::combination(&[(1, &b), (-1, p.component(n)), (1, q.component(n))]);
            all_equal &= diff.first_nonzero(q.target().group(n)).is_none();
        }
        assert!(!all_equal, "case {case}: h satisfies both sign conventions");
        detected += 1;
    }
    assert!(detected >= 10, "only {detected} instances with 2 F*(α, t) ≠ 2 F*(β, s)");
}
