use std::path::Path;
use std::sync::Arc;

use bwcohom::bwcomplex::CochainComplex;
use bwcohom::factorization::FactorizationCategory;
use bwcohom::generate;
use bwcohom_cli::export::{category_file, factorization_file, system_file};
use bwcohom_cli::workspace::{parse, Workspace};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn reload(file: &bwcohom_cli::schema::WorkspaceFile) -> Workspace {
    let text = serde_json::to_string_pretty(file).unwrap();
    let parsed = parse(Path::new("<export>"), &text).expect("exported file parses");
    assert_eq!(&parsed, file);
    let ws = Workspace::resolve(parsed).expect("references resolve");
    assert!(ws.violations.is_empty(), "{:?}", ws.violations);
    ws
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn categories_round_trip(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = generate::random_category(&mut rng, 6);
        let ws = reload(&category_file("C", &c));
        prop_assert_eq!(&*ws.category("C").unwrap(), &c);
    }

    #[test]
    fn factorization_categories_round_trip(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = Arc::new(generate::random_category(&mut rng, 4));
        let fc = FactorizationCategory::build(c);
        let ws = reload(&factorization_file("C", &fc));
        prop_assert_eq!(&*ws.category("F(C)").unwrap(), &**fc.category());
    }

    #[test]
    fn systems_round_trip_with_identical_invariants(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = Arc::new(generate::random_category(&mut rng, 5));
        let fc = Arc::new(FactorizationCategory::build(c));
        let d = Arc::new(generate::random_system(&mut rng, &fc));
        let mut ws = reload(&system_file("C", "D", &d).unwrap());
        let (home, e) = ws.system("D", None).unwrap();
        prop_assert_eq!(home.as_str(), "C");
        for f in 0..fc.category().morphism_count() {
            prop_assert!(e.action(f).equals(d.action(f)));
        }
        let before = CochainComplex::build(d, 3).unwrap().cohomology_all().unwrap();
        let after = CochainComplex::build(e, 3).unwrap().cohomology_all().unwrap();
        prop_assert_eq!(before, after);
    }
}
