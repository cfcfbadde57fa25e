mod oracle;

use bwcohom::abelian::{smith_invariants, IntMatrix};
use num_bigint::BigInt;
use oracle::criteria;
use proptest::prelude::*;

fn matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=6, 1usize..=6).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-9i64..=9, c), r))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn normal_forms_match_oracles(m in matrix()) {
        if let Err(e) = criteria::check_matrix(&m) {
            prop_assert!(false, "{}", e);
        }
    }

    #[test]
    fn invariants_survive_unimodular_changes(m in matrix(), a in 0usize..6, b in 0usize..6, k in -5i64..=5) {
        let rows = m.len();
        let (a, b) = (a % rows, b % rows);
        prop_assume!(a != b);
        let mut n = m.clone();
        for j in 0..n[0].len() {
            n[a][j] += k * m[b][j];
        }
        n.swap(0, b);
        prop_assert_eq!(smith_invariants(&IntMatrix::from_rows(&m)), smith_invariants(&IntMatrix::from_rows(&n)));
    }
}

#[test]
fn fixed_examples() {
    let m = IntMatrix::from_rows(&[[2, 4, 4], [-6, 6, 12], [10, -4, -16]]);
    let expect: Vec<BigInt> = [2, 6, 12].iter().map(|&x| BigInt::from(x)).collect();
    assert_eq!(smith_invariants(&m), expect);
    criteria::linear_algebra(5, 200).unwrap();
}
