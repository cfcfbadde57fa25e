mod oracle;

use bwcohom::abelian::PresentedGroup;
use bwcohom::fincat::FiniteCategory;
use num_bigint::BigInt;
use oracle::criteria;

#[test]
fn cyclic_groups_match_bar_resolution() {
    criteria::group_cohomology().unwrap();
}

#[test]
fn bar_oracle_known_values() {
    let (dims, ds) = oracle::bar_complex(3, 4);
    let h = oracle::free_complex_cohomology(&dims, &ds);
    let three = BigInt::from(3);
    assert_eq!(h, vec![(1, vec![]), (0, vec![]), (0, vec![three]), (0, vec![])]);
    assert_eq!(oracle::mod_p_cohomology(&dims, &ds, 3), vec![1, 1, 1, 1]);
}

#[test]
fn posets_match_nerve_cohomology() {
    criteria::nerve(11, 25, 4).unwrap();
}

#[test]
fn nerve_oracle_on_pseudo_circle() {
    let less = vec![
        vec![false, false, true, true],
        vec![false, false, true, true],
        vec![false; 4],
        vec![false; 4],
    ];
    let (dims, ds) = oracle::nerve_complex(&less, 3);
    assert_eq!(dims, vec![4, 4, 0, 0]);
    assert_eq!(
        oracle::free_complex_cohomology(&dims, &ds),
        vec![(1, vec![]), (1, vec![]), (0, vec![])]
    );
}

#[test]
fn terminal_category_is_a_point() {
    let h = criteria::bw_invariants(FiniteCategory::terminal(), &PresentedGroup::free(1), 5);
    assert_eq!(h[0], (1, vec![]));
    assert!(h[1..].iter().all(|g| *g == (0, vec![])));
}

#[test]
fn empty_category_has_trivial_cohomology() {
    let h = criteria::bw_invariants(FiniteCategory::empty(), &PresentedGroup::free(1), 3);
    assert!(h.iter().all(|g| *g == (0, vec![])));
}

#[test]
fn equivalence_induces_isomorphisms() {
    criteria::equivalence_invariance().unwrap();
}
