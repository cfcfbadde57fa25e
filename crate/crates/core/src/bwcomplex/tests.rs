use std::collections::HashMap;
use std::sync::Arc;

use crate::abelian::{GroupHom, GroupInvariants, IntMatrix, PresentedGroup};
use crate::factorization::{FactorizationCategory, TwoMorphism};
use crate::fincat::{FiniteCategory, Functor, NaturalTransformation};
use crate::natsys::{NatFTwoMorphism, NatSysMorphism, NaturalSystem};

use super::*;

fn constant(c: FiniteCategory, g: PresentedGroup, n: usize) -> Arc<CochainComplex> {
    let fc = Arc::new(FactorizationCategory::build(Arc::new(c)));
    Arc::new(CochainComplex::build(Arc::new(NaturalSystem::constant(fc, &g)), n).unwrap())
}

fn orders(v: &[u64]) -> GroupInvariants {
    GroupInvariants::from_cyclic_orders(v.iter().map(|&k| k.into()))
}

#[test]
fn terminal_category() {
    let k = constant(FiniteCategory::terminal(), PresentedGroup::free(1), 5);
    let h = k.cohomology_all().unwrap();
    assert_eq!(h[0], GroupInvariants::free(1));
    assert!(h[1..].iter().all(GroupInvariants::is_trivial));
    // d^n alternates 0 and ±1 on Z
    assert!(k.differential_hom(0).unwrap().is_zero());
    assert!(k.differential_hom(1).unwrap().is_iso());
}

#[test]
fn arrow_differential_in_degree_zero() {
    let k = constant(FiniteCategory::arrow(), PresentedGroup::free(1), 2);
    let d = k.differential(0).to_dense(k.group(0), k.group(1));
    let c = IntMatrix::from_rows(&[[3], [5]]);
    let dc = &d * &c;
    // sequences of length 1 are 1_x, 1_y, f in that order
    assert_eq!(dc, IntMatrix::from_rows(&[[0], [0], [-2]]));
}

#[test]
fn cyclic_group_integral_coefficients() {
    let k = constant(FiniteCategory::cyclic_group(2), PresentedGroup::free(1), 4);
    let h = k.cohomology_all().unwrap();
    assert_eq!(h, vec![orders(&[0]), orders(&[]), orders(&[2]), orders(&[])]);
}

#[test]
fn cyclic_group_mod_two_coefficients() {
    let k = constant(FiniteCategory::cyclic_group(2), PresentedGroup::cyclic(2), 5);
    for g in k.cohomology_all().unwrap() {
        assert_eq!(g, orders(&[2]));
    }
}

#[test]
fn pseudo_circle() {
    let c = FiniteCategory::preorder(&["a", "b", "c", "d"], &[("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")]).unwrap();
    let k = constant(c, PresentedGroup::free(1), 3);
    let h = k.cohomology_all().unwrap();
    assert_eq!(h, vec![orders(&[0]), orders(&[0]), orders(&[])]);
}

#[test]
fn degree_out_of_range() {
    let k = constant(FiniteCategory::terminal(), PresentedGroup::free(1), 2);
    assert!(matches!(
        k.cohomology(2),
        Err(BWError::DegreeOutOfRange { degree: 2, max: 2 })
    ));
}

#[test]
fn identity_map_acts_as_identity() {
    let k = constant(FiniteCategory::arrow(), PresentedGroup::free(1), 3);
    let id = CochainMap::identity(k.clone());
    id.check_chain_map().unwrap();
    let t = NatSysMorphism::identity(k.system().clone());
    let phi = Functor::identity(k.basis().category().clone());
    let f = induced_map_nat(&phi, &t, k.clone(), k.clone()).unwrap();
    assert!(f.equals(&id));
    assert!(f.on_cohomology(0).unwrap().is_identity());
}

/// `D` on the arrow `x → y` with `D(1_x, f) = 2`, `D(f, 1_y) = 3`.
fn twisted_arrow() -> Arc<NaturalSystem> {
    let c = Arc::new(FiniteCategory::arrow());
    let fc = Arc::new(FactorizationCategory::build(c));
    let mut left = HashMap::new();
    let mut right = HashMap::new();
    right.insert((0, 2), IntMatrix::from_rows(&[[2]]));
    left.insert((1, 2), IntMatrix::from_rows(&[[3]]));
    Arc::new(NaturalSystem::from_generators(fc, vec![PresentedGroup::free(1); 3], &left, &right).unwrap())
}

/// `(1, f): (1_{const x}, t) ⇒ (f, 1)` for functors from the terminal category.
fn arrow_two_morphism(d: &Arc<NaturalSystem>) -> (NatFTwoMorphism, Arc<NaturalSystem>) {
    let c = d.base().clone();
    let t = Arc::new(FiniteCategory::terminal());
    let const_x = Functor::constant(t.clone(), c.clone(), 0);
    let const_y = Functor::constant(t.clone(), c.clone(), 1);
    let alpha = NaturalTransformation::identity(&const_x);
    let beta = NaturalTransformation::new(const_x.clone(), const_y.clone(), vec![2]).unwrap();
    let two = TwoMorphism::new(
        NaturalTransformation::identity(&const_x),
        beta.clone(),
        alpha,
        beta.clone(),
    )
    .unwrap();
    let ft = Arc::new(FactorizationCategory::build(t));
    let e = Arc::new(NaturalSystem::constant(ft, &PresentedGroup::free(1)));
    let s = NatSysMorphism::new(
        beta,
        d.clone(),
        e.clone(),
        vec![GroupHom::identity(&PresentedGroup::free(1))],
    )
    .unwrap();
    (NatFTwoMorphism::induced_from_target(two, s).unwrap(), e)
}

/// `D(h, k) = (−1)^{[k = g]}` on `Z/2`.
fn sign_system() -> Arc<NaturalSystem> {
    let c = Arc::new(FiniteCategory::cyclic_group(2));
    let fc = Arc::new(FactorizationCategory::build(c));
    let mut left = HashMap::new();
    let mut right = HashMap::new();
    for f in 0..2 {
        left.insert((f, 1), IntMatrix::from_rows(&[[1]]));
        right.insert((f, 1), IntMatrix::from_rows(&[[-1]]));
    }
    Arc::new(NaturalSystem::from_generators(fc, vec![PresentedGroup::free(1); 2], &left, &right).unwrap())
}

/// `(g, 1): (g, t) ⇒ (1, 1)` for functors from the terminal category to `Z/2`.
fn sign_two_morphism(d: &Arc<NaturalSystem>) -> (NatFTwoMorphism, Arc<NaturalSystem>) {
    let c = d.base().clone();
    let t = Arc::new(FiniteCategory::terminal());
    let star = Functor::constant(t.clone(), c, 0);
    let g = NaturalTransformation::new(star.clone(), star.clone(), vec![1]).unwrap();
    let one = NaturalTransformation::identity(&star);
    let two = TwoMorphism::new(g.clone(), one.clone(), g, one.clone()).unwrap();
    let ft = Arc::new(FactorizationCategory::build(t));
    let e = Arc::new(NaturalSystem::constant(ft, &PresentedGroup::free(1)));
    let s = NatSysMorphism::new(
        one,
        d.clone(),
        e.clone(),
        vec![GroupHom::identity(&PresentedGroup::free(1))],
    )
    .unwrap();
    (NatFTwoMorphism::induced_from_target(two, s).unwrap(), e)
}

#[test]
fn homotopy_identity_for_a_nontrivial_two_morphism() {
    for (d, (two, e)) in [
        (twisted_arrow(), arrow_two_morphism(&twisted_arrow())),
        (sign_system(), sign_two_morphism(&sign_system())),
    ] {
        let src = Arc::new(CochainComplex::build(d, 4).unwrap());
        let tgt = Arc::new(CochainComplex::build(e, 4).unwrap());
        homotopy_h(&two, src.clone(), tgt.clone()).unwrap();
        induced_map_2(&two.from, src.clone(), tgt.clone())
            .unwrap()
            .check_chain_map()
            .unwrap();
        induced_map_2(&two.to, src, tgt).unwrap().check_chain_map().unwrap();
    }
}

#[test]
fn sign_two_morphism_moves_the_induced_map() {
    let d = sign_system();
    let (two, e) = sign_two_morphism(&d);
    let src = Arc::new(CochainComplex::build(d, 3).unwrap());
    let tgt = Arc::new(CochainComplex::build(e, 3).unwrap());
    let p = induced_map_2(&two.from, src.clone(), tgt.clone()).unwrap();
    let q = induced_map_2(&two.to, src, tgt).unwrap();
    assert!(!p.equals(&q));
}

#[test]
fn vertical_and_horizontal_double_homotopies() {
    let d = twisted_arrow();
    let (two, e) = arrow_two_morphism(&d);
    let src = Arc::new(CochainComplex::build(d, 4).unwrap());
    let tgt = Arc::new(CochainComplex::build(e.clone(), 4).unwrap());
    let id = NatFTwoMorphism::identity(&two.to);
    homotopy_r_vertical(&two, &id, src.clone(), tgt.clone()).unwrap();
    let id_first = NatFTwoMorphism::identity(&two.from);
    homotopy_r_vertical(&id_first, &two, src.clone(), tgt.clone()).unwrap();

    let inner = NatFTwoMorphism::identity(&NatSysMorphism::identity(e));
    homotopy_r_horizontal(&two, &inner, src.clone(), tgt.clone(), tgt.clone()).unwrap();

    let d = sign_system();
    let (two, e) = sign_two_morphism(&d);
    let src = Arc::new(CochainComplex::build(d, 4).unwrap());
    let tgt = Arc::new(CochainComplex::build(e.clone(), 4).unwrap());
    homotopy_r_vertical(&two, &NatFTwoMorphism::identity(&two.to), src.clone(), tgt.clone()).unwrap();
    let inner = NatFTwoMorphism::identity(&NatSysMorphism::identity(e));
    homotopy_r_horizontal(&two, &inner, src, tgt.clone(), tgt).unwrap();
}

#[test]
fn relative_homotopy_detects_equal_classes() {
    let d = sign_system();
    let (two, e) = sign_two_morphism(&d);
    let src = Arc::new(CochainComplex::build(d, 3).unwrap());
    let tgt = Arc::new(CochainComplex::build(e, 3).unwrap());
    let h = homotopy_h(&two, src.clone(), tgt.clone()).unwrap();
    let same = homotopy_class_equal(&h, &h).unwrap();
    assert!(same.equal);
    let zero = Homotopy::zero(src, tgt, 1);
    // dh + hd ≠ 0, so h is not homotopic to the zero homotopy
    assert!(!homotopy_class_equal(&h, &zero).unwrap().equal);
}
