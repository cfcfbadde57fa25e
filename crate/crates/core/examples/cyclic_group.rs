//! Cohomology of Z/n with constant integer coefficients.
//!
//! `cargo run --example cyclic_group -- 3`

use std::sync::Arc;

use bwcohom::abelian::PresentedGroup;
use bwcohom::bwcomplex::CochainComplex;
use bwcohom::factorization::FactorizationCategory;
use bwcohom::fincat::FiniteCategory;
use bwcohom::natsys::NaturalSystem;

fn main() {
    let n: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(2);
    let c = Arc::new(FiniteCategory::cyclic_group(n));
    let fc = Arc::new(FactorizationCategory::build(c));
    let d = Arc::new(NaturalSystem::constant(fc, &PresentedGroup::free(1)));
    let complex = CochainComplex::build(d, 5).expect("d∘d = 0");
    for (k, h) in complex.cohomology_all().expect("cohomology").iter().enumerate() {
        println!("H^{k}(Z/{n}; Z) = {h}");
    }
}
