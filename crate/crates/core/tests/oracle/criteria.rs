//! Checks shared by the integration tests and the acceptance report. Each
//! returns a one-line summary on success and the first discrepancy otherwise.

use std::collections::{HashSet, VecDeque};
use std::sync::Arc;

use bwcohom::abelian::{hermite_normal_form, smith_invariants, smith_normal_form, IntMatrix, PresentedGroup};
use bwcohom::bwcomplex::{induced_map_nat, CochainComplex};
use bwcohom::factorization::FactorizationCategory;
use bwcohom::fincat::{FiniteCategory, Functor, NaturalTransformation};
use bwcohom::generate;
use bwcohom::natsys::{NatSysMorphism, NaturalSystem};
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;

pub type Invariants = (usize, Vec<BigInt>);

pub fn to_mat(m: &IntMatrix) -> Mat {
    (0..m.rows()).map(|r| m.row(r).to_vec()).collect()
}

pub fn constant_complex(c: FiniteCategory, g: &PresentedGroup, n: usize) -> Arc<CochainComplex> {
    let fc = Arc::new(FactorizationCategory::build(Arc::new(c)));
    Arc::new(CochainComplex::build(Arc::new(NaturalSystem::constant(fc, g)), n).unwrap())
}

/// `H^0..H^{n-1}` as `(rank, torsion)`.
pub fn bw_invariants(c: FiniteCategory, g: &PresentedGroup, n: usize) -> Vec<Invariants> {
    constant_complex(c, g, n)
        .cohomology_all()
        .unwrap()
        .into_iter()
        .map(|h| (h.free_rank, h.torsion))
        .collect()
}

fn show(v: &[Invariants]) -> String {
    v.iter()
        .map(|(r, t)| {
            let mut parts: Vec<String> = Vec::new();
            if *r > 0 {
                parts.push(if *r == 1 { "Z".into() } else { format!("Z^{r}") });
            }
            parts.extend(t.iter().map(|d| format!("Z/{d}")));
            if parts.is_empty() {
                "0".into()
            } else {
                parts.join("+")
            }
        })
        .collect::<Vec<_>>()
        .join(", ")
}

/// `Z/2`, `Z/3` with constant `Z` and `Z/p`, degrees 0..3, against the bar
/// complex. Also pins `H*(Z/2; Z) = Z, 0, Z/2, 0`.
pub fn group_cohomology() -> Result<String, String> {
    let mut lines = Vec::new();
    for k in [2usize, 3] {
        let (dims, ds) = bar_complex(k, 4);
        let integral = free_complex_cohomology(&dims, &ds);
        let bw = bw_invariants(FiniteCategory::cyclic_group(k), &PresentedGroup::free(1), 4);
        if bw != integral {
            return Err(format!("Z/{k} with Z: BW {} vs bar {}", show(&bw), show(&integral)));
        }
        let dims_p = mod_p_cohomology(&dims, &ds, k as i64);
        let bw_p = bw_invariants(FiniteCategory::cyclic_group(k), &PresentedGroup::cyclic(k as u64), 4);
        let expected: Vec<Invariants> = dims_p.iter().map(|&d| (0, vec![BigInt::from(k); d])).collect();
        if bw_p != expected {
            return Err(format!(
                "Z/{k} with Z/{k}: BW {} vs bar {}",
                show(&bw_p),
                show(&expected)
            ));
        }
        lines.push(format!("Z/{k}: [{}] / [{}]", show(&bw), show(&bw_p)));
    }
    let pinned = vec![(1, vec![]), (0, vec![]), (0, vec![BigInt::from(2)]), (0, vec![])];
    if bw_invariants(FiniteCategory::cyclic_group(2), &PresentedGroup::free(1), 4) != pinned {
        return Err("H*(Z/2; Z) is not Z, 0, Z/2, 0".into());
    }
    Ok(lines.join("; "))
}

pub fn pseudo_circle() -> FiniteCategory {
    FiniteCategory::preorder(&["a", "b", "c", "d"], &[("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")]).unwrap()
}

fn strict_order(c: &FiniteCategory) -> Vec<Vec<bool>> {
    let n = c.object_count();
    (0..n)
        .map(|a| (0..n).map(|b| a != b && c.hom(a, b).next().is_some()).collect())
        .collect()
}

/// Constant-`Z` BW cohomology of posets against the simplicial cohomology of
/// their nerves, degrees `0..n`.
pub fn nerve(seed: u64, posets: usize, n: usize) -> Result<String, String> {
    let expected_circle: Vec<Invariants> = vec![(1, vec![]), (1, vec![]), (0, vec![])];
    let circle = bw_invariants(pseudo_circle(), &PresentedGroup::free(1), 3);
    if circle != expected_circle {
        return Err(format!("pseudo-circle: {}", show(&circle)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checked = 0;
    let mut cases: Vec<FiniteCategory> = vec![pseudo_circle()];
    cases.extend((0..posets).map(|_| generate::random_poset(&mut rng, 5)));
    for (i, c) in cases.into_iter().enumerate() {
        let (dims, ds) = nerve_complex(&strict_order(&c), n);
        let simplicial = free_complex_cohomology(&dims, &ds);
        let bw = bw_invariants(c, &PresentedGroup::free(1), n);
        if bw != simplicial {
            return Err(format!("poset {i}: BW {} vs nerve {}", show(&bw), show(&simplicial)));
        }
        checked += 1;
    }
    Ok(format!(
        "{checked} posets including the pseudo-circle, degrees 0..{}",
        n - 1
    ))
}

/// `{a, b}` indiscrete against the terminal category, both directions, on
/// `H^0..H^2` for constant `Z` and `Z/4`.
pub fn equivalence_invariance() -> Result<String, String> {
    let big = Arc::new(FiniteCategory::indiscrete(&["a", "b"]));
    let point = Arc::new(FiniteCategory::terminal());
    let collapse = Functor::constant(big.clone(), point.clone(), 0);
    let include = Functor::constant(point.clone(), big.clone(), 0);
    let fb = Arc::new(FactorizationCategory::build(big.clone()));
    let fp = Arc::new(FactorizationCategory::build(point.clone()));
    for g in [PresentedGroup::free(1), PresentedGroup::cyclic(4)] {
        for (phi, from, to) in [(&collapse, &fp, &fb), (&include, &fb, &fp)] {
            // F*(φ, 1): F*(C, D) → F*(𝒟, D F(φ))
            let d = Arc::new(NaturalSystem::constant(from.clone(), &g));
            let t = NatSysMorphism::tautological(d.clone(), to.clone(), &NaturalTransformation::identity(phi))
                .map_err(|e| e.to_string())?;
            let src = Arc::new(CochainComplex::build(d, 3).map_err(|e| e.to_string())?);
            let tgt = Arc::new(CochainComplex::build(t.target().clone(), 3).map_err(|e| e.to_string())?);
            let map = induced_map_nat(phi, &t, src, tgt).map_err(|e| e.to_string())?;
            for n in 0..3 {
                let h = map.on_cohomology(n).map_err(|e| e.to_string())?;
                if !h.is_iso() {
                    return Err(format!(
                        "H^{n} map is not an isomorphism for {:?}",
                        g.invariants().human()
                    ));
                }
            }
        }
    }
    Ok("both directions iso on H^0..H^2 for Z and Z/4".into())
}

fn random_matrix<R: Rng>(rng: &mut R) -> Vec<Vec<i64>> {
    let (r, c) = (rng.gen_range(1..=6), rng.gen_range(1..=6));
    let zero_bias = rng.gen_range(0.0..0.6);
    (0..r)
        .map(|_| {
            (0..c)
                .map(|_| {
                    if rng.gen_bool(zero_bias) {
                        0
                    } else {
                        rng.gen_range(-9..=9)
                    }
                })
                .collect()
        })
        .collect()
}

fn is_unimodular(m: &IntMatrix) -> bool {
    det(&to_mat(m)).abs().is_one()
}

/// Size of the subgroup of `(Z/q)^r` generated by the columns of `m`.
fn subgroup_size(m: &Mat, q: i64) -> usize {
    let r = m.len();
    let gens: Vec<Vec<i64>> = (0..m.first().map_or(0, Vec::len))
        .map(|c| {
            (0..r)
                .map(|i| (&m[i][c] % BigInt::from(q)).to_i64().unwrap().rem_euclid(q))
                .collect()
        })
        .collect();
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(vec![0; r]);
    queue.push_back(vec![0; r]);
    while let Some(v) = queue.pop_front() {
        for g in &gens {
            let w: Vec<i64> = v.iter().zip(g).map(|(a, b)| (a + b) % q).collect();
            if seen.insert(w.clone()) {
                queue.push_back(w);
            }
        }
    }
    seen.len()
}

/// Checks SNF and HNF of one matrix: determinantal divisors, unimodular
/// transforms, canonical shape, and (when the quotient is small) a
/// brute-force count of `Z^r / L`.
pub fn check_matrix(rows: &[Vec<i64>]) -> Result<(), String> {
    let m = IntMatrix::from_rows(rows);
    let dense = mat(rows);
    let inv = smith_invariants(&m);
    let expected = determinantal_invariants(&dense);
    if inv != expected {
        return Err(format!("{rows:?}: invariants {inv:?} vs determinantal {expected:?}"));
    }
    let naive = smith_diagonal(&dense);
    if inv != naive {
        return Err(format!("{rows:?}: invariants {inv:?} vs naive elimination {naive:?}"));
    }
    let (u, s, v) = smith_normal_form(&m);
    if &(&u * &m) * &v != s || !is_unimodular(&u) || !is_unimodular(&v) {
        return Err(format!("{rows:?}: U m V = S fails or a transform is not unimodular"));
    }
    for i in 0..s.rows() {
        for j in 0..s.cols() {
            let e = s.get(i, j);
            if (i != j && !e.is_zero())
                || (i == j && i < inv.len() && *e != inv[i])
                || (i == j && i >= inv.len() && !e.is_zero())
            {
                return Err(format!("{rows:?}: S is not the Smith diagonal at ({i}, {j})"));
            }
        }
    }
    let (h, hu) = hermite_normal_form(&m);
    if &m * &hu != h || !is_unimodular(&hu) {
        return Err(format!("{rows:?}: m U = H fails or U is not unimodular"));
    }
    let mut last_pivot: Option<usize> = None;
    let mut zero_seen = false;
    for c in 0..h.cols() {
        let col = h.column(c);
        match col.iter().position(|x| !x.is_zero()) {
            None => zero_seen = true,
            Some(p) => {
                if zero_seen || last_pivot.is_some_and(|q| p <= q) || !col[p].is_positive() {
                    return Err(format!("{rows:?}: H is not in column echelon form at column {c}"));
                }
                for c2 in 0..c {
                    let e = h.get(p, c2);
                    if e.is_negative() || e >= &col[p] {
                        return Err(format!("{rows:?}: H entry ({p}, {c2}) is not reduced"));
                    }
                }
                last_pivot = Some(p);
            }
        }
    }
    // |Z^r / L| by enumeration inside (Z/q)^r, q the exponent
    let r = rows.len();
    if inv.len() == r {
        let q = inv.last().unwrap().to_i64().unwrap();
        if (q as f64).powi(r as i32) <= 200_000.0 {
            let order: BigInt = inv.iter().product();
            let total = q.pow(r as u32) as usize;
            for (what, gens) in [("m", &dense), ("H", &to_mat(&h))] {
                let size = subgroup_size(gens, q);
                if BigInt::from(total / size) != order || !total.is_multiple_of(size) {
                    return Err(format!(
                        "{rows:?}: brute-force index of L({what}) is {}, expected {order}",
                        total / size
                    ));
                }
            }
        }
    }
    Ok(())
}

pub fn linear_algebra(seed: u64, count: usize) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..count {
        check_matrix(&random_matrix(&mut rng))?;
    }
    Ok(format!("{count} random matrices up to 6x6, entries in [-9, 9]"))
}
