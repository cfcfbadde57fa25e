use std::sync::Arc;

use crate::abelian::{solve, IntMatrix};
use crate::fincat::{MorphismId, NaturalTransformation};
use crate::natsys::NatFTwoMorphism;

use super::blockmap::BlockMap;
use super::complex::{sign, CochainComplex};
use super::maps::{assemble, check_systems, induced_map_2, same_complex, CochainMap, Recipe, Term};
use super::BWError;

/// A graded map of degree `−shift` (`shift` is 1 for homotopies, 2 for
/// homotopies between homotopies). `component(n)` maps `F^n → F^{n−shift}`.
#[derive(Clone, Debug)]
pub struct Homotopy {
    source: Arc<CochainComplex>,
    target: Arc<CochainComplex>,
    shift: usize,
    components: Vec<BlockMap>,
}

impl Homotopy {
    pub fn zero(source: Arc<CochainComplex>, target: Arc<CochainComplex>, shift: usize) -> Self {
        let components = (0..=source.max_degree())
            .map(|n| {
                let rows = if n >= shift {
                    target.group(n - shift).blocks()
                } else {
                    0
                };
                BlockMap::zero(rows, source.group(n).blocks())
            })
            .collect();
        Homotopy {
            source,
            target,
            shift,
            components,
        }
    }

    pub fn source(&self) -> &Arc<CochainComplex> {
        &self.source
    }

    pub fn target(&self) -> &Arc<CochainComplex> {
        &self.target
    }

    pub fn shift(&self) -> usize {
        self.shift
    }

    /// `F^n → F^{n−shift}`, or `None` below the shift.
    pub fn component(&self, n: usize) -> Option<&BlockMap> {
        (n >= self.shift).then(|| &self.components[n])
    }

    /// `Σ coeff · h` over homotopies with the same ends and shift.
    pub fn combination(terms: &[(i64, &Homotopy)]) -> Result<Homotopy, BWError> {
        let first = terms.first().expect("non-empty combination").1;
        for (_, h) in terms {
            if h.shift != first.shift
                || !same_complex(&h.source, &first.source)
                || !same_complex(&h.target, &first.target)
            {
                return Err(BWError::ShapeMismatch("homotopies are not parallel".into()));
            }
        }
        let components = (0..first.components.len())
            .map(|n| {
                let parts: Vec<(i64, &BlockMap)> = terms.iter().map(|(k, h)| (*k, &h.components[n])).collect();
                BlockMap::combination(&parts)
            })
            .collect();
        Ok(Homotopy {
            source: first.source.clone(),
            target: first.target.clone(),
            shift: first.shift,
            components,
        })
    }

    /// `outer ∘ self` for a cochain map `outer` out of the target.
    pub fn then_map(&self, outer: &CochainMap) -> Result<Homotopy, BWError> {
        if !same_complex(outer.source(), &self.target) {
            return Err(BWError::ShapeMismatch(
                "map does not start at the homotopy's target".into(),
            ));
        }
        let components = self
            .components
            .iter()
            .enumerate()
            .map(|(n, h)| {
                if n >= self.shift {
                    BlockMap::compose(outer.component(n - self.shift), h)
                } else {
                    BlockMap::zero(0, h.source_blocks())
                }
            })
            .collect();
        Ok(Homotopy {
            source: self.source.clone(),
            target: outer.target().clone(),
            shift: self.shift,
            components,
        })
    }

    /// `self ∘ inner` for a cochain map `inner` into the source.
    pub fn after_map(&self, inner: &CochainMap) -> Result<Homotopy, BWError> {
        if !same_complex(inner.target(), &self.source) {
            return Err(BWError::ShapeMismatch(
                "map does not end at the homotopy's source".into(),
            ));
        }
        let components = self
            .components
            .iter()
            .enumerate()
            .map(|(n, h)| BlockMap::compose(h, inner.component(n)))
            .collect();
        Ok(Homotopy {
            source: inner.source().clone(),
            target: self.target.clone(),
            shift: self.shift,
            components,
        })
    }

    /// `d h + h d` (shift 1) or `d r − r d` (shift 2) at source degree `n`,
    /// a map `F^n → F^{n−shift+1}`; `n` ranges over `shift−1 .. N−1`.
    pub fn boundary(&self, n: usize) -> BlockMap {
        let s = self.shift;
        let sign_rd = if s == 1 { 1 } else { -1 };
        let rd = BlockMap::compose(&self.components[n + 1], self.source.differential(n));
        if n >= s {
            let dh = BlockMap::compose(self.target.differential(n - s), &self.components[n]);
            BlockMap::combination(&[(1, &dh), (sign_rd, &rd)])
        } else {
            BlockMap::combination(&[(sign_rd, &rd)])
        }
    }
}

/// Checks `boundary(h) = rhs` in every computed degree, where `rhs(n)` is a
/// map `F^n → F^{n−shift+1}`.
fn check_identity<F>(law: &'static str, h: &Homotopy, mut rhs: F) -> Result<(), BWError>
where
    F: FnMut(usize) -> BlockMap,
{
    let s = h.shift;
    for n in (s - 1)..h.source.max_degree() {
        let lhs = h.boundary(n);
        let r = rhs(n);
        let diff = BlockMap::combination(&[(1, &lhs), (-1, &r)]);
        if let Some((target, source)) = diff.first_nonzero(h.target.group(n + 1 - s)) {
            return Err(BWError::HomotopyIdentity {
                law,
                degree: n,
                row: target,
                column: source,
            });
        }
    }
    Ok(())
}

/// Builds `h_{(ε, γ)}: F*(C, D) → F*(𝒟, E)` of degree −1 for a 2-morphism
/// `(ε, γ): (α, t) ⇒ (β, s)` of `Nat_F`:
///
/// `h(c)(σ1…σn) = s_σ D(1, γ_{X_0} α_{X_0}) Σ_{i=0}^{n} (−1)^i
///  c(φσ1, …, φσi, ε_{X_i}, ξσ_{i+1}, …, ξσn)`.
///
/// Every summand lies in `D(φ(σ) ε_{X_n})`, which `D(1, γα)` carries to
/// `D(F(β)(σ))`.
pub fn homotopy_h_unchecked(
    two: &NatFTwoMorphism,
    source: Arc<CochainComplex>,
    target: Arc<CochainComplex>,
) -> Result<Homotopy, BWError> {
    check_systems(&two.to, &source, &target)?;
    let (eps, gam) = (&two.two.epsilon, &two.two.gamma);
    let alpha = &two.two.alpha;
    let phi = alpha.source();
    let xi = two.two.beta.source();
    let big = source.basis().category().clone();
    let tb = target.basis().clone();
    let s = &two.to;
    let mut components = vec![BlockMap::zero(0, source.group(0).blocks())];
    for n in 0..target.max_degree() {
        let m = assemble(&source, &target, n, n + 1, |i, objects, sigma| {
            let mut terms = Vec::with_capacity(n + 1);
            for k in 0..=n {
                let mut seq = Vec::with_capacity(n + 1);
                seq.extend(sigma[..k].iter().map(|&f| phi.morphism(f)));
                seq.push(eps.component(objects[k]));
                seq.extend(sigma[k..].iter().map(|&f| xi.morphism(f)));
                terms.push(Term {
                    sign: sign(k),
                    sequence: seq,
                    object: 0,
                });
            }
            let x0 = objects[0];
            Ok(Recipe {
                terms,
                k: big.compose(gam.component(x0), alpha.component(x0))?,
                post: vec![s.component(tb.composite(n, i)).matrix().clone()],
            })
        })?;
        components.push(m);
    }
    Ok(Homotopy {
        source,
        target,
        shift: 1,
        components,
    })
}

/// [`homotopy_h_unchecked`] followed by the check
/// `d h + h d = −F*(α, t) + F*(β, s)`.
pub fn homotopy_h(
    two: &NatFTwoMorphism,
    source: Arc<CochainComplex>,
    target: Arc<CochainComplex>,
) -> Result<Homotopy, BWError> {
    let h = homotopy_h_unchecked(two, source.clone(), target.clone())?;
    let p = induced_map_2(&two.from, source.clone(), target.clone())?;
    let q = induced_map_2(&two.to, source, target)?;
    check_identity("dh+hd", &h, |n| {
        BlockMap::combination(&[(-1, p.component(n)), (1, q.component(n))])
    })?;
    Ok(h)
}

/// Double-sum homotopy for vertically stacked 2-morphisms
/// `(ε, γ): (α, t) ⇒ (α′, t′)` and `(ε′, γ′): (α′, t′) ⇒ (β, s)`:
///
/// `r(c)(σ1…σn) = s_σ D(1, (γ′γα)_{X_0}) Σ_{0≤i≤j≤n} (−1)^{i+j}
///  c(φσ1…φσi, ε_{X_i}, φ′σ_{i+1}…φ′σj, ε′_{X_j}, ξσ_{j+1}…ξσn)`.
pub fn homotopy_r_vertical_unchecked(
    first: &NatFTwoMorphism,
    second: &NatFTwoMorphism,
    source: Arc<CochainComplex>,
    target: Arc<CochainComplex>,
) -> Result<Homotopy, BWError> {
    if first.to.anchor() != second.from.anchor() {
        return Err(BWError::LadderInvalid(
            "2-morphisms are not vertically composable".into(),
        ));
    }
    check_systems(&second.to, &source, &target)?;
    let (eps, gam) = (&first.two.epsilon, &first.two.gamma);
    let (eps2, gam2) = (&second.two.epsilon, &second.two.gamma);
    let alpha = &first.two.alpha;
    let phi = alpha.source();
    let phi2 = first.two.beta.source();
    let xi = second.two.beta.source();
    let big = source.basis().category().clone();
    let tb = target.basis().clone();
    let s = &second.to;
    let mut components = vec![
        BlockMap::zero(0, source.group(0).blocks()),
        BlockMap::zero(0, source.group(1).blocks()),
    ];
    for n in 0..target.max_degree().saturating_sub(1) {
        let m = assemble(&source, &target, n, n + 2, |i, objects, sigma| {
            let mut terms = Vec::new();
            for a in 0..=n {
                for b in a..=n {
                    let mut seq = Vec::with_capacity(n + 2);
                    seq.extend(sigma[..a].iter().map(|&f| phi.morphism(f)));
                    seq.push(eps.component(objects[a]));
                    seq.extend(sigma[a..b].iter().map(|&f| phi2.morphism(f)));
                    seq.push(eps2.component(objects[b]));
                    seq.extend(sigma[b..].iter().map(|&f| xi.morphism(f)));
                    terms.push(Term {
                        sign: sign(a + b),
                        sequence: seq,
                        object: 0,
                    });
                }
            }
            let x0 = objects[0];
            let k = big.compose_chain(&[gam2.component(x0), gam.component(x0), alpha.component(x0)])?;
            Ok(Recipe {
                terms,
                k,
                post: vec![s.component(tb.composite(n, i)).matrix().clone()],
            })
        })?;
        components.push(m);
    }
    Ok(Homotopy {
        source,
        target,
        shift: 2,
        components,
    })
}

/// [`homotopy_r_vertical_unchecked`] followed by the check
/// `d r − r d = −h_{(ε,γ)} − h_{(ε′,γ′)} + h_{(εε′, γ′γ)}`.
pub fn homotopy_r_vertical(
    first: &NatFTwoMorphism,
    second: &NatFTwoMorphism,
    source: Arc<CochainComplex>,
    target: Arc<CochainComplex>,
) -> Result<Homotopy, BWError> {
    let r = homotopy_r_vertical_unchecked(first, second, source.clone(), target.clone())?;
    let composite = first.then(second)?;
    let h1 = homotopy_h_unchecked(first, source.clone(), target.clone())?;
    let h2 = homotopy_h_unchecked(second, source.clone(), target.clone())?;
    let h3 = homotopy_h_unchecked(&composite, source, target)?;
    let rhs = Homotopy::combination(&[(-1, &h1), (-1, &h2), (1, &h3)])?;
    check_identity("dr-rd", &r, |n| rhs.components[n].clone())?;
    Ok(r)
}

/// Double-sum homotopy for side-by-side 2-morphisms `outer = (ε, γ): (α, t) ⇒
/// (β, s)` over `𝒟 → C` and `inner = (ε′, γ′): (α′, t′) ⇒ (β′, s′)` over
/// `𝒟′ → 𝒟`:
///
/// `r′(c)(σ) = s′_σ s_{F(β′)σ} D(1, ((γ*γ′)(α*α′))_{X_0}) Σ_{0≤i≤j≤n} (−1)^{i+j}
///  c(φφ′σ1…φφ′σi, φ(ε′_{X_i}), φξ′σ_{i+1}…φξ′σj, ε_{ξ′X_j}, ξξ′σ_{j+1}…ξξ′σn)`.
pub fn homotopy_r_horizontal_unchecked(
    outer: &NatFTwoMorphism,
    inner: &NatFTwoMorphism,
    source: Arc<CochainComplex>,
    target: Arc<CochainComplex>,
) -> Result<Homotopy, BWError> {
    let composite = outer.horizontal(inner)?;
    check_systems(&composite.to, &source, &target)?;
    let (eps, gam) = (&outer.two.epsilon, &outer.two.gamma);
    let (eps2, gam2) = (&inner.two.epsilon, &inner.two.gamma);
    let phi = outer.two.alpha.source();
    let xi = outer.two.beta.source();
    let phi2 = inner.two.alpha.source();
    let xi2 = inner.two.beta.source();
    let aa = NaturalTransformation::horizontal_compose(&outer.two.alpha, &inner.two.alpha)?;
    let gg = NaturalTransformation::horizontal_compose(gam, gam2)?;
    let big = source.basis().category().clone();
    let mid = inner.two.beta.codomain().clone();
    let tb = target.basis().clone();
    let beta2 = &inner.two.beta;
    let (s, s2) = (&outer.to, &inner.to);
    let mut components = vec![
        BlockMap::zero(0, source.group(0).blocks()),
        BlockMap::zero(0, source.group(1).blocks()),
    ];
    for n in 0..target.max_degree().saturating_sub(1) {
        let m = assemble(&source, &target, n, n + 2, |i, objects, sigma| {
            let mut terms = Vec::new();
            for a in 0..=n {
                for b in a..=n {
                    let mut seq = Vec::with_capacity(n + 2);
                    seq.extend(sigma[..a].iter().map(|&f| phi.morphism(phi2.morphism(f))));
                    seq.push(phi.morphism(eps2.component(objects[a])));
                    seq.extend(sigma[a..b].iter().map(|&f| phi.morphism(xi2.morphism(f))));
                    seq.push(eps.component(xi2.object(objects[b])));
                    seq.extend(sigma[b..].iter().map(|&f| xi.morphism(xi2.morphism(f))));
                    terms.push(Term {
                        sign: sign(a + b),
                        sequence: seq,
                        object: 0,
                    });
                }
            }
            let x0 = objects[0];
            let k = big.compose(gg.component(x0), aa.component(x0))?;
            let sig: MorphismId = tb.composite(n, i);
            // F(β′)(σ) = β′_{X_0} ξ′(σ)
            let fb = mid.compose(beta2.component(x0), xi2.morphism(sig))?;
            Ok(Recipe {
                terms,
                k,
                post: vec![s.component(fb).matrix().clone(), s2.component(sig).matrix().clone()],
            })
        })?;
        components.push(m);
    }
    Ok(Homotopy {
        source,
        target,
        shift: 2,
        components,
    })
}

/// [`homotopy_r_horizontal_unchecked`] followed by the check
/// `d r′ − r′ d = −h_{(ε′,γ′)} F*(α, t) − F*(β′, s′) h_{(ε,γ)} + h_{(ε*ε′, γ*γ′)}`.
/// `middle` is the complex of the intermediate system `E` on `𝒟`.
pub fn homotopy_r_horizontal(
    outer: &NatFTwoMorphism,
    inner: &NatFTwoMorphism,
    source: Arc<CochainComplex>,
    middle: Arc<CochainComplex>,
    target: Arc<CochainComplex>,
) -> Result<Homotopy, BWError> {
    let r = homotopy_r_horizontal_unchecked(outer, inner, source.clone(), target.clone())?;
    let composite = outer.horizontal(inner)?;
    let f_alpha = induced_map_2(&outer.from, source.clone(), middle.clone())?;
    let f_beta2 = induced_map_2(&inner.to, middle.clone(), target.clone())?;
    let h_inner = homotopy_h_unchecked(inner, middle.clone(), target.clone())?.after_map(&f_alpha)?;
    let h_outer = homotopy_h_unchecked(outer, source.clone(), middle)?.then_map(&f_beta2)?;
    let h_comp = homotopy_h_unchecked(&composite, source, target)?;
    let rhs = Homotopy::combination(&[(-1, &h_inner), (-1, &h_outer), (1, &h_comp)])?;
    check_identity("dr'-r'd", &r, |n| rhs.components[n].clone())?;
    Ok(r)
}

/// Outcome of [`homotopy_class_equal`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelativeHomotopy {
    pub equal: bool,
    /// Equations were imposed on source degrees `1 ..= certified_through`;
    /// beyond that the complex is not computed.
    pub certified_through: usize,
}

/// Decides whether `[h1] = [h2]`, i.e. whether some degree −2 map `r` has
/// `d r − r d = −h1 + h2`, on the computed range. The search is an exact
/// integer linear system and is only practical for small complexes.
pub fn homotopy_class_equal(h1: &Homotopy, h2: &Homotopy) -> Result<RelativeHomotopy, BWError> {
    if h1.shift != 1 || h2.shift != 1 {
        return Err(BWError::ShapeMismatch(
            "relative homotopy compares degree −1 maps".into(),
        ));
    }
    let diff = Homotopy::combination(&[(-1, h1), (1, h2)])?;
    let (src, tgt) = (&h1.source, &h1.target);
    let nmax = src.max_degree();
    if nmax < 2 {
        // no r can be nonzero; equality is literal
        let equal = (1..=nmax).all(|n| diff.components[n].first_nonzero(tgt.group(n - 1)).is_none());
        return Ok(RelativeHomotopy {
            equal,
            certified_through: nmax.saturating_sub(1),
        });
    }
    let a: Vec<usize> = (0..=nmax).map(|n| tgt.group(n).generators()).collect();
    let b: Vec<usize> = (0..=nmax).map(|n| src.group(n).generators()).collect();
    let rel_t: Vec<IntMatrix> = (0..=nmax).map(|n| tgt.presented(n).relations().clone()).collect();
    let rel_s: Vec<IntMatrix> = (0..=nmax).map(|n| src.presented(n).relations().clone()).collect();

    // unknowns: vec(X_n) for n = 2..=nmax, then slack Y_n (equations) and W_n (well-definedness)
    let mut offset = 0;
    let mut x_off = vec![0; nmax + 1];
    for n in 2..=nmax {
        x_off[n] = offset;
        offset += a[n - 2] * b[n];
    }
    let mut y_off = vec![0; nmax + 1];
    for n in 1..nmax {
        y_off[n] = offset;
        offset += rel_t[n - 1].cols() * b[n];
    }
    let mut w_off = vec![0; nmax + 1];
    for n in 2..=nmax {
        w_off[n] = offset;
        offset += rel_t[n - 2].cols() * rel_s[n].cols();
    }
    let unknowns = offset;

    let mut blocks: Vec<(IntMatrix, IntMatrix)> = Vec::new();
    for n in 1..nmax {
        let rows = a[n - 1] * b[n];
        let mut sys = IntMatrix::zeros(rows, unknowns);
        if n >= 2 {
            let d = tgt.differential(n - 2).to_dense(tgt.group(n - 2), tgt.group(n - 1));
            sys.paste(0, x_off[n], &kron(&IntMatrix::identity(b[n]), &d));
        }
        let ds = src.differential(n).to_dense(src.group(n), src.group(n + 1));
        sys.paste(
            0,
            x_off[n + 1],
            &-&kron(&ds.transpose(), &IntMatrix::identity(a[n - 1])),
        );
        sys.paste(0, y_off[n], &kron(&IntMatrix::identity(b[n]), &rel_t[n - 1]));
        let rhs = diff.components[n].to_dense(src.group(n), tgt.group(n - 1));
        blocks.push((sys, vec_of(&rhs)));
    }
    for n in 2..=nmax {
        let rows = a[n - 2] * rel_s[n].cols();
        if rows == 0 {
            continue;
        }
        let mut sys = IntMatrix::zeros(rows, unknowns);
        sys.paste(
            0,
            x_off[n],
            &kron(&rel_s[n].transpose(), &IntMatrix::identity(a[n - 2])),
        );
        sys.paste(
            0,
            w_off[n],
            &-&kron(&IntMatrix::identity(rel_s[n].cols()), &rel_t[n - 2]),
        );
        blocks.push((sys, IntMatrix::zeros(rows, 1)));
    }
    let total: usize = blocks.iter().map(|(s, _)| s.rows()).sum();
    let mut sys = IntMatrix::zeros(total, unknowns);
    let mut rhs = IntMatrix::zeros(total, 1);
    let mut r0 = 0;
    for (s, v) in &blocks {
        sys.paste(r0, 0, s);
        rhs.paste(r0, 0, v);
        r0 += s.rows();
    }
    let equal = rhs.is_zero() || (unknowns > 0 && solve(&sys, &rhs).is_some());
    Ok(RelativeHomotopy {
        equal,
        certified_through: nmax - 1,
    })
}

fn kron(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let mut out = IntMatrix::zeros(a.rows() * b.rows(), a.cols() * b.cols());
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            let v = a.get(i, j);
            if num_traits::Zero::is_zero(v) {
                continue;
            }
            out.paste(i * b.rows(), j * b.cols(), &b.scaled(v));
        }
    }
    out
}

/// Column-major vectorization.
fn vec_of(m: &IntMatrix) -> IntMatrix {
    let mut out = IntMatrix::zeros(m.rows() * m.cols(), 1);
    for j in 0..m.cols() {
        for i in 0..m.rows() {
            out.set(j * m.rows() + i, 0, m.get(i, j).clone());
        }
    }
    out
}

/// Applies `dr − rd` for a degree −2 map given densely, for tests that
/// construct boundaries of random `r`.
pub fn homotopy_from_dense(
    source: Arc<CochainComplex>,
    target: Arc<CochainComplex>,
    shift: usize,
    dense: &[IntMatrix],
) -> Result<Homotopy, BWError> {
    let nmax = source.max_degree();
    if dense.len() != nmax + 1 {
        return Err(BWError::ShapeMismatch("one matrix per degree expected".into()));
    }
    let components = (0..=nmax)
        .map(|n| {
            if n < shift {
                BlockMap::zero(0, source.group(n).blocks())
            } else {
                BlockMap::from_dense(&dense[n], source.group(n), target.group(n - shift))
            }
        })
        .collect();
    Ok(Homotopy {
        source,
        target,
        shift,
        components,
    })
}
