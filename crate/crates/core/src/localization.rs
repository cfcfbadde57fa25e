//! Localizations `φ ⊣ ψ` with `φψ = 1` and identity counit, their duals, and
//! constructive verification that `ψ` induces isomorphisms
//! `H^n(C, D) → H^n(𝒟, D F(ψ))` for (co)local `D`.
//!
//! The theorem is certified three ways:
//!
//! * (a) the invariants of both sides agree degreewise;
//! * (b) `Φ = F*(1_φ, 1_D * F(α, 1_ξ))` (dually `F(1_ξ, α)`) is inverse to
//!   `F*(1_ψ, 1)` on cohomology, after replacing `D` by `D F(α)` through the
//!   canonical isomorphism `κ = 1_D * F(1, α)` (dually `F(α, 1)`);
//! * (c) the composite `F*(1_ψ, 1) Φ` is the identity cochain map on the
//!   nose, and for the other composite `B = Φ F*(1_ψ, 1)` the difference of
//!   the two homotopies of the lemma diagram,
//!   `H = h_{(1, α)} − h_{(α, 1_ξ)}` (dually `h_{(α, 1)} − h_{(1_ξ, α)}`),
//!   satisfies `dH + Hd = B − 1` entrywise.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::abelian::{AbelianError, GroupInvariants};
use crate::bwcomplex::{homotopy_h, induced_map_nat, BWError, BlockMap, CochainComplex, CochainMap, Homotopy};
use crate::factorization::{FactorizationCategory, TwoMorphism};
use crate::fincat::{FinCatError, FiniteCategory, Functor, MorphismId, NaturalTransformation, ObjectId, Report};
use crate::natsys::{act_by_two_morphism, NatFTwoMorphism, NatSysError, NatSysMorphism, NaturalSystem};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Local,
    Colocal,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Side::Local => write!(f, "local"),
            Side::Colocal => write!(f, "colocal"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Certificate {
    Invariants,
    InverseOnCohomology,
    Homotopy,
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Certificate::Invariants => write!(f, "(a) invariants"),
            Certificate::InverseOnCohomology => write!(f, "(b) inverse on cohomology"),
            Certificate::Homotopy => write!(f, "(c) chain homotopy"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LocalizationViolation {
    /// The functors do not run between the two categories.
    Shape,
    /// `α` is not a transformation between `1_C` and `ψφ` in the right direction.
    UnitEnds,
    SectionObject {
        object: ObjectId,
    },
    SectionMorphism {
        morphism: MorphismId,
    },
    /// `φ(α_X)` is not an identity.
    PhiOfAlpha {
        object: ObjectId,
    },
    /// `α_{ψ(Y)}` is not an identity.
    AlphaAtPsi {
        object: ObjectId,
    },
}

impl fmt::Display for LocalizationViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Shape => write!(f, "functors do not run between the two categories"),
            Self::UnitEnds => write!(f, "α has the wrong source or target functor"),
            Self::SectionObject { object } => write!(f, "φψ moves object {object}"),
            Self::SectionMorphism { morphism } => write!(f, "φψ moves morphism {morphism}"),
            Self::PhiOfAlpha { object } => write!(f, "φ(α) is not an identity at object {object}"),
            Self::AlphaAtPsi { object } => write!(f, "α is not an identity at ψ of object {object}"),
        }
    }
}

#[derive(Debug, Error)]
pub enum LocalizationError {
    #[error("invalid {side}ization data: {report}")]
    Invalid {
        side: Side,
        report: Report<LocalizationViolation>,
    },
    #[error("system is not {side}: the action at {name} (morphism {morphism}) is not invertible")]
    NotLocal {
        side: Side,
        morphism: MorphismId,
        name: String,
    },
    #[error("certificate {certificate} fails in degree {degree}: {detail}")]
    Certificate {
        certificate: Certificate,
        degree: usize,
        detail: String,
    },
    #[error("system lives on a different category")]
    WrongCategory,
    #[error(transparent)]
    Complex(#[from] BWError),
    #[error(transparent)]
    NatSys(#[from] NatSysError),
    #[error(transparent)]
    FinCat(#[from] FinCatError),
    #[error(transparent)]
    Abelian(#[from] AbelianError),
}

/// `φ: C → 𝒟`, `ψ: 𝒟 → C` and `α`, which is the unit `1_C ⇒ ψφ` of a
/// localization or the counit `ψφ ⇒ 1_C` of a colocalization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reflection {
    side: Side,
    phi: Functor,
    psi: Functor,
    alpha: NaturalTransformation,
}

impl Reflection {
    pub fn new(
        side: Side,
        phi: Functor,
        psi: Functor,
        alpha: NaturalTransformation,
    ) -> Result<Self, LocalizationError> {
        let r = Reflection { side, phi, psi, alpha };
        let report = r.validate();
        if report.is_ok() {
            Ok(r)
        } else {
            Err(LocalizationError::Invalid { side, report })
        }
    }

    /// `𝒟 = C`, `φ = ψ = 1`, `α = 1`.
    pub fn identity(side: Side, c: Arc<FiniteCategory>) -> Self {
        let id = Functor::identity(c);
        Reflection {
            side,
            alpha: NaturalTransformation::identity(&id),
            phi: id.clone(),
            psi: id,
        }
    }

    /// The idempotent form: `ξ: C → C` with `α: 1 ⇒ ξ` (or `ξ ⇒ 1`) and
    /// `1_ξ * α = 1_ξ = α * 1_ξ`. `𝒟` is the image of `ξ`, `ψ` its
    /// inclusion and `φ` the corestriction.
    pub fn from_idempotent(side: Side, xi: &Functor, alpha: NaturalTransformation) -> Result<Self, LocalizationError> {
        let c = xi.source().clone();
        let image: Vec<MorphismId> = (0..c.morphism_count()).map(|f| xi.morphism(f)).collect();
        let (d, objs, mors) = c.subcategory(&image)?;
        let d = Arc::new(d);
        let obj_pos = |x: ObjectId| objs.binary_search(&x).expect("image object");
        let mor_pos = |f: MorphismId| mors.binary_search(&f).expect("image morphism");
        let phi = Functor::new(
            c.clone(),
            d.clone(),
            (0..c.object_count()).map(|x| obj_pos(xi.object(x))).collect(),
            image.iter().map(|&f| mor_pos(f)).collect(),
        )?;
        let psi = Functor::new(d, c, objs.clone(), mors.clone())?;
        let ws = NaturalTransformation::whisker_left(xi, &alpha)?;
        let wt = NaturalTransformation::whisker_right(&alpha, xi)?;
        let one = NaturalTransformation::identity(xi);
        if ws.components() != one.components() || wt.components() != one.components() {
            return Err(LocalizationError::Invalid {
                side,
                report: Report::from(vec![LocalizationViolation::UnitEnds]),
            });
        }
        Self::new(side, phi, psi, alpha)
    }

    pub fn side(&self) -> Side {
        self.side
    }

    /// `C`.
    pub fn big(&self) -> &Arc<FiniteCategory> {
        self.phi.source()
    }

    /// `𝒟`.
    pub fn small(&self) -> &Arc<FiniteCategory> {
        self.phi.target()
    }

    pub fn phi(&self) -> &Functor {
        &self.phi
    }

    pub fn psi(&self) -> &Functor {
        &self.psi
    }

    pub fn alpha(&self) -> &NaturalTransformation {
        &self.alpha
    }

    /// `ξ = ψφ`.
    pub fn xi(&self) -> Functor {
        Functor::compose(&self.psi, &self.phi).expect("ψ and φ compose")
    }

    pub fn validate(&self) -> Report<LocalizationViolation> {
        let mut report = Report::default();
        let (c, d) = (self.big(), self.small());
        if self.psi.source() != d || self.psi.target() != c {
            report.push(LocalizationViolation::Shape);
            return report;
        }
        let xi = self.xi();
        let id = Functor::identity(c.clone());
        let (from, to) = match self.side {
            Side::Local => (&id, &xi),
            Side::Colocal => (&xi, &id),
        };
        if self.alpha.source() != from || self.alpha.target() != to {
            report.push(LocalizationViolation::UnitEnds);
            return report;
        }
        for y in 0..d.object_count() {
            if self.phi.object(self.psi.object(y)) != y {
                report.push(LocalizationViolation::SectionObject { object: y });
            }
        }
        for g in 0..d.morphism_count() {
            if self.phi.morphism(self.psi.morphism(g)) != g {
                report.push(LocalizationViolation::SectionMorphism { morphism: g });
            }
        }
        for x in 0..c.object_count() {
            if !d.is_identity(self.phi.morphism(self.alpha.component(x))) {
                report.push(LocalizationViolation::PhiOfAlpha { object: x });
            }
        }
        for y in 0..d.object_count() {
            if !c.is_identity(self.alpha.component(self.psi.object(y))) {
                report.push(LocalizationViolation::AlphaAtPsi { object: y });
            }
        }
        report
    }

    /// Per morphism of `C`: whether `φ(f)` is invertible.
    pub fn inverted(&self) -> Vec<bool> {
        let d = self.small();
        (0..self.big().morphism_count())
            .map(|f| d.is_isomorphism(self.phi.morphism(f)))
            .collect()
    }

    pub fn inverted_morphisms(&self) -> Vec<MorphismId> {
        self.inverted()
            .into_iter()
            .enumerate()
            .filter_map(|(f, b)| b.then_some(f))
            .collect()
    }

    /// The same data on `C^op` and `𝒟^op`, with the side swapped.
    pub fn mirror(&self) -> Reflection {
        let c_op = Arc::new(self.big().opposite());
        let d_op = Arc::new(self.small().opposite());
        Reflection {
            side: match self.side {
                Side::Local => Side::Colocal,
                Side::Colocal => Side::Local,
            },
            phi: self.phi.opposite(c_op.clone(), d_op.clone()),
            psi: self.psi.opposite(d_op, c_op.clone()),
            alpha: self.alpha.opposite(c_op.clone(), c_op),
        }
    }

    /// `α * α = α`.
    pub fn is_idempotent_unit(&self) -> bool {
        NaturalTransformation::horizontal_compose(&self.alpha, &self.alpha)
            .map(|aa| aa.components() == self.alpha.components())
            .unwrap_or(false)
    }

    fn id_c(&self) -> NaturalTransformation {
        NaturalTransformation::identity(&Functor::identity(self.big().clone()))
    }

    /// The 2-morphism `(1, α): 1 ⇒ α` (dually `(α, 1)`) behind `κ`.
    fn canonical_two(&self) -> TwoMorphism {
        let one = self.id_c();
        match self.side {
            Side::Local => TwoMorphism::new(one.clone(), self.alpha.clone(), one, self.alpha.clone()),
            Side::Colocal => TwoMorphism::new(self.alpha.clone(), one.clone(), one, self.alpha.clone()),
        }
        .expect("canonical 2-morphism")
    }

    /// `(α, 1_ξ): 1_ξ ⇒ α` (dually `(1_ξ, α)`) behind `Φ`.
    fn inverse_two(&self) -> TwoMorphism {
        let one_xi = NaturalTransformation::identity(&self.xi());
        match self.side {
            Side::Local => TwoMorphism::new(self.alpha.clone(), one_xi.clone(), one_xi, self.alpha.clone()),
            Side::Colocal => TwoMorphism::new(one_xi.clone(), self.alpha.clone(), one_xi, self.alpha.clone()),
        }
        .expect("inverse 2-morphism")
    }
}

/// Localization: `α: 1_C ⇒ ψφ` is the unit.
pub type Localization = Reflection;
/// Colocalization: `α: ψφ ⇒ 1_C` is the counit.
pub type Colocalization = Reflection;

pub fn validate_localization(l: &Reflection) -> Report<LocalizationViolation> {
    l.validate()
}

/// First `f` with `φ(f)` invertible whose action `D(1_X, f)` (dually
/// `D(f, 1_Y)`) is not.
pub fn first_nonlocal(d: &NaturalSystem, l: &Reflection) -> Result<Option<MorphismId>, LocalizationError> {
    if d.base() != l.big() {
        return Err(LocalizationError::WrongCategory);
    }
    let inverted = l.inverted();
    Ok(match l.side {
        Side::Local => d.first_nonlocal(&inverted)?,
        Side::Colocal => d.first_noncolocal(&inverted)?,
    })
}

pub fn is_local(d: &NaturalSystem, l: &Reflection) -> Result<bool, LocalizationError> {
    Ok(first_nonlocal(d, l)?.is_none())
}

/// The canonical map `κ = 1_D * F(1, α): D ⇒ D F(α)` (dually `F(α, 1)`).
pub fn canonical_map(d: &NaturalSystem, l: &Reflection) -> Result<NatSysMorphism, LocalizationError> {
    Ok(act_by_two_morphism(d, &l.canonical_two(), d.factorization().clone())?)
}

/// Conditions (1) and (3) of the characterization of local systems,
/// evaluated independently.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterizationVerdict {
    pub side: Side,
    /// Condition (1): every action over an inverted morphism is invertible.
    pub local: bool,
    /// Condition (3): `κ` is a natural isomorphism.
    pub canonical_iso: bool,
    pub nonlocal_witness: Option<MorphismId>,
    /// A morphism `σ` of `C` where `κ_σ` is not invertible.
    pub canonical_witness: Option<MorphismId>,
}

impl CharacterizationVerdict {
    pub fn agree(&self) -> bool {
        self.local == self.canonical_iso
    }
}

pub fn local_characterization(d: &NaturalSystem, l: &Reflection) -> Result<CharacterizationVerdict, LocalizationError> {
    let nonlocal_witness = first_nonlocal(d, l)?;
    let kappa = canonical_map(d, l)?;
    let canonical_witness = kappa.components().iter().position(|t| !t.is_iso());
    Ok(CharacterizationVerdict {
        side: l.side,
        local: nonlocal_witness.is_none(),
        canonical_iso: canonical_witness.is_none(),
        nonlocal_witness,
        canonical_witness,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeVerdict {
    pub degree: usize,
    /// `H^n(C, D)`.
    pub big: GroupInvariants,
    /// `H^n(𝒟, D F(ψ))`.
    pub small: GroupInvariants,
}

/// Successful verification; every certificate held in every listed degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoremReport {
    pub side: Side,
    pub max_degree: usize,
    pub degrees: Vec<DegreeVerdict>,
    /// The homotopies chained together in certificate (c).
    pub homotopy_route: String,
}

fn cert(certificate: Certificate, degree: usize, detail: impl Into<String>) -> LocalizationError {
    LocalizationError::Certificate {
        certificate,
        degree,
        detail: detail.into(),
    }
}

fn map_difference(
    certificate: Certificate,
    what: &str,
    a: &CochainMap,
    b: &CochainMap,
) -> Result<(), LocalizationError> {
    match a.first_difference(b) {
        None => Ok(()),
        Some((n, t, s)) => Err(cert(
            certificate,
            n,
            format!("{what}: differs at target sequence {t}, source sequence {s}"),
        )),
    }
}

pub fn verify_localization_theorem(
    d: &Arc<NaturalSystem>,
    l: &Reflection,
    max_degree: usize,
) -> Result<TheoremReport, LocalizationError> {
    verify_theorem(d, l, max_degree)
}

pub fn verify_colocalization_theorem(
    d: &Arc<NaturalSystem>,
    l: &Reflection,
    max_degree: usize,
) -> Result<TheoremReport, LocalizationError> {
    verify_theorem(d, l, max_degree)
}

/// Runs certificates (a), (b) and (c) for the side recorded in `l`.
pub fn verify_theorem(
    d: &Arc<NaturalSystem>,
    l: &Reflection,
    max_degree: usize,
) -> Result<TheoremReport, LocalizationError> {
    let report = l.validate();
    if !report.is_ok() {
        return Err(LocalizationError::Invalid { side: l.side, report });
    }
    if let Some(f) = first_nonlocal(d, l)? {
        return Err(LocalizationError::NotLocal {
            side: l.side,
            morphism: f,
            name: l.big().morphism_name(f).to_string(),
        });
    }
    let c = l.big().clone();
    let fc = d.factorization().clone();
    let fd = Arc::new(FactorizationCategory::build(l.small().clone()));
    let one_psi = NaturalTransformation::identity(&l.psi);
    let one_phi = NaturalTransformation::identity(&l.phi);

    // (a)
    let d_psi = Arc::new(d.pullback_along_nat(fd.clone(), &one_psi)?);
    let k_big = Arc::new(CochainComplex::build(d.clone(), max_degree)?);
    let k_small = Arc::new(CochainComplex::build(d_psi.clone(), max_degree)?);
    let mut degrees = Vec::with_capacity(max_degree);
    for n in 0..max_degree {
        let big = k_big.cohomology(n)?;
        let small = k_small.cohomology(n)?;
        if big != small {
            return Err(cert(
                Certificate::Invariants,
                n,
                format!("H^{n}(C, D) = {} but H^{n}(𝒟, DF(ψ)) = {}", big.human(), small.human()),
            ));
        }
        degrees.push(DegreeVerdict { degree: n, big, small });
    }

    // (b): pass to D' = D F(α) along κ, then invert F*(1_ψ, 1) by Φ.
    if !l.is_idempotent_unit() {
        return Err(cert(Certificate::InverseOnCohomology, 0, "α * α ≠ α"));
    }
    let d_alpha = Arc::new(d.pullback_along_nat(fc.clone(), &l.alpha)?);
    if d_alpha.pullback_along_nat(fd.clone(), &one_psi)? != *d_psi {
        return Err(cert(Certificate::InverseOnCohomology, 0, "D F(α) F(ψ) ≠ D F(ψ)"));
    }
    let k_alpha = Arc::new(CochainComplex::build(d_alpha.clone(), max_degree)?);
    let id_c = Functor::identity(c.clone());
    let kappa = canonical_map(d, l)?;
    let kappa_star = induced_map_nat(&id_c, &kappa, k_big.clone(), k_alpha.clone())?;
    let psi_m = NatSysMorphism::tautological(d.clone(), fd.clone(), &one_psi)?;
    let psi_star = induced_map_nat(&l.psi, &psi_m, k_big.clone(), k_small.clone())?;
    let psi_alpha_m = NatSysMorphism::tautological(d_alpha.clone(), fd.clone(), &one_psi)?;
    let psi_alpha_star = induced_map_nat(&l.psi, &psi_alpha_m, k_alpha.clone(), k_small.clone())?;
    let inverse_act = act_by_two_morphism(d, &l.inverse_two(), fc.clone())?;
    let phi_m = NatSysMorphism::new(
        one_phi,
        d_psi.clone(),
        d_alpha.clone(),
        inverse_act.components().to_vec(),
    )?;
    let phi_star = induced_map_nat(&l.phi, &phi_m, k_small.clone(), k_alpha.clone())?;

    map_difference(
        Certificate::InverseOnCohomology,
        "F*(1_ψ, 1) ≠ F*(1_ψ, 1) κ",
        &psi_star,
        &psi_alpha_star.after(&kappa_star)?,
    )?;
    let small_round = psi_alpha_star.after(&phi_star)?;
    let big_round = phi_star.after(&psi_alpha_star)?;
    for n in 0..max_degree {
        if !kappa_star.on_cohomology(n)?.is_iso() {
            return Err(cert(
                Certificate::InverseOnCohomology,
                n,
                "κ is not invertible on cohomology",
            ));
        }
        if !small_round.on_cohomology(n)?.is_identity() {
            return Err(cert(
                Certificate::InverseOnCohomology,
                n,
                "F*(1_ψ, 1) Φ ≠ 1 on cohomology",
            ));
        }
        if !big_round.on_cohomology(n)?.is_identity() {
            return Err(cert(
                Certificate::InverseOnCohomology,
                n,
                "Φ F*(1_ψ, 1) ≠ 1 on cohomology",
            ));
        }
    }

    // (c): first composite is the identity 1-morphism and the identity map.
    let first = phi_m.then(&psi_alpha_m)?;
    if !first.equals(&NatSysMorphism::identity(d_psi.clone())) {
        return Err(cert(Certificate::Homotopy, 0, "(1_ψ, 1)(1_φ, Φ) ≠ (1_𝒟, 1) in Nat_F"));
    }
    map_difference(
        Certificate::Homotopy,
        "F*(1_ψ, 1) Φ ≠ 1",
        &small_round,
        &CochainMap::identity(k_small.clone()),
    )?;

    // Second composite: the bottom arrow of the lemma diagram.
    let one_xi = NaturalTransformation::identity(&l.xi());
    let bottom = NatSysMorphism::new(
        one_xi,
        d_alpha.clone(),
        d_alpha.clone(),
        inverse_act.components().to_vec(),
    )?;
    if !psi_alpha_m.then(&phi_m)?.equals(&bottom) {
        return Err(cert(
            Certificate::Homotopy,
            0,
            "(1_φ, Φ)(1_ψ, 1) ≠ (1_ξ, 1_D * F(α, 1_ξ)) in Nat_F",
        ));
    }
    let top = NatSysMorphism::identity(d_alpha.clone());
    let middle = NatSysMorphism::new(
        l.alpha.clone(),
        d_alpha.clone(),
        d_alpha.clone(),
        (0..c.morphism_count())
            .map(|f| crate::abelian::GroupHom::identity(d_alpha.value(f)))
            .collect(),
    )?;
    let one = l.id_c();
    let (upper, lower, route) = match l.side {
        Side::Local => (
            TwoMorphism::new(one.clone(), l.alpha.clone(), one, l.alpha.clone())?,
            l.inverse_two(),
            "H = h_(1,α) − h_(α,1_ξ): dH + Hd = (−1 + F*(α,1)) − (−B + F*(α,1)) = B − 1",
        ),
        Side::Colocal => (
            TwoMorphism::new(l.alpha.clone(), one.clone(), one, l.alpha.clone())?,
            l.inverse_two(),
            "H = h_(α,1) − h_(1_ξ,α): dH + Hd = (−1 + F*(α,1)) − (−B + F*(α,1)) = B − 1",
        ),
    };
    let upper = NatFTwoMorphism::new(upper, top, middle.clone())?;
    let lower = NatFTwoMorphism::new(lower, bottom, middle)?;
    let h_upper = homotopy_h(&upper, k_alpha.clone(), k_alpha.clone())?;
    let h_lower = homotopy_h(&lower, k_alpha.clone(), k_alpha.clone())?;
    let h = Homotopy::combination(&[(1, &h_upper), (-1, &h_lower)])?;
    let identity = CochainMap::identity(k_alpha.clone());
    for n in 0..max_degree {
        let expected = BlockMap::combination(&[(1, big_round.component(n)), (-1, identity.component(n))]);
        let diff = BlockMap::combination(&[(1, &h.boundary(n)), (-1, &expected)]);
        if let Some((t, s)) = diff.first_nonzero(k_alpha.group(n)) {
            return Err(cert(
                Certificate::Homotopy,
                n,
                format!("dH + Hd ≠ B − 1 at target sequence {t}, source sequence {s}"),
            ));
        }
    }

    Ok(TheoremReport {
        side: l.side,
        max_degree,
        degrees,
        homotopy_route: route.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::PresentedGroup;
    use std::collections::HashMap;

    fn arrow() -> Arc<FiniteCategory> {
        Arc::new(FiniteCategory::arrow())
    }

    /// `C = {x → y}`, `𝒟 = {y}` (terminal), `α_x = f`.
    pub(crate) fn arrow_localization() -> Reflection {
        let c = arrow();
        let t = Arc::new(FiniteCategory::terminal());
        let phi = Functor::constant(c.clone(), t.clone(), 0);
        let psi = Functor::constant(t, c.clone(), 1);
        let xi = Functor::compose(&psi, &phi).unwrap();
        let alpha = NaturalTransformation::new(Functor::identity(c), xi, vec![2, 1]).unwrap();
        Reflection::new(Side::Local, phi, psi, alpha).unwrap()
    }

    /// `𝒟 = {x}`, counit `α_y = f`.
    fn arrow_colocalization() -> Reflection {
        let c = arrow();
        let t = Arc::new(FiniteCategory::terminal());
        let phi = Functor::constant(c.clone(), t.clone(), 0);
        let psi = Functor::constant(t, c.clone(), 0);
        let xi = Functor::compose(&psi, &phi).unwrap();
        let alpha = NaturalTransformation::new(xi, Functor::identity(c), vec![0, 2]).unwrap();
        Reflection::new(Side::Colocal, phi, psi, alpha).unwrap()
    }

    fn system(c: &Arc<FiniteCategory>, g: PresentedGroup) -> Arc<NaturalSystem> {
        Arc::new(NaturalSystem::constant(
            Arc::new(FactorizationCategory::build(c.clone())),
            &g,
        ))
    }

    /// `D(1_x) = Z`, `D(1_y) = Z`, `D(f) = 0`.
    fn zero_on_f() -> Arc<NaturalSystem> {
        let fc = Arc::new(FactorizationCategory::build(arrow()));
        let mut left = HashMap::new();
        let mut right = HashMap::new();
        right.insert((0, 2), IntMatrix::zeros(0, 1));
        left.insert((1, 2), IntMatrix::zeros(0, 1));
        let values = vec![
            PresentedGroup::free(1),
            PresentedGroup::free(1),
            PresentedGroup::trivial(),
        ];
        Arc::new(NaturalSystem::from_generators(fc, values, &left, &right).unwrap())
    }

    use crate::abelian::IntMatrix;

    #[test]
    fn arrow_examples_validate() {
        assert!(arrow_localization().validate().is_ok());
        assert!(arrow_colocalization().validate().is_ok());
        assert_eq!(arrow_localization().inverted_morphisms(), vec![0, 1, 2]);
        assert!(arrow_localization().is_idempotent_unit());
        let c = arrow();
        for side in [Side::Local, Side::Colocal] {
            let id = Reflection::identity(side, c.clone());
            assert!(id.validate().is_ok());
            assert_eq!(id.inverted_morphisms(), vec![0, 1]);
        }
    }

    #[test]
    fn wrong_unit_is_reported() {
        let l = arrow_localization();
        let c = l.big().clone();
        let bad = NaturalTransformation::new(Functor::identity(c.clone()), Functor::identity(c), vec![0, 1]);
        assert!(bad.is_ok());
        let r = Reflection::new(Side::Local, l.phi().clone(), l.psi().clone(), bad.unwrap());
        assert!(matches!(r, Err(LocalizationError::Invalid { .. })));
    }

    #[test]
    fn characterization_on_arrow() {
        let l = arrow_localization();
        let v = local_characterization(&system(l.big(), PresentedGroup::free(1)), &l).unwrap();
        assert!(v.local && v.canonical_iso);
        let v = local_characterization(&zero_on_f(), &l).unwrap();
        assert!(!v.local && !v.canonical_iso);
        assert_eq!(v.nonlocal_witness, Some(2));
    }

    #[test]
    fn arrow_localization_theorem() {
        let l = arrow_localization();
        let r = verify_localization_theorem(&system(l.big(), PresentedGroup::free(1)), &l, 3).unwrap();
        let expected = [
            GroupInvariants::free(1),
            GroupInvariants::trivial(),
            GroupInvariants::trivial(),
        ];
        for (v, e) in r.degrees.iter().zip(&expected) {
            assert_eq!(&v.big, e);
            assert_eq!(&v.small, e);
        }
        let err = verify_localization_theorem(&zero_on_f(), &l, 3).unwrap_err();
        assert!(matches!(err, LocalizationError::NotLocal { morphism: 2, .. }));
    }

    #[test]
    fn arrow_colocalization_theorem() {
        let l = arrow_colocalization();
        for g in [PresentedGroup::free(1), PresentedGroup::cyclic(4)] {
            verify_colocalization_theorem(&system(l.big(), g), &l, 3).unwrap();
        }
    }

    #[test]
    fn local_non_constant_system() {
        // Z/4 everywhere, D(1_x, f) = 1, D(f, 1_y) = 3: local since D(1_x, f) is invertible.
        let fc = Arc::new(FactorizationCategory::build(arrow()));
        let mut left = HashMap::new();
        let mut right = HashMap::new();
        right.insert((0, 2), IntMatrix::from_rows(&[[1]]));
        left.insert((1, 2), IntMatrix::from_rows(&[[3]]));
        let d =
            Arc::new(NaturalSystem::from_generators(fc, vec![PresentedGroup::cyclic(4); 3], &left, &right).unwrap());
        verify_localization_theorem(&d, &arrow_localization(), 3).unwrap();
    }

    #[test]
    fn mirror_swaps_sides() {
        let l = arrow_localization();
        let m = l.mirror();
        assert_eq!(m.side(), Side::Colocal);
        assert!(m.validate().is_ok());
        assert_eq!(m.mirror(), l);
    }

    #[test]
    fn idempotent_form() {
        let l = arrow_localization();
        let r = Reflection::from_idempotent(Side::Local, &l.xi(), l.alpha().clone()).unwrap();
        assert_eq!(r.small().object_count(), 1);
        assert_eq!(r.inverted_morphisms(), vec![0, 1, 2]);
    }
}
