//! Engines for deforming the first factor of a twisted tensor product.
//!
//! [`StarData`] turns an action `B ⊗ A → A` and a map `ρ: A → A ⊗ B` into a
//! new product `a * a' = a₍₀₎(a₍₁₎·a')` on `A`. [`InvarianceData`] takes a
//! second algebra structure `A'` on the space of `A` together with
//! `ρ, λ: A → A ⊗ B` and produces a twisting map
//!
//! ```text
//! R'(b ⊗ a) = (a₍₀₎_R)₍[0]₎ ⊗ (a₍₀₎_R)₍[1]₎ b_R a₍₁₎
//! ```
//!
//! together with the algebra isomorphism `A' ⊗_{R'} B → A ⊗_R B`,
//! `a ⊗ b ↦ a₍₀₎ ⊗ a₍₁₎ b`.
//!
//! Each Sweedler expression is written exactly once, as a composite of
//! structure maps, by the `Wiring` helper below.

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::linmap::{chain, tensor_all, LinMap};
use crate::report::Report;
use crate::twisting::{CertifiedTwisting, TwistingData};

pub const STAR_RHO_UNIT: &str = "ρ(1) = 1 ⊗ 1";
pub const STAR_ACTION_UNIT: &str = "1·a = a";
pub const STAR_RIGHT_UNIT: &str = "a₍₀₎(a₍₁₎·1) = a";
pub const STAR_ACTION_COMPAT: &str = "b·(a*a') = a₍₀₎_R(b_R a₍₁₎·a')";
pub const STAR_RHO_MULT: &str = "ρ(a*a') = a₍₀₎a'₍₀₎_R ⊗ a₍₁₎_R a'₍₁₎";

pub const INV_RHO_UNIT: &str = "ρ(1) = 1 ⊗ 1";
pub const INV_RHO_MULT: &str = "ρ(a*a') = ρ(a)ρ(a') in A ⊗_R B";
pub const INV_LAMBDA_UNIT: &str = "λ(1) = 1 ⊗ 1";
pub const INV_LAMBDA_MULT: &str = "λ(aa') = a₍[0]₎*(a'_R)₍[0]₎ ⊗ (a'_R)₍[1]₎(a₍[1]₎)_R";
pub const INV_RHO_LAMBDA: &str = "a₍₀₎₍[0]₎ ⊗ a₍₀₎₍[1]₎a₍₁₎ = a ⊗ 1";
pub const INV_LAMBDA_RHO: &str = "a₍[0]₎₍₀₎ ⊗ a₍[0]₎₍₁₎a₍[1]₎ = a ⊗ 1";

/// Composite builder over the twisting data `(A, B, R)`: short names for the
/// identities, multiplications and units of both factors.
struct Wiring<'a> {
    t: &'a TwistingData,
}

impl<'a> Wiring<'a> {
    fn id_a(&self) -> LinMap {
        self.t.a().id()
    }

    fn id_b(&self) -> LinMap {
        self.t.b().id()
    }

    fn mu_a(&self) -> &LinMap {
        self.t.a().mult()
    }

    fn mu_b(&self) -> &LinMap {
        self.t.b().mult()
    }

    fn eta_a(&self) -> &LinMap {
        self.t.a().unit()
    }

    fn eta_b(&self) -> &LinMap {
        self.t.b().unit()
    }

    fn r(&self) -> &LinMap {
        self.t.r()
    }

    fn t(&self, maps: &[&LinMap]) -> LinMap {
        tensor_all(maps)
    }

    fn chain(&self, maps: &[LinMap]) -> LinMap {
        chain(maps)
    }

    /// `a ⊗ 1`, i.e. `id_A ⊗ η_B`.
    fn a_tensor_one(&self) -> LinMap {
        self.t(&[&self.id_a(), self.eta_b()])
    }

    /// Multiplication of `A ⊗_R B`.
    fn twisted_mult(&self) -> LinMap {
        self.t.product_mult()
    }
}

/// Input of the star-product construction.
#[derive(Clone, Debug)]
pub struct StarData {
    twisting: CertifiedTwisting,
    action: LinMap,
    rho: LinMap,
}

impl StarData {
    /// `action: B ⊗ A → A` (`b ⊗ a ↦ b·a`), `rho: A → A ⊗ B`.
    pub fn new(twisting: CertifiedTwisting, action: LinMap, rho: LinMap) -> Result<Self> {
        let (na, nb) = (twisting.a().dim(), twisting.b().dim());
        if action.dom_dim() != na * nb || action.cod_dim() != na {
            return Err(Error::Dimension("action must be B ⊗ A → A".into()));
        }
        if rho.dom_dim() != na || rho.cod_dim() != na * nb {
            return Err(Error::Dimension("ρ must be A → A ⊗ B".into()));
        }
        let field = twisting.a().field();
        if action.field() != field || rho.field() != field {
            return Err(Error::FieldMismatch { left: field, right: action.field() });
        }
        let action = action.reshape(vec![nb, na], vec![na])?;
        let rho = rho.reshape(vec![na], vec![na, nb])?;
        Ok(StarData { twisting, action, rho })
    }

    pub fn twisting(&self) -> &CertifiedTwisting {
        &self.twisting
    }

    pub fn action(&self) -> &LinMap {
        &self.action
    }

    pub fn rho(&self) -> &LinMap {
        &self.rho
    }

    fn wiring(&self) -> Wiring<'_> {
        Wiring { t: self.twisting.data() }
    }

    /// `a * a' = a₍₀₎(a₍₁₎·a')` as a map `A ⊗ A → A`.
    pub fn star_mult(&self) -> LinMap {
        let w = self.wiring();
        w.chain(&[
            w.t(&[&self.rho, &w.id_a()]),
            w.t(&[&w.id_a(), &self.action]),
            w.mu_a().clone(),
        ])
    }
}

/// The three hypotheses of the star-product construction.
pub fn check_star_hypotheses(s: &StarData) -> Report {
    let w = s.wiring();
    let mut rep = Report::new("star-product hypotheses");
    let star = s.star_mult();
    let (id_a, id_b) = (w.id_a(), w.id_b());

    rep.check_maps(STAR_RHO_UNIT, &w.chain(&[w.eta_a().clone(), s.rho.clone()]), &w.t(&[w.eta_a(), w.eta_b()]));
    rep.check_maps(STAR_ACTION_UNIT, &w.chain(&[w.t(&[w.eta_b(), &id_a]), s.action.clone()]), &id_a);
    rep.check_maps(STAR_RIGHT_UNIT, &w.chain(&[w.t(&[&id_a, w.eta_a()]), star.clone()]), &id_a);

    // B ⊗ A ⊗ A → A
    let lhs = w.chain(&[w.t(&[&id_b, &star]), s.action.clone()]);
    let rhs = w.chain(&[
        w.t(&[&id_b, &s.rho, &id_a]),
        w.t(&[w.r(), &id_b, &id_a]),
        w.t(&[&id_a, w.mu_b(), &id_a]),
        w.t(&[&id_a, &s.action]),
        w.mu_a().clone(),
    ]);
    rep.check_maps(STAR_ACTION_COMPAT, &lhs, &rhs);

    // A ⊗ A → A ⊗ B
    let lhs = w.chain(&[star, s.rho.clone()]);
    let rhs = w.chain(&[w.t(&[&s.rho, &s.rho]), w.twisted_mult()]);
    rep.check_maps(STAR_RHO_MULT, &lhs, &rhs);
    rep
}

/// `(A, *, 1)`; refused unless the hypotheses hold, and re-verified
/// associative and unital.
pub fn build_star_algebra(s: &StarData) -> Result<Algebra> {
    let hyp = check_star_hypotheses(s);
    if !hyp.passed() {
        return Err(Error::HypothesesFailed(Box::new(hyp)));
    }
    let alg = Algebra::new(s.star_mult(), s.twisting.a().unit().clone())?;
    let check = alg.certify();
    if !check.passed() {
        return Err(Error::Internal { stage: "star algebra".into(), report: Box::new(check) });
    }
    Ok(alg)
}

/// Input of the invariance-under-twisting construction.
#[derive(Clone, Debug)]
pub struct InvarianceData {
    twisting: CertifiedTwisting,
    aprime: Algebra,
    rho: LinMap,
    lambda: LinMap,
}

impl InvarianceData {
    /// `aprime` must live on the space of `A` with the same unit vector;
    /// `rho, lambda: A → A ⊗ B`.
    pub fn new(twisting: CertifiedTwisting, aprime: Algebra, rho: LinMap, lambda: LinMap) -> Result<Self> {
        let (na, nb) = (twisting.a().dim(), twisting.b().dim());
        if aprime.dim() != na {
            return Err(Error::Dimension(format!("A' has dim {}, A has dim {na}", aprime.dim())));
        }
        if aprime.one() != twisting.a().one() {
            return Err(Error::Input("A' must have the same unit as A".into()));
        }
        for (name, m) in [("ρ", &rho), ("λ", &lambda)] {
            if m.dom_dim() != na || m.cod_dim() != na * nb {
                return Err(Error::Dimension(format!("{name} must be A → A ⊗ B")));
            }
            if m.field() != aprime.field() {
                return Err(Error::FieldMismatch { left: aprime.field(), right: m.field() });
            }
        }
        let rho = rho.reshape(vec![na], vec![na, nb])?;
        let lambda = lambda.reshape(vec![na], vec![na, nb])?;
        Ok(InvarianceData { twisting, aprime, rho, lambda })
    }

    /// `A' = A`, `ρ = λ = (· ⊗ 1)`.
    pub fn trivial(twisting: CertifiedTwisting) -> Self {
        let w = Wiring { t: twisting.data() };
        let one = w.a_tensor_one();
        let a = twisting.a().clone();
        InvarianceData::new(twisting, a, one.clone(), one).expect("trivial data is consistent")
    }

    pub fn twisting(&self) -> &CertifiedTwisting {
        &self.twisting
    }

    pub fn aprime(&self) -> &Algebra {
        &self.aprime
    }

    pub fn rho(&self) -> &LinMap {
        &self.rho
    }

    pub fn lambda(&self) -> &LinMap {
        &self.lambda
    }

    fn wiring(&self) -> Wiring<'_> {
        Wiring { t: self.twisting.data() }
    }

    /// The composite formula for `R'`, evaluated without any check.
    pub fn rprime_formula(&self) -> LinMap {
        let w = self.wiring();
        let (id_a, id_b) = (w.id_a(), w.id_b());
        // b ⊗ a ↦ b ⊗ a₍₀₎ ⊗ a₍₁₎ ↦ a₍₀₎_R ⊗ b_R ⊗ a₍₁₎ ↦ x₍[0]₎ ⊗ x₍[1]₎ ⊗ b_R ⊗ a₍₁₎
        w.chain(&[
            w.t(&[&id_b, &self.rho]),
            w.t(&[w.r(), &id_b]),
            w.t(&[&self.lambda, &id_b, &id_b]),
            w.t(&[&id_a, w.mu_b(), &id_b]),
            w.t(&[&id_a, w.mu_b()]),
        ])
    }

    /// `φ(a ⊗ b) = a₍₀₎ ⊗ a₍₁₎ b`.
    pub fn iso_formula(&self) -> LinMap {
        let w = self.wiring();
        w.chain(&[w.t(&[&self.rho, &w.id_b()]), w.t(&[&w.id_a(), w.mu_b()])])
    }
}

/// The hypotheses on `A'`, `ρ` and `λ`.
pub fn check_invariance_hypotheses(d: &InvarianceData) -> Report {
    let w = d.wiring();
    let mut rep = Report::new("invariance hypotheses");
    let mut ap = d.aprime.certify();
    ap.subject = "algebra A'".into();
    rep.merge(ap);
    let (id_a, id_b) = (w.id_a(), w.id_b());
    let (rho, lambda) = (&d.rho, &d.lambda);
    let unit_pair = w.t(&[w.eta_a(), w.eta_b()]);

    rep.check_maps(INV_RHO_UNIT, &w.chain(&[w.eta_a().clone(), rho.clone()]), &unit_pair);
    rep.check_maps(
        INV_RHO_MULT,
        &w.chain(&[d.aprime.mult().clone(), rho.clone()]),
        &w.chain(&[w.t(&[rho, rho]), w.twisted_mult()]),
    );
    rep.check_maps(INV_LAMBDA_UNIT, &w.chain(&[w.eta_a().clone(), lambda.clone()]), &unit_pair);

    // a ⊗ a' ↦ a₍[0]₎ ⊗ a₍[1]₎ ⊗ a' ↦ a₍[0]₎ ⊗ a'_R ⊗ a₍[1]₎_R
    //        ↦ a₍[0]₎ ⊗ (a'_R)₍[0]₎ ⊗ (a'_R)₍[1]₎ ⊗ a₍[1]₎_R ↦ (* ⊗ μ_B)
    let lhs = w.chain(&[w.mu_a().clone(), lambda.clone()]);
    let rhs = w.chain(&[
        w.t(&[lambda, &id_a]),
        w.t(&[&id_a, w.r()]),
        w.t(&[&id_a, lambda, &id_b]),
        w.t(&[d.aprime.mult(), w.mu_b()]),
    ]);
    rep.check_maps(INV_LAMBDA_MULT, &lhs, &rhs);

    let target = w.a_tensor_one();
    let rho_lambda = w.chain(&[rho.clone(), w.t(&[lambda, &id_b]), w.t(&[&id_a, w.mu_b()])]);
    rep.check_maps(INV_RHO_LAMBDA, &rho_lambda, &target);
    let lambda_rho = w.chain(&[lambda.clone(), w.t(&[rho, &id_b]), w.t(&[&id_a, w.mu_b()])]);
    rep.check_maps(INV_LAMBDA_RHO, &lambda_rho, &target);
    rep
}

/// Builds `R': B ⊗ A' → A' ⊗ B`. Refused when the hypotheses fail; the
/// result is certified as a twisting map, and a failing certificate at that
/// point is reported as an internal-consistency error.
pub fn derive_twisted_map(d: &InvarianceData) -> Result<CertifiedTwisting> {
    let hyp = check_invariance_hypotheses(d);
    if !hyp.passed() {
        return Err(Error::HypothesesFailed(Box::new(hyp)));
    }
    let data = TwistingData::new(d.aprime.clone(), d.twisting.b().clone(), d.rprime_formula())?;
    data.certify().map_err(|e| match e {
        Error::HypothesesFailed(report) => Error::Internal { stage: "derived twisting map".into(), report },
        other => other,
    })
}

/// A verified algebra isomorphism between two twisted products.
#[derive(Clone, Debug)]
pub struct IsoCertificate {
    pub phi: LinMap,
    pub phi_inv: LinMap,
    /// `A' ⊗_{R'} B`.
    pub source: Algebra,
    /// `A ⊗_R B`.
    pub target: Algebra,
    pub multiplicative: bool,
    pub unital: bool,
    pub bijective: bool,
    pub report: Report,
}

impl IsoCertificate {
    pub fn passed(&self) -> bool {
        self.multiplicative && self.unital && self.bijective && self.report.passed()
    }
}

/// Checks `φ: source → target` for bijectivity, unitality and
/// multiplicativity on all basis pairs.
pub fn certify_isomorphism(phi: LinMap, source: Algebra, target: Algebra) -> IsoCertificate {
    let mut report = Report::new("algebra isomorphism");
    let phi_inv = match phi.invert() {
        Ok(inv) => {
            report.pass("bijective");
            Some(inv)
        }
        Err(e) => {
            report.fail("bijective", e.to_string());
            None
        }
    };
    let bijective = phi_inv.is_some();
    let unital = report.check_maps("unital", &source.unit().then(&phi).expect("dims"), target.unit());
    let lhs = source.mult().then(&phi).expect("dims");
    let rhs = phi.tensor(&phi).and_then(|m| m.then(target.mult())).expect("dims");
    let multiplicative = report.check_maps("multiplicative", &lhs, &rhs);
    let phi_inv = phi_inv.unwrap_or_else(|| LinMap::zero(phi.field(), phi.cod_factors().to_vec(), phi.dom_factors().to_vec()).expect("dims"));
    IsoCertificate { phi, phi_inv, source, target, multiplicative, unital, bijective, report }
}

/// `A' ⊗_{R'} B ≅ A ⊗_R B` via `a ⊗ b ↦ a₍₀₎ ⊗ a₍₁₎ b`, given the derived `R'`.
pub fn build_isomorphism(d: &InvarianceData, rprime: &CertifiedTwisting) -> Result<IsoCertificate> {
    if rprime.a() != &d.aprime || rprime.b() != d.twisting.b() {
        return Err(Error::Input("R' does not belong to this invariance data".into()));
    }
    let source = rprime.data().raw_product();
    let target = d.twisting.data().raw_product();
    let cert = certify_isomorphism(d.iso_formula(), source, target);
    if !cert.passed() {
        return Err(Error::Internal { stage: "isomorphism".into(), report: Box::new(cert.report) });
    }
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ComoduleAlgebra;
    use crate::constructions::{group_algebra, smash_twisting, sweedler_h4, FiniteGroup};
    use crate::Field;

    #[test]
    fn trivial_invariance_data() {
        let h = sweedler_h4(Field::Rationals).unwrap();
        let t = smash_twisting(&ComoduleAlgebra::regular(&h)).unwrap().certify().unwrap();
        let d = InvarianceData::trivial(t.clone());
        assert!(check_invariance_hypotheses(&d).passed());
        let rp = derive_twisted_map(&d).unwrap();
        assert_eq!(rp.r(), t.r());
        let iso = build_isomorphism(&d, &rp).unwrap();
        assert!(iso.phi.entries_eq(&LinMap::id(h.field(), 16)));
    }

    #[test]
    fn trivial_star_data() {
        // B Hopf, b·a = ε(b) a, ρ(a) = a ⊗ 1
        let k = group_algebra(&FiniteGroup::cyclic(2).unwrap(), Field::Rationals);
        let h = sweedler_h4(Field::Rationals).unwrap();
        let t = crate::twisting::TwistingData::flip(h.algebra().clone(), k.algebra().clone())
            .unwrap()
            .certify()
            .unwrap();
        let action = k.counit().tensor(&h.id()).unwrap();
        let rho = h.id().tensor(k.unit()).unwrap();
        let s = StarData::new(t, action, rho).unwrap();
        assert!(check_star_hypotheses(&s).passed());
        assert_eq!(build_star_algebra(&s).unwrap(), *h.algebra());
    }

    #[test]
    fn unit_mismatch_rejected() {
        let h = group_algebra(&FiniteGroup::cyclic(2).unwrap(), Field::Rationals);
        let t = crate::twisting::TwistingData::flip(h.algebra().clone(), h.algebra().clone())
            .unwrap()
            .certify()
            .unwrap();
        let f = h.field();
        let g_unit = LinMap::from_vector(f, vec![2], crate::SparseVec::basis(f, 2, 1)).unwrap();
        let bad = Algebra::new(h.mult().clone(), g_unit).unwrap();
        let one = h.id().tensor(h.unit()).unwrap();
        assert!(matches!(InvarianceData::new(t, bad, one.clone(), one), Err(Error::Input(_))));
    }

    #[test]
    fn failing_hypotheses_refuse_construction() {
        let h = group_algebra(&FiniteGroup::cyclic(2).unwrap(), Field::Rationals);
        let t = crate::twisting::TwistingData::flip(h.algebra().clone(), h.algebra().clone())
            .unwrap()
            .certify()
            .unwrap();
        // λ = 0 breaks λ(1) = 1 ⊗ 1
        let one = h.id().tensor(h.unit()).unwrap();
        let zero = LinMap::zero(h.field(), vec![2], vec![2, 2]).unwrap();
        let d = InvarianceData::new(t, h.algebra().clone(), one, zero).unwrap();
        let rep = check_invariance_hypotheses(&d);
        assert!(rep.failure(INV_LAMBDA_UNIT).is_some());
        assert!(matches!(derive_twisted_map(&d), Err(Error::HypothesesFailed(_))));
    }
}
