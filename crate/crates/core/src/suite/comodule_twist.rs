//! Deforming a right `H`-comodule algebra `A` by a convolution invertible
//! `ν: H → End(A)`, written `ν(h)(a) = a·h`. The new product is
//! `a * a' = (a·a'₍₁₎)a'₍₀₎`, and the smash products with `H*` of `A` and of
//! the deformed algebra `A_ν` are isomorphic.

use crate::algebra::{action_to_end, convolution_inverse, end_algebra, end_to_action, Algebra, ComoduleAlgebra};
use crate::constructions::{group_algebra, smash_twisting, FiniteGroup};
use crate::error::{Error, Result};
use crate::invariance::{build_isomorphism, check_invariance_hypotheses, derive_twisted_map, InvarianceData};
use crate::linmap::{chain, tensor_all, LinMap};
use crate::report::Report;
use crate::scalar::{Field, Scalar};

use super::{equality, PipelineRun, StageKind};

pub const NU_UNIT: &str = "a·1 = a";
pub const NU_COUNIT: &str = "1·h = ε(h)1";
pub const NU_ALPHA: &str = "(a·h₂)₍₀₎ ⊗ (a·h₂)₍₁₎h₁ = a₍₀₎·h₁ ⊗ a₍₁₎h₂";
pub const NU_BETA: &str = "(a*a')·h = (a·a'₍₁₎h₂)(a'₍₀₎·h₁)";
pub const NU_GAMMA: &str = "ν⁻¹ satisfies (a·h₂)₍₀₎ ⊗ (a·h₂)₍₁₎h₁ = a₍₀₎·h₁ ⊗ a₍₁₎h₂";
pub const NU_DELTA: &str = "ν⁻¹(h)(aa') = ν⁻¹(a'₍₁₎h₂)(a) * ν⁻¹(h₁)(a'₍₀₎)";

/// A comodule algebra with an operator-valued map `ν`, stored as the action
/// `H ⊗ A → A`, `h ⊗ a ↦ a·h`, together with its convolution inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NuTwist {
    ca: ComoduleAlgebra,
    nu: LinMap,
    nu_inv: LinMap,
}

impl NuTwist {
    /// Fails with [`Error::NotConvolutionInvertible`] when `ν` has no
    /// two-sided convolution inverse.
    pub fn new(ca: ComoduleAlgebra, nu: LinMap) -> Result<Self> {
        let (na, nh) = (ca.algebra().dim(), ca.hopf().dim());
        if nu.dom_dim() != nh * na || nu.cod_dim() != na {
            return Err(Error::Dimension("ν must be given as H ⊗ A → A".into()));
        }
        let nu = nu.reshape(vec![nh, na], vec![na])?;
        let end = end_algebra(ca.algebra().field(), na);
        let nu_end = action_to_end(&nu, nh, na)?;
        let inv_end = convolution_inverse(&nu_end, ca.hopf().coalgebra(), &end)?;
        let nu_inv = end_to_action(&inv_end, nh, na)?;
        Ok(NuTwist { ca, nu, nu_inv })
    }

    /// `a·h = ε(h)a`.
    pub fn trivial(ca: ComoduleAlgebra) -> Self {
        let nu = ca.hopf().counit().tensor(&ca.algebra().id()).expect("dims");
        NuTwist::new(ca, nu).expect("ε ⊗ id is convolution invertible")
    }

    /// `A = H = kC₂` with coaction `Δ`, `ν(1) = id`, `ν(g) = diag(1, c)`.
    /// The deformed product has `g * g = c·1`.
    pub fn c_deformation(field: Field, c: &Scalar) -> Result<Self> {
        if c.field() != field {
            return Err(Error::FieldMismatch { left: field, right: c.field() });
        }
        let h = group_algebra(&FiniteGroup::cyclic(2)?, field);
        let ca = ComoduleAlgebra::regular(&h);
        let one = field.one();
        // column h*2 + a holds ν(h)(a)
        let nu = LinMap::from_triples(
            field,
            vec![2, 2],
            vec![2],
            [(0, 0, one.clone()), (1, 1, one.clone()), (0, 2, one), (1, 3, c.clone())],
        )?;
        NuTwist::new(ca, nu)
    }

    pub fn comodule_algebra(&self) -> &ComoduleAlgebra {
        &self.ca
    }

    pub fn nu(&self) -> &LinMap {
        &self.nu
    }

    pub fn nu_inv(&self) -> &LinMap {
        &self.nu_inv
    }

    fn dims(&self) -> (usize, usize) {
        (self.ca.algebra().dim(), self.ca.hopf().dim())
    }

    /// `A ⊗ H → A`, `a ⊗ h ↦ a·h`.
    pub fn act(&self) -> LinMap {
        let (na, nh) = self.dims();
        LinMap::flip(self.ca.algebra().field(), na, nh).then(&self.nu).expect("dims")
    }

    /// `A ⊗ H → A`, `a ⊗ h ↦ ν⁻¹(h)(a)`.
    pub fn act_inv(&self) -> LinMap {
        let (na, nh) = self.dims();
        LinMap::flip(self.ca.algebra().field(), na, nh).then(&self.nu_inv).expect("dims")
    }

    /// `a * a' = (a·a'₍₁₎)a'₍₀₎`.
    pub fn star_mult(&self) -> LinMap {
        let (na, nh) = self.dims();
        let f = self.ca.algebra().field();
        let id_a = self.ca.algebra().id();
        // a ⊗ a' ↦ a ⊗ a'₀ ⊗ a'₁ ↦ a ⊗ a'₁ ⊗ a'₀
        chain(&[
            id_a.tensor(self.ca.coaction()).expect("dims"),
            LinMap::permutation(f, &[na, na, nh], &[0, 2, 1]),
            tensor_all(&[&self.act(), &id_a]),
            self.ca.algebra().mult().clone(),
        ])
    }

    /// `A_ν = (A, *, 1_A)`, without any check.
    pub fn twisted_algebra(&self) -> Algebra {
        Algebra::new(self.star_mult(), self.ca.algebra().unit().clone()).expect("dims")
    }

    /// `a ↦ Σᵢ a·eᵢ ⊗ eⁱ`, built from `act`.
    fn dual_basis_map(&self, act: &LinMap) -> LinMap {
        let (_, nh) = self.dims();
        let f = self.ca.algebra().field();
        let id_a = self.ca.algebra().id();
        let id_h = LinMap::id(f, nh);
        chain(&[
            id_a.tensor(&LinMap::identity_vector(f, nh)).expect("dims"),
            tensor_all(&[act, &id_h]),
        ])
    }

    /// `ρ(a) = Σᵢ a·eᵢ ⊗ eⁱ`.
    pub fn rho(&self) -> LinMap {
        self.dual_basis_map(&self.act())
    }

    /// `λ(a) = Σᵢ ν⁻¹(eᵢ)(a) ⊗ eⁱ`.
    pub fn lambda(&self) -> LinMap {
        self.dual_basis_map(&self.act_inv())
    }

    /// Conjugates every structure map by `p_a` on `A` and `p_h` on `H`.
    pub fn change_basis(&self, p_a: &LinMap, p_h: &LinMap) -> Result<Self> {
        let ca = self.ca.change_basis(p_a, p_h)?;
        let nu = self.nu.transport(&[p_h, p_a], &[p_a])?;
        NuTwist::new(ca, nu)
    }

    fn relation_alpha(&self, act: &LinMap) -> (LinMap, LinMap) {
        let (na, nh) = self.dims();
        let f = self.ca.algebra().field();
        let h = self.ca.hopf();
        let (id_a, id_h) = (self.ca.algebra().id(), h.id());
        let delta = self.ca.coaction();
        // a ⊗ h ↦ a ⊗ h₂ ⊗ h₁ ↦ (a·h₂) ⊗ h₁ ↦ x₀ ⊗ x₁h₁
        let lhs = chain(&[
            tensor_all(&[&id_a, h.comult()]),
            LinMap::permutation(f, &[na, nh, nh], &[0, 2, 1]),
            tensor_all(&[act, &id_h]),
            tensor_all(&[delta, &id_h]),
            tensor_all(&[&id_a, h.mult()]),
        ]);
        // a ⊗ h ↦ a₀ ⊗ a₁ ⊗ h₁ ⊗ h₂ ↦ a₀ ⊗ h₁ ⊗ a₁ ⊗ h₂
        let rhs = chain(&[
            tensor_all(&[delta, h.comult()]),
            LinMap::permutation(f, &[na, nh, nh, nh], &[0, 2, 1, 3]),
            tensor_all(&[act, h.mult()]),
        ]);
        (lhs, rhs)
    }

    /// `a ⊗ a' ⊗ h ↦ (a·a'₍₁₎h₂) ⊗ (a'₍₀₎·h₁)`, before the final product.
    fn relation_beta_factors(&self, act: &LinMap) -> LinMap {
        let (na, nh) = self.dims();
        let f = self.ca.algebra().field();
        let h = self.ca.hopf();
        let id_a = self.ca.algebra().id();
        // a ⊗ a'₀ ⊗ a'₁ ⊗ h₁ ⊗ h₂ ↦ a ⊗ a'₁ ⊗ h₂ ⊗ a'₀ ⊗ h₁
        chain(&[
            tensor_all(&[&id_a, self.ca.coaction(), h.comult()]),
            LinMap::permutation(f, &[na, na, nh, nh, nh], &[0, 2, 4, 1, 3]),
            tensor_all(&[&id_a, h.mult(), &id_a, &h.id()]),
            tensor_all(&[act, act]),
        ])
    }
}

/// `ν(1) = id`, `ν(h)(1) = ε(h)1`, and the two compatibility relations.
pub fn check_nu_conditions(n: &NuTwist) -> Report {
    let mut rep = Report::new("conditions on ν");
    let a = n.ca.algebra();
    let h = n.ca.hopf();
    let act = n.act();
    rep.check_maps(NU_UNIT, &tensor_all(&[&a.id(), h.unit()]).then(&act).expect("dims"), &a.id());
    rep.check_maps(
        NU_COUNIT,
        &tensor_all(&[a.unit(), &h.id()]).then(&act).expect("dims"),
        &h.counit().then(a.unit()).expect("dims"),
    );
    let (lhs, rhs) = n.relation_alpha(&act);
    rep.check_maps(NU_ALPHA, &lhs, &rhs);
    let lhs = tensor_all(&[&n.star_mult(), &h.id()]).then(&act).expect("dims");
    let rhs = n.relation_beta_factors(&act).then(a.mult()).expect("dims");
    rep.check_maps(NU_BETA, &lhs, &rhs);
    rep
}

/// The relations the convolution inverse inherits: the first compatibility
/// relation, and its product rule with the two products exchanged.
pub fn check_nu_inverse_relations(n: &NuTwist) -> Report {
    let mut rep = Report::new("relations for ν⁻¹");
    let act_inv = n.act_inv();
    let (lhs, rhs) = n.relation_alpha(&act_inv);
    rep.check_maps(NU_GAMMA, &lhs, &rhs);
    let h = n.ca.hopf();
    let lhs = tensor_all(&[n.ca.algebra().mult(), &h.id()]).then(&act_inv).expect("dims");
    let rhs = n.relation_beta_factors(&act_inv).then(&n.star_mult()).expect("dims");
    rep.check_maps(NU_DELTA, &lhs, &rhs);
    rep
}

pub const STAGE_INPUT: &str = "comodule algebra";
pub const STAGE_CONDITIONS: &str = "conditions on ν";
pub const STAGE_INVERSE: &str = "relations for ν⁻¹";
pub const STAGE_DEFORMED: &str = "A_ν is a comodule algebra";
pub const STAGE_SMASH: &str = "smash twisting";
pub const STAGE_HYPOTHESES: &str = "invariance hypotheses";
pub const STAGE_RPRIME: &str = "derived twisting map";
pub const STAGE_RPRIME_EQ: &str = "R' = R";
pub const STAGE_ISO: &str = "isomorphism";
pub const STAGE_ISO_FORM: &str = "isomorphism is a ⊗ φ ↦ Σᵢ a·eᵢ ⊗ eⁱφ";

/// `A_ν # H* ≅ A # H*`, staged.
pub fn comodule_twist_pipeline(n: &NuTwist, instance: &str) -> PipelineRun {
    use StageKind::*;
    let mut run = PipelineRun::new("comodule-twist", instance);
    let ca = &n.ca;
    let mut input = ca.hopf().certify();
    input.merge(ca.algebra().certify());
    input.merge(ca.check());
    if !run.record(STAGE_INPUT, Hypothesis, input) {
        return run;
    }
    if !run.record(STAGE_CONDITIONS, Hypothesis, check_nu_conditions(n)) {
        return run;
    }
    if !run.record(STAGE_INVERSE, Consequence, check_nu_inverse_relations(n)) {
        return run;
    }
    let a_nu = n.twisted_algebra();
    let mut deformed = a_nu.certify();
    match ca.with_algebra(a_nu.clone()) {
        Ok(ca_nu) => deformed.merge(ca_nu.check()),
        Err(e) => deformed.fail("comodule algebra", e.to_string()),
    }
    run.deformed = Some(a_nu.clone());
    if !run.record(STAGE_DEFORMED, Consequence, deformed) {
        return run;
    }
    let Some(t) = run.record_result(STAGE_SMASH, Consequence, smash_twisting(ca).and_then(|t| t.certify())) else {
        return run;
    };
    let data = match InvarianceData::new(t.clone(), a_nu, n.rho(), n.lambda()) {
        Ok(d) => d,
        Err(e) => {
            run.record_result::<()>(STAGE_HYPOTHESES, Consequence, Err(e));
            return run;
        }
    };
    if !run.record(STAGE_HYPOTHESES, Consequence, check_invariance_hypotheses(&data)) {
        return run;
    }
    let Some(rprime) = run.record_result(STAGE_RPRIME, Consequence, derive_twisted_map(&data)) else {
        return run;
    };
    run.rprime = Some(rprime.clone());
    if !run.record(STAGE_RPRIME_EQ, Consequence, equality(STAGE_RPRIME_EQ, rprime.r(), t.r())) {
        return run;
    }
    let Some(cert) = run.record_result(STAGE_ISO, Consequence, build_isomorphism(&data, &rprime)) else {
        return run;
    };
    // a ⊗ φ ↦ a ⊗ Σ eᵢ ⊗ eⁱ ⊗ φ ↦ a·eᵢ ⊗ eⁱφ
    let nh = ca.hopf().dim();
    let f = ca.algebra().field();
    let closed = chain(&[
        tensor_all(&[&ca.algebra().id(), &LinMap::identity_vector(f, nh), &LinMap::id(f, nh)]),
        tensor_all(&[&n.act(), t.b().mult()]),
    ]);
    let ok = run.record(STAGE_ISO_FORM, Consequence, equality(STAGE_ISO_FORM, &cert.phi, &closed));
    if ok {
        run.certificate = Some(cert);
    }
    run
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_twist_changes_nothing() {
        let h = crate::constructions::sweedler_h4(Field::Rationals).unwrap();
        let n = NuTwist::trivial(ComoduleAlgebra::regular(&h));
        assert!(check_nu_conditions(&n).passed());
        assert_eq!(&n.twisted_algebra(), h.algebra());
        let run = comodule_twist_pipeline(&n, "H4 trivial");
        assert!(run.passed(), "{}", run.summary());
        assert!(run.certificate.unwrap().phi.entries_eq(&LinMap::id(h.field(), 16)));
    }

    #[test]
    fn c_deformation_squares_to_c() {
        let q = Field::Rationals;
        let n = NuTwist::c_deformation(q, &q.from_i64(-1)).unwrap();
        let a = n.twisted_algebra();
        // g * g = -1
        assert_eq!(a.basis_product(1, 1), &crate::SparseVec::basis(q, 2, 0).scaled(&q.from_i64(-1)));
        let run = comodule_twist_pipeline(&n, "kC2 c=-1");
        assert!(run.passed(), "{}", run.summary());
    }

    #[test]
    fn zero_c_is_not_invertible() {
        let q = Field::Rationals;
        assert!(matches!(NuTwist::c_deformation(q, &q.zero()), Err(Error::NotConvolutionInvertible(_))));
    }

    #[test]
    fn nu_in_place_of_its_inverse_breaks_hypotheses() {
        let q = Field::Rationals;
        let n = NuTwist::c_deformation(q, &q.from_i64(3)).unwrap();
        let t = smash_twisting(&n.ca).unwrap().certify().unwrap();
        let data = InvarianceData::new(t, n.twisted_algebra(), n.rho(), n.rho()).unwrap();
        let rep = check_invariance_hypotheses(&data);
        assert!(rep.failure(crate::invariance::INV_RHO_LAMBDA).is_some());
        assert!(rep.failure(crate::invariance::INV_LAMBDA_RHO).is_some());
    }
}
