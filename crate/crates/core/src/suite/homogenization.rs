//! External homogenization: for a right `H`-comodule algebra `A`, the
//! algebra `A[H]` on `A ⊗ H` with
//! `(a ⊗ h)(a' ⊗ h') = aa'₍₀₎ ⊗ S(a'₍₁₎)h a'₍₂₎h'`, which is isomorphic to the
//! ordinary tensor product `A ⊗ H`.

use crate::algebra::{Algebra, ComoduleAlgebra};
use crate::error::Result;
use crate::invariance::{build_isomorphism, check_invariance_hypotheses, derive_twisted_map, InvarianceData};
use crate::linmap::{chain, tensor_all, LinMap};
use crate::twisting::TwistingData;

use super::{equality, PipelineRun, StageKind};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomogenizationInstance {
    ca: ComoduleAlgebra,
}

impl HomogenizationInstance {
    pub fn new(ca: ComoduleAlgebra) -> Self {
        HomogenizationInstance { ca }
    }

    pub fn comodule_algebra(&self) -> &ComoduleAlgebra {
        &self.ca
    }

    fn dims(&self) -> (usize, usize) {
        (self.ca.algebra().dim(), self.ca.hopf().dim())
    }

    /// `A[H]` evaluated from its defining formula.
    pub fn homogenization(&self) -> Result<Algebra> {
        let (na, nh) = self.dims();
        let f = self.ca.algebra().field();
        let h = self.ca.hopf();
        let (id_a, id_h) = (self.ca.algebra().id(), h.id());
        // a ⊗ h ⊗ a'₀ ⊗ a'₁ ⊗ a'₂ ⊗ h' ↦ a ⊗ a'₀ ⊗ a'₁ ⊗ h ⊗ a'₂ ⊗ h'
        let mult = chain(&[
            tensor_all(&[&id_a, &id_h, &self.ca.coaction_twice(), &id_h]),
            LinMap::permutation(f, &[na, nh, na, nh, nh, nh], &[0, 2, 3, 1, 4, 5]),
            tensor_all(&[self.ca.algebra().mult(), h.antipode(), &id_h, &id_h, &id_h]),
            tensor_all(&[&id_a, h.mult(), &id_h, &id_h]),
            tensor_all(&[&id_a, h.mult(), &id_h]),
            tensor_all(&[&id_a, h.mult()]),
        ]);
        let unit = self.ca.algebra().unit().tensor(h.unit())?;
        Algebra::new(mult, unit)
    }

    /// `R'(h ⊗ a) = a₍₀₎ ⊗ S(a₍₁₎)h a₍₂₎`.
    pub fn twisting_closed_form(&self) -> LinMap {
        let (na, nh) = self.dims();
        let f = self.ca.algebra().field();
        let h = self.ca.hopf();
        let (id_a, id_h) = (self.ca.algebra().id(), h.id());
        // h ⊗ a₀ ⊗ a₁ ⊗ a₂ ↦ a₀ ⊗ a₁ ⊗ h ⊗ a₂
        chain(&[
            tensor_all(&[&id_h, &self.ca.coaction_twice()]),
            LinMap::permutation(f, &[nh, na, nh, nh], &[1, 2, 0, 3]),
            tensor_all(&[&id_a, h.antipode(), &id_h, &id_h]),
            tensor_all(&[&id_a, h.mult(), &id_h]),
            tensor_all(&[&id_a, h.mult()]),
        ])
    }

    /// `ρ` is the coaction and `λ(a) = a₍₀₎ ⊗ S(a₍₁₎)`, over the flip.
    pub fn invariance_data(&self) -> Result<InvarianceData> {
        let a = self.ca.algebra();
        let h = self.ca.hopf();
        let t = TwistingData::flip(a.clone(), h.algebra().clone())?.certify()?;
        let lambda = self.ca.coaction().then(&a.id().tensor(h.antipode())?)?;
        InvarianceData::new(t, a.clone(), self.ca.coaction().clone(), lambda)
    }
}

pub const STAGE_INPUT: &str = "comodule algebra";
pub const STAGE_TWICE: &str = "(δ ⊗ id)δ = (id ⊗ Δ)δ";
pub const STAGE_DIRECT: &str = "A[H] is associative";
pub const STAGE_HYPOTHESES: &str = "invariance hypotheses";
pub const STAGE_RPRIME: &str = "derived twisting map";
pub const STAGE_RPRIME_FORM: &str = "R'(h ⊗ a) = a₍₀₎ ⊗ S(a₍₁₎)h a₍₂₎";
pub const STAGE_PRODUCT: &str = "A ⊗_R' H = A[H]";
pub const STAGE_ISO: &str = "isomorphism";
pub const STAGE_ISO_FORM: &str = "isomorphism is a ⊗ h ↦ a₍₀₎ ⊗ a₍₁₎h";

/// `A[H] ≅ A ⊗ H`, staged.
pub fn homogenization_pipeline(inst: &HomogenizationInstance, instance: &str) -> PipelineRun {
    use StageKind::*;
    let mut run = PipelineRun::new("homogenization", instance);
    let ca = &inst.ca;
    let mut input = ca.hopf().certify();
    input.merge(ca.algebra().certify());
    input.merge(ca.check());
    if !run.record(STAGE_INPUT, Hypothesis, input) {
        return run;
    }
    let twice = equality(STAGE_TWICE, &ca.coaction_twice(), &ca.coaction_then_comult());
    if !run.record(STAGE_TWICE, Consequence, twice) {
        return run;
    }
    let direct = match inst.homogenization() {
        Ok(a) => a,
        Err(e) => {
            run.record_result::<()>(STAGE_DIRECT, Consequence, Err(e));
            return run;
        }
    };
    let mut rep = direct.certify();
    rep.subject = STAGE_DIRECT.into();
    run.deformed = Some(direct.clone());
    if !run.record(STAGE_DIRECT, Consequence, rep) {
        return run;
    }
    let data = match inst.invariance_data() {
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
    let closed = inst.twisting_closed_form();
    if !run.record(STAGE_RPRIME_FORM, Consequence, equality(STAGE_RPRIME_FORM, rprime.r(), &closed)) {
        return run;
    }
    let product = rprime.data().raw_product();
    if !run.record(STAGE_PRODUCT, Consequence, equality(STAGE_PRODUCT, product.mult(), direct.mult())) {
        return run;
    }
    let Some(cert) = run.record_result(STAGE_ISO, Consequence, build_isomorphism(&data, &rprime)) else {
        return run;
    };
    let h = ca.hopf();
    let closed = ca
        .coaction()
        .tensor(&h.id())
        .and_then(|m| m.then(&ca.algebra().id().tensor(h.mult())?))
        .expect("dims");
    if run.record(STAGE_ISO_FORM, Consequence, equality(STAGE_ISO_FORM, &cert.phi, &closed)) {
        run.certificate = Some(cert);
    }
    run
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{group_algebra, sweedler_h4, FiniteGroup};
    use crate::Field;

    #[test]
    fn kc2_homogenization_is_the_tensor_product() {
        let k = group_algebra(&FiniteGroup::cyclic(2).unwrap(), Field::Rationals);
        let inst = HomogenizationInstance::new(ComoduleAlgebra::regular(&k));
        let direct = inst.homogenization().unwrap();
        assert_eq!(direct, k.algebra().tensor_product(k.algebra()).unwrap());
        let run = homogenization_pipeline(&inst, "kC2");
        assert!(run.passed(), "{}", run.summary());
    }

    #[test]
    fn h4_homogenization_is_twisted_but_isomorphic() {
        let h = sweedler_h4(Field::Rationals).unwrap();
        let inst = HomogenizationInstance::new(ComoduleAlgebra::regular(&h));
        let direct = inst.homogenization().unwrap();
        assert_ne!(direct, h.algebra().tensor_product(h.algebra()).unwrap());
        let run = homogenization_pipeline(&inst, "H4");
        assert!(run.passed(), "{}", run.summary());
        assert!(run.violations().is_empty());
    }

    #[test]
    fn trivial_coaction_gives_identity() {
        let h = sweedler_h4(Field::Rationals).unwrap();
        let ca = ComoduleAlgebra::trivial(h.algebra().clone(), h.clone()).unwrap();
        let run = homogenization_pipeline(&HomogenizationInstance::new(ca), "H4 trivial");
        assert!(run.passed(), "{}", run.summary());
        assert!(run.certificate.unwrap().phi.entries_eq(&LinMap::id(h.field(), 16)));
    }
}
