//! Doubles of Hopf algebras with an invertible `r = r¹ ⊗ r² ∈ H ⊗ H`
//! (inverse `u¹ ⊗ u²`, further copies written `ℛ¹ ⊗ ℛ²`). When `r` satisfies
//!
//! ```text
//! Δ(r¹) ⊗ r² = ℛ¹ ⊗ r¹ ⊗ ℛ²r²
//! r¹ ⊗ Δ(r²) = ℛ¹r¹ ⊗ r² ⊗ ℛ²
//! ℛ¹ ⊗ ℛ²₂r¹ ⊗ ℛ²₁r² = ℛ¹ ⊗ r¹ℛ²₁ ⊗ r²ℛ²₂
//! ```
//!
//! the double `D(H) = H* ⊗_R H` is a twisted tensor product of `H` with a
//! deformed product on `H*`.

use crate::constructions::{double_twisting, drinfeld_double, SqtElement};
use crate::invariance::{
    build_isomorphism, build_star_algebra, check_invariance_hypotheses, check_star_hypotheses, derive_twisted_map,
    InvarianceData, StarData,
};
use crate::linmap::{chain, tensor_all, LinMap};
use crate::report::Report;
use crate::HopfAlgebra;

use super::{equality, PipelineRun, StageKind};

pub const SQT1: &str = "Δ(r¹) ⊗ r² = ℛ¹ ⊗ r¹ ⊗ ℛ²r²";
pub const SQT2: &str = "r¹ ⊗ Δ(r²) = ℛ¹r¹ ⊗ r² ⊗ ℛ²";
pub const SQT3: &str = "ℛ¹ ⊗ ℛ²₂r¹ ⊗ ℛ²₁r² = ℛ¹ ⊗ r¹ℛ²₁ ⊗ r²ℛ²₂";
pub const AUXILIARY: &str = "r¹ ⊗ r²₁ ⊗ r²₃ℛ¹ ⊗ r²₂ℛ² = ℛ¹₂r¹ ⊗ r²₁ ⊗ ℛ¹₁r²₂ ⊗ ℛ²";
pub const QT_DELTA_LEFT: &str = "(Δ ⊗ id)(r) = r₁₃r₂₃";
pub const QT_DELTA_RIGHT: &str = "(id ⊗ Δ)(r) = r₁₃r₁₂";
pub const QT_INTERTWINE: &str = "Δᵒᵖ(h)r = rΔ(h)";

fn perm(h: &HopfAlgebra, k: usize, p: &[usize]) -> LinMap {
    LinMap::permutation(h.field(), &vec![h.dim(); k], p)
}

fn rr(e: &SqtElement) -> LinMap {
    let r = e.r_map();
    r.tensor(&r).expect("dims")
}

/// Both sides of the first two conditions, which are also the two
/// comultiplication axioms of a quasitriangular structure.
fn sqt12(e: &SqtElement) -> [(LinMap, LinMap); 2] {
    let h = e.hopf();
    let id = h.id();
    let r = e.r_map();
    let first = (
        r.then(&tensor_all(&[h.comult(), &id])).expect("dims"),
        chain(&[rr(e), perm(h, 4, &[0, 2, 1, 3]), tensor_all(&[&id, &id, h.mult()])]),
    );
    let second = (
        r.then(&tensor_all(&[&id, h.comult()])).expect("dims"),
        chain(&[rr(e), perm(h, 4, &[0, 2, 3, 1]), tensor_all(&[h.mult(), &id, &id])]),
    );
    [first, second]
}

/// The three conditions as vector equalities in `H ⊗ H ⊗ H`.
pub fn check_sqt(e: &SqtElement) -> Report {
    let mut rep = Report::new("semiquasitriangular conditions");
    let h = e.hopf();
    let id = h.id();
    let [(l1, r1), (l2, r2)] = sqt12(e);
    rep.check_maps(SQT1, &l1, &r1);
    rep.check_maps(SQT2, &l2, &r2);
    // ℛ¹ ⊗ ℛ²₁ ⊗ ℛ²₂ ⊗ r¹ ⊗ r²
    let split = rr(e).then(&tensor_all(&[&id, h.comult(), &id, &id])).expect("dims");
    let lhs = chain(&[split.clone(), perm(h, 5, &[0, 2, 3, 1, 4]), tensor_all(&[&id, h.mult(), h.mult()])]);
    let rhs = chain(&[split, perm(h, 5, &[0, 3, 1, 4, 2]), tensor_all(&[&id, h.mult(), h.mult()])]);
    rep.check_maps(SQT3, &lhs, &rhs);
    rep
}

/// The four-fold relation derived from the three conditions.
pub fn check_auxiliary_relation(e: &SqtElement) -> Report {
    let mut rep = Report::new("auxiliary relation");
    let h = e.hopf();
    let id = h.id();
    let delta2 = h.coalgebra().comult_twice();
    // r¹ ⊗ r²₁ ⊗ r²₂ ⊗ r²₃ ⊗ ℛ¹ ⊗ ℛ² ↦ r¹ ⊗ r²₁ ⊗ r²₃ ⊗ ℛ¹ ⊗ r²₂ ⊗ ℛ²
    let lhs = chain(&[
        rr(e),
        tensor_all(&[&id, &delta2, &id, &id]),
        perm(h, 6, &[0, 1, 3, 4, 2, 5]),
        tensor_all(&[&id, &id, h.mult(), h.mult()]),
    ]);
    // ℛ¹₁ ⊗ ℛ¹₂ ⊗ ℛ² ⊗ r¹ ⊗ r²₁ ⊗ r²₂ ↦ ℛ¹₂ ⊗ r¹ ⊗ r²₁ ⊗ ℛ¹₁ ⊗ r²₂ ⊗ ℛ²
    let rhs = chain(&[
        rr(e),
        tensor_all(&[h.comult(), &id, &id, h.comult()]),
        perm(h, 6, &[1, 3, 4, 0, 5, 2]),
        tensor_all(&[h.mult(), &id, h.mult(), &id]),
    ]);
    rep.check_maps(AUXILIARY, &lhs, &rhs);
    rep
}

/// The full quasitriangularity axioms.
pub fn check_quasitriangular(e: &SqtElement) -> Report {
    let mut rep = Report::new("quasitriangular structure");
    let h = e.hopf();
    let n = h.dim();
    let [(l1, r1), (l2, r2)] = sqt12(e);
    rep.check_maps(QT_DELTA_LEFT, &l1, &r1);
    rep.check_maps(QT_DELTA_RIGHT, &l2, &r2);
    let hh = h.algebra().tensor_product(h.algebra()).expect("dims");
    let r = e.r_map();
    let op = h.comult().then(&LinMap::flip(h.field(), n, n)).expect("dims");
    let lhs = chain(&[op.tensor(&r).expect("dims"), hh.mult().clone()]);
    let rhs = chain(&[r.tensor(h.comult()).expect("dims"), hh.mult().clone()]);
    rep.check_maps(QT_INTERTWINE, &lhs, &rhs);
    rep
}

/// Every map the double pipeline uses, built from `r`, `r⁻¹` and the
/// regular actions `(h⇀φ)(x) = φ(xh)`, `(φ↼h)(x) = φ(hx)`.
#[derive(Clone, Debug)]
pub struct SqtMaps {
    /// `H ⊗ H* → H*`, `h·φ = h₁⇀φ↼S⁻¹(h₂)`.
    pub action: LinMap,
    /// `ρ(φ) = φ↼S⁻¹(r¹) ⊗ r²`.
    pub rho: LinMap,
    /// `λ(φ) = φ↼S⁻¹(u¹) ⊗ u²`.
    pub lambda: LinMap,
    /// `φ * φ' = (φ↼S⁻¹(r¹))(r²₁⇀φ'↼S⁻¹(r²₂))`.
    pub star: LinMap,
    /// `R'(h ⊗ φ) = h₁⇀φ↼S⁻¹(u¹h₃r¹) ⊗ u²h₂r²`.
    pub rprime: LinMap,
    /// `f(φ ⊗ h) = φ↼S⁻¹(u¹) ⊗ u²h`.
    pub f: LinMap,
    /// `g(φ ⊗ h) = φ↼S⁻¹(r¹) ⊗ r²h`.
    pub g: LinMap,
}

impl SqtMaps {
    pub fn new(e: &SqtElement) -> Self {
        let h = e.hopf();
        let dual = h.dual();
        let id = h.id();
        let s_inv = h.antipode_inv();
        let (left, right) = (h.dual_left_action(), h.dual_right_action());
        let (r, u) = (e.r_map(), e.r_inv_map());
        let mult3 = h.mult().tensor(&id).and_then(|m| m.then(h.mult())).expect("dims");

        // h₁ ⊗ h₂ ⊗ φ ↦ h₁ ⊗ φ ⊗ S⁻¹(h₂)
        let action = chain(&[
            tensor_all(&[h.comult(), &id]),
            perm(h, 3, &[0, 2, 1]),
            tensor_all(&[&id, &id, s_inv]),
            tensor_all(&[&left, &id]),
            right.clone(),
        ]);
        let along = |x: &LinMap| chain(&[tensor_all(&[&id, x]), tensor_all(&[&id, s_inv, &id]), tensor_all(&[&right, &id])]);
        let rho = along(&r);
        let lambda = along(&u);
        // φ ⊗ r¹ ⊗ r²₁ ⊗ r²₂ ⊗ φ' ↦ φ ⊗ r¹ ⊗ r²₁ ⊗ φ' ⊗ r²₂
        let star = chain(&[
            tensor_all(&[&id, &r, &id]),
            tensor_all(&[&id, &id, h.comult(), &id]),
            perm(h, 5, &[0, 1, 2, 4, 3]),
            tensor_all(&[&id, s_inv, &id, &id, s_inv]),
            tensor_all(&[&right, &left, &id]),
            tensor_all(&[&id, &right]),
            dual.mult().clone(),
        ]);
        // u¹ ⊗ u² ⊗ h₁ ⊗ h₂ ⊗ h₃ ⊗ φ ⊗ r¹ ⊗ r² ↦ h₁ ⊗ φ ⊗ u¹ ⊗ h₃ ⊗ r¹ ⊗ u² ⊗ h₂ ⊗ r²
        let rprime = chain(&[
            tensor_all(&[&u, &h.coalgebra().comult_twice(), &id, &r]),
            perm(h, 8, &[2, 5, 0, 4, 6, 1, 3, 7]),
            tensor_all(&[&id, &id, &mult3, &mult3]),
            tensor_all(&[&id, &id, s_inv, &id]),
            tensor_all(&[&left, &id, &id]),
            tensor_all(&[&right, &id]),
        ]);
        // φ ⊗ x¹ ⊗ x² ⊗ h ↦ φ↼S⁻¹(x¹) ⊗ x²h
        let transfer = |x: &LinMap| {
            chain(&[tensor_all(&[&id, x, &id]), tensor_all(&[&id, s_inv, &id, &id]), tensor_all(&[&right, h.mult()])])
        };
        let f = transfer(&u);
        let g = transfer(&r);
        SqtMaps { action, rho, lambda, star, rprime, f, g }
    }
}

pub const STAGE_INPUT: &str = "Hopf algebra";
pub const STAGE_SQT: &str = "semiquasitriangular conditions";
pub const STAGE_AUX: &str = "auxiliary relation";
pub const STAGE_FG: &str = "f and g are mutually inverse";
pub const STAGE_DOUBLE: &str = "double twisting";
pub const STAGE_DOUBLE_EQ: &str = "H* ⊗_R H = D(H)";
pub const STAGE_STAR_HYP: &str = "star-product hypotheses";
pub const STAGE_STAR: &str = "star algebra";
pub const STAGE_STAR_FORM: &str = "φ * φ' = (φ↼S⁻¹(r¹))(r²₁⇀φ'↼S⁻¹(r²₂))";
pub const STAGE_HYPOTHESES: &str = "invariance hypotheses";
pub const STAGE_RPRIME: &str = "derived twisting map";
pub const STAGE_RPRIME_FORM: &str = "R'(h ⊗ φ) = h₁⇀φ↼S⁻¹(u¹h₃r¹) ⊗ u²h₂r²";
pub const STAGE_ISO: &str = "isomorphism";
pub const STAGE_ISO_FORM: &str = "isomorphism equals g";

/// `D(H) ≅ H̲* ⊗_{R'} H`, staged.
pub fn sqt_double_pipeline(e: &SqtElement, instance: &str) -> PipelineRun {
    use StageKind::*;
    let mut run = PipelineRun::new("sqt-double", instance);
    let h = e.hopf();
    if !run.record(STAGE_INPUT, Hypothesis, h.certify()) {
        return run;
    }
    if !run.record(STAGE_SQT, Hypothesis, check_sqt(e)) {
        return run;
    }
    if !run.record(STAGE_AUX, Consequence, check_auxiliary_relation(e)) {
        return run;
    }
    let maps = SqtMaps::new(e);
    let n2 = h.dim() * h.dim();
    let mut fg = Report::new(STAGE_FG);
    let id = LinMap::id(h.field(), n2);
    fg.check_maps("f ∘ g = id", &maps.g.then(&maps.f).expect("dims"), &id);
    fg.check_maps("g ∘ f = id", &maps.f.then(&maps.g).expect("dims"), &id);
    if !run.record(STAGE_FG, Consequence, fg) {
        return run;
    }
    let Some(t) = run.record_result(STAGE_DOUBLE, Consequence, double_twisting(h).and_then(|t| t.certify())) else {
        return run;
    };
    let double = match drinfeld_double(h) {
        Ok(d) => d,
        Err(err) => {
            run.record_result::<()>(STAGE_DOUBLE_EQ, Consequence, Err(err));
            return run;
        }
    };
    let twisted = t.data().raw_product();
    let mut same = equality(STAGE_DOUBLE_EQ, twisted.mult(), double.mult());
    same.check_maps("unit", twisted.unit(), double.unit());
    if !run.record(STAGE_DOUBLE_EQ, Consequence, same) {
        return run;
    }
    let star_data = match StarData::new(t.clone(), maps.action.clone(), maps.rho.clone()) {
        Ok(s) => s,
        Err(err) => {
            run.record_result::<()>(STAGE_STAR_HYP, Consequence, Err(err));
            return run;
        }
    };
    if !run.record(STAGE_STAR_HYP, Consequence, check_star_hypotheses(&star_data)) {
        return run;
    }
    let Some(star) = run.record_result(STAGE_STAR, Consequence, build_star_algebra(&star_data)) else {
        return run;
    };
    run.deformed = Some(star.clone());
    if !run.record(STAGE_STAR_FORM, Consequence, equality(STAGE_STAR_FORM, star.mult(), &maps.star)) {
        return run;
    }
    let data = match InvarianceData::new(t, star, maps.rho.clone(), maps.lambda.clone()) {
        Ok(d) => d,
        Err(err) => {
            run.record_result::<()>(STAGE_HYPOTHESES, Consequence, Err(err));
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
    if !run.record(STAGE_RPRIME_FORM, Consequence, equality(STAGE_RPRIME_FORM, rprime.r(), &maps.rprime)) {
        return run;
    }
    let Some(cert) = run.record_result(STAGE_ISO, Consequence, build_isomorphism(&data, &rprime)) else {
        return run;
    };
    if run.record(STAGE_ISO_FORM, Consequence, equality(STAGE_ISO_FORM, &cert.phi, &maps.g)) {
        run.certificate = Some(cert);
    }
    run
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{group_algebra, h4_quasitriangular_terms, kc2_triangular_terms, sweedler_h4, FiniteGroup};
    use crate::Field;

    fn kc2(field: Field) -> HopfAlgebra {
        group_algebra(&FiniteGroup::cyclic(2).unwrap(), field)
    }

    #[test]
    fn trivial_r() {
        let h = sweedler_h4(Field::Rationals).unwrap();
        let e = SqtElement::trivial(h.clone());
        assert!(check_sqt(&e).passed());
        let run = sqt_double_pipeline(&e, "H4 trivial");
        assert!(run.passed(), "{}", run.summary());
        assert_eq!(run.deformed.as_ref().unwrap(), h.dual().algebra());
        assert!(run.certificate.unwrap().phi.entries_eq(&LinMap::id(h.field(), 16)));
    }

    #[test]
    fn triangular_kc2() {
        for field in [Field::Rationals, Field::gf(5).unwrap()] {
            let e = SqtElement::from_terms(kc2(field), kc2_triangular_terms(field).unwrap()).unwrap();
            assert!(check_quasitriangular(&e).passed());
            let run = sqt_double_pipeline(&e, "kC2 triangular");
            assert!(run.passed(), "{}", run.summary());
        }
    }

    #[test]
    fn one_tensor_g_fails_first_condition() {
        let q = Field::Rationals;
        let e = SqtElement::from_terms(kc2(q), [(0, 1, q.one())]).unwrap();
        let rep = check_sqt(&e);
        let fail = rep.failure(SQT1).unwrap();
        // lhs 1 ⊗ 1 ⊗ g, rhs 1 ⊗ 1 ⊗ 1
        assert_eq!(fail.lhs, crate::SparseVec::basis(q, 8, 1));
        assert_eq!(fail.rhs, crate::SparseVec::basis(q, 8, 0));
        let run = sqt_double_pipeline(&e, "kC2 1⊗g");
        assert!(!run.passed());
        assert!(run.violations().is_empty());
    }

    #[test]
    fn h4_quasitriangular_family() {
        let q = Field::Rationals;
        let h = sweedler_h4(q).unwrap();
        for alpha in [0, 1, -2] {
            let e = SqtElement::from_terms(h.clone(), h4_quasitriangular_terms(q, &q.from_i64(alpha)).unwrap()).unwrap();
            let qt = check_quasitriangular(&e);
            assert!(qt.passed(), "alpha = {alpha}\n{qt}\n{}", check_sqt(&e));
            let run = sqt_double_pipeline(&e, "H4 R_alpha");
            assert!(run.passed(), "{}", run.summary());
        }
    }
}
