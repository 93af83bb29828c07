use crate::error::{Error, Result};
use crate::linmap::LinMap;
use crate::report::Report;

use super::{Algebra, HopfAlgebra};

/// A right `H`-comodule algebra: an algebra `A` with a coaction
/// `δ: A → A ⊗ H`, `a ↦ a₍₀₎ ⊗ a₍₁₎`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComoduleAlgebra {
    algebra: Algebra,
    hopf: HopfAlgebra,
    coaction: LinMap,
}

impl ComoduleAlgebra {
    pub fn new(algebra: Algebra, hopf: HopfAlgebra, coaction: LinMap) -> Result<Self> {
        let (n, h) = (algebra.dim(), hopf.dim());
        if coaction.dom_dim() != n || coaction.cod_dim() != n * h {
            return Err(Error::Dimension(format!(
                "coaction is {}x{}, expected {}x{n}",
                coaction.cod_dim(),
                coaction.dom_dim(),
                n * h
            )));
        }
        if algebra.field() != hopf.field() || coaction.field() != hopf.field() {
            return Err(Error::FieldMismatch { left: algebra.field(), right: hopf.field() });
        }
        let coaction = coaction.reshape(vec![n], vec![n, h])?;
        Ok(ComoduleAlgebra { algebra, hopf, coaction })
    }

    /// `H` coacting on itself by its comultiplication.
    pub fn regular(hopf: &HopfAlgebra) -> Self {
        ComoduleAlgebra::new(hopf.algebra().clone(), hopf.clone(), hopf.comult().clone()).expect("dims")
    }

    /// The trivial coaction `a ↦ a ⊗ 1`.
    pub fn trivial(algebra: Algebra, hopf: HopfAlgebra) -> Result<Self> {
        let coaction = algebra.id().tensor(hopf.unit())?;
        ComoduleAlgebra::new(algebra, hopf, coaction)
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn hopf(&self) -> &HopfAlgebra {
        &self.hopf
    }

    pub fn coaction(&self) -> &LinMap {
        &self.coaction
    }

    /// Same coaction and Hopf algebra over a different algebra structure on
    /// the same space.
    pub fn with_algebra(&self, algebra: Algebra) -> Result<Self> {
        ComoduleAlgebra::new(algebra, self.hopf.clone(), self.coaction.clone())
    }

    /// `(δ ⊗ id) ∘ δ`, i.e. `a ↦ a₍₀₎ ⊗ a₍₁₎ ⊗ a₍₂₎`.
    pub fn coaction_twice(&self) -> LinMap {
        let id_h = self.hopf.id();
        self.coaction.then(&self.coaction.tensor(&id_h).expect("dims")).expect("dims")
    }

    /// `(id ⊗ Δ) ∘ δ`, the other way to reach `a₍₀₎ ⊗ a₍₁₎ ⊗ a₍₂₎`.
    pub fn coaction_then_comult(&self) -> LinMap {
        let id_a = self.algebra.id();
        self.coaction.then(&id_a.tensor(self.hopf.comult()).expect("dims")).expect("dims")
    }

    /// Coassociativity, counitality, and the algebra-map property of `δ`.
    pub fn check(&self) -> Report {
        let mut r = Report::new("comodule algebra");
        let f = self.algebra.field();
        let (n, h) = (self.algebra.dim(), self.hopf.dim());
        let id_a = self.algebra.id();
        let id_h = self.hopf.id();

        r.check_maps("coaction coassociative", &self.coaction_twice(), &self.coaction_then_comult());
        let counit = self.coaction.then(&id_a.tensor(self.hopf.counit()).expect("dims")).expect("dims");
        r.check_maps("coaction counital", &counit, &id_a);
        r.check_maps(
            "coaction unital",
            &self.algebra.unit().then(&self.coaction).expect("dims"),
            &self.algebra.unit().tensor(self.hopf.unit()).expect("dims"),
        );
        // μ_{A⊗H} = (μ_A ⊗ μ_H) ∘ (id ⊗ τ ⊗ id)
        let middle = id_a
            .tensor(&LinMap::flip(f, h, n))
            .and_then(|m| m.tensor(&id_h))
            .expect("dims");
        let mult_ah = middle.then(&self.algebra.mult().tensor(self.hopf.mult()).expect("dims")).expect("dims");
        let rhs = self.coaction.tensor(&self.coaction).and_then(|m| m.then(&mult_ah)).expect("dims");
        r.check_maps("coaction multiplicative", &self.algebra.mult().then(&self.coaction).expect("dims"), &rhs);
        r
    }

    /// Rewrites the instance in new bases of `A` and `H`.
    pub fn change_basis(&self, p_a: &LinMap, p_h: &LinMap) -> Result<Self> {
        ComoduleAlgebra::new(
            self.algebra.change_basis(p_a)?,
            self.hopf.change_basis(p_h)?,
            self.coaction.transport(&[p_a], &[p_a, p_h])?,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{group_algebra, sweedler_h4, FiniteGroup};
    use crate::Field;

    #[test]
    fn regular_and_trivial_coactions_pass() {
        let h = sweedler_h4(Field::Rationals).unwrap();
        assert!(ComoduleAlgebra::regular(&h).check().passed());
        assert!(ComoduleAlgebra::trivial(h.algebra().clone(), h.clone()).unwrap().check().passed());
        let k = group_algebra(&FiniteGroup::cyclic(2).unwrap(), Field::Rationals);
        assert!(ComoduleAlgebra::regular(&k).check().passed());
    }

    #[test]
    fn opposite_comultiplication_fails_on_h4() {
        let h = sweedler_h4(Field::Rationals).unwrap();
        let tau_delta = h.comult().then(&LinMap::flip(h.field(), 4, 4)).unwrap();
        let ca = ComoduleAlgebra::new(h.algebra().clone(), h.clone(), tau_delta).unwrap();
        let r = ca.check();
        assert!(!r.passed());
        // g is grouplike, so x is the first basis element that breaks coassociativity
        let fail = r.failure("coaction coassociative").unwrap();
        assert_eq!(fail.witness, vec![2]);
    }
}
