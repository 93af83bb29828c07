use crate::error::{Error, Result};
use crate::linmap::{LinMap, SparseVec};
use crate::report::Report;
use crate::scalar::Field;

use super::{Algebra, Coalgebra};

/// A finite-dimensional Hopf algebra. The inverse antipode is computed at
/// construction; a non-invertible antipode is rejected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HopfAlgebra {
    algebra: Algebra,
    coalgebra: Coalgebra,
    antipode: LinMap,
    antipode_inv: LinMap,
}

impl HopfAlgebra {
    pub fn new(algebra: Algebra, coalgebra: Coalgebra, antipode: LinMap) -> Result<Self> {
        let n = algebra.dim();
        if coalgebra.dim() != n {
            return Err(Error::Dimension(format!("algebra dim {n} but coalgebra dim {}", coalgebra.dim())));
        }
        if algebra.field() != coalgebra.field() || antipode.field() != algebra.field() {
            return Err(Error::FieldMismatch { left: algebra.field(), right: antipode.field() });
        }
        let antipode = antipode.reshape(vec![n], vec![n])?;
        let antipode_inv = antipode.invert().map_err(|e| match e {
            Error::NotInvertible { rank, size } => {
                Error::Input(format!("antipode is not invertible (rank {rank} of {size})"))
            }
            other => other,
        })?;
        Ok(HopfAlgebra { algebra, coalgebra, antipode, antipode_inv })
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn field(&self) -> Field {
        self.algebra.field()
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn coalgebra(&self) -> &Coalgebra {
        &self.coalgebra
    }

    pub fn mult(&self) -> &LinMap {
        self.algebra.mult()
    }

    pub fn unit(&self) -> &LinMap {
        self.algebra.unit()
    }

    pub fn comult(&self) -> &LinMap {
        self.coalgebra.comult()
    }

    pub fn counit(&self) -> &LinMap {
        self.coalgebra.counit()
    }

    pub fn antipode(&self) -> &LinMap {
        &self.antipode
    }

    pub fn antipode_inv(&self) -> &LinMap {
        &self.antipode_inv
    }

    pub fn id(&self) -> LinMap {
        self.algebra.id()
    }

    /// Replaces the antipode, keeping everything else. Used to build
    /// deliberately broken instances.
    pub fn with_antipode(&self, antipode: LinMap) -> Result<Self> {
        HopfAlgebra::new(self.algebra.clone(), self.coalgebra.clone(), antipode)
    }

    pub fn check_associative(&self) -> Report {
        self.algebra.check_associative()
    }

    pub fn check_unital(&self) -> Report {
        self.algebra.check_unital()
    }

    pub fn check_coassociative(&self) -> Report {
        self.coalgebra.check_coassociative()
    }

    pub fn check_counital(&self) -> Report {
        self.coalgebra.check_counital()
    }

    /// Δ and ε are algebra maps.
    pub fn check_bialgebra(&self) -> Report {
        let mut r = Report::new("bialgebra compatibility");
        let f = self.field();
        let n = self.dim();
        let id = self.id();
        let (mu, eta, delta, eps) = (self.mult(), self.unit(), self.comult(), self.counit());

        // (μ⊗μ)∘(id⊗τ⊗id)∘(Δ⊗Δ)
        let middle = id.tensor(&LinMap::flip(f, n, n)).and_then(|m| m.tensor(&id)).expect("dims");
        let rhs = delta
            .tensor(delta)
            .and_then(|m| m.then(&middle))
            .and_then(|m| m.then(&mu.tensor(mu)?))
            .expect("dims");
        r.check_maps("comultiplication is multiplicative", &mu.then(delta).expect("dims"), &rhs);
        r.check_maps("comultiplication is unital", &eta.then(delta).expect("dims"), &eta.tensor(eta).expect("dims"));
        r.check_maps("counit is multiplicative", &mu.then(eps).expect("dims"), &eps.tensor(eps).expect("dims"));
        r.check_maps("counit is unital", &eta.then(eps).expect("dims"), &LinMap::id(f, 1));
        r
    }

    /// `μ ∘ (S ⊗ id) ∘ Δ = η ∘ ε = μ ∘ (id ⊗ S) ∘ Δ`.
    pub fn check_antipode(&self) -> Report {
        let mut r = Report::new("antipode");
        let id = self.id();
        let unit_counit = self.counit().then(self.unit()).expect("dims");
        let left = self
            .comult()
            .then(&self.antipode.tensor(&id).expect("dims"))
            .and_then(|m| m.then(self.mult()))
            .expect("dims");
        let right = self
            .comult()
            .then(&id.tensor(&self.antipode).expect("dims"))
            .and_then(|m| m.then(self.mult()))
            .expect("dims");
        r.check_maps("left antipode", &left, &unit_counit);
        r.check_maps("right antipode", &right, &unit_counit);
        r
    }

    /// All Hopf algebra axioms.
    pub fn certify(&self) -> Report {
        let mut r = Report::new("Hopf algebra");
        r.merge(self.check_associative());
        r.merge(self.check_unital());
        r.merge(self.check_coassociative());
        r.merge(self.check_counital());
        r.merge(self.check_bialgebra());
        r.merge(self.check_antipode());
        let composite = self.antipode.compose(&self.antipode_inv).expect("dims");
        r.check_maps("antipode inverse", &composite, &self.id());
        r
    }

    /// The dual Hopf algebra `H*` in the dual basis `{eⁱ}`: every structure
    /// map is transposed, multiplication and comultiplication trade places.
    pub fn dual(&self) -> HopfAlgebra {
        let algebra = Algebra::new(self.comult().transpose(), self.counit().transpose()).expect("dual dims");
        let coalgebra = Coalgebra::new(self.mult().transpose(), self.unit().transpose()).expect("dual dims");
        HopfAlgebra {
            algebra,
            coalgebra,
            antipode: self.antipode.transpose(),
            antipode_inv: self.antipode_inv.transpose(),
        }
    }

    /// `H* ⊗ H → H*`, `φ ⊗ h ↦ φ↼h` with `(φ↼h)(x) = φ(hx)`.
    pub fn dual_right_action(&self) -> LinMap {
        let n = self.dim();
        // (eⁱ↼e_j)(e_k) = coefficient of e_i in e_j e_k
        let triples = self.mult().triples().map(|(i, jk, s)| (jk % n, i * n + jk / n, s.clone()));
        LinMap::from_triples(self.field(), vec![n, n], vec![n], triples).expect("dims")
    }

    /// `H ⊗ H* → H*`, `h ⊗ φ ↦ h⇀φ` with `(h⇀φ)(x) = φ(xh)`.
    pub fn dual_left_action(&self) -> LinMap {
        let n = self.dim();
        // (e_j⇀eⁱ)(e_k) = coefficient of e_i in e_k e_j
        let triples = self.mult().triples().map(|(i, kj, s)| (kj / n, (kj % n) * n + i, s.clone()));
        LinMap::from_triples(self.field(), vec![n, n], vec![n], triples).expect("dims")
    }

    /// `φ↼h`.
    pub fn right_action(&self, phi: &SparseVec, h: &SparseVec) -> SparseVec {
        self.dual_right_action().apply(&phi.kron(h)).expect("dims")
    }

    /// `h⇀φ`.
    pub fn left_action(&self, h: &SparseVec, phi: &SparseVec) -> SparseVec {
        self.dual_left_action().apply(&h.kron(phi)).expect("dims")
    }

    pub fn change_basis(&self, p: &LinMap) -> Result<HopfAlgebra> {
        HopfAlgebra::new(
            self.algebra.change_basis(p)?,
            self.coalgebra.change_basis(p)?,
            self.antipode.transport(&[p], &[p])?,
        )
    }
}
