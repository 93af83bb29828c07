//! Structure-constant algebras, coalgebras, Hopf algebras and comodule
//! algebras, with exhaustive axiom checkers.
//!
//! Every checker states its identity as an equality of composite maps and
//! then scans basis tuples in lexicographic order for the first mismatch.

mod comodule;
mod convolution;
mod hopf;

pub use comodule::ComoduleAlgebra;
pub use convolution::{action_to_end, convolution, convolution_inverse, convolution_unit, end_algebra, end_to_action};
pub use hopf::HopfAlgebra;

use crate::error::{Error, Result};
use crate::linmap::{LinMap, SparseVec};
use crate::report::Report;
use crate::scalar::Field;

/// A finite-dimensional algebra `(A, μ, η)`.
///
/// `mult` has domain factors `[n, n]` and codomain `[n]`; `unit` goes
/// `[1] → [n]`. Associativity and unitality are not assumed; run
/// [`Algebra::certify`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    dim: usize,
    mult: LinMap,
    unit: LinMap,
}

impl Algebra {
    pub fn new(mult: LinMap, unit: LinMap) -> Result<Self> {
        let n = unit.cod_dim();
        if unit.dom_dim() != 1 {
            return Err(Error::Dimension("unit must be a map from the ground field".into()));
        }
        if mult.cod_dim() != n || mult.dom_dim() != n * n {
            return Err(Error::Dimension(format!(
                "multiplication is {}x{}, expected {n}x{}",
                mult.cod_dim(),
                mult.dom_dim(),
                n * n
            )));
        }
        if mult.field() != unit.field() {
            return Err(Error::FieldMismatch { left: mult.field(), right: unit.field() });
        }
        Ok(Algebra {
            dim: n,
            mult: mult.reshape(vec![n, n], vec![n])?,
            unit: unit.reshape(vec![1], vec![n])?,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn field(&self) -> Field {
        self.mult.field()
    }

    pub fn mult(&self) -> &LinMap {
        &self.mult
    }

    pub fn unit(&self) -> &LinMap {
        &self.unit
    }

    /// The unit element as a vector.
    pub fn one(&self) -> &SparseVec {
        self.unit.column(0)
    }

    pub fn id(&self) -> LinMap {
        LinMap::id(self.field(), self.dim)
    }

    /// Product of two basis elements.
    pub fn basis_product(&self, i: usize, j: usize) -> &SparseVec {
        self.mult.column(i * self.dim + j)
    }

    pub fn product(&self, a: &SparseVec, b: &SparseVec) -> SparseVec {
        self.mult.apply(&a.kron(b)).expect("operands of algebra dimension")
    }

    /// `x ↦ a x`.
    pub fn left_multiplication(&self, a: &SparseVec) -> LinMap {
        let n = self.dim;
        LinMap::from_fn(self.field(), vec![n], vec![n], |j| {
            self.product(a, &SparseVec::basis(self.field(), n, j))
        })
        .expect("square operator")
    }

    /// `μ ∘ (μ ⊗ id) = μ ∘ (id ⊗ μ)` on all basis triples.
    pub fn check_associative(&self) -> Report {
        let mut r = Report::new("associativity");
        let id = self.id();
        let lhs = self.mult.tensor(&id).and_then(|m| m.then(&self.mult)).expect("dims");
        let rhs = id.tensor(&self.mult).and_then(|m| m.then(&self.mult)).expect("dims");
        r.check_maps("associativity", &lhs, &rhs);
        r
    }

    /// `μ ∘ (η ⊗ id) = id = μ ∘ (id ⊗ η)`.
    pub fn check_unital(&self) -> Report {
        let mut r = Report::new("unitality");
        let id = self.id();
        let left = self.unit.tensor(&id).and_then(|m| m.then(&self.mult)).expect("dims");
        let right = id.tensor(&self.unit).and_then(|m| m.then(&self.mult)).expect("dims");
        r.check_maps("left unit", &left, &id);
        r.check_maps("right unit", &right, &id);
        r
    }

    /// Associativity and unitality.
    pub fn certify(&self) -> Report {
        let mut r = Report::new("algebra");
        r.merge(self.check_associative());
        r.merge(self.check_unital());
        r
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.dim;
        (0..n).all(|i| (0..n).all(|j| self.basis_product(i, j) == self.basis_product(j, i)))
    }

    /// The ordinary tensor product algebra `A ⊗ B`, computed directly from
    /// the structure constants.
    pub fn tensor_product(&self, other: &Algebra) -> Result<Algebra> {
        if self.field() != other.field() {
            return Err(Error::FieldMismatch { left: self.field(), right: other.field() });
        }
        let (n, m) = (self.dim, other.dim);
        let d = n * m;
        let mult = LinMap::from_fn(self.field(), vec![d, d], vec![d], |c| {
            let (x, y) = (c / d, c % d);
            let (a, b) = (x / m, x % m);
            let (a2, b2) = (y / m, y % m);
            self.basis_product(a, a2).kron(other.basis_product(b, b2))
        })?;
        let unit = LinMap::from_vector(self.field(), vec![d], self.one().kron(other.one()))?;
        Algebra::new(mult, unit)
    }

    /// Re-expresses the algebra in a new basis (columns of `p`, in old
    /// coordinates).
    pub fn change_basis(&self, p: &LinMap) -> Result<Algebra> {
        let one = LinMap::id(self.field(), 1);
        Algebra::new(self.mult.transport(&[p, p], &[p])?, self.unit.transport(&[&one], &[p])?)
    }
}

/// A finite-dimensional coalgebra `(C, Δ, ε)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coalgebra {
    dim: usize,
    comult: LinMap,
    counit: LinMap,
}

impl Coalgebra {
    pub fn new(comult: LinMap, counit: LinMap) -> Result<Self> {
        let n = counit.dom_dim();
        if counit.cod_dim() != 1 {
            return Err(Error::Dimension("counit must map to the ground field".into()));
        }
        if comult.dom_dim() != n || comult.cod_dim() != n * n {
            return Err(Error::Dimension(format!(
                "comultiplication is {}x{}, expected {}x{n}",
                comult.cod_dim(),
                comult.dom_dim(),
                n * n
            )));
        }
        if comult.field() != counit.field() {
            return Err(Error::FieldMismatch { left: comult.field(), right: counit.field() });
        }
        Ok(Coalgebra {
            dim: n,
            comult: comult.reshape(vec![n], vec![n, n])?,
            counit: counit.reshape(vec![n], vec![1])?,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn field(&self) -> Field {
        self.comult.field()
    }

    pub fn comult(&self) -> &LinMap {
        &self.comult
    }

    pub fn counit(&self) -> &LinMap {
        &self.counit
    }

    /// `(Δ ⊗ id) ∘ Δ`, i.e. `h ↦ h₁ ⊗ h₂ ⊗ h₃`.
    pub fn comult_twice(&self) -> LinMap {
        let id = LinMap::id(self.field(), self.dim);
        self.comult.then(&self.comult.tensor(&id).expect("dims")).expect("dims")
    }

    /// `(Δ ⊗ id) ∘ Δ = (id ⊗ Δ) ∘ Δ`.
    pub fn check_coassociative(&self) -> Report {
        let mut r = Report::new("coassociativity");
        let id = LinMap::id(self.field(), self.dim);
        let rhs = self.comult.then(&id.tensor(&self.comult).expect("dims")).expect("dims");
        r.check_maps("coassociativity", &self.comult_twice(), &rhs);
        r
    }

    /// `(ε ⊗ id) ∘ Δ = id = (id ⊗ ε) ∘ Δ`.
    pub fn check_counital(&self) -> Report {
        let mut r = Report::new("counitality");
        let id = LinMap::id(self.field(), self.dim);
        let left = self.comult.then(&self.counit.tensor(&id).expect("dims")).expect("dims");
        let right = self.comult.then(&id.tensor(&self.counit).expect("dims")).expect("dims");
        r.check_maps("left counit", &left, &id);
        r.check_maps("right counit", &right, &id);
        r
    }

    pub fn change_basis(&self, p: &LinMap) -> Result<Coalgebra> {
        let one = LinMap::id(self.field(), 1);
        Coalgebra::new(self.comult.transport(&[p], &[p, p])?, self.counit.transport(&[p], &[&one])?)
    }
}
