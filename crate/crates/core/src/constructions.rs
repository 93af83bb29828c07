//! Instance generators: group algebras, Sweedler's four-dimensional Hopf
//! algebra, smash products, Drinfeld doubles and elements of `H ⊗ H`.

use crate::algebra::{Algebra, Coalgebra, ComoduleAlgebra, HopfAlgebra};
use crate::error::{Error, Result};
use crate::linmap::{LinMap, SparseVec};
use crate::scalar::{Field, Scalar};
use crate::twisting::{build_twisted_product, TwistedProduct, TwistingData};

/// A finite group given by its Cayley table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    /// Validates the table (closure, associativity, identity, inverses).
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0 || table.iter().any(|row| row.len() != n || row.iter().any(|&x| x >= n)) {
            return Err(Error::Input("Cayley table must be a square table of element indices".into()));
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::Input(format!("table is not associative at ({a}, {b}, {c})")));
                    }
                }
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a))
            .ok_or_else(|| Error::Input("table has no identity".into()))?;
        let inverse = (0..n)
            .map(|a| {
                (0..n)
                    .find(|&b| table[a][b] == identity && table[b][a] == identity)
                    .ok_or_else(|| Error::Input(format!("element {a} has no inverse")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(FiniteGroup { table, identity, inverse })
    }

    pub fn cyclic(n: usize) -> Result<Self> {
        Self::from_table((0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect())
    }

    /// `G × K` with `(g, k)` at index `g * |K| + k`.
    pub fn direct_product(&self, other: &FiniteGroup) -> Result<Self> {
        let (n, m) = (self.order(), other.order());
        let table = (0..n * m)
            .map(|x| {
                (0..n * m)
                    .map(|y| self.table[x / m][y / m] * m + other.table[x % m][y % m])
                    .collect()
            })
            .collect();
        Self::from_table(table)
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }
}

/// `kG`: basis the group elements, `Δ(g) = g ⊗ g`, `ε(g) = 1`, `S(g) = g⁻¹`.
pub fn group_algebra(g: &FiniteGroup, field: Field) -> HopfAlgebra {
    let n = g.order();
    let e = |i| SparseVec::basis(field, n, i);
    let mult = LinMap::from_fn(field, vec![n, n], vec![n], |c| e(g.mul(c / n, c % n))).expect("dims");
    let unit = LinMap::from_vector(field, vec![n], e(g.identity())).expect("dims");
    let comult = LinMap::from_fn(field, vec![n], vec![n, n], |c| SparseVec::basis(field, n * n, c * n + c))
        .expect("dims");
    let counit = LinMap::from_fn(field, vec![n], vec![1], |_| SparseVec::basis(field, 1, 0)).expect("dims");
    let antipode = LinMap::from_fn(field, vec![n], vec![n], |c| e(g.inverse(c))).expect("dims");
    HopfAlgebra::new(
        Algebra::new(mult, unit).expect("dims"),
        Coalgebra::new(comult, counit).expect("dims"),
        antipode,
    )
    .expect("group algebra antipode is a permutation")
}

/// Basis indices of Sweedler's algebra.
pub mod h4 {
    pub const ONE: usize = 0;
    pub const G: usize = 1;
    pub const X: usize = 2;
    pub const GX: usize = 3;
}

/// Sweedler's Hopf algebra `H₄` with basis `{1, g, x, gx}`: `g² = 1`,
/// `x² = 0`, `xg = -gx`, `Δ(g) = g ⊗ g`, `Δ(x) = x ⊗ 1 + g ⊗ x`,
/// `ε(x) = 0`, `S(g) = g`, `S(x) = -gx`.
pub fn sweedler_h4(field: Field) -> Result<HopfAlgebra> {
    use h4::*;
    if field.characteristic() == 2 {
        return Err(Error::Input("Sweedler's algebra needs characteristic ≠ 2".into()));
    }
    let n = 4;
    // g^a x^b sits at index a + 2b
    let idx = |a: usize, b: usize| a + 2 * b;
    let sign = |negative: bool| if negative { field.from_i64(-1) } else { field.one() };
    let mult = LinMap::from_fn(field, vec![n, n], vec![n], |c| {
        let (i, j) = (c / n, c % n);
        let (a, b, a2, b2) = (i % 2, i / 2, j % 2, j / 2);
        // g^a x^b g^c x^d = (-1)^{bc} g^{a+c} x^{b+d}
        if b + b2 >= 2 {
            SparseVec::zero(n)
        } else {
            SparseVec::basis(field, n, idx((a + a2) % 2, b + b2)).scaled(&sign(b * a2 == 1))
        }
    })?;
    let unit = LinMap::from_vector(field, vec![n], SparseVec::basis(field, n, ONE))?;
    let one = field.one();
    let t = |i: usize, j: usize| i * n + j;
    let comult = LinMap::from_triples(
        field,
        vec![n],
        vec![n, n],
        [
            (t(ONE, ONE), ONE, one.clone()),
            (t(G, G), G, one.clone()),
            (t(X, ONE), X, one.clone()),
            (t(G, X), X, one.clone()),
            // Δ(gx) = gx ⊗ g + 1 ⊗ gx
            (t(GX, G), GX, one.clone()),
            (t(ONE, GX), GX, one.clone()),
        ],
    )?;
    let counit = LinMap::from_triples(field, vec![n], vec![1], [(0, ONE, one.clone()), (0, G, one.clone())])?;
    let antipode = LinMap::from_triples(
        field,
        vec![n],
        vec![n],
        [(ONE, ONE, one.clone()), (G, G, one.clone()), (GX, X, -&one), (X, GX, one)],
    )?;
    HopfAlgebra::new(Algebra::new(mult, unit)?, Coalgebra::new(comult, counit)?, antipode)
}

/// The smash product twisting `R: H* ⊗ A → A ⊗ H*`,
/// `R(φ ⊗ a) = a₍₀₎ ⊗ φ↼a₍₁₎`, with `B = H*` the dual Hopf algebra.
pub fn smash_twisting(ca: &ComoduleAlgebra) -> Result<TwistingData> {
    let h = ca.hopf();
    let dual = h.dual();
    let (na, nh) = (ca.algebra().dim(), h.dim());
    let f = h.field();
    // φ ⊗ a ↦ φ ⊗ a₀ ⊗ a₁ ↦ a₀ ⊗ φ ⊗ a₁ ↦ a₀ ⊗ φ↼a₁
    let r = LinMap::id(f, nh)
        .tensor(ca.coaction())?
        .then(&LinMap::permutation(f, &[nh, na, nh], &[1, 0, 2]))?
        .then(&LinMap::id(f, na).tensor(&h.dual_right_action())?)?;
    TwistingData::new(ca.algebra().clone(), dual.algebra().clone(), r)
}

/// `A # H*`, realized as the twisted product over [`smash_twisting`].
pub fn smash_product(ca: &ComoduleAlgebra) -> Result<TwistedProduct> {
    let t = smash_twisting(ca)?.certify()?;
    build_twisted_product(&t)
}

/// The double twisting `R: H ⊗ H* → H* ⊗ H`,
/// `R(h ⊗ φ) = h₁⇀φ↼S⁻¹(h₃) ⊗ h₂`, with `A = H*` and `B = H`.
pub fn double_twisting(h: &HopfAlgebra) -> Result<TwistingData> {
    let n = h.dim();
    let f = h.field();
    let id = h.id();
    // h ⊗ φ ↦ h₁ ⊗ h₂ ⊗ h₃ ⊗ φ ↦ h₁ ⊗ φ ⊗ h₃ ⊗ h₂
    let r = h
        .coalgebra()
        .comult_twice()
        .tensor(&id)?
        .then(&LinMap::permutation(f, &[n, n, n, n], &[0, 3, 2, 1]))?
        .then(&id.tensor(&id)?.tensor(h.antipode_inv())?.tensor(&id)?)?
        .then(&h.dual_left_action().tensor(&id)?.tensor(&id)?)?
        .then(&h.dual_right_action().tensor(&id)?)?;
    TwistingData::new(h.dual().algebra().clone(), h.algebra().clone(), r)
}

/// `D(H)` on `H* ⊗ H` with
/// `(φ ⊗ h)(φ' ⊗ h') = φ (h₁⇀φ'↼S⁻¹(h₃)) ⊗ h₂h'` and unit `ε ⊗ 1`,
/// evaluated directly on structure constants.
pub fn drinfeld_double(h: &HopfAlgebra) -> Result<Algebra> {
    let n = h.dim();
    let f = h.field();
    let alg = h.algebra();
    let d = n * n;
    let e = |i| SparseVec::basis(f, n, i);
    let delta2 = h.coalgebra().comult_twice();
    // coefficient of e^y in e^i e^x is the coefficient of e_i ⊗ e_x in Δ(e_y)
    let dual_mult = h.comult().transpose();
    // (e_a⇀e^k↼S⁻¹(e_c))(e_x) = e^k(S⁻¹(e_c) e_x e_a)
    let sandwich = |c: usize, x: usize, a: usize| -> SparseVec {
        let left = alg.product(h.antipode_inv().column(c), &e(x));
        alg.product(&left, &e(a))
    };
    let mult = LinMap::from_fn(f, vec![d, d], vec![d], |col| {
        let (left, right) = (col / d, col % d);
        let (i, j) = (left / n, left % n);
        let (k, l) = (right / n, right % n);
        let mut acc = SparseVec::zero(d);
        for (abc, coeff) in delta2.column(j).iter() {
            let (a, b, c) = (abc / (n * n), (abc / n) % n, abc % n);
            let hh = alg.basis_product(b, l);
            let mut phi = SparseVec::zero(n);
            for x in 0..n {
                if let Some(psi_x) = sandwich(c, x, a).get(k) {
                    phi = phi.add(&dual_mult.column(i * n + x).scaled(psi_x));
                }
            }
            acc = acc.add(&phi.kron(hh).scaled(coeff));
        }
        acc
    })?;
    let eps = h.counit().transpose();
    let unit = LinMap::from_vector(f, vec![d], eps.column(0).kron(alg.one()))?;
    Algebra::new(mult, unit)
}

/// An invertible `r = r¹ ⊗ r² ∈ H ⊗ H` with inverse `u¹ ⊗ u²`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SqtElement {
    hopf: HopfAlgebra,
    r: SparseVec,
    r_inv: SparseVec,
}

impl SqtElement {
    /// Computes `r⁻¹` in the algebra `H ⊗ H`; fails if `r` is not a unit.
    pub fn new(hopf: HopfAlgebra, r: SparseVec) -> Result<Self> {
        let n = hopf.dim();
        if r.dim() != n * n {
            return Err(Error::Dimension(format!("r has dim {}, expected {}", r.dim(), n * n)));
        }
        let hh = hopf.algebra().tensor_product(hopf.algebra())?;
        let left = hh.left_multiplication(&r);
        let inv = left.invert().map_err(|_| Error::Input("r is not invertible in H ⊗ H".into()))?;
        let r_inv = inv.apply(hh.one())?;
        if &hh.product(&r_inv, &r) != hh.one() {
            return Err(Error::Input("r has no two-sided inverse".into()));
        }
        Ok(SqtElement { hopf, r, r_inv })
    }

    /// `r` from `(i, j, coefficient)` terms of `Σ c e_i ⊗ e_j`.
    pub fn from_terms(hopf: HopfAlgebra, terms: impl IntoIterator<Item = (usize, usize, Scalar)>) -> Result<Self> {
        let n = hopf.dim();
        let r = SparseVec::from_entries(n * n, terms.into_iter().map(|(i, j, s)| (i * n + j, s)))?;
        SqtElement::new(hopf, r)
    }

    /// `r = 1 ⊗ 1`.
    pub fn trivial(hopf: HopfAlgebra) -> Self {
        let r = hopf.algebra().one().kron(hopf.algebra().one());
        SqtElement::new(hopf, r).expect("1 ⊗ 1 is invertible")
    }

    pub fn hopf(&self) -> &HopfAlgebra {
        &self.hopf
    }

    pub fn r(&self) -> &SparseVec {
        &self.r
    }

    pub fn r_inv(&self) -> &SparseVec {
        &self.r_inv
    }

    /// `r` as a map `k → H ⊗ H`.
    pub fn r_map(&self) -> LinMap {
        let n = self.hopf.dim();
        LinMap::from_vector(self.hopf.field(), vec![n, n], self.r.clone()).expect("dims")
    }

    /// `r⁻¹` as a map `k → H ⊗ H`.
    pub fn r_inv_map(&self) -> LinMap {
        let n = self.hopf.dim();
        LinMap::from_vector(self.hopf.field(), vec![n, n], self.r_inv.clone()).expect("dims")
    }
}

/// `½(1⊗1 + 1⊗g + g⊗1 − g⊗g)` on `kC₂` (basis `{1, g}`).
pub fn kc2_triangular_terms(field: Field) -> Result<Vec<(usize, usize, Scalar)>> {
    let half = field.ratio(1, 2)?;
    let neg_half = field.ratio(-1, 2)?;
    Ok(vec![(0, 0, half.clone()), (0, 1, half.clone()), (1, 0, half), (1, 1, neg_half)])
}

/// The quasitriangular family on `H₄`:
/// `½(1⊗1 + 1⊗g + g⊗1 − g⊗g) + (α/2)(x⊗x − x⊗gx + gx⊗x + gx⊗gx)`.
pub fn h4_quasitriangular_terms(field: Field, alpha: &Scalar) -> Result<Vec<(usize, usize, Scalar)>> {
    use h4::*;
    let half = field.ratio(1, 2)?;
    let a2 = alpha * &half;
    let mut terms = vec![
        (ONE, ONE, half.clone()),
        (ONE, G, half.clone()),
        (G, ONE, half.clone()),
        (G, G, -&half),
    ];
    if !a2.is_zero() {
        terms.extend([(X, X, a2.clone()), (X, GX, -&a2), (GX, X, a2.clone()), (GX, GX, a2)]);
    }
    Ok(terms)
}
