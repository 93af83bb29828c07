//! The convolution algebra `Hom(C, E)` and operator-valued maps.

use crate::error::{Error, Result};
use crate::linmap::{solve_linear, LinMap, SparseVec};
use crate::scalar::Field;

use super::{Algebra, Coalgebra};

/// `(f * g)(h) = f(h₁) g(h₂)`.
pub fn convolution(f: &LinMap, g: &LinMap, coalgebra: &Coalgebra, target: &Algebra) -> Result<LinMap> {
    coalgebra.comult().then(&f.tensor(g)?)?.then(target.mult())
}

/// `η_E ∘ ε_C`, the unit of the convolution algebra.
pub fn convolution_unit(coalgebra: &Coalgebra, target: &Algebra) -> LinMap {
    coalgebra.counit().then(target.unit()).expect("dims")
}

/// Two-sided inverse of `f: C → E` in the convolution algebra, found by an
/// exact linear solve for `f * g = η ε` and then checked on both sides.
pub fn convolution_inverse(f: &LinMap, coalgebra: &Coalgebra, target: &Algebra) -> Result<LinMap> {
    let field = f.field();
    let (nc, ne) = (coalgebra.dim(), target.dim());
    if f.dom_dim() != nc || f.cod_dim() != ne {
        return Err(Error::Dimension(format!("map is {}x{}, expected {ne}x{nc}", f.cod_dim(), f.dom_dim())));
    }
    // left multiplication by f(e_i), applied to each e_s
    let left: Vec<Vec<SparseVec>> = (0..nc)
        .map(|i| {
            (0..ne)
                .map(|s| target.product(f.column(i), &SparseVec::basis(field, ne, s)))
                .collect()
        })
        .collect();
    // unknown g[s, j] at j*ne + s; equation (t, k) at k*ne + t
    let mut triples = Vec::new();
    for (ij, k, coeff) in coalgebra.comult().triples() {
        let (i, j) = (ij / nc, ij % nc);
        for (s, prod) in left[i].iter().enumerate() {
            for (t, v) in prod.iter() {
                triples.push((k * ne + t, j * ne + s, coeff * v));
            }
        }
    }
    let n = nc * ne;
    let system = LinMap::from_triples(field, vec![n], vec![n], triples)?;
    let unit = convolution_unit(coalgebra, target);
    let rhs = SparseVec::from_entries(
        n,
        unit.triples().map(|(t, k, s)| (k * ne + t, s.clone())),
    )?;
    let solution = match solve_linear(&system, &rhs) {
        Ok(x) => x,
        Err(Error::Inconsistent) => {
            return Err(Error::NotConvolutionInvertible("no right inverse exists".into()))
        }
        Err(e) => return Err(e),
    };
    let g = LinMap::from_triples(
        field,
        f.dom_factors().to_vec(),
        f.cod_factors().to_vec(),
        solution.iter().map(|(u, s)| (u % ne, u / ne, s.clone())),
    )?;
    if !convolution(f, &g, coalgebra, target)?.entries_eq(&unit) {
        return Err(Error::Internal {
            stage: "convolution inverse".into(),
            report: Box::new(crate::Report::new("solver returned a non-solution")),
        });
    }
    if !convolution(&g, f, coalgebra, target)?.entries_eq(&unit) {
        return Err(Error::NotConvolutionInvertible("right inverse is not a left inverse".into()));
    }
    Ok(g)
}

/// `End(V)` with basis of matrix units `E_ij` at index `i*n + j` and
/// multiplication by composition, `E_ij E_kl = δ_jk E_il`.
pub fn end_algebra(field: Field, n: usize) -> Algebra {
    let d = n * n;
    let mult = LinMap::from_fn(field, vec![d, d], vec![d], |c| {
        let (x, y) = (c / d, c % d);
        let (i, j) = (x / n, x % n);
        let (k, l) = (y / n, y % n);
        if j == k {
            SparseVec::basis(field, d, i * n + l)
        } else {
            SparseVec::zero(d)
        }
    })
    .expect("dims");
    let one = SparseVec::from_entries(d, (0..n).map(|i| (i * n + i, field.one()))).expect("dims");
    Algebra::new(mult, LinMap::from_vector(field, vec![d], one).expect("dims")).expect("dims")
}

/// Converts an action `H ⊗ A → A`, `h ⊗ a ↦ ν(h)(a)`, into `ν: H → End(A)`.
pub fn action_to_end(action: &LinMap, h_dim: usize, a_dim: usize) -> Result<LinMap> {
    if action.dom_dim() != h_dim * a_dim || action.cod_dim() != a_dim {
        return Err(Error::Dimension("action must be H⊗A → A".into()));
    }
    let triples = action
        .triples()
        .map(|(b, ha, s)| (b * a_dim + ha % a_dim, ha / a_dim, s.clone()));
    LinMap::from_triples(action.field(), vec![h_dim], vec![a_dim * a_dim], triples)
}

/// Inverse of [`action_to_end`].
pub fn end_to_action(nu: &LinMap, h_dim: usize, a_dim: usize) -> Result<LinMap> {
    if nu.dom_dim() != h_dim || nu.cod_dim() != a_dim * a_dim {
        return Err(Error::Dimension("operator-valued map must be H → End(A)".into()));
    }
    let triples = nu
        .triples()
        .map(|(ba, h, s)| (ba / a_dim, h * a_dim + ba % a_dim, s.clone()));
    LinMap::from_triples(nu.field(), vec![h_dim, a_dim], vec![a_dim], triples)
}
