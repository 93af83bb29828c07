//! Dimension-aware exact linear maps.
//!
//! Every structure map (multiplication, comultiplication, antipode, twisting
//! map, coaction, ...) is a [`LinMap`]: a column-sparse matrix together with
//! the tensor-factor dimensions of its domain and codomain.
//!
//! Tensor products use one global basis order: lexicographic with the left
//! factor major, so `e_i ⊗ f_j` of `V ⊗ W` sits at index `i * dim W + j`.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar};

/// Sparse vector with sorted indices and no stored zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SparseVec {
    dim: usize,
    entries: Vec<(usize, Scalar)>,
}

impl SparseVec {
    pub fn zero(dim: usize) -> Self {
        SparseVec { dim, entries: Vec::new() }
    }

    pub fn basis(field: Field, dim: usize, i: usize) -> Self {
        assert!(i < dim, "basis index {i} out of range {dim}");
        SparseVec { dim, entries: vec![(i, field.one())] }
    }

    /// Builds a vector from possibly repeated, unordered entries; repeated
    /// indices are summed.
    pub fn from_entries(dim: usize, entries: impl IntoIterator<Item = (usize, Scalar)>) -> Result<Self> {
        let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (i, s) in entries {
            if i >= dim {
                return Err(Error::Dimension(format!("index {i} out of range {dim}")));
            }
            accumulate(&mut acc, i, &s);
        }
        Ok(Self::from_accumulator(dim, acc))
    }

    fn from_accumulator(dim: usize, acc: BTreeMap<usize, Scalar>) -> Self {
        let entries = acc.into_iter().filter(|(_, s)| !s.is_zero()).collect();
        SparseVec { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Scalar)> {
        self.entries.iter().map(|(i, s)| (*i, s))
    }

    pub fn get(&self, i: usize) -> Option<&Scalar> {
        self.entries
            .binary_search_by_key(&i, |(j, _)| *j)
            .ok()
            .map(|k| &self.entries[k].1)
    }

    pub fn scaled(&self, c: &Scalar) -> SparseVec {
        if c.is_zero() {
            return SparseVec::zero(self.dim);
        }
        SparseVec { dim: self.dim, entries: self.entries.iter().map(|(i, s)| (*i, s * c)).collect() }
    }

    pub fn add(&self, other: &SparseVec) -> SparseVec {
        assert_eq!(self.dim, other.dim, "vector dimension mismatch");
        let mut acc: BTreeMap<usize, Scalar> = self.entries.iter().cloned().collect();
        for (i, s) in &other.entries {
            accumulate(&mut acc, *i, s);
        }
        Self::from_accumulator(self.dim, acc)
    }

    pub fn sub(&self, other: &SparseVec) -> SparseVec {
        let neg = SparseVec { dim: other.dim, entries: other.entries.iter().map(|(i, s)| (*i, -s)).collect() };
        self.add(&neg)
    }

    /// Kronecker product, `self` index major.
    pub fn kron(&self, other: &SparseVec) -> SparseVec {
        let mut entries = Vec::with_capacity(self.entries.len() * other.entries.len());
        for (i, a) in &self.entries {
            for (j, b) in &other.entries {
                entries.push((i * other.dim + j, a * b));
            }
        }
        SparseVec { dim: self.dim * other.dim, entries }
    }

    /// Dense listing, filling gaps with `field` zeros.
    pub fn to_dense(&self, field: Field) -> Vec<Scalar> {
        let mut out = vec![field.zero(); self.dim];
        for (i, s) in &self.entries {
            out[*i] = s.clone();
        }
        out
    }
}

impl fmt::Display for SparseVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return write!(f, "0");
        }
        for (k, (i, s)) in self.entries.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({s})e{i}")?;
        }
        Ok(())
    }
}

fn accumulate(acc: &mut BTreeMap<usize, Scalar>, i: usize, s: &Scalar) {
    match acc.get_mut(&i) {
        Some(v) => *v += s,
        None => {
            acc.insert(i, s.clone());
        }
    }
}

/// Splits a flat index into a multi-index over `factors` (left factor major).
pub fn unravel(mut index: usize, factors: &[usize]) -> Vec<usize> {
    let mut out = vec![0; factors.len()];
    for (slot, d) in out.iter_mut().zip(factors).rev() {
        *slot = index % d;
        index /= d;
    }
    out
}

/// Inverse of [`unravel`].
pub fn ravel(multi: &[usize], factors: &[usize]) -> usize {
    multi.iter().zip(factors).fold(0, |acc, (i, d)| acc * d + i)
}

/// An exact linear map `⊗ dom_factors → ⊗ cod_factors`, stored by columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinMap {
    field: Field,
    dom: Vec<usize>,
    cod: Vec<usize>,
    cols: Vec<SparseVec>,
}

const PAR_THRESHOLD: usize = 256;

fn check_factors(factors: &[usize]) -> Result<usize> {
    if factors.is_empty() || factors.contains(&0) {
        return Err(Error::Dimension(format!("factor list {factors:?} must be nonempty and positive")));
    }
    Ok(factors.iter().product())
}

impl LinMap {
    pub fn from_columns(field: Field, dom: Vec<usize>, cod: Vec<usize>, cols: Vec<SparseVec>) -> Result<Self> {
        let n = check_factors(&dom)?;
        let m = check_factors(&cod)?;
        if cols.len() != n {
            return Err(Error::Dimension(format!("{} columns for domain of dimension {n}", cols.len())));
        }
        for c in &cols {
            if c.dim() != m {
                return Err(Error::Dimension(format!("column of length {} for codomain {m}", c.dim())));
            }
            if let Some((_, s)) = c.entries.first() {
                if s.field() != field {
                    return Err(Error::FieldMismatch { left: field, right: s.field() });
                }
            }
        }
        Ok(LinMap { field, dom, cod, cols })
    }

    /// Builds a map from `(row, col, value)` triples; repeated positions are summed.
    pub fn from_triples(
        field: Field,
        dom: Vec<usize>,
        cod: Vec<usize>,
        triples: impl IntoIterator<Item = (usize, usize, Scalar)>,
    ) -> Result<Self> {
        let n = check_factors(&dom)?;
        let m = check_factors(&cod)?;
        let mut per_col: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); n];
        for (r, c, s) in triples {
            if r >= m || c >= n {
                return Err(Error::Dimension(format!("entry ({r}, {c}) outside {m}x{n}")));
            }
            if s.field() != field {
                return Err(Error::FieldMismatch { left: field, right: s.field() });
            }
            per_col[c].push((r, s));
        }
        let cols = per_col
            .into_iter()
            .map(|e| SparseVec::from_entries(m, e))
            .collect::<Result<Vec<_>>>()?;
        Self::from_columns(field, dom, cod, cols)
    }

    /// Builds a map column by column.
    pub fn from_fn(
        field: Field,
        dom: Vec<usize>,
        cod: Vec<usize>,
        mut column: impl FnMut(usize) -> SparseVec,
    ) -> Result<Self> {
        let n = check_factors(&dom)?;
        let cols = (0..n).map(&mut column).collect();
        Self::from_columns(field, dom, cod, cols)
    }

    pub fn from_dense(field: Field, dom: Vec<usize>, cod: Vec<usize>, rows: &[Vec<Scalar>]) -> Result<Self> {
        let triples = rows
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().enumerate().map(move |(c, s)| (r, c, s.clone())));
        let m = check_factors(&cod)?;
        let n = check_factors(&dom)?;
        if rows.len() != m || rows.iter().any(|r| r.len() != n) {
            return Err(Error::Dimension(format!("dense matrix is not {m}x{n}")));
        }
        Self::from_triples(field, dom, cod, triples)
    }

    /// The map `k → ⊗ cod` sending 1 to `v`.
    pub fn from_vector(field: Field, cod: Vec<usize>, v: SparseVec) -> Result<Self> {
        Self::from_columns(field, vec![1], cod, vec![v])
    }

    pub fn zero(field: Field, dom: Vec<usize>, cod: Vec<usize>) -> Result<Self> {
        let n = check_factors(&dom)?;
        let m = check_factors(&cod)?;
        Ok(LinMap { field, dom, cod, cols: vec![SparseVec::zero(m); n] })
    }

    pub fn identity(field: Field, factors: Vec<usize>) -> Self {
        let n: usize = factors.iter().product();
        assert!(n > 0, "identity on empty factor list");
        let cols = (0..n).map(|i| SparseVec::basis(field, n, i)).collect();
        LinMap { field, dom: factors.clone(), cod: factors, cols }
    }

    pub fn id(field: Field, n: usize) -> Self {
        Self::identity(field, vec![n])
    }

    /// The vector `Σ_i e_i ⊗ e_i` as a map `k → V ⊗ V`; with `V* ` on the
    /// right this is the canonical element `Σ e_i ⊗ e^i`.
    pub fn identity_vector(field: Field, n: usize) -> Self {
        let v = SparseVec { dim: n * n, entries: (0..n).map(|i| (i * n + i, field.one())).collect() };
        LinMap { field, dom: vec![1], cod: vec![n, n], cols: vec![v] }
    }

    /// `τ: V⊗W → W⊗V`, `e_i ⊗ f_j ↦ f_j ⊗ e_i`.
    pub fn flip(field: Field, m: usize, n: usize) -> Self {
        Self::permutation(field, &[m, n], &[1, 0])
    }

    /// Reorders tensor factors: output factor `i` is input factor `perm[i]`.
    pub fn permutation(field: Field, factors: &[usize], perm: &[usize]) -> Self {
        assert_eq!(factors.len(), perm.len(), "permutation length");
        let mut seen = vec![false; perm.len()];
        for &p in perm {
            assert!(!seen[p], "not a permutation: {perm:?}");
            seen[p] = true;
        }
        let out_factors: Vec<usize> = perm.iter().map(|&p| factors[p]).collect();
        let n: usize = factors.iter().product();
        let cols = (0..n)
            .map(|c| {
                let x = unravel(c, factors);
                let y: Vec<usize> = perm.iter().map(|&p| x[p]).collect();
                SparseVec::basis(field, n, ravel(&y, &out_factors))
            })
            .collect();
        LinMap { field, dom: factors.to_vec(), cod: out_factors, cols }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dom_factors(&self) -> &[usize] {
        &self.dom
    }

    pub fn cod_factors(&self) -> &[usize] {
        &self.cod
    }

    pub fn dom_dim(&self) -> usize {
        self.cols.len()
    }

    pub fn cod_dim(&self) -> usize {
        self.cod.iter().product()
    }

    pub fn column(&self, c: usize) -> &SparseVec {
        &self.cols[c]
    }

    pub fn columns(&self) -> &[SparseVec] {
        &self.cols
    }

    pub fn entry(&self, r: usize, c: usize) -> Scalar {
        self.cols[c].get(r).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// Nonzero entries as `(row, col, value)`, column-major.
    pub fn triples(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> {
        self.cols.iter().enumerate().flat_map(|(c, v)| v.iter().map(move |(r, s)| (r, c, s)))
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(SparseVec::nnz).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(SparseVec::is_zero)
    }

    /// Same shape and same entries; factor lists are ignored.
    pub fn entries_eq(&self, other: &LinMap) -> bool {
        self.field == other.field && self.cod_dim() == other.cod_dim() && self.cols == other.cols
    }

    /// Same matrix, new factor lists with the same totals.
    pub fn reshape(&self, dom: Vec<usize>, cod: Vec<usize>) -> Result<Self> {
        let n = check_factors(&dom)?;
        let m = check_factors(&cod)?;
        if n != self.dom_dim() || m != self.cod_dim() {
            return Err(Error::Dimension(format!(
                "cannot reshape {}x{} map to {m}x{n}",
                self.cod_dim(),
                self.dom_dim()
            )));
        }
        Ok(LinMap { field: self.field, dom, cod, cols: self.cols.clone() })
    }

    pub fn apply(&self, v: &SparseVec) -> Result<SparseVec> {
        if v.dim() != self.dom_dim() {
            return Err(Error::Dimension(format!("vector of dim {} into map with domain {}", v.dim(), self.dom_dim())));
        }
        Ok(self.apply_unchecked(v))
    }

    fn apply_unchecked(&self, v: &SparseVec) -> SparseVec {
        let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (k, a) in v.iter() {
            for (r, b) in self.cols[k].iter() {
                accumulate(&mut acc, r, &(a * b));
            }
        }
        SparseVec::from_accumulator(self.cod_dim(), acc)
    }

    fn same_field(&self, other: &LinMap) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch { left: self.field, right: other.field });
        }
        Ok(())
    }

    /// `self ∘ g`.
    pub fn compose(&self, g: &LinMap) -> Result<LinMap> {
        self.same_field(g)?;
        if g.cod_dim() != self.dom_dim() {
            return Err(Error::Dimension(format!(
                "cannot compose: inner codomain {:?} vs outer domain {:?}",
                g.cod, self.dom
            )));
        }
        let cols = if g.cols.len() >= PAR_THRESHOLD {
            g.cols.par_iter().map(|c| self.apply_unchecked(c)).collect()
        } else {
            g.cols.iter().map(|c| self.apply_unchecked(c)).collect()
        };
        Ok(LinMap { field: self.field, dom: g.dom.clone(), cod: self.cod.clone(), cols })
    }

    /// `f ∘ self`, for writing composites in data-flow order.
    pub fn then(&self, f: &LinMap) -> Result<LinMap> {
        f.compose(self)
    }

    /// Kronecker product `self ⊗ g` with concatenated factor lists.
    pub fn tensor(&self, g: &LinMap) -> Result<LinMap> {
        self.same_field(g)?;
        let mut cols = Vec::with_capacity(self.cols.len() * g.cols.len());
        for a in &self.cols {
            for b in &g.cols {
                cols.push(a.kron(b));
            }
        }
        let dom = self.dom.iter().chain(&g.dom).copied().collect();
        let cod = self.cod.iter().chain(&g.cod).copied().collect();
        Ok(LinMap { field: self.field, dom, cod, cols })
    }

    pub fn transpose(&self) -> LinMap {
        let m = self.cod_dim();
        let mut per_row: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); m];
        for (c, v) in self.cols.iter().enumerate() {
            for (r, s) in v.iter() {
                per_row[r].push((c, s.clone()));
            }
        }
        let n = self.dom_dim();
        let cols = per_row.into_iter().map(|entries| SparseVec { dim: n, entries }).collect();
        LinMap { field: self.field, dom: self.cod.clone(), cod: self.dom.clone(), cols }
    }

    pub fn add(&self, other: &LinMap) -> Result<LinMap> {
        self.same_field(other)?;
        if self.dom_dim() != other.dom_dim() || self.cod_dim() != other.cod_dim() {
            return Err(Error::Dimension("cannot add maps of different shapes".into()));
        }
        let cols = self.cols.iter().zip(&other.cols).map(|(a, b)| a.add(b)).collect();
        Ok(LinMap { field: self.field, dom: self.dom.clone(), cod: self.cod.clone(), cols })
    }

    pub fn scale(&self, c: &Scalar) -> LinMap {
        let cols = self.cols.iter().map(|v| v.scaled(c)).collect();
        LinMap { field: self.field, dom: self.dom.clone(), cod: self.cod.clone(), cols }
    }

    pub fn sub(&self, other: &LinMap) -> Result<LinMap> {
        self.add(&other.scale(&-self.field.one()))
    }

    fn dense_rows(&self) -> Vec<Vec<Scalar>> {
        let mut rows = vec![vec![self.field.zero(); self.dom_dim()]; self.cod_dim()];
        for (r, c, s) in self.triples() {
            rows[r][c] = s.clone();
        }
        rows
    }

    pub fn rank(&self) -> usize {
        let mut rows = self.dense_rows();
        let n = self.dom_dim();
        row_reduce(&mut rows, n).len()
    }

    /// Exact inverse by Gauss-Jordan elimination; domain and codomain factor
    /// lists are swapped.
    pub fn invert(&self) -> Result<LinMap> {
        let n = self.dom_dim();
        if self.cod_dim() != n {
            return Err(Error::Dimension(format!("cannot invert a {}x{n} map", self.cod_dim())));
        }
        let mut rows = self.dense_rows();
        for (i, row) in rows.iter_mut().enumerate() {
            row.extend((0..n).map(|j| if i == j { self.field.one() } else { self.field.zero() }));
        }
        let pivots = row_reduce(&mut rows, n);
        if pivots.len() < n {
            return Err(Error::NotInvertible { rank: pivots.len(), size: n });
        }
        let inv_rows: Vec<Vec<Scalar>> = rows.into_iter().map(|r| r[n..].to_vec()).collect();
        LinMap::from_dense(self.field, self.cod.clone(), self.dom.clone(), &inv_rows)
    }

    /// Rewrites the map in new bases. Each `P` has the new basis vectors as
    /// columns in old coordinates; the result is
    /// `(⊗ P_cod)⁻¹ ∘ self ∘ (⊗ P_dom)`.
    pub fn transport(&self, dom: &[&LinMap], cod: &[&LinMap]) -> Result<LinMap> {
        let fold = |ps: &[&LinMap]| -> Result<LinMap> {
            let mut it = ps.iter();
            let first = it.next().ok_or_else(|| Error::Dimension("empty basis list".into()))?;
            it.try_fold((*first).clone(), |acc, p| acc.tensor(p))
        };
        let p_dom = fold(dom)?;
        let p_cod_inv = fold(cod)?.invert()?;
        let out = p_cod_inv.compose(&self.compose(&p_dom)?)?;
        out.reshape(self.dom.clone(), self.cod.clone())
    }

    /// Index of the first column where the two maps differ, plus the number
    /// of differing columns.
    pub fn first_difference(&self, other: &LinMap) -> Option<(usize, usize)> {
        let mut first = None;
        let mut count = 0;
        for (c, (a, b)) in self.cols.iter().zip(&other.cols).enumerate() {
            if a != b {
                first.get_or_insert(c);
                count += 1;
            }
        }
        first.map(|c| (c, count))
    }
}

/// Reduces `rows` to reduced row echelon form, pivoting only in the first
/// `pivot_cols` columns. Returns the pivot columns in order.
fn row_reduce(rows: &mut [Vec<Scalar>], pivot_cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..pivot_cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv().expect("pivot is nonzero");
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x = &*x - &(&factor * p);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Solves `a x = b` exactly. Free variables are set to zero, so for a
/// singular but consistent system one particular solution is returned.
pub fn solve_linear(a: &LinMap, b: &SparseVec) -> Result<SparseVec> {
    if b.dim() != a.cod_dim() {
        return Err(Error::Dimension(format!("right-hand side of dim {} for {} equations", b.dim(), a.cod_dim())));
    }
    if let Some((_, s)) = b.iter().next() {
        if s.field() != a.field() {
            return Err(Error::FieldMismatch { left: a.field(), right: s.field() });
        }
    }
    let n = a.dom_dim();
    let mut rows = a.dense_rows();
    let rhs = b.to_dense(a.field());
    for (row, v) in rows.iter_mut().zip(rhs) {
        row.push(v);
    }
    let pivots = row_reduce(&mut rows, n);
    // a zero row with nonzero right-hand side
    if rows.iter().skip(pivots.len()).any(|row| !row[n].is_zero()) {
        return Err(Error::Inconsistent);
    }
    let entries = pivots.iter().enumerate().map(|(r, &c)| (c, rows[r][n].clone()));
    SparseVec::from_entries(n, entries)
}

/// Tensor product of a nonempty list of maps over one field. Used for
/// composites whose shapes are fixed by construction.
pub(crate) fn tensor_all(maps: &[&LinMap]) -> LinMap {
    let (first, rest) = maps.split_first().expect("nonempty tensor");
    rest.iter().fold((*first).clone(), |acc, m| acc.tensor(m).expect("composite field"))
}

/// Composite in data-flow order: `chain(&[f, g, h]) = h ∘ g ∘ f`.
pub(crate) fn chain(maps: &[LinMap]) -> LinMap {
    let (first, rest) = maps.split_first().expect("nonempty chain");
    rest.iter().fold(first.clone(), |acc, m| acc.then(m).expect("composite dimensions"))
}
