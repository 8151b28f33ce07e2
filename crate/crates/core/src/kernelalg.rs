//! Exact sparse linear algebra: rank, kernels, and column reduction.
//!
//! Vectors are sorted `(index, value)` lists without stored zeros. Pivoting is
//! deterministic: columns are processed left to right and each vector is
//! pivoted on its lowest nonzero row index.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::field::Field;

/// Sparse vector, sorted by index, no stored zeros.
pub type SparseVec<F> = Vec<(usize, <F as Field>::Elem)>;

const NO_PIVOT: u32 = u32::MAX;

/// `a + c * b`.
pub fn add_scaled<F: Field>(field: &F, a: &[(usize, F::Elem)], c: &F::Elem, b: &[(usize, F::Elem)]) -> SparseVec<F> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => {
                out.push(a[i].clone());
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push((b[j].0, field.mul(c, &b[j].1)));
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                let v = field.add(&a[i].1, &field.mul(c, &b[j].1));
                if !field.is_zero(&v) {
                    out.push((a[i].0, v));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    for (k, v) in &b[j..] {
        out.push((*k, field.mul(c, v)));
    }
    out
}

pub fn scale<F: Field>(field: &F, c: &F::Elem, v: &[(usize, F::Elem)]) -> SparseVec<F> {
    if field.is_zero(c) {
        return Vec::new();
    }
    v.iter().map(|(k, x)| (*k, field.mul(c, x))).collect()
}

/// Sorts by index and merges duplicates, dropping zeros.
pub fn normalize<F: Field>(field: &F, mut v: Vec<(usize, F::Elem)>) -> SparseVec<F> {
    v.sort_by_key(|e| e.0);
    let mut out: SparseVec<F> = Vec::with_capacity(v.len());
    for (k, x) in v {
        match out.last_mut() {
            Some(last) if last.0 == k => last.1 = field.add(&last.1, &x),
            _ => out.push((k, x)),
        }
    }
    out.retain(|(_, x)| !field.is_zero(x));
    out
}

pub fn unit_vec<F: Field>(field: &F, k: usize) -> SparseVec<F> {
    vec![(k, field.one())]
}

/// Tuning knobs for the dense fallback.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LinAlgConfig {
    /// Switch to dense elimination when `nnz / (rows * cols)` exceeds this.
    pub dense_threshold: f64,
}

impl Default for LinAlgConfig {
    fn default() -> Self {
        Self { dense_threshold: 0.25 }
    }
}

/// Column-major sparse matrix over a field.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseMatrix<F: Field> {
    rows: usize,
    cols: usize,
    columns: Vec<SparseVec<F>>,
}

impl<F: Field> SparseMatrix<F> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Self { rows, cols, columns: vec![Vec::new(); cols] }
    }

    pub fn identity(field: &F, n: usize) -> Self {
        Self { rows: n, cols: n, columns: (0..n).map(|i| unit_vec(field, i)).collect() }
    }

    /// Builds from `(row, col) -> value`; zero values are dropped.
    pub fn from_entries(field: &F, rows: usize, cols: usize, entries: impl IntoIterator<Item = ((usize, usize), F::Elem)>) -> Result<Self> {
        let mut columns: Vec<Vec<(usize, F::Elem)>> = vec![Vec::new(); cols];
        for ((r, c), v) in entries {
            if r >= rows || c >= cols {
                return Err(Error::InvalidPresentation(format!("entry ({r}, {c}) outside a {rows}x{cols} matrix")));
            }
            columns[c].push((r, v));
        }
        let columns = columns.into_iter().map(|c| normalize(field, c)).collect();
        Ok(Self { rows, cols, columns })
    }

    /// Builds from a row-major table of integers.
    pub fn from_rows_i64(field: &F, table: &[Vec<i64>]) -> Self {
        let rows = table.len();
        let cols = table.first().map_or(0, |r| r.len());
        let entries = table
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().enumerate().map(move |(c, v)| ((r, c), *v)))
            .map(|(rc, v)| (rc, field.from_i64(v)));
        Self::from_entries(field, rows, cols, entries).expect("table is rectangular")
    }

    /// Columns must already be normalized sparse vectors with indices `< rows`.
    pub fn from_columns(rows: usize, columns: Vec<SparseVec<F>>) -> Self {
        debug_assert!(columns.iter().all(|c| c.iter().all(|(r, _)| *r < rows)));
        Self { rows, cols: columns.len(), columns }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, c: usize) -> &SparseVec<F> {
        &self.columns[c]
    }

    pub fn columns(&self) -> &[SparseVec<F>] {
        &self.columns
    }

    pub fn into_columns(self) -> Vec<SparseVec<F>> {
        self.columns
    }

    pub fn get(&self, field: &F, r: usize, c: usize) -> F::Elem {
        self.columns[c]
            .binary_search_by_key(&r, |e| e.0)
            .map(|i| self.columns[c][i].1.clone())
            .unwrap_or_else(|_| field.zero())
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn density(&self) -> f64 {
        if self.rows == 0 || self.cols == 0 {
            0.0
        } else {
            self.nnz() as f64 / (self.rows as f64 * self.cols as f64)
        }
    }

    pub fn entries(&self) -> BTreeMap<(usize, usize), F::Elem> {
        let mut out = BTreeMap::new();
        for (c, col) in self.columns.iter().enumerate() {
            for (r, v) in col {
                out.insert((*r, c), v.clone());
            }
        }
        out
    }

    pub fn mul_vec(&self, field: &F, v: &[(usize, F::Elem)]) -> SparseVec<F> {
        let mut acc = Vec::new();
        for (c, x) in v {
            acc = add_scaled(field, &acc, x, &self.columns[*c]);
        }
        acc
    }

    pub fn mul(&self, field: &F, other: &SparseMatrix<F>) -> SparseMatrix<F> {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let columns = other.columns.iter().map(|c| self.mul_vec(field, c)).collect();
        SparseMatrix { rows: self.rows, cols: other.cols, columns }
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    pub fn rank(&self, field: &F) -> usize {
        self.rank_with(field, &LinAlgConfig::default())
    }

    pub fn rank_with(&self, field: &F, cfg: &LinAlgConfig) -> usize {
        if self.density() > cfg.dense_threshold {
            return dense::rank(field, self);
        }
        let mut ech = Echelon::new(field.clone(), self.rows, false);
        for col in &self.columns {
            ech.insert(col.clone(), Vec::new());
        }
        ech.rank()
    }

    /// Basis of the right kernel, one sparse vector per basis element.
    pub fn kernel_basis(&self, field: &F) -> Vec<SparseVec<F>> {
        self.kernel_basis_with(field, &LinAlgConfig::default())
    }

    pub fn kernel_basis_with(&self, field: &F, cfg: &LinAlgConfig) -> Vec<SparseVec<F>> {
        if self.density() > cfg.dense_threshold {
            return dense::kernel(field, self);
        }
        let mut ech = Echelon::new(field.clone(), self.rows, true);
        let mut out = Vec::new();
        for (j, col) in self.columns.iter().enumerate() {
            if let Some(rel) = ech.insert(col.clone(), unit_vec(field, j)) {
                out.push(rel);
            }
        }
        out
    }
}

/// Incrementally built echelon basis of a subspace.
///
/// Every stored vector has leading entry `1` at its pivot row and no entries
/// above it. Optional tags record each stored vector as a combination of the
/// inputs, which is how kernels and coordinates are extracted.
#[derive(Clone, Debug)]
pub struct Echelon<F: Field> {
    field: F,
    pivot_slot: Vec<u32>,
    rows: Vec<SparseVec<F>>,
    tags: Vec<SparseVec<F>>,
    track: bool,
}

impl<F: Field> Echelon<F> {
    pub fn new(field: F, dim: usize, track: bool) -> Self {
        Self { field, pivot_slot: vec![NO_PIVOT; dim], rows: Vec::new(), tags: Vec::new(), track }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.pivot_slot.len()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, r: usize) -> bool {
        self.pivot_slot[r] != NO_PIVOT
    }

    pub fn stored(&self) -> &[SparseVec<F>] {
        &self.rows
    }

    pub fn stored_tags(&self) -> &[SparseVec<F>] {
        &self.tags
    }

    /// Head-reduces `v`; if it survives it is stored and `None` is returned,
    /// otherwise the accumulated tag (a relation among the inputs) is returned.
    pub fn insert(&mut self, v: SparseVec<F>, tag: SparseVec<F>) -> Option<SparseVec<F>> {
        let (v, tag) = self.reduce_head(v, tag);
        match v.first() {
            None => Some(tag),
            Some((r, lead)) => {
                let r = *r;
                let inv = self.field.inv(lead).expect("nonzero lead");
                let v = scale(&self.field, &inv, &v);
                let tag = if self.track { scale(&self.field, &inv, &tag) } else { Vec::new() };
                self.pivot_slot[r] = self.rows.len() as u32;
                self.rows.push(v);
                self.tags.push(tag);
                None
            }
        }
    }

    /// Inserts and reports whether `v` enlarged the span.
    pub fn add(&mut self, v: SparseVec<F>) -> bool {
        self.insert(v, Vec::new()).is_none()
    }

    fn reduce_head(&self, mut v: SparseVec<F>, mut tag: SparseVec<F>) -> (SparseVec<F>, SparseVec<F>) {
        while let Some((r, c)) = v.first() {
            let slot = self.pivot_slot[*r];
            if slot == NO_PIVOT {
                break;
            }
            let m = self.field.neg(c);
            let s = slot as usize;
            v = add_scaled(&self.field, &v, &m, &self.rows[s]);
            if self.track {
                tag = add_scaled(&self.field, &tag, &m, &self.tags[s]);
            }
        }
        (v, tag)
    }

    /// Eliminates every pivot row from `v`; returns the residue and the
    /// (negated) combination of stored vectors that was subtracted.
    pub fn reduce_full(&self, mut v: SparseVec<F>, mut tag: SparseVec<F>) -> (SparseVec<F>, SparseVec<F>) {
        let mut i = 0;
        while i < v.len() {
            let (r, c) = (&v[i].0, &v[i].1);
            let slot = self.pivot_slot[*r];
            if slot == NO_PIVOT {
                i += 1;
                continue;
            }
            let m = self.field.neg(c);
            let s = slot as usize;
            v = add_scaled(&self.field, &v, &m, &self.rows[s]);
            if self.track {
                tag = add_scaled(&self.field, &tag, &m, &self.tags[s]);
            }
        }
        (v, tag)
    }

    pub fn contains(&self, v: &SparseVec<F>) -> bool {
        self.reduce_head(v.clone(), Vec::new()).0.is_empty()
    }

    /// Indices of the non-pivot rows, in increasing order.
    pub fn free_rows(&self) -> Vec<usize> {
        (0..self.dim()).filter(|r| !self.is_pivot(*r)).collect()
    }
}

/// Record of invertible column operations: `reduced = original * transform`.
#[derive(Clone, Debug, PartialEq)]
pub struct ColumnReduction<F: Field> {
    pub reduced: SparseMatrix<F>,
    pub transform: SparseMatrix<F>,
    /// `(pivot column, pivot row)` in processing order.
    pub pivots: Vec<(usize, usize)>,
}

/// Clears each pivot column's pivot row from every other column.
///
/// The pivot of a column is its lowest nonzero row index at the moment it is
/// processed; the pivot column is scaled so that entry becomes `1`.
pub fn column_reduce_against<F: Field>(field: &F, m: &SparseMatrix<F>, pivot_cols: &[usize]) -> Result<ColumnReduction<F>> {
    let mut cols = m.columns.clone();
    let mut t: Vec<SparseVec<F>> = (0..m.cols).map(|j| unit_vec(field, j)).collect();
    let mut pivots = Vec::new();
    for &pc in pivot_cols {
        if pc >= m.cols {
            return Err(Error::NonUnitPivot { col: pc });
        }
        let (prow, lead) = match cols[pc].first() {
            Some((r, v)) => (*r, v.clone()),
            None => return Err(Error::NonUnitPivot { col: pc }),
        };
        let inv = field.inv(&lead).ok_or(Error::NonUnitPivot { col: pc })?;
        cols[pc] = scale(field, &inv, &cols[pc]);
        t[pc] = scale(field, &inv, &t[pc]);
        for j in 0..m.cols {
            if j == pc {
                continue;
            }
            let c = match cols[j].binary_search_by_key(&prow, |e| e.0) {
                Ok(i) => cols[j][i].1.clone(),
                Err(_) => continue,
            };
            let neg = field.neg(&c);
            cols[j] = add_scaled(field, &cols[j], &neg, &cols[pc]);
            t[j] = add_scaled(field, &t[j], &neg, &t[pc]);
        }
        pivots.push((pc, prow));
    }
    Ok(ColumnReduction {
        reduced: SparseMatrix::from_columns(m.rows, cols),
        transform: SparseMatrix::from_columns(m.cols, t),
        pivots,
    })
}

/// Dense elimination used above the density threshold.
mod dense {
    use super::*;

    fn to_dense<F: Field>(field: &F, m: &SparseMatrix<F>) -> Vec<Vec<F::Elem>> {
        m.columns
            .iter()
            .map(|c| {
                let mut d = vec![field.zero(); m.rows];
                for (r, v) in c {
                    d[*r] = v.clone();
                }
                d
            })
            .collect()
    }

    /// Column echelon with tracking; returns the relations (kernel vectors).
    fn eliminate<F: Field>(field: &F, m: &SparseMatrix<F>, track: bool) -> (usize, Vec<SparseVec<F>>) {
        let cols = to_dense(field, m);
        let mut pivot_of_row: Vec<Option<usize>> = vec![None; m.rows];
        let mut stored: Vec<(Vec<F::Elem>, Vec<F::Elem>)> = Vec::new();
        let mut kernel = Vec::new();
        for (j, mut v) in cols.into_iter().enumerate() {
            let mut tag = if track {
                let mut t = vec![field.zero(); m.cols];
                t[j] = field.one();
                t
            } else {
                Vec::new()
            };
            let mut lead = None;
            for r in 0..m.rows {
                if field.is_zero(&v[r]) {
                    continue;
                }
                match pivot_of_row[r] {
                    Some(s) => {
                        let c = field.neg(&v[r]);
                        let (pv, pt) = &stored[s];
                        for k in r..m.rows {
                            if !field.is_zero(&pv[k]) {
                                v[k] = field.add(&v[k], &field.mul(&c, &pv[k]));
                            }
                        }
                        if track {
                            for k in 0..m.cols {
                                if !field.is_zero(&pt[k]) {
                                    tag[k] = field.add(&tag[k], &field.mul(&c, &pt[k]));
                                }
                            }
                        }
                    }
                    None => {
                        lead = Some(r);
                        break;
                    }
                }
            }
            match lead {
                Some(r) => {
                    let inv = field.inv(&v[r]).expect("nonzero");
                    for x in v.iter_mut() {
                        *x = field.mul(x, &inv);
                    }
                    for x in tag.iter_mut() {
                        *x = field.mul(x, &inv);
                    }
                    pivot_of_row[r] = Some(stored.len());
                    stored.push((v, tag));
                }
                None => {
                    if track {
                        kernel.push(
                            tag.into_iter().enumerate().filter(|(_, x)| !field.is_zero(x)).collect(),
                        );
                    }
                }
            }
        }
        (stored.len(), kernel)
    }

    pub fn rank<F: Field>(field: &F, m: &SparseMatrix<F>) -> usize {
        eliminate(field, m, false).0
    }

    pub fn kernel<F: Field>(field: &F, m: &SparseMatrix<F>) -> Vec<SparseVec<F>> {
        eliminate(field, m, true).1
    }
}
