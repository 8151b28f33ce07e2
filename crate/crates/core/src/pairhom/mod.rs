//! `Tor_n(M, N)` and `Ext^n(M, N)` as graded vector spaces with the action of
//! the variables, enough to read off `μ_R`, `λ_R` and `𝔪`-power annihilation.
//!
//! Tor is the homology of `F_• ⊗ N` and Ext the cohomology of `Hom(F_•, N)`,
//! where `F_•` is the minimal resolution of `M`. In internal degree `d` the
//! chain groups are `⊕_j N_{d - a_j}` and `⊕_j N_{d + a_j}` respectively.

pub mod oracle;

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::gmod::{piece, Deg, FreeModule, GradedMap, GradedModule, Piece, Status};
use crate::kernelalg::{normalize, scale, unit_vec, Echelon, SparseMatrix, SparseVec};
use crate::monoring::Monomial;
use crate::resolve::{cached_resolution, Resolution, ResolveOptions};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HomKind {
    Tor,
    Ext,
}

impl HomKind {
    fn sign(self) -> Deg {
        match self {
            HomKind::Tor => -1,
            HomKind::Ext => 1,
        }
    }
}

/// One homological degree of Tor or Ext.
#[derive(Clone, Debug)]
pub struct HomologyModule<F: Field> {
    pub kind: HomKind,
    pub n: usize,
    /// Nonzero pieces only.
    pub dims: BTreeMap<Deg, usize>,
    /// Representative cycles in chain coordinates, a complement of the boundaries.
    pub reps: BTreeMap<Deg, Vec<SparseVec<F>>>,
    /// `action[d][i]` is multiplication by `x_i` from `H_d` to `H_{d+1}`.
    pub action: BTreeMap<Deg, Vec<SparseMatrix<F>>>,
    pub status: Status,
    /// Highest degree examined.
    pub top: Deg,
    field: F,
}

impl<F: Field> HomologyModule<F> {
    pub fn dim(&self, d: Deg) -> usize {
        self.dims.get(&d).copied().unwrap_or(0)
    }

    pub fn total_dim(&self) -> usize {
        self.dims.values().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dims.is_empty()
    }

    fn check_complete(&self) -> Result<()> {
        if !self.status.is_exact() && self.dim(self.top) > 0 {
            return Err(Error::PossiblyIncomplete(format!(
                "{:?}_{} has a nonzero piece at the window edge (degree {})",
                self.kind, self.n, self.top
            )));
        }
        Ok(())
    }

    /// Rank of `Σ_i x_i H_{d-1}` inside `H_d`.
    fn max_ideal_rank(&self, d: Deg) -> usize {
        let Some(mats) = self.action.get(&(d - 1)) else { return 0 };
        let mut e = Echelon::new(self.field.clone(), self.dim(d), false);
        for m in mats {
            for c in m.columns() {
                e.add(c.clone());
            }
        }
        e.rank()
    }
}

/// `μ_R(H) = Σ_d dim H_d - dim (𝔪H)_d`.
pub fn mu<F: Field>(h: &HomologyModule<F>) -> Result<usize> {
    h.check_complete()?;
    Ok(h.dims.iter().map(|(&d, &n)| n - h.max_ideal_rank(d)).sum())
}

/// `λ_R(H) = Σ_d dim H_d`.
pub fn length<F: Field>(h: &HomologyModule<F>) -> Result<usize> {
    h.check_complete()?;
    Ok(h.total_dim())
}

/// Least `h` with `𝔪^h H = 0`; `None` when not reached inside the computed range.
pub fn annihilator_power<F: Field>(h: &HomologyModule<F>) -> Result<Option<u32>> {
    h.check_complete()?;
    let mut current: BTreeMap<Deg, Vec<SparseVec<F>>> = h
        .dims
        .iter()
        .map(|(&d, &n)| (d, (0..n).map(|k| unit_vec(&h.field, k)).collect()))
        .collect();
    let limit = h.dims.len() as u32 + 1;
    let mut power = 0;
    while current.values().any(|v| !v.is_empty()) {
        if power > limit {
            return Ok(None);
        }
        let mut next = BTreeMap::new();
        for (&d, vs) in &current {
            let Some(mats) = h.action.get(&d) else { continue };
            let mut e = Echelon::new(h.field.clone(), h.dim(d + 1), false);
            for m in mats {
                for v in vs {
                    e.add(m.mul_vec(&h.field, v));
                }
            }
            if e.rank() > 0 {
                next.insert(d + 1, e.stored().to_vec());
            }
        }
        current = next;
        power += 1;
    }
    Ok(Some(power))
}

/// Cached multiplication maps on the pieces of `N`.
struct Actions<'a, F: Field> {
    module: &'a GradedModule<F>,
    pieces: HashMap<Deg, Arc<Piece<F>>>,
    mults: HashMap<(Deg, Monomial), Arc<Vec<SparseVec<F>>>>,
}

impl<'a, F: Field> Actions<'a, F> {
    fn new(module: &'a GradedModule<F>) -> Self {
        Self { module, pieces: HashMap::new(), mults: HashMap::new() }
    }

    fn in_range(&self, e: Deg) -> bool {
        match (self.module.min_degree(), self.module.top_degree()) {
            (None, _) => false,
            (Some(lo), Some(hi)) => lo <= e && e <= hi,
            (Some(lo), None) => lo <= e,
        }
    }

    fn piece(&mut self, e: Deg) -> Option<Arc<Piece<F>>> {
        if !self.in_range(e) {
            return None;
        }
        if let Some(p) = self.pieces.get(&e) {
            return Some(Arc::clone(p));
        }
        let p = piece(self.module, e, Deg::MAX).expect("unbounded window");
        self.pieces.insert(e, Arc::clone(&p));
        Some(p)
    }

    fn dim(&mut self, e: Deg) -> usize {
        self.piece(e).map_or(0, |p| p.dim())
    }

    /// Images of the basis of `N_e` under multiplication by `t`.
    fn mult(&mut self, e: Deg, t: &Monomial) -> Arc<Vec<SparseVec<F>>> {
        let key = (e, t.clone());
        if let Some(m) = self.mults.get(&key) {
            return Arc::clone(m);
        }
        let src = self.piece(e);
        let dst = self.piece(e + t.degree() as Deg);
        let images = match (src, dst) {
            (Some(s), Some(t_piece)) => (0..s.dim())
                .map(|k| {
                    let (g, m) = s.layout.locate(s.rep_row(k));
                    match t_piece.layout.index(g, &m.mul(t)) {
                        Some(idx) => t_piece.coords(vec![(idx, self.module.ring().field().one())]),
                        None => Vec::new(),
                    }
                })
                .collect(),
            (Some(s), None) => vec![Vec::new(); s.dim()],
            _ => Vec::new(),
        };
        let images = Arc::new(images);
        self.mults.insert(key, Arc::clone(&images));
        images
    }
}

/// Block structure of `⊕_j N_{d + sign·a_j}`.
struct Blocks {
    offsets: Vec<usize>,
    degs: Vec<Deg>,
}

impl Blocks {
    fn new<F: Field>(acts: &mut Actions<'_, F>, free: &FreeModule, d: Deg, sign: Deg) -> Self {
        let mut offsets = Vec::with_capacity(free.rank() + 1);
        let mut degs = Vec::with_capacity(free.rank());
        let mut acc = 0;
        for &a in &free.twists {
            offsets.push(acc);
            let e = d + sign * a;
            degs.push(e);
            acc += acts.dim(e);
        }
        offsets.push(acc);
        Self { offsets, degs }
    }

    fn dim(&self) -> usize {
        *self.offsets.last().unwrap_or(&0)
    }

    fn block_len(&self, j: usize) -> usize {
        self.offsets[j + 1] - self.offsets[j]
    }
}

fn shifted<F: Field>(field: &F, c: &F::Elem, v: &[(usize, F::Elem)], off: usize, out: &mut Vec<(usize, F::Elem)>) {
    for (k, x) in v {
        out.push((k + off, field.mul(c, x)));
    }
}

/// `d_n ⊗ N` in degree `d`.
fn tor_matrix<F: Field>(acts: &mut Actions<'_, F>, map: &GradedMap<F>, src: &Blocks, tgt: &Blocks) -> SparseMatrix<F> {
    let field = acts.module.ring().field().clone();
    let mut cols = Vec::with_capacity(src.dim());
    for j in 0..map.source.rank() {
        let len = src.block_len(j);
        if len == 0 {
            continue;
        }
        let e = src.degs[j];
        let images: Vec<_> = map.columns[j].iter().map(|(i, t, c)| (*i, acts.mult(e, t), c.clone())).collect();
        for k in 0..len {
            let mut col = Vec::new();
            for (i, img, c) in &images {
                if let Some(v) = img.get(k) {
                    shifted(&field, c, v, tgt.offsets[*i], &mut col);
                }
            }
            cols.push(normalize(&field, col));
        }
    }
    SparseMatrix::from_columns(tgt.dim(), cols)
}

/// `Hom(d_{n+1}, N)` in degree `d`; `incidence[j]` lists `(l, t, c)` with `d_{n+1}(e_l) ∋ c·t·e_j`.
fn ext_matrix<F: Field>(
    acts: &mut Actions<'_, F>,
    incidence: &[Vec<(usize, Monomial, F::Elem)>],
    src: &Blocks,
    tgt: &Blocks,
) -> SparseMatrix<F> {
    let field = acts.module.ring().field().clone();
    let mut cols = Vec::with_capacity(src.dim());
    for (j, inc) in incidence.iter().enumerate() {
        let len = src.block_len(j);
        if len == 0 {
            continue;
        }
        let e = src.degs[j];
        let images: Vec<_> = inc.iter().map(|(l, t, c)| (*l, acts.mult(e, t), c.clone())).collect();
        for k in 0..len {
            let mut col = Vec::new();
            for (l, img, c) in &images {
                if let Some(v) = img.get(k) {
                    shifted(&field, c, v, tgt.offsets[*l], &mut col);
                }
            }
            cols.push(normalize(&field, col));
        }
    }
    SparseMatrix::from_columns(tgt.dim(), cols)
}

fn incidence<F: Field>(map: &GradedMap<F>) -> Vec<Vec<(usize, Monomial, F::Elem)>> {
    let mut inc = vec![Vec::new(); map.target.rank()];
    for (l, col) in map.columns.iter().enumerate() {
        for (j, t, c) in col {
            inc[*j].push((l, t.clone(), c.clone()));
        }
    }
    inc
}

struct HomPiece<F: Field> {
    reps: Vec<SparseVec<F>>,
    coords: Echelon<F>,
    blocks: Blocks,
}

impl<F: Field> HomPiece<F> {
    /// Coordinates of a cycle's class.
    fn coords_of(&self, z: SparseVec<F>) -> SparseVec<F> {
        let f = self.coords.field().clone();
        let (res, tag) = self.coords.reduce_full(z, Vec::new());
        debug_assert!(res.is_empty(), "multiplication left the cycles");
        let minus = f.neg(&f.one());
        scale(&f, &minus, &tag)
    }
}

fn homology_piece<F: Field>(field: &F, blocks: Blocks, out: Option<&SparseMatrix<F>>, inc: Option<&SparseMatrix<F>>) -> HomPiece<F> {
    let dim = blocks.dim();
    let mut coords = Echelon::new(field.clone(), dim, true);
    if let Some(b) = inc {
        for c in b.columns() {
            coords.insert(c.clone(), Vec::new());
        }
    }
    let cycles = match out {
        Some(m) if m.rows() > 0 => m.kernel_basis(field),
        _ => (0..dim).map(|k| unit_vec(field, k)).collect(),
    };
    let mut reps = Vec::new();
    for z in cycles {
        if coords.insert(z.clone(), unit_vec(field, reps.len())).is_none() {
            reps.push(z);
        }
    }
    HomPiece { reps, coords, blocks }
}

fn degree_range<F: Field>(kind: HomKind, n_mod: &GradedModule<F>, free: &FreeModule, window: Deg) -> Option<(Deg, Deg)> {
    let lo_n = n_mod.min_degree()?;
    let (amin, amax) = (free.min_twist()?, free.max_twist()?);
    let top_n = n_mod.top_degree();
    match kind {
        HomKind::Tor => {
            let lo = lo_n + amin;
            let hi = match top_n {
                Some(t) => t + amax,
                None => window,
            };
            (lo <= hi).then_some((lo, hi))
        }
        HomKind::Ext => {
            let lo = lo_n - amax;
            let hi = match top_n {
                Some(t) => t - amin,
                None => window - amax,
            };
            (lo <= hi).then_some((lo, hi))
        }
    }
}

fn homology_at<F: Field>(res: &Resolution<F>, n_mod: &GradedModule<F>, kind: HomKind, n: usize, window: Deg) -> HomologyModule<F> {
    let ring = n_mod.ring();
    let field = ring.field().clone();
    let nv = ring.nvars();
    let artinian = ring.is_artinian();
    let status = if artinian { Status::Exact } else { Status::Windowed { window } };
    let free = res.free(n);
    let sign = kind.sign();
    let mut acts = Actions::new(n_mod);
    let mut out = HomologyModule {
        kind,
        n,
        dims: BTreeMap::new(),
        reps: BTreeMap::new(),
        action: BTreeMap::new(),
        status,
        top: window,
        field: field.clone(),
    };
    let Some((lo, hi)) = degree_range(kind, n_mod, free, window) else {
        return out;
    };
    out.top = hi;
    let inc_next = match kind {
        HomKind::Ext if n < res.n_max() => Some(incidence(res.map(n + 1))),
        _ => None,
    };
    let inc_prev = match kind {
        HomKind::Ext if n >= 1 => Some(incidence(res.map(n))),
        _ => None,
    };

    let mut pieces: BTreeMap<Deg, HomPiece<F>> = BTreeMap::new();
    for d in lo..=hi {
        let here = Blocks::new(&mut acts, free, d, sign);
        if here.dim() == 0 {
            continue;
        }
        let (outgoing, incoming) = match kind {
            HomKind::Tor => {
                let o = (n >= 1).then(|| {
                    let tgt = Blocks::new(&mut acts, res.free(n - 1), d, sign);
                    tor_matrix(&mut acts, res.map(n), &here, &tgt)
                });
                let i = (n < res.n_max()).then(|| {
                    let src = Blocks::new(&mut acts, res.free(n + 1), d, sign);
                    tor_matrix(&mut acts, res.map(n + 1), &src, &here)
                });
                (o, i)
            }
            HomKind::Ext => {
                let o = inc_next.as_ref().map(|inc| {
                    let tgt = Blocks::new(&mut acts, res.free(n + 1), d, sign);
                    ext_matrix(&mut acts, inc, &here, &tgt)
                });
                let i = inc_prev.as_ref().map(|inc| {
                    let src = Blocks::new(&mut acts, res.free(n - 1), d, sign);
                    ext_matrix(&mut acts, inc, &src, &here)
                });
                (o, i)
            }
        };
        let hp = homology_piece(&field, here, outgoing.as_ref(), incoming.as_ref());
        if !hp.reps.is_empty() {
            pieces.insert(d, hp);
        }
    }

    for (&d, hp) in &pieces {
        let Some(next) = pieces.get(&(d + 1)) else { continue };
        let mut mats = Vec::with_capacity(nv);
        for i in 0..nv {
            let x = Monomial::var(nv, i);
            let mut cols = Vec::with_capacity(hp.reps.len());
            for z in &hp.reps {
                let mut w = Vec::new();
                for j in 0..free.rank() {
                    let (a, b) = (hp.blocks.offsets[j], hp.blocks.offsets[j + 1]);
                    if a == b {
                        continue;
                    }
                    let lo_k = z.partition_point(|t| t.0 < a);
                    let hi_k = z.partition_point(|t| t.0 < b);
                    if lo_k == hi_k {
                        continue;
                    }
                    let img = acts.mult(hp.blocks.degs[j], &x);
                    for (k, c) in &z[lo_k..hi_k] {
                        shifted(&field, c, &img[k - a], next.blocks.offsets[j], &mut w);
                    }
                }
                cols.push(next.coords_of(normalize(&field, w)));
            }
            mats.push(SparseMatrix::from_columns(next.reps.len(), cols));
        }
        out.action.insert(d, mats);
    }
    for (d, hp) in pieces {
        out.dims.insert(d, hp.reps.len());
        out.reps.insert(d, hp.reps);
    }
    out
}

fn resolve_for<F: Field>(m: &GradedModule<F>, n_max: usize, window: Deg) -> Result<Arc<Resolution<F>>> {
    let m = if m.is_minimized() { m.clone() } else { crate::gmod::minimize(m) };
    let need = m.max_presentation_degree() + n_max as Deg + 1;
    let mut opts = ResolveOptions::new(n_max + 1, window.max(need));
    if m.ring().is_artinian() {
        opts.window = need.max(window);
    }
    cached_resolution(&m, &opts)
}

fn pair_homology<F: Field>(kind: HomKind, m: &GradedModule<F>, n: &GradedModule<F>, n_max: usize, window: Deg) -> Result<Vec<HomologyModule<F>>> {
    if !m.ring().same_ring(n.ring()) {
        return Err(Error::RingMismatch);
    }
    if !m.ring().is_artinian() {
        let need = m.max_presentation_degree() + n_max as Deg;
        if window < need {
            return Err(Error::WindowTooSmall { window, required: need });
        }
    }
    let res = resolve_for(m, n_max, window)?;
    Ok((0..=n_max).into_par_iter().map(|k| homology_at(&res, n, kind, k, window)).collect())
}

/// `Tor_n(M, N)` for `n = 0..=n_max`, from the minimal resolution of `M`.
pub fn tor<F: Field>(m: &GradedModule<F>, n: &GradedModule<F>, n_max: usize, window: Deg) -> Result<Vec<HomologyModule<F>>> {
    pair_homology(HomKind::Tor, m, n, n_max, window)
}

/// `Ext^n(M, N)` for `n = 0..=n_max`, from the minimal resolution of `M`.
pub fn ext<F: Field>(m: &GradedModule<F>, n: &GradedModule<F>, n_max: usize, window: Deg) -> Result<Vec<HomologyModule<F>>> {
    pair_homology(HomKind::Ext, m, n, n_max, window)
}

/// Numeric summary of one homological degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairStats {
    pub n: usize,
    pub mu: usize,
    pub length: usize,
    pub dims: BTreeMap<Deg, usize>,
    pub annihilator: Option<u32>,
    pub status: Status,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairInvariantData {
    pub kind: HomKind,
    pub per_n: Vec<PairStats>,
}

impl PairInvariantData {
    pub fn mu_sequence(&self) -> Vec<u64> {
        self.per_n.iter().map(|s| s.mu as u64).collect()
    }

    pub fn length_sequence(&self) -> Vec<u64> {
        self.per_n.iter().map(|s| s.length as u64).collect()
    }
}

pub fn summarize<F: Field>(kind: HomKind, hs: &[HomologyModule<F>]) -> Result<PairInvariantData> {
    let per_n = hs
        .iter()
        .map(|h| {
            Ok(PairStats {
                n: h.n,
                mu: mu(h)?,
                length: length(h)?,
                dims: h.dims.clone(),
                annihilator: annihilator_power(h)?,
                status: h.status,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PairInvariantData { kind, per_n })
}

pub fn pair_invariant_data<F: Field>(kind: HomKind, m: &GradedModule<F>, n: &GradedModule<F>, n_max: usize, window: Deg) -> Result<PairInvariantData> {
    let hs = pair_homology(kind, m, n, n_max, window)?;
    summarize(kind, &hs)
}

#[cfg(test)]
mod tests;
