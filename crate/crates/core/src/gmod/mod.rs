//! Finitely presented graded modules over a [`GradedRing`].
//!
//! A module is the cokernel of a homogeneous map of free modules
//! `F_1 -> F_0`. Elements of free modules are sorted term lists
//! `(generator, monomial, coefficient)`; degree pieces are handled by
//! [`FreeLayout`], which flattens `(F)_d` into a coordinate space.

mod pieces;
mod submodule;

use std::collections::BTreeMap;
use std::sync::{Arc, RwLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::kernelalg::{normalize, Echelon, SparseMatrix, SparseVec};
use crate::monoring::{DegreeBasis, GradedRing, Monomial, MonomialIdeal, Ring};

pub use pieces::{mu_by_nakayama, piece, Piece};
pub use submodule::{colon_submodule, maxideal_multiple, submodule_pieces, GradedSubspace, SubmodulePair};

pub type Deg = i32;

/// Homogeneous element of a free module, sorted by `(generator, monomial)`.
pub type ModElem<F> = Vec<(usize, Monomial, <F as Field>::Elem)>;

/// Homogeneous ring element, sorted by monomial.
pub type Poly<F> = Vec<(Monomial, <F as Field>::Elem)>;

/// Certification of a degreewise computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    /// Finite and fully enumerated.
    Exact,
    /// Valid for degrees up to `window`.
    Windowed { window: Deg },
    /// Windowed, but nothing new appeared in the top `guard` degrees.
    Stabilized { window: Deg, guard: u32 },
}

impl Status {
    pub fn is_exact(&self) -> bool {
        matches!(self, Status::Exact)
    }

    /// The weaker of two statuses.
    pub fn meet(self, other: Status) -> Status {
        use Status::*;
        match (self, other) {
            (Exact, s) | (s, Exact) => s,
            (Windowed { window: a }, Windowed { window: b }) => Windowed { window: a.min(b) },
            (Windowed { window: a }, Stabilized { window: b, .. }) | (Stabilized { window: b, .. }, Windowed { window: a }) => {
                Windowed { window: a.min(b) }
            }
            (Stabilized { window: a, guard: g }, Stabilized { window: b, guard: h }) => {
                Stabilized { window: a.min(b), guard: g.min(h) }
            }
        }
    }

    pub fn label(&self) -> String {
        match self {
            Status::Exact => "EXACT".into(),
            Status::Windowed { window } => format!("WINDOWED({window})"),
            Status::Stabilized { window, guard } => format!("STABILIZED({window},{guard})"),
        }
    }
}

/// Free module `⊕ R(-a_j)`, given by its generator degrees.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct FreeModule {
    pub twists: Vec<Deg>,
}

impl FreeModule {
    pub fn new(twists: Vec<Deg>) -> Self {
        Self { twists }
    }

    pub fn rank(&self) -> usize {
        self.twists.len()
    }

    pub fn min_twist(&self) -> Option<Deg> {
        self.twists.iter().copied().min()
    }

    pub fn max_twist(&self) -> Option<Deg> {
        self.twists.iter().copied().max()
    }

    pub fn elem_degree(&self, e: &[(usize, Monomial, impl Sized)]) -> Option<Deg> {
        e.first().map(|(g, m, _)| self.twists[*g] + m.degree() as Deg)
    }
}

/// Flattened basis of `(F)_d`: generator by generator, monomials in ring order.
#[derive(Clone, Debug)]
pub struct FreeLayout {
    pub degree: Deg,
    starts: Vec<usize>,
    bases: Vec<Option<Arc<DegreeBasis>>>,
}

impl FreeLayout {
    pub fn new<F: Field>(ring: &GradedRing<F>, free: &FreeModule, d: Deg) -> Self {
        let mut starts = Vec::with_capacity(free.rank() + 1);
        let mut bases = Vec::with_capacity(free.rank());
        let mut acc = 0;
        for &a in &free.twists {
            starts.push(acc);
            let e = d - a;
            let b = if ring.dim(e) > 0 { ring.basis_i(e) } else { None };
            acc += b.as_ref().map_or(0, |b| b.len());
            bases.push(b);
        }
        starts.push(acc);
        Self { degree: d, starts, bases }
    }

    pub fn dim(&self) -> usize {
        *self.starts.last().unwrap_or(&0)
    }

    pub fn gen_range(&self, gen: usize) -> std::ops::Range<usize> {
        self.starts[gen]..self.starts[gen + 1]
    }

    pub fn gen_basis(&self, gen: usize) -> Option<&Arc<DegreeBasis>> {
        self.bases[gen].as_ref()
    }

    pub fn index(&self, gen: usize, mono: &Monomial) -> Option<usize> {
        let b = self.bases[gen].as_ref()?;
        b.index.get(mono).map(|i| self.starts[gen] + i)
    }

    pub fn locate(&self, idx: usize) -> (usize, &Monomial) {
        let gen = self.starts.partition_point(|&s| s <= idx) - 1;
        let b = self.bases[gen].as_ref().expect("index inside an empty block");
        (gen, &b.monos[idx - self.starts[gen]])
    }

    /// Coordinates of a homogeneous element of this degree.
    pub fn to_vec<F: Field>(&self, field: &F, e: &[(usize, Monomial, F::Elem)]) -> SparseVec<F> {
        let v = e
            .iter()
            .map(|(g, m, c)| (self.index(*g, m).expect("element term outside layout"), c.clone()))
            .collect();
        normalize(field, v)
    }

    pub fn to_elem<F: Field>(&self, v: &[(usize, F::Elem)]) -> ModElem<F> {
        let mut e: ModElem<F> = v
            .iter()
            .map(|(i, c)| {
                let (g, m) = self.locate(*i);
                (g, m.clone(), c.clone())
            })
            .collect();
        e.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
        e
    }
}

pub fn normalize_elem<F: Field>(field: &F, mut e: Vec<(usize, Monomial, F::Elem)>) -> ModElem<F> {
    e.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
    let mut out: ModElem<F> = Vec::with_capacity(e.len());
    for (g, m, c) in e {
        match out.last_mut() {
            Some(last) if last.0 == g && last.1 == m => last.2 = field.add(&last.2, &c),
            _ => out.push((g, m, c)),
        }
    }
    out.retain(|t| !field.is_zero(&t.2));
    out
}

/// `m * e`, dropping terms that land in the defining ideal.
pub fn elem_mul_mono<F: Field>(ring: &GradedRing<F>, e: &[(usize, Monomial, F::Elem)], m: &Monomial) -> ModElem<F> {
    e.iter()
        .filter_map(|(g, t, c)| {
            let p = t.mul(m);
            ring.is_standard(&p).then(|| (*g, p, c.clone()))
        })
        .collect()
}

pub fn elem_mul_poly<F: Field>(ring: &GradedRing<F>, e: &[(usize, Monomial, F::Elem)], p: &[(Monomial, F::Elem)]) -> ModElem<F> {
    let f = ring.field();
    let mut acc = Vec::new();
    for (m, a) in p {
        for (g, t, c) in elem_mul_mono(ring, e, m) {
            acc.push((g, t, f.mul(a, &c)));
        }
    }
    normalize_elem(f, acc)
}

pub fn elem_add_scaled<F: Field>(field: &F, a: &[(usize, Monomial, F::Elem)], c: &F::Elem, b: &[(usize, Monomial, F::Elem)]) -> ModElem<F> {
    let mut acc: Vec<_> = a.to_vec();
    acc.extend(b.iter().map(|(g, m, x)| (*g, m.clone(), field.mul(c, x))));
    normalize_elem(field, acc)
}

/// Homogeneous map of free modules; column `j` is the image of source generator `j`.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedMap<F: Field> {
    pub source: FreeModule,
    pub target: FreeModule,
    pub columns: Vec<ModElem<F>>,
}

impl<F: Field> GradedMap<F> {
    pub fn new(source: FreeModule, target: FreeModule, columns: Vec<ModElem<F>>) -> Result<Self> {
        let map = Self { source, target, columns };
        map.check_homogeneous()?;
        Ok(map)
    }

    pub fn zero(source: FreeModule, target: FreeModule) -> Self {
        let n = source.rank();
        Self { source, target, columns: vec![Vec::new(); n] }
    }

    pub fn check_homogeneous(&self) -> Result<()> {
        if self.columns.len() != self.source.rank() {
            return Err(Error::InvalidPresentation(format!(
                "{} columns for a source of rank {}",
                self.columns.len(),
                self.source.rank()
            )));
        }
        for (j, col) in self.columns.iter().enumerate() {
            for (g, m, _) in col {
                if *g >= self.target.rank() {
                    return Err(Error::InvalidPresentation(format!("column {j} refers to generator {g}")));
                }
                if self.target.twists[*g] + m.degree() as Deg != self.source.twists[j] {
                    return Err(Error::InvalidPresentation(format!("column {j} is not homogeneous of degree {}", self.source.twists[j])));
                }
            }
        }
        Ok(())
    }

    /// Entry `(i, j)` as a polynomial.
    pub fn entry(&self, i: usize, j: usize) -> Poly<F> {
        self.columns[j].iter().filter(|t| t.0 == i).map(|(_, m, c)| (m.clone(), c.clone())).collect()
    }

    /// Whether every entry lies in the maximal ideal.
    pub fn is_minimal(&self) -> bool {
        self.columns.iter().all(|c| c.iter().all(|(_, m, _)| !m.is_one()))
    }

    /// The matrix of `(source)_d -> (target)_d`.
    pub fn degree_matrix(&self, ring: &GradedRing<F>, d: Deg) -> (FreeLayout, FreeLayout, SparseMatrix<F>) {
        let src = FreeLayout::new(ring, &self.source, d);
        let tgt = FreeLayout::new(ring, &self.target, d);
        let cols = self.apply_layout(ring, &src, &tgt);
        let m = SparseMatrix::from_columns(tgt.dim(), cols);
        (src, tgt, m)
    }

    pub(crate) fn apply_layout(&self, ring: &GradedRing<F>, src: &FreeLayout, tgt: &FreeLayout) -> Vec<SparseVec<F>> {
        let f = ring.field();
        let mut cols = Vec::with_capacity(src.dim());
        for j in 0..self.source.rank() {
            let Some(basis) = src.gen_basis(j) else { continue };
            for m in &basis.monos {
                let mut v = Vec::with_capacity(self.columns[j].len());
                for (g, t, c) in &self.columns[j] {
                    let p = t.mul(m);
                    if let Some(idx) = tgt.index(*g, &p) {
                        v.push((idx, c.clone()));
                    }
                }
                cols.push(normalize(f, v));
            }
        }
        cols
    }

    pub fn compose(&self, ring: &GradedRing<F>, inner: &GradedMap<F>) -> GradedMap<F> {
        // (self ∘ inner)(e_j) = Σ_i inner_ij · self(e_i)
        let f = ring.field();
        let columns = inner
            .columns
            .iter()
            .map(|col| {
                let mut acc = Vec::new();
                for (i, m, c) in col {
                    for (g, t, x) in elem_mul_mono(ring, &self.columns[*i], m) {
                        acc.push((g, t, f.mul(c, &x)));
                    }
                }
                normalize_elem(f, acc)
            })
            .collect();
        GradedMap { source: inner.source.clone(), target: self.target.clone(), columns }
    }
}

type PieceCache<F> = Arc<RwLock<BTreeMap<Deg, Arc<Piece<F>>>>>;

/// `coker(presentation)`.
#[derive(Clone)]
pub struct GradedModule<F: Field> {
    ring: Ring<F>,
    presentation: GradedMap<F>,
    minimized: bool,
    pieces: PieceCache<F>,
}

impl<F: Field> std::fmt::Debug for GradedModule<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GradedModule")
            .field("generators", &self.presentation.target.twists)
            .field("relations", &self.presentation.source.twists)
            .field("minimized", &self.minimized)
            .finish()
    }
}

impl<F: Field> GradedModule<F> {
    pub fn from_presentation(ring: Ring<F>, presentation: GradedMap<F>) -> Result<Self> {
        presentation.check_homogeneous()?;
        for col in &presentation.columns {
            if col.iter().any(|(_, m, _)| !ring.is_standard(m)) {
                return Err(Error::InvalidPresentation("entries must be reduced modulo the defining ideal".into()));
            }
        }
        let minimized = false;
        Ok(Self { ring, presentation, minimized, pieces: Default::default() })
    }

    fn from_parts(ring: Ring<F>, presentation: GradedMap<F>, minimized: bool) -> Self {
        Self { ring, presentation, minimized, pieces: Default::default() }
    }

    /// Cokernel of a matrix given by rows of polynomials; source degrees are
    /// inferred column by column and zero columns are dropped.
    pub fn from_matrix(ring: Ring<F>, target_twists: Vec<Deg>, rows: Vec<Vec<Poly<F>>>) -> Result<Self> {
        let f = ring.field().clone();
        if rows.len() != target_twists.len() {
            return Err(Error::InvalidPresentation(format!(
                "{} rows given for {} generators",
                rows.len(),
                target_twists.len()
            )));
        }
        let ncols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::InvalidPresentation("ragged matrix".into()));
        }
        let mut src = Vec::new();
        let mut columns = Vec::new();
        for j in 0..ncols {
            let mut col = Vec::new();
            let mut deg: Option<Deg> = None;
            for (i, row) in rows.iter().enumerate() {
                for (m, c) in &row[j] {
                    if f.is_zero(c) || !ring.is_standard(m) {
                        continue;
                    }
                    let d = target_twists[i] + m.degree() as Deg;
                    if deg.is_some_and(|e| e != d) {
                        return Err(Error::InvalidPresentation(format!("column {j} is not homogeneous")));
                    }
                    deg = Some(d);
                    col.push((i, m.clone(), c.clone()));
                }
            }
            if let Some(d) = deg {
                src.push(d);
                columns.push(normalize_elem(&f, col));
            }
        }
        let map = GradedMap::new(FreeModule::new(src), FreeModule::new(target_twists), columns)?;
        Ok(Self::from_parts(ring, map, false))
    }

    pub fn free(ring: Ring<F>, twists: Vec<Deg>) -> Self {
        let map = GradedMap::zero(FreeModule::default(), FreeModule::new(twists));
        Self::from_parts(ring, map, true)
    }

    pub fn zero(ring: Ring<F>) -> Self {
        Self::free(ring, Vec::new())
    }

    pub fn ring(&self) -> &Ring<F> {
        &self.ring
    }

    pub fn presentation(&self) -> &GradedMap<F> {
        &self.presentation
    }

    pub fn generators(&self) -> &FreeModule {
        &self.presentation.target
    }

    pub fn is_minimized(&self) -> bool {
        self.minimized
    }

    pub fn is_zero_presentation(&self) -> bool {
        self.presentation.target.rank() == 0
    }

    /// `μ_R(M)` (requires a minimized presentation to be meaningful).
    pub fn num_generators(&self) -> usize {
        self.presentation.target.rank()
    }

    /// Degrees above which every piece vanishes, when that is finite.
    pub fn top_degree(&self) -> Option<Deg> {
        let t = self.ring.top_degree()? as Deg;
        Some(self.presentation.target.max_twist().map_or(Deg::MIN, |a| a + t))
    }

    pub fn min_degree(&self) -> Option<Deg> {
        self.presentation.target.min_twist()
    }

    /// Largest twist appearing anywhere in the presentation.
    pub fn max_presentation_degree(&self) -> Deg {
        let a = self.presentation.target.max_twist().unwrap_or(0);
        let b = self.presentation.source.max_twist().unwrap_or(0);
        a.max(b)
    }

    pub(crate) fn piece_cache(&self) -> &PieceCache<F> {
        &self.pieces
    }

    /// Hash-stable description of the presentation.
    pub fn canonical_text(&self) -> String {
        let f = self.ring.field();
        let names = self.ring.var_names();
        let mut s = format!("gens={:?};rels={:?};", self.presentation.target.twists, self.presentation.source.twists);
        for col in &self.presentation.columns {
            s.push('[');
            for (g, m, c) in col {
                s.push_str(&format!("{g}:{}:{};", m.display(names), f.format(c)));
            }
            s.push(']');
        }
        s
    }
}

/// Nakayama reduction: removes unit entries, then redundant relations.
pub fn minimize<F: Field>(m: &GradedModule<F>) -> GradedModule<F> {
    let ring = Arc::clone(&m.ring);
    let f = ring.field().clone();
    let mut target = m.presentation.target.twists.clone();
    let mut source = m.presentation.source.twists.clone();
    let mut cols = m.presentation.columns.clone();

    // pivot on the lowest generator, then the lowest column
    loop {
        let mut best: Option<(usize, usize, F::Elem)> = None;
        for (j, col) in cols.iter().enumerate() {
            for (g, mono, c) in col {
                if mono.is_one() && best.as_ref().is_none_or(|b| (*g, j) < (b.0, b.1)) {
                    best = Some((*g, j, c.clone()));
                }
            }
        }
        let Some((gi, j, c)) = best else { break };
        let inv_c = f.inv(&c).expect("unit entry");
        let pivot = cols[j].clone();
        for (k, col) in cols.iter_mut().enumerate() {
            if k == j {
                continue;
            }
            let p: Poly<F> = col
                .iter()
                .filter(|t| t.0 == gi)
                .map(|(_, mono, x)| (mono.clone(), f.neg(&f.mul(x, &inv_c))))
                .collect();
            if p.is_empty() {
                continue;
            }
            let delta = elem_mul_poly(&ring, &pivot, &p);
            let mut acc = col.clone();
            acc.extend(delta);
            *col = normalize_elem(&f, acc);
            debug_assert!(col.iter().all(|t| t.0 != gi));
        }
        cols.remove(j);
        source.remove(j);
        target.remove(gi);
        for col in cols.iter_mut() {
            for t in col.iter_mut() {
                if t.0 > gi {
                    t.0 -= 1;
                }
            }
        }
    }

    // drop relations generated by the others, degree by degree
    let mut order: Vec<usize> = (0..cols.len()).filter(|&j| !cols[j].is_empty()).collect();
    order.sort_by_key(|&j| source[j]);
    let tfree = FreeModule::new(target.clone());
    let mut kept: Vec<usize> = Vec::new();
    let mut i = 0;
    while i < order.len() {
        let d = source[order[i]];
        let layout = FreeLayout::new(&ring, &tfree, d);
        let mut ech = Echelon::new(f.clone(), layout.dim(), false);
        for &k in &kept {
            let e = d - source[k];
            if let Some(basis) = ring.basis_i(e) {
                for mono in &basis.monos {
                    ech.add(layout.to_vec(&f, &elem_mul_mono(&ring, &cols[k], mono)));
                }
            }
        }
        while i < order.len() && source[order[i]] == d {
            let j = order[i];
            if ech.add(layout.to_vec(&f, &cols[j])) {
                kept.push(j);
            }
            i += 1;
        }
    }
    let new_source = kept.iter().map(|&j| source[j]).collect();
    let new_cols = kept.iter().map(|&j| cols[j].clone()).collect();
    let map = GradedMap { source: FreeModule::new(new_source), target: tfree, columns: new_cols };
    GradedModule::from_parts(ring, map, true)
}

/// `k = R / m`, presented as `R <- R(-1)^v`.
pub fn residue_field<F: Field>(ring: &Ring<F>) -> GradedModule<F> {
    let n = ring.nvars();
    let one = ring.field().one();
    let columns = (0..n).map(|i| vec![(0, Monomial::var(n, i), one.clone())]).collect();
    let map = GradedMap { source: FreeModule::new(vec![1; n]), target: FreeModule::new(vec![0]), columns };
    GradedModule::from_parts(Arc::clone(ring), map, true)
}

/// The ideal `I` as a module, with its syzygies computed monomially.
///
/// Relations are the pairwise syzygies of the generators of `I` together with
/// those of each generator against the defining relations, projected to the
/// `I` coordinates; the result is then minimized.
pub fn ideal_as_module<F: Field>(ring: &Ring<F>, ideal: &MonomialIdeal) -> Result<GradedModule<F>> {
    let ideal = ring.reduce_ideal(ideal);
    if ideal.is_unit() && !ring.is_zero_ring() {
        // R itself
        return Ok(GradedModule::free(Arc::clone(ring), vec![0]));
    }
    let gens = ideal.gens();
    let one = ring.field().one();
    let neg_one = ring.field().neg(&one);
    let twists: Vec<Deg> = gens.iter().map(|g| g.degree() as Deg).collect();
    let mut source = Vec::new();
    let mut columns: Vec<ModElem<F>> = Vec::new();
    for (j, g) in gens.iter().enumerate() {
        for h in ring.defining().gens() {
            let m = g.quotient_of(&g.lcm(h)).expect("g divides lcm");
            if ring.is_standard(&m) {
                source.push(twists[j] + m.degree() as Deg);
                columns.push(vec![(j, m, one.clone())]);
            }
        }
        for (k, h) in gens.iter().enumerate().skip(j + 1) {
            let l = g.lcm(h);
            if !ring.is_standard(&l) {
                continue;
            }
            let a = g.quotient_of(&l).expect("divides");
            let b = h.quotient_of(&l).expect("divides");
            source.push(l.degree() as Deg);
            columns.push(vec![(j, a, one.clone()), (k, b, neg_one.clone())]);
        }
    }
    let map = GradedMap::new(FreeModule::new(source), FreeModule::new(twists), columns)?;
    Ok(minimize(&GradedModule::from_parts(Arc::clone(ring), map, false)))
}

/// `R / I`.
pub fn quotient_module<F: Field>(ring: &Ring<F>, ideal: &MonomialIdeal) -> GradedModule<F> {
    let ideal = ring.reduce_ideal(ideal);
    let one = ring.field().one();
    let columns = ideal.gens().iter().map(|g| vec![(0, g.clone(), one.clone())]).collect();
    let source = ideal.gens().iter().map(|g| g.degree() as Deg).collect();
    let map = GradedMap { source: FreeModule::new(source), target: FreeModule::new(vec![0]), columns };
    minimize(&GradedModule::from_parts(Arc::clone(ring), map, false))
}

pub fn direct_sum<F: Field>(a: &GradedModule<F>, b: &GradedModule<F>) -> Result<GradedModule<F>> {
    if !a.ring.same_ring(&b.ring) {
        return Err(Error::RingMismatch);
    }
    let shift = a.presentation.target.rank();
    let mut target = a.presentation.target.twists.clone();
    target.extend(&b.presentation.target.twists);
    let mut source = a.presentation.source.twists.clone();
    source.extend(&b.presentation.source.twists);
    let mut columns = a.presentation.columns.clone();
    columns.extend(
        b.presentation.columns.iter().map(|c| c.iter().map(|(g, m, x)| (g + shift, m.clone(), x.clone())).collect()),
    );
    let map = GradedMap { source: FreeModule::new(source), target: FreeModule::new(target), columns };
    Ok(GradedModule::from_parts(Arc::clone(&a.ring), map, a.minimized && b.minimized))
}

/// `M(s)`: the generator degrees drop by `s`.
pub fn twist<F: Field>(m: &GradedModule<F>, s: Deg) -> GradedModule<F> {
    let shift = |t: &FreeModule| FreeModule::new(t.twists.iter().map(|a| a - s).collect());
    let map = GradedMap {
        source: shift(&m.presentation.source),
        target: shift(&m.presentation.target),
        columns: m.presentation.columns.clone(),
    };
    GradedModule::from_parts(Arc::clone(&m.ring), map, m.minimized)
}

#[cfg(test)]
mod tests;
