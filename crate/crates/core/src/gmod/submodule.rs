use std::collections::BTreeMap;

use super::pieces::mul_var_coords;
use super::{elem_mul_mono, piece, Deg, GradedModule, ModElem, Status};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::kernelalg::{Echelon, SparseMatrix, SparseVec};

/// A submodule `M ⊆ L`, given by homogeneous generators in `F_0(L)`.
#[derive(Clone, Debug)]
pub struct SubmodulePair<F: Field> {
    ambient: GradedModule<F>,
    gens: Vec<(Deg, ModElem<F>)>,
}

impl<F: Field> SubmodulePair<F> {
    pub fn new(ambient: GradedModule<F>, gens: Vec<ModElem<F>>) -> Result<Self> {
        let twists = &ambient.generators().twists;
        let ring = ambient.ring();
        let mut out = Vec::new();
        for e in gens {
            let e = super::normalize_elem(ring.field(), e);
            let Some((g0, m0, _)) = e.first() else { continue };
            if e.iter().any(|(g, _, _)| *g >= twists.len()) {
                return Err(Error::InvalidPresentation("submodule generator refers to a missing generator of L".into()));
            }
            if e.iter().any(|(_, m, _)| !ring.is_standard(m)) {
                return Err(Error::InvalidPresentation("submodule generator is not reduced".into()));
            }
            let d = twists[*g0] + m0.degree() as Deg;
            if e.iter().any(|(g, m, _)| twists[*g] + m.degree() as Deg != d) {
                return Err(Error::InvalidPresentation("submodule generator is not homogeneous".into()));
            }
            out.push((d, e));
        }
        Ok(Self { ambient, gens: out })
    }

    /// `I · e_0 ⊆ R`, the ideal case.
    pub fn ideal_in_ring(ring: &crate::monoring::Ring<F>, ideal: &crate::monoring::MonomialIdeal) -> Result<Self> {
        let ideal = ring.reduce_ideal(ideal);
        let one = ring.field().one();
        let l = GradedModule::free(std::sync::Arc::clone(ring), vec![0]);
        let gens = if ideal.is_unit() {
            vec![vec![(0, ring.one(), one)]]
        } else {
            ideal.gens().iter().map(|g| vec![(0, g.clone(), one.clone())]).collect()
        };
        Self::new(l, gens)
    }

    pub fn ambient(&self) -> &GradedModule<F> {
        &self.ambient
    }

    pub fn generators(&self) -> &[(Deg, ModElem<F>)] {
        &self.gens
    }

    pub fn max_generator_degree(&self) -> Option<Deg> {
        self.gens.iter().map(|g| g.0).max()
    }

    /// First degree in which `L` can be nonzero.
    pub fn low_degree(&self) -> Deg {
        self.ambient.min_degree().unwrap_or(0)
    }

    /// Status of degreewise data of `L` computed through `window`.
    pub fn status_for(&self, window: Deg) -> Status {
        match self.ambient.top_degree() {
            Some(t) if t <= window => Status::Exact,
            _ => Status::Windowed { window },
        }
    }
}

/// A graded subspace of a module `L`, one echelon basis per degree in
/// `L_d` coordinates.
#[derive(Clone, Debug)]
pub struct GradedSubspace<F: Field> {
    pub pieces: BTreeMap<Deg, Vec<SparseVec<F>>>,
    pub window: Deg,
    pub status: Status,
}

impl<F: Field> GradedSubspace<F> {
    pub fn dim(&self, d: Deg) -> usize {
        self.pieces.get(&d).map_or(0, |b| b.len())
    }

    pub fn basis(&self, d: Deg) -> &[SparseVec<F>] {
        self.pieces.get(&d).map_or(&[], |b| b.as_slice())
    }

    pub fn dims(&self) -> BTreeMap<Deg, usize> {
        self.pieces.iter().map(|(d, b)| (*d, b.len())).collect()
    }

    pub fn echelon(&self, field: &F, d: Deg, ambient_dim: usize) -> Echelon<F> {
        let mut e = Echelon::new(field.clone(), ambient_dim, false);
        for v in self.basis(d) {
            e.add(v.clone());
        }
        e
    }
}

fn span_basis<F: Field>(field: &F, dim: usize, vs: impl IntoIterator<Item = SparseVec<F>>) -> Vec<SparseVec<F>> {
    let mut e = Echelon::new(field.clone(), dim, false);
    for v in vs {
        e.add(v);
    }
    e.stored().to_vec()
}

fn degree_range<F: Field>(pair: &SubmodulePair<F>, window: Deg) -> std::ops::RangeInclusive<Deg> {
    let hi = match pair.ambient.top_degree() {
        Some(t) => t.min(window),
        None => window,
    };
    pair.low_degree()..=hi
}

/// `M_d` inside `L_d` for `d ≤ window`.
pub fn submodule_pieces<F: Field>(pair: &SubmodulePair<F>, window: Deg) -> Result<GradedSubspace<F>> {
    let l = &pair.ambient;
    let ring = l.ring();
    let f = ring.field();
    let mut pieces = BTreeMap::new();
    for d in degree_range(pair, window) {
        let p = piece(l, d, window)?;
        let mut vs = Vec::new();
        for (gd, g) in &pair.gens {
            if let Some(basis) = ring.basis_i(d - gd) {
                for m in &basis.monos {
                    vs.push(p.elem_coords(&elem_mul_mono(ring, g, m)));
                }
            }
        }
        pieces.insert(d, span_basis(f, p.dim(), vs));
    }
    Ok(GradedSubspace { pieces, window, status: pair.status_for(window) })
}

/// `(M :_L 𝔪)_d = {x ∈ L_d : x_i x ∈ M_{d+1} for all i}` for `d ≤ window`.
pub fn colon_submodule<F: Field>(pair: &SubmodulePair<F>, window: Deg) -> Result<GradedSubspace<F>> {
    if let Some(g) = pair.max_generator_degree() {
        if window < g + 1 {
            return Err(Error::WindowTooSmall { window, required: g + 1 });
        }
    }
    let l = &pair.ambient;
    let ring = l.ring();
    let f = ring.field();
    let v = ring.nvars();
    let sub = submodule_pieces(pair, window + 1)?;
    let mut pieces = BTreeMap::new();
    for d in degree_range(pair, window) {
        let cur = piece(l, d, window + 1)?;
        let next = piece(l, d + 1, window + 1)?;
        let target = sub.echelon(f, d + 1, next.dim());
        let n1 = next.dim();
        let mut cols = Vec::with_capacity(cur.dim());
        for k in 0..cur.dim() {
            let unit = vec![(k, f.one())];
            let mut col = Vec::new();
            for i in 0..v {
                let w = mul_var_coords(l, &cur, &next, i, &unit);
                let (res, _) = target.reduce_full(w, Vec::new());
                col.extend(res.into_iter().map(|(r, c)| (i * n1 + r, c)));
            }
            cols.push(col);
        }
        let m = SparseMatrix::from_columns(v * n1, cols);
        pieces.insert(d, span_basis(f, cur.dim(), m.kernel_basis(f)));
    }
    Ok(GradedSubspace { pieces, window, status: pair.status_for(window) })
}

/// `(𝔪X)_d = Σ_i x_i X_{d-1}` for `d ≤ window`.
pub fn maxideal_multiple<F: Field>(pair: &SubmodulePair<F>, x: &GradedSubspace<F>, window: Deg) -> Result<GradedSubspace<F>> {
    let l = &pair.ambient;
    let ring = l.ring();
    let f = ring.field();
    let mut pieces = BTreeMap::new();
    for d in degree_range(pair, window) {
        let cur = piece(l, d, window.max(x.window))?;
        let mut vs = Vec::new();
        if x.dim(d - 1) > 0 {
            let prev = piece(l, d - 1, window.max(x.window))?;
            for b in x.basis(d - 1) {
                for i in 0..ring.nvars() {
                    vs.push(mul_var_coords(l, &prev, &cur, i, b));
                }
            }
        }
        pieces.insert(d, span_basis(f, cur.dim(), vs));
    }
    Ok(GradedSubspace { pieces, window, status: pair.status_for(window) })
}
