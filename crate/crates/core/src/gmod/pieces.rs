use std::sync::Arc;

use super::{Deg, FreeLayout, GradedModule, ModElem};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::kernelalg::{Echelon, SparseVec};
use crate::monoring::Monomial;

const NO_COORD: u32 = u32::MAX;

/// `M_d` as the quotient of `(F_0)_d` by the image of the relations.
///
/// Coordinates are indexed by the rows of `(F_0)_d` that carry no pivot of
/// the relation echelon; the representative of coordinate `k` is the
/// corresponding basis vector of `(F_0)_d`.
pub struct Piece<F: Field> {
    pub degree: Deg,
    pub layout: FreeLayout,
    relations: Echelon<F>,
    free_rows: Vec<usize>,
    coord: Vec<u32>,
}

impl<F: Field> Piece<F> {
    pub fn dim(&self) -> usize {
        self.free_rows.len()
    }

    pub fn relations_rank(&self) -> usize {
        self.relations.rank()
    }

    /// Coordinates of the class of `v ∈ (F_0)_d`.
    pub fn coords(&self, v: SparseVec<F>) -> SparseVec<F> {
        let (res, _) = self.relations.reduce_full(v, Vec::new());
        res.into_iter()
            .map(|(r, c)| {
                let k = self.coord[r];
                debug_assert_ne!(k, NO_COORD);
                (k as usize, c)
            })
            .collect()
    }

    pub fn elem_coords(&self, e: &[(usize, Monomial, F::Elem)]) -> SparseVec<F> {
        let f = self.relations_field();
        self.coords(self.layout.to_vec(f, e))
    }

    /// Representative in `(F_0)_d` of a coordinate vector.
    pub fn lift(&self, v: &[(usize, F::Elem)]) -> SparseVec<F> {
        let mut out: SparseVec<F> = v.iter().map(|(k, c)| (self.free_rows[*k], c.clone())).collect();
        out.sort_by_key(|t| t.0);
        out
    }

    pub fn lift_elem(&self, v: &[(usize, F::Elem)]) -> ModElem<F> {
        self.layout.to_elem::<F>(&self.lift(v))
    }

    /// `(F_0)_d` row of the representative of coordinate `k`.
    pub fn rep_row(&self, k: usize) -> usize {
        self.free_rows[k]
    }

    fn relations_field(&self) -> &F {
        self.relations.field()
    }
}

/// `M_d`, cached per module.
pub fn piece<F: Field>(m: &GradedModule<F>, d: Deg, window: Deg) -> Result<Arc<Piece<F>>> {
    if d > window {
        return Err(Error::WindowExceeded { requested: d, window });
    }
    if let Some(p) = m.piece_cache().read().expect("piece cache").get(&d) {
        return Ok(Arc::clone(p));
    }
    let ring = m.ring();
    let f = ring.field().clone();
    let pres = m.presentation();
    let layout = FreeLayout::new(ring, &pres.target, d);
    let src = FreeLayout::new(ring, &pres.source, d);
    let mut relations = Echelon::new(f, layout.dim(), false);
    for col in pres.apply_layout(ring, &src, &layout) {
        relations.add(col);
    }
    let free_rows = relations.free_rows();
    let mut coord = vec![NO_COORD; layout.dim()];
    for (k, &r) in free_rows.iter().enumerate() {
        coord[r] = k as u32;
    }
    let p = Arc::new(Piece { degree: d, layout, relations, free_rows, coord });
    let mut cache = m.piece_cache().write().expect("piece cache");
    Ok(Arc::clone(cache.entry(d).or_insert(p)))
}

/// `x_i · v` for `v` given in the coordinates of `M_d`, in the coordinates of `M_{d+1}`.
pub(crate) fn mul_var_coords<F: Field>(
    m: &GradedModule<F>,
    from: &Piece<F>,
    to: &Piece<F>,
    i: usize,
    v: &[(usize, F::Elem)],
) -> SparseVec<F> {
    let ring = m.ring();
    let f = ring.field();
    let mut w = Vec::with_capacity(v.len());
    for (k, c) in v {
        let (g, mono) = from.layout.locate(from.rep_row(*k));
        let p = mono.mul_var(i);
        if let Some(idx) = to.layout.index(g, &p) {
            w.push((idx, c.clone()));
        }
    }
    to.coords(crate::kernelalg::normalize(f, w))
}

/// `μ_R(M) = Σ_d dim (M/𝔪M)_d`, computed degreewise from the pieces.
pub fn mu_by_nakayama<F: Field>(m: &GradedModule<F>, window: Deg) -> Result<usize> {
    let (Some(lo), Some(hi)) = (m.generators().min_twist(), m.generators().max_twist()) else {
        return Ok(0);
    };
    if hi > window {
        return Err(Error::WindowTooSmall { window, required: hi });
    }
    let ring = m.ring();
    let mut total = 0;
    let mut prev = piece(m, lo - 1, window)?;
    for d in lo..=hi {
        let cur = piece(m, d, window)?;
        let mut ech = Echelon::new(ring.field().clone(), cur.dim(), false);
        for k in 0..prev.dim() {
            let unit = vec![(k, ring.field().one())];
            for i in 0..ring.nvars() {
                ech.add(mul_var_coords(m, &prev, &cur, i, &unit));
            }
        }
        total += cur.dim() - ech.rank();
        prev = cur;
    }
    Ok(total)
}
