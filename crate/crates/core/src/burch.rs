//! Burch ideals and submodules, depth, and the ideal families that are Burch
//! by construction.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::gmod::{
    colon_submodule, elem_mul_mono, maxideal_multiple, minimize, piece, residue_field, submodule_pieces, Deg, GradedModule, ModElem,
    Status, SubmodulePair,
};
use crate::kernelalg::{Echelon, SparseVec};
use crate::monoring::{ideal_colon_maxideal, ideal_equal, ideal_power, ideal_product, GradedRing, Monomial, MonomialIdeal, Ring};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING-KEBAB-CASE")]
pub enum BurchVerdict {
    Burch,
    NotBurch,
    UnknownWindowed,
}

impl BurchVerdict {
    pub fn label(self) -> &'static str {
        match self {
            BurchVerdict::Burch => "BURCH",
            BurchVerdict::NotBurch => "NOT-BURCH",
            BurchVerdict::UnknownWindowed => "UNKNOWN-WINDOWED",
        }
    }
}

/// An element `x_var * c` of `𝔪(M :_L 𝔪)` lying outside `𝔪M`, with `c` in the colon.
#[derive(Clone, Debug, PartialEq)]
pub enum Witness<F: Field> {
    Monomial { degree: Deg, element: Monomial, colon: Monomial, var: usize },
    Element { degree: Deg, element: ModElem<F>, colon: ModElem<F>, var: usize },
}

impl<F: Field> Witness<F> {
    pub fn degree(&self) -> Deg {
        match self {
            Witness::Monomial { degree, .. } | Witness::Element { degree, .. } => *degree,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BurchCertificate<F: Field> {
    pub verdict: BurchVerdict,
    pub witness: Option<Witness<F>>,
    /// Generators of `𝔪(I : 𝔪)` and `𝔪I` when they coincide.
    pub equal_ideals: Option<(MonomialIdeal, MonomialIdeal)>,
    /// `None` for exact monomial computations.
    pub window: Option<Deg>,
    /// `(d, dim 𝔪(M:𝔪)_d, dim (𝔪M)_d)` for the submodule test.
    pub dims: Vec<(Deg, usize, usize)>,
}

impl<F: Field> BurchCertificate<F> {
    pub fn is_burch(&self) -> bool {
        self.verdict == BurchVerdict::Burch
    }

    /// Serializable rendering with the ring's variable names.
    pub fn report(&self, ring: &GradedRing<F>) -> BurchReport {
        let names = ring.var_names();
        let f = ring.field();
        let render = |e: &ModElem<F>| {
            if e.is_empty() {
                return "0".to_string();
            }
            e.iter().map(|(g, m, c)| format!("{}*{}*e{}", f.format(c), m.display(names), g)).collect::<Vec<_>>().join(" + ")
        };
        let witness = self.witness.as_ref().map(|w| match w {
            Witness::Monomial { degree, element, colon, var } => WitnessReport {
                degree: *degree,
                element: element.display(names).to_string(),
                colon: colon.display(names).to_string(),
                variable: names[*var].clone(),
            },
            Witness::Element { degree, element, colon, var } => {
                WitnessReport { degree: *degree, element: render(element), colon: render(colon), variable: names[*var].clone() }
            }
        });
        let gens = |i: &MonomialIdeal| i.gens().iter().map(|g| g.display(names).to_string()).collect::<Vec<_>>();
        BurchReport {
            verdict: self.verdict,
            witness,
            equal_ideals: self.equal_ideals.as_ref().map(|(a, b)| (gens(a), gens(b))),
            window: self.window,
            dims: self.dims.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessReport {
    pub degree: Deg,
    pub element: String,
    pub colon: String,
    pub variable: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BurchReport {
    pub verdict: BurchVerdict,
    pub witness: Option<WitnessReport>,
    pub equal_ideals: Option<(Vec<String>, Vec<String>)>,
    pub window: Option<Deg>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub dims: Vec<(Deg, usize, usize)>,
}

/// Exact test of `𝔪(I : 𝔪) ≠ 𝔪I` by monomial arithmetic.
pub fn is_burch_ideal<F: Field>(ring: &GradedRing<F>, ideal: &MonomialIdeal) -> Result<BurchCertificate<F>> {
    let ideal = ring.reduce_ideal(ideal);
    if ideal.is_unit() {
        return Err(Error::NotProperIdeal);
    }
    let m = ring.maximal_ideal();
    let colon = ideal_colon_maxideal(ring, &ideal);
    let m_colon = ideal_product(ring, &m, &colon);
    let m_ideal = ideal_product(ring, &m, &ideal);
    let mut cert = BurchCertificate { verdict: BurchVerdict::NotBurch, witness: None, equal_ideals: None, window: None, dims: Vec::new() };
    if ideal_equal(ring, &m_colon, &m_ideal) {
        cert.equal_ideals = Some((m_colon, m_ideal));
        return Ok(cert);
    }
    let lifted = ring.lift_ideal(&m_ideal);
    let element = m_colon.gens().iter().find(|g| !lifted.contains(g)).expect("ideals differ").clone();
    let (colon_gen, var) = colon
        .gens()
        .iter()
        .flat_map(|c| (0..ring.nvars()).map(move |i| (c, i)))
        .find(|(c, i)| c.mul_var(*i) == element)
        .map(|(c, i)| (c.clone(), i))
        .expect("minimal generators of a product are products of generators");
    cert.verdict = BurchVerdict::Burch;
    cert.witness = Some(Witness::Monomial { degree: element.degree() as Deg, element, colon: colon_gen, var });
    Ok(cert)
}

/// Independent check of a monomial witness against `I`.
pub fn verify_ideal_witness<F: Field>(ring: &GradedRing<F>, ideal: &MonomialIdeal, w: &Witness<F>) -> bool {
    let Witness::Monomial { element, colon, var, .. } = w else { return false };
    let lifted = ring.lift_ideal(ideal);
    let in_colon = (0..ring.nvars()).all(|i| lifted.contains(&colon.mul_var(i)));
    // x^a ∈ 𝔪I iff x^a ∈ J or a generator of I + J divides it properly
    let in_m_ideal = ring.defining().contains(element) || lifted.gens().iter().any(|g| g.quotient_of(element).is_some_and(|q| q.degree() >= 1));
    in_colon && colon.mul_var(*var) == *element && ring.is_standard(element) && !in_m_ideal
}

/// Default window for the submodule test: the top degree of an Artinian
/// ambient module, else a margin above the generators.
pub fn default_burch_window<F: Field>(pair: &SubmodulePair<F>, n_max: usize) -> Deg {
    let g = pair.max_generator_degree().unwrap_or(pair.low_degree());
    match pair.ambient().top_degree() {
        Some(t) => t.max(g + 1),
        None => g + n_max as Deg + 2,
    }
}

fn independent_of<F: Field>(field: &F, dim: usize, span: &[SparseVec<F>], v: &SparseVec<F>) -> bool {
    let mut e = Echelon::new(field.clone(), dim, false);
    for s in span {
        e.add(s.clone());
    }
    !e.contains(v)
}

/// Degreewise comparison of `𝔪(M :_L 𝔪)` with `𝔪M` through `window`.
pub fn is_burch_submodule<F: Field>(pair: &SubmodulePair<F>, window: Deg) -> Result<BurchCertificate<F>> {
    let l = pair.ambient();
    let ring = l.ring();
    let f = ring.field();
    let colon = colon_submodule(pair, window)?;
    let m_colon = maxideal_multiple(pair, &colon, window)?;
    let sub = submodule_pieces(pair, window)?;
    let m_sub = maxideal_multiple(pair, &sub, window)?;
    let mut cert = BurchCertificate { verdict: BurchVerdict::NotBurch, witness: None, equal_ideals: None, window: Some(window), dims: Vec::new() };
    for (&d, basis) in &m_colon.pieces {
        let (a, b) = (basis.len(), m_sub.dim(d));
        cert.dims.push((d, a, b));
        if a <= b || cert.witness.is_some() {
            continue;
        }
        let prev = piece(l, d - 1, window)?;
        let cur = piece(l, d, window)?;
        'search: for c in colon.basis(d - 1) {
            let c_elem = prev.lift_elem(c);
            for i in 0..ring.nvars() {
                let x = Monomial::var(ring.nvars(), i);
                let elem = elem_mul_mono(ring, &c_elem, &x);
                let v = cur.elem_coords(&elem);
                if !v.is_empty() && independent_of(f, cur.dim(), m_sub.basis(d), &v) {
                    cert.witness = Some(Witness::Element { degree: d, element: elem, colon: c_elem.clone(), var: i });
                    break 'search;
                }
            }
        }
        debug_assert!(cert.witness.is_some());
        cert.verdict = BurchVerdict::Burch;
    }
    if cert.verdict != BurchVerdict::Burch && colon.status != Status::Exact {
        cert.verdict = BurchVerdict::UnknownWindowed;
    }
    Ok(cert)
}

/// `M_d` recomputed from the generators, without the subspace machinery.
fn fresh_span<F: Field>(pair: &SubmodulePair<F>, d: Deg, min_mono_degree: u32, window: Deg) -> Result<(usize, Vec<SparseVec<F>>)> {
    let l = pair.ambient();
    let ring = l.ring();
    let p = piece(l, d, window)?;
    let mut vs = Vec::new();
    for (gd, g) in pair.generators() {
        let e = d - gd;
        if e < min_mono_degree as Deg {
            continue;
        }
        if let Some(b) = ring.basis_i(e) {
            for m in &b.monos {
                vs.push(p.elem_coords(&elem_mul_mono(ring, g, m)));
            }
        }
    }
    Ok((p.dim(), vs))
}

/// Independent check of a submodule witness: `x_j c ∈ M` for every `j`,
/// the element is `x_var c`, and it lies outside `𝔪M`.
pub fn verify_submodule_witness<F: Field>(pair: &SubmodulePair<F>, w: &Witness<F>, window: Deg) -> Result<bool> {
    let Witness::Element { degree, element, colon, var } = w else { return Ok(false) };
    let ring = pair.ambient().ring();
    let f = ring.field();
    let nv = ring.nvars();
    let (dim, span_m) = fresh_span(pair, *degree, 0, window)?;
    let p = piece(pair.ambient(), *degree, window)?;
    for j in 0..nv {
        let v = p.elem_coords(&elem_mul_mono(ring, colon, &Monomial::var(nv, j)));
        if independent_of(f, dim, &span_m, &v) {
            return Ok(false);
        }
    }
    if elem_mul_mono(ring, colon, &Monomial::var(nv, *var)) != *element {
        return Ok(false);
    }
    let (_, span_mm) = fresh_span(pair, *degree, 1, window)?;
    let v = p.elem_coords(element);
    Ok(!v.is_empty() && independent_of(f, dim, &span_mm, &v))
}

/// Checks on one instance that a Burch submodule `M ⊆ X` stays Burch after
/// an injective map `X -> Y`, given by the images of the generators of `X`.
pub fn embedding_invariance_check<F: Field>(pair: &SubmodulePair<F>, y: &GradedModule<F>, images: &[ModElem<F>]) -> Result<bool> {
    let x = pair.ambient();
    let ring = x.ring();
    if !ring.same_ring(y.ring()) {
        return Err(Error::RingMismatch);
    }
    if !ring.is_artinian() {
        return Err(Error::NotArtinian);
    }
    let tx = &x.generators().twists;
    if images.len() != tx.len() {
        return Err(Error::InvalidPresentation(format!("expected {} generator images, got {}", tx.len(), images.len())));
    }
    let ty = &y.generators().twists;
    for (img, &a) in images.iter().zip(tx) {
        if img.iter().any(|(g, m, _)| *g >= ty.len() || ty[*g] + m.degree() as Deg != a) {
            return Err(Error::InvalidPresentation("generator image is not homogeneous of the right degree".into()));
        }
    }
    let f = ring.field();
    let apply = |e: &ModElem<F>| {
        let mut out: ModElem<F> = Vec::new();
        for (g, m, c) in e {
            let part = elem_mul_mono(ring, &images[*g], m);
            out = crate::gmod::elem_add_scaled(f, &out, c, &part);
        }
        out
    };
    let top = x.top_degree().unwrap_or(0).max(y.top_degree().unwrap_or(0));
    let window = top + 1;
    for rel in x.presentation().columns.iter() {
        let img = apply(rel);
        if let Some(d) = y.generators().elem_degree(&img) {
            if !piece(y, d, window)?.elem_coords(&img).is_empty() {
                return Err(Error::InvalidPresentation("map does not respect the relations of X".into()));
            }
        }
    }
    if let (Some(lo), Some(hi)) = (x.min_degree(), x.top_degree()) {
        for d in lo..=hi {
            let px = piece(x, d, window)?;
            let py = piece(y, d, window)?;
            let mut e = Echelon::new(f.clone(), py.dim(), false);
            for k in 0..px.dim() {
                let src = px.lift_elem(&[(k, f.one())]);
                if !e.add(py.elem_coords(&apply(&src))) {
                    return Err(Error::NotInjective { degree: d });
                }
            }
        }
    }
    let before = is_burch_submodule(pair, default_burch_window(pair, 0))?;
    if !before.is_burch() {
        return Ok(true);
    }
    let image_pair = SubmodulePair::new(y.clone(), pair.generators().iter().map(|(_, g)| apply(g)).collect())?;
    let after = is_burch_submodule(&image_pair, default_burch_window(&image_pair, 0))?;
    Ok(after.is_burch())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Depth {
    pub value: Option<usize>,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diagnostics: Option<String>,
}

/// Least `n <= n_max` with `Ext^n(k, M) ≠ 0`.
pub fn depth<F: Field>(m: &GradedModule<F>, n_max: usize, window: Deg) -> Result<Depth> {
    let m = minimize(m);
    if m.num_generators() == 0 {
        return Err(Error::InvalidPresentation("depth of the zero module".into()));
    }
    if m.ring().is_artinian() {
        return Ok(Depth { value: Some(0), status: Status::Exact, diagnostics: None });
    }
    let k = residue_field(m.ring());
    let ext = crate::pairhom::ext(&k, &m, n_max, window)?;
    let status = ext.iter().map(|h| h.status).fold(Status::Exact, Status::meet);
    match ext.iter().position(|h| !h.is_zero()) {
        Some(n) => Ok(Depth { value: Some(n), status, diagnostics: None }),
        None => Ok(Depth {
            value: None,
            status,
            diagnostics: Some(format!("Ext^n(k, M) vanishes for n <= {n_max} through degree {window}")),
        }),
    }
}

/// `𝔞𝔪`, reduced.
pub fn make_am_ideal<F: Field>(ring: &Ring<F>, a: &MonomialIdeal) -> Result<MonomialIdeal> {
    let p = ideal_product(ring, a, &ring.maximal_ideal());
    if p.is_zero() {
        return Err(Error::ZeroProduct);
    }
    Ok(p)
}

/// `𝔪^n`, reduced.
pub fn make_m_power<F: Field>(ring: &Ring<F>, n: u32) -> Result<MonomialIdeal> {
    let p = ideal_power(ring, &ring.maximal_ideal(), n);
    if p.is_zero() {
        return Err(Error::ZeroProduct);
    }
    Ok(p)
}

#[cfg(test)]
mod tests;
