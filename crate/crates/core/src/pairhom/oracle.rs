//! Dense reference pipeline for Tor and Ext over Artinian rings.
//!
//! Shares nothing with the sparse path beyond the input types: monomials are
//! enumerated afresh, every module is a dense graded representation with
//! explicit variable actions, and resolutions are built from minimal covers
//! found by dense Nakayama.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::gmod::{Deg, GradedModule};

type Vector<F> = Vec<<F as Field>::Elem>;

/// Row-reduced echelon form; returns pivot columns.
fn rref<F: Field>(f: &F, rows: &mut Vec<Vector<F>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !f.is_zero(&rows[i][c])) else { continue };
        rows.swap(r, p);
        let inv = f.inv(&rows[r][c]).unwrap();
        for x in rows[r].iter_mut() {
            *x = f.mul(x, &inv);
        }
        for i in 0..rows.len() {
            if i != r && !f.is_zero(&rows[i][c]) {
                let m = rows[i][c].clone();
                for k in 0..ncols {
                    let t = f.mul(&m, &rows[r][k]);
                    rows[i][k] = f.sub(&rows[i][k], &t);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

/// Basis of `{x : A x = 0}` for `A` given by rows.
fn nullspace<F: Field>(f: &F, a: &[Vector<F>], ncols: usize) -> Vec<Vector<F>> {
    let mut rows = a.to_vec();
    let pivots = rref(f, &mut rows, ncols);
    let mut out = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![f.zero(); ncols];
        v[free] = f.one();
        for (i, &p) in pivots.iter().enumerate() {
            v[p] = f.neg(&rows[i][free]);
        }
        out.push(v);
    }
    out
}

fn rank<F: Field>(f: &F, vectors: &[Vector<F>], len: usize) -> usize {
    let mut rows = vectors.to_vec();
    rref(f, &mut rows, len).len()
}

/// Coefficients of `v` in terms of the linearly independent `basis`.
fn solve<F: Field>(f: &F, basis: &[Vector<F>], v: &[F::Elem]) -> Vector<F> {
    let n = basis.len();
    let len = v.len();
    // rows of [B | v] transposed: equations per coordinate
    let mut rows: Vec<Vector<F>> = (0..len)
        .map(|r| {
            let mut row: Vector<F> = basis.iter().map(|b| b[r].clone()).collect();
            row.push(v[r].clone());
            row
        })
        .collect();
    let pivots = rref(f, &mut rows, n + 1);
    assert!(!pivots.contains(&n), "vector outside the span");
    let mut x = vec![f.zero(); n];
    for (i, &p) in pivots.iter().enumerate() {
        x[p] = rows[i][n].clone();
    }
    x
}

fn apply<F: Field>(f: &F, m: &[Vector<F>], v: &[F::Elem]) -> Vector<F> {
    // m stored as columns
    let rows = m.first().map_or(0, |c| c.len());
    let mut out = vec![f.zero(); rows];
    for (c, x) in m.iter().zip(v) {
        if f.is_zero(x) {
            continue;
        }
        for r in 0..rows {
            out[r] = f.add(&out[r], &f.mul(x, &c[r]));
        }
    }
    out
}

/// Monomials of degree `d` in `v` variables avoiding `forbidden`.
fn standard_monomials(v: usize, d: i64, forbidden: &[Vec<u16>]) -> Vec<Vec<u16>> {
    let mut out = Vec::new();
    if d < 0 {
        return out;
    }
    let mut cur = vec![0u16; v];
    fn rec(i: usize, left: u16, cur: &mut Vec<u16>, out: &mut Vec<Vec<u16>>, forbidden: &[Vec<u16>]) {
        if i + 1 == cur.len() {
            cur[i] = left;
            if !forbidden.iter().any(|g| g.iter().zip(cur.iter()).all(|(a, b)| a <= b)) {
                out.push(cur.clone());
            }
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e;
            rec(i + 1, left - e, cur, out, forbidden);
        }
        cur[i] = 0;
    }
    if v == 0 {
        if d == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(0, d as u16, &mut cur, &mut out, forbidden);
    out
}

/// Dense graded representation: `dims[d - lo]` and `act[d - lo][i]` (columns) from degree `d` to `d + 1`.
#[derive(Clone, Debug)]
struct Rep<F: Field> {
    lo: Deg,
    dims: Vec<usize>,
    act: Vec<Vec<Vec<Vector<F>>>>,
}

impl<F: Field> Rep<F> {
    fn dim(&self, d: Deg) -> usize {
        let i = d - self.lo;
        if i < 0 {
            0
        } else {
            self.dims.get(i as usize).copied().unwrap_or(0)
        }
    }

    fn hi(&self) -> Deg {
        self.lo + self.dims.len() as Deg - 1
    }

    fn total(&self) -> usize {
        self.dims.iter().sum()
    }

    fn act(&self, d: Deg, i: usize, v: &[F::Elem], f: &F) -> Vector<F> {
        if self.dim(d + 1) == 0 || self.dim(d) == 0 {
            return vec![f.zero(); self.dim(d + 1)];
        }
        apply(f, &self.act[(d - self.lo) as usize][i], v)
    }

    /// Multiplication by a monomial, one variable at a time.
    fn act_mono(&self, d: Deg, mono: &[u16], v: &[F::Elem], f: &F) -> Vector<F> {
        let mut cur = v.to_vec();
        let mut deg = d;
        for (i, &e) in mono.iter().enumerate() {
            for _ in 0..e {
                cur = self.act(deg, i, &cur, f);
                deg += 1;
            }
        }
        cur
    }
}

struct Ctx<F: Field> {
    f: F,
    v: usize,
    forbidden: Vec<Vec<u16>>,
    top: Deg,
}

impl<F: Field> Ctx<F> {
    fn monos(&self, d: Deg) -> Vec<Vec<u16>> {
        if d > self.top {
            return Vec::new();
        }
        standard_monomials(self.v, d as i64, &self.forbidden)
    }

    fn is_standard(&self, m: &[u16]) -> bool {
        !self.forbidden.iter().any(|g| g.iter().zip(m).all(|(a, b)| a <= b))
    }
}

/// Basis `(generator, monomial)` of a free module in degree `d`.
fn free_basis<F: Field>(ctx: &Ctx<F>, twists: &[Deg], d: Deg) -> Vec<(usize, Vec<u16>)> {
    let mut out = Vec::new();
    for (g, &a) in twists.iter().enumerate() {
        for m in ctx.monos(d - a) {
            out.push((g, m));
        }
    }
    out
}

fn index_of(basis: &[(usize, Vec<u16>)], g: usize, m: &[u16]) -> Option<usize> {
    basis.iter().position(|(h, u)| *h == g && u == m)
}

/// Quotient `F / S` where `S` is spanned degreewise by `rel(d)`.
fn quotient_rep<F: Field>(ctx: &Ctx<F>, twists: &[Deg], lo: Deg, hi: Deg, rel: impl Fn(Deg, &[(usize, Vec<u16>)]) -> Vec<Vector<F>>) -> Rep<F> {
    let f = &ctx.f;
    let mut data = Vec::new();
    for d in lo..=hi + 1 {
        let basis = free_basis(ctx, twists, d);
        let mut rows = rel(d, &basis);
        let pivots = rref(f, &mut rows, basis.len());
        let free: Vec<usize> = (0..basis.len()).filter(|c| !pivots.contains(c)).collect();
        data.push((basis, rows, pivots, free));
    }
    let reduce = |idx: usize, w: Vector<F>| -> Vector<F> {
        let (_, rows, pivots, free) = &data[idx];
        let mut w = w;
        for (r, &p) in pivots.iter().enumerate() {
            if !f.is_zero(&w[p]) {
                let m = w[p].clone();
                for k in 0..w.len() {
                    let t = f.mul(&m, &rows[r][k]);
                    w[k] = f.sub(&w[k], &t);
                }
            }
        }
        free.iter().map(|&c| w[c].clone()).collect()
    };
    let mut dims = Vec::new();
    let mut act = Vec::new();
    for d in lo..=hi {
        let idx = (d - lo) as usize;
        let (basis, _, _, free) = &data[idx];
        dims.push(free.len());
        let (nbasis, _, _, _) = &data[idx + 1];
        let mut per_var = Vec::new();
        for i in 0..ctx.v {
            let cols = free
                .iter()
                .map(|&c| {
                    let (g, u) = &basis[c];
                    let mut w = vec![f.zero(); nbasis.len()];
                    let mut u2 = u.clone();
                    u2[i] += 1;
                    if ctx.is_standard(&u2) {
                        if let Some(k) = index_of(nbasis, *g, &u2) {
                            w[k] = f.one();
                        }
                    }
                    reduce(idx + 1, w)
                })
                .collect();
            per_var.push(cols);
        }
        act.push(per_var);
    }
    Rep { lo, dims, act }
}

/// One step of a dense resolution: generators of `V` and the kernel of the cover.
struct Step<F: Field> {
    twists: Vec<Deg>,
    /// Generator images as vectors of `V` (in the degree of the generator).
    images: Vec<Vector<F>>,
}

fn minimal_cover<F: Field>(f: &F, v: &Rep<F>, nvars: usize) -> Step<F> {
    let mut twists = Vec::new();
    let mut images = Vec::new();
    for d in v.lo..=v.hi() {
        let n = v.dim(d);
        if n == 0 {
            continue;
        }
        let mut rows: Vec<Vector<F>> = Vec::new();
        if v.dim(d - 1) > 0 {
            for i in 0..nvars {
                for k in 0..v.dim(d - 1) {
                    let mut e = vec![f.zero(); v.dim(d - 1)];
                    e[k] = f.one();
                    rows.push(v.act(d - 1, i, &e, f));
                }
            }
        }
        let pivots = rref(f, &mut rows, n);
        for c in (0..n).filter(|c| !pivots.contains(c)) {
            let mut e = vec![f.zero(); n];
            e[c] = f.one();
            twists.push(d);
            images.push(e);
        }
    }
    Step { twists, images }
}

/// Kernel of the cover `F -> V` as a representation, with its embedding into `F`.
fn cover_kernel<F: Field>(ctx: &Ctx<F>, v: &Rep<F>, step: &Step<F>, lo: Deg, hi: Deg) -> (Rep<F>, Vec<Vec<Vector<F>>>) {
    let f = &ctx.f;
    let mut kbases: Vec<Vec<Vector<F>>> = Vec::new();
    let mut fbases = Vec::new();
    for d in lo..=hi + 1 {
        let basis = free_basis(ctx, &step.twists, d);
        // columns: image of each basis element in V_d
        let vd = v.dim(d);
        let cols: Vec<Vector<F>> = basis
            .iter()
            .map(|(g, u)| {
                if vd == 0 {
                    Vec::new()
                } else {
                    v.act_mono(step.twists[*g], u, &step.images[*g], f)
                }
            })
            .collect();
        let rows: Vec<Vector<F>> = (0..vd).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect();
        let ker = if vd == 0 {
            (0..basis.len())
                .map(|k| {
                    let mut e = vec![f.zero(); basis.len()];
                    e[k] = f.one();
                    e
                })
                .collect()
        } else {
            nullspace(f, &rows, basis.len())
        };
        kbases.push(ker);
        fbases.push(basis);
    }
    let mut dims = Vec::new();
    let mut act = Vec::new();
    for d in lo..=hi {
        let idx = (d - lo) as usize;
        dims.push(kbases[idx].len());
        let mut per_var = Vec::new();
        for i in 0..ctx.v {
            let cols = kbases[idx]
                .iter()
                .map(|k| {
                    let nb = &fbases[idx + 1];
                    let mut w = vec![f.zero(); nb.len()];
                    for (c, (g, u)) in k.iter().zip(&fbases[idx]) {
                        if f.is_zero(c) {
                            continue;
                        }
                        let mut u2 = u.clone();
                        u2[i] += 1;
                        if ctx.is_standard(&u2) {
                            let t = index_of(nb, *g, &u2).expect("basis");
                            w[t] = f.add(&w[t], c);
                        }
                    }
                    if kbases[idx + 1].is_empty() {
                        Vec::new()
                    } else {
                        solve(f, &kbases[idx + 1], &w)
                    }
                })
                .collect();
            per_var.push(cols);
        }
        act.push(per_var);
    }
    kbases.pop();
    (Rep { lo, dims, act }, kbases)
}

/// A dense minimal resolution: twists of `F_n` and images of generators in `F_{n-1}` coordinates.
struct DenseResolution<F: Field> {
    twists: Vec<Vec<Deg>>,
    /// `images[n][g]`: `(generator of F_{n-1}, monomial, coefficient)` terms of `d_n(e_g)`.
    images: Vec<Vec<Vec<(usize, Vec<u16>, F::Elem)>>>,
}

fn module_rep<F: Field>(ctx: &Ctx<F>, m: &GradedModule<F>) -> Rep<F> {
    let pres = m.presentation();
    let twists = pres.target.twists.clone();
    let lo = twists.iter().copied().min().unwrap_or(0);
    let hi = twists.iter().copied().max().unwrap_or(-1) + ctx.top;
    let f = ctx.f.clone();
    quotient_rep(ctx, &twists, lo, hi, |d, basis| {
        let mut rows = Vec::new();
        for (j, col) in pres.columns.iter().enumerate() {
            let s = pres.source.twists[j];
            for u in ctx.monos(d - s) {
                let mut w = vec![f.zero(); basis.len()];
                for (g, t, c) in col {
                    let p: Vec<u16> = t.exponents().iter().zip(&u).map(|(a, b)| a + b).collect();
                    if ctx.is_standard(&p) {
                        let k = index_of(basis, *g, &p).expect("basis");
                        w[k] = f.add(&w[k], c);
                    }
                }
                rows.push(w);
            }
        }
        rows
    })
}

fn dense_resolution<F: Field>(ctx: &Ctx<F>, m: &GradedModule<F>, len: usize, bound: usize) -> Result<DenseResolution<F>> {
    let f = &ctx.f;
    let mut v = module_rep(ctx, m);
    let mut twists = Vec::new();
    let mut images = Vec::new();
    // generator images of step n expressed in F_{n-1}; for n = 0 they live in M
    let mut embed: Option<(Vec<Deg>, Vec<Vec<Vector<F>>>, Deg)> = None;
    for _n in 0..=len {
        if v.total() > bound {
            return Err(Error::BoundExceeded(format!("dense module of dimension {} exceeds {bound}", v.total())));
        }
        let step = minimal_cover(f, &v, ctx.v);
        if let Some((prev_twists, kb, klo)) = &embed {
            let mut imgs = Vec::new();
            for (g, d) in step.twists.iter().enumerate() {
                let basis = free_basis(ctx, prev_twists, *d);
                let vecf = apply(f, &kb[(d - klo) as usize], &step.images[g]);
                let terms = basis
                    .into_iter()
                    .zip(vecf)
                    .filter(|(_, c)| !f.is_zero(c))
                    .map(|((h, u), c)| (h, u, c))
                    .collect();
                imgs.push(terms);
            }
            images.push(imgs);
        } else {
            images.push(Vec::new());
        }
        let lo = step.twists.iter().copied().min().unwrap_or(0);
        let hi = step.twists.iter().copied().max().unwrap_or(-1) + ctx.top;
        let (kernel, kb) = cover_kernel(ctx, &v, &step, lo, hi);
        // columns of the kernel embedding per degree
        let kb_cols: Vec<Vec<Vector<F>>> = kb.into_iter().collect();
        embed = Some((step.twists.clone(), kb_cols, lo));
        twists.push(step.twists);
        v = kernel;
    }
    Ok(DenseResolution { twists, images })
}

fn context<F: Field>(m: &GradedModule<F>) -> Result<Ctx<F>> {
    let ring = m.ring();
    let top = ring.top_degree().filter(|_| ring.is_artinian()).ok_or(Error::NotArtinian)? as Deg;
    Ok(Ctx {
        f: ring.field().clone(),
        v: ring.nvars(),
        forbidden: ring.defining().gens().iter().map(|g| g.exponents().to_vec()).collect(),
        top,
    })
}

fn chain_dims<F: Field>(n_rep: &Rep<F>, twists: &[Deg], d: Deg, sign: Deg) -> (Vec<usize>, usize) {
    let mut offs = Vec::new();
    let mut acc = 0;
    for &a in twists {
        offs.push(acc);
        acc += n_rep.dim(d + sign * a);
    }
    offs.push(acc);
    (offs, acc)
}

/// Differential `F_n ⊗ N -> F_{n-1} ⊗ N` in degree `d`, as rows.
fn tor_rows<F: Field>(ctx: &Ctx<F>, n_rep: &Rep<F>, res: &DenseResolution<F>, n: usize, d: Deg) -> (Vec<Vector<F>>, usize) {
    let f = &ctx.f;
    let (src_off, src_dim) = chain_dims(n_rep, &res.twists[n], d, -1);
    let (tgt_off, tgt_dim) = chain_dims(n_rep, &res.twists[n - 1], d, -1);
    let mut rows = vec![vec![f.zero(); src_dim]; tgt_dim];
    for (g, terms) in res.images[n].iter().enumerate() {
        let e = d - res.twists[n][g];
        for k in 0..n_rep.dim(e) {
            let mut x = vec![f.zero(); n_rep.dim(e)];
            x[k] = f.one();
            for (h, u, c) in terms {
                let y = n_rep.act_mono(e, u, &x, f);
                for (r, val) in y.iter().enumerate() {
                    let row = tgt_off[*h] + r;
                    rows[row][src_off[g] + k] = f.add(&rows[row][src_off[g] + k], &f.mul(c, val));
                }
            }
        }
    }
    (rows, src_dim)
}

/// Coboundary `Hom(F_n, N) -> Hom(F_{n+1}, N)` in degree `d`, as rows.
fn ext_rows<F: Field>(ctx: &Ctx<F>, n_rep: &Rep<F>, res: &DenseResolution<F>, n: usize, d: Deg) -> (Vec<Vector<F>>, usize) {
    let f = &ctx.f;
    let (src_off, src_dim) = chain_dims(n_rep, &res.twists[n], d, 1);
    let (tgt_off, tgt_dim) = chain_dims(n_rep, &res.twists[n + 1], d, 1);
    let mut rows = vec![vec![f.zero(); src_dim]; tgt_dim];
    for (l, terms) in res.images[n + 1].iter().enumerate() {
        for (h, u, c) in terms {
            let e = d + res.twists[n][*h];
            for k in 0..n_rep.dim(e) {
                let mut x = vec![f.zero(); n_rep.dim(e)];
                x[k] = f.one();
                let y = n_rep.act_mono(e, u, &x, f);
                for (r, val) in y.iter().enumerate() {
                    let row = tgt_off[l] + r;
                    rows[row][src_off[*h] + k] = f.add(&rows[row][src_off[*h] + k], &f.mul(c, val));
                }
            }
        }
    }
    (rows, src_dim)
}

fn transpose_rank<F: Field>(f: &F, rows: &[Vector<F>], ncols: usize) -> usize {
    if rows.is_empty() || ncols == 0 {
        return 0;
    }
    rank(f, rows, ncols)
}

/// A dense resolution of `M` together with the representation machinery.
pub struct DenseOracle<F: Field> {
    ctx: Ctx<F>,
    res: DenseResolution<F>,
    len: usize,
    bound: usize,
}

impl<F: Field> DenseOracle<F> {
    /// Resolves `M` densely through homological degree `n_max + 1`.
    pub fn new(m: &GradedModule<F>, n_max: usize, bound: usize) -> Result<Self> {
        let ctx = context(m)?;
        let res = dense_resolution(&ctx, m, n_max + 1, bound)?;
        Ok(Self { ctx, res, len: n_max, bound })
    }

    pub fn betti(&self, n: usize) -> usize {
        self.res.twists[n].len()
    }

    fn rep_of(&self, n_mod: &GradedModule<F>) -> Result<Rep<F>> {
        if !n_mod.ring().is_artinian() {
            return Err(Error::NotArtinian);
        }
        let r = module_rep(&self.ctx, n_mod);
        if r.total() > self.bound {
            return Err(Error::BoundExceeded(format!("dense module of dimension {} exceeds {}", r.total(), self.bound)));
        }
        Ok(r)
    }

    /// Nonzero `dim Tor_n(M, N)_d`.
    pub fn tor_dims(&self, n_mod: &GradedModule<F>, n: usize) -> Result<BTreeMap<Deg, usize>> {
        assert!(n <= self.len);
        let f = &self.ctx.f;
        let nr = self.rep_of(n_mod)?;
        let tw = &self.res.twists[n];
        let mut out = BTreeMap::new();
        let (Some(amin), Some(amax)) = (tw.iter().min(), tw.iter().max()) else { return Ok(out) };
        for d in nr.lo + amin..=nr.hi() + amax {
            let (_, dim) = chain_dims(&nr, tw, d, -1);
            if dim == 0 {
                continue;
            }
            let z = if n == 0 {
                dim
            } else {
                let (rows, c) = tor_rows(&self.ctx, &nr, &self.res, n, d);
                c - transpose_rank(f, &rows, c)
            };
            let (rows, c) = tor_rows(&self.ctx, &nr, &self.res, n + 1, d);
            let b = transpose_rank(f, &rows, c);
            if z > b {
                out.insert(d, z - b);
            }
        }
        Ok(out)
    }

    /// Nonzero `dim Ext^n(M, N)_d`.
    pub fn ext_dims(&self, n_mod: &GradedModule<F>, n: usize) -> Result<BTreeMap<Deg, usize>> {
        assert!(n <= self.len);
        let f = &self.ctx.f;
        let nr = self.rep_of(n_mod)?;
        let tw = &self.res.twists[n];
        let mut out = BTreeMap::new();
        let (Some(amin), Some(amax)) = (tw.iter().min(), tw.iter().max()) else { return Ok(out) };
        for d in nr.lo - amax..=nr.hi() - amin {
            let (_, dim) = chain_dims(&nr, tw, d, 1);
            if dim == 0 {
                continue;
            }
            let (rows, c) = ext_rows(&self.ctx, &nr, &self.res, n, d);
            let z = c - transpose_rank(f, &rows, c);
            let b = if n == 0 {
                0
            } else {
                let (rows, c) = ext_rows(&self.ctx, &nr, &self.res, n - 1, d);
                transpose_rank(f, &rows, c)
            };
            if z > b {
                out.insert(d, z - b);
            }
        }
        Ok(out)
    }
}

/// `dim Tor_n(M, N)_d` by the dense pipeline; the ring must be Artinian and
/// every dense module must have total dimension at most `bound`.
pub fn brute_force_tor_oracle<F: Field>(m: &GradedModule<F>, n_mod: &GradedModule<F>, n: usize, bound: usize) -> Result<BTreeMap<Deg, usize>> {
    if !m.ring().same_ring(n_mod.ring()) {
        return Err(Error::RingMismatch);
    }
    DenseOracle::new(m, n, bound)?.tor_dims(n_mod, n)
}

/// `dim Ext^n(M, N)_d` by the dense pipeline.
pub fn brute_force_ext_oracle<F: Field>(m: &GradedModule<F>, n_mod: &GradedModule<F>, n: usize, bound: usize) -> Result<BTreeMap<Deg, usize>> {
    if !m.ring().same_ring(n_mod.ring()) {
        return Err(Error::RingMismatch);
    }
    DenseOracle::new(m, n, bound)?.ext_dims(n_mod, n)
}
