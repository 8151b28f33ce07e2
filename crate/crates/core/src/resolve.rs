//! Minimal graded free resolutions and Betti numbers.
//!
//! Step `n` finds minimal generators of `ker(d_{n-1})` degree by degree. The
//! kernel dimension in each degree is known in advance from exactness
//! (`dim ker(d_{n-1})_d = dim (F_{n-1})_d - dim ker(d_{n-2})_d`), so kernel
//! vectors are only extracted in degrees where new generators are missing.

use std::any::Any;
use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::gmod::{elem_mul_mono, minimize, piece, residue_field, Deg, FreeLayout, FreeModule, GradedMap, GradedModule, ModElem, Status};
use crate::kernelalg::Echelon;
use crate::monoring::{GradedRing, Ring};

pub const DEFAULT_N_MAX: usize = 10;
pub const DEFAULT_GUARD: u32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ResolveOptions {
    pub n_max: usize,
    pub window: Deg,
    pub guard: u32,
}

impl ResolveOptions {
    pub fn new(n_max: usize, window: Deg) -> Self {
        Self { n_max, window, guard: DEFAULT_GUARD }
    }

    /// `max degree + n_max + 2`, the default window for a module.
    pub fn auto<F: Field>(m: &GradedModule<F>, n_max: usize) -> Self {
        Self::new(n_max, auto_window(m, n_max))
    }
}

pub fn auto_window<F: Field>(m: &GradedModule<F>, n_max: usize) -> Deg {
    m.max_presentation_degree().max(0) + n_max as Deg + 2
}

/// `F_0 <- F_1 <- ... <- F_{n_max}`.
#[derive(Clone, Debug)]
pub struct Resolution<F: Field> {
    ring: Ring<F>,
    module: GradedModule<F>,
    frees: Vec<FreeModule>,
    /// `maps[k]` is `d_{k+1}: F_{k+1} -> F_k`.
    maps: Vec<GradedMap<F>>,
    status: Vec<Status>,
    opts: ResolveOptions,
}

impl<F: Field> Resolution<F> {
    pub fn ring(&self) -> &Ring<F> {
        &self.ring
    }

    /// The minimized module being resolved.
    pub fn module(&self) -> &GradedModule<F> {
        &self.module
    }

    pub fn n_max(&self) -> usize {
        self.opts.n_max
    }

    pub fn window(&self) -> Deg {
        self.opts.window
    }

    pub fn options(&self) -> ResolveOptions {
        self.opts
    }

    pub fn free(&self, n: usize) -> &FreeModule {
        &self.frees[n]
    }

    pub fn frees(&self) -> &[FreeModule] {
        &self.frees
    }

    /// `d_n: F_n -> F_{n-1}` for `1 <= n <= n_max`.
    pub fn map(&self, n: usize) -> &GradedMap<F> {
        &self.maps[n - 1]
    }

    pub fn maps(&self) -> &[GradedMap<F>] {
        &self.maps
    }

    pub fn status(&self, n: usize) -> Status {
        self.status[n]
    }

    pub fn statuses(&self) -> &[Status] {
        &self.status
    }

    pub fn betti(&self, n: usize) -> usize {
        self.frees[n].rank()
    }

    pub fn is_minimal(&self) -> bool {
        self.maps.iter().all(|m| m.is_minimal())
    }

    /// Truncation to a shorter length.
    pub fn truncate(&self, n_max: usize) -> Resolution<F> {
        assert!(n_max <= self.opts.n_max);
        Resolution {
            ring: Arc::clone(&self.ring),
            module: self.module.clone(),
            frees: self.frees[..=n_max].to_vec(),
            maps: self.maps[..n_max].to_vec(),
            status: self.status[..=n_max].to_vec(),
            opts: ResolveOptions { n_max, ..self.opts },
        }
    }
}

/// Total and graded Betti numbers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiTable {
    pub total: Vec<usize>,
    /// `graded[n][d] = β_{n,d}`.
    pub graded: Vec<BTreeMap<Deg, usize>>,
    pub status: Vec<Status>,
}

impl BettiTable {
    pub fn zero(n_max: usize) -> Self {
        Self { total: vec![0; n_max + 1], graded: vec![BTreeMap::new(); n_max + 1], status: vec![Status::Exact; n_max + 1] }
    }

    pub fn overall_status(&self) -> Status {
        self.status.iter().fold(Status::Exact, |a, b| a.meet(*b))
    }
}

pub fn betti_numbers<F: Field>(res: &Resolution<F>) -> BettiTable {
    let graded: Vec<BTreeMap<Deg, usize>> = res
        .frees
        .iter()
        .map(|f| {
            let mut h = BTreeMap::new();
            for &a in &f.twists {
                *h.entry(a).or_insert(0) += 1;
            }
            h
        })
        .collect();
    BettiTable { total: res.frees.iter().map(|f| f.rank()).collect(), graded, status: res.status.clone() }
}

/// Content hash of everything a resolution depends on.
pub fn cache_key<F: Field>(m: &GradedModule<F>, opts: &ResolveOptions) -> String {
    let ring = m.ring();
    let mut h = Sha256::new();
    h.update(ring.field().name().as_bytes());
    h.update(b"|");
    h.update(ring.describe().as_bytes());
    h.update(b"|");
    h.update(m.canonical_text().as_bytes());
    h.update(format!("|n={}|w={}|g={}", opts.n_max, opts.window, opts.guard).as_bytes());
    hex::encode(h.finalize())
}

const CACHE_LIMIT: usize = 64;

type AnyCache = Mutex<HashMap<String, Arc<dyn Any + Send + Sync>>>;

fn global_cache() -> &'static AnyCache {
    static CACHE: OnceLock<AnyCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// [`minimal_resolution_with`] behind a process-wide content-hash cache.
pub fn cached_resolution<F: Field>(m: &GradedModule<F>, opts: &ResolveOptions) -> Result<Arc<Resolution<F>>> {
    let key = cache_key(m, opts);
    if let Some(hit) = global_cache().lock().expect("resolution cache").get(&key) {
        if let Ok(res) = Arc::clone(hit).downcast::<Resolution<F>>() {
            return Ok(res);
        }
    }
    let res = Arc::new(minimal_resolution_with(m, opts)?);
    let mut cache = global_cache().lock().expect("resolution cache");
    if cache.len() >= CACHE_LIMIT {
        cache.clear();
    }
    cache.insert(key, Arc::clone(&res) as Arc<dyn Any + Send + Sync>);
    Ok(res)
}

pub fn minimal_resolution<F: Field>(m: &GradedModule<F>, n_max: usize, window: Deg) -> Result<Resolution<F>> {
    minimal_resolution_with(m, &ResolveOptions::new(n_max, window))
}

fn twist_histogram(f: &FreeModule) -> BTreeMap<Deg, usize> {
    let mut h = BTreeMap::new();
    for &a in &f.twists {
        *h.entry(a).or_insert(0) += 1;
    }
    h
}

fn free_dim<F: Field>(ring: &GradedRing<F>, hist: &BTreeMap<Deg, usize>, d: Deg) -> i64 {
    hist.iter().map(|(a, c)| (*c * ring.dim(d - a)) as i64).sum()
}

pub fn minimal_resolution_with<F: Field>(m: &GradedModule<F>, opts: &ResolveOptions) -> Result<Resolution<F>> {
    let module = if m.is_minimized() { m.clone() } else { minimize(m) };
    let ring = Arc::clone(module.ring());
    let required = module.max_presentation_degree() + opts.n_max as Deg;
    if opts.window < required {
        return Err(Error::WindowTooSmall { window: opts.window, required });
    }
    let artinian = ring.is_artinian();
    let top = ring.top_degree().map(|t| t as Deg);
    let n_max = opts.n_max;

    let mut frees = vec![module.generators().clone()];
    let mut maps: Vec<GradedMap<F>> = Vec::new();
    let mut status = vec![Status::Exact];
    if n_max >= 1 {
        frees.push(module.presentation().source.clone());
        maps.push(module.presentation().clone());
        status.push(Status::Exact);
    }

    // dims of ker(F_0 -> M); later replaced by ker(d_{n-1})
    let mdim_window = if artinian { Deg::MAX } else { opts.window };
    let mut prev_kernel: HashMap<Deg, i64> = HashMap::new();
    let hist0 = twist_histogram(&frees[0]);
    let kernel0 = |d: Deg| -> Result<i64> {
        let fd = free_dim(&ring, &hist0, d);
        if fd == 0 {
            return Ok(0);
        }
        Ok(fd - piece(&module, d, mdim_window)?.dim() as i64)
    };

    for n in 2..=n_max {
        let src = frees[n - 1].clone();
        let src = &src;
        let prev_map = maps[n - 2].clone();
        let upstream = status[n - 1];
        if src.rank() == 0 {
            frees.push(FreeModule::default());
            maps.push(GradedMap::zero(FreeModule::default(), src.clone()));
            status.push(upstream);
            continue;
        }
        let lo = src.min_twist().unwrap();
        let hi = match top {
            Some(t) if artinian => src.max_twist().unwrap() + t,
            _ => opts.window,
        };
        let hist_src = twist_histogram(src);

        // dims of ker(d_{n-1}), consumed by the next step
        let mut kernel_here: HashMap<Deg, i64> = HashMap::new();
        let mut new_twists: Vec<Deg> = Vec::new();
        let mut new_cols: Vec<ModElem<F>> = Vec::new();
        let mut found_in: Vec<Deg> = Vec::new();
        for d in lo..=hi {
            let im_prev = if n == 2 { kernel0(d)? } else { *prev_kernel.get(&d).unwrap_or(&0) };
            let fd = free_dim(&ring, &hist_src, d);
            let kdim = fd - im_prev;
            debug_assert!(kdim >= 0, "negative kernel dimension at step {n}, degree {d}");
            kernel_here.insert(d, kdim);
            if kdim <= 0 {
                continue;
            }
            let layout = FreeLayout::new(&ring, src, d);
            let f = ring.field().clone();
            let mut span = Echelon::new(f.clone(), layout.dim(), false);
            for (g, &e) in new_cols.iter().zip(&new_twists) {
                if let Some(basis) = ring.basis_i(d - e) {
                    for mono in &basis.monos {
                        span.add(layout.to_vec(&f, &elem_mul_mono(&ring, g, mono)));
                    }
                }
            }
            let mut need = kdim - span.rank() as i64;
            if need <= 0 {
                continue;
            }
            let (_, _, a) = prev_map.degree_matrix(&ring, d);
            for v in a.kernel_basis(&f) {
                if need == 0 {
                    break;
                }
                if span.add(v.clone()) {
                    new_cols.push(layout.to_elem::<F>(&v));
                    new_twists.push(d);
                    found_in.push(d);
                    need -= 1;
                }
            }
            if need != 0 {
                return Err(Error::Arithmetic(format!("kernel bookkeeping mismatch at step {n}, degree {d}")));
            }
        }
        let st = if artinian {
            Status::Exact
        } else {
            let guard_lo = opts.window - opts.guard as Deg + 1;
            let own = if found_in.iter().any(|&d| d >= guard_lo) {
                Status::Windowed { window: opts.window }
            } else {
                Status::Stabilized { window: opts.window, guard: opts.guard }
            };
            own.meet(upstream)
        };
        let source = FreeModule::new(new_twists);
        maps.push(GradedMap { source: source.clone(), target: src.clone(), columns: new_cols });
        frees.push(source);
        status.push(st);
        prev_kernel = kernel_here;
    }

    Ok(Resolution { ring, module, frees, maps, status, opts: *opts })
}

/// Bass numbers `μ^n(M) = dim_k Ext^n(k, M)` for `n <= n_max`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BassNumbers {
    pub values: Vec<usize>,
    pub status: Vec<Status>,
}

pub fn bass_numbers<F: Field>(m: &GradedModule<F>, n_max: usize, window: Deg) -> Result<BassNumbers> {
    let k = residue_field(m.ring());
    let ext = crate::pairhom::ext(&k, m, n_max, window)?;
    Ok(BassNumbers { values: ext.iter().map(|h| h.total_dim()).collect(), status: ext.iter().map(|h| h.status).collect() })
}

#[cfg(test)]
mod tests;
