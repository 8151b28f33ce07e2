//! Named ring families and seeded random instances used by tests and the
//! verification suite.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::field::{Field, PrimeField};
use crate::gmod::{normalize_elem, piece, Deg, FreeModule, GradedMap, GradedModule};
use crate::monoring::{GradedRing, Monomial, Ring};

fn quadrics(b: usize, strict: bool) -> Vec<Monomial> {
    let mut rels = Vec::new();
    for i in 0..b {
        for j in i..b {
            if strict && i == j {
                continue;
            }
            rels.push(Monomial::var(b, i).mul(&Monomial::var(b, j)));
        }
    }
    rels
}

/// `k[x_1..x_b]/(x_i x_j : i <= j)`, the ring with `𝔪² = 0`.
pub fn square_zero_ring<F: Field>(field: F, b: usize) -> Ring<F> {
    GradedRing::with_default_names(field, b, quadrics(b, false))
}

/// `k[x_1..x_b]/(x_i x_j : i < j)`, the coordinate axes.
pub fn coordinate_axes_ring<F: Field>(field: F, b: usize) -> Ring<F> {
    GradedRing::with_default_names(field, b, quadrics(b, true))
}

/// `k[x, y]/(x², y²)`.
pub fn codim_two_ci_ring<F: Field>(field: F) -> Ring<F> {
    GradedRing::with_default_names(field, 2, [Monomial::from_exponents(&[2, 0]), Monomial::from_exponents(&[0, 2])])
}

/// `k[x]/(x²)`.
pub fn dual_numbers_ring<F: Field>(field: F) -> Ring<F> {
    square_zero_ring(field, 1)
}

/// A random Artinian ring in one to three variables.
pub fn random_artinian_ring(rng: &mut impl Rng) -> Ring<PrimeField> {
    let v = rng.gen_range(1..=3usize);
    let mut rels = Vec::new();
    for i in 0..v {
        let mut e = vec![0u16; v];
        e[i] = rng.gen_range(2..=3);
        rels.push(Monomial::from_exponents(&e));
    }
    for _ in 0..rng.gen_range(0..=2) {
        let e: Vec<u16> = (0..v).map(|_| rng.gen_range(0..=1)).collect();
        let m = Monomial::from_exponents(&e);
        if m.degree() >= 2 {
            rels.push(m);
        }
    }
    GradedRing::with_default_names(PrimeField::default(), v, rels)
}

/// A random cokernel with one to three generators in degrees 0 and 1.
pub fn random_module(rng: &mut impl Rng, ring: &Ring<PrimeField>) -> GradedModule<PrimeField> {
    let f = ring.field();
    let twists: Vec<Deg> = (0..rng.gen_range(1..=3)).map(|_| rng.gen_range(0..=1)).collect();
    let top = *twists.iter().max().unwrap();
    let mut src = Vec::new();
    let mut cols = Vec::new();
    for _ in 0..rng.gen_range(0..=3) {
        let deg = top + rng.gen_range(1..=2);
        let mut col = Vec::new();
        for (g, &a) in twists.iter().enumerate() {
            let Some(b) = ring.basis_i(deg - a).filter(|b| !b.is_empty()) else { continue };
            for _ in 0..rng.gen_range(0..=2) {
                let m = b.monos[rng.gen_range(0..b.len())].clone();
                col.push((g, m, f.from_i64(rng.gen_range(1..101))));
            }
        }
        let col = normalize_elem(f, col);
        if !col.is_empty() {
            src.push(deg);
            cols.push(col);
        }
    }
    let map = GradedMap::new(FreeModule::new(src), FreeModule::new(twists), cols).expect("homogeneous by construction");
    GradedModule::from_presentation(ring.clone(), map).expect("reduced by construction")
}

/// Total dimension of a module over an Artinian ring.
pub fn total_dim<F: Field>(m: &GradedModule<F>) -> usize {
    let (Some(lo), Some(hi)) = (m.min_degree(), m.top_degree()) else { return 0 };
    (lo..=hi).map(|d| piece(m, d, Deg::MAX).map_or(0, |p| p.dim())).sum()
}

/// A seeded random pair `(M, N)` over a random Artinian ring, each of total
/// dimension at most `max_dim` and nonzero.
pub fn random_pair(seed: u64, max_dim: usize) -> (Ring<PrimeField>, GradedModule<PrimeField>, GradedModule<PrimeField>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let ring = random_artinian_ring(&mut rng);
        let m = random_module(&mut rng, &ring);
        let n = random_module(&mut rng, &ring);
        let (dm, dn) = (total_dim(&m), total_dim(&n));
        if (1..=max_dim).contains(&dm) && (1..=max_dim).contains(&dn) {
            return (ring, m, n);
        }
    }
}
