use super::*;
use crate::field::PrimeField;
use crate::monoring::GradedRing;
use proptest::prelude::*;

fn mono(e: &[u16]) -> Monomial {
    Monomial::from_exponents(e)
}

fn square_zero() -> Ring<PrimeField> {
    GradedRing::with_default_names(PrimeField::default(), 2, [mono(&[2, 0]), mono(&[1, 1]), mono(&[0, 2])])
}

fn three_lines() -> Ring<PrimeField> {
    GradedRing::with_default_names(PrimeField::default(), 3, [mono(&[1, 1, 0]), mono(&[1, 0, 1]), mono(&[0, 1, 1])])
}

fn dims<F: Field>(m: &GradedModule<F>, range: std::ops::RangeInclusive<Deg>) -> Vec<usize> {
    range.map(|d| piece(m, d, 50).unwrap().dim()).collect()
}

#[test]
fn pieces_of_ring_residue_field_and_twist() {
    let r = square_zero();
    let ring_mod = GradedModule::free(r.clone(), vec![0]);
    assert_eq!(dims(&ring_mod, 0..=2), vec![1, 2, 0]);
    let k = residue_field(&r);
    assert_eq!(dims(&k, 0..=3), vec![1, 0, 0, 0]);
    let shifted = twist(&ring_mod, -1);
    assert_eq!(piece(&shifted, 1, 5).unwrap().dim(), 1);
    assert!(matches!(piece(&k, 6, 5), Err(Error::WindowExceeded { requested: 6, window: 5 })));
}

#[test]
fn minimize_unit_presentation_is_zero() {
    let r = square_zero();
    let m = GradedModule::from_matrix(r.clone(), vec![0], vec![vec![vec![(r.one(), 1u32)]]]).unwrap();
    let mm = minimize(&m);
    assert_eq!(mm.num_generators(), 0);
    assert!(mm.presentation().is_minimal());
}

fn redundant_max_ideal(r: &Ring<PrimeField>) -> GradedModule<PrimeField> {
    // F_0 = R(-1)^3 mapping onto (x, y, x); relations: e_0 - e_2 and the annihilator terms
    let x = Monomial::var(2, 0);
    let y = Monomial::var(2, 1);
    let one = r.one();
    let mut cols = vec![vec![(0, one.clone(), 1u32), (2, one, 100u32)]];
    for g in 0..3 {
        cols.push(vec![(g, x.clone(), 1)]);
        cols.push(vec![(g, y.clone(), 1)]);
    }
    let src = FreeModule::new(vec![1, 2, 2, 2, 2, 2, 2]);
    let map = GradedMap::new(src, FreeModule::new(vec![1, 1, 1]), cols).unwrap();
    GradedModule::from_presentation(r.clone(), map).unwrap()
}

#[test]
fn minimize_drops_repeated_generator() {
    let r = square_zero();
    let m = redundant_max_ideal(&r);
    let mm = minimize(&m);
    assert_eq!(mm.num_generators(), 2);
    assert!(mm.presentation().is_minimal());
    assert_eq!(dims(&m, 0..=3), dims(&mm, 0..=3));
    let again = minimize(&mm);
    assert_eq!(again.generators(), mm.generators());
    assert_eq!(again.presentation().source, mm.presentation().source);
}

#[test]
fn maximal_ideal_as_module() {
    let r = square_zero();
    let m = ideal_as_module(&r, &r.maximal_ideal()).unwrap();
    assert_eq!(m.generators().twists, vec![1, 1]);
    assert_eq!(m.presentation().source.twists, vec![2, 2, 2, 2]);
    assert_eq!(dims(&m, 0..=2), vec![0, 2, 0]);
}

#[test]
fn principal_ideal_in_three_lines() {
    let r = three_lines();
    let i = MonomialIdeal::new(3, [Monomial::var(3, 0)]);
    let m = ideal_as_module(&r, &i).unwrap();
    assert_eq!(m.num_generators(), 1);
    let mut rel: Vec<Monomial> = m.presentation().columns.iter().map(|c| c[0].1.clone()).collect();
    rel.sort();
    let mut expect = vec![Monomial::var(3, 1), Monomial::var(3, 2)];
    expect.sort();
    assert_eq!(rel, expect);
    let zero = ideal_as_module(&r, &MonomialIdeal::zero(3)).unwrap();
    assert_eq!(zero.num_generators(), 0);
}

#[test]
fn residue_field_shape() {
    let r = square_zero();
    let k = residue_field(&r);
    assert_eq!(k.generators().rank(), 1);
    assert_eq!(k.presentation().source.rank(), 2);
    assert_eq!(mu_by_nakayama(&k, 10).unwrap(), 1);
}

#[test]
fn direct_sums() {
    let r = square_zero();
    let k = residue_field(&r);
    let kk = direct_sum(&k, &k).unwrap();
    assert_eq!(minimize(&kk).num_generators(), 2);
    let z = direct_sum(&k, &GradedModule::zero(r.clone())).unwrap();
    assert_eq!(dims(&z, 0..=3), dims(&k, 0..=3));

    let t = three_lines();
    let parts: Vec<_> = (0..3).map(|i| ideal_as_module(&t, &MonomialIdeal::new(3, [Monomial::var(3, i)])).unwrap()).collect();
    let s = direct_sum(&direct_sum(&parts[0], &parts[1]).unwrap(), &parts[2]).unwrap();
    let m = ideal_as_module(&t, &t.maximal_ideal()).unwrap();
    assert_eq!(dims(&s, 0..=6), dims(&m, 0..=6));

    let other = three_lines();
    assert!(matches!(direct_sum(&k, &residue_field(&other)), Err(Error::RingMismatch)));
}

#[test]
fn colon_examples() {
    let r = square_zero();
    let zero = SubmodulePair::ideal_in_ring(&r, &MonomialIdeal::zero(2)).unwrap();
    let c = colon_submodule(&zero, 4).unwrap();
    assert_eq!(c.dim(1), 2);
    assert_eq!(c.dim(0), 0);
    assert!(c.status.is_exact());

    let max = SubmodulePair::ideal_in_ring(&r, &r.maximal_ideal()).unwrap();
    let c = colon_submodule(&max, 4).unwrap();
    assert_eq!((c.dim(0), c.dim(1)), (1, 2));

    let t = three_lines();
    let x2 = SubmodulePair::ideal_in_ring(&t, &MonomialIdeal::new(3, [mono(&[2, 0, 0])])).unwrap();
    let c = colon_submodule(&x2, 4).unwrap();
    assert!(!c.status.is_exact());
    // (x^2 : m) = (x): one-dimensional in each degree 1..4
    for d in 1..=4 {
        assert_eq!(c.dim(d), 1, "degree {d}");
    }
    assert_eq!(c.dim(0), 0);
    assert!(matches!(colon_submodule(&x2, 2), Err(Error::WindowTooSmall { .. })));
}

#[test]
fn maxideal_multiple_examples() {
    let r = square_zero();
    let zero = SubmodulePair::ideal_in_ring(&r, &MonomialIdeal::zero(2)).unwrap();
    let z = submodule_pieces(&zero, 4).unwrap();
    let mz = maxideal_multiple(&zero, &z, 4).unwrap();
    assert!(mz.dims().values().all(|&d| d == 0));

    let max = SubmodulePair::ideal_in_ring(&r, &r.maximal_ideal()).unwrap();
    let m = submodule_pieces(&max, 4).unwrap();
    let mm = maxideal_multiple(&max, &m, 4).unwrap();
    assert!(mm.dims().values().all(|&d| d == 0));

    let t = three_lines();
    let x = SubmodulePair::ideal_in_ring(&t, &MonomialIdeal::new(3, [Monomial::var(3, 0)])).unwrap();
    let xs = submodule_pieces(&x, 5).unwrap();
    let mx = maxideal_multiple(&x, &xs, 5).unwrap();
    let x2 = SubmodulePair::ideal_in_ring(&t, &MonomialIdeal::new(3, [mono(&[2, 0, 0])])).unwrap();
    let x2s = submodule_pieces(&x2, 5).unwrap();
    assert_eq!(mx.dims(), x2s.dims());
}

fn arb_artinian_ring() -> impl Strategy<Value = Ring<PrimeField>> {
    (1usize..=3, proptest::collection::vec(2u16..=3, 3), proptest::collection::vec(proptest::collection::vec(0u16..=2, 3), 0..3))
        .prop_map(|(v, powers, extra)| {
            let mut rels: Vec<Monomial> = (0..v).map(|i| Monomial::var(v, i)).zip(&powers).map(|(x, &a)| {
                let mut e = vec![0u16; v];
                e[x.pure_power_var().unwrap()] = a;
                mono(&e)
            }).collect();
            for e in extra {
                let m = mono(&e[..v]);
                if m.degree() >= 2 {
                    rels.push(m);
                }
            }
            GradedRing::with_default_names(PrimeField::default(), v, rels)
        })
}

/// Random cokernel with generators in degrees 0..=1 and monomial-times-scalar entries.
fn arb_module() -> impl Strategy<Value = GradedModule<PrimeField>> {
    (arb_artinian_ring(), proptest::collection::vec(0i32..=1, 1..=3), any::<u64>()).prop_map(|(r, twists, seed)| {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let v = r.nvars();
        let ncols = rng.gen_range(0..=3);
        let mut cols = Vec::new();
        let mut src = Vec::new();
        for _ in 0..ncols {
            let deg = rng.gen_range(0..=2) + *twists.iter().max().unwrap();
            let mut col = Vec::new();
            for (g, &a) in twists.iter().enumerate() {
                let e = deg - a;
                if let Some(b) = r.basis_i(e).filter(|b| !b.is_empty()) {
                    if rng.gen_bool(0.7) {
                        let m = b.monos[rng.gen_range(0..b.len())].clone();
                        col.push((g, m, rng.gen_range(1..101u32)));
                    }
                }
            }
            if !col.is_empty() {
                src.push(deg);
                cols.push(normalize_elem(r.field(), col));
            }
        }
        let _ = v;
        let map = GradedMap::new(FreeModule::new(src), FreeModule::new(twists), cols).unwrap();
        GradedModule::from_presentation(r, map).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn minimize_preserves_pieces(m in arb_module()) {
        let mm = minimize(&m);
        prop_assert!(mm.presentation().is_minimal());
        let top = m.top_degree().unwrap() + 1;
        prop_assert_eq!(dims(&m, -1..=top), dims(&mm, -1..=top));
        prop_assert_eq!(mm.num_generators(), mu_by_nakayama(&m, 50).unwrap());
    }

    #[test]
    fn direct_sum_pieces_add(a in arb_module(), seed in any::<u64>()) {
        let _ = seed;
        let b = residue_field(a.ring());
        let s = direct_sum(&a, &b).unwrap();
        let top = a.top_degree().unwrap() + 1;
        for d in -1..=top {
            prop_assert_eq!(piece(&s, d, 50).unwrap().dim(), piece(&a, d, 50).unwrap().dim() + piece(&b, d, 50).unwrap().dim());
        }
    }

    #[test]
    fn colon_contains_submodule(r in arb_artinian_ring(), picks in proptest::collection::vec(0usize..64, 1..3)) {
        let mut gens = Vec::new();
        for (j, p) in picks.iter().enumerate() {
            let d = 1 + (j % 2) as u32;
            let b = r.basis(d);
            if !b.is_empty() {
                gens.push(b.monos[p % b.len()].clone());
            }
        }
        let ideal = MonomialIdeal::new(r.nvars(), gens);
        let pair = SubmodulePair::ideal_in_ring(&r, &ideal).unwrap();
        let w = r.top_degree().unwrap() as Deg + 2;
        let sub = submodule_pieces(&pair, w).unwrap();
        let col = colon_submodule(&pair, w).unwrap();
        let msub = maxideal_multiple(&pair, &sub, w).unwrap();
        let mcol = maxideal_multiple(&pair, &col, w).unwrap();
        for d in 0..=w {
            let p = piece(pair.ambient(), d, w + 1).unwrap();
            let ce = col.echelon(r.field(), d, p.dim());
            for v in sub.basis(d) {
                prop_assert!(ce.contains(v));
            }
            let me = mcol.echelon(r.field(), d, p.dim());
            for v in msub.basis(d) {
                prop_assert!(me.contains(v));
            }
        }
    }
}
