use super::oracle::{brute_force_ext_oracle, brute_force_tor_oracle, DenseOracle};
use super::*;
use crate::corpus::{codim_two_ci_ring, random_pair, square_zero_ring};
use crate::field::PrimeField;
use crate::gmod::{direct_sum, ideal_as_module, residue_field};
use crate::resolve::{betti_numbers, minimal_resolution};
use proptest::prelude::*;

fn f101() -> PrimeField {
    PrimeField::default()
}

#[test]
fn tor_and_ext_of_maximal_ideal_over_square_zero_ring() {
    let r = square_zero_ring(f101(), 2);
    let m = ideal_as_module(&r, &r.maximal_ideal()).unwrap();
    let t = tor(&m, &m, 6, 12).unwrap();
    let e = ext(&m, &m, 6, 12).unwrap();
    for n in 0..=6 {
        assert_eq!(mu(&t[n]).unwrap(), 1 << (n + 2), "Tor_{n}");
        assert_eq!(mu(&e[n]).unwrap(), 1 << (n + 2), "Ext^{n}");
    }
    assert_eq!(mu(&t[1]).unwrap(), 8);
    assert_eq!(annihilator_power(&t[1]).unwrap(), Some(1));
}

#[test]
fn tor_with_residue_field_gives_betti_numbers() {
    let r = codim_two_ci_ring(f101());
    let k = residue_field(&r);
    let m = ideal_as_module(&r, &r.maximal_ideal()).unwrap();
    let b = betti_numbers(&minimal_resolution(&m, 6, 10).unwrap());
    let t = tor(&m, &k, 6, 10).unwrap();
    let e = ext(&m, &k, 6, 10).unwrap();
    for n in 0..=6 {
        assert_eq!(t[n].total_dim(), b.total[n]);
        assert_eq!(mu(&t[n]).unwrap(), b.total[n]);
        assert_eq!(e[n].total_dim(), b.total[n]);
    }
    let kb = betti_numbers(&minimal_resolution(&k, 6, 10).unwrap());
    let ekk = ext(&k, &k, 6, 10).unwrap();
    for n in 0..=6 {
        assert_eq!(ekk[n].total_dim(), kb.total[n]);
    }
    assert_eq!(mu(&tor(&k, &k, 0, 4).unwrap()[0]).unwrap(), 1);
}

#[test]
fn tor_of_free_module() {
    let r = codim_two_ci_ring(f101());
    let free = GradedModule::free(r.clone(), vec![0]);
    let n = ideal_as_module(&r, &r.maximal_ideal()).unwrap();
    let t = tor(&free, &n, 3, 8).unwrap();
    assert!(t[1..].iter().all(|h| h.is_zero()));
    let dims: BTreeMap<Deg, usize> = (0..=3).filter_map(|d| {
        let p = piece(&n, d, 8).unwrap().dim();
        (p > 0).then_some((d, p))
    }).collect();
    assert_eq!(t[0].dims, dims);
}

#[test]
fn counting_functions_on_small_modules() {
    let f = f101();
    let zero = HomologyModule::<PrimeField> {
        kind: HomKind::Tor,
        n: 0,
        dims: BTreeMap::new(),
        reps: BTreeMap::new(),
        action: BTreeMap::new(),
        status: Status::Exact,
        top: 0,
        field: f,
    };
    assert_eq!(length(&zero).unwrap(), 0);
    assert_eq!(annihilator_power(&zero).unwrap(), Some(0));

    let mut h = zero.clone();
    h.dims = BTreeMap::from([(0, 1), (1, 2)]);
    h.action.insert(0, vec![SparseMatrix::zero(2, 1); 2]);
    assert_eq!(mu(&h).unwrap(), 3);
    assert_eq!(length(&h).unwrap(), 3);
    assert_eq!(annihilator_power(&h).unwrap(), Some(1));

    let mut w = h.clone();
    w.status = Status::Windowed { window: 1 };
    w.top = 1;
    assert!(matches!(mu(&w), Err(Error::PossiblyIncomplete(_))));
}

#[test]
fn oracle_agrees_on_fixed_examples() {
    let r = square_zero_ring(f101(), 2);
    let k = residue_field(&r);
    let oracle = DenseOracle::new(&k, 4, 10_000).unwrap();
    let t = tor(&k, &k, 4, 10).unwrap();
    for n in 0..=4 {
        assert_eq!(oracle.tor_dims(&k, n).unwrap(), t[n].dims);
        assert_eq!(oracle.betti(n), t[n].total_dim());
    }
    let m = ideal_as_module(&r, &r.maximal_ideal()).unwrap();
    assert_eq!(brute_force_tor_oracle(&m, &k, 0, 1000).unwrap(), tor(&m, &k, 0, 6).unwrap()[0].dims);
    let over = brute_force_tor_oracle(&k, &k, 4, 3);
    assert!(matches!(over, Err(Error::BoundExceeded(_))));
}

fn action_commutes<F: Field>(h: &HomologyModule<F>) -> bool {
    let f = &h.field;
    for (&d, mats) in &h.action {
        let Some(next) = h.action.get(&(d + 1)) else { continue };
        for i in 0..mats.len() {
            for j in 0..i {
                let a = next[i].mul(f, &mats[j]);
                let b = next[j].mul(f, &mats[i]);
                if a.entries() != b.entries() {
                    return false;
                }
            }
        }
    }
    true
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn optimized_pipelines_match_dense_oracle(seed in any::<u64>()) {
        let (_, m, n) = random_pair(seed, 40);
        let t = tor(&m, &n, 3, 20).unwrap();
        let e = ext(&m, &n, 3, 20).unwrap();
        let oracle = DenseOracle::new(&m, 3, 200_000).unwrap();
        for k in 0..=3 {
            prop_assert_eq!(&oracle.tor_dims(&n, k).unwrap(), &t[k].dims, "Tor_{}", k);
            prop_assert_eq!(&oracle.ext_dims(&n, k).unwrap(), &e[k].dims, "Ext^{}", k);
            prop_assert!(action_commutes(&t[k]));
            prop_assert!(action_commutes(&e[k]));
            prop_assert!(mu(&t[k]).unwrap() <= length(&t[k]).unwrap());
        }
        let _ = brute_force_ext_oracle(&m, &n, 0, 200_000).unwrap();
    }

    #[test]
    fn tor_is_balanced_and_additive(seed in any::<u64>()) {
        let (ring, m, n) = random_pair(seed, 25);
        let a = tor(&m, &n, 3, 20).unwrap();
        let b = tor(&n, &m, 3, 20).unwrap();
        for k in 0..=3 {
            prop_assert_eq!(&a[k].dims, &b[k].dims);
        }
        let k_mod = residue_field(&ring);
        let s = direct_sum(&m, &k_mod).unwrap();
        let ts = tor(&s, &n, 3, 20).unwrap();
        let tk = tor(&k_mod, &n, 3, 20).unwrap();
        for k in 0..=3 {
            let degs: std::collections::BTreeSet<Deg> = a[k].dims.keys().chain(tk[k].dims.keys()).copied().collect();
            for d in degs {
                prop_assert_eq!(ts[k].dim(d), a[k].dim(d) + tk[k].dim(d));
            }
        }
    }
}
