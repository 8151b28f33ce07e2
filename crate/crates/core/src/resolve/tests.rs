use super::*;
use crate::corpus::{codim_two_ci_ring, coordinate_axes_ring, dual_numbers_ring, random_pair, square_zero_ring};
use crate::field::PrimeField;
use crate::gmod::{ideal_as_module, residue_field};
use crate::pairhom::{ext, oracle::DenseOracle, tor};
use proptest::prelude::*;

fn f101() -> PrimeField {
    PrimeField::default()
}

fn betti<F: Field>(m: &GradedModule<F>, n: usize) -> BettiTable {
    let opts = ResolveOptions::auto(m, n);
    betti_numbers(&minimal_resolution_with(m, &opts).unwrap())
}

#[test]
fn residue_field_of_square_zero_ring() {
    let r = square_zero_ring(f101(), 2);
    let t = betti(&residue_field(&r), 8);
    let expect: Vec<usize> = (0..=8).map(|n| 1 << n).collect();
    assert_eq!(t.total, expect);
    assert!(t.status.iter().all(|s| s.is_exact()));
    for n in 0..=8 {
        assert_eq!(t.graded[n].get(&(n as Deg)), Some(&(1 << n)));
    }
}

#[test]
fn residue_field_of_complete_intersection_matches_dense_oracle() {
    let r = codim_two_ci_ring(f101());
    let k = residue_field(&r);
    let t = betti(&k, 8);
    let expect: Vec<usize> = (0..=8).map(|n| n + 1).collect();
    assert_eq!(t.total, expect);
    let oracle = DenseOracle::new(&k, 8, 100_000).unwrap();
    for n in 0..=8 {
        assert_eq!(oracle.betti(n), t.total[n]);
    }
}

#[test]
fn free_and_zero_modules() {
    let r = square_zero_ring(f101(), 2);
    let free = GradedModule::free(r.clone(), vec![1]);
    let t = betti(&free, 5);
    assert_eq!(t.total, vec![1, 0, 0, 0, 0, 0]);
    let z = betti(&GradedModule::zero(r), 5);
    assert_eq!(t.total.len(), z.total.len());
    assert!(z.total.iter().all(|&b| b == 0));
}

#[test]
fn maximal_ideal_of_coordinate_axes() {
    let r = coordinate_axes_ring(f101(), 3);
    let m = ideal_as_module(&r, &r.maximal_ideal()).unwrap();
    let t = betti(&m, 8);
    assert_eq!(t.total[0], 3);
    for n in 1..=8 {
        assert_eq!(t.total[n], 3 << n, "beta_{n}");
    }
    assert!(t.status.iter().skip(2).all(|s| matches!(s, Status::Stabilized { guard: 3, .. })), "{:?}", t.status);
}

#[test]
fn residue_field_of_dual_numbers() {
    let r = dual_numbers_ring(f101());
    let t = betti(&residue_field(&r), 8);
    assert_eq!(t.total, vec![1; 9]);
}

#[test]
fn window_too_small_is_rejected_up_front() {
    let r = coordinate_axes_ring(f101(), 2);
    let k = residue_field(&r);
    assert!(matches!(minimal_resolution(&k, 6, 5), Err(Error::WindowTooSmall { window: 5, required: 7 })));
}

#[test]
fn bass_numbers_examples() {
    let r = square_zero_ring(f101(), 2);
    let k = residue_field(&r);
    let bk = bass_numbers(&k, 6, 10).unwrap();
    let t = betti(&k, 6);
    assert_eq!(bk.values, t.total);

    let m = ideal_as_module(&r, &r.maximal_ideal()).unwrap();
    let bm = bass_numbers(&m, 6, 10).unwrap();
    // 𝔪 ≅ k(-1)^2, so its Bass numbers are twice those of k
    let doubled: Vec<usize> = t.total.iter().map(|b| 2 * b).collect();
    assert_eq!(bm.values, doubled);

    let d = dual_numbers_ring(f101());
    let rr = GradedModule::free(d.clone(), vec![0]);
    let b = bass_numbers(&rr, 4, 8).unwrap();
    assert_eq!(b.values[0], 1);
}

/// `dim ker(d_n)_d` equals `dim im(d_{n+1})_d` on the computed window.
fn assert_exact<F: Field>(res: &Resolution<F>, hi: Deg) {
    let ring = res.ring();
    let f = ring.field();
    for n in 1..res.n_max() {
        for d in 0..=hi {
            let (_, _, a) = res.map(n).degree_matrix(ring, d);
            let (_, _, b) = res.map(n + 1).degree_matrix(ring, d);
            let ker = a.cols() - a.rank(f);
            assert_eq!(ker, b.rank(f), "step {n}, degree {d}");
            assert!(a.mul(f, &b).is_zero());
        }
    }
}

#[test]
fn exactness_and_minimality_on_fixed_rings() {
    for r in [square_zero_ring(f101(), 2), codim_two_ci_ring(f101()), dual_numbers_ring(f101())] {
        let res = minimal_resolution(&residue_field(&r), 5, 7).unwrap();
        assert!(res.is_minimal());
        assert_exact(&res, 7);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_resolutions_are_exact_minimal_and_consistent(seed in any::<u64>()) {
        let (ring, m, _) = random_pair(seed, 20);
        let res = minimal_resolution_with(&m, &ResolveOptions::auto(&m, 4)).unwrap();
        prop_assert!(res.is_minimal());
        assert_exact(&res, res.frees().iter().filter_map(|f| f.max_twist()).max().unwrap_or(0) + 3);

        // generator degrees grow along the resolution
        for n in 1..=4 {
            let (cur, prev) = (res.free(n), res.free(n - 1));
            if let (Some(a), Some(b)) = (cur.min_twist(), prev.min_twist()) {
                prop_assert!(a > b);
            }
        }

        let k = residue_field(&ring);
        let t = tor(&m, &k, 4, 12).unwrap();
        let e = ext(&m, &k, 4, 12).unwrap();
        for n in 0..=4 {
            prop_assert_eq!(t[n].total_dim(), res.betti(n));
            prop_assert_eq!(e[n].total_dim(), res.betti(n));
        }
    }
}
