use burchcx::asymptote::{analyze, fit_recurrence, AnalysisOptions, DEFAULT_GUARD, DEFAULT_MAX_ORDER};
use burchcx::corpus::random_pair;
use burchcx::gmod::{direct_sum, residue_field};
use burchcx::pairhom::{mu, tor};
use burchcx::resolve::{betti_numbers, minimal_resolution};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn tor_against_residue_field_counts_betti_numbers(seed in 0u64..500) {
        let (ring, m, _) = random_pair(seed, 30);
        let k = residue_field(&ring);
        let b = betti_numbers(&minimal_resolution(&m, 4, 20).unwrap());
        let t = tor(&m, &k, 4, 20).unwrap();
        for n in 0..=4 {
            prop_assert_eq!(mu(&t[n]).unwrap(), b.total[n]);
        }
    }

    #[test]
    fn betti_numbers_add_over_direct_sums(seed in 0u64..500) {
        let (_, m, n) = random_pair(seed, 30);
        let bm = betti_numbers(&minimal_resolution(&m, 4, 20).unwrap()).total;
        let bn = betti_numbers(&minimal_resolution(&n, 4, 20).unwrap()).total;
        let bs = betti_numbers(&minimal_resolution(&direct_sum(&m, &n).unwrap(), 4, 20).unwrap()).total;
        let sum: Vec<usize> = bm.iter().zip(&bn).map(|(a, b)| a + b).collect();
        prop_assert_eq!(bs, sum);
    }

    #[test]
    fn fitted_recurrence_reproduces_geometric_sums(c in 1u64..6, r in 1u64..5, d in 0u64..4, len in 12usize..20) {
        let xs: Vec<u64> = (0..len as u32).map(|n| c * r.pow(n) + d).collect();
        let rec = fit_recurrence(&xs, DEFAULT_MAX_ORDER, DEFAULT_GUARD).unwrap().unwrap();
        prop_assert!(rec.reproduces(&xs));
        let a = analyze(&xs, AnalysisOptions::default());
        prop_assert!(a.is_certified());
        prop_assert!(a.curvature.is_exact_integer(r));
        prop_assert!(a.remark_consistent());
    }
}
