use super::*;
use crate::corpus::{codim_two_ci_ring, coordinate_axes_ring, square_zero_ring};
use crate::field::PrimeField;
use crate::gmod::{ideal_as_module, residue_field};
use proptest::prelude::*;

fn f101() -> PrimeField {
    PrimeField::default()
}

fn powers(b: u64, len: usize) -> Vec<u64> {
    (0..len as u32).map(|n| b.pow(n)).collect()
}

fn linear(len: usize) -> Vec<u64> {
    (0..len as u64).map(|n| n + 1).collect()
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

#[test]
fn fits_fixture_recurrences() {
    let r = fit_recurrence(&powers(2, 8), 5, 3).unwrap().unwrap();
    assert_eq!(r.coeffs, vec![q(2)]);
    let r = fit_recurrence(&linear(8), 5, 3).unwrap().unwrap();
    assert_eq!(r.coeffs, vec![q(2), q(-1)]);
    assert!(r.reproduces(&linear(8)));
    assert_eq!(r.to_string(), "a(n) = 2*a(n-1) + -1*a(n-2)");
    let r = fit_recurrence(&[0; 6], 5, 3).unwrap().unwrap();
    assert_eq!(r.order(), 0);
    assert!(r.is_eventually_zero());
}

#[test]
fn short_prefixes_are_insufficient() {
    assert!(matches!(fit_recurrence(&[1, 2, 4, 8, 16], 5, 3), Err(Error::InsufficientData { len: 5, required: 6 })));
    let a = analyze(&[1, 2, 4], AnalysisOptions::default());
    assert_eq!(a.status, AnalysisStatus::InsufficientData);
    assert_eq!(a.complexity, Complexity::Unknown);
}

#[test]
fn order_is_capped_by_prefix_length() {
    assert_eq!(order_cap(11, 5, 3), 4);
    assert_eq!(order_cap(20, 5, 3), 5);
    // a cubic needs order 4, which 9 terms with guard 3 cannot certify
    let cubes: Vec<u64> = (0..9u64).map(|n| n * n * n).collect();
    assert_eq!(fit_recurrence(&cubes, 5, 3).unwrap(), None);
    let cubes: Vec<u64> = (0..11u64).map(|n| n * n * n).collect();
    assert_eq!(fit_recurrence(&cubes, 5, 3).unwrap().unwrap().order(), 4);
}

#[test]
fn curvature_and_complexity_fixtures() {
    let o = AnalysisOptions::default();
    for b in 1..=4u64 {
        let a = analyze(&powers(b, 11), o);
        assert!(a.is_certified());
        assert!(a.curvature.is_exact_integer(b));
        assert_eq!(a.complexity, if b == 1 { Complexity::Finite(1) } else { Complexity::Infinite });
    }
    let a = analyze(&linear(11), o);
    assert!(a.curvature.is_exact_integer(1));
    assert_eq!(a.complexity, Complexity::Finite(2));

    for b in 2..=4u64 {
        let s: Vec<u64> = (0..11u32).map(|n| b * (b - 1).pow(n)).collect();
        let a = analyze(&s, o);
        assert!(a.curvature.is_exact_integer(b - 1));
        assert_eq!(a.complexity, if b == 2 { Complexity::Finite(1) } else { Complexity::Infinite });
    }

    let a = analyze(&[0; 11], o);
    assert!(a.curvature.is_exact_integer(0));
    assert_eq!(a.complexity, Complexity::Finite(0));

    // Betti numbers of a free module
    let mut free = vec![0; 11];
    free[0] = 1;
    let a = analyze(&free, o);
    assert!(a.is_certified() && a.curvature.is_exact_integer(0));
    assert_eq!(a.complexity, Complexity::Finite(0));
}

#[test]
fn residue_field_sequences_with_an_irregular_start() {
    let o = AnalysisOptions::default();
    // β_n(k) over k[x,y]/(xy): 1, 2, 2, 2, ...
    let mut s = vec![2u64; 11];
    s[0] = 1;
    let a = analyze(&s, o);
    assert!(a.curvature.is_exact_integer(1));
    assert_eq!(a.complexity, Complexity::Finite(1));
    // 1, 3, 6, 12, ...
    let s: Vec<u64> = (0..11u32).map(|n| if n == 0 { 1 } else { 3 << (n - 1) }).collect();
    let a = analyze(&s, o);
    assert!(a.curvature.is_exact_integer(2));
    assert_eq!(a.complexity, Complexity::Infinite);
}

#[test]
fn irrational_curvature_is_bracketed() {
    let mut fib = vec![1u64, 1];
    while fib.len() < 12 {
        fib.push(fib[fib.len() - 1] + fib[fib.len() - 2]);
    }
    let a = analyze(&fib, AnalysisOptions::default());
    assert!(a.is_certified());
    let Curvature::Numeric { value, error } = a.curvature else { panic!("expected a numeric curvature, got {:?}", a.curvature) };
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    assert!(error <= 1e-6);
    assert!((value - phi).abs() <= error + 1e-12);
    assert_eq!(a.complexity, Complexity::Infinite);
}

#[test]
fn periodic_sequences_have_complexity_one() {
    let s: Vec<u64> = (0..11).map(|n| if n % 2 == 0 { 3 } else { 1 }).collect();
    let a = analyze(&s, AnalysisOptions::default());
    assert!(a.curvature.is_exact_integer(1));
    assert_eq!(a.complexity, Complexity::Finite(1));
    // (n+1) on even indices, 0 on odd ones: roots ±1, each of multiplicity 2
    let s: Vec<u64> = (0..12).map(|n| if n % 2 == 0 { n / 2 + 1 } else { 0 }).collect();
    let a = analyze(&s, AnalysisOptions::default());
    assert_eq!(a.complexity, Complexity::Finite(2));
}

#[test]
fn complex_dominant_root_degrades_to_heuristic() {
    let rec = Recurrence { coeffs: vec![q(0), q(-4)], fit: 4, guard: 3 };
    let (c, status) = curvature_of(&[], Some(&rec));
    assert_eq!(status, AnalysisStatus::Heuristic);
    assert!((c.approx() - 2.0).abs() < 1e-9);
    assert_eq!(complexity_of(&[], Some(&rec)), Complexity::Infinite);
}

#[test]
fn unfittable_sequences_are_heuristic() {
    let s = [1u64, 5, 2, 9, 3, 14, 1, 8, 30, 2, 7];
    let a = analyze(&s, AnalysisOptions::default());
    assert_eq!(a.recurrence, None);
    assert_eq!(a.status, AnalysisStatus::Heuristic);
    assert_eq!(a.complexity, Complexity::Unknown);
    assert!((a.curvature.approx() - 7f64.powf(0.1)).abs() < 1e-12);
}

#[test]
fn sup_rule_fixtures() {
    assert!(sup_rule_check(&powers(2, 11), &linear(11)));
    assert!(sup_rule_check(&[0; 11], &[0; 11]));
    assert!(sup_rule_check(&linear(11), &[1; 11]));
    let sum: Vec<u64> = powers(2, 11).iter().zip(linear(11)).map(|(a, b)| a + b).collect();
    let a = analyze(&sum, AnalysisOptions::default());
    assert!(a.curvature.is_exact_integer(2));
    assert_eq!(a.complexity, Complexity::Infinite);
}

#[test]
fn serialized_analysis_is_readable() {
    let a = analyze(&linear(11), AnalysisOptions::default());
    let v = serde_json::to_value(&a).unwrap();
    assert_eq!(v["status"], "CERTIFIED-ON-PREFIX");
    assert_eq!(v["complexity"], "2");
    assert_eq!(v["curvature"]["value"], "1");
    assert_eq!(v["recurrence"]["coeffs"], serde_json::json!(["2", "-1"]));
}

#[test]
fn kinds_parse_by_name() {
    for k in InvariantKind::ALL {
        assert_eq!(k.name().parse::<InvariantKind>().unwrap(), k);
    }
    assert_eq!("cx-pair".parse::<InvariantKind>().unwrap(), InvariantKind::CxPair);
    assert!("betti".parse::<InvariantKind>().is_err());
}

#[test]
fn module_invariants() {
    let r = square_zero_ring(f101(), 2);
    let m = ideal_as_module(&r, &r.maximal_ideal()).unwrap();
    let v = invariant(InvariantKind::Tcx, &m, Some(&m), 8, None).unwrap();
    assert!(v.is_certified());
    assert_eq!(v.complexity(), Complexity::Infinite);
    assert!(v.curvature().is_exact_integer(2));
    assert_eq!(v.analysis.prefix, (0..=8).map(|n| 1u64 << (n + 2)).collect::<Vec<_>>());

    let ci = codim_two_ci_ring(f101());
    let v = invariant(InvariantKind::Cx, &residue_field(&ci), None, 10, None).unwrap();
    assert_eq!(v.complexity(), Complexity::Finite(2));
    assert_eq!(v.headline(), "2");

    let free = GradedModule::free(ci.clone(), vec![0]);
    let v = invariant(InvariantKind::Curv, &free, None, 10, None).unwrap();
    assert!(v.curvature().is_exact_integer(0));
    assert_eq!(v.headline(), "0");

    assert!(matches!(invariant(InvariantKind::Tcx, &free, None, 4, None), Err(Error::Unsupported(_))));
}

#[test]
fn invariants_over_a_non_artinian_ring() {
    let r = coordinate_axes_ring(f101(), 3);
    let k = residue_field(&r);
    let v = invariant(InvariantKind::Curv, &k, None, 10, None).unwrap();
    assert!(v.curvature().is_exact_integer(2));
    assert!(!v.prefix_status.is_exact());
    let v = invariant(InvariantKind::Injcx, &residue_field(&square_zero_ring(f101(), 2)), None, 8, None).unwrap();
    assert_eq!(v.complexity(), Complexity::Infinite);
}

#[test]
fn mu_and_length_sequences_agree_when_a_power_of_m_kills_tor() {
    let r = square_zero_ring(f101(), 2);
    let m = ideal_as_module(&r, &r.maximal_ideal()).unwrap();
    let k = residue_field(&r);
    for (a, b) in [(&m, &m), (&m, &k), (&k, &k)] {
        let d = pair_invariant_data(HomKind::Tor, a, b, 10, 14).unwrap();
        assert!(d.per_n.iter().all(|s| s.annihilator.is_some()));
        let o = AnalysisOptions::default();
        let (x, y) = (analyze(&d.mu_sequence(), o), analyze(&d.length_sequence(), o));
        assert_eq!(x.complexity, y.complexity);
        assert!(x.remark_consistent() && y.remark_consistent());
    }
}

fn fixture(kind: u8, b: u64, len: usize) -> Vec<u64> {
    match kind % 5 {
        0 => powers(b, len),
        1 => linear(len),
        2 => (0..len as u32).map(|n| b * (b.max(2) - 1).pow(n)).collect(),
        3 => vec![0; len],
        _ => (0..len as u64).map(|n| (n + 1) * (n + 2) / 2).collect(),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn scaling_preserves_verdicts(kind in 0u8..5, b in 1u64..5, c in 1u64..50) {
        let s = fixture(kind, b, 11);
        let t: Vec<u64> = s.iter().map(|v| v * c).collect();
        let (a, bb) = (analyze(&s, AnalysisOptions::default()), analyze(&t, AnalysisOptions::default()));
        prop_assert_eq!(a.complexity, bb.complexity);
        prop_assert_eq!(a.curvature.compare(&bb.curvature), Some(Ordering::Equal));
        prop_assert_eq!(a.status, bb.status);
    }

    #[test]
    fn random_sums_obey_the_sup_rule(k1 in 0u8..5, k2 in 0u8..5, b1 in 1u64..5, b2 in 1u64..5) {
        let (x, y) = (fixture(k1, b1, 11), fixture(k2, b2, 11));
        prop_assert!(sup_rule_check(&x, &y));
        let sum: Vec<u64> = x.iter().zip(&y).map(|(a, b)| a + b).collect();
        let a = analyze(&sum, AnalysisOptions::default());
        prop_assert!(a.remark_consistent());
        if let Some(r) = &a.recurrence {
            prop_assert!(r.reproduces(&sum));
        }
    }
}
