use burchcx::asymptote::{analyze, AnalysisOptions, Complexity};
use burchcx::burch::{depth, is_burch_ideal, verify_ideal_witness, BurchVerdict};
use burchcx::corpus::{codim_two_ci_ring, coordinate_axes_ring, square_zero_ring};
use burchcx::gmod::{ideal_as_module, residue_field};
use burchcx::pairhom::{ext, mu, tor};
use burchcx::resolve::{betti_numbers, minimal_resolution};
use burchcx::speclang::{elaborate, parse, AnyPlan, ElabOptions};
use burchcx::{Field, GradedModule, PrimeField, Rationals};

fn betti_of_k<F: Field>(field: F, b: usize, n: usize) -> Vec<usize> {
    let r = square_zero_ring(field, b);
    betti_numbers(&minimal_resolution(&residue_field(&r), n, n as i32 + 2).unwrap()).total
}

#[test]
fn residue_field_betti_numbers_do_not_depend_on_the_field() {
    for b in 1..=3 {
        let fp = betti_of_k(PrimeField::default(), b, 6);
        let q = betti_of_k(Rationals::new(), b, 6);
        assert_eq!(fp, q);
        let expect: Vec<usize> = (0..=6u32).map(|n| b.pow(n)).collect();
        assert_eq!(fp, expect, "b={b}");
    }
}

#[test]
fn tor_and_ext_of_residue_field_over_complete_intersection() {
    let r = codim_two_ci_ring(PrimeField::default());
    let k = residue_field(&r);
    let t = tor(&k, &k, 8, 12).unwrap();
    let e = ext(&k, &k, 8, 12).unwrap();
    let tor_mu: Vec<u64> = t.iter().map(|h| mu(h).unwrap() as u64).collect();
    let ext_dims: Vec<u64> = e.iter().map(|h| h.total_dim() as u64).collect();
    assert_eq!(tor_mu, (1..=9).collect::<Vec<u64>>());
    assert_eq!(tor_mu, ext_dims);
    let a = analyze(&tor_mu, AnalysisOptions::default());
    assert!(a.is_certified());
    assert_eq!(a.complexity, Complexity::Finite(2));
    assert!(a.curvature.is_exact_integer(1));
}

#[test]
fn maximal_ideal_is_burch_with_checkable_witness() {
    for b in 2..=3 {
        let r = square_zero_ring(PrimeField::default(), b);
        let m = r.maximal_ideal();
        let c = is_burch_ideal(&r, &m).unwrap();
        assert_eq!(c.verdict, BurchVerdict::Burch);
        assert!(verify_ideal_witness(&r, &m, c.witness.as_ref().unwrap()));
    }
}

#[test]
fn depth_of_artinian_and_one_dimensional_rings() {
    let r = square_zero_ring(PrimeField::default(), 2);
    let m = ideal_as_module(&r, &r.maximal_ideal()).unwrap();
    assert_eq!(depth(&m, 3, 8).unwrap().value, Some(0));
    let axes = coordinate_axes_ring(PrimeField::default(), 2);
    let free = GradedModule::free(axes.clone(), vec![0]);
    assert_eq!(depth(&free, 3, 8).unwrap().value, Some(1));
    assert!(depth(&GradedModule::zero(axes), 3, 8).is_err());
}

#[test]
fn rendered_document_elaborates_to_the_same_plan() {
    let src = "field Q\nvars x y\nrelations x^2, y^2\nideal m = mpow 1\nmodule K = k\nmodule M = ideal m\ntask betti K n=5\ntask tor M K n=3\n";
    let doc = parse(src).unwrap();
    let again = parse(&doc.to_string()).unwrap();
    assert_eq!(doc, again);
    let a = elaborate(&doc, &ElabOptions::default()).unwrap();
    let b = elaborate(&again, &ElabOptions::default()).unwrap();
    assert!(matches!(a, AnyPlan::Rational(_)));
    assert_eq!(a.hash(), b.hash());
    assert_eq!(a.tasks().len(), 2);
}
