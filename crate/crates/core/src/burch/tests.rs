use super::*;
use crate::corpus::{codim_two_ci_ring, coordinate_axes_ring, random_artinian_ring, random_module, square_zero_ring};
use crate::field::PrimeField;
use crate::gmod::{direct_sum, normalize_elem, GradedModule};
use crate::monoring::is_m_primary;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn f101() -> PrimeField {
    PrimeField::default()
}

fn mono(e: &[u16]) -> Monomial {
    Monomial::from_exponents(e)
}

#[test]
fn maximal_ideal_of_square_zero_ring_is_burch() {
    let r = square_zero_ring(f101(), 2);
    let c = is_burch_ideal(&r, &r.maximal_ideal()).unwrap();
    assert_eq!(c.verdict, BurchVerdict::Burch);
    let w = c.witness.as_ref().unwrap();
    assert_eq!(w.degree(), 1);
    assert!(verify_ideal_witness(&r, &r.maximal_ideal(), w));
    assert_eq!(c.report(&r).witness.unwrap().colon, "1");
}

#[test]
fn zero_ideal_is_not_burch() {
    let r = square_zero_ring(f101(), 2);
    let c = is_burch_ideal(&r, &MonomialIdeal::zero(2)).unwrap();
    assert_eq!(c.verdict, BurchVerdict::NotBurch);
    let (a, b) = c.equal_ideals.unwrap();
    assert!(a.is_zero() && b.is_zero());
}

#[test]
fn pure_power_on_coordinate_axes_is_burch() {
    let r = coordinate_axes_ring(f101(), 3);
    let i = MonomialIdeal::new(3, [mono(&[2, 0, 0])]);
    let c = is_burch_ideal(&r, &i).unwrap();
    assert!(c.is_burch());
    assert!(verify_ideal_witness(&r, &i, c.witness.as_ref().unwrap()));
    assert!(!is_m_primary(&r, &MonomialIdeal::new(3, [mono(&[1, 0, 0])])));
}

#[test]
fn unit_ideal_is_rejected() {
    let r = square_zero_ring(f101(), 2);
    assert!(matches!(is_burch_ideal(&r, &MonomialIdeal::unit(2)), Err(Error::NotProperIdeal)));
}

#[test]
fn submodule_test_on_the_maximal_ideal() {
    let r = square_zero_ring(f101(), 2);
    let pair = SubmodulePair::ideal_in_ring(&r, &r.maximal_ideal()).unwrap();
    let w = default_burch_window(&pair, 10);
    let c = is_burch_submodule(&pair, w).unwrap();
    assert!(c.is_burch());
    assert!(verify_submodule_witness(&pair, c.witness.as_ref().unwrap(), w).unwrap());

    // the whole ring inside itself: 𝔪(R : 𝔪) = 𝔪 = 𝔪R
    let whole = SubmodulePair::ideal_in_ring(&r, &MonomialIdeal::unit(2)).unwrap();
    let c = is_burch_submodule(&whole, default_burch_window(&whole, 10)).unwrap();
    assert_eq!(c.verdict, BurchVerdict::NotBurch);
}

#[test]
fn windowed_submodule_test_never_claims_not_burch() {
    let r = coordinate_axes_ring(f101(), 2);
    let i = MonomialIdeal::new(2, [mono(&[1, 0]), mono(&[0, 1])]);
    let pair = SubmodulePair::ideal_in_ring(&r, &MonomialIdeal::unit(2)).unwrap();
    assert_eq!(is_burch_submodule(&pair, 4).unwrap().verdict, BurchVerdict::UnknownWindowed);
    let pair = SubmodulePair::ideal_in_ring(&r, &i).unwrap();
    assert!(is_burch_submodule(&pair, 4).unwrap().is_burch());
    assert!(matches!(is_burch_submodule(&pair, 1), Err(Error::WindowTooSmall { .. })));
}

#[test]
fn family_constructors() {
    let r = coordinate_axes_ring(f101(), 3);
    let m2 = make_m_power(&r, 2).unwrap();
    assert_eq!(m2, MonomialIdeal::new(3, [mono(&[2, 0, 0]), mono(&[0, 2, 0]), mono(&[0, 0, 2])]));
    let x = MonomialIdeal::new(3, [mono(&[1, 0, 0])]);
    assert_eq!(make_am_ideal(&r, &x).unwrap(), MonomialIdeal::new(3, [mono(&[2, 0, 0])]));
    assert_eq!(make_m_power(&r, 1).unwrap(), r.maximal_ideal());
    let sq = square_zero_ring(f101(), 2);
    assert!(matches!(make_m_power(&sq, 2), Err(Error::ZeroProduct)));
    assert!(matches!(make_am_ideal(&sq, &sq.maximal_ideal()), Err(Error::ZeroProduct)));
}

#[test]
fn depth_examples() {
    let sq = square_zero_ring(f101(), 2);
    let d = depth(&crate::gmod::residue_field(&sq), 4, 8).unwrap();
    assert_eq!((d.value, d.status), (Some(0), Status::Exact));
    let axes = coordinate_axes_ring(f101(), 3);
    let d = depth(&GradedModule::free(axes.clone(), vec![0]), 4, 10).unwrap();
    assert_eq!(d.value, Some(1));
    assert!(!d.status.is_exact());
    assert_eq!(depth(&crate::gmod::residue_field(&axes), 4, 10).unwrap().value, Some(0));
    assert!(depth(&GradedModule::zero(sq), 4, 8).is_err());
}

#[test]
fn embedding_into_a_direct_sum_preserves_burch() {
    let r = square_zero_ring(f101(), 2);
    let one = f101().one();
    let x = GradedModule::free(r.clone(), vec![0]);
    let y = direct_sum(&x, &x).unwrap();
    let pair = SubmodulePair::ideal_in_ring(&r, &r.maximal_ideal()).unwrap();
    let inclusion = vec![vec![(0, r.one(), one)]];
    assert!(embedding_invariance_check(&pair, &y, &inclusion).unwrap());
    let identity = vec![vec![(0, r.one(), one)]];
    assert!(embedding_invariance_check(&pair, &x, &identity).unwrap());
    // 1 ↦ x is not injective: it kills 𝔪
    let shifted = GradedModule::free(r.clone(), vec![-1]);
    let bad = vec![vec![(0, mono(&[1, 0]), one)]];
    assert!(matches!(embedding_invariance_check(&pair, &shifted, &bad), Err(Error::NotInjective { degree: 1 })));
    let inhomogeneous = vec![vec![(0, mono(&[1, 0]), one)]];
    assert!(matches!(embedding_invariance_check(&pair, &x, &inhomogeneous), Err(Error::InvalidPresentation(_))));
}

fn corpus_ideals(ring: &Ring<PrimeField>) -> Vec<MonomialIdeal> {
    let v = ring.nvars();
    let mut monos: Vec<Monomial> = (1..=2).flat_map(|d| ring.basis(d).monos.clone()).collect();
    monos.truncate(6);
    let mut out = Vec::new();
    for mask in 0u32..(1 << monos.len()) {
        let gens = monos.iter().enumerate().filter(|(i, _)| mask & (1 << i) != 0).map(|(_, m)| m.clone());
        out.push(ring.reduce_ideal(&MonomialIdeal::new(v, gens)));
    }
    out.sort_by_key(|i| format!("{i:?}"));
    out.dedup();
    out
}

#[test]
fn ideal_and_submodule_tests_agree_on_the_corpus() {
    let rings = [square_zero_ring(f101(), 2), codim_two_ci_ring(f101()), coordinate_axes_ring(f101(), 2), square_zero_ring(f101(), 3)];
    for r in &rings {
        for i in corpus_ideals(r) {
            let a = is_burch_ideal(r, &i).unwrap();
            let pair = SubmodulePair::ideal_in_ring(r, &i).unwrap();
            let w = default_burch_window(&pair, 4);
            let b = is_burch_submodule(&pair, w).unwrap();
            if r.is_artinian() {
                assert_eq!(a.verdict, b.verdict, "{i:?} over {}", r.describe());
            } else {
                assert!(a.is_burch() == b.is_burch() || b.verdict == BurchVerdict::UnknownWindowed);
            }
            if let Some(wt) = &a.witness {
                assert!(verify_ideal_witness(r, &i, wt));
            }
            if let Some(wt) = &b.witness {
                assert!(verify_submodule_witness(&pair, wt, w).unwrap());
            }
        }
    }
}

#[test]
fn products_with_the_maximal_ideal_are_burch() {
    let rings = [square_zero_ring(f101(), 2), codim_two_ci_ring(f101()), coordinate_axes_ring(f101(), 3), coordinate_axes_ring(f101(), 2)];
    for r in &rings {
        for a in corpus_ideals(r) {
            if let Ok(i) = make_am_ideal(r, &a) {
                assert!(is_burch_ideal(r, &i).unwrap().is_burch(), "{i:?}");
            }
        }
    }
}

/// `𝔪N ⊆ L` for a random module `L` and random generators of `N`.
fn m_times_random_submodule(seed: u64) -> Option<SubmodulePair<PrimeField>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ring = random_artinian_ring(&mut rng);
    let l = random_module(&mut rng, &ring);
    let f = ring.field();
    let twists = l.generators().twists.clone();
    let mut n_gens = Vec::new();
    for _ in 0..rng.gen_range(1..=2) {
        let d = rng.gen_range(0..=2) + *twists.iter().min().unwrap();
        let mut e = Vec::new();
        for (g, &a) in twists.iter().enumerate() {
            let Some(b) = ring.basis_i(d - a).filter(|b| !b.is_empty()) else { continue };
            let m = b.monos[rng.gen_range(0..b.len())].clone();
            e.push((g, m, f.from_i64(rng.gen_range(1..101))));
        }
        let e = normalize_elem(f, e);
        if !e.is_empty() {
            n_gens.push(e);
        }
    }
    let nv = ring.nvars();
    let m_gens: Vec<_> = n_gens.iter().flat_map(|g| (0..nv).map(move |i| (g, i))).map(|(g, i)| elem_mul_mono(&ring, g, &Monomial::var(nv, i))).collect();
    SubmodulePair::new(l, m_gens).ok()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn m_times_a_submodule_is_burch_when_m_does_not_kill_it(seed in any::<u64>()) {
        let Some(pair) = m_times_random_submodule(seed) else { return Ok(()) };
        let w = default_burch_window(&pair, 4);
        let sub = submodule_pieces(&pair, w).unwrap();
        let m_sub = maxideal_multiple(&pair, &sub, w).unwrap();
        let c = is_burch_submodule(&pair, w).unwrap();
        if m_sub.pieces.values().any(|b| !b.is_empty()) {
            prop_assert!(c.is_burch());
            prop_assert!(verify_submodule_witness(&pair, c.witness.as_ref().unwrap(), w).unwrap());
        }
        prop_assert_ne!(c.verdict, BurchVerdict::UnknownWindowed);
    }

    #[test]
    fn burch_survives_split_embeddings(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ring = random_artinian_ring(&mut rng);
        let extra = random_module(&mut rng, &ring);
        let x = GradedModule::free(ring.clone(), vec![0]);
        let y = direct_sum(&x, &extra).unwrap();
        let i = ring.maximal_ideal();
        if i.is_zero() {
            return Ok(());
        }
        let pair = SubmodulePair::ideal_in_ring(&ring, &i).unwrap();
        let inclusion = vec![vec![(0, ring.one(), ring.field().one())]];
        prop_assert!(embedding_invariance_check(&pair, &y, &inclusion).unwrap());
    }
}

/// Non-𝔪-primary Burch ideals: the pair invariants are recorded next to
/// `cx(k)` without asserting any relation between them.
#[test]
fn non_primary_burch_ideals_record_pair_data() {
    use crate::asymptote::{invariant, InvariantKind};
    use crate::gmod::{ideal_as_module, residue_field};

    let mut rows = Vec::new();
    for b in 2..=3 {
        let r = coordinate_axes_ring(f101(), b);
        let mut e = vec![0u16; b];
        e[0] = 2;
        let i = MonomialIdeal::new(b, [mono(&e)]);
        assert!(!is_m_primary(&r, &i));
        assert!(is_burch_ideal(&r, &i).unwrap().is_burch());
        let im = ideal_as_module(&r, &i).unwrap();
        let k = residue_field(&r);
        let cxk = invariant(InvariantKind::Cx, &k, None, 8, None).unwrap().headline();
        for kind in [InvariantKind::Tcx, InvariantKind::CxPair] {
            let v = match invariant(kind, &im, Some(&im), 6, None) {
                Ok(v) => format!("{} [{}]", v.headline(), v.analysis.status.label()),
                Err(e) => format!("refused: {e}"),
            };
            rows.push(format!("b={b} I=J=(x1^2) {kind}: {v}; cx(k) = {cxk}"));
        }
    }
    for row in &rows {
        println!("{row}");
    }
    assert_eq!(rows.len(), 4);
}
