use super::*;

fn params(b: Option<usize>) -> VerifyParams {
    VerifyParams { b, ..VerifyParams::default() }
}

fn assert_all_pass(r: &VerifySuiteResult) {
    if let Some(c) = r.failures().next() {
        panic!("{} expected {} got {} flags {:?}", c.id, c.expected, c.computed, c.flags);
    }
    assert!(!r.checks.is_empty());
}

#[test]
fn selector_names_round_trip() {
    for s in Selector::EACH.into_iter().chain([Selector::All]) {
        assert_eq!(s.name().parse::<Selector>().unwrap(), s);
    }
    assert!("ex9.9".parse::<Selector>().is_err());
}

#[test]
fn square_zero_family_with_b3_and_short_prefix() {
    let r = run_checks(Selector::SquareZero, &VerifyParams { n_max: 8, ..params(Some(3)) }).unwrap();
    assert_all_pass(&r);
    let c = r.checks.iter().find(|c| c.id == "ex4.1/b=3/curv").unwrap();
    assert_eq!(c.computed, "3");
}

#[test]
fn coordinate_axes_b2() {
    let r = run_checks(Selector::CoordinateAxes, &params(Some(2))).unwrap();
    assert_all_pass(&r);
    let cx = r.checks.iter().find(|c| c.id == "ex4.3/b=2/cx-k").unwrap();
    assert_eq!(cx.computed, "1");
    let curv = r.checks.iter().find(|c| c.id == "ex4.3/b=2/curv-k").unwrap();
    assert_eq!(curv.computed, "1");
}

#[test]
fn complete_intersection_checks() {
    let r = run_checks(Selector::CompleteIntersection, &VerifyParams::default()).unwrap();
    assert_all_pass(&r);
    assert!(r.checks.iter().any(|c| c.provenance == Provenance::Derived));
}

#[test]
fn every_check_carries_a_tagged_expectation() {
    let r = run_checks(Selector::Inequalities, &VerifyParams { random_instances: 3, seed: 0, ..params(Some(2)) }).unwrap();
    assert_all_pass(&r);
    assert!(r.checks.len() >= 9);
    assert!(r.checks.iter().any(|c| c.id.contains("random")));
    for c in &r.checks {
        assert!(!c.expected.is_empty() && !c.claim.is_empty());
    }
}

#[test]
fn short_prefixes_are_refused() {
    assert!(matches!(run_checks(Selector::All, &VerifyParams { n_max: 3, ..Default::default() }), Err(Error::InsufficientData { .. })));
}
