use super::*;
use crate::error::Error;
use proptest::prelude::*;

const SQUARE_ZERO_B2: &str = "\
field F 101
vars x y
relations x^2, x*y, y^2
ideal m = mpow 1
module K = k
module M = ideal m
task betti K n=8
task tor M M n=6
task burch m
";

#[test]
fn minimal_document() {
    let doc = parse("field F 101\nvars x\ntask betti K\n").unwrap_err();
    assert_eq!((doc.line, doc.column), (3, 12));
    let doc = parse("field Q\nvars x\nmodule K = k\ntask betti K\n").unwrap();
    assert_eq!(doc.tasks.len(), 1);
    assert_eq!(doc.field, FieldSpec::Rationals);
}

#[test]
fn misspelled_task_is_located() {
    let src = "field F 101\nvars x y\nmodule K = k\ntask betii K\n";
    let e = parse(src).unwrap_err();
    assert_eq!((e.line, e.column, e.token.as_str()), (4, 6, "betii"));
    assert!(e.message.contains("betti"), "{}", e.message);
    let e = parse("field F 101\nvars x\nmodul K = k\n").unwrap_err();
    assert_eq!((e.line, e.column), (3, 1));
}

#[test]
fn square_zero_document() {
    let doc = parse(SQUARE_ZERO_B2).unwrap();
    let rels: Vec<String> = doc.relations.iter().map(|(m, _)| m.display(&doc.vars).to_string()).collect();
    assert_eq!(rels, ["x^2", "x*y", "y^2"]);
    let verbs: Vec<&str> = doc.tasks.iter().map(|t| t.verb.keyword()).collect();
    assert_eq!(verbs, ["betti", "tor", "burch"]);
    let AnyPlan::Prime(plan) = elaborate(&doc, &ElabOptions::default()).unwrap() else { panic!("prime field expected") };
    assert_eq!(plan.ring.defining().gens().len(), 3);
    assert_eq!(plan.tasks[0].kind, TaskKind::Betti { module: "K".into(), n_max: 8, window: 11 });
    assert!(matches!(plan.tasks[2].kind, TaskKind::BurchIdeal { .. }));
}

#[test]
fn round_trip_on_normalized_documents() {
    let src = "\
field Q
vars x y z
relations x^2, y^3, x*z
ideal I = x, y^2
ideal J = product I maxideal
ideal P = mpow 2
module M = ideal I
module K = k
module F = free [0, -1]
module S = sum M K
module C = coker rows=2 degs=[0, 1] matrix=[[x, 0], [-1/2*y, z^2 - 3*x*y]]
pairsub A = I in F
pairsub B = z, y in K
pairsub G = gens [[x, 0], [0, 2*y]] in F
task betti M n=4 window=9
task bass K
task resolve S
task tor M K n=3
task ext K M window=12
task invariant cxpair M K
task invariant curv M
task burch J
task burch A
task depth M
";
    let doc = parse(src).unwrap();
    assert_eq!(doc.to_string(), src);
    assert_eq!(parse(&doc.to_string()).unwrap(), doc);
}

#[test]
fn crlf_comments_and_option_order() {
    let a = parse("field F 7 # small\r\nvars x\r\n\r\n# all\r\nmodule K = k\r\ntask betti K window=5 n=2\r\n").unwrap();
    let b = parse("field F 7\nvars x\nmodule K = k\ntask betti K n=2 window=5\n").unwrap();
    assert_eq!(a.to_string(), b.to_string());
}

#[test]
fn reference_errors() {
    let base = "field F 101\nvars x y\nideal I = x\nmodule K = k\n";
    let cases = [
        ("task tor K L", 5, 12, "unknown"),
        ("task betti I", 5, 12, "is an ideal"),
        ("ideal I = y", 5, 7, "duplicate"),
        ("module x = k", 5, 8, "variable"),
        ("ideal J = w", 5, 11, "unknown variable"),
        ("task betti K n=", 5, 15, "expected"),
        ("task betti K m=3", 5, 14, "unknown option"),
        ("module N = sum K", 5, 16, "expected"),
    ];
    for (line, l, c, msg) in cases {
        let e = parse(&format!("{base}{line}\n")).unwrap_err();
        assert_eq!((e.line, e.column), (l, c), "{line}: {e}");
        assert!(e.message.contains(msg), "{line}: {}", e.message);
    }
    assert_eq!(parse("vars x\n").unwrap_err().line, 1);
    assert_eq!(parse("").unwrap_err().line, 1);
    let e = parse("field F 101\nvars x\nmodule K = k\ntask burch K\n").unwrap_err();
    assert!(e.message.contains("expected an ideal"), "{}", e.message);
}

#[test]
fn pair_alias_gets_default_parameters() {
    let doc = parse("field F 101\nvars x y\nrelations x^2, y^2\nmodule K = k\ntask pair tor K K\n").unwrap();
    let plan = elaborate(&doc, &ElabOptions::default()).unwrap();
    let TaskKind::Tor { n_max, window, .. } = &plan.tasks()[0].kind else { panic!() };
    assert_eq!(*n_max, 10);
    assert_eq!(*window, 14);
}

#[test]
fn zero_generators_are_dropped_with_a_warning() {
    let doc = parse("field F 101\nvars x y\nrelations x^2\nideal I = x^2, y\nideal Z = x^3\n").unwrap();
    let AnyPlan::Prime(plan) = elaborate(&doc, &ElabOptions::default()).unwrap() else { panic!() };
    assert_eq!(plan.warnings.len(), 2);
    assert_eq!((plan.warnings[0].line, plan.warnings[0].column), (4, 11));
    assert_eq!(plan.ideals["I"].gens().len(), 1);
    assert!(plan.ideals["Z"].is_zero());
}

fn semantic_at(src: &str) -> (usize, usize) {
    match elaborate(&parse(src).unwrap(), &ElabOptions::default()) {
        Err(Error::Semantic { line, column, .. }) => (line, column),
        other => panic!("expected a semantic error, got {other:?}"),
    }
}

#[test]
fn semantic_errors_carry_locations() {
    assert_eq!(semantic_at("field F 101\nvars x\nideal I = 1\ntask burch I\n"), (4, 12));
    assert_eq!(semantic_at("field F 100\nvars x\n"), (1, 1));
    assert_eq!(semantic_at("field F 101\nvars x\nrelations 1\n"), (3, 1));
    assert_eq!(semantic_at("field F 101\nvars x\nmodule Z = free []\ntask depth Z\n"), (4, 12));
    assert_eq!(semantic_at("field F 101\nvars x\nmodule K = k\ntask invariant tcx K\n"), (4, 1));
    assert_eq!(semantic_at("field F 101\nvars x\nmodule C = coker rows=2 degs=[0] matrix=[[x]]\n"), (3, 8));
    assert_eq!(semantic_at("field F 101\nvars x y\nmodule C = coker rows=1 degs=[0] matrix=[[x + y^2]]\n"), (3, 8));
}

#[test]
fn plan_hash_is_deterministic() {
    let doc = parse(SQUARE_ZERO_B2).unwrap();
    let a = elaborate(&doc, &ElabOptions::default()).unwrap();
    let b = elaborate(&parse(&doc.to_string()).unwrap(), &ElabOptions::default()).unwrap();
    assert_eq!(a.hash(), b.hash());
    assert_eq!(a.hash().len(), 64);
    let c = elaborate(&doc, &ElabOptions { window: Some(20), ..Default::default() }).unwrap();
    assert_ne!(a.hash(), c.hash());
}

#[test]
fn rational_coefficients_reach_the_module() {
    let src = "field Q\nvars x y\nrelations x^2, y^2\nmodule C = coker rows=1 degs=[0] matrix=[[x - 1/3*y]]\n";
    let AnyPlan::Rational(plan) = elaborate(&parse(src).unwrap(), &ElabOptions::default()).unwrap() else { panic!() };
    assert!(plan.modules["C"].canonical_text().contains("-1/3"));
}

fn char_at(src: &str, line: usize, column: usize) -> Option<char> {
    src.split('\n').nth(line - 1)?.chars().nth(column - 1)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn error_locations_index_real_characters(
        lines in prop::collection::vec(prop::sample::select(vec![
            "field F 101", "vars x y", "relations x^2, y^2", "ideal I = x", "module K = k", "module M = ideal I",
            "task betti K", "task tor M K n=3", "task burch I", "ideal = x", "task betii K", "module Q = coker rows=1",
            "task invariant cx K", "vars x", "ideal J = x^", "  # note", "task tor M", "pairsub P = x in K", "$",
        ]), 0..8),
        crlf in any::<bool>(),
    ) {
        let src = lines.join(if crlf { "\r\n" } else { "\n" });
        if let Err(e) = parse(&src) {
            let c = char_at(&src, e.line, e.column);
            if !src.trim().is_empty() {
                prop_assert!(c.is_some_and(|c| !c.is_whitespace()), "{e} in {src:?}");
            }
        }
    }
}
