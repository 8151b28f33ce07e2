//! Fixed reproduction checks on the named ring families.
//!
//! Every check records what it expects, where that expectation comes from,
//! what was computed, and the certification flags it was computed under.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::asymptote::{analyze, default_window, invariant, AnalysisOptions, Complexity, Curvature, InvariantKind, InvariantVerdict, SequenceAnalysis};
use crate::burch::{depth, is_burch_ideal, make_am_ideal, make_m_power};
use crate::corpus::{codim_two_ci_ring, coordinate_axes_ring, random_artinian_ring, random_module, square_zero_ring, total_dim};
use crate::error::{Error, Result};
use crate::field::{Field, PrimeField};
use crate::gmod::{ideal_as_module, quotient_module, residue_field, GradedModule, Status};
use crate::monoring::{is_m_primary, Monomial, MonomialIdeal, Ring};
use crate::pairhom::oracle::DenseOracle;
use crate::pairhom::{pair_invariant_data, HomKind, PairInvariantData};
use crate::resolve::{betti_numbers, cached_resolution, ResolveOptions};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Selector {
    #[serde(rename = "ex4.1")]
    SquareZero,
    #[serde(rename = "ex4.3")]
    CoordinateAxes,
    #[serde(rename = "cor1.4")]
    CompleteIntersection,
    #[serde(rename = "prop-burch-max")]
    BurchMaximality,
    #[serde(rename = "sec3-inequalities")]
    Inequalities,
    #[serde(rename = "all")]
    All,
}

impl Selector {
    pub const EACH: [Selector; 5] =
        [Selector::SquareZero, Selector::CoordinateAxes, Selector::CompleteIntersection, Selector::BurchMaximality, Selector::Inequalities];

    pub fn name(self) -> &'static str {
        match self {
            Selector::SquareZero => "ex4.1",
            Selector::CoordinateAxes => "ex4.3",
            Selector::CompleteIntersection => "cor1.4",
            Selector::BurchMaximality => "prop-burch-max",
            Selector::Inequalities => "sec3-inequalities",
            Selector::All => "all",
        }
    }
}

impl fmt::Display for Selector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Selector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Selector::EACH
            .into_iter()
            .chain([Selector::All])
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Unsupported(format!("unknown selector `{s}`")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyParams {
    /// Embedding dimension; `None` runs the default family members.
    pub b: Option<usize>,
    pub ell: u32,
    pub m: u32,
    pub n_max: usize,
    pub seed: u64,
    /// Seeded random Artinian instances added to the inequality checks;
    /// uncertified verdicts on these are reported as inconclusive.
    pub random_instances: usize,
}

impl Default for VerifyParams {
    fn default() -> Self {
        Self { b: None, ell: 3, m: 2, n_max: crate::resolve::DEFAULT_N_MAX, seed: 0, random_instances: 0 }
    }
}

/// Where an expected value comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Provenance {
    /// A value asserted by the reference text for this family.
    Stated,
    /// A value produced by an independent computation.
    Derived,
}

impl Provenance {
    pub fn tag(self) -> &'static str {
        match self {
            Provenance::Stated => "STATED",
            Provenance::Derived => "DERIVED",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Outcome {
    Pass,
    Fail,
    /// Some verdict was not certified on a random instance.
    Inconclusive,
}

impl Outcome {
    pub fn label(self) -> &'static str {
        match self {
            Outcome::Pass => "PASS",
            Outcome::Fail => "FAIL",
            Outcome::Inconclusive => "INCONCLUSIVE",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub id: String,
    pub expected: String,
    pub provenance: Provenance,
    pub claim: String,
    pub computed: String,
    pub outcome: Outcome,
    pub flags: Vec<String>,
}

impl Check {
    pub fn pass(&self) -> bool {
        self.outcome == Outcome::Pass
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifySuiteResult {
    pub selector: Selector,
    pub params: VerifyParams,
    pub checks: Vec<Check>,
}

impl VerifySuiteResult {
    /// No check failed; inconclusive checks do not count against this.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.outcome != Outcome::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.outcome == Outcome::Fail)
    }

    /// `(passed, inconclusive, total)`.
    pub fn count(&self) -> (usize, usize, usize) {
        let by = |o: Outcome| self.checks.iter().filter(|c| c.outcome == o).count();
        (by(Outcome::Pass), by(Outcome::Inconclusive), self.checks.len())
    }
}

struct Suite {
    checks: Vec<Check>,
}

impl Suite {
    #[allow(clippy::too_many_arguments)]
    fn push(&mut self, id: String, provenance: Provenance, claim: &str, expected: String, computed: String, pass: bool, flags: Vec<String>) {
        let outcome = if pass { Outcome::Pass } else { Outcome::Fail };
        self.checks.push(Check { id, expected, provenance, claim: claim.to_string(), computed, outcome, flags });
    }

    fn sequence(&mut self, id: String, claim: &str, expected: &[u64], got: &[u64], statuses: &[Status], allow_stabilized: bool) {
        let ok_status = statuses.iter().all(|s| s.is_exact() || (allow_stabilized && matches!(s, Status::Stabilized { .. })));
        let flags = vec![statuses.iter().copied().fold(Status::Exact, Status::meet).label()];
        self.push(id, Provenance::Stated, claim, fmt_seq(expected), fmt_seq(got), ok_status && expected == got, flags);
    }

    fn verdict(&mut self, id: String, provenance: Provenance, claim: &str, expected: &str, v: &InvariantVerdict, ok: bool) {
        let flags = vec![v.analysis.status.label().to_string(), v.prefix_status.label()];
        let pass = ok && v.is_certified() && !matches!(v.prefix_status, Status::Windowed { .. });
        self.push(id, provenance, claim, expected.to_string(), v.headline(), pass, flags);
    }

    fn error(&mut self, id: String, claim: &str, e: &Error) {
        self.push(id, Provenance::Stated, claim, "a computed value".into(), format!("error: {e}"), false, vec!["ERROR".into()]);
    }
}

fn fmt_seq(xs: &[u64]) -> String {
    xs.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
}

fn f101() -> PrimeField {
    PrimeField::default()
}

fn betti_prefix<F: Field>(m: &GradedModule<F>, n_max: usize) -> Result<(Vec<u64>, Vec<Status>)> {
    let t = betti_numbers(&*cached_resolution(m, &ResolveOptions::auto(m, n_max))?);
    Ok((t.total.iter().map(|&b| b as u64).collect(), t.status))
}

fn cx_label(c: Complexity) -> String {
    c.label()
}

fn run_or_record(s: &mut Suite, id: &str, claim: &str, f: impl FnOnce(&mut Suite) -> Result<()>) {
    if let Err(e) = f(s) {
        s.error(id.to_string(), claim, &e);
    }
}

fn square_zero(s: &mut Suite, p: &VerifyParams) {
    for b in p.b.map_or(vec![1, 2, 3], |b| vec![b]) {
        let id = format!("ex4.1/b={b}");
        run_or_record(s, &id, "square-zero ring", |s| {
            let n_max = p.n_max;
            let r = square_zero_ring(f101(), b);
            let k = residue_field(&r);
            let mm = ideal_as_module(&r, &r.maximal_ideal())?;
            let bb = b as u64;
            let (got, st) = betti_prefix(&k, n_max)?;
            let expect: Vec<u64> = (0..=n_max as u32).map(|n| bb.pow(n)).collect();
            s.sequence(format!("{id}/betti-k"), "beta_n(k) = b^n", &expect, &got, &st, false);

            let top = n_max.min(8);
            let expect: Vec<u64> = (0..=top as u32).map(|n| bb.pow(n + 2)).collect();
            for (kind, name) in [(HomKind::Tor, "tor"), (HomKind::Ext, "ext")] {
                let d = pair_invariant_data(kind, &mm, &mm, top, default_window(&mm, Some(&mm), top))?;
                let st: Vec<Status> = d.per_n.iter().map(|x| x.status).collect();
                s.sequence(format!("{id}/mu-{name}-mm"), "mu(H_n(m, m)) = b^(n+2)", &expect, &d.mu_sequence(), &st, false);
            }

            let cx = if b == 1 { "1" } else { "inf" };
            let expect_cx = if b == 1 { Complexity::Finite(1) } else { Complexity::Infinite };
            for (kind, left, right) in [(InvariantKind::Cx, &k, None), (InvariantKind::Tcx, &mm, Some(&mm)), (InvariantKind::CxPair, &mm, Some(&mm))] {
                let v = invariant(kind, left, right, n_max, None)?;
                let ok = v.complexity() == expect_cx;
                s.verdict(format!("{id}/{kind}"), Provenance::Stated, "cx = 1 if b = 1, inf if b >= 2", cx, &v, ok);
            }
            for (kind, left, right) in [(InvariantKind::Curv, &k, None), (InvariantKind::Tcurv, &mm, Some(&mm)), (InvariantKind::CurvPair, &mm, Some(&mm))] {
                let v = invariant(kind, left, right, n_max, None)?;
                let ok = v.curvature().is_exact_integer(bb);
                s.verdict(format!("{id}/{kind}"), Provenance::Stated, "curv = b", &b.to_string(), &v, ok);
            }
            Ok(())
        });
    }
}

fn var_power(nvars: usize, i: usize, e: u16) -> Monomial {
    let mut ex = vec![0u16; nvars];
    ex[i] = e;
    Monomial::from_exponents(&ex)
}

fn coordinate_axes(s: &mut Suite, p: &VerifyParams) {
    for b in p.b.map_or(vec![2, 3, 4], |b| vec![b]) {
        let id = format!("ex4.3/b={b}");
        run_or_record(s, &id, "coordinate axes", |s| {
            let n_max = p.n_max;
            let r = coordinate_axes_ring(f101(), b);
            let k = residue_field(&r);
            let bb = b as u64;
            let shifted = |lead: u64| -> Vec<u64> { (1..=n_max as u32).map(|n| lead * (bb - 1).pow(n)).collect() };

            let mm = ideal_as_module(&r, &r.maximal_ideal())?;
            let (got, st) = betti_prefix(&mm, n_max)?;
            s.sequence(format!("{id}/betti-m"), "beta_n(m) = b(b-1)^n, n >= 1", &shifted(bb), &got[1..], &st[1..], true);
            for e in [p.ell, p.m] {
                let pw = ideal_as_module(&r, &make_m_power(&r, e)?)?;
                let (got, st) = betti_prefix(&pw, n_max)?;
                s.sequence(format!("{id}/betti-m^{e}"), "m^l is isomorphic to m", &shifted(bb), &got[1..], &st[1..], true);
                let xi = ideal_as_module(&r, &MonomialIdeal::new(b, [var_power(b, 0, e as u16)]))?;
                let (got, st) = betti_prefix(&xi, n_max)?;
                s.sequence(format!("{id}/betti-x1^{e}"), "beta_n((x_i^l)) = (b-1)^n, n >= 1", &shifted(1), &got[1..], &st[1..], true);
            }

            let v = invariant(InvariantKind::Curv, &k, None, n_max, None)?;
            let ok = v.curvature().is_exact_integer(bb - 1);
            s.verdict(format!("{id}/curv-k"), Provenance::Stated, "curv(k) = b - 1", &(b - 1).to_string(), &v, ok);
            let expect_cx = if b <= 2 { Complexity::Finite(b as u32 - 1) } else { Complexity::Infinite };
            let v = invariant(InvariantKind::Cx, &k, None, n_max, None)?;
            let ok = v.complexity() == expect_cx;
            s.verdict(format!("{id}/cx-k"), Provenance::Stated, "cx(k) = b - 1 if b <= 2, inf if b >= 3", &cx_label(expect_cx), &v, ok);

            for l in 1..=p.ell {
                let pw = make_m_power(&r, l)?;
                let c = is_burch_ideal(&r, &pw)?;
                let flags = vec!["EXACT".to_string()];
                s.push(format!("{id}/burch-m^{l}"), Provenance::Stated, "m^l is Burch", "BURCH".into(), c.verdict.label().into(), c.is_burch(), flags.clone());
                let x = MonomialIdeal::new(b, [var_power(b, 0, l as u16 + 1)]);
                let c = is_burch_ideal(&r, &x)?;
                s.push(format!("{id}/burch-x1^{}", l + 1), Provenance::Stated, "(x_i^(l+1)) = x_i^l m is Burch", "BURCH".into(), c.verdict.label().into(), c.is_burch(), flags.clone());
                let x = MonomialIdeal::new(b, [var_power(b, 0, l as u16)]);
                let primary = is_m_primary(&r, &x);
                s.push(format!("{id}/m-primary-x1^{l}"), Provenance::Stated, "(x_i^l) is not m-primary", "false".into(), primary.to_string(), !primary, flags);
            }
            Ok(())
        });
    }
}

fn complete_intersection(s: &mut Suite, p: &VerifyParams) {
    let id = "cor1.4";
    run_or_record(s, id, "complete intersection", |s| {
        let n_max = p.n_max;
        let r = codim_two_ci_ring(f101());
        let k = residue_field(&r);
        let (got, st) = betti_prefix(&k, n_max)?;
        let oracle = DenseOracle::new(&k, n_max, 2_000_000)?;
        let dense: Vec<u64> = (0..=n_max).map(|n| oracle.betti(n) as u64).collect();
        let ok = st.iter().all(Status::is_exact) && got == dense && dense.iter().enumerate().all(|(n, &b)| b == n as u64 + 1);
        s.push(format!("{id}/betti-k"), Provenance::Derived, "beta_n(k) from a dense resolution", fmt_seq(&dense), fmt_seq(&got), ok, vec!["EXACT".into()]);

        let reference = analyze(&dense, AnalysisOptions::default());
        let cx_ref = reference.complexity;
        let i = ideal_as_module(&r, &r.maximal_ideal())?;
        let v = invariant(InvariantKind::Cx, &k, None, n_max, None)?;
        let ok = v.complexity() == cx_ref && cx_ref == Complexity::Finite(2);
        s.verdict(format!("{id}/cx-k"), Provenance::Derived, "cx(k) of the dense prefix", &cx_ref.label(), &v, ok);
        for kind in [InvariantKind::Tcx, InvariantKind::CxPair] {
            let v = invariant(kind, &i, Some(&i), n_max, None)?;
            let ok = v.complexity() == cx_ref;
            s.verdict(format!("{id}/{kind}-m-m"), Provenance::Stated, "tcx(I,J) = cx(I,J) = cx(k)", &cx_ref.label(), &v, ok);
        }
        for kind in [InvariantKind::Tcurv, InvariantKind::CurvPair] {
            let v = invariant(kind, &i, Some(&i), n_max, None)?;
            let ok = v.curvature().is_exact_integer(1);
            s.verdict(format!("{id}/{kind}-m-m"), Provenance::Stated, "curvature at most 1 exactly for complete intersections", "1", &v, ok);
        }
        Ok(())
    });
}

/// Burch ideals built from `𝔪`, `𝔪²` and `𝔞𝔪`, each confirmed by the exact test.
fn burch_ideals<F: Field>(r: &Ring<F>, max_power: u32) -> Result<Vec<(String, MonomialIdeal)>> {
    let nv = r.nvars();
    let mut cands = Vec::new();
    for e in 1..=max_power {
        if let Ok(i) = make_m_power(r, e) {
            cands.push((if e == 1 { "m".to_string() } else { format!("m^{e}") }, i));
        }
    }
    let mut a_list = vec![("(x1)m".to_string(), MonomialIdeal::new(nv, [var_power(nv, 0, 1)]))];
    if nv >= 2 {
        a_list.push(("(x1^2,x2)m".to_string(), MonomialIdeal::new(nv, [var_power(nv, 0, 2), var_power(nv, 1, 1)])));
    }
    for (name, a) in a_list {
        if let Ok(i) = make_am_ideal(r, &a) {
            cands.push((name, i));
        }
    }
    let mut out = Vec::new();
    for (name, i) in cands {
        if is_burch_ideal(r, &i)?.is_burch() && !out.iter().any(|(_, j): &(String, MonomialIdeal)| *j == i) {
            out.push((name, i));
        }
    }
    Ok(out)
}

fn curv_equal(a: &Curvature, b: &Curvature) -> bool {
    a.compare(b) == Some(Ordering::Equal)
}

fn named_rings(b: Option<usize>) -> Vec<(String, Ring<PrimeField>)> {
    let mut rings = Vec::new();
    for b in b.map_or(vec![1, 2, 3], |b| vec![b]) {
        rings.push((format!("sqzero-b{b}"), square_zero_ring(f101(), b)));
    }
    for b in b.map_or(vec![2, 3, 4], |b| vec![b]) {
        rings.push((format!("axes-b{b}"), coordinate_axes_ring(f101(), b)));
    }
    rings.push(("ci-x2-y2".to_string(), codim_two_ci_ring(f101())));
    rings
}

fn burch_maximality(s: &mut Suite, p: &VerifyParams) {
    for (rname, r) in named_rings(p.b) {
        let id = format!("prop-burch-max/{rname}");
        run_or_record(s, &id, "Burch modules have maximal complexity and curvature", |s| {
            let k = residue_field(&r);
            let cxk = invariant(InvariantKind::Cx, &k, None, p.n_max, None)?;
            let curvk = invariant(InvariantKind::Curv, &k, None, p.n_max, None)?;
            let artinian = r.is_artinian();
            let (injcxk, injcurvk) = if artinian {
                (Some(invariant(InvariantKind::Injcx, &k, None, p.n_max, None)?), Some(invariant(InvariantKind::Injcurv, &k, None, p.n_max, None)?))
            } else {
                (None, None)
            };
            for (iname, ideal) in burch_ideals(&r, p.m.max(2))? {
                let m = ideal_as_module(&r, &ideal)?;
                let claim = "cx(M) = cx(k) and curv(M) = curv(k) for Burch M";
                let v = invariant(InvariantKind::Cx, &m, None, p.n_max, None)?;
                let ok = cxk.is_certified() && v.complexity() == cxk.complexity();
                s.verdict(format!("{id}/{iname}/cx"), Provenance::Stated, claim, &cxk.headline(), &v, ok);
                let v = invariant(InvariantKind::Curv, &m, None, p.n_max, None)?;
                let ok = curvk.is_certified() && curv_equal(v.curvature(), curvk.curvature());
                s.verdict(format!("{id}/{iname}/curv"), Provenance::Stated, claim, &curvk.headline(), &v, ok);
                if let (Some(ic), Some(iv)) = (&injcxk, &injcurvk) {
                    let claim = "injcx(M) = cx(k) and injcurv(M) = curv(k) for Burch M";
                    let v = invariant(InvariantKind::Injcx, &m, None, p.n_max, None)?;
                    let ok = ic.is_certified() && v.complexity() == cxk.complexity();
                    s.verdict(format!("{id}/{iname}/injcx"), Provenance::Stated, claim, &cxk.headline(), &v, ok);
                    let v = invariant(InvariantKind::Injcurv, &m, None, p.n_max, None)?;
                    let ok = iv.is_certified() && curv_equal(v.curvature(), curvk.curvature());
                    s.verdict(format!("{id}/{iname}/injcurv"), Provenance::Stated, claim, &curvk.headline(), &v, ok);
                }
            }
            Ok(())
        });
    }
}

/// The `μ` sequence of a pair, analyzed, plus whether every homology module
/// has a finite annihilating power of `𝔪`.
fn pair_analysis(kind: HomKind, m: &GradedModule<PrimeField>, n: &GradedModule<PrimeField>, n_max: usize) -> Result<(SequenceAnalysis, bool, Status)> {
    let d: PairInvariantData = pair_invariant_data(kind, m, n, n_max, default_window(m, Some(n), n_max))?;
    let annihilated = d.per_n.iter().all(|x| x.annihilator.is_some());
    let status = d.per_n.iter().map(|x| x.status).fold(Status::Exact, Status::meet);
    Ok((analyze(&d.mu_sequence(), AnalysisOptions::default()), annihilated, status))
}

fn max_cx(xs: &[Complexity]) -> Complexity {
    xs.iter().copied().fold(Complexity::Finite(0), |a, b| match a.compare(b) {
        None => Complexity::Unknown,
        Some(Ordering::Less) => b,
        _ => a,
    })
}

struct Instance {
    name: String,
    random: bool,
    ring: Ring<PrimeField>,
    others: Vec<(String, GradedModule<PrimeField>)>,
}

fn inequality_instances(p: &VerifyParams) -> Vec<Instance> {
    let mut out = Vec::new();
    let mut rings: Vec<(String, Ring<PrimeField>)> = p.b.map_or(vec![1, 2, 3], |b| vec![b]).into_iter().map(|b| (format!("sqzero-b{b}"), square_zero_ring(f101(), b))).collect();
    rings.push(("ci-x2-y2".into(), codim_two_ci_ring(f101())));
    for (name, r) in rings {
        let nv = r.nvars();
        let mut others = vec![("k".to_string(), residue_field(&r))];
        if let Ok(m) = ideal_as_module(&r, &r.maximal_ideal()) {
            others.push(("m".into(), m));
        }
        others.push(("R/(x1)".into(), quotient_module(&r, &MonomialIdeal::new(nv, [var_power(nv, 0, 1)]))));
        out.push(Instance { name, random: false, ring: r, others });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    let mut made = 0;
    while made < p.random_instances {
        let r = random_artinian_ring(&mut rng);
        let x = random_module(&mut rng, &r);
        let d = total_dim(&x);
        if d == 0 || d > 8 {
            continue;
        }
        out.push(Instance { name: format!("random-{}-{made}", p.seed), random: true, ring: r, others: vec![("X".into(), x)] });
        made += 1;
    }
    out
}

fn inequalities(s: &mut Suite, p: &VerifyParams) {
    let n_max = p.n_max;
    for inst in inequality_instances(p) {
        let id = format!("sec3-inequalities/{}", inst.name);
        run_or_record(s, &id, "complexity inequalities for Burch modules", |s| {
            let r = &inst.ring;
            for (bname, ideal) in burch_ideals(r, 2)? {
                let bm = ideal_as_module(r, &ideal)?;
                let quot = quotient_module(r, &ideal);
                let dep = depth(&bm, n_max, default_window(&residue_field(r), Some(&bm), n_max))?;
                if !dep.status.is_exact() {
                    continue;
                }
                let positive = dep.value.is_some_and(|d| d >= 1);
                for (xname, x) in &inst.others {
                    let tag = format!("{id}/B={bname}/X={xname}");
                    let cx = invariant(InvariantKind::Cx, x, None, n_max, None)?;
                    let injcx = invariant(InvariantKind::Injcx, x, None, n_max, None)?;
                    let (tor_b, h1, s1) = pair_analysis(HomKind::Tor, &bm, x, n_max)?;
                    let (ext_b, h2, s2) = pair_analysis(HomKind::Ext, &bm, x, n_max)?;
                    let (ext_xb, h3, s3) = pair_analysis(HomKind::Ext, x, &bm, n_max)?;
                    let mut tor_rhs = vec![tor_b.clone()];
                    let mut ext_rhs = vec![ext_b.clone()];
                    let mut ext_x_rhs = vec![ext_xb.clone()];
                    let mut hyp = h1 && h2 && h3;
                    let mut statuses = vec![s1, s2, s3];
                    if !positive {
                        // depth zero: the bound runs over both M and L/M
                        let (a, ha, sa) = pair_analysis(HomKind::Tor, &quot, x, n_max)?;
                        let (b, hb, sb) = pair_analysis(HomKind::Ext, &quot, x, n_max)?;
                        let (c, hc, sc) = pair_analysis(HomKind::Ext, x, &quot, n_max)?;
                        tor_rhs.push(a);
                        ext_rhs.push(b);
                        ext_x_rhs.push(c);
                        hyp = hyp && ha && hb && hc;
                        statuses.extend([sa, sb, sc]);
                    }
                    if !hyp || statuses.iter().any(|st| !st.is_exact()) {
                        continue;
                    }
                    let form = if positive { "" } else { " (max over M and L/M)" };
                    let forms: [(&str, &str, &InvariantVerdict, &Vec<SequenceAnalysis>); 3] = [
                        ("cx(N)<=tcx(M,N)", "cx(N) <= tcx(M,N), M Burch", &cx, &tor_rhs),
                        ("injcx(N)<=cx(M,N)", "injcx(N) <= cx(M,N), M Burch", &injcx, &ext_rhs),
                        ("cx(M)<=cx(M,N)", "cx(M) <= cx(M,N), N Burch", &cx, &ext_x_rhs),
                    ];
                    for (short, claim, lhs, rhs) in forms {
                        let rhs_cx = max_cx(&rhs.iter().map(|a| a.complexity).collect::<Vec<_>>());
                        let certified = lhs.is_certified() && rhs.iter().all(|a| a.is_certified());
                        let holds = matches!(lhs.complexity().compare(rhs_cx), Some(Ordering::Less | Ordering::Equal));
                        let mut flags: Vec<String> = rhs.iter().map(|a| a.status.label().to_string()).collect();
                        flags.push(lhs.analysis.status.label().to_string());
                        flags.push(format!("depth={}", dep.value.map_or("?".into(), |d| d.to_string())));
                        s.push(
                            format!("{tag}/{short}"),
                            Provenance::Stated,
                            &format!("{claim}{form}"),
                            format!("<= {}", rhs_cx.label()),
                            lhs.complexity().label(),
                            certified && holds,
                            flags,
                        );
                        if inst.random && !certified {
                            s.checks.last_mut().expect("just pushed").outcome = Outcome::Inconclusive;
                        }
                    }
                }
            }
            Ok(())
        });
    }
}

/// Runs the checks behind `selector`.
pub fn run_checks(selector: Selector, params: &VerifyParams) -> Result<VerifySuiteResult> {
    if params.n_max < 6 {
        return Err(Error::InsufficientData { len: params.n_max + 1, required: 7 });
    }
    let mut s = Suite { checks: Vec::new() };
    let chosen: Vec<Selector> = if selector == Selector::All { Selector::EACH.to_vec() } else { vec![selector] };
    for sel in chosen {
        match sel {
            Selector::SquareZero => square_zero(&mut s, params),
            Selector::CoordinateAxes => coordinate_axes(&mut s, params),
            Selector::CompleteIntersection => complete_intersection(&mut s, params),
            Selector::BurchMaximality => burch_maximality(&mut s, params),
            Selector::Inequalities => inequalities(&mut s, params),
            Selector::All => unreachable!(),
        }
    }
    Ok(VerifySuiteResult { selector, params: params.clone(), checks: s.checks })
}

#[cfg(test)]
mod tests;
