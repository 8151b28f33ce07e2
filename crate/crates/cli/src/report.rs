//! Report assembly and the three renderings: JSON, TSV and plain text.

use std::fmt::Write as _;

use burchcx::asymptote::{Curvature, SequenceAnalysis};
use burchcx::speclang::{AnyPlan, ElabOptions, Plan, Warning};
use burchcx::verify::VerifySuiteResult;
use burchcx::Field;
use serde::Serialize;

use crate::runner::{HomologyResult, TaskReport, TaskResult, TaskTiming};

pub const TOOL: &str = "burchcx";

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Tsv,
    Pretty,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Tsv => "tsv",
            Format::Pretty => "txt",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Meta {
    pub tool: String,
    pub version: String,
    pub spec: String,
    pub spec_sha256: String,
    pub plan_hash: String,
    pub options: ElabOptions,
    pub seed: u64,
    pub warnings: Vec<Warning>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RingEcho {
    pub field: String,
    pub characteristic: u64,
    pub vars: Vec<String>,
    pub relations: Vec<String>,
    pub artinian: bool,
    pub top_degree: Option<u32>,
    pub ideals: Vec<(String, String)>,
    pub modules: Vec<(String, String)>,
}

impl RingEcho {
    fn of<F: Field>(plan: &Plan<F>) -> Self {
        let ring = &plan.ring;
        let names = ring.var_names();
        RingEcho {
            field: ring.field().name(),
            characteristic: ring.field().characteristic(),
            vars: names.to_vec(),
            relations: ring.defining().gens().iter().map(|m| m.display(names).to_string()).collect(),
            artinian: ring.is_artinian(),
            top_degree: ring.top_degree(),
            ideals: plan.ideals.iter().map(|(k, i)| (k.clone(), i.display(names))).collect(),
            modules: plan.modules.iter().map(|(k, m)| (k.clone(), m.canonical_text())).collect(),
        }
    }

    pub fn from_plan(plan: &AnyPlan) -> Self {
        match plan {
            AnyPlan::Prime(p) => Self::of(p),
            AnyPlan::Rational(p) => Self::of(p),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CacheStats {
    pub dir: Option<String>,
    pub hits: usize,
    pub misses: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Timing {
    pub jobs: usize,
    pub total_seconds: f64,
    pub cache: CacheStats,
    pub tasks: Vec<TaskTiming>,
}

/// The structured report. `timing` is last and is the only part that varies
/// between identical runs.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub meta: Meta,
    pub ring: RingEcho,
    pub tasks: Vec<TaskReport>,
    pub timing: Timing,
}

impl Report {
    pub fn failed(&self) -> bool {
        self.tasks.iter().any(TaskReport::failed)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => json(self),
            Format::Tsv => tsv(self),
            Format::Pretty => pretty(self),
        }
    }
}

pub fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

/// Text of a scalar exactly as it appears in the JSON rendering, without quotes.
fn num<T: Serialize>(v: T) -> String {
    match serde_json::to_value(v).expect("scalars serialize") {
        serde_json::Value::String(s) => s,
        serde_json::Value::Null => "NA".into(),
        other => other.to_string(),
    }
}

fn curvature_text(c: &Curvature) -> String {
    match c {
        Curvature::Exact(_) => c.label(),
        Curvature::Numeric { value, .. } | Curvature::Estimate(value) => num(value),
    }
}

pub const TSV_HEADER: &str = "task\top\tquantity\tn\tdegree\tvalue";

struct Rows<'a> {
    out: &'a mut String,
    task: usize,
    op: &'static str,
}

impl Rows<'_> {
    fn row(&mut self, quantity: &str, n: Option<usize>, degree: Option<i32>, value: String) {
        let n = n.map_or("-".into(), |n| n.to_string());
        let d = degree.map_or("-".into(), |d| d.to_string());
        let _ = writeln!(self.out, "{}\t{}\t{quantity}\t{n}\t{d}\t{value}", self.task, self.op);
    }

    fn analysis(&mut self, prefix: &str, a: &SequenceAnalysis) {
        self.row(&format!("{prefix}complexity"), None, None, a.complexity.label());
        self.row(&format!("{prefix}curvature"), None, None, curvature_text(&a.curvature));
        self.row(&format!("{prefix}analysis_status"), None, None, a.status.label().into());
    }

    fn homology(&mut self, h: &HomologyResult) {
        for r in &h.degrees {
            for (&d, &v) in &r.dims {
                self.row("dim", Some(r.n), Some(d), num(v));
            }
            self.row("mu", Some(r.n), None, num(r.mu));
            self.row("length", Some(r.n), None, num(r.length));
            self.row("annihilator", Some(r.n), None, num(r.annihilator));
            self.row("status", Some(r.n), None, r.status.label());
        }
        if let Some(a) = &h.mu_analysis {
            self.analysis("mu_", a);
        }
    }
}

fn op_name(r: &TaskResult) -> &'static str {
    match r {
        TaskResult::Betti { .. } => "betti",
        TaskResult::Resolve { .. } => "resolve",
        TaskResult::Bass { .. } => "bass",
        TaskResult::Tor(_) => "tor",
        TaskResult::Ext(_) => "ext",
        TaskResult::Invariant { .. } => "invariant",
        TaskResult::Burch { .. } => "burch",
        TaskResult::Depth { .. } => "depth",
    }
}

/// One row per number in the report: `task op quantity n degree value`,
/// with `-` for an unused coordinate and `NA` for a refused value.
pub fn tsv(report: &Report) -> String {
    let mut out = String::new();
    out.push_str(TSV_HEADER);
    out.push('\n');
    for t in &report.tasks {
        let op = t.result.as_ref().map_or("error", op_name);
        let mut rows = Rows { out: &mut out, task: t.index, op };
        rows.row("status", None, None, t.status.clone());
        if let Some(e) = &t.error {
            rows.row("error", None, None, e.replace(['\t', '\n'], " "));
        }
        let Some(result) = &t.result else { continue };
        match result {
            TaskResult::Betti { betti, graded, sequence, .. } => {
                for (n, b) in betti.iter().enumerate() {
                    rows.row("betti", Some(n), None, num(b));
                    for (&d, &v) in &graded[n] {
                        rows.row("betti", Some(n), Some(d), num(v));
                    }
                    rows.row("status", Some(n), None, sequence.status[n].clone());
                }
                rows.analysis("", &sequence.analysis);
            }
            TaskResult::Resolve { ranks, twists, status, .. } => {
                for (n, r) in ranks.iter().enumerate() {
                    rows.row("rank", Some(n), None, num(r));
                    for (&d, &v) in &twists[n] {
                        rows.row("rank", Some(n), Some(d), num(v));
                    }
                    rows.row("status", Some(n), None, status[n].clone());
                }
            }
            TaskResult::Bass { bass, sequence, .. } => {
                for (n, b) in bass.iter().enumerate() {
                    rows.row("bass", Some(n), None, num(b));
                    rows.row("status", Some(n), None, sequence.status[n].clone());
                }
                rows.analysis("", &sequence.analysis);
            }
            TaskResult::Tor(h) | TaskResult::Ext(h) => rows.homology(h),
            TaskResult::Invariant { value, verdict, .. } => {
                for (n, v) in verdict.analysis.prefix.iter().enumerate() {
                    rows.row("prefix", Some(n), None, num(v));
                }
                rows.analysis("", &verdict.analysis);
                rows.row("value", None, None, value.clone());
            }
            TaskResult::Burch { certificate, .. } => {
                rows.row("verdict", None, None, certificate.verdict.label().into());
                if let Some(w) = &certificate.witness {
                    rows.row("witness", None, Some(w.degree), w.element.clone());
                }
            }
            TaskResult::Depth { depth, .. } => {
                rows.row("depth", None, None, num(depth.value));
            }
        }
    }
    out
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn shifted_ring(twist: i32) -> String {
    match twist {
        0 => "R".into(),
        t if t > 0 => format!("R(-{t})"),
        t => format!("R({})", -t),
    }
}

fn analysis_line(a: &SequenceAnalysis) -> String {
    format!("cx = {}, curv = {} [{}]", a.complexity.label(), a.curvature.label(), a.status.label())
}

pub fn pretty(report: &Report) -> String {
    let mut s = String::new();
    let r = &report.ring;
    let _ = writeln!(s, "{} {}  spec {}  plan {}", report.meta.tool, report.meta.version, report.meta.spec, &report.meta.plan_hash[..12]);
    let rels = if r.relations.is_empty() { "0".to_string() } else { r.relations.join(", ") };
    let shape = match r.top_degree {
        Some(t) => format!("Artinian, top degree {t}"),
        None => "not Artinian".to_string(),
    };
    let _ = writeln!(s, "ring {}[{}]/({rels})  {shape}", r.field, r.vars.join(","));
    for w in &report.meta.warnings {
        let _ = writeln!(s, "warning {}:{}: {}", w.line, w.column, w.message);
    }
    for t in &report.tasks {
        let _ = writeln!(s, "\n[{}] {}  {}", t.index, t.task, t.status);
        if let Some(e) = &t.error {
            let _ = writeln!(s, "    error: {e}");
        }
        let Some(result) = &t.result else { continue };
        match result {
            TaskResult::Betti { betti, sequence, .. } => {
                let _ = writeln!(s, "    betti: {}", join(betti));
                let _ = writeln!(s, "    {}", analysis_line(&sequence.analysis));
            }
            TaskResult::Resolve { ranks, twists, .. } => {
                for (n, (rank, tw)) in ranks.iter().zip(twists).enumerate() {
                    let parts: Vec<String> = tw.iter().map(|(&d, m)| format!("{}^{m}", shifted_ring(d))).collect();
                    let _ = writeln!(s, "    F{n}: rank {rank}  {}", parts.join(" + "));
                }
            }
            TaskResult::Bass { bass, sequence, .. } => {
                let _ = writeln!(s, "    bass: {}", join(bass));
                let _ = writeln!(s, "    {}", analysis_line(&sequence.analysis));
            }
            TaskResult::Tor(h) | TaskResult::Ext(h) => {
                for row in &h.degrees {
                    let dims: Vec<String> = row.dims.iter().map(|(d, v)| format!("{d}:{v}")).collect();
                    let _ = writeln!(s, "    n={}: dims {{{}}}  mu {}  length {}", row.n, dims.join(" "), num(row.mu), num(row.length));
                }
                if let Some(a) = &h.mu_analysis {
                    let _ = writeln!(s, "    mu: {}", analysis_line(a));
                }
            }
            TaskResult::Invariant { value, verdict, .. } => {
                let _ = writeln!(s, "    {} = {}", verdict.kind.name(), value);
                let _ = writeln!(s, "    prefix: {}", join(&verdict.analysis.prefix));
                let _ = writeln!(s, "    {}", analysis_line(&verdict.analysis));
            }
            TaskResult::Burch { target, certificate } => {
                let _ = writeln!(s, "    {target}: {}", certificate.verdict.label());
                if let Some(w) = &certificate.witness {
                    let _ = writeln!(s, "    witness {} = {} * ({}) in degree {}", w.element, w.variable, w.colon, w.degree);
                }
            }
            TaskResult::Depth { depth, .. } => {
                let _ = writeln!(s, "    depth = {}", num(depth.value));
                if let Some(d) = &depth.diagnostics {
                    let _ = writeln!(s, "    {d}");
                }
            }
        }
    }
    let c = &report.timing.cache;
    let _ = writeln!(s, "\n{:.3} s on {} job(s); cache hits {} misses {}", report.timing.total_seconds, report.timing.jobs, c.hits, c.misses);
    s
}

pub fn verify_tsv(res: &VerifySuiteResult) -> String {
    let mut s = String::from("id\tprovenance\texpected\tcomputed\toutcome\tflags\n");
    for c in &res.checks {
        let _ = writeln!(s, "{}\t{}\t{}\t{}\t{}\t{}", c.id, c.provenance.tag(), c.expected, c.computed, c.outcome.label(), c.flags.join(","));
    }
    s
}

pub fn verify_pretty(res: &VerifySuiteResult) -> String {
    let mut s = String::new();
    for c in &res.checks {
        let _ = writeln!(s, "{:<13} {:<40} expected {} [{}], got {}", c.outcome.label(), c.id, c.expected, c.provenance.tag(), c.computed);
    }
    let (pass, inconclusive, total) = res.count();
    let _ = writeln!(s, "\n{pass}/{total} passed, {inconclusive} inconclusive, selector {}", res.selector);
    s
}
