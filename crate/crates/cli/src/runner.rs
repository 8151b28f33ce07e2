//! Executes the tasks of an elaborated plan, going through the disk cache
//! for Betti tables, Bass numbers and Tor/Ext summaries.

use std::collections::BTreeMap;
use std::time::Instant;

use burchcx::asymptote::{analyze, verdict_from_prefix, AnalysisOptions, InvariantOptions, InvariantVerdict, SequenceAnalysis, SequenceKind};
use burchcx::burch::{depth, is_burch_ideal, is_burch_submodule, BurchReport, Depth};
use burchcx::pairhom::{annihilator_power, ext, length, mu, tor, HomKind, HomologyModule};
use burchcx::resolve::{bass_numbers, betti_numbers, cache_key, minimal_resolution_with, BassNumbers, BettiTable, ResolveOptions};
use burchcx::speclang::{Plan, PlannedTask, TaskKind};
use burchcx::{Deg, Error, Field, GradedModule, Status};
use rayon::prelude::*;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::cache::{content_key, DiskCache};

/// One homological degree of Tor or Ext. The counting functions are absent
/// when the window cannot certify them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairRow {
    pub n: usize,
    pub dims: BTreeMap<Deg, usize>,
    #[serde(with = "status_label")]
    pub status: Status,
    pub mu: Option<usize>,
    pub length: Option<usize>,
    pub annihilator: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
}

/// Statuses as their report labels, `EXACT`, `WINDOWED(w)` or `STABILIZED(w,g)`.
mod status_label {
    use burchcx::Status;
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(s: &Status, ser: S) -> Result<S::Ok, S::Error> {
        ser.serialize_str(&s.label())
    }

    fn parse(text: &str) -> Option<Status> {
        if text == "EXACT" {
            return Some(Status::Exact);
        }
        let (head, rest) = text.split_once('(')?;
        let args: Vec<&str> = rest.strip_suffix(')')?.split(',').collect();
        match (head, args.as_slice()) {
            ("WINDOWED", [w]) => Some(Status::Windowed { window: w.parse().ok()? }),
            ("STABILIZED", [w, g]) => Some(Status::Stabilized { window: w.parse().ok()?, guard: g.parse().ok()? }),
            _ => None,
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Status, D::Error> {
        let text = String::deserialize(de)?;
        parse(&text).ok_or_else(|| D::Error::custom(format!("bad status {text}")))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SequenceBlock {
    pub status: Vec<String>,
    pub analysis: SequenceAnalysis,
}

#[derive(Clone, Debug, Serialize)]
pub struct HomologyResult {
    pub left: String,
    pub right: String,
    pub n_max: usize,
    pub window: Deg,
    pub degrees: Vec<PairRow>,
    /// Analysis of the minimal-generator counts, when every count is certified.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mu_analysis: Option<SequenceAnalysis>,
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "op", rename_all = "kebab-case")]
pub enum TaskResult {
    Betti {
        module: String,
        n_max: usize,
        window: Deg,
        betti: Vec<usize>,
        graded: Vec<BTreeMap<Deg, usize>>,
        #[serde(flatten)]
        sequence: SequenceBlock,
    },
    Resolve {
        module: String,
        n_max: usize,
        window: Deg,
        ranks: Vec<usize>,
        twists: Vec<BTreeMap<Deg, usize>>,
        status: Vec<String>,
    },
    Bass {
        module: String,
        n_max: usize,
        window: Deg,
        bass: Vec<usize>,
        #[serde(flatten)]
        sequence: SequenceBlock,
    },
    Tor(HomologyResult),
    Ext(HomologyResult),
    Invariant {
        left: String,
        right: Option<String>,
        value: String,
        verdict: InvariantVerdict,
    },
    Burch {
        target: String,
        certificate: BurchReport,
    },
    Depth {
        module: String,
        depth: Depth,
    },
}

/// A task outcome as it appears in the report.
#[derive(Clone, Debug, Serialize)]
pub struct TaskReport {
    pub index: usize,
    pub line: usize,
    pub task: String,
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub result: Option<TaskResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl TaskReport {
    pub fn failed(&self) -> bool {
        self.error.is_some()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CacheUse {
    Hit,
    Miss,
    Partial,
    Off,
    Unused,
}

#[derive(Clone, Debug, Serialize)]
pub struct TaskTiming {
    pub index: usize,
    pub seconds: f64,
    pub cache: CacheUse,
}

/// Per-task view of the cache, counting its own lookups.
struct Lookup<'a> {
    cache: Option<&'a DiskCache>,
    hits: usize,
    misses: usize,
}

impl Lookup<'_> {
    fn fetch<T, C>(&mut self, kind: &str, key: &str, description: &str, compute: C) -> burchcx::Result<T>
    where
        T: Serialize + DeserializeOwned,
        C: FnOnce() -> burchcx::Result<T>,
    {
        let Some(cache) = self.cache else { return compute() };
        if let Some(hit) = cache.get::<T>(kind, key) {
            self.hits += 1;
            return Ok(hit);
        }
        self.misses += 1;
        let value = compute()?;
        if let Err(e) = cache.put(kind, key, description, &value) {
            eprintln!("warning: could not write cache entry: {e}");
        }
        Ok(value)
    }

    fn usage(&self) -> CacheUse {
        match (self.cache, self.hits, self.misses) {
            (None, _, _) => CacheUse::Off,
            (_, 0, 0) => CacheUse::Unused,
            (_, _, 0) => CacheUse::Hit,
            (_, 0, _) => CacheUse::Miss,
            _ => CacheUse::Partial,
        }
    }
}

fn labels(statuses: &[Status]) -> Vec<String> {
    statuses.iter().map(Status::label).collect()
}

fn meet(statuses: &[Status]) -> Status {
    statuses.iter().copied().fold(Status::Exact, Status::meet)
}

fn as_u64(xs: &[usize]) -> Vec<u64> {
    xs.iter().map(|&x| x as u64).collect()
}

fn pair_rows<F: Field>(hs: &[HomologyModule<F>]) -> Vec<PairRow> {
    hs.iter()
        .map(|h| {
            let counted = mu(h).and_then(|m| Ok((m, length(h)?, annihilator_power(h)?)));
            let (mu, length, annihilator, note) = match counted {
                Ok((m, l, a)) => (Some(m), Some(l), a, None),
                Err(Error::PossiblyIncomplete(why)) => (None, None, None, Some(why)),
                Err(e) => (None, None, None, Some(e.to_string())),
            };
            PairRow { n: h.n, dims: h.dims.clone(), status: h.status, mu, length, annihilator, note }
        })
        .collect()
}

struct Runner<'a, F: Field> {
    plan: &'a Plan<F>,
    field: String,
    ring: String,
}

impl<'a, F: Field> Runner<'a, F> {
    fn module(&self, name: &str) -> burchcx::Result<&'a GradedModule<F>> {
        self.plan.modules.get(name).ok_or_else(|| Error::Unsupported(format!("unknown module {name}")))
    }

    fn betti(&self, look: &mut Lookup, name: &str, n_max: usize, window: Deg) -> burchcx::Result<BettiTable> {
        let m = self.module(name)?;
        let mut opts = ResolveOptions::new(n_max, window);
        opts.guard = self.plan.options.guard;
        let key = cache_key(m, &opts);
        look.fetch("betti", &key, &format!("betti {name} n={n_max} window={window}"), || {
            Ok(betti_numbers(&minimal_resolution_with(m, &opts)?))
        })
    }

    fn bass(&self, look: &mut Lookup, name: &str, n_max: usize, window: Deg) -> burchcx::Result<BassNumbers> {
        let m = self.module(name)?;
        let (n, w) = (n_max.to_string(), window.to_string());
        let key = content_key(&["bass", &self.field, &self.ring, &m.canonical_text(), &n, &w]);
        look.fetch("bass", &key, &format!("bass {name} n={n_max} window={window}"), || bass_numbers(m, n_max, window))
    }

    fn homology(&self, look: &mut Lookup, kind: HomKind, left: &str, right: &str, n_max: usize, window: Deg) -> burchcx::Result<Vec<PairRow>> {
        let (m, n) = (self.module(left)?, self.module(right)?);
        let op = match kind {
            HomKind::Tor => "tor",
            HomKind::Ext => "ext",
        };
        let (nn, w) = (n_max.to_string(), window.to_string());
        let key = content_key(&[op, &self.field, &self.ring, &m.canonical_text(), &n.canonical_text(), &nn, &w]);
        look.fetch(op, &key, &format!("{op} {left} {right} n={n_max} window={window}"), || {
            let hs = match kind {
                HomKind::Tor => tor(m, n, n_max, window)?,
                HomKind::Ext => ext(m, n, n_max, window)?,
            };
            Ok(pair_rows(&hs))
        })
    }

    fn analysis_opts(&self) -> AnalysisOptions {
        AnalysisOptions { guard: self.plan.options.guard as usize, ..AnalysisOptions::default() }
    }

    fn execute(&self, look: &mut Lookup, kind: &TaskKind) -> burchcx::Result<(Status, TaskResult)> {
        Ok(match kind {
            TaskKind::Betti { module, n_max, window } => {
                let t = self.betti(look, module, *n_max, *window)?;
                let analysis = analyze(&as_u64(&t.total), self.analysis_opts());
                let result = TaskResult::Betti {
                    module: module.clone(),
                    n_max: *n_max,
                    window: *window,
                    betti: t.total,
                    graded: t.graded,
                    sequence: SequenceBlock { status: labels(&t.status), analysis },
                };
                (meet(&t.status), result)
            }
            TaskKind::Resolve { module, n_max, window } => {
                let t = self.betti(look, module, *n_max, *window)?;
                let status = meet(&t.status);
                let result = TaskResult::Resolve {
                    module: module.clone(),
                    n_max: *n_max,
                    window: *window,
                    ranks: t.total,
                    twists: t.graded,
                    status: labels(&t.status),
                };
                (status, result)
            }
            TaskKind::Bass { module, n_max, window } => {
                let b = self.bass(look, module, *n_max, *window)?;
                let analysis = analyze(&as_u64(&b.values), self.analysis_opts());
                let result = TaskResult::Bass {
                    module: module.clone(),
                    n_max: *n_max,
                    window: *window,
                    bass: b.values,
                    sequence: SequenceBlock { status: labels(&b.status), analysis },
                };
                (meet(&b.status), result)
            }
            TaskKind::Tor { left, right, n_max, window } | TaskKind::Ext { left, right, n_max, window } => {
                let hk = if matches!(kind, TaskKind::Tor { .. }) { HomKind::Tor } else { HomKind::Ext };
                let rows = self.homology(look, hk, left, right, *n_max, *window)?;
                let status = rows.iter().map(|r| r.status).fold(Status::Exact, Status::meet);
                let mus: Option<Vec<u64>> = rows.iter().map(|r| r.mu.map(|m| m as u64)).collect();
                let h = HomologyResult {
                    left: left.clone(),
                    right: right.clone(),
                    n_max: *n_max,
                    window: *window,
                    degrees: rows,
                    mu_analysis: mus.map(|p| analyze(&p, self.analysis_opts())),
                };
                (status, if hk == HomKind::Tor { TaskResult::Tor(h) } else { TaskResult::Ext(h) })
            }
            TaskKind::Invariant { kind: ik, left, right, n_max, window } => {
                let (prefix, statuses) = match ik.sequence() {
                    SequenceKind::Betti => {
                        let t = self.betti(look, left, *n_max, *window)?;
                        (as_u64(&t.total), t.status)
                    }
                    SequenceKind::Bass => {
                        let b = self.bass(look, left, *n_max, *window)?;
                        (as_u64(&b.values), b.status)
                    }
                    seq @ (SequenceKind::MuExt | SequenceKind::MuTor) => {
                        let hk = if seq == SequenceKind::MuExt { HomKind::Ext } else { HomKind::Tor };
                        let right = right.as_deref().ok_or_else(|| Error::Unsupported(format!("invariant {ik} needs a second module")))?;
                        let rows = self.homology(look, hk, left, right, *n_max, *window)?;
                        let mut prefix = Vec::with_capacity(rows.len());
                        for r in &rows {
                            match r.mu {
                                Some(m) => prefix.push(m as u64),
                                None => return Err(Error::PossiblyIncomplete(r.note.clone().unwrap_or_default())),
                            }
                        }
                        (prefix, rows.iter().map(|r| r.status).collect())
                    }
                };
                let opts = InvariantOptions { n_max: *n_max, window: Some(*window), guard: self.plan.options.guard, ..InvariantOptions::default() };
                let verdict = verdict_from_prefix(*ik, &prefix, &statuses, *window, &opts);
                let status = verdict.prefix_status;
                (status, TaskResult::Invariant { left: left.clone(), right: right.clone(), value: verdict.headline(), verdict })
            }
            TaskKind::BurchIdeal { ideal } => {
                let i = self.plan.ideals.get(ideal).ok_or_else(|| Error::Unsupported(format!("unknown ideal {ideal}")))?;
                let cert = is_burch_ideal(&self.plan.ring, i)?;
                (Status::Exact, TaskResult::Burch { target: ideal.clone(), certificate: cert.report(&self.plan.ring) })
            }
            TaskKind::BurchPair { pair, window } => {
                let p = self.plan.pairs.get(pair).ok_or_else(|| Error::Unsupported(format!("unknown pair {pair}")))?;
                let cert = is_burch_submodule(p, *window)?;
                let status = p.status_for(*window);
                (status, TaskResult::Burch { target: pair.clone(), certificate: cert.report(&self.plan.ring) })
            }
            TaskKind::Depth { module, n_max, window } => {
                let d = depth(self.module(module)?, *n_max, *window)?;
                (d.status, TaskResult::Depth { module: module.clone(), depth: d })
            }
        })
    }

    fn run_one(&self, cache: Option<&DiskCache>, task: &PlannedTask) -> (TaskReport, TaskTiming) {
        let start = Instant::now();
        let mut look = Lookup { cache, hits: 0, misses: 0 };
        let outcome = self.execute(&mut look, &task.kind);
        let (status, result, error) = match outcome {
            Ok((s, r)) => (s.label(), Some(r), None),
            Err(e) => ("ERROR".to_string(), None, Some(e.to_string())),
        };
        let report = TaskReport { index: task.index, line: task.loc.line, task: task.kind.describe(), status, result, error };
        let timing = TaskTiming { index: task.index, seconds: start.elapsed().as_secs_f64(), cache: look.usage() };
        (report, timing)
    }
}

/// Runs every task of `plan` on a pool of `jobs` threads; results keep plan order.
pub fn run_plan<F: Field>(plan: &Plan<F>, cache: Option<&DiskCache>, jobs: usize) -> Vec<(TaskReport, TaskTiming)> {
    let runner = Runner { plan, field: plan.ring.field().name(), ring: plan.ring.describe() };
    let work = || plan.tasks.par_iter().map(|t| runner.run_one(cache, t)).collect::<Vec<_>>();
    match rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build() {
        Ok(pool) => pool.install(work),
        Err(_) => plan.tasks.iter().map(|t| runner.run_one(cache, t)).collect(),
    }
}
