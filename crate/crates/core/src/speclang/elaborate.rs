use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;
use sha2::{Digest, Sha256};

use super::{fmt_rational, is_zero_poly, DeclKind, IdealExpr, Loc, ModuleExpr, PairSource, PolyExpr, SpecDocument, Task, TaskVerb};
use crate::asymptote::{default_window, InvariantKind};
use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec, PrimeField};
use crate::gmod::{direct_sum, ideal_as_module, residue_field, Deg, GradedModule, ModElem, Poly, SubmodulePair};
use crate::monoring::{GradedRing, Monomial, MonomialIdeal, Ring};
use crate::resolve::{auto_window, DEFAULT_GUARD, DEFAULT_N_MAX};
use crate::Rationals;

/// Defaults applied to tasks that do not set their own parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ElabOptions {
    pub n_max: usize,
    /// Overrides the automatic window of every task without `window=`.
    pub window: Option<Deg>,
    pub guard: u32,
}

impl Default for ElabOptions {
    fn default() -> Self {
        Self { n_max: DEFAULT_N_MAX, window: None, guard: DEFAULT_GUARD }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Warning {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

/// A task bound to declared objects, every parameter filled in.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "op", rename_all = "kebab-case")]
pub enum TaskKind {
    Betti { module: String, n_max: usize, window: Deg },
    Bass { module: String, n_max: usize, window: Deg },
    Resolve { module: String, n_max: usize, window: Deg },
    Tor { left: String, right: String, n_max: usize, window: Deg },
    Ext { left: String, right: String, n_max: usize, window: Deg },
    Invariant { kind: InvariantKind, left: String, right: Option<String>, n_max: usize, window: Deg },
    BurchIdeal { ideal: String },
    BurchPair { pair: String, window: Deg },
    Depth { module: String, n_max: usize, window: Deg },
}

impl TaskKind {
    /// Canonical one-line rendering with resolved parameters.
    pub fn describe(&self) -> String {
        match self {
            TaskKind::Betti { module, n_max, window } => format!("betti {module} n={n_max} window={window}"),
            TaskKind::Bass { module, n_max, window } => format!("bass {module} n={n_max} window={window}"),
            TaskKind::Resolve { module, n_max, window } => format!("resolve {module} n={n_max} window={window}"),
            TaskKind::Tor { left, right, n_max, window } => format!("tor {left} {right} n={n_max} window={window}"),
            TaskKind::Ext { left, right, n_max, window } => format!("ext {left} {right} n={n_max} window={window}"),
            TaskKind::Invariant { kind, left, right, n_max, window } => {
                let r = right.as_ref().map(|r| format!(" {r}")).unwrap_or_default();
                format!("invariant {} {left}{r} n={n_max} window={window}", kind.name())
            }
            TaskKind::BurchIdeal { ideal } => format!("burch {ideal}"),
            TaskKind::BurchPair { pair, window } => format!("burch {pair} window={window}"),
            TaskKind::Depth { module, n_max, window } => format!("depth {module} n={n_max} window={window}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PlannedTask {
    pub index: usize,
    pub loc: Loc,
    pub kind: TaskKind,
    /// The task as written, normalized.
    pub source: String,
}

/// A document turned into concrete objects and bound tasks.
#[derive(Clone, Debug)]
pub struct Plan<F: Field> {
    pub ring: Ring<F>,
    pub ideals: BTreeMap<String, MonomialIdeal>,
    pub modules: BTreeMap<String, GradedModule<F>>,
    pub pairs: BTreeMap<String, SubmodulePair<F>>,
    pub tasks: Vec<PlannedTask>,
    pub warnings: Vec<Warning>,
    pub options: ElabOptions,
    /// Lowercase hex sha256 of the canonical plan text.
    pub hash: String,
}

#[derive(Clone, Debug)]
pub enum AnyPlan {
    Prime(Plan<PrimeField>),
    Rational(Plan<Rationals>),
}

impl AnyPlan {
    pub fn hash(&self) -> &str {
        match self {
            AnyPlan::Prime(p) => &p.hash,
            AnyPlan::Rational(p) => &p.hash,
        }
    }

    pub fn tasks(&self) -> &[PlannedTask] {
        match self {
            AnyPlan::Prime(p) => &p.tasks,
            AnyPlan::Rational(p) => &p.tasks,
        }
    }

    pub fn warnings(&self) -> &[Warning] {
        match self {
            AnyPlan::Prime(p) => &p.warnings,
            AnyPlan::Rational(p) => &p.warnings,
        }
    }
}

fn semantic(loc: Loc, message: impl Into<String>) -> Error {
    Error::Semantic { line: loc.line, column: loc.column, message: message.into() }
}

/// Builds the ring and objects over the field the document declares.
pub fn elaborate(doc: &SpecDocument, opts: &ElabOptions) -> Result<AnyPlan> {
    match doc.field {
        FieldSpec::Prime(p) => {
            let f = PrimeField::new(p).map_err(|e| semantic(doc.field_loc, e.to_string()))?;
            elaborate_with(doc, f, opts).map(AnyPlan::Prime)
        }
        FieldSpec::Rationals => elaborate_with(doc, Rationals::new(), opts).map(AnyPlan::Rational),
    }
}

struct Builder<'a, F: Field> {
    doc: &'a SpecDocument,
    ring: Ring<F>,
    ideals: BTreeMap<String, MonomialIdeal>,
    modules: BTreeMap<String, GradedModule<F>>,
    pairs: BTreeMap<String, SubmodulePair<F>>,
    warnings: Vec<Warning>,
}

impl<F: Field> Builder<'_, F> {
    fn warn(&mut self, loc: Loc, message: String) {
        self.warnings.push(Warning { line: loc.line, column: loc.column, message });
    }

    fn mono_name(&self, m: &Monomial) -> String {
        m.display(&self.doc.vars).to_string()
    }

    fn monomials(&mut self, gens: &[(Monomial, Loc)]) -> MonomialIdeal {
        let mut kept = Vec::new();
        for (m, loc) in gens {
            if self.ring.defining().contains(m) {
                let msg = format!("generator {} is zero in the ring and was dropped", self.mono_name(m));
                self.warn(*loc, msg);
            } else {
                kept.push(m.clone());
            }
        }
        self.ring.reduce_ideal(&MonomialIdeal::new(self.ring.nvars(), kept))
    }

    fn poly(&self, p: &PolyExpr, loc: Loc) -> Result<Poly<F>> {
        let f = self.ring.field();
        let mut out: Poly<F> = Vec::new();
        for (c, m) in p {
            let c = f.parse(&fmt_rational(c)).map_err(|e| semantic(loc, e.to_string()))?;
            if f.is_zero(&c) || !self.ring.is_standard(m) {
                continue;
            }
            match out.iter_mut().find(|(n, _)| n == m) {
                Some((_, acc)) => *acc = f.add(acc, &c),
                None => out.push((m.clone(), c)),
            }
        }
        out.retain(|(_, c)| !f.is_zero(c));
        Ok(out)
    }

    fn ideal(&mut self, expr: &IdealExpr, loc: Loc) -> Result<MonomialIdeal> {
        Ok(match expr {
            IdealExpr::Gens(g) => self.monomials(g),
            IdealExpr::MPow(n) => {
                let i = self.ring.reduce_ideal(&self.ring.maximal_ideal().power(*n));
                if i.is_zero() && *n > 0 {
                    self.warn(loc, format!("mpow {n} is the zero ideal"));
                }
                i
            }
            IdealExpr::Product(a) => {
                let i = self.ideals[&a.name].clone();
                let p = crate::monoring::ideal_product(&self.ring, &i, &self.ring.maximal_ideal());
                if p.is_zero() {
                    self.warn(loc, format!("{} times the maximal ideal is zero", a.name));
                }
                p
            }
        })
    }

    fn module(&mut self, expr: &ModuleExpr, loc: Loc) -> Result<GradedModule<F>> {
        let ring = Arc::clone(&self.ring);
        Ok(match expr {
            ModuleExpr::Ideal(i) => ideal_as_module(&ring, &self.ideals[&i.name]).map_err(|e| semantic(loc, e.to_string()))?,
            ModuleExpr::Residue => residue_field(&ring),
            ModuleExpr::Free(t) => GradedModule::free(ring, t.clone()),
            ModuleExpr::Sum(a, b) => direct_sum(&self.modules[&a.name], &self.modules[&b.name]).map_err(|e| semantic(loc, e.to_string()))?,
            ModuleExpr::Coker { rows, degs, matrix } => {
                if degs.len() != *rows {
                    return Err(semantic(loc, format!("rows={rows} but {} degrees given", degs.len())));
                }
                if matrix.len() != *rows {
                    return Err(semantic(loc, format!("rows={rows} but the matrix has {} rows", matrix.len())));
                }
                let mut polys = Vec::new();
                for r in matrix {
                    polys.push(r.iter().map(|p| self.poly(p, loc)).collect::<Result<Vec<_>>>()?);
                }
                GradedModule::from_matrix(ring, degs.clone(), polys).map_err(|e| semantic(loc, e.to_string()))?
            }
        })
    }

    fn pair(&mut self, source: &PairSource, ambient: &str, loc: Loc) -> Result<SubmodulePair<F>> {
        let l = self.modules[ambient].clone();
        let one = self.ring.field().one();
        let rank = l.generators().rank();
        let by_monomials = |ideal: &MonomialIdeal| -> Vec<ModElem<F>> {
            let mut gens = Vec::new();
            for g in ideal.gens() {
                for j in 0..rank {
                    gens.push(vec![(j, g.clone(), one.clone())]);
                }
            }
            gens
        };
        let gens = match source {
            PairSource::Ideal(i) => by_monomials(&self.ideals[&i.name]),
            PairSource::Monomials(m) => {
                let i = self.monomials(m);
                by_monomials(&i)
            }
            PairSource::Gens(rows) => {
                let mut gens = Vec::new();
                for r in rows {
                    if r.len() != rank {
                        return Err(semantic(loc, format!("generator has {} coordinates but {ambient} has {rank} generators", r.len())));
                    }
                    if r.iter().all(is_zero_poly) {
                        self.warn(loc, "zero generator dropped".into());
                        continue;
                    }
                    let mut e = Vec::new();
                    for (j, p) in r.iter().enumerate() {
                        for (m, c) in self.poly(p, loc)? {
                            e.push((j, m, c));
                        }
                    }
                    gens.push(e);
                }
                gens
            }
        };
        SubmodulePair::new(l, gens).map_err(|e| semantic(loc, e.to_string()))
    }

    fn window(&self, task: &Task, opts: &ElabOptions, auto: Deg) -> Deg {
        task.window.or(opts.window).unwrap_or(auto)
    }

    fn task(&self, task: &Task, opts: &ElabOptions) -> Result<TaskKind> {
        let n_max = task.n.unwrap_or(opts.n_max);
        let arg = |i: usize| task.args[i].name.clone();
        let module = |i: usize| &self.modules[&task.args[i].name];
        let k = residue_field(&self.ring);
        Ok(match task.verb {
            TaskVerb::Betti | TaskVerb::Resolve => {
                let window = self.window(task, opts, auto_window(module(0), n_max));
                if task.verb == TaskVerb::Betti {
                    TaskKind::Betti { module: arg(0), n_max, window }
                } else {
                    TaskKind::Resolve { module: arg(0), n_max, window }
                }
            }
            TaskVerb::Bass => TaskKind::Bass { module: arg(0), n_max, window: self.window(task, opts, default_window(&k, Some(module(0)), n_max)) },
            TaskVerb::Depth => {
                let m = module(0);
                if crate::gmod::minimize(m).generators().rank() == 0 {
                    return Err(semantic(task.args[0].loc, format!("depth of the zero module {} is undefined", arg(0))));
                }
                TaskKind::Depth { module: arg(0), n_max, window: self.window(task, opts, default_window(&k, Some(m), n_max)) }
            }
            TaskVerb::Tor | TaskVerb::Ext => {
                let window = self.window(task, opts, default_window(module(0), Some(module(1)), n_max));
                let (left, right) = (arg(0), arg(1));
                if task.verb == TaskVerb::Tor {
                    TaskKind::Tor { left, right, n_max, window }
                } else {
                    TaskKind::Ext { left, right, n_max, window }
                }
            }
            TaskVerb::Invariant(kind) => {
                if kind.is_pair() && task.args.len() < 2 {
                    return Err(semantic(task.loc, format!("invariant {} needs two modules", kind.name())));
                }
                if !kind.is_pair() && task.args.len() > 1 {
                    return Err(semantic(task.args[1].loc, format!("invariant {} takes one module", kind.name())));
                }
                let right = task.args.get(1).map(|a| a.name.clone());
                let n = right.as_ref().map(|r| &self.modules[r]);
                let window = self.window(task, opts, default_window(module(0), n, n_max));
                TaskKind::Invariant { kind, left: arg(0), right, n_max, window }
            }
            TaskVerb::Burch => {
                let name = arg(0);
                if let Some(i) = self.ideals.get(&name) {
                    if i.is_unit() {
                        return Err(semantic(task.args[0].loc, format!("{name} is the unit ideal; the Burch test needs a proper ideal")));
                    }
                    TaskKind::BurchIdeal { ideal: name }
                } else {
                    let p = &self.pairs[&name];
                    TaskKind::BurchPair { pair: name, window: self.window(task, opts, crate::burch::default_burch_window(p, n_max)) }
                }
            }
        })
    }
}

/// Builds the plan over an explicit field context.
pub fn elaborate_with<F: Field>(doc: &SpecDocument, field: F, opts: &ElabOptions) -> Result<Plan<F>> {
    let nv = doc.vars.len();
    let rel_loc = doc.relations_loc.unwrap_or(doc.field_loc);
    let rels = MonomialIdeal::new(nv, doc.relations.iter().map(|(m, _)| m.clone()));
    if rels.is_unit() {
        return Err(semantic(rel_loc, "the relations generate the unit ideal"));
    }
    let ring = GradedRing::new(field, doc.vars.clone(), rels.gens().to_vec());
    let mut b = Builder { doc, ring, ideals: BTreeMap::new(), modules: BTreeMap::new(), pairs: BTreeMap::new(), warnings: Vec::new() };
    let mut canon = format!("field={}\nring={}\n", b.ring.field().name(), b.ring.describe());
    for d in &doc.decls {
        match &d.kind {
            DeclKind::Ideal(e) => {
                let i = b.ideal(e, d.loc)?;
                canon.push_str(&format!("ideal {}={}\n", d.name, i.display(&doc.vars)));
                b.ideals.insert(d.name.clone(), i);
            }
            DeclKind::Module(e) => {
                let m = b.module(e, d.loc)?;
                canon.push_str(&format!("module {}={}\n", d.name, m.canonical_text()));
                b.modules.insert(d.name.clone(), m);
            }
            DeclKind::Pair { source, ambient } => {
                let p = b.pair(source, &ambient.name, d.loc)?;
                canon.push_str(&format!("pair {}={} in {}\n", d.name, b.doc.render_decl(d), ambient.name));
                b.pairs.insert(d.name.clone(), p);
            }
        }
    }
    let mut tasks = Vec::new();
    for (index, t) in doc.tasks.iter().enumerate() {
        let kind = b.task(t, opts)?;
        canon.push_str(&format!("task {}\n", kind.describe()));
        tasks.push(PlannedTask { index, loc: t.loc, kind, source: t.render() });
    }
    canon.push_str(&format!("guard={}\n", opts.guard));
    let hash = hex::encode(Sha256::digest(canon.as_bytes()));
    Ok(Plan { ring: b.ring, ideals: b.ideals, modules: b.modules, pairs: b.pairs, tasks, warnings: b.warnings, options: *opts, hash })
}
