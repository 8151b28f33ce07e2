//! The line-oriented input language: parsing, pretty-printing and
//! elaboration into a computation plan.
//!
//! ```text
//! field F 101
//! vars x y
//! relations x^2, x*y, y^2
//! ideal m = mpow 1
//! module M = ideal m
//! task tor M M n=6
//! ```

mod elaborate;
mod lexer;
mod parser;

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::asymptote::InvariantKind;
use crate::field::FieldSpec;
use crate::monoring::Monomial;

pub use elaborate::{elaborate, elaborate_with, AnyPlan, ElabOptions, Plan, PlannedTask, TaskKind, Warning};
pub use parser::parse;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
    pub token: String,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct Loc {
    pub line: usize,
    pub column: usize,
}

/// A reference to a declared object.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Name {
    pub name: String,
    pub loc: Loc,
}

/// Terms `c * x^a`; a constant term carries the monomial `1`.
pub type PolyExpr = Vec<(BigRational, Monomial)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IdealExpr {
    Gens(Vec<(Monomial, Loc)>),
    MPow(u32),
    Product(Name),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModuleExpr {
    Ideal(Name),
    Residue,
    Free(Vec<i32>),
    Sum(Name, Name),
    Coker { rows: usize, degs: Vec<i32>, matrix: Vec<Vec<PolyExpr>> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PairSource {
    Ideal(Name),
    Monomials(Vec<(Monomial, Loc)>),
    /// Elements of the ambient module as coordinate vectors.
    Gens(Vec<Vec<PolyExpr>>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DeclKind {
    Ideal(IdealExpr),
    Module(ModuleExpr),
    Pair { source: PairSource, ambient: Name },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decl {
    pub name: String,
    pub loc: Loc,
    pub kind: DeclKind,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TaskVerb {
    Betti,
    Bass,
    Resolve,
    Tor,
    Ext,
    Invariant(InvariantKind),
    Burch,
    Depth,
}

impl TaskVerb {
    pub fn keyword(self) -> &'static str {
        match self {
            TaskVerb::Betti => "betti",
            TaskVerb::Bass => "bass",
            TaskVerb::Resolve => "resolve",
            TaskVerb::Tor => "tor",
            TaskVerb::Ext => "ext",
            TaskVerb::Invariant(_) => "invariant",
            TaskVerb::Burch => "burch",
            TaskVerb::Depth => "depth",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Task {
    pub loc: Loc,
    pub verb: TaskVerb,
    pub args: Vec<Name>,
    pub n: Option<usize>,
    pub window: Option<i32>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecDocument {
    pub field: FieldSpec,
    pub field_loc: Loc,
    pub vars: Vec<String>,
    pub relations: Vec<(Monomial, Loc)>,
    pub relations_loc: Option<Loc>,
    pub decls: Vec<Decl>,
    pub tasks: Vec<Task>,
}

pub(crate) fn fmt_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

struct Mono<'a>(&'a Monomial, &'a [String]);

impl fmt::Display for Mono<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.display(self.1))
    }
}

fn fmt_poly(p: &PolyExpr, vars: &[String]) -> String {
    let mut s = String::new();
    for (i, (c, m)) in p.iter().enumerate() {
        let neg = c.is_negative();
        let a = c.abs();
        if i == 0 {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        if m.is_one() {
            s.push_str(&fmt_rational(&a));
        } else if a.is_one() {
            s.push_str(&Mono(m, vars).to_string());
        } else {
            s.push_str(&format!("{}*{}", fmt_rational(&a), Mono(m, vars)));
        }
    }
    if p.is_empty() {
        s.push('0');
    }
    s
}

fn fmt_monos(ms: &[(Monomial, Loc)], vars: &[String]) -> String {
    ms.iter().map(|(m, _)| Mono(m, vars).to_string()).collect::<Vec<_>>().join(", ")
}

fn fmt_ints(v: &[i32]) -> String {
    format!("[{}]", v.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(", "))
}

fn fmt_matrix(rows: &[Vec<PolyExpr>], vars: &[String]) -> String {
    let rows: Vec<String> = rows.iter().map(|r| format!("[{}]", r.iter().map(|p| fmt_poly(p, vars)).collect::<Vec<_>>().join(", "))).collect();
    format!("[{}]", rows.join(", "))
}

impl Task {
    pub fn render(&self) -> String {
        let mut s = String::from("task ");
        s.push_str(self.verb.keyword());
        if let TaskVerb::Invariant(k) = self.verb {
            s.push(' ');
            s.push_str(k.name());
        }
        for a in &self.args {
            s.push(' ');
            s.push_str(&a.name);
        }
        if let Some(n) = self.n {
            s.push_str(&format!(" n={n}"));
        }
        if let Some(w) = self.window {
            s.push_str(&format!(" window={w}"));
        }
        s
    }
}

impl SpecDocument {
    pub fn render_decl(&self, d: &Decl) -> String {
        let v = &self.vars;
        match &d.kind {
            DeclKind::Ideal(IdealExpr::Gens(g)) => format!("ideal {} = {}", d.name, fmt_monos(g, v)),
            DeclKind::Ideal(IdealExpr::MPow(n)) => format!("ideal {} = mpow {n}", d.name),
            DeclKind::Ideal(IdealExpr::Product(a)) => format!("ideal {} = product {} maxideal", d.name, a.name),
            DeclKind::Module(ModuleExpr::Ideal(i)) => format!("module {} = ideal {}", d.name, i.name),
            DeclKind::Module(ModuleExpr::Residue) => format!("module {} = k", d.name),
            DeclKind::Module(ModuleExpr::Free(t)) => format!("module {} = free {}", d.name, fmt_ints(t)),
            DeclKind::Module(ModuleExpr::Sum(a, b)) => format!("module {} = sum {} {}", d.name, a.name, b.name),
            DeclKind::Module(ModuleExpr::Coker { rows, degs, matrix }) => {
                format!("module {} = coker rows={rows} degs={} matrix={}", d.name, fmt_ints(degs), fmt_matrix(matrix, v))
            }
            DeclKind::Pair { source, ambient } => {
                let src = match source {
                    PairSource::Ideal(i) => i.name.clone(),
                    PairSource::Monomials(g) => fmt_monos(g, v),
                    PairSource::Gens(g) => format!("gens {}", fmt_matrix(g, v)),
                };
                format!("pairsub {} = {src} in {}", d.name, ambient.name)
            }
        }
    }
}

/// Normalized rendering; parsing it back yields the same document.
impl fmt::Display for SpecDocument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.field {
            FieldSpec::Rationals => writeln!(f, "field Q")?,
            FieldSpec::Prime(p) => writeln!(f, "field F {p}")?,
        }
        writeln!(f, "vars {}", self.vars.join(" "))?;
        if self.relations_loc.is_some() {
            writeln!(f, "relations {}", fmt_monos(&self.relations, &self.vars))?;
        }
        for d in &self.decls {
            writeln!(f, "{}", self.render_decl(d))?;
        }
        for t in &self.tasks {
            writeln!(f, "{}", t.render())?;
        }
        Ok(())
    }
}

pub(crate) fn is_zero_poly(p: &PolyExpr) -> bool {
    p.iter().all(|(c, _)| c.is_zero())
}

#[cfg(test)]
mod tests;
