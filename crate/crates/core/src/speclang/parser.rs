use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::lexer::{tokenize, Tok, TokKind};
use super::*;

const KEYWORDS: &[&str] = &[
    "field", "vars", "relations", "ideal", "module", "pairsub", "task", "mpow", "product", "maxideal", "k", "in", "gens", "n", "window", "pair",
];

const STATEMENTS: &[&str] = &["field", "vars", "relations", "ideal", "module", "pairsub", "task"];
const TASKS: &[&str] = &["betti", "bass", "resolve", "tor", "ext", "invariant", "burch", "depth"];

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Kind {
    Ideal,
    Module,
    Pair,
}

impl Kind {
    fn noun(self) -> &'static str {
        match self {
            Kind::Ideal => "an ideal",
            Kind::Module => "a module",
            Kind::Pair => "a submodule pair",
        }
    }
}

fn error(tok: &Tok, message: impl Into<String>) -> ParseError {
    ParseError { line: tok.line, column: tok.column, message: message.into(), token: tok.text() }
}

fn loc(tok: &Tok) -> Loc {
    Loc { line: tok.line, column: tok.column }
}

/// Closest candidate by edit distance, for error hints.
fn suggest(word: &str, candidates: &[&str]) -> String {
    fn dist(a: &str, b: &str) -> usize {
        let (a, b): (Vec<char>, Vec<char>) = (a.chars().collect(), b.chars().collect());
        let mut prev: Vec<usize> = (0..=b.len()).collect();
        for i in 1..=a.len() {
            let mut cur = vec![i; b.len() + 1];
            for j in 1..=b.len() {
                cur[j] = (prev[j] + 1).min(cur[j - 1] + 1).min(prev[j - 1] + usize::from(a[i - 1] != b[j - 1]));
            }
            prev = cur;
        }
        prev[b.len()]
    }
    match candidates.iter().min_by_key(|c| dist(word, c)) {
        Some(c) if dist(word, c) <= 2 => format!(" (did you mean `{c}`?)"),
        _ => String::new(),
    }
}

struct Line<'a> {
    toks: &'a [Tok],
    pos: usize,
}

impl<'a> Line<'a> {
    fn peek(&self) -> Option<&'a Tok> {
        self.toks.get(self.pos)
    }

    fn last(&self) -> &'a Tok {
        &self.toks[self.pos.min(self.toks.len()) - 1]
    }

    fn eol(&self, what: &str) -> ParseError {
        let t = self.last();
        ParseError { line: t.line, column: t.column, message: format!("expected {what} after `{}`", t.text()), token: String::new() }
    }

    fn next(&mut self, what: &str) -> Result<&'a Tok, ParseError> {
        let t = self.toks.get(self.pos).ok_or_else(|| self.eol(what))?;
        self.pos += 1;
        Ok(t)
    }

    fn at_punct(&self, c: char) -> bool {
        matches!(self.peek(), Some(Tok { kind: TokKind::Punct(p), .. }) if *p == c)
    }

    fn at_ident(&self, s: &str) -> bool {
        matches!(self.peek(), Some(Tok { kind: TokKind::Ident(i), .. }) if i == s)
    }

    fn punct(&mut self, c: char) -> Result<&'a Tok, ParseError> {
        let t = self.next(&format!("`{c}`"))?;
        match &t.kind {
            TokKind::Punct(p) if *p == c => Ok(t),
            _ => Err(error(t, format!("expected `{c}`, found `{}`", t.text()))),
        }
    }

    fn ident(&mut self, what: &str) -> Result<(&'a Tok, String), ParseError> {
        let t = self.next(what)?;
        match &t.kind {
            TokKind::Ident(s) => Ok((t, s.clone())),
            _ => Err(error(t, format!("expected {what}, found `{}`", t.text()))),
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<&'a Tok, ParseError> {
        let (t, s) = self.ident(&format!("`{kw}`"))?;
        if s != kw {
            return Err(error(t, format!("expected `{kw}`, found `{s}`")));
        }
        Ok(t)
    }

    fn uint<T: std::str::FromStr>(&mut self, what: &str) -> Result<(&'a Tok, T), ParseError> {
        let t = self.next(what)?;
        match &t.kind {
            TokKind::Int(s) => s.parse::<T>().map(|v| (t, v)).map_err(|_| error(t, format!("{what} `{s}` is out of range"))),
            _ => Err(error(t, format!("expected {what}, found `{}`", t.text()))),
        }
    }

    fn int(&mut self, what: &str) -> Result<i32, ParseError> {
        let neg = self.at_punct('-');
        if neg {
            self.pos += 1;
        }
        let (_, v) = self.uint::<i32>(what)?;
        Ok(if neg { -v } else { v })
    }

    fn finish(&self) -> Result<(), ParseError> {
        match self.peek() {
            Some(t) => Err(error(t, format!("unexpected `{}` at end of statement", t.text()))),
            None => Ok(()),
        }
    }
}

struct Parser {
    vars: Vec<String>,
    names: HashMap<String, Kind>,
}

impl Parser {
    fn monomial(&self, line: &mut Line) -> Result<(Monomial, Loc), ParseError> {
        let mut exps = vec![0u16; self.vars.len()];
        let start = line.peek().map(loc);
        loop {
            let t = line.next("a monomial")?;
            match &t.kind {
                TokKind::Int(s) if s == "1" => {}
                TokKind::Ident(v) => {
                    let Some(i) = self.vars.iter().position(|x| x == v) else {
                        return Err(error(t, format!("unknown variable `{v}`{}", suggest(v, &self.vars.iter().map(String::as_str).collect::<Vec<_>>()))));
                    };
                    let e = if line.at_punct('^') {
                        line.pos += 1;
                        line.uint::<u16>("an exponent")?.1
                    } else {
                        1
                    };
                    exps[i] = exps[i].checked_add(e).ok_or_else(|| error(t, "exponent overflow"))?;
                }
                _ => return Err(error(t, format!("expected a monomial, found `{}`", t.text()))),
            }
            if !line.at_punct('*') {
                break;
            }
            line.pos += 1;
        }
        Ok((Monomial::from_exponents(&exps), start.unwrap_or_default()))
    }

    fn monomial_list(&self, line: &mut Line) -> Result<Vec<(Monomial, Loc)>, ParseError> {
        let mut out = vec![self.monomial(line)?];
        while line.at_punct(',') {
            line.pos += 1;
            out.push(self.monomial(line)?);
        }
        Ok(out)
    }

    fn coefficient(&self, line: &mut Line) -> Result<BigRational, ParseError> {
        let (t, num) = line.uint::<BigInt>("a coefficient")?;
        if !line.at_punct('/') {
            return Ok(BigRational::from_integer(num));
        }
        line.pos += 1;
        let (_, den) = line.uint::<BigInt>("a denominator")?;
        if den.is_zero() {
            return Err(error(t, "zero denominator"));
        }
        Ok(BigRational::new(num, den))
    }

    fn term(&self, line: &mut Line, sign: bool) -> Result<(BigRational, Monomial), ParseError> {
        let one = Monomial::one(self.vars.len());
        let mut c = BigRational::one();
        let mut m = one;
        if matches!(line.peek(), Some(Tok { kind: TokKind::Int(_), .. })) {
            c = self.coefficient(line)?;
            let explicit = line.at_punct('*');
            if explicit {
                line.pos += 1;
            }
            if explicit || matches!(line.peek(), Some(Tok { kind: TokKind::Ident(_), .. })) {
                m = self.monomial(line)?.0;
            }
        } else {
            m = self.monomial(line)?.0;
        }
        Ok((if sign { -c } else { c }, m))
    }

    fn poly(&self, line: &mut Line) -> Result<PolyExpr, ParseError> {
        let mut neg = false;
        if line.at_punct('-') {
            line.pos += 1;
            neg = true;
        }
        let mut out = vec![self.term(line, neg)?];
        loop {
            let neg = if line.at_punct('+') {
                false
            } else if line.at_punct('-') {
                true
            } else {
                break;
            };
            line.pos += 1;
            out.push(self.term(line, neg)?);
        }
        Ok(out)
    }

    fn matrix(&self, line: &mut Line) -> Result<Vec<Vec<PolyExpr>>, ParseError> {
        line.punct('[')?;
        let mut rows = Vec::new();
        loop {
            line.punct('[')?;
            let mut row = vec![self.poly(line)?];
            while line.at_punct(',') {
                line.pos += 1;
                row.push(self.poly(line)?);
            }
            line.punct(']')?;
            rows.push(row);
            if !line.at_punct(',') {
                break;
            }
            line.pos += 1;
        }
        line.punct(']')?;
        Ok(rows)
    }

    fn int_list(&self, line: &mut Line) -> Result<Vec<i32>, ParseError> {
        line.punct('[')?;
        let mut out = Vec::new();
        if line.at_punct(']') {
            line.pos += 1;
            return Ok(out);
        }
        loop {
            out.push(line.int("an integer")?);
            if !line.at_punct(',') {
                break;
            }
            line.pos += 1;
        }
        line.punct(']')?;
        Ok(out)
    }

    fn reference(&self, line: &mut Line, allowed: &[Kind]) -> Result<Name, ParseError> {
        let (t, s) = line.ident("a name")?;
        match self.names.get(&s) {
            None => {
                let known: Vec<&str> = self.names.keys().map(String::as_str).collect();
                Err(error(t, format!("unknown name `{s}`{}", suggest(&s, &known))))
            }
            Some(k) if !allowed.contains(k) => {
                let want: Vec<&str> = allowed.iter().map(|k| k.noun()).collect();
                Err(error(t, format!("`{s}` is {}, expected {}", k.noun(), want.join(" or "))))
            }
            Some(_) => Ok(Name { name: s, loc: loc(t) }),
        }
    }

    fn declare(&mut self, line: &mut Line, kind: Kind) -> Result<(String, Loc), ParseError> {
        let (t, name) = line.ident("a name")?;
        if KEYWORDS.contains(&name.as_str()) || TASKS.contains(&name.as_str()) {
            return Err(error(t, format!("`{name}` is a reserved word")));
        }
        if self.vars.contains(&name) {
            return Err(error(t, format!("`{name}` is already a variable")));
        }
        if self.names.contains_key(&name) {
            return Err(error(t, format!("duplicate name `{name}`")));
        }
        line.punct('=')?;
        self.names.insert(name.clone(), kind);
        Ok((name, loc(t)))
    }

    fn ideal(&mut self, line: &mut Line) -> Result<Decl, ParseError> {
        let (name, l) = self.declare(line, Kind::Ideal)?;
        let expr = if line.at_ident("mpow") {
            line.pos += 1;
            IdealExpr::MPow(line.uint::<u32>("a power")?.1)
        } else if line.at_ident("product") {
            line.pos += 1;
            let a = self.reference(line, &[Kind::Ideal])?;
            line.keyword("maxideal")?;
            IdealExpr::Product(a)
        } else {
            IdealExpr::Gens(self.monomial_list(line)?)
        };
        Ok(Decl { name, loc: l, kind: DeclKind::Ideal(expr) })
    }

    fn module(&mut self, line: &mut Line) -> Result<Decl, ParseError> {
        let (name, l) = self.declare(line, Kind::Module)?;
        let (t, kw) = line.ident("a module expression")?;
        let expr = match kw.as_str() {
            "ideal" => ModuleExpr::Ideal(self.reference(line, &[Kind::Ideal])?),
            "k" => ModuleExpr::Residue,
            "free" => ModuleExpr::Free(self.int_list(line)?),
            "sum" => {
                let a = self.reference(line, &[Kind::Module])?;
                let b = self.reference(line, &[Kind::Module])?;
                ModuleExpr::Sum(a, b)
            }
            "coker" => {
                line.keyword("rows")?;
                line.punct('=')?;
                let rows = line.uint::<usize>("a row count")?.1;
                line.keyword("degs")?;
                line.punct('=')?;
                let degs = self.int_list(line)?;
                line.keyword("matrix")?;
                line.punct('=')?;
                let matrix = self.matrix(line)?;
                ModuleExpr::Coker { rows, degs, matrix }
            }
            _ => {
                let opts = ["ideal", "k", "free", "sum", "coker"];
                self.names.remove(&name);
                return Err(error(t, format!("unknown module expression `{kw}`{}", suggest(&kw, &opts))));
            }
        };
        Ok(Decl { name, loc: l, kind: DeclKind::Module(expr) })
    }

    fn pairsub(&mut self, line: &mut Line) -> Result<Decl, ParseError> {
        let (name, l) = self.declare(line, Kind::Pair)?;
        let source = if line.at_ident("gens") {
            line.pos += 1;
            PairSource::Gens(self.matrix(line)?)
        } else if matches!(line.peek(), Some(Tok { kind: TokKind::Ident(s), .. }) if self.names.contains_key(s)) {
            PairSource::Ideal(self.reference(line, &[Kind::Ideal])?)
        } else {
            PairSource::Monomials(self.monomial_list(line)?)
        };
        line.keyword("in")?;
        let ambient = self.reference(line, &[Kind::Module])?;
        Ok(Decl { name, loc: l, kind: DeclKind::Pair { source, ambient } })
    }

    fn task(&self, line: &mut Line, start: &Tok) -> Result<Task, ParseError> {
        if line.at_ident("pair") {
            line.pos += 1;
        }
        let (t, verb) = line.ident("a task name")?;
        let verb = match verb.as_str() {
            "betti" => TaskVerb::Betti,
            "bass" => TaskVerb::Bass,
            "resolve" => TaskVerb::Resolve,
            "tor" => TaskVerb::Tor,
            "ext" => TaskVerb::Ext,
            "burch" => TaskVerb::Burch,
            "depth" => TaskVerb::Depth,
            "invariant" => {
                let (kt, k) = line.ident("an invariant kind")?;
                let kind = k.parse::<InvariantKind>().map_err(|_| {
                    let names: Vec<&str> = InvariantKind::ALL.iter().map(|k| k.name()).collect();
                    error(kt, format!("unknown invariant kind `{k}`{}", suggest(&k, &names)))
                })?;
                TaskVerb::Invariant(kind)
            }
            other => return Err(error(t, format!("unknown task `{other}`{}", suggest(other, TASKS)))),
        };
        let mut args = Vec::new();
        match verb {
            TaskVerb::Betti | TaskVerb::Bass | TaskVerb::Resolve | TaskVerb::Depth => args.push(self.reference(line, &[Kind::Module])?),
            TaskVerb::Tor | TaskVerb::Ext => {
                args.push(self.reference(line, &[Kind::Module])?);
                args.push(self.reference(line, &[Kind::Module])?);
            }
            TaskVerb::Invariant(_) => {
                args.push(self.reference(line, &[Kind::Module])?);
                if matches!(line.peek(), Some(Tok { kind: TokKind::Ident(s), .. }) if s != "n" && s != "window") {
                    args.push(self.reference(line, &[Kind::Module])?);
                }
            }
            TaskVerb::Burch => args.push(self.reference(line, &[Kind::Ideal, Kind::Pair])?),
        }
        let mut n = None;
        let mut window = None;
        while line.peek().is_some() {
            let (ot, opt) = line.ident("an option")?;
            line.punct('=')?;
            match opt.as_str() {
                "n" if n.is_none() => n = Some(line.uint::<usize>("an integer")?.1),
                "window" if window.is_none() => window = Some(line.int("an integer")?),
                "n" | "window" => return Err(error(ot, format!("option `{opt}` given twice"))),
                _ => return Err(error(ot, format!("unknown option `{opt}`{}", suggest(&opt, &["n", "window"])))),
            }
        }
        Ok(Task { loc: loc(start), verb, args, n, window })
    }
}

/// Parses a whole document; the first error is reported with its location.
pub fn parse(src: &str) -> Result<SpecDocument, ParseError> {
    let lines = tokenize(src)?;
    let Some(first) = lines.first() else {
        let (line, column) = first_visible(src);
        return Err(ParseError { line, column, message: "empty document: expected `field`".into(), token: String::new() });
    };
    let mut p = Parser { vars: Vec::new(), names: HashMap::new() };
    let mut field = None;
    let mut have_vars = false;
    let mut relations = Vec::new();
    let mut relations_loc = None;
    let mut decls = Vec::new();
    let mut tasks = Vec::new();
    for toks in &lines {
        let mut line = Line { toks, pos: 0 };
        let (kt, kw) = line.ident("a statement")?;
        match kw.as_str() {
            "field" => {
                if field.is_some() {
                    return Err(error(kt, "field declared twice"));
                }
                let (t, name) = line.ident("`Q` or `F <prime>`")?;
                let spec = match name.as_str() {
                    "Q" => FieldSpec::Rationals,
                    "F" => FieldSpec::Prime(line.uint::<u32>("a prime")?.1),
                    _ => return Err(error(t, format!("unknown field `{name}`: expected `Q` or `F <prime>`"))),
                };
                field = Some((spec, loc(kt)));
            }
            _ if field.is_none() => return Err(error(&first[0], "the document must start with a `field` declaration")),
            "vars" => {
                if have_vars {
                    return Err(error(kt, "vars declared twice"));
                }
                while line.peek().is_some() {
                    let (t, v) = line.ident("a variable name")?;
                    if KEYWORDS.contains(&v.as_str()) {
                        return Err(error(t, format!("`{v}` is a reserved word")));
                    }
                    if p.vars.contains(&v) {
                        return Err(error(t, format!("duplicate variable `{v}`")));
                    }
                    p.vars.push(v);
                }
                if p.vars.is_empty() {
                    return Err(line.eol("at least one variable"));
                }
                have_vars = true;
            }
            _ if !have_vars => return Err(error(kt, format!("`{kw}` needs a preceding `vars` declaration"))),
            "relations" => {
                if relations_loc.is_some() {
                    return Err(error(kt, "relations declared twice"));
                }
                if !decls.is_empty() || !tasks.is_empty() {
                    return Err(error(kt, "relations must come before ideals, modules and tasks"));
                }
                relations = p.monomial_list(&mut line)?;
                relations_loc = Some(loc(kt));
            }
            "ideal" => decls.push(p.ideal(&mut line)?),
            "module" => decls.push(p.module(&mut line)?),
            "pairsub" => decls.push(p.pairsub(&mut line)?),
            "task" => tasks.push(p.task(&mut line, kt)?),
            other => return Err(error(kt, format!("unknown statement `{other}`{}", suggest(other, STATEMENTS)))),
        }
        line.finish()?;
    }
    let (field, field_loc) = field.expect("checked on the first line");
    if !have_vars {
        let t = &lines.last().expect("nonempty")[0];
        return Err(error(t, "missing `vars` declaration"));
    }
    Ok(SpecDocument { field, field_loc, vars: p.vars, relations, relations_loc, decls, tasks })
}

/// Location of the first non-blank character, `1:1` when there is none.
fn first_visible(src: &str) -> (usize, usize) {
    for (i, l) in src.split('\n').enumerate() {
        if let Some(c) = l.chars().position(|c| !c.is_whitespace()) {
            return (i + 1, c + 1);
        }
    }
    (1, 1)
}
