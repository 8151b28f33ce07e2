//! Complexity and curvature of nonnegative integer sequences, detected from an
//! exact linear recurrence, and the eight module and pair invariants built on
//! them.

mod poly;

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::gmod::{Deg, GradedModule, Status};
use crate::pairhom::{pair_invariant_data, HomKind};
use crate::resolve::{auto_window, bass_numbers, betti_numbers, cached_resolution, ResolveOptions};

use poly::Poly;

pub const DEFAULT_MAX_ORDER: usize = 5;
pub const DEFAULT_GUARD: usize = 3;
/// Shortest prefix any analysis accepts.
pub const MIN_PREFIX: usize = 6;

const UNIT_TOL: f64 = 1e-9;
const CURVATURE_TOL: f64 = 1e-7;

fn rat(n: u64) -> BigRational {
    BigRational::from_integer(n.into())
}

fn rat_str(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// `a_n = Σ_{i=1}^{order} c_i a_{n-i}` for all `n >= order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Recurrence {
    pub coeffs: Vec<BigRational>,
    /// Terms used to determine the coefficients (`2 * order`).
    pub fit: usize,
    /// Remaining terms the recurrence was checked against.
    pub guard: usize,
}

impl Recurrence {
    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    /// `1 - c_1 t - ... - c_L t^L`, the denominator of the generating function.
    pub fn connection(&self) -> Vec<BigRational> {
        let mut p = vec![BigRational::one()];
        p.extend(self.coeffs.iter().map(|c| -c));
        poly::trim(p)
    }

    pub fn reproduces(&self, prefix: &[u64]) -> bool {
        let l = self.order();
        (l..prefix.len()).all(|n| {
            let s: BigRational = self.coeffs.iter().enumerate().map(|(i, c)| c * rat(prefix[n - 1 - i])).sum();
            s == rat(prefix[n])
        })
    }

    pub fn is_eventually_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
}

impl fmt::Display for Recurrence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_eventually_zero() {
            return write!(f, "a(n) = 0 for n >= {}", self.order());
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("{}*a(n-{})", rat_str(c), i + 1))
            .collect();
        write!(f, "a(n) = {}", terms.join(" + "))
    }
}

impl Serialize for Recurrence {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Recurrence", 4)?;
        st.serialize_field("order", &self.order())?;
        st.serialize_field("coeffs", &self.coeffs.iter().map(rat_str).collect::<Vec<_>>())?;
        st.serialize_field("fit", &self.fit)?;
        st.serialize_field("guard", &self.guard)?;
        st.end()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Curvature {
    Exact(BigRational),
    /// An irrational algebraic value with `|true - value| <= error`.
    Numeric { value: f64, error: f64 },
    /// `a_n^{1/n}` at the last index, or an uncertified root modulus.
    Estimate(f64),
}

impl Curvature {
    pub fn approx(&self) -> f64 {
        match self {
            Curvature::Exact(r) => r.to_f64().unwrap_or(f64::NAN),
            Curvature::Numeric { value, .. } => *value,
            Curvature::Estimate(v) => *v,
        }
    }

    fn error(&self) -> f64 {
        match self {
            Curvature::Exact(_) => 0.0,
            Curvature::Numeric { error, .. } => *error,
            Curvature::Estimate(_) => 1e-6,
        }
    }

    pub fn is_exact_integer(&self, n: u64) -> bool {
        matches!(self, Curvature::Exact(r) if *r == rat(n))
    }

    /// Comparison up to the stated error bounds; `None` when the intervals overlap
    /// without both values being exact.
    pub fn compare(&self, other: &Curvature) -> Option<Ordering> {
        if let (Curvature::Exact(a), Curvature::Exact(b)) = (self, other) {
            return Some(a.cmp(b));
        }
        let (a, b) = (self.approx(), other.approx());
        let slack = self.error() + other.error() + 1e-12;
        if (a - b).abs() <= slack {
            Some(Ordering::Equal)
        } else {
            a.partial_cmp(&b)
        }
    }

    pub fn label(&self) -> String {
        match self {
            Curvature::Exact(r) => rat_str(r),
            Curvature::Numeric { value, error } => format!("{value:.9} (+/- {error:.1e})"),
            Curvature::Estimate(v) => format!("~{v:.6}"),
        }
    }
}

impl Serialize for Curvature {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Curvature", 3)?;
        match self {
            Curvature::Exact(r) => {
                st.serialize_field("kind", "EXACT")?;
                st.serialize_field("value", &rat_str(r))?;
                st.serialize_field("approx", &self.approx())?;
            }
            Curvature::Numeric { value, error } => {
                st.serialize_field("kind", "NUMERIC")?;
                st.serialize_field("value", value)?;
                st.serialize_field("error", error)?;
            }
            Curvature::Estimate(v) => {
                st.serialize_field("kind", "ESTIMATE")?;
                st.serialize_field("value", v)?;
            }
        }
        st.end()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Complexity {
    Finite(u32),
    Infinite,
    Unknown,
}

impl Complexity {
    /// `Finite(a) < Finite(b) < Infinite`; `Unknown` compares with nothing.
    pub fn compare(self, other: Complexity) -> Option<Ordering> {
        match (self, other) {
            (Complexity::Unknown, _) | (_, Complexity::Unknown) => None,
            (Complexity::Finite(a), Complexity::Finite(b)) => Some(a.cmp(&b)),
            (Complexity::Finite(_), Complexity::Infinite) => Some(Ordering::Less),
            (Complexity::Infinite, Complexity::Finite(_)) => Some(Ordering::Greater),
            (Complexity::Infinite, Complexity::Infinite) => Some(Ordering::Equal),
        }
    }

    pub fn label(self) -> String {
        match self {
            Complexity::Finite(b) => b.to_string(),
            Complexity::Infinite => "inf".into(),
            Complexity::Unknown => "unknown".into(),
        }
    }
}

impl Serialize for Complexity {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.label())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING-KEBAB-CASE")]
pub enum AnalysisStatus {
    CertifiedOnPrefix,
    Heuristic,
    InsufficientData,
}

impl AnalysisStatus {
    pub fn label(self) -> &'static str {
        match self {
            AnalysisStatus::CertifiedOnPrefix => "CERTIFIED-ON-PREFIX",
            AnalysisStatus::Heuristic => "HEURISTIC",
            AnalysisStatus::InsufficientData => "INSUFFICIENT-DATA",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SequenceAnalysis {
    pub prefix: Vec<u64>,
    pub recurrence: Option<Recurrence>,
    pub curvature: Curvature,
    pub complexity: Complexity,
    pub status: AnalysisStatus,
    /// Smallest modulus of a root of the connection polynomial, when one exists.
    pub dominant_modulus: Option<f64>,
}

impl SequenceAnalysis {
    pub fn is_certified(&self) -> bool {
        self.status == AnalysisStatus::CertifiedOnPrefix
    }

    pub fn is_eventually_zero(&self) -> bool {
        self.recurrence.as_ref().is_some_and(|r| r.is_eventually_zero())
    }

    /// Finite complexity forces curvature at most 1, and curvature 0, complexity
    /// 0 and an eventually zero sequence go together.
    pub fn remark_consistent(&self) -> bool {
        if !self.is_certified() {
            return true;
        }
        let zero_curv = self.curvature.is_exact_integer(0);
        let zero_cx = self.complexity == Complexity::Finite(0);
        let bounded = match self.complexity {
            Complexity::Finite(_) => self.curvature.compare(&Curvature::Exact(BigRational::one())) != Some(Ordering::Greater),
            _ => true,
        };
        bounded && zero_curv == zero_cx && zero_cx == self.is_eventually_zero()
    }
}

/// Berlekamp-Massey over the rationals: the shortest `L` and connection
/// polynomial `C` with `Σ_{i=0}^{L} C_i a_{n-i} = 0` for `L <= n < len`.
fn berlekamp_massey(seq: &[u64]) -> (usize, Poly) {
    let s: Vec<BigRational> = seq.iter().map(|&v| rat(v)).collect();
    let mut c = vec![BigRational::one()];
    let mut b = vec![BigRational::one()];
    let mut l = 0usize;
    let mut m = 1usize;
    let mut bd = BigRational::one();
    for n in 0..s.len() {
        let mut d = s[n].clone();
        for i in 1..=l.min(c.len() - 1) {
            d += &c[i] * &s[n - i];
        }
        if d.is_zero() {
            m += 1;
            continue;
        }
        let coef = &d / &bd;
        let prev = c.clone();
        if c.len() < b.len() + m {
            c.resize(b.len() + m, BigRational::zero());
        }
        for (i, bi) in b.iter().enumerate() {
            c[i + m] = &c[i + m] - &coef * bi;
        }
        if 2 * l <= n {
            l = n + 1 - l;
            b = prev;
            bd = d;
            m = 1;
        } else {
            m += 1;
        }
    }
    (l, c)
}

/// Largest recurrence order that still leaves `guard` unused terms after the
/// `2 * order` fitting terms.
pub fn order_cap(len: usize, max_order: usize, guard: usize) -> usize {
    max_order.min(len.saturating_sub(guard) / 2)
}

/// Minimal-order recurrence with order at most [`order_cap`] that reproduces
/// every term of `prefix`.
pub fn fit_recurrence(prefix: &[u64], max_order: usize, guard: usize) -> Result<Option<Recurrence>> {
    let required = MIN_PREFIX.max(guard + 2);
    if prefix.len() < required {
        return Err(Error::InsufficientData { len: prefix.len(), required });
    }
    let (l, c) = berlekamp_massey(prefix);
    if l > order_cap(prefix.len(), max_order, guard) {
        return Ok(None);
    }
    let coeffs = (1..=l).map(|i| c.get(i).map_or_else(BigRational::zero, |v| -v)).collect();
    let rec = Recurrence { coeffs, fit: 2 * l, guard: prefix.len() - 2 * l };
    debug_assert!(rec.reproduces(prefix));
    Ok(Some(rec))
}

struct Root {
    z: Complex64,
    mult: u32,
}

/// Dominant part of the connection polynomial.
enum Dominant {
    /// No roots: the sequence is eventually zero.
    None,
    /// A positive real root of minimal modulus, exact or bracketed.
    Real { exact: Option<BigRational>, bracket: (BigRational, BigRational), roots: Vec<Root> },
    /// Minimal modulus attained only off the positive real axis.
    Complex { modulus: f64, roots: Vec<Root> },
}

fn dominant(conn: &[BigRational]) -> Dominant {
    if poly::degree(conn) == 0 {
        return Dominant::None;
    }
    let mut roots = Vec::new();
    let mut best: Option<(f64, usize)> = None;
    let factors = poly::squarefree(conn);
    for (fi, (g, mult)) in factors.iter().enumerate() {
        for z in poly::complex_roots(g) {
            let r = z.norm();
            if best.is_none_or(|(b, _)| r < b) {
                best = Some((r, fi));
            }
            roots.push((Root { z, mult: *mult }, fi));
        }
    }
    let (rho, _) = best.expect("nonconstant polynomial has roots");
    let positive = roots
        .iter()
        .filter(|(r, _)| r.z.norm() <= rho * (1.0 + UNIT_TOL) && r.z.re > 0.0 && r.z.im.abs() <= UNIT_TOL * r.z.norm().max(1.0))
        .map(|(r, fi)| (r.z.re, *fi))
        .next();
    let roots_only: Vec<Root> = roots.into_iter().map(|(r, _)| r).collect();
    let Some((x, fi)) = positive else {
        return Dominant::Complex { modulus: rho, roots: roots_only };
    };
    let g = &factors[fi].0;
    let Some((lo, hi)) = poly::bracket(g, x) else {
        return Dominant::Complex { modulus: rho, roots: roots_only };
    };
    let (lo, hi) = poly::bisect(g, lo, hi, |a, b| (b - a).to_f64().unwrap_or(1.0) < 1e-12 * x.max(1.0));
    if lo == hi {
        return Dominant::Real { exact: Some(lo.clone()), bracket: (lo, hi), roots: roots_only };
    }
    let exact = poly::rational_root_in(g, &lo, &hi);
    let tol = CURVATURE_TOL;
    let bracket = match &exact {
        Some(r) => (r.clone(), r.clone()),
        None => poly::bisect(g, lo, hi, |a, b| {
            let (a, b) = (a.to_f64().unwrap_or(0.0), b.to_f64().unwrap_or(0.0));
            a > 0.0 && (1.0 / a - 1.0 / b) / 2.0 <= tol && !(a <= 1.0 && 1.0 <= b)
        }),
    };
    Dominant::Real { exact, bracket, roots: roots_only }
}

fn window_estimate(prefix: &[u64]) -> Curvature {
    let n = prefix.len().saturating_sub(1);
    match prefix.last() {
        Some(&a) if n > 0 && a > 0 => Curvature::Estimate((a as f64).powf(1.0 / n as f64)),
        _ => Curvature::Estimate(0.0),
    }
}

/// Curvature `limsup a_n^{1/n}` from the reciprocal of the dominant root.
pub fn curvature_of(prefix: &[u64], rec: Option<&Recurrence>) -> (Curvature, AnalysisStatus) {
    let Some(rec) = rec else {
        return (window_estimate(prefix), AnalysisStatus::Heuristic);
    };
    match dominant(&rec.connection()) {
        Dominant::None => (Curvature::Exact(BigRational::zero()), AnalysisStatus::CertifiedOnPrefix),
        Dominant::Real { exact: Some(r), .. } => (Curvature::Exact(r.recip()), AnalysisStatus::CertifiedOnPrefix),
        Dominant::Real { bracket: (lo, hi), .. } => {
            let (a, b) = (1.0 / hi.to_f64().unwrap_or(f64::NAN), 1.0 / lo.to_f64().unwrap_or(f64::NAN));
            (Curvature::Numeric { value: (a + b) / 2.0, error: (b - a) / 2.0 }, AnalysisStatus::CertifiedOnPrefix)
        }
        Dominant::Complex { modulus, .. } => (Curvature::Estimate(1.0 / modulus), AnalysisStatus::Heuristic),
    }
}

fn unit_circle_multiplicity(roots: &[Root]) -> u32 {
    roots.iter().filter(|r| (r.z.norm() - 1.0).abs() <= UNIT_TOL).map(|r| r.mult).max().unwrap_or(0)
}

/// Complexity: infinite beyond curvature 1, otherwise the largest multiplicity
/// of a root on the unit circle.
pub fn complexity_of(prefix: &[u64], rec: Option<&Recurrence>) -> Complexity {
    let _ = prefix;
    let Some(rec) = rec else { return Complexity::Unknown };
    match dominant(&rec.connection()) {
        Dominant::None => Complexity::Finite(0),
        Dominant::Real { exact, bracket: (lo, hi), roots } => {
            let one = BigRational::one();
            let rho_vs_one = match exact {
                Some(r) => r.cmp(&one),
                None if hi < one => Ordering::Less,
                None => {
                    debug_assert!(lo > one);
                    Ordering::Greater
                }
            };
            match rho_vs_one {
                Ordering::Less => Complexity::Infinite,
                Ordering::Equal => Complexity::Finite(unit_circle_multiplicity(&roots)),
                Ordering::Greater => Complexity::Finite(0),
            }
        }
        Dominant::Complex { modulus, roots } => {
            if modulus < 1.0 - UNIT_TOL {
                Complexity::Infinite
            } else if modulus <= 1.0 + UNIT_TOL {
                Complexity::Finite(unit_circle_multiplicity(&roots))
            } else {
                Complexity::Finite(0)
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct AnalysisOptions {
    pub max_order: usize,
    pub guard: usize,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        Self { max_order: DEFAULT_MAX_ORDER, guard: DEFAULT_GUARD }
    }
}

pub fn analyze(prefix: &[u64], opts: AnalysisOptions) -> SequenceAnalysis {
    let rec = match fit_recurrence(prefix, opts.max_order, opts.guard) {
        Ok(r) => r,
        Err(_) => {
            return SequenceAnalysis {
                prefix: prefix.to_vec(),
                recurrence: None,
                curvature: window_estimate(prefix),
                complexity: Complexity::Unknown,
                status: AnalysisStatus::InsufficientData,
                dominant_modulus: None,
            }
        }
    };
    let (curvature, status) = curvature_of(prefix, rec.as_ref());
    let complexity = complexity_of(prefix, rec.as_ref());
    let dominant_modulus = rec.as_ref().and_then(|r| match dominant(&r.connection()) {
        Dominant::None => None,
        Dominant::Real { bracket: (lo, hi), .. } => Some(((lo + hi) / rat(2)).to_f64().unwrap_or(f64::NAN)),
        Dominant::Complex { modulus, .. } => Some(modulus),
    });
    SequenceAnalysis { prefix: prefix.to_vec(), recurrence: rec, curvature, complexity, status, dominant_modulus }
}

/// Checks `cx{x_n + y_n} = sup(cx{x_n}, cx{y_n})`, and the same for curvature,
/// whenever all three analyses are certified.
pub fn sup_rule_check(xs: &[u64], ys: &[u64]) -> bool {
    assert_eq!(xs.len(), ys.len(), "prefixes must have equal length");
    let sum: Vec<u64> = xs.iter().zip(ys).map(|(a, b)| a + b).collect();
    let opts = AnalysisOptions::default();
    let (a, b, s) = (analyze(xs, opts), analyze(ys, opts), analyze(&sum, opts));
    if !(a.is_certified() && b.is_certified() && s.is_certified()) {
        return true;
    }
    let cx_sup = match a.complexity.compare(b.complexity) {
        Some(Ordering::Less) => b.complexity,
        Some(_) => a.complexity,
        None => return true,
    };
    let curv_sup = match a.curvature.compare(&b.curvature) {
        Some(Ordering::Less) => &b.curvature,
        Some(_) => &a.curvature,
        None => return true,
    };
    s.complexity == cx_sup && s.curvature.compare(curv_sup) == Some(Ordering::Equal)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, PartialOrd, Ord)]
#[serde(rename_all = "lowercase")]
pub enum InvariantKind {
    Cx,
    Injcx,
    Curv,
    Injcurv,
    #[serde(rename = "cxpair")]
    CxPair,
    #[serde(rename = "curvpair")]
    CurvPair,
    Tcx,
    Tcurv,
}

impl InvariantKind {
    pub const ALL: [InvariantKind; 8] = [
        InvariantKind::Cx,
        InvariantKind::Injcx,
        InvariantKind::Curv,
        InvariantKind::Injcurv,
        InvariantKind::CxPair,
        InvariantKind::CurvPair,
        InvariantKind::Tcx,
        InvariantKind::Tcurv,
    ];

    pub fn name(self) -> &'static str {
        match self {
            InvariantKind::Cx => "cx",
            InvariantKind::Injcx => "injcx",
            InvariantKind::Curv => "curv",
            InvariantKind::Injcurv => "injcurv",
            InvariantKind::CxPair => "cxpair",
            InvariantKind::CurvPair => "curvpair",
            InvariantKind::Tcx => "tcx",
            InvariantKind::Tcurv => "tcurv",
        }
    }

    pub fn is_pair(self) -> bool {
        matches!(self, InvariantKind::CxPair | InvariantKind::CurvPair | InvariantKind::Tcx | InvariantKind::Tcurv)
    }

    pub fn is_complexity(self) -> bool {
        matches!(self, InvariantKind::Cx | InvariantKind::Injcx | InvariantKind::CxPair | InvariantKind::Tcx)
    }

    pub fn sequence(self) -> SequenceKind {
        match self {
            InvariantKind::Cx | InvariantKind::Curv => SequenceKind::Betti,
            InvariantKind::Injcx | InvariantKind::Injcurv => SequenceKind::Bass,
            InvariantKind::CxPair | InvariantKind::CurvPair => SequenceKind::MuExt,
            InvariantKind::Tcx | InvariantKind::Tcurv => SequenceKind::MuTor,
        }
    }
}

impl fmt::Display for InvariantKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for InvariantKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let norm = s.replace('-', "");
        InvariantKind::ALL.into_iter().find(|k| k.name() == norm).ok_or_else(|| format!("unknown invariant kind '{s}'"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SequenceKind {
    Betti,
    Bass,
    MuExt,
    MuTor,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct InvariantOptions {
    pub n_max: usize,
    /// `None` picks the automatic window.
    pub window: Option<Deg>,
    pub guard: u32,
    pub max_order: usize,
}

impl Default for InvariantOptions {
    fn default() -> Self {
        Self { n_max: crate::resolve::DEFAULT_N_MAX, window: None, guard: crate::resolve::DEFAULT_GUARD, max_order: DEFAULT_MAX_ORDER }
    }
}

impl InvariantOptions {
    pub fn new(n_max: usize, window: Option<Deg>) -> Self {
        Self { n_max, window, ..Self::default() }
    }

    fn analysis(&self) -> AnalysisOptions {
        AnalysisOptions { max_order: self.max_order, guard: self.guard as usize }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InvariantVerdict {
    pub kind: InvariantKind,
    pub sequence: SequenceKind,
    pub analysis: SequenceAnalysis,
    /// How far the underlying prefix itself is certified.
    pub prefix_status: Status,
    pub n_max: usize,
    pub window: Deg,
    pub guard: u32,
    pub max_order: usize,
}

impl InvariantVerdict {
    pub fn complexity(&self) -> Complexity {
        self.analysis.complexity
    }

    pub fn curvature(&self) -> &Curvature {
        &self.analysis.curvature
    }

    pub fn is_certified(&self) -> bool {
        self.analysis.is_certified()
    }

    /// The value the kind names, as text.
    pub fn headline(&self) -> String {
        if self.kind.is_complexity() {
            self.analysis.complexity.label()
        } else {
            self.analysis.curvature.label()
        }
    }
}

/// Window used for `kind` when none is given.
pub fn default_window<F: Field>(m: &GradedModule<F>, n: Option<&GradedModule<F>>, n_max: usize) -> Deg {
    auto_window(m, n_max) + n.map_or(0, |n| n.max_presentation_degree().max(0))
}

/// Builds the defining sequence of `kind` and analyzes it.
pub fn invariant<F: Field>(kind: InvariantKind, m: &GradedModule<F>, n: Option<&GradedModule<F>>, n_max: usize, window: Option<Deg>) -> Result<InvariantVerdict> {
    invariant_with(kind, m, n, &InvariantOptions::new(n_max, window))
}

pub fn invariant_with<F: Field>(kind: InvariantKind, m: &GradedModule<F>, n: Option<&GradedModule<F>>, opts: &InvariantOptions) -> Result<InvariantVerdict> {
    if kind.is_pair() && n.is_none() {
        return Err(Error::Unsupported(format!("invariant {kind} needs a second module")));
    }
    if let Some(n) = n {
        if !m.ring().same_ring(n.ring()) {
            return Err(Error::RingMismatch);
        }
    }
    let n_max = opts.n_max;
    let window = opts.window.unwrap_or_else(|| default_window(m, if kind.is_pair() { n } else { None }, n_max));
    let (prefix, statuses): (Vec<u64>, Vec<Status>) = match kind.sequence() {
        SequenceKind::Betti => {
            let mut ro = ResolveOptions::new(n_max, window);
            ro.guard = opts.guard;
            let t = betti_numbers(&*cached_resolution(m, &ro)?);
            (t.total.iter().map(|&b| b as u64).collect(), t.status)
        }
        SequenceKind::Bass => {
            let b = bass_numbers(m, n_max, window)?;
            (b.values.iter().map(|&v| v as u64).collect(), b.status)
        }
        SequenceKind::MuExt | SequenceKind::MuTor => {
            let hk = if kind.sequence() == SequenceKind::MuExt { HomKind::Ext } else { HomKind::Tor };
            let d = pair_invariant_data(hk, m, n.expect("checked above"), n_max, window)?;
            (d.mu_sequence(), d.per_n.iter().map(|s| s.status).collect())
        }
    };
    Ok(verdict_from_prefix(kind, &prefix, &statuses, window, opts))
}

/// Analyzes an already computed defining sequence of `kind`.
pub fn verdict_from_prefix(kind: InvariantKind, prefix: &[u64], statuses: &[Status], window: Deg, opts: &InvariantOptions) -> InvariantVerdict {
    InvariantVerdict {
        kind,
        sequence: kind.sequence(),
        analysis: analyze(prefix, opts.analysis()),
        prefix_status: statuses.iter().copied().fold(Status::Exact, Status::meet),
        n_max: opts.n_max,
        window,
        guard: opts.guard,
        max_order: opts.max_order,
    }
}

#[cfg(test)]
mod tests;
