//! Monomials, monomial ideals and standard-graded quotients `k[x_1..x_v]/J`
//! with `J` monomial.
//!
//! Ideals of a quotient ring are carried by their *reduced* monomial
//! generators: the minimal generators of `I + J` that do not lie in `J`.
//! That form is canonical, so ideal equality is generator equality.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::field::Field;

pub type Exponents = SmallVec<[u16; 8]>;

/// A monomial `x^a`, stored as its exponent vector.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Monomial(Exponents);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = Self::one(nvars);
        m.0[i] = 1;
        m
    }

    pub fn from_exponents(e: &[u16]) -> Self {
        Monomial(SmallVec::from_slice(e))
    }

    pub fn exponents(&self) -> &[u16] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| a + b).collect())
    }

    pub fn mul_var(&self, i: usize) -> Monomial {
        let mut m = self.clone();
        m.0[i] += 1;
        m
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self` when `self | other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        self.divides(other)
            .then(|| Monomial(other.0.iter().zip(self.0.iter()).map(|(b, a)| b - a).collect()))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| *a.min(b)).collect())
    }

    /// `Some(i)` when the monomial is a positive power of `x_i` alone.
    pub fn pure_power_var(&self) -> Option<usize> {
        let mut found = None;
        for (i, &e) in self.0.iter().enumerate() {
            if e > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some(i);
            }
        }
        found
    }

    /// Degree first, then lexicographic with `x_1 > x_2 > ...`.
    pub fn cmp_grlex(&self, other: &Monomial) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| other.0.cmp(&self.0))
    }

    pub fn display<'a>(&'a self, names: &'a [String]) -> MonomialDisplay<'a> {
        MonomialDisplay { m: self, names }
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{:?}", self.0.as_slice())
    }
}

pub struct MonomialDisplay<'a> {
    m: &'a Monomial,
    names: &'a [String],
}

impl fmt::Display for MonomialDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.m.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.m.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            let name = self.names.get(i).map(String::as_str).unwrap_or("?");
            if e == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Monomial ideal given by an antichain of generators.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct MonomialIdeal {
    nvars: usize,
    gens: Vec<Monomial>,
}

impl MonomialIdeal {
    /// Minimalizes and sorts the given generators.
    pub fn new(nvars: usize, gens: impl IntoIterator<Item = Monomial>) -> Self {
        let mut gens: Vec<Monomial> = gens.into_iter().collect();
        debug_assert!(gens.iter().all(|g| g.nvars() == nvars));
        gens.sort_by(|a, b| a.cmp_grlex(b));
        gens.dedup();
        let mut kept: Vec<Monomial> = Vec::with_capacity(gens.len());
        // after sorting by degree only an earlier generator can divide a later one
        for g in gens {
            if !kept.iter().any(|k| k.divides(&g)) {
                kept.push(g);
            }
        }
        Self { nvars, gens: kept }
    }

    pub fn zero(nvars: usize) -> Self {
        Self { nvars, gens: Vec::new() }
    }

    pub fn unit(nvars: usize) -> Self {
        Self { nvars, gens: vec![Monomial::one(nvars)] }
    }

    pub fn maximal(nvars: usize) -> Self {
        Self::new(nvars, (0..nvars).map(|i| Monomial::var(nvars, i)))
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.iter().any(Monomial::is_one)
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    /// `self ⊆ other` as ideals of the polynomial ring.
    pub fn is_subset_of(&self, other: &MonomialIdeal) -> bool {
        self.gens.iter().all(|g| other.contains(g))
    }

    pub fn sum(&self, other: &MonomialIdeal) -> MonomialIdeal {
        MonomialIdeal::new(self.nvars, self.gens.iter().chain(other.gens.iter()).cloned())
    }

    pub fn product(&self, other: &MonomialIdeal) -> MonomialIdeal {
        MonomialIdeal::new(
            self.nvars,
            self.gens.iter().flat_map(|a| other.gens.iter().map(move |b| a.mul(b))),
        )
    }

    pub fn intersect(&self, other: &MonomialIdeal) -> MonomialIdeal {
        MonomialIdeal::new(
            self.nvars,
            self.gens.iter().flat_map(|a| other.gens.iter().map(move |b| a.lcm(b))),
        )
    }

    /// `(self : x_i)` in the polynomial ring.
    pub fn colon_var(&self, i: usize) -> MonomialIdeal {
        MonomialIdeal::new(
            self.nvars,
            self.gens.iter().map(|g| {
                let mut e: Exponents = g.0.clone();
                e[i] = e[i].saturating_sub(1);
                Monomial(e)
            }),
        )
    }

    /// `(self : m)` in the polynomial ring.
    pub fn colon_monomial(&self, m: &Monomial) -> MonomialIdeal {
        MonomialIdeal::new(
            self.nvars,
            self.gens.iter().map(|g| Monomial(g.0.iter().zip(m.0.iter()).map(|(a, b)| a.saturating_sub(*b)).collect())),
        )
    }

    /// `(self : (x_1, ..., x_v))` in the polynomial ring.
    pub fn colon_maximal(&self) -> MonomialIdeal {
        if self.nvars == 0 {
            return self.clone();
        }
        (1..self.nvars).fold(self.colon_var(0), |acc, i| acc.intersect(&self.colon_var(i)))
    }

    pub fn power(&self, n: u32) -> MonomialIdeal {
        (0..n).fold(MonomialIdeal::unit(self.nvars), |acc, _| acc.product(self))
    }

    pub fn max_degree(&self) -> u32 {
        self.gens.iter().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn display<'a>(&'a self, names: &'a [String]) -> String {
        if self.gens.is_empty() {
            return "(0)".to_string();
        }
        let parts: Vec<String> = self.gens.iter().map(|g| g.display(names).to_string()).collect();
        format!("({})", parts.join(", "))
    }
}

/// The standard monomials of one degree with a reverse index.
#[derive(Debug, Default)]
pub struct DegreeBasis {
    pub monos: Vec<Monomial>,
    pub index: HashMap<Monomial, usize>,
}

impl DegreeBasis {
    fn new(monos: Vec<Monomial>) -> Self {
        let index = monos.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        Self { monos, index }
    }

    pub fn len(&self) -> usize {
        self.monos.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monos.is_empty()
    }
}

/// `k[x_1..x_v]/J`, standard graded, `J` monomial.
pub struct GradedRing<F: Field> {
    field: F,
    var_names: Vec<String>,
    defining: MonomialIdeal,
    top_degree: Option<u32>,
    // write-once per degree; index = degree
    bases: RwLock<Vec<Arc<DegreeBasis>>>,
}

pub type Ring<F> = Arc<GradedRing<F>>;

impl<F: Field> fmt::Debug for GradedRing<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]/{}", self.field.name(), self.var_names.join(","), self.defining.display(&self.var_names))
    }
}

impl<F: Field> GradedRing<F> {
    pub fn new(field: F, var_names: Vec<String>, relations: impl IntoIterator<Item = Monomial>) -> Ring<F> {
        let nvars = var_names.len();
        let defining = MonomialIdeal::new(nvars, relations);
        let artinian = (0..nvars).all(|i| defining.gens().iter().any(|g| g.pure_power_var() == Some(i)))
            || defining.is_unit();
        let ring = GradedRing { field, var_names, defining, top_degree: None, bases: RwLock::new(Vec::new()) };
        let top_degree = if artinian {
            let mut d = 0;
            while !ring.basis(d + 1).is_empty() {
                d += 1;
            }
            if ring.basis(0).is_empty() {
                None
            } else {
                Some(d)
            }
        } else {
            None
        };
        let mut ring = ring;
        ring.top_degree = top_degree;
        Arc::new(ring)
    }

    /// Names `x1, x2, ...` when none are given.
    pub fn with_default_names(field: F, nvars: usize, relations: impl IntoIterator<Item = Monomial>) -> Ring<F> {
        let names = match nvars {
            1..=3 => ["x", "y", "z"][..nvars].iter().map(|s| s.to_string()).collect(),
            _ => (1..=nvars).map(|i| format!("x{i}")).collect(),
        };
        Self::new(field, names, relations)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.var_names.len()
    }

    pub fn var_names(&self) -> &[String] {
        &self.var_names
    }

    pub fn defining(&self) -> &MonomialIdeal {
        &self.defining
    }

    pub fn is_artinian(&self) -> bool {
        self.top_degree.is_some() || self.defining.is_unit()
    }

    /// Largest degree with `R_d != 0` when the ring is Artinian.
    pub fn top_degree(&self) -> Option<u32> {
        self.top_degree
    }

    pub fn is_zero_ring(&self) -> bool {
        self.defining.is_unit()
    }

    pub fn maximal_ideal(&self) -> MonomialIdeal {
        self.reduce_ideal(&MonomialIdeal::maximal(self.nvars()))
    }

    pub fn one(&self) -> Monomial {
        Monomial::one(self.nvars())
    }

    pub fn is_standard(&self, m: &Monomial) -> bool {
        !self.defining.contains(m)
    }

    /// Standard monomials of degree `d`, sorted by [`Monomial::cmp_grlex`].
    pub fn basis(&self, d: u32) -> Arc<DegreeBasis> {
        if let Some(b) = self.bases.read().expect("basis cache poisoned").get(d as usize) {
            return Arc::clone(b);
        }
        let mut cache = self.bases.write().expect("basis cache poisoned");
        while cache.len() <= d as usize {
            let next = match cache.last() {
                None => {
                    let one = self.one();
                    if self.is_standard(&one) {
                        vec![one]
                    } else {
                        Vec::new()
                    }
                }
                Some(prev) => {
                    let mut out: Vec<Monomial> = prev
                        .monos
                        .iter()
                        .flat_map(|m| (0..self.nvars()).map(move |i| m.mul_var(i)))
                        .filter(|m| self.is_standard(m))
                        .collect();
                    out.sort_by(|a, b| a.cmp_grlex(b));
                    out.dedup();
                    out
                }
            };
            cache.push(Arc::new(DegreeBasis::new(next)));
        }
        Arc::clone(&cache[d as usize])
    }

    /// `basis(d)` for possibly negative `d`.
    pub fn basis_i(&self, d: i32) -> Option<Arc<DegreeBasis>> {
        (d >= 0).then(|| self.basis(d as u32))
    }

    pub fn dim(&self, d: i32) -> usize {
        if d < 0 {
            return 0;
        }
        if let Some(t) = self.top_degree {
            if d as u32 > t {
                return 0;
            }
        }
        self.basis(d as u32).len()
    }

    /// Reduced generators of the image of `I` in this ring.
    pub fn reduce_ideal(&self, ideal: &MonomialIdeal) -> MonomialIdeal {
        let full = ideal.sum(&self.defining);
        MonomialIdeal::new(self.nvars(), full.gens().iter().filter(|g| self.is_standard(g)).cloned())
    }

    /// The lift `I + J` of a reduced ideal to the polynomial ring.
    pub fn lift_ideal(&self, ideal: &MonomialIdeal) -> MonomialIdeal {
        ideal.sum(&self.defining)
    }

    pub fn same_ring(&self, other: &GradedRing<F>) -> bool {
        std::ptr::eq(self, other)
            || (self.field.name() == other.field.name()
                && self.var_names == other.var_names
                && self.defining == other.defining)
    }

    pub fn describe(&self) -> String {
        format!("{:?}", self)
    }
}

/// `(I :_R m)`, computed as `((I + J) :_P m) / J`.
pub fn ideal_colon_maxideal<F: Field>(ring: &GradedRing<F>, ideal: &MonomialIdeal) -> MonomialIdeal {
    ring.reduce_ideal(&ring.lift_ideal(ideal).colon_maximal())
}

pub fn ideal_product<F: Field>(ring: &GradedRing<F>, a: &MonomialIdeal, b: &MonomialIdeal) -> MonomialIdeal {
    ring.reduce_ideal(&a.product(b))
}

pub fn ideal_sum<F: Field>(ring: &GradedRing<F>, a: &MonomialIdeal, b: &MonomialIdeal) -> MonomialIdeal {
    ring.reduce_ideal(&a.sum(b))
}

pub fn ideal_power<F: Field>(ring: &GradedRing<F>, a: &MonomialIdeal, n: u32) -> MonomialIdeal {
    ring.reduce_ideal(&a.power(n))
}

/// Equality in the ring, via mutual containment of the lifts.
pub fn ideal_equal<F: Field>(ring: &GradedRing<F>, a: &MonomialIdeal, b: &MonomialIdeal) -> bool {
    let la = ring.lift_ideal(a);
    let lb = ring.lift_ideal(b);
    la.is_subset_of(&lb) && lb.is_subset_of(&la)
}

/// Whether `R/I` has finite length: every variable has a pure power in `I + J`.
pub fn is_m_primary<F: Field>(ring: &GradedRing<F>, ideal: &MonomialIdeal) -> bool {
    let lifted = ring.lift_ideal(ideal);
    lifted.is_unit() || (0..ring.nvars()).all(|i| lifted.gens().iter().any(|g| g.pure_power_var() == Some(i)))
}

/// `dim_k (R/I)_d`.
pub fn hilbert_function<F: Field>(ring: &GradedRing<F>, ideal: &MonomialIdeal, d: u32) -> usize {
    if ideal.is_unit() {
        return 0;
    }
    ring.basis(d).monos.iter().filter(|m| !ideal.contains(m)).count()
}

pub fn standard_basis_in_degree<F: Field>(ring: &GradedRing<F>, d: u32) -> Vec<Monomial> {
    ring.basis(d).monos.clone()
}
