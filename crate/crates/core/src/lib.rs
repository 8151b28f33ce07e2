//! Homological invariants over standard-graded monomial quotient rings.
//!
//! The pipeline runs bottom-up: exact sparse linear algebra ([`kernelalg`]),
//! monomial rings and ideals ([`monoring`]), finitely presented graded modules
//! ([`gmod`]), minimal resolutions ([`resolve`]), Tor and Ext of pairs
//! ([`pairhom`]), sequence asymptotics ([`asymptote`]) and Burch tests
//! ([`burch`]). [`speclang`] parses the textual input language.

pub mod asymptote;
pub mod burch;
pub mod corpus;
pub mod error;
pub mod field;
pub mod gmod;
pub mod kernelalg;
pub mod monoring;
pub mod pairhom;
pub mod resolve;
pub mod speclang;
pub mod verify;

pub use error::{Error, Result};
pub use field::{Field, FieldSpec, PrimeField, Scalars};
pub use gmod::{Deg, GradedModule, Status};
pub use monoring::{GradedRing, Monomial, MonomialIdeal, Ring};

/// The rational numbers as a field context.
pub type Rationals = Scalars<num_rational::BigRational>;

/// Rings and modules over the default prime field.
pub type RingFp = Ring<PrimeField>;
pub type ModuleFp = GradedModule<PrimeField>;

/// Rings and modules over the rationals.
pub type RingQ = Ring<Rationals>;
pub type ModuleQ = GradedModule<Rationals>;
