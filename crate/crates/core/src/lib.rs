//! Special data of abelian quotient complete intersection singularities.
//!
//! A special datum is a weighted laminar family on `{1, .., n}`. Every datum
//! determines a semigroup ring `R_D` generated by the monomials
//! `x_J^{w(J)}`, a diagonal group `G_D` with `R_D` as invariant ring, and
//! the monomial ideal `a_D` generated by the same monomials. This crate
//! computes the embedding dimension, the group order, the log canonical
//! threshold and the Hilbert–Samuel multiplicity of such data, each by two
//! independent routes where possible, and runs the bound checks over
//! exhaustive enumerations.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, the command
//! line front end and parallel execution live in the `aqci` crate.

#![no_std]

extern crate alloc;

pub mod canon;
pub mod datum;
pub mod enumerate;
pub mod hnf;
pub mod ideal;
pub mod invariants;
pub mod lct;
pub mod multiplicity;
pub mod rational;
pub mod simplex;
pub mod verify;

pub use canon::{canonical_form, is_isomorphic, CanonicalForm, Shape};
pub use datum::{DatumError, Member, NodeRef, RawDatum, RawSet, SpecialDatum, ValidationReport, Violation};
pub use enumerate::{enumerate, enumerate_dimension, EnumerationBudget};
pub use ideal::{IdealError, MonomialIdeal};
pub use invariants::InvariantSummary;
pub use lct::{LctCache, LctError, LpCertificate};
pub use multiplicity::{HilbertSamuelTable, MultiplicityResult, MultiplicityStatus, OracleBudget};
pub use rational::Rational;
pub use verify::{CheckId, CheckOutcome, DatumRecord, Outcome, Tallies, VerificationReport};
