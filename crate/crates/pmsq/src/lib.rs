//! Pseudo magic squares over the integers and generic magic squares over
//! abelian groups and commutative rings.
//!
//! A pseudo magic square (PMS) is a square integer matrix whose row sums and
//! column sums all equal one value, the magic constant. Entries need not be
//! distinct and diagonals are unconstrained. The set of order-n PMS forms a
//! free abelian group under matrix addition; this crate provides that group
//! structure, constructions that build new squares from old ones (direct sum,
//! scalar and shift actions, Kronecker product), an explicit lattice basis,
//! generic magic squares over arbitrary abelian groups and commutative rings,
//! a matroid-axiom checker, a bounded exhaustive enumerator with dihedral
//! canonicalization, and a machine-check harness for the algebraic closure
//! claims (including an exhaustive falsification search for the ring case).

pub mod algebra;
pub mod enumerate;
pub mod gms;
pub mod harness;
pub mod json;
pub mod matroid;
pub mod pms;
pub mod ring_gms;

pub use algebra::{AbelianGroup, AxiomReport, CommutativeRing, Element};
pub use enumerate::{canonical_form, count_classes, enumerate_pms, EquivalenceClass, SearchSpec};
pub use gms::Gms;
pub use matroid::{is_matroid, vector_matroid, IndependenceSystem};
pub use pms::{decompose, lattice_basis, Pms};
pub use ring_gms::{closure_search, ClosureReport, RingGms};
