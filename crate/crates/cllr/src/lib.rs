//! Workbench for the finite fragment of the process calculus CLL_R.
//!
//! The crate computes the logic labelled transition system (an LTS with an
//! inconsistency predicate) of any finite term, decides the weak
//! ready-simulation preorder between terms, rewrites terms into canonical
//! normal form while emitting machine-checkable proof objects in the
//! inequational axiom system, and cross-validates the semantic and
//! syntactic decision procedures against each other.
//!
//! Module map:
//!
//! * [`syntax`] — the term language, parser, canonical printer and the
//!   syntactic predicates used by axiom side conditions;
//! * [`semantics`] — transition relation, inconsistency predicate and weak
//!   (inconsistency-avoiding) transitions;
//! * [`refinement`] — the ready-simulation preorder, with witnesses for
//!   negative verdicts;
//! * [`axioms`] — proof objects over the axiom system and a strict checker;
//! * [`normalizer`] — normal forms together with equational proofs;
//! * [`prover`] — derivability verdicts: a checked proof or a semantic
//!   refusal witness;
//! * [`gen`] — deterministic random term generation;
//! * [`laws`] — the algebraic law suite used by the fuzz harness.

pub mod axioms;
pub mod gen;
pub mod laws;
pub mod normalizer;
pub mod prover;
pub mod refinement;
pub mod semantics;
pub mod syntax;

pub use syntax::{parse, Action, GuardedSum, ParseError, SyncSet, Term};
