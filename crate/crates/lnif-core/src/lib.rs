//! Proof kernel, proof transformations, bounded proof search, and semantics
//! for first-order Gödel logic with constant domains, presented as the linear
//! nested sequent calculus LNIF.
//!
//! The crate is organized around the derivation checker: every transformation
//! and every proof found by search produces a `Derivation` that the checker
//! accepts, and the semantics module provides the independent cross-checks
//! (finite linear Kripke models and a Gödel-chain oracle for the
//! propositional fragment).

pub mod builders;
pub mod calculus;
pub mod latex;
pub mod prover;
pub mod semantics;
pub mod sequent;
pub mod serialize;
pub mod syntax;
pub mod transform;

pub use calculus::{check_derivation, CheckError, Derivation, Mode, RuleInstance, RuleTag};
pub use sequent::{parse_sequent, Component, Multiset, Sequent};
pub use syntax::{parse_formula, parse_formula_inferring, Formula, Signature, SyntaxError, Term};
