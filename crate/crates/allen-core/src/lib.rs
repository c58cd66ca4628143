//! Qualitative temporal reasoning over intervals.
//!
//! This crate implements the interval relation algebra three mutually
//! checking ways:
//!
//! * [`relation`] and [`table`] give the symbolic layer: the thirteen basic
//!   relations, relation sets, converse and the 13×13 composition table.
//! * [`model`] grounds everything in concrete intervals with rational
//!   endpoints and recomputes the table by brute-force enumeration of
//!   endpoint order types.
//! * [`derivation`] rebuilds the table a third way, as symbolic proofs from
//!   a small axiom system for the single primitive `meets`, replaying the
//!   case-split arguments that justify each entry.
//!
//! [`lattice`] adds the conceptual neighborhood structure of the relations,
//! and [`network`] a constraint solver (path consistency + backtracking +
//! realization) for networks of interval variables.

pub mod derivation;
pub mod lattice;
pub mod model;
pub mod network;
pub mod relation;
pub mod table;
mod uf;

pub use relation::{BasicRelation, ParseRelationError, RelationSet};
pub use table::{compose, compose_sets, CompositionTable, TableFormat, TABLE};
