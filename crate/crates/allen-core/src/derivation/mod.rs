//! Axiomatic derivation of the interval calculus from the meets axioms.
//!
//! Everything in this module treats `||` ("meets") as the only primitive.
//! The thirteen relations exist here solely as the literal schemas of
//! [`schema`], and composition entries are not looked up but *proved*: the
//! executor in [`engine`] runs the `M2` case-split templates and emits
//! proof trees whose leaves carry explicit witness maps and rule traces.
//!
//! The module deliberately shares no machinery with [`crate::model`]; the
//! two provide independent derivations of the same table, and the embedded
//! constant is checked against both.

pub mod engine;
pub mod schema;
pub mod state;

pub use engine::{
    derive_composition, derive_je, match_schema, verify_pd, verify_table_by_derivation,
    DerivNode, DerivationTree, Leaf, PdProof, Split, TableDerivationReport, WitnessMap,
};
pub use schema::{closure_plan, schema, ClosurePlan, RelationSchema, SchemaTerm};
pub use state::{
    Contradiction, DerivationError, DerivationState, RuleApp, Side, SplitCase, VarId, VarOrigin,
};
