//! Meets-literal schemas for the thirteen relations.
//!
//! Each basic relation between `p` and `q` is characterized by a finite set
//! of `||` literals over `p`, `q` and a few existentially bound neighbor
//! intervals. `m` is the primitive (`p || q`), `e` is interval equality, and
//! the rest bound between one and five witnesses; converse relations use the
//! same schema with `p` and `q` swapped.
//!
//! Reading a schema geometrically: a literal chain walks the endpoints of
//! `p` and `q` left to right. In `s`, for instance, `k` meets both `p` and
//! `q` (forcing a shared start), `u` spans from `p`'s end to `q`'s end, and
//! `v` is `q`'s right neighbor — which is exactly "same start, `p` ends
//! first".

use crate::relation::BasicRelation;

/// One side of a schema literal.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SchemaTerm {
    /// The first argument of the relation.
    P,
    /// The second argument of the relation.
    Q,
    /// The `i`-th bound witness.
    Bound(usize),
}

use SchemaTerm::{Bound, P, Q};

/// The literal schema of one basic relation.
#[derive(Debug, Clone, Copy)]
pub struct RelationSchema {
    pub relation: BasicRelation,
    /// Preferred display names of the bound witnesses.
    pub bound: &'static [&'static str],
    /// Meets-literals `left || right`.
    pub literals: &'static [(SchemaTerm, SchemaTerm)],
    /// True for `e`, which is interval equality rather than a literal set.
    pub equality: bool,
}

macro_rules! schemas {
    ($($rel:ident { bound: [$($b:literal),*], literals: [$($l:expr),*], equality: $eq:literal }),+ $(,)?) => {
        &[
            $(RelationSchema {
                relation: BasicRelation::$rel,
                bound: &[$($b),*],
                literals: &[$($l),*],
                equality: $eq,
            }),+
        ]
    };
}

/// All thirteen schemas, indexed by `BasicRelation::index`.
static SCHEMAS: &[RelationSchema] = schemas![
    Before {
        bound: ["t"],
        literals: [(P, Bound(0)), (Bound(0), Q)],
        equality: false
    },
    Meets {
        bound: [],
        literals: [(P, Q)],
        equality: false
    },
    Overlaps {
        // k: left neighbor of p; l: start(p)→start(q); t: start(q)→end(p);
        // u: end(p)→end(q); v: right neighbor of q.
        bound: ["k", "l", "u", "v", "t"],
        literals: [
            (Bound(0), P),
            (P, Bound(2)),
            (Bound(2), Bound(3)),
            (Bound(0), Bound(1)),
            (Bound(1), Q),
            (Q, Bound(3)),
            (Bound(1), Bound(4)),
            (Bound(4), Bound(2))
        ],
        equality: false
    },
    FinishedBy {
        bound: ["k", "l", "u"],
        literals: [
            (Bound(0), Bound(1)),
            (Bound(1), Q),
            (Q, Bound(2)),
            (Bound(0), P),
            (P, Bound(2))
        ],
        equality: false
    },
    Contains {
        bound: ["k", "l", "u", "v"],
        literals: [
            (Bound(0), Bound(1)),
            (Bound(1), Q),
            (Q, Bound(2)),
            (Bound(2), Bound(3)),
            (Bound(0), P),
            (P, Bound(3))
        ],
        equality: false
    },
    Starts {
        bound: ["k", "u", "v"],
        literals: [
            (Bound(0), P),
            (P, Bound(1)),
            (Bound(1), Bound(2)),
            (Bound(0), Q),
            (Q, Bound(2))
        ],
        equality: false
    },
    Equals {
        bound: [],
        literals: [],
        equality: true
    },
    StartedBy {
        bound: ["k", "u", "v"],
        literals: [
            (Bound(0), Q),
            (Q, Bound(1)),
            (Bound(1), Bound(2)),
            (Bound(0), P),
            (P, Bound(2))
        ],
        equality: false
    },
    During {
        bound: ["k", "l", "u", "v"],
        literals: [
            (Bound(0), Bound(1)),
            (Bound(1), P),
            (P, Bound(2)),
            (Bound(2), Bound(3)),
            (Bound(0), Q),
            (Q, Bound(3))
        ],
        equality: false
    },
    Finishes {
        bound: ["k", "l", "u"],
        literals: [
            (Bound(0), Bound(1)),
            (Bound(1), P),
            (P, Bound(2)),
            (Bound(0), Q),
            (Q, Bound(2))
        ],
        equality: false
    },
    OverlappedBy {
        bound: ["k", "l", "u", "v", "t"],
        literals: [
            (Bound(0), Q),
            (Q, Bound(2)),
            (Bound(2), Bound(3)),
            (Bound(0), Bound(1)),
            (Bound(1), P),
            (P, Bound(3)),
            (Bound(1), Bound(4)),
            (Bound(4), Bound(2))
        ],
        equality: false
    },
    MetBy {
        bound: [],
        literals: [(Q, P)],
        equality: false
    },
    After {
        bound: ["t"],
        literals: [(Q, Bound(0)), (Bound(0), P)],
        equality: false
    },
];

/// Schema of a basic relation.
pub fn schema(r: BasicRelation) -> &'static RelationSchema {
    &SCHEMAS[r.index()]
}

/// A reference to one of the four distinguished endpoints in a closure plan.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EndpointRef {
    StartP,
    EndP,
    StartQ,
    EndQ,
}

/// Which of `p`/`q` a neighbor requirement attaches to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlanVar {
    P,
    Q,
}

/// What must exist in a state before the schema of a relation can match:
/// spanning intervals between distinguished endpoints (built by summing with
/// `M5`) and outer neighbors (built with `M3`).
#[derive(Debug, Clone, Copy)]
pub struct ClosurePlan {
    /// Required spans `from → to`.
    pub spans: &'static [(EndpointRef, EndpointRef)],
    /// Required neighbors: `(var, Start)` means "something meets var".
    pub neighbors: &'static [(PlanVar, crate::derivation::state::Side)],
}

/// Closure plan for a relation, mirroring its schema's geometry.
pub fn closure_plan(r: BasicRelation) -> ClosurePlan {
    use crate::derivation::state::Side::{End, Start};
    use BasicRelation::*;
    use EndpointRef::*;
    match r {
        Before => ClosurePlan {
            spans: &[(EndP, StartQ)],
            neighbors: &[],
        },
        After => ClosurePlan {
            spans: &[(EndQ, StartP)],
            neighbors: &[],
        },
        Meets | MetBy | Equals => ClosurePlan {
            spans: &[],
            neighbors: &[],
        },
        Overlaps => ClosurePlan {
            spans: &[(StartP, StartQ), (StartQ, EndP), (EndP, EndQ)],
            neighbors: &[(PlanVar::P, Start), (PlanVar::Q, End)],
        },
        OverlappedBy => ClosurePlan {
            spans: &[(StartQ, StartP), (StartP, EndQ), (EndQ, EndP)],
            neighbors: &[(PlanVar::Q, Start), (PlanVar::P, End)],
        },
        Starts => ClosurePlan {
            spans: &[(EndP, EndQ)],
            neighbors: &[(PlanVar::P, Start), (PlanVar::Q, End)],
        },
        StartedBy => ClosurePlan {
            spans: &[(EndQ, EndP)],
            neighbors: &[(PlanVar::Q, Start), (PlanVar::P, End)],
        },
        Finishes => ClosurePlan {
            spans: &[(StartQ, StartP)],
            neighbors: &[(PlanVar::Q, Start), (PlanVar::P, End)],
        },
        FinishedBy => ClosurePlan {
            spans: &[(StartP, StartQ)],
            neighbors: &[(PlanVar::P, Start), (PlanVar::Q, End)],
        },
        During => ClosurePlan {
            spans: &[(StartQ, StartP), (EndP, EndQ)],
            neighbors: &[(PlanVar::Q, Start), (PlanVar::Q, End)],
        },
        Contains => ClosurePlan {
            spans: &[(StartP, StartQ), (EndQ, EndP)],
            neighbors: &[(PlanVar::P, Start), (PlanVar::P, End)],
        },
    }
}
