//! The conceptual neighborhood graph of the thirteen basic relations.
//!
//! Two relations are neighbors when one can turn into the other by a
//! continuous deformation of a single endpoint, without passing through a
//! third relation — e.g. shrinking `p` slides `ov` to `m` to `b`. The graph
//! is the classic A-neighborhood structure: a hexagonal lattice with `b` and
//! `bi` at the poles and `e` in the center between `s si f fi`.
//!
//! Composition-table entries are connected subgraphs of this lattice, which
//! is what makes the named unions (α, β, γ, δ) natural: each one carves out
//! a contiguous region.

use crate::relation::{BasicRelation, RelationSet};
use std::collections::VecDeque;

/// Undirected neighbor edges, one per unordered pair.
const EDGES: [(BasicRelation, BasicRelation); 16] = {
    use BasicRelation::*;
    [
        (Before, Meets),
        (Meets, Overlaps),
        (Overlaps, FinishedBy),
        (FinishedBy, Contains),
        (Contains, StartedBy),
        (StartedBy, OverlappedBy),
        (Overlaps, Starts),
        (Starts, During),
        (During, Finishes),
        (Finishes, OverlappedBy),
        (OverlappedBy, MetBy),
        (MetBy, After),
        (Starts, Equals),
        (Equals, StartedBy),
        (FinishedBy, Equals),
        (Equals, Finishes),
    ]
};

/// The direct neighbors of a relation.
pub fn neighbors(r: BasicRelation) -> RelationSet {
    let mut out = RelationSet::EMPTY;
    for (a, b) in EDGES {
        if a == r {
            out = out.with(b);
        } else if b == r {
            out = out.with(a);
        }
    }
    out
}

/// True when the set induces a connected subgraph of the neighborhood
/// lattice. The empty set and singletons count as connected.
pub fn is_connected(set: RelationSet) -> bool {
    let Some(first) = set.iter().next() else {
        return true;
    };
    let mut seen = RelationSet::singleton(first);
    let mut queue = VecDeque::from([first]);
    while let Some(r) = queue.pop_front() {
        for n in neighbors(r).intersection(set).iter() {
            if !seen.contains(n) {
                seen = seen.with(n);
                queue.push_back(n);
            }
        }
    }
    seen == set
}

/// Length of the shortest neighbor path between two relations.
///
/// The lattice is connected, so a path always exists; the distance is 0
/// exactly when the relations are equal.
pub fn conceptual_distance(a: BasicRelation, b: BasicRelation) -> u32 {
    if a == b {
        return 0;
    }
    let mut dist = [u32::MAX; 13];
    dist[a.index()] = 0;
    let mut queue = VecDeque::from([a]);
    while let Some(r) = queue.pop_front() {
        for n in neighbors(r).iter() {
            if dist[n.index()] == u32::MAX {
                dist[n.index()] = dist[r.index()] + 1;
                if n == b {
                    return dist[n.index()];
                }
                queue.push_back(n);
            }
        }
    }
    unreachable!("neighborhood lattice is connected")
}
