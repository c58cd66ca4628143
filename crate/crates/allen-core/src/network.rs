//! Qualitative constraint networks over interval variables.
//!
//! A [`Network`] maps unordered variable pairs to [`RelationSet`]
//! constraints; an absent edge means the universal relation. The module
//! offers algebraic closure ([`Network::path_consistency`]), backtracking
//! search for atomic scenarios ([`Network::solve`]), and realization of a
//! scenario into exact rational intervals ([`Scenario::realize`]).
//!
//! Closure alone is not treated as a consistency decision for arbitrary
//! networks; `solve` always backtracks over closures, and every scenario it
//! returns can be realized and classified back.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::model::{classify, RatInterval};
use crate::relation::{BasicRelation, RelationSet};
use crate::table::compose_sets;
use crate::uf::UnionFind;

/// Errors from parsing network files or realizing scenarios.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NetworkError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("line {line}: constraint from {name} to itself")]
    SelfEdge { line: usize, name: String },
    #[error("realization failed: endpoint precedence cycle through {witness}")]
    RealizationFailure { witness: String },
}

/// Verdict of a failed closure: some edge became empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Inconsistent {
    /// The variable pair whose constraint emptied.
    pub pair: (String, String),
}

impl fmt::Display for Inconsistent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "inconsistent between {} and {}", self.pair.0, self.pair.1)
    }
}

/// A qualitative constraint network.
///
/// Variables are indexed in first-appearance order. Stored edges are
/// normalized to `i < j`; querying `(j, i)` yields the converse set.
/// Universal edges are never stored.
#[derive(Debug, Clone, Default)]
pub struct Network {
    names: Vec<String>,
    edges: BTreeMap<(usize, usize), RelationSet>,
    /// Stored edges in first-appearance order, for serialization.
    order: Vec<(usize, usize)>,
}

impl PartialEq for Network {
    /// Equality ignores edge insertion order.
    fn eq(&self, other: &Network) -> bool {
        self.names == other.names && self.edges == other.edges
    }
}

impl Eq for Network {}

fn valid_name(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Network {
    pub fn new() -> Network {
        Network::default()
    }

    /// Number of variables.
    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    /// Variable names in first-appearance order.
    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Index of `name`, adding the variable if new.
    pub fn variable(&mut self, name: &str) -> usize {
        if let Some(i) = self.names.iter().position(|n| n == name) {
            return i;
        }
        self.names.push(name.to_string());
        self.names.len() - 1
    }

    /// The constraint between `i` and `j` (in that direction). Absent edges
    /// are universal; the self-edge is `{e}`.
    pub fn relation(&self, i: usize, j: usize) -> RelationSet {
        if i == j {
            return RelationSet::singleton(BasicRelation::Equals);
        }
        let (key, flip) = if i < j { ((i, j), false) } else { ((j, i), true) };
        let set = self.edges.get(&key).copied().unwrap_or(RelationSet::FULL);
        if flip {
            set.converse()
        } else {
            set
        }
    }

    /// Intersects the constraint between `i` and `j` with `set`.
    pub fn constrain(&mut self, i: usize, j: usize, set: RelationSet) {
        let current = self.relation(i, j);
        self.set_relation(i, j, current.intersection(set));
    }

    /// Replaces the constraint between `i` and `j` (stored normalized).
    pub fn set_relation(&mut self, i: usize, j: usize, set: RelationSet) {
        assert_ne!(i, j, "no self-edges");
        let (key, stored) = if i < j {
            ((i, j), set)
        } else {
            ((j, i), set.converse())
        };
        if stored == RelationSet::FULL {
            if self.edges.remove(&key).is_some() {
                self.order.retain(|&k| k != key);
            }
            return;
        }
        if self.edges.insert(key, stored).is_none() {
            self.order.push(key);
        }
    }

    /// Stored (non-universal) edges as `(i, j, set)` with `i < j`, in
    /// first-appearance order.
    pub fn stored_edges(&self) -> impl Iterator<Item = (usize, usize, RelationSet)> + '_ {
        self.order.iter().map(|&(i, j)| (i, j, self.edges[&(i, j)]))
    }

    /// Parses the line-oriented network format: `A B : m ov`, `#` comments,
    /// blank lines ignored, duplicate edges intersected.
    pub fn parse(text: &str) -> Result<Network, NetworkError> {
        let mut net = Network::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let parse_err = |message: String| NetworkError::Parse { line, message };
            let (head, tail) = content
                .split_once(':')
                .ok_or_else(|| parse_err("expected `<var> <var> : <rel> ...`".to_string()))?;
            let vars: Vec<&str> = head.split_whitespace().collect();
            let [a, b] = vars[..] else {
                return Err(parse_err(format!(
                    "expected two variable names before `:`, found {}",
                    vars.len()
                )));
            };
            for name in [a, b] {
                if !valid_name(name) {
                    return Err(parse_err(format!("invalid variable name `{name}`")));
                }
            }
            if a == b {
                return Err(NetworkError::SelfEdge {
                    line,
                    name: a.to_string(),
                });
            }
            let set = RelationSet::parse(tail)
                .map_err(|e| parse_err(e.to_string()))?;
            if set.is_empty() {
                return Err(parse_err("expected at least one relation".to_string()));
            }
            let i = net.variable(a);
            let j = net.variable(b);
            net.constrain(i, j, set);
        }
        Ok(net)
    }

    /// Writes the network back in its input format: one line per stored
    /// edge, first-appearance order, canonical relation ordering.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        for (i, j, set) in self.stored_edges() {
            out.push_str(&format!("{} {} : {}\n", self.names[i], self.names[j], set));
        }
        out
    }

    /// Algebraic closure: refines every edge to the least fixpoint of
    /// `edge(i,j) ∩= compose(edge(i,k), edge(k,j))`, or reports the first
    /// edge that empties.
    pub fn path_consistency(&self) -> Result<Network, Inconsistent> {
        let mut net = self.clone();
        let n = net.len();
        let mut queue: VecDeque<(usize, usize)> = net.order.clone().into();
        // A parsed edge can already be empty (duplicate lines intersecting
        // to nothing); report it before propagating.
        let empty = net.stored_edges().find(|&(_, _, s)| s.is_empty());
        if let Some((i, j, _)) = empty {
            return Err(net.verdict(i, j));
        }
        while let Some((i, j)) = queue.pop_front() {
            let rij = net.relation(i, j);
            for k in 0..n {
                if k == i || k == j {
                    continue;
                }
                // Refine (i,k) through j and (k,j) through i.
                let updates = [
                    (i, k, compose_sets(rij, net.relation(j, k))),
                    (k, j, compose_sets(net.relation(k, i), rij)),
                ];
                for (a, b, via) in updates {
                    let old = net.relation(a, b);
                    let new = old.intersection(via);
                    if new != old {
                        net.set_relation(a, b, new);
                        if new.is_empty() {
                            return Err(net.verdict(a, b));
                        }
                        let key = if a < b { (a, b) } else { (b, a) };
                        if !queue.contains(&key) {
                            queue.push_back(key);
                        }
                    }
                }
            }
        }
        Ok(net)
    }

    fn verdict(&self, i: usize, j: usize) -> Inconsistent {
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        Inconsistent {
            pair: (self.names[i].clone(), self.names[j].clone()),
        }
    }

    /// True when every constraint of `self` is a subset of the matching
    /// constraint of `other` (same variables assumed).
    pub fn refines(&self, other: &Network) -> bool {
        debug_assert_eq!(self.names, other.names);
        let n = self.len();
        (0..n).all(|i| {
            (i + 1..n).all(|j| self.relation(i, j).is_subset(other.relation(i, j)))
        })
    }

    /// Backtracking search for a closed atomic refinement. Deterministic:
    /// always refines the smallest non-singleton edge, trying relations in
    /// canonical display order.
    pub fn solve(&self) -> Option<Scenario> {
        let closed = self.path_consistency().ok()?;
        Self::branch(closed)
    }

    fn branch(net: Network) -> Option<Scenario> {
        let n = net.len();
        let mut pick: Option<(usize, usize, RelationSet)> = None;
        for i in 0..n {
            for j in i + 1..n {
                let set = net.relation(i, j);
                if set.len() > 1 && pick.map_or(true, |(_, _, best)| set.len() < best.len()) {
                    pick = Some((i, j, set));
                }
            }
        }
        let Some((i, j, set)) = pick else {
            return Some(Scenario { net });
        };
        for r in set.iter() {
            let mut refined = net.clone();
            refined.set_relation(i, j, RelationSet::singleton(r));
            if let Ok(closed) = refined.path_consistency() {
                if let Some(sc) = Self::branch(closed) {
                    return Some(sc);
                }
            }
        }
        None
    }
}

/// A closed atomic refinement of a network: every pair carries exactly one
/// basic relation and every triple satisfies the composition table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scenario {
    net: Network,
}

impl Scenario {
    /// The underlying (complete, atomic) network.
    pub fn network(&self) -> &Network {
        &self.net
    }

    /// Variable names in first-appearance order.
    pub fn names(&self) -> &[String] {
        self.net.names()
    }

    /// The single relation between `i` and `j`.
    pub fn relation(&self, i: usize, j: usize) -> BasicRelation {
        self.net
            .relation(i, j)
            .as_singleton()
            .expect("scenario edges are atomic")
    }

    /// One line per pair `i < j`, in index order.
    pub fn serialize(&self) -> String {
        let names = self.net.names();
        let mut out = String::new();
        for i in 0..names.len() {
            for j in i + 1..names.len() {
                out.push_str(&format!(
                    "{} {} : {}\n",
                    names[i],
                    names[j],
                    self.relation(i, j)
                ));
            }
        }
        out
    }

    /// Assigns integer-rank rational endpoints reproducing every edge:
    /// endpoint equalities are merged, the strict-precedence graph is
    /// topologically ranked by longest path, and each variable becomes the
    /// interval of its two ranks.
    pub fn realize(&self) -> Result<Vec<(String, RatInterval)>, NetworkError> {
        let names = self.net.names();
        let n = names.len();
        // Endpoint nodes: start of var v is 2v, end is 2v+1.
        let mut uf = UnionFind::new();
        for _ in 0..2 * n {
            uf.push();
        }
        for i in 0..n {
            for j in i + 1..n {
                for (a, b) in equalities(self.relation(i, j), i, j) {
                    uf.union(a, b);
                }
            }
        }
        let mut strict: Vec<(usize, usize)> = (0..n).map(|v| (2 * v, 2 * v + 1)).collect();
        for i in 0..n {
            for j in i + 1..n {
                strict.extend(precedences(self.relation(i, j), i, j));
            }
        }
        let class_edges: Vec<(usize, usize)> = strict
            .iter()
            .map(|&(a, b)| (uf.find(a), uf.find(b)))
            .collect();
        // Longest-path ranks via Kahn's algorithm over the class graph.
        let mut indegree: BTreeMap<usize, usize> = BTreeMap::new();
        for node in (0..2 * n).map(|x| uf.find(x)) {
            indegree.entry(node).or_insert(0);
        }
        for &(_, b) in &class_edges {
            *indegree.entry(b).or_insert(0) += 1;
        }
        let mut rank: BTreeMap<usize, i64> = BTreeMap::new();
        let mut ready: VecDeque<usize> = indegree
            .iter()
            .filter(|&(_, &d)| d == 0)
            .map(|(&node, _)| node)
            .collect();
        for &node in &ready {
            rank.insert(node, 0);
        }
        let total = indegree.len();
        let mut done = 0;
        while let Some(node) = ready.pop_front() {
            done += 1;
            let base = rank[&node];
            for &(a, b) in &class_edges {
                if a != node {
                    continue;
                }
                let entry = rank.entry(b).or_insert(0);
                *entry = (*entry).max(base + 1);
                let d = indegree.get_mut(&b).expect("edge target tracked");
                *d -= 1;
                if *d == 0 {
                    ready.push_back(b);
                }
            }
        }
        if done != total {
            // Some class never reached indegree 0: a precedence cycle.
            let witness = (0..n)
                .find(|&v| !rank.contains_key(&uf.find(2 * v)) || !rank.contains_key(&uf.find(2 * v + 1)))
                .map(|v| names[v].clone())
                .unwrap_or_else(|| "?".to_string());
            return Err(NetworkError::RealizationFailure { witness });
        }
        let mut out = Vec::with_capacity(n);
        for (v, name) in names.iter().enumerate() {
            let s = rank[&uf.find(2 * v)];
            let e = rank[&uf.find(2 * v + 1)];
            // s < e is forced by the per-variable strict edge.
            out.push((name.clone(), RatInterval::from_ints(s, e)));
        }
        Ok(out)
    }

    /// Classifies a realization back into relations and checks every edge.
    pub fn verify_realization(&self, assignment: &[(String, RatInterval)]) -> bool {
        let n = assignment.len();
        if n != self.net.len() {
            return false;
        }
        (0..n).all(|i| {
            (i + 1..n).all(|j| classify(&assignment[i].1, &assignment[j].1) == self.relation(i, j))
        })
    }
}

/// Endpoint equalities implied by `r` between variables `i` and `j`.
fn equalities(r: BasicRelation, i: usize, j: usize) -> Vec<(usize, usize)> {
    use BasicRelation::*;
    let (si, ei, sj, ej) = (2 * i, 2 * i + 1, 2 * j, 2 * j + 1);
    match r {
        Equals => vec![(si, sj), (ei, ej)],
        Starts | StartedBy => vec![(si, sj)],
        Finishes | FinishedBy => vec![(ei, ej)],
        Meets => vec![(ei, sj)],
        MetBy => vec![(ej, si)],
        _ => Vec::new(),
    }
}

/// Strict endpoint precedences implied by `r` between `i` and `j`.
fn precedences(r: BasicRelation, i: usize, j: usize) -> Vec<(usize, usize)> {
    use BasicRelation::*;
    let (si, ei, sj, ej) = (2 * i, 2 * i + 1, 2 * j, 2 * j + 1);
    match r {
        Before => vec![(ei, sj)],
        Meets => vec![],
        Overlaps => vec![(si, sj), (sj, ei), (ei, ej)],
        FinishedBy => vec![(si, sj)],
        Contains => vec![(si, sj), (ej, ei)],
        Starts => vec![(ei, ej)],
        Equals => vec![],
        StartedBy => vec![(ej, ei)],
        During => vec![(sj, si), (ei, ej)],
        Finishes => vec![(sj, si)],
        OverlappedBy => vec![(sj, si), (si, ej), (ej, ei)],
        MetBy => vec![],
        After => vec![(ej, si)],
    }
}
