//! Symbolic derivation state: interval variables, meets-literals and the
//! rules that saturate them.
//!
//! A state is a conjunction of literals `x || y` ("x meets y") over interval
//! variables, plus interval equalities. The representation exploits what the
//! axioms already say about meeting points: `M1` makes the meeting point of
//! two intervals unique, so `x || y` is stored as "the end point of `x` and
//! the start point of `y` lie in the same point class". Point classes live
//! in a union-find; `M1` and `M4` then become class merges rather than
//! explicit inference steps, while the trace still records rule instances so
//! proofs can be replayed.
//!
//! A state is unsatisfiable exactly when the strict-precedence graph over
//! point classes (every interval contributes `start < end`) has a cycle. A
//! 1-cycle is a violation of `meets_irrefl` (some interval meets itself), a
//! 2-cycle of `meets_asym`; longer cycles are exposed by summing adjacent
//! intervals with `M5` until one of those two shapes appears
//! ([`DerivationState::refute`]).

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::relation::BasicRelation;
use crate::uf::UnionFind;

use super::schema::{schema, SchemaTerm};

/// Index of an interval variable within its state.
pub type VarId = usize;

/// Where an interval variable came from, for trace readability.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VarOrigin {
    /// Part of the problem statement (including schema-bound witnesses of
    /// the hypotheses).
    Given,
    /// Neighbor interval created by M3.
    M3Fresh,
    /// Sum interval created by M5.
    M5Sum,
    /// Witness interval asserted by a case of an M2 split.
    M2Witness,
}

/// An interval variable.
#[derive(Debug, Clone)]
pub struct IntervalVar {
    pub id: VarId,
    pub name: String,
    pub origin: VarOrigin,
}

/// Which endpoint of an interval an operation targets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Start,
    End,
}

/// A recorded rule application.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RuleApp {
    /// Hypothesis `(p, q) ∈ r` unfolded into its literal schema.
    Schema {
        relation: BasicRelation,
        p: VarId,
        q: VarId,
        bound: Vec<VarId>,
    },
    /// Interval equality merge (`e` schema or an M4 consequence).
    EqMerge { kept: VarId, merged: VarId },
    /// `M1` instance: premises justify the derived literal `conclusion`.
    M1 {
        premises: Option<[(VarId, VarId); 3]>,
        conclusion: (VarId, VarId),
    },
    /// `M3`: `fresh` is an outer neighbor of `of` on the given side.
    M3 { of: VarId, side: Side, fresh: VarId },
    /// `M4`: two intervals with the same start and end class are equal.
    M4 { kept: VarId, merged: VarId },
    /// `M5`: `sum` spans `left` followed by `right`.
    M5 {
        left: VarId,
        right: VarId,
        sum: VarId,
    },
    /// One case of an `M2` split committed to this state.
    M2Case {
        left: (VarId, VarId),
        right: (VarId, VarId),
        case: SplitCase,
        witness: Option<VarId>,
    },
}

/// The three cases of an `M2` split, ordered as in the axiom.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SplitCase {
    /// The two meeting points coincide.
    Equal,
    /// The first meeting point strictly precedes the second.
    FirstPrecedes,
    /// The second meeting point strictly precedes the first.
    SecondPrecedes,
}

impl SplitCase {
    /// One-character tag used in rendered proof trees.
    pub fn tag(self) -> char {
        match self {
            SplitCase::Equal => '=',
            SplitCase::FirstPrecedes => '<',
            SplitCase::SecondPrecedes => '>',
        }
    }
}

/// Why a state is contradictory.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Contradiction {
    /// `meets_irrefl` violated: the interval meets itself.
    Irrefl(VarId),
    /// `meets_asym` violated: the intervals meet each other both ways.
    Asym(VarId, VarId),
    /// `meets_atrans` violated: `x || y || z` yet also `x || z`.
    Atrans(VarId, VarId, VarId),
}

/// Failures of derivation-engine operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DerivationError {
    #[error("M5 precondition failed: `{x}` does not meet `{y}`")]
    M5Precondition { x: String, y: String },
    #[error("M2 split literal `{x} || {y}` does not hold in the state")]
    SplitLiteralMissing { x: String, y: String },
    #[error("no schema for {relation} matches the closed leaf")]
    SchemaMatchFailed { relation: BasicRelation },
    #[error("leaf matches more than one relation schema: {first} and {second}")]
    AmbiguousLeaf {
        first: BasicRelation,
        second: BasicRelation,
    },
    #[error("split depth exceeded the template bound of 3")]
    DepthExceeded,
    #[error("state is neither contradictory nor refutable: no precedence cycle")]
    NoContradictionFound,
    #[error("no span path between the required point classes")]
    NoSpanPath,
}

/// A conjunction of meets-literals over interval variables.
#[derive(Debug, Clone, Default)]
pub struct DerivationState {
    vars: Vec<IntervalVar>,
    /// Point classes; var `v` owns points `2v` (start) and `2v + 1` (end).
    points: UnionFind,
    /// Interval-equality classes.
    var_classes: UnionFind,
    /// Literals asserted directly (schema instantiation, M2 witnesses, M3,
    /// M5 conclusions, committed M1 conclusions), in assertion order.
    asserted: Vec<(VarId, VarId)>,
    asserted_set: BTreeSet<(VarId, VarId)>,
    trace: Vec<RuleApp>,
    contradiction: Option<Contradiction>,
    names: BTreeSet<String>,
}

impl DerivationState {
    pub fn new() -> DerivationState {
        DerivationState::default()
    }

    /// Adds a fresh interval variable. The name is uniquified if taken.
    pub fn add_var(&mut self, name_hint: &str, origin: VarOrigin) -> VarId {
        let mut name = name_hint.to_string();
        let mut n = 1u32;
        while self.names.contains(&name) {
            n += 1;
            name = format!("{name_hint}{n}");
        }
        self.names.insert(name.clone());
        let id = self.vars.len();
        self.vars.push(IntervalVar { id, name, origin });
        self.points.push();
        self.points.push();
        self.var_classes.push();
        id
    }

    pub fn var(&self, v: VarId) -> &IntervalVar {
        &self.vars[v]
    }

    pub fn var_count(&self) -> usize {
        self.vars.len()
    }

    pub fn name(&self, v: VarId) -> &str {
        &self.vars[v].name
    }

    pub fn trace(&self) -> &[RuleApp] {
        &self.trace
    }

    pub fn contradiction(&self) -> Option<&Contradiction> {
        self.contradiction.as_ref()
    }

    /// Asserted literals in assertion order.
    pub fn asserted(&self) -> &[(VarId, VarId)] {
        &self.asserted
    }

    /// Point-class handle of an endpoint.
    pub fn endpoint_class(&mut self, v: VarId, side: Side) -> usize {
        let point = match side {
            Side::Start => 2 * v,
            Side::End => 2 * v + 1,
        };
        self.points.find(point)
    }

    /// The derived meets relation: `x || y` holds when `x`'s end point and
    /// `y`'s start point share a class.
    pub fn meets(&mut self, x: VarId, y: VarId) -> bool {
        let e = self.endpoint_class(x, Side::End);
        let s = self.endpoint_class(y, Side::Start);
        e == s
    }

    /// True when exactly this literal was asserted, without appeal to
    /// interval equalities.
    pub fn is_asserted_verbatim(&self, x: VarId, y: VarId) -> bool {
        self.asserted_set.contains(&(x, y))
    }

    /// True when the literal was asserted directly (not merely derived),
    /// up to interval equality.
    pub fn is_asserted(&mut self, x: VarId, y: VarId) -> bool {
        if self.asserted_set.contains(&(x, y)) {
            return true;
        }
        let (cx, cy) = (self.var_classes.find(x), self.var_classes.find(y));
        // Slow path: compare modulo interval equality.
        for i in 0..self.asserted.len() {
            let (a, b) = self.asserted[i];
            if self.var_classes.find(a) == cx && self.var_classes.find(b) == cy {
                return true;
            }
        }
        false
    }

    /// Interval variables `x` meeting `v` (derived), lowest id first.
    pub fn meeting_into(&mut self, v: VarId) -> Vec<VarId> {
        let target = self.endpoint_class(v, Side::Start);
        (0..self.vars.len())
            .filter(|&w| self.canonical(w) == w && self.endpoint_class(w, Side::End) == target)
            .collect()
    }

    /// Interval variables `x` that `v` meets (derived), lowest id first.
    pub fn meeting_out_of(&mut self, v: VarId) -> Vec<VarId> {
        let target = self.endpoint_class(v, Side::End);
        (0..self.vars.len())
            .filter(|&w| self.canonical(w) == w && self.endpoint_class(w, Side::Start) == target)
            .collect()
    }

    /// Lowest-id member of `v`'s interval-equality class.
    pub fn canonical(&mut self, v: VarId) -> VarId {
        let rep = self.var_classes.find(v);
        (0..self.vars.len())
            .find(|&w| self.var_classes.find(w) == rep)
            .expect("class has a member")
    }

    /// Records and applies a meets literal, then saturates.
    pub fn assert_meets(&mut self, x: VarId, y: VarId) {
        self.push_meets(x, y);
        self.saturate();
    }

    fn push_meets(&mut self, x: VarId, y: VarId) {
        if self.asserted_set.insert((x, y)) {
            self.asserted.push((x, y));
        }
        self.points.union(2 * x + 1, 2 * y);
    }

    /// Merges two interval variables (and their endpoint classes).
    pub fn merge_vars(&mut self, a: VarId, b: VarId) {
        if self.var_classes.same(a, b) {
            return;
        }
        let (kept, merged) = if self.canonical(a) <= self.canonical(b) {
            (a, b)
        } else {
            (b, a)
        };
        self.var_classes.union(kept, merged);
        self.points.union(2 * kept, 2 * merged);
        self.points.union(2 * kept + 1, 2 * merged + 1);
        self.trace.push(RuleApp::EqMerge { kept, merged });
    }

    /// Unfolds the hypothesis `(p, q) ∈ r` into its meets-literal schema,
    /// creating the schema's bound witnesses, then saturates.
    pub fn instantiate_schema(&mut self, r: BasicRelation, p: VarId, q: VarId) {
        let sch = schema(r);
        let bound: Vec<VarId> = sch
            .bound
            .iter()
            .map(|hint| self.add_var(hint, VarOrigin::Given))
            .collect();
        self.trace.push(RuleApp::Schema {
            relation: r,
            p,
            q,
            bound: bound.clone(),
        });
        if sch.equality {
            self.merge_vars(p, q);
        }
        let resolve = |term: SchemaTerm| -> VarId {
            match term {
                SchemaTerm::P => p,
                SchemaTerm::Q => q,
                SchemaTerm::Bound(i) => bound[i],
            }
        };
        for &(a, b) in sch.literals {
            self.push_meets(resolve(a), resolve(b));
        }
        self.saturate();
    }

    /// `M3`: creates an outer neighbor of `v` (an interval meeting `v` for
    /// `Side::Start`, or met by `v` for `Side::End`).
    pub fn add_m3(&mut self, v: VarId, side: Side) -> VarId {
        let fresh = self.add_var("c", VarOrigin::M3Fresh);
        self.trace.push(RuleApp::M3 { of: v, side, fresh });
        match side {
            Side::Start => self.push_meets(fresh, v),
            Side::End => self.push_meets(v, fresh),
        }
        self.saturate();
        fresh
    }

    /// `M5`: creates the sum interval spanning `x` then `y`.
    ///
    /// Requires `x || y`. Per the axiom's shape, the sum's asserted literals
    /// connect it to one neighbor on each side when one exists (the
    /// lowest-id interval asserted to meet `x`, and the lowest-id interval
    /// `y` is asserted to meet); everything else follows from the point
    /// classes.
    pub fn add_m5_sum(&mut self, x: VarId, y: VarId) -> Result<VarId, DerivationError> {
        if !self.meets(x, y) {
            return Err(DerivationError::M5Precondition {
                x: self.name(x).to_string(),
                y: self.name(y).to_string(),
            });
        }
        let hint = format!("{}{}", self.name(x), self.name(y));
        let sum = self.add_var(&hint, VarOrigin::M5Sum);
        self.trace.push(RuleApp::M5 { left: x, right: y, sum });
        self.points.union(2 * sum, 2 * x);
        self.points.union(2 * sum + 1, 2 * y + 1);
        let left_neighbor = self
            .asserted
            .iter()
            .filter(|&&(_, b)| b == x)
            .map(|&(a, _)| a)
            .min();
        if let Some(r) = left_neighbor {
            self.push_meets(r, sum);
        }
        let right_neighbor = self
            .asserted
            .iter()
            .filter(|&&(a, _)| a == y)
            .map(|&(_, b)| b)
            .min();
        if let Some(s) = right_neighbor {
            self.push_meets(sum, s);
        }
        self.saturate();
        Ok(sum)
    }

    /// Runs `M4` merging and contradiction detection to a fixpoint.
    ///
    /// `M1` needs no explicit pass: the point-class representation already
    /// identifies every end point sharing a meeting point, which is exactly
    /// the `M1` closure.
    pub fn saturate(&mut self) {
        loop {
            let mut changed = false;
            // M4: intervals with identical start and end classes are equal.
            let reps: Vec<VarId> = (0..self.vars.len())
                .filter(|&v| self.canonical(v) == v)
                .collect();
            'outer: for (i, &a) in reps.iter().enumerate() {
                for &b in &reps[i + 1..] {
                    if self.endpoint_class(a, Side::Start) == self.endpoint_class(b, Side::Start)
                        && self.endpoint_class(a, Side::End) == self.endpoint_class(b, Side::End)
                    {
                        self.var_classes.union(a, b);
                        self.points.union(2 * a, 2 * b);
                        self.points.union(2 * a + 1, 2 * b + 1);
                        self.trace.push(RuleApp::M4 { kept: a, merged: b });
                        changed = true;
                        break 'outer;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        self.detect_contradiction();
    }

    fn detect_contradiction(&mut self) {
        if self.contradiction.is_some() {
            return;
        }
        let reps: Vec<VarId> = (0..self.vars.len())
            .filter(|&v| self.canonical(v) == v)
            .collect();
        // 1-cycles: an interval whose start and end coincide meets itself.
        for &v in &reps {
            if self.endpoint_class(v, Side::Start) == self.endpoint_class(v, Side::End) {
                // Prefer the full antitransitivity shape when neighbors
                // witness it: x || v, v || z and hence x || z.
                let x = self.meeting_into(v).into_iter().find(|&w| w != v);
                let z = self.meeting_out_of(v).into_iter().find(|&w| w != v);
                self.contradiction = Some(match (x, z) {
                    (Some(x), Some(z)) if x != z => Contradiction::Atrans(x, v, z),
                    _ => Contradiction::Irrefl(v),
                });
                return;
            }
        }
        // 2-cycles: two intervals meeting each other both ways.
        for (i, &a) in reps.iter().enumerate() {
            for &b in &reps[i + 1..] {
                if self.meets(a, b) && self.meets(b, a) {
                    self.contradiction = Some(Contradiction::Asym(a, b));
                    return;
                }
            }
        }
    }

    /// Shortest strict-precedence cycle over point classes, as the list of
    /// interval variables contributing its edges (each meets the next,
    /// cyclically). `None` when the precedence graph is acyclic.
    pub fn find_shortest_cycle(&mut self) -> Option<Vec<VarId>> {
        let reps: Vec<VarId> = (0..self.vars.len())
            .filter(|&v| self.canonical(v) == v)
            .collect();
        let edges: Vec<(usize, usize, VarId)> = reps
            .iter()
            .map(|&v| {
                (
                    self.endpoint_class(v, Side::Start),
                    self.endpoint_class(v, Side::End),
                    v,
                )
            })
            .collect();
        let mut best: Option<Vec<VarId>> = None;
        let start_classes: BTreeSet<usize> = edges.iter().map(|&(s, _, _)| s).collect();
        for start_class in start_classes {
            // BFS over classes, remembering the edge list taken.
            let mut queue = VecDeque::new();
            let mut seen = BTreeSet::new();
            queue.push_back((start_class, Vec::<VarId>::new()));
            seen.insert(start_class);
            while let Some((class, path)) = queue.pop_front() {
                if let Some(b) = &best {
                    if path.len() + 1 > b.len() {
                        continue;
                    }
                }
                for &(s, e, v) in &edges {
                    if s != class {
                        continue;
                    }
                    let mut next_path = path.clone();
                    next_path.push(v);
                    if e == start_class {
                        if best.as_ref().map_or(true, |b| next_path.len() < b.len()) {
                            best = Some(next_path);
                        }
                    } else if seen.insert(e) {
                        queue.push_back((e, next_path));
                    }
                }
            }
        }
        best
    }

    /// Drives an unsatisfiable state to an explicit rule violation.
    ///
    /// Saturation flags 1- and 2-cycles directly. Longer precedence cycles
    /// are semantically impossible but not yet syntactic violations of the
    /// three negative axioms, so this repeatedly sums two adjacent cycle
    /// intervals with `M5` — shortening the cycle by one — until a flagged
    /// shape appears.
    pub fn refute(&mut self) -> Result<Contradiction, DerivationError> {
        loop {
            if let Some(c) = &self.contradiction {
                return Ok(c.clone());
            }
            let cycle = self
                .find_shortest_cycle()
                .ok_or(DerivationError::NoContradictionFound)?;
            debug_assert!(cycle.len() >= 3, "short cycles are flagged by saturate");
            self.add_m5_sum(cycle[0], cycle[1])?;
        }
    }

    /// Renders a literal for messages.
    pub fn literal(&self, x: VarId, y: VarId) -> String {
        format!("{}||{}", self.vars[x].name, self.vars[y].name)
    }

    /// Human-readable description of a contradiction.
    pub fn describe(&self, c: &Contradiction) -> String {
        match c {
            Contradiction::Irrefl(v) => {
                format!("meets_irrefl on {}", self.vars[*v].name)
            }
            Contradiction::Asym(a, b) => {
                format!("meets_asym on {}, {}", self.vars[*a].name, self.vars[*b].name)
            }
            Contradiction::Atrans(x, y, z) => format!(
                "meets_atrans on {}, {}, {}",
                self.vars[*x].name, self.vars[*y].name, self.vars[*z].name
            ),
        }
    }
}

impl fmt::Display for DerivationState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lits: Vec<String> = self
            .asserted
            .iter()
            .map(|&(x, y)| self.literal(x, y))
            .collect();
        write!(f, "{{{}}}", lits.join(", "))
    }
}

/// Comparison knowledge about two point classes.
pub type ClassOrdering = Option<std::cmp::Ordering>;

impl DerivationState {
    /// What the state knows about the order of two point classes: `Equal`
    /// when they coincide, `Less`/`Greater` when a chain of intervals
    /// connects them, `None` when unconstrained.
    pub fn compare_classes(&mut self, a: usize, b: usize) -> ClassOrdering {
        use std::cmp::Ordering::*;
        if a == b {
            return Some(Equal);
        }
        if self.class_reaches(a, b) {
            return Some(Less);
        }
        if self.class_reaches(b, a) {
            return Some(Greater);
        }
        None
    }

    fn class_reaches(&mut self, from: usize, to: usize) -> bool {
        let reps: Vec<VarId> = (0..self.vars.len())
            .filter(|&v| self.canonical(v) == v)
            .collect();
        let edges: Vec<(usize, usize)> = reps
            .iter()
            .map(|&v| {
                (
                    self.endpoint_class(v, Side::Start),
                    self.endpoint_class(v, Side::End),
                )
            })
            .collect();
        let mut seen = BTreeSet::new();
        let mut queue = VecDeque::from([from]);
        seen.insert(from);
        while let Some(c) = queue.pop_front() {
            for &(s, e) in &edges {
                if s == c && seen.insert(e) {
                    if e == to {
                        return true;
                    }
                    queue.push_back(e);
                }
            }
        }
        false
    }

    /// Finds an interval spanning exactly the classes `from → to`, if any.
    pub fn find_span(&mut self, from: usize, to: usize) -> Option<VarId> {
        (0..self.vars.len()).find(|&v| {
            self.canonical(v) == v
                && self.endpoint_class(v, Side::Start) == from
                && self.endpoint_class(v, Side::End) == to
        })
    }

    /// Shortest chain of intervals leading from class `from` to class `to`,
    /// each meeting the next. Deterministic: BFS exploring intervals in id
    /// order.
    pub fn find_chain(&mut self, from: usize, to: usize) -> Option<Vec<VarId>> {
        let reps: Vec<VarId> = (0..self.vars.len())
            .filter(|&v| self.canonical(v) == v)
            .collect();
        let edges: Vec<(usize, usize, VarId)> = reps
            .iter()
            .map(|&v| {
                (
                    self.endpoint_class(v, Side::Start),
                    self.endpoint_class(v, Side::End),
                    v,
                )
            })
            .collect();
        let mut queue = VecDeque::from([(from, Vec::new())]);
        let mut seen = BTreeSet::from([from]);
        while let Some((class, path)) = queue.pop_front() {
            if class == to {
                return Some(path);
            }
            for &(s, e, v) in &edges {
                if s == class && seen.insert(e) {
                    let mut next = path.clone();
                    next.push(v);
                    queue.push_back((e, next));
                }
            }
        }
        None
    }

    /// Builds (or finds) an interval spanning `from → to`, summing along the
    /// shortest chain with `M5` when no single interval does.
    pub fn ensure_span(&mut self, from: usize, to: usize) -> Result<VarId, DerivationError> {
        if let Some(v) = self.find_span(from, to) {
            return Ok(v);
        }
        let chain = self.find_chain(from, to).ok_or(DerivationError::NoSpanPath)?;
        debug_assert!(chain.len() >= 2);
        let mut cur = chain[0];
        for &next in &chain[1..] {
            cur = self.add_m5_sum(cur, next)?;
        }
        Ok(cur)
    }

    /// Ensures some interval meets `v` (side `Start`) or is met by `v`
    /// (side `End`), creating one via `M3` if needed; returns it.
    pub fn ensure_neighbor(&mut self, v: VarId, side: Side) -> VarId {
        let existing = match side {
            Side::Start => self.meeting_into(v).into_iter().next(),
            Side::End => self.meeting_out_of(v).into_iter().next(),
        };
        existing.unwrap_or_else(|| self.add_m3(v, side))
    }

    /// Records an `M1` justification for a literal that holds at the class
    /// level but was never asserted, then treats it as asserted.
    ///
    /// The premise triple `p₀ || q₀`, `p₀ || y`, `x || q₀` is recovered from
    /// the asserted literals around the shared meeting class when possible.
    pub fn justify_by_m1(&mut self, x: VarId, y: VarId) {
        if self.is_asserted(x, y) {
            return;
        }
        debug_assert!(self.meets(x, y));
        let class = self.endpoint_class(x, Side::End);
        let mut premise: Option<[(VarId, VarId); 3]> = None;
        let snapshot = self.asserted.clone();
        'search: for &(p0, s0) in &snapshot {
            // need p0 || y asserted, with p0's end in the meeting class
            if self.endpoint_class(p0, Side::End) != class {
                continue;
            }
            if !(s0 == y || self.var_classes.same(s0, y)) {
                continue;
            }
            for &(x0, q0) in &snapshot {
                if !(x0 == x || self.var_classes.same(x0, x)) {
                    continue;
                }
                if self.endpoint_class(q0, Side::Start) != class {
                    continue;
                }
                if self.asserted_set.contains(&(p0, q0)) {
                    premise = Some([(p0, q0), (p0, y), (x, q0)]);
                    break 'search;
                }
            }
        }
        self.trace.push(RuleApp::M1 {
            premises: premise,
            conclusion: (x, y),
        });
        if self.asserted_set.insert((x, y)) {
            self.asserted.push((x, y));
        }
    }

    /// The three successor states of an `M2` split on two meets-literals.
    ///
    /// Case order follows the axiom: the meeting points coincide; the first
    /// precedes the second (fresh witness between them); the second precedes
    /// the first (fresh witness the other way).
    pub fn split_m2(
        &mut self,
        left: (VarId, VarId),
        right: (VarId, VarId),
    ) -> Result<[DerivationState; 3], DerivationError> {
        for (x, y) in [left, right] {
            if !self.meets(x, y) {
                return Err(DerivationError::SplitLiteralMissing {
                    x: self.name(x).to_string(),
                    y: self.name(y).to_string(),
                });
            }
        }
        let (p0, q0) = left;
        let (r0, s0) = right;
        let mut equal = self.clone();
        equal.trace.push(RuleApp::M2Case {
            left,
            right,
            case: SplitCase::Equal,
            witness: None,
        });
        equal.push_meets(p0, s0);
        equal.saturate();

        let mut first = self.clone();
        let t1 = first.add_var("t", VarOrigin::M2Witness);
        first.trace.push(RuleApp::M2Case {
            left,
            right,
            case: SplitCase::FirstPrecedes,
            witness: Some(t1),
        });
        first.push_meets(p0, t1);
        first.push_meets(t1, s0);
        first.saturate();

        let mut second = self.clone();
        let t2 = second.add_var("t", VarOrigin::M2Witness);
        second.trace.push(RuleApp::M2Case {
            left,
            right,
            case: SplitCase::SecondPrecedes,
            witness: Some(t2),
        });
        second.push_meets(r0, t2);
        second.push_meets(t2, q0);
        second.saturate();

        Ok([equal, first, second])
    }
}
