//! The concrete endpoint model: intervals as rational start/end pairs.
//!
//! This module is the semantic ground truth for the rest of the crate. An
//! interval is a pair of exact rationals `start < end`; `meets` holds when
//! one interval's end equals the other's start. [`classify`] maps any
//! interval pair to its unique basic relation, and [`enumerate_configs`]
//! enumerates *order types* — the finitely many ways the endpoints of `n`
//! intervals can be arranged on the line. Composition over three-interval
//! order types yields [`oracle_table`], an implementation of the composition
//! table that is independent of the embedded constant and of the symbolic
//! derivation engine.
//!
//! Exact rationals avoid the float-equality trap: `meets` is an equality
//! test, so endpoints must compare exactly.

use std::collections::BTreeSet;
use std::fmt;

use num_rational::Rational64;
use thiserror::Error;

use crate::relation::{BasicRelation, RelationSet};
use crate::table::CompositionTable;

/// Error constructing or parsing model values.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("interval start {start} is not strictly before end {end}")]
    EmptyInterval { start: Rational64, end: Rational64 },
    #[error("cannot parse `{0}` as a rational (expected `n` or `n/d` with d ≠ 0)")]
    BadRational(String),
}

/// Parses a rational literal: an integer like `-3` or a fraction like `7/2`.
///
/// A zero denominator is rejected rather than panicking inside
/// `Rational64::new`.
pub fn parse_rational(text: &str) -> Result<Rational64, ModelError> {
    let bad = || ModelError::BadRational(text.to_string());
    let (numer, denom) = match text.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (text, None),
    };
    let n: i64 = numer.trim().parse().map_err(|_| bad())?;
    let d: i64 = match denom {
        Some(d) => d.trim().parse().map_err(|_| bad())?,
        None => 1,
    };
    if d == 0 {
        return Err(bad());
    }
    Ok(Rational64::new(n, d))
}

/// A closed-open interval of rationals with positive length.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RatInterval {
    start: Rational64,
    end: Rational64,
}

impl RatInterval {
    /// Builds an interval; fails unless `start < end`.
    pub fn new(start: Rational64, end: Rational64) -> Result<RatInterval, ModelError> {
        if start < end {
            Ok(RatInterval { start, end })
        } else {
            Err(ModelError::EmptyInterval { start, end })
        }
    }

    /// Convenience constructor from integers; panics unless `start < end`.
    pub fn from_ints(start: i64, end: i64) -> RatInterval {
        RatInterval::new(Rational64::from_integer(start), Rational64::from_integer(end))
            .expect("integer interval must have start < end")
    }

    pub fn start(&self) -> Rational64 {
        self.start
    }

    pub fn end(&self) -> Rational64 {
        self.end
    }

    /// The model's meets relation: this interval ends exactly where `other`
    /// starts.
    pub fn meets(&self, other: &RatInterval) -> bool {
        self.end == other.start
    }
}

impl fmt::Display for RatInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.start, self.end)
    }
}

/// The unique basic relation holding between two concrete intervals.
pub fn classify(p: &RatInterval, q: &RatInterval) -> BasicRelation {
    use std::cmp::Ordering::*;
    use BasicRelation::*;
    match (p.start.cmp(&q.start), p.end.cmp(&q.end)) {
        (Equal, Equal) => Equals,
        (Equal, Less) => Starts,
        (Equal, Greater) => StartedBy,
        (Less, Equal) => FinishedBy,
        (Greater, Equal) => Finishes,
        (Less, Greater) => Contains,
        (Greater, Less) => During,
        (Less, Less) => match p.end.cmp(&q.start) {
            Less => Before,
            Equal => Meets,
            Greater => Overlaps,
        },
        (Greater, Greater) => match q.end.cmp(&p.start) {
            Less => After,
            Equal => MetBy,
            Greater => OverlappedBy,
        },
    }
}

/// An order type of the `2n` endpoints of `n` intervals.
///
/// Each interval carries a `(start_rank, end_rank)` pair; ranks are
/// normalized to the contiguous range `1..=k` where `k` is the number of
/// distinct endpoint values. Two endpoint assignments with the same ranks
/// are qualitatively identical.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EndpointConfig {
    ranks: Vec<(u32, u32)>,
}

impl EndpointConfig {
    /// Number of intervals.
    pub fn len(&self) -> usize {
        self.ranks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.is_empty()
    }

    /// `(start_rank, end_rank)` of interval `i`.
    pub fn ranks(&self, i: usize) -> (u32, u32) {
        self.ranks[i]
    }

    /// Realizes the order type with integer endpoints (rank `k` ↦ `k`).
    pub fn intervals(&self) -> Vec<RatInterval> {
        self.ranks
            .iter()
            .map(|&(s, e)| RatInterval::from_ints(s as i64, e as i64))
            .collect()
    }

    /// Relation between intervals `i` and `j` in this configuration.
    pub fn relation(&self, i: usize, j: usize) -> BasicRelation {
        let intervals = self.intervals();
        classify(&intervals[i], &intervals[j])
    }
}

/// Enumerates every order type of `n` intervals, in lexicographic rank
/// order. `n` is bounded to `1..=4`; beyond that the raw `(2n)^(2n)`
/// assignment space stops being practical.
pub fn enumerate_configs(n: usize) -> Vec<EndpointConfig> {
    assert!((1..=4).contains(&n), "enumerate_configs: n must be in 1..=4, got {n}");
    let points = 2 * n;
    let mut seen: BTreeSet<Vec<(u32, u32)>> = BTreeSet::new();
    let mut assignment = vec![1u32; points];
    loop {
        let valid = (0..n).all(|i| assignment[2 * i] < assignment[2 * i + 1]);
        if valid {
            seen.insert(normalize_ranks(&assignment));
        }
        // advance the odometer over {1..=points}^points
        let mut pos = points;
        loop {
            if pos == 0 {
                return seen
                    .into_iter()
                    .map(|ranks| EndpointConfig { ranks })
                    .collect();
            }
            pos -= 1;
            if assignment[pos] < points as u32 {
                assignment[pos] += 1;
                break;
            }
            assignment[pos] = 1;
        }
    }
}

/// Compresses an endpoint assignment to contiguous ranks `1..=k`.
fn normalize_ranks(assignment: &[u32]) -> Vec<(u32, u32)> {
    let mut values: Vec<u32> = assignment.to_vec();
    values.sort_unstable();
    values.dedup();
    let rank_of = |v: u32| -> u32 { values.binary_search(&v).unwrap() as u32 + 1 };
    assignment
        .chunks_exact(2)
        .map(|pair| (rank_of(pair[0]), rank_of(pair[1])))
        .collect()
}

/// Composition of two basic relations computed purely from the model: over
/// every three-interval order type `(p, z, q)` with `(p, z) ∈ r1` and
/// `(z, q) ∈ r2`, collect the relations holding between `p` and `q`.
pub fn oracle_compose(r1: BasicRelation, r2: BasicRelation) -> RelationSet {
    oracle_table().entry(r1, r2)
}

/// The full composition table recomputed from three-interval order types.
pub fn oracle_table() -> CompositionTable {
    let mut entries = [[RelationSet::EMPTY; 13]; 13];
    for config in enumerate_configs(3) {
        let intervals = config.intervals();
        let (p, z, q) = (&intervals[0], &intervals[1], &intervals[2]);
        let r1 = classify(p, z);
        let r2 = classify(z, q);
        let r = classify(p, q);
        let cell = &mut entries[r1.index()][r2.index()];
        *cell = cell.with(r);
    }
    CompositionTable { entries }
}

/// Outcome of the joint-exhaustiveness check over two-interval order types.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JepdReport {
    /// Number of two-interval order types found.
    pub config_count: usize,
    /// Relations hit, in the order the configurations enumerate.
    pub covered: Vec<BasicRelation>,
}

impl JepdReport {
    /// True when the 13 configurations map one-to-one onto the 13 relations.
    pub fn is_bijective(&self) -> bool {
        let set: RelationSet = self.covered.iter().copied().collect();
        self.config_count == 13 && self.covered.len() == 13 && set == RelationSet::FULL
    }
}

/// Checks that two-interval order types and basic relations correspond
/// one-to-one: every pair of intervals is classified, and each relation
/// arises from exactly one order type.
pub fn verify_jepd() -> JepdReport {
    let configs = enumerate_configs(2);
    let covered: Vec<BasicRelation> = configs.iter().map(|c| c.relation(0, 1)).collect();
    JepdReport {
        config_count: configs.len(),
        covered,
    }
}

/// Result of checking the meets axioms over a finite sample of intervals.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AxiomReport {
    /// Number of individual axiom instances checked.
    pub checks: u64,
    /// Human-readable description of each violation found.
    pub violations: Vec<String>,
}

impl AxiomReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// All intervals with integer endpoints drawn from `lo..=hi`.
pub fn integer_intervals(lo: i64, hi: i64) -> Vec<RatInterval> {
    let mut out = Vec::new();
    for s in lo..hi {
        for e in (s + 1)..=hi {
            out.push(RatInterval::from_ints(s, e));
        }
    }
    out
}

/// Verifies every meets axiom over the sample.
///
/// The universally quantified axioms (irreflexivity, asymmetry,
/// antitransitivity, uniqueness of meeting points) are checked over all
/// tuples from the sample. The existential axioms are checked
/// constructively: the required witness intervals are built from endpoint
/// arithmetic and verified, and for the exclusive three-way disjunction the
/// two non-selected cases are shown impossible by endpoint comparison.
pub fn check_axioms_in_model(sample: &[RatInterval]) -> AxiomReport {
    let mut report = AxiomReport::default();
    let one = Rational64::from_integer(1);
    let meets = |a: &RatInterval, b: &RatInterval| a.meets(b);

    // meets_irrefl: ¬(p || p)
    for p in sample {
        report.checks += 1;
        if meets(p, p) {
            report.violations.push(format!("irrefl: {p} meets itself"));
        }
    }

    // meets_asym: p || q ⟹ ¬(q || p)
    for p in sample {
        for q in sample {
            report.checks += 1;
            if meets(p, q) && meets(q, p) {
                report.violations.push(format!("asym: {p} || {q} and {q} || {p}"));
            }
        }
    }

    // meets_atrans: p || q ∧ q || r ⟹ ¬(p || r)
    for p in sample {
        for q in sample {
            for r in sample {
                report.checks += 1;
                if meets(p, q) && meets(q, r) && meets(p, r) {
                    report
                        .violations
                        .push(format!("atrans: {p} || {q} || {r} but also {p} || {r}"));
                }
            }
        }
    }

    // M1: p || q ∧ p || s ∧ r || q ⟹ r || s
    for p in sample {
        for q in sample {
            if !meets(p, q) {
                continue;
            }
            for s in sample {
                if !meets(p, s) {
                    continue;
                }
                for r in sample {
                    report.checks += 1;
                    if meets(r, q) && !meets(r, s) {
                        report.violations.push(format!(
                            "M1: {p}||{q}, {p}||{s}, {r}||{q} but not {r}||{s}"
                        ));
                    }
                }
            }
        }
    }

    // M4: p || q ∧ q || s ∧ p || r ∧ r || s ⟹ q = r
    for p in sample {
        for q in sample {
            if !meets(p, q) {
                continue;
            }
            for s in sample {
                if !meets(q, s) {
                    continue;
                }
                for r in sample {
                    report.checks += 1;
                    if meets(p, r) && meets(r, s) && q != r {
                        report.violations.push(format!(
                            "M4: {q} and {r} both fill the gap between {p} and {s}"
                        ));
                    }
                }
            }
        }
    }

    // M2: p || q ∧ r || s ⟹ exactly one of
    //   (i) p || s, (ii) ∃t. p||t ∧ t||s, (iii) ∃t. r||t ∧ t||q.
    // The meeting points decide: m1 = end(p), m2 = end(r). Case (i) iff
    // m1 = m2; case (ii) iff m1 < m2 with witness t = [m1, m2]; case (iii)
    // symmetrically. A witness for (ii) must satisfy start(t) = m1 and
    // end(t) = m2, which is an interval only when m1 < m2, so the discarded
    // cases are genuinely impossible rather than merely unsampled.
    for p in sample {
        for q in sample {
            if !meets(p, q) {
                continue;
            }
            for r in sample {
                for s in sample {
                    if !meets(r, s) {
                        continue;
                    }
                    report.checks += 1;
                    let m1 = p.end;
                    let m2 = r.end;
                    let case_i = meets(p, s);
                    let case_ii = m1 < m2;
                    let case_iii = m2 < m1;
                    let selected = u8::from(case_i) + u8::from(case_ii) + u8::from(case_iii);
                    let mut ok = selected == 1;
                    if ok && case_i {
                        ok = m1 == m2;
                    }
                    if ok && case_ii {
                        let t = RatInterval::new(m1, m2).expect("m1 < m2");
                        ok = meets(p, &t) && t.meets(s);
                    }
                    if ok && case_iii {
                        let t = RatInterval::new(m2, m1).expect("m2 < m1");
                        ok = meets(r, &t) && t.meets(q);
                    }
                    if !ok {
                        report.violations.push(format!(
                            "M2: cases not exclusive-exhaustive for {p}||{q}, {r}||{s}"
                        ));
                    }
                }
            }
        }
    }

    // M3: every interval has a neighbor on each side.
    for p in sample {
        report.checks += 1;
        let left = RatInterval::new(p.start - one, p.start).expect("positive length");
        let right = RatInterval::new(p.end, p.end + one).expect("positive length");
        if !(left.meets(p) && p.meets(&right)) {
            report.violations.push(format!("M3: constructed neighbors of {p} do not meet it"));
        }
    }

    // M5: p || q ⟹ ∃ r s t. r||p ∧ p||q ∧ q||s ∧ r||t ∧ t||s  (t spans p+q)
    for p in sample {
        for q in sample {
            if !meets(p, q) {
                continue;
            }
            report.checks += 1;
            let r = RatInterval::new(p.start - one, p.start).expect("positive length");
            let s = RatInterval::new(q.end, q.end + one).expect("positive length");
            let t = RatInterval::new(p.start, q.end).expect("p || q implies start(p) < end(q)");
            if !(r.meets(p) && meets(p, q) && q.meets(&s) && r.meets(&t) && t.meets(&s)) {
                report.violations.push(format!("M5: sum witness fails for {p} || {q}"));
            }
        }
    }

    report
}
