//! The thirteen basic interval relations and sets of them.
//!
//! A pair of intervals on a linear order stands in exactly one of thirteen
//! basic relations: `b` (before), `m` (meets), `ov` (overlaps), `fi`
//! (finished-by), `di` (contains), `s` (starts), `e` (equals), `si`
//! (started-by), `d` (during), `f` (finishes), `ovi` (overlapped-by), `mi`
//! (met-by) and `bi` (after). Indefinite knowledge is a *set* of basic
//! relations; [`RelationSet`] stores one as a 13-bit mask.
//!
//! Basic relations are ordered here so that the converse of the relation at
//! index `i` sits at index `12 - i`; converse of a set is then a bit
//! reversal, and iteration yields the conventional display order
//! `b m ov fi di s e si d f ovi mi bi`.

use std::fmt;
use thiserror::Error;

/// One of the thirteen basic interval relations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[repr(u8)]
pub enum BasicRelation {
    /// `p` ends strictly before `q` starts.
    Before = 0,
    /// `p` ends exactly where `q` starts.
    Meets = 1,
    /// `p` starts first and the interiors overlap.
    Overlaps = 2,
    /// `p` starts first and both end together.
    FinishedBy = 3,
    /// `q` lies strictly inside `p`.
    Contains = 4,
    /// Both start together and `p` ends first.
    Starts = 5,
    /// Same start and same end.
    Equals = 6,
    /// Both start together and `q` ends first.
    StartedBy = 7,
    /// `p` lies strictly inside `q`.
    During = 8,
    /// Both end together and `q` starts first.
    Finishes = 9,
    /// Converse of overlaps.
    OverlappedBy = 10,
    /// `q` ends exactly where `p` starts.
    MetBy = 11,
    /// `q` ends strictly before `p` starts.
    After = 12,
}

pub use BasicRelation::*;

/// All thirteen basic relations in display order.
pub const ALL_RELATIONS: [BasicRelation; 13] = [
    Before, Meets, Overlaps, FinishedBy, Contains, Starts, Equals, StartedBy, During, Finishes,
    OverlappedBy, MetBy, After,
];

/// Error raised when a relation token cannot be parsed.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown relation `{token}` (expected one of b, bi, m, mi, ov, ovi, s, si, f, fi, d, di, e, optionally suffixed ^-1)")]
pub struct ParseRelationError {
    /// The offending input token.
    pub token: String,
}

impl BasicRelation {
    /// Index of this relation in display order (0..13).
    #[inline]
    pub const fn index(self) -> usize {
        self as usize
    }

    /// Relation at the given display-order index. Panics if `i >= 13`.
    #[inline]
    pub const fn from_index(i: usize) -> BasicRelation {
        ALL_RELATIONS[i]
    }

    /// The converse relation: `(p, q) ∈ r` iff `(q, p) ∈ r.converse()`.
    #[inline]
    pub const fn converse(self) -> BasicRelation {
        ALL_RELATIONS[12 - self.index()]
    }

    /// Canonical short name (`i`-suffix spelling for converses).
    pub const fn name(self) -> &'static str {
        match self {
            Before => "b",
            Meets => "m",
            Overlaps => "ov",
            FinishedBy => "fi",
            Contains => "di",
            Starts => "s",
            Equals => "e",
            StartedBy => "si",
            During => "d",
            Finishes => "f",
            OverlappedBy => "ovi",
            MetBy => "mi",
            After => "bi",
        }
    }

    /// Parses a relation token.
    ///
    /// Accepts the canonical names case-insensitively plus the `^-1` converse
    /// spelling (`ov^-1` for `ovi`). Long English names are rejected.
    pub fn parse(token: &str) -> Result<BasicRelation, ParseRelationError> {
        let lower = token.to_ascii_lowercase();
        let (base, conv) = match lower.strip_suffix("^-1") {
            Some(stem) => (stem, true),
            None => (lower.as_str(), false),
        };
        let rel = match base {
            "b" => Before,
            "m" => Meets,
            "ov" => Overlaps,
            "fi" => FinishedBy,
            "di" => Contains,
            "s" => Starts,
            "e" => Equals,
            "si" => StartedBy,
            "d" => During,
            "f" => Finishes,
            "ovi" => OverlappedBy,
            "mi" => MetBy,
            "bi" => After,
            _ => {
                return Err(ParseRelationError {
                    token: token.to_string(),
                })
            }
        };
        Ok(if conv { rel.converse() } else { rel })
    }
}

impl fmt::Display for BasicRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for BasicRelation {
    type Err = ParseRelationError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        BasicRelation::parse(s)
    }
}

/// A set of basic relations, stored as a 13-bit mask.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RelationSet(u16);

const MASK: u16 = (1 << 13) - 1;

impl RelationSet {
    /// The empty set.
    pub const EMPTY: RelationSet = RelationSet(0);

    /// The full set of all thirteen relations.
    pub const FULL: RelationSet = RelationSet(MASK);

    /// Singleton set.
    #[inline]
    pub const fn singleton(r: BasicRelation) -> RelationSet {
        RelationSet(1 << r.index())
    }

    /// Set containing exactly the listed relations.
    pub const fn of(rels: &[BasicRelation]) -> RelationSet {
        let mut bits = 0u16;
        let mut i = 0;
        while i < rels.len() {
            bits |= 1 << rels[i].index();
            i += 1;
        }
        RelationSet(bits)
    }

    /// Raw 13-bit mask.
    #[inline]
    pub const fn bits(self) -> u16 {
        self.0
    }

    /// Reconstructs a set from a mask; bits beyond the 13th are dropped.
    #[inline]
    pub const fn from_bits(bits: u16) -> RelationSet {
        RelationSet(bits & MASK)
    }

    #[inline]
    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Number of member relations.
    #[inline]
    pub const fn len(self) -> u32 {
        self.0.count_ones()
    }

    #[inline]
    pub const fn contains(self, r: BasicRelation) -> bool {
        self.0 & (1 << r.index()) != 0
    }

    #[inline]
    pub const fn union(self, other: RelationSet) -> RelationSet {
        RelationSet(self.0 | other.0)
    }

    #[inline]
    pub const fn intersection(self, other: RelationSet) -> RelationSet {
        RelationSet(self.0 & other.0)
    }

    #[inline]
    pub const fn difference(self, other: RelationSet) -> RelationSet {
        RelationSet(self.0 & !other.0)
    }

    #[inline]
    pub const fn complement(self) -> RelationSet {
        RelationSet(!self.0 & MASK)
    }

    #[inline]
    pub const fn is_subset(self, other: RelationSet) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub const fn with(self, r: BasicRelation) -> RelationSet {
        RelationSet(self.0 | 1 << r.index())
    }

    /// Converse of every member. Because the relation at index `i` has its
    /// converse at index `12 - i`, this is a reversal of the 13-bit mask.
    #[inline]
    pub const fn converse(self) -> RelationSet {
        RelationSet(self.0.reverse_bits() >> 3)
    }

    /// If the set is a singleton, its only member.
    pub const fn as_singleton(self) -> Option<BasicRelation> {
        if self.0.count_ones() == 1 {
            Some(ALL_RELATIONS[self.0.trailing_zeros() as usize])
        } else {
            None
        }
    }

    /// Iterates members in display order.
    pub fn iter(self) -> impl Iterator<Item = BasicRelation> {
        ALL_RELATIONS.into_iter().filter(move |r| self.contains(*r))
    }

    /// Parses a whitespace-separated list of relation tokens.
    pub fn parse(text: &str) -> Result<RelationSet, ParseRelationError> {
        let mut set = RelationSet::EMPTY;
        for token in text.split_whitespace() {
            set = set.with(BasicRelation::parse(token)?);
        }
        Ok(set)
    }
}

impl From<BasicRelation> for RelationSet {
    fn from(r: BasicRelation) -> Self {
        RelationSet::singleton(r)
    }
}

impl FromIterator<BasicRelation> for RelationSet {
    fn from_iter<I: IntoIterator<Item = BasicRelation>>(iter: I) -> Self {
        iter.into_iter()
            .fold(RelationSet::EMPTY, |acc, r| acc.with(r))
    }
}

impl std::ops::BitOr for RelationSet {
    type Output = RelationSet;
    fn bitor(self, rhs: RelationSet) -> RelationSet {
        self.union(rhs)
    }
}

impl std::ops::BitAnd for RelationSet {
    type Output = RelationSet;
    fn bitand(self, rhs: RelationSet) -> RelationSet {
        self.intersection(rhs)
    }
}

impl fmt::Display for RelationSet {
    /// Members in display order, space-separated; the empty set prints `{}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("{}");
        }
        let mut first = true;
        for r in self.iter() {
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            f.write_str(r.name())?;
        }
        Ok(())
    }
}

impl fmt::Debug for RelationSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self)
    }
}

/// A relation set with a conventional name, e.g. `alpha1` for `{ov s d}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NamedUnion {
    pub name: &'static str,
    pub set: RelationSet,
}

/// The named unions used throughout the composition table, plus converses.
pub mod unions {
    use super::BasicRelation::*;
    use super::{NamedUnion, RelationSet};

    /// `{ov s d}`: p starts no later than it would meeting q, ends inside q.
    pub const ALPHA1: RelationSet = RelationSet::of(&[Overlaps, Starts, During]);
    /// `{ov fi di}`.
    pub const ALPHA2: RelationSet = RelationSet::of(&[Overlaps, FinishedBy, Contains]);
    /// `{b m ov}`.
    pub const ALPHA3: RelationSet = RelationSet::of(&[Before, Meets, Overlaps]);
    /// `{fi e f}`: same end, start undetermined.
    pub const ALPHA4: RelationSet = RelationSet::of(&[FinishedBy, Equals, Finishes]);
    /// `{s e si}`: same start, end undetermined.
    pub const ALPHA5: RelationSet = RelationSet::of(&[Starts, Equals, StartedBy]);
    /// `{b m ov s d}` = α₁ ∪ α₃.
    pub const BETA1: RelationSet = ALPHA1.union(ALPHA3);
    /// `{b m ov fi di}` = α₂ ∪ α₃.
    pub const BETA2: RelationSet = ALPHA2.union(ALPHA3);
    /// The nine relations with overlapping interiors: α₁ ∪ α₄ ∪ α₁⁻¹.
    pub const GAMMA: RelationSet = ALPHA1.union(ALPHA4).union(ALPHA1.converse());
    /// All thirteen relations.
    pub const DELTA: RelationSet = RelationSet::FULL;

    pub const ALPHA1_INV: RelationSet = ALPHA1.converse();
    pub const ALPHA2_INV: RelationSet = ALPHA2.converse();
    pub const ALPHA3_INV: RelationSet = ALPHA3.converse();
    pub const BETA1_INV: RelationSet = BETA1.converse();
    pub const BETA2_INV: RelationSet = BETA2.converse();

    /// All named unions and their converses, for lookup and display.
    pub const ALL: [NamedUnion; 14] = [
        NamedUnion { name: "alpha1", set: ALPHA1 },
        NamedUnion { name: "alpha2", set: ALPHA2 },
        NamedUnion { name: "alpha3", set: ALPHA3 },
        NamedUnion { name: "alpha4", set: ALPHA4 },
        NamedUnion { name: "alpha5", set: ALPHA5 },
        NamedUnion { name: "beta1", set: BETA1 },
        NamedUnion { name: "beta2", set: BETA2 },
        NamedUnion { name: "gamma", set: GAMMA },
        NamedUnion { name: "delta", set: DELTA },
        NamedUnion { name: "alpha1^-1", set: ALPHA1_INV },
        NamedUnion { name: "alpha2^-1", set: ALPHA2_INV },
        NamedUnion { name: "alpha3^-1", set: ALPHA3_INV },
        NamedUnion { name: "beta1^-1", set: BETA1_INV },
        NamedUnion { name: "beta2^-1", set: BETA2_INV },
    ];
}
