//! The 13×13 composition table.
//!
//! `compose(r1, r2)` answers: knowing `(p, z) ∈ r1` and `(z, q) ∈ r2`, which
//! basic relations may hold between `p` and `q`? Each entry is the *exact*
//! such set — every member is realizable by concrete intervals, and no
//! realizable relation is missing. The table constant below is cross-checked
//! two independent ways elsewhere in this crate: by exhaustive enumeration of
//! endpoint order types ([`crate::model::oracle_table`]) and by symbolic
//! derivation from the meets axioms
//! ([`crate::derivation::verify_table_by_derivation`]).
//!
//! Rows and columns are indexed in display order
//! (`b m ov fi di s e si d f ovi mi bi`).

use crate::relation::unions::*;
use crate::relation::{BasicRelation, RelationSet, ALL_RELATIONS};

/// The full composition table: `entries[r1.index()][r2.index()]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompositionTable {
    pub entries: [[RelationSet; 13]; 13],
}

const B: RelationSet = RelationSet::singleton(BasicRelation::Before);
const M: RelationSet = RelationSet::singleton(BasicRelation::Meets);
const OV: RelationSet = RelationSet::singleton(BasicRelation::Overlaps);
const FI: RelationSet = RelationSet::singleton(BasicRelation::FinishedBy);
const DI: RelationSet = RelationSet::singleton(BasicRelation::Contains);
const S: RelationSet = RelationSet::singleton(BasicRelation::Starts);
const E: RelationSet = RelationSet::singleton(BasicRelation::Equals);
const SI: RelationSet = RelationSet::singleton(BasicRelation::StartedBy);
const D: RelationSet = RelationSet::singleton(BasicRelation::During);
const F: RelationSet = RelationSet::singleton(BasicRelation::Finishes);
const OVI: RelationSet = RelationSet::singleton(BasicRelation::OverlappedBy);
const MI: RelationSet = RelationSet::singleton(BasicRelation::MetBy);
const BI: RelationSet = RelationSet::singleton(BasicRelation::After);

const A1: RelationSet = ALPHA1;
const A2: RelationSet = ALPHA2;
const A3: RelationSet = ALPHA3;
const A4: RelationSet = ALPHA4;
const A5: RelationSet = ALPHA5;
const B1: RelationSet = BETA1;
const B2: RelationSet = BETA2;
const A1I: RelationSet = ALPHA1_INV;
const A2I: RelationSet = ALPHA2_INV;
const A3I: RelationSet = ALPHA3_INV;
const B1I: RelationSet = BETA1_INV;
const B2I: RelationSet = BETA2_INV;
const G: RelationSet = GAMMA;
const DL: RelationSet = DELTA;

/// The composition table as published, one row per left operand.
pub const TABLE: CompositionTable = CompositionTable {
    entries: [
        //        b    m    ov   fi   di   s    e    si   d    f    ovi  mi   bi
        /* b  */ [B,   B,   B,   B,   B,   B,   B,   B,   B1,  B1,  B1,  B1,  DL],
        /* m  */ [B,   B,   B,   B,   B,   M,   M,   M,   A1,  A1,  A1,  A4,  B1I],
        /* ov */ [B,   B,   A3,  A3,  B2,  OV,  OV,  A2,  A1,  A1,  G,   A1I, B1I],
        /* fi */ [B,   M,   OV,  FI,  DI,  OV,  FI,  DI,  A1,  A4,  A1I, A1I, B1I],
        /* di */ [B2,  A2,  A2,  DI,  DI,  A2,  DI,  DI,  G,   A1I, A1I, A1I, B1I],
        /* s  */ [B,   B,   A3,  A3,  B2,  S,   S,   A5,  D,   D,   A2I, MI,  BI],
        /* e  */ [B,   M,   OV,  FI,  DI,  S,   E,   SI,  D,   F,   OVI, MI,  BI],
        /* si */ [B2,  A2,  A2,  DI,  DI,  A5,  SI,  SI,  A2I, OVI, OVI, MI,  BI],
        /* d  */ [B,   B,   B1,  B1,  DL,  D,   D,   B2I, D,   D,   B2I, BI,  BI],
        /* f  */ [B,   M,   A1,  A4,  B1I, D,   F,   A3I, D,   F,   A3I, BI,  BI],
        /* ovi*/ [B2,  A2,  G,   A1I, B1I, A2I, OVI, A3I, A2I, OVI, A3I, BI,  BI],
        /* mi */ [B2,  A5,  A2I, MI,  BI,  A2I, MI,  BI,  A2I, MI,  BI,  BI,  BI],
        /* bi */ [DL,  B2I, B2I, BI,  BI,  B2I, BI,  BI,  B2I, BI,  BI,  BI,  BI],
    ],
};

/// Composition of two basic relations.
#[inline]
pub fn compose(r1: BasicRelation, r2: BasicRelation) -> RelationSet {
    TABLE.entries[r1.index()][r2.index()]
}

/// Composition lifted to sets: union of `compose` over the member pairs.
pub fn compose_sets(s1: RelationSet, s2: RelationSet) -> RelationSet {
    let mut out = RelationSet::EMPTY;
    for r1 in s1.iter() {
        for r2 in s2.iter() {
            out = out.union(compose(r1, r2));
        }
    }
    out
}

/// Table layout for [`CompositionTable::export`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableFormat {
    /// Comma-separated values with a header row and column; cells join
    /// members with `|`.
    Csv,
    /// GitHub-style pipe table.
    Markdown,
}

impl CompositionTable {
    /// Entry for a pair of basic relations.
    #[inline]
    pub fn entry(&self, r1: BasicRelation, r2: BasicRelation) -> RelationSet {
        self.entries[r1.index()][r2.index()]
    }

    /// Renders the whole table in the requested format.
    ///
    /// Rows and columns follow display order, so the output mirrors the
    /// conventional printed layout.
    pub fn export(&self, format: TableFormat) -> String {
        // CSV cells join members with `|` (comma is the field separator);
        // Markdown cells use spaces so the pipes stay table syntax.
        let sep = match format {
            TableFormat::Csv => "|",
            TableFormat::Markdown => " ",
        };
        let cell = |set: RelationSet| -> String {
            set.iter().map(|r| r.name()).collect::<Vec<_>>().join(sep)
        };
        let mut out = String::new();
        match format {
            TableFormat::Csv => {
                out.push_str("compose");
                for c in ALL_RELATIONS {
                    out.push(',');
                    out.push_str(c.name());
                }
                out.push('\n');
                for r1 in ALL_RELATIONS {
                    out.push_str(r1.name());
                    for r2 in ALL_RELATIONS {
                        out.push(',');
                        out.push_str(&cell(self.entry(r1, r2)));
                    }
                    out.push('\n');
                }
            }
            TableFormat::Markdown => {
                out.push_str("| compose |");
                for c in ALL_RELATIONS {
                    out.push_str(&format!(" {} |", c.name()));
                }
                out.push('\n');
                out.push_str("|---|");
                for _ in ALL_RELATIONS {
                    out.push_str("---|");
                }
                out.push('\n');
                for r1 in ALL_RELATIONS {
                    out.push_str(&format!("| {} |", r1.name()));
                    for r2 in ALL_RELATIONS {
                        out.push_str(&format!(" {} |", cell(self.entry(r1, r2))));
                    }
                    out.push('\n');
                }
            }
        }
        out
    }
}
