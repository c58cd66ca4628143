//! Cross-engine agreement: the semantic oracle, the axiomatic derivation
//! engine, and the embedded table must tell the same story. The exhaustive
//! 169-entry sweeps live in the acceptance suite; these tests keep a
//! representative sample in the fast path.

use allen_core::derivation::{derive_composition, derive_je, verify_pd};
use allen_core::model::{check_axioms_in_model, integer_intervals, oracle_compose};
use allen_core::relation::{BasicRelation, ALL_RELATIONS};
use allen_core::table::TABLE;

/// Deterministic sample: every seventh (r1, r2) pair.
fn sample_pairs() -> Vec<(BasicRelation, BasicRelation)> {
    let mut out = Vec::new();
    for (i, r1) in ALL_RELATIONS.into_iter().enumerate() {
        for (j, r2) in ALL_RELATIONS.into_iter().enumerate() {
            if (i * 13 + j) % 7 == 0 {
                out.push((r1, r2));
            }
        }
    }
    out
}

#[test]
fn oracle_derivation_and_table_agree_on_sample() {
    for (r1, r2) in sample_pairs() {
        let semantic = oracle_compose(r1, r2);
        let axiomatic = derive_composition(r1, r2)
            .unwrap_or_else(|e| panic!("derivation of {r1} ∘ {r2} failed: {e}"))
            .conclusions();
        assert_eq!(semantic, axiomatic, "engines disagree on {r1} ∘ {r2}");
        assert_eq!(semantic, TABLE.entry(r1, r2), "table wrong at {r1} ∘ {r2}");
    }
}

#[test]
fn disjointness_proofs_on_sampled_pairs() {
    let sample = [
        (BasicRelation::Before, BasicRelation::Meets),
        (BasicRelation::Before, BasicRelation::After),
        (BasicRelation::Overlaps, BasicRelation::During),
        (BasicRelation::Starts, BasicRelation::Finishes),
        (BasicRelation::Equals, BasicRelation::Contains),
        (BasicRelation::MetBy, BasicRelation::OverlappedBy),
    ];
    for (r1, r2) in sample {
        let proof = verify_pd(r1, r2)
            .unwrap_or_else(|e| panic!("no contradiction for {r1} vs {r2}: {e}"));
        assert!(
            proof.contradiction.starts_with("meets_"),
            "unexpected contradiction report: {}",
            proof.contradiction
        );
    }
}

#[test]
fn je_tree_is_a_partition_witness() {
    let tree = derive_je().expect("joint exhaustiveness derivation");
    let mut seen = Vec::new();
    for leaf in tree.leaves() {
        let r = leaf.conclusion.expect("je leaves all conclude");
        assert!(!seen.contains(&r), "{r} concluded twice");
        seen.push(r);
    }
    assert_eq!(seen.len(), 13);
}

#[test]
fn axioms_hold_over_a_small_integer_model() {
    let sample = integer_intervals(0, 3);
    let report = check_axioms_in_model(&sample);
    assert!(report.is_ok(), "violations: {:?}", report.violations);
    assert!(report.checks > 0);
}
