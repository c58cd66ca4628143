//! Property tests for the relation algebra: converse, composition, and the
//! set representation.

use proptest::prelude::*;

use allen_core::relation::{unions, RelationSet, ALL_RELATIONS};
use allen_core::table::{compose, compose_sets, TABLE};

fn relation_sets() -> impl Strategy<Value = RelationSet> {
    (0u16..0x2000).prop_map(RelationSet::from_bits)
}

proptest! {
    #[test]
    fn converse_is_an_involution_on_sets(s in relation_sets()) {
        prop_assert_eq!(s.converse().converse(), s);
    }

    #[test]
    fn converse_distributes_over_union(a in relation_sets(), b in relation_sets()) {
        prop_assert_eq!(a.union(b).converse(), a.converse().union(b.converse()));
    }

    #[test]
    fn converse_preserves_cardinality(s in relation_sets()) {
        prop_assert_eq!(s.converse().len(), s.len());
    }

    #[test]
    fn composition_duality(a in relation_sets(), b in relation_sets()) {
        // (a ∘ b)⁻¹ = b⁻¹ ∘ a⁻¹
        prop_assert_eq!(
            compose_sets(a, b).converse(),
            compose_sets(b.converse(), a.converse())
        );
    }

    #[test]
    fn composition_distributes_over_union(
        a in relation_sets(),
        b in relation_sets(),
        c in relation_sets(),
    ) {
        prop_assert_eq!(
            compose_sets(a.union(b), c),
            compose_sets(a, c).union(compose_sets(b, c))
        );
        prop_assert_eq!(
            compose_sets(c, a.union(b)),
            compose_sets(c, a).union(compose_sets(c, b))
        );
    }

    #[test]
    fn display_parse_round_trip(s in relation_sets()) {
        prop_assert_eq!(RelationSet::parse(&s.to_string()).unwrap(), s);
    }

    #[test]
    fn set_operations_respect_member_view(a in relation_sets(), b in relation_sets()) {
        for r in ALL_RELATIONS {
            prop_assert_eq!(a.union(b).contains(r), a.contains(r) || b.contains(r));
            prop_assert_eq!(a.intersection(b).contains(r), a.contains(r) && b.contains(r));
            prop_assert_eq!(a.complement().contains(r), !a.contains(r));
        }
    }
}

#[test]
fn composition_is_associative() {
    for a in ALL_RELATIONS {
        for b in ALL_RELATIONS {
            for c in ALL_RELATIONS {
                let left = compose_sets(compose(a, b), RelationSet::singleton(c));
                let right = compose_sets(RelationSet::singleton(a), compose(b, c));
                assert_eq!(left, right, "({a} ∘ {b}) ∘ {c} vs {a} ∘ ({b} ∘ {c})");
            }
        }
    }
}

#[test]
fn named_unions_are_converse_consistent() {
    for u in unions::ALL {
        let inv = unions::ALL
            .iter()
            .find(|v| v.set == u.set.converse())
            .unwrap_or_else(|| panic!("converse of {} is not a named union", u.name));
        assert_eq!(inv.set.converse(), u.set);
    }
}

#[test]
fn every_table_entry_is_a_named_union_or_singleton() {
    for r1 in ALL_RELATIONS {
        for r2 in ALL_RELATIONS {
            let entry = TABLE.entry(r1, r2);
            let named = unions::ALL.iter().any(|u| u.set == entry);
            let singleton = entry.len() == 1;
            assert!(
                named || singleton,
                "{r1} ∘ {r2} = {entry} is neither atomic nor a named union"
            );
        }
    }
}
