//! Acceptance suite: the claims this toolkit stands on, one test per
//! criterion. Each test prints a `PASS` line with its measured evidence
//! (visible under `--nocapture`); failures panic with the offending data.
//!
//! Time budgets are asserted where a criterion includes one; they are
//! generous (debug-build scale) and exist to catch algorithmic regressions,
//! not to benchmark.

use std::collections::BTreeMap;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use allen_core::derivation::{
    derive_composition, derive_je, verify_pd, verify_table_by_derivation, RuleApp,
};
use allen_core::lattice::is_connected;
use allen_core::model::{
    check_axioms_in_model, enumerate_configs, integer_intervals, oracle_compose, oracle_table,
    verify_jepd,
};
use allen_core::network::Network;
use allen_core::relation::BasicRelation::*;
use allen_core::relation::{unions, BasicRelation, RelationSet, ALL_RELATIONS};
use allen_core::table::{compose, compose_sets, TABLE};

const ORACLE_BUDGET: Duration = Duration::from_secs(1);
const DERIVATION_BUDGET: Duration = Duration::from_secs(10);
const AXIOM_BUDGET: Duration = Duration::from_secs(1);
const SOLVER_BUDGET: Duration = Duration::from_secs(30);

fn set(tokens: &str) -> RelationSet {
    RelationSet::parse(tokens).expect("relation tokens")
}

#[test]
fn c01_table_matches_semantic_oracle() {
    let start = Instant::now();
    let semantic = oracle_table();
    let mut agreeing = 0;
    for r1 in ALL_RELATIONS {
        for r2 in ALL_RELATIONS {
            assert_eq!(
                semantic.entry(r1, r2),
                TABLE.entry(r1, r2),
                "oracle disagrees with the embedded table at {r1} ∘ {r2}"
            );
            agreeing += 1;
        }
    }
    let elapsed = start.elapsed();
    assert_eq!(agreeing, 169);
    assert!(elapsed < ORACLE_BUDGET, "oracle took {elapsed:?}");
    println!("PASS c01 semantic table: 169/169 entries agree ({elapsed:?})");
}

#[test]
fn c02_table_matches_axiomatic_derivation() {
    let start = Instant::now();
    let report = verify_table_by_derivation();
    assert!(
        report.all_ok(),
        "derivation failures: {:?}",
        report.failures
    );
    // Every leaf of every tree concludes a relation (the engine's schema
    // matcher already rejected ambiguous leaves during derivation).
    let mut leaves = 0;
    for r1 in ALL_RELATIONS {
        for r2 in ALL_RELATIONS {
            let tree = derive_composition(r1, r2).expect("entry derives");
            for leaf in tree.leaves() {
                assert!(
                    leaf.conclusion.is_some(),
                    "contradictory leaf in {r1} ∘ {r2}"
                );
                leaves += 1;
            }
            assert_eq!(
                tree.leaves().len() as u32,
                TABLE.entry(r1, r2).len(),
                "leaf count vs entry size at {r1} ∘ {r2}"
            );
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed < DERIVATION_BUDGET, "derivation took {elapsed:?}");
    println!(
        "PASS c02 axiomatic table: 169/169 entries, {leaves} exclusive leaves ({elapsed:?})"
    );
}

#[test]
fn c03_engines_agree_without_the_constant() {
    for r1 in ALL_RELATIONS {
        for r2 in ALL_RELATIONS {
            let semantic = oracle_compose(r1, r2);
            let axiomatic = derive_composition(r1, r2)
                .expect("entry derives")
                .conclusions();
            assert_eq!(semantic, axiomatic, "engines disagree at {r1} ∘ {r2}");
        }
    }
    println!("PASS c03 cross-engine: oracle and derivation agree on all 169 pairs");
}

#[test]
fn c04_relations_are_jointly_exhaustive_and_pairwise_disjoint() {
    let configs = enumerate_configs(2);
    assert_eq!(configs.len(), 13, "two-interval order types");
    let je = verify_jepd();
    assert!(je.is_bijective(), "JE report: {je:?}");

    let mut refuted = 0;
    for (i, r1) in ALL_RELATIONS.into_iter().enumerate() {
        for r2 in ALL_RELATIONS.into_iter().skip(i + 1) {
            verify_pd(r1, r2)
                .unwrap_or_else(|e| panic!("no contradiction for {r1} vs {r2}: {e}"));
            refuted += 1;
        }
    }
    assert_eq!(refuted, 78);
    println!("PASS c04 JEPD: 13 order types ↔ 13 relations, 78/78 pairs disjoint");
}

#[test]
fn c05_meets_axioms_hold_in_the_integer_model() {
    let start = Instant::now();
    let sample = integer_intervals(0, 4);
    let report = check_axioms_in_model(&sample);
    let elapsed = start.elapsed();
    assert!(
        report.violations.is_empty(),
        "axiom violations: {:?}",
        report.violations
    );
    assert!(elapsed < AXIOM_BUDGET, "model check took {elapsed:?}");
    println!(
        "PASS c05 axiom model: {} checks, 0 violations over {} intervals ({elapsed:?})",
        report.checks,
        sample.len()
    );
}

#[test]
fn c06_algebra_laws() {
    for r in ALL_RELATIONS {
        assert_eq!(r.converse().converse(), r, "involution at {r}");
    }
    for r in ALL_RELATIONS {
        assert_eq!(compose(Equals, r), RelationSet::singleton(r), "e ∘ {r}");
        assert_eq!(compose(r, Equals), RelationSet::singleton(r), "{r} ∘ e");
    }
    for r1 in ALL_RELATIONS {
        for r2 in ALL_RELATIONS {
            assert_eq!(
                TABLE.entry(r1, r2).converse(),
                TABLE.entry(r2.converse(), r1.converse()),
                "duality at {r1} ∘ {r2}"
            );
        }
    }
    println!("PASS c06 algebra laws: 13 involutions, 26 identities, 169 dualities");
}

#[test]
fn c07_named_unions() {
    let expected: [(&str, RelationSet); 9] = [
        ("alpha1", set("ov s d")),
        ("alpha2", set("ov fi di")),
        ("alpha3", set("b m ov")),
        ("alpha4", set("fi e f")),
        ("alpha5", set("s e si")),
        ("beta1", set("b m ov s d")),
        ("beta2", set("b m ov fi di")),
        ("gamma", set("ov fi di s e si d f ovi")),
        ("delta", set("b m ov fi di s e si d f ovi mi bi")),
    ];
    for (name, members) in expected {
        let u = unions::ALL
            .iter()
            .find(|u| u.name == name)
            .unwrap_or_else(|| panic!("union {name} missing"));
        assert_eq!(u.set, members, "membership of {name}");
    }
    assert_eq!(unions::BETA1, unions::ALPHA1.union(unions::ALPHA3));
    assert_eq!(unions::BETA2, unions::ALPHA2.union(unions::ALPHA3));
    for (name, u) in [
        ("alpha4", unions::ALPHA4),
        ("alpha5", unions::ALPHA5),
        ("gamma", unions::GAMMA),
        ("delta", unions::DELTA),
    ] {
        assert_eq!(u.converse(), u, "{name} self-converse");
    }
    for u in unions::ALL {
        assert!(is_connected(u.set), "{} not connected", u.name);
    }
    for r1 in ALL_RELATIONS {
        for r2 in ALL_RELATIONS {
            assert!(
                is_connected(TABLE.entry(r1, r2)),
                "entry {r1} ∘ {r2} not connected"
            );
        }
    }
    println!("PASS c07 named unions: 9 sets match, composites and converses check, all connected");
}

#[test]
fn c08_worked_proof_replay() {
    let tree = derive_composition(Meets, During).expect("m ∘ d derives");
    assert_eq!(tree.conclusions(), set("ov s d"));
    let leaves = tree.leaves();
    assert_eq!(leaves.len(), 3, "exactly three cases");

    let count = |r: BasicRelation, pick: fn(&RuleApp) -> bool| {
        tree.leaf_for(r)
            .unwrap_or_else(|| panic!("no leaf concludes {r}"))
            .rules
            .iter()
            .filter(|rule| pick(rule))
            .count()
    };
    let m5 = |rule: &RuleApp| matches!(rule, RuleApp::M5 { .. });
    let m1 = |rule: &RuleApp| matches!(rule, RuleApp::M1 { .. });

    assert_eq!((count(Starts, m5), count(Starts, m1)), (1, 0), "s leaf");
    assert_eq!((count(During, m5), count(During, m1)), (1, 0), "d leaf");
    assert_eq!((count(Overlaps, m5), count(Overlaps, m1)), (1, 2), "ov leaf");
    println!("PASS c08 worked proof: m ∘ d = {{s, ov, d}} with the exact M5/M1 rule counts");
}

#[test]
fn c09_joint_exhaustiveness_derivation() {
    let tree = derive_je().expect("JE derivation");
    assert_eq!(tree.conclusions(), RelationSet::FULL);
    let mut seen = RelationSet::EMPTY;
    for leaf in tree.leaves() {
        let r = leaf
            .conclusion
            .expect("every JE leaf matches a relation schema");
        assert!(!seen.contains(r), "{r} reached twice");
        seen = seen.with(r);
    }
    assert_eq!(seen, RelationSet::FULL);
    println!("PASS c09 JE derivation: 13 leaves, one per relation, none unmatched");
}

// ---------------------------------------------------------------------------
// c10 machinery: random networks and an independent semantic
// consistency check for atomic labelings, built from the two-interval order
// types rather than the network module's own tables.

const NAMES: [&str; 5] = ["A", "B", "C", "D", "E"];

fn random_network(rng: &mut ChaCha8Rng, max_vars: usize, complete: bool) -> Network {
    let n = rng.gen_range(2..=max_vars);
    let mut net = Network::new();
    for name in &NAMES[..n] {
        net.variable(name);
    }
    for i in 0..n {
        for j in i + 1..n {
            if complete {
                // Small sets keep the brute-force label product enumerable.
                let size = rng.gen_range(1..=4);
                let mut edge = RelationSet::EMPTY;
                while edge.len() < size {
                    edge = edge.with(ALL_RELATIONS[rng.gen_range(0..13)]);
                }
                net.constrain(i, j, edge);
            } else if rng.gen_bool(0.6) {
                net.constrain(i, j, RelationSet::from_bits(rng.gen_range(1..0x2000)));
            }
        }
    }
    net
}

/// Endpoint rank profile `(s1, e1, s2, e2)` of each relation, read off the
/// thirteen two-interval order types.
fn rank_profiles() -> BTreeMap<BasicRelation, [u32; 4]> {
    let mut map = BTreeMap::new();
    for cfg in enumerate_configs(2) {
        let r = cfg.relation(0, 1);
        let (first, second) = (cfg.ranks(0), cfg.ranks(1));
        map.insert(r, [first.0, first.1, second.0, second.1]);
    }
    assert_eq!(map.len(), 13);
    map
}

/// Decides satisfiability of a complete atomic labeling by merging equal
/// endpoints and cycle-checking the strict precedence graph.
fn labeling_consistent(
    n: usize,
    labels: &[((usize, usize), BasicRelation)],
    profiles: &BTreeMap<BasicRelation, [u32; 4]>,
) -> bool {
    // Tiny union-find over the 2n endpoints (start of v = 2v, end = 2v+1).
    let mut parent: Vec<usize> = (0..2 * n).collect();
    fn find(parent: &mut Vec<usize>, x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        parent[x] = r;
        r
    }
    let mut strict: Vec<(usize, usize)> = (0..n).map(|v| (2 * v, 2 * v + 1)).collect();
    for &((i, j), r) in labels {
        let profile = profiles[&r];
        let nodes = [2 * i, 2 * i + 1, 2 * j, 2 * j + 1];
        for a in 0..4 {
            for b in 0..4 {
                if profile[a] == profile[b] && a < b {
                    let (ra, rb) = (find(&mut parent, nodes[a]), find(&mut parent, nodes[b]));
                    parent[ra] = rb;
                } else if profile[a] < profile[b] {
                    strict.push((nodes[a], nodes[b]));
                }
            }
        }
    }
    let edges: Vec<(usize, usize)> = strict
        .iter()
        .map(|&(a, b)| (find(&mut parent, a), find(&mut parent, b)))
        .collect();
    if edges.iter().any(|&(a, b)| a == b) {
        return false;
    }
    // Cycle detection by iterative removal of sink-free progress (Kahn).
    let mut nodes: Vec<usize> = (0..2 * n).map(|x| find(&mut parent, x)).collect();
    nodes.sort_unstable();
    nodes.dedup();
    let mut indegree: BTreeMap<usize, usize> = nodes.iter().map(|&v| (v, 0)).collect();
    for &(_, b) in &edges {
        *indegree.get_mut(&b).expect("tracked") += 1;
    }
    let mut ready: Vec<usize> = indegree
        .iter()
        .filter(|&(_, &d)| d == 0)
        .map(|(&v, _)| v)
        .collect();
    let mut removed = 0;
    while let Some(v) = ready.pop() {
        removed += 1;
        for &(a, b) in &edges {
            if a == v {
                let d = indegree.get_mut(&b).expect("tracked");
                *d -= 1;
                if *d == 0 {
                    ready.push(b);
                }
            }
        }
    }
    removed == nodes.len()
}

#[test]
fn c10_solver_suite() {
    let start = Instant::now();

    // Part 1: closure laws and solver round trips on 500 random networks.
    let mut rng = ChaCha8Rng::seed_from_u64(0xA11E);
    let mut solved = 0;
    for _ in 0..500 {
        let net = random_network(&mut rng, 5, false);
        let closure = net.path_consistency();
        if let Ok(closed) = &closure {
            assert!(closed.refines(&net), "closure grew an edge");
            let twice = closed.path_consistency().expect("closure of closure");
            assert_eq!(&twice, closed, "closure not idempotent");
        }
        if let Some(scenario) = net.solve() {
            solved += 1;
            let closed = closure.as_ref().expect("solvable nets close");
            assert!(scenario.network().refines(closed), "scenario outside closure");
            assert!(scenario.network().refines(&net), "scenario outside input");
            let assignment = scenario.realize().expect("scenario realizes");
            assert!(
                scenario.verify_realization(&assignment),
                "classify round trip failed"
            );
        }
    }

    // Part 2: agreement with brute-force labeling enumeration on a fixed
    // sample of 100 complete networks of at most 4 variables.
    let profiles = rank_profiles();
    let mut rng = ChaCha8Rng::seed_from_u64(0x1E77);
    let mut feasible = 0;
    for case in 0..100 {
        let net = random_network(&mut rng, 4, true);
        let n = net.len();
        let pairs: Vec<(usize, usize)> =
            (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        let mut valid: Vec<Vec<BasicRelation>> = Vec::new();
        let mut stack: Vec<Vec<BasicRelation>> = vec![Vec::new()];
        while let Some(prefix) = stack.pop() {
            if prefix.len() == pairs.len() {
                let labels: Vec<((usize, usize), BasicRelation)> =
                    pairs.iter().copied().zip(prefix.iter().copied()).collect();
                if labeling_consistent(n, &labels, &profiles) {
                    valid.push(prefix);
                }
                continue;
            }
            let (i, j) = pairs[prefix.len()];
            for r in net.relation(i, j).iter() {
                let mut next = prefix.clone();
                next.push(r);
                stack.push(next);
            }
        }

        let solved = net.solve();
        assert_eq!(
            solved.is_some(),
            !valid.is_empty(),
            "case {case}: solver and brute force disagree on feasibility\n{}",
            net.serialize()
        );
        if let Some(scenario) = solved {
            feasible += 1;
            let labeling: Vec<BasicRelation> =
                pairs.iter().map(|&(i, j)| scenario.relation(i, j)).collect();
            assert!(
                valid.contains(&labeling),
                "case {case}: solver scenario not among valid labelings"
            );
            // Closure preserves every semantically valid labeling.
            let closed = net.path_consistency().expect("feasible net closes");
            for labeling in &valid {
                for (k, &(i, j)) in pairs.iter().enumerate() {
                    assert!(
                        closed.relation(i, j).contains(labeling[k]),
                        "case {case}: closure dropped a valid labeling"
                    );
                }
            }
        }
    }

    let elapsed = start.elapsed();
    assert!(elapsed < SOLVER_BUDGET, "solver suite took {elapsed:?}");
    println!(
        "PASS c10 solver suite: 500 closure-law nets ({solved} solvable), \
         100 brute-force comparisons ({feasible} feasible) ({elapsed:?})"
    );
}

#[test]
fn c11_hilbert_tarski_euclid_example() {
    let text = "H T : b ov m di fi\nT E : bi\n";
    let net = Network::parse(text).expect("example parses");
    let closed = net.path_consistency().expect("example is consistent");
    let expected = compose_sets(set("b ov m di fi"), RelationSet::singleton(After));
    assert_eq!(closed.relation(0, 2), expected, "H–E edge");

    // Same result through the binary, pinned byte-for-byte.
    let file: std::path::PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "data", "hilbert.net"]
        .iter()
        .collect();
    let out = Command::new(env!("CARGO_BIN_EXE_allen"))
        .args(["closure", file.to_str().expect("utf-8 path")])
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        String::from_utf8(out.stdout).expect("utf-8"),
        "H T : b m ov fi di\nT E : bi\n"
    );
    println!(
        "PASS c11 Hilbert/Tarski/Euclid: edge(H,E) = {} (= composed union), CLI output pinned",
        closed.relation(0, 2)
    );
}
