//! End-to-end tests of the `allen` binary: byte-exact outputs and exit
//! codes.

use std::path::PathBuf;
use std::process::Command;

fn allen(args: &[&str]) -> (String, String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_allen"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        String::from_utf8(out.stdout).expect("stdout is utf-8"),
        String::from_utf8(out.stderr).expect("stderr is utf-8"),
        out.status.code().expect("exit code"),
    )
}

fn fixture(name: &str) -> String {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "data", name]
        .iter()
        .collect();
    path.to_str().expect("utf-8 path").to_string()
}

#[test]
fn compose_prints_the_table_entry() {
    let (out, _, code) = allen(&["compose", "m", "d"]);
    assert_eq!((out.as_str(), code), ("ov s d\n", 0));
}

#[test]
fn compose_accepts_inverse_suffix_spelling() {
    let (out, _, code) = allen(&["compose", "ov^-1", "f^-1"]);
    assert_eq!((out.as_str(), code), ("di si ovi\n", 0));
}

#[test]
fn converse_of_a_set() {
    let (out, _, code) = allen(&["converse", "b", "m", "ov"]);
    assert_eq!((out.as_str(), code), ("ovi mi bi\n", 0));
}

#[test]
fn classify_examples() {
    let (out, _, code) = allen(&["classify", "0", "2", "2", "4"]);
    assert_eq!((out.as_str(), code), ("m\n", 0));
    let (out, _, code) = allen(&["classify", "0", "1/2", "1/4", "3/4"]);
    assert_eq!((out.as_str(), code), ("ov\n", 0));
    let (out, _, code) = allen(&["classify", "-1", "0", "-1", "0"]);
    assert_eq!((out.as_str(), code), ("e\n", 0));
}

#[test]
fn classify_rejects_empty_intervals() {
    let (out, err, code) = allen(&["classify", "2", "2", "0", "1"]);
    assert_eq!((out.as_str(), code), ("", 2));
    assert!(err.starts_with("error:"), "stderr: {err}");
}

#[test]
fn derive_union_and_tree() {
    let (out, _, code) = allen(&["derive", "m", "d"]);
    assert_eq!((out.as_str(), code), ("ov s d\n", 0));

    let (out, _, code) = allen(&["derive", "m", "d", "--tree"]);
    assert_eq!(code, 0);
    let expected = "\
M2(c||p, k||q)
  = ⊢ (p,q) ∈ s via {k→c, u→zu, v→v}
  < ⊢ (p,q) ∈ ov via {k→c, l→t, u→zu, v→v, t→l}
  > ⊢ (p,q) ∈ d via {k→k, l→t, u→zu, v→v}
";
    assert_eq!(out, expected);
}

#[test]
fn table_verify_both_reports_full_agreement() {
    let (out, _, code) = allen(&["table", "--verify", "both"]);
    assert_eq!(code, 0);
    assert_eq!(
        out.lines().last().unwrap(),
        "169/169 oracle OK, 169/169 derivation OK"
    );
    // 15 markdown lines + verification line.
    assert_eq!(out.lines().count(), 16);
}

#[test]
fn table_csv_shape() {
    let (out, _, code) = allen(&["table", "--format", "csv"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 14);
    assert!(out.starts_with("compose,b,m,ov,fi,di,s,e,si,d,f,ovi,mi,bi\n"));
}

#[test]
fn jepd_summary() {
    let (out, _, code) = allen(&["jepd"]);
    assert_eq!(code, 0);
    assert_eq!(
        out,
        "JE: 13 order types cover 13 relations: OK\nPD: 78/78 pairs refuted: OK\n"
    );
}

#[test]
fn closure_refines_and_serializes() {
    let (out, _, code) = allen(&["closure", &fixture("chain.net")]);
    assert_eq!(code, 0);
    assert_eq!(out, "A B : m\nB C : m\nA C : b\n");
}

#[test]
fn closure_hilbert_example() {
    // The H–E edge composes to the universal relation, which stays
    // implicit; closure only canonicalizes the stored edges.
    let (out, _, code) = allen(&["closure", &fixture("hilbert.net")]);
    assert_eq!(code, 0);
    assert_eq!(out, "H T : b m ov fi di\nT E : bi\n");
}

#[test]
fn closure_detects_inconsistency() {
    let (out, err, code) = allen(&["closure", &fixture("cycle.net")]);
    assert_eq!((out.as_str(), code), ("INCONSISTENT\n", 1));
    assert!(err.contains("inconsistent between"), "stderr: {err}");
}

#[test]
fn solve_realize_golden() {
    let (out, _, code) = allen(&["solve", &fixture("chain.net"), "--realize"]);
    assert_eq!(code, 0);
    assert_eq!(
        out,
        "A B : m\nA C : b\nB C : m\nA = [0, 1]\nB = [1, 2]\nC = [2, 3]\n"
    );
}

#[test]
fn solve_reports_no_scenario() {
    let (out, _, code) = allen(&["solve", &fixture("cycle.net")]);
    assert_eq!((out.as_str(), code), ("NO SCENARIO\n", 1));
}

#[test]
fn realization_classifies_back_to_the_scenario() {
    let (out, _, code) = allen(&["solve", &fixture("loose.net"), "--realize"]);
    assert_eq!(code, 0);
    let mut scenario = Vec::new();
    let mut intervals = Vec::new();
    for line in out.lines() {
        if let Some((name, interval)) = line.split_once(" = ") {
            let inner = interval
                .strip_prefix('[')
                .and_then(|s| s.strip_suffix(']'))
                .expect("interval format");
            let (s, e) = inner.split_once(", ").expect("two endpoints");
            intervals.push((name.to_string(), s.to_string(), e.to_string()));
        } else {
            let (pair, rel) = line.split_once(" : ").expect("scenario line");
            let (a, b) = pair.split_once(' ').expect("two names");
            scenario.push((a.to_string(), b.to_string(), rel.to_string()));
        }
    }
    assert_eq!(intervals.len(), 3);
    assert_eq!(scenario.len(), 3);
    for (a, b, rel) in scenario {
        let ia = intervals.iter().find(|(n, _, _)| *n == a).unwrap();
        let ib = intervals.iter().find(|(n, _, _)| *n == b).unwrap();
        let (got, _, code) = allen(&["classify", &ia.1, &ia.2, &ib.1, &ib.2]);
        assert_eq!(code, 0);
        assert_eq!(got.trim_end(), rel, "{a}–{b} round trip");
    }
}

#[test]
fn lattice_queries() {
    let (out, _, code) = allen(&["lattice", "neighbors", "e"]);
    assert_eq!((out.as_str(), code), ("fi s si f\n", 0));
    let (out, _, code) = allen(&["lattice", "distance", "b", "bi"]);
    assert_eq!((out.as_str(), code), ("8\n", 0));
    let (out, _, code) = allen(&["lattice", "connected", "ov", "s", "d"]);
    assert_eq!((out.as_str(), code), ("true\n", 0));
    let (out, _, code) = allen(&["lattice", "connected", "b", "bi"]);
    assert_eq!((out.as_str(), code), ("false\n", 0));
}

#[test]
fn usage_and_parse_errors_exit_2() {
    let (_, _, code) = allen(&["compose", "m"]);
    assert_eq!(code, 2);
    let (_, err, code) = allen(&["compose", "m", "zz"]);
    assert_eq!(code, 2);
    assert!(err.contains("unknown relation"));
    let (_, err, code) = allen(&["closure", "/nonexistent/net"]);
    assert_eq!(code, 2);
    assert!(err.contains("cannot read"));
    let (_, _, code) = allen(&["frobnicate"]);
    assert_eq!(code, 2);
}

#[test]
fn long_relation_names_are_rejected() {
    let (_, err, code) = allen(&["compose", "before", "during"]);
    assert_eq!(code, 2);
    assert!(err.contains("unknown relation"));
}
