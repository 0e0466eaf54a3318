mod common;

use std::collections::HashSet;

use common::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use speclab::minor::{find_minor_model, has_fs_minor, has_qt_minor, verify_model, DEFAULT_NODE_BUDGET};
use speclab::search::enumerate_connected;
use speclab::{canonical_code, g6_decode, g6_encode, Graph};

/// Connected classes on n vertices by filtering every labeled graph.
fn labeled_class_count(n: usize) -> usize {
    let pairs = n * (n - 1) / 2;
    let mut classes = HashSet::new();
    for mask in 0..1u64 << pairs {
        let g = from_mask(n, mask);
        if brute_connected(&g) {
            classes.insert(brute_canonical(&g));
        }
    }
    classes.len()
}

#[test]
fn enumeration_counts_match_labeled_filter() {
    for n in 1..=6 {
        assert_eq!(enumerate_connected(n).unwrap().len(), labeled_class_count(n), "n = {n}");
    }
}

#[test]
fn enumeration_representatives_are_pairwise_non_isomorphic() {
    let graphs = enumerate_connected(6).unwrap();
    let classes: HashSet<Vec<bool>> = graphs.iter().map(brute_canonical).collect();
    assert_eq!(classes.len(), graphs.len());
}

#[test]
fn canonical_code_agrees_with_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..300 {
        let n = rng.gen_range(1..=7);
        let pairs = n * (n - 1) / 2;
        let a = from_mask(n, rng.gen::<u64>() & ((1u64 << pairs) - 1));
        let b = from_mask(n, rng.gen::<u64>() & ((1u64 << pairs) - 1));
        let same = brute_canonical(&a) == brute_canonical(&b);
        assert_eq!(canonical_code(&a).unwrap() == canonical_code(&b).unwrap(), same, "{a:?} vs {b:?}");
    }
}

#[test]
fn graph6_examples() {
    assert_eq!(g6_encode(&Graph::complete(3).unwrap()), "Bw");
    assert_eq!(g6_encode(&Graph::empty(2).unwrap()), "A?");
    assert_eq!(g6_encode(&family("cycle:n=4")), "Cl");
    assert_eq!(g6_decode(b"Cl").unwrap(), family("cycle:n=4"));
}

#[test]
fn cycle_oracles_on_small_graphs() {
    for n in 3..=6 {
        for g in enumerate_connected(n).unwrap() {
            let f1 = has_fs_minor(&g, 1, DEFAULT_NODE_BUDGET).unwrap();
            assert_eq!(f1.is_found(), has_cycle(&g), "{g:?}");
            let q1 = has_qt_minor(&g, 1, DEFAULT_NODE_BUDGET).unwrap();
            assert_eq!(q1.is_found(), has_long_cycle(&g, 4), "{g:?}");
        }
    }
}

#[test]
fn minor_search_agrees_with_definition() {
    let patterns = [family("friendship:s=1"), family("intersecting-c4:t=1"), family("friendship:s=2"), family("path:n=4")];
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for round in 0..120 {
        let n = rng.gen_range(3..=6);
        let pairs = n * (n - 1) / 2;
        let host = from_mask(n, rng.gen::<u64>() & ((1u64 << pairs) - 1));
        let pattern = &patterns[round % patterns.len()];
        let answer = find_minor_model(&host, pattern, DEFAULT_NODE_BUDGET).unwrap();
        assert_eq!(answer.is_found(), brute_minor(&host, pattern), "{host:?} / {pattern:?}");
        if let Some(m) = answer.model() {
            assert!(verify_model(&host, m).unwrap());
        }
    }
}

#[test]
fn specialized_and_generic_searches_agree() {
    let f1 = family("friendship:s=1");
    let f2 = family("friendship:s=2");
    let q1 = family("intersecting-c4:t=1");
    for n in 1..=7 {
        for g in enumerate_connected(n).unwrap() {
            for (s, pattern) in [(1, &f1), (2, &f2)] {
                let a = has_fs_minor(&g, s, DEFAULT_NODE_BUDGET).unwrap();
                let b = find_minor_model(&g, pattern, DEFAULT_NODE_BUDGET).unwrap();
                assert_eq!(a.status(), b.status(), "F_{s} on {g:?}");
            }
            let a = has_qt_minor(&g, 1, DEFAULT_NODE_BUDGET).unwrap();
            let b = find_minor_model(&g, &q1, DEFAULT_NODE_BUDGET).unwrap();
            assert_eq!(a.status(), b.status(), "Q_1 on {g:?}");
        }
    }
}

#[test]
fn subgraph_implies_minor() {
    use speclab::minor::{fs_subgraph_witness, qt_subgraph_witness, QtAnswer};
    for n in 3..=8 {
        for g in enumerate_connected(n).unwrap().iter().step_by(if n == 8 { 7 } else { 1 }) {
            for s in 1..=2 {
                if fs_subgraph_witness(g, s).is_some() {
                    assert!(has_fs_minor(g, s, DEFAULT_NODE_BUDGET).unwrap().is_found());
                }
            }
            if let QtAnswer::Found { witness } = qt_subgraph_witness(g, 1, DEFAULT_NODE_BUDGET) {
                assert!(witness.is_valid(g));
                assert!(has_qt_minor(g, 1, DEFAULT_NODE_BUDGET).unwrap().is_found());
            }
        }
    }
}
