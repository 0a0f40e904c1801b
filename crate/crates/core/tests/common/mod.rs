#![allow(dead_code)]

use proptest::prelude::*;
use structctl::{Digraph, NodeSet};

/// Random digraph with `1..=max_n` nodes; self-loops allowed, density drawn
/// per graph so both sparse and dense cases show up.
pub fn arb_graph(max_n: usize) -> impl Strategy<Value = Digraph> {
    (1..=max_n, 0.05f64..0.6).prop_flat_map(|(n, p)| {
        proptest::collection::vec(proptest::bool::weighted(p), n * n).prop_map(move |bits| {
            let edges = bits
                .iter()
                .enumerate()
                .filter(|(_, &b)| b)
                .map(|(k, _)| (k / n + 1, k % n + 1));
            Digraph::new(n, edges).unwrap()
        })
    })
}

/// Graph plus a random subset of its nodes.
pub fn arb_graph_with_subset(max_n: usize) -> impl Strategy<Value = (Digraph, NodeSet)> {
    arb_graph(max_n).prop_flat_map(|g| {
        let n = g.node_count();
        proptest::collection::vec(proptest::bool::weighted(0.25), n).prop_map(move |bits| {
            let s: NodeSet = (1..=n).filter(|&v| bits[v - 1]).collect();
            (g.clone(), s)
        })
    })
}

/// Transitive-closure reachability matrix, `r[i][j]` for 0-based nodes.
pub fn reachability(g: &Digraph) -> Vec<Vec<bool>> {
    let n = g.node_count();
    (1..=n)
        .map(|v| {
            let seen = g.reachable_from(&[v].into());
            (1..=n).map(|w| seen.contains(w)).collect()
        })
        .collect()
}

/// Every maximum matching of the bipartite representation, as
/// `mate_right[r] = Some(left)` vectors (0-based).
pub fn all_maximum_matchings(g: &Digraph) -> Vec<Vec<Option<usize>>> {
    let n = g.node_count();
    let succ: Vec<Vec<usize>> = (1..=n)
        .map(|v| g.successors(v).map(|w| w - 1).collect())
        .collect();
    let mut best = 0;
    let mut found = Vec::new();
    let mut mate_right = vec![None; n];
    fn rec(
        l: usize,
        size: usize,
        succ: &[Vec<usize>],
        mate_right: &mut Vec<Option<usize>>,
        best: &mut usize,
        found: &mut Vec<Vec<Option<usize>>>,
    ) {
        let n = succ.len();
        if size + (n - l) < *best {
            return;
        }
        if l == n {
            if size > *best {
                *best = size;
                found.clear();
            }
            found.push(mate_right.clone());
            return;
        }
        for &r in &succ[l] {
            if mate_right[r].is_none() {
                mate_right[r] = Some(l);
                rec(l + 1, size + 1, succ, mate_right, best, found);
                mate_right[r] = None;
            }
        }
        rec(l + 1, size, succ, mate_right, best, found);
    }
    rec(0, 0, &succ, &mut mate_right, &mut best, &mut found);
    found
}
