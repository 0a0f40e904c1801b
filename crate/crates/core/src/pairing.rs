//! Pairing of dilation sets with child SCCs through shared accessible nodes.
//!
//! Works on an abstract decomposition (lists of dilation sets and child SCCs)
//! with no graph attached. Every dilation set needs its own accessible
//! representative; a representative lying in a child SCC also covers that
//! SCC, and each SCC needs to be covered once. The best choice is a min-cost
//! max-flow:
//!
//! ```text
//! source -> dilation i          cap 1
//! dilation i -> node v          cap 1   (v accessible, v in D_i)
//! v_in -> v_out                 cap 1   (distinct representatives)
//! v_out -> sink                 cap 1, cost 1
//! v_out -> child SCC j -> sink  cap 1, cost 0   (v in S_j)
//! ```
//!
//! A flow of value `|D|` certifies distinct representatives; minimum cost
//! maximizes `k*`, the number of SCCs covered by representatives.
//!
//! The flow treats representatives as independent. On a concrete graph the
//! representatives must also be jointly unmatched in one maximum matching,
//! which [`crate::driver::min_driver_count`] enforces and this stage cannot
//! see; for a graph-derived decomposition the `k*` found here is therefore an
//! upper bound on the graph's.

use std::collections::BTreeMap;

use crate::error::{Error, Infeasibility, Result};
use crate::graph::NodeSet;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pairing {
    pub k_star: usize,
    pub n_min: usize,
    /// Chosen node per dilation set.
    pub representatives: Vec<usize>,
    /// `(dilation index, child SCC index, node)`, 0-based indices.
    pub pairs: Vec<(usize, usize, usize)>,
}

struct Edge {
    to: usize,
    cap: i32,
    cost: i64,
}

struct FlowNetwork {
    edges: Vec<Edge>,
    out: Vec<Vec<usize>>,
}

impl FlowNetwork {
    fn new(nodes: usize) -> Self {
        FlowNetwork {
            edges: Vec::new(),
            out: vec![Vec::new(); nodes],
        }
    }

    fn link(&mut self, from: usize, to: usize, cap: i32, cost: i64) -> usize {
        let id = self.edges.len();
        self.edges.push(Edge { to, cap, cost });
        self.edges.push(Edge {
            to: from,
            cap: 0,
            cost: -cost,
        });
        self.out[from].push(id);
        self.out[to].push(id + 1);
        id
    }

    fn flow_on(&self, id: usize) -> i32 {
        self.edges[id ^ 1].cap
    }

    /// Successive shortest paths with Bellman–Ford; returns (flow, cost).
    fn min_cost_max_flow(&mut self, source: usize, sink: usize) -> (i32, i64) {
        let n = self.out.len();
        let (mut flow, mut cost) = (0, 0);
        loop {
            let mut dist = vec![i64::MAX; n];
            let mut via = vec![usize::MAX; n];
            dist[source] = 0;
            let mut changed = true;
            while changed {
                changed = false;
                for u in 0..n {
                    if dist[u] == i64::MAX {
                        continue;
                    }
                    for &e in &self.out[u] {
                        let edge = &self.edges[e];
                        if edge.cap > 0 && dist[u] + edge.cost < dist[edge.to] {
                            dist[edge.to] = dist[u] + edge.cost;
                            via[edge.to] = e;
                            changed = true;
                        }
                    }
                }
            }
            if dist[sink] == i64::MAX {
                return (flow, cost);
            }
            let mut push = i32::MAX;
            let mut v = sink;
            while v != source {
                let e = via[v];
                push = push.min(self.edges[e].cap);
                v = self.edges[e ^ 1].to;
            }
            let mut v = sink;
            while v != source {
                let e = via[v];
                self.edges[e].cap -= push;
                self.edges[e ^ 1].cap += push;
                v = self.edges[e ^ 1].to;
            }
            flow += push;
            cost += push as i64 * dist[sink];
        }
    }
}

/// Computes `k*` and `N_min = |D| + |S^c| - k*` for a decomposition.
///
/// Child SCCs must be pairwise disjoint. Fails as infeasible when a dilation
/// set or child SCC has no accessible member, or when the dilation sets have
/// no distinct accessible representatives.
pub fn pair_decomposition(
    dilations: &[NodeSet],
    child_sccs: &[NodeSet],
    inaccessible: &NodeSet,
) -> Result<Pairing> {
    let mut scc_of: BTreeMap<usize, usize> = BTreeMap::new();
    for (j, scc) in child_sccs.iter().enumerate() {
        for v in scc.iter() {
            if scc_of.insert(v, j).is_some() {
                return Err(Error::argument(format!("node {v} lies in two child SCCs")));
            }
        }
        if scc.iter().all(|v| inaccessible.contains(v)) {
            return Err(Error::Infeasible(Infeasibility::ChildSccInaccessible {
                members: scc.as_slice().to_vec(),
            }));
        }
    }
    for d in dilations {
        if d.iter().all(|v| inaccessible.contains(v)) {
            return Err(Error::Infeasible(Infeasibility::DilationInaccessible {
                members: d.as_slice().to_vec(),
            }));
        }
    }

    let candidates: NodeSet = dilations
        .iter()
        .flat_map(|d| d.iter())
        .filter(|&v| !inaccessible.contains(v))
        .collect();
    let slot: BTreeMap<usize, usize> = candidates.iter().enumerate().map(|(k, v)| (v, k)).collect();

    let l = dilations.len();
    let c = candidates.len();
    let p = child_sccs.len();
    let source = 0;
    let dil = |i: usize| 1 + i;
    let v_in = |k: usize| 1 + l + k;
    let v_out = |k: usize| 1 + l + c + k;
    let scc = |j: usize| 1 + l + 2 * c + j;
    let sink = 1 + l + 2 * c + p;
    let mut net = FlowNetwork::new(sink + 1);

    for i in 0..l {
        net.link(source, dil(i), 1, 0);
    }
    let mut choice_edges = Vec::with_capacity(l);
    for (i, d) in dilations.iter().enumerate() {
        let edges: Vec<(usize, usize)> = d
            .iter()
            .filter(|v| !inaccessible.contains(*v))
            .map(|v| (v, net.link(dil(i), v_in(slot[&v]), 1, 0)))
            .collect();
        choice_edges.push(edges);
    }
    let mut cover_edges = BTreeMap::new();
    for (v, &k) in &slot {
        net.link(v_in(k), v_out(k), 1, 0);
        if let Some(&j) = scc_of.get(v) {
            cover_edges.insert(*v, (j, net.link(v_out(k), scc(j), 1, 0)));
        }
        net.link(v_out(k), sink, 1, 1);
    }
    for j in 0..p {
        net.link(scc(j), sink, 1, 0);
    }

    let (flow, cost) = net.min_cost_max_flow(source, sink);
    if flow as usize != l {
        return Err(Error::Infeasible(Infeasibility::NoDistinctRepresentatives));
    }
    let k_star = l - cost as usize;

    let mut representatives = Vec::with_capacity(l);
    let mut pairs = Vec::new();
    for (i, edges) in choice_edges.iter().enumerate() {
        let v = edges
            .iter()
            .find(|(_, e)| net.flow_on(*e) > 0)
            .map(|(v, _)| *v)
            .expect("saturated dilation has a representative");
        representatives.push(v);
        if let Some(&(j, e)) = cover_edges.get(&v) {
            if net.flow_on(e) > 0 {
                pairs.push((i, j, v));
            }
        }
    }
    debug_assert_eq!(pairs.len(), k_star);

    Ok(Pairing {
        k_star,
        n_min: l + p - k_star,
        representatives,
        pairs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sets(v: &[&[usize]]) -> Vec<NodeSet> {
        v.iter().map(|s| s.iter().copied().collect()).collect()
    }

    #[test]
    fn g1_decomposition() {
        let d = sets(&[&[1, 3], &[1, 4], &[2, 5], &[2, 6]]);
        let s = sets(&[&[1, 2]]);
        let p = pair_decomposition(&d, &s, &NodeSet::new()).unwrap();
        assert_eq!((p.k_star, p.n_min), (1, 4));
        let reps: NodeSet = p.representatives.iter().copied().collect();
        assert_eq!(reps.len(), 4);
    }

    #[test]
    fn representatives_must_be_distinct() {
        // D1 = {a}, D2 = {a, b}, b in a child SCC: D2 must take b.
        let d = sets(&[&[1], &[1, 2]]);
        let s = sets(&[&[2]]);
        let p = pair_decomposition(&d, &s, &NodeSet::new()).unwrap();
        assert_eq!(p.representatives, vec![1, 2]);
        assert_eq!(p.pairs, vec![(1, 0, 2)]);
        assert_eq!(p.n_min, 2);
    }

    #[test]
    fn infeasible_cases() {
        let d = sets(&[&[1], &[1]]);
        assert_eq!(
            pair_decomposition(&d, &[], &NodeSet::new()),
            Err(Error::Infeasible(Infeasibility::NoDistinctRepresentatives))
        );
        let d = sets(&[&[1, 2]]);
        assert!(matches!(
            pair_decomposition(&d, &[], &[1, 2].into()),
            Err(Error::Infeasible(
                Infeasibility::DilationInaccessible { .. }
            ))
        ));
        let s = sets(&[&[3]]);
        assert!(matches!(
            pair_decomposition(&d, &s, &[3].into()),
            Err(Error::Infeasible(
                Infeasibility::ChildSccInaccessible { .. }
            ))
        ));
        let s = sets(&[&[3], &[3, 4]]);
        assert!(matches!(
            pair_decomposition(&d, &s, &NodeSet::new()),
            Err(Error::Argument(_))
        ));
    }
}
