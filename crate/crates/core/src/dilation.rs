//! Dilation sets: right nodes reachable by alternating paths from each
//! unmatched node of a maximum matching.
//!
//! An alternating step leaves a right node through any non-matching link to
//! one of its left in-neighbors, then follows that left node's matching link
//! back to the right side. The auxiliary graph with flipped links is never
//! materialized; the traversal walks the alternation directly.

use std::collections::VecDeque;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{bipartite_of, BipartiteGraph, Digraph, NodeSet};
use crate::matching::{maximum_matching, Matching};

const UNSET: usize = usize::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DilationSet {
    /// Unmatched node the set was grown from.
    pub anchor: usize,
    pub members: NodeSet,
}

/// Reusable BFS state so repeated searches avoid reallocating.
struct Alternator<'a> {
    right_adj: &'a [Vec<usize>],
    mate_left: &'a [usize],
    stamp: Vec<u32>,
    round: u32,
    queue: VecDeque<usize>,
}

impl<'a> Alternator<'a> {
    fn new(b: &'a BipartiteGraph, m: &'a Matching) -> Self {
        Alternator {
            right_adj: b.right_adj(),
            mate_left: m.mate_left0(),
            stamp: vec![0; b.node_count()],
            round: 0,
            queue: VecDeque::new(),
        }
    }

    fn reach(&mut self, start: usize) -> NodeSet {
        self.round += 1;
        let round = self.round;
        let mut found = vec![start];
        self.stamp[start] = round;
        self.queue.clear();
        self.queue.push_back(start);
        while let Some(r) = self.queue.pop_front() {
            for &w in &self.right_adj[r] {
                let next = self.mate_left[w];
                // `w -> r` is the matching link itself, or `w` is free.
                if next == r || next == UNSET {
                    continue;
                }
                if self.stamp[next] != round {
                    self.stamp[next] = round;
                    found.push(next);
                    self.queue.push_back(next);
                }
            }
        }
        found.into_iter().map(|v| v + 1).collect()
    }
}

/// All right nodes reachable from the unmatched node `start`, including it.
pub fn alternating_reachable(b: &BipartiteGraph, m: &Matching, start: usize) -> Result<NodeSet> {
    let n = b.node_count();
    if start == 0 || start > n {
        return Err(Error::argument(format!(
            "start node {start} outside 1..={n}"
        )));
    }
    if m.left_of(start).is_some() {
        return Err(Error::argument(format!(
            "start node {start} is matched; alternating search starts at an unmatched node"
        )));
    }
    Ok(Alternator::new(b, m).reach(start - 1))
}

/// One dilation set per unmatched node, in ascending anchor order.
pub fn dilation_sets(g: &Digraph) -> Vec<DilationSet> {
    let b = bipartite_of(g);
    let m = maximum_matching(&b);
    dilation_sets_for(&b, &m)
}

pub(crate) fn dilation_sets_for(b: &BipartiteGraph, m: &Matching) -> Vec<DilationSet> {
    let mut walker = Alternator::new(b, m);
    m.unmatched_right()
        .iter()
        .map(|anchor| DilationSet {
            anchor,
            members: walker.reach(anchor - 1),
        })
        .collect()
}
