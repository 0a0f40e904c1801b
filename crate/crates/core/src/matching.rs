//! Maximum bipartite matching and structural rank.
//!
//! Matchings are built in two stages: a greedy pass over links in
//! lexicographic `(left, right)` order, then Hopcroft–Karp phases of
//! shortest augmenting paths. Both stages are deterministic, so fixtures are
//! reproducible.

use std::collections::VecDeque;

use crate::error::Result;
use crate::graph::{bipartite_of, BipartiteGraph, Digraph, NodeSet};

const UNSET: usize = usize::MAX;

/// A set of bipartite links `(j+, i-)` sharing no endpoint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    mate_left: Vec<usize>,
    mate_right: Vec<usize>,
}

impl Matching {
    pub fn empty(n: usize) -> Self {
        Matching {
            mate_left: vec![UNSET; n],
            mate_right: vec![UNSET; n],
        }
    }

    pub(crate) fn from_mates(mate_left: Vec<usize>, mate_right: Vec<usize>) -> Self {
        Matching {
            mate_left,
            mate_right,
        }
    }

    pub fn size(&self) -> usize {
        self.mate_left.iter().filter(|&&r| r != UNSET).count()
    }

    /// Links as 1-based `(left, right)` pairs, ordered by left node.
    pub fn links(&self) -> Vec<(usize, usize)> {
        self.mate_left
            .iter()
            .enumerate()
            .filter(|(_, &r)| r != UNSET)
            .map(|(l, &r)| (l + 1, r + 1))
            .collect()
    }

    /// Right node matched to `left`, 1-based.
    pub fn right_of(&self, left: usize) -> Option<usize> {
        self.mate_left
            .get(left.wrapping_sub(1))
            .filter(|&&r| r != UNSET)
            .map(|&r| r + 1)
    }

    /// Left node matched to `right`, 1-based.
    pub fn left_of(&self, right: usize) -> Option<usize> {
        self.mate_right
            .get(right.wrapping_sub(1))
            .filter(|&&l| l != UNSET)
            .map(|&l| l + 1)
    }

    /// Right nodes covered by the matching.
    pub fn matched_right(&self) -> NodeSet {
        self.mate_right
            .iter()
            .enumerate()
            .filter(|(_, &l)| l != UNSET)
            .map(|(r, _)| r + 1)
            .collect()
    }

    /// Right nodes not covered by the matching.
    pub fn unmatched_right(&self) -> NodeSet {
        self.mate_right
            .iter()
            .enumerate()
            .filter(|(_, &l)| l == UNSET)
            .map(|(r, _)| r + 1)
            .collect()
    }

    pub(crate) fn mate_left0(&self) -> &[usize] {
        &self.mate_left
    }
}

/// Augmenting-path engine over an arbitrary left side.
///
/// Left nodes `0..adj.len()` link to right nodes `0..n_right`. The engine
/// only ever flips augmenting paths, so a right node that is matched stays
/// matched; callers rely on this to pin a subset of right nodes.
pub(crate) struct Matcher<'a> {
    adj: &'a [Vec<usize>],
    pub(crate) mate_left: Vec<usize>,
    pub(crate) mate_right: Vec<usize>,
    dist: Vec<usize>,
    cursor: Vec<usize>,
}

impl<'a> Matcher<'a> {
    pub(crate) fn new(adj: &'a [Vec<usize>], n_right: usize) -> Self {
        let n_left = adj.len();
        Matcher {
            adj,
            mate_left: vec![UNSET; n_left],
            mate_right: vec![UNSET; n_right],
            dist: vec![UNSET; n_left],
            cursor: vec![0; n_left],
        }
    }

    pub(crate) fn size(&self) -> usize {
        self.mate_left.iter().filter(|&&r| r != UNSET).count()
    }

    /// Matches free pairs in lexicographic link order.
    pub(crate) fn greedy(&mut self, allowed: Option<&[bool]>) {
        for l in 0..self.adj.len() {
            if self.mate_left[l] != UNSET {
                continue;
            }
            let free = self.adj[l]
                .iter()
                .copied()
                .find(|&r| self.mate_right[r] == UNSET && allowed.is_none_or(|a| a[r]));
            if let Some(r) = free {
                self.mate_left[l] = r;
                self.mate_right[r] = l;
            }
        }
    }

    /// Runs Hopcroft–Karp phases until no augmenting path ends at an
    /// allowed free right node.
    pub(crate) fn augment(&mut self, allowed: Option<&[bool]>) {
        while self.layer(allowed) {
            self.cursor.fill(0);
            for l in 0..self.adj.len() {
                if self.mate_left[l] == UNSET {
                    self.try_path(l, allowed);
                }
            }
        }
    }

    fn is_allowed(allowed: Option<&[bool]>, r: usize) -> bool {
        allowed.is_none_or(|a| a[r])
    }

    // BFS layering from free left nodes; true if some free right is reachable.
    fn layer(&mut self, allowed: Option<&[bool]>) -> bool {
        let mut queue = VecDeque::new();
        for l in 0..self.adj.len() {
            if self.mate_left[l] == UNSET {
                self.dist[l] = 0;
                queue.push_back(l);
            } else {
                self.dist[l] = UNSET;
            }
        }
        let mut found = false;
        while let Some(l) = queue.pop_front() {
            for &r in &self.adj[l] {
                if !Self::is_allowed(allowed, r) {
                    continue;
                }
                match self.mate_right[r] {
                    UNSET => found = true,
                    w if self.dist[w] == UNSET => {
                        self.dist[w] = self.dist[l] + 1;
                        queue.push_back(w);
                    }
                    _ => {}
                }
            }
        }
        found
    }

    // Iterative layered DFS; flips the first augmenting path found from `root`.
    fn try_path(&mut self, root: usize, allowed: Option<&[bool]>) -> bool {
        let mut stack = vec![root];
        let mut via: Vec<usize> = Vec::new();
        while let Some(&l) = stack.last() {
            if self.cursor[l] == self.adj[l].len() {
                self.dist[l] = UNSET;
                stack.pop();
                via.pop();
                continue;
            }
            let r = self.adj[l][self.cursor[l]];
            self.cursor[l] += 1;
            if !Self::is_allowed(allowed, r) {
                continue;
            }
            match self.mate_right[r] {
                UNSET => {
                    via.push(r);
                    for (&left, &right) in stack.iter().zip(&via) {
                        self.mate_left[left] = right;
                        self.mate_right[right] = left;
                    }
                    return true;
                }
                w if self.dist[w] == self.dist[l].wrapping_add(1) => {
                    via.push(r);
                    stack.push(w);
                }
                _ => {}
            }
        }
        false
    }
}

pub fn maximum_matching(b: &BipartiteGraph) -> Matching {
    let n = b.node_count();
    let mut m = Matcher::new(b.left_adj(), n);
    m.greedy(None);
    m.augment(None);
    Matching::from_mates(m.mate_left, m.mate_right)
}

/// The unmatched right nodes, written δM.
pub fn unmatched_nodes(m: &Matching) -> NodeSet {
    m.unmatched_right()
}

pub fn s_rank(g: &Digraph) -> usize {
    maximum_matching(&bipartite_of(g)).size()
}

/// Structural rank of `[A | B]` where `B` has one dedicated input column per
/// driver node.
pub fn s_rank_with_drivers(g: &Digraph, drivers: &NodeSet) -> Result<usize> {
    let n = g.node_count();
    drivers.check_range(n, "driver")?;
    let mut adj: Vec<Vec<usize>> = g.succ0().to_vec();
    adj.extend(drivers.iter().map(|d| vec![d - 1]));
    let mut m = Matcher::new(&adj, n);
    m.greedy(None);
    m.augment(None);
    Ok(m.size())
}

/// True if `m` admits an augmenting path in `b`, found by plain alternating
/// search from every unmatched left node.
pub fn has_augmenting_path(b: &BipartiteGraph, m: &Matching) -> bool {
    let n = b.node_count();
    let mut seen_left = vec![false; n];
    let mut queue: VecDeque<usize> = (0..n).filter(|&l| m.mate_left[l] == UNSET).collect();
    for &l in &queue {
        seen_left[l] = true;
    }
    while let Some(l) = queue.pop_front() {
        for &r in &b.left_adj()[l] {
            match m.mate_right[r] {
                UNSET => return true,
                w if !seen_left[w] => {
                    seen_left[w] = true;
                    queue.push_back(w);
                }
                _ => {}
            }
        }
    }
    false
}
