//! System digraph, node sets and the bipartite representation.
//!
//! An edge `(i, j)` means state `i` influences state `j`. A numeric
//! realization therefore has its nonzero at row `j`, column `i` of the state
//! matrix.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// Sorted, duplicate-free set of 1-based node indices.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct NodeSet(Vec<usize>);

impl NodeSet {
    pub fn new() -> Self {
        NodeSet(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, node: usize) -> bool {
        self.0.binary_search(&node).is_ok()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn first(&self) -> Option<usize> {
        self.0.first().copied()
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }

    pub fn intersection(&self, other: &NodeSet) -> NodeSet {
        self.iter().filter(|&v| other.contains(v)).collect()
    }

    pub fn is_subset(&self, other: &NodeSet) -> bool {
        self.iter().all(|v| other.contains(v))
    }

    /// Fails unless every member lies in `1..=n`.
    pub fn check_range(&self, n: usize, what: &str) -> Result<()> {
        match self.0.iter().find(|&&v| v == 0 || v > n) {
            Some(v) => Err(Error::argument(format!("{what} node {v} outside 1..={n}"))),
            None => Ok(()),
        }
    }

    /// Membership mask indexed by 0-based node.
    pub(crate) fn mask(&self, n: usize) -> Vec<bool> {
        let mut mask = vec![false; n];
        for v in self.iter().filter(|&v| v >= 1 && v <= n) {
            mask[v - 1] = true;
        }
        mask
    }
}

impl FromIterator<usize> for NodeSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut v: Vec<usize> = iter.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        NodeSet(v)
    }
}

impl From<Vec<usize>> for NodeSet {
    fn from(v: Vec<usize>) -> Self {
        v.into_iter().collect()
    }
}

impl<const N: usize> From<[usize; N]> for NodeSet {
    fn from(v: [usize; N]) -> Self {
        v.into_iter().collect()
    }
}

impl<'a> IntoIterator for &'a NodeSet {
    type Item = &'a usize;
    type IntoIter = std::slice::Iter<'a, usize>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl fmt::Display for NodeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, v) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}

/// Directed system graph on nodes `1..=n`.
///
/// Edges have set semantics and self-loops are allowed. The graph is
/// immutable once built; adjacency lists are kept sorted so every traversal
/// visits neighbors in ascending index order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Digraph {
    succ: Vec<Vec<usize>>,
    pred: Vec<Vec<usize>>,
    edge_count: usize,
    labels: BTreeMap<usize, String>,
}

impl Digraph {
    /// Builds a graph from 1-based edges, dropping duplicates.
    pub fn new<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if n == 0 {
            return Err(Error::argument("a graph needs at least one node"));
        }
        let mut succ = vec![Vec::new(); n];
        let mut pred = vec![Vec::new(); n];
        for (i, j) in edges {
            if i == 0 || j == 0 || i > n || j > n {
                return Err(Error::argument(format!(
                    "edge ({i}, {j}) has an endpoint outside 1..={n}"
                )));
            }
            succ[i - 1].push(j - 1);
            pred[j - 1].push(i - 1);
        }
        let mut edge_count = 0;
        for list in succ.iter_mut().chain(pred.iter_mut()) {
            list.sort_unstable();
            list.dedup();
        }
        for list in &succ {
            edge_count += list.len();
        }
        Ok(Digraph {
            succ,
            pred,
            edge_count,
            labels: BTreeMap::new(),
        })
    }

    /// Attaches node names; keys must be valid node indices.
    pub fn with_labels(mut self, labels: BTreeMap<usize, String>) -> Result<Self> {
        if let Some(&bad) = labels.keys().find(|&&k| k == 0 || k > self.node_count()) {
            return Err(Error::argument(format!("label for unknown node {bad}")));
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn node_count(&self) -> usize {
        self.succ.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn labels(&self) -> &BTreeMap<usize, String> {
        &self.labels
    }

    pub fn label(&self, node: usize) -> Option<&str> {
        self.labels.get(&node).map(String::as_str)
    }

    /// All edges as 1-based pairs in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.succ
            .iter()
            .enumerate()
            .flat_map(|(i, out)| out.iter().map(move |&j| (i + 1, j + 1)))
    }

    pub fn has_edge(&self, from: usize, to: usize) -> bool {
        from >= 1
            && from <= self.node_count()
            && to >= 1
            && self.succ[from - 1].binary_search(&(to - 1)).is_ok()
    }

    /// Nodes influenced by `node`, ascending, 1-based.
    pub fn successors(&self, node: usize) -> impl Iterator<Item = usize> + '_ {
        self.succ[node - 1].iter().map(|&v| v + 1)
    }

    /// Nodes influencing `node`, ascending, 1-based.
    pub fn predecessors(&self, node: usize) -> impl Iterator<Item = usize> + '_ {
        self.pred[node - 1].iter().map(|&v| v + 1)
    }

    /// 0-based out-adjacency.
    pub(crate) fn succ0(&self) -> &[Vec<usize>] {
        &self.succ
    }

    /// Nodes reachable from `sources` along edges, sources included.
    pub fn reachable_from(&self, sources: &NodeSet) -> NodeSet {
        let n = self.node_count();
        let mut seen = vec![false; n];
        let mut stack: Vec<usize> = Vec::new();
        for v in sources.iter().filter(|&v| v >= 1 && v <= n) {
            if !seen[v - 1] {
                seen[v - 1] = true;
                stack.push(v - 1);
            }
        }
        while let Some(u) = stack.pop() {
            for &w in &self.succ[u] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        (0..n).filter(|&v| seen[v]).map(|v| v + 1).collect()
    }

    /// In-neighborhood of a node set: every `v` with an edge into the set.
    pub fn in_neighborhood(&self, set: &NodeSet) -> NodeSet {
        set.iter()
            .flat_map(|s| self.pred[s - 1].iter().map(|&v| v + 1))
            .collect()
    }
}

/// Reverses every edge. Labels are kept.
pub fn transpose(g: &Digraph) -> Digraph {
    Digraph {
        succ: g.pred.clone(),
        pred: g.succ.clone(),
        edge_count: g.edge_count,
        labels: g.labels.clone(),
    }
}

/// Bipartite representation: a left copy and a right copy of every node,
/// with a link `(j+, i-)` for each edge `(j, i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteGraph {
    left_adj: Vec<Vec<usize>>,
    right_adj: Vec<Vec<usize>>,
}

impl BipartiteGraph {
    /// Size of each side.
    pub fn node_count(&self) -> usize {
        self.left_adj.len()
    }

    pub fn link_count(&self) -> usize {
        self.left_adj.iter().map(Vec::len).sum()
    }

    /// Links as 1-based `(left, right)` pairs in lexicographic order.
    pub fn links(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.left_adj
            .iter()
            .enumerate()
            .flat_map(|(l, rs)| rs.iter().map(move |&r| (l + 1, r + 1)))
    }

    pub(crate) fn left_adj(&self) -> &[Vec<usize>] {
        &self.left_adj
    }

    pub(crate) fn right_adj(&self) -> &[Vec<usize>] {
        &self.right_adj
    }
}

pub fn bipartite_of(g: &Digraph) -> BipartiteGraph {
    BipartiteGraph {
        left_adj: g.succ.clone(),
        right_adj: g.pred.clone(),
    }
}
