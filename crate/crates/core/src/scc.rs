//! Depth-first timestamps, strongly connected components and child SCCs.
//!
//! Components come from Kosaraju's two passes: a DFS over the graph in
//! ascending node order, then a DFS over the transpose taking roots in
//! decreasing finishing time. Each tree of the second pass is one component.
//! A component is a *child* when no edge enters it from outside; these are
//! the sources of the condensation.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{transpose, Digraph, NodeSet};

const NONE: usize = usize::MAX;

/// Per-node DFS attributes. Timestamps run from 1 to `2n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DfsAttributes {
    pred: Vec<usize>,
    visited: Vec<bool>,
    start: Vec<usize>,
    end: Vec<usize>,
    /// Roots of the forest in the order they were taken, 0-based.
    roots: Vec<usize>,
}

impl DfsAttributes {
    pub fn predecessor(&self, node: usize) -> Option<usize> {
        match self.pred[node - 1] {
            NONE => None,
            p => Some(p + 1),
        }
    }

    pub fn visited(&self, node: usize) -> bool {
        self.visited[node - 1]
    }

    pub fn start(&self, node: usize) -> usize {
        self.start[node - 1]
    }

    pub fn end(&self, node: usize) -> usize {
        self.end[node - 1]
    }

    pub fn roots(&self) -> impl Iterator<Item = usize> + '_ {
        self.roots.iter().map(|&r| r + 1)
    }
}

fn dfs0(adj: &[Vec<usize>], order: impl IntoIterator<Item = usize>) -> DfsAttributes {
    let n = adj.len();
    let mut attrs = DfsAttributes {
        pred: vec![NONE; n],
        visited: vec![false; n],
        start: vec![0; n],
        end: vec![0; n],
        roots: Vec::new(),
    };
    let mut clock = 0;
    // (node, index of the next neighbor to try)
    let mut stack: Vec<(usize, usize)> = Vec::new();
    for root in order {
        if attrs.visited[root] {
            continue;
        }
        attrs.roots.push(root);
        attrs.visited[root] = true;
        clock += 1;
        attrs.start[root] = clock;
        stack.push((root, 0));
        while let Some(top) = stack.last_mut() {
            let (u, next) = *top;
            if next < adj[u].len() {
                top.1 += 1;
                let v = adj[u][next];
                if !attrs.visited[v] {
                    attrs.visited[v] = true;
                    attrs.pred[v] = u;
                    clock += 1;
                    attrs.start[v] = clock;
                    stack.push((v, 0));
                }
            } else {
                clock += 1;
                attrs.end[u] = clock;
                stack.pop();
            }
        }
    }
    attrs
}

/// Full DFS taking roots in `order` (a permutation of `1..=n`) and visiting
/// neighbors in ascending index order.
pub fn dfs_forest(g: &Digraph, order: &[usize]) -> Result<DfsAttributes> {
    let n = g.node_count();
    let mut seen = vec![false; n];
    if order.len() != n {
        return Err(Error::argument(format!(
            "visit order has {} entries for {n} nodes",
            order.len()
        )));
    }
    for &v in order {
        if v == 0 || v > n || seen[v - 1] {
            return Err(Error::argument(
                "visit order is not a permutation of the nodes",
            ));
        }
        seen[v - 1] = true;
    }
    Ok(dfs0(g.succ0(), order.iter().map(|&v| v - 1)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SccDecomposition {
    components: Vec<NodeSet>,
    child: Vec<bool>,
    component_of: Vec<usize>,
    /// Direct condensation edges `(from, to)` between component indices.
    order: BTreeSet<(usize, usize)>,
}

impl SccDecomposition {
    /// Components in discovery order of the second pass.
    pub fn components(&self) -> &[NodeSet] {
        &self.components
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn is_child(&self, component: usize) -> bool {
        self.child[component]
    }

    pub fn child_flags(&self) -> &[bool] {
        &self.child
    }

    /// Index of the component holding `node` (1-based node).
    pub fn component_of(&self, node: usize) -> usize {
        self.component_of[node - 1]
    }

    /// Component indices of the child SCCs, ascending.
    pub fn child_indices(&self) -> Vec<usize> {
        (0..self.len()).filter(|&c| self.child[c]).collect()
    }

    pub fn condensation_edges(&self) -> &BTreeSet<(usize, usize)> {
        &self.order
    }

    /// True if some directed path leads from component `from` to `to`.
    /// Irreflexive.
    pub fn precedes(&self, from: usize, to: usize) -> bool {
        if from == to {
            return false;
        }
        let mut seen = vec![false; self.len()];
        let mut stack = vec![from];
        seen[from] = true;
        while let Some(c) = stack.pop() {
            for &(_, d) in self.order.range((c, 0)..=(c, usize::MAX)) {
                if d == to {
                    return true;
                }
                if !seen[d] {
                    seen[d] = true;
                    stack.push(d);
                }
            }
        }
        false
    }
}

pub fn scc_decompose(g: &Digraph) -> SccDecomposition {
    let n = g.node_count();
    let first = dfs0(g.succ0(), 0..n);
    let mut by_finish: Vec<usize> = (0..n).collect();
    by_finish.sort_unstable_by(|a, b| first.end[*b].cmp(&first.end[*a]));

    let gt = transpose(g);
    let second = dfs0(gt.succ0(), by_finish.iter().copied());

    // Each second-pass tree is a component; walk predecessor links to roots.
    let mut component_of = vec![NONE; n];
    let mut members: Vec<Vec<usize>> = Vec::with_capacity(second.roots.len());
    for (c, &root) in second.roots.iter().enumerate() {
        component_of[root] = c;
        members.push(Vec::new());
    }
    let mut path = Vec::new();
    for v in 0..n {
        let mut u = v;
        while component_of[u] == NONE {
            path.push(u);
            u = second.pred[u];
        }
        let c = component_of[u];
        for w in path.drain(..) {
            component_of[w] = c;
        }
    }
    for v in 0..n {
        members[component_of[v]].push(v + 1);
    }

    let mut child = vec![true; members.len()];
    let mut order = BTreeSet::new();
    for (i, j) in g.edges() {
        let (ci, cj) = (component_of[i - 1], component_of[j - 1]);
        if ci != cj {
            child[cj] = false;
            order.insert((ci, cj));
        }
    }

    SccDecomposition {
        components: members.into_iter().map(NodeSet::from).collect(),
        child,
        component_of,
        order,
    }
}

/// Members of every child component, in component order.
pub fn child_sccs(d: &SccDecomposition) -> Vec<NodeSet> {
    d.components
        .iter()
        .zip(&d.child)
        .filter(|(_, &c)| c)
        .map(|(s, _)| s.clone())
        .collect()
}
