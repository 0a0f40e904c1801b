//! Driver-node selection.
//!
//! A driver set `S` (one dedicated input per node) makes the system
//! structurally controllable iff every node is reachable from `S` and
//! `[A | B_S]` has full structural rank. Child SCCs govern the first
//! condition: each needs a driver (Type-I). Dilation sets govern the second:
//! each needs its own driver (Type-II). A node in both a dilation set and a
//! child SCC can serve both roles.
//!
//! Which dilation representatives can be driven together is constrained:
//! they must be exactly the unmatched nodes of one maximum matching. The
//! minimum is computed on an augmented bipartite graph that adds, for every
//! child SCC, one extra left node linked to that SCC's accessible members.
//! Starting from a maximum matching that leaves only accessible nodes
//! unmatched, augmenting from the extra nodes never unmatches a right node
//! and never changes the size of the original part, so each extra node that
//! gets matched is one child SCC covered by a Type-II driver. That count is
//! `k*`, and `N_min = |D| + |S^c| - k*`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::dilation::{dilation_sets_for, DilationSet};
use crate::error::{Error, Infeasibility, Result};
use crate::graph::{bipartite_of, Digraph, NodeSet};
use crate::matching::{maximum_matching, s_rank_with_drivers, Matcher};
use crate::report::{DriverReport, Verification};
use crate::scc::{scc_decompose, SccDecomposition};

const UNSET: usize = usize::MAX;

/// Outcome of checking the two structural-controllability conditions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Controllable,
    /// Nodes not reachable from any driver.
    FailsConnectivity {
        unreachable: NodeSet,
    },
    /// `n - srank([A | B])`.
    FailsRank {
        deficit: usize,
    },
}

impl Verdict {
    pub fn is_controllable(&self) -> bool {
        matches!(self, Verdict::Controllable)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Controllable => f.write_str("controllable"),
            Verdict::FailsConnectivity { unreachable } => {
                write!(f, "fails-connectivity: unreachable {unreachable}")
            }
            Verdict::FailsRank { deficit } => write!(f, "fails-rank: deficit {deficit}"),
        }
    }
}

pub(crate) fn check_conditions(g: &Digraph, drivers: &NodeSet) -> Result<Verification> {
    let n = g.node_count();
    if drivers.is_empty() {
        return Err(Error::argument("driver set is empty"));
    }
    drivers.check_range(n, "driver")?;
    let reached = g.reachable_from(drivers);
    let unreachable: NodeSet = (1..=n).filter(|&v| !reached.contains(v)).collect();
    let rank = s_rank_with_drivers(g, drivers)?;
    Ok(Verification {
        unreachable,
        rank_deficit: n - rank,
    })
}

/// Checks input connectivity first, then the rank condition, and reports
/// the first one that fails.
pub fn verify_structural_controllability(g: &Digraph, drivers: &NodeSet) -> Result<Verdict> {
    Ok(check_conditions(g, drivers)?.verdict())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum DriverType {
    /// Covers a child SCC (input connectivity).
    #[serde(rename = "I")]
    TypeI,
    /// Represents a dilation set (rank condition).
    #[serde(rename = "II")]
    TypeII,
}

impl fmt::Display for DriverType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DriverType::TypeI => "Type-I",
            DriverType::TypeII => "Type-II",
        })
    }
}

/// Zero/nonzero pattern of the input matrix: `n` rows, one column per
/// driver, column `k` nonzero only at the `k`-th smallest driver.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputPattern {
    rows: usize,
    drivers: Vec<usize>,
}

impl InputPattern {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.drivers.len()
    }

    /// Nonzero positions as 1-based `(row, column)`.
    pub fn entries(&self) -> Vec<(usize, usize)> {
        self.drivers
            .iter()
            .enumerate()
            .map(|(k, &row)| (row, k + 1))
            .collect()
    }

    pub fn is_nonzero(&self, row: usize, col: usize) -> bool {
        col >= 1 && self.drivers.get(col - 1) == Some(&row)
    }
}

impl Serialize for InputPattern {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let entries: Vec<[usize; 2]> = self.entries().into_iter().map(|(r, c)| [r, c]).collect();
        entries.serialize(serializer)
    }
}

impl fmt::Display for InputPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in 1..=self.rows {
            let cells: Vec<&str> = (1..=self.cols())
                .map(|c| if self.is_nonzero(row, c) { "×" } else { "0" })
                .collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

pub fn input_matrix_structure(n: usize, drivers: &NodeSet) -> Result<InputPattern> {
    if drivers.is_empty() {
        return Err(Error::argument("driver set is empty"));
    }
    drivers.check_range(n, "driver")?;
    Ok(InputPattern {
        rows: n,
        drivers: drivers.as_slice().to_vec(),
    })
}

/// Everything computed on the way to a driver set.
struct Analysis {
    dilations: Vec<DilationSet>,
    scc: SccDecomposition,
    children: Vec<usize>,
    n_min: usize,
    k_star: usize,
    /// Unmatched right nodes of the final maximum matching, 0-based mask.
    rank_driver: Vec<bool>,
    /// Driver covering each child SCC (1-based), and whether it is also a
    /// rank driver.
    cover: Vec<(usize, bool)>,
    /// Final maximum matching, right node -> left node (0-based).
    final_mate_right: Vec<usize>,
    initial_mate_left: Vec<usize>,
}

fn analyze(g: &Digraph, inaccessible: &NodeSet) -> Result<Analysis> {
    let n = g.node_count();
    inaccessible.check_range(n, "inaccessible")?;
    let blocked = inaccessible.mask(n);

    let b = bipartite_of(g);
    let m = maximum_matching(&b);
    let dilations = dilation_sets_for(&b, &m);
    let scc = scc_decompose(g);
    let children = scc.child_indices();

    for &c in &children {
        let members = &scc.components()[c];
        if members.iter().all(|v| blocked[v - 1]) {
            return Err(Error::Infeasible(Infeasibility::ChildSccInaccessible {
                members: members.as_slice().to_vec(),
            }));
        }
    }
    for d in &dilations {
        if d.members.iter().all(|v| blocked[v - 1]) {
            return Err(Error::Infeasible(Infeasibility::DilationInaccessible {
                members: d.members.as_slice().to_vec(),
            }));
        }
    }

    // Maximum matching of the original graph with every inaccessible right
    // node matched: match those first, then grow without unmatching them.
    let mut base = Matcher::new(b.left_adj(), n);
    if !inaccessible.is_empty() {
        base.greedy(Some(&blocked));
        base.augment(Some(&blocked));
        if base.size() < inaccessible.len() {
            return Err(Error::Infeasible(Infeasibility::NoAccessibleMatching));
        }
    }
    base.greedy(None);
    base.augment(None);
    debug_assert_eq!(base.size(), m.size());

    // One extra left node per child SCC, linked to its accessible members.
    let mut adj: Vec<Vec<usize>> = b.left_adj().to_vec();
    for &c in &children {
        adj.push(
            scc.components()[c]
                .iter()
                .map(|v| v - 1)
                .filter(|&v| !blocked[v])
                .collect(),
        );
    }
    let mut aug = Matcher::new(&adj, n);
    aug.mate_left[..n].copy_from_slice(&base.mate_left);
    aug.mate_right.copy_from_slice(&base.mate_right);
    aug.greedy(None);
    aug.augment(None);

    let rank_driver: Vec<bool> = aug
        .mate_right
        .iter()
        .map(|&l| l == UNSET || l >= n)
        .collect();
    let mut k_star = 0;
    let cover: Vec<(usize, bool)> = children
        .iter()
        .enumerate()
        .map(|(j, &c)| match aug.mate_left[n + j] {
            UNSET => {
                let extra = scc.components()[c]
                    .iter()
                    .find(|&v| !blocked[v - 1])
                    .expect("accessible member checked above");
                (extra, false)
            }
            r => {
                k_star += 1;
                (r + 1, true)
            }
        })
        .collect();

    let final_mate_right = aug
        .mate_right
        .iter()
        .map(|&l| if l >= n { UNSET } else { l })
        .collect();

    Ok(Analysis {
        n_min: dilations.len() + children.len() - k_star,
        dilations,
        scc,
        children,
        k_star,
        rank_driver,
        cover,
        final_mate_right,
        initial_mate_left: m.mate_left0().to_vec(),
    })
}

impl Analysis {
    fn drivers(&self) -> NodeSet {
        self.rank_driver
            .iter()
            .enumerate()
            .filter(|(_, &d)| d)
            .map(|(v, _)| v + 1)
            .chain(self.cover.iter().map(|&(v, _)| v))
            .collect()
    }

    /// Maps each dilation set to a distinct rank driver inside it by walking
    /// the symmetric difference of the initial and final matchings from its
    /// anchor. Returns 1-based nodes, one per dilation set.
    fn representatives(&self) -> Vec<usize> {
        self.dilations
            .iter()
            .map(|d| {
                let mut r = d.anchor - 1;
                while !self.rank_driver[r] {
                    let w = self.final_mate_right[r];
                    r = self.initial_mate_left[w];
                    debug_assert_ne!(r, UNSET, "initial matching is maximum");
                }
                r + 1
            })
            .collect()
    }
}

/// Minimum number of dedicated inputs that make `g` structurally
/// controllable when the nodes in `inaccessible` may not be driven.
pub fn min_driver_count(g: &Digraph, inaccessible: &NodeSet) -> Result<usize> {
    Ok(analyze(g, inaccessible)?.n_min)
}

/// `k*` from the same computation: child SCCs covered by Type-II drivers.
pub fn shared_cover_count(g: &Digraph, inaccessible: &NodeSet) -> Result<usize> {
    Ok(analyze(g, inaccessible)?.k_star)
}

/// Chooses a minimum driver set avoiding `inaccessible` and tags each driver.
///
/// The result is checked against both controllability conditions before it
/// is returned; a failure there is reported as [`Error::Internal`].
pub fn select_driver_nodes(g: &Digraph, inaccessible: &NodeSet) -> Result<DriverReport> {
    let a = analyze(g, inaccessible)?;
    let drivers = a.drivers();
    if drivers.len() != a.n_min {
        return Err(Error::Internal(format!(
            "selected {} drivers, expected {}",
            drivers.len(),
            a.n_min
        )));
    }

    let reps = a.representatives();
    let mut types: BTreeMap<usize, Vec<DriverType>> = BTreeMap::new();
    let mut dilation_of: BTreeMap<usize, usize> = BTreeMap::new();
    for (i, &r) in reps.iter().enumerate() {
        types.entry(r).or_default().push(DriverType::TypeII);
        dilation_of.insert(r, i);
    }
    let mut pairings = Vec::new();
    for (j, &(v, shared)) in a.cover.iter().enumerate() {
        let tags = types.entry(v).or_default();
        tags.insert(0, DriverType::TypeI);
        if shared {
            pairings.push((dilation_of[&v], j, v));
        }
    }
    debug_assert_eq!(pairings.len(), a.k_star);

    let verification = check_conditions(g, &drivers)?;
    if !verification.passed() {
        return Err(Error::Internal(format!(
            "selected drivers {drivers} fail verification: {}",
            verification.verdict()
        )));
    }
    let child_sccs = a
        .children
        .iter()
        .map(|&c| a.scc.components()[c].clone())
        .collect();

    Ok(DriverReport {
        n_min: a.n_min,
        input_pattern: input_matrix_structure(g.node_count(), &drivers)?,
        drivers,
        types,
        dilations: a.dilations,
        child_sccs,
        pairings,
        verified: true,
        verification,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g1() -> Digraph {
        Digraph::new(6, [(1, 2), (2, 1), (2, 3), (2, 4), (1, 5), (1, 6)]).unwrap()
    }

    #[test]
    fn verify_g1() {
        let g = g1();
        assert_eq!(
            verify_structural_controllability(&g, &[1, 4, 5, 6].into()).unwrap(),
            Verdict::Controllable
        );
        assert_eq!(
            verify_structural_controllability(&g, &[3, 4, 5, 6].into()).unwrap(),
            Verdict::FailsConnectivity {
                unreachable: [1, 2].into()
            }
        );
        assert_eq!(
            verify_structural_controllability(&g, &[1].into()).unwrap(),
            Verdict::FailsRank { deficit: 3 }
        );
        assert!(verify_structural_controllability(&g, &NodeSet::new()).is_err());
    }

    #[test]
    fn verify_chain_from_the_end() {
        let chain = Digraph::new(3, [(1, 2), (2, 3)]).unwrap();
        assert_eq!(
            verify_structural_controllability(&chain, &[3].into()).unwrap(),
            Verdict::FailsConnectivity {
                unreachable: [1, 2].into()
            }
        );
    }

    #[test]
    fn g1_selection() {
        let r = select_driver_nodes(&g1(), &NodeSet::new()).unwrap();
        assert_eq!(r.n_min, 4);
        assert_eq!(r.drivers, [1, 4, 5, 6].into());
        assert_eq!(r.types[&1], vec![DriverType::TypeI, DriverType::TypeII]);
        for v in [4, 5, 6] {
            assert_eq!(r.types[&v], vec![DriverType::TypeII]);
        }
        assert_eq!(r.pairings, vec![(0, 0, 1)]);
        assert!(r.verified);
    }

    #[test]
    fn single_node() {
        let g = Digraph::new(1, []).unwrap();
        let r = select_driver_nodes(&g, &NodeSet::new()).unwrap();
        assert_eq!(r.n_min, 1);
        assert_eq!(r.types[&1], vec![DriverType::TypeI, DriverType::TypeII]);
    }

    #[test]
    fn inaccessible_child_scc_is_infeasible() {
        let g = g1();
        assert!(matches!(
            min_driver_count(&g, &[1, 2].into()),
            Err(Error::Infeasible(
                Infeasibility::ChildSccInaccessible { .. }
            ))
        ));
        assert!(matches!(
            min_driver_count(&g, &[3, 1].into()),
            Err(Error::Infeasible(
                Infeasibility::DilationInaccessible { .. }
            ))
        ));
        assert!(min_driver_count(&g, &[9].into()).is_err());
    }

    #[test]
    fn dependent_representatives_are_infeasible() {
        // 1+ -> {3,5,6}, 2+ -> {3,4}: each of {5,3,4} and {6,3,4} has an
        // accessible node once 5 and 6 are blocked, but 3 and 4 cannot be
        // unmatched together.
        let g = Digraph::new(6, [(1, 3), (1, 5), (1, 6), (2, 3), (2, 4)]).unwrap();
        assert_eq!(
            min_driver_count(&g, &[5, 6].into()),
            Err(Error::Infeasible(Infeasibility::NoAccessibleMatching))
        );
    }

    #[test]
    fn input_patterns() {
        let p = input_matrix_structure(6, &[1, 4, 5, 6].into()).unwrap();
        assert_eq!(p.entries(), vec![(1, 1), (4, 2), (5, 3), (6, 4)]);
        assert_eq!(
            p.to_string(),
            "× 0 0 0\n0 0 0 0\n0 0 0 0\n0 × 0 0\n0 0 × 0\n0 0 0 ×\n"
        );
        let p = input_matrix_structure(1, &[1].into()).unwrap();
        assert_eq!(p.entries(), vec![(1, 1)]);
        let p = input_matrix_structure(3, &[2].into()).unwrap();
        assert!(p.is_nonzero(2, 1) && !p.is_nonzero(1, 1) && !p.is_nonzero(3, 1));
        assert!(input_matrix_structure(3, &[4].into()).is_err());
        assert!(input_matrix_structure(3, &NodeSet::new()).is_err());
    }
}
