//! Minimal driver-node selection for structural controllability of directed
//! system graphs.
//!
//! A system digraph has one node per state variable and an edge `i -> j`
//! whenever state `i` influences the dynamics of state `j`. The library finds
//! the smallest set of nodes that must receive a dedicated input for the
//! system to be structurally controllable, combining two graph structures:
//!
//! * dilation sets, found from a maximum bipartite matching ([`matching`],
//!   [`dilation`]), which govern the rank condition;
//! * child SCCs, the source components of the condensation ([`scc`]), which
//!   govern input connectivity.
//!
//! [`driver`] combines them into a [`DriverReport`], and [`oracle`] provides
//! independent exhaustive and numeric checks.
//!
//! Node indices are 1-based in every public interface.

pub mod dilation;
pub mod driver;
pub mod error;
pub mod fixtures;
pub mod generate;
pub mod graph;
pub mod io;
pub mod matching;
pub mod oracle;
pub mod pairing;
pub mod report;
pub mod scc;

pub use dilation::{alternating_reachable, dilation_sets, DilationSet};
pub use driver::{
    input_matrix_structure, min_driver_count, select_driver_nodes, shared_cover_count,
    verify_structural_controllability, DriverType, InputPattern, Verdict,
};
pub use error::{Error, Infeasibility, Result};
pub use generate::{generate_random, Model};
pub use graph::{bipartite_of, transpose, BipartiteGraph, Digraph, NodeSet};
pub use io::{parse_graph, Format};
pub use matching::{
    has_augmenting_path, maximum_matching, s_rank, s_rank_with_drivers, unmatched_nodes, Matching,
};
pub use oracle::{
    brute_force_min_drivers, numeric_controllability_check, numeric_rank_with_drivers,
    BruteForceOutcome, FieldMatrix, NumericOutcome,
};
pub use pairing::{pair_decomposition, Pairing};
pub use report::DriverReport;
pub use scc::{child_sccs, dfs_forest, scc_decompose, DfsAttributes, SccDecomposition};
