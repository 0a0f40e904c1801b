//! Graph builders shared by the benchmarks.

use structctl::{generate_random, Digraph, Model};

/// Sizes used by every scaling group.
pub const SIZES: [usize; 4] = [1_000, 2_000, 4_000, 8_000];

/// Erdős–Rényi digraph with the given mean out-degree.
pub fn er_graph(n: usize, mean_degree: f64, seed: u64) -> Digraph {
    let p = (mean_degree / (n.max(2) - 1) as f64).min(1.0);
    generate_random(Model::ErdosRenyi { p }, n, seed).expect("valid parameters")
}

pub fn scale_free_graph(n: usize, m: usize, seed: u64) -> Digraph {
    generate_random(Model::ScaleFree { m }, n, seed).expect("valid parameters")
}

pub fn small_world_graph(n: usize, k: usize, beta: f64, seed: u64) -> Digraph {
    generate_random(Model::SmallWorld { k, beta }, n, seed).expect("valid parameters")
}
