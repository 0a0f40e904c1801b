//! Seeded random digraph generators.
//!
//! All generators draw from ChaCha8 seeded with the caller's 64-bit seed and
//! only sample through `u64`/`f64` distributions, so a given
//! `(model, n, seed)` produces the same edge set on every platform.
//! Generated graphs never contain self-loops.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Digraph;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Model {
    /// Each ordered pair `(i, j)`, `i != j`, is an edge with probability `p`.
    ErdosRenyi { p: f64 },
    /// Directed ring lattice with out-degree `k` (`k/2` successors and
    /// `k/2` predecessors on the ring), each edge target rewired with
    /// probability `beta`.
    SmallWorld { k: usize, beta: f64 },
    /// Growth by preferential attachment on in-degree: every new node sends
    /// `m` edges to distinct existing nodes picked with weight
    /// `1 + in_degree`. The first `m` nodes form a complete digraph.
    ScaleFree { m: usize },
}

impl Model {
    fn validate(&self, n: usize) -> Result<()> {
        let unit = |x: f64| (0.0..=1.0).contains(&x);
        match *self {
            Model::ErdosRenyi { p } if !unit(p) => Err(Error::argument(format!(
                "edge probability {p} outside [0, 1]"
            ))),
            Model::SmallWorld { k, .. } if k % 2 != 0 => {
                Err(Error::argument(format!("lattice degree {k} must be even")))
            }
            Model::SmallWorld { k, .. } if k >= n => Err(Error::argument(format!(
                "lattice degree {k} needs more than {k} nodes, got {n}"
            ))),
            Model::SmallWorld { beta, .. } if !unit(beta) => Err(Error::argument(format!(
                "rewiring probability {beta} outside [0, 1]"
            ))),
            Model::ScaleFree { m: 0 } => {
                Err(Error::argument("attachment count m must be at least 1"))
            }
            _ => Ok(()),
        }
    }
}

pub fn generate_random(model: Model, n: usize, seed: u64) -> Result<Digraph> {
    if n == 0 {
        return Err(Error::argument("node count must be at least 1"));
    }
    model.validate(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges = match model {
        Model::ErdosRenyi { p } => erdos_renyi(n, p, &mut rng),
        Model::SmallWorld { k, beta } => small_world(n, k, beta, &mut rng),
        Model::ScaleFree { m } => scale_free(n, m, &mut rng),
    };
    Digraph::new(n, edges)
}

fn below(rng: &mut ChaCha8Rng, bound: usize) -> usize {
    rng.gen_range(0..bound as u64) as usize
}

// Walks the n(n-1) ordered non-loop pairs with geometric skips, which has the
// same distribution as one Bernoulli draw per pair.
fn erdos_renyi(n: usize, p: f64, rng: &mut ChaCha8Rng) -> Vec<(usize, usize)> {
    let total = (n as u64) * (n as u64 - 1);
    let pair = |k: u64| {
        let i = (k / (n as u64 - 1)) as usize;
        let jj = (k % (n as u64 - 1)) as usize;
        let j = if jj >= i { jj + 1 } else { jj };
        (i + 1, j + 1)
    };
    if p <= 0.0 || total == 0 {
        return Vec::new();
    }
    if p >= 1.0 {
        return (0..total).map(pair).collect();
    }
    let log_q = (1.0 - p).ln();
    let mut edges = Vec::new();
    let mut k: u64 = 0;
    loop {
        let u: f64 = rng.gen();
        let skip = ((1.0 - u).ln() / log_q).floor();
        if !skip.is_finite() || skip >= (total - k) as f64 {
            break;
        }
        k += skip as u64;
        edges.push(pair(k));
        k += 1;
        if k >= total {
            break;
        }
    }
    edges
}

fn small_world(n: usize, k: usize, beta: f64, rng: &mut ChaCha8Rng) -> Vec<(usize, usize)> {
    let mut out: Vec<Vec<usize>> = (0..n)
        .map(|i| {
            (1..=k / 2)
                .flat_map(|d| [(i + d) % n, (i + n - d) % n])
                .collect()
        })
        .collect();
    for (i, targets) in out.iter_mut().enumerate() {
        for slot in 0..targets.len() {
            if rng.gen::<f64>() >= beta || targets.len() >= n - 1 {
                continue;
            }
            let target = loop {
                let t = below(rng, n);
                if t != i && !targets.contains(&t) {
                    break t;
                }
            };
            targets[slot] = target;
        }
    }
    out.into_iter()
        .enumerate()
        .flat_map(|(i, ts)| ts.into_iter().map(move |j| (i + 1, j + 1)))
        .collect()
}

fn scale_free(n: usize, m: usize, rng: &mut ChaCha8Rng) -> Vec<(usize, usize)> {
    let seed_nodes = m.min(n);
    let mut edges = Vec::new();
    // Every node appears once, plus once per incoming edge.
    let mut pool: Vec<usize> = (0..seed_nodes).collect();
    for i in 0..seed_nodes {
        for j in 0..seed_nodes {
            if i != j {
                edges.push((i + 1, j + 1));
                pool.push(j);
            }
        }
    }
    let mut chosen = Vec::with_capacity(m);
    for v in seed_nodes..n {
        chosen.clear();
        while chosen.len() < m {
            let t = pool[below(rng, pool.len())];
            if !chosen.contains(&t) {
                chosen.push(t);
            }
        }
        for &t in &chosen {
            edges.push((v + 1, t + 1));
            pool.push(t);
        }
        pool.push(v);
    }
    edges
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn er_extremes() {
        let g = generate_random(Model::ErdosRenyi { p: 0.0 }, 5, 7).unwrap();
        assert_eq!((g.node_count(), g.edge_count()), (5, 0));
        let g = generate_random(Model::ErdosRenyi { p: 1.0 }, 4, 1).unwrap();
        assert_eq!(g.edge_count(), 12);
        assert!(g.edges().all(|(i, j)| i != j));
    }

    #[test]
    fn er_density_is_plausible() {
        let n = 300;
        let p = 0.05;
        let g = generate_random(Model::ErdosRenyi { p }, n, 3).unwrap();
        let expected = p * (n * (n - 1)) as f64;
        let sd = (expected * (1.0 - p)).sqrt();
        assert!((g.edge_count() as f64 - expected).abs() < 5.0 * sd);
    }

    #[test]
    fn small_world_lattice_without_rewiring() {
        let g = generate_random(Model::SmallWorld { k: 2, beta: 0.0 }, 5, 0).unwrap();
        assert_eq!(g.edge_count(), 10);
        assert!(g.has_edge(1, 2) && g.has_edge(1, 5) && g.has_edge(5, 1));
    }

    #[test]
    fn small_world_rewiring_keeps_out_degree() {
        let g = generate_random(Model::SmallWorld { k: 4, beta: 0.5 }, 40, 11).unwrap();
        assert_eq!(g.edge_count(), 160);
        for v in 1..=40 {
            assert_eq!(g.successors(v).count(), 4);
            assert!(!g.has_edge(v, v));
        }
    }

    #[test]
    fn scale_free_edge_count() {
        let g = generate_random(Model::ScaleFree { m: 2 }, 100, 42).unwrap();
        assert_eq!(g.edge_count(), 2 * 98 + 2);
        for v in 3..=100 {
            assert_eq!(g.successors(v).count(), 2);
            assert!(g.successors(v).all(|t| t < v));
        }
    }

    #[test]
    fn reproducible() {
        for model in [
            Model::ErdosRenyi { p: 0.2 },
            Model::SmallWorld { k: 4, beta: 0.3 },
            Model::ScaleFree { m: 3 },
        ] {
            let a = generate_random(model, 50, 99).unwrap();
            let b = generate_random(model, 50, 99).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(generate_random(Model::ErdosRenyi { p: 1.5 }, 5, 0).is_err());
        assert!(generate_random(Model::SmallWorld { k: 3, beta: 0.1 }, 10, 0).is_err());
        assert!(generate_random(Model::SmallWorld { k: 4, beta: 0.1 }, 4, 0).is_err());
        assert!(generate_random(Model::SmallWorld { k: 2, beta: -0.1 }, 10, 0).is_err());
        assert!(generate_random(Model::ScaleFree { m: 0 }, 10, 0).is_err());
        assert!(generate_random(Model::ErdosRenyi { p: 0.5 }, 0, 0).is_err());
    }
}
