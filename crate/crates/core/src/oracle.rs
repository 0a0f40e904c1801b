//! Ground-truth checks that share no code with the dilation, SCC or pairing
//! logic: exhaustive search for the smallest driver set, and numeric rank of
//! random realizations over a prime field.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::driver::verify_structural_controllability;
use crate::error::{Error, Result};
use crate::graph::{Digraph, NodeSet};

/// The Mersenne prime 2^31 - 1.
pub const FIELD_PRIME: u64 = (1 << 31) - 1;

pub const DEFAULT_LIMIT: usize = 12;
pub const DEFAULT_TRIALS: usize = 5;

/// Dense matrix over GF([`FIELD_PRIME`]).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldMatrix {
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl FieldMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        FieldMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: u64) {
        self.data[r * self.cols + c] = value % FIELD_PRIME;
    }

    pub fn mul(&self, other: &FieldMatrix) -> FieldMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = FieldMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] = (out.data[idx] + a * other.get(k, j)) % FIELD_PRIME;
                }
            }
        }
        out
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hcat(&self, other: &FieldMatrix) -> FieldMatrix {
        assert_eq!(self.rows, other.rows, "dimension mismatch");
        let mut out = FieldMatrix::zeros(self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.data[r * out.cols + c] = self.get(r, c);
            }
            for c in 0..other.cols {
                out.data[r * out.cols + self.cols + c] = other.get(r, c);
            }
        }
        out
    }

    /// Rank by Gaussian elimination.
    pub fn rank(&self) -> usize {
        let mut m = self.data.clone();
        let (rows, cols) = (self.rows, self.cols);
        let mut rank = 0;
        for col in 0..cols {
            let Some(pivot) = (rank..rows).find(|&r| m[r * cols + col] != 0) else {
                continue;
            };
            if pivot != rank {
                for c in 0..cols {
                    m.swap(pivot * cols + c, rank * cols + c);
                }
            }
            let inv = inverse(m[rank * cols + col]);
            for r in 0..rows {
                if r == rank || m[r * cols + col] == 0 {
                    continue;
                }
                let factor = m[r * cols + col] * inv % FIELD_PRIME;
                for c in col..cols {
                    let sub = factor * m[rank * cols + c] % FIELD_PRIME;
                    m[r * cols + c] = (m[r * cols + c] + FIELD_PRIME - sub) % FIELD_PRIME;
                }
            }
            rank += 1;
            if rank == rows {
                break;
            }
        }
        rank
    }
}

fn pow_mod(mut base: u64, mut exp: u64) -> u64 {
    let mut acc = 1;
    base %= FIELD_PRIME;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % FIELD_PRIME;
        }
        base = base * base % FIELD_PRIME;
        exp >>= 1;
    }
    acc
}

fn inverse(a: u64) -> u64 {
    pow_mod(a, FIELD_PRIME - 2)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BruteForceOutcome {
    Found { count: usize, witness: NodeSet },
    Infeasible,
}

/// Smallest accessible driver set found by trying subsets in increasing
/// size, lexicographically within a size.
pub fn brute_force_min_drivers(
    g: &Digraph,
    inaccessible: &NodeSet,
    limit: usize,
) -> Result<BruteForceOutcome> {
    let n = g.node_count();
    if n > limit {
        return Err(Error::TooLarge { n, limit });
    }
    inaccessible.check_range(n, "inaccessible")?;
    let pool: Vec<usize> = (1..=n).filter(|&v| !inaccessible.contains(v)).collect();
    for size in 1..=pool.len() {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            let candidate: NodeSet = idx.iter().map(|&i| pool[i]).collect();
            if verify_structural_controllability(g, &candidate)?.is_controllable() {
                return Ok(BruteForceOutcome::Found {
                    count: size,
                    witness: candidate,
                });
            }
            // Next combination in lexicographic order.
            let Some(k) = (0..size).rev().find(|&k| idx[k] < pool.len() - size + k) else {
                break;
            };
            idx[k] += 1;
            for t in k + 1..size {
                idx[t] = idx[t - 1] + 1;
            }
        }
    }
    Ok(BruteForceOutcome::Infeasible)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NumericOutcome {
    FullRank,
    RankDeficient { max_rank: usize },
}

impl NumericOutcome {
    pub fn is_full_rank(&self) -> bool {
        matches!(self, NumericOutcome::FullRank)
    }
}

fn nonzero(rng: &mut ChaCha8Rng) -> u64 {
    rng.gen_range(1..FIELD_PRIME)
}

/// Random realization of the state matrix: edge `i -> j` puts a nonzero at
/// row `j`, column `i`.
pub fn random_state_matrix(g: &Digraph, rng: &mut ChaCha8Rng) -> FieldMatrix {
    let n = g.node_count();
    let mut a = FieldMatrix::zeros(n, n);
    for (i, j) in g.edges() {
        a.set(j - 1, i - 1, nonzero(rng));
    }
    a
}

/// Random realization of the input matrix: column `k` nonzero at the `k`-th
/// smallest driver.
pub fn random_input_matrix(n: usize, drivers: &NodeSet, rng: &mut ChaCha8Rng) -> FieldMatrix {
    let mut b = FieldMatrix::zeros(n, drivers.len());
    for (k, d) in drivers.iter().enumerate() {
        b.set(d - 1, k, nonzero(rng));
    }
    b
}

/// `[B, AB, A^2 B, ..., A^(n-1) B]`.
pub fn controllability_matrix(a: &FieldMatrix, b: &FieldMatrix) -> FieldMatrix {
    let n = a.rows();
    let mut blocks = b.clone();
    let mut power = b.clone();
    for _ in 1..n {
        power = a.mul(&power);
        blocks = blocks.hcat(&power);
    }
    blocks
}

fn check_args(g: &Digraph, drivers: &NodeSet, trials: usize) -> Result<()> {
    if drivers.is_empty() {
        return Err(Error::argument("driver set is empty"));
    }
    if trials == 0 {
        return Err(Error::argument("at least one trial is required"));
    }
    drivers.check_range(g.node_count(), "driver")
}

/// Rank of the controllability matrix of random realizations. Any trial
/// reaching rank `n` certifies full rank.
pub fn numeric_controllability_check(
    g: &Digraph,
    drivers: &NodeSet,
    trials: usize,
    seed: u64,
) -> Result<NumericOutcome> {
    check_args(g, drivers, trials)?;
    let n = g.node_count();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best = 0;
    for _ in 0..trials {
        let a = random_state_matrix(g, &mut rng);
        let b = random_input_matrix(n, drivers, &mut rng);
        best = best.max(controllability_matrix(&a, &b).rank());
        if best == n {
            return Ok(NumericOutcome::FullRank);
        }
    }
    Ok(NumericOutcome::RankDeficient { max_rank: best })
}

/// Largest rank of `[A | B]` seen over random realizations.
pub fn numeric_rank_with_drivers(
    g: &Digraph,
    drivers: &NodeSet,
    trials: usize,
    seed: u64,
) -> Result<usize> {
    if trials == 0 {
        return Err(Error::argument("at least one trial is required"));
    }
    drivers.check_range(g.node_count(), "driver")?;
    let n = g.node_count();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best = 0;
    for _ in 0..trials {
        let a = random_state_matrix(g, &mut rng);
        let b = random_input_matrix(n, drivers, &mut rng);
        best = best.max(a.hcat(&b).rank());
    }
    Ok(best)
}
