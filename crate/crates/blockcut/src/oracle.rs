//! Brute-force references for small instances and scoring utilities.
//!
//! These exist to validate the spectral pipeline, so they share as little
//! machinery with it as possible: plain exhaustive enumeration over label
//! vectors, no orderings, no incremental updates.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::likelihood::{profile_log_likelihood, SplitStats, Variant};
use crate::partition::{Group, Partition};
use crate::scalar::Real;

/// Largest vertex count the exhaustive searches accept (~8M evaluations).
pub const MAX_EXHAUSTIVE_VERTICES: usize = 24;

/// Outcome of an exhaustive search.
#[derive(Clone, Debug, PartialEq)]
pub struct OracleResult<T> {
    pub best_partition: Partition,
    pub best_value: T,
    pub evaluated: u64,
}

fn check_size(n: usize) -> Result<()> {
    if n < 1 {
        return Err(Error::TooFewVertices { n, min: 1 });
    }
    if n > MAX_EXHAUSTIVE_VERTICES {
        return Err(Error::TooManyVertices {
            n,
            max: MAX_EXHAUSTIVE_VERTICES,
        });
    }
    Ok(())
}

/// Label vector for a mask; bit i−1 set means vertex i is in group 2.
/// Vertex 0 is fixed in group 1, which halves the search space since the
/// objectives are label-swap invariant.
fn partition_from_mask(n: usize, mask: u64) -> Partition {
    let mut labels = vec![Group::One; n];
    for (v, label) in labels.iter_mut().enumerate().skip(1) {
        if mask >> (v - 1) & 1 == 1 {
            *label = Group::Two;
        }
    }
    Partition::new(labels)
}

/// True when mask `a` yields the lexicographically smaller label vector.
fn mask_lex_less(a: u64, b: u64, n: usize) -> bool {
    for v in 1..n {
        let la = a >> (v - 1) & 1;
        let lb = b >> (v - 1) & 1;
        if la != lb {
            return la < lb;
        }
    }
    false
}

/// Maximizes the profile log-likelihood over all 2^(n−1) label-swap classes
/// by direct enumeration. Ties resolve to the lexicographically smallest
/// label vector.
pub fn brute_force_max_profile<T: Real>(g: &Graph, variant: Variant) -> Result<OracleResult<T>> {
    let n = g.vertex_count();
    check_size(n)?;
    let m = g.edge_count();
    let degrees = g.degrees();
    let total_degree: u64 = degrees.iter().sum();
    let mut edges: Vec<(usize, usize, u64)> = Vec::new();
    for u in 0..n {
        for (v, w) in g.neighbors(u) {
            if v > u {
                edges.push((u, v, w as u64));
            }
        }
    }

    let classes = 1u64 << (n - 1);
    let mut best_mask = 0u64;
    let mut best_value: Option<T> = None;
    for mask in 0..classes {
        let mut n2 = 0u64;
        let mut kappa2 = 0u64;
        for (v, &degree) in degrees.iter().enumerate().skip(1) {
            if mask >> (v - 1) & 1 == 1 {
                n2 += 1;
                kappa2 += degree;
            }
        }
        let mut m_out = 0u64;
        for &(u, v, w) in &edges {
            let gu = u != 0 && mask >> (u - 1) & 1 == 1;
            let gv = v != 0 && mask >> (v - 1) & 1 == 1;
            if gu != gv {
                m_out += w;
            }
        }
        let stats = SplitStats {
            n1: n as u64 - n2,
            n2,
            kappa1: total_degree - kappa2,
            kappa2,
            m_in: m - m_out,
            m_out,
        };
        let q = profile_log_likelihood::<T>(&stats, variant)?;
        let better = match best_value {
            None => true,
            Some(bv) => q > bv || (q == bv && mask_lex_less(mask, best_mask, n)),
        };
        if better {
            best_mask = mask;
            best_value = Some(q);
        }
    }
    Ok(OracleResult {
        best_partition: partition_from_mask(n, best_mask),
        best_value: best_value.expect("at least one class evaluated"),
        evaluated: classes,
    })
}

/// Exact minimum cut over all partitions with |group 1| = n1, by direct
/// enumeration. Among tied minimizers the witness partition is the first in
/// ascending bit-mask order, which is deterministic.
pub fn min_cut_fixed_sizes(g: &Graph, n1: usize) -> Result<(Partition, u64)> {
    let n = g.vertex_count();
    check_size(n)?;
    if n1 > n {
        return Err(Error::InvalidGroupSize { n1, n });
    }
    let mut edges: Vec<(usize, usize, u64)> = Vec::new();
    for u in 0..n {
        for (v, w) in g.neighbors(u) {
            if v > u {
                edges.push((u, v, w as u64));
            }
        }
    }

    // Here bit v set means vertex v is in group 1; sizes are fixed so the
    // label-swap reduction does not apply.
    let mut best: Option<(u64, u64)> = None;
    for mask in 0..(1u64 << n) {
        if mask.count_ones() as usize != n1 {
            continue;
        }
        let mut cut = 0u64;
        for &(u, v, w) in &edges {
            if (mask >> u & 1) != (mask >> v & 1) {
                cut += w;
            }
        }
        if best.is_none_or(|(bc, _)| cut < bc) {
            best = Some((cut, mask));
        }
    }
    let (cut, mask) = best.expect("at least one subset of size n1 exists");
    let mut labels = vec![Group::Two; n];
    for (v, label) in labels.iter_mut().enumerate() {
        if mask >> v & 1 == 1 {
            *label = Group::One;
        }
    }
    Ok((Partition::new(labels), cut))
}

/// Fraction of vertices on which two partitions agree, maximized over the
/// two label permutations; 1.0 means identical up to a global swap.
pub fn fraction_correct(found: &Partition, truth: &Partition) -> Result<f64> {
    if found.len() != truth.len() {
        return Err(Error::PartitionLengthMismatch {
            got: found.len(),
            expected: truth.len(),
        });
    }
    let n = found.len();
    if n == 0 {
        return Ok(1.0);
    }
    let agree = (0..n).filter(|&v| found.group(v) == truth.group(v)).count();
    Ok(agree.max(n - agree) as f64 / n as f64)
}
