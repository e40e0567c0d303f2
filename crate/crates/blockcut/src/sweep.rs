//! The n+1-candidate prefix sweep and the end-to-end detection pipeline.
//!
//! Given a vertex ordering (in practice: sorted by eigenvector entry), the
//! sweep scores every prefix-vs-suffix split with the profile
//! log-likelihood, maintaining the split statistics incrementally so the
//! whole pass costs O(n + m). `detect` glues the stages together:
//! eigenvector → ordering → sweep → argmax.

use std::borrow::Cow;
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::likelihood::{profile_log_likelihood, split_stats, SplitStats, Variant};
use crate::partition::{Group, Partition};
use crate::scalar::Real;
use crate::spectral::{fiedler_vector, generalized_fiedler_vector, vertex_order, EigenOptions};

/// Outcome of a sweep: the ordering used, all n+1 candidate values, and the
/// argmax split. `q_values[s]` scores the partition whose group 1 is the
/// first s vertices of `order`; indices refer to the graph the sweep ran on.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepResult<T> {
    pub order: Vec<usize>,
    pub q_values: Vec<T>,
    pub best_size: usize,
    pub best_partition: Partition,
    pub variant: Variant,
}

/// Scores all n+1 prefix splits of `order` and returns the argmax, with
/// ties resolved toward the smallest group-1 size. O(n + m) total.
pub fn sweep<T: Real>(g: &Graph, order: &[usize], variant: Variant) -> Result<SweepResult<T>> {
    let n = g.vertex_count();
    if order.len() != n {
        return Err(Error::InvalidOrder {
            n,
            msg: format!("length {} differs from vertex count", order.len()),
        });
    }
    let mut seen = vec![false; n];
    for &v in order {
        if v >= n {
            return Err(Error::InvalidOrder {
                n,
                msg: format!("vertex {v} out of range"),
            });
        }
        if seen[v] {
            return Err(Error::InvalidOrder {
                n,
                msg: format!("vertex {v} appears twice"),
            });
        }
        seen[v] = true;
    }

    let m = g.edge_count();
    let total_degree: u64 = g.degrees().iter().sum();
    let mut stats = SplitStats {
        n1: 0,
        n2: n as u64,
        kappa1: 0,
        kappa2: total_degree,
        m_in: m,
        m_out: 0,
    };
    let mut in_group1 = vec![false; n];
    let mut q_values: Vec<T> = Vec::with_capacity(n + 1);
    q_values.push(profile_log_likelihood(&stats, variant)?);

    for &v in order {
        // Moving v from group 2 to group 1: its edges toward group 1 were
        // cut and become internal; its edges toward group 2 were internal
        // and become cut.
        let k = g.degree(v);
        let mut d1 = 0u64;
        for (u, w) in g.neighbors(v) {
            if in_group1[u] {
                d1 += w as u64;
            }
        }
        let d2 = k - d1;
        debug_assert!(stats.m_in >= d2 && stats.m_out >= d1);
        stats.n1 += 1;
        stats.n2 -= 1;
        stats.kappa1 += k;
        stats.kappa2 -= k;
        stats.m_in = stats.m_in - d2 + d1;
        stats.m_out = stats.m_out - d1 + d2;
        in_group1[v] = true;
        q_values.push(profile_log_likelihood(&stats, variant)?);
    }

    let mut best_size = 0;
    for (s, &q) in q_values.iter().enumerate() {
        if q > q_values[best_size] {
            best_size = s;
        }
    }
    let mut labels = vec![Group::Two; n];
    for &v in &order[..best_size] {
        labels[v] = Group::One;
    }
    Ok(SweepResult {
        order: order.to_vec(),
        q_values,
        best_size,
        best_partition: Partition::new(labels),
        variant,
    })
}

/// Spectral-stage diagnostics carried through [`DetectionResult`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EigenDiagnostics<T> {
    pub eigenvalue: T,
    pub iterations: usize,
    pub residual: T,
}

/// Everything `detect` produces: the chosen partition on the full graph,
/// its statistics, the sweep it came from, and spectral diagnostics.
///
/// Isolated vertices are excluded from the spectral stage. When any exist,
/// `sweep` (and its `order` and `best_partition`) refer to the stripped
/// subgraph, and `active_vertices` maps subgraph index → original vertex
/// id; it is `None` when the graph was used as-is. `q` is the sweep argmax
/// value, so for the standard variant it is computed on the stripped
/// subgraph's group sizes, while `stats` always describes `partition` on
/// the full graph.
#[derive(Clone, Debug, PartialEq)]
pub struct DetectionResult<T> {
    pub partition: Partition,
    pub stats: SplitStats,
    pub q: T,
    pub sweep: SweepResult<T>,
    pub eigen: EigenDiagnostics<T>,
    pub isolated_vertices: Vec<usize>,
    pub active_vertices: Option<Vec<usize>>,
    pub component_count: usize,
}

/// How `detect` treats degree-0 vertices; recorded in serialized results.
pub const ISOLATED_VERTEX_POLICY: &str = "excluded-from-spectral-stage-then-assigned-to-larger-group";

/// Runs the full pipeline on `g`: second eigenvector of the chosen variant,
/// eigenvector-sorted sweep, argmax split. Isolated vertices are stripped
/// before the spectral stage and afterward assigned to the larger group
/// (group 1 on ties). A graph with no edges at all short-circuits to the
/// single-group answer.
pub fn detect<T: Real>(
    g: &Graph,
    variant: Variant,
    opts: &EigenOptions<T>,
) -> Result<DetectionResult<T>> {
    let n = g.vertex_count();
    if n < 2 {
        return Err(Error::TooFewVertices { n, min: 2 });
    }
    let isolated: Vec<usize> = (0..n).filter(|&v| g.degree(v) == 0).collect();

    if g.edge_count() == 0 {
        let partition = Partition::uniform(n, Group::One);
        let stats = split_stats(g, &partition)?;
        return Ok(DetectionResult {
            partition,
            stats,
            q: T::zero(),
            sweep: SweepResult {
                order: Vec::new(),
                q_values: vec![T::zero()],
                best_size: 0,
                best_partition: Partition::new(Vec::new()),
                variant,
            },
            eigen: EigenDiagnostics {
                eigenvalue: T::zero(),
                iterations: 0,
                residual: T::zero(),
            },
            isolated_vertices: isolated,
            active_vertices: Some(Vec::new()),
            component_count: n,
        });
    }

    let (sub, active): (Cow<'_, Graph>, Option<Vec<usize>>) = if isolated.is_empty() {
        (Cow::Borrowed(g), None)
    } else {
        let mut new_id = vec![usize::MAX; n];
        let mut active = Vec::with_capacity(n - isolated.len());
        for (v, id) in new_id.iter_mut().enumerate() {
            if g.degree(v) > 0 {
                *id = active.len();
                active.push(v);
            }
        }
        let mut triples = Vec::new();
        for u in 0..n {
            for (v, w) in g.neighbors(u) {
                if v > u {
                    triples.push((new_id[u], new_id[v], w));
                }
            }
        }
        (
            Cow::Owned(Graph::from_weighted_pairs(active.len(), triples)?),
            Some(active),
        )
    };

    let sub_components = sub.connected_components().count;
    if sub_components > 1 {
        log::warn!(
            "graph has {sub_components} connected components after stripping isolated vertices; \
             the spectral stage will separate components rather than communities"
        );
    }

    let eigen = match variant {
        Variant::Standard => fiedler_vector(sub.as_ref(), opts)?,
        Variant::DegreeCorrected => generalized_fiedler_vector(sub.as_ref(), opts)?,
    };
    let order = vertex_order(&eigen.vector);
    let sweep_result = sweep::<T>(sub.as_ref(), &order, variant)?;
    let q = sweep_result.q_values[sweep_result.best_size];

    let partition = match &active {
        None => sweep_result.best_partition.clone(),
        Some(map) => {
            let mut labels = vec![Group::One; n];
            for (sub_v, &orig) in map.iter().enumerate() {
                labels[orig] = sweep_result.best_partition.group(sub_v);
            }
            let (s1, s2) = sweep_result.best_partition.group_sizes();
            let larger = if s1 >= s2 { Group::One } else { Group::Two };
            for &v in &isolated {
                labels[v] = larger;
            }
            Partition::new(labels)
        }
    };
    let stats = split_stats(g, &partition)?;

    Ok(DetectionResult {
        partition,
        stats,
        q,
        sweep: sweep_result,
        eigen: EigenDiagnostics {
            eigenvalue: eigen.eigenvalue,
            iterations: eigen.iterations,
            residual: eigen.residual,
        },
        isolated_vertices: isolated,
        active_vertices: active,
        component_count: sub_components + g.vertex_count() - sub.vertex_count(),
    })
}

/// Flat, JSON-ready form of a detection result.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DetectionDocument {
    pub n: usize,
    pub m: u64,
    pub variant: String,
    pub labels: Vec<u8>,
    pub n1: u64,
    pub n2: u64,
    pub kappa1: u64,
    pub kappa2: u64,
    pub m_in: u64,
    pub m_out: u64,
    pub q: f64,
    pub eigen_iterations: usize,
    pub eigen_residual: f64,
    pub isolated_vertex_policy: String,
}

impl<T: Real> DetectionResult<T> {
    pub fn to_document(&self) -> DetectionDocument {
        DetectionDocument {
            n: self.partition.len(),
            m: self.stats.m_in + self.stats.m_out,
            variant: self.sweep.variant.to_string(),
            labels: self.partition.label_bytes(),
            n1: self.stats.n1,
            n2: self.stats.n2,
            kappa1: self.stats.kappa1,
            kappa2: self.stats.kappa2,
            m_in: self.stats.m_in,
            m_out: self.stats.m_out,
            q: self.q.to_f64_lossy(),
            eigen_iterations: self.eigen.iterations,
            eigen_residual: self.eigen.residual.to_f64_lossy(),
            isolated_vertex_policy: ISOLATED_VERTEX_POLICY.to_string(),
        }
    }
}

/// Formats with 9 significant digits, the fixed precision of every CSV
/// this crate emits.
pub fn format_sig9(x: f64) -> String {
    format!("{x:.8e}")
}

/// Writes the sweep curve as CSV with header `size,q`.
pub fn write_sweep_csv<T: Real>(res: &SweepResult<T>, out: &mut impl Write) -> std::io::Result<()> {
    writeln!(out, "size,q")?;
    for (size, q) in res.q_values.iter().enumerate() {
        writeln!(out, "{},{}", size, format_sig9(q.to_f64_lossy()))?;
    }
    Ok(())
}
