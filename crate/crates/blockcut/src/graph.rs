//! Undirected multigraph with integer edge multiplicities, stored in
//! compressed sparse row form.
//!
//! Vertex ids are dense 0-based integers; callers with sparse id spaces must
//! remap before construction. Multiplicities are first-class because the
//! Poisson edge model permits multi-edges, and every downstream statistic
//! (degrees, within/between edge counts) is multiplicity-weighted.

use std::io::{BufRead, Write};

use crate::error::{Error, Result};
use crate::partition::{Group, Partition};

/// Immutable undirected multigraph in CSR form.
///
/// Both orientations of every edge are stored, so `neighbors(v)` is a
/// complete sorted adjacency row. `degree(v)` sums multiplicities, and
/// `edge_count` counts undirected edges with multiplicity, so
/// `Σ degree = 2·edge_count` always holds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    targets: Vec<u32>,
    multiplicities: Vec<u32>,
    degrees: Vec<u64>,
    edge_count: u64,
}

impl Graph {
    /// Builds a graph from unweighted endpoint pairs; repeated pairs
    /// accumulate multiplicity.
    pub fn from_pairs(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Graph> {
        Self::from_weighted_pairs(n, pairs.into_iter().map(|(u, v)| (u, v, 1)))
    }

    /// Builds a graph from `(u, v, multiplicity)` triples. Orientation is
    /// ignored and repeated pairs accumulate.
    pub fn from_weighted_pairs(
        n: usize,
        triples: impl IntoIterator<Item = (usize, usize, u32)>,
    ) -> Result<Graph> {
        let mut edges: Vec<(u32, u32, u32)> = Vec::new();
        for (u, v, w) in triples {
            if u == v {
                return Err(Error::SelfLoop { vertex: u });
            }
            if u >= n {
                return Err(Error::VertexOutOfRange { vertex: u, n });
            }
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            if w == 0 {
                continue;
            }
            let (a, b) = if u < v { (u, v) } else { (v, u) };
            edges.push((a as u32, b as u32, w));
        }
        edges.sort_unstable_by_key(|&(a, b, _)| (a, b));

        let mut merged: Vec<(u32, u32, u32)> = Vec::with_capacity(edges.len());
        for (a, b, w) in edges {
            match merged.last_mut() {
                Some((pa, pb, pw)) if *pa == a && *pb == b => {
                    *pw = pw.checked_add(w).ok_or(Error::MultiplicityOverflow {
                        u: a as usize,
                        v: b as usize,
                    })?;
                }
                _ => merged.push((a, b, w)),
            }
        }
        Ok(Self::from_canonical_edges(n, &merged))
    }

    /// CSR assembly from deduplicated edges with u < v, sorted.
    fn from_canonical_edges(n: usize, edges: &[(u32, u32, u32)]) -> Graph {
        let mut row_len = vec![0usize; n];
        for &(a, b, _) in edges {
            row_len[a as usize] += 1;
            row_len[b as usize] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0usize);
        for v in 0..n {
            offsets.push(offsets[v] + row_len[v]);
        }
        let nnz = offsets[n];
        let mut targets = vec![0u32; nnz];
        let mut multiplicities = vec![0u32; nnz];
        let mut cursor = offsets[..n].to_vec();
        for &(a, b, w) in edges {
            let (a, b) = (a as usize, b as usize);
            targets[cursor[a]] = b as u32;
            multiplicities[cursor[a]] = w;
            cursor[a] += 1;
            targets[cursor[b]] = a as u32;
            multiplicities[cursor[b]] = w;
            cursor[b] += 1;
        }
        // Each row is already sorted: edges arrive sorted by (min, max), so
        // row a receives ascending b, and row b ascending a.
        let mut degrees = vec![0u64; n];
        let mut total = 0u64;
        for v in 0..n {
            let mut k = 0u64;
            for &w in &multiplicities[offsets[v]..offsets[v + 1]] {
                k += w as u64;
            }
            degrees[v] = k;
            total += k;
        }
        debug_assert_eq!(total % 2, 0);
        Graph {
            offsets,
            targets,
            multiplicities,
            degrees,
            edge_count: total / 2,
        }
    }

    /// Parses the edge-list text format.
    ///
    /// Lines are `u v` or `u v w` with 0-based ids and positive integer
    /// multiplicity `w` (default 1). `#` starts a comment line and blank
    /// lines are skipped. An optional first line `n <N>` fixes the vertex
    /// count; otherwise it is one more than the largest id seen. Duplicate
    /// lines and both orientations accumulate multiplicity.
    pub fn parse_edge_list(reader: impl BufRead) -> Result<Graph> {
        let mut header_n: Option<usize> = None;
        let mut seen_data = false;
        let mut max_id: Option<usize> = None;
        let mut triples: Vec<(usize, usize, u32)> = Vec::new();

        for (idx, line) in reader.lines().enumerate() {
            let line_no = idx + 1;
            let line = line?;
            let text = line.trim();
            if text.is_empty() || text.starts_with('#') {
                continue;
            }
            let tokens: Vec<&str> = text.split_whitespace().collect();
            if tokens[0] == "n" {
                if seen_data || header_n.is_some() {
                    return Err(Error::parse(line_no, "header `n <N>` must be the first non-comment line"));
                }
                if tokens.len() != 2 {
                    return Err(Error::parse(line_no, "header must be exactly `n <N>`"));
                }
                let n: usize = tokens[1]
                    .parse()
                    .map_err(|_| Error::parse(line_no, format!("invalid vertex count `{}`", tokens[1])))?;
                header_n = Some(n);
                continue;
            }
            if tokens.len() != 2 && tokens.len() != 3 {
                return Err(Error::parse(
                    line_no,
                    format!("expected `u v` or `u v w`, found {} tokens", tokens.len()),
                ));
            }
            let parse_id = |tok: &str| -> Result<usize> {
                tok.parse::<usize>()
                    .map_err(|_| Error::parse(line_no, format!("invalid vertex id `{tok}`")))
            };
            let u = parse_id(tokens[0])?;
            let v = parse_id(tokens[1])?;
            let w = if tokens.len() == 3 {
                let w: i64 = tokens[2]
                    .parse()
                    .map_err(|_| Error::parse(line_no, format!("invalid multiplicity `{}`", tokens[2])))?;
                if w <= 0 {
                    return Err(Error::parse(line_no, format!("multiplicity must be positive, found {w}")));
                }
                u32::try_from(w)
                    .map_err(|_| Error::parse(line_no, format!("multiplicity {w} too large")))?
            } else {
                1
            };
            if u == v {
                return Err(Error::parse(line_no, format!("self-loop at vertex {u}")));
            }
            if let Some(n) = header_n {
                if u >= n || v >= n {
                    return Err(Error::parse(
                        line_no,
                        format!("vertex id {} out of range for declared n = {n}", u.max(v)),
                    ));
                }
            }
            max_id = Some(max_id.map_or(u.max(v), |m| m.max(u.max(v))));
            seen_data = true;
            triples.push((u, v, w));
        }

        let n = header_n.unwrap_or_else(|| max_id.map_or(0, |m| m + 1));
        Self::from_weighted_pairs(n, triples)
    }

    /// Parses from an in-memory string; see [`Graph::parse_edge_list`].
    pub fn parse_edge_list_str(text: &str) -> Result<Graph> {
        Self::parse_edge_list(text.as_bytes())
    }

    /// Writes the canonical form: header `n <N>`, then one `u v w` line per
    /// undirected edge with u < v, ascending. `parse(serialize(g)) == g`.
    pub fn write_canonical(&self, out: &mut impl Write) -> std::io::Result<()> {
        writeln!(out, "n {}", self.vertex_count())?;
        for u in 0..self.vertex_count() {
            for (v, w) in self.neighbors(u) {
                if v > u {
                    writeln!(out, "{u} {v} {w}")?;
                }
            }
        }
        Ok(())
    }

    pub fn canonical_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_canonical(&mut buf).expect("in-memory write");
        String::from_utf8(buf).expect("ASCII output")
    }

    pub fn vertex_count(&self) -> usize {
        self.degrees.len()
    }

    /// Total undirected edge count, multiplicity-weighted.
    pub fn edge_count(&self) -> u64 {
        self.edge_count
    }

    /// Multiplicity-weighted degree k_v.
    pub fn degree(&self, v: usize) -> u64 {
        self.degrees[v]
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    pub fn max_degree(&self) -> u64 {
        self.degrees.iter().copied().max().unwrap_or(0)
    }

    /// Sorted neighbors of `v` with multiplicities.
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = (usize, u32)> + '_ {
        let range = self.offsets[v]..self.offsets[v + 1];
        self.targets[range.clone()]
            .iter()
            .zip(&self.multiplicities[range])
            .map(|(&t, &w)| (t as usize, w))
    }

    /// Multiplicity of the pair (u, v); 0 when no edge exists.
    pub fn multiplicity(&self, u: usize, v: usize) -> u32 {
        let row = &self.targets[self.offsets[u]..self.offsets[u + 1]];
        match row.binary_search(&(v as u32)) {
            Ok(i) => self.multiplicities[self.offsets[u] + i],
            Err(_) => 0,
        }
    }

    /// Group degree sums (κ1, κ2); κ1 + κ2 = 2m.
    pub fn degree_sums(&self, p: &Partition) -> Result<(u64, u64)> {
        if p.len() != self.vertex_count() {
            return Err(Error::PartitionLengthMismatch {
                got: p.len(),
                expected: self.vertex_count(),
            });
        }
        let mut kappa1 = 0u64;
        let mut kappa2 = 0u64;
        for v in 0..self.vertex_count() {
            match p.group(v) {
                Group::One => kappa1 += self.degrees[v],
                Group::Two => kappa2 += self.degrees[v],
            }
        }
        Ok((kappa1, kappa2))
    }

    /// Connectivity labeling by breadth-first traversal.
    pub fn connected_components(&self) -> ComponentLabeling {
        let n = self.vertex_count();
        let mut labels = vec![u32::MAX; n];
        let mut count = 0u32;
        let mut queue = Vec::new();
        for start in 0..n {
            if labels[start] != u32::MAX {
                continue;
            }
            labels[start] = count;
            queue.push(start);
            while let Some(v) = queue.pop() {
                for (u, _) in self.neighbors(v) {
                    if labels[u] == u32::MAX {
                        labels[u] = count;
                        queue.push(u);
                    }
                }
            }
            count += 1;
        }
        ComponentLabeling {
            labels,
            count: count as usize,
        }
    }
}

/// Result of [`Graph::connected_components`]: contiguous 0-based component
/// ids in discovery order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentLabeling {
    pub labels: Vec<u32>,
    pub count: usize,
}
