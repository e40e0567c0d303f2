//! Shared fixtures and dense reference eigensolvers for integration tests.
//!
//! The dense solvers build the full Laplacian and diagonalize it with
//! nalgebra, giving an O(n³) oracle that shares no code with the crate's
//! sparse iterative solvers.

#![allow(dead_code)]

use blockcut::Graph;
use nalgebra::{DMatrix, SymmetricEigen};

/// Path graph 0–1–…–(n−1).
pub fn path(n: usize) -> Graph {
    Graph::from_pairs(n, (1..n).map(|v| (v - 1, v))).unwrap()
}

/// Complete graph on n vertices.
pub fn complete(n: usize) -> Graph {
    let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
    Graph::from_pairs(n, pairs).unwrap()
}

/// Two triangles {0,1,2} and {3,4,5} joined by the bridge 2–3.
pub fn bridge_triangles() -> Graph {
    let pairs = [(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5), (2, 3)];
    Graph::from_pairs(6, pairs).unwrap()
}

/// Two complete graphs K_k on {0..k} and {k..2k} joined by the edge
/// (k−1, k).
pub fn two_cliques_bridge(k: usize) -> Graph {
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for offset in [0, k] {
        for u in 0..k {
            for v in u + 1..k {
                pairs.push((offset + u, offset + v));
            }
        }
    }
    pairs.push((k - 1, k));
    Graph::from_pairs(2 * k, pairs).unwrap()
}

/// K4 on {0..4} with the tail 3–4–5.
pub fn lollipop() -> Graph {
    let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (3, 4), (4, 5)];
    Graph::from_pairs(6, pairs).unwrap()
}

/// Triangular prism: triangles {0,1,2} and {3,4,5} joined by a perfect
/// matching.
pub fn prism() -> Graph {
    let pairs = [
        (0, 1),
        (1, 2),
        (0, 2),
        (3, 4),
        (4, 5),
        (3, 5),
        (0, 3),
        (1, 4),
        (2, 5),
    ];
    Graph::from_pairs(6, pairs).unwrap()
}

/// Path 0–1–2 with the first edge doubled, exercising multiplicity
/// weighting.
pub fn weighted_path3() -> Graph {
    Graph::from_weighted_pairs(3, [(0, 1, 2), (1, 2, 1)]).unwrap()
}

/// The named small-graph fixture set (all n ≤ 8, connected, and with a
/// simple second-smallest eigenvalue in both the standard and generalized
/// problems, which the eigensolver tests assert before relying on it).
pub fn small_fixtures() -> Vec<(&'static str, Graph)> {
    vec![
        ("path3", path(3)),
        ("path4", path(4)),
        ("path5", path(5)),
        ("path8", path(8)),
        ("bridge_triangles", bridge_triangles()),
        ("two_k4_bridge", two_cliques_bridge(4)),
        ("lollipop", lollipop()),
        ("prism", prism()),
        ("weighted_path3", weighted_path3()),
    ]
}

/// Dense Laplacian L = D − A with multiplicity-weighted entries.
pub fn dense_laplacian(g: &Graph) -> DMatrix<f64> {
    let n = g.vertex_count();
    let mut l = DMatrix::zeros(n, n);
    for v in 0..n {
        l[(v, v)] = g.degree(v) as f64;
        for (u, w) in g.neighbors(v) {
            l[(v, u)] -= f64::from(w);
        }
    }
    l
}

fn sorted_eigenpairs(eig: SymmetricEigen<f64, nalgebra::Dyn>) -> (Vec<f64>, Vec<Vec<f64>>) {
    let n = eig.eigenvalues.len();
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = idx.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = idx
        .iter()
        .map(|&i| eig.eigenvectors.column(i).iter().copied().collect())
        .collect();
    (values, vectors)
}

/// Full spectrum of L = D − A, eigenvalues ascending with unit-norm
/// eigenvectors.
pub fn dense_standard_spectrum(g: &Graph) -> (Vec<f64>, Vec<Vec<f64>>) {
    sorted_eigenpairs(SymmetricEigen::new(dense_laplacian(g)))
}

/// Full spectrum of the generalized problem L v = λ D v, eigenvalues
/// ascending with D-unit-norm eigenvectors. Requires every degree ≥ 1.
pub fn dense_generalized_spectrum(g: &Graph) -> (Vec<f64>, Vec<Vec<f64>>) {
    let n = g.vertex_count();
    let inv_sqrt: Vec<f64> = (0..n)
        .map(|v| {
            let k = g.degree(v);
            assert!(k > 0, "generalized oracle needs degree >= 1 at vertex {v}");
            1.0 / (k as f64).sqrt()
        })
        .collect();
    let mut b = dense_laplacian(g);
    for i in 0..n {
        for j in 0..n {
            b[(i, j)] *= inv_sqrt[i] * inv_sqrt[j];
        }
    }
    let (values, vectors) = sorted_eigenpairs(SymmetricEigen::new(b));
    let mapped = vectors
        .into_iter()
        .map(|x| x.iter().zip(&inv_sqrt).map(|(xi, s)| xi * s).collect())
        .collect();
    (values, mapped)
}

/// |⟨a, b⟩| after Euclidean normalization of both vectors.
pub fn overlap(a: &[f64], b: &[f64]) -> f64 {
    let dot: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
    let na: f64 = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let nb: f64 = b.iter().map(|x| x * x).sum::<f64>().sqrt();
    dot.abs() / (na * nb)
}

/// |⟨a, b⟩_D| after D-weighted normalization of both vectors.
pub fn weighted_overlap(a: &[f64], b: &[f64], degrees: &[u64]) -> f64 {
    let w = |x: &[f64], y: &[f64]| -> f64 {
        x.iter()
            .zip(y)
            .zip(degrees)
            .map(|((xi, yi), &k)| k as f64 * xi * yi)
            .sum()
    };
    w(a, b).abs() / (w(a, a) * w(b, b)).sqrt()
}
