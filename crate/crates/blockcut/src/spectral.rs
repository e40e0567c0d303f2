//! Matrix-free second-eigenvector computations.
//!
//! Two problems are solved, one per model variant:
//!
//! * standard: the Fiedler pair of the Laplacian L = D − A (second-smallest
//!   eigenvalue and its eigenvector);
//! * degree-corrected: the second eigenpair of the generalized system
//!   L v = λ D v.
//!
//! Both reduce to finding the largest eigenpair, orthogonal to one known
//! eigenvector, of a symmetric operator applied in O(n + m) per iteration:
//! B = c·I − L with c = 2·max_i k_i for the standard problem, and
//! B = 2·I − D^{-1/2} L D^{-1/2} in the symmetrized coordinates
//! x = D^{1/2} v for the generalized one. The known leading eigenvector of B
//! (constant, respectively ∝ √k_i) is deflated by explicit projection at
//! every step.
//!
//! The solver is a thick-restart Lanczos iteration with full (two-pass)
//! reorthogonalization. Because every projected-matrix column is computed by
//! explicit inner products against the whole basis, restart coupling terms
//! regenerate automatically and the projected matrix stays exactly
//! symmetric; the small projected eigenproblem is solved with cyclic Jacobi
//! rotations. Everything is sequential with a fixed operation order, so
//! results are bit-for-bit deterministic for a fixed graph, options, and
//! seed.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error as ThisError;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::scalar::Real;

/// Eigensolver controls.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EigenOptions<T> {
    /// Relative residual tolerance; must be positive.
    pub tol: T,
    /// Cap on operator applications; must be at least 1.
    pub max_iter: usize,
    /// Seed for the random start vector.
    pub seed: u64,
}

impl<T: Real> EigenOptions<T> {
    /// Defaults for a graph with `n` vertices: tol = 1e−8 (floored at
    /// 100·ε for narrower scalar types), max_iter = 10·⌈√n⌉ + 200, seed 0.
    /// The iteration cap prevents hangs near parameter regimes where the
    /// spectral gap closes.
    pub fn for_graph_size(n: usize) -> EigenOptions<T> {
        let sqrt_n = (n as f64).sqrt().ceil() as usize;
        let floor = T::epsilon() * T::from_f64_lossy(100.0);
        EigenOptions {
            tol: T::from_f64_lossy(1e-8).max(floor),
            max_iter: 10 * sqrt_n + 200,
            seed: 0,
        }
    }
}

/// An approximate eigenpair with solver diagnostics.
///
/// `vector` has unit norm under the problem's inner product (standard:
/// Euclidean; generalized: D-weighted). `iterations` counts operator
/// applications. `residual` is ‖L v − λ v‖ for the standard problem and
/// ‖L v − λ D v‖ for the generalized one, recomputed from the graph rather
/// than taken from solver internals.
#[derive(Clone, Debug, PartialEq)]
pub struct EigenResult<T> {
    pub vector: Vec<T>,
    pub eigenvalue: T,
    pub iterations: usize,
    pub residual: T,
}

/// Failures of the spectral stage. Non-convergence carries the best iterate
/// found so callers can inspect or salvage it.
#[derive(Debug, ThisError)]
pub enum SpectralError<T: Real> {
    #[error("graph has {n} vertices but at least 2 are required")]
    TooFewVertices { n: usize },

    #[error("vertex {vertex} has degree zero; the generalized problem needs every degree positive")]
    ZeroDegree { vertex: usize },

    #[error("invalid eigensolver options: {msg}")]
    InvalidOptions { msg: String },

    #[error(
        "eigensolver did not reach residual {tol} within {max_iter} iterations (best residual {res})",
        res = .best.residual
    )]
    NonConvergence {
        best: EigenResult<T>,
        tol: T,
        max_iter: usize,
    },
}

impl<T: Real> From<SpectralError<T>> for Error {
    fn from(e: SpectralError<T>) -> Error {
        match e {
            SpectralError::TooFewVertices { n } => Error::TooFewVertices { n, min: 2 },
            SpectralError::ZeroDegree { vertex } => Error::ZeroDegree { vertex },
            SpectralError::InvalidOptions { msg } => Error::InvalidConfig { msg },
            SpectralError::NonConvergence {
                best,
                tol,
                max_iter,
            } => Error::NonConvergence {
                tol: tol.to_f64_lossy(),
                max_iter,
                residual: best.residual.to_f64_lossy(),
            },
        }
    }
}

/// Applies the Laplacian: y_i = k_i·x_i − Σ_j A_ij·x_j, in O(n + m).
pub fn laplacian_apply<T: Real>(g: &Graph, x: &[T]) -> Result<Vec<T>> {
    if x.len() != g.vertex_count() {
        return Err(Error::LengthMismatch {
            got: x.len(),
            expected: g.vertex_count(),
        });
    }
    let mut y = vec![T::zero(); x.len()];
    laplacian_into(g, x, &mut y);
    Ok(y)
}

fn laplacian_into<T: Real>(g: &Graph, x: &[T], y: &mut [T]) {
    for v in 0..g.vertex_count() {
        let mut acc = T::from_count(g.degree(v)) * x[v];
        for (u, w) in g.neighbors(v) {
            acc = acc - T::from_count(w as u64) * x[u];
        }
        y[v] = acc;
    }
}

/// Sorts vertices by descending eigenvector entry, ties by ascending index.
pub fn vertex_order<T: Real>(v: &[T]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..v.len()).collect();
    order.sort_by(|&a, &b| {
        v[b].partial_cmp(&v[a])
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(a.cmp(&b))
    });
    order
}

/// Approximates the Fiedler pair of L = D − A: the second-smallest
/// eigenvalue and an eigenvector orthogonal to the constant vector, with
/// ‖L v − λ v‖ ≤ tol·‖v‖ on success.
pub fn fiedler_vector<T: Real>(
    g: &Graph,
    opts: &EigenOptions<T>,
) -> std::result::Result<EigenResult<T>, SpectralError<T>> {
    let n = g.vertex_count();
    if n < 2 {
        return Err(SpectralError::TooFewVertices { n });
    }
    validate_options(opts)?;

    let c = T::from_count(2 * g.max_degree().max(1));
    let op = SparseOp::shifted_laplacian(g, c);
    let inv_sqrt_n = T::one() / T::from_count(n as u64).sqrt();
    let deflate = vec![inv_sqrt_n; n];

    let mut ly = vec![T::zero(); n];
    let finalize = |x: &[T]| {
        laplacian_into(g, x, &mut ly);
        let lambda = dot(x, &ly);
        let mut rss = T::zero();
        for i in 0..n {
            let r = ly[i] - lambda * x[i];
            rss = rss + r * r;
        }
        Candidate {
            vector: x.to_vec(),
            eigenvalue: lambda,
            residual: rss.sqrt(),
        }
    };

    solve_second(&op, &deflate, opts, opts.tol, c, finalize)
}

/// Approximates the second eigenpair of the generalized system L v = λ D v,
/// with ‖L v − λ D v‖ ≤ tol·‖D^{1/2} v‖ and Σ_i k_i v_i = 0 on success.
/// Requires every vertex degree to be positive (D must be invertible);
/// callers strip isolated vertices first.
pub fn generalized_fiedler_vector<T: Real>(
    g: &Graph,
    opts: &EigenOptions<T>,
) -> std::result::Result<EigenResult<T>, SpectralError<T>> {
    let n = g.vertex_count();
    if n < 2 {
        return Err(SpectralError::TooFewVertices { n });
    }
    validate_options(opts)?;
    if let Some(v) = (0..n).find(|&v| g.degree(v) == 0) {
        return Err(SpectralError::ZeroDegree { vertex: v });
    }

    let inv_sqrt: Vec<T> = (0..n)
        .map(|v| T::one() / T::from_count(g.degree(v)).sqrt())
        .collect();
    let op = SparseOp::normalized(g, &inv_sqrt);
    // Leading eigenvector of B in symmetrized coordinates: x ∝ √k.
    let two_m = T::from_count(2 * g.edge_count());
    let deflate: Vec<T> = (0..n)
        .map(|v| T::from_count(g.degree(v)).sqrt() / two_m.sqrt())
        .collect();

    let mut ly = vec![T::zero(); n];
    let mut vbuf = vec![T::zero(); n];
    let finalize = |x: &[T]| {
        // Map back: v = D^{-1/2} x. ‖D^{1/2} v‖ = ‖x‖ = 1 by construction.
        for i in 0..n {
            vbuf[i] = x[i] * inv_sqrt[i];
        }
        laplacian_into(g, &vbuf, &mut ly);
        // v' D v = 1, so the pencil Rayleigh quotient is v' L v.
        let lambda = dot(&vbuf, &ly);
        let mut rss = T::zero();
        for i in 0..n {
            let r = ly[i] - lambda * T::from_count(g.degree(i)) * vbuf[i];
            rss = rss + r * r;
        }
        Candidate {
            vector: vbuf.clone(),
            eigenvalue: lambda,
            residual: rss.sqrt(),
        }
    };

    // The symmetrized-coordinate residual understates the pencil residual
    // by up to √max_degree, so the inner estimate aims lower.
    let inner_tol = opts.tol / T::from_count(g.max_degree()).sqrt();
    solve_second(&op, &deflate, opts, inner_tol, T::from_f64_lossy(2.0), finalize)
}

fn validate_options<T: Real>(opts: &EigenOptions<T>) -> std::result::Result<(), SpectralError<T>> {
    if opts.tol <= T::zero() || !opts.tol.is_finite() {
        return Err(SpectralError::InvalidOptions {
            msg: format!("tol must be positive and finite, got {}", opts.tol),
        });
    }
    if opts.max_iter < 1 {
        return Err(SpectralError::InvalidOptions {
            msg: "max_iter must be at least 1".to_string(),
        });
    }
    Ok(())
}

/// Symmetric sparse operator y = diag·x + W·x with CSR weights, the shared
/// form of both shifted problems.
struct SparseOp<T> {
    offsets: Vec<usize>,
    targets: Vec<u32>,
    weights: Vec<T>,
    diag: Vec<T>,
}

impl<T: Real> SparseOp<T> {
    /// B = c·I − L: diag c − k_i, off-diagonal +A_ij.
    fn shifted_laplacian(g: &Graph, c: T) -> SparseOp<T> {
        let n = g.vertex_count();
        let mut offsets = Vec::with_capacity(n + 1);
        let mut targets = Vec::new();
        let mut weights = Vec::new();
        let mut diag = Vec::with_capacity(n);
        offsets.push(0);
        for v in 0..n {
            for (u, w) in g.neighbors(v) {
                targets.push(u as u32);
                weights.push(T::from_count(w as u64));
            }
            offsets.push(targets.len());
            diag.push(c - T::from_count(g.degree(v)));
        }
        SparseOp {
            offsets,
            targets,
            weights,
            diag,
        }
    }

    /// B = 2·I − D^{-1/2} L D^{-1/2}: diag 1, off-diagonal
    /// A_ij/√(k_i·k_j).
    fn normalized(g: &Graph, inv_sqrt: &[T]) -> SparseOp<T> {
        let n = g.vertex_count();
        let mut offsets = Vec::with_capacity(n + 1);
        let mut targets = Vec::new();
        let mut weights = Vec::new();
        offsets.push(0);
        for v in 0..n {
            for (u, w) in g.neighbors(v) {
                targets.push(u as u32);
                weights.push(T::from_count(w as u64) * inv_sqrt[v] * inv_sqrt[u]);
            }
            offsets.push(targets.len());
        }
        SparseOp {
            offsets,
            targets,
            weights,
            diag: vec![T::one(); n],
        }
    }

    fn dim(&self) -> usize {
        self.diag.len()
    }

    fn apply(&self, x: &[T], y: &mut [T]) {
        for i in 0..self.diag.len() {
            let mut acc = self.diag[i] * x[i];
            for e in self.offsets[i]..self.offsets[i + 1] {
                acc = acc + self.weights[e] * x[self.targets[e] as usize];
            }
            y[i] = acc;
        }
    }
}

/// A finalized approximate eigenpair in problem coordinates.
struct Candidate<T> {
    vector: Vec<T>,
    eigenvalue: T,
    residual: T,
}

fn dot<T: Real>(a: &[T], b: &[T]) -> T {
    let mut acc = T::zero();
    for i in 0..a.len() {
        acc = acc + a[i] * b[i];
    }
    acc
}

fn norm<T: Real>(a: &[T]) -> T {
    dot(a, a).sqrt()
}

/// x ← x − (uᵀx)·u
fn project_off<T: Real>(x: &mut [T], u: &[T]) {
    let coeff = dot(x, u);
    for i in 0..x.len() {
        x[i] = x[i] - coeff * u[i];
    }
}

/// Eigendecomposition of a dense symmetric s×s matrix (row-major) by cyclic
/// Jacobi rotations. Returns eigenvalues and a row-major matrix whose
/// column j (entry i at [i·s + j]) is the eigenvector for eigenvalue j.
/// Deterministic sweep order; adequate for the small projected problems
/// this crate produces (s ≤ ~100).
fn jacobi_eigen<T: Real>(mut a: Vec<T>, s: usize) -> (Vec<T>, Vec<T>) {
    let mut v = vec![T::zero(); s * s];
    for i in 0..s {
        v[i * s + i] = T::one();
    }
    if s <= 1 {
        return (a, v);
    }
    let mut scale = T::zero();
    for &x in &a[..s * s] {
        scale = scale + x * x;
    }
    let scale = scale.sqrt().max(T::one());
    let stop = T::epsilon() * scale;

    for _sweep in 0..60 {
        let mut off = T::zero();
        for p in 0..s {
            for q in (p + 1)..s {
                off = off + a[p * s + q] * a[p * s + q];
            }
        }
        if off.sqrt() <= stop {
            break;
        }
        for p in 0..s - 1 {
            for q in (p + 1)..s {
                let apq = a[p * s + q];
                if apq.abs() <= T::epsilon() * scale * T::from_f64_lossy(0.01) {
                    continue;
                }
                let app = a[p * s + p];
                let aqq = a[q * s + q];
                let tau = (aqq - app) / (T::from_f64_lossy(2.0) * apq);
                let t = if tau >= T::zero() {
                    T::one() / (tau + (T::one() + tau * tau).sqrt())
                } else {
                    -T::one() / (-tau + (T::one() + tau * tau).sqrt())
                };
                let c = T::one() / (T::one() + t * t).sqrt();
                let sn = t * c;
                for k in 0..s {
                    if k != p && k != q {
                        let akp = a[k * s + p];
                        let akq = a[k * s + q];
                        a[k * s + p] = c * akp - sn * akq;
                        a[p * s + k] = a[k * s + p];
                        a[k * s + q] = sn * akp + c * akq;
                        a[q * s + k] = a[k * s + q];
                    }
                }
                a[p * s + p] = app - t * apq;
                a[q * s + q] = aqq + t * apq;
                a[p * s + q] = T::zero();
                a[q * s + p] = T::zero();
                for k in 0..s {
                    let vkp = v[k * s + p];
                    let vkq = v[k * s + q];
                    v[k * s + p] = c * vkp - sn * vkq;
                    v[k * s + q] = sn * vkp + c * vkq;
                }
            }
        }
    }
    let evals = (0..s).map(|i| a[i * s + i]).collect();
    (evals, v)
}

/// Thick-restart Lanczos with full reorthogonalization for the largest
/// eigenpair of `op` restricted to the complement of `deflate`.
///
/// `finalize` maps a converged-looking unit vector (operator coordinates,
/// orthogonal to `deflate`) to a problem-coordinate candidate with a true
/// residual; the candidate is accepted when that residual is ≤ opts.tol.
/// `inner_tol` is the cheap Ritz-estimate threshold that gates finalize
/// calls, and `op_scale` bounds ‖op‖ for breakdown detection.
fn solve_second<T: Real, F>(
    op: &SparseOp<T>,
    deflate: &[T],
    opts: &EigenOptions<T>,
    inner_tol: T,
    op_scale: T,
    mut finalize: F,
) -> std::result::Result<EigenResult<T>, SpectralError<T>>
where
    F: FnMut(&[T]) -> Candidate<T>,
{
    let n = op.dim();
    let deflated_dim = n - 1;
    let m_max = deflated_dim.min(96);
    let k_keep = 1.max(24.min(m_max / 4));
    let bd_tol = T::epsilon() * op_scale * T::from_f64_lossy(100.0);

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut basis: Vec<Vec<T>> = Vec::with_capacity(m_max + 1);
    let mut h = vec![T::zero(); m_max * m_max];
    let mut iterations = 0usize;
    let mut inner_tol = inner_tol;
    let mut best: Option<Candidate<T>> = None;

    let start = random_unit_orthogonal(&mut rng, &basis, deflate, n)
        .expect("a random vector orthogonal to one direction exists");
    basis.push(start);

    let mut w = vec![T::zero(); n];
    loop {
        // Process the newest basis vector: apply the operator and complete
        // its projected-matrix column by explicit double orthogonalization.
        let p = basis.len() - 1;
        op.apply(&basis[p], &mut w);
        iterations += 1;
        project_off(&mut w, deflate);
        let mut col = vec![T::zero(); p + 1];
        for pass in 0..2 {
            for (i, b) in basis.iter().enumerate() {
                let coeff = dot(&w, b);
                col[i] = col[i] + coeff;
                for k in 0..n {
                    w[k] = w[k] - coeff * b[k];
                }
            }
            if pass == 0 {
                project_off(&mut w, deflate);
            }
        }
        for (i, &c) in col.iter().enumerate() {
            h[i * m_max + p] = c;
            h[p * m_max + i] = c;
        }
        let beta = norm(&w);

        let block = p + 1;
        let exhausted = block == deflated_dim;
        let full = block == m_max;
        let broke = beta <= bd_tol;
        let out_of_budget = iterations >= opts.max_iter;
        // The projected solve is cheap for small blocks; afterwards check
        // periodically, and always at structural events.
        let scheduled = block <= 24 || block.is_multiple_of(6);

        if !(scheduled || exhausted || full || broke || out_of_budget) {
            let mut q = w.clone();
            let inv = T::one() / beta;
            for x in q.iter_mut() {
                *x = *x * inv;
            }
            basis.push(q);
            continue;
        }

        let (theta, coeffs) = top_ritz(&h, m_max, block);
        let est = beta * coeffs[block - 1].abs();

        if est <= inner_tol || exhausted || full || broke || out_of_budget {
            let x = assemble(&basis, &coeffs, deflate);
            let cand = finalize(&x);
            let accepted = cand.residual <= opts.tol;
            let improved = best
                .as_ref()
                .is_none_or(|b| cand.residual < b.residual);
            if improved {
                best = Some(Candidate {
                    vector: cand.vector.clone(),
                    eigenvalue: cand.eigenvalue,
                    residual: cand.residual,
                });
            }
            if accepted {
                let cand = best.expect("accepted candidate recorded");
                return Ok(EigenResult {
                    vector: cand.vector,
                    eigenvalue: cand.eigenvalue,
                    iterations,
                    residual: cand.residual,
                });
            }
            // Avoid refinalizing every step while the estimate lingers.
            inner_tol = (inner_tol * T::from_f64_lossy(0.25)).min(est * T::from_f64_lossy(0.25));
        }

        if out_of_budget || (exhausted && broke) {
            let b = best.expect("finalize ran at least once");
            return Err(SpectralError::NonConvergence {
                best: EigenResult {
                    vector: b.vector,
                    eigenvalue: b.eigenvalue,
                    iterations,
                    residual: b.residual,
                },
                tol: opts.tol,
                max_iter: opts.max_iter,
            });
        }

        if broke {
            // Invariant subspace hit before exhausting the deflated space:
            // continue in a fresh random direction.
            let _ = theta;
            match random_unit_orthogonal(&mut rng, &basis, deflate, n) {
                Some(q) => basis.push(q),
                None => {
                    let b = best.expect("finalize ran at least once");
                    return Err(SpectralError::NonConvergence {
                        best: EigenResult {
                            vector: b.vector,
                            eigenvalue: b.eigenvalue,
                            iterations,
                            residual: b.residual,
                        },
                        tol: opts.tol,
                        max_iter: opts.max_iter,
                    });
                }
            }
            continue;
        }

        if full && !exhausted {
            // Thick restart: keep the leading k_keep Ritz vectors plus the
            // residual direction; their couplings regenerate as later
            // columns are computed explicitly.
            let (evals, evecs) = solve_block(&h, m_max, block);
            let mut idx: Vec<usize> = (0..block).collect();
            idx.sort_by(|&a, &b| {
                evals[b]
                    .partial_cmp(&evals[a])
                    .unwrap_or(std::cmp::Ordering::Equal)
                    .then(a.cmp(&b))
            });
            let mut new_basis: Vec<Vec<T>> = Vec::with_capacity(k_keep + 1);
            for &j in idx.iter().take(k_keep) {
                let coeffs: Vec<T> = (0..block).map(|i| evecs[i * block + j]).collect();
                new_basis.push(assemble(&basis, &coeffs, deflate));
            }
            // Re-orthonormalize the kept set against itself for safety.
            for i in 0..new_basis.len() {
                let (done, rest) = new_basis.split_at_mut(i);
                let y = &mut rest[0];
                for d in done.iter() {
                    project_off(y, d);
                }
                project_off(y, deflate);
                let nrm = norm(y);
                let inv = T::one() / nrm;
                for x in y.iter_mut() {
                    *x = *x * inv;
                }
            }
            h.iter_mut().for_each(|x| *x = T::zero());
            for (i, &j) in idx.iter().take(k_keep).enumerate() {
                h[i * m_max + i] = evals[j];
            }
            let inv = T::one() / beta;
            let mut q = w.clone();
            for x in q.iter_mut() {
                *x = *x * inv;
            }
            project_off(&mut q, deflate);
            let nrm = norm(&q);
            let invq = T::one() / nrm;
            for x in q.iter_mut() {
                *x = *x * invq;
            }
            new_basis.push(q);
            basis = new_basis;
            continue;
        }

        if exhausted {
            // The basis spans the whole deflated space; the projected solve
            // is exact up to roundoff, so a fresh direction cannot exist.
            // Grow-or-restart is impossible: report the best iterate.
            let b = best.expect("finalize ran at least once");
            return Err(SpectralError::NonConvergence {
                best: EigenResult {
                    vector: b.vector,
                    eigenvalue: b.eigenvalue,
                    iterations,
                    residual: b.residual,
                },
                tol: opts.tol,
                max_iter: opts.max_iter,
            });
        }

        let inv = T::one() / beta;
        let mut q = w.clone();
        for x in q.iter_mut() {
            *x = *x * inv;
        }
        basis.push(q);
    }
}

/// Solves the leading Ritz pair of the top-left `block` square of `h`.
fn top_ritz<T: Real>(h: &[T], stride: usize, block: usize) -> (T, Vec<T>) {
    let (evals, evecs) = solve_block(h, stride, block);
    let mut top = 0;
    for i in 1..block {
        if evals[i] > evals[top] {
            top = i;
        }
    }
    let coeffs = (0..block).map(|i| evecs[i * block + top]).collect();
    (evals[top], coeffs)
}

fn solve_block<T: Real>(h: &[T], stride: usize, block: usize) -> (Vec<T>, Vec<T>) {
    let mut a = vec![T::zero(); block * block];
    for i in 0..block {
        for j in 0..block {
            a[i * block + j] = h[i * stride + j];
        }
    }
    jacobi_eigen(a, block)
}

/// x = Σ coeffs_i·basis_i, re-projected off `deflate` and normalized.
fn assemble<T: Real>(basis: &[Vec<T>], coeffs: &[T], deflate: &[T]) -> Vec<T> {
    let n = basis[0].len();
    let mut x = vec![T::zero(); n];
    for (b, &c) in basis.iter().zip(coeffs) {
        for k in 0..n {
            x[k] = x[k] + c * b[k];
        }
    }
    project_off(&mut x, deflate);
    let nrm = norm(&x);
    let inv = T::one() / nrm;
    for v in x.iter_mut() {
        *v = *v * inv;
    }
    x
}

/// Draws a random unit vector orthogonal to `deflate` and all of `basis`,
/// retrying deterministically if a draw lands too close to their span.
fn random_unit_orthogonal<T: Real>(
    rng: &mut ChaCha8Rng,
    basis: &[Vec<T>],
    deflate: &[T],
    n: usize,
) -> Option<Vec<T>> {
    for _ in 0..32 {
        let mut x: Vec<T> = (0..n)
            .map(|_| T::from_f64_lossy(rng.random_range(-1.0..1.0)))
            .collect();
        for _ in 0..2 {
            project_off(&mut x, deflate);
            for b in basis {
                project_off(&mut x, b);
            }
        }
        let nrm = norm(&x);
        if nrm > T::from_f64_lossy(1e-6) * T::from_count(n as u64).sqrt() {
            let inv = T::one() / nrm;
            for v in x.iter_mut() {
                *v = *v * inv;
            }
            return Some(x);
        }
    }
    None
}
