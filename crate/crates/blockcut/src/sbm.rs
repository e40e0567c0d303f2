//! Seeded planted-partition benchmark generator.
//!
//! Draws a two-group Poisson multigraph: every within-group vertex pair
//! carries a Poisson(ω_in) number of edges and every between-group pair a
//! Poisson(ω_out) number, where ω_in = c_in/n and ω_out = c_out/n. Instead
//! of sampling each of the O(n²) pairs, the generator draws one Poisson
//! total per pair class (within group 1, within group 2, between) and
//! places that many edges uniformly among the class's pairs, which has the
//! same distribution and runs in O(n + m) expected time.
//!
//! The RNG is ChaCha8 seeded directly from [`SbmConfig::seed`]; the stream
//! identity (algorithm, seeding, and the fixed class order above) is part
//! of the contract, so a config reproduces the same graph byte for byte
//! across runs and platforms.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Poisson};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::partition::{Group, Partition};

/// Parameters of a planted two-group Poisson benchmark graph.
///
/// `c_in` and `c_out` are expected-degree-scale parameters: the per-pair
/// Poisson means are ω_in = c_in/n and ω_out = c_out/n with n = n1 + n2.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SbmConfig {
    /// Size of group 1 (vertices 0..n1).
    pub n1: usize,
    /// Size of group 2 (vertices n1..n1+n2).
    pub n2: usize,
    /// Within-group degree-scale parameter, c_in = n·ω_in.
    pub c_in: f64,
    /// Between-group degree-scale parameter, c_out = n·ω_out.
    pub c_out: f64,
    /// RNG seed; fixes the generated graph exactly.
    pub seed: u64,
}

impl SbmConfig {
    /// Total vertex count n1 + n2.
    pub fn vertex_count(&self) -> usize {
        self.n1 + self.n2
    }

    /// Within-group Poisson mean ω_in = c_in/n.
    pub fn omega_in(&self) -> f64 {
        self.c_in / self.vertex_count() as f64
    }

    /// Between-group Poisson mean ω_out = c_out/n.
    pub fn omega_out(&self) -> f64 {
        self.c_out / self.vertex_count() as f64
    }

    /// Checks n1 + n2 ≥ 2 and c_in, c_out ≥ 0 and finite.
    pub fn validate(&self) -> Result<()> {
        let n = self.n1.checked_add(self.n2).ok_or(Error::InvalidConfig {
            msg: "n1 + n2 overflows".into(),
        })?;
        if n < 2 {
            return Err(Error::InvalidConfig {
                msg: format!("need n1 + n2 >= 2 vertices, got {n}"),
            });
        }
        for (name, c) in [("c_in", self.c_in), ("c_out", self.c_out)] {
            if !c.is_finite() || c < 0.0 {
                return Err(Error::InvalidConfig {
                    msg: format!("{name} must be finite and >= 0, got {c}"),
                });
            }
        }
        Ok(())
    }
}

/// The planted partition a benchmark graph was generated from.
#[derive(Clone, Debug, PartialEq)]
pub struct GroundTruth {
    /// First n1 vertices in group 1, remaining n2 in group 2.
    pub partition: Partition,
}

/// Number of unordered vertex pairs inside a group of size `n`.
fn pair_count(n: usize) -> u128 {
    let n = n as u128;
    n * n.saturating_sub(1) / 2
}

/// Draws a Poisson count with the given mean, treating mean ≤ 0 as 0.
fn poisson_count(rng: &mut ChaCha8Rng, mean: f64) -> Result<u64> {
    if mean <= 0.0 {
        return Ok(0);
    }
    let dist = Poisson::new(mean).map_err(|e| Error::InvalidConfig {
        msg: format!("expected class edge count {mean} is not sampleable: {e}"),
    })?;
    Ok(dist.sample(rng) as u64)
}

/// Generates a benchmark graph and its planted partition.
///
/// Per pair class, in the fixed order within-group-1, within-group-2,
/// between, the total edge count is drawn as a Poisson variate with mean
/// ω·(pairs in class) and each edge's endpoints are then chosen uniformly
/// among the class's pairs. Multi-edges accumulate as multiplicities;
/// self-loops cannot occur because within-class endpoint draws reject
/// coincident vertices. Deterministic for a fixed config.
pub fn generate(cfg: &SbmConfig) -> Result<(Graph, GroundTruth)> {
    cfg.validate()?;
    let n = cfg.vertex_count();
    let n1 = cfg.n1;
    let omega_in = cfg.omega_in();
    let omega_out = cfg.omega_out();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);

    let mut pairs: Vec<(usize, usize)> = Vec::new();
    let m_within_1 = poisson_count(&mut rng, omega_in * pair_count(n1) as f64)?;
    pairs.reserve(m_within_1 as usize);
    for _ in 0..m_within_1 {
        pairs.push(uniform_within(&mut rng, 0, n1));
    }
    let m_within_2 = poisson_count(&mut rng, omega_in * pair_count(cfg.n2) as f64)?;
    pairs.reserve(m_within_2 as usize);
    for _ in 0..m_within_2 {
        pairs.push(uniform_within(&mut rng, n1, cfg.n2));
    }
    let between_pairs = cfg.n1 as u128 * cfg.n2 as u128;
    let m_between = poisson_count(&mut rng, omega_out * between_pairs as f64)?;
    pairs.reserve(m_between as usize);
    for _ in 0..m_between {
        pairs.push((rng.random_range(0..n1), rng.random_range(n1..n)));
    }

    let graph = Graph::from_pairs(n, pairs)?;
    let mut partition = Partition::uniform(n, Group::One);
    for v in n1..n {
        partition.set(v, Group::Two);
    }
    Ok((graph, GroundTruth { partition }))
}

/// Uniform unordered pair from the `size` vertices starting at `offset`.
///
/// Two independent uniform draws with rejection of coincident endpoints;
/// only called when the class has at least one pair, so `size ≥ 2`.
fn uniform_within(rng: &mut ChaCha8Rng, offset: usize, size: usize) -> (usize, usize) {
    loop {
        let u = rng.random_range(0..size);
        let v = rng.random_range(0..size);
        if u != v {
            return (offset + u, offset + v);
        }
    }
}

/// Expected number of edges under the config:
/// ω_in·[n1(n1−1)/2 + n2(n2−1)/2] + ω_out·n1·n2.
pub fn expected_edge_count(cfg: &SbmConfig) -> f64 {
    let within = pair_count(cfg.n1) + pair_count(cfg.n2);
    let between = cfg.n1 as u128 * cfg.n2 as u128;
    cfg.omega_in() * within as f64 + cfg.omega_out() * between as f64
}

/// Expected mean degree 2·E[m]/n under the config.
pub fn expected_mean_degree(cfg: &SbmConfig) -> f64 {
    2.0 * expected_edge_count(cfg) / cfg.vertex_count() as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base(n1: usize, n2: usize, c_in: f64, c_out: f64, seed: u64) -> SbmConfig {
        SbmConfig {
            n1,
            n2,
            c_in,
            c_out,
            seed,
        }
    }

    #[test]
    fn validation_rejects_bad_configs() {
        assert!(base(1, 0, 1.0, 1.0, 0).validate().is_err());
        assert!(base(0, 0, 1.0, 1.0, 0).validate().is_err());
        assert!(base(3, 3, -0.5, 1.0, 0).validate().is_err());
        assert!(base(3, 3, 1.0, f64::NAN, 0).validate().is_err());
        assert!(base(3, 3, 1.0, f64::INFINITY, 0).validate().is_err());
        assert!(base(2, 0, 0.0, 0.0, 0).validate().is_ok());
    }

    #[test]
    fn identical_configs_generate_identical_graphs() {
        let cfg = base(40, 60, 8.0, 2.0, 77);
        let (g1, t1) = generate(&cfg).unwrap();
        let (g2, t2) = generate(&cfg).unwrap();
        assert_eq!(g1.canonical_string(), g2.canonical_string());
        assert_eq!(t1, t2);

        let (g3, _) = generate(&base(40, 60, 8.0, 2.0, 78)).unwrap();
        assert_ne!(g1.canonical_string(), g3.canonical_string());
    }

    #[test]
    fn generated_graphs_have_no_self_loops() {
        let (g, _) = generate(&base(30, 30, 12.0, 4.0, 5)).unwrap();
        for v in 0..g.vertex_count() {
            assert!(g.neighbors(v).all(|(u, _)| u != v));
        }
    }

    #[test]
    fn ground_truth_sizes_match_config() {
        let cfg = base(7, 12, 3.0, 1.0, 9);
        let (g, truth) = generate(&cfg).unwrap();
        assert_eq!(g.vertex_count(), 19);
        assert_eq!(truth.partition.group_sizes(), (7, 12));
        for v in 0..7 {
            assert_eq!(truth.partition.group(v), Group::One);
        }
        for v in 7..19 {
            assert_eq!(truth.partition.group(v), Group::Two);
        }
    }

    #[test]
    fn zero_rates_generate_an_empty_graph() {
        let (g, _) = generate(&base(3, 3, 0.0, 0.0, 123)).unwrap();
        assert_eq!(g.vertex_count(), 6);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn single_group_config_keeps_all_edges_within_group_one() {
        let cfg = base(2, 0, 40.0, 99.0, 11);
        let (g, truth) = generate(&cfg).unwrap();
        assert_eq!(truth.partition.group_sizes(), (2, 0));
        assert!(g.edge_count() > 0);
        assert_eq!(g.edge_count(), u64::from(g.multiplicity(0, 1)));
        assert!(g.multiplicity(0, 1) > 1);
    }

    #[test]
    fn realized_edge_count_is_near_expectation() {
        let cfg = base(5000, 5000, 80.0, 20.0, 42);
        assert!((expected_edge_count(&cfg) - 249_960.0).abs() < 1e-6);
        let (g, _) = generate(&cfg).unwrap();
        let deviation = (g.edge_count() as f64 - 249_960.0).abs();
        assert!(deviation < 2000.0, "m = {} strays 4 sigma", g.edge_count());
    }

    #[test]
    fn sample_mean_edge_count_matches_expectation() {
        let cfg = base(100, 100, 8.0, 2.0, 0);
        let expected = expected_edge_count(&cfg);
        assert!((expected - 496.0).abs() < 1e-9);

        let reps = 200;
        let mut total = 0u64;
        for seed in 0..reps {
            let (g, _) = generate(&SbmConfig { seed, ..cfg }).unwrap();
            total += g.edge_count();
        }
        let mean = total as f64 / reps as f64;
        let standard_error = (expected / reps as f64).sqrt();
        assert!(
            (mean - expected).abs() <= 3.0 * standard_error,
            "sample mean {mean} vs expected {expected} (3 SE = {})",
            3.0 * standard_error
        );
    }

    #[test]
    fn expected_mean_degree_matches_hand_computed_values() {
        let equal = base(5000, 5000, 80.0, 20.0, 0);
        assert!((expected_mean_degree(&equal) - 49.992).abs() < 1e-9);

        let unequal = base(3000, 7000, 80.0, 20.0, 0);
        assert!((expected_edge_count(&unequal) - 273_960.0).abs() < 1e-6);
        assert!((expected_mean_degree(&unequal) - 54.792).abs() < 1e-9);

        let empty = base(3, 3, 0.0, 0.0, 0);
        assert_eq!(expected_mean_degree(&empty), 0.0);
    }
}
