//! Maximum-likelihood two-group community detection for the stochastic
//! block model and its degree-corrected variant.
//!
//! The pipeline reduces likelihood maximization to a penalized minimum-cut
//! problem and solves it with a Laplacian spectral heuristic: compute the
//! second eigenvector (standard: of L = D − A; degree-corrected: of the
//! generalized system L v = λ D v), sort vertices by eigenvector entry, and
//! take the best of the n+1 prefix splits under the profile log-likelihood.
//!
//! Numeric code is generic over the scalar type through [`scalar::Real`]
//! (`f32` or `f64`); the crate root re-exports `f64` aliases for the common
//! case. A seeded planted-partition generator ([`sbm`]) and brute-force
//! oracles ([`oracle`]) support benchmarking and validation.

pub mod error;
pub mod graph;
pub mod likelihood;
pub mod oracle;
pub mod partition;
pub mod sbm;
pub mod scalar;
pub mod spectral;
pub mod sweep;

pub use error::{Error, Result};
pub use graph::{ComponentLabeling, Graph};
pub use likelihood::{
    full_log_likelihood, gamma, penalized_cut_objective, profile_log_likelihood, split_stats,
    ModelParams, SplitStats, Variant,
};
pub use oracle::{
    brute_force_max_profile, fraction_correct, min_cut_fixed_sizes, OracleResult,
    MAX_EXHAUSTIVE_VERTICES,
};
pub use partition::{Group, Partition};
pub use sbm::{expected_edge_count, expected_mean_degree, generate, GroundTruth, SbmConfig};
pub use scalar::Real;
pub use spectral::{
    fiedler_vector, generalized_fiedler_vector, laplacian_apply, vertex_order, EigenOptions,
    EigenResult, SpectralError,
};
pub use sweep::{
    detect, format_sig9, sweep, write_sweep_csv, DetectionDocument, DetectionResult,
    EigenDiagnostics, SweepResult, ISOLATED_VERTEX_POLICY,
};

/// [`ModelParams`] pinned to `f64`.
pub type ModelParamsF64 = ModelParams<f64>;
/// [`OracleResult`] pinned to `f64`.
pub type OracleResultF64 = OracleResult<f64>;
/// [`EigenOptions`] pinned to `f64`.
pub type EigenOptionsF64 = EigenOptions<f64>;
/// [`EigenResult`] pinned to `f64`.
pub type EigenResultF64 = EigenResult<f64>;
/// [`SweepResult`] pinned to `f64`.
pub type SweepResultF64 = SweepResult<f64>;
/// [`DetectionResult`] pinned to `f64`.
pub type DetectionResultF64 = DetectionResult<f64>;
