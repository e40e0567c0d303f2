//! Floating-point abstraction used by the spectral and likelihood code.
//!
//! Everything numeric in this crate is generic over [`Real`], so the whole
//! pipeline runs in either `f32` or `f64`. The crate root exports `f64`
//! aliases for the common case.

use num_traits::{Float, FromPrimitive};

/// Scalar type for spectral and likelihood computations.
///
/// Implemented for `f32` and `f64`. The `FromPrimitive` bound is what lets
/// integer graph statistics (degrees, edge counts) enter floating-point
/// formulas without sprinkling `as` casts around.
pub trait Real: Float + FromPrimitive + std::fmt::Debug + std::fmt::Display + 'static {
    /// Converts an edge or vertex count. Rounds when the mantissa cannot
    /// hold the value exactly, which is acceptable for every count this
    /// crate produces.
    fn from_count(c: u64) -> Self {
        Self::from_u64(c).expect("count representable as float")
    }

    /// Converts a pair count that may exceed `u64` range intermediate math.
    fn from_count_u128(c: u128) -> Self {
        Self::from_u128(c).expect("count representable as float")
    }

    /// Converts an `f64` constant, rounding to the target precision.
    fn from_f64_lossy(x: f64) -> Self {
        Self::from_f64(x).expect("f64 representable as float")
    }

    /// Widens to `f64` for reporting and serialization.
    fn to_f64_lossy(self) -> f64;
}

impl Real for f32 {
    fn to_f64_lossy(self) -> f64 {
        self as f64
    }
}

impl Real for f64 {
    fn to_f64_lossy(self) -> f64 {
        self
    }
}
