//! Exact construction and verification of step-function wavelets, and their
//! classification by translation invariance of the associated `V_0` space.
//!
//! Frequency-side functions are [`StepFunction`]s with rational-multiple-of-π
//! breakpoints and values in ℚ(√2), so every check in [`verify`] is exact.
//! [`oracle`] provides an independent floating-point cross-check.

pub mod cli;
pub mod construct;
pub mod error;
pub mod interval;
pub mod oracle;
pub mod scalar;
pub mod verify;

pub use error::{Error, Result};
pub use interval::{refine, AffineMap, Interval, IntervalSet, Partition, Piece, StepFunction};
pub use scalar::{QPiScalar, QuadReal, Rational, Sign};
