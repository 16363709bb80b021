use thiserror::Error;

use crate::scalar::{QPiScalar, QuadReal};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("empty or inverted interval [{lo}, {hi})")]
    EmptyInterval {
        lo: Box<QPiScalar>,
        hi: Box<QPiScalar>,
    },

    #[error("pieces overlap near {at}")]
    OverlappingPieces { at: Box<QPiScalar> },

    #[error("support touches the origin at piece [{lo}, {hi}); the dyadic fold is infinite")]
    SupportTouchesOrigin {
        lo: Box<QPiScalar>,
        hi: Box<QPiScalar>,
    },

    /// The squared L² norm is `value · π` with an irrational `value`.
    #[error("squared norm {0}·π is not a rational multiple of π")]
    ValueField(Box<QuadReal>),

    #[error("function is not a verified wavelet; classification is undefined")]
    NotVerified,

    #[error("complex phase on piece [{lo}, {hi}) is not supported; values must be real")]
    UnsupportedPhase {
        lo: Box<QPiScalar>,
        hi: Box<QPiScalar>,
    },

    #[error("amplitude {0} is not one of 0, 1/√2, 1")]
    AmplitudeField(Box<QuadReal>),

    #[error("invalid profile: {0}")]
    Profile(String),
}
