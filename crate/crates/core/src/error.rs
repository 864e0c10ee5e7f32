use thiserror::Error;

use crate::so3::FrameId;

/// Errors raised by the kinematics library.
///
/// Defect magnitudes are reported as `f64` regardless of the scalar type the
/// computation ran in.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("matrix is not skew-symmetric (defect {defect:e})")]
    NotSkew { defect: f64 },

    #[error("matrix is not orthogonal (defect {defect:e})")]
    NotOrthogonal { defect: f64 },

    #[error("matrix is not a proper rotation (det {det})")]
    ImproperRotation { det: f64 },

    #[error("frame mismatch: expected {expected}, found {found}")]
    FrameMismatch { expected: FrameId, found: FrameId },

    #[error("derivative is not tangent to the rotation group (skewness defect {defect:e})")]
    InconsistentDerivative { defect: f64 },

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("empty gyro log")]
    EmptyLog,

    #[error("gyro timestamps not strictly increasing at sample {index}")]
    NonMonotonic { index: usize },

    #[error("time {t} outside trajectory domain [{start}, {end}]")]
    Domain { t: f64, start: f64, end: f64 },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn ensure_frame(expected: FrameId, found: FrameId) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::FrameMismatch { expected, found })
    }
}
