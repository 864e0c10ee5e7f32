//! Scalar abstraction shared by every module.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst};

/// Floating point scalar the kinematics are generic over (`f32` or `f64`).
///
/// Tolerances are per-type: the defaults for `f64` are the ones the library
/// is specified against, the `f32` values are scaled to single precision.
pub trait Real: Float + FloatConst + Debug + Display + Default + Send + Sync + 'static {
    /// Orthogonality and determinant tolerance used by rotation validation.
    const VALIDATION_TOL: Self;
    /// Target orthogonality defect of the reorthonormalization iteration.
    const REORTHO_TOL: Self;
    /// Below this angle the exponential map switches to its Taylor branch.
    const SMALL_ANGLE: Self;

    /// Converts an `f64` literal into this scalar type.
    #[inline]
    fn lit(x: f64) -> Self {
        <Self as num_traits::NumCast>::from(x).expect("f64 literal representable")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f64 {
    const VALIDATION_TOL: Self = 1e-9;
    const REORTHO_TOL: Self = 1e-14;
    const SMALL_ANGLE: Self = 1e-8;
}

impl Real for f32 {
    const VALIDATION_TOL: Self = 1e-4;
    const REORTHO_TOL: Self = 1e-6;
    const SMALL_ANGLE: Self = 1e-4;
}
