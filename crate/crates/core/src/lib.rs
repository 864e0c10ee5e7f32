//! Rotational kinematics on SO(3) with explicit frame tags.
//!
//! The library covers the skew-symmetric (cross-product) operator, frame
//! transforms of points and angular velocities, the four forms of the time
//! derivative of a rotation matrix, recovery of angular velocity from a
//! derivative, attitude propagation from gyroscope samples, and a
//! finite-difference harness that checks the analytic derivatives.
//!
//! All math is generic over [`Real`] (`f32` or `f64`). The aliases at the
//! crate root fix the scalar to `f64`; `*32` variants use `f32`.
//!
//! ## Modules
//!
//! - [so3]: frame-tagged rotations, vectors and skew matrices.
//! - [kinematics]: `Ṙ` from world or body rates, and the inverse problem.
//! - [propagation]: gyro dead reckoning with Euler and exponential-map steps.
//! - [planar]: rotations about a single axis, embedded in 3D.
//! - [verification]: central-difference checks of the derivative formulas.
//! - [suite]: seeded randomized property suite over all of the above.

// `!(x > y)` is used deliberately so NaN is rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod kinematics;
pub mod linalg;
pub mod planar;
pub mod propagation;
pub mod random;
pub mod scalar;
pub mod so3;
pub mod suite;
pub mod verification;

pub use error::{Error, Result};
pub use kinematics::{
    body_rate_from_rdot, rdot_body_rate, rdot_inverse_body_rate, rdot_inverse_world_rate, rdot_world_rate,
    world_rate_from_rdot,
};
pub use linalg::{Mat3, Vec3};
pub use planar::{embed_planar, planar_consistency_check, rot2, rot2_dot};
pub use propagation::{
    exp_so3, orthogonality_error, propagate, reorthonormalize, step_euler_body, step_expmap_body, step_expmap_world,
    IntegratorChoice,
};
pub use scalar::Real;
pub use so3::{apply_skew, skew, skew_to_nearest, unskew, validate_rotation, FrameId};
pub use verification::{central_difference, check_against_body_rate, check_against_world_rate, skewness_defect};

pub type Vector3 = so3::Vector3<f64>;
pub type AngularVelocity = so3::AngularVelocity<f64>;
pub type SkewMatrix = so3::SkewMatrix<f64>;
pub type RotationMatrix = so3::RotationMatrix<f64>;
pub type RotationDerivative = kinematics::RotationDerivative<f64>;
pub type GyroSample = propagation::GyroSample<f64>;
pub type AttitudeSample = propagation::AttitudeSample<f64>;
pub type AttitudeTrajectory = propagation::AttitudeTrajectory<f64>;
pub type PlanarRotation = planar::PlanarRotation<f64>;
pub type DerivativeCheckReport = verification::DerivativeCheckReport<f64>;

pub type Vector3F32 = so3::Vector3<f32>;
pub type AngularVelocityF32 = so3::AngularVelocity<f32>;
pub type SkewMatrixF32 = so3::SkewMatrix<f32>;
pub type RotationMatrixF32 = so3::RotationMatrix<f32>;
pub type RotationDerivativeF32 = kinematics::RotationDerivative<f32>;
pub type GyroSampleF32 = propagation::GyroSample<f32>;
pub type AttitudeTrajectoryF32 = propagation::AttitudeTrajectory<f32>;
