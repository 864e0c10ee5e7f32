//! Planar (single-angle) rotations and their embedding as rotations about z.

use crate::kinematics::rdot_body_rate;
use crate::linalg::{Mat3, Vec3};
use crate::scalar::Real;
use crate::so3::{AngularVelocity, FrameId, RotationMatrix};

/// Row-major 2×2 matrix.
pub type Mat2<T> = [[T; 2]; 2];

/// Heading angle of a body moving in the plane, in radians.
///
/// No range normalization is applied.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlanarRotation<T> {
    pub alpha: T,
}

impl<T: Real> PlanarRotation<T> {
    pub fn new(alpha: T) -> Self {
        Self { alpha }
    }

    pub fn matrix(&self) -> Mat2<T> {
        rot2(self.alpha)
    }

    pub fn embed(&self) -> RotationMatrix<T> {
        embed_planar(self.alpha)
    }
}

/// `[[cos α, −sin α], [sin α, cos α]]`.
pub fn rot2<T: Real>(alpha: T) -> Mat2<T> {
    let (s, c) = alpha.sin_cos();
    [[c, -s], [s, c]]
}

/// Time derivative of [`rot2`]: `[[−sin α, −cos α], [cos α, −sin α]]·α̇`.
pub fn rot2_dot<T: Real>(alpha: T, alpha_dot: T) -> Mat2<T> {
    let (s, c) = alpha.sin_cos();
    [[-s * alpha_dot, -c * alpha_dot], [c * alpha_dot, -s * alpha_dot]]
}

pub fn mat2_mul<T: Real>(a: &Mat2<T>, b: &Mat2<T>) -> Mat2<T> {
    let mut out = [[T::zero(); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

pub fn mat2_apply<T: Real>(a: &Mat2<T>, x: [T; 2]) -> [T; 2] {
    [a[0][0] * x[0] + a[0][1] * x[1], a[1][0] * x[0] + a[1][1] * x[1]]
}

/// Embeds a 2×2 block top-left in a 3×3 matrix with `corner` at (3,3).
pub fn embed_block<T: Real>(block: &Mat2<T>, corner: T) -> Mat3<T> {
    let z = T::zero();
    Mat3([[block[0][0], block[0][1], z], [block[1][0], block[1][1], z], [z, z, corner]])
}

/// Rotation by `alpha` about z, from BODY to WORLD.
pub fn embed_planar<T: Real>(alpha: T) -> RotationMatrix<T> {
    RotationMatrix::from_matrix_unchecked(embed_block(&rot2(alpha), T::one()), FrameId::Body, FrameId::World)
}

/// Distance between the body-rate derivative of `embed_planar(α)` under
/// `w_B = (0, 0, α̇)` and the embedded closed-form [`rot2_dot`].
///
/// The comparison runs over the full 3×3 matrix, so any nonzero entry in the
/// third row or column of the 3D derivative is counted in the defect.
pub fn planar_consistency_check<T: Real>(alpha: T, alpha_dot: T) -> T {
    let r = embed_planar(alpha);
    let w_b = AngularVelocity::new(Vec3::new(T::zero(), T::zero(), alpha_dot), FrameId::Body);
    let rdot = rdot_body_rate(&r, &w_b).expect("tags are consistent by construction");
    let planar = embed_block(&rot2_dot(alpha, alpha_dot), T::zero());
    rdot.matrix().distance(&planar)
}
