//! Frame-tagged rotation matrices, the skew-symmetric operator, and the
//! point / angular-velocity transforms between two frames.
//!
//! A [`RotationMatrix`] tagged `from = B, to = A` maps coordinates expressed
//! in `B` into coordinates expressed in `A`. Every transform checks the tag of
//! its operand, so a world-frame rate can never be fed to a body-frame
//! formula by accident.

use std::fmt;

use crate::error::{ensure_frame, Error, Result};
use crate::linalg::{Mat3, Vec3};
use crate::scalar::Real;

/// Identifier of a reference frame.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FrameId {
    /// Fixed reference frame.
    World,
    /// Frame attached to the rotating body.
    Body,
    /// Any other frame, identified by a static label.
    Named(&'static str),
}

impl fmt::Display for FrameId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FrameId::World => f.write_str("WORLD"),
            FrameId::Body => f.write_str("BODY"),
            FrameId::Named(name) => f.write_str(name),
        }
    }
}

/// 3-vector with the frame its components are expressed in.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Vector3<T> {
    pub components: Vec3<T>,
    pub frame: FrameId,
}

impl<T: Real> Vector3<T> {
    pub fn new(x: T, y: T, z: T, frame: FrameId) -> Self {
        Self { components: Vec3::new(x, y, z), frame }
    }

    pub fn from_vec(components: Vec3<T>, frame: FrameId) -> Self {
        Self { components, frame }
    }

    pub fn zeros(frame: FrameId) -> Self {
        Self::from_vec(Vec3::zeros(), frame)
    }

    pub fn is_finite(&self) -> bool {
        self.components.is_finite()
    }

    pub fn norm(&self) -> T {
        self.components.norm()
    }
}

/// Angular velocity in rad/s, tagged with the frame it is expressed in.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AngularVelocity<T> {
    vector: Vector3<T>,
}

impl<T: Real> AngularVelocity<T> {
    pub fn new(rate: Vec3<T>, expressed_in: FrameId) -> Self {
        Self { vector: Vector3::from_vec(rate, expressed_in) }
    }

    pub fn zeros(expressed_in: FrameId) -> Self {
        Self::new(Vec3::zeros(), expressed_in)
    }

    pub fn from_vector(vector: Vector3<T>) -> Self {
        Self { vector }
    }

    pub fn expressed_in(&self) -> FrameId {
        self.vector.frame
    }

    pub fn rate(&self) -> Vec3<T> {
        self.vector.components
    }

    pub fn vector(&self) -> Vector3<T> {
        self.vector
    }

    pub fn scaled(&self, s: T) -> Vec3<T> {
        self.vector.components.scale(s)
    }
}

/// Skew-symmetric 3×3 matrix `[w]×`.
///
/// Only the three independent entries are stored, so `S + Sᵀ = 0` holds
/// exactly for every materialized matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SkewMatrix<T> {
    axial: Vec3<T>,
}

impl<T: Real> SkewMatrix<T> {
    pub fn zeros() -> Self {
        Self { axial: Vec3::zeros() }
    }

    /// Full matrix laid out as
    /// `[[0, −w₃, w₂], [w₃, 0, −w₁], [−w₂, w₁, 0]]`.
    pub fn matrix(&self) -> Mat3<T> {
        let [w1, w2, w3] = self.axial.0;
        let z = T::zero();
        Mat3([[z, -w3, w2], [w3, z, -w1], [-w2, w1, z]])
    }

    /// `S·x`, which equals `w × x`.
    pub fn apply(&self, x: Vec3<T>) -> Vec3<T> {
        self.matrix() * x
    }
}

/// Builds `[w]×`. Rejects non-finite components.
pub fn skew<T: Real>(w: Vec3<T>) -> Result<SkewMatrix<T>> {
    if !w.is_finite() {
        return Err(Error::InvalidInput(format!("non-finite vector {:?}", w.0)));
    }
    Ok(SkewMatrix { axial: w })
}

/// Inverse of [`skew`]: reads `(S₃₂, S₁₃, S₂₁)`.
pub fn unskew<T: Real>(s: &SkewMatrix<T>) -> Vec3<T> {
    let m = s.matrix();
    Vec3::new(m[(2, 1)], m[(0, 2)], m[(1, 0)])
}

/// Admits a numerically computed, nearly skew matrix.
///
/// Returns the skew part `(M − Mᵀ)/2` when `‖M + Mᵀ‖_F ≤ tol`.
pub fn skew_to_nearest<T: Real>(raw: &Mat3<T>, tol: T) -> Result<SkewMatrix<T>> {
    if !(tol >= T::zero()) {
        return Err(Error::InvalidInput(format!("negative tolerance {tol}")));
    }
    if !raw.is_finite() {
        return Err(Error::InvalidInput("non-finite matrix".into()));
    }
    let defect = raw.skewness_defect();
    if defect > tol {
        return Err(Error::NotSkew { defect: defect.as_f64() });
    }
    let half = T::lit(0.5);
    let m = &raw.0;
    let axial = Vec3::new((m[2][1] - m[1][2]) * half, (m[0][2] - m[2][0]) * half, (m[1][0] - m[0][1]) * half);
    Ok(SkewMatrix { axial })
}

/// `w × x` evaluated as `[w]×·x`. Both vectors must share a frame.
pub fn apply_skew<T: Real>(w: &Vector3<T>, x: &Vector3<T>) -> Result<Vector3<T>> {
    ensure_frame(w.frame, x.frame)?;
    let s = skew(w.components)?;
    if !x.is_finite() {
        return Err(Error::InvalidInput(format!("non-finite vector {:?}", x.components.0)));
    }
    Ok(Vector3::from_vec(s.apply(x.components), w.frame))
}

/// Rotation matrix carrying coordinates from `from_frame` to `to_frame`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RotationMatrix<T> {
    m: Mat3<T>,
    from: FrameId,
    to: FrameId,
}

/// Validates `m` as a proper rotation with the default tolerance of `T`.
pub fn validate_rotation<T: Real>(m: Mat3<T>, from: FrameId, to: FrameId) -> Result<RotationMatrix<T>> {
    RotationMatrix::validate_with(m, from, to, T::VALIDATION_TOL)
}

impl<T: Real> RotationMatrix<T> {
    /// Same as [`validate_rotation`].
    pub fn new(m: Mat3<T>, from: FrameId, to: FrameId) -> Result<Self> {
        validate_rotation(m, from, to)
    }

    /// Validates `‖MMᵀ − I‖_F ≤ tol` and `|det M − 1| ≤ tol`.
    pub fn validate_with(m: Mat3<T>, from: FrameId, to: FrameId, tol: T) -> Result<Self> {
        if !m.is_finite() {
            return Err(Error::InvalidInput("non-finite rotation entries".into()));
        }
        let defect = (m * m.transpose() - Mat3::identity()).frobenius_norm();
        if defect > tol {
            return Err(Error::NotOrthogonal { defect: defect.as_f64() });
        }
        let det = m.determinant();
        if det <= T::zero() || (det - T::one()).abs() > tol {
            return Err(Error::ImproperRotation { det: det.as_f64() });
        }
        Ok(Self { m, from, to })
    }

    /// Wraps a matrix known to lie on the group (within rounding).
    pub(crate) fn from_matrix_unchecked(m: Mat3<T>, from: FrameId, to: FrameId) -> Self {
        Self { m, from, to }
    }

    pub fn identity(from: FrameId, to: FrameId) -> Self {
        Self { m: Mat3::identity(), from, to }
    }

    pub fn matrix(&self) -> &Mat3<T> {
        &self.m
    }

    pub fn from_frame(&self) -> FrameId {
        self.from
    }

    pub fn to_frame(&self) -> FrameId {
        self.to
    }

    /// Transpose with swapped frame tags.
    pub fn inverse(&self) -> Self {
        Self { m: self.m.transpose(), from: self.to, to: self.from }
    }

    /// `self · inner`: chains `inner` (C→B) with `self` (B→A) into C→A.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        ensure_frame(self.from, inner.to)?;
        Ok(Self { m: self.m * inner.m, from: inner.from, to: self.to })
    }

    /// `P_to = R · P_from`.
    pub fn transform_point(&self, p: &Vector3<T>) -> Result<Vector3<T>> {
        ensure_frame(self.from, p.frame)?;
        Ok(Vector3::from_vec(self.m * p.components, self.to))
    }

    /// `w_to = R · w_from`.
    pub fn transform_angular_velocity(&self, w: &AngularVelocity<T>) -> Result<AngularVelocity<T>> {
        ensure_frame(self.from, w.expressed_in())?;
        Ok(AngularVelocity::new(self.m * w.rate(), self.to))
    }

    /// `[R·w]×`, the skew matrix of the rotated vector.
    pub fn conjugate_skew(&self, w: Vec3<T>) -> Result<SkewMatrix<T>> {
        skew(self.m * w)
    }

    /// `R·[w]×·Rᵀ`, evaluated by matrix products.
    pub fn conjugate_skew_by_products(&self, w: Vec3<T>) -> Result<Mat3<T>> {
        Ok(self.m * skew(w)?.matrix() * self.m.transpose())
    }

    /// `‖RᵀR − I‖_F`.
    pub fn orthogonality_error(&self) -> T {
        self.m.orthogonality_defect()
    }
}
