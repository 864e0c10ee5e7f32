//! Time derivatives of rotation matrices and recovery of angular velocity.
//!
//! For `R` mapping BODY coordinates into WORLD coordinates, with `w_A` the
//! angular velocity of the body expressed in WORLD and `w_B` the same vector
//! expressed in BODY:
//!
//! | rotation | world rate          | body rate           |
//! |----------|---------------------|---------------------|
//! | `R`      | `Ṙ = [w_A]× R`      | `Ṙ = R [w_B]×`      |
//! | `Rᵀ`     | `d/dt Rᵀ = −Rᵀ [w_A]×` | `d/dt Rᵀ = −[w_B]× Rᵀ` |
//!
//! The world-rate forms assume the two frame origins coincide. The body-rate
//! forms hold for a translating body as well, and `w_B` is what a gyroscope
//! measures.

use crate::error::{ensure_frame, Error, Result};
use crate::linalg::Mat3;
use crate::scalar::Real;
use crate::so3::{skew, skew_to_nearest, unskew, AngularVelocity, FrameId, RotationMatrix};

/// Time derivative of a rotation matrix (units 1/s).
///
/// The frame tags name the rotation being differentiated. Tangency is not
/// checked on construction; see [`world_rate_from_rdot`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RotationDerivative<T> {
    m: Mat3<T>,
    from: FrameId,
    to: FrameId,
}

impl<T: Real> RotationDerivative<T> {
    pub fn new(m: Mat3<T>, from: FrameId, to: FrameId) -> Self {
        Self { m, from, to }
    }

    /// Derivative of `r`, with the tags taken from `r`.
    pub fn of(r: &RotationMatrix<T>, m: Mat3<T>) -> Self {
        Self::new(m, r.from_frame(), r.to_frame())
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

    pub fn transpose(&self) -> Self {
        Self { m: self.m.transpose(), from: self.to, to: self.from }
    }

    fn ensure_differentiates(&self, r: &RotationMatrix<T>) -> Result<()> {
        ensure_frame(r.from_frame(), self.from)?;
        ensure_frame(r.to_frame(), self.to)
    }
}

/// Default tolerance for rate recovery.
pub fn default_recovery_tol<T: Real>() -> T {
    T::VALIDATION_TOL
}

/// `Ṙ = [w_A]× R` for `R` from B to A and `w_A` expressed in A.
pub fn rdot_world_rate<T: Real>(r: &RotationMatrix<T>, w_a: &AngularVelocity<T>) -> Result<RotationDerivative<T>> {
    ensure_frame(r.to_frame(), w_a.expressed_in())?;
    let s = skew(w_a.rate())?.matrix();
    Ok(RotationDerivative::of(r, s * *r.matrix()))
}

/// `Ṙ = R [w_B]×` for `R` from B to A and `w_B` expressed in B.
pub fn rdot_body_rate<T: Real>(r: &RotationMatrix<T>, w_b: &AngularVelocity<T>) -> Result<RotationDerivative<T>> {
    ensure_frame(r.from_frame(), w_b.expressed_in())?;
    let s = skew(w_b.rate())?.matrix();
    Ok(RotationDerivative::of(r, *r.matrix() * s))
}

/// Derivative of the inverse rotation `Rinv` (A to B) from the rate in A:
/// `−Rinv [w_A]×`.
pub fn rdot_inverse_world_rate<T: Real>(
    r_inv: &RotationMatrix<T>,
    w_a: &AngularVelocity<T>,
) -> Result<RotationDerivative<T>> {
    ensure_frame(r_inv.from_frame(), w_a.expressed_in())?;
    let s = skew(w_a.rate())?.matrix();
    Ok(RotationDerivative::of(r_inv, -(*r_inv.matrix() * s)))
}

/// Derivative of the inverse rotation `Rinv` (A to B) from the rate in B:
/// `−[w_B]× Rinv`.
pub fn rdot_inverse_body_rate<T: Real>(
    r_inv: &RotationMatrix<T>,
    w_b: &AngularVelocity<T>,
) -> Result<RotationDerivative<T>> {
    ensure_frame(r_inv.to_frame(), w_b.expressed_in())?;
    let s = skew(w_b.rate())?.matrix();
    Ok(RotationDerivative::of(r_inv, -(s * *r_inv.matrix())))
}

fn recover<T: Real>(s_raw: Mat3<T>, tol: T) -> Result<crate::linalg::Vec3<T>> {
    match skew_to_nearest(&s_raw, tol) {
        Ok(s) => Ok(unskew(&s)),
        Err(Error::NotSkew { defect }) => Err(Error::InconsistentDerivative { defect }),
        Err(e) => Err(e),
    }
}

/// Recovers `w_A` from `Ṙ Rᵀ`.
///
/// Fails with [`Error::InconsistentDerivative`] when `Ṙ Rᵀ` is further than
/// `tol` from skew-symmetric, i.e. `Ṙ` is not tangent to the group at `R`.
pub fn world_rate_from_rdot<T: Real>(
    r: &RotationMatrix<T>,
    rdot: &RotationDerivative<T>,
    tol: T,
) -> Result<AngularVelocity<T>> {
    rdot.ensure_differentiates(r)?;
    let w = recover(*rdot.matrix() * r.matrix().transpose(), tol)?;
    Ok(AngularVelocity::new(w, r.to_frame()))
}

/// Recovers `w_B` from `Rᵀ Ṙ`.
pub fn body_rate_from_rdot<T: Real>(
    r: &RotationMatrix<T>,
    rdot: &RotationDerivative<T>,
    tol: T,
) -> Result<AngularVelocity<T>> {
    rdot.ensure_differentiates(r)?;
    let w = recover(r.matrix().transpose() * *rdot.matrix(), tol)?;
    Ok(AngularVelocity::new(w, r.from_frame()))
}
