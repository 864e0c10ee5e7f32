//! Finite-difference checks of the analytic rotation derivatives.
//!
//! The harness only ever evaluates a [`TrajectoryFunction`]; it has no
//! access to how the attitudes were produced.

use crate::error::{Error, Result};
use crate::kinematics::{rdot_body_rate, rdot_world_rate};
use crate::linalg::Mat3;
use crate::scalar::Real;
use crate::so3::{AngularVelocity, RotationMatrix};

/// Default finite-difference step in seconds.
pub const DEFAULT_STEP: f64 = 1e-5;

/// A rotation trajectory `t → R(t)` defined on a closed interval.
pub trait TrajectoryFunction<T: Real> {
    fn attitude(&self, t: T) -> RotationMatrix<T>;

    /// `(start, end)` of the interval on which the trajectory is defined.
    fn domain(&self) -> (T, T);
}

/// Adapter turning a closure into a [`TrajectoryFunction`].
pub struct FnTrajectory<T, F> {
    f: F,
    start: T,
    end: T,
}

impl<T: Real, F: Fn(T) -> RotationMatrix<T>> FnTrajectory<T, F> {
    pub fn new(start: T, end: T, f: F) -> Self {
        Self { f, start, end }
    }
}

impl<T: Real, F: Fn(T) -> RotationMatrix<T>> TrajectoryFunction<T> for FnTrajectory<T, F> {
    fn attitude(&self, t: T) -> RotationMatrix<T> {
        (self.f)(t)
    }

    fn domain(&self) -> (T, T) {
        (self.start, self.end)
    }
}

/// Outcome of comparing an analytic derivative against central differences.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivativeCheckReport<T> {
    pub t: T,
    pub h: T,
    /// `‖D_h − Ṙ‖_F` with `D_h` the central difference at step `h`.
    pub analytic_error: T,
    /// Skewness defect of the numerical derivative mapped to the algebra.
    pub skewness_defect: T,
    /// `log₂(err(h) / err(h/2))`; 0 when either error is exactly zero.
    pub order_estimate: T,
    /// Both errors were exactly zero, so no order could be estimated.
    pub exact_match: bool,
}

/// `‖M + Mᵀ‖_F`.
pub fn skewness_defect<T: Real>(raw: &Mat3<T>) -> T {
    raw.skewness_defect()
}

/// `(f(t+h) − f(t−h)) / 2h`.
pub fn central_difference<T: Real, F: TrajectoryFunction<T> + ?Sized>(f: &F, t: T, h: T) -> Result<Mat3<T>> {
    if !(h > T::zero()) || !h.is_finite() {
        return Err(Error::InvalidInput(format!("difference step must be positive, got {h}")));
    }
    let (start, end) = f.domain();
    if !(t - h >= start && t + h <= end) {
        return Err(Error::Domain { t: t.as_f64(), start: start.as_f64(), end: end.as_f64() });
    }
    let ahead = *f.attitude(t + h).matrix();
    let behind = *f.attitude(t - h).matrix();
    Ok((ahead - behind).scale(T::one() / (h + h)))
}

fn order_from<T: Real>(coarse: T, fine: T) -> (T, bool) {
    if coarse == T::zero() || fine == T::zero() {
        (T::zero(), coarse == T::zero() && fine == T::zero())
    } else {
        ((coarse / fine).log2(), false)
    }
}

enum RateForm {
    World,
    Body,
}

fn check<T: Real, F: TrajectoryFunction<T> + ?Sized>(
    f: &F,
    rate: &dyn Fn(T) -> AngularVelocity<T>,
    form: RateForm,
    t: T,
    h: T,
) -> Result<DerivativeCheckReport<T>> {
    let r = f.attitude(t);
    let w = rate(t);
    let analytic = match form {
        RateForm::World => rdot_world_rate(&r, &w)?,
        RateForm::Body => rdot_body_rate(&r, &w)?,
    };
    let half = h * T::lit(0.5);
    let d = central_difference(f, t, h)?;
    let d_half = central_difference(f, t, half)?;
    let err = d.distance(analytic.matrix());
    let err_half = d_half.distance(analytic.matrix());
    let rt = r.matrix().transpose();
    let skewness = match form {
        RateForm::World => skewness_defect(&(d * rt)),
        RateForm::Body => skewness_defect(&(rt * d)),
    };
    let (order_estimate, exact_match) = order_from(err, err_half);
    Ok(DerivativeCheckReport { t, h, analytic_error: err, skewness_defect: skewness, order_estimate, exact_match })
}

/// Checks `Ṙ = [w_A]× R` against central differences of `f` at `t`.
///
/// The skewness defect is that of `D Rᵀ`.
pub fn check_against_world_rate<T: Real, F, W>(f: &F, world_rate: W, t: T, h: T) -> Result<DerivativeCheckReport<T>>
where
    F: TrajectoryFunction<T> + ?Sized,
    W: Fn(T) -> AngularVelocity<T>,
{
    check(f, &world_rate, RateForm::World, t, h)
}

/// Checks `Ṙ = R [w_B]×` against central differences of `f` at `t`.
///
/// The skewness defect is that of `Rᵀ D`.
pub fn check_against_body_rate<T: Real, F, W>(f: &F, body_rate: W, t: T, h: T) -> Result<DerivativeCheckReport<T>>
where
    F: TrajectoryFunction<T> + ?Sized,
    W: Fn(T) -> AngularVelocity<T>,
{
    check(f, &body_rate, RateForm::Body, t, h)
}
