//! Attitude propagation from body-rate (gyroscope) samples.
//!
//! Rates are held constant between consecutive timestamps (zero-order hold)
//! and the last sample's rate is never extrapolated past its timestamp.
//! Nothing here takes a position or translation: the body-rate equation
//! holds regardless of where the body frame's origin is.

use std::fmt;
use std::str::FromStr;

use crate::error::{ensure_frame, Error, Result};
use crate::kinematics::rdot_body_rate;
use crate::linalg::{Mat3, Vec3};
use crate::scalar::Real;
use crate::so3::{skew, AngularVelocity, FrameId, RotationMatrix};

const REORTHO_MAX_ITERS: usize = 100;

/// Rodrigues closed form of `exp([φ]×)`.
///
/// Uses `sin θ/θ` and `(1 − cos θ)/θ² = ½ (sin(θ/2)/(θ/2))²`, switching to
/// their Taylor expansions below `T::SMALL_ANGLE`.
pub fn exp_so3_matrix<T: Real>(phi: Vec3<T>) -> Mat3<T> {
    let theta = phi.norm();
    let (a, b) = if theta < T::SMALL_ANGLE {
        let t2 = theta * theta;
        (T::one() - t2 / T::lit(6.0), T::lit(0.5) - t2 / T::lit(24.0))
    } else {
        let half = theta * T::lit(0.5);
        let sinc_half = half.sin() / half;
        (theta.sin() / theta, T::lit(0.5) * sinc_half * sinc_half)
    };
    // phi is finite when theta is; skew only rejects non-finite input
    let k = match skew(phi) {
        Ok(s) => s.matrix(),
        Err(_) => return Mat3::identity().scale(T::nan()),
    };
    Mat3::identity() + k.scale(a) + (k * k).scale(b)
}

/// Rotation by `‖φ‖` about `φ/‖φ‖`, tagged `frame → frame`.
///
/// The tag makes the result composable as an increment on either side of an
/// attitude: right of `R` with `frame` = BODY, left with `frame` = WORLD.
pub fn exp_so3<T: Real>(phi: Vec3<T>, frame: FrameId) -> Result<RotationMatrix<T>> {
    if !phi.is_finite() {
        return Err(Error::InvalidInput(format!("non-finite rotation vector {:?}", phi.0)));
    }
    Ok(RotationMatrix::from_matrix_unchecked(exp_so3_matrix(phi), frame, frame))
}

/// `‖MᵀM − I‖_F`.
pub fn orthogonality_error<T: Real>(m: &Mat3<T>) -> T {
    m.orthogonality_defect()
}

fn check_dt<T: Real>(dt: T) -> Result<()> {
    if dt > T::zero() && dt.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("time step must be positive, got {dt}")))
    }
}

/// One explicit Euler step of `Ṙ = R [w_B]×`: `R + Ṙ·dt`.
///
/// The result is deliberately left unprojected.
pub fn step_euler_body<T: Real>(r: &RotationMatrix<T>, w_b: &AngularVelocity<T>, dt: T) -> Result<Mat3<T>> {
    check_dt(dt)?;
    let rdot = rdot_body_rate(r, w_b)?;
    Ok(*r.matrix() + rdot.matrix().scale(dt))
}

/// Exact body-rate flow over `dt`: `R · exp([w_B]× dt)`.
pub fn step_expmap_body<T: Real>(r: &RotationMatrix<T>, w_b: &AngularVelocity<T>, dt: T) -> Result<RotationMatrix<T>> {
    check_dt(dt)?;
    ensure_frame(r.from_frame(), w_b.expressed_in())?;
    r.compose(&exp_so3(w_b.scaled(dt), r.from_frame())?)
}

/// Exact world-rate flow over `dt`: `exp([w_A]× dt) · R`.
///
/// Valid only when the frame origins coincide.
pub fn step_expmap_world<T: Real>(r: &RotationMatrix<T>, w_a: &AngularVelocity<T>, dt: T) -> Result<RotationMatrix<T>> {
    check_dt(dt)?;
    ensure_frame(r.to_frame(), w_a.expressed_in())?;
    exp_so3(w_a.scaled(dt), r.to_frame())?.compose(r)
}

/// Projects `m` onto the rotation group with `Mₖ₊₁ = ½(Mₖ + Mₖ⁻ᵀ)`.
///
/// Iterates until `‖MᵀM − I‖_F ≤ T::REORTHO_TOL`, at most 100 times.
pub fn reorthonormalize<T: Real>(m: &Mat3<T>, from: FrameId, to: FrameId) -> Result<RotationMatrix<T>> {
    if !m.is_finite() {
        return Err(Error::InvalidInput("non-finite matrix".into()));
    }
    let det = m.determinant();
    if det <= T::zero() {
        return Err(Error::ImproperRotation { det: det.as_f64() });
    }
    let half = T::lit(0.5);
    let mut cur = *m;
    for _ in 0..=REORTHO_MAX_ITERS {
        if cur.orthogonality_defect() <= T::REORTHO_TOL {
            return RotationMatrix::validate_with(cur, from, to, T::VALIDATION_TOL);
        }
        let inv_t = cur
            .inverse_transpose()
            .ok_or_else(|| Error::Numerical("singular matrix during reorthonormalization".into()))?;
        let next = (cur + inv_t).scale(half);
        if next == cur {
            break;
        }
        cur = next;
    }
    Err(Error::Numerical(format!(
        "reorthonormalization did not converge (defect {:e})",
        cur.orthogonality_defect().as_f64()
    )))
}

/// A gyroscope reading: time in seconds and body rate in rad/s.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GyroSample<T> {
    pub t: T,
    pub rate: AngularVelocity<T>,
}

impl<T: Real> GyroSample<T> {
    /// Sample with the rate expressed in BODY.
    pub fn body(t: T, rate: Vec3<T>) -> Self {
        Self { t, rate: AngularVelocity::new(rate, FrameId::Body) }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IntegratorChoice {
    /// `R + R[w]×dt`, never projected.
    EulerRaw,
    /// Euler step followed by [`reorthonormalize`].
    EulerReproject,
    /// Right-multiplied exponential of the body rate.
    ExpmapBody,
    /// Left-multiplied exponential of the world rate `R w_B`, recomputed
    /// at the start of every interval.
    ExpmapWorld,
}

impl IntegratorChoice {
    pub const ALL: [IntegratorChoice; 4] = [
        IntegratorChoice::EulerRaw,
        IntegratorChoice::EulerReproject,
        IntegratorChoice::ExpmapBody,
        IntegratorChoice::ExpmapWorld,
    ];

    pub fn name(self) -> &'static str {
        match self {
            IntegratorChoice::EulerRaw => "EULER_RAW",
            IntegratorChoice::EulerReproject => "EULER_REPROJECT",
            IntegratorChoice::ExpmapBody => "EXPMAP_BODY",
            IntegratorChoice::ExpmapWorld => "EXPMAP_WORLD",
        }
    }
}

impl fmt::Display for IntegratorChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for IntegratorChoice {
    type Err = Error;

    /// Case-insensitive; `-` and `_` are interchangeable.
    fn from_str(s: &str) -> Result<Self> {
        let norm = s.trim().to_ascii_uppercase().replace('-', "_");
        Self::ALL
            .into_iter()
            .find(|c| c.name() == norm)
            .ok_or_else(|| Error::InvalidInput(format!("unknown integrator '{s}'")))
    }
}

/// One propagated attitude with its group-membership diagnostics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AttitudeSample<T> {
    pub t: T,
    /// Attitude matrix. For [`IntegratorChoice::EulerRaw`] this drifts off
    /// the rotation group and is kept raw.
    pub attitude: Mat3<T>,
    /// `‖RᵀR − I‖_F`.
    pub orth_defect: T,
    /// `|det R − 1|`.
    pub det_defect: T,
}

impl<T: Real> AttitudeSample<T> {
    fn new(t: T, attitude: Mat3<T>) -> Self {
        Self {
            t,
            attitude,
            orth_defect: attitude.orthogonality_defect(),
            det_defect: (attitude.determinant() - T::one()).abs(),
        }
    }
}

/// Time-ordered attitudes, one per gyro sample, starting at the initial
/// attitude.
#[derive(Debug, Clone, PartialEq)]
pub struct AttitudeTrajectory<T> {
    pub from: FrameId,
    pub to: FrameId,
    pub method: IntegratorChoice,
    pub samples: Vec<AttitudeSample<T>>,
}

impl<T: Real> AttitudeTrajectory<T> {
    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn last(&self) -> &AttitudeSample<T> {
        self.samples.last().expect("trajectory holds at least the initial attitude")
    }

    /// Sample `i` as a validated rotation.
    pub fn rotation(&self, i: usize, tol: T) -> Result<RotationMatrix<T>> {
        RotationMatrix::validate_with(self.samples[i].attitude, self.from, self.to, tol)
    }

    pub fn max_orth_defect(&self) -> T {
        self.samples.iter().fold(T::zero(), |acc, s| acc.max(s.orth_defect))
    }
}

fn check_log<T: Real>(frame: FrameId, log: &[GyroSample<T>]) -> Result<()> {
    if log.is_empty() {
        return Err(Error::EmptyLog);
    }
    for (i, s) in log.iter().enumerate() {
        if !s.t.is_finite() || !s.rate.rate().is_finite() {
            return Err(Error::InvalidInput(format!("non-finite gyro sample at index {i}")));
        }
        ensure_frame(frame, s.rate.expressed_in())?;
        if i > 0 && !(s.t > log[i - 1].t) {
            return Err(Error::NonMonotonic { index: i });
        }
    }
    Ok(())
}

/// Dead-reckons the attitude through a gyro log.
///
/// Sample `i`'s rate drives the interval `[tᵢ, tᵢ₊₁]`. The returned
/// trajectory has one attitude per sample, the first being `r0` at `t₀`.
pub fn propagate<T: Real>(
    r0: &RotationMatrix<T>,
    log: &[GyroSample<T>],
    method: IntegratorChoice,
) -> Result<AttitudeTrajectory<T>> {
    let (from, to) = (r0.from_frame(), r0.to_frame());
    check_log(from, log)?;

    let mut samples = Vec::with_capacity(log.len());
    samples.push(AttitudeSample::new(log[0].t, *r0.matrix()));

    let mut rot = *r0;
    let mut raw = *r0.matrix();
    for pair in log.windows(2) {
        let (cur, next) = (&pair[0], &pair[1]);
        let dt = next.t - cur.t;
        let attitude = match method {
            IntegratorChoice::EulerRaw => {
                let s = skew(cur.rate.rate())?.matrix();
                raw = raw + (raw * s).scale(dt);
                raw
            }
            IntegratorChoice::EulerReproject => {
                let stepped = step_euler_body(&rot, &cur.rate, dt)?;
                rot = reorthonormalize(&stepped, from, to)?;
                *rot.matrix()
            }
            IntegratorChoice::ExpmapBody => {
                rot = step_expmap_body(&rot, &cur.rate, dt)?;
                *rot.matrix()
            }
            IntegratorChoice::ExpmapWorld => {
                let w_a = rot.transform_angular_velocity(&cur.rate)?;
                rot = step_expmap_world(&rot, &w_a, dt)?;
                *rot.matrix()
            }
        };
        samples.push(AttitudeSample::new(next.t, attitude));
    }

    Ok(AttitudeTrajectory { from, to, method, samples })
}
