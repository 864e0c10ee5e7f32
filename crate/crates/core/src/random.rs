//! Seeded random inputs for property checks.
//!
//! Rotations are drawn as a Gaussian-normalized axis with an angle uniform in
//! `[0, π]`, pushed through the exponential map. This does not sample SO(3)
//! uniformly, which the identity checks do not need.

use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::linalg::Vec3;
use crate::propagation::exp_so3_matrix;
use crate::scalar::Real;
use crate::so3::{FrameId, RotationMatrix};

/// Unit vector from a normalized standard-normal triple.
pub fn random_unit_axis<T: Real, R: Rng + ?Sized>(rng: &mut R) -> Vec3<T> {
    loop {
        let g: [f64; 3] = [StandardNormal.sample(rng), StandardNormal.sample(rng), StandardNormal.sample(rng)];
        let n = (g[0] * g[0] + g[1] * g[1] + g[2] * g[2]).sqrt();
        if n > 1e-6 {
            return Vec3::new(T::lit(g[0] / n), T::lit(g[1] / n), T::lit(g[2] / n));
        }
    }
}

/// Vector with components uniform in `[lo, hi]`.
pub fn random_vector<T: Real, R: Rng + ?Sized>(rng: &mut R, lo: f64, hi: f64) -> Vec3<T> {
    Vec3::new(T::lit(rng.random_range(lo..=hi)), T::lit(rng.random_range(lo..=hi)), T::lit(rng.random_range(lo..=hi)))
}

pub fn random_rotation<T: Real, R: Rng + ?Sized>(rng: &mut R, from: FrameId, to: FrameId) -> RotationMatrix<T> {
    let axis = random_unit_axis::<T, _>(rng);
    let angle = T::lit(rng.random_range(0.0..=std::f64::consts::PI));
    RotationMatrix::from_matrix_unchecked(exp_so3_matrix(axis.scale(angle)), from, to)
}
