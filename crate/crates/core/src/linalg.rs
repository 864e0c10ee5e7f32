//! Fixed-size 3-vectors and 3×3 matrices.
//!
//! Matrices are stored row-major (`m[row][col]`), matching the layout used
//! in every serialized form.

use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub};

use crate::scalar::Real;

/// Untagged 3-vector.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vec3<T>(pub [T; 3]);

impl<T: Real> Vec3<T> {
    #[inline]
    pub fn new(x: T, y: T, z: T) -> Self {
        Self([x, y, z])
    }

    #[inline]
    pub fn zeros() -> Self {
        Self([T::zero(); 3])
    }

    /// Unit vector along axis `i` (0, 1 or 2).
    pub fn unit(i: usize) -> Self {
        let mut v = Self::zeros();
        v.0[i] = T::one();
        v
    }

    #[inline]
    pub fn x(&self) -> T {
        self.0[0]
    }

    #[inline]
    pub fn y(&self) -> T {
        self.0[1]
    }

    #[inline]
    pub fn z(&self) -> T {
        self.0[2]
    }

    pub fn dot(&self, other: &Self) -> T {
        self.0[0] * other.0[0] + self.0[1] * other.0[1] + self.0[2] * other.0[2]
    }

    pub fn cross(&self, other: &Self) -> Self {
        let [a1, a2, a3] = self.0;
        let [b1, b2, b3] = other.0;
        Self([a2 * b3 - a3 * b2, a3 * b1 - a1 * b3, a1 * b2 - a2 * b1])
    }

    pub fn norm(&self) -> T {
        self.dot(self).sqrt()
    }

    pub fn scale(&self, s: T) -> Self {
        Self(self.0.map(|c| c * s))
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|c| c.is_finite())
    }

    /// Largest absolute component.
    pub fn max_abs(&self) -> T {
        self.0.iter().fold(T::zero(), |acc, c| acc.max(c.abs()))
    }
}

impl<T> From<[T; 3]> for Vec3<T> {
    fn from(c: [T; 3]) -> Self {
        Self(c)
    }
}

impl<T: Real> Add for Vec3<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self([self.0[0] + rhs.0[0], self.0[1] + rhs.0[1], self.0[2] + rhs.0[2]])
    }
}

impl<T: Real> Sub for Vec3<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self([self.0[0] - rhs.0[0], self.0[1] - rhs.0[1], self.0[2] - rhs.0[2]])
    }
}

impl<T: Real> Neg for Vec3<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self(self.0.map(|c| -c))
    }
}

impl<T> Index<usize> for Vec3<T> {
    type Output = T;
    fn index(&self, i: usize) -> &T {
        &self.0[i]
    }
}

/// Plain 3×3 matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Mat3<T>(pub [[T; 3]; 3]);

impl<T: Real> Mat3<T> {
    pub fn from_rows(rows: [[T; 3]; 3]) -> Self {
        Self(rows)
    }

    /// Builds a matrix from 9 row-major entries.
    pub fn from_row_slice(entries: &[T; 9]) -> Self {
        let e = entries;
        Self([[e[0], e[1], e[2]], [e[3], e[4], e[5]], [e[6], e[7], e[8]]])
    }

    pub fn to_row_array(&self) -> [T; 9] {
        let m = &self.0;
        [m[0][0], m[0][1], m[0][2], m[1][0], m[1][1], m[1][2], m[2][0], m[2][1], m[2][2]]
    }

    pub fn zeros() -> Self {
        Self([[T::zero(); 3]; 3])
    }

    pub fn identity() -> Self {
        Self::diagonal(T::one(), T::one(), T::one())
    }

    pub fn diagonal(a: T, b: T, c: T) -> Self {
        let z = T::zero();
        Self([[a, z, z], [z, b, z], [z, z, c]])
    }

    pub fn transpose(&self) -> Self {
        let m = &self.0;
        Self([[m[0][0], m[1][0], m[2][0]], [m[0][1], m[1][1], m[2][1]], [m[0][2], m[1][2], m[2][2]]])
    }

    pub fn row(&self, i: usize) -> Vec3<T> {
        Vec3(self.0[i])
    }

    pub fn column(&self, j: usize) -> Vec3<T> {
        Vec3([self.0[0][j], self.0[1][j], self.0[2][j]])
    }

    pub fn determinant(&self) -> T {
        let m = &self.0;
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }

    /// Cofactor matrix; equals `det(M) · M⁻ᵀ`.
    pub fn cofactor(&self) -> Self {
        let r0 = self.row(0);
        let r1 = self.row(1);
        let r2 = self.row(2);
        Self([r1.cross(&r2).0, r2.cross(&r0).0, r0.cross(&r1).0])
    }

    /// `M⁻ᵀ`, or `None` when the matrix is singular.
    pub fn inverse_transpose(&self) -> Option<Self> {
        let det = self.determinant();
        if det == T::zero() || !det.is_finite() {
            return None;
        }
        Some(self.cofactor().scale(T::one() / det))
    }

    pub fn scale(&self, s: T) -> Self {
        Self(self.0.map(|r| r.map(|c| c * s)))
    }

    pub fn frobenius_norm(&self) -> T {
        self.0.iter().flatten().fold(T::zero(), |acc, &c| acc + c * c).sqrt()
    }

    pub fn max_abs(&self) -> T {
        self.0.iter().flatten().fold(T::zero(), |acc, c| acc.max(c.abs()))
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().flatten().all(|c| c.is_finite())
    }

    /// `‖M + Mᵀ‖_F`.
    pub fn skewness_defect(&self) -> T {
        (*self + self.transpose()).frobenius_norm()
    }

    /// `‖MᵀM − I‖_F`.
    pub fn orthogonality_defect(&self) -> T {
        (self.transpose() * *self - Self::identity()).frobenius_norm()
    }

    /// Frobenius distance to another matrix.
    pub fn distance(&self, other: &Self) -> T {
        (*self - *other).frobenius_norm()
    }
}

impl<T: Real> Add for Mat3<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let mut out = self;
        out += rhs;
        out
    }
}

impl<T: Real> AddAssign for Mat3<T> {
    fn add_assign(&mut self, rhs: Self) {
        for (r, rr) in self.0.iter_mut().zip(rhs.0.iter()) {
            for (c, cc) in r.iter_mut().zip(rr.iter()) {
                *c = *c + *cc;
            }
        }
    }
}

impl<T: Real> Sub for Mat3<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<T: Real> Neg for Mat3<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self(self.0.map(|r| r.map(|c| -c)))
    }
}

impl<T: Real> Mul for Mat3<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut out = Self::zeros();
        for i in 0..3 {
            for j in 0..3 {
                out.0[i][j] = self.0[i][0] * rhs.0[0][j] + self.0[i][1] * rhs.0[1][j] + self.0[i][2] * rhs.0[2][j];
            }
        }
        out
    }
}

impl<T: Real> Mul<Vec3<T>> for Mat3<T> {
    type Output = Vec3<T>;
    fn mul(self, v: Vec3<T>) -> Vec3<T> {
        Vec3([self.row(0).dot(&v), self.row(1).dot(&v), self.row(2).dot(&v)])
    }
}

impl<T> Index<(usize, usize)> for Mat3<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.0[i][j]
    }
}

impl<T> IndexMut<(usize, usize)> for Mat3<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.0[i][j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinant_and_cofactor() {
        let m = Mat3::from_rows([[2.0, 0.0, 1.0], [1.0, 3.0, 0.0], [0.0, 1.0, 4.0]]);
        assert_eq!(m.determinant(), 25.0);
        let prod = m.transpose() * m.inverse_transpose().unwrap();
        assert!(prod.distance(&Mat3::identity()) < 1e-15);
    }

    #[test]
    fn singular_has_no_inverse() {
        let m = Mat3::from_rows([[1.0, 2.0, 3.0], [2.0, 4.0, 6.0], [0.0, 0.0, 1.0]]);
        assert!(m.inverse_transpose().is_none());
    }

    #[test]
    fn orthogonality_defect_of_scaled_identity() {
        let m: Mat3<f64> = Mat3::identity().scale(2.0);
        assert!((m.orthogonality_defect() - 3.0 * 3f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn row_slice_round_trip() {
        let e = [1.0f32, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0, 9.0];
        let m = Mat3::from_row_slice(&e);
        assert_eq!(m[(1, 2)], 6.0);
        assert_eq!(m.to_row_array(), e);
    }
}
