//! Core linear algebra and flow evaluation.
//!
//! A solution is `φ(z,t) = M(θ₀t)·A(t)·v(z)`. [`TimeMatrix`] carries the
//! 2×k entries of `A` with analytic first and second time derivatives,
//! [`SpatialMap`] the k components of `v` with symbolic partials, and
//! [`Solution`] pairs them with the rotation rate and the closed-form
//! predictors for `det(dφ)` and the vorticity.

mod quad;
pub(crate) mod report;
mod solution;
mod spatial;
mod time;

pub use quad::adaptive_simpson;
pub use report::{ArgMax, ResidualEntry, ResidualReport};
pub use solution::{Family, Frame, Solution};
pub use spatial::{SpatialEval, SpatialMap};
pub use time::{Jet2, MatrixJets, QuadratureFn, TimeFunction, TimeMatrix, TimeScalar};

use crate::expr::EvalError;
use thiserror::Error;

/// Points with `|det(dφ)|` at or below this floor are excluded from
/// vorticity evaluation and Newton inversion.
pub const DET_FLOOR: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum KernelError {
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error("jacobian nearly singular (det = {det:.3e}) at z = ({z1}, {z2}), t = {t}")]
    NearSingular { det: f64, z1: f64, z2: f64, t: f64 },
    #[error(
        "Newton inversion did not converge within {max_iter} iterations (residual {residual:.3e})"
    )]
    NoConvergence { max_iter: usize, residual: f64 },
    #[error("quadrature did not reach tolerance within depth {max_depth}")]
    QuadratureDepth { max_depth: usize },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("{0}")]
    Invalid(String),
}

/// Two-component vector (a point or velocity in the plane).
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl Vec2 {
    pub const fn new(x: f64, y: f64) -> Vec2 {
        Vec2 { x, y }
    }

    pub fn norm_inf(self) -> f64 {
        self.x.abs().max(self.y.abs())
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    /// 2D cross product `self.x * other.y - self.y * other.x`.
    pub fn cross(self, other: Vec2) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn dot(self, other: Vec2) -> f64 {
        self.x * other.x + self.y * other.y
    }
}

impl std::ops::Add for Vec2 {
    type Output = Vec2;
    fn add(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x + o.x, self.y + o.y)
    }
}

impl std::ops::Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x - o.x, self.y - o.y)
    }
}

impl std::ops::Mul<f64> for Vec2 {
    type Output = Vec2;
    fn mul(self, s: f64) -> Vec2 {
        Vec2::new(self.x * s, self.y * s)
    }
}

/// 2×2 matrix, row major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2 {
    pub a11: f64,
    pub a12: f64,
    pub a21: f64,
    pub a22: f64,
}

impl Mat2 {
    pub const fn new(a11: f64, a12: f64, a21: f64, a22: f64) -> Mat2 {
        Mat2 { a11, a12, a21, a22 }
    }

    pub const fn identity() -> Mat2 {
        Mat2::new(1.0, 0.0, 0.0, 1.0)
    }

    /// Counterclockwise rotation `M(θ)`.
    pub fn rotation(theta: f64) -> Mat2 {
        let (s, c) = theta.sin_cos();
        Mat2::new(c, -s, s, c)
    }

    /// Reflection `M̂(θ)`.
    pub fn reflection(theta: f64) -> Mat2 {
        let (s, c) = theta.sin_cos();
        Mat2::new(c, s, s, -c)
    }

    pub fn det(self) -> f64 {
        self.a11 * self.a22 - self.a12 * self.a21
    }

    /// Inverse; defined only when `|det|` exceeds the floor.
    pub fn inverse(self) -> Option<Mat2> {
        let d = self.det();
        if d.abs() <= DET_FLOOR {
            return None;
        }
        Some(Mat2::new(
            self.a22 / d,
            -self.a12 / d,
            -self.a21 / d,
            self.a11 / d,
        ))
    }

    pub fn mul_vec(self, v: Vec2) -> Vec2 {
        Vec2::new(
            self.a11 * v.x + self.a12 * v.y,
            self.a21 * v.x + self.a22 * v.y,
        )
    }

    pub fn mul_mat(self, o: Mat2) -> Mat2 {
        Mat2::new(
            self.a11 * o.a11 + self.a12 * o.a21,
            self.a11 * o.a12 + self.a12 * o.a22,
            self.a21 * o.a11 + self.a22 * o.a21,
            self.a21 * o.a12 + self.a22 * o.a22,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn splitmix(state: &mut u64) -> f64 {
        *state = state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = *state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z = z ^ (z >> 31);
        (z >> 11) as f64 / (1u64 << 53) as f64
    }

    #[test]
    fn rotation_at_zero_is_identity() {
        assert_eq!(Mat2::rotation(0.0), Mat2::identity());
    }

    #[test]
    fn rotation_determinant_is_one() {
        let mut state = 7u64;
        for _ in 0..20 {
            let theta = 20.0 * splitmix(&mut state) - 10.0;
            assert!((Mat2::rotation(theta).det() - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn reflection_determinant_is_minus_one() {
        // det M̂ = -cos² - sin² = -1
        let mut state = 99u64;
        for _ in 0..20 {
            let theta = 20.0 * splitmix(&mut state) - 10.0;
            assert!((Mat2::reflection(theta).det() + 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn inverse_round_trips() {
        let m = Mat2::new(2.0, 1.0, -0.5, 3.0);
        let inv = m.inverse().unwrap();
        let id = m.mul_mat(inv);
        assert!((id.a11 - 1.0).abs() < 1e-15);
        assert!(id.a12.abs() < 1e-15);
        assert!(id.a21.abs() < 1e-16);
        assert!((id.a22 - 1.0).abs() < 1e-15);
    }

    #[test]
    fn inverse_requires_det_above_floor() {
        let m = Mat2::new(1.0, 1.0, 1.0, 1.0 + 1e-9);
        assert!(m.inverse().is_none());
    }
}
