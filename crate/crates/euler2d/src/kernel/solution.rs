//! Solutions φ(z,t) = M(θ₀t)·A(t)·v(z) and their flow operations.

// the column contractions read best as indexed loops
#![allow(clippy::needless_range_loop)]

use serde::{Deserialize, Serialize};

use super::spatial::{SpatialEval, SpatialMap};
use super::time::{MatrixJets, TimeMatrix};
use super::{KernelError, Mat2, Vec2, DET_FLOOR};
use crate::expr::{Env, Expr};

/// Newton inversion stops once |φ(z) − x|∞ falls below this.
pub const NEWTON_TOL: f64 = 1e-12;
pub const NEWTON_MAX_ITER: usize = 50;

/// Family tag of a constructed solution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    K2,
    K3,
    Elliptic,
    Hyperbolic,
    Parabolic,
    Custom,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::K2 => "k2",
            Family::K3 => "k3",
            Family::Elliptic => "elliptic",
            Family::Hyperbolic => "hyperbolic",
            Family::Parabolic => "parabolic",
            Family::Custom => "custom",
        }
    }
}

/// A family-tagged pairing of A(t) and v(z) plus the rotation rate and
/// the closed-form predictors for det(dφ) and the vorticity.
///
/// Immutable after construction; all operations are pure.
#[derive(Debug, Clone)]
pub struct Solution {
    pub family: Family,
    /// Human-readable configuration label used in reports.
    pub label: String,
    pub matrix: TimeMatrix,
    pub map: SpatialMap,
    /// Rotation rate θ₀ of the premultiplied M(θ₀t); applied at
    /// evaluation time so the ζ + 2θ₀ shift stays independent of the
    /// family constructors.
    pub theta0: f64,
    /// Closed-form det(dφ) as an expression in (z1, z2), when known.
    pub det_closed: Option<Expr>,
    /// Closed-form vorticity before the +2θ₀ rotation shift.
    pub zeta_closed: Option<Expr>,
    /// μ (elliptic) or c (hyperbolic) for the vorticity PDE checks.
    pub pde_param: Option<f64>,
    /// Display record of the construction parameters.
    pub params: Vec<(String, String)>,
}

impl Solution {
    pub fn k(&self) -> usize {
        self.matrix.k()
    }

    /// All time-dependent data at a single t, rotation folded in.
    /// Grid sweeps should reuse one frame per time sample.
    pub fn frame(&self, t: f64) -> Result<Frame, KernelError> {
        let jets = self.matrix.jets(t)?.rotated(self.theta0, t);
        Ok(Frame { t, jets })
    }

    /// Additive rotation decorator: composing two rotations sums the rates.
    pub fn with_rotation(mut self, theta0: f64) -> Solution {
        self.theta0 += theta0;
        self
    }

    /// φ(z, t).
    pub fn phi(&self, z: Vec2, t: f64) -> Result<Vec2, KernelError> {
        let sp = self.map.eval(z.x, z.y)?;
        Ok(self.frame(t)?.phi(&sp))
    }

    /// dφ(z, t), the 2×2 jacobian in z.
    pub fn phi_jacobian(&self, z: Vec2, t: f64) -> Result<Mat2, KernelError> {
        let sp = self.map.eval(z.x, z.y)?;
        Ok(self.frame(t)?.jacobian(&sp))
    }

    /// ∂φ/∂t at fixed label, i.e. the velocity of particle z.
    pub fn lagrangian_velocity(&self, z: Vec2, t: f64) -> Result<Vec2, KernelError> {
        let sp = self.map.eval(z.x, z.y)?;
        Ok(self.frame(t)?.velocity(&sp))
    }

    /// h = det(P₁) + det(P₂) from the time-differentiated jacobian rows.
    pub fn h_value(&self, z: Vec2, t: f64) -> Result<f64, KernelError> {
        let sp = self.map.eval(z.x, z.y)?;
        Ok(self.frame(t)?.h(&sp))
    }

    /// Vorticity ζ = h / det(dφ); t-independent for valid solutions.
    pub fn vorticity(&self, z: Vec2, t: f64) -> Result<f64, KernelError> {
        let sp = self.map.eval(z.x, z.y)?;
        self.frame(t)?.vorticity(&sp, z)
    }

    /// Newton inversion of φ(·, t) around `guess`.
    pub fn invert(&self, x: Vec2, t: f64, guess: Vec2) -> Result<Vec2, KernelError> {
        self.frame(t)?.invert(&self.map, x, guess)
    }

    /// u(x, t) = φ_t(φ⁻¹(x), t).
    pub fn eulerian_velocity(&self, x: Vec2, t: f64, guess: Vec2) -> Result<Vec2, KernelError> {
        let frame = self.frame(t)?;
        let z = frame.invert(&self.map, x, guess)?;
        let sp = self.map.eval(z.x, z.y)?;
        Ok(frame.velocity(&sp))
    }

    /// The Lagrangian flow map Φᵗ = φᵗ ∘ (φ⁰)⁻¹.
    pub fn lagrangian_map(&self, x: Vec2, t: f64) -> Result<Vec2, KernelError> {
        let z = self.invert(x, 0.0, x)?;
        self.phi(z, t)
    }

    /// Evaluate the closed-form det predictor at z.
    pub fn det_closed_at(&self, z: Vec2) -> Result<Option<f64>, KernelError> {
        match &self.det_closed {
            Some(e) => Ok(Some(e.eval(&Env::space(z.x, z.y))?)),
            None => Ok(None),
        }
    }

    /// Evaluate the closed-form vorticity predictor (including the +2θ₀
    /// rotation shift) at z.
    pub fn zeta_closed_at(&self, z: Vec2) -> Result<Option<f64>, KernelError> {
        match &self.zeta_closed {
            Some(e) => Ok(Some(e.eval(&Env::space(z.x, z.y))? + 2.0 * self.theta0)),
            None => Ok(None),
        }
    }
}

/// Time-dependent data of one solution at a fixed t (rotation included).
#[derive(Debug, Clone)]
pub struct Frame {
    pub t: f64,
    jets: MatrixJets,
}

impl Frame {
    pub fn k(&self) -> usize {
        self.jets.k
    }

    pub fn minors(&self) -> &MatrixJets {
        &self.jets
    }

    /// φ = B(t)·v with B = M(θ₀t)A(t).
    pub fn phi(&self, sp: &SpatialEval) -> Vec2 {
        let a = &self.jets.a;
        let mut x = 0.0;
        let mut y = 0.0;
        for j in 0..self.jets.k {
            x += a[0][j].v * sp.v[j];
            y += a[1][j].v * sp.v[j];
        }
        Vec2::new(x, y)
    }

    /// dφ = B(t)·dv.
    pub fn jacobian(&self, sp: &SpatialEval) -> Mat2 {
        let a = &self.jets.a;
        let mut m = Mat2::new(0.0, 0.0, 0.0, 0.0);
        for j in 0..self.jets.k {
            m.a11 += a[0][j].v * sp.d10[j];
            m.a12 += a[0][j].v * sp.d01[j];
            m.a21 += a[1][j].v * sp.d10[j];
            m.a22 += a[1][j].v * sp.d01[j];
        }
        m
    }

    pub fn det(&self, sp: &SpatialEval) -> f64 {
        self.jacobian(sp).det()
    }

    /// ∂φ/∂t = B'(t)·v.
    pub fn velocity(&self, sp: &SpatialEval) -> Vec2 {
        let a = &self.jets.a;
        let mut x = 0.0;
        let mut y = 0.0;
        for j in 0..self.jets.k {
            x += a[0][j].d1 * sp.v[j];
            y += a[1][j].d1 * sp.v[j];
        }
        Vec2::new(x, y)
    }

    /// h = det(P₁) + det(P₂) with
    /// Pᵢ = [[(φⁱ₁₀)', (φⁱ₀₁)'], [φⁱ₁₀, φⁱ₀₁]].
    pub fn h(&self, sp: &SpatialEval) -> f64 {
        let a = &self.jets.a;
        let mut h = 0.0;
        for row in 0..2 {
            let mut g10 = 0.0;
            let mut g01 = 0.0;
            let mut g10_dot = 0.0;
            let mut g01_dot = 0.0;
            for j in 0..self.jets.k {
                g10 += a[row][j].v * sp.d10[j];
                g01 += a[row][j].v * sp.d01[j];
                g10_dot += a[row][j].d1 * sp.d10[j];
                g01_dot += a[row][j].d1 * sp.d01[j];
            }
            h += g10_dot * g01 - g01_dot * g10;
        }
        h
    }

    /// h through the minor route Σ Q_ij g_ij; algebraically identical to
    /// [`Frame::h`], kept as an independent cross-check path.
    pub fn h_minor_route(&self, sp: &SpatialEval) -> f64 {
        let k = self.jets.k;
        let mut h = 0.0;
        for i in 0..k {
            for j in (i + 1)..k {
                h += self.jets.q_vel(i, j) * sp.g(i, j);
            }
        }
        h
    }

    /// Analytic ∂h/∂t = Σ q_ij g_ij; vanishes for valid solutions.
    pub fn dh_dt(&self, sp: &SpatialEval) -> f64 {
        let k = self.jets.k;
        let mut r = 0.0;
        for i in 0..k {
            for j in (i + 1)..k {
                r += self.jets.q_acc(i, j) * sp.g(i, j);
            }
        }
        r
    }

    /// ζ = h / det(dφ); errors when |det| is at or below the floor.
    pub fn vorticity(&self, sp: &SpatialEval, z: Vec2) -> Result<f64, KernelError> {
        let det = self.det(sp);
        if det.abs() <= DET_FLOOR {
            return Err(KernelError::NearSingular {
                det,
                z1: z.x,
                z2: z.y,
                t: self.t,
            });
        }
        Ok(self.h(sp) / det)
    }

    /// |det(dφ) − Σ p_ij g_ij| (Cauchy–Binet).
    pub fn cauchy_binet_residual(&self, sp: &SpatialEval) -> f64 {
        let k = self.jets.k;
        let mut sum = 0.0;
        for i in 0..k {
            for j in (i + 1)..k {
                sum += self.jets.p(i, j) * sp.g(i, j);
            }
        }
        (self.det(sp) - sum).abs()
    }

    pub fn pluecker_residual(&self) -> Result<f64, KernelError> {
        self.jets.pluecker_residual()
    }

    /// Newton iteration z ← z − (dφ)⁻¹(φ(z) − x).
    ///
    /// After the tolerance is met one more polishing step runs, so the
    /// returned label sits at machine precision rather than just inside
    /// the tolerance; downstream finite differences divide by fd² and
    /// would amplify a 1e-12 residual into visible noise.
    pub fn invert(&self, map: &SpatialMap, x: Vec2, guess: Vec2) -> Result<Vec2, KernelError> {
        let mut z = guess;
        let mut residual = f64::INFINITY;
        let mut converged = false;
        for _ in 0..=NEWTON_MAX_ITER {
            let sp = map.eval(z.x, z.y)?;
            let err = self.phi(&sp) - x;
            residual = err.norm_inf();
            if converged {
                return Ok(z);
            }
            if residual <= NEWTON_TOL {
                converged = true;
            }
            let jac = self.jacobian(&sp);
            let det = jac.det();
            let inv = match jac.inverse() {
                Some(inv) => inv,
                None if converged => return Ok(z),
                None => {
                    return Err(KernelError::NearSingular {
                        det,
                        z1: z.x,
                        z2: z.y,
                        t: self.t,
                    })
                }
            };
            let next = z - inv.mul_vec(err);
            if !next.x.is_finite() || !next.y.is_finite() {
                if converged {
                    return Ok(z);
                }
                return Err(KernelError::NoConvergence {
                    max_iter: NEWTON_MAX_ITER,
                    residual,
                });
            }
            z = next;
        }
        if converged || residual <= NEWTON_TOL {
            return Ok(z);
        }
        Err(KernelError::NoConvergence {
            max_iter: NEWTON_MAX_ITER,
            residual,
        })
    }
}
