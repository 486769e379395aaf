//! Time dependence of the matrix A(t).
//!
//! Every entry carries its value together with analytic first and second
//! time derivatives; the verification harness never needs to finite-
//! difference A. Entries defined only through a quadrature (the gauge
//! functions a(t)) carry their integrand as the derivative.

use super::quad::adaptive_simpson;
use super::KernelError;
use crate::expr::{Env, Expr, Var};

/// Value with first and second time derivatives (a 2-jet).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet2 {
    pub v: f64,
    pub d1: f64,
    pub d2: f64,
}

impl Jet2 {
    pub const fn constant(v: f64) -> Jet2 {
        Jet2 {
            v,
            d1: 0.0,
            d2: 0.0,
        }
    }

    pub fn cos(self) -> Jet2 {
        let (s, c) = self.v.sin_cos();
        Jet2 {
            v: c,
            d1: -s * self.d1,
            d2: -c * self.d1 * self.d1 - s * self.d2,
        }
    }

    pub fn sin(self) -> Jet2 {
        let (s, c) = self.v.sin_cos();
        Jet2 {
            v: s,
            d1: c * self.d1,
            d2: -s * self.d1 * self.d1 + c * self.d2,
        }
    }
}

impl std::ops::Add for Jet2 {
    type Output = Jet2;
    fn add(self, o: Jet2) -> Jet2 {
        Jet2 {
            v: self.v + o.v,
            d1: self.d1 + o.d1,
            d2: self.d2 + o.d2,
        }
    }
}

impl std::ops::Sub for Jet2 {
    type Output = Jet2;
    fn sub(self, o: Jet2) -> Jet2 {
        Jet2 {
            v: self.v - o.v,
            d1: self.d1 - o.d1,
            d2: self.d2 - o.d2,
        }
    }
}

impl std::ops::Mul for Jet2 {
    type Output = Jet2;
    fn mul(self, o: Jet2) -> Jet2 {
        Jet2 {
            v: self.v * o.v,
            d1: self.d1 * o.v + self.v * o.d1,
            d2: self.d2 * o.v + 2.0 * self.d1 * o.d1 + self.v * o.d2,
        }
    }
}

impl std::ops::Neg for Jet2 {
    type Output = Jet2;
    fn neg(self) -> Jet2 {
        Jet2 {
            v: -self.v,
            d1: -self.d1,
            d2: -self.d2,
        }
    }
}

/// A function of t with cached symbolic derivatives.
#[derive(Debug, Clone)]
pub struct TimeFunction {
    value: Expr,
    d1: Expr,
    d2: Expr,
}

impl TimeFunction {
    pub fn new(value: Expr) -> Result<TimeFunction, KernelError> {
        if value.contains(Var::Z1) || value.contains(Var::Z2) {
            return Err(KernelError::Invalid(format!(
                "time function `{value}` must depend only on t"
            )));
        }
        let d1 = value.differentiate(Var::T);
        let d2 = d1.differentiate(Var::T);
        Ok(TimeFunction { value, d1, d2 })
    }

    pub fn expr(&self) -> &Expr {
        &self.value
    }

    pub fn value_at(&self, t: f64) -> Result<f64, KernelError> {
        Ok(self.value.eval(&Env::time(t))?)
    }

    pub fn jet(&self, t: f64) -> Result<Jet2, KernelError> {
        let env = Env::time(t);
        Ok(Jet2 {
            v: self.value.eval(&env)?,
            d1: self.d1.eval(&env)?,
            d2: self.d2.eval(&env)?,
        })
    }
}

/// `a(t) = a0 + ∫_{t0}^t integrand(s) ds`, with the integrand supplying
/// the analytic derivatives.
#[derive(Debug, Clone)]
pub struct QuadratureFn {
    pub a0: f64,
    pub t0: f64,
    integrand: TimeFunction,
}

impl QuadratureFn {
    pub fn new(a0: f64, t0: f64, integrand: Expr) -> Result<QuadratureFn, KernelError> {
        Ok(QuadratureFn {
            a0,
            t0,
            integrand: TimeFunction::new(integrand)?,
        })
    }

    pub fn integrand(&self) -> &Expr {
        self.integrand.expr()
    }

    pub fn value_at(&self, t: f64) -> Result<f64, KernelError> {
        let integral = adaptive_simpson(|s| self.integrand.value_at(s), self.t0, t)?;
        Ok(self.a0 + integral)
    }

    pub fn jet(&self, t: f64) -> Result<Jet2, KernelError> {
        let inner = self.integrand.jet(t)?;
        Ok(Jet2 {
            v: self.value_at(t)?,
            d1: inner.v,
            d2: inner.d1,
        })
    }
}

/// A scalar entry of the time matrix: closed-form functions composed
/// with quadrature-defined gauge functions.
#[derive(Debug, Clone)]
pub enum TimeScalar {
    Const(f64),
    Fn(TimeFunction),
    Quad(QuadratureFn),
    Add(Box<TimeScalar>, Box<TimeScalar>),
    Mul(Box<TimeScalar>, Box<TimeScalar>),
    Neg(Box<TimeScalar>),
}

impl TimeScalar {
    pub fn function(expr: Expr) -> Result<TimeScalar, KernelError> {
        Ok(TimeScalar::Fn(TimeFunction::new(expr)?))
    }

    pub fn sum_of(a: TimeScalar, b: TimeScalar) -> TimeScalar {
        TimeScalar::Add(Box::new(a), Box::new(b))
    }

    pub fn product_of(a: TimeScalar, b: TimeScalar) -> TimeScalar {
        TimeScalar::Mul(Box::new(a), Box::new(b))
    }

    pub fn negated(a: TimeScalar) -> TimeScalar {
        TimeScalar::Neg(Box::new(a))
    }

    pub fn jet(&self, t: f64) -> Result<Jet2, KernelError> {
        match self {
            TimeScalar::Const(c) => Ok(Jet2::constant(*c)),
            TimeScalar::Fn(f) => f.jet(t),
            TimeScalar::Quad(q) => q.jet(t),
            TimeScalar::Add(a, b) => Ok(a.jet(t)? + b.jet(t)?),
            TimeScalar::Mul(a, b) => Ok(a.jet(t)? * b.jet(t)?),
            TimeScalar::Neg(a) => Ok(-a.jet(t)?),
        }
    }
}

/// The 2×k matrix A(t), k ∈ {2, 3, 4}.
#[derive(Debug, Clone)]
pub struct TimeMatrix {
    k: usize,
    rows: [Vec<TimeScalar>; 2],
}

impl TimeMatrix {
    pub fn new(row1: Vec<TimeScalar>, row2: Vec<TimeScalar>) -> Result<TimeMatrix, KernelError> {
        let k = row1.len();
        if row2.len() != k {
            return Err(KernelError::Dimension(format!(
                "rows have {} and {} entries",
                k,
                row2.len()
            )));
        }
        if !(2..=4).contains(&k) {
            return Err(KernelError::Dimension(format!(
                "column count must be 2, 3 or 4, got {k}"
            )));
        }
        Ok(TimeMatrix {
            k,
            rows: [row1, row2],
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Evaluate all entries (value, first and second derivative) at t.
    pub fn jets(&self, t: f64) -> Result<MatrixJets, KernelError> {
        let mut a = [Vec::with_capacity(self.k), Vec::with_capacity(self.k)];
        for (row, out) in self.rows.iter().zip(a.iter_mut()) {
            for entry in row {
                out.push(entry.jet(t)?);
            }
        }
        Ok(MatrixJets { k: self.k, a })
    }
}

/// Evaluated matrix entries at one time, rows indexed 0/1, columns 0-based.
#[derive(Debug, Clone)]
pub struct MatrixJets {
    pub k: usize,
    pub a: [Vec<Jet2>; 2],
}

impl MatrixJets {
    /// Premultiply by the rotation `M(θ₀ t)`, promoting cos/sin to jets so
    /// the product rule is carried through both derivatives.
    pub fn rotated(&self, theta0: f64, t: f64) -> MatrixJets {
        if theta0 == 0.0 {
            return self.clone();
        }
        let angle = Jet2 {
            v: theta0 * t,
            d1: theta0,
            d2: 0.0,
        };
        let c = angle.cos();
        let s = angle.sin();
        let mut a = [Vec::with_capacity(self.k), Vec::with_capacity(self.k)];
        for j in 0..self.k {
            let top = self.a[0][j];
            let bot = self.a[1][j];
            a[0].push(c * top - s * bot);
            a[1].push(s * top + c * bot);
        }
        MatrixJets { k: self.k, a }
    }

    /// Column minor p_ij = det(A_i, A_j), 0-based `i < j`.
    pub fn p(&self, i: usize, j: usize) -> f64 {
        self.a[0][i].v * self.a[1][j].v - self.a[0][j].v * self.a[1][i].v
    }

    /// First-derivative bilinear minor
    /// Q_ij = a'₁ᵢa₁ⱼ − a'₁ⱼa₁ᵢ + a'₂ᵢa₂ⱼ − a'₂ⱼa₂ᵢ.
    pub fn q_vel(&self, i: usize, j: usize) -> f64 {
        self.a[0][i].d1 * self.a[0][j].v - self.a[0][j].d1 * self.a[0][i].v
            + self.a[1][i].d1 * self.a[1][j].v
            - self.a[1][j].d1 * self.a[1][i].v
    }

    /// Second-derivative bilinear minor
    /// q_ij = a''₁ᵢa₁ⱼ − a''₁ⱼa₁ᵢ + a''₂ᵢa₂ⱼ − a''₂ⱼa₂ᵢ.
    pub fn q_acc(&self, i: usize, j: usize) -> f64 {
        self.a[0][i].d2 * self.a[0][j].v - self.a[0][j].d2 * self.a[0][i].v
            + self.a[1][i].d2 * self.a[1][j].v
            - self.a[1][j].d2 * self.a[1][i].v
    }

    /// |p₁₂p₃₄ − p₁₃p₂₄ + p₁₄p₂₃|, defined for k = 4.
    pub fn pluecker_residual(&self) -> Result<f64, KernelError> {
        if self.k != 4 {
            return Err(KernelError::Dimension(format!(
                "Pluecker relation needs k = 4, got {}",
                self.k
            )));
        }
        Ok((self.p(0, 1) * self.p(2, 3) - self.p(0, 2) * self.p(1, 3)
            + self.p(0, 3) * self.p(1, 2))
        .abs())
    }

    /// Largest |p_ij|; a rank-2 matrix keeps this above zero.
    pub fn max_abs_p(&self) -> f64 {
        let mut best: f64 = 0.0;
        for i in 0..self.k {
            for j in (i + 1)..self.k {
                best = best.max(self.p(i, j).abs());
            }
        }
        best
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;

    #[test]
    fn jet_product_rule() {
        // f = t², g = sin t at t = 0.7; (fg)'' = 2 sin t + 4 t cos t − t² sin t
        let t = 0.7f64;
        let f = Jet2 {
            v: t * t,
            d1: 2.0 * t,
            d2: 2.0,
        };
        let g = Jet2 {
            v: t.sin(),
            d1: t.cos(),
            d2: -t.sin(),
        };
        let fg = f * g;
        assert!((fg.v - t * t * t.sin()).abs() < 1e-15);
        assert!((fg.d1 - (2.0 * t * t.sin() + t * t * t.cos())).abs() < 1e-15);
        assert!((fg.d2 - (2.0 * t.sin() + 4.0 * t * t.cos() - t * t * t.sin())).abs() < 1e-14);
    }

    #[test]
    fn quadrature_entry_carries_integrand_derivatives() {
        // a' = 2 cos t, a(0) = 0 → a = 2 sin t
        let q = QuadratureFn::new(0.0, 0.0, parse("2*cos(t)").unwrap()).unwrap();
        for t in [0.0, 0.5, 1.7, 3.0] {
            let j = q.jet(t).unwrap();
            assert!((j.v - 2.0 * t.sin()).abs() < 1e-10, "value at {t}");
            assert!((j.d1 - 2.0 * t.cos()).abs() < 1e-14);
            assert!((j.d2 + 2.0 * t.sin()).abs() < 1e-14);
        }
    }

    #[test]
    fn time_functions_reject_spatial_variables() {
        assert!(TimeFunction::new(parse("z1 + t").unwrap()).is_err());
    }

    #[test]
    fn rotation_keeps_p_changes_q() {
        // Constant columns: rotating must leave p_ij alone but make Q_ij
        // pick up 2θ₀ p_ij.
        let row1 = vec![TimeScalar::Const(1.0), TimeScalar::Const(0.0)];
        let row2 = vec![TimeScalar::Const(0.3), TimeScalar::Const(2.0)];
        let m = TimeMatrix::new(row1, row2).unwrap();
        let theta0 = 0.45;
        for t in [0.0, 1.3] {
            let plain = m.jets(t).unwrap();
            let rot = plain.jets_check(theta0, t);
            assert!((rot.p(0, 1) - plain.p(0, 1)).abs() < 1e-14);
            let expected_q = plain.q_vel(0, 1) + 2.0 * theta0 * plain.p(0, 1);
            assert!((rot.q_vel(0, 1) - expected_q).abs() < 1e-13);
        }
    }

    impl MatrixJets {
        fn jets_check(&self, theta0: f64, t: f64) -> MatrixJets {
            self.rotated(theta0, t)
        }
    }

    #[test]
    fn pluecker_vanishes_for_matrix_minors() {
        let row1: Vec<TimeScalar> = ["t", "sin(t)", "exp(t/3)", "1 - t^2"]
            .iter()
            .map(|s| TimeScalar::function(parse(s).unwrap()).unwrap())
            .collect();
        let row2: Vec<TimeScalar> = ["cos(t)", "2", "t^3", "sinh(t/2)"]
            .iter()
            .map(|s| TimeScalar::function(parse(s).unwrap()).unwrap())
            .collect();
        let m = TimeMatrix::new(row1, row2).unwrap();
        for i in 0..20 {
            let t = -2.0 + 0.2 * i as f64;
            let jets = m.jets(t).unwrap();
            assert!(jets.pluecker_residual().unwrap() <= 1e-12, "t = {t}");
        }
    }

    #[test]
    fn pluecker_rank_one_matrix_is_zero() {
        // Duplicate columns: all minors vanish.
        let col = || TimeScalar::function(parse("1 + t").unwrap()).unwrap();
        let m = TimeMatrix::new(
            vec![col(), col(), col(), col()],
            vec![col(), col(), col(), col()],
        )
        .unwrap();
        let jets = m.jets(0.8).unwrap();
        assert_eq!(jets.pluecker_residual().unwrap(), 0.0);
        assert_eq!(jets.max_abs_p(), 0.0);
    }

    #[test]
    fn random_six_tuples_violate_pluecker() {
        // Numbers that do not come from a 2×4 matrix generically fail the
        // relation; sample a few fixed tuples.
        let tuples = [
            [0.3, -1.2, 0.7, 2.0, 1.1, -0.4],
            [1.0, 1.0, 1.0, 1.0, 1.0, 2.0],
            [0.9, 0.8, -0.7, 0.6, -0.5, 0.4],
        ];
        for [p12, p34, p13, p24, p14, p23] in tuples {
            let r = f64::abs(p12 * p34 - p13 * p24 + p14 * p23);
            assert!(r > 1e-3, "tuple unexpectedly satisfies the relation");
        }
    }
}
