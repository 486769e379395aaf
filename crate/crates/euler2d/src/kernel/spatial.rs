//! The spatial map v : D → Rᵏ and its gradient minors.

use super::KernelError;
use crate::expr::{Env, Expr, Var};

/// One component together with its symbolic partials up to order two.
#[derive(Debug, Clone)]
pub struct Component {
    pub value: Expr,
    pub d10: Expr,
    pub d01: Expr,
    pub d20: Expr,
    pub d11: Expr,
    pub d02: Expr,
}

impl Component {
    fn new(value: Expr) -> Component {
        let d10 = value.differentiate(Var::Z1);
        let d01 = value.differentiate(Var::Z2);
        let d20 = d10.differentiate(Var::Z1);
        let d11 = d10.differentiate(Var::Z2);
        let d02 = d01.differentiate(Var::Z2);
        Component {
            value,
            d10,
            d01,
            d20,
            d11,
            d02,
        }
    }
}

/// The map v with k components of (z1, z2).
#[derive(Debug, Clone)]
pub struct SpatialMap {
    comps: Vec<Component>,
}

impl SpatialMap {
    pub fn new(components: Vec<Expr>) -> Result<SpatialMap, KernelError> {
        if !(2..=4).contains(&components.len()) {
            return Err(KernelError::Dimension(format!(
                "spatial map needs 2..=4 components, got {}",
                components.len()
            )));
        }
        for c in &components {
            if c.contains(Var::T) {
                return Err(KernelError::Invalid(format!(
                    "spatial component `{c}` must not depend on t"
                )));
            }
        }
        Ok(SpatialMap {
            comps: components.into_iter().map(Component::new).collect(),
        })
    }

    /// The identity labelling (z1, z2) used by the k = 2 family.
    pub fn identity() -> SpatialMap {
        SpatialMap::new(vec![Expr::z1(), Expr::z2()]).expect("identity map is valid")
    }

    pub fn k(&self) -> usize {
        self.comps.len()
    }

    pub fn component(&self, i: usize) -> &Component {
        &self.comps[i]
    }

    /// Values and first partials of every component at z.
    pub fn eval(&self, z1: f64, z2: f64) -> Result<SpatialEval, KernelError> {
        let env = Env::space(z1, z2);
        let k = self.k();
        let mut v = Vec::with_capacity(k);
        let mut d10 = Vec::with_capacity(k);
        let mut d01 = Vec::with_capacity(k);
        for c in &self.comps {
            v.push(c.value.eval(&env)?);
            d10.push(c.d10.eval(&env)?);
            d01.push(c.d01.eval(&env)?);
        }
        Ok(SpatialEval { v, d10, d01 })
    }

    /// Second partials (d20, d11, d02) of component `i` at z.
    pub fn second_partials(&self, i: usize, z1: f64, z2: f64) -> Result<[f64; 3], KernelError> {
        let env = Env::space(z1, z2);
        let c = &self.comps[i];
        Ok([c.d20.eval(&env)?, c.d11.eval(&env)?, c.d02.eval(&env)?])
    }
}

/// Evaluated components and first partials at one point.
#[derive(Debug, Clone)]
pub struct SpatialEval {
    pub v: Vec<f64>,
    pub d10: Vec<f64>,
    pub d01: Vec<f64>,
}

impl SpatialEval {
    pub fn k(&self) -> usize {
        self.v.len()
    }

    /// Gradient minor g_ij = det(∇vⁱ, ∇vʲ), 0-based indices.
    pub fn g(&self, i: usize, j: usize) -> f64 {
        self.d10[i] * self.d01[j] - self.d10[j] * self.d01[i]
    }

    /// Largest |g_ij|; rank(dv) = 2 keeps this positive.
    pub fn max_abs_g(&self) -> f64 {
        let k = self.k();
        let mut best: f64 = 0.0;
        for i in 0..k {
            for j in (i + 1)..k {
                best = best.max(self.g(i, j).abs());
            }
        }
        best
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;

    fn map(sources: &[&str]) -> SpatialMap {
        SpatialMap::new(sources.iter().map(|s| parse(s).unwrap()).collect()).unwrap()
    }

    #[test]
    fn identity_minor_is_one() {
        let m = SpatialMap::identity();
        let e = m.eval(0.3, -0.8).unwrap();
        assert_eq!(e.g(0, 1), 1.0);
    }

    #[test]
    fn separated_quadruple_kills_cross_minors() {
        // v = (z1, z2, f1(z1), f2(z2)) has g13 = g24 = 0 identically.
        let m = map(&["z1", "z2", "sin(2*z1)", "z2^3 - z2"]);
        for (z1, z2) in [(0.0, 0.0), (0.7, -1.2), (-0.4, 0.9)] {
            let e = m.eval(z1, z2).unwrap();
            assert_eq!(e.g(0, 2), 0.0);
            assert_eq!(e.g(1, 3), 0.0);
        }
    }

    #[test]
    fn shear_quadruple_satisfies_its_constraints() {
        // v = (z1, z2, z2 f1'(z1) + f2(z1), f1(z1)) gives g14 = 0 and
        // g24 + g13 = 0 (symbolic expansion, checked pointwise).
        let f1 = parse("cos(z1)").unwrap();
        let f2 = parse("z1^2 - 20*z1").unwrap();
        let v3 = Expr::Add(
            Box::new(Expr::Mul(
                Box::new(Expr::z2()),
                Box::new(f1.differentiate(Var::Z1)),
            )),
            Box::new(f2),
        );
        let m = SpatialMap::new(vec![Expr::z1(), Expr::z2(), v3, f1]).unwrap();
        for (z1, z2) in [(2.0, 0.4), (5.5, -0.9), (7.3, 0.1)] {
            let e = m.eval(z1, z2).unwrap();
            assert!(e.g(0, 3).abs() < 1e-14);
            assert!((e.g(1, 3) + e.g(0, 2)).abs() < 1e-12);
        }
    }

    #[test]
    fn rejects_time_dependence() {
        assert!(SpatialMap::new(vec![Expr::z1(), parse("t*z2").unwrap()]).is_err());
    }

    #[test]
    fn second_partials_are_symbolic() {
        let m = map(&["z1", "z2", "z1^2*z2"]);
        let [d20, d11, d02] = m.second_partials(2, 1.5, -2.0).unwrap();
        assert!((d20 - 2.0 * -2.0).abs() < 1e-15);
        assert!((d11 - 2.0 * 1.5).abs() < 1e-15);
        assert_eq!(d02, 0.0);
    }
}
