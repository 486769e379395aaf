//! Constructors for the five separated-variables solution families.
//!
//! | family     | k | A(t)                                   | v(z)                                  |
//! |------------|---|----------------------------------------|---------------------------------------|
//! | k2         | 2 | M(θ)·[[r, ra], [0, e/r]]               | (z1, z2)                              |
//! | k3         | 3 | M(θ)·[[r, ra₁, ra₂], [0, 1/r, 0]]      | (z1, z2, f(z2))                       |
//! | elliptic   | 4 | (I | M(μt))                            | (z1, z2, f¹, f²), f anti-CR           |
//! | hyperbolic | 4 | [[e^{ct},0,0,e^{-ct}],[0,e^{-ct},e^{ct},0]] | (z1, z2, f₁(z1), f₂(z2))         |
//! | parabolic  | 4 | `[[t,1,0,0],[0,0,1,t]]`                  | (z1, z2, z2f₁'(z1)+f₂(z1), f₁(z1))    |
//!
//! Gerstner's wave is the elliptic family with
//! f = (e^{κz2}/κ)(sin κz1, −cos κz1). The gauge functions a, a₁, a₂ are
//! defined by their ODEs and realized by adaptive quadrature.

use thiserror::Error;

use crate::expr::{Env, EvalError, Expr, UnaryFn, Var};
use crate::kernel::{
    adaptive_simpson, Family, KernelError, QuadratureFn, Solution, SpatialMap, TimeMatrix,
    TimeScalar,
};

#[derive(Debug, Error)]
pub enum FamilyError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("map is not anti-CR: max residual {max_residual:.3e} at (z1, z2) = ({z1}, {z2})")]
    AntiCrViolation { max_residual: f64, z1: f64, z2: f64 },
    #[error(transparent)]
    Kernel(#[from] KernelError),
}

impl From<EvalError> for FamilyError {
    fn from(e: EvalError) -> Self {
        FamilyError::Kernel(KernelError::Eval(e))
    }
}

/// Kirchhoff-type k = 2 parameters. The gauge a(t) solves
/// a' = (2eθ' − c)/r² with a(0) = a0.
#[derive(Debug, Clone)]
pub struct K2Params {
    pub r: Expr,
    pub theta: Expr,
    pub e: f64,
    pub c: f64,
    pub a0: f64,
}

/// k = 3 parameters: a₁' = 2θ'/r², a₂' = −1/r².
#[derive(Debug, Clone)]
pub struct K3Params {
    pub r: Expr,
    pub theta: Expr,
    pub f: Expr,
    pub a1_0: f64,
    pub a2_0: f64,
}

/// A plane map satisfying the anti Cauchy–Riemann system
/// f¹_z1 + f²_z2 = 0, f¹_z2 − f²_z1 = 0.
///
/// The system is validated numerically at construction on 200 sample
/// points in [−1, 1]².
#[derive(Debug, Clone)]
pub struct AntiCrMap {
    pub f1: Expr,
    pub f2: Expr,
}

const ANTI_CR_SAMPLES: usize = 200;
const ANTI_CR_TOL: f64 = 1e-9;

fn splitmix(state: &mut u64) -> f64 {
    *state = state.wrapping_add(0x9e3779b97f4a7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z = z ^ (z >> 31);
    (z >> 11) as f64 / (1u64 << 53) as f64
}

impl AntiCrMap {
    pub fn new(f1: Expr, f2: Expr) -> Result<AntiCrMap, FamilyError> {
        for f in [&f1, &f2] {
            if f.contains(Var::T) {
                return Err(FamilyError::InvalidParams(format!(
                    "anti-CR component `{f}` must not depend on t"
                )));
            }
        }
        let f1_z1 = f1.differentiate(Var::Z1);
        let f1_z2 = f1.differentiate(Var::Z2);
        let f2_z1 = f2.differentiate(Var::Z1);
        let f2_z2 = f2.differentiate(Var::Z2);
        let mut state = 0x5eed_0001u64;
        let mut worst = 0.0f64;
        let mut worst_at = (0.0, 0.0);
        for _ in 0..ANTI_CR_SAMPLES {
            let z1 = 2.0 * splitmix(&mut state) - 1.0;
            let z2 = 2.0 * splitmix(&mut state) - 1.0;
            let env = Env::space(z1, z2);
            let sum = f1_z1.eval(&env)? + f2_z2.eval(&env)?;
            let diff = f1_z2.eval(&env)? - f2_z1.eval(&env)?;
            let r = sum.abs().max(diff.abs());
            if r > worst {
                worst = r;
                worst_at = (z1, z2);
            }
        }
        if worst > ANTI_CR_TOL {
            return Err(FamilyError::AntiCrViolation {
                max_residual: worst,
                z1: worst_at.0,
                z2: worst_at.1,
            });
        }
        Ok(AntiCrMap { f1, f2 })
    }
}

/// Elliptic family parameters: φ = z + M(μt)f.
#[derive(Debug, Clone)]
pub struct EllipticParams {
    pub f: AntiCrMap,
    pub mu: f64,
}

/// Hyperbolic family parameters.
#[derive(Debug, Clone)]
pub struct HyperbolicParams {
    pub c: f64,
    pub f1: Expr,
    pub f2: Expr,
}

/// Parabolic family parameters (both functions of z1).
#[derive(Debug, Clone)]
pub struct ParabolicParams {
    pub f1: Expr,
    pub f2: Expr,
}

/// ∫_{t0}^{t1} integrand(t) dt by adaptive Simpson (absolute tolerance
/// 1e-12, relative 1e-10).
pub fn quadrature(integrand: &Expr, t0: f64, t1: f64) -> Result<f64, FamilyError> {
    if integrand.contains(Var::Z1) || integrand.contains(Var::Z2) {
        return Err(FamilyError::InvalidParams(format!(
            "integrand `{integrand}` must depend only on t"
        )));
    }
    Ok(adaptive_simpson(|t| integrand.eval(&Env::time(t)), t0, t1)?)
}

fn expect_var(e: &Expr, what: &str, allowed: Var) -> Result<(), FamilyError> {
    for var in [Var::T, Var::Z1, Var::Z2] {
        if var != allowed && e.contains(var) {
            return Err(FamilyError::InvalidParams(format!(
                "{what} `{e}` may depend only on {}",
                allowed.name()
            )));
        }
    }
    Ok(())
}

fn ts_fn(e: Expr) -> Result<TimeScalar, FamilyError> {
    Ok(TimeScalar::function(e)?)
}

fn fmt_param(x: f64) -> String {
    format!("{x}")
}

/// Kirchhoff-type flow: A = M(θ)·[[r, ra],[0, e/r]] on the identity
/// labelling, det(dφ) = e, ζ = c/e.
pub fn make_k2(p: K2Params) -> Result<Solution, FamilyError> {
    if p.e == 0.0 {
        return Err(FamilyError::InvalidParams("e must be nonzero".into()));
    }
    expect_var(&p.r, "r", Var::T)?;
    expect_var(&p.theta, "theta", Var::T)?;

    let theta_dot = p.theta.differentiate(Var::T);
    // a' = (2eθ' − c)/r²
    let integrand =
        (Expr::Const(2.0 * p.e) * theta_dot - Expr::Const(p.c)) / (p.r.clone() * p.r.clone());
    let a = TimeScalar::Quad(QuadratureFn::new(p.a0, 0.0, integrand)?);

    let cos_t = Expr::call(UnaryFn::Cos, p.theta.clone());
    let sin_t = Expr::call(UnaryFn::Sin, p.theta.clone());
    let r_cos = ts_fn(cos_t.clone() * p.r.clone())?;
    let r_sin = ts_fn(sin_t.clone() * p.r.clone())?;
    let e_over_r = Expr::Const(p.e) / p.r.clone();
    // A = M(θ)·[[r, ra],[0, e/r]] expanded entry-wise.
    let a11 = ts_fn(cos_t.clone() * p.r.clone())?;
    let a12 = TimeScalar::sum_of(
        TimeScalar::product_of(r_cos, a.clone()),
        ts_fn(-(sin_t.clone() * e_over_r.clone()))?,
    );
    let a21 = ts_fn(sin_t.clone() * p.r.clone())?;
    let a22 = TimeScalar::sum_of(TimeScalar::product_of(r_sin, a), ts_fn(cos_t * e_over_r)?);
    let matrix = TimeMatrix::new(vec![a11, a12], vec![a21, a22])?;

    Ok(Solution {
        family: Family::K2,
        label: "k2".into(),
        matrix,
        map: SpatialMap::identity(),
        theta0: 0.0,
        det_closed: Some(Expr::Const(p.e)),
        zeta_closed: Some(Expr::Const(p.c / p.e)),
        pde_param: None,
        params: vec![
            ("r".into(), p.r.to_string()),
            ("theta".into(), p.theta.to_string()),
            ("e".into(), fmt_param(p.e)),
            ("c".into(), fmt_param(p.c)),
            ("a0".into(), fmt_param(p.a0)),
        ],
    })
}

/// k = 3 family: A = M(θ)·[[r, ra₁, ra₂],[0, 1/r, 0]], v = (z1, z2, f(z2)),
/// det(dφ) = 1 and ζ = f'(z2).
pub fn make_k3(p: K3Params) -> Result<Solution, FamilyError> {
    expect_var(&p.r, "r", Var::T)?;
    expect_var(&p.theta, "theta", Var::T)?;
    expect_var(&p.f, "f", Var::Z2)?;

    let theta_dot = p.theta.differentiate(Var::T);
    let r_sq = p.r.clone() * p.r.clone();
    let a1 = TimeScalar::Quad(QuadratureFn::new(
        p.a1_0,
        0.0,
        Expr::Const(2.0) * theta_dot / r_sq.clone(),
    )?);
    let a2 = TimeScalar::Quad(QuadratureFn::new(p.a2_0, 0.0, -(Expr::Const(1.0) / r_sq))?);

    let cos_t = Expr::call(UnaryFn::Cos, p.theta.clone());
    let sin_t = Expr::call(UnaryFn::Sin, p.theta.clone());
    let inv_r = Expr::Const(1.0) / p.r.clone();
    let r_cos = || -> Result<TimeScalar, FamilyError> { ts_fn(cos_t.clone() * p.r.clone()) };
    let r_sin = || -> Result<TimeScalar, FamilyError> { ts_fn(sin_t.clone() * p.r.clone()) };

    let a11 = r_cos()?;
    let a12 = TimeScalar::sum_of(
        TimeScalar::product_of(r_cos()?, a1.clone()),
        ts_fn(-(sin_t.clone() * inv_r.clone()))?,
    );
    let a13 = TimeScalar::product_of(r_cos()?, a2.clone());
    let a21 = r_sin()?;
    let a22 = TimeScalar::sum_of(
        TimeScalar::product_of(r_sin()?, a1),
        ts_fn(cos_t.clone() * inv_r)?,
    );
    let a23 = TimeScalar::product_of(r_sin()?, a2);
    let matrix = TimeMatrix::new(vec![a11, a12, a13], vec![a21, a22, a23])?;

    let map = SpatialMap::new(vec![Expr::z1(), Expr::z2(), p.f.clone()])?;
    let zeta = p.f.differentiate(Var::Z2);

    Ok(Solution {
        family: Family::K3,
        label: "k3".into(),
        matrix,
        map,
        theta0: 0.0,
        det_closed: Some(Expr::Const(1.0)),
        zeta_closed: Some(zeta),
        pde_param: None,
        params: vec![
            ("r".into(), p.r.to_string()),
            ("theta".into(), p.theta.to_string()),
            ("f".into(), p.f.to_string()),
            ("a1_0".into(), fmt_param(p.a1_0)),
            ("a2_0".into(), fmt_param(p.a2_0)),
        ],
    })
}

/// |∇f¹|² as an expression in (z1, z2).
fn grad_norm_sq(f1: &Expr) -> Expr {
    let d10 = f1.differentiate(Var::Z1);
    let d01 = f1.differentiate(Var::Z2);
    Expr::pow(d10, 2.0) + Expr::pow(d01, 2.0)
}

/// Elliptic (Gerstner-type) family: φ = z + M(μt)f with f anti-CR,
/// realized as k = 4 with A = (I | M(μt)).
///
/// det(dφ) = 1 − |∇f¹|² and ζ = −2μ|∇f¹|²/(1 − |∇f¹|²).
pub fn make_elliptic(p: EllipticParams) -> Result<Solution, FamilyError> {
    let mu = p.mu;
    let mu_t = Expr::Const(mu) * Expr::t();
    let cos_mt = Expr::call(UnaryFn::Cos, mu_t.clone());
    let sin_mt = Expr::call(UnaryFn::Sin, mu_t);
    let matrix = TimeMatrix::new(
        vec![
            TimeScalar::Const(1.0),
            TimeScalar::Const(0.0),
            ts_fn(cos_mt.clone())?,
            ts_fn(-sin_mt.clone())?,
        ],
        vec![
            TimeScalar::Const(0.0),
            TimeScalar::Const(1.0),
            ts_fn(sin_mt)?,
            ts_fn(cos_mt)?,
        ],
    )?;
    let map = SpatialMap::new(vec![Expr::z1(), Expr::z2(), p.f.f1.clone(), p.f.f2.clone()])?;

    let s = grad_norm_sq(&p.f.f1);
    let det = Expr::Const(1.0) - s.clone();
    let zeta = Expr::Const(-2.0 * mu) * s / det.clone();

    Ok(Solution {
        family: Family::Elliptic,
        label: "elliptic".into(),
        matrix,
        map,
        theta0: 0.0,
        det_closed: Some(det),
        zeta_closed: Some(zeta),
        pde_param: Some(mu),
        params: vec![
            ("f1".into(), p.f.f1.to_string()),
            ("f2".into(), p.f.f2.to_string()),
            ("mu".into(), fmt_param(mu)),
        ],
    })
}

/// The Gerstner map f_G = (e^{κz2}/κ)(sin κz1, −cos κz1).
pub fn gerstner_map(kappa: f64) -> Result<AntiCrMap, FamilyError> {
    if kappa == 0.0 {
        return Err(FamilyError::InvalidParams("kappa must be nonzero".into()));
    }
    let amp = Expr::exp(Expr::Const(kappa) * Expr::z2()) / Expr::Const(kappa);
    let f1 = amp.clone() * Expr::sin(Expr::Const(kappa) * Expr::z1());
    let f2 = -(amp * Expr::cos(Expr::Const(kappa) * Expr::z1()));
    AntiCrMap::new(f1, f2)
}

/// Gerstner's wave: the elliptic family with the preset f_G.
/// det(dφ) = 1 − e^{2κz2}; the labelling line z2 = 0 is singular and must
/// be excluded by the domain choice.
pub fn make_gerstner(kappa: f64, mu: f64) -> Result<Solution, FamilyError> {
    let f = gerstner_map(kappa)?;
    let mut sol = make_elliptic(EllipticParams { f, mu })?;
    sol.label = "gerstner".into();
    sol.params = vec![
        ("kappa".into(), fmt_param(kappa)),
        ("mu".into(), fmt_param(mu)),
    ];
    Ok(sol)
}

/// Hyperbolic family: A = [[e^{ct},0,0,e^{−ct}],[0,e^{−ct},e^{ct},0]],
/// v = (z1, z2, f₁(z1), f₂(z2)).
///
/// det(dφ) = 1 − f₁'f₂' and ζ = 2c(f₁'+f₂')/(1 − f₁'f₂').
pub fn make_hyperbolic(p: HyperbolicParams) -> Result<Solution, FamilyError> {
    if !p.c.is_finite() {
        return Err(FamilyError::InvalidParams("c must be finite".into()));
    }
    expect_var(&p.f1, "f1", Var::Z1)?;
    expect_var(&p.f2, "f2", Var::Z2)?;

    let e_pos = Expr::exp(Expr::Const(p.c) * Expr::t());
    let e_neg = Expr::exp(Expr::Const(-p.c) * Expr::t());
    let matrix = TimeMatrix::new(
        vec![
            ts_fn(e_pos.clone())?,
            TimeScalar::Const(0.0),
            TimeScalar::Const(0.0),
            ts_fn(e_neg.clone())?,
        ],
        vec![
            TimeScalar::Const(0.0),
            ts_fn(e_neg)?,
            ts_fn(e_pos)?,
            TimeScalar::Const(0.0),
        ],
    )?;
    let map = SpatialMap::new(vec![Expr::z1(), Expr::z2(), p.f1.clone(), p.f2.clone()])?;

    let f1d = p.f1.differentiate(Var::Z1);
    let f2d = p.f2.differentiate(Var::Z2);
    let det = Expr::Const(1.0) - f1d.clone() * f2d.clone();
    let zeta = Expr::Const(2.0 * p.c) * (f1d + f2d) / det.clone();

    Ok(Solution {
        family: Family::Hyperbolic,
        label: "hyperbolic".into(),
        matrix,
        map,
        theta0: 0.0,
        det_closed: Some(det),
        zeta_closed: Some(zeta),
        pde_param: Some(p.c),
        params: vec![
            ("c".into(), fmt_param(p.c)),
            ("f1".into(), p.f1.to_string()),
            ("f2".into(), p.f2.to_string()),
        ],
    })
}

/// Parabolic family: A = `[[t,1,0,0],[0,0,1,t]]`,
/// v = (z1, z2, z2f₁'(z1)+f₂(z1), f₁(z1)).
///
/// det(dφ) = −z2f₁'' − f₂' and ζ = (1 + (f₁')²)/(−z2f₁'' − f₂').
pub fn make_parabolic(p: ParabolicParams) -> Result<Solution, FamilyError> {
    expect_var(&p.f1, "f1", Var::Z1)?;
    expect_var(&p.f2, "f2", Var::Z1)?;

    let t_entry = || -> Result<TimeScalar, FamilyError> { ts_fn(Expr::t()) };
    let matrix = TimeMatrix::new(
        vec![
            t_entry()?,
            TimeScalar::Const(1.0),
            TimeScalar::Const(0.0),
            TimeScalar::Const(0.0),
        ],
        vec![
            TimeScalar::Const(0.0),
            TimeScalar::Const(0.0),
            TimeScalar::Const(1.0),
            t_entry()?,
        ],
    )?;

    let f1d = p.f1.differentiate(Var::Z1);
    let f1dd = f1d.differentiate(Var::Z1);
    let f2d = p.f2.differentiate(Var::Z1);
    let v3 = Expr::z2() * f1d.clone() + p.f2.clone();
    let map = SpatialMap::new(vec![Expr::z1(), Expr::z2(), v3, p.f1.clone()])?;

    let det = -(Expr::z2() * f1dd + f2d);
    let zeta = (Expr::Const(1.0) + Expr::pow(f1d, 2.0)) / det.clone();

    Ok(Solution {
        family: Family::Parabolic,
        label: "parabolic".into(),
        matrix,
        map,
        theta0: 0.0,
        det_closed: Some(det),
        zeta_closed: Some(zeta),
        pde_param: None,
        params: vec![
            ("f1".into(), p.f1.to_string()),
            ("f2".into(), p.f2.to_string()),
        ],
    })
}

/// Premultiply a solution by M(θ₀t). The vorticity prediction becomes
/// ζ_closed + 2θ₀; applying two rotations sums the rates.
pub fn with_rotation(sol: Solution, theta0: f64) -> Solution {
    sol.with_rotation(theta0)
}
