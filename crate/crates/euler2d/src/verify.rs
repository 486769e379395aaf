//! Residual suites checking every solution criterion, constraint system,
//! closed-form formula and vorticity PDE numerically.
//!
//! Conventions shared by all checks:
//! - time drift is measured by exact resampling (never by differencing in
//!   t); the analytic derivatives of A make a failed drift check a real
//!   failure rather than an artifact;
//! - Eulerian-frame checks difference centrally with fd_x = fd_t = 1e-4,
//!   vorticity-PDE checks with fd_step = 1e-3;
//! - FD stencils never leave the grid window: a boundary layer of one
//!   stencil radius is excluded;
//! - points with |det(dφ)| ≤ [`DET_FLOOR`] are excluded and a check only
//!   passes when at least 90% of its grid was evaluable.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::expr::{Env, EvalError, Expr};
use crate::families::{AntiCrMap, FamilyError};
use crate::kernel::report::MaxTracker;
use crate::kernel::{
    Family, Frame, KernelError, ResidualReport, Solution, SpatialEval, SpatialMap, Vec2, DET_FLOOR,
};

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("invalid grid: {0}")]
    Grid(String),
    #[error("check not applicable: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error(transparent)]
    Family(#[from] FamilyError),
}

impl From<EvalError> for VerifyError {
    fn from(e: EvalError) -> Self {
        VerifyError::Kernel(KernelError::Eval(e))
    }
}

/// Evenly spaced samples, inclusive of both endpoints.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    let step = (hi - lo) / (n - 1) as f64;
    (0..n).map(|i| lo + step * i as f64).collect()
}

/// Sampling grid over labels and time.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub z1: (f64, f64),
    pub z2: (f64, f64),
    pub n1: usize,
    pub n2: usize,
    pub t: (f64, f64),
    pub nt: usize,
}

impl GridSpec {
    pub fn validate(&self) -> Result<(), VerifyError> {
        if self.n1 < 3 || self.n2 < 3 {
            return Err(VerifyError::Grid("n1 and n2 must be at least 3".into()));
        }
        if self.nt < 3 {
            return Err(VerifyError::Grid("nt must be at least 3".into()));
        }
        // negated comparisons so that NaN bounds also fail validation
        #[allow(clippy::neg_cmp_op_on_partial_ord)]
        if !(self.z1.0 < self.z1.1) || !(self.z2.0 < self.z2.1) || !(self.t.0 < self.t.1) {
            return Err(VerifyError::Grid("ranges must be nondegenerate".into()));
        }
        Ok(())
    }

    /// Label lattice, z2-major then z1.
    pub fn z_points(&self) -> Vec<Vec2> {
        let xs = linspace(self.z1.0, self.z1.1, self.n1);
        let ys = linspace(self.z2.0, self.z2.1, self.n2);
        let mut out = Vec::with_capacity(self.n1 * self.n2);
        for &y in &ys {
            for &x in &xs {
                out.push(Vec2::new(x, y));
            }
        }
        out
    }

    pub fn t_points(&self) -> Vec<f64> {
        linspace(self.t.0, self.t.1, self.nt)
    }
}

fn eval_grid(sol: &Solution, zs: &[Vec2]) -> Result<Vec<SpatialEval>, VerifyError> {
    zs.iter()
        .map(|z| sol.map.eval(z.x, z.y).map_err(VerifyError::from))
        .collect()
}

/// det(dφ), h, ζ and the analytic ∂ₜh must all be time-invariant.
pub fn check_time_invariance(
    sol: &Solution,
    grid: &GridSpec,
) -> Result<ResidualReport, VerifyError> {
    grid.validate()?;
    let zs = grid.z_points();
    let ts = grid.t_points();
    let sps = eval_grid(sol, &zs)?;

    let frame0 = sol.frame(ts[0])?;
    let base: Vec<(f64, f64)> = sps
        .iter()
        .map(|sp| (frame0.det(sp), frame0.h(sp)))
        .collect();

    let mut det_drift = MaxTracker::default();
    let mut h_drift = MaxTracker::default();
    let mut h_rate = MaxTracker::default();
    let mut zeta_drift = MaxTracker::default();
    let mut zeta_excluded = 0usize;
    let mut zeta_seen = 0usize;

    for &t in &ts {
        let frame = sol.frame(t)?;
        for (i, sp) in sps.iter().enumerate() {
            let (z1, z2) = (zs[i].x, zs[i].y);
            let det = frame.det(sp);
            let h = frame.h(sp);
            det_drift.update(det - base[i].0, z1, z2, t);
            h_drift.update(h - base[i].1, z1, z2, t);
            h_rate.update(frame.dh_dt(sp), z1, z2, t);
            zeta_seen += 1;
            if det.abs() > DET_FLOOR && base[i].0.abs() > DET_FLOOR {
                zeta_drift.update(h / det - base[i].1 / base[i].0, z1, z2, t);
            } else {
                zeta_excluded += 1;
            }
        }
    }

    let mut report = ResidualReport::new("time_invariance");
    report.push(det_drift.entry("det_drift", 1e-8));
    report.push(h_drift.entry("h_drift", 1e-8));
    report.push(h_rate.entry("h_rate", 1e-8));
    report.push(zeta_drift.entry("zeta_drift", 1e-8));
    report.excluded_fraction = zeta_excluded as f64 / zeta_seen.max(1) as f64;
    Ok(report)
}

type MinorComboFn = fn(&SpatialEval) -> f64;

/// The three canonical constraint systems on the gradient minors of a
/// k = 4 map.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConstraintCase {
    /// g13 = g24 = 0, solved by v = (z1, z2, f1(z1), f2(z2)).
    Case1,
    /// g14 = 0, g24 + g13 = 0, solved by
    /// v = (z1, z2, z2 f1'(z1) + f2(z1), f1(z1)).
    Case2,
    /// g24 + g13 = 0, g14 − g23 = 0: the anti-CR case.
    Case3,
}

impl ConstraintCase {
    pub fn for_family(family: Family) -> Option<ConstraintCase> {
        match family {
            Family::Hyperbolic => Some(ConstraintCase::Case1),
            Family::Parabolic => Some(ConstraintCase::Case2),
            Family::Elliptic => Some(ConstraintCase::Case3),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ConstraintCase::Case1 => "case1",
            ConstraintCase::Case2 => "case2",
            ConstraintCase::Case3 => "case3",
        }
    }
}

/// Max residual of a case's minor combinations over the label grid.
pub fn check_constraints(
    map: &SpatialMap,
    case: ConstraintCase,
    grid: &GridSpec,
) -> Result<ResidualReport, VerifyError> {
    grid.validate()?;
    if map.k() != 4 {
        return Err(VerifyError::Unsupported(format!(
            "constraint systems need k = 4, got {}",
            map.k()
        )));
    }
    let mut report = ResidualReport::new(format!("constraints_{}", case.name()));
    let combos: [(&str, MinorComboFn); 2] = match case {
        ConstraintCase::Case1 => [("g13", |e| e.g(0, 2)), ("g24", |e| e.g(1, 3))],
        ConstraintCase::Case2 => [
            ("g14", |e| e.g(0, 3)),
            ("g24+g13", |e| e.g(1, 3) + e.g(0, 2)),
        ],
        ConstraintCase::Case3 => [
            ("g24+g13", |e| e.g(1, 3) + e.g(0, 2)),
            ("g14-g23", |e| e.g(0, 3) - e.g(1, 2)),
        ],
    };
    let mut trackers = [MaxTracker::default(), MaxTracker::default()];
    for z in grid.z_points() {
        let e = map.eval(z.x, z.y)?;
        for (tracker, (_, f)) in trackers.iter_mut().zip(combos.iter()) {
            tracker.update(f(&e), z.x, z.y, 0.0);
        }
    }
    for (tracker, (name, _)) in trackers.iter().zip(combos.iter()) {
        report.push(tracker.entry(*name, 1e-10));
    }
    Ok(report)
}

#[derive(Debug, Clone, Copy)]
enum MinorCombo {
    P(usize, usize),
    Q(usize, usize),
    PDiff((usize, usize), (usize, usize)),
    PSum((usize, usize), (usize, usize)),
    QDiff((usize, usize), (usize, usize)),
    QSum((usize, usize), (usize, usize)),
}

impl MinorCombo {
    fn eval(self, f: &Frame) -> f64 {
        let m = f.minors();
        match self {
            MinorCombo::P(i, j) => m.p(i, j),
            MinorCombo::Q(i, j) => m.q_vel(i, j),
            MinorCombo::PDiff(a, b) => m.p(a.0, a.1) - m.p(b.0, b.1),
            MinorCombo::PSum(a, b) => m.p(a.0, a.1) + m.p(b.0, b.1),
            MinorCombo::QDiff(a, b) => m.q_vel(a.0, a.1) - m.q_vel(b.0, b.1),
            MinorCombo::QSum(a, b) => m.q_vel(a.0, a.1) + m.q_vel(b.0, b.1),
        }
    }

    fn name(self) -> String {
        fn pq(prefix: &str, (i, j): (usize, usize)) -> String {
            format!("{prefix}{}{}", i + 1, j + 1)
        }
        match self {
            MinorCombo::P(i, j) => pq("p", (i, j)),
            MinorCombo::Q(i, j) => pq("Q", (i, j)),
            MinorCombo::PDiff(a, b) => format!("{}-{}", pq("p", a), pq("p", b)),
            MinorCombo::PSum(a, b) => format!("{}+{}", pq("p", a), pq("p", b)),
            MinorCombo::QDiff(a, b) => format!("{}-{}", pq("Q", a), pq("Q", b)),
            MinorCombo::QSum(a, b) => format!("{}+{}", pq("Q", a), pq("Q", b)),
        }
    }
}

fn constancy_combos(family: Family) -> Option<Vec<(MinorCombo, f64)>> {
    use MinorCombo::*;
    let combos = match family {
        Family::K2 => vec![(P(0, 1), 1e-9), (Q(0, 1), 1e-9)],
        Family::K3 => vec![
            (P(0, 1), 1e-9),
            (P(0, 2), 1e-9),
            (Q(0, 1), 1e-9),
            (Q(0, 2), 1e-9),
        ],
        Family::Elliptic => vec![
            (P(0, 1), 1e-9),
            (P(2, 3), 1e-9),
            (PDiff((0, 2), (1, 3)), 1e-9),
            (PSum((0, 3), (1, 2)), 1e-9),
            (Q(0, 1), 1e-9),
            (Q(2, 3), 1e-9),
            (QDiff((0, 2), (1, 3)), 1e-9),
            (QSum((0, 3), (1, 2)), 1e-9),
        ],
        Family::Hyperbolic => vec![
            (P(0, 1), 1e-12),
            (P(2, 3), 1e-12),
            (P(1, 2), 1e-12),
            (P(0, 3), 1e-12),
            (Q(0, 1), 1e-9),
            (Q(2, 3), 1e-9),
            (Q(1, 2), 1e-9),
            (Q(0, 3), 1e-9),
        ],
        Family::Parabolic => vec![
            (P(0, 1), 1e-9),
            (P(2, 3), 1e-9),
            (PDiff((0, 2), (1, 3)), 1e-9),
            (P(1, 2), 1e-9),
            (Q(0, 1), 1e-9),
            (Q(2, 3), 1e-9),
            (QDiff((0, 2), (1, 3)), 1e-9),
            (Q(1, 2), 1e-9),
        ],
        Family::Custom => return None,
    };
    Some(combos)
}

/// The family's required constant combinations of p_ij and Q_ij must not
/// deviate from their value at t₀.
pub fn check_minor_constancy(
    sol: &Solution,
    grid: &GridSpec,
) -> Result<ResidualReport, VerifyError> {
    grid.validate()?;
    let combos = constancy_combos(sol.family).ok_or_else(|| {
        VerifyError::Unsupported("minor constancy combinations unknown for custom solutions".into())
    })?;
    let ts = grid.t_points();
    let frame0 = sol.frame(ts[0])?;
    let base: Vec<f64> = combos.iter().map(|(c, _)| c.eval(&frame0)).collect();
    let mut trackers = vec![MaxTracker::default(); combos.len()];
    for &t in &ts {
        let frame = sol.frame(t)?;
        for ((tracker, (combo, _)), b) in trackers.iter_mut().zip(&combos).zip(&base) {
            tracker.update(combo.eval(&frame) - b, 0.0, 0.0, t);
        }
    }
    let mut report = ResidualReport::new("minor_constancy");
    for (tracker, (combo, tol)) in trackers.iter().zip(&combos) {
        report.push(tracker.entry(combo.name(), *tol));
    }
    Ok(report)
}

/// Numerical det(dφ) and ζ against the stored closed forms at t₀.
pub fn check_closed_forms(sol: &Solution, grid: &GridSpec) -> Result<ResidualReport, VerifyError> {
    grid.validate()?;
    if sol.det_closed.is_none() && sol.zeta_closed.is_none() {
        return Err(VerifyError::Unsupported(
            "solution carries no closed-form predictors".into(),
        ));
    }
    let t0 = grid.t.0;
    let frame = sol.frame(t0)?;
    let mut det_err = MaxTracker::default();
    let mut zeta_err = MaxTracker::default();
    let mut excluded = 0usize;
    let zs = grid.z_points();
    for z in &zs {
        let sp = sol.map.eval(z.x, z.y)?;
        let det = frame.det(&sp);
        if let Some(expected) = sol.det_closed_at(*z)? {
            det_err.update(det - expected, z.x, z.y, t0);
        }
        if let Some(expected) = sol.zeta_closed_at(*z)? {
            if det.abs() > DET_FLOOR {
                let zeta = frame.h(&sp) / det;
                zeta_err.update(zeta - expected, z.x, z.y, t0);
            } else {
                excluded += 1;
            }
        }
    }
    let mut report = ResidualReport::new("closed_forms");
    if sol.det_closed.is_some() {
        report.push(det_err.entry("det_closed", 1e-9));
    }
    if sol.zeta_closed.is_some() {
        report.push(zeta_err.entry("zeta_closed", 1e-8));
    }
    report.excluded_fraction = excluded as f64 / zs.len().max(1) as f64;
    Ok(report)
}

/// Cauchy–Binet and (for k = 4) Pluecker identities over the grid, plus
/// rank floors for A and dv and the invert∘φ = id round trip.
pub fn check_identities(sol: &Solution, grid: &GridSpec) -> Result<ResidualReport, VerifyError> {
    grid.validate()?;
    let zs = grid.z_points();
    let ts = grid.t_points();
    let sps = eval_grid(sol, &zs)?;

    let mut cauchy_binet = MaxTracker::default();
    let mut pluecker = MaxTracker::default();
    let mut roundtrip = MaxTracker::default();
    let mut rank_a: f64 = f64::INFINITY;
    let mut rank_dv: f64 = f64::INFINITY;
    let mut excluded = 0usize;
    let mut total = 0usize;

    for sp in &sps {
        rank_dv = rank_dv.min(sp.max_abs_g());
    }

    for &t in &ts {
        let frame = sol.frame(t)?;
        rank_a = rank_a.min(frame.minors().max_abs_p());
        if sol.k() == 4 {
            pluecker.update(frame.pluecker_residual()?, 0.0, 0.0, t);
        }
        for (i, sp) in sps.iter().enumerate() {
            let z = zs[i];
            cauchy_binet.update(frame.cauchy_binet_residual(sp), z.x, z.y, t);
            total += 1;
            let det = frame.det(sp);
            if det.abs() <= DET_FLOOR {
                excluded += 1;
                continue;
            }
            let x = frame.phi(sp);
            // Newton's basin around a label shrinks with |det|: close to
            // a fold the preimage is not unique and a fixed offset start
            // would land in the neighboring basin, so the start offset
            // scales with the local determinant.
            let offset = 0.005 * det.abs().min(1.0);
            let start = Vec2::new(z.x + offset, z.y + offset);
            match frame.invert(&sol.map, x, start) {
                Ok(back) => roundtrip.update((back - z).norm_inf(), z.x, z.y, t),
                Err(_) => excluded += 1,
            }
        }
    }

    let mut report = ResidualReport::new("identities");
    report.push(cauchy_binet.entry("cauchy_binet", 1e-10));
    if sol.k() == 4 {
        report.push(pluecker.entry("pluecker", 1e-12));
    }
    report.push(roundtrip.entry("invert_roundtrip", 1e-10));
    let mut deficit_a = MaxTracker::default();
    deficit_a.update((1e-12 - rank_a).max(0.0), 0.0, 0.0, 0.0);
    report.push(deficit_a.entry("rank_a_deficit", 0.0));
    let mut deficit_dv = MaxTracker::default();
    deficit_dv.update((1e-12 - rank_dv).max(0.0), 0.0, 0.0, 0.0);
    report.push(deficit_dv.entry("rank_dv_deficit", 0.0));
    report.excluded_fraction = excluded as f64 / total.max(1) as f64;
    Ok(report)
}

/// ζ̃ − ζ − 2θ₀ for the rotation decorator, pointwise over the grid.
pub fn check_rotation_shift(
    sol: &Solution,
    theta0: f64,
    grid: &GridSpec,
) -> Result<ResidualReport, VerifyError> {
    grid.validate()?;
    let rotated = sol.clone().with_rotation(theta0);
    let t0 = grid.t.0;
    let frame = sol.frame(t0)?;
    let frame_rot = rotated.frame(t0)?;
    let mut shift = MaxTracker::default();
    let mut excluded = 0usize;
    let zs = grid.z_points();
    for z in &zs {
        let sp = sol.map.eval(z.x, z.y)?;
        let det = frame.det(&sp);
        if det.abs() <= DET_FLOOR {
            excluded += 1;
            continue;
        }
        let base = frame.h(&sp) / det;
        let det_rot = frame_rot.det(&sp);
        let tilted = frame_rot.h(&sp) / det_rot;
        shift.update(tilted - base - 2.0 * theta0, z.x, z.y, t0);
    }
    let mut report = ResidualReport::new("rotation_shift");
    report.push(shift.entry("zeta_shift", 1e-10));
    report.excluded_fraction = excluded as f64 / zs.len().max(1) as f64;
    Ok(report)
}

/// Residuals of the anti Cauchy–Riemann system over the grid.
pub fn check_anticr(f: &AntiCrMap, grid: &GridSpec) -> Result<ResidualReport, VerifyError> {
    grid.validate()?;
    let f1_z1 = f.f1.differentiate(crate::expr::Var::Z1);
    let f1_z2 = f.f1.differentiate(crate::expr::Var::Z2);
    let f2_z1 = f.f2.differentiate(crate::expr::Var::Z1);
    let f2_z2 = f.f2.differentiate(crate::expr::Var::Z2);
    let mut sum_eq = MaxTracker::default();
    let mut diff_eq = MaxTracker::default();
    for z in grid.z_points() {
        let env = Env::space(z.x, z.y);
        sum_eq.update(f1_z1.eval(&env)? + f2_z2.eval(&env)?, z.x, z.y, 0.0);
        diff_eq.update(f1_z2.eval(&env)? - f2_z1.eval(&env)?, z.x, z.y, 0.0);
    }
    let mut report = ResidualReport::new("anticr");
    report.push(sum_eq.entry("f1_z1+f2_z2", 1e-9));
    report.push(diff_eq.entry("f1_z2-f2_z1", 1e-9));
    Ok(report)
}

/// Which vorticity PDE applies.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PdeFamily {
    /// ζ(2μ+ζ)Δζ − 2(μ+ζ)|∇ζ|² = 0.
    ///
    /// Solved by ζ = −μ(1 + tanh(d₀+d₁z1+d₂z2)); an elliptic family
    /// member with rotation rate m satisfies it with μ = −m.
    Elliptic { mu: f64 },
    /// (ζ²+4c²)ζ₁₁ − 2ζζ₁₀ζ₀₁ = 0, solved by
    /// ζ = 2c·tan(d₀+d₁z1+d₂z2).
    Hyperbolic { c: f64 },
    /// 1/ζ affine in z2, equivalently ζζ₀₂ − 2ζ₀₁² = 0.
    Parabolic,
}

/// Check a closed-form vorticity against its family's PDE by central
/// finite differences with step `fd_step`, normalized by (1 + |ζ|³).
///
/// The z-sampling comes from `grid` (interior points only); its time
/// range is ignored.
pub fn check_vorticity_pde(
    kind: PdeFamily,
    zeta: &Expr,
    grid: &GridSpec,
    fd_step: f64,
) -> Result<ResidualReport, VerifyError> {
    grid.validate()?;
    // negated so that a NaN step also fails
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    if !(fd_step > 0.0) {
        return Err(VerifyError::Grid("fd_step must be positive".into()));
    }
    let h = fd_step;
    let zf = |z1: f64, z2: f64| -> Option<f64> { zeta.eval(&Env::space(z1, z2)).ok() };

    let mut pde = MaxTracker::default();
    let mut affine = MaxTracker::default();
    let mut excluded = 0usize;
    let mut total = 0usize;

    for z in grid.z_points() {
        // interior only: the stencil must stay inside the window
        if z.x - h < grid.z1.0 || z.x + h > grid.z1.1 || z.y - h < grid.z2.0 || z.y + h > grid.z2.1
        {
            continue;
        }
        total += 1;
        let center = zf(z.x, z.y);
        let east = zf(z.x + h, z.y);
        let west = zf(z.x - h, z.y);
        let north = zf(z.x, z.y + h);
        let south = zf(z.x, z.y - h);
        let (c, e, w, n, s) = match (center, east, west, north, south) {
            (Some(c), Some(e), Some(w), Some(n), Some(s)) => (c, e, w, n, s),
            _ => {
                excluded += 1;
                continue;
            }
        };
        let z10 = (e - w) / (2.0 * h);
        let z01 = (n - s) / (2.0 * h);
        let norm = 1.0 + c.abs().powi(3);
        match kind {
            PdeFamily::Elliptic { mu } => {
                let lap = (e + w + n - 4.0 * c + s) / (h * h);
                let r = c * (2.0 * mu + c) * lap - 2.0 * (mu + c) * (z10 * z10 + z01 * z01);
                pde.update(r / norm, z.x, z.y, 0.0);
            }
            PdeFamily::Hyperbolic { c: cc } => {
                let corners = (
                    zf(z.x + h, z.y + h),
                    zf(z.x - h, z.y + h),
                    zf(z.x + h, z.y - h),
                    zf(z.x - h, z.y - h),
                );
                let (ne, nw, se, sw) = match corners {
                    (Some(a), Some(b), Some(cv), Some(d)) => (a, b, cv, d),
                    _ => {
                        excluded += 1;
                        continue;
                    }
                };
                let z11 = (ne - nw - se + sw) / (4.0 * h * h);
                let r = (c * c + 4.0 * cc * cc) * z11 - 2.0 * c * z10 * z01;
                pde.update(r / norm, z.x, z.y, 0.0);
            }
            PdeFamily::Parabolic => {
                if c == 0.0 || n == 0.0 || s == 0.0 {
                    excluded += 1;
                    continue;
                }
                // 1/ζ affine in z2: the raw second difference vanishes.
                affine.update(1.0 / n - 2.0 / c + 1.0 / s, z.x, z.y, 0.0);
                let z02 = (n - 2.0 * c + s) / (h * h);
                pde.update((c * z02 - 2.0 * z01 * z01) / norm, z.x, z.y, 0.0);
            }
        }
    }

    let mut report = ResidualReport::new("vorticity_pde");
    if matches!(kind, PdeFamily::Parabolic) {
        report.push(affine.entry("inv_zeta_z2_affine", 1e-8));
    }
    report.push(pde.entry("pde_residual", 1e-5));
    report.excluded_fraction = excluded as f64 / total.max(1) as f64;
    Ok(report)
}

/// Run the family PDE on a solution's own closed-form vorticity.
pub fn check_solution_vorticity_pde(
    sol: &Solution,
    grid: &GridSpec,
    fd_step: f64,
) -> Result<ResidualReport, VerifyError> {
    let zeta = sol.zeta_closed.as_ref().ok_or_else(|| {
        VerifyError::Unsupported("solution carries no closed-form vorticity".into())
    })?;
    let kind = match sol.family {
        // ζ = −2m|∇f¹|²/(1−|∇f¹|²) matches the PDE parameterization
        // with μ = −m
        Family::Elliptic => PdeFamily::Elliptic {
            mu: -sol.pde_param.unwrap_or(0.0),
        },
        Family::Hyperbolic => PdeFamily::Hyperbolic {
            c: sol.pde_param.unwrap_or(0.0),
        },
        Family::Parabolic => PdeFamily::Parabolic,
        other => {
            return Err(VerifyError::Unsupported(format!(
                "no vorticity PDE for family {}",
                other.name()
            )))
        }
    };
    check_vorticity_pde(kind, zeta, grid, fd_step)
}

/// Regular grid in Eulerian coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EulerGrid {
    pub x1: (f64, f64),
    pub x2: (f64, f64),
    pub n1: usize,
    pub n2: usize,
    /// Starting label guess for the first inversion of a sweep.
    pub guess: (f64, f64),
}

impl EulerGrid {
    pub fn x_points(&self) -> Vec<Vec2> {
        let xs = linspace(self.x1.0, self.x1.1, self.n1);
        let ys = linspace(self.x2.0, self.x2.1, self.n2);
        let mut out = Vec::with_capacity(self.n1 * self.n2);
        for &y in &ys {
            for &x in &xs {
                out.push(Vec2::new(x, y));
            }
        }
        out
    }
}

struct EulerCtx<'a> {
    map: &'a SpatialMap,
    frame: Frame,
    frame_plus: Frame,
    frame_minus: Frame,
    fd_t: f64,
}

impl EulerCtx<'_> {
    fn u(&self, frame: &Frame, x: Vec2, guess: Vec2) -> Option<(Vec2, Vec2)> {
        let z = frame.invert(self.map, x, guess).ok()?;
        let sp = self.map.eval(z.x, z.y).ok()?;
        Some((frame.velocity(&sp), z))
    }

    /// u_t + (u·∇)u at x using central differences with step `h`.
    fn momentum(&self, x: Vec2, guess: Vec2, h: f64) -> Option<Vec2> {
        let (u0, z) = self.u(&self.frame, x, guess)?;
        let (up, _) = self.u(&self.frame_plus, x, z)?;
        let (um, _) = self.u(&self.frame_minus, x, z)?;
        let ut = (up - um) * (1.0 / (2.0 * self.fd_t));
        let (ue, _) = self.u(&self.frame, Vec2::new(x.x + h, x.y), z)?;
        let (uw, _) = self.u(&self.frame, Vec2::new(x.x - h, x.y), z)?;
        let (un, _) = self.u(&self.frame, Vec2::new(x.x, x.y + h), z)?;
        let (us, _) = self.u(&self.frame, Vec2::new(x.x, x.y - h), z)?;
        let du_dx = (ue - uw) * (1.0 / (2.0 * h));
        let du_dy = (un - us) * (1.0 / (2.0 * h));
        let advect = du_dx * u0.x + du_dy * u0.y;
        Some(ut + advect)
    }

    fn zeta_hat(&self, frame: &Frame, x: Vec2, guess: Vec2) -> Option<f64> {
        let z = frame.invert(self.map, x, guess).ok()?;
        let sp = self.map.eval(z.x, z.y).ok()?;
        frame.vorticity(&sp, z).ok()
    }
}

/// Eulerian-frame residuals: ∇·u, curl(u_t + u·∇u) (pressure eliminated
/// through the curl) and the vorticity transport ζ̂_t + ⟨u, ∇ζ̂⟩.
pub fn check_euler_eulerian(
    sol: &Solution,
    grid: &EulerGrid,
    t: f64,
    fd_x: f64,
    fd_t: f64,
) -> Result<ResidualReport, VerifyError> {
    if grid.n1 < 2 || grid.n2 < 2 {
        return Err(VerifyError::Grid(
            "Euler grid needs at least 2x2 points".into(),
        ));
    }
    let ctx = EulerCtx {
        map: &sol.map,
        frame: sol.frame(t)?,
        frame_plus: sol.frame(t + fd_t)?,
        frame_minus: sol.frame(t - fd_t)?,
        fd_t,
    };
    let h = fd_x;

    let mut div_u = MaxTracker::default();
    let mut curl_momentum = MaxTracker::default();
    let mut transport = MaxTracker::default();
    let mut excluded = 0usize;
    let mut guess = Vec2::new(grid.guess.0, grid.guess.1);

    let xs = grid.x_points();
    for &x in &xs {
        let Some((u0, z)) = ctx.u(&ctx.frame, x, guess) else {
            excluded += 1;
            continue;
        };
        guess = z;

        let point = (|| -> Option<(f64, f64, f64)> {
            // divergence
            let (ue, _) = ctx.u(&ctx.frame, Vec2::new(x.x + h, x.y), z)?;
            let (uw, _) = ctx.u(&ctx.frame, Vec2::new(x.x - h, x.y), z)?;
            let (un, _) = ctx.u(&ctx.frame, Vec2::new(x.x, x.y + h), z)?;
            let (us, _) = ctx.u(&ctx.frame, Vec2::new(x.x, x.y - h), z)?;
            let div = (ue.x - uw.x) / (2.0 * h) + (un.y - us.y) / (2.0 * h);

            // curl of the momentum residual
            let me = ctx.momentum(Vec2::new(x.x + h, x.y), z, h)?;
            let mw = ctx.momentum(Vec2::new(x.x - h, x.y), z, h)?;
            let mn = ctx.momentum(Vec2::new(x.x, x.y + h), z, h)?;
            let ms = ctx.momentum(Vec2::new(x.x, x.y - h), z, h)?;
            let curl = (me.y - mw.y) / (2.0 * h) - (mn.x - ms.x) / (2.0 * h);

            // vorticity transport
            let zp = ctx.zeta_hat(&ctx.frame_plus, x, z)?;
            let zm = ctx.zeta_hat(&ctx.frame_minus, x, z)?;
            let ze = ctx.zeta_hat(&ctx.frame, Vec2::new(x.x + h, x.y), z)?;
            let zw = ctx.zeta_hat(&ctx.frame, Vec2::new(x.x - h, x.y), z)?;
            let zn = ctx.zeta_hat(&ctx.frame, Vec2::new(x.x, x.y + h), z)?;
            let zs = ctx.zeta_hat(&ctx.frame, Vec2::new(x.x, x.y - h), z)?;
            let zt = (zp - zm) / (2.0 * ctx.fd_t);
            let adv = u0.x * (ze - zw) / (2.0 * h) + u0.y * (zn - zs) / (2.0 * h);
            Some((div, curl, zt + adv))
        })();

        match point {
            Some((div, curl, trans)) => {
                div_u.update(div, x.x, x.y, t);
                curl_momentum.update(curl, x.x, x.y, t);
                transport.update(trans, x.x, x.y, t);
            }
            None => excluded += 1,
        }
    }

    let mut report = ResidualReport::new("euler_eulerian");
    report.push(div_u.entry("div_u", 1e-4));
    report.push(curl_momentum.entry("curl_momentum", 1e-4));
    report.push(transport.entry("vorticity_transport", 1e-4));
    report.excluded_fraction = excluded as f64 / xs.len().max(1) as f64;
    Ok(report)
}
