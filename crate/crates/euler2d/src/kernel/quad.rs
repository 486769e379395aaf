//! Adaptive Simpson quadrature for the gauge functions a(t).

use super::KernelError;

const MAX_DEPTH: usize = 40;
const ABS_TOL: f64 = 1e-12;
const REL_TOL: f64 = 1e-10;

fn simpson(fa: f64, fm: f64, fb: f64, h: f64) -> f64 {
    h / 6.0 * (fa + 4.0 * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn recurse<F, E>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: usize,
) -> Result<f64, KernelError>
where
    F: Fn(f64) -> Result<f64, E>,
    KernelError: From<E>,
{
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm)?;
    let frm = f(rm)?;
    let left = simpson(fa, flm, fm, m - a);
    let right = simpson(fm, frm, fb, b - m);
    let delta = left + right - whole;
    if delta.abs() <= 15.0 * tol {
        return Ok(left + right + delta / 15.0);
    }
    if depth >= MAX_DEPTH {
        return Err(KernelError::QuadratureDepth {
            max_depth: MAX_DEPTH,
        });
    }
    let half_tol = 0.5 * tol;
    let l = recurse(f, a, m, fa, flm, fm, left, half_tol, depth + 1)?;
    let r = recurse(f, m, b, fm, frm, fb, right, half_tol, depth + 1)?;
    Ok(l + r)
}

/// ∫ₐᵇ f, adaptive Simpson with absolute tolerance 1e-12 and relative
/// tolerance 1e-10. Integrating backwards negates the result.
pub fn adaptive_simpson<F, E>(f: F, a: f64, b: f64) -> Result<f64, KernelError>
where
    F: Fn(f64) -> Result<f64, E>,
    KernelError: From<E>,
{
    if a == b {
        return Ok(0.0);
    }
    let (lo, hi, sign) = if a < b { (a, b, 1.0) } else { (b, a, -1.0) };
    let fa = f(lo)?;
    let m = 0.5 * (lo + hi);
    let fm = f(m)?;
    let fb = f(hi)?;
    let whole = simpson(fa, fm, fb, hi - lo);
    let tol = ABS_TOL.max(REL_TOL * whole.abs());
    let v = recurse(&f, lo, hi, fa, fm, fb, whole, tol, 0)?;
    Ok(sign * v)
}
