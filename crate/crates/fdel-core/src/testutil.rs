//! Test-only oracles, independent of the implementation paths they check.

use crate::models::SpectralModel;
use core::f64::consts::PI;
#[allow(unused_imports)] // f64 math via trait when building no_std
use num_traits::Float;

/// Adaptive Simpson quadrature (Richardson-corrected), the brute-force
/// counterpart to the tanh-sinh rule used inside the crate.
pub(crate) fn adaptive_simpson(
    f: &impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    tol: f64,
    depth: usize,
) -> f64 {
    let m = 0.5 * (a + b);
    let (fa, fm, fb) = (f(a), f(m), f(b));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    simpson_step(f, a, b, fa, fm, fb, whole, tol, depth)
}

#[allow(clippy::too_many_arguments)]
fn simpson_step(
    f: &impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: usize,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let (flm, frm) = (f(lm), f(rm));
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        left + right + delta / 15.0
    } else {
        simpson_step(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1)
            + simpson_step(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
    }
}

/// `int_0^pi g(l) f(l) dl` by Simpson after `l = pi u^9`, which removes the
/// integrable `l^{-alpha}` singularity at zero for all admissible memory
/// exponents.
pub(crate) fn oracle_spectral_integral(
    model: &SpectralModel,
    g: impl Fn(f64) -> f64,
) -> f64 {
    let integrand = |u: f64| {
        let l = PI * u.powi(9);
        if l <= 0.0 {
            return 0.0;
        }
        let f = model.density(l).unwrap();
        g(l) * f * 9.0 * PI * u.powi(8)
    };
    adaptive_simpson(&integrand, 0.0, 1.0, 1e-11, 28)
}

/// `int_0^pi g(l) dl` with a possible singular factor handled the same way.
pub(crate) fn oracle_integral(g: impl Fn(f64) -> f64, lo: f64, hi: f64) -> f64 {
    adaptive_simpson(&g, lo, hi, 1e-11, 24)
}
