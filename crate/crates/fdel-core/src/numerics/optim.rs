//! Derivative-free minimizers for the outer EL profile: golden-section in
//! one dimension, bound-clipped Nelder-Mead above. Objectives may return
//! `+inf` (hull-infeasible parameter values), so comparisons carry a
//! secondary distance key used to break ties among infeasible points.

use alloc::vec;
use alloc::vec::Vec;
#[allow(unused_imports)] // f64 math via trait when building no_std
use num_traits::Float;

/// `(value, tiebreak)` ordering: smaller value wins, then smaller tiebreak.
#[inline]
fn better(fa: f64, da: f64, fb: f64, db: f64) -> bool {
    if fa != fb {
        // NaN never wins.
        return fa < fb || fb.is_nan();
    }
    da < db
}

/// Golden-section minimization on `[lo, hi]`. Returns `(x, f(x), evals)`.
pub fn golden_section<F: FnMut(f64) -> f64>(
    mut f: F,
    lo: f64,
    hi: f64,
    tol: f64,
    max_iter: usize,
) -> (f64, f64, usize) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let (mut a, mut b) = (lo, hi);
    let mut evals = 0usize;
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    evals += 2;
    for _ in 0..max_iter {
        if (b - a).abs() <= tol {
            break;
        }
        if better(fc, 0.0, fd, 0.0) {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
        evals += 1;
    }
    if better(fc, 0.0, fd, 0.0) {
        (c, fc, evals)
    } else {
        (d, fd, evals)
    }
}

pub struct NmResult {
    pub x: Vec<f64>,
    pub fx: f64,
    pub evals: usize,
    pub converged: bool,
}

fn clip(x: &mut [f64], bounds: &[(f64, f64)]) {
    for (xi, &(lo, hi)) in x.iter_mut().zip(bounds.iter()) {
        if *xi < lo {
            *xi = lo;
        }
        if *xi > hi {
            *xi = hi;
        }
    }
}

fn dist2(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y) * (x - y))
        .sum()
}

/// Nelder-Mead with candidates clipped into `bounds` before evaluation.
/// Converges when the simplex diameter drops below `tol * (1 + ||best||)`.
pub fn nelder_mead<F: FnMut(&[f64]) -> f64>(
    mut f: F,
    x0: &[f64],
    bounds: &[(f64, f64)],
    init_scale: f64,
    tol: f64,
    max_iter: usize,
) -> NmResult {
    let p = x0.len();
    debug_assert!(p >= 1);
    let anchor = x0.to_vec();
    let mut evals = 0usize;

    let mut eval = |x: &mut Vec<f64>| -> f64 {
        clip(x, bounds);
        x.iter().for_each(|v| debug_assert!(v.is_finite()));
        f(x)
    };

    // Initial simplex: x0 plus one vertex per coordinate.
    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(p + 1);
    let mut base = x0.to_vec();
    let f0 = eval(&mut base);
    evals += 1;
    simplex.push((base, f0));
    for i in 0..p {
        let mut v = x0.to_vec();
        let step = init_scale * (1.0 + v[i].abs());
        let (lo, hi) = bounds[i];
        v[i] = if v[i] + step <= hi { v[i] + step } else { (v[i] - step).max(lo) };
        let fv = eval(&mut v);
        evals += 1;
        simplex.push((v, fv));
    }

    let sort = |s: &mut Vec<(Vec<f64>, f64)>| {
        let anchor = anchor.clone();
        s.sort_by(|a, b| {
            let da = dist2(&a.0, &anchor);
            let db = dist2(&b.0, &anchor);
            if better(a.1, da, b.1, db) {
                core::cmp::Ordering::Less
            } else if better(b.1, db, a.1, da) {
                core::cmp::Ordering::Greater
            } else {
                core::cmp::Ordering::Equal
            }
        });
    };

    let diameter = |s: &[(Vec<f64>, f64)]| -> f64 {
        let best = &s[0].0;
        s.iter()
            .skip(1)
            .map(|(v, _)| dist2(v, best))
            .fold(0.0f64, f64::max)
            .sqrt()
    };

    let mut converged = false;
    for _ in 0..max_iter {
        sort(&mut simplex);
        let best_norm: f64 = simplex[0].0.iter().map(|v| v * v).sum::<f64>().sqrt();
        if diameter(&simplex) <= tol * (1.0 + best_norm) {
            converged = true;
            break;
        }

        // Centroid of all but the worst vertex.
        let mut centroid = vec![0.0f64; p];
        for (v, _) in simplex.iter().take(p) {
            for (c, x) in centroid.iter_mut().zip(v.iter()) {
                *c += x;
            }
        }
        centroid.iter_mut().for_each(|c| *c /= p as f64);

        let worst = simplex[p].clone();
        let combine = |alpha: f64| -> Vec<f64> {
            centroid
                .iter()
                .zip(worst.0.iter())
                .map(|(c, w)| c + alpha * (c - w))
                .collect()
        };

        let mut refl = combine(1.0);
        let frefl = eval(&mut refl);
        evals += 1;

        let fbest = simplex[0].1;
        let fsecond_worst = simplex[p - 1].1;

        if better(frefl, dist2(&refl, &anchor), fbest, dist2(&simplex[0].0, &anchor)) {
            // Try expanding.
            let mut exp = combine(2.0);
            let fexp = eval(&mut exp);
            evals += 1;
            simplex[p] = if better(fexp, dist2(&exp, &anchor), frefl, dist2(&refl, &anchor)) {
                (exp, fexp)
            } else {
                (refl, frefl)
            };
            continue;
        }
        if better(frefl, dist2(&refl, &anchor), fsecond_worst, dist2(&simplex[p - 1].0, &anchor)) {
            simplex[p] = (refl, frefl);
            continue;
        }

        // Contraction (outside if the reflection improved on the worst).
        let use_outside = better(frefl, dist2(&refl, &anchor), worst.1, dist2(&worst.0, &anchor));
        let mut contr = combine(if use_outside { 0.5 } else { -0.5 });
        let fcontr = eval(&mut contr);
        evals += 1;
        let contr_better_than_worst = if use_outside {
            better(fcontr, dist2(&contr, &anchor), frefl, dist2(&refl, &anchor))
        } else {
            better(fcontr, dist2(&contr, &anchor), worst.1, dist2(&worst.0, &anchor))
        };
        if contr_better_than_worst {
            simplex[p] = (contr, fcontr);
            continue;
        }

        // Shrink toward the best vertex.
        let best = simplex[0].0.clone();
        for (v, fv) in simplex.iter_mut().skip(1) {
            for (x, b) in v.iter_mut().zip(best.iter()) {
                *x = b + 0.5 * (*x - b);
            }
            *fv = eval(v);
            evals += 1;
        }
    }

    sort(&mut simplex);
    let (x, fx) = simplex.swap_remove(0);
    NmResult {
        x,
        fx,
        evals,
        converged,
    }
}

/// Bisection for a bracketed sign change of `g`; refines `x` to `tol`.
pub fn bisect<F: FnMut(f64) -> f64>(
    mut g: F,
    mut lo: f64,
    mut hi: f64,
    glo: f64,
    tol: f64,
) -> f64 {
    let mut sign_lo = glo.is_sign_negative();
    for _ in 0..200 {
        if (hi - lo).abs() <= tol {
            break;
        }
        let mid = 0.5 * (lo + hi);
        let gm = g(mid);
        if gm == 0.0 {
            return mid;
        }
        if gm.is_sign_negative() == sign_lo {
            lo = mid;
            sign_lo = gm.is_sign_negative();
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}
