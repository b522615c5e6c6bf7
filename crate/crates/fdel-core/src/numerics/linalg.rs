//! Small dense symmetric solves for the EL dual Newton step.

use alloc::vec;
use alloc::vec::Vec;
#[allow(unused_imports)] // f64 math via trait when building no_std
use num_traits::Float;

/// LDL^T factorization outcome for a symmetric positive definite system.
pub struct SymSolve {
    /// Solution of `A x = b`.
    pub x: Vec<f64>,
    /// Crude condition estimate: max(d) / min(d) of the LDL^T pivots.
    pub condition: f64,
}

/// Solve `A x = b` for symmetric positive definite `A` (row-major r x r).
/// Returns `None` when a pivot is nonpositive or nonfinite.
pub fn solve_spd(a: &[f64], b: &[f64], r: usize) -> Option<SymSolve> {
    debug_assert_eq!(a.len(), r * r);
    debug_assert_eq!(b.len(), r);
    let mut l = vec![0.0f64; r * r];
    let mut d = vec![0.0f64; r];

    for j in 0..r {
        let mut dj = a[j * r + j];
        for k in 0..j {
            dj -= l[j * r + k] * l[j * r + k] * d[k];
        }
        if !(dj.is_finite() && dj > 0.0) {
            return None;
        }
        d[j] = dj;
        l[j * r + j] = 1.0;
        for i in (j + 1)..r {
            let mut v = a[i * r + j];
            for k in 0..j {
                v -= l[i * r + k] * l[j * r + k] * d[k];
            }
            l[i * r + j] = v / dj;
        }
    }

    // Forward substitution L y = b, scale by D, back substitution L^T x = y.
    let mut x = b.to_vec();
    for i in 0..r {
        for k in 0..i {
            let lik = l[i * r + k];
            x[i] -= lik * x[k];
        }
    }
    for i in 0..r {
        x[i] /= d[i];
    }
    for i in (0..r).rev() {
        for k in (i + 1)..r {
            let lki = l[k * r + i];
            x[i] -= lki * x[k];
        }
    }

    let dmax = d.iter().cloned().fold(f64::MIN, f64::max);
    let dmin = d.iter().cloned().fold(f64::MAX, f64::min);
    Some(SymSolve {
        x,
        condition: dmax / dmin,
    })
}
