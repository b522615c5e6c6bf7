//! Complex FFT: iterative radix-2 for power-of-two lengths, Bluestein's
//! chirp-z reduction for everything else.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
use num_complex::Complex64;
#[allow(unused_imports)] // f64 math via trait when building no_std
use num_traits::Float;

/// In-place radix-2 Cooley-Tukey transform. `buf.len()` must be a power of
/// two. Forward transform uses kernel `e^{-2pi i jk/n}`; the inverse kernel
/// is conjugated and leaves the result unscaled (caller divides by `n`).
pub fn fft_pow2(buf: &mut [Complex64], inverse: bool) {
    let n = buf.len();
    debug_assert!(n.is_power_of_two());
    if n <= 1 {
        return;
    }

    // Bit-reversal permutation.
    let mut j = 0usize;
    for i in 1..n {
        let mut bit = n >> 1;
        while j & bit != 0 {
            j ^= bit;
            bit >>= 1;
        }
        j |= bit;
        if i < j {
            buf.swap(i, j);
        }
    }

    let sign = if inverse { 1.0 } else { -1.0 };
    let mut len = 2usize;
    while len <= n {
        let ang = sign * 2.0 * PI / len as f64;
        let wlen = Complex64::new(ang.cos(), ang.sin());
        let mut i = 0usize;
        while i < n {
            let mut w = Complex64::new(1.0, 0.0);
            for k in 0..len / 2 {
                let u = buf[i + k];
                let v = buf[i + k + len / 2] * w;
                buf[i + k] = u + v;
                buf[i + k + len / 2] = u - v;
                w *= wlen;
            }
            i += len;
        }
        len <<= 1;
    }
}

/// Forward DFT of arbitrary length: `X_k = sum_j x_j e^{-2pi i jk/n}`.
pub fn dft_forward(x: &[Complex64]) -> Vec<Complex64> {
    let n = x.len();
    if n == 0 {
        return Vec::new();
    }
    if n.is_power_of_two() {
        let mut buf = x.to_vec();
        fft_pow2(&mut buf, false);
        return buf;
    }
    bluestein(x)
}

/// Chirp-z: X_k = w_k * (a (*) b)_k with a_j = x_j w_j, b_j = conj(w_j),
/// w_j = e^{-pi i j^2 / n}, convolved at a power-of-two length >= 2n-1.
fn bluestein(x: &[Complex64]) -> Vec<Complex64> {
    let n = x.len();
    let m = (2 * n - 1).next_power_of_two();

    // j^2 mod 2n keeps the chirp phase accurate for large j.
    let two_n = 2 * n as u64;
    let chirp = |j: usize| -> Complex64 {
        let q = ((j as u64).wrapping_mul(j as u64)) % two_n;
        let ang = -PI * q as f64 / n as f64;
        Complex64::new(ang.cos(), ang.sin())
    };

    let mut a = vec![Complex64::new(0.0, 0.0); m];
    let mut b = vec![Complex64::new(0.0, 0.0); m];
    for j in 0..n {
        let w = chirp(j);
        a[j] = x[j] * w;
        b[j] = w.conj();
        if j > 0 {
            b[m - j] = w.conj();
        }
    }

    fft_pow2(&mut a, false);
    fft_pow2(&mut b, false);
    for (ai, bi) in a.iter_mut().zip(b.iter()) {
        *ai *= *bi;
    }
    fft_pow2(&mut a, true);

    let scale = 1.0 / m as f64;
    (0..n).map(|k| chirp(k) * a[k] * scale).collect()
}
