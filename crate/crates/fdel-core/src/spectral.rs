//! Fourier frequencies, the discrete Fourier transform and the periodogram.
//!
//! All downstream likelihood machinery consumes periodogram ordinates at
//! the Fourier frequencies `lambda_j = 2 pi j / n` for `j = 1..N`,
//! `N = floor((n-1)/2)`. Frequencies `j = 0` and `j = n/2` (even `n`) are
//! excluded everywhere: the likelihood sums run over `j = 1..N` only, which
//! also makes the transform invariant to adding a constant to the series.

use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;
use num_complex::Complex64;
#[allow(unused_imports)] // f64 math via trait when building no_std
use num_traits::Float;

use crate::numerics::fft;

#[derive(Debug, Clone, PartialEq)]
pub enum SpectralError {
    /// Fewer than 4 observations (no interior Fourier frequency exists).
    TooShort { n: usize },
    /// A non-finite observation at the given 0-based index.
    NonFinite { index: usize },
    /// Ordinate vector does not match `floor((n-1)/2)` or has a negative entry.
    BadOrdinates,
}

impl fmt::Display for SpectralError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpectralError::TooShort { n } => {
                write!(f, "time series has {n} observations; at least 4 required")
            }
            SpectralError::NonFinite { index } => {
                write!(f, "non-finite observation at index {index}")
            }
            SpectralError::BadOrdinates => write!(f, "invalid periodogram ordinates"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for SpectralError {}

/// Raw real-valued observations `x_1..x_n`, `n >= 4`, all finite.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries {
    values: Vec<f64>,
}

impl TimeSeries {
    pub fn new(values: Vec<f64>) -> Result<Self, SpectralError> {
        if values.len() < 4 {
            return Err(SpectralError::TooShort { n: values.len() });
        }
        if let Some(index) = values.iter().position(|v| !v.is_finite()) {
            return Err(SpectralError::NonFinite { index });
        }
        Ok(Self { values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false // construction requires n >= 4
    }

    pub fn mean(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.values.len() as f64
    }
}

/// Periodogram ordinates `I_n(lambda_j)` at the interior Fourier
/// frequencies, `j = 1..N`, `N = floor((n-1)/2)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Periodogram {
    n: usize,
    frequencies: Vec<f64>,
    ordinates: Vec<f64>,
}

impl Periodogram {
    /// Assemble a periodogram from precomputed ordinates (used by tests and
    /// by fixed-point constructions where `I_n` is set to a model density).
    pub fn from_ordinates(n: usize, ordinates: Vec<f64>) -> Result<Self, SpectralError> {
        let frequencies = fourier_frequencies(n)?;
        if ordinates.len() != frequencies.len()
            || ordinates.iter().any(|&v| !v.is_finite() || v < 0.0)
        {
            return Err(SpectralError::BadOrdinates);
        }
        Ok(Self {
            n,
            frequencies,
            ordinates,
        })
    }

    /// Sample size of the originating series.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of ordinates `N = floor((n-1)/2)`.
    pub fn len(&self) -> usize {
        self.ordinates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ordinates.is_empty()
    }

    pub fn ordinates(&self) -> &[f64] {
        &self.ordinates
    }

    pub fn frequencies(&self) -> &[f64] {
        &self.frequencies
    }
}

/// Fourier frequencies `2 pi j / n` for `j = 1..floor((n-1)/2)`.
pub fn fourier_frequencies(n: usize) -> Result<Vec<f64>, SpectralError> {
    if n < 4 {
        return Err(SpectralError::TooShort { n });
    }
    let count = (n - 1) / 2;
    Ok((1..=count).map(|j| 2.0 * PI * j as f64 / n as f64).collect())
}

/// Finite Fourier transform `sum_{t=1}^n x_t e^{-i t lambda}` (note the
/// summation index starts at 1). Intended for `lambda` in `(0, pi]`;
/// defined for any finite `lambda`.
pub fn dft(x: &[f64], lambda: f64) -> Complex64 {
    // Horner-style recurrence on e^{-i lambda} avoids n trig calls.
    let w = Complex64::new(lambda.cos(), -lambda.sin());
    let mut phase = w;
    let mut acc = Complex64::new(0.0, 0.0);
    for &xt in x {
        acc += phase * xt;
        phase *= w;
    }
    acc
}

/// Periodogram `I_n(lambda_j) = (2 pi n)^{-1} |sum_t x_t e^{-i t lambda_j}|^2`
/// at the interior Fourier frequencies.
///
/// The series is not mean-corrected first: at `lambda_j != 0` the transform
/// of a constant vanishes, so the ordinates already equal those of the
/// mean-corrected series.
pub fn periodogram(x: &TimeSeries) -> Periodogram {
    let n = x.len();
    let count = (n - 1) / 2;
    let frequencies = fourier_frequencies(n).expect("TimeSeries guarantees n >= 4");

    let buf: Vec<Complex64> = x
        .values()
        .iter()
        .map(|&v| Complex64::new(v, 0.0))
        .collect();
    let spectrum = fft::dft_forward(&buf);

    let scale = 1.0 / (2.0 * PI * n as f64);
    let ordinates: Vec<f64> = (1..=count)
        .map(|j| {
            let v = spectrum[j].norm_sqr() * scale;
            // |.|^2 is nonnegative; clamp defends against degenerate inputs.
            if v > 0.0 {
                v
            } else {
                0.0
            }
        })
        .collect();

    Periodogram {
        n,
        frequencies,
        ordinates,
    }
}
