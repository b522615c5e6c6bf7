//! Exact stationary Gaussian path simulation by circulant embedding, plus
//! a finite moving-average simulator for non-Gaussian innovation
//! experiments.

use alloc::vec;
use alloc::vec::Vec;
use num_complex::Complex64;
#[allow(unused_imports)] // f64 math via trait when building no_std
use num_traits::Float;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::StandardNormal;

use super::{ModelError, SpectralModel};
use crate::numerics::fft;
use crate::spectral::TimeSeries;

/// Relative tolerance on negative circulant eigenvalues before a retry at
/// doubled embedding size.
const EIGEN_TOL: f64 = 1e-9;
const MAX_DOUBLINGS: usize = 3;

/// Prepared circulant embedding of a model's autocovariance. Building the
/// eigenvalue table costs an FFT; each [`CirculantSampler::sample`] call
/// then costs one more, so replicated experiments reuse one sampler.
pub struct CirculantSampler {
    n: usize,
    /// sqrt(eigenvalue / M) premultipliers, length M = 2m.
    scales: Vec<f64>,
}

impl CirculantSampler {
    /// Embed `model`'s autocovariance at a power-of-two half-size `m >= n`,
    /// doubling (up to three times) until the circulant eigenvalues are
    /// nonnegative within tolerance.
    pub fn new(model: &SpectralModel, n: usize) -> Result<Self, ModelError> {
        model.validate()?;
        if n < 4 {
            return Err(ModelError::InvalidParameter(alloc::format!(
                "sample size {n} below minimum 4"
            )));
        }
        let mut m = n.next_power_of_two().max(4);
        let mut attempts = 0usize;
        loop {
            let r = model.autocovariance(m)?;
            let big_m = 2 * m;
            let mut c = vec![Complex64::new(0.0, 0.0); big_m];
            for (k, ck) in c.iter_mut().enumerate() {
                let lag = if k <= m { k } else { big_m - k };
                *ck = Complex64::new(r[lag], 0.0);
            }
            fft::fft_pow2(&mut c, false);

            let max_eig = c.iter().map(|v| v.re).fold(0.0f64, f64::max);
            let min_eig = c.iter().map(|v| v.re).fold(f64::MAX, f64::min);
            if min_eig >= -EIGEN_TOL * max_eig {
                let scales = c
                    .iter()
                    .map(|v| (v.re.max(0.0) / big_m as f64).sqrt())
                    .collect();
                return Ok(Self { n, scales });
            }
            attempts += 1;
            if attempts > MAX_DOUBLINGS {
                return Err(ModelError::EmbeddingFailure { attempts });
            }
            m *= 2;
        }
    }

    /// Sample size this embedding serves.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Draw one stationary Gaussian path; deterministic in `seed`.
    pub fn sample(&self, seed: u64) -> TimeSeries {
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        let big_m = self.scales.len();
        let m = big_m / 2;
        let mut z = vec![Complex64::new(0.0, 0.0); big_m];

        let g0: f64 = rng.sample(StandardNormal);
        z[0] = Complex64::new(self.scales[0] * g0, 0.0);
        let gm: f64 = rng.sample(StandardNormal);
        z[m] = Complex64::new(self.scales[m] * gm, 0.0);
        let half = core::f64::consts::FRAC_1_SQRT_2;
        for k in 1..m {
            let u: f64 = rng.sample(StandardNormal);
            let v: f64 = rng.sample(StandardNormal);
            let zk = Complex64::new(u * half, v * half) * self.scales[k];
            z[k] = zk;
            z[big_m - k] = zk.conj();
        }

        fft::fft_pow2(&mut z, false);
        let values: Vec<f64> = z[..self.n].iter().map(|c| c.re).collect();
        TimeSeries::new(values).expect("embedding length >= 4 and draws are finite")
    }
}

/// One-shot convenience wrapper over [`CirculantSampler`].
pub fn simulate_gaussian(
    model: &SpectralModel,
    n: usize,
    seed: u64,
) -> Result<TimeSeries, ModelError> {
    Ok(CirculantSampler::new(model, n)?.sample(seed))
}

/// Innovation distribution for [`simulate_linear`]. Both are centered with
/// the given variance; the chi-square family has fourth-order cumulant
/// `12 variance^2`, giving a standardized excess kurtosis of 12.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Innovations {
    Gaussian { variance: f64 },
    CenteredChiSquare { variance: f64 },
}

impl Innovations {
    pub fn variance(&self) -> f64 {
        match self {
            Innovations::Gaussian { variance } | Innovations::CenteredChiSquare { variance } => {
                *variance
            }
        }
    }

    /// Fourth-order cumulant `kappa_4 = E eps^4 - 3 (E eps^2)^2`.
    pub fn kurtosis(&self) -> f64 {
        match self {
            Innovations::Gaussian { .. } => 0.0,
            Innovations::CenteredChiSquare { variance } => 12.0 * variance * variance,
        }
    }

    fn draw(&self, rng: &mut ChaCha20Rng) -> f64 {
        match self {
            Innovations::Gaussian { variance } => {
                let g: f64 = rng.sample(StandardNormal);
                g * variance.sqrt()
            }
            Innovations::CenteredChiSquare { variance } => {
                // (chi^2_1 - 1)/sqrt(2) has mean 0 and variance 1.
                let g: f64 = rng.sample(StandardNormal);
                (g * g - 1.0) * (variance / 2.0).sqrt()
            }
        }
    }
}

/// Finite moving average `X_t = sum_{j=0}^m b_j eps_{t-j}` with i.i.d.
/// innovations; the first `m` warm-up values are discarded. Requires
/// `b_0 = 1`.
pub fn simulate_linear(
    coeffs: &[f64],
    innovations: Innovations,
    n: usize,
    seed: u64,
) -> Result<TimeSeries, ModelError> {
    if coeffs.first() != Some(&1.0) {
        return Err(ModelError::InvalidParameter(
            alloc::string::String::from("leading moving-average weight must be 1"),
        ));
    }
    if !(innovations.variance().is_finite() && innovations.variance() > 0.0) {
        return Err(ModelError::InvalidParameter(
            alloc::string::String::from("innovation variance must be positive"),
        ));
    }
    if n < 4 {
        return Err(ModelError::InvalidParameter(alloc::format!(
            "sample size {n} below minimum 4"
        )));
    }
    let m = coeffs.len() - 1;
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let eps: Vec<f64> = (0..n + m).map(|_| innovations.draw(&mut rng)).collect();
    let values: Vec<f64> = (m..n + m)
        .map(|t| coeffs.iter().enumerate().map(|(j, b)| b * eps[t - j]).sum())
        .collect();
    Ok(TimeSeries::new(values).expect("n >= 4 and finite"))
}
