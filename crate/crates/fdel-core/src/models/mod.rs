//! Parametric spectral density models and exact Gaussian simulation.
//!
//! Supported families, with `sigma2` the innovation variance except where
//! noted:
//!
//! * `White { variance }` — flat spectrum `f = variance / (2 pi)`.
//! * `Ar1 { phi, sigma2 }` — `f = sigma2 / (2 pi) |1 - phi e^{i l}|^{-2}`.
//! * `Arma { ar, ma, sigma2 }` — rational spectrum with AR polynomial
//!   `1 - sum phi_j z^j` and MA polynomial `1 + sum theta_j z^j`.
//! * `Farima { d, ar, ma, sigma2 }` — the ARMA spectrum times
//!   `|1 - e^{i l}|^{-2d}`, `0 < d < 1/2` (long memory, alpha = 2d).
//! * `Fgn { hurst, variance }` — fractional Gaussian noise, `1/2 < H < 1`
//!   (long memory, alpha = 2H - 1). Here `variance` is the process variance
//!   `r(0)`: the spectral density is normalized so that its integral over
//!   `(-pi, pi]` reproduces the increment-covariance formula exactly, which
//!   pins down the constant that couples `H` and the scale.

mod simulate;

pub use simulate::{simulate_gaussian, simulate_linear, CirculantSampler, Innovations};

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;
use num_complex::Complex64;
#[allow(unused_imports)] // f64 math via trait when building no_std
use num_traits::Float;

use crate::numerics::quad;
use crate::numerics::special::ln_gamma;

#[derive(Debug, Clone, PartialEq)]
pub enum ModelError {
    /// Parameter outside its admissible range.
    InvalidParameter(String),
    /// Frequency outside `[0, pi]`.
    FrequencyOutOfRange(f64),
    /// Long-memory density evaluated at its pole `lambda = 0`.
    PoleAtZero,
    /// Circulant embedding produced negative eigenvalues at every size.
    EmbeddingFailure { attempts: usize },
    /// Model grammar string could not be parsed.
    Parse(String),
}

impl fmt::Display for ModelError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelError::InvalidParameter(msg) => write!(f, "invalid model parameter: {msg}"),
            ModelError::FrequencyOutOfRange(l) => {
                write!(f, "frequency {l} outside [0, pi]")
            }
            ModelError::PoleAtZero => {
                write!(f, "long-memory spectral density diverges at frequency 0")
            }
            ModelError::EmbeddingFailure { attempts } => write!(
                f,
                "circulant embedding failed after {attempts} size doublings"
            ),
            ModelError::Parse(msg) => write!(f, "model grammar: {msg}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for ModelError {}

/// Parametric spectral density used for simulation, Whittle-type systems
/// and goodness-of-fit baselines.
#[derive(Debug, Clone, PartialEq)]
pub enum SpectralModel {
    White {
        variance: f64,
    },
    Ar1 {
        phi: f64,
        sigma2: f64,
    },
    Arma {
        ar: Vec<f64>,
        ma: Vec<f64>,
        sigma2: f64,
    },
    Farima {
        d: f64,
        ar: Vec<f64>,
        ma: Vec<f64>,
        sigma2: f64,
    },
    Fgn {
        hurst: f64,
        variance: f64,
    },
}

/// fGn lattice sum cutoff; terms decay like `|k|^{-1-2H}` and the dropped
/// tail is corrected by its midpoint integral, keeping the relative
/// truncation error under 1e-8 for H <= 0.95.
const FGN_SUM_CUTOFF: i64 = 200;

impl SpectralModel {
    pub fn validate(&self) -> Result<(), ModelError> {
        match self {
            SpectralModel::White { variance } => positive("variance", *variance),
            SpectralModel::Ar1 { phi, sigma2 } => {
                positive("innovation variance", *sigma2)?;
                if phi.abs() >= 1.0 || !phi.is_finite() {
                    return Err(ModelError::InvalidParameter(format!(
                        "AR(1) coefficient {phi} must satisfy |phi| < 1"
                    )));
                }
                Ok(())
            }
            SpectralModel::Arma { ar, ma, sigma2 } => {
                positive("innovation variance", *sigma2)?;
                check_poly_stable("AR", ar, true)?;
                check_poly_stable("MA", ma, false)
            }
            SpectralModel::Farima { d, ar, ma, sigma2 } => {
                positive("innovation variance", *sigma2)?;
                if !(*d > 0.0 && *d < 0.5) {
                    return Err(ModelError::InvalidParameter(format!(
                        "memory parameter d = {d} must lie in (0, 1/2)"
                    )));
                }
                check_poly_stable("AR", ar, true)?;
                check_poly_stable("MA", ma, false)
            }
            SpectralModel::Fgn { hurst, variance } => {
                positive("variance", *variance)?;
                if !(*hurst > 0.5 && *hurst < 1.0) {
                    return Err(ModelError::InvalidParameter(format!(
                        "Hurst exponent H = {hurst} must lie in (1/2, 1)"
                    )));
                }
                Ok(())
            }
        }
    }

    /// Low-frequency power-law exponent alpha in `f(l) ~ C l^{-alpha}`:
    /// `2d` for FARIMA, `2H - 1` for fGn, zero for the short-memory models.
    pub fn lrd_exponent(&self) -> f64 {
        match self {
            SpectralModel::Farima { d, .. } => 2.0 * d,
            SpectralModel::Fgn { hurst, .. } => 2.0 * hurst - 1.0,
            _ => 0.0,
        }
    }

    /// Fourth-order innovation cumulant of the simulated paths. Gaussian
    /// simulation everywhere, hence zero; non-Gaussian paths come from
    /// [`simulate_linear`] which carries its own kurtosis.
    pub fn innovation_kurtosis(&self) -> f64 {
        0.0
    }

    /// Spectral density `f(lambda)` for `lambda` in `[0, pi]`; long-memory
    /// models report a pole error at `lambda = 0`.
    pub fn density(&self, lambda: f64) -> Result<f64, ModelError> {
        if !(0.0..=PI + 1e-12).contains(&lambda) || !lambda.is_finite() {
            return Err(ModelError::FrequencyOutOfRange(lambda));
        }
        if lambda == 0.0 && self.lrd_exponent() > 0.0 {
            return Err(ModelError::PoleAtZero);
        }
        Ok(match self {
            SpectralModel::White { variance } => variance / (2.0 * PI),
            SpectralModel::Ar1 { phi, sigma2 } => {
                let denom = 1.0 + phi * phi - 2.0 * phi * lambda.cos();
                sigma2 / (2.0 * PI) / denom
            }
            SpectralModel::Arma { ar, ma, sigma2 } => {
                sigma2 / (2.0 * PI) * arma_transfer_sq(ar, ma, lambda)
            }
            SpectralModel::Farima { d, ar, ma, sigma2 } => {
                // |1 - e^{i l}| = 2 sin(l/2) on [0, pi].
                let gain = (2.0 * (lambda / 2.0).sin()).powf(-2.0 * d);
                sigma2 / (2.0 * PI) * gain * arma_transfer_sq(ar, ma, lambda)
            }
            SpectralModel::Fgn { hurst, variance } => fgn_density(*hurst, *variance, lambda),
        })
    }

    /// Autocovariances `r(0..=max_lag)`, normalized so that
    /// `r(k) = int_{-pi}^{pi} cos(k l) f(l) dl`.
    pub fn autocovariance(&self, max_lag: usize) -> Result<Vec<f64>, ModelError> {
        self.validate()?;
        Ok(match self {
            SpectralModel::White { variance } => {
                let mut r = vec![0.0; max_lag + 1];
                r[0] = *variance;
                r
            }
            SpectralModel::Ar1 { phi, sigma2 } => {
                let r0 = sigma2 / (1.0 - phi * phi);
                let mut r = Vec::with_capacity(max_lag + 1);
                let mut v = r0;
                for _ in 0..=max_lag {
                    r.push(v);
                    v *= phi;
                }
                r
            }
            SpectralModel::Arma { ar, ma, sigma2 } => {
                let psi = ma_infinity_weights(ar, ma);
                arma_autocov_from_weights(&psi, *sigma2, max_lag)
            }
            SpectralModel::Farima { d, ar, ma, sigma2 } => {
                if ar.is_empty() && ma.is_empty() {
                    fractional_noise_autocov(*d, *sigma2, max_lag)
                } else {
                    let psi = ma_infinity_weights(ar, ma);
                    let base = fractional_noise_autocov(*d, *sigma2, max_lag + psi.len());
                    filtered_autocov(&psi, &base, max_lag)
                }
            }
            SpectralModel::Fgn { hurst, variance } => {
                (0..=max_lag).map(|k| fgn_autocov(*hurst, *variance, k)).collect()
            }
        })
    }

    /// Spectral distribution `F(omega) = int_0^omega f(l) dl`.
    pub fn spectral_distribution(&self, omega: f64) -> Result<f64, ModelError> {
        self.validate()?;
        if !(0.0..=PI + 1e-12).contains(&omega) {
            return Err(ModelError::FrequencyOutOfRange(omega));
        }
        Ok(quad::integrate(
            |l| self.density(l).unwrap_or(0.0),
            0.0,
            omega,
            1e-10,
        ))
    }

    /// Parse the model grammar: `white(var)`, `ar1(phi,var)`,
    /// `arma(p,q;phis;thetas;var)`, `farima(p,d,q;phis;thetas;var)`,
    /// `fgn(H,var)`. A trailing `var=...` section (or positional final
    /// value) sets the variance; it defaults to 1. `name:args` is accepted
    /// as a paren-free alias.
    pub fn parse(text: &str) -> Result<Self, ModelError> {
        let (name, args) = split_grammar(text)?;
        let model = match name.as_str() {
            "white" => {
                let v = parse_numbers(&args, 1, 1, "white(var)")?;
                SpectralModel::White { variance: v[0] }
            }
            "ar1" => {
                let v = parse_numbers(&args, 1, 2, "ar1(phi,var)")?;
                SpectralModel::Ar1 {
                    phi: v[0],
                    sigma2: v.get(1).copied().unwrap_or(1.0),
                }
            }
            "fgn" => {
                let v = parse_numbers(&args, 1, 2, "fgn(H,var)")?;
                SpectralModel::Fgn {
                    hurst: v[0],
                    variance: v.get(1).copied().unwrap_or(1.0),
                }
            }
            "arma" => {
                let (head, ar, ma, sigma2) = parse_polynomial_sections(&args, 2)?;
                expect_orders(&head, &[ar.len(), ma.len()])?;
                SpectralModel::Arma { ar, ma, sigma2 }
            }
            "farima" => {
                let (head, ar, ma, sigma2) = parse_polynomial_sections(&args, 3)?;
                expect_orders(&[head[0], head[2]], &[ar.len(), ma.len()])?;
                SpectralModel::Farima {
                    d: head[1],
                    ar,
                    ma,
                    sigma2,
                }
            }
            other => {
                return Err(ModelError::Parse(format!("unknown model family `{other}`")))
            }
        };
        model.validate()?;
        Ok(model)
    }
}

fn positive(what: &str, v: f64) -> Result<(), ModelError> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(ModelError::InvalidParameter(format!(
            "{what} must be positive, got {v}"
        )))
    }
}

/// Roots of `1 + c_1 z + ... + c_m z^m` must lie strictly outside the unit
/// circle. Checked by the Schur-Cohn reduction applied to the reversed
/// (monic) polynomial, whose roots must then lie strictly inside.
fn poly_roots_outside_unit_circle(coeffs: &[f64]) -> bool {
    let mut b: Vec<f64> = Vec::with_capacity(coeffs.len() + 1);
    b.push(1.0);
    b.extend_from_slice(coeffs);
    let mut m = coeffs.len();
    while m > 0 {
        let kappa = b[m];
        if !kappa.is_finite() || kappa.abs() >= 1.0 {
            return false;
        }
        let denom = 1.0 - kappa * kappa;
        let prev = b.clone();
        for k in 0..m {
            b[k] = (prev[k] - kappa * prev[m - k]) / denom;
        }
        m -= 1;
        b.truncate(m + 1);
    }
    true
}

fn check_poly_stable(which: &str, coeffs: &[f64], negate: bool) -> Result<(), ModelError> {
    if coeffs.iter().any(|c| !c.is_finite()) {
        return Err(ModelError::InvalidParameter(format!(
            "{which} coefficients must be finite"
        )));
    }
    // AR polynomial is 1 - sum phi_j z^j, MA is 1 + sum theta_j z^j.
    let c: Vec<f64> = if negate {
        coeffs.iter().map(|v| -v).collect()
    } else {
        coeffs.to_vec()
    };
    if poly_roots_outside_unit_circle(&c) {
        Ok(())
    } else {
        Err(ModelError::InvalidParameter(format!(
            "{which} polynomial has a root on or inside the unit circle"
        )))
    }
}

/// `|theta(e^{i l})|^2 / |phi(e^{i l})|^2`.
fn arma_transfer_sq(ar: &[f64], ma: &[f64], lambda: f64) -> f64 {
    let z = Complex64::new(lambda.cos(), lambda.sin());
    let mut zp = Complex64::new(1.0, 0.0);
    let mut num = Complex64::new(1.0, 0.0);
    let mut den = Complex64::new(1.0, 0.0);
    let len = ar.len().max(ma.len());
    for j in 0..len {
        zp *= z;
        if let Some(&t) = ma.get(j) {
            num += zp * t;
        }
        if let Some(&p) = ar.get(j) {
            den -= zp * p;
        }
    }
    num.norm_sqr() / den.norm_sqr()
}

/// Power-series division `theta(z) / phi(z)`: MA(infinity) weights,
/// truncated once they fall below 1e-18 of the running maximum.
fn ma_infinity_weights(ar: &[f64], ma: &[f64]) -> Vec<f64> {
    const MAX_TERMS: usize = 20_000;
    let run_needed = ar.len().max(ma.len()).max(2) + 1;
    let mut psi = vec![1.0f64];
    let mut peak = 1.0f64;
    let mut small_run = 0usize;
    for j in 1..MAX_TERMS {
        let mut v = ma.get(j - 1).copied().unwrap_or(0.0);
        for (k, &phi) in ar.iter().enumerate() {
            if j > k {
                v += phi * psi[j - 1 - k];
            } else {
                break;
            }
        }
        psi.push(v);
        peak = peak.max(v.abs());
        // A single tiny weight can sit between larger ones (oscillating
        // roots); require a run of them before truncating.
        if j > ma.len() && v.abs() < 1e-18 * peak {
            small_run += 1;
            if small_run >= run_needed {
                break;
            }
        } else {
            small_run = 0;
        }
    }
    psi
}

fn arma_autocov_from_weights(psi: &[f64], sigma2: f64, max_lag: usize) -> Vec<f64> {
    (0..=max_lag)
        .map(|k| {
            if k >= psi.len() {
                return 0.0;
            }
            sigma2
                * psi[..psi.len() - k]
                    .iter()
                    .zip(&psi[k..])
                    .map(|(a, b)| a * b)
                    .sum::<f64>()
        })
        .collect()
}

/// Autocovariance of the ARMA filter applied to a series with
/// autocovariance `base`: `r(k) = sum_h c_|h| base(|k+h|)` where `c_h` is
/// the lag-`h` self-correlation of the psi weights.
fn filtered_autocov(psi: &[f64], base: &[f64], max_lag: usize) -> Vec<f64> {
    let c: Vec<f64> = (0..psi.len())
        .map(|h| {
            psi[..psi.len() - h]
                .iter()
                .zip(&psi[h..])
                .map(|(a, b)| a * b)
                .sum::<f64>()
        })
        .collect();
    let at = |lag: i64| -> f64 {
        let idx = lag.unsigned_abs() as usize;
        base.get(idx).copied().unwrap_or(0.0)
    };
    (0..=max_lag as i64)
        .map(|k| {
            let mut acc = c[0] * at(k);
            for (h, &ch) in c.iter().enumerate().skip(1) {
                acc += ch * (at(k + h as i64) + at(k - h as i64));
            }
            acc
        })
        .collect()
}

/// FARIMA(0, d, 0) autocovariance: `r(0) = sigma2 Gamma(1-2d)/Gamma(1-d)^2`
/// and the ratio recursion `r(k+1)/r(k) = (k + d)/(k + 1 - d)`.
fn fractional_noise_autocov(d: f64, sigma2: f64, max_lag: usize) -> Vec<f64> {
    let r0 = sigma2 * (ln_gamma(1.0 - 2.0 * d) - 2.0 * ln_gamma(1.0 - d)).exp();
    let mut r = Vec::with_capacity(max_lag + 1);
    let mut v = r0;
    r.push(v);
    for k in 0..max_lag {
        let k = k as f64;
        v *= (k + d) / (k + 1.0 - d);
        r.push(v);
    }
    r
}

/// fGn increment covariance
/// `r(k) = (variance/2) (|k+1|^{2H} - 2|k|^{2H} + |k-1|^{2H})`.
fn fgn_autocov(hurst: f64, variance: f64, lag: usize) -> f64 {
    if lag == 0 {
        return variance;
    }
    let k = lag as f64;
    let two_h = 2.0 * hurst;
    if lag < 8 {
        return 0.5 * variance * ((k + 1.0).powf(two_h) - 2.0 * k.powf(two_h) + (k - 1.0).powf(two_h));
    }
    // Large lags: the second difference cancels catastrophically in the
    // raw form; factor out k^{2H} and use expm1/ln_1p.
    let upper = (two_h * (1.0 / k).ln_1p()).exp_m1();
    let lower = (two_h * (-1.0 / k).ln_1p()).exp_m1();
    0.5 * variance * k.powf(two_h) * (upper + lower)
}

/// fGn spectral density normalized so that `int_{-pi}^{pi} f = variance`:
/// `f(l) = variance * c(H) sin^2(l/2) sum_k |l/(2pi) + k|^{-1-2H}` with
/// `c(H) = 4 sin(pi H) Gamma(2H+1) / (2 pi)^{2H+2}`.
fn fgn_density(hurst: f64, variance: f64, lambda: f64) -> f64 {
    let two_h = 2.0 * hurst;
    let c = 4.0 * (PI * hurst).sin() * (ln_gamma(two_h + 1.0)).exp()
        / (2.0 * PI).powf(two_h + 2.0);
    let u = lambda / (2.0 * PI);
    let expo = -1.0 - two_h;
    let mut lattice = 0.0;
    for k in -FGN_SUM_CUTOFF..=FGN_SUM_CUTOFF {
        lattice += (u + k as f64).abs().powf(expo);
    }
    // Midpoint-rule tail correction on both sides of the cutoff.
    let kc = FGN_SUM_CUTOFF as f64 + 0.5;
    lattice += ((kc + u).powf(-two_h) + (kc - u).powf(-two_h)) / two_h;
    variance * c * (lambda / 2.0).sin().powi(2) * lattice
}

// --- grammar -------------------------------------------------------------

fn split_grammar(text: &str) -> Result<(String, String), ModelError> {
    let t = text.trim();
    if let Some(open) = t.find('(') {
        if !t.ends_with(')') {
            return Err(ModelError::Parse(format!("unbalanced parentheses in `{t}`")));
        }
        let name = t[..open].trim().to_lowercase();
        let args = t[open + 1..t.len() - 1].to_string();
        return Ok((name, args));
    }
    if let Some(colon) = t.find(':') {
        return Ok((t[..colon].trim().to_lowercase(), t[colon + 1..].to_string()));
    }
    Err(ModelError::Parse(format!(
        "expected `name(args)` or `name:args`, got `{t}`"
    )))
}

fn parse_f64(s: &str) -> Result<f64, ModelError> {
    s.trim()
        .parse::<f64>()
        .map_err(|_| ModelError::Parse(format!("`{}` is not a number", s.trim())))
}

fn parse_numbers(args: &str, min: usize, max: usize, form: &str) -> Result<Vec<f64>, ModelError> {
    let parts: Vec<&str> = args
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .collect();
    if parts.len() < min || parts.len() > max {
        return Err(ModelError::Parse(format!("expected {form}, got `{args}`")));
    }
    parts.into_iter().map(parse_f64).collect()
}

/// Sections after the order head fill `[phis, thetas, var]` positionally;
/// empty sections are skipped and `var=` names the variance explicitly.
fn parse_polynomial_sections(
    args: &str,
    head_len: usize,
) -> Result<(Vec<f64>, Vec<f64>, Vec<f64>, f64), ModelError> {
    let sections: Vec<&str> = args.split(';').collect();
    let head = parse_numbers(sections[0], head_len, head_len, "order head")?;
    let p = head[0] as usize;
    let q = *head.last().unwrap() as usize;

    let mut ar: Vec<f64> = Vec::new();
    let mut ma: Vec<f64> = Vec::new();
    let mut var = 1.0f64;
    let mut slot = 0usize; // 0 -> phis, 1 -> thetas, 2 -> var
    for raw in &sections[1..] {
        let s = raw.trim();
        if let Some(v) = s.strip_prefix("var=") {
            var = parse_f64(v)?;
            continue;
        }
        if slot == 0 {
            slot = 1;
            if p > 0 {
                ar = parse_numbers(s, p, p, "AR coefficients")?;
                continue;
            }
        }
        if slot == 1 {
            slot = 2;
            if q > 0 {
                ma = parse_numbers(s, q, q, "MA coefficients")?;
                continue;
            }
        }
        if s.is_empty() {
            continue;
        }
        var = parse_f64(s)?;
    }
    if ar.len() != p || ma.len() != q {
        return Err(ModelError::Parse(format!(
            "expected {p} AR and {q} MA coefficients in `{args}`"
        )));
    }
    Ok((head, ar, ma, var))
}

fn expect_orders(head: &[f64], lens: &[usize]) -> Result<(), ModelError> {
    for (h, l) in head.iter().zip(lens.iter()) {
        if (*h as usize) != *l || h.fract() != 0.0 || *h < 0.0 {
            return Err(ModelError::Parse(
                "polynomial orders must match supplied coefficient counts".to_string(),
            ));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests;
