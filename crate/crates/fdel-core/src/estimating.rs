//! Catalog of spectral estimating systems.
//!
//! An [`EstimatingSystem`] packages the even estimating functions
//! `G_theta: (0, pi] -> R^r`, the target spectral mean `M`, the parameter
//! dimension `p <= r`, an optional analytic gradient in `theta`, and an
//! optional model density for the mean-corrected likelihood variant.
//!
//! Systems with `M != 0` carry a flag surfaced as a warning: their
//! chi-square calibration additionally requires a vanishing fourth-order
//! innovation cumulant (Gaussian data qualifies). Construction rejects
//! hidden `M != 0` unless the caller opts in.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;
#[allow(unused_imports)] // f64 math via trait when building no_std
use num_traits::Float;

use crate::models::{ModelError, SpectralModel};

type EvalFn = dyn Fn(&[f64], f64, &mut [f64]) + Send + Sync;
type GradFn = dyn Fn(&[f64], f64, &mut [f64]) + Send + Sync;
type DensityFn = dyn Fn(&[f64], f64) -> f64 + Send + Sync;

#[derive(Debug, Clone, PartialEq)]
pub enum EstimatingError {
    InvalidInput(String),
    Parse(String),
}

impl fmt::Display for EstimatingError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EstimatingError::InvalidInput(m) => write!(f, "invalid estimating system: {m}"),
            EstimatingError::Parse(m) => write!(f, "system grammar: {m}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for EstimatingError {}

/// Whittle parameterizations `f_theta = sigma2 k(lambda; nu)` with analytic
/// kernel derivatives, used by the Whittle and composite GOF systems.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WhittleFamily {
    /// theta = (sigma2,), flat kernel `1/(2 pi)`.
    White,
    /// theta = (sigma2, phi), kernel `(2 pi)^{-1} |1 - phi e^{il}|^{-2}`.
    Ar1,
    /// theta = (sigma2, d), kernel `(2 pi)^{-1} |1 - e^{il}|^{-2d}`.
    FractionalD,
}

impl WhittleFamily {
    /// Total parameter dimension p, including the scale sigma2.
    pub fn dim(&self) -> usize {
        match self {
            WhittleFamily::White => 1,
            WhittleFamily::Ar1 | WhittleFamily::FractionalD => 2,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            WhittleFamily::White => "white",
            WhittleFamily::Ar1 => "ar1",
            WhittleFamily::FractionalD => "fd",
        }
    }

    pub fn parse(name: &str) -> Result<Self, EstimatingError> {
        match name.trim() {
            "white" => Ok(WhittleFamily::White),
            "ar1" => Ok(WhittleFamily::Ar1),
            "fd" | "farima" => Ok(WhittleFamily::FractionalD),
            other => Err(EstimatingError::Parse(format!(
                "unknown Whittle family `{other}` (expected white, ar1 or fd)"
            ))),
        }
    }

    /// Inverse kernel `1/k(lambda)`.
    fn inv_kernel(&self, shape: &[f64], lambda: f64) -> f64 {
        match self {
            WhittleFamily::White => 2.0 * PI,
            WhittleFamily::Ar1 => {
                let phi = shape[0];
                2.0 * PI * (1.0 + phi * phi - 2.0 * phi * lambda.cos())
            }
            WhittleFamily::FractionalD => {
                let d = shape[0];
                // |1 - e^{il}|^{2d} = (2 sin(l/2))^{2d}.
                2.0 * PI * (2.0 * (lambda / 2.0).sin()).powf(2.0 * d)
            }
        }
    }

    /// d/d(shape) of the inverse kernel.
    fn inv_kernel_shape_grad(&self, shape: &[f64], lambda: f64) -> f64 {
        match self {
            WhittleFamily::White => 0.0,
            WhittleFamily::Ar1 => {
                let phi = shape[0];
                2.0 * PI * (2.0 * phi - 2.0 * lambda.cos())
            }
            WhittleFamily::FractionalD => {
                let log_gain = 2.0 * (2.0 * (lambda / 2.0).sin()).ln();
                self.inv_kernel(shape, lambda) * log_gain
            }
        }
    }

    /// Second shape derivative of the inverse kernel.
    fn inv_kernel_shape_hess(&self, shape: &[f64], lambda: f64) -> f64 {
        match self {
            WhittleFamily::White => 0.0,
            WhittleFamily::Ar1 => 4.0 * PI,
            WhittleFamily::FractionalD => {
                let log_gain = 2.0 * (2.0 * (lambda / 2.0).sin()).ln();
                self.inv_kernel(shape, lambda) * log_gain * log_gain
            }
        }
    }

    /// Model density `sigma2 * k(lambda)`.
    pub fn density(&self, theta: &[f64], lambda: f64) -> f64 {
        theta[0] / self.inv_kernel(&theta[1..], lambda)
    }

    /// Admissible default search box for the outer EL optimization.
    pub fn default_bounds(&self) -> Vec<(f64, f64)> {
        let sigma = (1e-8, 1e8);
        match self {
            WhittleFamily::White => vec![sigma],
            WhittleFamily::Ar1 => vec![sigma, (-0.99, 0.99)],
            WhittleFamily::FractionalD => vec![sigma, (0.01, 0.49)],
        }
    }

    /// Clamp of the shape parameter into its open admissible range, used
    /// when deriving starting points from data.
    pub fn shape_ok(&self, shape: f64) -> bool {
        match self {
            WhittleFamily::White => true,
            WhittleFamily::Ar1 => shape.abs() < 1.0,
            WhittleFamily::FractionalD => (0.0..0.5).contains(&shape),
        }
    }
}

/// A vector spectral estimating system `(G_theta, M)`.
pub struct EstimatingSystem {
    r: usize,
    p: usize,
    g_len: usize,
    target: Vec<f64>,
    eval: Box<EvalFn>,
    grad: Option<Box<GradFn>>,
    model_density: Option<Box<DensityFn>>,
    squared_moment: bool,
    nonzero_target: bool,
    label: String,
}

impl fmt::Debug for EstimatingSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("EstimatingSystem")
            .field("label", &self.label)
            .field("r", &self.r)
            .field("p", &self.p)
            .field("target", &self.target)
            .finish()
    }
}

impl EstimatingSystem {
    /// Number of estimating equations (constraint dimension).
    pub fn r(&self) -> usize {
        self.r
    }

    /// Parameter dimension; `p = 0` means a pure moment test.
    pub fn p(&self) -> usize {
        self.p
    }

    /// Length of the raw `G` vector written by [`eval_into`]: equals `r`
    /// except for squared-moment systems, where the extra constraint row is
    /// assembled downstream from the model density.
    ///
    /// [`eval_into`]: EstimatingSystem::eval_into
    pub fn g_len(&self) -> usize {
        self.g_len
    }

    pub fn target(&self) -> &[f64] {
        &self.target
    }

    /// True when `M != 0`: chi-square calibration then requires a zero
    /// fourth-order innovation cumulant (e.g. Gaussian data).
    pub fn requires_zero_kurtosis(&self) -> bool {
        self.nonzero_target
    }

    /// True for the composite goodness-of-fit stacking, whose first
    /// constraint coordinate is built from squared periodogram ordinates.
    pub fn squared_moment(&self) -> bool {
        self.squared_moment
    }

    pub fn has_density(&self) -> bool {
        self.model_density.is_some()
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Evaluate `G_theta(lambda)` into `out` (length [`g_len`]).
    ///
    /// [`g_len`]: EstimatingSystem::g_len
    pub fn eval_into(&self, theta: &[f64], lambda: f64, out: &mut [f64]) {
        debug_assert_eq!(theta.len(), self.p);
        debug_assert_eq!(out.len(), self.g_len);
        (self.eval)(theta, lambda, out)
    }

    pub fn eval(&self, theta: &[f64], lambda: f64) -> Vec<f64> {
        let mut out = vec![0.0; self.g_len];
        self.eval_into(theta, lambda, &mut out);
        out
    }

    /// Gradient `dG/dtheta` as a row-major `g_len x p` matrix; analytic
    /// when the catalog supplies one, otherwise central differences with
    /// step `1e-6 max(1, |theta_j|)`.
    pub fn grad(&self, theta: &[f64], lambda: f64) -> Vec<f64> {
        let mut out = vec![0.0; self.g_len * self.p];
        if let Some(g) = &self.grad {
            g(theta, lambda, &mut out);
            return out;
        }
        let mut lo = vec![0.0; self.g_len];
        let mut hi = vec![0.0; self.g_len];
        let mut th = theta.to_vec();
        for j in 0..self.p {
            let step = 1e-6 * theta[j].abs().max(1.0);
            let orig = th[j];
            th[j] = orig + step;
            self.eval_into(&th, lambda, &mut hi);
            th[j] = orig - step;
            self.eval_into(&th, lambda, &mut lo);
            th[j] = orig;
            for i in 0..self.g_len {
                out[i * self.p + j] = (hi[i] - lo[i]) / (2.0 * step);
            }
        }
        out
    }

    /// Model density `f_theta(lambda)` when the system carries one.
    pub fn density(&self, theta: &[f64], lambda: f64) -> Option<f64> {
        self.model_density.as_ref().map(|f| f(theta, lambda))
    }
}

/// Autocorrelations at the given lags: `G = (cos(m_1 l), ..) - theta`,
/// `M = 0`, `r = p`, gradient exactly `-I`.
pub fn autocorrelation_system(lags: &[usize]) -> Result<EstimatingSystem, EstimatingError> {
    if lags.is_empty() {
        return Err(EstimatingError::InvalidInput("no lags supplied".into()));
    }
    for (i, &m) in lags.iter().enumerate() {
        if m == 0 {
            return Err(EstimatingError::InvalidInput("lags must be positive".into()));
        }
        if lags[..i].contains(&m) {
            return Err(EstimatingError::InvalidInput(format!("duplicate lag {m}")));
        }
    }
    let p = lags.len();
    let lags_eval: Vec<f64> = lags.iter().map(|&m| m as f64).collect();
    let label = format!(
        "acf:{}",
        lags.iter().map(|m| m.to_string()).collect::<Vec<_>>().join(",")
    );
    Ok(EstimatingSystem {
        r: p,
        p,
        g_len: p,
        target: vec![0.0; p],
        eval: Box::new(move |theta, lambda, out| {
            for ((o, m), t) in out.iter_mut().zip(&lags_eval).zip(theta) {
                *o = (m * lambda).cos() - t;
            }
        }),
        grad: Some(Box::new(move |_theta, _lambda, out| {
            out.fill(0.0);
            for i in 0..p {
                out[i * p + i] = -1.0;
            }
        })),
        model_density: None,
        squared_moment: false,
        nonzero_target: false,
        label,
    })
}

/// Normalized spectral distribution system:
/// `G = (1{l <= tau_1}, ..) - theta`, `M = 0`. Ties `lambda_j = tau` count
/// as inside (closed inequality).
///
/// Indicator estimating functions are admissible under long-range
/// dependence only for memory exponents `alpha < 1/2`; that restriction
/// depends on the unknown process and is a usage caveat, not a runtime
/// check.
pub fn spectral_cdf_system(taus: &[f64]) -> Result<EstimatingSystem, EstimatingError> {
    if taus.is_empty() {
        return Err(EstimatingError::InvalidInput("no thresholds supplied".into()));
    }
    for (i, &t) in taus.iter().enumerate() {
        if !(t > 0.0 && t < PI) {
            return Err(EstimatingError::InvalidInput(format!(
                "threshold {t} outside (0, pi)"
            )));
        }
        if i > 0 && taus[i - 1] >= t {
            return Err(EstimatingError::InvalidInput(
                "thresholds must be strictly increasing".into(),
            ));
        }
    }
    let p = taus.len();
    let taus = taus.to_vec();
    let label = format!(
        "cdf:{}",
        taus.iter().map(|t| format!("{t}")).collect::<Vec<_>>().join(",")
    );
    Ok(EstimatingSystem {
        r: p,
        p,
        g_len: p,
        target: vec![0.0; p],
        eval: Box::new(move |theta, lambda, out| {
            for ((o, tau), t) in out.iter_mut().zip(&taus).zip(theta) {
                *o = if lambda <= *tau { 1.0 } else { 0.0 } - t;
            }
        }),
        grad: Some(Box::new(move |_theta, _lambda, out| {
            out.fill(0.0);
            for i in 0..p {
                out[i * p + i] = -1.0;
            }
        })),
        model_density: None,
        squared_moment: false,
        nonzero_target: false,
        label,
    })
}

/// Full Whittle system `G = (f^{-1}, d f^{-1}/d nu)`, `M = (pi, 0, ..)`,
/// over `theta = (sigma2, nu)`. Carries the model density, so it pairs with
/// the mean-corrected variant; the nonzero target restricts the plain
/// variant's calibration to zero-kurtosis innovations.
pub fn whittle_full_system(family: WhittleFamily) -> EstimatingSystem {
    let p = family.dim();
    let mut target = vec![0.0; p];
    target[0] = PI;
    EstimatingSystem {
        r: p,
        p,
        g_len: p,
        target,
        eval: Box::new(move |theta, lambda, out| {
            let s2 = theta[0];
            out[0] = family.inv_kernel(&theta[1..], lambda) / s2;
            if p > 1 {
                out[1] = family.inv_kernel_shape_grad(&theta[1..], lambda) / s2;
            }
        }),
        grad: Some(Box::new(move |theta, lambda, out| {
            let s2 = theta[0];
            let k_inv = family.inv_kernel(&theta[1..], lambda);
            // d(f^{-1})/d sigma2 = -k^{-1}/sigma2^2.
            out[0] = -k_inv / (s2 * s2);
            if p > 1 {
                let dk = family.inv_kernel_shape_grad(&theta[1..], lambda);
                let d2k = family.inv_kernel_shape_hess(&theta[1..], lambda);
                out[1] = dk / s2; // d(f^{-1})/d nu
                out[p] = -dk / (s2 * s2); // d(df^{-1}/dnu)/d sigma2
                out[p + 1] = d2k / s2; // d(df^{-1}/dnu)/d nu
            }
        })),
        model_density: Some(Box::new(move |theta, lambda| family.density(theta, lambda))),
        squared_moment: false,
        nonzero_target: true,
        label: format!("whittle:{}", family.name()),
    }
}

/// Scale-free Whittle system `G = d k^{-1}/d nu`, `M = 0`, for the shape
/// parameters only. Valid without any kurtosis side condition.
pub fn whittle_nuisance_free_system(
    family: WhittleFamily,
) -> Result<EstimatingSystem, EstimatingError> {
    let p = family.dim() - 1;
    if p == 0 {
        return Err(EstimatingError::InvalidInput(
            "family has no shape parameter beyond the scale".into(),
        ));
    }
    Ok(EstimatingSystem {
        r: p,
        p,
        g_len: p,
        target: vec![0.0; p],
        eval: Box::new(move |theta, lambda, out| {
            out[0] = family.inv_kernel_shape_grad(theta, lambda);
        }),
        grad: Some(Box::new(move |theta, lambda, out| {
            out[0] = family.inv_kernel_shape_hess(theta, lambda);
        })),
        model_density: None,
        squared_moment: false,
        nonzero_target: false,
        label: format!("whittle-nf:{}", family.name()),
    })
}

/// Simple goodness-of-fit system for `H0: f = f0`: single function
/// `G = 1/f0`, `M = pi`, `p = 0`, with `f0` attached as the model density
/// for the mean-corrected statistic.
pub fn gof_simple_system(f0: SpectralModel) -> Result<EstimatingSystem, ModelError> {
    f0.validate()?;
    let label = format!("gof:{f0:?}");
    let f0_eval = f0.clone();
    let f0_dens = f0;
    Ok(EstimatingSystem {
        r: 1,
        p: 0,
        g_len: 1,
        target: vec![PI],
        eval: Box::new(move |_theta, lambda, out| {
            out[0] = 1.0 / f0_eval.density(lambda).unwrap_or(f64::NAN);
        }),
        grad: None,
        model_density: Some(Box::new(move |_theta, lambda| {
            f0_dens.density(lambda).unwrap_or(f64::NAN)
        })),
        squared_moment: false,
        nonzero_target: true,
        label,
    })
}

/// Composite goodness-of-fit stacking for `H0: f in family`: the Whittle
/// system plus an overidentifying squared-periodogram moment, `r = p + 1`.
/// The constraint rows are assembled downstream as
/// `(I^2/(2 f^2) - 1, G^w (I - f))`; Gaussian data is a documented
/// precondition.
pub fn gof_composite_system(family: WhittleFamily) -> EstimatingSystem {
    let whittle = whittle_full_system(family);
    let p = family.dim();
    EstimatingSystem {
        r: p + 1,
        p,
        g_len: p,
        target: vec![0.0; p + 1],
        eval: whittle.eval,
        grad: whittle.grad,
        model_density: whittle.model_density,
        squared_moment: true,
        nonzero_target: true,
        label: format!("gof-composite:{}", family.name()),
    }
}

/// Lag-1 autocorrelation with the overidentifying second-lag restriction
/// `rho(2) = rho(1)^2` implied by an AR(1) dependence structure:
/// `G = (cos l - theta, cos 2l - theta^2)`, `M = 0`, `r = 2`, `p = 1`.
pub fn ar1_overidentified_system() -> EstimatingSystem {
    EstimatingSystem {
        r: 2,
        p: 1,
        g_len: 2,
        target: vec![0.0; 2],
        eval: Box::new(|theta, lambda, out| {
            out[0] = lambda.cos() - theta[0];
            out[1] = (2.0 * lambda).cos() - theta[0] * theta[0];
        }),
        grad: Some(Box::new(|theta, _lambda, out| {
            out[0] = -1.0;
            out[1] = -2.0 * theta[0];
        })),
        model_density: None,
        squared_moment: false,
        nonzero_target: false,
        label: "ar1-overid".into(),
    }
}

/// CLI system grammar: `acf:1,2,5`, `cdf:0.5,1.0`, `whittle:ar1`,
/// `whittle-nf:ar1`, `gof:white(1.0)`, `gof-composite:ar1`, `ar1-overid`.
pub fn parse_system(text: &str) -> Result<EstimatingSystem, EstimatingError> {
    let t = text.trim();
    if t == "ar1-overid" {
        return Ok(ar1_overidentified_system());
    }
    let (name, rest) = match t.split_once(':') {
        Some((n, r)) => (n.trim(), r.trim()),
        None => {
            return Err(EstimatingError::Parse(format!(
                "expected `kind:args`, got `{t}`"
            )))
        }
    };
    match name {
        "acf" => {
            let lags: Result<Vec<usize>, _> = rest
                .split(',')
                .map(|s| {
                    s.trim()
                        .parse::<usize>()
                        .map_err(|_| EstimatingError::Parse(format!("bad lag `{s}`")))
                })
                .collect();
            autocorrelation_system(&lags?)
        }
        "cdf" => {
            let taus: Result<Vec<f64>, _> = rest
                .split(',')
                .map(|s| {
                    s.trim()
                        .parse::<f64>()
                        .map_err(|_| EstimatingError::Parse(format!("bad threshold `{s}`")))
                })
                .collect();
            spectral_cdf_system(&taus?)
        }
        "whittle" => Ok(whittle_full_system(WhittleFamily::parse(rest)?)),
        "whittle-nf" => whittle_nuisance_free_system(WhittleFamily::parse(rest)?),
        "gof" => {
            let model = SpectralModel::parse(rest)
                .map_err(|e| EstimatingError::Parse(format!("{e}")))?;
            gof_simple_system(model).map_err(|e| EstimatingError::Parse(format!("{e}")))
        }
        "gof-composite" => Ok(gof_composite_system(WhittleFamily::parse(rest)?)),
        other => Err(EstimatingError::Parse(format!(
            "unknown system kind `{other}`"
        ))),
    }
}
