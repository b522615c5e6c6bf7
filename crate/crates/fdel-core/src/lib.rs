//! Frequency-domain empirical likelihood (FDEL) for stationary time series.
//!
//! The crate builds nonparametric likelihood inference for spectral
//! parameters out of four layers:
//!
//! * [`spectral`] — Fourier frequencies, DFT and the periodogram.
//! * [`models`] — parametric spectral densities (white noise, AR/ARMA,
//!   FARIMA, fractional Gaussian noise), their autocovariances, and exact
//!   Gaussian simulation by circulant embedding.
//! * [`estimating`] — the catalog of spectral estimating systems
//!   (autocorrelations, spectral distribution, Whittle equations,
//!   goodness-of-fit moments).
//! * [`elcore`] / [`inference`] — the inner empirical-likelihood dual
//!   solve and the user-facing statistics: maximum-EL estimation,
//!   confidence regions, and chi-square calibrated tests.
//!
//! The crate is `no_std` compatible (with `alloc`); IO, file formats and
//! the Monte Carlo harness live in the companion `fdel` crate.

#![cfg_attr(not(feature = "std"), no_std)]
#![deny(unsafe_code)]

extern crate alloc;

pub mod elcore;
pub mod estimating;
pub mod inference;
pub mod models;
mod numerics;
pub mod spectral;
#[cfg(test)]
pub(crate) mod testutil;

pub use elcore::{ElConfig, ElSolution, ElStat, Variant};
pub use estimating::EstimatingSystem;
pub use inference::{ConfidenceRegion, MeleResult, TestReport};
pub use models::SpectralModel;
pub use spectral::{Periodogram, TimeSeries};
