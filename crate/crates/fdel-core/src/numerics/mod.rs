//! Internal numeric kernels: FFT, special functions, quadrature, small
//! dense solves and derivative-free minimizers.

pub(crate) mod fft;
pub(crate) mod linalg;
pub(crate) mod optim;
pub(crate) mod quad;
pub(crate) mod special;
