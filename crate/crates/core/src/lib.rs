//! Numerical laboratory for twisted GL(3) central values.
//!
//! The crate is organised bottom-up:
//!
//! * [`arith`]: sieves, primitive roots, discrete logs and the classical
//!   arithmetic functions.
//! * [`characters`]: Dirichlet characters modulo a prime or a product of two
//!   distinct primes, normalized Gauss sums and the even-primitive
//!   orthogonality relations.
//! * [`coeffs`]: GL(3) Hecke coefficients `A(n,1)` (symmetric-square lift of
//!   the discriminant form, imported tables, synthetic Satake data), bound
//!   diagnostics and the additive-twist scanner.
//! * [`special`]: complex log-gamma, archimedean factors and the vertical-line
//!   contour quadrature that produces smoothing kernels.
//! * [`lfunc`]: approximate functional equations for `L(1/2, chi)`,
//!   `L(1/2, pi x chi)` and their product, plus `L(1, pi)`.
//! * [`moments`]: moduli families and the averaged first moment.
//! * [`luo`]: the weight `H`, the character-family sums `B_k` and the
//!   large-sieve style sweep.

pub mod arith;
pub mod characters;
pub mod coeffs;
mod error;
pub mod lfunc;
pub mod luo;
pub mod moments;
pub mod special;
pub mod util;

pub use error::{Error, Result};
pub use num_complex::Complex64;
