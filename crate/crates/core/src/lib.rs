//! Contour-integral evaluators for linear evolution PDEs with time-dependent
//! coefficients, together with the independent oracles used to validate them.
//!
//! The library evaluates explicit solution representations for
//! convection-diffusion / heat problems on the finite interval and the half
//! line, and for linear KdV, linear Schrödinger, biharmonic Schrödinger and a
//! fourth-order diffusion equation. Coefficients `b(t)` (diffusivity) and
//! `c(t)` (drift) may depend on time; the representations are driven by the
//! antiderivatives `B(t)`, `C(t)` through the exponent
//! `omega(k, t)` of each family.
//!
//! Module map:
//! - [`coefficients`]: the `(b, c, B, C)` bundle and its validity predicates.
//! - [`spectral`]: dispersion exponents, invariant maps and integration paths.
//! - [`quadrature`]: adaptive Gauss--Kronrod and Filon-type oscillatory rules,
//!   plus the time-transform engine `g^f(k, t)`.
//! - [`data`]: initial / boundary data profiles and their transforms.
//! - [`cd_solver`]: the convection-diffusion / heat evaluators.
//! - [`evolution`]: the higher-order families (KdV, Schrödinger, biharmonic,
//!   fourth-order diffusion).
//! - [`oracle`]: Crank--Nicolson finite differences, Fourier-space Cauchy
//!   solutions and the constant-coefficient sine series.
//! - [`harness`]: run configurations, verification suites, figure
//!   reproduction and CSV/report output.

pub mod cd_solver;
pub mod coefficients;
pub mod data;
pub mod error;
pub mod evolution;
pub mod harness;
pub mod oracle;
pub mod quadrature;
pub mod special;
pub mod spectral;

pub use error::UtmError;

/// Complex scalar used throughout.
pub type C64 = num_complex::Complex64;

/// Shorthand for `Complex64::new`.
#[inline]
pub fn c64(re: f64, im: f64) -> C64 {
    num_complex::Complex64::new(re, im)
}

/// Shorthand for `i`.
pub const I: C64 = num_complex::Complex64::new(0.0, 1.0);
