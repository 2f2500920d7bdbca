//! Scalar special functions: Bernoulli numbers and the c_m coefficients,
//! Laguerre polynomials, J_0, complex Γ, Dirichlet η, ζ and ζ'.

mod bernoulli;
mod bessel;
mod dd;
mod gamma;
mod laguerre;
mod zeta;

pub use bernoulli::{
    bernoulli, fermi_weight, series_coeff, series_coeff_exact, series_coeff_extended, CoefficientTable,
    Rational, MAX_BERNOULLI_INDEX, MAX_EXTENDED_INDEX,
};
pub use bessel::{bessel_j0, j0_asymptotic, j0_series, J0_SWITCH};
pub(crate) use bessel::j0_unchecked;
pub use gamma::{gamma, gamma_derivative};
pub(crate) use gamma::gamma_unchecked;
pub use laguerre::{laguerre, laguerre_all, laguerre_derivative};
pub use zeta::{
    eta, eta_factor, eta_prime, zeta, zeta_prime, zeta_euler_maclaurin, zeta_prime_central_difference,
    DENOMINATOR_FALLBACK,
};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quad::{integrate_semi_infinite, IntegrandSpec, QuadResult};
use crate::ComplexScalar;

/// t^{s-1} / (1 + e^t) for t > 0, without overflow for large t.
pub(crate) fn mellin_fermi(s: ComplexScalar, t: f64) -> Complex64 {
    let ln_t = t.ln();
    // 1/(1+e^t) = e^{-t} / (1 + e^{-t})
    let w = (-t).exp();
    ((s - 1.0) * ln_t - t).exp() / (1.0 + w)
}

/// ∫_0^∞ u^{s-1} / (1 + e^u) du by quadrature; equals Γ(s) η(s).
pub fn eta_integral(s: ComplexScalar, tol: f64) -> Result<QuadResult> {
    if !(s.re > 0.0) {
        return Err(Error::Domain {
            func: "eta_integral",
            detail: format!("s = {s}; the integral needs Re(s) > 0"),
        });
    }
    let spec = IntegrandSpec::mellin(s).with_envelope(1.0);
    integrate_semi_infinite(|t| mellin_fermi(s, t), &spec, tol)
}
