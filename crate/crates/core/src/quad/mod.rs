//! Quadrature: Gauss-Legendre rules, globally adaptive panels, semi-infinite
//! integrals with endpoint singularities, and cumulative nested integrals.

mod adaptive;
mod gauss;
mod nested;
mod semi_infinite;

pub use adaptive::{geometric_breakpoints, integrate_endpoint_singular, integrate_finite, integrate_panels, QuadConfig, QuadResult};
pub use gauss::{gauss_legendre, GaussRule, MAX_ORDER};
pub use nested::{integrate_nested, InnerRange};
pub use semi_infinite::{integrate_from, integrate_semi_infinite, integrate_to, truncation_upper, Decay, IntegrandSpec};
