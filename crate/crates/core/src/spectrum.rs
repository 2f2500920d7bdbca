//! The boundary function Γ(s)η(s), zeros on the critical line, and
//! argument-principle zero counts in strip rectangles.

use std::cell::Cell;
use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::quad::{integrate_panels, QuadConfig};
use crate::special::{eta, eta_factor, gamma, gamma_unchecked, zeta, zeta_prime};
use crate::ComplexScalar;

/// Largest ordinate the scan supports.
pub const MAX_SCAN_HEIGHT: f64 = 60.0;
/// Scan step in τ; zero gaps stay well above this below τ = 60.
pub const SCAN_STEP: f64 = 0.01;
/// Residual |ζ(ρ)| every accepted zero must satisfy.
pub const ZERO_RESIDUAL_LIMIT: f64 = 1e-8;

/// One nontrivial zero ρ = 1/2 + iτ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ZeroRecord {
    pub index: usize,
    pub tau: f64,
    #[serde(with = "crate::serde_complex")]
    pub rho: ComplexScalar,
    /// |ζ(ρ)|
    pub residual: f64,
    pub bracket: (f64, f64),
}

/// (1 - 2^{1-s}) Γ(s) ζ(s), evaluated as Γ(s) η(s).
pub fn xi_bc(s: ComplexScalar) -> Result<ComplexScalar> {
    if !(s.re > 0.0) {
        return Err(Error::Domain {
            func: "xi_bc",
            detail: format!("s = {s}; needs Re(s) > 0"),
        });
    }
    Ok(gamma(s)? * eta(s)?)
}

/// The same boundary function through ζ; undefined at s = 1.
pub fn xi_bc_via_zeta(s: ComplexScalar) -> Result<ComplexScalar> {
    Ok(eta_factor(s) * gamma(s)? * zeta(s)?)
}

/// Completed ξ(1/2 + iτ) = ½ s(s-1) π^{-s/2} Γ(s/2) ζ(s), real on the line.
pub fn critical_line_real_form(tau: f64) -> f64 {
    let s = Complex64::new(0.5, tau);
    let prefactor = 0.5 * s * (s - 1.0);
    let pi_pow = (-s * 0.5 * PI.ln()).exp();
    let z = zeta(s).expect("Re(s) = 1/2 is inside the zeta domain");
    (prefactor * pi_pow * gamma_unchecked(s * 0.5) * z).re
}

fn refine(lo: f64, hi: f64, f_lo: f64, tol: f64) -> Result<f64> {
    let (mut lo, mut hi, mut f_lo) = (lo, hi, f_lo);
    for _ in 0..200 {
        if hi - lo < tol {
            return Ok(0.5 * (lo + hi));
        }
        let mid = 0.5 * (lo + hi);
        let f_mid = critical_line_real_form(mid);
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if (f_mid > 0.0) == (f_lo > 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Err(Error::Bracket { lo, hi })
}

/// Every zero 1/2 + iτ with 0 < τ ≤ `tau_max`, refined to |Δτ| < `tol`.
pub fn find_zeros(tau_max: f64, tol: f64) -> Result<Vec<ZeroRecord>> {
    if !(tau_max > 0.0 && tau_max <= MAX_SCAN_HEIGHT) {
        return Err(Error::Invalid(format!(
            "tau_max = {tau_max} outside (0, {MAX_SCAN_HEIGHT}]"
        )));
    }
    if !(tol > 0.0) {
        return Err(Error::Invalid(format!("tol = {tol} must be positive")));
    }
    let steps = (tau_max / SCAN_STEP).ceil() as usize;
    let mut zeros = Vec::new();
    let mut prev_tau = 0.0;
    let mut prev = critical_line_real_form(prev_tau);
    for k in 1..=steps {
        let tau = (k as f64 * SCAN_STEP).min(tau_max);
        let cur = critical_line_real_form(tau);
        if (cur > 0.0) != (prev > 0.0) || cur == 0.0 {
            let root = if cur == 0.0 {
                tau
            } else {
                refine(prev_tau, tau, prev, tol)?
            };
            let rho = Complex64::new(0.5, root);
            let residual = zeta(rho)?.norm();
            if residual >= ZERO_RESIDUAL_LIMIT {
                return Err(Error::Bracket { lo: prev_tau, hi: tau });
            }
            zeros.push(ZeroRecord {
                index: zeros.len() + 1,
                tau: root,
                rho,
                residual,
                bracket: (prev_tau, tau),
            });
        }
        if cur != 0.0 {
            prev = cur;
            prev_tau = tau;
        }
    }
    Ok(zeros)
}

/// i (1/2 - ρ)
pub fn eigenvalue_of(rho: ComplexScalar) -> ComplexScalar {
    Complex64::i() * (0.5 - rho)
}

/// Closed rectangle σ_lo ≤ Re s ≤ σ_hi, τ_lo ≤ Im s ≤ τ_hi inside the strip.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StripRectangle {
    pub sigma_lo: f64,
    pub sigma_hi: f64,
    pub tau_lo: f64,
    pub tau_hi: f64,
}

/// Smallest |ζ| tolerated on a counting contour.
pub const CONTOUR_CLEARANCE: f64 = 1e-6;
/// Segments per rectangle edge.
pub const SEGMENTS_PER_EDGE: usize = 100;

impl StripRectangle {
    pub fn new(sigma_lo: f64, sigma_hi: f64, tau_lo: f64, tau_hi: f64) -> Result<Self> {
        let in_strip = |x: f64| x > 0.0 && x < 1.0;
        if !(in_strip(sigma_lo) && in_strip(sigma_hi) && sigma_lo < sigma_hi) {
            return Err(Error::Invalid(format!(
                "sigma range [{sigma_lo}, {sigma_hi}] must be increasing inside (0, 1)"
            )));
        }
        if !(tau_lo < tau_hi) {
            return Err(Error::Invalid(format!(
                "tau range [{tau_lo}, {tau_hi}] must be increasing"
            )));
        }
        Ok(Self {
            sigma_lo,
            sigma_hi,
            tau_lo,
            tau_hi,
        })
    }

    fn corners(&self) -> [ComplexScalar; 4] {
        [
            Complex64::new(self.sigma_lo, self.tau_lo),
            Complex64::new(self.sigma_hi, self.tau_lo),
            Complex64::new(self.sigma_hi, self.tau_hi),
            Complex64::new(self.sigma_lo, self.tau_hi),
        ]
    }
}

/// (1/2πi) ∮ ζ'/ζ ds around the rectangle, before rounding.
pub fn winding_number(rect: &StripRectangle) -> Result<(f64, f64)> {
    let corners = rect.corners();
    let mut sampled_min = f64::INFINITY;
    for e in 0..4 {
        let (start, end) = (corners[e], corners[(e + 1) % 4]);
        for k in 0..4 * SEGMENTS_PER_EDGE {
            let u = k as f64 / (4 * SEGMENTS_PER_EDGE) as f64;
            sampled_min = sampled_min.min(zeta(start + (end - start) * u)?.norm());
        }
    }
    if sampled_min <= CONTOUR_CLEARANCE {
        return Err(Error::Precondition(format!(
            "contour passes within {sampled_min:e} of a zero of zeta"
        )));
    }
    let min_abs = Cell::new(sampled_min);
    let failure: Cell<Option<Error>> = Cell::new(None);
    let mut total = Complex64::new(0.0, 0.0);
    let cfg = QuadConfig::abs(1e-9);
    for e in 0..4 {
        let start = corners[e];
        let end = corners[(e + 1) % 4];
        let dir = end - start;
        let integrand = |u: f64| -> Complex64 {
            let s = start + dir * u;
            match (zeta(s), zeta_prime(s)) {
                (Ok(z), Ok(dz)) => {
                    min_abs.set(min_abs.get().min(z.norm()));
                    dz / z * dir
                }
                (Err(err), _) | (_, Err(err)) => {
                    failure.set(Some(err));
                    Complex64::new(0.0, 0.0)
                }
            }
        };
        let pts: Vec<f64> = (0..=SEGMENTS_PER_EDGE)
            .map(|k| k as f64 / SEGMENTS_PER_EDGE as f64)
            .collect();
        let r = integrate_panels(integrand, &pts, &cfg)?;
        if let Some(err) = failure.take() {
            return Err(err);
        }
        total += r.value;
    }
    if min_abs.get() <= CONTOUR_CLEARANCE {
        return Err(Error::Precondition(format!(
            "contour passes within {:e} of a zero of zeta",
            min_abs.get()
        )));
    }
    let n = total / (2.0 * PI * Complex64::i());
    Ok((n.re, min_abs.get()))
}

/// Number of zeros of ζ inside the rectangle, by the argument principle.
pub fn count_zeros(rect: &StripRectangle) -> Result<usize> {
    let (value, _) = winding_number(rect)?;
    let nearest = value.round();
    if (value - nearest).abs() >= 0.1 || nearest < 0.0 {
        return Err(Error::Resolution { value });
    }
    Ok(nearest as usize)
}
