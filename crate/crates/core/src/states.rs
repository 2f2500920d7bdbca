//! Eigenfunctions and their adjoint partners.
//!
//! Ψ_s(x) = f ∫ F_s(t) J₀(2√(xt)) dt with F_s(t) = t^{s-1}/(1+e^t), the
//! adjoint amplitudes G_s in tail form and in the form rewritten at zeros,
//! norm integrals, and the bilinear pairing ⟨Φ_ρ|Ψ_ρ'⟩.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::quad::{
    geometric_breakpoints, integrate_from, integrate_nested, integrate_panels, integrate_semi_infinite,
    integrate_to, InnerRange, IntegrandSpec, QuadConfig, QuadResult,
};
use crate::special::{eta, eta_factor, eta_prime, gamma, gamma_derivative, j0_unchecked, mellin_fermi, zeta, zeta_prime};
use crate::ComplexScalar;

/// Absolute tolerance used by [`psi`] and the G amplitudes.
pub const DEFAULT_TOL: f64 = 1e-12;
/// Largest |ζ| accepted for an argument declared to be a zero.
pub const ZERO_INPUT_LIMIT: f64 = 1e-7;
/// Norm integrals with Re(c) - 1 below this are reported as divergent.
pub const NORM_DIVERGENCE_MARGIN: f64 = 1e-2;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StateParams {
    #[serde(with = "crate::serde_complex")]
    pub s: ComplexScalar,
    #[serde(with = "crate::serde_complex")]
    pub f_const: ComplexScalar,
    #[serde(with = "crate::serde_complex")]
    pub g_const: ComplexScalar,
}

impl StateParams {
    /// f = g = 1.
    pub fn new(s: ComplexScalar) -> Result<Self> {
        if !(s.re > 0.0) || !s.im.is_finite() {
            return Err(Error::Domain {
                func: "StateParams",
                detail: format!("s = {s}; needs Re(s) > 0"),
            });
        }
        let one = Complex64::new(1.0, 0.0);
        Ok(Self {
            s,
            f_const: one,
            g_const: one,
        })
    }

    pub fn with_constants(self, f_const: ComplexScalar, g_const: ComplexScalar) -> Self {
        Self {
            f_const,
            g_const,
            ..self
        }
    }
}

/// f t^{s-1} / (1 + e^t)
pub fn amplitude_f(p: &StateParams, t: f64) -> Result<ComplexScalar> {
    if t > 0.0 {
        return Ok(p.f_const * mellin_fermi(p.s, t));
    }
    if t == 0.0 && p.s.re >= 1.0 {
        if p.s.re > 1.0 {
            return Ok(Complex64::new(0.0, 0.0));
        }
        if p.s.im == 0.0 {
            return Ok(p.f_const * 0.5);
        }
    }
    Err(Error::Domain {
        func: "amplitude_f",
        detail: format!("t = {t} is singular for s = {}", p.s),
    })
}

fn check_x(x: f64) -> Result<()> {
    if x >= 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain {
            func: "psi",
            detail: format!("x = {x}; needs x >= 0"),
        })
    }
}

/// Ψ_s(x) = ∫₀^∞ F_s(t) J₀(2√(xt)) dt.
pub fn psi(p: &StateParams, x: f64) -> Result<QuadResult> {
    psi_with_tol(p, x, DEFAULT_TOL)
}

pub fn psi_with_tol(p: &StateParams, x: f64, tol: f64) -> Result<QuadResult> {
    check_x(x)?;
    let spec = IntegrandSpec::mellin(p.s)
        .with_hankel_scale(x)
        .with_envelope(p.f_const.norm());
    let s = p.s;
    let f = p.f_const;
    integrate_semi_infinite(
        |t| {
            let kernel = if x == 0.0 { 1.0 } else { j0_unchecked(2.0 * (x * t).sqrt()) };
            f * mellin_fermi(s, t) * kernel
        },
        &spec,
        tol,
    )
}

/// Ψ̃_s(x) = e^{-x/2} Ψ_s(x).
pub fn psi_tilde(p: &StateParams, x: f64) -> Result<QuadResult> {
    check_x(x)?;
    Ok(psi(p, x)?.scale(Complex64::new((-0.5 * x).exp(), 0.0)))
}

/// ∫₀^∞ e^{-t} J₀(2√(xt)) dt, which equals e^{-x}.
pub fn hankel_exponential(x: f64, tol: f64) -> Result<QuadResult> {
    check_x(x)?;
    let spec = IntegrandSpec::mellin(Complex64::new(1.0, 0.0))
        .with_hankel_scale(x)
        .with_envelope(1.0);
    integrate_semi_infinite(
        |t| Complex64::new((-t).exp() * j0_unchecked(2.0 * (x * t).sqrt()), 0.0),
        &spec,
        tol,
    )
}

fn check_t(t: f64, func: &'static str) -> Result<()> {
    if t > 0.0 && t.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain {
            func,
            detail: format!("t = {t}; needs t > 0"),
        })
    }
}

/// t^{s-1}(1+e^t)
fn g_prefactor(s: ComplexScalar, t: f64) -> ComplexScalar {
    ((s - 1.0) * t.ln()).exp() * (1.0 + t.exp())
}

/// G_s(t) = g t^{s-1}(1+e^t) ∫_t^∞ τ^{-s}/(1+e^τ) dτ.
pub fn amplitude_g_tail(p: &StateParams, t: f64) -> Result<QuadResult> {
    check_t(t, "amplitude_g_tail")?;
    let pre = g_prefactor(p.s, t);
    let spec = IntegrandSpec::mellin(1.0 - p.s).with_envelope(1.0);
    let cfg = QuadConfig::abs(DEFAULT_TOL / pre.norm().max(1e-300));
    let s = p.s;
    let inner = integrate_from(|tau| mellin_fermi(1.0 - s, tau), t, &spec, &cfg)?;
    Ok(inner.scale(pre).scale(p.g_const))
}

fn require_zero(rho: ComplexScalar) -> Result<()> {
    let z = zeta(rho)?.norm();
    if z >= ZERO_INPUT_LIMIT {
        return Err(Error::Precondition(format!(
            "rho = {rho} is not a verified zero (|zeta| = {z:e})"
        )));
    }
    let reflected = zeta(1.0 - rho.conj())?.norm();
    if reflected >= ZERO_INPUT_LIMIT {
        return Err(Error::Precondition(format!(
            "1 - conj(rho) = {} is not a verified zero (|zeta| = {reflected:e})",
            1.0 - rho.conj()
        )));
    }
    Ok(())
}

/// -g - g t^{ρ-1}(1+e^t) ∫₀^t τ^{-ρ}/(1+e^τ) (ρ + τe^τ/(1+e^τ)) dτ.
///
/// Equal to [`amplitude_g_tail`] only when ρ is a zero; `p.s` is checked.
pub fn amplitude_g_rewritten(p: &StateParams, t: f64) -> Result<QuadResult> {
    check_t(t, "amplitude_g_rewritten")?;
    require_zero(p.s)?;
    let rho = p.s;
    let pre = g_prefactor(rho, t);
    let spec = IntegrandSpec::mellin(1.0 - rho);
    let cfg = QuadConfig::abs(DEFAULT_TOL / pre.norm().max(1e-300));
    let inner = integrate_to(
        |tau| {
            // τ e^τ/(1+e^τ) = τ/(1+e^{-τ})
            mellin_fermi(1.0 - rho, tau) * (rho + tau / (1.0 + (-tau).exp()))
        },
        t,
        &spec,
        &cfg,
    )?;
    let mut r = inner.scale(-pre);
    r.value -= 1.0;
    Ok(r.scale(p.g_const))
}

/// ∫₀^∞ τ^{-ρ}/(1+e^τ) dτ, which vanishes exactly when ζ(1-ρ) = 0.
pub fn reflected_fermi_integral(rho: ComplexScalar, tol: f64) -> Result<QuadResult> {
    let s = 1.0 - rho;
    if !(s.re > 0.0) {
        return Err(Error::Domain {
            func: "reflected_fermi_integral",
            detail: format!("rho = {rho}; needs Re(rho) < 1"),
        });
    }
    integrate_semi_infinite(|t| mellin_fermi(s, t), &IntegrandSpec::mellin(s).with_envelope(1.0), tol)
}

/// Relative central-difference step for the ODE residuals.
const ODE_STEP: f64 = 2e-3;

fn ode_operator<F>(u: F, s: ComplexScalar, t: f64, sign: f64) -> Result<ComplexScalar>
where
    F: Fn(f64) -> Result<ComplexScalar>,
{
    let h = ODE_STEP * t / (1.0 + s.norm());
    let (plus, minus, plus2, minus2) = (u(t + h)?, u(t - h)?, u(t + 2.0 * h)?, u(t - 2.0 * h)?);
    let du = (8.0 * (plus - minus) - (plus2 - minus2)) / (12.0 * h);
    let v = u(t)?;
    let i = Complex64::i();
    let weight = t / (1.0 + (-t).exp());
    Ok(-i * t * du - i * 0.5 * v + sign * i * weight * v - i * (0.5 - s) * v)
}

/// (-it d/dt - i/2 - it/(1+e^{-t}) - i(1/2-s)) F_s at t; zero for the exact F.
pub fn ode_operator_f(p: &StateParams, t: f64) -> Result<ComplexScalar> {
    check_t(t, "ode_operator_f")?;
    ode_operator(|x| amplitude_f(p, x), p.s, t, -1.0)
}

/// (-it d/dt - i/2 + it/(1+e^{-t}) - i(1/2-s)) G_s at t; equals i g for the tail form.
pub fn ode_operator_g(p: &StateParams, t: f64) -> Result<ComplexScalar> {
    check_t(t, "ode_operator_g")?;
    ode_operator(|x| Ok(amplitude_g_tail(p, x)?.value), p.s, t, 1.0)
}

/// ∫₀^∞ t^{c-2}/(1+e^t)² dt.
pub fn norm_integral(c: ComplexScalar) -> Result<QuadResult> {
    let margin = c.re - 1.0;
    if !(margin >= NORM_DIVERGENCE_MARGIN) {
        return Err(Error::Divergence(format!(
            "t^(c-2) with c = {c} is not integrable at t = 0 to working precision"
        )));
    }
    let s = c - 1.0;
    let spec = IntegrandSpec::mellin(s).with_decay_rate(2.0).with_envelope(1.0);
    let scale = norm_series_oracle(s)?.norm().max(1e-300);
    integrate_from(
        |t| {
            let fermi = mellin_fermi(Complex64::new(1.0, 0.0), t).re;
            mellin_fermi(s, t) * fermi
        },
        0.0,
        &spec,
        &QuadConfig::abs(1e-13 * scale),
    )
}

/// Γ(s)(η(s) - η(s-1)) = ∫₀^∞ t^{s-1}/(1+e^t)² dt.
pub fn norm_series_oracle(s: ComplexScalar) -> Result<ComplexScalar> {
    if !(s.re > 0.0) {
        return Err(Error::Domain {
            func: "norm_series_oracle",
            detail: format!("s = {s}; needs Re(s) > 0"),
        });
    }
    Ok(gamma(s)? * (eta(s)? - eta(s - 1.0)?))
}

/// Radius around c = 1 inside which the (2^c - 2)ζ(c) factor is taken as 2^c η(c).
pub const NORM_LIMIT_RADIUS: f64 = 1e-3;

/// 2^{-c} Γ(1+c) ((2^c - 1) ζ(1+c) - (2^c - 2) ζ(c)).
pub fn paper_norm_closed_form(c: ComplexScalar) -> Result<ComplexScalar> {
    let two_c = (c * std::f64::consts::LN_2).exp();
    let second = if (c - 1.0).norm() < NORM_LIMIT_RADIUS {
        two_c * eta(c)?
    } else {
        (two_c - 2.0) * zeta(c)?
    };
    Ok(gamma(1.0 + c)? / two_c * ((two_c - 1.0) * zeta(1.0 + c)? - second))
}

/// One entry ⟨Φ_row|Ψ_col⟩ of the pairing matrix.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GramEntry {
    #[serde(with = "crate::serde_complex")]
    pub rho_row: ComplexScalar,
    #[serde(with = "crate::serde_complex")]
    pub rho_col: ComplexScalar,
    #[serde(with = "crate::serde_complex")]
    pub value: ComplexScalar,
    pub abs_err: f64,
}

/// The computed pairing equals `PAIRING_SIGN · (1 - 2^{1-ρ}) Γ(ρ) ζ'(ρ) · g* f` on the diagonal.
pub const PAIRING_SIGN: f64 = -1.0;

/// (1 - 2^{1-ρ}) Γ(ρ) ζ'(ρ)
pub fn gram_diagonal_closed_form(rho: ComplexScalar) -> Result<ComplexScalar> {
    Ok(eta_factor(rho) * gamma(rho)? * zeta_prime(rho)?)
}

/// -d/dρ [Γ(ρ) η(ρ)] with Γ' by central differences and η' by the differentiated series.
pub fn gram_diagonal_by_parts(rho: ComplexScalar) -> Result<ComplexScalar> {
    Ok(-(gamma_derivative(rho)? * eta(rho)? + gamma(rho)? * eta_prime(rho)?))
}

/// Angle off the imaginary axis of the ray t = r e^{iθ} used for the pairing.
pub const GRAM_RAY_OFFSET: f64 = 0.4;
const GRAM_R_MAX: f64 = 130.0;
const GRAM_U_MIN: f64 = 1e-14;
/// Relative accuracy requested from the pairing quadrature.
pub const GRAM_TOL: f64 = 1e-10;

struct Ray {
    dir: Complex64,
    ln_dir: Complex64,
    outer_exp: Complex64,
    inner_exp: Complex64,
}

impl Ray {
    fn new(rho_row: ComplexScalar, rho_col: ComplexScalar) -> Self {
        let theta = FRAC_PI_2 - GRAM_RAY_OFFSET;
        Self {
            dir: Complex64::from_polar(1.0, theta),
            ln_dir: Complex64::new(0.0, theta),
            outer_exp: rho_row.conj() + rho_col - 2.0,
            inner_exp: -rho_row.conj(),
        }
    }

    /// t = u² e^{iθ}; returns (t, dt/du).
    fn point(&self, u: f64) -> (Complex64, Complex64) {
        (self.dir * (u * u), self.dir * (2.0 * u))
    }

    fn power(&self, exponent: Complex64, u: f64) -> Complex64 {
        (exponent * (2.0 * u.ln() + self.ln_dir)).exp()
    }

    fn outer(&self, u: f64) -> Complex64 {
        let (_, dt) = self.point(u);
        self.power(self.outer_exp, u) * dt
    }

    fn inner(&self, u: f64) -> Complex64 {
        let (t, dt) = self.point(u);
        // 1/(1+e^t) with Re t > 0
        let e = (-t).exp();
        self.power(self.inner_exp, u) * e / (1.0 + e) * dt
    }

    fn breakpoints(&self, rho_row: ComplexScalar, rho_col: ComplexScalar) -> Vec<f64> {
        let freq = 2.0 * rho_row.im.abs().max(rho_col.im.abs()).max((rho_col.im - rho_row.im).abs()) + 1.0;
        let step = (2.0 * PI / freq).min(std::f64::consts::LN_2);
        let mut pts = geometric_breakpoints(GRAM_U_MIN, 1.0, (-step).exp());
        let u_max = GRAM_R_MAX.sqrt();
        let h = (PI / u_max).min(0.5);
        let mut u = 1.0;
        while u < u_max {
            u = (u + h).min(u_max);
            pts.push(u);
        }
        pts
    }
}

fn gram_config(rho_row: ComplexScalar, rho_col: ComplexScalar, rel: f64) -> Result<QuadConfig> {
    let scale = (gamma(rho_row)?.norm() * gamma(rho_col)?.norm()).sqrt();
    Ok(QuadConfig::abs(rel * scale).with_max_evals(40_000_000))
}

/// ⟨Φ_row|Ψ_col⟩ = g* f ∫₀^∞ t^{ρ*+ρ'-2} ∫₀^t τ^{-ρ*}/(1+e^τ) dτ dt.
///
/// At zeros the inner integral is replaced by -∫_t^∞, and both integrals
/// are taken along the ray arg t = π/2 - [`GRAM_RAY_OFFSET`], where the
/// t^{iτ} factors no longer cancel against each other.
pub fn gram(rho_row: ComplexScalar, rho_col: ComplexScalar) -> Result<GramEntry> {
    gram_with(&StateParams::new(rho_row)?, &StateParams::new(rho_col)?, GRAM_TOL)
}

pub fn gram_with(row: &StateParams, col: &StateParams, rel_tol: f64) -> Result<GramEntry> {
    pairing(row, col, rel_tol, InnerRange::ToUpper)
}

/// The same pairing with the inner integral accumulated from 0 as printed.
pub fn gram_head_route(row: &StateParams, col: &StateParams, rel_tol: f64) -> Result<GramEntry> {
    pairing(row, col, rel_tol, InnerRange::FromLower)
}

fn pairing(row: &StateParams, col: &StateParams, rel_tol: f64, range: InnerRange) -> Result<GramEntry> {
    let (rho_row, rho_col) = (row.s, col.s);
    require_zero(rho_row)?;
    require_zero(rho_col)?;
    let ray = Ray::new(rho_row, rho_col);
    let pts = ray.breakpoints(rho_row, rho_col);
    let cfg = gram_config(rho_row, rho_col, rel_tol)?;
    let r = integrate_nested(|u| ray.outer(u), |u| ray.inner(u), &pts, range, &cfg)?;
    let sign = match range {
        InnerRange::ToUpper => -1.0,
        InnerRange::FromLower => 1.0,
    };
    // t^{a} dt over the ray contributes e^{iθ a}; included in Ray::power and dt/du
    let factor = row.g_const.conj() * col.f_const * sign;
    let r = r.scale(factor);
    Ok(GramEntry {
        rho_row,
        rho_col,
        value: r.value,
        abs_err: r.abs_err,
    })
}

/// Plain panel quadrature of the tail integrand along the same ray; test oracle helper.
pub fn ray_tail(rho_row: ComplexScalar, u: f64, tol: f64) -> Result<QuadResult> {
    let ray = Ray::new(rho_row, rho_row);
    let u_max = GRAM_R_MAX.sqrt();
    if u >= u_max {
        return Ok(QuadResult {
            value: Complex64::new(0.0, 0.0),
            abs_err: 0.0,
            evals: 0,
        });
    }
    let n = ((u_max - u) / 0.25).ceil().max(1.0) as usize;
    let pts: Vec<f64> = (0..=n).map(|k| u + (u_max - u) * k as f64 / n as f64).collect();
    integrate_panels(|x| ray.inner(x), &pts, &QuadConfig::abs(tol))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::LN_2;

    const RHO1: Complex64 = Complex64::new(0.5, 14.134_725_141_734_693);

    fn params(s: Complex64) -> StateParams {
        StateParams::new(s).unwrap()
    }

    #[test]
    fn amplitude_values() {
        let one = params(Complex64::new(1.0, 0.0));
        assert_eq!(amplitude_f(&one, 0.0).unwrap(), Complex64::new(0.5, 0.0));
        let two = params(Complex64::new(2.0, 0.0));
        let v = amplitude_f(&two, 1.0).unwrap();
        assert!((v.re - 1.0 / (1.0 + 1f64.exp())).abs() < 1e-16);
        assert!(amplitude_f(&params(Complex64::new(0.5, 3.0)), 0.0).is_err());
        let on_line = params(Complex64::new(0.5, 7.0));
        for t in [0.1f64, 1.0, 5.0] {
            let expect = t.powf(-0.5) / (1.0 + t.exp());
            assert!((amplitude_f(&on_line, t).unwrap().norm() - expect).abs() < 1e-15 * expect.max(1.0));
        }
    }

    #[test]
    fn params_domain() {
        assert!(StateParams::new(Complex64::new(0.0, 1.0)).is_err());
        assert!(StateParams::new(Complex64::new(-1.0, 0.0)).is_err());
    }

    #[test]
    fn psi_at_origin() {
        let r = psi(&params(Complex64::new(1.0, 0.0)), 0.0).unwrap();
        assert!((r.value.re - LN_2).abs() < 1e-12);
        let r = psi(&params(RHO1), 0.0).unwrap();
        assert!(r.value.norm() < 1e-7);
        assert!(psi(&params(RHO1), -1.0).is_err());
    }

    #[test]
    fn psi_tilde_scaling() {
        let p = params(Complex64::new(1.0, 0.0));
        let a = psi(&p, 2.0).unwrap().value;
        let b = psi_tilde(&p, 2.0).unwrap().value;
        assert!((b - a * (-1f64).exp()).norm() < 1e-15);
    }

    #[test]
    fn hankel_exponential_small_grid() {
        for x in [0.0, 0.5, 3.0, 10.0] {
            let r = hankel_exponential(x, 1e-11).unwrap();
            assert!((r.value.re - (-x).exp()).abs() < 1e-9, "x = {x}");
        }
    }

    #[test]
    fn g_tail_at_one() {
        let p = params(Complex64::new(1.0, 0.0));
        let g = amplitude_g_tail(&p, 1.0).unwrap().value;
        // independent: ∫_1^40 τ^{-1}/(1+e^τ) by plain panels
        let pts: Vec<f64> = (0..=156).map(|k| 1.0 + 0.25 * k as f64).collect();
        let brute = integrate_panels(
            |x| Complex64::new(1.0 / (x * (1.0 + x.exp())), 0.0),
            &pts,
            &QuadConfig::abs(1e-15),
        )
        .unwrap()
        .value
            * (1.0 + 1f64.exp());
        assert!((g - brute).norm() < 1e-9);
    }

    #[test]
    fn g_linear_in_constant() {
        let p = params(RHO1);
        let q = p.with_constants(Complex64::new(1.0, 0.0), Complex64::new(2.0, 0.0));
        let a = amplitude_g_tail(&p, 2.0).unwrap().value;
        let b = amplitude_g_tail(&q, 2.0).unwrap().value;
        assert!((b - 2.0 * a).norm() < 1e-12 * a.norm());
    }

    #[test]
    fn rewritten_needs_a_zero() {
        let p = params(Complex64::new(0.5, 10.0));
        assert!(matches!(amplitude_g_rewritten(&p, 1.0), Err(Error::Precondition(_))));
    }

    #[test]
    fn norm_values() {
        let r = norm_integral(Complex64::new(2.0, 0.0)).unwrap();
        assert!((r.value.re - (LN_2 - 0.5)).abs() < 1e-12);
        let r = norm_integral(Complex64::new(3.0, 0.0)).unwrap();
        assert!((r.value.re - (PI * PI / 12.0 - LN_2)).abs() < 1e-12);
        assert!(matches!(norm_integral(Complex64::new(1.0 + 1e-3, 0.0)), Err(Error::Divergence(_))));
        assert!(matches!(norm_integral(Complex64::new(1.0, 14.0)), Err(Error::Divergence(_))));
    }

    #[test]
    fn closed_form_limit_branch() {
        let expect = 0.5 * (PI * PI / 6.0 - 2.0 * LN_2);
        let v = paper_norm_closed_form(Complex64::new(1.0, 0.0)).unwrap();
        assert!((v.re - expect).abs() < 1e-13);
        let near = paper_norm_closed_form(Complex64::new(1.0 + 2e-3, 0.0)).unwrap();
        assert!((near.re - expect).abs() < 1e-2);
    }
}
