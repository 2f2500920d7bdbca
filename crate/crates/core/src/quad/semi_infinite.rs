use std::f64::consts::PI;

use num_complex::Complex64;

use super::adaptive::{geometric_breakpoints, integrate_panels, QuadConfig, QuadResult};
use crate::error::{Error, Result};
use crate::ComplexScalar;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Decay {
    /// |f(t)| ≲ C t^p e^{-rate t} for large t.
    Exponential { rate: f64 },
    None,
}

/// What the integrator needs to know about `f` on (0, ∞).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegrandSpec {
    /// σ in f(t) ~ t^{σ-1} as t → 0.
    pub endpoint_exponent: f64,
    /// τ in a t^{iτ} factor; sets the log-scale oscillation near 0.
    pub log_frequency: f64,
    pub decay: Decay,
    pub oscillatory: bool,
    /// p in the tail envelope C t^p e^{-rt}.
    pub tail_power: f64,
    /// x in a J_0(2√(xt)) factor; 0 when absent.
    pub hankel_scale: f64,
    /// C in the tail envelope; sampled from f when `None`.
    pub envelope_scale: Option<f64>,
}

impl IntegrandSpec {
    /// Spec for t^{s-1} g(t) with g smooth, bounded and decaying like e^{-t}.
    pub fn mellin(s: ComplexScalar) -> Self {
        Self {
            endpoint_exponent: s.re,
            log_frequency: s.im,
            decay: Decay::Exponential { rate: 1.0 },
            oscillatory: s.im != 0.0,
            tail_power: s.re - 1.0,
            hankel_scale: 0.0,
            envelope_scale: None,
        }
    }

    pub fn with_decay_rate(self, rate: f64) -> Self {
        Self {
            decay: Decay::Exponential { rate },
            ..self
        }
    }

    pub fn with_hankel_scale(self, x: f64) -> Self {
        Self {
            hankel_scale: x,
            oscillatory: self.oscillatory || x > 0.0,
            ..self
        }
    }

    pub fn with_envelope(self, scale: f64) -> Self {
        Self {
            envelope_scale: Some(scale),
            ..self
        }
    }
}

/// Bound on ∫_T^∞ C t^p e^{-rt} dt.
fn tail_bound(c: f64, p: f64, r: f64, t: f64) -> f64 {
    let denom = r - p.max(0.0) / t;
    if denom <= 0.0 {
        return f64::INFINITY;
    }
    c * t.powf(p) * (-r * t).exp() / denom
}

/// Smallest T ≥ start (to ~1%) with tail bound ≤ tol.
fn truncation_point(c: f64, p: f64, r: f64, start: f64, tol: f64) -> f64 {
    let mut lo = start.max(1e-3);
    if tail_bound(c, p, r, lo) <= tol {
        return lo;
    }
    let mut hi = lo * 2.0 + 1.0;
    while tail_bound(c, p, r, hi) > tol {
        lo = hi;
        hi *= 2.0;
        if hi > 1e6 {
            return hi;
        }
    }
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if tail_bound(c, p, r, mid) > tol {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-2 * hi {
            break;
        }
    }
    hi
}

/// Breakpoints on [lo, hi] spaced to resolve the declared oscillations.
fn oscillation_breakpoints(lo: f64, hi: f64, spec: &IntegrandSpec) -> Vec<f64> {
    let mut pts = vec![lo];
    let mut t = lo;
    let tau = spec.log_frequency.abs();
    let x = spec.hankel_scale;
    while t < hi {
        let mut h: f64 = 1.0;
        if tau > 0.0 {
            h = h.min(2.0 * PI * t.max(1e-3) / tau);
        }
        if x > 0.0 {
            h = h.min(PI * (t.max(1e-3) / x).sqrt());
        }
        t = (t + h.max(1e-3)).min(hi);
        pts.push(t);
    }
    pts
}

/// Upper cut [`integrate_from`] uses for an absolute tolerance `tol` and a
/// known envelope scale; `None` without exponential decay.
pub fn truncation_upper(spec: &IntegrandSpec, lower: f64, envelope: f64, tol: f64) -> Option<f64> {
    match spec.decay {
        Decay::Exponential { rate } if rate > 0.0 => {
            Some(truncation_point(envelope, spec.tail_power, rate, lower + 1.0, tol / 10.0))
        }
        _ => None,
    }
}

/// ∫_0^∞ f(t) dt with absolute tolerance `tol`.
pub fn integrate_semi_infinite<F>(f: F, spec: &IntegrandSpec, tol: f64) -> Result<QuadResult>
where
    F: Fn(f64) -> Complex64,
{
    integrate_from(f, 0.0, spec, &QuadConfig::abs(tol))
}

/// ∫_lower^∞ f(t) dt.
///
/// The upper limit is cut at the point where the declared envelope bound
/// falls below a tenth of the tolerance. When `lower == 0` the piece
/// [0, 1] is mapped by t = u^{1/σ} (σ capped at 1), which turns the
/// t^{σ-1} endpoint behaviour into a bounded integrand, and is graded
/// geometrically towards 0 to follow any t^{iτ} oscillation.
pub fn integrate_from<F>(f: F, lower: f64, spec: &IntegrandSpec, cfg: &QuadConfig) -> Result<QuadResult>
where
    F: Fn(f64) -> Complex64,
{
    let rate = match spec.decay {
        Decay::Exponential { rate } if rate > 0.0 => rate,
        _ => {
            return Err(Error::Invalid(
                "semi-infinite integration needs exponential decay".into(),
            ))
        }
    };
    if !(lower >= 0.0) {
        return Err(Error::Invalid(format!("lower limit {lower} must be >= 0")));
    }
    let sigma = spec.endpoint_exponent;
    if lower == 0.0 && !(sigma > 0.0) {
        return Err(Error::Divergence(format!(
            "endpoint exponent {sigma} <= 0 is not integrable at t = 0"
        )));
    }
    let p = spec.tail_power;
    let mut evals = 0usize;

    let envelope = match spec.envelope_scale {
        Some(c) => c,
        None => {
            let start = lower.max(0.5);
            let mut c: f64 = 0.0;
            for k in 0..32 {
                let t = start + 0.5 * k as f64;
                c = c.max(f(t).norm() * (rate * t).exp() / t.powf(p));
            }
            evals += 32;
            2.0 * c + f64::MIN_POSITIVE
        }
    };

    let goal = if cfg.abs_tol > 0.0 {
        cfg.abs_tol
    } else {
        let scale = envelope * lower.max(1.0).powf(p) * (-rate * lower).exp();
        (cfg.rel_tol * scale).max(f64::MIN_POSITIVE)
    };
    let trunc_tol = goal / 10.0;
    let upper = truncation_point(envelope, p, rate, lower + 1.0, trunc_tol);
    let mut result = QuadResult {
        value: Complex64::new(0.0, 0.0),
        abs_err: tail_bound(envelope, p, rate, upper),
        evals,
    };
    let piece_cfg = QuadConfig {
        abs_tol: goal / 3.0,
        ..*cfg
    };

    let body_start = if lower == 0.0 { 1.0_f64.min(upper) } else { lower };
    if lower == 0.0 {
        result = result.combine(integrate_head(&f, body_start, spec, &piece_cfg, trunc_tol)?);
    }
    if upper > body_start {
        let pts = oscillation_breakpoints(body_start, upper, spec);
        result = result.combine(integrate_panels(&f, &pts, &piece_cfg)?);
    }
    Ok(result)
}

/// ∫_0^upper f(t) dt for f with the endpoint behaviour declared in `spec`.
///
/// `cfg.abs_tol` must be positive; decay information in `spec` is ignored.
pub fn integrate_to<F>(f: F, upper: f64, spec: &IntegrandSpec, cfg: &QuadConfig) -> Result<QuadResult>
where
    F: Fn(f64) -> Complex64,
{
    if !(upper > 0.0) {
        return Err(Error::Invalid(format!("upper limit {upper} must be > 0")));
    }
    if !(spec.endpoint_exponent > 0.0) {
        return Err(Error::Divergence(format!(
            "endpoint exponent {} <= 0 is not integrable at t = 0",
            spec.endpoint_exponent
        )));
    }
    if !(cfg.abs_tol > 0.0) {
        return Err(Error::Invalid("integrate_to needs an absolute tolerance".into()));
    }
    let piece_cfg = QuadConfig {
        abs_tol: cfg.abs_tol / 3.0,
        ..*cfg
    };
    let head_end = upper.min(1.0);
    let mut r = integrate_head(&f, head_end, spec, &piece_cfg, cfg.abs_tol / 10.0)?;
    if upper > head_end {
        let pts = oscillation_breakpoints(head_end, upper, spec);
        r = r.combine(integrate_panels(&f, &pts, &piece_cfg)?);
    }
    Ok(r)
}

fn integrate_head<F>(
    f: &F,
    head_end: f64,
    spec: &IntegrandSpec,
    cfg: &QuadConfig,
    cut_tol: f64,
) -> Result<QuadResult>
where
    F: Fn(f64) -> Complex64,
{
    let sigma = spec.endpoint_exponent.min(1.0);
    let tau = spec.log_frequency.abs();
    if sigma >= 1.0 && tau == 0.0 {
        return integrate_panels(f, &[0.0, head_end], cfg);
    }
    let inv = 1.0 / sigma;
    let mapped = |u: f64| -> Complex64 {
        let t = u.powf(inv);
        f(t) * (inv * u.powf(inv - 1.0))
    };
    let u_end = head_end.powf(sigma);
    // the mapped integrand is bounded near 0; estimate its size there
    let mut bound: f64 = 0.0;
    let mut u = u_end;
    for _ in 0..48 {
        u *= 0.5;
        bound = bound.max(mapped(u).norm());
    }
    let u_min = (cut_tol / (2.0 * bound.max(1e-300))).min(0.5 * u_end).max(1e-300);
    // at most about one t^{iτ} period (in u) per panel
    let step = if tau > 0.0 {
        (2.0 * std::f64::consts::PI * sigma / tau).min(std::f64::consts::LN_2)
    } else {
        std::f64::consts::LN_2
    };
    let pts = geometric_breakpoints(u_min, u_end, (-step).exp());
    let mut r = integrate_panels(mapped, &pts, cfg)?;
    r.abs_err += bound * u_min;
    r.evals += 48;
    Ok(r)
}
