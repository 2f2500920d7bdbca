use num_complex::Complex64;

use super::adaptive::{integrate_panels, CompensatedSum, QuadConfig, QuadResult};
use super::gauss::rule;
use crate::error::{Error, Result};

/// Which part of the interval the inner integral covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InnerRange {
    /// J(t) = ∫_a^t inner
    FromLower,
    /// J(t) = ∫_t^b inner
    ToUpper,
}

const INNER_ORDER: usize = 10;
const MAX_ROUNDS: usize = 40;

/// ∫_a^b outer(t) J(t) dt with a = first and b = last breakpoint.
///
/// J is accumulated in a single sweep over the sorted outer nodes, one
/// short inner quadrature per gap, instead of being recomputed from the
/// endpoint at every node. Outer panels are refined by whole-vs-halves
/// comparison until the summed estimate meets the target.
pub fn integrate_nested<O, I>(
    outer: O,
    inner: I,
    breakpoints: &[f64],
    range: InnerRange,
    cfg: &QuadConfig,
) -> Result<QuadResult>
where
    O: Fn(f64) -> Complex64,
    I: Fn(f64) -> Complex64,
{
    if breakpoints.len() < 2 || breakpoints.windows(2).any(|p| !(p[0] < p[1])) {
        return Err(Error::Invalid(
            "breakpoints must be strictly increasing".into(),
        ));
    }
    let a = breakpoints[0];
    let b = *breakpoints.last().unwrap();
    let order = cfg.order;
    let gauss = rule(order);
    let mut panels: Vec<(f64, f64)> = breakpoints.windows(2).map(|w| (w[0], w[1])).collect();
    let mut evals = 0usize;
    let mut last_value = Complex64::new(0.0, 0.0);
    let mut last_err = f64::INFINITY;

    for _round in 0..MAX_ROUNDS {
        // three node sets per panel: whole, left half, right half
        let mut nodes: Vec<(f64, f64, usize, u8)> = Vec::with_capacity(panels.len() * 3 * order);
        for (pi, &(lo, hi)) in panels.iter().enumerate() {
            let mid = 0.5 * (lo + hi);
            for (kind, (x0, x1)) in [(lo, hi), (lo, mid), (mid, hi)].into_iter().enumerate() {
                let half = 0.5 * (x1 - x0);
                let centre = 0.5 * (x0 + x1);
                for (x, w) in gauss.nodes.iter().zip(&gauss.weights) {
                    nodes.push((centre + half * x, w * half, pi, kind as u8));
                }
            }
        }
        nodes.sort_by(|x, y| x.0.total_cmp(&y.0));

        let outer_vals: Vec<Complex64> = nodes.iter().map(|n| outer(n.0)).collect();
        evals += nodes.len();
        let outer_abs: f64 = nodes
            .iter()
            .zip(&outer_vals)
            .filter(|(n, _)| n.3 == 0)
            .map(|(n, o)| n.1 * o.norm())
            .sum();

        let seg_cfg = QuadConfig {
            abs_tol: cfg.abs_tol.max(1e-300) / (10.0 * (1.0 + outer_abs) * nodes.len() as f64),
            rel_tol: 0.0,
            order: INNER_ORDER,
            ..*cfg
        };
        let mut cumulative = vec![Complex64::new(0.0, 0.0); nodes.len()];
        let mut inner_err = 0.0;
        let mut run = CompensatedSum::default();
        let mut step = |lo: f64, hi: f64, run: &mut CompensatedSum, inner_err: &mut f64| -> Result<()> {
            if hi > lo {
                let r = integrate_panels(&inner, &[lo, hi], &seg_cfg)?;
                evals += r.evals;
                *inner_err += r.abs_err;
                run.add(r.value);
            }
            Ok(())
        };
        match range {
            InnerRange::FromLower => {
                let mut prev = a;
                for (i, n) in nodes.iter().enumerate() {
                    step(prev, n.0, &mut run, &mut inner_err)?;
                    cumulative[i] = run.value();
                    prev = n.0;
                }
            }
            InnerRange::ToUpper => {
                let mut prev = b;
                for (i, n) in nodes.iter().enumerate().rev() {
                    step(n.0, prev, &mut run, &mut inner_err)?;
                    cumulative[i] = run.value();
                    prev = n.0;
                }
            }
        }

        let mut sums = vec![[CompensatedSum::default(); 3]; panels.len()];
        let mut product_abs = 0.0;
        for ((n, o), j) in nodes.iter().zip(&outer_vals).zip(&cumulative) {
            let term = *o * *j * n.1;
            if n.3 == 0 {
                product_abs += term.norm();
            }
            sums[n.2][n.3 as usize].add(term);
        }
        let mut total = CompensatedSum::default();
        let mut errs = Vec::with_capacity(panels.len());
        for s in &sums {
            let refined = s[1].value() + s[2].value();
            total.add(refined);
            errs.push((s[0].value() - refined).norm());
        }
        let value = total.value();
        let quad_err: f64 = errs.iter().sum();
        let err = quad_err + outer_abs * inner_err;
        last_value = value;
        last_err = err;
        let target = cfg.target(value);
        if err <= target || quad_err <= 64.0 * f64::EPSILON * product_abs {
            return Ok(QuadResult {
                value,
                abs_err: err,
                evals,
            });
        }
        if evals >= cfg.max_evals {
            break;
        }
        let share = target / panels.len() as f64;
        let mut next = Vec::with_capacity(panels.len() * 2);
        for (&(lo, hi), &e) in panels.iter().zip(&errs) {
            if e > share && (hi - lo) > 1e-13 * hi.abs().max(lo.abs()) {
                let mid = 0.5 * (lo + hi);
                next.push((lo, mid));
                next.push((mid, hi));
            } else {
                next.push((lo, hi));
            }
        }
        if next.len() == panels.len() {
            break;
        }
        panels = next;
    }
    Err(Error::Convergence {
        estimate: last_value,
        abs_err: last_err,
        evals,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one(_: f64) -> Complex64 {
        Complex64::new(1.0, 0.0)
    }

    #[test]
    fn triangle_area() {
        let r = integrate_nested(one, one, &[0.0, 1.0], InnerRange::FromLower, &QuadConfig::abs(1e-13))
            .unwrap();
        assert!((r.value.re - 0.5).abs() < 1e-13);
        let r = integrate_nested(one, one, &[0.0, 1.0], InnerRange::ToUpper, &QuadConfig::abs(1e-13))
            .unwrap();
        assert!((r.value.re - 0.5).abs() < 1e-13);
    }

    #[test]
    fn exponential_pair() {
        // ∫_0^∞ e^{-t} ∫_0^t e^{-τ} dτ dt = 1/2, truncated at 40
        let e = |t: f64| Complex64::new((-t).exp(), 0.0);
        let pts: Vec<f64> = (0..=40).map(|k| k as f64).collect();
        let r = integrate_nested(e, e, &pts, InnerRange::FromLower, &QuadConfig::abs(1e-12)).unwrap();
        assert!((r.value.re - 0.5).abs() < 1e-12);
    }

    #[test]
    fn tail_direction_matches_closed_form() {
        // ∫_0^1 t ∫_t^1 τ dτ dt = ∫_0^1 t (1 - t²)/2 dt = 1/8
        let id = |t: f64| Complex64::new(t, 0.0);
        let r = integrate_nested(id, id, &[0.0, 1.0], InnerRange::ToUpper, &QuadConfig::abs(1e-14))
            .unwrap();
        assert!((r.value.re - 0.125).abs() < 1e-14);
    }
}
