use std::cmp::Ordering;
use std::collections::BinaryHeap;

use num_complex::Complex64;

use super::gauss::rule;
use crate::error::{Error, Result};
use crate::ComplexScalar;

/// Outcome of a quadrature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: ComplexScalar,
    pub abs_err: f64,
    pub evals: usize,
}

impl QuadResult {
    pub fn scale(self, factor: ComplexScalar) -> Self {
        Self {
            value: self.value * factor,
            abs_err: self.abs_err * factor.norm(),
            evals: self.evals,
        }
    }

    pub fn combine(self, other: Self) -> Self {
        Self {
            value: self.value + other.value,
            abs_err: self.abs_err + other.abs_err,
            evals: self.evals + other.evals,
        }
    }
}

/// Tolerances and budget for the adaptive integrators. A panel set is
/// accepted once the summed error estimate is at most
/// `max(abs_tol, rel_tol * |value|)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_evals: usize,
    /// Gauss-Legendre points per panel.
    pub order: usize,
}

impl Default for QuadConfig {
    fn default() -> Self {
        Self {
            abs_tol: 1e-12,
            rel_tol: 0.0,
            max_evals: 4_000_000,
            order: 20,
        }
    }
}

impl QuadConfig {
    pub fn abs(tol: f64) -> Self {
        Self {
            abs_tol: tol,
            ..Self::default()
        }
    }

    pub fn rel(tol: f64) -> Self {
        Self {
            abs_tol: 0.0,
            rel_tol: tol,
            ..Self::default()
        }
    }

    pub fn with_abs_tol(self, abs_tol: f64) -> Self {
        Self { abs_tol, ..self }
    }

    pub fn with_max_evals(self, max_evals: usize) -> Self {
        Self { max_evals, ..self }
    }

    pub(crate) fn target(&self, value: ComplexScalar) -> f64 {
        self.abs_tol.max(self.rel_tol * value.norm())
    }
}

/// Neumaier-compensated complex accumulator.
#[derive(Debug, Default, Clone, Copy)]
pub(crate) struct CompensatedSum {
    sum: Complex64,
    comp: Complex64,
}

fn neumaier(sum: f64, comp: &mut f64, x: f64) -> f64 {
    let t = sum + x;
    if sum.abs() >= x.abs() {
        *comp += (sum - t) + x;
    } else {
        *comp += (x - t) + sum;
    }
    t
}

impl CompensatedSum {
    pub fn add(&mut self, x: Complex64) {
        self.sum.re = neumaier(self.sum.re, &mut self.comp.re, x.re);
        self.sum.im = neumaier(self.sum.im, &mut self.comp.im, x.im);
    }

    pub fn value(&self) -> Complex64 {
        self.sum + self.comp
    }
}

/// One Gauss-Legendre application: (value, Σ|w f|).
pub(crate) fn gauss_panel<F>(f: &F, a: f64, b: f64, order: usize) -> (Complex64, f64)
where
    F: Fn(f64) -> Complex64,
{
    let r = rule(order);
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let mut acc = CompensatedSum::default();
    let mut abs_acc = 0.0;
    for (x, w) in r.nodes.iter().zip(&r.weights) {
        let v = f(mid + half * x) * (w * half);
        abs_acc += v.norm();
        acc.add(v);
    }
    (acc.value(), abs_acc)
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    /// Gauss value on [a, mid] and [mid, b].
    left: Complex64,
    right: Complex64,
    err: f64,
    /// 64ε Σ|w f| over the panel.
    floor: f64,
    settled: bool,
}

impl Panel {
    fn value(&self) -> Complex64 {
        self.left + self.right
    }
}

fn evaluate_panel<F>(f: &F, a: f64, b: f64, whole: Complex64, order: usize) -> Panel
where
    F: Fn(f64) -> Complex64,
{
    let mid = 0.5 * (a + b);
    let (left, abs_l) = gauss_panel(f, a, mid, order);
    let (right, abs_r) = gauss_panel(f, mid, b, order);
    let diff = (whole - left - right).norm();
    let floor = 64.0 * f64::EPSILON * (abs_l + abs_r);
    let too_narrow = (b - a) <= 1e-13 * a.abs().max(b.abs()).max(f64::MIN_POSITIVE);
    let settled = diff <= floor || too_narrow;
    Panel {
        a,
        b,
        left,
        right,
        err: if settled { diff.max(floor) } else { diff },
        floor,
        settled,
    }
}

#[derive(Debug, PartialEq)]
struct HeapItem {
    err: f64,
    index: usize,
}

impl Eq for HeapItem {}

impl Ord for HeapItem {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err
            .total_cmp(&other.err)
            .then_with(|| other.index.cmp(&self.index))
    }
}

impl PartialOrd for HeapItem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Globally adaptive bisection starting from the given breakpoints.
///
/// Each panel carries the Gauss value on its two halves; the difference
/// from the whole-panel value is the (pessimistic) error estimate. The
/// worst panel is bisected until the summed estimate meets the target.
/// Panels whose estimate is at the roundoff floor are never split.
pub fn integrate_panels<F>(f: F, breakpoints: &[f64], cfg: &QuadConfig) -> Result<QuadResult>
where
    F: Fn(f64) -> Complex64,
{
    if breakpoints.len() < 2 {
        return Err(Error::Invalid("need at least two breakpoints".into()));
    }
    if breakpoints.windows(2).any(|p| !(p[0] < p[1])) {
        return Err(Error::Invalid(
            "breakpoints must be finite and strictly increasing".into(),
        ));
    }
    let order = cfg.order;
    let mut panels: Vec<Panel> = Vec::with_capacity(breakpoints.len() * 2);
    let mut heap = BinaryHeap::new();
    let mut evals = 0usize;
    for w in breakpoints.windows(2) {
        let (whole, _) = gauss_panel(&f, w[0], w[1], order);
        let p = evaluate_panel(&f, w[0], w[1], whole, order);
        evals += 3 * order;
        if !p.settled {
            heap.push(HeapItem {
                err: p.err,
                index: panels.len(),
            });
        }
        panels.push(p);
    }

    let mut total_err: f64 = panels.iter().map(|p| p.err).sum();
    let mut total_value: Complex64 = panels.iter().map(Panel::value).sum();
    let mut since_resum = 0usize;
    while total_err > cfg.target(total_value) {
        let Some(item) = heap.pop() else { break };
        if evals >= cfg.max_evals {
            let value = ordered_sum(&panels);
            return Err(Error::Convergence {
                estimate: value,
                abs_err: total_err,
                evals,
            });
        }
        let parent = panels[item.index];
        let mid = 0.5 * (parent.a + parent.b);
        let mut left = evaluate_panel(&f, parent.a, mid, parent.left, order);
        let mut right = evaluate_panel(&f, mid, parent.b, parent.right, order);
        // near the roundoff floor a split that does not shrink the estimate
        // is measuring evaluation noise, not discretisation error
        if left.err + right.err > 0.9 * parent.err && parent.err <= 1e4 * parent.floor {
            left.settled = true;
            right.settled = true;
        }
        evals += 4 * order;
        total_err += left.err + right.err - parent.err;
        total_value += left.value() + right.value() - parent.value();
        panels[item.index] = left;
        for (p, idx) in [(left, item.index), (right, panels.len())] {
            if !p.settled {
                heap.push(HeapItem { err: p.err, index: idx });
            }
        }
        panels.push(right);
        since_resum += 1;
        if since_resum == 256 {
            // keep the running totals from drifting
            total_err = panels.iter().map(|p| p.err).sum();
            total_value = ordered_sum(&panels);
            since_resum = 0;
        }
    }

    let abs_err = panels.iter().map(|p| p.err).sum::<f64>();
    let value = ordered_sum(&panels);
    if !value.is_finite() {
        return Err(Error::Numerical("quadrature produced a non-finite value".into()));
    }
    Ok(QuadResult {
        value,
        abs_err,
        evals,
    })
}

fn ordered_sum(panels: &[Panel]) -> Complex64 {
    let mut order: Vec<&Panel> = panels.iter().collect();
    order.sort_by(|x, y| x.a.total_cmp(&y.a));
    let mut acc = CompensatedSum::default();
    for p in order {
        acc.add(p.value());
    }
    acc.value()
}

/// ∫_a^b f with absolute tolerance `tol`.
pub fn integrate_finite<F>(f: F, a: f64, b: f64, tol: f64) -> Result<QuadResult>
where
    F: Fn(f64) -> Complex64,
{
    if !(a < b) {
        return Err(Error::Invalid(format!("need a < b, got [{a}, {b}]")));
    }
    integrate_panels(f, &[a, b], &QuadConfig::abs(tol))
}

/// ∫_a^b f where f(t) ~ (t - a)^{σ-1} near `a`, via t = a + u^{1/σ}, which
/// leaves a bounded integrand in u.
pub fn integrate_endpoint_singular<F>(f: F, a: f64, b: f64, sigma: f64, tol: f64) -> Result<QuadResult>
where
    F: Fn(f64) -> Complex64,
{
    if !(a < b) {
        return Err(Error::Invalid(format!("need a < b, got [{a}, {b}]")));
    }
    if !(sigma > 0.0) {
        return Err(Error::Divergence(format!(
            "endpoint exponent {sigma} <= 0 is not integrable"
        )));
    }
    let inv = 1.0 / sigma;
    let mapped = |u: f64| f(a + u.powf(inv)) * (inv * u.powf(inv - 1.0));
    integrate_panels(mapped, &[0.0, (b - a).powf(sigma)], &QuadConfig::abs(tol))
}

/// Breakpoints hi, hi·q, hi·q², ... down to (at most) lo, returned ascending.
pub fn geometric_breakpoints(lo: f64, hi: f64, ratio: f64) -> Vec<f64> {
    assert!(lo > 0.0 && hi > lo && ratio > 0.0 && ratio < 1.0);
    let mut pts = vec![hi];
    let mut x = hi;
    while x * ratio > lo {
        x *= ratio;
        pts.push(x);
    }
    pts.push(lo);
    pts.reverse();
    pts.dedup();
    pts
}
