use std::f64::consts::PI;
use std::sync::OnceLock;

use crate::error::{Error, Result};

pub const MAX_ORDER: usize = 512;

/// Nodes and weights of an n-point Gauss-Legendre rule on [-1, 1].
#[derive(Debug, Clone, PartialEq)]
pub struct GaussRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

/// P_n(x) and P_n'(x).
fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let nf = n as f64;
    let dp = nf * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// n-point Gauss-Legendre nodes (ascending) and weights, by Newton iteration
/// on the roots of P_n.
pub fn gauss_legendre(n: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    if n == 0 || n > MAX_ORDER {
        return Err(Error::Invalid(format!(
            "Gauss-Legendre order {n} outside 1..={MAX_ORDER}"
        )));
    }
    if n == 1 {
        return Ok((vec![0.0], vec![2.0]));
    }
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre_with_derivative(n, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, dp) = legendre_with_derivative(n, x);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    Ok((nodes, weights))
}

/// Shared rule for the small orders used by the adaptive integrators.
pub(crate) fn rule(n: usize) -> &'static GaussRule {
    static RULES: [OnceLock<GaussRule>; 65] = [const { OnceLock::new() }; 65];
    assert!((1..=64).contains(&n), "cached rules cover orders 1..=64");
    RULES[n].get_or_init(|| {
        let (nodes, weights) = gauss_legendre(n).expect("order in range");
        GaussRule { nodes, weights }
    })
}
