//! Dirichlet η and Riemann ζ on the right half-plane.
//!
//! η is summed with Borwein's accelerated alternating series and ζ follows
//! from ζ = η / (1 - 2^{1-s}). Where that denominator is small (near s = 1
//! and near the points 1 + 2πik/ln 2) ζ and ζ' switch to Euler-Maclaurin
//! summation instead.

use std::f64::consts::LN_2;
use std::sync::OnceLock;

use num_complex::Complex64;
use num_traits::ToPrimitive;

use super::bernoulli::bernoulli;
use crate::error::{Error, Result};
use crate::ComplexScalar;

/// |1 - 2^{1-s}| below which ζ is evaluated by Euler-Maclaurin.
pub const DENOMINATOR_FALLBACK: f64 = 0.05;

const EM_TERMS: usize = 20;

/// Borwein weights w_k = 1 - d_k / d_n, k = 0..n-1.
fn borwein_weights(n: usize) -> Vec<f64> {
    // d_k = n Σ_{i≤k} (n+i-1)! 4^i / ((n-i)! (2i)!)
    let nf = n as f64;
    let mut terms = Vec::with_capacity(n + 1);
    let mut term = 1.0 / nf;
    terms.push(term);
    for i in 1..=n {
        let i_f = i as f64;
        term *= 4.0 * (nf + i_f - 1.0) * (nf - i_f + 1.0) / ((2.0 * i_f) * (2.0 * i_f - 1.0));
        terms.push(term);
    }
    let total: f64 = terms.iter().sum();
    // suffix sums avoid cancellation in d_n - d_k
    let mut weights = vec![0.0; n];
    let mut suffix = 0.0;
    for k in (0..n).rev() {
        suffix += terms[k + 1];
        weights[k] = suffix / total;
    }
    weights
}

fn series_length(s: ComplexScalar) -> usize {
    30 + (0.9 * s.im.abs()).ceil() as usize + if s.re < 0.0 { 10 } else { 0 }
}

fn check_eta_domain(s: ComplexScalar) -> Result<()> {
    if !(s.re > -1.0) || !s.im.is_finite() {
        return Err(Error::Domain {
            func: "eta",
            detail: format!("s = {s}; working region is Re(s) > -1"),
        });
    }
    Ok(())
}

/// η(s) and η'(s) from one pass over the accelerated series.
fn eta_and_derivative(s: ComplexScalar) -> (ComplexScalar, ComplexScalar) {
    let n = series_length(s);
    let weights = borwein_weights(n);
    let mut value = Complex64::new(0.0, 0.0);
    let mut deriv = Complex64::new(0.0, 0.0);
    for (k, w) in weights.iter().enumerate() {
        let ln_k = ((k + 1) as f64).ln();
        let power = (-s * ln_k).exp();
        let signed = if k % 2 == 0 { *w } else { -*w };
        value += signed * power;
        deriv -= signed * ln_k * power;
    }
    (value, deriv)
}

/// Dirichlet η(s) = Σ (-1)^{n-1} n^{-s}, for Re(s) > -1.
pub fn eta(s: ComplexScalar) -> Result<ComplexScalar> {
    check_eta_domain(s)?;
    Ok(eta_and_derivative(s).0)
}

/// η'(s), differentiated term by term.
pub fn eta_prime(s: ComplexScalar) -> Result<ComplexScalar> {
    check_eta_domain(s)?;
    Ok(eta_and_derivative(s).1)
}

fn check_zeta_domain(s: ComplexScalar) -> Result<()> {
    if s == Complex64::new(1.0, 0.0) {
        return Err(Error::Pole { func: "zeta", at: 1 });
    }
    if !(s.re > 0.0) || !s.im.is_finite() {
        return Err(Error::Domain {
            func: "zeta",
            detail: format!("s = {s}; supported region is Re(s) > 0"),
        });
    }
    Ok(())
}

/// 1 - 2^{1-s}
pub fn eta_factor(s: ComplexScalar) -> ComplexScalar {
    1.0 - ((1.0 - s) * LN_2).exp()
}

/// ζ(s) for Re(s) > 0, s != 1.
pub fn zeta(s: ComplexScalar) -> Result<ComplexScalar> {
    check_zeta_domain(s)?;
    let den = eta_factor(s);
    if den.norm() < DENOMINATOR_FALLBACK {
        return Ok(euler_maclaurin(s).0);
    }
    Ok(eta_and_derivative(s).0 / den)
}

/// ζ'(s) for Re(s) > 0, s != 1.
pub fn zeta_prime(s: ComplexScalar) -> Result<ComplexScalar> {
    check_zeta_domain(s)?;
    let den = eta_factor(s);
    if den.norm() < DENOMINATOR_FALLBACK {
        return Ok(euler_maclaurin(s).1);
    }
    let (eta_v, eta_d) = eta_and_derivative(s);
    let z = eta_v / den;
    // η = (1 - 2^{1-s}) ζ, d/ds (1 - 2^{1-s}) = 2^{1-s} ln 2
    let den_d = ((1.0 - s) * LN_2).exp() * LN_2;
    Ok((eta_d - den_d * z) / den)
}

/// Central-difference ζ', kept as an independent cross-check.
/// ζ(s) by Euler-Maclaurin summation alone, for cross-checks.
pub fn zeta_euler_maclaurin(s: ComplexScalar) -> Result<ComplexScalar> {
    if s == Complex64::new(1.0, 0.0) {
        return Err(Error::Pole { func: "zeta", at: 1 });
    }
    Ok(euler_maclaurin(s).0)
}

pub fn zeta_prime_central_difference(s: ComplexScalar, h: f64) -> Result<ComplexScalar> {
    Ok((zeta(s + h)? - zeta(s - h)?) / (2.0 * h))
}

fn even_bernoulli_f64() -> &'static [f64] {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    TABLE.get_or_init(|| {
        (1..=EM_TERMS)
            .map(|j| {
                bernoulli(2 * j)
                    .ok()
                    .and_then(|b| b.to_f64())
                    .expect("B_2j tabulated")
            })
            .collect()
    })
}

/// Euler-Maclaurin ζ(s) and ζ'(s), valid for any s != 1 with moderate |s|.
pub(crate) fn euler_maclaurin(s: ComplexScalar) -> (ComplexScalar, ComplexScalar) {
    let big_n = 20 + s.norm().ceil() as usize;
    let mut value = Complex64::new(0.0, 0.0);
    let mut deriv = Complex64::new(0.0, 0.0);
    for n in 1..big_n {
        let ln_n = (n as f64).ln();
        let p = (-s * ln_n).exp();
        value += p;
        deriv -= ln_n * p;
    }
    let nf = big_n as f64;
    let ln_n = nf.ln();
    let n_pow = (-s * ln_n).exp(); // N^{-s}
    let sm1 = s - 1.0;
    let head = n_pow * nf / sm1;
    value += head + 0.5 * n_pow;
    deriv += -ln_n * head - n_pow * nf / (sm1 * sm1) - 0.5 * ln_n * n_pow;

    // B_2j/(2j)! s(s+1)...(s+2j-2) N^{-s-2j+1}
    let bern = even_bernoulli_f64();
    let mut rising = s; // s(s+1)...(s+2j-2)
    let mut rising_log_deriv = 1.0 / s; // Σ 1/(s+i)
    let mut factorial = 2.0;
    let mut n_factor = n_pow / nf; // N^{-s-1}
    for j in 1..=EM_TERMS {
        let coef = bern[j - 1] / factorial;
        let term = coef * rising * n_factor;
        value += term;
        deriv += term * (rising_log_deriv - ln_n);
        let jf = j as f64;
        rising *= (s + 2.0 * jf - 1.0) * (s + 2.0 * jf);
        rising_log_deriv += 1.0 / (s + 2.0 * jf - 1.0) + 1.0 / (s + 2.0 * jf);
        factorial *= (2.0 * jf + 1.0) * (2.0 * jf + 2.0);
        n_factor /= nf * nf;
    }
    (value, deriv)
}
