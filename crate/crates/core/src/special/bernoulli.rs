//! Exact Bernoulli numbers and the coefficients of `x / (1 + e^{-x})`.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest Bernoulli index served.
pub const MAX_BERNOULLI_INDEX: usize = 64;

/// Exact rationals reduced to lowest terms with a positive denominator.
pub type Rational = BigRational;

fn binomial_row(n: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::one(); n + 1];
    for k in 1..n {
        row[k] = &row[k - 1] * BigInt::from(n - k + 1) / BigInt::from(k);
    }
    row
}

fn table() -> &'static [Rational] {
    static TABLE: OnceLock<Vec<Rational>> = OnceLock::new();
    TABLE.get_or_init(|| {
        // Σ_{k=0}^{m} C(m+1, k) B_k = m + 1 is the recurrence for B_1 = +1/2.
        let mut b: Vec<Rational> = Vec::with_capacity(MAX_BERNOULLI_INDEX + 1);
        for m in 0..=MAX_BERNOULLI_INDEX {
            let row = binomial_row(m + 1);
            let mut acc = Rational::from_integer(BigInt::from(m + 1));
            for (k, bk) in b.iter().enumerate() {
                if !bk.is_zero() {
                    acc -= Rational::from_integer(row[k].clone()) * bk;
                }
            }
            b.push(acc / Rational::from_integer(BigInt::from(m + 1)));
        }
        b
    })
}

/// B_m with the convention B_1 = +1/2.
pub fn bernoulli(m: usize) -> Result<Rational> {
    table().get(m).cloned().ok_or(Error::Capability {
        m,
        max: MAX_BERNOULLI_INDEX,
    })
}

/// Exact m-th Taylor coefficient of `x / (1 + e^{-x})`, i.e. B_m (2^m - 1) / m!.
pub fn series_coeff_exact(m: usize) -> Result<Rational> {
    let b = bernoulli(m)?;
    let two_m = BigInt::one() << m;
    let factorial: BigInt = (1..=m).map(BigInt::from).product();
    Ok(b * Rational::new(two_m - BigInt::one(), factorial))
}

/// c_m rounded once to double precision.
pub fn series_coeff(m: usize) -> Result<f64> {
    let c = series_coeff_exact(m)?;
    c.to_f64()
        .ok_or_else(|| Error::Numerical(format!("c_{m} does not fit in f64")))
}

/// Largest index served by [`series_coeff_extended`].
pub const MAX_EXTENDED_INDEX: usize = 512;

/// c_m in double precision for m up to [`MAX_EXTENDED_INDEX`].
///
/// Exact rationals are used up to [`MAX_BERNOULLI_INDEX`]; above it the
/// even coefficients come from c_{2k} = (-1)^{k+1} 2 λ(2k) / π^{2k} with
/// λ(m) = Σ_{n odd} n^{-m}, which needs only a few terms for such m.
pub fn series_coeff_extended(m: usize) -> Result<f64> {
    if m <= MAX_BERNOULLI_INDEX {
        return series_coeff(m);
    }
    if m > MAX_EXTENDED_INDEX {
        return Err(Error::Capability {
            m,
            max: MAX_EXTENDED_INDEX,
        });
    }
    Ok(series_coeff_from_lambda(m))
}

pub(crate) fn series_coeff_from_lambda(m: usize) -> f64 {
    if m == 0 {
        return 0.0;
    }
    if m == 1 {
        return 0.5;
    }
    if m % 2 == 1 {
        return 0.0;
    }
    let mut lambda = 0.0;
    let mut n = 1.0_f64;
    loop {
        let term = n.powf(-(m as f64));
        lambda += term;
        if term < 1e-18 * lambda {
            break;
        }
        n += 2.0;
    }
    let sign = if (m / 2) % 2 == 1 { 1.0 } else { -1.0 };
    // π^{-m} in two factors to stay clear of underflow in intermediate steps
    sign * 2.0 * lambda * std::f64::consts::FRAC_1_PI.powi((m / 2) as i32) * std::f64::consts::FRAC_1_PI.powi((m - m / 2) as i32)
}

/// The coefficients c_0..=c_max of `x / (1 + e^{-x}) = Σ c_m x^m`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientTable {
    c: Vec<f64>,
}

impl CoefficientTable {
    pub fn new(max_m: usize) -> Result<Self> {
        let c = (0..=max_m)
            .map(series_coeff_extended)
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { c })
    }

    pub fn get(&self, m: usize) -> f64 {
        self.c[m]
    }

    pub fn len(&self) -> usize {
        self.c.len()
    }

    pub fn is_empty(&self) -> bool {
        self.c.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.c
    }

    /// Σ_{m ≤ max_m} c_m x^m.
    pub fn partial_sum(&self, x: f64, max_m: usize) -> f64 {
        self.c[..=max_m.min(self.c.len() - 1)]
            .iter()
            .rev()
            .fold(0.0, |acc, &c| acc * x + c)
    }

    /// |c_m x^m| for every tabulated m.
    pub fn term_magnitudes(&self, x: f64) -> Vec<f64> {
        self.c
            .iter()
            .enumerate()
            .map(|(m, c)| (c * x.powi(m as i32)).abs())
            .collect()
    }
}

/// The function the coefficient series represents.
pub fn fermi_weight(x: f64) -> f64 {
    if x >= 0.0 {
        x / (1.0 + (-x).exp())
    } else {
        let e = x.exp();
        x * e / (1.0 + e)
    }
}
