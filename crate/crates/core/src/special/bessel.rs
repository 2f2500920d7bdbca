//! J_0 on the nonnegative real axis.
//!
//! Below [`J0_SWITCH`] the ascending series is summed in double-double
//! arithmetic (its terms reach ~1e5 near the switch); above it the Hankel
//! asymptotic expansion is truncated at its smallest term.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use super::dd::DoubleDouble;
use crate::error::{Error, Result};

/// Argument at which evaluation moves from the series to the asymptotic form.
pub const J0_SWITCH: f64 = 16.0;

/// J_0(z) for z >= 0, absolute error below 1e-13.
pub fn bessel_j0(z: f64) -> Result<f64> {
    if !(z >= 0.0) || !z.is_finite() {
        return Err(Error::Domain {
            func: "bessel_j0",
            detail: format!("z = {z}; only finite z >= 0 is supported"),
        });
    }
    Ok(j0_unchecked(z))
}

#[inline]
pub(crate) fn j0_unchecked(z: f64) -> f64 {
    if z <= J0_SWITCH {
        j0_series(z)
    } else {
        j0_asymptotic(z)
    }
}

/// Ascending series Σ (-z²/4)^k / (k!)², summed in double-double.
pub fn j0_series(z: f64) -> f64 {
    let q = DoubleDouble::product(z, z).scale(0.25).neg();
    let mut term = DoubleDouble::from_f64(1.0);
    let mut sum = term;
    let mut k = 1.0_f64;
    loop {
        term = term.mul(q).div_f64(k * k);
        sum = sum.add(term);
        if term.hi.abs() < 1e-22 * sum.hi.abs().max(1.0) {
            break;
        }
        k += 1.0;
        if k > 400.0 {
            break;
        }
    }
    sum.to_f64()
}

/// Hankel asymptotic expansion truncated before its terms start growing.
pub fn j0_asymptotic(z: f64) -> f64 {
    // a_k = Π_{j≤k} (-(2j-1)²) / (k! 8^k)
    let mut p = 1.0;
    let mut q = 0.0;
    let mut a = 1.0;
    let mut zk = 1.0;
    let mut last = f64::INFINITY;
    for k in 1..200usize {
        let kf = k as f64;
        a *= -((2.0 * kf - 1.0).powi(2)) / (8.0 * kf);
        zk *= z;
        let term = a / zk;
        if term.abs() >= last {
            break;
        }
        last = term.abs();
        if k % 2 == 0 {
            let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
            p += sign * term;
        } else {
            let sign = if ((k - 1) / 2) % 2 == 0 { 1.0 } else { -1.0 };
            q += sign * term;
        }
        if term.abs() < 1e-17 {
            break;
        }
    }
    let (s, c) = z.sin_cos();
    // cos(z - π/4), sin(z - π/4) without rounding π/4
    let cos_chi = (c + s) * FRAC_1_SQRT_2;
    let sin_chi = (s - c) * FRAC_1_SQRT_2;
    (2.0 / (PI * z)).sqrt() * (p * cos_chi - q * sin_chi)
}
