use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::ComplexScalar;

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

fn pole_index(s: ComplexScalar) -> Option<i64> {
    if s.im == 0.0 && s.re <= 0.0 && s.re == s.re.round() {
        Some(s.re as i64)
    } else {
        None
    }
}

/// Γ(s) by the Lanczos approximation, reflected for Re(s) < 1/2.
pub fn gamma(s: ComplexScalar) -> Result<ComplexScalar> {
    if let Some(at) = pole_index(s) {
        return Err(Error::Pole { func: "gamma", at });
    }
    if !s.re.is_finite() || !s.im.is_finite() {
        return Err(Error::Domain {
            func: "gamma",
            detail: format!("non-finite argument {s}"),
        });
    }
    Ok(gamma_unchecked(s))
}

pub(crate) fn gamma_unchecked(s: ComplexScalar) -> ComplexScalar {
    if s.re < 0.5 {
        let pi = Complex64::new(PI, 0.0);
        pi / ((pi * s).sin() * lanczos(1.0 - s))
    } else {
        lanczos(s)
    }
}

fn lanczos(s: ComplexScalar) -> ComplexScalar {
    let z = s - 1.0;
    let mut x = Complex64::new(LANCZOS_COEFFS[0], 0.0);
    for (i, &c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        x += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    let log_part = (z + 0.5) * t.ln() - t;
    (2.0 * PI).sqrt() * log_part.exp() * x
}

/// Γ'(s) by a central difference; only used where the product with a
/// vanishing factor makes its accuracy irrelevant.
pub fn gamma_derivative(s: ComplexScalar) -> Result<ComplexScalar> {
    let h = 1e-5 * s.norm().max(1.0);
    let up = gamma(s + h)?;
    let down = gamma(s - h)?;
    Ok((up - down) / (2.0 * h))
}
