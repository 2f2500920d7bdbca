//! Reference routes used only by the integration tests. Each one takes a
//! different road from the library implementation it is compared with.
#![allow(dead_code)]

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};

use zeta_lab::quad::gauss_legendre;
use zeta_lab::special::{eta, gamma};

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Ordinates of the first ten zeros (mpmath `zetazero`, 16 digits).
pub const ZERO_ORDINATES: [f64; 10] = [
    14.134_725_141_734_693,
    21.022_039_638_771_555,
    25.010_857_580_145_688,
    30.424_876_125_859_513,
    32.935_061_587_739_189,
    37.586_178_158_825_671,
    40.918_719_012_147_495,
    43.327_073_280_914_999,
    48.005_150_881_167_159,
    49.773_832_477_672_302,
];

pub fn rho(k: usize) -> Complex64 {
    c(0.5, ZERO_ORDINATES[k])
}

/// B_2, B_4, ..., B_20
const BERNOULLI_EVEN: [f64; 10] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
];

/// ζ(s) by direct summation with an Euler-Maclaurin tail, s ≠ 1.
pub fn zeta_em(s: Complex64) -> Complex64 {
    let n = (25.0 + s.norm()).ceil();
    let mut sum = c(0.0, 0.0);
    for k in 1..n as usize {
        sum += (-s * (k as f64).ln()).exp();
    }
    let n_s = (-s * n.ln()).exp();
    sum += n_s * n / (s - 1.0) + n_s * 0.5;
    // Σ B_2k/(2k)! s(s+1)...(s+2k-2) N^{-s-2k+1}
    let mut rising = s;
    let mut fact = 2.0;
    let mut pow = n_s / n;
    for (j, b) in BERNOULLI_EVEN.iter().enumerate() {
        let k = j + 1;
        sum += rising * pow * (b / fact);
        rising *= (s + (2 * k - 1) as f64) * (s + (2 * k) as f64);
        fact *= ((2 * k + 1) * (2 * k + 2)) as f64;
        pow /= n * n;
    }
    sum
}

/// Riemann-Siegel θ by its Stirling expansion; accurate for t > 10.
pub fn theta(t: f64) -> f64 {
    t / 2.0 * (t / (2.0 * PI)).ln() - t / 2.0 - PI / 8.0
        + 1.0 / (48.0 * t)
        + 7.0 / (5760.0 * t.powi(3))
        + 31.0 / (80640.0 * t.powi(5))
        + 127.0 / (430080.0 * t.powi(7))
}

/// Hardy Z(t) = e^{iθ(t)} ζ(1/2 + it), real for real t.
pub fn hardy_z(t: f64) -> f64 {
    (Complex64::from_polar(1.0, theta(t)) * zeta_em(c(0.5, t))).re
}

/// Sign changes of Z on (10, tau_max] with step 0.01, bisected to 1e-13.
pub fn scan_zeros(tau_max: f64) -> Vec<f64> {
    let mut out = Vec::new();
    let h = 0.01;
    let mut a = 10.0;
    let mut za = hardy_z(a);
    while a < tau_max {
        let b = (a + h).min(tau_max);
        let zb = hardy_z(b);
        if za * zb < 0.0 {
            let (mut lo, mut hi, mut zlo) = (a, b, za);
            while hi - lo > 1e-13 {
                let mid = 0.5 * (lo + hi);
                let zm = hardy_z(mid);
                if zm * zlo > 0.0 {
                    lo = mid;
                    zlo = zm;
                } else {
                    hi = mid;
                }
            }
            out.push(0.5 * (lo + hi));
        }
        a = b;
        za = zb;
    }
    out
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Taylor coefficients of x/(1+e^{-x}) by long division in exact rationals.
pub fn taylor_division(max_m: usize) -> Vec<BigRational> {
    let mut denom = vec![rat(2, 1)];
    let mut fact = BigInt::one();
    for k in 1..=max_m {
        fact *= k;
        let num = if k % 2 == 0 { BigInt::one() } else { -BigInt::one() };
        denom.push(BigRational::new(num, fact.clone()));
    }
    let mut out: Vec<BigRational> = Vec::new();
    for m in 0..=max_m {
        let mut acc = if m == 1 { BigRational::one() } else { BigRational::zero() };
        for k in 1..=m {
            acc -= &out[m - k] * &denom[k];
        }
        out.push(acc / &denom[0]);
    }
    out
}

/// Euler zigzag numbers A_0..=A_n via the Entringer triangle; odd entries
/// are the tangent numbers.
pub fn zigzag(n: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    let mut out = vec![BigInt::one()];
    for i in 1..=n {
        let mut next = vec![BigInt::zero()];
        for k in 1..=i {
            let v = &next[k - 1] + &row[i - k];
            next.push(v);
        }
        out.push(next[i].clone());
        row = next;
    }
    out
}

/// x/(1+e^{-x}) = x/2 + (x/2) tanh(x/2), so c_{n+1} = ±T_n / (2^{n+1} n!)
/// for odd n, the sign alternating as in tanh.
pub fn coefficients_from_tangent_numbers(max_m: usize) -> Vec<BigRational> {
    let a = zigzag(max_m);
    let mut out = vec![BigRational::zero(); max_m + 1];
    if max_m >= 1 {
        out[1] = rat(1, 2);
    }
    let mut fact = BigInt::one();
    for n in 1..max_m {
        fact *= n;
        if n % 2 == 1 {
            let den = &fact * (BigInt::one() << (n + 1));
            let t = if n % 4 == 1 { a[n].clone() } else { -a[n].clone() };
            out[n + 1] = BigRational::new(t, den);
        }
    }
    out
}

/// Laguerre coefficients of Ψ̃_s (weight e^{-x}): Γ(s+n)(1 - η(s+n))/n!.
pub fn psi_tilde_coefficient(s: Complex64, n: usize) -> Complex64 {
    let fact: f64 = (1..=n).map(|k| k as f64).product();
    gamma(s + n as f64).unwrap() * (1.0 - eta(s + n as f64).unwrap()) / fact
}

/// Laguerre coefficients of Ψ_s (weight e^{-x/2}), expanding L_n(4t) and
/// integrating term by term against t^{s-1} e^{-2t}/(1+e^t).
pub fn psi_coefficient(s: Complex64, n: usize) -> Complex64 {
    let mut sum = c(0.0, 0.0);
    let mut binom = 1.0;
    let mut fact = 1.0;
    for j in 0..=n {
        if j > 0 {
            binom *= (n + 1 - j) as f64 / j as f64;
            fact *= j as f64;
        }
        let a = s + j as f64;
        let mellin = gamma(a).unwrap() * (eta(a).unwrap() - 1.0 + (-a * 2f64.ln()).exp());
        sum += mellin * (binom * (-4f64).powi(j as i32) / fact);
    }
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    sum * (2.0 * sign)
}

/// (g/t) Σ_k (-1)^k (s)_k / t^k, the large-t expansion of G_s(t).
pub fn g_asymptotic(s: Complex64, g: Complex64, t: f64, terms: usize) -> Complex64 {
    let mut term = c(1.0, 0.0);
    let mut sum = term;
    for k in 0..terms {
        term *= -(s + k as f64) / t;
        sum += term;
    }
    g / t * sum
}

/// ⟨Φ_row|Ψ_col⟩ with f = g = 1 by fixed-order panels along the ray
/// arg t = π/2 - 0.4, tail integral accumulated from the top.
pub fn gram_brute_force(rho_row: Complex64, rho_col: Complex64) -> Complex64 {
    let theta = PI / 2.0 - 0.4;
    let dir = Complex64::from_polar(1.0, theta);
    let power = |a: Complex64, u: f64| (a * c(2.0 * u.ln(), theta)).exp();
    let outer_exp = rho_row.conj() + rho_col - 2.0;
    let inner_exp = -rho_row.conj();
    let outer = |u: f64| power(outer_exp, u) * dir * (2.0 * u);
    let inner = |u: f64| {
        let e = (-(dir * u * u)).exp();
        power(inner_exp, u) * e / (1.0 + e) * dir * (2.0 * u)
    };

    let mut pts: Vec<f64> = vec![1e-14];
    while *pts.last().unwrap() < 1.0 {
        let next = (pts.last().unwrap() * 1.1).min(1.0);
        pts.push(next);
    }
    let u_max = 130f64.sqrt();
    while *pts.last().unwrap() < u_max {
        let next = (pts.last().unwrap() + 0.1).min(u_max);
        pts.push(next);
    }
    let (x, w) = gauss_legendre(24).unwrap();
    let panel = |f: &dyn Fn(f64) -> Complex64, a: f64, b: f64| -> Complex64 {
        let (m, r) = (0.5 * (a + b), 0.5 * (b - a));
        x.iter().zip(&w).map(|(xi, wi)| f(m + r * xi) * (wi * r)).sum()
    };
    let mut tail_above = c(0.0, 0.0);
    let mut total = c(0.0, 0.0);
    for win in pts.windows(2).rev() {
        let (a, b) = (win[0], win[1]);
        let (m, r) = (0.5 * (a + b), 0.5 * (b - a));
        for (xi, wi) in x.iter().zip(&w) {
            let u = m + r * xi;
            let tail = tail_above + panel(&inner, u, b);
            total += outer(u) * tail * (wi * r);
        }
        tail_above += panel(&inner, a, b);
    }
    -total
}
