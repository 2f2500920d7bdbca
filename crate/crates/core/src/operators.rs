//! Truncated operators on Laguerre coefficients.
//!
//! A state Σ a_n |n⟩ with ⟨x|n⟩ = e^{-x/2} L_n(x) is stored as the vector
//! a, and an operator as the matrix acting on that vector. With
//! N̂₋|m⟩ = m|m-1⟩ this puts N₋ on the first superdiagonal (entry (n, n+1)
//! = n+1) and N₊ on the first subdiagonal (entry (n+1, n) = n+1).

use std::sync::OnceLock;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::quad::{integrate_from, integrate_semi_infinite, Decay, IntegrandSpec, QuadConfig};
use crate::special::{fermi_weight, j0_unchecked, laguerre, mellin_fermi, CoefficientTable, MAX_EXTENDED_INDEX};
use crate::spectrum::eigenvalue_of;
use crate::states::StateParams;
use crate::ComplexScalar;

pub const BASIS_CONVENTION: &str = "coefficient-space, orthonormal <x|n> = e^{-x/2} L_n(x)";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Band {
    Diagonal,
    Lower1,
    Upper1,
    Tridiagonal,
    UpperTriangular,
    Dense,
}

impl Band {
    /// The narrowest band containing every nonzero entry.
    pub fn detect(m: &DMatrix<Complex64>) -> Band {
        let (mut below1, mut below_far, mut above1, mut above_far) = (false, false, false, false);
        for j in 0..m.ncols() {
            for i in 0..m.nrows() {
                if m[(i, j)] == Complex64::new(0.0, 0.0) {
                    continue;
                }
                match i as isize - j as isize {
                    1 => below1 = true,
                    d if d > 1 => below_far = true,
                    -1 => above1 = true,
                    d if d < -1 => above_far = true,
                    _ => {}
                }
            }
        }
        let below = below1 || below_far;
        let above = above1 || above_far;
        match (below, above) {
            (false, false) => Band::Diagonal,
            (true, false) if !below_far => Band::Lower1,
            (false, true) if !above_far => Band::Upper1,
            (false, true) => Band::UpperTriangular,
            (true, true) if !below_far && !above_far => Band::Tridiagonal,
            _ => Band::Dense,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedOperator {
    pub entries: DMatrix<Complex64>,
    pub band: Band,
}

impl TruncatedOperator {
    pub fn new(entries: DMatrix<Complex64>) -> Result<Self> {
        if entries.nrows() == 0 || entries.nrows() != entries.ncols() {
            return Err(Error::Invalid(format!(
                "operator must be square with K >= 1, got {}x{}",
                entries.nrows(),
                entries.ncols()
            )));
        }
        if entries.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::Numerical("operator has non-finite entries".into()));
        }
        let band = Band::detect(&entries);
        Ok(Self { entries, band })
    }

    fn from_real(m: DMatrix<f64>) -> Result<Self> {
        Self::new(m.map(|x| Complex64::new(x, 0.0)))
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn basis_convention(&self) -> &'static str {
        BASIS_CONVENTION
    }

    pub fn apply(&self, a: &[ComplexScalar]) -> Vec<ComplexScalar> {
        let v = nalgebra::DVector::from_column_slice(a);
        (&self.entries * v).iter().copied().collect()
    }

    /// max |entry|
    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// The real part, provided every imaginary part vanishes.
    pub fn real_part(&self) -> Result<DMatrix<f64>> {
        if self.entries.iter().any(|z| z.im != 0.0) {
            return Err(Error::Invalid("operator is not real".into()));
        }
        Ok(self.entries.map(|z| z.re))
    }
}

fn check_dim(k: usize) -> Result<()> {
    if k < 2 {
        return Err(Error::Invalid(format!("truncation K = {k} must be at least 2")));
    }
    Ok(())
}

/// (N, N₊, N₋) on the first K basis states.
pub fn build_ladder(k: usize) -> Result<(TruncatedOperator, TruncatedOperator, TruncatedOperator)> {
    check_dim(k)?;
    let n = DMatrix::from_fn(k, k, |i, j| if i == j { i as f64 + 0.5 } else { 0.0 });
    let plus = DMatrix::from_fn(k, k, |i, j| if i == j + 1 { i as f64 } else { 0.0 });
    let minus = DMatrix::from_fn(k, k, |i, j| if j == i + 1 { j as f64 } else { 0.0 });
    Ok((
        TruncatedOperator::from_real(n)?,
        TruncatedOperator::from_real(plus)?,
        TruncatedOperator::from_real(minus)?,
    ))
}

/// (x, D, T) with x = 2N - N₊ - N₋, D = i(N₋ - N₊)/2 and T = N - x/4.
pub fn build_composites(k: usize) -> Result<(TruncatedOperator, TruncatedOperator, TruncatedOperator)> {
    let (n, plus, minus) = build_ladder(k)?;
    let x = &n.entries * Complex64::new(2.0, 0.0) - &plus.entries - &minus.entries;
    let d = (&minus.entries - &plus.entries) * Complex64::new(0.0, 0.5);
    let t = &n.entries - &x * Complex64::new(0.25, 0.0);
    Ok((
        TruncatedOperator::new(x)?,
        TruncatedOperator::new(d)?,
        TruncatedOperator::new(t)?,
    ))
}

#[derive(Debug, Clone, PartialEq)]
pub struct EigenDecomposition {
    /// Ascending.
    pub values: Vec<f64>,
    /// Column j is the unit eigenvector for `values[j]`.
    pub vectors: DMatrix<f64>,
}

impl EigenDecomposition {
    /// V diag(f(λ)) Vᵀ
    pub fn apply_function<F: Fn(f64) -> f64>(&self, f: F) -> DMatrix<f64> {
        let mut scaled = self.vectors.clone();
        for (j, &lam) in self.values.iter().enumerate() {
            let w = f(lam);
            scaled.column_mut(j).scale_mut(w);
        }
        &scaled * self.vectors.transpose()
    }
}

const QL_MAX_SWEEPS: usize = 60;

/// Symmetric tridiagonal eigensolver (implicit QL with Wilkinson-type shifts).
pub fn tridiag_eigh(t: &TruncatedOperator) -> Result<EigenDecomposition> {
    let m = t.real_part()?;
    let k = m.nrows();
    if !matches!(t.band, Band::Diagonal | Band::Tridiagonal) {
        return Err(Error::Invalid(format!("operator band {:?} is not tridiagonal", t.band)));
    }
    for i in 0..k.saturating_sub(1) {
        if m[(i, i + 1)] != m[(i + 1, i)] {
            return Err(Error::Invalid("tridiagonal operator is not symmetric".into()));
        }
    }
    let mut d: Vec<f64> = (0..k).map(|i| m[(i, i)]).collect();
    let mut e: Vec<f64> = (0..k).map(|i| if i + 1 < k { m[(i, i + 1)] } else { 0.0 }).collect();
    let mut z = DMatrix::<f64>::identity(k, k);
    implicit_ql(&mut d, &mut e, &mut z)?;

    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&a, &b| d[a].total_cmp(&d[b]));
    let values = order.iter().map(|&j| d[j]).collect();
    let vectors = DMatrix::from_fn(k, k, |i, j| z[(i, order[j])]);
    Ok(EigenDecomposition { values, vectors })
}

/// Diagonal `d`, off-diagonal `e` (e[i] couples i and i+1, last entry unused).
/// Rotations are accumulated into the columns of `z`.
fn implicit_ql(d: &mut [f64], e: &mut [f64], z: &mut DMatrix<f64>) -> Result<()> {
    let n = d.len();
    for l in 0..n {
        let mut sweeps = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let scale = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * scale {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            sweeps += 1;
            if sweeps > QL_MAX_SWEEPS {
                return Err(Error::Numerical(format!(
                    "QL iteration did not converge for eigenvalue {l} after {QL_MAX_SWEEPS} sweeps"
                )));
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut deflated = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                for row in 0..n {
                    let zi1 = z[(row, i + 1)];
                    let zi = z[(row, i)];
                    z[(row, i + 1)] = s * zi + c * zi1;
                    z[(row, i)] = c * zi - s * zi1;
                }
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}

/// T/(1 + e^{-T}) through the eigendecomposition of T.
pub fn fermi_of_t(t: &TruncatedOperator) -> Result<TruncatedOperator> {
    let eig = tridiag_eigh(t)?;
    let mut f = eig.apply_function(fermi_weight);
    // the exact result is symmetric; remove rounding asymmetry
    let ft = f.transpose();
    f = (&f + ft) * 0.5;
    TruncatedOperator::from_real(f)
}

/// Σ_{m ≤ max_m} c_m T^m, with max|entry| of every partial sum.
pub fn fermi_series(t: &TruncatedOperator, max_m: usize) -> Result<(TruncatedOperator, Vec<f64>)> {
    let m = t.real_part()?;
    let k = m.nrows();
    let table = CoefficientTable::new(max_m)?;
    let mut power = DMatrix::<f64>::identity(k, k);
    let mut sum = DMatrix::<f64>::zeros(k, k);
    let mut history = Vec::with_capacity(max_m + 1);
    for j in 0..=max_m {
        if j > 0 {
            power = &power * &m;
        }
        let c = table.get(j);
        if c != 0.0 {
            sum += &power * c;
        }
        history.push(sum.iter().map(|x| x.abs()).fold(0.0, f64::max));
    }
    Ok((TruncatedOperator::from_real(sum)?, history))
}

/// H = -D - i T/(1 + e^{-T}).
pub fn build_h(k: usize) -> Result<TruncatedOperator> {
    let (_, d, t) = build_composites(k)?;
    let f = fermi_of_t(&t)?;
    TruncatedOperator::new(-&d.entries - &f.entries * Complex64::i())
}

/// H̃ = iN - iN₋ - i Σ_{m<K} c_m N₋^m, upper triangular and exact on the truncation.
pub fn build_h_tilde(k: usize) -> Result<TruncatedOperator> {
    check_dim(k)?;
    if k > MAX_EXTENDED_INDEX + 1 {
        return Err(Error::Capability {
            m: k - 1,
            max: MAX_EXTENDED_INDEX,
        });
    }
    let table = CoefficientTable::new(k - 1)?;
    let i = Complex64::i();
    let mut h = DMatrix::<Complex64>::zeros(k, k);
    for n in 0..k {
        h[(n, n)] = i * (n as f64 + 0.5);
        // ln of (n+1)(n+2)...(n+m), the (n, n+m) entry of N₋^m
        let mut ln_rising = 0.0;
        for m in 1..k - n {
            ln_rising += ((n + m) as f64).ln();
            let mut coeff = table.get(m);
            if m == 1 {
                coeff += 1.0;
            }
            if coeff == 0.0 {
                continue;
            }
            let magnitude = coeff.abs() * (ln_rising).exp();
            h[(n, n + m)] = -i * magnitude.copysign(coeff);
        }
    }
    TruncatedOperator::new(h)
}

/// Which eigenfunction is expanded in the Laguerre basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Expansion {
    /// Ψ̃_s = e^{-x/2} Ψ_s, paired with H̃.
    PsiTilde,
    /// Ψ_s, paired with H.
    Psi,
}

/// ∫₀^∞ w(x) L_n(x) J₀(2√(xt)) dx, w = e^{-x} for Ψ̃ and e^{-x/2} for Ψ.
pub fn transform_kernel(which: Expansion, n: usize, t: f64) -> f64 {
    match which {
        Expansion::PsiTilde => {
            // e^{-t} t^n / n!
            let ln = n as f64 * t.ln() - ln_factorial(n) - t;
            if t == 0.0 {
                if n == 0 {
                    1.0
                } else {
                    0.0
                }
            } else {
                ln.exp()
            }
        }
        Expansion::Psi => {
            let sign = if n % 2 == 0 { 2.0 } else { -2.0 };
            sign * (-2.0 * t).exp() * laguerre(n, 4.0 * t)
        }
    }
}

fn ln_factorial(n: usize) -> f64 {
    (1..=n).map(|j| (j as f64).ln()).sum()
}

/// The same kernel by direct quadrature over x.
pub fn transform_kernel_direct(which: Expansion, n: usize, t: f64, tol: f64) -> Result<f64> {
    let rate = match which {
        Expansion::PsiTilde => 1.0,
        Expansion::Psi => 0.5,
    };
    let spec = IntegrandSpec {
        decay: Decay::Exponential { rate },
        tail_power: n as f64,
        ..IntegrandSpec::mellin(Complex64::new(1.0, 0.0)).with_hankel_scale(t)
    };
    let r = integrate_semi_infinite(
        |x| Complex64::new((-rate * x).exp() * laguerre(n, x) * j0_unchecked(2.0 * (x * t).sqrt()), 0.0),
        &spec,
        tol,
    )?;
    Ok(r.value.re)
}

/// Checks the closed-form kernels against direct x-quadrature once per process.
pub fn validate_kernels() -> Result<()> {
    static CHECK: OnceLock<Result<()>> = OnceLock::new();
    CHECK
        .get_or_init(|| {
            for which in [Expansion::PsiTilde, Expansion::Psi] {
                for n in [0, 1, 4] {
                    for t in [0.3, 2.0] {
                        let closed = transform_kernel(which, n, t);
                        let direct = transform_kernel_direct(which, n, t, 1e-12)?;
                        if (closed - direct).abs() > 1e-9 {
                            return Err(Error::Numerical(format!(
                                "kernel check failed for {which:?}, n = {n}, t = {t}: closed form {closed:e}, quadrature {direct:e}"
                            )));
                        }
                    }
                }
            }
            Ok(())
        })
        .clone()
}

fn ln_gamma_real(x: f64) -> f64 {
    crate::special::gamma_unchecked(Complex64::new(x, 0.0)).norm().ln()
}

/// First K Laguerre coefficients of Ψ̃_s or Ψ_s, by t-side quadrature.
pub fn laguerre_coefficients(p: &StateParams, k: usize, which: Expansion) -> Result<Vec<ComplexScalar>> {
    validate_kernels()?;
    let s = p.s;
    let f = p.f_const;
    (0..k)
        .map(|n| {
            let r = match which {
                Expansion::PsiTilde => {
                    let ln_fact = ln_factorial(n);
                    let sigma = s.re + n as f64;
                    // ∫ t^{σ+n-1} e^{-2t} / n! bounds the integral in modulus
                    let scale = (ln_gamma_real(sigma) - sigma * std::f64::consts::LN_2 - ln_fact).exp();
                    let spec = IntegrandSpec::mellin(s + n as f64)
                        .with_decay_rate(2.0)
                        .with_envelope((-ln_fact).exp());
                    integrate_from(
                        |t| mellin_fermi(s + n as f64, t) * (-t - ln_fact).exp(),
                        0.0,
                        &spec,
                        &QuadConfig::abs(1e-14 * scale),
                    )?
                }
                Expansion::Psi => {
                    // |e^{-2t} L_n(4t)| ≤ 1
                    let spec = IntegrandSpec::mellin(s).with_envelope(2.0);
                    integrate_from(
                        |t| mellin_fermi(s, t) * transform_kernel(Expansion::Psi, n, t),
                        0.0,
                        &spec,
                        &QuadConfig::abs(1e-14),
                    )?
                }
            };
            Ok(r.value * f)
        })
        .collect()
}

/// Hamiltonian whose truncation is tested against an expansion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Hamiltonian {
    HTilde,
    H,
}

impl Hamiltonian {
    pub fn expansion(self) -> Expansion {
        match self {
            Hamiltonian::HTilde => Expansion::PsiTilde,
            Hamiltonian::H => Expansion::Psi,
        }
    }

    pub fn build(self, k: usize) -> Result<TruncatedOperator> {
        match self {
            Hamiltonian::HTilde => build_h_tilde(k),
            Hamiltonian::H => build_h(k),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResidualProfile {
    #[serde(with = "crate::serde_complex")]
    pub s: ComplexScalar,
    #[serde(rename = "K")]
    pub k: usize,
    pub operator: Hamiltonian,
    /// |(M a)_n - λ a_n|
    pub per_component: Vec<f64>,
    /// Leading components whose missing-tail estimate is below the tolerance.
    pub trusted_prefix: usize,
}

impl ResidualProfile {
    /// max over the first `n` components.
    pub fn leading_max(&self, n: usize) -> f64 {
        self.per_component.iter().take(n).copied().fold(0.0, f64::max)
    }
}

/// Tail estimates below this fraction of max |a_n| count as trusted.
pub const TRUST_TOLERANCE: f64 = 1e-8;

/// |(M a)_n - λ a_n| for every n.
pub fn residual_components(m: &TruncatedOperator, a: &[ComplexScalar], lambda: ComplexScalar) -> Vec<f64> {
    m.apply(a)
        .iter()
        .zip(a)
        .map(|(ma, &an)| (ma - lambda * an).norm())
        .collect()
}

/// Number of leading rows n whose first omitted term, estimated as
/// |M_{n,K-1} a_{K-1}|, stays below `TRUST_TOLERANCE · max |a|`.
pub fn trusted_prefix(m: &TruncatedOperator, a: &[ComplexScalar]) -> usize {
    let k = a.len();
    let scale = a.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let last = a[k - 1].norm();
    (0..k)
        .take_while(|&n| m.entries[(n, k - 1)].norm() * last <= TRUST_TOLERANCE * scale)
        .count()
}

/// Residual of the truncated eigenvalue equation M a = i(1/2 - s) a.
pub fn eigen_residual(p: &StateParams, k: usize, which: Hamiltonian) -> Result<ResidualProfile> {
    let m = which.build(k)?;
    let a = laguerre_coefficients(p, k, which.expansion())?;
    let lambda = eigenvalue_of(p.s);
    Ok(ResidualProfile {
        s: p.s,
        k,
        operator: which,
        per_component: residual_components(&m, &a, lambda),
        trusted_prefix: trusted_prefix(&m, &a),
    })
}
