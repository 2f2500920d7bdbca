mod common;

use common::{c, psi_coefficient, psi_tilde_coefficient, rho, taylor_division};
use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::ToPrimitive;
use zeta_lab::operators::{
    build_composites, build_h, build_h_tilde, build_ladder, eigen_residual, fermi_of_t, fermi_series,
    laguerre_coefficients, tridiag_eigh, Band, Expansion, Hamiltonian,
};
use zeta_lab::special::bessel_j0;
use zeta_lab::states::StateParams;

fn comm(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    a * b - b * a
}

#[test]
fn ladder_algebra_is_exact() {
    for k in [2, 5, 17, 64] {
        let (n, plus, minus) = build_ladder(k).unwrap();
        assert_eq!(comm(&n.entries, &plus.entries), plus.entries);
        assert_eq!(comm(&n.entries, &minus.entries), -&minus.entries);
        let pm = comm(&plus.entries, &minus.entries);
        let two_n = &n.entries * c(-2.0, 0.0);
        assert_eq!(pm.view((0, 0), (k - 1, k - 1)), two_n.view((0, 0), (k - 1, k - 1)));
        // the last diagonal entry carries the truncation
        assert_ne!(pm[(k - 1, k - 1)], two_n[(k - 1, k - 1)]);
    }
}

#[test]
fn composites_are_exact_combinations() {
    for k in [2, 9, 40] {
        let (n, plus, minus) = build_ladder(k).unwrap();
        let (x, d, t) = build_composites(k).unwrap();
        assert_eq!(t.entries, &n.entries - &x.entries * c(0.25, 0.0));
        assert_eq!(d.entries, (&minus.entries - &plus.entries) * c(0.0, 0.5));
        assert_eq!(t.band, Band::Tridiagonal);
    }
}

#[test]
fn bessel_eigenfunction_of_the_continuum_operator() {
    for t in [0.5, 2.0] {
        let u = |x: f64| bessel_j0(2.0 * (x * t).sqrt()).unwrap();
        for j in 0..=40 {
            let x = 0.1 + (20.0 - 0.1) * j as f64 / 40.0;
            let h = 1e-3 * x.min(1.0);
            let d1 = (u(x + h) - u(x - h)) / (2.0 * h);
            let d2 = (u(x + h) - 2.0 * u(x) + u(x - h)) / (h * h);
            assert!((-x * d2 - d1 - t * u(x)).abs() < 1e-6, "t = {t}, x = {x}");
        }
    }
}

#[test]
fn two_state_spectrum() {
    let (_, _, t) = build_composites(2).unwrap();
    let eig = tridiag_eigh(&t).unwrap();
    let r = 2f64.sqrt() / 4.0;
    assert!((eig.values[0] - (0.5 - r)).abs() < 1e-12);
    assert!((eig.values[1] - (0.5 + r)).abs() < 1e-12);
}

#[test]
fn spectrum_of_t_is_positive() {
    for k in [2, 3, 10, 64, 128, 256] {
        let (_, _, t) = build_composites(k).unwrap();
        let eig = tridiag_eigh(&t).unwrap();
        assert!(eig.values[0] > 0.0, "K = {k}: {}", eig.values[0]);
        let dense = t.real_part().unwrap().symmetric_eigenvalues();
        let min_dense = dense.iter().copied().fold(f64::INFINITY, f64::min);
        assert!((min_dense - eig.values[0]).abs() < 1e-10 * (1.0 + k as f64));
    }
}

#[test]
fn spectral_function_against_series() {
    let (_, _, t) = build_composites(2).unwrap();
    let (series, _) = fermi_series(&t, 80).unwrap();
    let spectral = fermi_of_t(&t).unwrap();
    assert!((&series.entries - &spectral.entries).iter().all(|z| z.norm() < 1e-8));

    let (_, _, t) = build_composites(64).unwrap();
    let (_, history) = fermi_series(&t, 80).unwrap();
    assert!(history[80] > 1e10 * history[10]);
    let lmax = tridiag_eigh(&t).unwrap().values[63];
    assert!(fermi_of_t(&t).unwrap().max_abs() <= lmax);
}

#[test]
fn h_tilde_is_the_exact_finite_series() {
    let k = 10;
    let coeffs = taylor_division(k);
    let (n, _, minus) = build_ladder(k).unwrap();
    let i = Complex64::i();
    let mut power = DMatrix::<Complex64>::identity(k, k);
    let mut want = &n.entries * i - &minus.entries * i;
    for cm in coeffs.iter().take(k) {
        want -= &power * (i * cm.to_f64().unwrap());
        power = &power * &minus.entries;
    }
    let got = build_h_tilde(k).unwrap();
    for r in 0..k {
        for col in 0..k {
            let (g, w) = (got.entries[(r, col)], want[(r, col)]);
            assert!((g - w).norm() <= 1e-13 * w.norm().max(1.0), "({r},{col}): {g} vs {w}");
        }
    }
    assert_eq!(got.band, Band::UpperTriangular);
}

#[test]
fn h_tilde_blocks_do_not_depend_on_truncation() {
    let small = build_h_tilde(12).unwrap();
    let large = build_h_tilde(40).unwrap();
    assert_eq!(small.entries, large.entries.view((0, 0), (12, 12)));
}

#[test]
fn h_is_dense_and_finite() {
    let h = build_h(16).unwrap();
    assert_eq!(h.band, Band::Dense);
    assert!(h.entries.iter().all(|z| z.re.is_finite() && z.im.is_finite()));
}

#[test]
fn coefficients_against_closed_forms() {
    for s in [c(1.0, 0.0), c(0.5, 3.0), rho(0)] {
        let p = StateParams::new(s).unwrap();
        let tilde = laguerre_coefficients(&p, 9, Expansion::PsiTilde).unwrap();
        let plain = laguerre_coefficients(&p, 9, Expansion::Psi).unwrap();
        for n in 0..9 {
            // modulus bound Γ(σ+n)/n! of the defining integral
            let bound = zeta_lab::special::gamma(c(s.re + n as f64, 0.0)).unwrap().re
                / (1..=n).map(|q| q as f64).product::<f64>();
            let want = psi_tilde_coefficient(s, n);
            assert!((tilde[n] - want).norm() <= 1e-11 * bound, "tilde s = {s}, n = {n}: {} vs {want}", tilde[n]);
            let want = psi_coefficient(s, n);
            let scale = gamma_scale(s, n);
            // the integrand modulus is bounded by 2 Γ(σ) η(σ) = O(1)
            assert!((plain[n] - want).norm() <= 1e-12 * (1.0 + scale), "plain s = {s}, n = {n}: {} vs {want}", plain[n]);
        }
    }
}

/// Size of the largest term in the alternating sum behind `psi_coefficient`.
fn gamma_scale(s: Complex64, n: usize) -> f64 {
    (0..=n)
        .map(|j| {
            let binom: f64 = (1..=j).map(|q| (n + 1 - q) as f64 / q as f64).product();
            let fact: f64 = (1..=j).map(|q| q as f64).product();
            zeta_lab::special::gamma(s + j as f64).unwrap().norm() * binom * 4f64.powi(j as i32) / fact
        })
        .fold(0.0, f64::max)
}

#[test]
fn residual_profiles_of_the_two_hamiltonians() {
    let p = StateParams::new(rho(0)).unwrap();
    let h_small = eigen_residual(&p, 32, Hamiltonian::H).unwrap();
    let h_large = eigen_residual(&p, 64, Hamiltonian::H).unwrap();
    assert!(h_large.leading_max(16) < h_small.leading_max(16));
    assert!(h_large.trusted_prefix >= h_small.trusted_prefix);
    // the H̃ coefficients fall off slower than the N₋ powers grow
    let ht_small = eigen_residual(&p, 32, Hamiltonian::HTilde).unwrap();
    let ht_large = eigen_residual(&p, 64, Hamiltonian::HTilde).unwrap();
    assert!(ht_large.leading_max(16) > ht_small.leading_max(16));
    assert_eq!(ht_large.per_component.len(), 64);
}
