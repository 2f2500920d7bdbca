mod common;

use std::f64::consts::{E, PI};

use common::{c, zeta_em};
use num_complex::Complex64;
use zeta_lab::quad::{
    integrate_endpoint_singular, integrate_finite, integrate_nested, integrate_semi_infinite, integrate_to,
    truncation_upper, InnerRange, IntegrandSpec, QuadConfig, QuadResult,
};
use zeta_lab::special::{bessel_j0, gamma};

type Runner = Box<dyn Fn(f64) -> zeta_lab::Result<QuadResult>>;

struct Case {
    name: &'static str,
    run: Runner,
    exact: Complex64,
}

fn real(x: f64) -> Complex64 {
    c(x, 0.0)
}

fn library() -> Vec<Case> {
    let s = c(0.5, 3.0);
    let eta_s = (1.0 - (c(2f64.ln(), 0.0) * (1.0 - s)).exp()) * zeta_em(s);
    vec![
        Case {
            name: "x^5 on [0,1]",
            run: Box::new(|tol| integrate_finite(|x| real(x.powi(5)), 0.0, 1.0, tol)),
            exact: real(1.0 / 6.0),
        },
        Case {
            name: "sin on [0,pi]",
            run: Box::new(|tol| integrate_finite(|x| real(x.sin()), 0.0, PI, tol)),
            exact: real(2.0),
        },
        Case {
            name: "e^x on [0,1]",
            run: Box::new(|tol| integrate_finite(|x| real(x.exp()), 0.0, 1.0, tol)),
            exact: real(E - 1.0),
        },
        Case {
            name: "Runge on [-1,1]",
            run: Box::new(|tol| integrate_finite(|x| real(1.0 / (1.0 + 25.0 * x * x)), -1.0, 1.0, tol)),
            exact: real(0.4 * 5f64.atan()),
        },
        Case {
            name: "cos 10x on [0,10]",
            run: Box::new(|tol| integrate_finite(|x| real((10.0 * x).cos()), 0.0, 10.0, tol)),
            exact: real(100f64.sin() / 10.0),
        },
        Case {
            name: "e^{ix} on [0, 2]",
            run: Box::new(|tol| integrate_finite(|x| Complex64::from_polar(1.0, x), 0.0, 2.0, tol)),
            exact: c(2f64.sin(), 1.0 - 2f64.cos()),
        },
        Case {
            name: "x^{-1/3} on [0,1]",
            run: Box::new(|tol| integrate_endpoint_singular(|x| real(x.powf(-1.0 / 3.0)), 0.0, 1.0, 2.0 / 3.0, tol)),
            exact: real(1.5),
        },
        Case {
            name: "e^-t on [0,inf)",
            run: Box::new(|tol| integrate_semi_infinite(|t| real((-t).exp()), &IntegrandSpec::mellin(c(1.0, 0.0)), tol)),
            exact: real(1.0),
        },
        Case {
            name: "t^{-1/2} e^-t",
            run: Box::new(|tol| {
                integrate_semi_infinite(|t| real((-t).exp() / t.sqrt()), &IntegrandSpec::mellin(c(0.5, 0.0)), tol)
            }),
            exact: real(PI.sqrt()),
        },
        Case {
            name: "t/(e^t+1)",
            run: Box::new(|tol| {
                integrate_semi_infinite(|t| real(t / (t.exp() + 1.0)), &IntegrandSpec::mellin(c(2.0, 0.0)), tol)
            }),
            exact: real(PI * PI / 12.0),
        },
        Case {
            name: "t^{s-1}/(1+e^t), s = 1/2+3i",
            run: Box::new(move |tol| {
                integrate_semi_infinite(
                    |t| (c(-0.5, 3.0) * t.ln()).exp() / (1.0 + t.exp()),
                    &IntegrandSpec::mellin(s),
                    tol,
                )
            }),
            exact: gamma(s).unwrap() * eta_s,
        },
        Case {
            name: "e^-t J0(2 sqrt(3t))",
            run: Box::new(|tol| {
                integrate_semi_infinite(
                    |t| real((-t).exp() * bessel_j0(2.0 * (3.0 * t).sqrt()).unwrap()),
                    &IntegrandSpec::mellin(c(1.0, 0.0)).with_hankel_scale(3.0),
                    tol,
                )
            }),
            exact: real((-3.0f64).exp()),
        },
    ]
}

fn true_err(case: &Case, tol: f64) -> (f64, f64) {
    let r = (case.run)(tol).unwrap_or_else(|e| panic!("{}: {e}", case.name));
    ((r.value - case.exact).norm(), r.abs_err)
}

#[test]
fn reported_error_is_not_an_underestimate() {
    for case in library() {
        for tol in [1e-6, 1e-9, 1e-12] {
            let (err, reported) = true_err(&case, tol);
            let floor = 64.0 * f64::EPSILON * case.exact.norm().max(1.0);
            assert!(err <= 10.0 * reported + floor, "{} at tol {tol:e}: true {err:e}, reported {reported:e}", case.name);
            assert!(err <= tol + floor, "{} at tol {tol:e}: true {err:e}", case.name);
        }
    }
}

#[test]
fn halving_tolerance_does_not_increase_error() {
    for case in library() {
        for tol in [1e-6, 1e-8, 1e-10] {
            let (coarse, _) = true_err(&case, tol);
            let (fine, _) = true_err(&case, tol / 2.0);
            let floor = 64.0 * f64::EPSILON * case.exact.norm().max(1.0);
            assert!(fine <= coarse + floor, "{} at tol {tol:e}: {coarse:e} -> {fine:e}", case.name);
        }
    }
}

#[test]
fn doubling_the_cut_changes_nothing() {
    for s in [c(0.5, 14.134_725), c(0.3, 5.0), c(0.9, 25.0), c(2.0, 0.0)] {
        let spec = IntegrandSpec::mellin(s).with_envelope(1.0);
        let f = |t: f64| ((s - 1.0) * t.ln()).exp() / (1.0 + t.exp());
        let tol = 1e-11;
        let full = integrate_semi_infinite(f, &spec, tol).unwrap();
        let cut = truncation_upper(&spec, 0.0, 1.0, tol).unwrap();
        let doubled = integrate_to(f, 2.0 * cut, &spec, &QuadConfig::abs(tol / 10.0)).unwrap();
        assert!((full.value - doubled.value).norm() < tol, "s = {s}: cut {cut}");
    }
}

#[test]
fn nested_matches_iterated_closed_form() {
    // ∫₀^2 t² ∫₀^t τ dτ dt = ∫₀^2 t⁴/2 dt = 16/5
    let r = integrate_nested(|t| real(t * t), real, &[0.0, 1.0, 2.0], InnerRange::FromLower, &QuadConfig::abs(1e-13)).unwrap();
    assert!((r.value.re - 3.2).abs() < 1e-12);
    // ∫₀^2 t² ∫_t^2 τ dτ dt = ∫₀^2 t²(2 - t²/2) dt = 16/3 - 16/5
    let r = integrate_nested(|t| real(t * t), real, &[0.0, 1.0, 2.0], InnerRange::ToUpper, &QuadConfig::abs(1e-13)).unwrap();
    assert!((r.value.re - (16.0 / 3.0 - 3.2)).abs() < 1e-12);
}

#[test]
fn budget_exhaustion_is_a_convergence_error() {
    let cfg = QuadConfig::abs(1e-15).with_max_evals(200);
    let r = zeta_lab::quad::integrate_panels(|x| real((50.0 * x).sin() / (x + 1e-3)), &[0.0, 10.0], &cfg);
    assert!(matches!(r, Err(zeta_lab::Error::Convergence { .. })));
}
