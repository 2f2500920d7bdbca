//! The adjoint amplitude G at the first zero: tail form against the form
//! rewritten through the vanishing of ζ, small- and large-t behaviour, and
//! the first-order equations satisfied by F and G.

use num_complex::Complex64;
use zeta_lab::spectrum::find_zeros;
use zeta_lab::states::{
    amplitude_g_rewritten, amplitude_g_tail, gram_head_route, gram_with, ode_operator_f, ode_operator_g,
    reflected_fermi_integral, StateParams,
};

fn main() -> zeta_lab::Result<()> {
    let rho = find_zeros(15.0, 1e-13)?[0].rho;
    let p = StateParams::new(rho)?;
    println!("rho = {rho}");
    println!(
        "reflected integral |int tau^-rho/(1+e^tau)| = {:.2e}",
        reflected_fermi_integral(rho, 1e-13)?.value.norm()
    );
    for t in [0.5, 1.0, 2.0, 5.0] {
        let tail = amplitude_g_tail(&p, t)?.value;
        let rewritten = amplitude_g_rewritten(&p, t)?.value;
        println!(
            "t = {t:>4}: G_tail = {tail:.12}  |G_rewritten - G_tail| = {:.2e}",
            (rewritten - tail).norm()
        );
    }
    let small: Vec<Complex64> = [1e-3, 1e-4]
        .iter()
        .map(|&t| amplitude_g_rewritten(&p, t).map(|r| r.value))
        .collect::<Result<_, _>>()?;
    let extrapolated = (10.0 * small[1] - small[0]) / 9.0;
    println!("t -> 0: extrapolated {extrapolated:.9}, -g/(1-rho) = {:.9}", -1.0 / (1.0 - rho));
    let far = amplitude_g_tail(&p, 30.0)?.value;
    println!("t = 30: t * G = {:.9}", far * 30.0);
    for t in [0.1, 1.0, 10.0] {
        println!(
            "t = {t:>4}: F equation {:.1e}, G equation - i g {:.1e}",
            ode_operator_f(&p, t)?.norm(),
            (ode_operator_g(&p, t)? - Complex64::i() * p.g_const).norm()
        );
    }
    let stable = gram_with(&p, &p, 1e-10)?.value;
    let head = gram_head_route(&p, &p, 1e-8)?.value;
    println!("pairing: tail route {stable:.9e}, head route {head:.9e}");
    Ok(())
}
