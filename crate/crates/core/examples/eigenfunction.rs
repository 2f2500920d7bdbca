//! Ψ(s, x) at a zero and at a nearby non-zero: the value at x = 0 is
//! Γ(s)η(s), which vanishes only at zeros.

use num_complex::Complex64;
use zeta_lab::spectrum::xi_bc;
use zeta_lab::states::{psi, psi_tilde, StateParams};

fn main() -> zeta_lab::Result<()> {
    let rho = Complex64::new(0.5, 14.134_725_141_734_693);
    let off = Complex64::new(0.5, 14.5);
    for s in [rho, off] {
        let p = StateParams::new(s)?;
        println!("s = {s}   Gamma(s) eta(s) = {:.3e}", xi_bc(s)?);
        for x in [0.0, 0.5, 1.0, 2.0, 5.0, 10.0] {
            let v = psi(&p, x)?;
            let w = psi_tilde(&p, x)?;
            println!("  x = {x:>4}: psi {:+.6e}{:+.6e}i   psi~ {:+.6e}{:+.6e}i", v.value.re, v.value.im, w.value.re, w.value.im);
        }
    }
    Ok(())
}
