//! Eigen-residuals of the truncated H̃ and H at the first zero and at a
//! control point that is not a zero, for two truncation sizes.

use num_complex::Complex64;
use zeta_lab::operators::{eigen_residual, Hamiltonian};
use zeta_lab::spectrum::find_zeros;
use zeta_lab::states::StateParams;

fn main() -> zeta_lab::Result<()> {
    let rho = find_zeros(15.0, 1e-13)?[0].rho;
    let control = Complex64::new(0.5, 10.0);
    for which in [Hamiltonian::HTilde, Hamiltonian::H] {
        for (label, s) in [("zero", rho), ("control", control)] {
            let p = StateParams::new(s)?;
            for k in [16, 32, 64, 128] {
                let r = eigen_residual(&p, k, which)?;
                println!(
                    "{which:?} {label:>7} K = {k:>3}: max over first 16 = {:.3e}, trusted prefix {}",
                    r.leading_max(16),
                    r.trusted_prefix
                );
            }
        }
    }
    Ok(())
}
