//! J₀ across the series/asymptotic switch, and the Hankel pair
//! ∫₀^∞ e^{-t} J₀(2√(xt)) dt = e^{-x}.

use zeta_lab::special::{bessel_j0, j0_asymptotic, j0_series};
use zeta_lab::states::hankel_exponential;

fn main() -> zeta_lab::Result<()> {
    for z in [1.0, 8.0, 14.0, 16.0, 20.0, 40.0] {
        println!(
            "z = {z:>4}: J0 {:+.16e}  series - asymptotic {:+.1e}",
            bessel_j0(z)?,
            j0_series(z) - j0_asymptotic(z)
        );
    }
    for x in [0.0, 0.5, 2.0, 5.0, 10.0] {
        let r = hankel_exponential(x, 1e-11)?;
        println!("x = {x:>4}: transform {:.15e}  e^-x {:.15e}  diff {:.1e}", r.value.re, (-x).exp(), (r.value.re - (-x).exp()).abs());
    }
    Ok(())
}
