//! ∫₀^∞ t^c /(1+e^t)² dt by quadrature against the two candidate
//! closed forms.

use num_complex::Complex64;
use zeta_lab::states::{norm_integral, norm_series_oracle, paper_norm_closed_form};

fn main() -> zeta_lab::Result<()> {
    for c in [1.5, 2.0, 2.5, 3.0, 4.0] {
        let c = Complex64::new(c, 0.0);
        let q = norm_integral(c)?.value.re;
        let below = norm_series_oracle(c - 1.0)?.re;
        let printed = paper_norm_closed_form(c)?.re;
        let above = norm_series_oracle(c + 1.0)?.re;
        println!(
            "c = {:.1}: quadrature {q:.15}  series(c-1) {below:.15}  closed form {printed:.15}  series(c+1) {above:.15}",
            c.re
        );
    }
    match norm_integral(Complex64::new(1.0, 0.0)) {
        Err(e) => println!("c = 1: {e}"),
        Ok(r) => println!("c = 1: unexpectedly {}", r.value),
    }
    Ok(())
}
