//! Exact coefficients of x/(1+e^{-x}) and the behaviour of its partial
//! sums inside and outside the disc |x| < π.

use zeta_lab::special::{series_coeff_exact, CoefficientTable};

fn main() -> zeta_lab::Result<()> {
    for m in 0..=10 {
        println!("c_{m:<2} = {}", series_coeff_exact(m)?);
    }
    let table = CoefficientTable::new(80)?;
    for x in [1.0_f64, 2.0, 3.0, 3.5] {
        let exact = x / (1.0 + (-x).exp());
        print!("x = {x}:");
        for m in [10, 20, 40, 80] {
            print!("  M={m} err {:.2e}", (table.partial_sum(x, m) - exact).abs());
        }
        println!();
    }
    let mags = table.term_magnitudes(4.0);
    println!("x = 4: |c_m x^m| at m = 20, 40, 80: {:.2e} {:.2e} {:.2e}", mags[20], mags[40], mags[80]);
    Ok(())
}
