//! Truncated ladder operators, the spectrum of T, and why f(T) is taken
//! by spectral calculus rather than by its power series.

use zeta_lab::operators::{build_composites, fermi_of_t, fermi_series, tridiag_eigh};

fn main() -> zeta_lab::Result<()> {
    let (_, _, t2) = build_composites(2)?;
    let eig = tridiag_eigh(&t2)?;
    println!("K = 2: eigenvalues of T {:?}", eig.values.as_slice());
    let (series, _) = fermi_series(&t2, 80)?;
    let spectral = fermi_of_t(&t2)?;
    let gap = (&series.entries - &spectral.entries).iter().map(|z| z.norm()).fold(0.0, f64::max);
    println!("K = 2: series vs spectral max difference {gap:.2e}");
    for k in [8, 16, 64] {
        let (_, _, t) = build_composites(k)?;
        let lmax = tridiag_eigh(&t)?.values.last().copied().unwrap_or(0.0);
        let (_, history) = fermi_series(&t, 80)?;
        println!(
            "K = {k:>2}: lambda_max {lmax:.3}  series max entry at m = 20, 80: {:.2e} {:.2e}  |f(T)| max {:.3}",
            history[20],
            history[80],
            fermi_of_t(&t)?.max_abs()
        );
    }
    Ok(())
}
