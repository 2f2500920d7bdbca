//! Pairing matrix ⟨Φ_ρ|Ψ_ρ'⟩ over the first zeros, with the closed-form
//! diagonal and the integration-by-parts value beside it.

use std::time::Instant;

use zeta_lab::spectrum::find_zeros;
use zeta_lab::states::{gram, gram_diagonal_by_parts, gram_diagonal_closed_form, PAIRING_SIGN};

fn main() -> zeta_lab::Result<()> {
    let zeros = find_zeros(26.0, 1e-13)?;
    let start = Instant::now();
    for a in &zeros {
        for b in &zeros {
            let e = gram(a.rho, b.rho)?;
            print!("  {:>+.6e}{:+.6e}i (err {:.1e})", e.value.re, e.value.im, e.abs_err);
        }
        println!();
    }
    println!("elapsed {:.1?}", start.elapsed());
    for z in &zeros {
        let closed = PAIRING_SIGN * gram_diagonal_closed_form(z.rho)?;
        let parts = gram_diagonal_by_parts(z.rho)?;
        println!(
            "tau = {:.6}: sign * closed form {:+.9e}{:+.9e}i, by parts {:+.9e}{:+.9e}i",
            z.tau, closed.re, closed.im, parts.re, parts.im
        );
    }
    Ok(())
}
