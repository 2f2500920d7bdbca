//! Locate the zeros on the critical line up to τ = 50 and count them
//! independently with the argument principle.

use zeta_lab::spectrum::{count_zeros, find_zeros, winding_number, StripRectangle};

fn main() -> zeta_lab::Result<()> {
    let zeros = find_zeros(50.0, 1e-12)?;
    for z in &zeros {
        println!("{:>2}  tau = {:.15}  |zeta| = {:.1e}", z.index, z.tau, z.residual);
    }
    let rect = StripRectangle::new(0.05, 0.95, 0.0, 50.0)?;
    let (raw, clearance) = winding_number(&rect)?;
    println!(
        "argument principle on [0.05, 0.95] x [0, 50]: {} (raw {raw:.6}, min |zeta| {clearance:.2e})",
        count_zeros(&rect)?
    );
    Ok(())
}
