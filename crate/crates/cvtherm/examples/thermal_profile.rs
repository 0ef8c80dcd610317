//! Compute the full monotone profile of a few states against a common bath.
//!
//! ```bash
//! cargo run --example thermal_profile
//! ```

use cvtherm::prelude::*;
use nalgebra::{DMatrix, DVector};

fn show(label: &str, state: &GaussianState, eta: f64) -> Result<()> {
    let p = profile(state, eta)?;
    println!("-- {label} (eta = {eta})");
    println!("   tau  = {:?}", p.tau);
    println!("   mu   = {:?}", p.mu);
    println!("   nu   = {:?}", p.nu);
    println!("   snr  = {:?}   |<x>|^2 = {}", p.snr, p.moment_norm);
    match p.rel_ent_athermality {
        Some(f) => println!("   athermality = {f:.6} nats"),
        None => println!("   athermality = {}", p.rel_ent_note.unwrap_or_default()),
    }
    println!(
        "   preparation squeezing = {:.6}, counts: {} super / {} sub directional, {} super / {} sub mode",
        p.squeezing_unitary_formation, p.k_super, p.k_sub, p.k_sp_super, p.k_sp_sub
    );
    Ok(())
}

fn main() -> Result<()> {
    let eta = 2.0;

    // the bath's own state: every monotone sits at its fixed point
    show("thermal state", &GaussianState::thermal(2, eta)?, eta)?;

    // a single mode hot along q, at vacuum noise along p
    let anisotropic = GaussianState::new(
        1,
        DVector::zeros(2),
        DMatrix::from_row_slice(2, 2, &[3.0, 0.0, 0.0, 1.0]),
    )?;
    show("anisotropic single mode", &anisotropic, eta)?;

    // a displaced isotropic mode: all the athermality is in the signal
    let displaced = GaussianState::new(
        1,
        DVector::from_vec(vec![1.5, -0.5]),
        DMatrix::identity(2, 2) * eta,
    )?;
    show("displaced thermal mode", &displaced, eta)?;

    // strongly correlated two-mode state: locally hot, globally much purer
    let correlated = GaussianState::new(
        2,
        DVector::zeros(4),
        DMatrix::from_row_slice(
            4,
            4,
            &[
                4.0, 0.0, 3.7, 0.0, //
                0.0, 4.0, 0.0, -3.7, //
                3.7, 0.0, 4.0, 0.0, //
                0.0, -3.7, 0.0, 4.0,
            ],
        ),
    )?;
    show("two-mode correlated state", &correlated, eta)?;

    Ok(())
}
