//! Williamson and Bloch-Messiah decompositions: express a Gaussian state as
//! passively rotated, squeezed thermal modes and check the round trips.
//!
//! ```bash
//! cargo run --example decompositions
//! ```

use cvtherm::prelude::*;
use cvtherm::symplectic::symplectic_form;
use nalgebra::{DMatrix, DVector};

fn main() -> Result<()> {
    let state = GaussianState::new(
        2,
        DVector::zeros(4),
        DMatrix::from_row_slice(
            4,
            4,
            &[
                4.0, 0.0, 1.73, 0.0, //
                0.0, 4.0, 0.0, -1.73, //
                1.73, 0.0, 2.4, 0.0, //
                0.0, -1.73, 0.0, 4.0,
            ],
        ),
    )?;

    let w = williamson(state.cov())?;
    println!("symplectic eigenvalues (ascending): {:?}", w.nu);
    println!(
        "Williamson reconstruction |S D S^T - V|_max = {:.3e}",
        (w.reconstruct() - state.cov()).amax()
    );
    let omega = symplectic_form(2)?;
    println!(
        "symplecticity |S^T Omega S - Omega|_max = {:.3e}",
        (w.s.transpose() * &omega * &w.s - &omega).amax()
    );

    let bm = bloch_messiah(&w.s)?;
    println!("squeezing parameters (descending): {:?}", bm.r);
    println!(
        "Bloch-Messiah reconstruction |O1 Z O2 - S|_max = {:.3e}",
        (bm.reconstruct() - &w.s).amax()
    );
    println!(
        "total preparation squeezing sum r_k = {:.6}",
        bm.r.iter().sum::<f64>()
    );
    println!(
        "(equals squeezing_unitary_formation: {:.6})",
        squeezing_unitary_formation(&state)?
    );

    // cross-check the spectrum against the independent route
    let nu = symplectic_spectrum(state.cov())?;
    println!("spectrum via i*Omega*V eigenvalues: {nu:?}");
    Ok(())
}
