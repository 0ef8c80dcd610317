//! Certify candidate state transitions against all six laws.
//!
//! ```bash
//! cargo run --example certify_transition
//! ```

use cvtherm::prelude::*;
use nalgebra::{DMatrix, DVector};

fn report(label: &str, verdict: &TransitionVerdict) {
    println!("-- {label}: {:?}", verdict.verdict);
    for law in &verdict.laws {
        let status = if law.skipped {
            "skipped"
        } else if law.passed {
            "pass"
        } else {
            "FAIL"
        };
        println!("   {:?}: {status} (margin {:+.3e})", law.law, law.margin);
    }
}

fn main() -> Result<()> {
    let eta = 2.0;
    let rho = GaussianState::new(
        1,
        DVector::zeros(2),
        DMatrix::from_row_slice(2, 2, &[3.0, 0.0, 0.0, 1.0]),
    )?;

    // a genuine free operation: half the light replaced by bath noise
    let sigma = pure_loss_channel(eta, 0.5)?.apply(&rho)?;
    report(
        "half loss (genuine operation)",
        &certify_transition(&rho, &sigma, eta, 1e-8)?,
    );

    // the reverse direction tries to pull a state away from the bath
    report(
        "reverse of the above",
        &certify_transition(&sigma, &rho, eta, 1e-8)?,
    );

    // heating a thermal state past the bath level: excluded several ways
    let hot = GaussianState::thermal(1, 3.0)?;
    report(
        "thermal 2.0 -> thermal 3.0",
        &certify_transition(&GaussianState::thermal(1, eta)?, &hot, eta, 1e-8)?,
    );

    // amplifying the mean is excluded by the signal laws alone
    let weak = GaussianState::new(1, DVector::from_vec(vec![1.0, 0.0]), DMatrix::identity(2, 2) * eta)?;
    let strong = GaussianState::new(1, DVector::from_vec(vec![2.0, 0.0]), DMatrix::identity(2, 2) * eta)?;
    report(
        "displacement amplification",
        &certify_transition(&weak, &strong, eta, 1e-8)?,
    );

    println!();
    println!("note: NotExcluded is not a feasibility certificate — the laws are");
    println!("necessary, not sufficient, so some non-free processes pass them all.");
    Ok(())
}
