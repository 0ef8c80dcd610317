//! The single-mode reachability law: everything a single-mode state can
//! reach lies on the straight segment from its own `(tau1, tau2)` to the
//! bath point `(eta, eta)`.
//!
//! ```bash
//! cargo run --release --example reach_line
//! ```

use cvtherm::prelude::*;
use cvtherm::reach::{convex_hull_area, distance_to_segment};
use nalgebra::{DMatrix, DVector};

fn main() -> Result<()> {
    let eta = 2.0;
    let state = GaussianState::new(
        1,
        DVector::zeros(2),
        DMatrix::from_row_slice(2, 2, &[3.0, 0.0, 0.0, 1.0]),
    )?;

    let (start, end) = single_mode_reach_line(&state, eta)?;
    println!("predicted segment: {start:?} -> {end:?}");

    let samples = sample_reachable(&state, eta, 3, 5_000, 2024)?;
    let mut worst = 0.0_f64;
    let mut leftmost = f64::INFINITY;
    for s in &samples {
        worst = worst.max(distance_to_segment((s.tau1, s.tau2), start, end));
        leftmost = leftmost.min(s.tau1);
    }
    let pts: Vec<(f64, f64)> = samples.iter().map(|s| (s.tau1, s.tau2)).collect();
    println!(
        "5000 samples: max perpendicular deviation {worst:.3e}, hull area {:.3e}",
        convex_hull_area(&pts)
    );
    println!(
        "samples range from tau1 = {leftmost:.4} (near the bath) to {:.4} (the input)",
        samples.iter().map(|s| s.tau1).fold(f64::MIN, f64::max)
    );
    println!("the region really is just a line.");
    Ok(())
}
