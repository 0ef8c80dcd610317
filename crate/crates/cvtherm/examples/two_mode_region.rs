//! Two-mode inputs reach a genuinely two-dimensional set of single-mode
//! states. This example samples it, rasterizes the law-implied outer bounds
//! on a grid, and writes both to `region.csv` for plotting.
//!
//! ```bash
//! cargo run --release --example two_mode_region
//! # then e.g.: python -c "import pandas as pd; d = pd.read_csv('region.csv'); print(d.groupby('source').size())"
//! ```

use std::path::Path;

use cvtherm::prelude::*;
use cvtherm::reach::{
    convex_hull_area, emit_region, RegionContext, RegionData, RegionFormat,
};
use nalgebra::{DMatrix, DVector};

fn main() -> Result<()> {
    let eta = 2.0;
    // locally two thermal-looking modes at level 4, strongly correlated:
    // symplectic spectrum sqrt(4^2 - 3.7^2) ~ 1.52 on both modes
    let state = GaussianState::new(
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

    let samples = sample_reachable(&state, eta, 3, 20_000, 7)?;
    let pts: Vec<(f64, f64)> = samples.iter().map(|s| (s.tau1, s.tau2)).collect();
    println!("sampled {} outputs, hull area {:.4}", pts.len(), convex_hull_area(&pts));

    // every sample obeys every outer bound at its exact coordinates
    let ctx = RegionContext::new(&state, eta, 1e-8)?;
    let escapes = pts
        .iter()
        .filter(|(t1, t2)| {
            let c = ctx.check_point(*t1, *t2);
            !(c.allowed_by_t1 && c.allowed_by_t2 && c.allowed_by_free_energy && c.physical)
        })
        .count();
    println!("outer-bound escapes: {escapes}");

    let spec = GridSpec {
        tau1_range: (0.2, 8.0),
        tau2_range: (0.2, 8.0),
        resolution: 120,
    };
    let mut grid = theorem_bound_region(&state, eta, spec, 1e-8)?;
    grid.mark_samples(&samples);
    let t1_cells = grid.cells.iter().filter(|c| c.allowed_by_t1).count();
    let t2_cells = grid.cells.iter().filter(|c| c.allowed_by_t2).count();
    let f_cells = grid.cells.iter().filter(|c| c.allowed_by_free_energy).count();
    println!(
        "grid cells allowed: directional {t1_cells}, mode {t2_cells}, free-energy {f_cells} of {}",
        grid.cells.len()
    );

    let data = RegionData {
        samples,
        grid: Some(grid),
    };
    emit_region(&data, Path::new("region.csv"), RegionFormat::Csv)?;
    println!("wrote region.csv (columns tau1,tau2,source)");
    Ok(())
}
