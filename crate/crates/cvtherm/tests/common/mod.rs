//! Independent numerical oracles for the integration suite. Nothing here
//! calls into the crate's linear-algebra paths: eigenvalues come from a
//! hand-rolled cyclic Jacobi sweep and relative entropies from a truncated
//! Fock-space sum, so agreement with the library is meaningful evidence.

/// Eigenvalues of a real symmetric matrix by cyclic Jacobi rotations,
/// returned in non-increasing order. Plain `Vec` storage; no nalgebra.
pub fn jacobi_eigenvalues(matrix: &[Vec<f64>]) -> Vec<f64> {
    let n = matrix.len();
    let mut a: Vec<Vec<f64>> = matrix.to_vec();
    for row in &a {
        assert_eq!(row.len(), n, "oracle needs a square matrix");
    }
    for _sweep in 0..100 {
        let mut off = 0.0;
        for p in 0..n {
            for q in (p + 1)..n {
                off += a[p][q] * a[p][q];
            }
        }
        if off < 1e-28 {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = if theta >= 0.0 {
                    1.0 / (theta + (1.0 + theta * theta).sqrt())
                } else {
                    -1.0 / (-theta + (1.0 + theta * theta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut vals: Vec<f64> = (0..n).map(|i| a[i][i]).collect();
    vals.sort_by(|x, y| y.partial_cmp(x).expect("finite eigenvalues"));
    vals
}

/// Mean photon number of a thermal state at quadrature variance `eta`.
fn nbar(eta: f64) -> f64 {
    (eta - 1.0) / 2.0
}

/// Relative entropy `S(rho || gamma)` in nats between single-mode thermal
/// states at levels `eta_rho` and `eta_gamma`, summed over number states up
/// to `cutoff`. Thermal states are diagonal in the Fock basis with geometric
/// weights `p_n = (1 - x) x^n`, `x = nbar / (nbar + 1)`.
pub fn fock_relative_entropy_thermal(eta_rho: f64, eta_gamma: f64, cutoff: usize) -> f64 {
    let xr = nbar(eta_rho) / (nbar(eta_rho) + 1.0);
    let xg = nbar(eta_gamma) / (nbar(eta_gamma) + 1.0);
    assert!(xg > 0.0, "reference must be full rank");
    let mut total = 0.0;
    for n in 0..=cutoff {
        let p = (1.0 - xr) * xr.powi(n as i32);
        if p == 0.0 {
            // vacuum reference state: only n = 0 contributes
            continue;
        }
        let ln_q = (1.0 - xg).ln() + (n as f64) * xg.ln();
        total += p * (p.ln() - ln_q);
    }
    total
}

/// Convenience: the matrices listed for the two-mode examples, as row-major
/// nested vectors for the oracle.
pub fn rows_4x4(entries: [[f64; 4]; 4]) -> Vec<Vec<f64>> {
    entries.iter().map(|r| r.to_vec()).collect()
}
