//! Matrix decompositions for Gaussian-state analysis.
//!
//! Three related factorizations live here:
//!
//! * symmetric eigen-decomposition with a fixed (descending) ordering,
//! * the Williamson normal form `V = S diag(nu_1, nu_1, ..., nu_m, nu_m) S^T`
//!   of a positive-definite covariance matrix, with `S` symplectic, and
//! * the Bloch-Messiah (Euler) form `S = O1 Z O2` of a symplectic matrix,
//!   with `O1, O2` orthogonal symplectic and
//!   `Z = diag(e^{r_1}, e^{-r_1}, ..., e^{r_m}, e^{-r_m})` a product of
//!   single-mode squeezers.
//!
//! Together these express any Gaussian state as displaced, passively rotated,
//! squeezed thermal modes; the squeezing parameters `r_k` and the symplectic
//! eigenvalues `nu_k` are the quantities consumed by the monotone layer.
//!
//! Williamson is computed from the antisymmetric matrix
//! `A = V^{1/2} Omega V^{1/2}`: the canonical pairs of `A` give `S` columns
//! and the block magnitudes give the `nu_k` directly. Bloch-Messiah goes
//! through the polar decomposition `S = P O`: the positive factor `P` is a
//! symmetric symplectic matrix whose eigenpairs `(d, 1/d)` are related by
//! `u <-> -Omega u`, which yields an orthogonal-symplectic diagonalizer.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::symplectic::{omega_times, symplectic_form, OrthogonalSymplecticMatrix};
use crate::{Error, Result};

/// Eigenvalue floor below which positive-definite inputs are rejected.
pub const CONDITIONING_FLOOR: f64 = 1e-12;

/// Result of the Williamson normal form `V = S D S^T`.
#[derive(Debug, Clone)]
pub struct WilliamsonResult {
    /// Symplectic matrix `S`.
    pub s: DMatrix<f64>,
    /// Symplectic eigenvalues in non-decreasing order, one per mode.
    pub nu: Vec<f64>,
}

impl WilliamsonResult {
    /// The diagonal factor `diag(nu_1, nu_1, ..., nu_m, nu_m)`.
    pub fn diagonal(&self) -> DMatrix<f64> {
        let m = self.nu.len();
        let mut d = DMatrix::zeros(2 * m, 2 * m);
        for (k, &nu) in self.nu.iter().enumerate() {
            d[(2 * k, 2 * k)] = nu;
            d[(2 * k + 1, 2 * k + 1)] = nu;
        }
        d
    }

    /// `S D S^T`, for round-trip checks.
    pub fn reconstruct(&self) -> DMatrix<f64> {
        let d = self.diagonal();
        &self.s * d * self.s.transpose()
    }
}

/// Result of the Bloch-Messiah factorization `S = O1 Z O2`.
#[derive(Debug, Clone)]
pub struct BlochMessiahResult {
    pub o1: OrthogonalSymplecticMatrix,
    /// Squeezing parameters, sorted descending, all `>= 0`.
    pub r: Vec<f64>,
    pub o2: OrthogonalSymplecticMatrix,
}

impl BlochMessiahResult {
    /// The squeezer `diag(e^{r_1}, e^{-r_1}, ...)`.
    pub fn squeezer(&self) -> DMatrix<f64> {
        let m = self.r.len();
        let mut z = DMatrix::zeros(2 * m, 2 * m);
        for (k, &r) in self.r.iter().enumerate() {
            z[(2 * k, 2 * k)] = r.exp();
            z[(2 * k + 1, 2 * k + 1)] = (-r).exp();
        }
        z
    }

    /// `O1 Z O2`, for round-trip checks.
    pub fn reconstruct(&self) -> DMatrix<f64> {
        self.o1.matrix() * self.squeezer() * self.o2.matrix()
    }
}

/// Eigen-decomposition of a symmetric matrix with eigenvalues sorted in
/// non-increasing order and eigenvectors as matching columns.
pub fn sym_eig_desc(v: &DMatrix<f64>) -> Result<(Vec<f64>, DMatrix<f64>)> {
    sym_eig_desc_tol(v, crate::symplectic::STRUCTURE_TOL)
}

/// As [`sym_eig_desc`] with an explicit symmetry tolerance.
pub fn sym_eig_desc_tol(v: &DMatrix<f64>, tol: f64) -> Result<(Vec<f64>, DMatrix<f64>)> {
    let (r, c) = v.shape();
    if r != c || r == 0 {
        return Err(Error::InvalidDimension(format!(
            "expected a nonempty square matrix, got {r}x{c}"
        )));
    }
    let defect = (v - v.transpose()).amax();
    if defect > tol {
        return Err(Error::NotSymmetric { defect, tol });
    }
    let sym = (v + v.transpose()) * 0.5;
    let eig = sym.symmetric_eigen();
    let mut order: Vec<usize> = (0..r).collect();
    order.sort_by(|&a, &b| {
        eig.eigenvalues[b]
            .partial_cmp(&eig.eigenvalues[a])
            .expect("eigenvalues of a real symmetric matrix are finite")
    });
    let values: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = DMatrix::from_fn(r, r, |row, col| eig.eigenvectors[(row, order[col])]);
    Ok((values, vectors))
}

/// Symmetric positive square root via eigen-decomposition; errors when the
/// minimum eigenvalue is below [`CONDITIONING_FLOOR`].
pub(crate) fn sqrt_psd(v: &DMatrix<f64>, what: &str) -> Result<(DMatrix<f64>, DMatrix<f64>)> {
    let (vals, vecs) = sym_eig_desc(v)?;
    let min = vals.last().copied().unwrap_or(f64::NEG_INFINITY);
    if min < CONDITIONING_FLOOR {
        return Err(Error::Conditioning(format!(
            "{what}: minimum eigenvalue {min:.3e} below floor {CONDITIONING_FLOOR:.1e}"
        )));
    }
    let n = vals.len();
    let droot = DMatrix::from_fn(n, n, |r, c| if r == c { vals[r].sqrt() } else { 0.0 });
    let dinv_root = DMatrix::from_fn(n, n, |r, c| {
        if r == c {
            1.0 / vals[r].sqrt()
        } else {
            0.0
        }
    });
    let root = &vecs * droot * vecs.transpose();
    let inv_root = &vecs * dinv_root * vecs.transpose();
    Ok((root, inv_root))
}

/// Symplectic spectrum of a positive-definite covariance matrix: the moduli
/// of the eigenvalues of `i Omega V`, deduplicated to one value per mode and
/// sorted in non-decreasing order.
pub fn symplectic_spectrum(v: &DMatrix<f64>) -> Result<Vec<f64>> {
    let (vals, _) = sym_eig_desc(v)?;
    let min = vals.last().copied().unwrap_or(f64::NEG_INFINITY);
    if min < CONDITIONING_FLOOR {
        return Err(Error::Conditioning(format!(
            "symplectic spectrum: minimum eigenvalue {min:.3e} below floor"
        )));
    }
    let m = v.nrows() / 2;
    let omega = symplectic_form(m)?;
    let prod = &omega * v;
    let eig = prod.complex_eigenvalues();
    let mut mods: Vec<f64> = eig.iter().map(|z| z.norm()).collect();
    mods.sort_by(|a, b| a.partial_cmp(b).expect("finite moduli"));
    // eigenvalues come in conjugate pairs +- i*nu; average each adjacent pair
    let nu: Vec<f64> = (0..m).map(|k| 0.5 * (mods[2 * k] + mods[2 * k + 1])).collect();
    Ok(nu)
}

/// Williamson normal form of a positive-definite covariance matrix.
pub fn williamson(v: &DMatrix<f64>) -> Result<WilliamsonResult> {
    let (root, _) = sqrt_psd(v, "williamson")?;
    let m = v.nrows() / 2;
    let omega = symplectic_form(m)?;
    let a = &root * &omega * &root;
    let a = (&a - a.transpose()) * 0.5; // exactly antisymmetric
    // Hermitian i*A has real spectrum +-nu_k; keep the positive half.
    let dim = 2 * m;
    let h = DMatrix::from_fn(dim, dim, |r, c| Complex64::new(0.0, a[(r, c)]));
    let eig = h.symmetric_eigen();
    let mut pairs: Vec<(f64, usize)> = eig
        .eigenvalues
        .iter()
        .enumerate()
        .filter(|(_, &l)| l > 0.0)
        .map(|(i, &l)| (l, i))
        .collect();
    if pairs.len() != m {
        return Err(Error::Conditioning(format!(
            "williamson: expected {m} positive canonical frequencies, found {}",
            pairs.len()
        )));
    }
    pairs.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite"));
    // Eigenvector z = u + i v of i*A with eigenvalue nu gives A u = nu v and
    // A v = -nu u; the columns (sqrt2 v, sqrt2 u) build an orthogonal Q with
    // Q^T A Q in canonical [[0, nu], [-nu, 0]] blocks.
    let mut q = DMatrix::zeros(dim, dim);
    let sqrt2 = 2.0_f64.sqrt();
    for (k, &(_, idx)) in pairs.iter().enumerate() {
        let z = eig.eigenvectors.column(idx);
        for row in 0..dim {
            q[(row, 2 * k)] = sqrt2 * z[row].im;
            q[(row, 2 * k + 1)] = sqrt2 * z[row].re;
        }
    }
    let nu: Vec<f64> = pairs.iter().map(|&(l, _)| l).collect();
    let mut dinv_root = DMatrix::zeros(dim, dim);
    for (k, &n) in nu.iter().enumerate() {
        let inv = 1.0 / n.sqrt();
        dinv_root[(2 * k, 2 * k)] = inv;
        dinv_root[(2 * k + 1, 2 * k + 1)] = inv;
    }
    let s = &root * q * dinv_root;
    Ok(WilliamsonResult { s, nu })
}

/// Bloch-Messiah factorization of a symplectic matrix.
pub fn bloch_messiah(s: &DMatrix<f64>) -> Result<BlochMessiahResult> {
    bloch_messiah_tol(s, 1e-8)
}

/// As [`bloch_messiah`] with an explicit symplecticity tolerance on the input.
pub fn bloch_messiah_tol(s: &DMatrix<f64>, tol: f64) -> Result<BlochMessiahResult> {
    let (rows, cols) = s.shape();
    if rows != cols || rows == 0 || rows % 2 != 0 {
        return Err(Error::InvalidDimension(format!(
            "symplectic matrix must be square of even size, got {rows}x{cols}"
        )));
    }
    let m = rows / 2;
    let omega = symplectic_form(m)?;
    let defect = (s.transpose() * &omega * s - &omega).amax();
    if defect > tol {
        return Err(Error::Structure(format!(
            "input is not symplectic (defect {defect:.3e} > {tol:.3e})"
        )));
    }

    // Polar decomposition S = P O with P = (S S^T)^{1/2} symmetric
    // positive-definite symplectic and O orthogonal symplectic.
    let t = s * s.transpose();
    let t = (&t + t.transpose()) * 0.5;
    let (tvals, tvecs) = sym_eig_desc(&t)?;
    if tvals.last().copied().unwrap_or(0.0) < CONDITIONING_FLOOR {
        return Err(Error::Conditioning(
            "bloch-messiah: S S^T is numerically singular".into(),
        ));
    }

    // Eigenvalues of P = T^{1/2} come in pairs (d, 1/d); pick d > 1 and pair
    // each eigenvector u with -Omega u (the eigenvector for 1/d). Eigenvalues
    // within `pair_tol` of 1 are grouped into an Omega-invariant unit block
    // handled by a symplectic Gram-Schmidt pass.
    let pair_tol: f64 = 1e-10;
    let dim = 2 * m;
    struct Pair {
        r: f64,
        u: DVector<f64>,
        w: DVector<f64>,
    }
    let mut selected: Vec<Pair> = Vec::new();
    let mut near_unit: Vec<DVector<f64>> = Vec::new();
    for i in 0..dim {
        let lambda = tvals[i]; // eigenvalue of T = P^2
        let col = tvecs.column(i).into_owned();
        if lambda >= (1.0 + pair_tol).powi(2) {
            let u = col;
            let w = -omega_times(&u);
            selected.push(Pair {
                r: 0.5 * lambda.ln(),
                u,
                w,
            });
        } else if lambda > 1.0 / (1.0 + pair_tol).powi(2) {
            near_unit.push(col);
        }
        // eigenvalues below 1 are the partners of the selected ones; their
        // span is regenerated as -Omega u
    }
    if near_unit.len() != 2 * (m - selected.len()) {
        return Err(Error::Conditioning(format!(
            "bloch-messiah: inconsistent eigenvalue pairing ({} squeezed pairs, {} unit vectors)",
            selected.len(),
            near_unit.len()
        )));
    }
    // Symplectic Gram-Schmidt inside the (numerically) unit-eigenvalue block.
    while let Some(first) = near_unit.first().cloned() {
        let mut u = first;
        u /= u.norm();
        let w = -omega_times(&u);
        near_unit.remove(0);
        // project the remaining vectors off span{u, w}
        for vec in near_unit.iter_mut() {
            let cu = u.dot(vec);
            let cw = w.dot(vec);
            *vec -= &u * cu + &w * cw;
        }
        near_unit.retain(|v| v.norm() > 1e-6);
        for vec in near_unit.iter_mut() {
            let n = vec.norm();
            *vec /= n;
        }
        selected.push(Pair { r: 0.0, u, w });
    }
    if selected.len() != m {
        return Err(Error::Conditioning(
            "bloch-messiah: failed to assemble a full symplectic basis".into(),
        ));
    }

    // Deterministic gauge: sort by squeezing descending, then fix the sign of
    // each pair so the first significant entry of u is positive.
    selected.sort_by(|a, b| b.r.partial_cmp(&a.r).expect("finite"));
    for pair in selected.iter_mut() {
        if let Some(lead) = pair.u.iter().find(|x| x.abs() > 1e-8) {
            if *lead < 0.0 {
                pair.u = -&pair.u;
                pair.w = -&pair.w;
            }
        }
    }

    let mut k = DMatrix::zeros(dim, dim);
    for (idx, pair) in selected.iter().enumerate() {
        k.column_mut(2 * idx).copy_from(&pair.u);
        k.column_mut(2 * idx + 1).copy_from(&pair.w);
    }
    let r: Vec<f64> = selected.iter().map(|p| p.r).collect();

    // O = P^{-1} S from the eigen data of T: P^{-1} = E diag(1/sqrt(lambda)) E^T
    let inv_root = {
        let d = DMatrix::from_fn(dim, dim, |i, j| {
            if i == j {
                1.0 / tvals[i].sqrt()
            } else {
                0.0
            }
        });
        &tvecs * d * tvecs.transpose()
    };
    let orth = inv_root * s;
    let o1 = OrthogonalSymplecticMatrix::with_tol(k.clone(), 1e-7)?;
    let o2_mat = k.transpose() * orth;
    let o2 = OrthogonalSymplecticMatrix::with_tol(o2_mat, 1e-7)?;
    Ok(BlochMessiahResult { o1, r, o2 })
}
