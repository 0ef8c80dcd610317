//! Temperature-like spectra and resource monotones of Gaussian states.
//!
//! For a state with moments `(<x>, V)` relative to a bath at thermal level
//! `eta`, this module computes:
//!
//! * **Principal directional temperatures** `tau_k`: the eigenvalues of `V`
//!   in non-increasing order — the extremal quadrature variances over
//!   phase-space directions.
//! * **Principal mode temperatures** `mu_k`: the extremal *mean* variances
//!   of single modes isolable by passive unitaries. These are the
//!   eigenvalues of the Hermitian image `W~` of `W = (V + Omega V Omega^T)/2`
//!   under the mode isomorphism; the spectrum of the real `W` is doubly
//!   degenerate and `W~` collapses each pair to one value.
//! * **Symplectic eigenvalues** `nu_k` (non-decreasing): the thermal levels
//!   required to *prepare* the state by Gaussian unitaries.
//! * **Principal directional SNRs**: square roots of the eigenvalues of
//!   `R = V^{-1/2} <x><x>^T V^{-1/2}`; since `R` has rank at most one, only
//!   the top value is nonzero.
//! * **Principal mode SNRs**: directional SNRs restricted to symplectic
//!   subspaces. The top value coincides with the top directional SNR, and
//!   every deeper value vanishes because the symplectic complement of the
//!   mode carrying the mean holds no signal; a Monte-Carlo minimizer over
//!   random symplectic subspaces cross-checks this analytic shortcut.
//! * **Relative entropy of athermality** `S(rho || gamma)` with respect to
//!   the bath's thermal state (nats), and the **squeezing of unitary
//!   formation** — the total single-mode squeezing in the Williamson plus
//!   Bloch-Messiah preparation of the state.

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use serde::Serialize;

use crate::decomp::{bloch_messiah, sqrt_psd, sym_eig_desc, symplectic_spectrum, williamson};
use crate::state::GaussianState;
use crate::symplectic::{embed_w_matrix, haar_unitary, real_rep, symplectic_form, unembed_vector};
use crate::{Error, Result};

/// Classification tolerance used by [`profile`] when counting super- and
/// sub-thermal values.
pub const CLASSIFY_TOL: f64 = 1e-8;

/// All monotone values of a state relative to a bath level `eta`.
#[derive(Debug, Clone, Serialize)]
pub struct ThermalProfile {
    /// Principal directional temperatures, non-increasing (length `2m`).
    pub tau: Vec<f64>,
    /// Principal mode temperatures, non-increasing (length `m`).
    pub mu: Vec<f64>,
    /// Symplectic eigenvalues, non-decreasing (length `m`).
    pub nu: Vec<f64>,
    /// Principal directional SNRs, non-increasing (length `2m`).
    pub snr: Vec<f64>,
    /// Principal mode SNRs, non-increasing (length `m`).
    pub msnr: Vec<f64>,
    /// Sum of squared first moments.
    pub moment_norm: f64,
    /// Relative entropy to the bath thermal state, in nats; absent when the
    /// reference is rank-deficient (`eta = 1`) or the state is too singular.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rel_ent_athermality: Option<f64>,
    /// Why `rel_ent_athermality` is absent, when it is.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rel_ent_note: Option<String>,
    /// Total Bloch-Messiah squeezing of the preparing symplectic.
    pub squeezing_unitary_formation: f64,
    /// Counts of super-/sub-thermal directional temperatures.
    pub k_super: usize,
    pub k_sub: usize,
    /// Counts of super-/sub-thermal mode temperatures.
    pub k_sp_super: usize,
    pub k_sp_sub: usize,
}

/// Values of a spectrum split about the thermal level.
#[derive(Debug, Clone, PartialEq)]
pub struct Classification {
    /// Values above `eta + tol`, sorted non-increasing.
    pub super_thermal_desc: Vec<f64>,
    /// Values below `eta - tol`, sorted non-decreasing.
    pub sub_thermal_asc: Vec<f64>,
}

impl Classification {
    pub fn k_super(&self) -> usize {
        self.super_thermal_desc.len()
    }

    pub fn k_sub(&self) -> usize {
        self.sub_thermal_asc.len()
    }
}

/// Split `values` into super-thermal (descending) and sub-thermal
/// (ascending) parts about `eta`, ignoring values within `tol` of the level.
pub fn classify(values: &[f64], eta: f64, tol: f64) -> Classification {
    let mut super_thermal_desc: Vec<f64> =
        values.iter().copied().filter(|v| *v > eta + tol).collect();
    super_thermal_desc.sort_by(|a, b| b.partial_cmp(a).expect("finite"));
    let mut sub_thermal_asc: Vec<f64> =
        values.iter().copied().filter(|v| *v < eta - tol).collect();
    sub_thermal_asc.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
    Classification {
        super_thermal_desc,
        sub_thermal_asc,
    }
}

/// Eigenvalues of the covariance matrix, non-increasing.
pub fn principal_directional_temperatures(s: &GaussianState) -> Result<Vec<f64>> {
    let (vals, _) = sym_eig_desc(s.cov())?;
    Ok(vals)
}

/// The averaged matrix `W = (V + Omega V Omega^T)/2` whose quadratic form
/// gives the mean variance of a conjugate quadrature pair.
pub(crate) fn mode_average_matrix(s: &GaussianState) -> DMatrix<f64> {
    let omega = symplectic_form(s.modes()).expect("modes >= 1");
    let w = (s.cov() + &omega * s.cov() * omega.transpose()) * 0.5;
    (&w + w.transpose()) * 0.5
}

/// Principal mode temperatures, non-increasing: eigenvalues of the Hermitian
/// complex image of `W`.
pub fn principal_mode_temperatures(s: &GaussianState) -> Result<Vec<f64>> {
    let w = mode_average_matrix(s);
    let wt = embed_w_matrix(&w, 1e-10)?;
    // sanity: the real spectrum of W must be doubly degenerate
    let (real_vals, _) = sym_eig_desc(&w)?;
    for k in 0..real_vals.len() / 2 {
        let gap = (real_vals[2 * k] - real_vals[2 * k + 1]).abs();
        if gap > 1e-9 * real_vals[0].abs().max(1.0) {
            return Err(Error::Structure(format!(
                "mode-average matrix lost its double degeneracy (pair {k} split by {gap:.3e})"
            )));
        }
    }
    let eig = wt.symmetric_eigen();
    let mut vals: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    vals.sort_by(|a, b| b.partial_cmp(a).expect("finite"));
    Ok(vals)
}

/// A passive transformation that isolates the principal modes: conjugating
/// the covariance by the returned matrix produces single-mode blocks whose
/// mean temperatures are the `mu_k` in non-increasing order.
pub fn mode_temperature_basis(
    s: &GaussianState,
) -> Result<crate::symplectic::OrthogonalSymplecticMatrix> {
    let w = mode_average_matrix(s);
    let wt = embed_w_matrix(&w, 1e-10)?;
    let eig = wt.symmetric_eigen();
    let n = s.modes();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        eig.eigenvalues[b]
            .partial_cmp(&eig.eigenvalues[a])
            .expect("finite")
    });
    // rows of U^dag are the ordered eigenvectors; its real representation
    // rotates each principal mode into a coordinate mode
    let udag = DMatrix::from_fn(n, n, |r, c| eig.eigenvectors[(c, order[r])].conj());
    crate::symplectic::OrthogonalSymplecticMatrix::new(real_rep(&udag))
}

/// Principal directional SNRs, non-increasing: square roots of the
/// eigenvalues of `R = V^{-1/2} <x><x>^T V^{-1/2}`. `R = y y^T` with
/// `y = V^{-1/2} <x>` has rank at most one, so its spectrum is
/// `(|y|^2, 0, ..., 0)` exactly.
pub fn snr_spectrum(s: &GaussianState) -> Result<Vec<f64>> {
    let (_, inv_root) = sqrt_psd(s.cov(), "snr spectrum")?;
    let y = &inv_root * s.mean();
    let mut out = vec![0.0; 2 * s.modes()];
    out[0] = y.norm();
    Ok(out)
}

/// Analytic principal mode SNRs plus a Monte-Carlo cross-check.
#[derive(Debug, Clone, Serialize)]
pub struct MsnrReport {
    /// Analytic values, non-increasing: `msnr_1 = snr_1`, all deeper values
    /// zero (the symplectic complement of the signal mode is silent).
    pub analytic: Vec<f64>,
    /// Sampled min-max estimates, one per index.
    pub estimate: Vec<f64>,
    /// `max_k |analytic_k - estimate_k|`.
    pub max_abs_deviation: f64,
    pub samples: usize,
    pub seed: u64,
}

/// Maximum directional SNR squared within the symplectic subspace spanned by
/// the first `l` complex columns of `u` (as real phase-space directions).
fn subspace_max_snr_sq(
    u: &DMatrix<num_complex::Complex64>,
    l: usize,
    cov: &DMatrix<f64>,
    mean: &DVector<f64>,
) -> f64 {
    let n = u.nrows();
    let mut b = DMatrix::zeros(2 * n, 2 * l);
    for j in 0..l {
        let col = u.column(j).into_owned();
        let re = unembed_vector(&col);
        let im_col = col.map(|z| z * num_complex::Complex64::new(0.0, 1.0));
        let im = unembed_vector(&im_col);
        b.column_mut(2 * j).copy_from(&re);
        b.column_mut(2 * j + 1).copy_from(&im);
    }
    let g = b.transpose() * cov * &b;
    let g = (&g + g.transpose()) * 0.5;
    let svec = b.transpose() * mean;
    match g.cholesky() {
        Some(chol) => {
            let x = chol.solve(&svec);
            svec.dot(&x)
        }
        None => f64::INFINITY,
    }
}

/// Principal mode SNRs with a Monte-Carlo cross-check.
///
/// The estimator for index `k >= 2` minimizes the in-subspace maximum SNR
/// over random symplectic subspaces of the matching dimension: half the
/// sample budget goes to independent Haar draws, half to a stochastic local
/// refinement around the incumbent, so the reported minimum converges to the
/// true infimum instead of stalling at the resolution of uniform sampling.
pub fn msnr_spectrum(s: &GaussianState, samples: usize, seed: u64) -> Result<MsnrReport> {
    s.cov(); // cheap borrow to keep call-shape symmetric with snr_spectrum
    let snr = snr_spectrum(s)?;
    let m = s.modes();
    let mut analytic = vec![0.0; m];
    analytic[0] = snr[0];

    let mut estimate = vec![0.0; m];
    estimate[0] = snr[0]; // the only 2m-dimensional symplectic subspace is the whole space
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    for k in 2..=m {
        let l = m - k + 1;
        let explore = samples / 2;
        let refine = samples - explore;
        let mut best_u = haar_unitary(m, &mut rng);
        let mut best = subspace_max_snr_sq(&best_u, l, s.cov(), s.mean());
        for _ in 1..explore.max(1) {
            let u = haar_unitary(m, &mut rng);
            let f = subspace_max_snr_sq(&u, l, s.cov(), s.mean());
            if f < best {
                best = f;
                best_u = u;
            }
        }
        let mut step = 0.5;
        for _ in 0..refine {
            let g = DMatrix::from_fn(m, m, |_, _| {
                num_complex::Complex64::new(
                    step * rng.sample::<f64, _>(rand_distr::StandardNormal),
                    step * rng.sample::<f64, _>(rand_distr::StandardNormal),
                )
            });
            let perturbed = (&best_u + &best_u * g).qr().q();
            let f = subspace_max_snr_sq(&perturbed, l, s.cov(), s.mean());
            if f < best {
                best = f;
                best_u = perturbed;
                step = (step * 1.1).min(0.5);
            } else {
                step = (step * 0.995).max(1e-8);
            }
        }
        estimate[k - 1] = best.max(0.0).sqrt();
    }
    let max_abs_deviation = analytic
        .iter()
        .zip(estimate.iter())
        .map(|(a, e)| (a - e).abs())
        .fold(0.0, f64::max);
    Ok(MsnrReport {
        analytic,
        estimate,
        max_abs_deviation,
        samples,
        seed,
    })
}

/// Von Neumann entropy contribution of one symplectic eigenvalue (nats).
fn g_entropy(nu: f64) -> f64 {
    let plus = (nu + 1.0) / 2.0;
    let minus = (nu - 1.0) / 2.0;
    let a = if plus > 0.0 { plus * plus.ln() } else { 0.0 };
    let b = if minus > 0.0 { minus * minus.ln() } else { 0.0 };
    a - b
}

/// Relative entropy of athermality `S(rho || gamma_m)` in nats, for a bath at
/// `eta > 1`.
///
/// `S(rho || gamma) = -S(rho) - Tr[rho ln gamma]` with
/// `S(rho) = sum_k g(nu_k)` and the cross term summing
/// `ln(nbar + 1) - nbar_k ln(nbar/(nbar + 1))` over modes, where
/// `nbar = (eta - 1)/2` and `nbar_k` is the state's photon number in mode `k`.
pub fn rel_ent_athermality(s: &GaussianState, eta: f64) -> Result<f64> {
    if !(eta > 1.0) {
        return Err(Error::ReferenceRank(eta));
    }
    let nu = symplectic_spectrum(s.cov())?;
    for v in &nu {
        if *v < 1.0 - 1e-9 {
            return Err(Error::UncertaintyViolated { min_eig: *v - 1.0 });
        }
    }
    let entropy: f64 = nu.iter().map(|&v| g_entropy(v.max(1.0))).sum();
    let nbar = (eta - 1.0) / 2.0;
    let mut cross = 0.0;
    for k in 0..s.modes() {
        let nk = s.mean_photons(k)?;
        cross += (nbar + 1.0).ln() - nk * (nbar / (nbar + 1.0)).ln();
    }
    Ok(cross - entropy)
}

/// Total squeezing in the canonical preparation of the state: Williamson
/// `V = S D S^T`, then Bloch-Messiah `S = O1 Z O2`, returning `sum_k r_k`.
pub fn squeezing_unitary_formation(s: &GaussianState) -> Result<f64> {
    let w = williamson(s.cov())?;
    let bm = bloch_messiah(&w.s)?;
    Ok(bm.r.iter().sum())
}

/// Compute every monotone of a state relative to the bath level `eta`.
pub fn profile(s: &GaussianState, eta: f64) -> Result<ThermalProfile> {
    if !(eta >= 1.0) {
        return Err(Error::UnphysicalTemperature(eta));
    }
    s.ensure_valid(crate::state::PHYSICS_TOL)?;
    let tau = principal_directional_temperatures(s)?;
    let mu = principal_mode_temperatures(s)?;
    let nu = symplectic_spectrum(s.cov())?;
    let snr = snr_spectrum(s)?;
    let mut msnr = vec![0.0; s.modes()];
    msnr[0] = snr[0];
    let (rel_ent, rel_ent_note) = if eta > 1.0 {
        match rel_ent_athermality(s, eta) {
            Ok(v) => (Some(v), None),
            Err(e) => (None, Some(e.to_string())),
        }
    } else {
        // pure reference: zero exactly for the vacuum, divergent otherwise
        let is_vacuum = s.moment_norm() < 1e-18
            && (s.cov() - DMatrix::<f64>::identity(2 * s.modes(), 2 * s.modes())).amax() < 1e-9;
        if is_vacuum {
            (Some(0.0), None)
        } else {
            (
                None,
                Some("infinite: reference at eta = 1 is pure and the state is not the vacuum".into()),
            )
        }
    };
    let squeezing = squeezing_unitary_formation(s)?;
    let tau_class = classify(&tau, eta, CLASSIFY_TOL);
    let mu_class = classify(&mu, eta, CLASSIFY_TOL);
    Ok(ThermalProfile {
        k_super: tau_class.k_super(),
        k_sub: tau_class.k_sub(),
        k_sp_super: mu_class.k_super(),
        k_sp_sub: mu_class.k_sub(),
        tau,
        mu,
        nu,
        snr,
        msnr,
        moment_norm: s.moment_norm(),
        rel_ent_athermality: rel_ent,
        rel_ent_note,
        squeezing_unitary_formation: squeezing,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::{random_state, GaussianState, RandomStateOpts};
    use crate::symplectic::random_orthogonal_symplectic;
    use approx::assert_abs_diff_eq;
    use nalgebra::{DMatrix, DVector};
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha12Rng;

    fn state_from_cov(cov: DMatrix<f64>) -> GaussianState {
        let m = cov.nrows() / 2;
        GaussianState::new(m, DVector::zeros(2 * m), cov).unwrap()
    }

    fn two_mode_squeezed_thermal(a: f64, c: f64) -> GaussianState {
        state_from_cov(DMatrix::from_row_slice(
            4,
            4,
            &[
                a, 0.0, c, 0.0, //
                0.0, a, 0.0, -c, //
                c, 0.0, a, 0.0, //
                0.0, -c, 0.0, a,
            ],
        ))
    }

    #[test]
    fn tau_of_thermal_is_flat() {
        let s = GaussianState::thermal(3, 2.5).unwrap();
        let tau = principal_directional_temperatures(&s).unwrap();
        assert_eq!(tau.len(), 6);
        for t in tau {
            assert_abs_diff_eq!(t, 2.5, epsilon = 1e-12);
        }
    }

    #[test]
    fn tau_of_correlated_two_mode_states() {
        let tau = principal_directional_temperatures(&two_mode_squeezed_thermal(4.0, 1.6))
            .unwrap();
        let expect = [5.6, 5.6, 2.4, 2.4];
        for (a, b) in tau.iter().zip(expect.iter()) {
            assert_abs_diff_eq!(a, b, epsilon = 1e-12);
        }
    }

    #[test]
    fn mu_of_thermal_is_flat() {
        let s = GaussianState::thermal(2, 1.7).unwrap();
        let mu = principal_mode_temperatures(&s).unwrap();
        assert_eq!(mu.len(), 2);
        for v in mu {
            assert_abs_diff_eq!(v, 1.7, epsilon = 1e-12);
        }
    }

    #[test]
    fn mu_of_correlated_state_averages_out() {
        // the sigma_z correlation blocks cancel in W, leaving W = 4*1
        let mu = principal_mode_temperatures(&two_mode_squeezed_thermal(4.0, 3.7)).unwrap();
        assert_abs_diff_eq!(mu[0], 4.0, epsilon = 1e-12);
        assert_abs_diff_eq!(mu[1], 4.0, epsilon = 1e-12);
    }

    #[test]
    fn mu_single_mode_is_mean_temperature() {
        let s = state_from_cov(DMatrix::from_row_slice(2, 2, &[3.0, 0.0, 0.0, 1.0]));
        let mu = principal_mode_temperatures(&s).unwrap();
        assert_eq!(mu.len(), 1);
        assert_abs_diff_eq!(mu[0], 2.0, epsilon = 1e-12);
    }

    #[test]
    fn mu_matches_sampled_mode_isolation() {
        // mu_1 upper-bounds (and mu_m lower-bounds) the mean temperature of
        // any passively isolated single mode; for W = 4*1 every sample is 4
        let s = two_mode_squeezed_thermal(4.0, 3.7);
        for seed in 0..50u64 {
            let m = random_orthogonal_symplectic(2, 900 + seed).unwrap();
            let t = s.transformed(&m).unwrap();
            for mode in 0..2 {
                let mean_temp =
                    0.5 * (t.cov()[(2 * mode, 2 * mode)] + t.cov()[(2 * mode + 1, 2 * mode + 1)]);
                assert_abs_diff_eq!(mean_temp, 4.0, epsilon = 1e-10);
            }
        }
    }

    #[test]
    fn mu_sandwiched_by_tau_and_trace_consistent() {
        let mut rng = ChaCha12Rng::seed_from_u64(23);
        for trial in 0..50 {
            let modes = 1 + trial % 4;
            let s = random_state(modes, &mut rng, &RandomStateOpts::default());
            let tau = principal_directional_temperatures(&s).unwrap();
            let mu = principal_mode_temperatures(&s).unwrap();
            assert!(mu[0] <= tau[0] + 1e-10);
            assert!(mu[modes - 1] >= tau[2 * modes - 1] - 1e-10);
            let trace: f64 = s.cov().trace();
            let mu_sum: f64 = mu.iter().sum();
            let tau_sum: f64 = tau.iter().sum();
            assert_abs_diff_eq!(2.0 * mu_sum, trace, epsilon = 1e-10 * trace.abs());
            assert_abs_diff_eq!(tau_sum, trace, epsilon = 1e-10 * trace.abs());
        }
    }

    #[test]
    fn mode_basis_isolates_principal_modes() {
        let mut rng = ChaCha12Rng::seed_from_u64(29);
        for trial in 0..30 {
            let modes = 1 + trial % 4;
            let s = random_state(modes, &mut rng, &RandomStateOpts::default());
            let mu = principal_mode_temperatures(&s).unwrap();
            let basis = mode_temperature_basis(&s).unwrap();
            let t = s.transformed(&basis).unwrap();
            for (k, expect) in mu.iter().enumerate() {
                let mean_temp =
                    0.5 * (t.cov()[(2 * k, 2 * k)] + t.cov()[(2 * k + 1, 2 * k + 1)]);
                assert!(
                    (mean_temp - expect).abs() < 1e-9,
                    "mode {k}: {mean_temp} vs {expect}"
                );
            }
        }
    }

    #[test]
    fn snr_zero_mean_is_zero() {
        let s = GaussianState::thermal(2, 2.0).unwrap();
        let snr = snr_spectrum(&s).unwrap();
        assert_eq!(snr, vec![0.0; 4]);
    }

    #[test]
    fn snr_isotropic_case() {
        let eta = 2.5;
        let d = 1.75;
        let s = GaussianState::new(
            1,
            DVector::from_vec(vec![d, 0.0]),
            DMatrix::identity(2, 2) * eta,
        )
        .unwrap();
        let snr = snr_spectrum(&s).unwrap();
        assert_abs_diff_eq!(snr[0], d / eta.sqrt(), epsilon = 1e-12);
        assert!(snr[1].abs() < 1e-12);
    }

    #[test]
    fn snr_anisotropic_case_with_direction_sampling() {
        let s = GaussianState::new(
            1,
            DVector::from_vec(vec![2.0, 0.0]),
            DMatrix::from_row_slice(2, 2, &[4.0, 0.0, 0.0, 1.0]),
        )
        .unwrap();
        let snr = snr_spectrum(&s).unwrap();
        assert_abs_diff_eq!(snr[0], 1.0, epsilon = 1e-12);
        assert!(snr[1].abs() < 1e-12);
        // dense direction sampling never beats the analytic optimum
        let mut best: f64 = 0.0;
        for k in 0..20_000 {
            let angle = 2.0 * std::f64::consts::PI * (k as f64) / 20_000.0;
            let v = DVector::from_vec(vec![angle.cos(), angle.sin()]);
            let signal = v.dot(s.mean()).abs();
            let noise = (v.transpose() * s.cov() * &v)[(0, 0)].sqrt();
            best = best.max(signal / noise);
        }
        assert!(best <= snr[0] + 1e-9);
        assert!(best >= snr[0] - 1e-4, "dense sampling approaches the optimum");
    }

    #[test]
    fn snr_top_value_squares_to_mahalanobis_norm() {
        let mut rng = ChaCha12Rng::seed_from_u64(31);
        for trial in 0..50 {
            let modes = 1 + trial % 3;
            let s = random_state(modes, &mut rng, &RandomStateOpts::default());
            let snr = snr_spectrum(&s).unwrap();
            let direct = (s.mean().transpose()
                * s.cov().clone().cholesky().unwrap().solve(s.mean()))[(0, 0)];
            assert!((snr[0] * snr[0] - direct).abs() < 1e-10 * direct.max(1.0));
            for k in 1..snr.len() {
                assert!(snr[k] < 1e-10, "rank-one R has a single nonzero value");
            }
            // generic eigensolver on R agrees on the top value
            let (_, inv_root) = crate::decomp::sqrt_psd(s.cov(), "test").unwrap();
            let y = &inv_root * s.mean();
            let r_mat = &y * y.transpose();
            let (generic, _) = sym_eig_desc(&r_mat).unwrap();
            assert!((generic[0].sqrt() - snr[0]).abs() < 1e-10 * snr[0].max(1.0));
        }
    }

    #[test]
    fn msnr_estimate_tracks_analytic() {
        let s = GaussianState::new(
            2,
            DVector::from_vec(vec![2.0, 0.0, 0.0, 0.0]),
            DMatrix::from_fn(4, 4, |r, c| {
                if r == c {
                    if r == 0 {
                        4.0
                    } else {
                        1.0
                    }
                } else {
                    0.0
                }
            }),
        )
        .unwrap();
        let report = msnr_spectrum(&s, 20_000, 7).unwrap();
        let snr = snr_spectrum(&s).unwrap();
        assert_abs_diff_eq!(report.analytic[0], snr[0], epsilon = 1e-12);
        assert!((report.estimate[0] - snr[0]).abs() < 1e-12);
        assert!(report.estimate[1] <= 1e-3, "minimizer reaches the silent subspace");
        assert_eq!(report.analytic[1], 0.0);
    }

    #[test]
    fn msnr_zero_mean() {
        let s = GaussianState::thermal(2, 1.5).unwrap();
        let report = msnr_spectrum(&s, 100, 3).unwrap();
        assert_eq!(report.analytic, vec![0.0, 0.0]);
        assert!(report.max_abs_deviation < 1e-12);
    }

    #[test]
    fn moment_norm_euclidean() {
        let s = GaussianState::new(
            1,
            DVector::from_vec(vec![3.0, 4.0]),
            DMatrix::identity(2, 2),
        )
        .unwrap();
        assert_abs_diff_eq!(s.moment_norm(), 25.0, epsilon = 0.0);
        assert_eq!(GaussianState::thermal(2, 2.0).unwrap().moment_norm(), 0.0);
    }

    #[test]
    fn moment_norm_invariant_under_phase_shifts() {
        let s = GaussianState::new(
            2,
            DVector::from_vec(vec![1.0, -2.0, 0.5, 0.25]),
            DMatrix::identity(4, 4) * 1.5,
        )
        .unwrap();
        for k in 0..8 {
            let ps = crate::channel::phase_shifter(2, k % 2, 0.37 + k as f64).unwrap();
            let t = s.transformed(&ps).unwrap();
            assert_abs_diff_eq!(t.moment_norm(), s.moment_norm(), epsilon = 1e-12);
        }
    }

    #[test]
    fn rel_ent_vanishes_on_the_reference() {
        for eta in [1.3, 2.0, 5.0] {
            for m in 1..=3 {
                let s = GaussianState::thermal(m, eta).unwrap();
                let f = rel_ent_athermality(&s, eta).unwrap();
                assert!(f.abs() < 1e-12, "S(gamma || gamma) = 0, got {f}");
            }
        }
    }

    #[test]
    fn rel_ent_rejects_pure_reference() {
        let s = GaussianState::thermal(1, 2.0).unwrap();
        assert!(matches!(
            rel_ent_athermality(&s, 1.0),
            Err(Error::ReferenceRank(_))
        ));
    }

    #[test]
    fn rel_ent_monotone_under_pure_loss() {
        let mut rng = ChaCha12Rng::seed_from_u64(37);
        let eta = 2.0;
        for _ in 0..100 {
            let s = random_state(1, &mut rng, &RandomStateOpts::default());
            let f0 = rel_ent_athermality(&s, eta).unwrap();
            let t: f64 = rng.random_range(0.0..=1.0);
            let out = crate::channel::pure_loss_channel(eta, t)
                .unwrap()
                .apply(&s)
                .unwrap();
            let f1 = rel_ent_athermality(&out, eta).unwrap();
            assert!(
                f1 <= f0 + 1e-9,
                "free energy must not increase: {f0} -> {f1} at t = {t}"
            );
        }
    }

    #[test]
    fn squeezing_of_thermal_and_squeezed_vacuum() {
        let s = GaussianState::thermal(2, 3.0).unwrap();
        assert!(squeezing_unitary_formation(&s).unwrap() < 1e-9);
        let r = 0.8_f64;
        let sq = state_from_cov(DMatrix::from_row_slice(
            2,
            2,
            &[(2.0 * r).exp(), 0.0, 0.0, (-2.0 * r).exp()],
        ));
        assert_abs_diff_eq!(squeezing_unitary_formation(&sq).unwrap(), r, epsilon = 1e-9);
    }

    #[test]
    fn monotone_spectra_invariant_under_passive_conjugation() {
        let mut rng = ChaCha12Rng::seed_from_u64(41);
        for trial in 0..20 {
            let modes = 1 + trial % 3;
            let s = random_state(modes, &mut rng, &RandomStateOpts::default());
            let m = random_orthogonal_symplectic(modes, 600 + trial as u64).unwrap();
            let t = s.transformed(&m).unwrap();
            let pairs: [(Vec<f64>, Vec<f64>); 3] = [
                (
                    principal_directional_temperatures(&s).unwrap(),
                    principal_directional_temperatures(&t).unwrap(),
                ),
                (
                    principal_mode_temperatures(&s).unwrap(),
                    principal_mode_temperatures(&t).unwrap(),
                ),
                (
                    symplectic_spectrum(s.cov()).unwrap(),
                    symplectic_spectrum(t.cov()).unwrap(),
                ),
            ];
            for (a, b) in pairs.iter() {
                for (x, y) in a.iter().zip(b.iter()) {
                    assert!((x - y).abs() < 1e-8, "{x} vs {y}");
                }
            }
            let snr_a = snr_spectrum(&s).unwrap();
            let snr_b = snr_spectrum(&t).unwrap();
            for (x, y) in snr_a.iter().zip(snr_b.iter()) {
                assert!((x - y).abs() < 1e-8);
            }
            let sq_a = squeezing_unitary_formation(&s).unwrap();
            let sq_b = squeezing_unitary_formation(&t).unwrap();
            assert!((sq_a - sq_b).abs() < 1e-8);
        }
    }

    #[test]
    fn classify_examples() {
        let c = classify(&[3.0, 4.0 / 3.0], 2.0, 1e-8);
        assert_eq!(c.super_thermal_desc, vec![3.0]);
        assert_eq!(c.sub_thermal_asc, vec![4.0 / 3.0]);
        assert_eq!((c.k_super(), c.k_sub()), (1, 1));

        let c = classify(&[2.0, 2.0, 2.0], 2.0, 1e-8);
        assert_eq!((c.k_super(), c.k_sub()), (0, 0));

        let c = classify(&[7.7, 7.7, 0.3, 0.3], 2.0, 1e-8);
        assert_eq!((c.k_super(), c.k_sub()), (2, 2));
        assert_eq!(c.sub_thermal_asc, vec![0.3, 0.3]);
    }

    #[test]
    fn profile_of_thermal_state() {
        let eta = 2.0;
        let p = profile(&GaussianState::thermal(2, eta).unwrap(), eta).unwrap();
        for t in p.tau.iter().chain(p.mu.iter()).chain(p.nu.iter()) {
            assert_abs_diff_eq!(t, &eta, epsilon = 1e-10);
        }
        assert!(p.snr.iter().all(|x| *x == 0.0));
        assert_eq!(p.moment_norm, 0.0);
        assert!(p.rel_ent_athermality.unwrap().abs() < 1e-12);
        assert!(p.squeezing_unitary_formation < 1e-9);
        assert_eq!(
            (p.k_super, p.k_sub, p.k_sp_super, p.k_sp_sub),
            (0, 0, 0, 0)
        );
    }

    #[test]
    fn profile_of_single_mode_paper_example() {
        let s = state_from_cov(DMatrix::from_row_slice(2, 2, &[3.0, 0.0, 0.0, 2.5]));
        let p = profile(&s, 2.0).unwrap();
        assert_abs_diff_eq!(p.tau[0], 3.0, epsilon = 1e-12);
        assert_abs_diff_eq!(p.tau[1], 2.5, epsilon = 1e-12);
    }

    #[test]
    fn profile_self_consistency_on_asymmetric_two_mode() {
        let mut cov = DMatrix::from_row_slice(
            4,
            4,
            &[
                4.0, 0.0, 1.73, 0.0, //
                0.0, 4.0, 0.0, -1.73, //
                1.73, 0.0, 2.4, 0.0, //
                0.0, -1.73, 0.0, 4.0,
            ],
        );
        cov = (&cov + cov.transpose()) * 0.5;
        let s = state_from_cov(cov);
        let p = profile(&s, 2.0).unwrap();
        for k in 1..p.tau.len() {
            assert!(p.tau[k - 1] >= p.tau[k]);
        }
        for k in 1..p.mu.len() {
            assert!(p.mu[k - 1] >= p.mu[k]);
        }
        for k in 1..p.nu.len() {
            assert!(p.nu[k] >= p.nu[k - 1]);
        }
        assert!(p.mu[0] <= p.tau[0] + 1e-12);
        assert!(*p.mu.last().unwrap() >= *p.tau.last().unwrap() - 1e-12);
        assert!(p.nu.iter().all(|v| *v >= 1.0 - 1e-9));
        // W for this matrix is diag(4, 4, 3.2, 3.2)
        assert_abs_diff_eq!(p.mu[0], 4.0, epsilon = 1e-12);
        assert_abs_diff_eq!(p.mu[1], 3.2, epsilon = 1e-12);
    }

    #[test]
    fn profile_flags_pure_reference() {
        let p = profile(&GaussianState::thermal(1, 2.0).unwrap(), 1.0).unwrap();
        assert!(p.rel_ent_athermality.is_none());
        assert!(p.rel_ent_note.unwrap().contains("infinite"));
        let p = profile(&GaussianState::vacuum(2).unwrap(), 1.0).unwrap();
        assert_eq!(p.rel_ent_athermality, Some(0.0));
    }
}
