//! Gaussian states of bosonic modes: first moments plus covariance matrix.
//!
//! A state of `m` modes is the pair `(<x>, V)` of the mean quadrature vector
//! (length `2m`) and the covariance matrix (`2m x 2m`), both in interleaved
//! `(q1, p1, ..., qm, pm)` ordering and in units where the vacuum has
//! `V = 1`. Physical states satisfy the uncertainty relation
//! `V + i*Omega >= 0`; the thermal state of the ambient bath at noise level
//! `eta >= 1` has zero mean and `V = eta * 1`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::symplectic::{haar_orthogonal_symplectic, symplectic_form};
use crate::{Error, Result};

/// Symmetry tolerance enforced when constructing a state.
pub const SYMMETRY_TOL: f64 = 1e-10;

/// Default tolerance for physics checks (uncertainty relation).
pub const PHYSICS_TOL: f64 = 1e-9;

/// First and second moments of an `m`-mode Gaussian state.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "GaussianStateJson", into = "GaussianStateJson")]
pub struct GaussianState {
    modes: usize,
    mean: DVector<f64>,
    cov: DMatrix<f64>,
}

/// JSON wire form: `{"modes": m, "mean": [2m reals], "cov": [[2m x 2m reals]]}`,
/// covariance row-major.
#[derive(Serialize, Deserialize)]
struct GaussianStateJson {
    modes: usize,
    mean: Vec<f64>,
    cov: Vec<Vec<f64>>,
}

impl TryFrom<GaussianStateJson> for GaussianState {
    type Error = Error;

    fn try_from(j: GaussianStateJson) -> Result<Self> {
        let dim = 2 * j.modes;
        if j.cov.len() != dim || j.cov.iter().any(|row| row.len() != dim) {
            return Err(Error::ShapeMismatch(format!(
                "cov must be {dim}x{dim} for {} modes",
                j.modes
            )));
        }
        let mean = DVector::from_vec(j.mean);
        let cov = DMatrix::from_fn(dim, dim, |r, c| j.cov[r][c]);
        GaussianState::new(j.modes, mean, cov)
    }
}

impl From<GaussianState> for GaussianStateJson {
    fn from(s: GaussianState) -> Self {
        let dim = 2 * s.modes;
        GaussianStateJson {
            modes: s.modes,
            mean: s.mean.iter().copied().collect(),
            cov: (0..dim)
                .map(|r| (0..dim).map(|c| s.cov[(r, c)]).collect())
                .collect(),
        }
    }
}

/// Outcome of checking a state against the uncertainty relation.
#[derive(Debug, Clone, Serialize)]
pub struct ValidityReport {
    /// `max |V - V^T|` over all entries.
    pub symmetry_defect: f64,
    /// Minimum eigenvalue of the Hermitian matrix `V + i*Omega`.
    pub min_uncertainty_eig: f64,
    /// Both checks within tolerance.
    pub valid: bool,
}

impl GaussianState {
    /// Build a state, enforcing dimensional consistency and symmetry of the
    /// covariance matrix. The uncertainty relation is checked separately by
    /// [`GaussianState::validate`], so that unphysical matrices can still be
    /// inspected.
    pub fn new(modes: usize, mean: DVector<f64>, cov: DMatrix<f64>) -> Result<Self> {
        if modes == 0 {
            return Err(Error::InvalidDimension("state needs at least one mode".into()));
        }
        let dim = 2 * modes;
        if mean.len() != dim {
            return Err(Error::ShapeMismatch(format!(
                "mean has length {}, expected {dim}",
                mean.len()
            )));
        }
        if cov.shape() != (dim, dim) {
            return Err(Error::ShapeMismatch(format!(
                "cov is {}x{}, expected {dim}x{dim}",
                cov.nrows(),
                cov.ncols()
            )));
        }
        let defect = (&cov - cov.transpose()).amax();
        if defect > SYMMETRY_TOL {
            return Err(Error::NotSymmetric {
                defect,
                tol: SYMMETRY_TOL,
            });
        }
        Ok(Self { modes, mean, cov })
    }

    /// The vacuum: zero mean, identity covariance.
    pub fn vacuum(modes: usize) -> Result<Self> {
        Self::thermal(modes, 1.0)
    }

    /// Uncorrelated thermal state at noise level `eta >= 1`:
    /// zero mean, `V = eta * 1`.
    pub fn thermal(modes: usize, eta: f64) -> Result<Self> {
        if !(eta >= 1.0) {
            return Err(Error::UnphysicalTemperature(eta));
        }
        let dim = 2 * modes;
        Self::new(
            modes,
            DVector::zeros(dim),
            DMatrix::identity(dim, dim) * eta,
        )
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn mean(&self) -> &DVector<f64> {
        &self.mean
    }

    pub fn cov(&self) -> &DMatrix<f64> {
        &self.cov
    }

    /// Report the symmetry defect and the minimum eigenvalue of `V + i*Omega`.
    /// Valid iff the defect is within `tol` and the eigenvalue is above `-tol`.
    pub fn validate(&self, tol: f64) -> ValidityReport {
        let symmetry_defect = (&self.cov - self.cov.transpose()).amax();
        let dim = 2 * self.modes;
        let omega = symplectic_form(self.modes).expect("modes >= 1");
        let h = DMatrix::from_fn(dim, dim, |r, c| {
            Complex64::new(
                0.5 * (self.cov[(r, c)] + self.cov[(c, r)]),
                0.5 * (omega[(r, c)] - omega[(c, r)]),
            )
        });
        let eig = h.symmetric_eigen();
        let min_uncertainty_eig = eig.eigenvalues.iter().copied().fold(f64::INFINITY, f64::min);
        ValidityReport {
            symmetry_defect,
            min_uncertainty_eig,
            valid: symmetry_defect <= tol && min_uncertainty_eig >= -tol,
        }
    }

    /// Error out unless the state passes [`GaussianState::validate`] at `tol`.
    pub fn ensure_valid(&self, tol: f64) -> Result<()> {
        let report = self.validate(tol);
        if report.valid {
            Ok(())
        } else {
            Err(Error::UncertaintyViolated {
                min_eig: report.min_uncertainty_eig,
            })
        }
    }

    /// Tensor product at the phase-space level: concatenated means,
    /// block-diagonal covariance.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let modes = self.modes + other.modes;
        let dim = 2 * modes;
        let (da, _) = self.cov.shape();
        let mut mean = DVector::zeros(dim);
        mean.rows_mut(0, da).copy_from(&self.mean);
        mean.rows_mut(da, 2 * other.modes).copy_from(&other.mean);
        let mut cov = DMatrix::zeros(dim, dim);
        cov.view_mut((0, 0), (da, da)).copy_from(&self.cov);
        cov.view_mut((da, da), (2 * other.modes, 2 * other.modes))
            .copy_from(&other.cov);
        Self { modes, mean, cov }
    }

    /// Mean photon number of mode `k`:
    /// `(V_qq + V_pp + <q>^2 + <p>^2)/4 - 1/2`.
    pub fn mean_photons(&self, k: usize) -> Result<f64> {
        if k >= self.modes {
            return Err(Error::IndexOutOfRange {
                index: k,
                modes: self.modes,
            });
        }
        let q = 2 * k;
        let p = 2 * k + 1;
        Ok((self.cov[(q, q)] + self.cov[(p, p)] + self.mean[q].powi(2) + self.mean[p].powi(2))
            / 4.0
            - 0.5)
    }

    /// Sum of squared first moments.
    pub fn moment_norm(&self) -> f64 {
        self.mean.iter().map(|x| x * x).sum()
    }

    /// Conjugate the state by a passive transformation: mean -> M mean,
    /// V -> M V M^T.
    pub fn transformed(&self, m: &crate::symplectic::OrthogonalSymplecticMatrix) -> Result<Self> {
        if m.modes() != self.modes {
            return Err(Error::ShapeMismatch(format!(
                "transformation on {} modes applied to {}-mode state",
                m.modes(),
                self.modes
            )));
        }
        let e = m.matrix();
        let cov = e * &self.cov * e.transpose();
        // symmetrize away round-off so the constructor invariant holds exactly
        let cov = (&cov + cov.transpose()) * 0.5;
        Ok(Self {
            modes: self.modes,
            mean: e * &self.mean,
            cov,
        })
    }
}

/// Thermal noise level `eta = coth(omega / T)` of a mode with angular
/// frequency `omega` at temperature `T`, in natural units where the
/// frequency-temperature ratio is dimensionless. `T = 0` gives the vacuum
/// level `eta = 1`.
pub fn eta_from_temperature(omega: f64, temperature: f64) -> Result<f64> {
    if !(omega > 0.0) {
        return Err(Error::Domain(format!(
            "angular frequency must be positive, got {omega}"
        )));
    }
    if !(temperature >= 0.0) {
        return Err(Error::Domain(format!(
            "temperature must be nonnegative, got {temperature}"
        )));
    }
    // coth(x) with x = omega/T; T = 0 maps to x = +inf and coth = 1
    let x = omega / temperature;
    Ok(1.0 / x.tanh())
}

/// Options for drawing random valid Gaussian states (used by the empirical
/// verification harnesses and the test suite).
#[derive(Debug, Clone)]
pub struct RandomStateOpts {
    /// Symplectic eigenvalues are drawn uniformly from this range; the lower
    /// bound must be `>= 1` for physical states.
    pub nu_range: (f64, f64),
    /// Squeezing parameters of the preparing symplectic are drawn uniformly
    /// from `[0, max_squeeze]`.
    pub max_squeeze: f64,
    /// First moments are i.i.d. normal with this standard deviation.
    pub mean_scale: f64,
}

impl Default for RandomStateOpts {
    fn default() -> Self {
        Self {
            nu_range: (1.0, 4.0),
            max_squeeze: 0.8,
            mean_scale: 1.5,
        }
    }
}

/// Draw a random valid state by planting a Williamson form: `V = S D S^T`
/// with `S = O1 Z O2` a random symplectic and `D` random thermal levels.
pub fn random_state<R: Rng + ?Sized>(
    modes: usize,
    rng: &mut R,
    opts: &RandomStateOpts,
) -> GaussianState {
    let s = random_symplectic(modes, rng, opts.max_squeeze);
    let mut d = DMatrix::zeros(2 * modes, 2 * modes);
    for k in 0..modes {
        let nu = rng.random_range(opts.nu_range.0..=opts.nu_range.1);
        d[(2 * k, 2 * k)] = nu;
        d[(2 * k + 1, 2 * k + 1)] = nu;
    }
    let cov = &s * d * s.transpose();
    let cov = (&cov + cov.transpose()) * 0.5;
    let mean = DVector::from_fn(2 * modes, |_, _| {
        opts.mean_scale * rng.sample::<f64, _>(StandardNormal)
    });
    GaussianState::new(modes, mean, cov).expect("planted construction is well-formed")
}

/// Random symplectic matrix `O1 Z O2` with Haar passive factors and
/// squeezings drawn from `[0, max_squeeze]`.
pub fn random_symplectic<R: Rng + ?Sized>(
    modes: usize,
    rng: &mut R,
    max_squeeze: f64,
) -> DMatrix<f64> {
    let o1 = haar_orthogonal_symplectic(modes, rng);
    let o2 = haar_orthogonal_symplectic(modes, rng);
    let mut z = DMatrix::zeros(2 * modes, 2 * modes);
    for k in 0..modes {
        let r = rng.random_range(0.0..=max_squeeze);
        z[(2 * k, 2 * k)] = r.exp();
        z[(2 * k + 1, 2 * k + 1)] = (-r).exp();
    }
    o1.matrix() * z * o2.matrix()
}

/// Random zero-mean state with `V >= 1` (no direction squeezed below vacuum):
/// `V = O diag(d) O^T` with `d >= 1` and `O` orthogonal (not necessarily
/// symplectic). Any such `V` satisfies the uncertainty relation.
pub fn random_cov_above_identity<R: Rng + ?Sized>(
    modes: usize,
    rng: &mut R,
    spread: f64,
) -> GaussianState {
    let dim = 2 * modes;
    // random orthogonal via QR of a real Ginibre matrix
    let g = DMatrix::from_fn(dim, dim, |_, _| rng.sample::<f64, _>(StandardNormal));
    let qr = g.qr();
    let q = qr.q();
    let mut d = DMatrix::zeros(dim, dim);
    for i in 0..dim {
        d[(i, i)] = 1.0 + rng.random_range(0.0..=spread);
    }
    let cov = &q * d * q.transpose();
    let cov = (&cov + cov.transpose()) * 0.5;
    GaussianState::new(modes, DVector::zeros(dim), cov).expect("construction is well-formed")
}
