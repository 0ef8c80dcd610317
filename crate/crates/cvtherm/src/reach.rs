//! Brute-force exploration of the single-mode states reachable from a given
//! initial state, together with the outer-bound regions implied by the
//! transition laws.
//!
//! Reachable points are gathered by sampling random channels — a uniform
//! ancilla count, a Haar passive matrix, and a uniformly chosen kept output
//! mode — and recording the output's ordered principal temperatures
//! `(tau1, tau2)`. Each sample stores enough channel parameters to
//! regenerate the exact channel that produced it.
//!
//! For a single-mode input the reachable set degenerates to the straight
//! segment from the input's `(tau1, tau2)` to the bath point `(eta, eta)`:
//! under the mode isomorphism the system block of the global passive matrix
//! is a scaled rotation, so every output covariance is
//! `c R V R^T + (1 - c) eta 1` for some `c` in `[0, 1]`. Two-mode inputs
//! produce genuinely two-dimensional regions.
//!
//! The outer bounds rasterize, on a `(tau1, tau2)` grid, which candidate
//! outputs survive the directional-temperature law, the mode-temperature
//! law, and free-energy monotonicity, along with physicality
//! (`tau1 * tau2 >= 1`). Samples are snapped to the nearest lattice point
//! for display; containment checks evaluate the laws at the sample's exact
//! coordinates.

use std::io::Write;
use std::path::Path;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::certify::spectral_law;
use crate::channel::BLTOChannel;
use crate::monotones::{
    principal_directional_temperatures, principal_mode_temperatures, rel_ent_athermality,
};
use crate::state::GaussianState;
use crate::symplectic::{derive_seed, OrthogonalSymplecticMatrix};
use crate::{Error, Result};

/// How a reach sample's channel was constructed; enough to regenerate it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ChannelParams {
    /// Haar-random channel: per-sample seed, ancilla count, kept mode.
    Haar { seed: u64, anc: usize, kept: usize },
    /// Plain partial trace: keep one input mode, no ancillas, identity
    /// passive matrix.
    KeepMode { kept: usize },
}

/// One sampled reachable point in `(tau1, tau2)` coordinates.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReachSample {
    /// Larger principal temperature of the single-mode output.
    pub tau1: f64,
    /// Smaller principal temperature.
    pub tau2: f64,
    pub channel_params: ChannelParams,
}

/// Rebuild the channel described by `params` against the given input.
pub fn regenerate_channel(
    s: &GaussianState,
    eta: f64,
    params: &ChannelParams,
) -> Result<BLTOChannel> {
    match *params {
        ChannelParams::Haar { seed, anc, kept } => haar_channel(s.modes(), eta, seed, anc, kept),
        ChannelParams::KeepMode { kept } => BLTOChannel::new(
            s.modes(),
            0,
            eta,
            OrthogonalSymplecticMatrix::identity(s.modes()),
            vec![kept],
        ),
    }
}

// offset separating the matrix stream from the (anc, kept) draws
const MATRIX_STREAM: u64 = 0x4d;

/// The channel determined by `(seed, anc, kept)`: the global Haar matrix is
/// drawn from a sub-stream of `seed`, so these three values regenerate the
/// channel exactly.
fn haar_channel(m_in: usize, eta: f64, seed: u64, anc: usize, kept: usize) -> Result<BLTOChannel> {
    let mut rng = ChaCha12Rng::seed_from_u64(derive_seed(seed, MATRIX_STREAM));
    BLTOChannel::random(m_in, anc, eta, vec![kept], &mut rng)
}

/// Draw one random single-mode-output channel: uniform ancilla count, Haar
/// matrix, uniform kept mode.
fn draw_channel(
    m_in: usize,
    eta: f64,
    m_anc_max: usize,
    seed: u64,
) -> Result<(BLTOChannel, usize, usize)> {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let anc = rng.random_range(1..=m_anc_max.max(1));
    let total = m_in + anc;
    let kept = rng.random_range(0..total);
    let channel = haar_channel(m_in, eta, seed, anc, kept)?;
    Ok((channel, anc, kept))
}

fn ordered_temperatures(out: &GaussianState) -> Result<(f64, f64)> {
    let tau = principal_directional_temperatures(out)?;
    Ok((tau[0], tau[1]))
}

/// Sample `n_samples` reachable single-mode outputs of random channels.
///
/// Sampling is uniform over ancilla counts `1..=m_anc_max`, Haar over the
/// global passive matrix, and uniform over the kept mode. Samples are
/// indexed deterministically: sample `i` depends only on `(seed, i)`, so
/// results are identical regardless of thread count.
pub fn sample_reachable(
    s: &GaussianState,
    eta: f64,
    m_anc_max: usize,
    n_samples: usize,
    seed: u64,
) -> Result<Vec<ReachSample>> {
    if m_anc_max == 0 {
        return Err(Error::Domain("need at least one ancilla mode".into()));
    }
    s.ensure_valid(crate::state::PHYSICS_TOL)?;
    if !(eta >= 1.0) {
        return Err(Error::UnphysicalTemperature(eta));
    }
    (0..n_samples)
        .into_par_iter()
        .map(|i| {
            let sample_seed = derive_seed(seed, i as u64);
            let (channel, anc, kept) = draw_channel(s.modes(), eta, m_anc_max, sample_seed)?;
            let out = channel.apply(s)?;
            let (tau1, tau2) = ordered_temperatures(&out)?;
            Ok(ReachSample {
                tau1,
                tau2,
                channel_params: ChannelParams::Haar {
                    seed: sample_seed,
                    anc,
                    kept,
                },
            })
        })
        .collect()
}

/// Predicted reachable segment for a single-mode input: from the input's
/// `(tau1, tau2)` to the bath point `(eta, eta)`.
pub fn single_mode_reach_line(s: &GaussianState, eta: f64) -> Result<((f64, f64), (f64, f64))> {
    if s.modes() != 1 {
        return Err(Error::ShapeMismatch(
            "the straight-line law holds for single-mode inputs; sample multi-mode states instead"
                .into(),
        ));
    }
    let (tau1, tau2) = ordered_temperatures(s)?;
    Ok(((tau1, tau2), (eta, eta)))
}

/// Lattice specification for [`theorem_bound_region`].
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct GridSpec {
    pub tau1_range: (f64, f64),
    pub tau2_range: (f64, f64),
    /// Lattice points per axis (at least 2).
    pub resolution: usize,
}

impl GridSpec {
    pub fn validate(&self) -> Result<()> {
        if self.resolution < 2
            || !(self.tau1_range.1 > self.tau1_range.0)
            || !(self.tau2_range.1 > self.tau2_range.0)
        {
            return Err(Error::Domain(format!("degenerate grid spec: {self:?}")));
        }
        Ok(())
    }

    fn tau1_at(&self, i: usize) -> f64 {
        let (a, b) = self.tau1_range;
        a + (b - a) * (i as f64) / ((self.resolution - 1) as f64)
    }

    fn tau2_at(&self, j: usize) -> f64 {
        let (a, b) = self.tau2_range;
        a + (b - a) * (j as f64) / ((self.resolution - 1) as f64)
    }
}

/// Flags of one lattice point.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct RegionCell {
    pub tau1: f64,
    pub tau2: f64,
    #[serde(rename = "allowed_by_T1")]
    pub allowed_by_t1: bool,
    #[serde(rename = "allowed_by_T2")]
    pub allowed_by_t2: bool,
    pub allowed_by_free_energy: bool,
    pub physical: bool,
    pub sampled_reachable: bool,
}

/// Rasterized outer-bound regions for single-mode outputs of a fixed input.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RegionGrid {
    pub spec: GridSpec,
    pub eta: f64,
    /// Lattice points with `tau1 >= tau2`, row-major by `(tau1, tau2)` index.
    pub cells: Vec<RegionCell>,
}

/// Everything the point-wise law checks need about the initial state.
#[derive(Debug, Clone)]
pub struct RegionContext {
    tau_rho: Vec<f64>,
    mu_rho: Vec<f64>,
    f_rho: Option<f64>,
    eta: f64,
    tol: f64,
}

impl RegionContext {
    pub fn new(rho: &GaussianState, eta: f64, tol: f64) -> Result<Self> {
        if !(eta >= 1.0) {
            return Err(Error::UnphysicalTemperature(eta));
        }
        rho.ensure_valid(crate::state::PHYSICS_TOL)?;
        let f_rho = if eta > 1.0 {
            Some(rel_ent_athermality(rho, eta)?)
        } else {
            None
        };
        Ok(Self {
            tau_rho: principal_directional_temperatures(rho)?,
            mu_rho: principal_mode_temperatures(rho)?,
            f_rho,
            eta,
            tol,
        })
    }

    /// Evaluate the three outer-bound laws and physicality for the diagonal
    /// single-mode candidate `diag(tau1, tau2)` at exact coordinates.
    pub fn check_point(&self, tau1: f64, tau2: f64) -> RegionCell {
        let (tau1, tau2) = if tau1 >= tau2 {
            (tau1, tau2)
        } else {
            (tau2, tau1)
        };
        let physical = tau1 * tau2 >= 1.0 - self.tol && tau2 > 0.0;
        let t1 = spectral_law(
            crate::certify::Law::Directional,
            &self.tau_rho,
            &[tau1, tau2],
            self.eta,
            self.tol,
        )
        .passed;
        let mu_sigma = 0.5 * (tau1 + tau2);
        let t2 = spectral_law(
            crate::certify::Law::Mode,
            &self.mu_rho,
            &[mu_sigma],
            self.eta,
            self.tol,
        )
        .passed;
        let free_energy = match self.f_rho {
            Some(f_rho) if physical => {
                candidate_rel_ent(tau1, tau2, self.eta).is_some_and(|f| f <= f_rho + self.tol)
            }
            _ => false,
        };
        RegionCell {
            tau1,
            tau2,
            allowed_by_t1: t1,
            allowed_by_t2: t2,
            allowed_by_free_energy: free_energy,
            physical,
            sampled_reachable: false,
        }
    }
}

/// Relative entropy of athermality of the zero-mean single-mode state
/// `diag(tau1, tau2)`; `None` when the candidate is unphysical.
fn candidate_rel_ent(tau1: f64, tau2: f64, eta: f64) -> Option<f64> {
    let cov = nalgebra::DMatrix::from_row_slice(2, 2, &[tau1, 0.0, 0.0, tau2]);
    let s = GaussianState::new(1, nalgebra::DVector::zeros(2), cov).ok()?;
    rel_ent_athermality(&s, eta).ok()
}

/// Rasterize the outer-bound regions on the given lattice.
pub fn theorem_bound_region(
    rho: &GaussianState,
    eta: f64,
    spec: GridSpec,
    tol: f64,
) -> Result<RegionGrid> {
    spec.validate()?;
    let ctx = RegionContext::new(rho, eta, tol)?;
    let mut cells = Vec::new();
    for i in 0..spec.resolution {
        let tau1 = spec.tau1_at(i);
        for j in 0..spec.resolution {
            let tau2 = spec.tau2_at(j);
            if tau1 >= tau2 {
                cells.push(ctx.check_point(tau1, tau2));
            }
        }
    }
    Ok(RegionGrid { spec, eta, cells })
}

impl RegionGrid {
    /// Mark the lattice point nearest to each sample. Markers are for
    /// display; containment against the bounds is checked at the samples'
    /// exact coordinates via [`RegionContext::check_point`].
    pub fn mark_samples(&mut self, samples: &[ReachSample]) {
        for sample in samples {
            let mut best = None;
            let mut best_d2 = f64::INFINITY;
            for (idx, cell) in self.cells.iter().enumerate() {
                let d2 = (cell.tau1 - sample.tau1).powi(2) + (cell.tau2 - sample.tau2).powi(2);
                if d2 < best_d2 {
                    best_d2 = d2;
                    best = Some(idx);
                }
            }
            if let Some(idx) = best {
                self.cells[idx].sampled_reachable = true;
            }
        }
    }
}

/// Result of the squeezed-thermal conversion demonstration.
#[derive(Debug, Clone, Serialize)]
pub struct SqueezedThermalDemo {
    pub samples: Vec<ReachSample>,
    /// True iff some sample sits within `1e-6` of an isotropic state hotter
    /// than the bath by more than `1e-6`.
    pub reaches_hotter_thermal: bool,
    /// The hottest isotropic level seen, when any.
    pub hottest_isotropic: Option<f64>,
}

/// Squeezed thermal input at the bath temperature: either
/// `diag(eta e^{2r}, eta e^{-2r})` on one mode, or the two-mode analogue with
/// local level `eta cosh 2r` and correlation `eta sinh 2r` (symplectic
/// spectrum pinned at `eta`).
pub fn squeezed_thermal_state(modes: usize, r: f64, eta: f64) -> Result<GaussianState> {
    if !(eta >= 1.0) {
        return Err(Error::UnphysicalTemperature(eta));
    }
    if !(r >= 0.0) {
        return Err(Error::Domain(format!("squeezing must be nonnegative, got {r}")));
    }
    match modes {
        1 => {
            let cov = nalgebra::DMatrix::from_row_slice(
                2,
                2,
                &[eta * (2.0 * r).exp(), 0.0, 0.0, eta * (-2.0 * r).exp()],
            );
            GaussianState::new(1, nalgebra::DVector::zeros(2), cov)
        }
        2 => {
            let a = eta * (2.0 * r).cosh();
            let c = eta * (2.0 * r).sinh();
            let cov = nalgebra::DMatrix::from_row_slice(
                4,
                4,
                &[
                    a, 0.0, c, 0.0, //
                    0.0, a, 0.0, -c, //
                    c, 0.0, a, 0.0, //
                    0.0, -c, 0.0, a,
                ],
            );
            GaussianState::new(2, nalgebra::DVector::zeros(4), cov)
        }
        _ => Err(Error::InvalidDimension(
            "the demonstration covers one- and two-mode inputs".into(),
        )),
    }
}

/// Sample the states reachable from a squeezed thermal input at the bath
/// temperature and flag whether squeezing was converted into a temperature
/// differential: some reachable state isotropic to `1e-6` and hotter than
/// the bath by more than `1e-6`.
///
/// Alongside the random samples, the `modes` single-mode partial traces
/// (keep one mode, no ancillas) are always probed: they are free operations
/// too, and for the two-mode input they land exactly on the hot isotropic
/// states that random passive matrices only graze.
pub fn squeezed_thermal_demo(
    modes: usize,
    r: f64,
    eta: f64,
    n_samples: usize,
    seed: u64,
) -> Result<SqueezedThermalDemo> {
    let input = squeezed_thermal_state(modes, r, eta)?;
    let mut samples = sample_reachable(&input, eta, 3, n_samples, seed)?;
    for kept in 0..modes {
        let params = ChannelParams::KeepMode { kept };
        let out = regenerate_channel(&input, eta, &params)?.apply(&input)?;
        let (tau1, tau2) = ordered_temperatures(&out)?;
        samples.push(ReachSample {
            tau1,
            tau2,
            channel_params: params,
        });
    }
    let mut hottest: Option<f64> = None;
    for s in &samples {
        let isotropic = (s.tau1 - s.tau2).abs() * 0.5 <= 1e-6;
        if isotropic {
            let level = 0.5 * (s.tau1 + s.tau2);
            if level > eta + 1e-6 {
                hottest = Some(hottest.map_or(level, |h: f64| h.max(level)));
            }
        }
    }
    Ok(SqueezedThermalDemo {
        samples,
        reaches_hotter_thermal: hottest.is_some(),
        hottest_isotropic: hottest,
    })
}

/// Area of the convex hull of a planar point set (monotone chain); zero for
/// fewer than three points or collinear input.
pub fn convex_hull_area(points: &[(f64, f64)]) -> f64 {
    if points.len() < 3 {
        return 0.0;
    }
    let mut pts: Vec<(f64, f64)> = points.to_vec();
    pts.sort_by(|a, b| a.partial_cmp(b).expect("finite coordinates"));
    pts.dedup();
    if pts.len() < 3 {
        return 0.0;
    }
    let cross = |o: (f64, f64), a: (f64, f64), b: (f64, f64)| {
        (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
    };
    let mut lower: Vec<(f64, f64)> = Vec::with_capacity(pts.len());
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0.0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<(f64, f64)> = Vec::with_capacity(pts.len());
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0.0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    let hull: Vec<(f64, f64)> = lower.into_iter().chain(upper).collect();
    if hull.len() < 3 {
        return 0.0;
    }
    // shoelace over the closed hull
    let mut area2 = 0.0;
    for k in 0..hull.len() {
        let (x1, y1) = hull[k];
        let (x2, y2) = hull[(k + 1) % hull.len()];
        area2 += x1 * y2 - x2 * y1;
    }
    area2.abs() * 0.5
}

/// Perpendicular distance from `p` to the segment `a`-`b`.
pub fn distance_to_segment(p: (f64, f64), a: (f64, f64), b: (f64, f64)) -> f64 {
    let (dx, dy) = (b.0 - a.0, b.1 - a.1);
    let len2 = dx * dx + dy * dy;
    if len2 == 0.0 {
        return ((p.0 - a.0).powi(2) + (p.1 - a.1).powi(2)).sqrt();
    }
    let t = (((p.0 - a.0) * dx + (p.1 - a.1) * dy) / len2).clamp(0.0, 1.0);
    let (cx, cy) = (a.0 + t * dx, a.1 + t * dy);
    ((p.0 - cx).powi(2) + (p.1 - cy).powi(2)).sqrt()
}

/// A reach dataset ready for file output.
#[derive(Debug, Clone, Serialize)]
pub struct RegionData {
    pub samples: Vec<ReachSample>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid: Option<RegionGrid>,
}

/// Output file format for [`emit_region`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegionFormat {
    Csv,
    Json,
}

/// Write a region dataset to `path`. CSV rows are `tau1,tau2,source` with
/// `source` one of `sample`, `bound_T1`, `bound_T2`, `bound_F`,
/// `unphysical`; JSON mirrors the full structures.
pub fn emit_region(data: &RegionData, path: &Path, format: RegionFormat) -> Result<()> {
    if data.samples.is_empty() && data.grid.is_none() {
        return Err(Error::Domain("refusing to emit an empty region dataset".into()));
    }
    let mut file = std::fs::File::create(path)?;
    match format {
        RegionFormat::Json => {
            serde_json::to_writer_pretty(&mut file, data)?;
            file.write_all(b"\n")?;
        }
        RegionFormat::Csv => {
            let mut w = csv::Writer::from_writer(file);
            w.write_record(["tau1", "tau2", "source"])?;
            for s in &data.samples {
                w.write_record(&[s.tau1.to_string(), s.tau2.to_string(), "sample".into()])?;
            }
            if let Some(grid) = &data.grid {
                for cell in &grid.cells {
                    let mut tags: Vec<&str> = Vec::new();
                    if cell.allowed_by_t1 {
                        tags.push("bound_T1");
                    }
                    if cell.allowed_by_t2 {
                        tags.push("bound_T2");
                    }
                    if cell.allowed_by_free_energy {
                        tags.push("bound_F");
                    }
                    if !cell.physical {
                        tags.push("unphysical");
                    }
                    for tag in tags {
                        w.write_record(&[
                            cell.tau1.to_string(),
                            cell.tau2.to_string(),
                            tag.to_string(),
                        ])?;
                    }
                }
            }
            w.flush()?;
        }
    }
    Ok(())
}
