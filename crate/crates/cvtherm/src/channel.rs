//! Linear thermal operations: the free channels of the resource theory.
//!
//! A channel is specified by (1) a number of ancilla modes prepared in the
//! bath's thermal state at level `eta`, (2) a global passive linear unitary
//! acting on system plus ancillas as an orthogonal-symplectic matrix `M`,
//! and (3) the list of output modes that are kept (the rest are traced out).
//! On moments the action is
//!
//! ```text
//! mean' = rows(kept) of M (mean ⊕ 0)
//! V'    = rows/cols(kept) of M (V ⊕ eta*1) M^T
//! ```
//!
//! Discarding is represented by the `kept` index list; the projector of the
//! partial trace becomes plain row/column selection. Channels pin their own
//! `eta`, and composing channels with different bath levels is rejected:
//! the ambient bath has a single temperature.

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::state::GaussianState;
use crate::symplectic::{haar_orthogonal_symplectic, OrthogonalSymplecticMatrix};
use crate::{Error, Result};

/// A linear thermal operation from `m_in` modes to `kept.len()` modes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ChannelJson", into = "ChannelJson")]
pub struct BLTOChannel {
    m_in: usize,
    m_anc: usize,
    eta: f64,
    m: OrthogonalSymplecticMatrix,
    kept: Vec<usize>,
}

/// JSON wire form:
/// `{"m_in":…, "m_anc":…, "eta":…, "M":[[…]], "kept":[…]}`.
#[derive(Serialize, Deserialize)]
struct ChannelJson {
    m_in: usize,
    m_anc: usize,
    eta: f64,
    #[serde(rename = "M")]
    m: Vec<Vec<f64>>,
    kept: Vec<usize>,
}

impl TryFrom<ChannelJson> for BLTOChannel {
    type Error = Error;

    fn try_from(j: ChannelJson) -> Result<Self> {
        let dim = 2 * (j.m_in + j.m_anc);
        if j.m.len() != dim || j.m.iter().any(|row| row.len() != dim) {
            return Err(Error::ShapeMismatch(format!(
                "M must be {dim}x{dim} for {} + {} modes",
                j.m_in, j.m_anc
            )));
        }
        let mat = DMatrix::from_fn(dim, dim, |r, c| j.m[r][c]);
        BLTOChannel::new(
            j.m_in,
            j.m_anc,
            j.eta,
            OrthogonalSymplecticMatrix::new(mat)?,
            j.kept,
        )
    }
}

impl From<BLTOChannel> for ChannelJson {
    fn from(c: BLTOChannel) -> Self {
        let dim = 2 * (c.m_in + c.m_anc);
        ChannelJson {
            m_in: c.m_in,
            m_anc: c.m_anc,
            eta: c.eta,
            m: (0..dim)
                .map(|r| (0..dim).map(|col| c.m.matrix()[(r, col)]).collect())
                .collect(),
            kept: c.kept,
        }
    }
}

impl BLTOChannel {
    /// Assemble a channel, checking index ranges, distinctness, and the bath
    /// level.
    pub fn new(
        m_in: usize,
        m_anc: usize,
        eta: f64,
        m: OrthogonalSymplecticMatrix,
        kept: Vec<usize>,
    ) -> Result<Self> {
        if m_in == 0 {
            return Err(Error::InvalidDimension("channel needs at least one input mode".into()));
        }
        if !(eta >= 1.0) {
            return Err(Error::UnphysicalTemperature(eta));
        }
        let total = m_in + m_anc;
        if m.modes() != total {
            return Err(Error::ShapeMismatch(format!(
                "global matrix acts on {} modes, expected {total}",
                m.modes()
            )));
        }
        if kept.is_empty() {
            return Err(Error::InvalidDimension("channel must keep at least one mode".into()));
        }
        let mut seen = vec![false; total];
        for &k in &kept {
            if k >= total {
                return Err(Error::IndexOutOfRange {
                    index: k,
                    modes: total,
                });
            }
            if seen[k] {
                return Err(Error::Structure(format!("duplicate kept index {k}")));
            }
            seen[k] = true;
        }
        Ok(Self {
            m_in,
            m_anc,
            eta,
            m,
            kept,
        })
    }

    /// The identity channel on `m` modes.
    pub fn identity(m: usize, eta: f64) -> Result<Self> {
        Self::new(
            m,
            0,
            eta,
            OrthogonalSymplecticMatrix::identity(m),
            (0..m).collect(),
        )
    }

    /// Draw a random channel: Haar global matrix over `m_in + m_anc` modes,
    /// keeping the given modes.
    pub fn random<R: Rng + ?Sized>(
        m_in: usize,
        m_anc: usize,
        eta: f64,
        kept: Vec<usize>,
        rng: &mut R,
    ) -> Result<Self> {
        let m = haar_orthogonal_symplectic(m_in + m_anc, rng);
        Self::new(m_in, m_anc, eta, m, kept)
    }

    pub fn m_in(&self) -> usize {
        self.m_in
    }

    pub fn m_anc(&self) -> usize {
        self.m_anc
    }

    pub fn m_out(&self) -> usize {
        self.kept.len()
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    pub fn global_matrix(&self) -> &OrthogonalSymplecticMatrix {
        &self.m
    }

    pub fn kept(&self) -> &[usize] {
        &self.kept
    }

    /// Apply the channel to a state on `m_in` modes.
    pub fn apply(&self, s: &GaussianState) -> Result<GaussianState> {
        if s.modes() != self.m_in {
            return Err(Error::ShapeMismatch(format!(
                "channel expects {} input modes, state has {}",
                self.m_in,
                s.modes()
            )));
        }
        let total = self.m_in + self.m_anc;
        let dim = 2 * total;
        let mat = self.m.matrix();

        let mut mean_full = DVector::zeros(dim);
        mean_full.rows_mut(0, 2 * self.m_in).copy_from(s.mean());
        let mean_out_full = mat * mean_full;

        let mut cov_full = DMatrix::identity(dim, dim) * self.eta;
        cov_full
            .view_mut((0, 0), (2 * self.m_in, 2 * self.m_in))
            .copy_from(s.cov());
        let cov_out_full = mat * cov_full * mat.transpose();

        let m_out = self.kept.len();
        let mut mean = DVector::zeros(2 * m_out);
        let mut cov = DMatrix::zeros(2 * m_out, 2 * m_out);
        for (a, &ka) in self.kept.iter().enumerate() {
            for r in 0..2 {
                mean[2 * a + r] = mean_out_full[2 * ka + r];
            }
            for (b, &kb) in self.kept.iter().enumerate() {
                for r in 0..2 {
                    for c in 0..2 {
                        cov[(2 * a + r, 2 * b + c)] = cov_out_full[(2 * ka + r, 2 * kb + c)];
                    }
                }
            }
        }
        let cov = (&cov + cov.transpose()) * 0.5;
        GaussianState::new(m_out, mean, cov)
    }

    /// Fuse `second ∘ first` into a single channel with the same action.
    ///
    /// Both global matrices are embedded on the union of all ancillas; modes
    /// discarded by the first stage are carried along untouched and dropped
    /// at the end, which is sound because the partial trace commutes with
    /// operations on the kept modes.
    pub fn compose(second: &Self, first: &Self) -> Result<Self> {
        if second.m_in != first.m_out() {
            return Err(Error::ShapeMismatch(format!(
                "second stage expects {} modes, first stage outputs {}",
                second.m_in,
                first.m_out()
            )));
        }
        if second.eta != first.eta {
            return Err(Error::IncompatibleBath(first.eta, second.eta));
        }
        let total = first.m_in + first.m_anc + second.m_anc;
        let stage1 = first
            .m
            .embed(total, &(0..first.m_in + first.m_anc).collect::<Vec<_>>())?;
        // stage-2 register: the modes kept by stage 1, then stage 2's ancillas
        let mut stage2_modes: Vec<usize> = first.kept.clone();
        stage2_modes.extend((0..second.m_anc).map(|a| first.m_in + first.m_anc + a));
        let stage2 = second.m.embed(total, &stage2_modes)?;
        let global = stage2.compose(&stage1)?;
        let kept: Vec<usize> = second.kept.iter().map(|&k| stage2_modes[k]).collect();
        Self::new(
            first.m_in,
            first.m_anc + second.m_anc,
            first.eta,
            global,
            kept,
        )
    }
}

/// Beam splitter of angle `theta` between modes `i` and `j` of an `n`-mode
/// register: acts as `[[cos t * 1, sin t * 1], [-sin t * 1, cos t * 1]]` on
/// the pair, identity elsewhere.
pub fn beamsplitter(n: usize, i: usize, j: usize, theta: f64) -> Result<OrthogonalSymplecticMatrix> {
    if i >= n {
        return Err(Error::IndexOutOfRange { index: i, modes: n });
    }
    if j >= n {
        return Err(Error::IndexOutOfRange { index: j, modes: n });
    }
    if i == j {
        return Err(Error::Structure("beamsplitter needs two distinct modes".into()));
    }
    let (c, s) = (theta.cos(), theta.sin());
    let mut m = DMatrix::<f64>::identity(2 * n, 2 * n);
    for r in 0..2 {
        m[(2 * i + r, 2 * i + r)] = c;
        m[(2 * j + r, 2 * j + r)] = c;
        m[(2 * i + r, 2 * j + r)] = s;
        m[(2 * j + r, 2 * i + r)] = -s;
    }
    OrthogonalSymplecticMatrix::new(m)
}

/// Phase shifter: rotation by `phi` in the `(q, p)` plane of mode `i`.
pub fn phase_shifter(n: usize, i: usize, phi: f64) -> Result<OrthogonalSymplecticMatrix> {
    if i >= n {
        return Err(Error::IndexOutOfRange { index: i, modes: n });
    }
    let (c, s) = (phi.cos(), phi.sin());
    let mut m = DMatrix::<f64>::identity(2 * n, 2 * n);
    m[(2 * i, 2 * i)] = c;
    m[(2 * i, 2 * i + 1)] = -s;
    m[(2 * i + 1, 2 * i)] = s;
    m[(2 * i + 1, 2 * i + 1)] = c;
    OrthogonalSymplecticMatrix::new(m)
}

/// Single-mode pure-loss channel of transmissivity `t`: beam splitter of
/// angle `acos(sqrt t)` against one thermal ancilla, keeping the transmitted
/// mode. Acts as `V -> t V + (1 - t) eta 1`.
pub fn pure_loss_channel(eta: f64, transmissivity: f64) -> Result<BLTOChannel> {
    if !(0.0..=1.0).contains(&transmissivity) {
        return Err(Error::Domain(format!(
            "transmissivity must lie in [0, 1], got {transmissivity}"
        )));
    }
    let theta = transmissivity.sqrt().acos();
    BLTOChannel::new(1, 1, eta, beamsplitter(2, 0, 1, theta)?, vec![0])
}
