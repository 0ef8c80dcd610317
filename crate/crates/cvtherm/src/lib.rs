//! Thermodynamics of Gaussian bosonic states under linear thermal
//! operations.
//!
//! A system coupled to a thermal bath can borrow the bath's ancillary modes,
//! mix everything through passive linear optics (beam splitters and phase
//! shifters), and discard modes — and nothing else. These *linear thermal
//! operations* cost no external free energy, and restricting dynamics to
//! them turns a family of state functions into resource monotones: they can
//! only drift toward their bath values. This crate models the states and
//! channels, computes every monotone, decides whether a candidate state
//! transition is excluded by the monotone laws, and maps out the regions of
//! single-mode states reachable from a given input by brute-force sampling.
//!
//! The key quantities, all derived from the first moments and covariance
//! matrix of a state relative to a bath at thermal level `eta`:
//!
//! * directional temperatures (eigenvalues of the covariance matrix) and
//!   mode temperatures (mean temperatures of passively isolable modes) —
//!   both equilibrate toward `eta`, never crossing it;
//! * symplectic eigenvalues — the sub-thermal ones cannot sink;
//! * phase-space signal-to-noise ratios and the squared mean norm — these
//!   only decay;
//! * the relative entropy of athermality (a free energy) — monotone
//!   non-increasing;
//! * the squeezing of unitary formation, reported alongside the monotones.
//!
//! # Layout
//!
//! | module | contents |
//! |---|---|
//! | [`state`] | Gaussian states, thermal states, validity checks |
//! | [`symplectic`] | the symplectic form, passive matrices, Haar sampling, mode isomorphism |
//! | [`decomp`] | symmetric eigen, Williamson, Bloch-Messiah, symplectic spectra |
//! | [`channel`] | thermal-operation channels: construction, application, composition |
//! | [`monotones`] | temperature spectra, SNRs, athermality, squeezing, profiles |
//! | [`certify`] | per-law transition verdicts and empirical soundness harnesses |
//! | [`reach`] | reachable-region sampling, outer-bound grids, file output |
//! | [`cli`] | the `cvtherm` binary: analyze / certify / reach / decompose / gen-channel |
//!
//! # Example
//!
//! ```
//! use cvtherm::prelude::*;
//! use nalgebra::{DMatrix, DVector};
//!
//! // a single mode, hot along q and at vacuum noise along p
//! let state = GaussianState::new(
//!     1,
//!     DVector::zeros(2),
//!     DMatrix::from_row_slice(2, 2, &[3.0, 0.0, 0.0, 1.0]),
//! )?;
//!
//! // its monotone profile relative to a bath at eta = 2
//! let profile = profile(&state, 2.0)?;
//! assert_eq!(profile.tau, vec![3.0, 1.0]);
//!
//! // half the light lost into the bath: still not excluded, as it must be
//! let out = pure_loss_channel(2.0, 0.5)?.apply(&state)?;
//! let verdict = certify_transition(&state, &out, 2.0, 1e-8)?;
//! assert!(!verdict.is_forbidden());
//!
//! // but the reverse transition is ruled out
//! let verdict = certify_transition(&out, &state, 2.0, 1e-8)?;
//! assert!(verdict.is_forbidden());
//! # Ok::<(), cvtherm::Error>(())
//! ```
//!
//! Runnable demonstrations of each capability live under `examples/`.

pub mod certify;
pub mod channel;
pub mod cli;
pub mod decomp;
pub mod error;
pub mod monotones;
pub mod reach;
pub mod state;
pub mod symplectic;

pub use error::Error;

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// The types and operations most programs need.
pub mod prelude {
    pub use crate::certify::{
        certify_transition, find_superthermal_symplectic_increase, verify_on_random_channels,
        Law, TransitionVerdict, Verdict,
    };
    pub use crate::channel::{
        beamsplitter, phase_shifter, pure_loss_channel, BLTOChannel,
    };
    pub use crate::decomp::{
        bloch_messiah, sym_eig_desc, symplectic_spectrum, williamson, BlochMessiahResult,
        WilliamsonResult,
    };
    pub use crate::monotones::{
        classify, msnr_spectrum, principal_directional_temperatures,
        principal_mode_temperatures, profile, rel_ent_athermality, snr_spectrum,
        squeezing_unitary_formation, ThermalProfile,
    };
    pub use crate::reach::{
        sample_reachable, single_mode_reach_line, squeezed_thermal_demo, theorem_bound_region,
        GridSpec, ReachSample, RegionGrid,
    };
    pub use crate::state::{eta_from_temperature, GaussianState};
    pub use crate::symplectic::{
        random_orthogonal_symplectic, symplectic_form, OrthogonalSymplecticMatrix,
        SymplecticForm,
    };
    pub use crate::{Error, Result};
}
