//! Transition certification: tests every necessary condition a linear
//! thermal operation imposes on a state change and reports which laws, if
//! any, exclude it.
//!
//! Six laws are checked for a candidate transition `rho -> sigma` at bath
//! level `eta`:
//!
//! * **L1 (directional temperatures)**: neither the number of super-thermal
//!   nor of sub-thermal `tau` values may grow; matched super-thermal values
//!   (descending) may not rise, matched sub-thermal values (ascending) may
//!   not fall.
//! * **L2 (mode temperatures)**: the same structure on the `mu` spectra.
//! * **L3 (symplectic eigenvalues)**: the *sub-thermal* symplectic
//!   eigenvalues may not multiply or sink further below the bath level.
//!   (Super-thermal symplectic eigenvalues carry no such law; see
//!   [`find_superthermal_symplectic_increase`].)
//! * **L4 (first moments)**: the squared Euclidean norm of the mean may not
//!   grow.
//! * **L5 (signal-to-noise)**: no principal directional or mode SNR may
//!   grow; spectra of unequal length are padded with zeros, matching the
//!   behaviour of SNRs under thermal extensions.
//! * **L6 (free energy)**: the relative entropy of athermality may not grow;
//!   skipped (recorded, not failed) when the reference is pure (`eta = 1`).
//!
//! Passing all laws never certifies feasibility — processes outside the free
//! set can also satisfy every law — so the positive verdict is
//! `NotExcluded`, never "allowed".

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::channel::BLTOChannel;
use crate::decomp::symplectic_spectrum;
use crate::monotones::{
    classify, principal_directional_temperatures, principal_mode_temperatures,
    rel_ent_athermality, snr_spectrum,
};
use crate::state::{random_state, GaussianState, RandomStateOpts};
use crate::symplectic::derive_seed;
use crate::{Error, Result};

/// Default tolerance: a law fails only when violated by more than this.
pub const DEFAULT_TOL: f64 = 1e-8;

/// Identifier of one transition law.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Law {
    #[serde(rename = "L1-directional")]
    Directional,
    #[serde(rename = "L2-mode")]
    Mode,
    #[serde(rename = "L3-symplectic-sub")]
    SymplecticSub,
    #[serde(rename = "L4-moment")]
    Moment,
    #[serde(rename = "L5-snr")]
    Snr,
    #[serde(rename = "L6-free-energy")]
    FreeEnergy,
}

/// One scalar inequality inside a law.
#[derive(Debug, Clone, Serialize)]
pub struct InequalityCheck {
    pub what: String,
    /// Nonnegative = satisfied; the law tolerance is applied on top.
    pub slack: f64,
}

/// Outcome of one law.
#[derive(Debug, Clone, Serialize)]
pub struct LawResult {
    pub law: Law,
    pub passed: bool,
    /// Most negative slack across the law's inequalities (0 when empty).
    pub margin: f64,
    /// True when the law could not be evaluated and was recorded instead of
    /// failed (only L6, at a pure reference).
    pub skipped: bool,
    pub detail: Vec<InequalityCheck>,
}

impl LawResult {
    fn from_checks(law: Law, checks: Vec<InequalityCheck>, tol: f64) -> Self {
        let margin = checks.iter().map(|c| c.slack).fold(f64::INFINITY, f64::min);
        let margin = if margin.is_finite() { margin } else { 0.0 };
        LawResult {
            law,
            passed: margin >= -tol,
            margin,
            skipped: false,
            detail: checks,
        }
    }

    fn skipped(law: Law, why: &str) -> Self {
        LawResult {
            law,
            passed: true,
            margin: 0.0,
            skipped: true,
            detail: vec![InequalityCheck {
                what: format!("skipped: {why}"),
                slack: 0.0,
            }],
        }
    }
}

/// Overall verdict of a candidate transition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Forbidden,
    NotExcluded,
}

/// Per-law results plus the overall verdict.
#[derive(Debug, Clone, Serialize)]
pub struct TransitionVerdict {
    pub laws: Vec<LawResult>,
    pub verdict: Verdict,
    pub eta: f64,
    pub tol: f64,
}

impl TransitionVerdict {
    pub fn is_forbidden(&self) -> bool {
        self.verdict == Verdict::Forbidden
    }

    /// Most negative margin over all evaluated laws.
    pub fn worst_margin(&self) -> f64 {
        self.laws
            .iter()
            .filter(|l| !l.skipped)
            .map(|l| l.margin)
            .fold(f64::INFINITY, f64::min)
    }

    pub fn law(&self, law: Law) -> &LawResult {
        self.laws
            .iter()
            .find(|l| l.law == law)
            .expect("all six laws are always present")
    }
}

/// Check the two-sided spectral law (L1 on `tau`, L2 on `mu`): counts of
/// super-/sub-thermal values must not grow, matched super-thermal values
/// (descending) must not rise, matched sub-thermal values (ascending) must
/// not fall.
pub(crate) fn spectral_law(
    law: Law,
    rho_values: &[f64],
    sigma_values: &[f64],
    eta: f64,
    tol: f64,
) -> LawResult {
    let rho = classify(rho_values, eta, tol);
    let sigma = classify(sigma_values, eta, tol);
    let mut checks = vec![
        InequalityCheck {
            what: format!("k_super: {} -> {}", rho.k_super(), sigma.k_super()),
            slack: rho.k_super() as f64 - sigma.k_super() as f64,
        },
        InequalityCheck {
            what: format!("k_sub: {} -> {}", rho.k_sub(), sigma.k_sub()),
            slack: rho.k_sub() as f64 - sigma.k_sub() as f64,
        },
    ];
    for k in 0..sigma.k_super().min(rho.k_super()) {
        checks.push(InequalityCheck {
            what: format!("super[{k}] not above {:.6}", rho.super_thermal_desc[k]),
            slack: rho.super_thermal_desc[k] - sigma.super_thermal_desc[k],
        });
    }
    for k in 0..sigma.k_sub().min(rho.k_sub()) {
        checks.push(InequalityCheck {
            what: format!("sub[{k}] not below {:.6}", rho.sub_thermal_asc[k]),
            slack: sigma.sub_thermal_asc[k] - rho.sub_thermal_asc[k],
        });
    }
    LawResult::from_checks(law, checks, tol)
}

/// L3: the sub-thermal part of the ascending symplectic spectrum.
fn symplectic_sub_law(rho_nu: &[f64], sigma_nu: &[f64], eta: f64, tol: f64) -> LawResult {
    let k_rho = rho_nu.iter().filter(|v| **v < eta - tol).count();
    let k_sigma = sigma_nu.iter().filter(|v| **v < eta - tol).count();
    let mut checks = vec![InequalityCheck {
        what: format!("k_sub-thermal: {k_rho} -> {k_sigma}"),
        slack: k_rho as f64 - k_sigma as f64,
    }];
    for j in 0..k_sigma.min(k_rho) {
        checks.push(InequalityCheck {
            what: format!("nu[{j}] not below {:.6}", rho_nu[j]),
            slack: sigma_nu[j] - rho_nu[j],
        });
    }
    LawResult::from_checks(Law::SymplecticSub, checks, tol)
}

/// Elementwise `sigma <= rho` on spectra padded with zeros to equal length.
fn padded_non_increase(law: Law, name: &str, rho: &[f64], sigma: &[f64], tol: f64) -> LawResult {
    let checks = sigma
        .iter()
        .enumerate()
        .map(|(k, s)| {
            let r = rho.get(k).copied().unwrap_or(0.0);
            InequalityCheck {
                what: format!("{name}[{k}]: {s:.6} <= {r:.6}"),
                slack: r - s,
            }
        })
        .collect();
    LawResult::from_checks(law, checks, tol)
}

/// Evaluate all six laws for the candidate transition `rho -> sigma`.
pub fn certify_transition(
    rho: &GaussianState,
    sigma: &GaussianState,
    eta: f64,
    tol: f64,
) -> Result<TransitionVerdict> {
    if !(eta >= 1.0) {
        return Err(Error::UnphysicalTemperature(eta));
    }
    rho.ensure_valid(crate::state::PHYSICS_TOL)?;
    sigma.ensure_valid(crate::state::PHYSICS_TOL)?;

    let tau_rho = principal_directional_temperatures(rho)?;
    let tau_sigma = principal_directional_temperatures(sigma)?;
    let mu_rho = principal_mode_temperatures(rho)?;
    let mu_sigma = principal_mode_temperatures(sigma)?;
    let nu_rho = symplectic_spectrum(rho.cov())?;
    let nu_sigma = symplectic_spectrum(sigma.cov())?;

    let l1 = spectral_law(Law::Directional, &tau_rho, &tau_sigma, eta, tol);
    let l2 = spectral_law(Law::Mode, &mu_rho, &mu_sigma, eta, tol);
    let l3 = symplectic_sub_law(&nu_rho, &nu_sigma, eta, tol);

    let l4 = LawResult::from_checks(
        Law::Moment,
        vec![InequalityCheck {
            what: format!(
                "moment norm: {:.6} <= {:.6}",
                sigma.moment_norm(),
                rho.moment_norm()
            ),
            slack: rho.moment_norm() - sigma.moment_norm(),
        }],
        tol,
    );

    let snr_rho = snr_spectrum(rho)?;
    let snr_sigma = snr_spectrum(sigma)?;
    let mut l5 = padded_non_increase(Law::Snr, "snr", &snr_rho, &snr_sigma, tol);
    // mode SNRs: top value equals the top directional SNR, deeper values
    // vanish; compare them explicitly all the same
    let msnr_rho: Vec<f64> = std::iter::once(snr_rho[0])
        .chain(std::iter::repeat(0.0))
        .take(rho.modes())
        .collect();
    let msnr_sigma: Vec<f64> = std::iter::once(snr_sigma[0])
        .chain(std::iter::repeat(0.0))
        .take(sigma.modes())
        .collect();
    let msnr = padded_non_increase(Law::Snr, "msnr", &msnr_rho, &msnr_sigma, tol);
    l5.detail.extend(msnr.detail);
    l5.margin = l5.margin.min(msnr.margin);
    l5.passed = l5.margin >= -tol;

    let l6 = if eta > 1.0 {
        let f_rho = rel_ent_athermality(rho, eta)?;
        let f_sigma = rel_ent_athermality(sigma, eta)?;
        LawResult::from_checks(
            Law::FreeEnergy,
            vec![InequalityCheck {
                what: format!("athermality: {f_sigma:.6} <= {f_rho:.6}"),
                slack: f_rho - f_sigma,
            }],
            tol,
        )
    } else {
        LawResult::skipped(
            Law::FreeEnergy,
            "undefined reference: the eta = 1 thermal state is pure",
        )
    };

    let laws = vec![l1, l2, l3, l4, l5, l6];
    let verdict = if laws.iter().any(|l| !l.passed) {
        Verdict::Forbidden
    } else {
        Verdict::NotExcluded
    };
    Ok(TransitionVerdict {
        laws,
        verdict,
        eta,
        tol,
    })
}

/// One failed certification seen by [`verify_on_random_channels`].
#[derive(Debug, Clone, Serialize)]
pub struct Violation {
    pub trial: usize,
    pub worst_margin: f64,
    pub failed_laws: Vec<Law>,
}

/// Outcome of the empirical soundness harness.
#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub trials: usize,
    pub eta: f64,
    pub violations: Vec<Violation>,
    /// Most negative margin seen over all trials.
    pub worst_margin: f64,
    pub seed: u64,
}

/// Apply random channels to random states and certify every genuine
/// transition; any `Forbidden` verdict indicates an implementation bug, since
/// true outputs of the free operations must satisfy every law.
pub fn verify_on_random_channels(
    max_modes: usize,
    max_ancillas: usize,
    eta: f64,
    n_trials: usize,
    seed: u64,
) -> Result<VerificationReport> {
    if max_modes == 0 || max_ancillas == 0 || n_trials == 0 {
        return Err(Error::Domain(
            "verification harness needs positive mode, ancilla, and trial counts".into(),
        ));
    }
    if !(eta >= 1.0) {
        return Err(Error::UnphysicalTemperature(eta));
    }
    let results: Vec<(usize, f64, Vec<Law>)> = (0..n_trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = ChaCha12Rng::seed_from_u64(derive_seed(seed, trial as u64));
            let m = rng.random_range(1..=max_modes);
            let anc = rng.random_range(1..=max_ancillas);
            let rho = random_state(m, &mut rng, &RandomStateOpts::default());
            let total = m + anc;
            let n_keep = rng.random_range(1..=total);
            let kept = rand::seq::index::sample(&mut rng, total, n_keep).into_vec();
            let channel = BLTOChannel::random(m, anc, eta, kept, &mut rng)
                .expect("random channel construction is well-formed");
            let sigma = channel.apply(&rho).expect("matching mode counts");
            let verdict = certify_transition(&rho, &sigma, eta, DEFAULT_TOL)
                .expect("genuine transitions certify cleanly");
            let failed: Vec<Law> = verdict
                .laws
                .iter()
                .filter(|l| !l.passed)
                .map(|l| l.law)
                .collect();
            (trial, verdict.worst_margin(), failed)
        })
        .collect();
    let mut worst = f64::INFINITY;
    let mut violations = Vec::new();
    for (trial, margin, failed) in results {
        worst = worst.min(margin);
        if !failed.is_empty() {
            violations.push(Violation {
                trial,
                worst_margin: margin,
                failed_laws: failed,
            });
        }
    }
    Ok(VerificationReport {
        trials: n_trials,
        eta,
        violations,
        worst_margin: worst,
        seed,
    })
}

/// Input family searched for super-thermal symplectic-eigenvalue increases.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessInputClass {
    /// Random two-mode states with planted squeezing in their preparation.
    SqueezedTwoMode,
    /// Random two-mode states with `V >= 1`: no quadrature variance below
    /// the vacuum level. Such states can still require squeezing to
    /// *prepare* (any anisotropic `V` does), and the survey does find
    /// increases here.
    CovAboveIdentity,
    /// Random passive rotations of products of thermal modes: zero
    /// Bloch-Messiah squeezing in the preparation.
    PassiveThermal,
}

/// A transition whose super-thermal symplectic spectrum rose.
#[derive(Debug, Clone)]
pub struct SymplecticIncreaseWitness {
    pub state: GaussianState,
    pub channel: BLTOChannel,
    pub nu_before: Vec<f64>,
    pub nu_after: Vec<f64>,
    pub increase: f64,
    pub trial: usize,
}

/// Count of witnesses found over a full search.
#[derive(Debug)]
pub struct WitnessSearchReport {
    pub trials: usize,
    pub witnesses: usize,
    pub first: Option<SymplecticIncreaseWitness>,
    pub max_increase: f64,
}

/// Largest rise of the super-thermal symplectic spectrum: descending
/// super-thermal values of the output compared against those of the input
/// padded with the bath level (ancilla eigenvalues enter at `eta`).
fn superthermal_increase(nu_before: &[f64], nu_after: &[f64], eta: f64) -> f64 {
    let mut before: Vec<f64> = nu_before.iter().copied().filter(|v| *v > eta).collect();
    before.sort_by(|a, b| b.partial_cmp(a).expect("finite"));
    let mut after: Vec<f64> = nu_after.iter().copied().filter(|v| *v > eta).collect();
    after.sort_by(|a, b| b.partial_cmp(a).expect("finite"));
    after
        .iter()
        .enumerate()
        .map(|(k, a)| a - before.get(k).copied().unwrap_or(eta))
        .fold(f64::NEG_INFINITY, f64::max)
}

fn witness_trial(
    class: WitnessInputClass,
    eta: f64,
    seed: u64,
    trial: usize,
) -> Option<SymplecticIncreaseWitness> {
    let mut rng = ChaCha12Rng::seed_from_u64(derive_seed(seed, trial as u64));
    let state = match class {
        WitnessInputClass::SqueezedTwoMode => random_state(
            2,
            &mut rng,
            &RandomStateOpts {
                nu_range: (1.0, 2.0 * eta),
                max_squeeze: 1.0,
                mean_scale: 0.0,
            },
        ),
        WitnessInputClass::CovAboveIdentity => {
            crate::state::random_cov_above_identity(2, &mut rng, 3.0 * eta)
        }
        WitnessInputClass::PassiveThermal => random_state(
            2,
            &mut rng,
            &RandomStateOpts {
                nu_range: (1.0, 2.0 * eta),
                max_squeeze: 0.0,
                mean_scale: 0.0,
            },
        ),
    };
    let anc = rng.random_range(1..=2);
    let total = 2 + anc;
    let n_keep = rng.random_range(1..=2);
    let kept = rand::seq::index::sample(&mut rng, total, n_keep).into_vec();
    let channel = BLTOChannel::random(2, anc, eta, kept, &mut rng).ok()?;
    let sigma = channel.apply(&state).ok()?;
    let nu_before = symplectic_spectrum(state.cov()).ok()?;
    let nu_after = symplectic_spectrum(sigma.cov()).ok()?;
    let increase = superthermal_increase(&nu_before, &nu_after, eta);
    if increase > 1e-6 {
        Some(SymplecticIncreaseWitness {
            state,
            channel,
            nu_before,
            nu_after,
            increase,
            trial,
        })
    } else {
        None
    }
}

/// Search squeezed two-mode inputs under random channels for a super-thermal
/// symplectic eigenvalue that strictly increases; returns the first witness
/// found, or `None` after `n_trials` attempts.
pub fn find_superthermal_symplectic_increase(
    eta: f64,
    n_trials: usize,
    seed: u64,
) -> Result<Option<SymplecticIncreaseWitness>> {
    if !(eta > 1.0) {
        return Err(Error::UnphysicalTemperature(eta));
    }
    for trial in 0..n_trials {
        if let Some(w) = witness_trial(WitnessInputClass::SqueezedTwoMode, eta, seed, trial) {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

/// Run the full witness search over `n_trials` for the given input family and
/// report how often the super-thermal symplectic spectrum rose. For squeezed
/// inputs witnesses are plentiful; the restricted families are exploratory.
pub fn survey_superthermal_symplectic_increase(
    class: WitnessInputClass,
    eta: f64,
    n_trials: usize,
    seed: u64,
) -> Result<WitnessSearchReport> {
    if !(eta > 1.0) {
        return Err(Error::UnphysicalTemperature(eta));
    }
    let found: Vec<SymplecticIncreaseWitness> = (0..n_trials)
        .into_par_iter()
        .filter_map(|trial| witness_trial(class, eta, seed, trial))
        .collect();
    let mut found = found;
    found.sort_by_key(|w| w.trial);
    let max_increase = found.iter().map(|w| w.increase).fold(0.0, f64::max);
    Ok(WitnessSearchReport {
        trials: n_trials,
        witnesses: found.len(),
        first: found.into_iter().next(),
        max_increase,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::pure_loss_channel;
    use nalgebra::{DMatrix, DVector};
    use rand::Rng;

    fn diag_state(entries: &[f64]) -> GaussianState {
        let dim = entries.len();
        let mut cov = DMatrix::zeros(dim, dim);
        for (i, &e) in entries.iter().enumerate() {
            cov[(i, i)] = e;
        }
        GaussianState::new(dim / 2, DVector::zeros(dim), cov).unwrap()
    }

    #[test]
    fn identity_transition_not_excluded() {
        let s = diag_state(&[3.0, 1.0]);
        let v = certify_transition(&s, &s, 2.0, DEFAULT_TOL).unwrap();
        assert_eq!(v.verdict, Verdict::NotExcluded);
        assert!(v.worst_margin() >= 0.0);
        assert_eq!(v.laws.len(), 6);
    }

    #[test]
    fn heating_a_thermal_state_is_forbidden() {
        let rho = GaussianState::thermal(1, 2.0).unwrap();
        let sigma = GaussianState::thermal(1, 3.0).unwrap();
        let v = certify_transition(&rho, &sigma, 2.0, DEFAULT_TOL).unwrap();
        assert_eq!(v.verdict, Verdict::Forbidden);
        assert!(!v.law(Law::Directional).passed, "sigma gained a super-thermal value");
        assert!(!v.law(Law::FreeEnergy).passed);
    }

    #[test]
    fn genuine_pure_loss_output_passes_all_laws() {
        let rho = diag_state(&[3.0, 1.0]);
        let sigma = pure_loss_channel(2.0, 0.5).unwrap().apply(&rho).unwrap();
        // closed form: diag(2.5, 1.5)
        assert!((sigma.cov()[(0, 0)] - 2.5).abs() < 1e-12);
        let v = certify_transition(&rho, &sigma, 2.0, DEFAULT_TOL).unwrap();
        assert_eq!(v.verdict, Verdict::NotExcluded);
        assert!(v.worst_margin() >= -1e-12);
    }

    #[test]
    fn law6_skipped_at_pure_reference() {
        let rho = diag_state(&[3.0, 1.0]);
        let v = certify_transition(&rho, &rho, 1.0, DEFAULT_TOL).unwrap();
        let l6 = v.law(Law::FreeEnergy);
        assert!(l6.skipped && l6.passed);
        assert_eq!(v.verdict, Verdict::NotExcluded);
    }

    #[test]
    fn snr_increase_is_caught() {
        let cov = DMatrix::identity(2, 2) * 2.0;
        let rho = GaussianState::new(1, DVector::from_vec(vec![1.0, 0.0]), cov.clone()).unwrap();
        let sigma = GaussianState::new(1, DVector::from_vec(vec![1.5, 0.0]), cov).unwrap();
        let v = certify_transition(&rho, &sigma, 2.0, DEFAULT_TOL).unwrap();
        assert!(!v.law(Law::Snr).passed);
        assert!(!v.law(Law::Moment).passed);
        assert_eq!(v.verdict, Verdict::Forbidden);
    }

    #[test]
    fn sub_thermal_symplectic_sink_is_caught() {
        // rho has nu = 1.5 (sub-thermal at eta = 2); sigma sinks it to 1.2
        let rho = diag_state(&[1.5, 1.5]);
        let sigma = diag_state(&[1.2, 1.2]);
        let v = certify_transition(&rho, &sigma, 2.0, DEFAULT_TOL).unwrap();
        assert!(!v.law(Law::SymplecticSub).passed);
        assert_eq!(v.verdict, Verdict::Forbidden);
    }

    #[test]
    fn mode_count_change_is_handled() {
        // two modes in, one mode out by partial trace (a genuine operation)
        let rho = diag_state(&[3.0, 3.0, 1.4, 1.4]);
        let keep_first = BLTOChannel::new(
            2,
            0,
            2.0,
            crate::symplectic::OrthogonalSymplecticMatrix::identity(2),
            vec![0],
        )
        .unwrap();
        let sigma = keep_first.apply(&rho).unwrap();
        let v = certify_transition(&rho, &sigma, 2.0, DEFAULT_TOL).unwrap();
        assert_eq!(v.verdict, Verdict::NotExcluded);
        // and growing the register with a hot mode is forbidden
        let fat = rho.direct_sum(&GaussianState::thermal(1, 4.0).unwrap());
        let v = certify_transition(&sigma, &fat, 2.0, DEFAULT_TOL).unwrap();
        assert_eq!(v.verdict, Verdict::Forbidden);
    }

    #[test]
    fn soundness_on_random_channels() {
        let report = verify_on_random_channels(3, 3, 1.7, 300, 12345).unwrap();
        assert_eq!(report.trials, 300);
        assert!(
            report.violations.is_empty(),
            "genuine transitions flagged: {:?}",
            report.violations
        );
        assert!(report.worst_margin >= -1e-8);
    }

    #[test]
    fn soundness_report_is_reproducible() {
        let a = verify_on_random_channels(2, 2, 2.0, 50, 777).unwrap();
        let b = verify_on_random_channels(2, 2, 2.0, 50, 777).unwrap();
        assert_eq!(a.worst_margin, b.worst_margin);
        assert_eq!(a.violations.len(), b.violations.len());
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
    }

    #[test]
    fn thermal_inputs_give_near_zero_margins_on_l1() {
        let mut rng = ChaCha12Rng::seed_from_u64(3);
        let eta = 2.0;
        for _ in 0..20 {
            let rho = GaussianState::thermal(2, eta).unwrap();
            let kept = vec![rng.random_range(0..3)];
            let c = BLTOChannel::random(2, 1, eta, kept, &mut rng).unwrap();
            let sigma = c.apply(&rho).unwrap();
            let v = certify_transition(&rho, &sigma, eta, DEFAULT_TOL).unwrap();
            assert_eq!(v.verdict, Verdict::NotExcluded);
            // everything sits at the thermal level: no classified values at all
            assert_eq!(v.law(Law::Directional).detail.len(), 2);
        }
    }

    #[test]
    fn reverse_of_a_strict_transition_is_forbidden() {
        let mut rng = ChaCha12Rng::seed_from_u64(5);
        let eta = 2.0;
        for trial in 0..25 {
            let rho = random_state(1, &mut rng, &RandomStateOpts::default());
            let t = 0.3 + 0.4 * (trial as f64) / 25.0;
            let sigma = pure_loss_channel(eta, t).unwrap().apply(&rho).unwrap();
            let forward = certify_transition(&rho, &sigma, eta, DEFAULT_TOL).unwrap();
            assert_eq!(forward.verdict, Verdict::NotExcluded);
            let backward = certify_transition(&sigma, &rho, eta, DEFAULT_TOL).unwrap();
            // pseudo-reversibility only at equality of all monotones
            let coincide = (rho.moment_norm() - sigma.moment_norm()).abs() < DEFAULT_TOL
                && (principal_directional_temperatures(&rho).unwrap()[0]
                    - principal_directional_temperatures(&sigma).unwrap()[0])
                    .abs()
                    < DEFAULT_TOL;
            if backward.verdict == Verdict::NotExcluded {
                assert!(coincide, "both directions passed but monotones differ");
            }
        }
    }

    #[test]
    fn monotones_tighten_along_chains() {
        let mut rng = ChaCha12Rng::seed_from_u64(8);
        let eta = 1.5;
        for _ in 0..20 {
            let rho = random_state(1, &mut rng, &RandomStateOpts::default());
            let c1 = pure_loss_channel(eta, 0.8).unwrap();
            let c2 = pure_loss_channel(eta, 0.6).unwrap();
            let s1 = c1.apply(&rho).unwrap();
            let s2 = c2.apply(&s1).unwrap();
            assert!(s1.moment_norm() <= rho.moment_norm() + 1e-12);
            assert!(s2.moment_norm() <= s1.moment_norm() + 1e-12);
            let f0 = rel_ent_athermality(&rho, eta).unwrap();
            let f1 = rel_ent_athermality(&s1, eta).unwrap();
            let f2 = rel_ent_athermality(&s2, eta).unwrap();
            assert!(f1 <= f0 + 1e-9);
            assert!(f2 <= f1 + 1e-9);
        }
    }

    #[test]
    fn witness_found_for_squeezed_inputs() {
        let w = find_superthermal_symplectic_increase(1.5, 50_000, 42)
            .unwrap()
            .expect("squeezed inputs admit super-thermal symplectic increases");
        assert!(w.increase > 1e-6);
        // replay the witness
        let sigma = w.channel.apply(&w.state).unwrap();
        let nu = symplectic_spectrum(sigma.cov()).unwrap();
        for (a, b) in nu.iter().zip(w.nu_after.iter()) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn identity_channel_is_never_a_witness() {
        let mut rng = ChaCha12Rng::seed_from_u64(9);
        for _ in 0..50 {
            let s = random_state(2, &mut rng, &RandomStateOpts::default());
            let nu = symplectic_spectrum(s.cov()).unwrap();
            assert!(superthermal_increase(&nu, &nu, 1.5) <= 0.0);
        }
    }

    #[test]
    fn eta_below_one_is_rejected() {
        let s = diag_state(&[3.0, 1.0]);
        assert!(certify_transition(&s, &s, 0.9, DEFAULT_TOL).is_err());
        assert!(find_superthermal_symplectic_increase(1.0, 10, 1).is_err());
    }

    #[test]
    fn invalid_states_are_rejected() {
        let bad = GaussianState::new(1, DVector::zeros(2), DMatrix::identity(2, 2) * 0.5)
            .unwrap();
        let good = diag_state(&[3.0, 1.0]);
        assert!(certify_transition(&bad, &good, 2.0, DEFAULT_TOL).is_err());
        assert!(certify_transition(&good, &bad, 2.0, DEFAULT_TOL).is_err());
    }
}
