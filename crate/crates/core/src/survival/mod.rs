//! Decay of the one-dimensional bound state after the field is switched on:
//! the resonant-mode expansion of the survival amplitude and a direct
//! propagation oracle.

mod gamow;
mod oracle;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::ModelConfig;
use crate::poles::PoleSet;

pub use gamow::{
    bound_state_wavefunction, gamow_function, gamow_mode, normalization, overlap_coefficients, overlap_window,
    GamowMode, Overlap, MAX_WINDOW,
};
pub use oracle::{propagate_oracle, propagate_with, OracleOptions, REFINEMENT_TOL};

/// Contribution of an edge mode to |A| above which truncation is flagged.
pub const TRUNCATION_WARN: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SurvivalSource {
    ModeSeries,
    Propagator,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Truncation {
    Modes {
        n_min: i64,
        n_max: i64,
        count: usize,
    },
    Grid {
        nodes: usize,
        x_min: f64,
        x_max: f64,
        dt_max: f64,
        steps: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SurvivalRecord {
    pub times: Vec<f64>,
    pub amplitude: Vec<Complex64>,
    /// |A(t)|^2
    pub probability: Vec<f64>,
    pub source: SurvivalSource,
    pub truncation: Truncation,
    /// Set when an edge mode still contributes more than [`TRUNCATION_WARN`]
    /// to |A| at the earliest time.
    pub truncation_suspect: bool,
    /// Probability of finding the particle within 5/lambda of the well
    /// (propagator only).
    pub nonescape: Option<Vec<f64>>,
}

pub(crate) fn validate_times(times: &[f64]) -> Result<()> {
    if times.is_empty() {
        return Err(Error::Domain("no times requested".into()));
    }
    if times.iter().any(|t| !(t.is_finite() && *t >= 0.0)) {
        return Err(Error::Domain("times must be finite and nonnegative".into()));
    }
    if times.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Domain("times must be strictly increasing".into()));
    }
    Ok(())
}

/// Gamow modes of every resonance in the set, in index order.
pub fn gamow_modes(poles: &PoleSet) -> Result<Vec<GamowMode>> {
    poles
        .resonances
        .par_iter()
        .map(|r| gamow_mode(r, &poles.cfg).map_err(|e| Error::at_pole(r.index, e)))
        .collect()
}

/// `A(t) = sum_n C~_n C_n exp(-i E_n t)` over the given modes.
pub fn series_from_modes(modes: &[GamowMode], times: &[f64]) -> Result<SurvivalRecord> {
    validate_times(times)?;
    if modes.is_empty() {
        return Err(Error::Domain("the mode series needs at least one mode".into()));
    }
    let amplitude: Vec<Complex64> = times
        .iter()
        .map(|&t| {
            modes
                .iter()
                .map(|m| m.weight() * (-Complex64::i() * m.resonance.energy * t).exp())
                .sum()
        })
        .collect();
    let n_min = modes.iter().map(|m| m.resonance.index).min().expect("nonempty");
    let n_max = modes.iter().map(|m| m.resonance.index).max().expect("nonempty");
    let t0 = times[0];
    let suspect = modes
        .iter()
        .filter(|m| (m.resonance.index == n_min || m.resonance.index == n_max) && m.resonance.index != 0)
        .any(|m| (m.weight() * (-Complex64::i() * m.resonance.energy * t0).exp()).norm() > TRUNCATION_WARN);
    Ok(SurvivalRecord {
        times: times.to_vec(),
        probability: amplitude.iter().map(|a| a.norm_sqr()).collect(),
        amplitude,
        source: SurvivalSource::ModeSeries,
        truncation: Truncation::Modes {
            n_min,
            n_max,
            count: modes.len(),
        },
        truncation_suspect: suspect,
        nonescape: None,
    })
}

/// The survival series for the one-dimensional model `cfg` over the modes in
/// `poles`, which must have been enumerated for the same model.
pub fn survival_series(cfg: &ModelConfig, poles: &PoleSet, times: &[f64]) -> Result<SurvivalRecord> {
    cfg.require_one_d("the survival series")?;
    if poles.cfg != *cfg {
        return Err(Error::InvalidConfig("pole set belongs to a different model".into()));
    }
    validate_times(times)?;
    series_from_modes(&gamow_modes(poles)?, times)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Dimension;
    use crate::poles::enumerate_poles;

    fn set(eps_b: f64, lo: i64, hi: i64) -> (ModelConfig, PoleSet) {
        let cfg = ModelConfig::from_eps_b(Dimension::One, eps_b, 1.0).unwrap();
        let p = enumerate_poles(&cfg, lo, hi).unwrap();
        (cfg, p)
    }

    #[test]
    fn series_starts_near_one() {
        let (cfg, p) = set(-10.0, -3, 9);
        let rec = survival_series(&cfg, &p, &[0.0, 1.0]).unwrap();
        assert!((rec.amplitude[0] - 1.0).norm() < 1e-2, "{}", rec.amplitude[0]);
    }

    #[test]
    fn branch_choice_does_not_change_amplitude() {
        let (_, p) = set(-1.0, -3, 9);
        let modes = gamow_modes(&p).unwrap();
        let flipped: Vec<GamowMode> = modes
            .iter()
            .map(|m| GamowMode {
                norm_factor: -m.norm_factor,
                c_n: -m.c_n,
                c_tilde_n: -m.c_tilde_n,
                ..*m
            })
            .collect();
        let times = [0.0, 0.7, 3.0];
        let a = series_from_modes(&modes, &times).unwrap();
        let b = series_from_modes(&flipped, &times).unwrap();
        for (x, y) in a.amplitude.iter().zip(&b.amplitude) {
            assert!((x - y).norm() <= 1e-12);
        }
    }

    #[test]
    fn weak_field_decay_rate() {
        let (cfg, p) = set(-3.0, -3, 9);
        let g0 = p.get(0).unwrap().width_gamma;
        let times = [0.2 / g0, 2.0 / g0];
        let rec = survival_series(&cfg, &p, &times).unwrap();
        let slope = (rec.probability[1].ln() - rec.probability[0].ln()) / (times[1] - times[0]);
        assert!((slope + g0).abs() <= 0.05 * g0);
    }

    fn partial_sum_residuals(modes: &[GamowMode], k_max: i64) -> Vec<f64> {
        (0..=k_max)
            .map(|k| {
                let sum: Complex64 = modes
                    .iter()
                    .filter(|m| m.resonance.index.abs() <= k)
                    .map(|m| m.weight())
                    .sum();
                (sum - 1.0).norm()
            })
            .collect()
    }

    #[test]
    fn adding_modes_shrinks_normalization_defect() {
        let (_, p) = set(-1.0, -3, 9);
        let r = partial_sum_residuals(&gamow_modes(&p).unwrap(), 9);
        assert!(r.windows(2).all(|w| w[1] <= w[0]), "{r:?}");
        let (_, p) = set(-0.1, -9, 9);
        let r = partial_sum_residuals(&gamow_modes(&p).unwrap(), 9);
        assert!(r.windows(2).all(|w| w[1] <= w[0]), "{r:?}");
    }

    #[test]
    fn times_validated() {
        let (cfg, p) = set(-1.0, 0, 1);
        assert!(survival_series(&cfg, &p, &[1.0, 0.5]).is_err());
        assert!(survival_series(&cfg, &p, &[-1.0]).is_err());
        let other = ModelConfig::from_eps_b(Dimension::One, -2.0, 1.0).unwrap();
        assert!(survival_series(&other, &p, &[0.0]).is_err());
    }
}
