//! Starting points for Newton, one per requested index.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::asymptotic::{asymptotic_pole, ray, AsymptoticFormula, AsymptoticParams};
use super::SeedSource;
use crate::airy::airy_zero;
use crate::error::{Error, Result};
use crate::model::{g_with_scale, ComplexEnergy, Dimension, ModelConfig};

/// Below this depth eps_0 is seeded near eps_B rather than from the
/// weak-field formulas.
pub const WEAK_FIELD_DEPTH: f64 = 2.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Seed {
    pub index: i64,
    pub eps: Complex64,
    pub source: SeedSource,
}

pub(crate) fn check_range(n_min: i64, n_max: i64) -> Result<()> {
    if n_min > 0 || n_max < 0 {
        return Err(Error::Domain(format!("index range [{n_min}, {n_max}] must contain 0")));
    }
    Ok(())
}

fn ground_formula(dim: Dimension) -> AsymptoticFormula {
    match dim {
        Dimension::One => AsymptoticFormula::B2,
        Dimension::Two => AsymptoticFormula::Eq49,
        Dimension::Three => AsymptoticFormula::Eq41,
    }
}

pub(crate) fn ground_seed(dim: Dimension, eps_b: f64) -> Result<Seed> {
    if -eps_b >= WEAK_FIELD_DEPTH {
        let formula = ground_formula(dim);
        let eps = asymptotic_pole(formula, AsymptoticParams { eps_b, n: 0 })?;
        Ok(Seed {
            index: 0,
            eps,
            source: SeedSource::Asymptotic(formula),
        })
    } else {
        // shifted into the lower half-plane, where the pole lives
        Ok(Seed {
            index: 0,
            eps: eps_b * Complex64::new(1.0, 0.1),
            source: SeedSource::ShiftedBound,
        })
    }
}

/// Relative misfit |g| / scale at a candidate seed; unevaluable seeds lose.
fn misfit(z: Complex64, cfg: &ModelConfig) -> f64 {
    match g_with_scale(ComplexEnergy::Scaled(z), cfg) {
        Ok(g) if g.scale > 0.0 && g.value.is_finite() => g.value.norm() / g.scale,
        _ => f64::INFINITY,
    }
}

fn excited_seed(n: i64, eps_b: f64, cfg: &ModelConfig) -> Result<Seed> {
    let dim = cfg.dimension();
    let n_abs = n.unsigned_abs();
    let a_n = airy_zero(n_abs as usize)?;
    let params = AsymptoticParams { eps_b, n };
    let mut candidates: Vec<(Complex64, SeedSource)> = Vec::with_capacity(2);

    // weak-field regime: near the field-free limit -a_n or -a_n e^{-2i pi/3}
    let limit = if n > 0 { Complex64::new(-a_n, 0.0) } else { -a_n * ray() };
    match dim {
        Dimension::One => {
            if let Ok(z) = asymptotic_pole(AsymptoticFormula::C3, params) {
                candidates.push((z, SeedSource::Asymptotic(AsymptoticFormula::C3)));
            }
        }
        Dimension::Two | Dimension::Three => {
            candidates.push((limit - Complex64::new(0.0, 0.2), SeedSource::ShiftedAiryZero));
        }
    }

    // far regime along the two rays
    let far = match (dim, n > 0) {
        (Dimension::One, true) => AsymptoticFormula::D4,
        (Dimension::One, false) => AsymptoticFormula::D5,
        (_, true) => AsymptoticFormula::D6Positive,
        (_, false) => AsymptoticFormula::D6Negative,
    };
    candidates.push((asymptotic_pole(far, params)?, SeedSource::Asymptotic(far)));

    let best = candidates
        .into_iter()
        .map(|(z, s)| (misfit(z, cfg), z, s))
        .min_by(|a, b| a.0.total_cmp(&b.0))
        .expect("at least the far-regime seed");
    Ok(Seed {
        index: n,
        eps: best.1,
        source: best.2,
    })
}

/// Newton seeds for every index in `n_min..=n_max`.
///
/// Index 0 uses the weak-field formula of the model's dimension when
/// `-eps_B >= 2` and `eps_B (1 + 0.1 i)` otherwise. Other indices take the
/// better (smaller relative |g|) of a near-field-free seed and a large-n ray
/// seed. Two-dimensional models reuse the three-dimensional ray formulas.
pub fn seed_poles(cfg: &ModelConfig, n_min: i64, n_max: i64) -> Result<Vec<Seed>> {
    check_range(n_min, n_max)?;
    let eps_b = cfg.eps_b()?;
    (n_min..=n_max)
        .map(|n| {
            if n == 0 {
                ground_seed(cfg.dimension(), eps_b)
            } else {
                excited_seed(n, eps_b, cfg)
            }
        })
        .collect()
}
