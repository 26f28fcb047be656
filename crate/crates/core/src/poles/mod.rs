//! Resonance poles: zeros of the dimensionless denominator in the lower
//! half of the eps-plane.

mod asymptotic;
mod continuation;
mod enumerate;
mod newton;
mod seeds;
mod winding;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::model::ModelConfig;

pub use asymptotic::{asymptotic_pole, large_n_modulus, AsymptoticFormula, AsymptoticParams};
pub use enumerate::{enumerate_poles, PoleSet, DEDUP_DISTANCE, MAX_DEPTH_2D};
pub use newton::{BASIN_RADIUS, MAX_ITERATIONS, UPPER_HALF_TOL};
pub use seeds::{seed_poles, Seed, WEAK_FIELD_DEPTH};
pub use winding::{count_zeros, winding_number, Rectangle, ZeroCount};

/// Where a Newton seed came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SeedSource {
    Asymptotic(AsymptoticFormula),
    /// eps_B (1 + 0.1 i), used for eps_0 away from the weak-field regime.
    ShiftedBound,
    /// -a_n - 0.2 i.
    ShiftedAiryZero,
    /// Tracked from a weak-field solution by continuation in eps_B.
    Continuation,
    /// Found by seeding a grid inside an argument-principle rectangle.
    Scan,
    /// Supplied by the caller.
    User,
}

impl SeedSource {
    pub fn label(self) -> &'static str {
        match self {
            SeedSource::Asymptotic(f) => f.label(),
            SeedSource::ShiftedBound => "eps_B(1+0.1i)",
            SeedSource::ShiftedAiryZero => "-a_n-0.2i",
            SeedSource::Continuation => "continuation",
            SeedSource::Scan => "scan",
            SeedSource::User => "user",
        }
    }
}

/// One located resonance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Resonance {
    pub index: i64,
    /// eps_n
    pub eps: Complex64,
    /// E_n = eps_n F^{2/3}
    pub energy: Complex64,
    /// Gamma_n = -2 Im E_n
    pub width_gamma: f64,
    /// gamma_n = -2 Im eps_n
    pub gamma: f64,
    /// |g(eps_n)|
    pub residual: f64,
    /// Size of the terms of g at eps_n.
    pub scale: f64,
    pub iterations: usize,
    pub seed_source: SeedSource,
}

impl Resonance {
    pub(crate) fn new(index: i64, root: newton::Root, cfg: &ModelConfig, source: SeedSource) -> Self {
        let f23 = cfg.field().powf(2.0 / 3.0);
        Resonance {
            index,
            eps: root.eps,
            energy: root.eps * f23,
            width_gamma: -2.0 * root.eps.im * f23,
            gamma: -2.0 * root.eps.im,
            residual: root.residual,
            scale: root.scale,
            iterations: root.iterations,
            seed_source: source,
        }
    }
}

/// Newton refinement of a single seed. The result carries index 0 and
/// source [`SeedSource::User`]; [`enumerate_poles`] assigns labels.
pub fn refine_pole(seed: Complex64, cfg: &ModelConfig) -> Result<Resonance> {
    let root = newton::newton(seed, cfg, BASIN_RADIUS)?;
    Ok(Resonance::new(0, root, cfg, SeedSource::User))
}
