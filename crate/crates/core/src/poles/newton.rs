use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::{g_denominator_derivative, g_with_scale, ComplexEnergy, ModelConfig};

/// Newton iterations allowed before giving up.
pub const MAX_ITERATIONS: usize = 100;
/// A root farther than this from its seed is rejected.
pub const BASIN_RADIUS: f64 = 2.0;
const STEP_TOL: f64 = 1e-11;
const MAX_STEP: f64 = 0.5;
/// Largest imaginary part accepted for a resonance.
pub const UPPER_HALF_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy)]
pub(crate) struct Root {
    pub eps: Complex64,
    pub residual: f64,
    pub scale: f64,
    pub iterations: usize,
}

/// Newton's method on the dimensionless denominator, with steps capped at
/// 0.5 so that a poor seed walks instead of jumping between basins.
pub(crate) fn newton(seed: Complex64, cfg: &ModelConfig, radius: f64) -> Result<Root> {
    let mut z = seed;
    for it in 1..=MAX_ITERATIONS {
        let g = g_with_scale(ComplexEnergy::Scaled(z), cfg)?;
        if g.value == Complex64::new(0.0, 0.0) {
            return finish(z, cfg, it);
        }
        let d = g_denominator_derivative(ComplexEnergy::Scaled(z), cfg)?;
        if d.norm() == 0.0 || !d.is_finite() {
            return Err(Error::NoConvergence { iterations: it });
        }
        let mut step = g.value / d;
        if step.norm() > MAX_STEP {
            step *= MAX_STEP / step.norm();
        }
        z -= step;
        if (z - seed).norm() > radius {
            return Err(Error::EscapedBasin);
        }
        if step.norm() <= STEP_TOL * z.norm().max(1.0) {
            return finish(z, cfg, it);
        }
    }
    Err(Error::NoConvergence {
        iterations: MAX_ITERATIONS,
    })
}

fn finish(z: Complex64, cfg: &ModelConfig, iterations: usize) -> Result<Root> {
    if z.im > UPPER_HALF_TOL {
        return Err(Error::UpperHalfPlane { imag: z.im });
    }
    let g = g_with_scale(ComplexEnergy::Scaled(z), cfg)?;
    Ok(Root {
        eps: z,
        residual: g.value.norm(),
        scale: g.scale,
        iterations,
    })
}
