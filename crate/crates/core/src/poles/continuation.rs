//! Homotopy in eps_B: a pole solved at one depth is followed to another.
//! The reduced denominator depends only on (D, eps_B), so the path runs over
//! unit-field models and the caller polishes the end point on its own model.

use num_complex::Complex64;

use super::newton::{newton, Root};
use crate::error::{Error, Result};
use crate::model::{Dimension, ModelConfig};

const BASE_STEPS: f64 = 5.0;
const MIN_STEP: f64 = 1e-4;
const TRACK_RADIUS: f64 = 0.5;

fn unit_model(dim: Dimension, eps_b: f64) -> Result<ModelConfig> {
    ModelConfig::from_eps_b(dim, eps_b, 1.0)
}

/// Follows the pole `start` (a zero at depth `-from`) to depth `-to`,
/// stepping uniformly in ln(-eps_B) with a linear predictor and halving the
/// step whenever Newton wanders off the predicted point.
pub(crate) fn track(dim: Dimension, from: f64, start: Complex64, to: f64) -> Result<Complex64> {
    if !(from < 0.0 && to < 0.0) {
        return Err(Error::Domain("continuation needs negative eps_B".into()));
    }
    let t_end = (-to).ln();
    let mut t = (-from).ln();
    let mut step = (t_end - t) / BASE_STEPS;
    if step == 0.0 {
        return Ok(start);
    }
    let mut z = start;
    let mut slope = Complex64::new(0.0, 0.0);
    while (t_end - t).abs() > 0.0 {
        let dt = if (t_end - t).abs() <= step.abs() {
            t_end - t
        } else {
            step
        };
        let predicted = z + slope * dt;
        let attempt = unit_model(dim, -(t + dt).exp()).and_then(|cfg| newton(predicted, &cfg, TRACK_RADIUS));
        match attempt {
            Ok(Root { eps, .. }) if (eps - predicted).norm() <= 0.5 * TRACK_RADIUS => {
                slope = (eps - z) / dt;
                z = eps;
                t += dt;
            }
            _ => {
                step *= 0.5;
                if step.abs() < MIN_STEP {
                    return Err(Error::NoConvergence { iterations: 0 });
                }
            }
        }
    }
    Ok(z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poles::asymptotic::{asymptotic_pole, AsymptoticFormula, AsymptoticParams};

    #[test]
    fn round_trip_returns_to_start() {
        let cfg = unit_model(Dimension::One, -3.0).unwrap();
        let seed = asymptotic_pole(AsymptoticFormula::B2, AsymptoticParams { eps_b: -3.0, n: 0 }).unwrap();
        let z0 = newton(seed, &cfg, 2.0).unwrap().eps;
        let there = track(Dimension::One, -3.0, z0, -0.3).unwrap();
        let back = track(Dimension::One, -0.3, there, -3.0).unwrap();
        assert!((back - z0).norm() < 1e-9, "{z0} -> {there} -> {back}");
        assert!(there.im < -0.05);
    }
}
