use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{ComplexEnergy, ModelConfig};
use crate::airy::{ai_pair, ci_plus_scaled, outgoing_products};
use crate::error::{Error, Result};

/// Reduced coordinates `rho = F^{1/3} (x + E/F)` of a pair of points and
/// their ordered combination `2 rho_pm = rho + rho' +- |rho - rho'|`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScaledCoordinate {
    pub rho: Complex64,
    pub rho_prime: Complex64,
    pub rho_minus: Complex64,
    pub rho_plus: Complex64,
}

impl ScaledCoordinate {
    pub fn new(energy: ComplexEnergy, x: f64, xp: f64, field: f64) -> Result<Self> {
        if field.is_nan() || field <= 0.0 {
            return Err(Error::Domain("reduced coordinates need F > 0".into()));
        }
        let eps = energy.scaled(field)?;
        let s = field.cbrt();
        let rho = eps + s * x;
        let rho_prime = eps + s * xp;
        // rho - rho' is real, so the ordering is that of x and x'
        let (rho_minus, rho_plus) = if x <= xp { (rho, rho_prime) } else { (rho_prime, rho) };
        Ok(ScaledCoordinate {
            rho,
            rho_prime,
            rho_minus,
            rho_plus,
        })
    }
}

/// Free retarded Green's function of `-d^2/dx^2 - F x` in one dimension,
/// `-pi F^{-1/3} Ai(-rho_-) Ci+(-rho_+)`.
pub fn g0_1d(energy: ComplexEnergy, x: f64, xp: f64, field: f64) -> Result<Complex64> {
    let rc = ScaledCoordinate::new(energy, x, xp, field)?;
    let prod = ai_pair(-rc.rho_minus).value * ci_plus_scaled(-rc.rho_plus).value;
    Ok(prod.to_complex()? * (-PI / field.cbrt()))
}

/// `dG0(E; 0, 0)/dE = pi F^{-1} (Ai' Ci+ + Ai Ci+')(-eps)`.
pub fn g0_origin_energy_derivative(energy: ComplexEnergy, field: f64) -> Result<Complex64> {
    if field.is_nan() || field <= 0.0 {
        return Err(Error::Domain("free Green's function needs F > 0".into()));
    }
    let eps = energy.scaled(field)?;
    Ok(outgoing_products(-eps)?.wronskian_sum * (PI / field))
}

/// Full one-dimensional Green's function from Krein's formula,
/// `G = G0(x, x') - G0(x, 0) G0(0, x') / g` with `g = 1/lambda + G0(0, 0)`.
pub fn krein_full_green(energy: ComplexEnergy, x: f64, xp: f64, cfg: &ModelConfig) -> Result<Complex64> {
    let lambda = cfg.require_one_d("Krein's formula")?;
    let field = cfg.field();
    let origin = g0_1d(energy, 0.0, 0.0, field)?;
    let g = 1.0 / lambda + origin;
    if g.norm() < 1e-13 * origin.norm() {
        return Err(Error::OnPole { magnitude: g.norm() });
    }
    let direct = g0_1d(energy, x, xp, field)?;
    let left = g0_1d(energy, x, 0.0, field)?;
    let right = g0_1d(energy, 0.0, xp, field)?;
    Ok(direct - left * right / g)
}
