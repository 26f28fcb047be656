use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::airy::ai_pair;
use crate::error::{Error, Result};
use crate::model::{g0_1d, g0_origin_energy_derivative, ComplexEnergy, ModelConfig};
use crate::poles::Resonance;
use crate::quad::{integrate, QuadOptions};

/// ln(1e12): the neglected tail of an overlap integrand is below 1e-12.
const TAIL_LOG: f64 = 27.631_021_115_928_547;
/// Widest overlap window accepted.
pub const MAX_WINDOW: f64 = 1e5;

/// A resonance with its normalized wavefunction data and its overlaps with
/// the initial bound state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GamowMode {
    pub resonance: Resonance,
    /// [-dG0(E_n; 0, 0)/dE]^{-1/2} on the branch with Re phi_n(0) > 0.
    pub norm_factor: Complex64,
    /// int psi(x, 0) phi_n(x) dx
    pub c_n: Complex64,
    /// int psi(x, 0)^* phi_n(x) dx
    pub c_tilde_n: Complex64,
    pub quad_error: f64,
}

impl GamowMode {
    /// Weight of the mode in the survival amplitude.
    pub fn weight(&self) -> Complex64 {
        self.c_tilde_n * self.c_n
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Overlap {
    pub c_n: Complex64,
    pub c_tilde_n: Complex64,
    pub quad_error: f64,
    /// The integrals run over (-window, window).
    pub window: f64,
}

fn energy(res: &Resonance) -> ComplexEnergy {
    ComplexEnergy::Scaled(res.eps)
}

/// Normalization of the Gamow function with its sign fixed by Re phi_n(0) > 0.
pub fn normalization(res: &Resonance, cfg: &ModelConfig) -> Result<Complex64> {
    cfg.require_one_d("a Gamow function")?;
    let field = cfg.field();
    let n = (-g0_origin_energy_derivative(energy(res), field)?).powf(-0.5);
    let at_origin = g0_1d(energy(res), 0.0, 0.0, field)? * n;
    Ok(if at_origin.re < 0.0 { -n } else { n })
}

/// phi_n(x) = G0(E_n; x, 0) [-dG0(E_n; 0, 0)/dE]^{-1/2}.
pub fn gamow_function(res: &Resonance, cfg: &ModelConfig, x: f64) -> Result<Complex64> {
    let n = normalization(res, cfg)?;
    Ok(g0_1d(energy(res), x, 0.0, cfg.field())? * n)
}

/// The initial state psi_B(x) = (lambda/2)^{1/2} exp(-lambda |x| / 2).
pub fn bound_state_wavefunction(lambda: f64, x: f64) -> f64 {
    (0.5 * lambda).sqrt() * (-0.5 * lambda * x.abs()).exp()
}

/// Half-width X of the overlap window: exp(-lambda X/2 + c X^{1/2}) stays
/// below 1e-12, with c = (gamma_n / 2) F^{1/6} the growth rate of |phi_n|.
pub fn overlap_window(lambda: f64, gamma: f64, field: f64) -> Result<f64> {
    let c = 0.5 * gamma.max(0.0) * field.powf(1.0 / 6.0);
    let s = (c + (c * c + 2.0 * lambda * TAIL_LOG).sqrt()) / lambda;
    let window = s * s;
    if window.is_nan() || window > MAX_WINDOW {
        return Err(Error::TruncationUnreachable { limit: MAX_WINDOW });
    }
    Ok(window)
}

/// G0(E_n; z, 0) psi_B(z) on the ray z = t e^{i pi/3}, times dz/dt.
///
/// There Ci+(-eps - F^{1/3} z) = 2 e^{i pi/6} Ai(F^{1/3} t - eps e^{2 pi i/3}),
/// which decays like exp(-t^{3/2}) instead of growing like the mode does on
/// the real axis.
fn ray_integrand(eps: Complex64, field: f64, lambda: f64, t: f64) -> Result<Complex64> {
    let s = field.cbrt();
    let dir = Complex64::from_polar(1.0, PI / 3.0);
    let omega = Complex64::from_polar(1.0, 2.0 * PI / 3.0);
    let outer = ai_pair(-eps).value * ai_pair(s * t - eps * omega).value * Complex64::from_polar(2.0, PI / 6.0);
    let psi = (0.5 * lambda).sqrt() * (-0.5 * lambda * t * dir).exp();
    Ok(outer.to_complex()? * psi * dir * (-PI / s))
}

/// Overlaps of phi_n with psi_B. The x < 0 half is integrated on the real
/// axis; the x > 0 half, where phi_n grows and oscillates, is rotated onto
/// the ray arg x = pi/3, which the integrand's analyticity allows.
pub fn overlap_coefficients(res: &Resonance, cfg: &ModelConfig) -> Result<Overlap> {
    let lambda = cfg.require_one_d("an overlap with the bound state")?;
    let field = cfg.field();
    let norm = normalization(res, cfg)?;
    let window = overlap_window(lambda, res.gamma, field)?;
    let opts = QuadOptions {
        abs_tol: 1e-14,
        rel_tol: 1e-11,
        max_intervals: 4000,
    };
    let left = integrate(
        |x| Ok(g0_1d(energy(res), x, 0.0, field)? * bound_state_wavefunction(lambda, x)),
        -window,
        0.0,
        opts,
    )?;
    let right = integrate(|t| ray_integrand(res.eps, field, lambda, t), 0.0, window, opts)?;
    let c = (left.value + right.value) * norm;
    // psi_B is real, so the conjugated overlap is the same integral
    Ok(Overlap {
        c_n: c,
        c_tilde_n: c,
        quad_error: (left.error + right.error) * norm.norm(),
        window,
    })
}

pub fn gamow_mode(res: &Resonance, cfg: &ModelConfig) -> Result<GamowMode> {
    let ov = overlap_coefficients(res, cfg)?;
    Ok(GamowMode {
        resonance: *res,
        norm_factor: normalization(res, cfg)?,
        c_n: ov.c_n,
        c_tilde_n: ov.c_tilde_n,
        quad_error: ov.quad_error,
    })
}
