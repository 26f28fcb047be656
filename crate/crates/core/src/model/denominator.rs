//! The denominators g_D whose zeros are the resonances.
//!
//! Every dimension is reduced to a dimensionless function of eps with
//! the same zeros as the physical g_D:
//!
//! * D = 1: `Ai Ci+(-eps) - 1 / (2 pi sqrt(-eps_B))`, physical
//!   `g = -pi F^{-1/3}` times this.
//! * D = 2: `1/lambda_R - int_0^inf [Ai Ci+(k^2 - eps) - 1/(2 pi sqrt(k^2 + m^2))] dk`
//!   with `m = mu F^{-1/3}` and `k` in units of F^{1/3}; already physical.
//! * D = 3: `s + eps Ai Ci+(-eps) + Ai' Ci+'(-eps)` with
//!   `s = (mu - 4 pi/lambda_R) / (pi F^{1/3})`, which equals
//!   `sqrt(-eps_B)/pi` when a bound state exists; physical `g = -F^{1/3}/4`
//!   times this.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::{angular_factor, Binding, ComplexEnergy, Dimension, ModelConfig};
use crate::airy::outgoing_products;
use crate::error::Result;
use crate::quad::{integrate, QuadOptions};

/// A denominator value with the magnitude of the terms that produced it,
/// the natural yardstick for residuals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GValue {
    pub value: Complex64,
    pub scale: f64,
}

#[derive(Debug, Clone, Copy)]
enum Reduced {
    One { c: f64 },
    Two { inv_coupling: f64, m: f64 },
    Three { s: f64 },
}

fn reduced(cfg: &ModelConfig) -> Result<Reduced> {
    let fs = cfg.field_scale()?;
    Ok(match (cfg.dimension(), cfg.binding()) {
        (Dimension::One, _) => Reduced::One {
            c: 1.0 / (2.0 * PI * (-cfg.eps_b()?).sqrt()),
        },
        (Dimension::Two, Binding::Running { lambda_r, mu }) => Reduced::Two {
            inv_coupling: 1.0 / lambda_r,
            m: mu / fs,
        },
        (Dimension::Two, _) => Reduced::Two {
            inv_coupling: 0.0,
            m: (-cfg.eps_b()?).sqrt(),
        },
        (Dimension::Three, Binding::Running { lambda_r, mu }) => Reduced::Three {
            s: (mu - 4.0 * PI / lambda_r) / (PI * fs),
        },
        (Dimension::Three, _) => Reduced::Three {
            s: (-cfg.eps_b()?).sqrt() / PI,
        },
    })
}

fn quad_opts() -> QuadOptions {
    QuadOptions {
        abs_tol: 1e-12,
        rel_tol: 1e-12,
        max_intervals: 4000,
    }
}

/// `int_K^inf (k^2 - eps)^{-p/2} dk` expanded in powers of eps / K^2.
fn power_tail(k: f64, eps: Complex64, p: f64) -> Complex64 {
    let x = eps / (k * k);
    let mut coef = 1.0;
    let mut xpow = Complex64::new(1.0, 0.0);
    let mut sum = Complex64::new(0.0, 0.0);
    for j in 0..60 {
        let jf = j as f64;
        if j > 0 {
            coef *= (p / 2.0 + jf - 1.0) / jf;
            xpow *= x;
        }
        let term = xpow * (coef / (p - 1.0 + 2.0 * jf));
        sum += term;
        if term.norm() <= 1e-17 * sum.norm() {
            break;
        }
    }
    sum * k.powf(1.0 - p)
}

// Ai Ci+(q) ~ (2 pi sqrt q)^{-1} (1 + C1 q^{-3} + C2 q^{-6}) for large |q|
const TAIL_C1: f64 = 5.0 / 32.0;
const TAIL_C2: f64 = 1155.0 / 2048.0;

fn cutoff(eps: Complex64) -> f64 {
    (5.0 * (1.0 + eps.norm().sqrt())).max(10.0)
}

/// `int_0^inf [Ai Ci+(k^2 - eps) - 1/(2 pi sqrt(k^2 + m^2))] dk`, quadrature
/// on `[0, K]` plus the asymptotic tail.
fn regularized_2d(eps: Complex64, m: f64, k_max: f64) -> Result<Complex64> {
    let body = integrate(
        |k| {
            let q = Complex64::new(k * k, 0.0) - eps;
            let ai_ci = outgoing_products(q)?.ai_ci;
            Ok(ai_ci - 1.0 / (2.0 * PI * (k * k + m * m).sqrt()))
        },
        0.0,
        k_max,
        quad_opts(),
    )?;
    let root_q = (Complex64::new(k_max * k_max, 0.0) - eps).sqrt();
    let log_part = ((k_max + (k_max * k_max + m * m).sqrt()) / (root_q + k_max)).ln();
    let series = power_tail(k_max, eps, 7.0) * TAIL_C1 + power_tail(k_max, eps, 13.0) * TAIL_C2;
    Ok(body.value + (log_part + series) / (2.0 * PI))
}

/// `int_0^inf [Ai Ci+(u - eps) - 1/(2 pi sqrt(u + m^2))] du` (the D = 3
/// integral after u = k^2).
fn regularized_3d(eps: Complex64, m: f64, k_max: f64) -> Result<Complex64> {
    let u_max = k_max * k_max;
    let body = integrate(
        |u| {
            let q = Complex64::new(u, 0.0) - eps;
            let ai_ci = outgoing_products(q)?.ai_ci;
            Ok(ai_ci - 1.0 / (2.0 * PI * (u + m * m).sqrt()))
        },
        0.0,
        u_max,
        quad_opts(),
    )?;
    let w = Complex64::new(u_max, 0.0) - eps;
    let root_diff = (eps + m * m) * 2.0 / ((u_max + m * m).sqrt() + w.sqrt());
    let series = w.powf(-2.5) * (TAIL_C1 / 2.5) + w.powf(-5.5) * (TAIL_C2 / 5.5);
    Ok(body.value + (root_diff + series) / (2.0 * PI))
}

fn evaluate(eps: Complex64, cfg: &ModelConfig) -> Result<GValue> {
    match reduced(cfg)? {
        Reduced::One { c } => {
            let p = outgoing_products(-eps)?;
            Ok(GValue {
                value: p.ai_ci - c,
                scale: p.ai_ci.norm() + c,
            })
        }
        Reduced::Two { inv_coupling, m } => {
            let j = regularized_2d(eps, m, cutoff(eps))? * angular_factor(Dimension::Two)?;
            Ok(GValue {
                value: inv_coupling - j,
                scale: inv_coupling.abs() + j.norm() + 1.0 / (2.0 * PI),
            })
        }
        Reduced::Three { s } => {
            let p = outgoing_products(-eps)?;
            let a = eps * p.ai_ci;
            Ok(GValue {
                value: s + a + p.aip_cip,
                scale: s.abs() + a.norm() + p.aip_cip.norm(),
            })
        }
    }
}

/// Dimensionless denominator with its term scale.
pub fn g_with_scale(energy: ComplexEnergy, cfg: &ModelConfig) -> Result<GValue> {
    evaluate(energy.scaled(cfg.field())?, cfg)
}

/// Dimensionless denominator; its zeros in eps are the resonances.
pub fn g_denominator(energy: ComplexEnergy, cfg: &ModelConfig) -> Result<Complex64> {
    Ok(g_with_scale(energy, cfg)?.value)
}

/// d/d eps of [`g_denominator`]: analytic in D = 1, 3, central differences
/// in D = 2.
pub fn g_denominator_derivative(energy: ComplexEnergy, cfg: &ModelConfig) -> Result<Complex64> {
    let eps = energy.scaled(cfg.field())?;
    match cfg.dimension() {
        Dimension::One => Ok(-outgoing_products(-eps)?.wronskian_sum),
        Dimension::Three => Ok(outgoing_products(-eps)?.ai_ci),
        Dimension::Two => {
            let h = 1e-6 * eps.norm().max(1.0);
            let up = evaluate(eps + h, cfg)?.value;
            let down = evaluate(eps - h, cfg)?.value;
            Ok((up - down) / (2.0 * h))
        }
    }
}

/// The denominator in physical units: `1/lambda + G0(E; 0, 0)` in one
/// dimension and the renormalized `g_D(lambda_R, mu, E)` otherwise. For a
/// model given by E_B the renormalization point is taken at
/// `mu = sqrt(-E_B)`.
pub fn g_physical(energy: ComplexEnergy, cfg: &ModelConfig) -> Result<Complex64> {
    let fs = cfg.field_scale()?;
    let g = g_denominator(energy, cfg)?;
    Ok(match cfg.dimension() {
        Dimension::One => g * (-PI / fs),
        Dimension::Two => g,
        Dimension::Three => g * (-fs * angular_factor(Dimension::Three)? / 2.0),
    })
}

/// Physical `g_D` for D = 2, 3 by direct quadrature of the regularized
/// momentum integral. In D = 3 this is an independent route to the closed
/// form used by [`g_physical`].
pub fn g_quadrature(energy: ComplexEnergy, cfg: &ModelConfig) -> Result<Complex64> {
    let fs = cfg.field_scale()?;
    let eps = energy.scaled(cfg.field())?;
    let (inv_coupling, mu) = match cfg.binding() {
        Binding::Running { lambda_r, mu } => (1.0 / lambda_r, mu),
        _ => (0.0, (-cfg.bound_energy()?).sqrt()),
    };
    let m = mu / fs;
    let k_max = cutoff(eps);
    match cfg.dimension() {
        Dimension::Two => Ok(inv_coupling - angular_factor(Dimension::Two)? * regularized_2d(eps, m, k_max)?),
        Dimension::Three => {
            // k dk = du / 2 and k = F^{1/3} kappa
            let c3 = angular_factor(Dimension::Three)?;
            Ok(inv_coupling - c3 * fs / 2.0 * regularized_3d(eps, m, k_max)?)
        }
        Dimension::One => Err(crate::Error::InvalidConfig(
            "the momentum integral needs D = 2 or 3".into(),
        )),
    }
}
