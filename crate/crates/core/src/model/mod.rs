//! The point well `H = -d^2/dx^2 - lambda delta(x) - F x` (units with
//! hbar = 2m = 1) in one, two or three dimensions: configuration, bound
//! states, running couplings and the free/full Green's functions.
//!
//! All root finding works in the dimensionless energy `eps = E F^{-2/3}`;
//! [`ComplexEnergy`] records which of the two scalings a value uses.

mod denominator;
mod green;

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use denominator::{g_denominator, g_denominator_derivative, g_physical, g_quadrature, g_with_scale, GValue};
pub use green::{g0_1d, g0_origin_energy_derivative, krein_full_green, ScaledCoordinate};

/// Spatial dimension of the well.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub enum Dimension {
    One,
    Two,
    Three,
}

impl Dimension {
    pub fn get(self) -> u8 {
        match self {
            Dimension::One => 1,
            Dimension::Two => 2,
            Dimension::Three => 3,
        }
    }
}

impl TryFrom<u8> for Dimension {
    type Error = Error;
    fn try_from(d: u8) -> Result<Self> {
        match d {
            1 => Ok(Dimension::One),
            2 => Ok(Dimension::Two),
            3 => Ok(Dimension::Three),
            _ => Err(Error::InvalidConfig(format!("dimension must be 1, 2 or 3, got {d}"))),
        }
    }
}

impl From<Dimension> for u8 {
    fn from(d: Dimension) -> u8 {
        d.get()
    }
}

/// How the strength of the well is specified.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Binding {
    /// Bare coupling lambda > 0 (one dimension only).
    Coupling { lambda: f64 },
    /// Bound-state energy E_B < 0 of the field-free problem.
    BoundEnergy { e_b: f64 },
    /// Renormalized coupling at momentum scale mu (two or three dimensions).
    Running { lambda_r: f64, mu: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
struct RawConfig {
    dimension: Dimension,
    field: f64,
    binding: Binding,
}

/// A validated model. Immutable once built.
///
/// `field == 0` is accepted in one dimension so that the field-free bound
/// state can be propagated; every field-dependent quantity rejects it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawConfig", into = "RawConfig")]
pub struct ModelConfig {
    dimension: Dimension,
    field: f64,
    binding: Binding,
}

impl TryFrom<RawConfig> for ModelConfig {
    type Error = Error;
    fn try_from(raw: RawConfig) -> Result<Self> {
        ModelConfig::new(raw.dimension, raw.field, raw.binding)
    }
}

impl From<ModelConfig> for RawConfig {
    fn from(c: ModelConfig) -> RawConfig {
        RawConfig {
            dimension: c.dimension,
            field: c.field,
            binding: c.binding,
        }
    }
}

impl ModelConfig {
    pub fn new(dimension: Dimension, field: f64, binding: Binding) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidConfig(msg));
        if !field.is_finite() || field < 0.0 {
            return bad(format!("field strength must be finite and positive, got {field}"));
        }
        if field == 0.0 && dimension != Dimension::One {
            return bad("a vanishing field is only supported in one dimension".into());
        }
        match binding {
            Binding::Coupling { lambda } => {
                if dimension != Dimension::One {
                    return bad("a bare coupling lambda is only meaningful in one dimension".into());
                }
                if !(lambda.is_finite() && lambda > 0.0) {
                    return bad(format!("lambda must be positive, got {lambda}"));
                }
            }
            Binding::BoundEnergy { e_b } => {
                if !(e_b.is_finite() && e_b < 0.0) {
                    return bad(format!("E_B must be negative, got {e_b}"));
                }
            }
            Binding::Running { lambda_r, mu } => {
                if dimension == Dimension::One {
                    return bad("(lambda_R, mu) needs dimension 2 or 3".into());
                }
                if !(mu.is_finite() && mu > 0.0) {
                    return bad(format!("mu must be positive, got {mu}"));
                }
                if !lambda_r.is_finite() || lambda_r == 0.0 {
                    return bad(format!("lambda_R must be finite and nonzero, got {lambda_r}"));
                }
            }
        }
        let cfg = ModelConfig {
            dimension,
            field,
            binding,
        };
        if let Ok(e_b) = cfg.bound_energy() {
            if !(e_b.is_finite() && e_b < 0.0) {
                return bad(format!("binding data give E_B = {e_b}"));
            }
        }
        Ok(cfg)
    }

    /// One-dimensional well of strength lambda.
    pub fn one_d(lambda: f64, field: f64) -> Result<Self> {
        Self::new(Dimension::One, field, Binding::Coupling { lambda })
    }

    /// Model fixed by its dimensionless bound-state energy: E_B = eps_B F^{2/3}.
    pub fn from_eps_b(dimension: Dimension, eps_b: f64, field: f64) -> Result<Self> {
        if !(field.is_finite() && field > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "eps_B needs a positive field, got {field}"
            )));
        }
        Self::new(
            dimension,
            field,
            Binding::BoundEnergy {
                e_b: eps_b * field.powf(2.0 / 3.0),
            },
        )
    }

    pub fn dimension(&self) -> Dimension {
        self.dimension
    }

    pub fn field(&self) -> f64 {
        self.field
    }

    pub fn binding(&self) -> Binding {
        self.binding
    }

    /// F^{1/3}; errors for a vanishing field.
    pub fn field_scale(&self) -> Result<f64> {
        if self.field > 0.0 {
            Ok(self.field.cbrt())
        } else {
            Err(Error::Domain("quantity requires a nonzero field".into()))
        }
    }

    pub fn bound_energy(&self) -> Result<f64> {
        bound_state_energy(self)
    }

    /// eps_B = E_B F^{-2/3}.
    pub fn eps_b(&self) -> Result<f64> {
        let s = self.field_scale()?;
        Ok(self.bound_energy()? / (s * s))
    }

    /// The one-dimensional coupling, lambda = 2 (-E_B)^{1/2} when the model
    /// was given by its bound-state energy.
    pub fn lambda(&self) -> Option<f64> {
        match (self.dimension, self.binding) {
            (Dimension::One, Binding::Coupling { lambda }) => Some(lambda),
            (Dimension::One, Binding::BoundEnergy { e_b }) => Some(2.0 * (-e_b).sqrt()),
            _ => None,
        }
    }

    /// The same model with `field` replaced, keeping the binding data.
    pub fn with_field(&self, field: f64) -> Result<Self> {
        Self::new(self.dimension, field, self.binding)
    }

    pub(crate) fn require_one_d(&self, what: &str) -> Result<f64> {
        self.lambda()
            .ok_or_else(|| Error::InvalidConfig(format!("{what} is only defined in one dimension")))
    }
}

/// A complex energy tagged with its scaling.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "scale", content = "value", rename_all = "snake_case")]
pub enum ComplexEnergy {
    /// E in atomic units.
    Physical(Complex64),
    /// eps = E F^{-2/3}.
    Scaled(Complex64),
}

impl ComplexEnergy {
    pub fn scaled(self, field: f64) -> Result<Complex64> {
        match self {
            ComplexEnergy::Scaled(eps) => Ok(eps),
            ComplexEnergy::Physical(e) => {
                if field > 0.0 {
                    Ok(e / field.powf(2.0 / 3.0))
                } else {
                    Err(Error::Domain("eps is undefined at zero field".into()))
                }
            }
        }
    }

    pub fn physical(self, field: f64) -> Complex64 {
        match self {
            ComplexEnergy::Physical(e) => e,
            ComplexEnergy::Scaled(eps) => eps * field.powf(2.0 / 3.0),
        }
    }
}

/// Renormalized coupling lambda_R at momentum scale mu.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RunningCoupling {
    pub dimension: Dimension,
    pub lambda_r: f64,
    pub mu: f64,
}

impl RunningCoupling {
    pub fn new(dimension: Dimension, lambda_r: f64, mu: f64) -> Result<Self> {
        // validation shared with the full model
        ModelConfig::new(dimension, 1.0, Binding::Running { lambda_r, mu })?;
        Ok(RunningCoupling {
            dimension,
            lambda_r,
            mu,
        })
    }

    pub fn binding(&self) -> Binding {
        Binding::Running {
            lambda_r: self.lambda_r,
            mu: self.mu,
        }
    }

    pub fn bound_energy(&self) -> Result<f64> {
        running_bound_energy(self.dimension, self.lambda_r, self.mu)
    }
}

fn running_bound_energy(dimension: Dimension, lambda_r: f64, mu: f64) -> Result<f64> {
    match dimension {
        Dimension::Three => {
            let threshold = 4.0 * PI / mu;
            if lambda_r <= threshold {
                return Err(Error::NoBoundState { lambda_r, threshold });
            }
            let k = mu - 4.0 * PI / lambda_r;
            Ok(-k * k)
        }
        Dimension::Two => Ok(-mu * mu * (-4.0 * PI / lambda_r).exp()),
        Dimension::One => Err(Error::InvalidConfig("running coupling in one dimension".into())),
    }
}

/// Field-free bound-state energy.
pub fn bound_state_energy(cfg: &ModelConfig) -> Result<f64> {
    match cfg.binding {
        Binding::Coupling { lambda } => Ok(-lambda * lambda / 4.0),
        Binding::BoundEnergy { e_b } => Ok(e_b),
        Binding::Running { lambda_r, mu } => running_bound_energy(cfg.dimension, lambda_r, mu),
    }
}

/// Transports lambda_R from `rc.mu` to `mu_new` along the renormalization
/// group flow; the bound-state energy is invariant.
pub fn flow_coupling(rc: &RunningCoupling, mu_new: f64) -> Result<RunningCoupling> {
    if !(mu_new.is_finite() && mu_new > 0.0) {
        return Err(Error::InvalidConfig(format!("mu must be positive, got {mu_new}")));
    }
    let denominator = match rc.dimension {
        Dimension::Three => 1.0 + (mu_new - rc.mu) * rc.lambda_r / (4.0 * PI),
        Dimension::Two => 1.0 + rc.lambda_r / (2.0 * PI) * (mu_new / rc.mu).ln(),
        Dimension::One => return Err(Error::InvalidConfig("no coupling flow in one dimension".into())),
    };
    if denominator <= 0.0 {
        return Err(Error::LandauPole { denominator });
    }
    Ok(RunningCoupling {
        dimension: rc.dimension,
        lambda_r: rc.lambda_r / denominator,
        mu: mu_new,
    })
}

/// Gamma(k/2) for a positive integer k.
fn gamma_half(k: u32) -> f64 {
    match k {
        1 => PI.sqrt(),
        2 => 1.0,
        _ => (k as f64 / 2.0 - 1.0) * gamma_half(k - 2),
    }
}

/// Angular factor `C_D = 2^{2-D} pi^{(3-D)/2} / Gamma((D-1)/2)` of the
/// coincident-point free Green's function, for D = 2, 3.
pub fn angular_factor(dimension: Dimension) -> Result<f64> {
    let d = dimension.get() as i32;
    if d < 2 {
        return Err(Error::Domain("angular factor needs D >= 2".into()));
    }
    Ok(2f64.powi(2 - d) * PI.powf((3 - d) as f64 / 2.0) / gamma_half((d - 1) as u32))
}

/// Saddle-point value of `int_0^inf dk (k^2-E)^{-1/2} exp(-4/3 (k^2-E)^{3/2}/F)`.
pub fn i2_saddle(e: f64, field: f64) -> f64 {
    let depth = -e;
    (PI * field / 8.0).sqrt() * depth.powf(-0.75) * (-4.0 / 3.0 * depth.powf(1.5) / field).exp()
}
