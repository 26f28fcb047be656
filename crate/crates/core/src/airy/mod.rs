//! Airy functions Ai, Bi, their derivatives and the outgoing combination
//! `Ci+ = Bi + i Ai` over the whole complex plane.
//!
//! Evaluation regions, by `r = |z|`:
//!
//! * `r <= 1`: Maclaurin series.
//! * `r >= 10`: asymptotic expansions in `1/zeta`. Ai uses the recessive
//!   expansion for `|arg z| <= 2pi/3` and the connection formula
//!   `Ai(z) = -w Ai(wz) - w^2 Ai(w^2 z)` (w = e^{2 pi i/3}) beyond.
//! * in between: Taylor continuation of Airy's equation along the ray
//!   through `z`, started from whichever end makes Ai grow along the march
//!   (the asymptotic circle for `|arg z| <= pi/3`, the series disk
//!   otherwise).
//!
//! Bi and Ci+ are assembled from Ai at rotated arguments, except in a thin
//! wedge around the positive real axis where the rotated terms cancel in
//! the imaginary part; there Bi comes from its own series so that values
//! at nearly real arguments keep their tiny imaginary parts.

mod asymptotic;
mod series;
mod zeros;

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::scaled::Scaled;

pub use zeros::{airy_zero, airy_zero_leading, airy_zeros, AiryZero};

pub const SERIES_RADIUS: f64 = 1.0;
pub const ASYMPTOTIC_RADIUS: f64 = 10.0;
const MAX_STEP: f64 = 1.0;
/// Half-width (radians) of the wedge around the positive real axis with
/// dedicated Bi evaluation.
const REAL_WEDGE: f64 = 0.1;

const EPS: f64 = f64::EPSILON;

/// e^{2 pi i / 3}
fn omega() -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI / 3.0)
}

/// A value/derivative pair with a relative error estimate.
#[derive(Debug, Clone, Copy)]
pub struct ScaledPair {
    pub value: Scaled,
    pub deriv: Scaled,
    pub rel_error: f64,
}

impl ScaledPair {
    fn plain(value: Complex64, deriv: Complex64, rel_error: f64) -> Self {
        ScaledPair {
            value: Scaled::from_complex(value),
            deriv: Scaled::from_complex(deriv),
            rel_error,
        }
    }

    pub fn to_complex(self) -> Result<(Complex64, Complex64)> {
        Ok((self.value.to_complex()?, self.deriv.to_complex()?))
    }
}

/// Ai(z), Ai'(z), Bi(z), Bi'(z) at one point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AiryValues {
    pub z: Complex64,
    pub ai: Complex64,
    pub aip: Complex64,
    pub bi: Complex64,
    pub bip: Complex64,
    /// Estimated absolute error of the largest of the four values.
    pub est_error: f64,
}

/// Log-scaled counterpart of [`AiryValues`], finite for any finite `z`.
#[derive(Debug, Clone, Copy)]
pub struct ScaledAiry {
    pub z: Complex64,
    pub ai: Scaled,
    pub aip: Scaled,
    pub bi: Scaled,
    pub bip: Scaled,
    pub rel_error: f64,
}

fn near_positive_real(z: Complex64) -> bool {
    z.re > 0.0 && z.im.abs() <= REAL_WEDGE * z.re
}

/// Ai and Ai' with relative accuracy everywhere.
pub fn ai_pair(z: Complex64) -> ScaledPair {
    let r = z.norm();
    if r <= SERIES_RADIUS {
        let [ai, aip, _, _] = series::maclaurin(z);
        return ScaledPair::plain(ai, aip, 10.0 * EPS);
    }
    let theta = z.arg();
    if r >= ASYMPTOTIC_RADIUS {
        if theta.abs() <= 2.0 * PI / 3.0 {
            let e = asymptotic::ai(z);
            return ScaledPair {
                value: e.value,
                deriv: e.deriv,
                rel_error: e.truncation + 10.0 * EPS * (1.0 + r.sqrt()),
            };
        }
        let w = omega();
        let w2 = w * w;
        let a = asymptotic::ai(z * w);
        let b = asymptotic::ai(z * w2);
        return ScaledPair {
            value: -(a.value * w) - b.value * w2,
            deriv: -(a.deriv * w2) - b.deriv * w,
            rel_error: a.truncation.max(b.truncation) + 10.0 * EPS * (1.0 + r.sqrt()),
        };
    }

    let dir = z / r;
    let (start, y0, yp0, base_err) = if theta.abs() <= PI / 3.0 {
        let start = dir * ASYMPTOTIC_RADIUS;
        let e = asymptotic::ai(start);
        // |zeta| = 21 at the asymptotic radius: no overflow possible
        let y = e.value.to_complex().expect("Ai finite on the asymptotic circle");
        let yp = e.deriv.to_complex().expect("Ai' finite on the asymptotic circle");
        (start, y, yp, e.truncation)
    } else {
        let start = dir * SERIES_RADIUS;
        let [ai, aip, _, _] = series::maclaurin(start);
        (start, ai, aip, 10.0 * EPS)
    };
    let (y, yp, steps) = series::taylor_march(start, y0, yp0, z, MAX_STEP);
    ScaledPair::plain(y, yp, base_err + 4.0 * EPS * (steps as f64 + 2.0))
}

/// Bi and Bi'.
pub fn bi_pair(z: Complex64) -> ScaledPair {
    let r = z.norm();
    if r <= SERIES_RADIUS || (near_positive_real(z) && r < ASYMPTOTIC_RADIUS) {
        let [_, _, bi, bip] = series::maclaurin(z);
        return ScaledPair::plain(bi, bip, 20.0 * EPS);
    }
    if near_positive_real(z) {
        let e = asymptotic::bi(z);
        return ScaledPair {
            value: e.value,
            deriv: e.deriv,
            rel_error: e.truncation + 10.0 * EPS * (1.0 + r.sqrt()),
        };
    }
    let w = omega();
    let up = ai_pair(z * w);
    let down = ai_pair(z * w.conj());
    let e1 = Complex64::from_polar(1.0, PI / 6.0);
    let e5 = Complex64::from_polar(1.0, 5.0 * PI / 6.0);
    ScaledPair {
        value: up.value * e1 + down.value * e1.conj(),
        deriv: up.deriv * e5 + down.deriv * e5.conj(),
        rel_error: 2.0 * up.rel_error.max(down.rel_error),
    }
}

/// `Ci+(z) = Bi(z) + i Ai(z)` and its derivative, log-scaled.
pub fn ci_plus_scaled(z: Complex64) -> ScaledPair {
    if z.norm() <= SERIES_RADIUS || near_positive_real(z) {
        let a = ai_pair(z);
        let b = bi_pair(z);
        let i = Complex64::new(0.0, 1.0);
        return ScaledPair {
            value: b.value + a.value * i,
            deriv: b.deriv + a.deriv * i,
            rel_error: a.rel_error.max(b.rel_error),
        };
    }
    // Ci+(z) = 2 e^{i pi/6} Ai(z e^{2 pi i/3})
    let rotated = ai_pair(z * omega());
    ScaledPair {
        value: rotated.value * Complex64::from_polar(2.0, PI / 6.0),
        deriv: rotated.deriv * Complex64::from_polar(2.0, 5.0 * PI / 6.0),
        rel_error: rotated.rel_error,
    }
}

/// `(Ci+(z), Ci+'(z))`; errors when either leaves the f64 range.
pub fn ci_plus(z: Complex64) -> Result<(Complex64, Complex64)> {
    ci_plus_scaled(z).to_complex()
}

/// Products of Ai and Ci+ at a single argument, formed in log-scaled
/// arithmetic so that they stay finite where the factors do not.
#[derive(Debug, Clone, Copy)]
pub struct OutgoingProducts {
    /// Ai Ci+
    pub ai_ci: Complex64,
    /// Ai' Ci+ + Ai Ci+'
    pub wronskian_sum: Complex64,
    /// Ai' Ci+'
    pub aip_cip: Complex64,
}

pub fn outgoing_products(z: Complex64) -> Result<OutgoingProducts> {
    let a = ai_pair(z);
    let c = ci_plus_scaled(z);
    Ok(OutgoingProducts {
        ai_ci: (a.value * c.value).to_complex()?,
        wronskian_sum: (a.deriv * c.value + a.value * c.deriv).to_complex()?,
        aip_cip: (a.deriv * c.deriv).to_complex()?,
    })
}

pub fn airy_eval_scaled(z: Complex64) -> ScaledAiry {
    let a = ai_pair(z);
    let b = bi_pair(z);
    ScaledAiry {
        z,
        ai: a.value,
        aip: a.deriv,
        bi: b.value,
        bip: b.deriv,
        rel_error: a.rel_error.max(b.rel_error),
    }
}

/// All four Airy values at `z`.
///
/// Fails with [`crate::Error::Overflow`] once any of them leaves the f64
/// range; use [`airy_eval_scaled`] for such arguments.
pub fn airy_eval(z: Complex64) -> Result<AiryValues> {
    let s = airy_eval_scaled(z);
    let ai = s.ai.to_complex()?;
    let aip = s.aip.to_complex()?;
    let bi = s.bi.to_complex()?;
    let bip = s.bip.to_complex()?;
    let largest = ai.norm().max(aip.norm()).max(bi.norm()).max(bip.norm());
    Ok(AiryValues {
        z,
        ai,
        aip,
        bi,
        bip,
        est_error: (s.rel_error + 10.0 * EPS) * largest,
    })
}


#[cfg(test)]
mod properties {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn wronskian_within_rounding_of_its_terms(r in 0.0f64..25.0, theta in -PI..PI) {
            let v = airy_eval(Complex64::from_polar(r, theta)).unwrap();
            let size = (v.ai * v.bip).norm() + (v.aip * v.bi).norm();
            prop_assert!((v.ai * v.bip - v.aip * v.bi - 1.0 / PI).norm() <= 1e-12 * size);
        }

        #[test]
        fn conjugate_symmetric(re in -20.0f64..20.0, im in -20.0f64..20.0) {
            let z = Complex64::new(re, im);
            let (v, w) = (airy_eval(z).unwrap(), airy_eval(z.conj()).unwrap());
            for (a, b) in [(v.ai, w.ai), (v.aip, w.aip), (v.bi, w.bi), (v.bip, w.bip)] {
                prop_assert!((a - b.conj()).norm() <= 1e-12 * a.norm().max(1e-300), "{} vs {}", a, b);
            }
        }

        #[test]
        fn real_axis_values_are_real(x in -30.0f64..30.0) {
            let v = airy_eval(Complex64::new(x, 0.0)).unwrap();
            for a in [v.ai, v.bi] {
                prop_assert!(a.im.abs() <= v.est_error);
            }
            // derivatives carry an extra factor of order sqrt|x|
            for a in [v.aip, v.bip] {
                prop_assert!(a.im.abs() <= v.est_error * x.abs().sqrt().max(1.0));
            }
        }
    }
}
