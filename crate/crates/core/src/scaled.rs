//! Complex numbers carried as `mantissa * exp(log_scale)`.
//!
//! Airy functions overflow long before the products the model needs do
//! (`Ai(x) * Bi(x)` stays O(x^-1/2) while each factor leaves f64 range near
//! x ~ 100). Values are kept split until the final conversion.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Largest exponent accepted when converting back to a plain complex number.
pub const MAX_LOG: f64 = 700.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scaled {
    pub mantissa: Complex64,
    pub log_scale: f64,
}

impl Scaled {
    pub const ZERO: Scaled = Scaled {
        mantissa: Complex64::new(0.0, 0.0),
        log_scale: 0.0,
    };

    pub fn new(mantissa: Complex64, log_scale: f64) -> Self {
        Scaled { mantissa, log_scale }
    }

    pub fn from_complex(value: Complex64) -> Self {
        Scaled::new(value, 0.0)
    }

    /// `mantissa * exp(exponent)` for a complex exponent; the imaginary part
    /// is folded into the mantissa phase.
    pub fn from_exp(mantissa: Complex64, exponent: Complex64) -> Self {
        let phase = Complex64::from_polar(1.0, exponent.im);
        Scaled::new(mantissa * phase, exponent.re)
    }

    /// Natural log of the modulus, `-inf` for zero.
    pub fn ln_abs(&self) -> f64 {
        let m = self.mantissa.norm();
        if m == 0.0 {
            f64::NEG_INFINITY
        } else {
            m.ln() + self.log_scale
        }
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.re == 0.0 && self.mantissa.im == 0.0
    }

    /// Moves the exponent so that the mantissa has modulus near one.
    pub fn normalized(self) -> Self {
        let m = self.mantissa.norm();
        if m == 0.0 || !m.is_finite() {
            return self;
        }
        let shift = m.ln();
        Scaled::new(self.mantissa / m, self.log_scale + shift)
    }

    /// Converts to a plain number; underflow flushes to zero, overflow is an error.
    pub fn to_complex(self) -> Result<Complex64> {
        if self.is_zero() {
            return Ok(Complex64::new(0.0, 0.0));
        }
        let log_modulus = self.ln_abs();
        if log_modulus > MAX_LOG {
            return Err(Error::Overflow { log_modulus });
        }
        if log_modulus < -745.0 {
            return Ok(Complex64::new(0.0, 0.0));
        }
        Ok(self.mantissa * self.log_scale.exp())
    }
}

impl Mul for Scaled {
    type Output = Scaled;
    fn mul(self, rhs: Scaled) -> Scaled {
        Scaled::new(self.mantissa * rhs.mantissa, self.log_scale + rhs.log_scale).normalized()
    }
}

impl Mul<Complex64> for Scaled {
    type Output = Scaled;
    fn mul(self, rhs: Complex64) -> Scaled {
        Scaled::new(self.mantissa * rhs, self.log_scale)
    }
}

impl Mul<f64> for Scaled {
    type Output = Scaled;
    fn mul(self, rhs: f64) -> Scaled {
        Scaled::new(self.mantissa * rhs, self.log_scale)
    }
}

impl Add for Scaled {
    type Output = Scaled;
    fn add(self, rhs: Scaled) -> Scaled {
        if self.is_zero() {
            return rhs;
        }
        if rhs.is_zero() {
            return self;
        }
        let top = self.log_scale.max(rhs.log_scale);
        let a = self.mantissa * (self.log_scale - top).exp();
        let b = rhs.mantissa * (rhs.log_scale - top).exp();
        Scaled::new(a + b, top)
    }
}

impl Neg for Scaled {
    type Output = Scaled;
    fn neg(self) -> Scaled {
        Scaled::new(-self.mantissa, self.log_scale)
    }
}

impl Sub for Scaled {
    type Output = Scaled;
    fn sub(self, rhs: Scaled) -> Scaled {
        self + (-rhs)
    }
}

impl From<Complex64> for Scaled {
    fn from(value: Complex64) -> Self {
        Scaled::from_complex(value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_of_overflowing_factors_is_finite() {
        let big = Scaled::new(Complex64::new(2.0, 0.0), 800.0);
        let small = Scaled::new(Complex64::new(0.25, 0.0), -800.0);
        assert!(big.to_complex().is_err());
        let p = (big * small).to_complex().unwrap();
        assert!((p.re - 0.5).abs() < 1e-15 && p.im == 0.0);
    }

    #[test]
    fn addition_aligns_exponents() {
        let a = Scaled::new(Complex64::new(1.0, 1.0), 3.0);
        let b = Scaled::new(Complex64::new(2.0, 0.0), 1.0);
        let want = Complex64::new(1.0, 1.0) * 3f64.exp() + 2.0 * 1f64.exp();
        let got = (a + b).to_complex().unwrap();
        assert!((got - want).norm() < 1e-13 * want.norm());
    }

    #[test]
    fn deep_underflow_flushes_to_zero() {
        let tiny = Scaled::new(Complex64::new(1.0, 0.0), -900.0);
        assert_eq!(tiny.to_complex().unwrap(), Complex64::new(0.0, 0.0));
    }
}
