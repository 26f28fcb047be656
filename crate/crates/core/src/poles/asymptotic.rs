//! Closed-form pole estimates: the weak-field limits of eps_0, the
//! quadratic refinement around the field-free limits of eps_{+-n}, and the
//! large-n behaviour along the two asymptotic rays.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::airy::{ai_pair, airy_zero, ci_plus};
use crate::error::{Error, Result};

/// Which asymptotic formula to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AsymptoticFormula {
    /// eps_0 in one dimension, `eps_B (1 + i e^{-4/3 (-eps_B)^{3/2}})`.
    B2,
    /// eps_0 in three dimensions.
    Eq41,
    /// eps_0 in two dimensions.
    Eq49,
    /// Quadratic refinement of eps_n around its field-free limit (one
    /// dimension). Positive n expands around -a_n; negative n around the
    /// mirror zero -a_|n| e^{-2 i pi/3}, a zero of Ci+.
    C3,
    /// Large positive n, one dimension.
    D4,
    /// Large negative n, one dimension.
    D5,
    /// Large positive n, three dimensions.
    D6Positive,
    /// Large negative n, three dimensions.
    D6Negative,
}

impl AsymptoticFormula {
    pub fn label(self) -> &'static str {
        match self {
            AsymptoticFormula::B2 => "B2",
            AsymptoticFormula::Eq41 => "41",
            AsymptoticFormula::Eq49 => "49",
            AsymptoticFormula::C3 => "C3",
            AsymptoticFormula::D4 => "D4",
            AsymptoticFormula::D5 => "D5",
            AsymptoticFormula::D6Positive | AsymptoticFormula::D6Negative => "D6",
        }
    }
}

/// Arguments of [`asymptotic_pole`]; `n` is ignored by the eps_0 formulas.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticParams {
    pub eps_b: f64,
    pub n: i64,
}

/// s_n = (3 n pi / 2)^{2/3}.
pub fn large_n_modulus(n: u64) -> f64 {
    (1.5 * n as f64 * PI).powf(2.0 / 3.0)
}

fn tunnelling(eps_b: f64) -> f64 {
    (-4.0 / 3.0 * (-eps_b).powf(1.5)).exp()
}

pub(crate) fn ray() -> Complex64 {
    Complex64::from_polar(1.0, -2.0 * PI / 3.0)
}

/// Field-free limit of eps_n for n != 0 in one dimension together with the
/// coefficients `a`, `b` of the local quadratic `a x^2 + b x + c`.
fn quadratic_data(n: i64, a_n: f64) -> Result<(Complex64, Complex64, Complex64)> {
    if n > 0 {
        // -eps = a_n, Ai(a_n) = 0
        let z = Complex64::new(a_n, 0.0);
        let (_, aip) = ai_pair(z).to_complex()?;
        let (ci, cip) = ci_plus(z)?;
        Ok((-z, aip * cip, -aip * ci))
    } else {
        // -eps = a_n e^{-2 i pi/3}, where Ci+ vanishes
        let z = ray() * a_n;
        let (ai, aip) = ai_pair(z).to_complex()?;
        let (_, cip) = ci_plus(z)?;
        Ok((-z, aip * cip, -ai * cip))
    }
}

/// Evaluates one asymptotic formula.
pub fn asymptotic_pole(formula: AsymptoticFormula, params: AsymptoticParams) -> Result<Complex64> {
    let eps_b = params.eps_b;
    if !(eps_b.is_finite() && eps_b < 0.0) {
        return Err(Error::Domain(format!("eps_B must be negative, got {eps_b}")));
    }
    let i = Complex64::i();
    let depth = -eps_b;
    let n_abs = params.n.unsigned_abs();
    let need_n = |positive: bool| -> Result<()> {
        let ok = if positive { params.n > 0 } else { params.n < 0 };
        if ok {
            Ok(())
        } else {
            Err(Error::Domain(format!(
                "{} needs a {} index, got {}",
                formula.label(),
                if positive { "positive" } else { "negative" },
                params.n
            )))
        }
    };
    match formula {
        AsymptoticFormula::B2 => Ok(eps_b * (1.0 + i * tunnelling(eps_b))),
        AsymptoticFormula::Eq41 => Ok(eps_b * (1.0 + i * 0.25 * depth.powf(-1.5) * tunnelling(eps_b))),
        AsymptoticFormula::Eq49 => Ok(eps_b * (1.0 + i * (PI / 8.0).sqrt() * depth.powf(-0.75) * tunnelling(eps_b))),
        AsymptoticFormula::C3 => {
            if params.n == 0 {
                return Err(Error::Domain("C3 needs n != 0".into()));
            }
            let a_n = airy_zero(n_abs as usize)?;
            if a_n.abs() >= depth {
                return Err(Error::Domain(format!(
                    "C3 needs |a_n| << |eps_B| (|a_{n_abs}| = {:.4}, |eps_B| = {depth})",
                    a_n.abs()
                )));
            }
            let (base, a, b) = quadratic_data(params.n, a_n)?;
            let c = Complex64::new(-1.0 / (2.0 * PI * depth.sqrt()), 0.0);
            // x_+ = -c/b - a c^2 / b^3
            Ok(base - c / b - a * c * c / (b * b * b))
        }
        AsymptoticFormula::D4 => {
            need_n(true)?;
            let s = large_n_modulus(n_abs);
            Ok(s - i * 0.25 * s.powf(-0.5) * (s / eps_b).abs().ln())
        }
        AsymptoticFormula::D5 => {
            need_n(false)?;
            let s = large_n_modulus(n_abs);
            Ok(ray() * (s + i * 0.25 * s.powf(-0.5) * (s / eps_b).abs().ln()))
        }
        AsymptoticFormula::D6Positive => {
            need_n(true)?;
            Ok(d6(n_abs))
        }
        AsymptoticFormula::D6Negative => {
            need_n(false)?;
            Ok(ray() * d6(n_abs).conj())
        }
    }
}

fn d6(n: u64) -> Complex64 {
    let s = large_n_modulus(n);
    Complex64::new(s, -0.5 * s.powf(-0.5) * (4.0 * s.powf(1.5)).ln())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(eps_b: f64, n: i64) -> AsymptoticParams {
        AsymptoticParams { eps_b, n }
    }

    #[test]
    fn b2_example() {
        let z = asymptotic_pole(AsymptoticFormula::B2, p(-3.0, 0)).unwrap();
        assert_eq!(z.re, -3.0);
        let want = -3.0 * (-4.0 * 27f64.sqrt() / 3.0).exp();
        assert!((z.im - want).abs() <= 1e-14 * want.abs());
        assert!((z.im + 0.002_94).abs() < 1e-5);
    }

    #[test]
    fn c3_tends_to_airy_zero() {
        let z = asymptotic_pole(AsymptoticFormula::C3, p(-1e8, 1)).unwrap();
        assert!((z - 2.338_107_410_459_767).norm() < 1e-4);
        let zm = asymptotic_pole(AsymptoticFormula::C3, p(-1e8, -1)).unwrap();
        assert!((zm - ray() * 2.338_107_410_459_767).norm() < 1e-4);
    }

    #[test]
    fn c3_domain_enforced() {
        assert!(asymptotic_pole(AsymptoticFormula::C3, p(-2.0, 1)).is_err());
        assert!(asymptotic_pole(AsymptoticFormula::C3, p(-10.0, 0)).is_err());
    }

    #[test]
    fn d4_example() {
        let s = large_n_modulus(100);
        let z = asymptotic_pole(AsymptoticFormula::D4, p(-1.0, 100)).unwrap();
        assert_eq!(z.re, s);
        assert!((z.im + 0.25 / s.sqrt() * s.ln()).abs() < 1e-15);
        assert!((large_n_modulus(7) - (10.5 * PI).powf(2.0 / 3.0)).abs() < 1e-14);
    }

    #[test]
    fn d6_mirror_relation() {
        for n in [1, 5, 30] {
            let pos = asymptotic_pole(AsymptoticFormula::D6Positive, p(-1.0, n)).unwrap();
            let neg = asymptotic_pole(AsymptoticFormula::D6Negative, p(-1.0, -n)).unwrap();
            assert!((neg - ray() * pos.conj()).norm() < 1e-14);
        }
    }

    #[test]
    fn wrong_sign_index_rejected() {
        assert!(asymptotic_pole(AsymptoticFormula::D4, p(-1.0, -3)).is_err());
        assert!(asymptotic_pole(AsymptoticFormula::D5, p(-1.0, 3)).is_err());
    }
}
