use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::ai_pair;
use crate::error::{Error, Result};

/// The n-th zero of Ai on the negative real axis (n = 1, 2, ...).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AiryZero {
    pub n: usize,
    pub a_n: f64,
}

/// Leading asymptotic estimate -(3 pi (4n - 1) / 8)^(2/3).
pub fn airy_zero_leading(n: usize) -> f64 {
    -(3.0 * PI * (4.0 * n as f64 - 1.0) / 8.0).powf(2.0 / 3.0)
}

fn seed(n: usize) -> f64 {
    let t = 3.0 * PI * (4.0 * n as f64 - 1.0) / 8.0;
    let t2 = t.powi(-2);
    -t.powf(2.0 / 3.0) * (1.0 + 5.0 / 48.0 * t2 - 5.0 / 36.0 * t2 * t2)
}

fn polish(n: usize) -> Result<f64> {
    let mut a = seed(n);
    for _ in 0..30 {
        let (ai, aip) = ai_pair(Complex64::new(a, 0.0)).to_complex()?;
        let step = ai.re / aip.re;
        a -= step;
        if step.abs() <= 4.0 * f64::EPSILON * a.abs() {
            return Ok(a);
        }
    }
    Err(Error::NoConvergence { iterations: 30 })
}

/// The first `count` zeros of Ai, ordered by increasing |a_n|.
pub fn airy_zeros(count: usize) -> Result<Vec<AiryZero>> {
    if count == 0 {
        return Err(Error::Domain("airy_zeros needs count >= 1".into()));
    }
    (1..=count).map(|n| polish(n).map(|a_n| AiryZero { n, a_n })).collect()
}

/// Single zero a_n.
pub fn airy_zero(n: usize) -> Result<f64> {
    if n == 0 {
        return Err(Error::Domain("Airy zeros are numbered from 1".into()));
    }
    polish(n)
}
