//! Large-|z| expansions of Ai and Bi in powers of 1/zeta, zeta = (2/3) z^(3/2).

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::scaled::Scaled;

const MAX_TERMS: usize = 120;

/// Result of a truncated asymptotic sum: value, derivative and the relative
/// size of the first omitted term.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Expansion {
    pub value: Scaled,
    pub deriv: Scaled,
    pub truncation: f64,
}

/// Returns `(sum_k s^k u_k zeta^-k, sum_k s^k v_k zeta^-k, last term)` with
/// `s = +1` or `-1`, stopping at the smallest term.
fn sums(zeta: Complex64, sign: f64) -> (Complex64, Complex64, f64) {
    let inv = 1.0 / zeta;
    let mut su = Complex64::new(1.0, 0.0);
    let mut sv = Complex64::new(1.0, 0.0);
    let mut u = 1.0f64;
    let mut pow = Complex64::new(1.0, 0.0);
    let mut last = f64::INFINITY;
    for k in 1..MAX_TERMS {
        let kf = k as f64;
        u *= (6.0 * kf - 5.0) * (6.0 * kf - 3.0) * (6.0 * kf - 1.0) / ((2.0 * kf - 1.0) * 216.0 * kf);
        let v = -(6.0 * kf + 1.0) / (6.0 * kf - 1.0) * u;
        pow *= inv * sign;
        let tu = pow * u;
        let tv = pow * v;
        let size = tu.norm().max(tv.norm());
        if size >= last {
            // terms started growing: the series is at its optimal truncation
            break;
        }
        su += tu;
        sv += tv;
        last = size;
        if size < 1e-18 {
            break;
        }
    }
    (su, sv, last)
}

pub(crate) fn zeta_of(z: Complex64) -> Complex64 {
    z * z.sqrt() * (2.0 / 3.0)
}

/// Ai and Ai' from the recessive expansion, valid for |arg z| < pi.
pub(crate) fn ai(z: Complex64) -> Expansion {
    let zeta = zeta_of(z);
    let quarter = z.powf(0.25);
    let (su, sv, last) = sums(zeta, -1.0);
    let norm = 0.5 / PI.sqrt();
    let value = Scaled::from_exp(su * norm / quarter, -zeta);
    let deriv = Scaled::from_exp(-sv * norm * quarter, -zeta);
    Expansion {
        value,
        deriv,
        truncation: last,
    }
}

/// Bi and Bi' from the dominant expansion; only meaningful for |arg z|
/// well inside pi/3, where the recessive companion is negligible.
pub(crate) fn bi(z: Complex64) -> Expansion {
    let zeta = zeta_of(z);
    let quarter = z.powf(0.25);
    let (su, sv, last) = sums(zeta, 1.0);
    let norm = 1.0 / PI.sqrt();
    let value = Scaled::from_exp(su * norm / quarter, zeta);
    let deriv = Scaled::from_exp(sv * norm * quarter, zeta);
    Expansion {
        value,
        deriv,
        truncation: last,
    }
}
