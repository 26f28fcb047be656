//! Zero counting by the argument principle on rectangles.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{g_denominator, ComplexEnergy, ModelConfig};

/// Axis-aligned rectangle in the eps-plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Rectangle {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
}

impl Rectangle {
    pub fn contains(&self, z: Complex64) -> bool {
        z.re > self.re_min && z.re < self.re_max && z.im > self.im_min && z.im < self.im_max
    }

    fn corners(&self) -> [Complex64; 4] {
        [
            Complex64::new(self.re_min, self.im_min),
            Complex64::new(self.re_max, self.im_min),
            Complex64::new(self.re_max, self.im_max),
            Complex64::new(self.re_min, self.im_max),
        ]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZeroCount {
    pub rect: Rectangle,
    pub winding: f64,
    pub count: i64,
    pub evaluations: usize,
}

const MAX_TURN: f64 = PI / 4.0;
const MAX_DEPTH: u32 = 24;

struct Tracer<'a, F: FnMut(Complex64) -> Result<Complex64>> {
    f: &'a mut F,
    evaluations: usize,
}

impl<F: FnMut(Complex64) -> Result<Complex64>> Tracer<'_, F> {
    fn eval(&mut self, z: Complex64) -> Result<Complex64> {
        self.evaluations += 1;
        let v = (self.f)(z)?;
        if v.norm() == 0.0 {
            return Err(Error::Domain(format!("zero of g on the contour at {z}")));
        }
        Ok(v)
    }

    /// Change of arg f along the segment, bisecting until every sub-step
    /// turns by less than pi/4.
    fn turn(&mut self, a: Complex64, fa: Complex64, b: Complex64, fb: Complex64, depth: u32) -> Result<f64> {
        let d = (fb / fa).arg();
        if d.abs() <= MAX_TURN {
            return Ok(d);
        }
        if depth >= MAX_DEPTH {
            return Err(Error::WindingNotInteger { winding: f64::NAN });
        }
        let m = (a + b) * 0.5;
        let fm = self.eval(m)?;
        Ok(self.turn(a, fa, m, fm, depth + 1)? + self.turn(m, fm, b, fb, depth + 1)?)
    }
}

/// Winding number of `f` around `rect` with `points` initial samples per side.
pub fn winding_number<F>(mut f: F, rect: Rectangle, points: usize) -> Result<(f64, usize)>
where
    F: FnMut(Complex64) -> Result<Complex64>,
{
    let mut tr = Tracer {
        f: &mut f,
        evaluations: 0,
    };
    let corners = rect.corners();
    let mut total = 0.0;
    let start = corners[0];
    let mut prev = start;
    let mut f_prev = tr.eval(start)?;
    let f_start = f_prev;
    for side in 0..4 {
        let (a, b) = (corners[side], corners[(side + 1) % 4]);
        for k in 1..=points {
            let z = a + (b - a) * (k as f64 / points as f64);
            let fz = if side == 3 && k == points { f_start } else { tr.eval(z)? };
            total += tr.turn(prev, f_prev, z, fz, 0)?;
            prev = z;
            f_prev = fz;
        }
    }
    Ok((total / (2.0 * PI), tr.evaluations))
}

/// Number of zeros of the denominator inside `rect`. Sampling starts at 64
/// points per side and doubles (up to 256) until two consecutive counts
/// agree.
pub fn count_zeros(cfg: &ModelConfig, rect: Rectangle) -> Result<ZeroCount> {
    let g = |z: Complex64| g_denominator(ComplexEnergy::Scaled(z), cfg);
    let mut evaluations = 0;
    let mut last: Option<f64> = None;
    for points in [64, 128, 256] {
        let (w, n) = winding_number(g, rect, points)?;
        evaluations += n;
        if (w - w.round()).abs() > 0.1 {
            return Err(Error::WindingNotInteger { winding: w });
        }
        if let Some(prev) = last {
            if prev.round() == w.round() {
                return Ok(ZeroCount {
                    rect,
                    winding: w,
                    count: w.round() as i64,
                    evaluations,
                });
            }
        }
        last = Some(w);
    }
    Err(Error::WindingNotInteger {
        winding: last.unwrap_or(f64::NAN),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_zero_count() {
        // (z - 1)(z + 2i)^2 has three zeros inside |Re|, |Im| < 3
        let f = |z: Complex64| Ok((z - 1.0) * (z + Complex64::new(0.0, 2.0)).powi(2));
        let rect = Rectangle {
            re_min: -3.0,
            re_max: 3.0,
            im_min: -3.0,
            im_max: 3.0,
        };
        let (w, _) = winding_number(f, rect, 16).unwrap();
        assert!((w - 3.0).abs() < 1e-9);
        let small = Rectangle {
            re_min: 0.5,
            re_max: 1.5,
            im_min: -0.5,
            im_max: 0.5,
        };
        let (w, _) = winding_number(f, small, 16).unwrap();
        assert!((w - 1.0).abs() < 1e-9);
    }

    #[test]
    fn rapidly_rotating_function_is_resolved() {
        // exp(20 z) has no zeros; its phase winds fast along the vertical sides
        let f = |z: Complex64| Ok((z * 20.0).exp());
        let rect = Rectangle {
            re_min: -1.0,
            re_max: 1.0,
            im_min: -1.0,
            im_max: 1.0,
        };
        let (w, _) = winding_number(f, rect, 4).unwrap();
        assert!(w.abs() < 1e-9);
    }
}
