//! Power series: Maclaurin expansion at the origin and Taylor continuation
//! of Airy's equation `y'' = z y` along a path.

use num_complex::Complex64;

/// Ai(0)
pub const AI0: f64 = 0.355_028_053_887_817_239_260_063_186_004;
/// -Ai'(0)
pub const AIP0_NEG: f64 = 0.258_819_403_792_806_798_405_183_560_189;
pub const SQRT3: f64 = 1.732_050_807_568_877_293_527_446_341_505_9;

const TERM_TOL: f64 = 1e-18;
const MAX_TERMS: usize = 400;

/// The two canonical solutions `f`, `g` of Airy's equation and their
/// derivatives: `f(0) = 1, f'(0) = 0`, `g(0) = 0, g'(0) = 1`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Fundamental {
    pub f: Complex64,
    pub fp: Complex64,
    pub g: Complex64,
    pub gp: Complex64,
}

pub(crate) fn fundamental(z: Complex64) -> Fundamental {
    let z3 = z * z * z;

    // f = sum t_k, t_k = t_{k-1} z^3 / ((3k-1)(3k))
    // f' = sum p_k, p_1 = z^2/2, p_k = p_{k-1} z^3 / ((3k-1)(3k-3))
    // g = sum s_k, s_0 = z, s_k = s_{k-1} z^3 / ((3k)(3k+1))
    // g' = sum q_k, q_0 = 1, q_k = q_{k-1} z^3 / ((3k)(3k-2))
    let mut t = Complex64::new(1.0, 0.0);
    let mut f = t;
    let mut p = z * z * 0.5;
    let mut fp = p;
    let mut s = z;
    let mut g = s;
    let mut q = Complex64::new(1.0, 0.0);
    let mut gp = q;

    let mut quiet = 0;
    for k in 1..MAX_TERMS {
        let kf = k as f64;
        t *= z3 / ((3.0 * kf - 1.0) * (3.0 * kf));
        s *= z3 / ((3.0 * kf) * (3.0 * kf + 1.0));
        q *= z3 / ((3.0 * kf) * (3.0 * kf - 2.0));
        if k > 1 {
            p *= z3 / ((3.0 * kf - 1.0) * (3.0 * kf - 3.0));
            fp += p;
        }
        f += t;
        g += s;
        gp += q;

        let small = t.norm() <= TERM_TOL * f.norm().max(1.0)
            && s.norm() <= TERM_TOL * g.norm().max(1.0)
            && q.norm() <= TERM_TOL * gp.norm().max(1.0)
            && p.norm() <= TERM_TOL * fp.norm().max(1.0);
        if small {
            quiet += 1;
            if quiet >= 2 {
                break;
            }
        } else {
            quiet = 0;
        }
    }
    Fundamental { f, fp, g, gp }
}

/// `(Ai, Ai', Bi, Bi')` from the Maclaurin series.
pub(crate) fn maclaurin(z: Complex64) -> [Complex64; 4] {
    let Fundamental { f, fp, g, gp } = fundamental(z);
    let ai = f * AI0 - g * AIP0_NEG;
    let aip = fp * AI0 - gp * AIP0_NEG;
    let bi = (f * AI0 + g * AIP0_NEG) * SQRT3;
    let bip = (fp * AI0 + gp * AIP0_NEG) * SQRT3;
    [ai, aip, bi, bip]
}

/// Advances `(y, y')` of a solution of `y'' = z y` from `z0` to `z0 + h`
/// with the local Taylor series.
pub(crate) fn taylor_step(z0: Complex64, y: Complex64, yp: Complex64, h: Complex64) -> (Complex64, Complex64) {
    // m (m-1) c_m = z0 c_{m-2} + c_{m-3}, with c_0 = y, c_1 = y'
    let zero = Complex64::new(0.0, 0.0);
    let (mut cm3, mut cm2, mut cm1) = (zero, y, yp);
    let mut value = y + yp * h;
    let mut deriv = yp;
    let mut hpow = h; // h^(m-1)
    let scale = y.norm().max(yp.norm() * h.norm());
    let mut quiet = 0;
    for m in 2..MAX_TERMS {
        let cm = (z0 * cm2 + cm3) / ((m * (m - 1)) as f64);
        deriv += cm * hpow * (m as f64);
        hpow *= h;
        let term = cm * hpow;
        value += term;
        let floor = TERM_TOL * value.norm().max(deriv.norm() * h.norm()).max(scale * 1e-3);
        if term.norm() <= floor {
            quiet += 1;
            if quiet >= 3 {
                break;
            }
        } else {
            quiet = 0;
        }
        cm3 = cm2;
        cm2 = cm1;
        cm1 = cm;
    }
    (value, deriv)
}

/// Marches `(y, y')` from `start` to `end` along the straight segment in
/// steps no longer than `max_step`. Returns the final pair and the number of
/// steps taken.
pub(crate) fn taylor_march(
    start: Complex64,
    y: Complex64,
    yp: Complex64,
    end: Complex64,
    max_step: f64,
) -> (Complex64, Complex64, usize) {
    let delta = end - start;
    let steps = ((delta.norm() / max_step).ceil() as usize).max(1);
    let h = delta / steps as f64;
    let (mut y, mut yp) = (y, yp);
    for i in 0..steps {
        let z0 = start + h * i as f64;
        let (ny, nyp) = taylor_step(z0, y, yp, h);
        y = ny;
        yp = nyp;
    }
    (y, yp, steps)
}
