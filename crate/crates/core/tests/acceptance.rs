//! End-to-end acceptance suite. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any criterion fails.

use std::f64::consts::PI;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use pointwell_core::airy::{airy_eval, airy_zero};
use pointwell_core::model::{flow_coupling, g_physical, g_quadrature};
use pointwell_core::poles::{asymptotic_pole, count_zeros, large_n_modulus, refine_pole};
use pointwell_core::poles::{AsymptoticFormula, AsymptoticParams, Rectangle};
use pointwell_core::survival::{gamow_modes, propagate_oracle, series_from_modes, survival_series};
use pointwell_core::{
    enumerate_poles, Binding, Complex64, ComplexEnergy, Dimension, ModelConfig, PoleSet, RunningCoupling,
    SurvivalRecord,
};

type Verdict = Result<(bool, Vec<String>), String>;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn unit(dim: Dimension, eps_b: f64) -> Result<ModelConfig, String> {
    ModelConfig::from_eps_b(dim, eps_b, 1.0).map_err(err)
}

fn poles(dim: Dimension, eps_b: f64, lo: i64, hi: i64) -> Result<PoleSet, String> {
    enumerate_poles(&unit(dim, eps_b)?, lo, hi).map_err(err)
}

fn pole(set: &PoleSet, n: i64) -> Result<Complex64, String> {
    set.get(n).map(|r| r.eps).ok_or_else(|| format!("pole {n} missing"))
}

fn asym(formula: AsymptoticFormula, eps_b: f64, n: i64) -> Result<Complex64, String> {
    asymptotic_pole(formula, AsymptoticParams { eps_b, n }).map_err(err)
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

fn mark(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "NOT MET"
    }
}

/// Radical inverse of `k` in `base`.
fn halton(mut k: usize, base: usize) -> f64 {
    let (mut x, mut f) = (0.0, 1.0 / base as f64);
    while k > 0 {
        x += f * (k % base) as f64;
        k /= base;
        f /= base as f64;
    }
    x
}

/// Low-discrepancy points filling the disk |z| <= radius uniformly.
fn disk(count: usize, radius: f64) -> Vec<Complex64> {
    (1..=count)
        .map(|k| Complex64::from_polar(radius * halton(k, 2).sqrt(), 2.0 * PI * halton(k, 3)))
        .collect()
}

fn criterion_1() -> Verdict {
    let points = disk(1000, 20.0);
    let omega = Complex64::from_polar(1.0, 2.0 * PI / 3.0);
    let phase = Complex64::from_polar(2.0, PI / 6.0);
    let (mut bad_w, mut bad_r) = (0, 0);
    let (mut worst_w, mut worst_r) = ((0.0f64, c(0.0, 0.0)), (0.0f64, c(0.0, 0.0)));
    // largest |z| below which every sampled point meets the literal bound
    let (mut reach_w, mut reach_r) = (20.0f64, 20.0f64);
    // errors measured against the size of the cancelling terms
    let (mut term_w, mut term_r) = (0.0f64, 0.0f64);
    for &z in &points {
        let v = airy_eval(z).map_err(err)?;
        let w = (v.ai * v.bip - v.aip * v.bi - 1.0 / PI).norm();
        term_w = term_w.max(w / ((v.ai * v.bip).norm() + (v.aip * v.bi).norm()));
        if w > 1e-10 {
            bad_w += 1;
            reach_w = reach_w.min(z.norm());
        }
        if w > worst_w.0 {
            worst_w = (w, z);
        }
        // Ci+ from its definition, independent of the rotated evaluation
        let ci = v.bi + Complex64::i() * v.ai;
        let rot = phase * airy_eval(z * omega).map_err(err)?.ai;
        let r = (ci - rot).norm() / ci.norm();
        term_r = term_r.max((ci - rot).norm() / (v.bi.norm() + v.ai.norm()));
        if r > 1e-10 {
            bad_r += 1;
            reach_r = reach_r.min(z.norm());
        }
        if r > worst_r.0 {
            worst_r = (r, z);
        }
    }
    let a1 = airy_zero(1).map_err(err)?;
    let zero_ok = (a1 + 2.33810).abs() < 1e-5;
    Ok((
        bad_w == 0 && bad_r == 0 && zero_ok,
        vec![
            format!(
                "Wronskian |W - 1/pi| <= 1e-10: {bad_w}/1000 points exceed, worst {:.2e} at z = {:.3} [{}]",
                worst_w.0,
                worst_w.1,
                mark(bad_w == 0)
            ),
            format!(
                "rotation Bi + i Ai = 2e^(i pi/6) Ai(z e^(2 pi i/3)) to 1e-10 relative: {bad_r}/1000 exceed, worst {:.2e} at z = {:.3} [{}]",
                worst_r.0,
                worst_r.1,
                mark(bad_r == 0)
            ),
            format!("a_1 = {a1:.10} vs -2.33810 [{}]", mark(zero_ok)),
            format!(
                "diagnostic: literal bounds hold for |z| < {reach_w:.2} (Wronskian) and |z| < {reach_r:.2} (rotation); \
                 relative to the cancelling terms the worst errors are {term_w:.1e} and {term_r:.1e}"
            ),
        ],
    ))
}

fn criterion_2() -> Verdict {
    let cfg = ModelConfig::new(
        Dimension::Three,
        1.0,
        Binding::Running {
            lambda_r: 30.0,
            mu: 1.0,
        },
    )
    .map_err(err)?;
    let energies = [
        c(-3.0, 0.0),
        c(-0.5, 0.0),
        c(0.0, 0.0),
        c(1.7, 0.0),
        c(6.0, 0.0),
        c(-2.0, 0.5),
        c(0.5, 0.7),
        c(3.0, 2.0),
        c(-6.0, 4.0),
        c(10.0, 0.1),
    ];
    let mut worst = 0.0f64;
    for e in energies {
        let e = ComplexEnergy::Physical(e);
        let closed = g_physical(e, &cfg).map_err(err)?;
        let quad = g_quadrature(e, &cfg).map_err(err)?;
        worst = worst.max((closed - quad).norm() / closed.norm());
    }
    Ok((
        worst <= 1e-8,
        vec![format!(
            "10 energies with Im E >= 0: worst relative difference {worst:.2e}"
        )],
    ))
}

fn weak_field_ground(cfg: &ModelConfig, e_b: f64) -> Result<f64, String> {
    let seed = c(e_b / cfg.field().powf(2.0 / 3.0), 0.0);
    Ok(refine_pole(seed, cfg).map_err(err)?.energy.re)
}

fn criterion_3() -> Verdict {
    let mut lines = Vec::new();
    let mut ok = true;
    // field chosen so that eps_B = -100
    let field_for = |e_b: f64| (-e_b / 100.0).powf(1.5);
    let lambda = 2.0;
    let cases: [(Dimension, Binding, f64); 3] = [
        (Dimension::One, Binding::Coupling { lambda }, -lambda * lambda / 4.0),
        (
            Dimension::Three,
            Binding::Running {
                lambda_r: 8.0 * PI,
                mu: 1.5,
            },
            -(1.5 - 4.0 * PI / (8.0 * PI)) * (1.5 - 4.0 * PI / (8.0 * PI)),
        ),
        (
            Dimension::Two,
            Binding::Running { lambda_r: 6.0, mu: 1.0 },
            -(-4.0 * PI / 6.0f64).exp(),
        ),
    ];
    for (dim, binding, e_b) in cases {
        let cfg = ModelConfig::new(dim, field_for(e_b), binding).map_err(err)?;
        let e0 = weak_field_ground(&cfg, e_b)?;
        let r = rel(e0, e_b);
        ok &= r <= 1e-4;
        lines.push(format!(
            "D = {}: zero at E = {e0:.8} for F = {:.2e}, expected {e_b:.8}, relative {r:.1e}",
            dim.get(),
            cfg.field()
        ));
    }
    for (dim, lambda_r, mu, mu_new) in [(Dimension::Three, 30.0, 2.0, 5.0), (Dimension::Two, 6.0, 1.0, 7.5)] {
        let rc = RunningCoupling::new(dim, lambda_r, mu).map_err(err)?;
        let there = flow_coupling(&rc, mu_new).map_err(err)?;
        let back = flow_coupling(&there, mu).map_err(err)?;
        let e0 = rc.bound_energy().map_err(err)?;
        let drift = rel(there.bound_energy().map_err(err)?, e0).max(rel(back.bound_energy().map_err(err)?, e0));
        let coupling = rel(back.lambda_r, lambda_r);
        ok &= drift <= 1e-12 && coupling <= 1e-12;
        lines.push(format!(
            "D = {} flow mu {mu} -> {mu_new} -> {mu}: E_B drift {drift:.1e}, lambda_R drift {coupling:.1e}",
            dim.get()
        ));
    }
    Ok((ok, lines))
}

fn criterion_4() -> Verdict {
    let mut lines = Vec::new();
    let mut ok = true;
    let dims = [
        (Dimension::One, AsymptoticFormula::B2),
        (Dimension::Two, AsymptoticFormula::Eq49),
        (Dimension::Three, AsymptoticFormula::Eq41),
    ];
    for (dim, formula) in dims {
        let eps_b = -10.0;
        let e0 = pole(&poles(dim, eps_b, 0, 0)?, 0)?;
        let shift = (e0.re - eps_b).abs();
        let rect = Rectangle {
            re_min: eps_b - 0.5,
            re_max: eps_b + 0.5,
            im_min: -0.5,
            im_max: 0.05,
        };
        let count = count_zeros(&unit(dim, eps_b)?, rect).map_err(err)?.count;
        let this_ok = shift <= 0.03 * eps_b.abs() && count == 1;
        ok &= this_ok;
        lines.push(format!(
            "D = {} eps_B = -10: |Re eps_0 - eps_B| = {shift:.2e}, zeros in search rectangle = {count} [{}]",
            dim.get(),
            mark(this_ok)
        ));
        let mut worst = 0.0f64;
        for eps_b in [-4.0, -3.5, -3.0, -2.5, -2.0] {
            let e0 = pole(&poles(dim, eps_b, 0, 0)?, 0)?;
            let want = asym(formula, eps_b, 0)?;
            worst = worst.max(rel(e0.im, want.im));
            let rect = Rectangle {
                re_min: e0.re - 0.5,
                re_max: e0.re + 0.5,
                im_min: e0.im - 0.5,
                im_max: 0.05,
            };
            let count = count_zeros(&unit(dim, eps_b)?, rect).map_err(err)?.count;
            if count != 1 {
                ok = false;
                lines.push(format!(
                    "D = {} eps_B = {eps_b}: {count} zeros in search rectangle",
                    dim.get()
                ));
            }
        }
        ok &= worst <= 0.35;
        lines.push(format!(
            "D = {} eps_B in [-4, -2]: Im eps_0 vs {} worst relative {worst:.3} [{}]",
            dim.get(),
            formula.label(),
            mark(worst <= 0.35)
        ));
    }
    Ok((ok, lines))
}

fn criterion_5() -> Verdict {
    let eps_b = -10.0;
    let e1 = pole(&poles(Dimension::One, eps_b, 0, 1)?, 1)?;
    let want = asym(AsymptoticFormula::C3, eps_b, 1)?;
    let re = (e1.re - want.re).abs();
    let im = rel(e1.im, want.im);
    Ok((
        re <= 1e-3 && im <= 0.30,
        vec![
            format!("eps_1 = {e1:.6}, expansion {want:.6}"),
            format!("|Re difference| = {re:.2e} (bound 1e-3) [{}]", mark(re <= 1e-3)),
            format!("Im relative = {im:.3} (bound 0.30) [{}]", mark(im <= 0.30)),
        ],
    ))
}

fn ray_checks(set: &PoleSet, label: &str, positive: Complex64, lines: &mut Vec<String>) -> Result<bool, String> {
    let s = large_n_modulus(30);
    let e30 = pole(set, 30)?;
    let em30 = pole(set, -30)?;
    let ratio = e30.norm() / s;
    let im = rel(e30.im, positive.im);
    let mirror = Complex64::from_polar(1.0, -2.0 * PI / 3.0) * e30.conj();
    let sym = (em30 - mirror).norm() / e30.norm();
    let ok = (0.98..=1.02).contains(&ratio) && im <= 0.20 && sym <= 0.02;
    lines.push(format!(
        "{label}: |eps_30|/s_30 = {ratio:.4}, Im vs formula {im:.3}, mirror mismatch {sym:.2e} [{}]",
        mark(ok)
    ));
    Ok(ok)
}

fn criterion_6() -> Verdict {
    let mut lines = Vec::new();
    let eps_b = -1.0;
    let one = poles(Dimension::One, eps_b, -30, 30)?;
    let a = ray_checks(&one, "D = 1 vs D4", asym(AsymptoticFormula::D4, eps_b, 30)?, &mut lines)?;
    let three = poles(Dimension::Three, eps_b, -30, 30)?;
    let b = ray_checks(
        &three,
        "D = 3 vs D6",
        asym(AsymptoticFormula::D6Positive, eps_b, 30)?,
        &mut lines,
    )?;
    Ok((a && b, lines))
}

fn criterion_7() -> Verdict {
    let mut lines = Vec::new();
    let mut sets = Vec::new();
    for eps_b in [-10.0, -1.0, -0.1, -0.01] {
        sets.push(poles(Dimension::One, eps_b, -3, 9)?);
    }
    let mut d3 = Vec::new();
    for eps_b in [-10.0, -1.0, -0.1] {
        d3.push(poles(Dimension::Three, eps_b, -3, 10)?);
    }
    for eps_b in [-10.0, -1.0] {
        sets.push(poles(Dimension::Two, eps_b, 0, 9)?);
    }
    sets.extend(d3.iter().cloned());

    let (count, top) = sets
        .iter()
        .flat_map(|s| s.resonances.iter())
        .fold((0, f64::NEG_INFINITY), |(n, t), r| (n + 1, t.max(r.eps.im)));
    let a = top < 0.0;
    lines.push(format!("(a) {count} poles, largest Im eps = {top:.2e} [{}]", mark(a)));

    let strong = &sets[3];
    let gammas: Vec<f64> = (0..=9)
        .map(|j| strong.get(j).map(|r| r.gamma))
        .collect::<Option<_>>()
        .ok_or("missing pole")?;
    let b = gammas.windows(2).all(|w| w[1] < w[0]);
    lines.push(format!(
        "(b) D = 1 eps_B = -0.01: gamma_0..9 = {:.3?} [{}]",
        gammas,
        mark(b)
    ));

    let mut cc = true;
    let mut pairs = Vec::new();
    for set in &d3 {
        let (g0, g1) = (
            set.get(0).ok_or("missing pole")?.gamma,
            set.get(1).ok_or("missing pole")?.gamma,
        );
        cc &= g0 < g1;
        pairs.push(format!("{:.3e} < {:.3e}", g0, g1));
    }
    lines.push(format!(
        "(c) D = 3 gamma_0 < gamma_1 at -10, -1, -0.1: {} [{}]",
        pairs.join(", "),
        mark(cc)
    ));

    let gap = |eps_b: f64| -> Result<f64, String> {
        let set = poles(Dimension::One, eps_b, 0, 1)?;
        Ok(set.get(0).ok_or("missing pole")?.gamma - set.get(1).ok_or("missing pole")?.gamma)
    };
    let (mut lo, mut hi) = (-2.0, -0.5);
    let (g_lo, g_hi) = (gap(lo)?, gap(hi)?);
    let d = g_lo.signum() != g_hi.signum();
    if d {
        for _ in 0..30 {
            let mid = 0.5 * (lo + hi);
            if gap(mid)?.signum() == g_lo.signum() {
                lo = mid;
            } else {
                hi = mid;
            }
        }
    }
    lines.push(format!(
        "(d) gamma_0 - gamma_1 = {g_lo:.3e} at -2, {g_hi:.3e} at -0.5; crossover at eps_B = {:.6} [{}]",
        0.5 * (lo + hi),
        mark(d)
    ));
    Ok((a && b && cc && d, lines))
}

fn grid(t_max: f64, steps: usize) -> Vec<f64> {
    (0..=steps).map(|k| t_max * k as f64 / steps as f64).collect()
}

fn compare(series: &SurvivalRecord, oracle: &SurvivalRecord) -> (f64, f64) {
    let amp = series
        .amplitude
        .iter()
        .zip(&oracle.amplitude)
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max);
    let prob = series
        .probability
        .iter()
        .zip(&oracle.probability)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    (amp, prob)
}

fn criterion_8() -> Verdict {
    let mut lines = Vec::new();

    // (a)
    let weak = poles(Dimension::One, -10.0, -3, 9)?;
    let weak_modes = gamow_modes(&weak).map_err(err)?;
    let a0 = series_from_modes(&weak_modes, &[0.0]).map_err(err)?.amplitude[0];
    let a = (a0 - 1.0).norm() <= 1e-2;
    lines.push(format!(
        "(a) eps_B = -10, modes [-3, 9]: A(0) = {a0:.6}, |A(0) - 1| = {:.1e} [{}]",
        (a0 - 1.0).norm(),
        mark(a)
    ));

    // (b)
    let mut b = true;
    for eps_b in [-10.0, -3.0] {
        let set = poles(Dimension::One, eps_b, -3, 9)?;
        let cfg = unit(Dimension::One, eps_b)?;
        let g0 = set.get(0).ok_or("missing pole")?.width_gamma;
        let times = [0.2 / g0, 2.0 / g0];
        let rec = survival_series(&cfg, &set, &times).map_err(err)?;
        let slope = (rec.probability[1].ln() - rec.probability[0].ln()) / (times[1] - times[0]);
        let r = rel(-slope, g0);
        b &= r <= 0.05;
        lines.push(format!(
            "(b) eps_B = {eps_b}: slope {slope:.4e} vs -Gamma_0 = {:.4e}, relative {r:.1e}",
            -g0
        ));
    }

    // (c), with the runs reused for (e)
    let mut c_ok = true;
    let mut runs = Vec::new();
    for (eps_b, steps) in [(-10.0, 100), (-1.0, 200)] {
        let cfg = unit(Dimension::One, eps_b)?;
        let set = poles(Dimension::One, eps_b, -3, 9)?;
        let g0 = set.get(0).ok_or("missing pole")?.width_gamma;
        // a propagator cannot follow a width of 1e-17; cap at its horizon
        let t_max = (3.0 / g0).min(20.0);
        let times = grid(t_max, steps);
        let series = survival_series(&cfg, &set, &times).map_err(err)?;
        let oracle = propagate_oracle(&cfg, &times).map_err(err)?;
        let (amp, prob) = compare(&series, &oracle);
        c_ok &= amp <= 1e-2 && prob <= 1e-2;
        lines.push(format!(
            "(c) eps_B = {eps_b}, t in [0, {t_max:.3}]: max |dA| = {amp:.2e}, max |d|A|^2| = {prob:.2e}"
        ));
        runs.push((eps_b, oracle));
    }

    // (d)
    let cfg = unit(Dimension::One, -0.1)?;
    let times = grid(5.0, 100);
    let oracle = propagate_oracle(&cfg, &times).map_err(err)?;
    let p = &oracle.probability;
    let (mut rebound, mut at, mut low) = (0.0f64, 0.0, p[0]);
    for (t, &v) in times.iter().zip(p) {
        low = low.min(v);
        if v - low > rebound {
            (rebound, at) = (v - low, *t);
        }
    }
    let d = rebound > 1e-4;
    lines.push(format!(
        "(d) eps_B = -0.1, t in [0, 5]: largest rise after a minimum {rebound:.2e} (ends at t = {at:.2}) [{}]",
        mark(d)
    ));
    runs.push((-0.1, oracle));

    // (e)
    let mut e = true;
    for (eps_b, rec) in &runs {
        let nonescape = rec
            .nonescape
            .as_ref()
            .ok_or("propagator emitted no nonescape probability")?;
        let pairs: Vec<(f64, f64, f64)> = rec
            .times
            .iter()
            .zip(nonescape.iter().zip(&rec.probability))
            .map(|(t, (p, a2))| (*t, *p, *a2))
            .collect();
        let violations: Vec<(f64, f64)> = pairs
            .iter()
            .filter(|(_, p, a2)| p < a2)
            .map(|(t, p, a2)| (*t, a2 - p))
            .collect();
        e &= violations.is_empty();
        let detail = match (violations.first(), violations.last()) {
            (Some((t0, by)), Some((t1, _))) => {
                format!(
                    "violated at {} of {} times, t in [{t0:.2}, {t1:.2}], by {by:.2e} at t = {t0}",
                    violations.len(),
                    pairs.len()
                )
            }
            _ => "holds at every t".to_string(),
        };
        // Cauchy-Schwarz with q, the initial weight outside the window
        let q = 1.0 - pairs[0].1;
        let margin = pairs
            .iter()
            .map(|(_, p, a2)| ((p * (1.0 - q)).sqrt() + ((1.0 - p).max(0.0) * q).sqrt()).powi(2) - a2)
            .fold(f64::INFINITY, f64::min);
        lines.push(format!(
            "(e) eps_B = {eps_b}: P(t) >= |A(t)|^2 {detail}; diagnostic: weight outside |x| < 5/lambda at t = 0 is {q:.2e}, \
             bound with that leak included has worst margin {margin:.1e}"
        ));
    }
    Ok((a && b && c_ok && d && e, lines))
}

fn pointwell_binary() -> Option<PathBuf> {
    if let Some(p) = std::env::var_os("POINTWELL_BIN") {
        return Some(PathBuf::from(p));
    }
    // target/<profile>/deps/acceptance-<hash> sits next to target/<profile>/pointwell
    let exe = std::env::current_exe().ok()?;
    let bin = exe
        .parent()?
        .parent()?
        .join(format!("pointwell{}", std::env::consts::EXE_SUFFIX));
    bin.exists().then_some(bin)
}

fn snapshot(dir: &Path) -> Result<Vec<(String, Vec<u8>)>, String> {
    let mut files = std::fs::read_dir(dir)
        .map_err(err)?
        .map(|e| {
            let e = e.map_err(err)?;
            Ok((
                e.file_name().to_string_lossy().into_owned(),
                std::fs::read(e.path()).map_err(err)?,
            ))
        })
        .collect::<Result<Vec<_>, String>>()?;
    files.sort();
    Ok(files)
}

fn criterion_9() -> Verdict {
    let bin =
        pointwell_binary().ok_or("pointwell binary not built (run `cargo test --workspace` or set POINTWELL_BIN)")?;
    let mut lines = Vec::new();
    let mut ok = true;
    let runs: [(&str, &[&str], bool); 4] = [
        ("fig1", &["--format", "csv"], true),
        ("fig2", &["--format", "csv"], true),
        ("fig1", &["--format", "json"], true),
        ("fig2", &["--format", "svg"], false),
    ];
    for (cmd, extra, to_dir) in runs {
        let mut outputs = Vec::new();
        for _ in 0..2 {
            let dir = tempfile::tempdir().map_err(err)?;
            let target = if to_dir {
                dir.path().to_path_buf()
            } else {
                dir.path().join("figure.svg")
            };
            let status = Command::new(&bin)
                .arg(cmd)
                .args(extra)
                .arg("--out")
                .arg(&target)
                .output()
                .map_err(err)?;
            if !status.status.success() {
                return Err(format!("{cmd} failed: {}", String::from_utf8_lossy(&status.stderr)));
            }
            outputs.push(snapshot(dir.path())?);
        }
        let same = outputs[0] == outputs[1];
        let bytes: usize = outputs[0].iter().map(|(_, b)| b.len()).sum();
        ok &= same && !outputs[0].is_empty();
        lines.push(format!(
            "{cmd} {}: {} file(s), {bytes} bytes, identical = {same}",
            extra.join(" "),
            outputs[0].len()
        ));
    }
    Ok((ok, lines))
}

type Criterion = (u8, &'static str, Option<Duration>, fn() -> Verdict);

const CRITERIA: [Criterion; 9] = [
    (1, "Airy correctness", Some(Duration::from_secs(5)), criterion_1),
    (
        2,
        "D = 3 quadrature vs closed form",
        Some(Duration::from_secs(30)),
        criterion_2,
    ),
    (3, "bound-state limits and coupling flow", None, criterion_3),
    (4, "weak-field ground resonance", None, criterion_4),
    (5, "first excited resonance expansion", None, criterion_5),
    (6, "large-n pole asymptotics", None, criterion_6),
    (7, "pole structure", None, criterion_7),
    (8, "survival dynamics", Some(Duration::from_secs(300)), criterion_8),
    (9, "determinism", None, criterion_9),
];

fn main() {
    let mut failed = Vec::new();
    for (id, name, budget, check) in CRITERIA {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let over = budget.filter(|b| elapsed > *b);
        let (pass, mut lines) = match outcome {
            Ok((pass, lines)) => (pass, lines),
            Err(e) => (false, vec![format!("error: {e}")]),
        };
        if let Some(b) = over {
            lines.push(format!(
                "runtime {:.1} s exceeds {} s",
                elapsed.as_secs_f64(),
                b.as_secs()
            ));
        }
        let pass = pass && over.is_none();
        println!(
            "criterion {id} ({name}): {} [{:.1} s]",
            if pass { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64()
        );
        for l in lines {
            println!("    {l}");
        }
        if !pass {
            failed.push(id);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all 9 criteria pass");
    } else {
        println!("acceptance: {} of 9 criteria fail: {failed:?}", failed.len());
        std::process::exit(1);
    }
}
