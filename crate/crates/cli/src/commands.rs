use std::f64::consts::PI;

use pointwell_core::airy::{ai_pair, airy_eval, airy_zero};
use pointwell_core::model::{flow_coupling, g_denominator};
use pointwell_core::survival::{gamow_modes, propagate_oracle, series_from_modes, survival_series};
use pointwell_core::{
    enumerate_poles, Binding, Complex64, ComplexEnergy, Dimension, ModelConfig, PoleSet, RunningCoupling,
    SurvivalRecord, SurvivalSource,
};
use serde_json::{json, Value};

use crate::config::{Command, Request};
use crate::output::{Figure, Mark, Report, Series, Table};
use crate::Failure;

pub const FIG1_EPS_B: [f64; 4] = [-10.0, -1.0, -0.1, -0.01];
pub const FIG2_EPS_B: [f64; 3] = [-10.0, -1.0, -0.1];

pub struct Outcome {
    pub report: Report,
    pub notes: Vec<String>,
    pub failed_checks: usize,
}

impl From<Report> for Outcome {
    fn from(report: Report) -> Self {
        Outcome {
            report,
            notes: Vec::new(),
            failed_checks: 0,
        }
    }
}

pub fn dispatch(req: &Request) -> Result<Outcome, Failure> {
    let cfg = || req.cfg.ok_or_else(|| Failure::config("no model configuration"));
    match req.command {
        Command::Poles => poles(&cfg()?, req).map(Into::into),
        Command::BoundState => Ok(bound_state(&cfg()?).into()),
        Command::Flow => flow(&cfg()?, req).map(Into::into),
        Command::Survival => survival(&cfg()?, req),
        Command::Gdenom => gdenom(&cfg()?, req).map(Into::into),
        Command::Fig1 => figure("fig1", Dimension::One, &FIG1_EPS_B, (-3, 9), req).map(Into::into),
        Command::Fig2 => figure("fig2", Dimension::Three, &FIG2_EPS_B, (0, 10), req).map(Into::into),
        Command::Selftest => Ok(selftest()),
    }
}

fn num(v: f64) -> String {
    format!("{v}")
}

fn opt(v: Option<f64>) -> String {
    v.map(num).unwrap_or_default()
}

const POLE_HEADERS: [&str; 6] = [
    "n",
    "eps_re[dimensionless]",
    "eps_im[dimensionless]",
    "Gamma[energy]",
    "residual[dimensionless]",
    "seed_source",
];

fn check_tolerance(set: &PoleSet, tol: Option<f64>) -> Result<(), Failure> {
    let Some(tol) = tol else { return Ok(()) };
    for r in &set.resonances {
        let rel = r.residual / r.scale.max(f64::MIN_POSITIVE);
        if rel > tol {
            return Err(Failure::numerical(format!(
                "pole {} has relative residual {rel:e} above --tol {tol:e}",
                r.index
            )));
        }
    }
    Ok(())
}

fn pole_table(stem: String, set: &PoleSet) -> Result<Table, Failure> {
    let rows = set
        .resonances
        .iter()
        .map(|r| {
            vec![
                r.index.to_string(),
                num(r.eps.re),
                num(r.eps.im),
                num(r.width_gamma),
                num(r.residual),
                r.seed_source.label().to_string(),
            ]
        })
        .collect();
    Ok(Table {
        stem,
        headers: POLE_HEADERS.to_vec(),
        rows,
        json: serde_json::to_value(set).map_err(|e| Failure::io(e.to_string()))?,
    })
}

/// Points of the pole plane and the guide along arg eps = -2 pi/3.
fn pole_figure(title: String, sets: &[(String, &PoleSet)]) -> Figure {
    let ray = Complex64::from_polar(1.0, -2.0 * PI / 3.0);
    Figure {
        title,
        x_label: "Re eps".into(),
        y_label: "Im eps".into(),
        series: sets
            .iter()
            .map(|(name, set)| Series {
                name: name.clone(),
                points: set.resonances.iter().map(|r| (r.eps.re, r.eps.im)).collect(),
                mark: Mark::Dots,
            })
            .collect(),
        guides: vec![((0.0, 0.0), (ray.re, ray.im))],
    }
}

fn poles(cfg: &ModelConfig, req: &Request) -> Result<Report, Failure> {
    let (lo, hi) = req.index_range.unwrap_or((0, 9));
    let set = enumerate_poles(cfg, lo, hi)?;
    check_tolerance(&set, req.tolerance)?;
    let eps_b = cfg.eps_b().map(|e| format!(", eps_B = {e}")).unwrap_or_default();
    let fig = pole_figure(
        format!("resonances, D = {}{eps_b}", cfg.dimension().get()),
        &[("poles".into(), &set)],
    );
    Ok(Report {
        tables: vec![pole_table("poles".into(), &set)?],
        figure: Some(fig),
    })
}

fn figure(name: &str, dim: Dimension, eps_bs: &[f64], range: (i64, i64), req: &Request) -> Result<Report, Failure> {
    let field = req.cfg.map(|c| c.field()).unwrap_or(1.0);
    let mut sets = Vec::new();
    for &eb in eps_bs {
        let cfg = ModelConfig::from_eps_b(dim, eb, field)?;
        let set = enumerate_poles(&cfg, range.0, range.1)?;
        check_tolerance(&set, req.tolerance)?;
        sets.push((eb, set));
    }
    let tables = sets
        .iter()
        .map(|(eb, set)| pole_table(format!("{name}_epsB{eb}"), set))
        .collect::<Result<Vec<_>, _>>()?;
    let named: Vec<(String, &PoleSet)> = sets.iter().map(|(eb, s)| (format!("eps_B = {eb}"), s)).collect();
    let fig = pole_figure(format!("{name}: resonances, D = {}", dim.get()), &named);
    Ok(Report {
        tables,
        figure: Some(fig),
    })
}

fn bound_state(cfg: &ModelConfig) -> Report {
    let e_b = cfg.bound_energy();
    let (lambda_r, mu) = match cfg.binding() {
        Binding::Running { lambda_r, mu } => (Some(lambda_r), Some(mu)),
        _ => (None, None),
    };
    let row = vec![
        cfg.dimension().get().to_string(),
        num(cfg.field()),
        opt(e_b.as_ref().ok().copied()),
        opt(cfg.eps_b().ok()),
        opt(cfg.lambda()),
        opt(lambda_r),
        opt(mu),
    ];
    let json = json!({
        "dimension": cfg.dimension().get(),
        "field": cfg.field(),
        "e_b": e_b.as_ref().ok(),
        "eps_b": cfg.eps_b().ok(),
        "lambda": cfg.lambda(),
        "lambda_r": lambda_r,
        "mu": mu,
        "bound_state_error": e_b.err().map(|e| e.to_string()),
    });
    Report {
        tables: vec![Table {
            stem: "bound_state".into(),
            headers: vec![
                "dim",
                "F[field]",
                "E_B[energy]",
                "eps_B[dimensionless]",
                "lambda[coupling]",
                "lambda_R[coupling]",
                "mu[momentum]",
            ],
            rows: vec![row],
            json,
        }],
        figure: None,
    }
}

fn flow(cfg: &ModelConfig, req: &Request) -> Result<Report, Failure> {
    let Binding::Running { lambda_r, mu } = cfg.binding() else {
        return Err(Failure::config("flow needs the model given by --lambda-r and --mu"));
    };
    let from = RunningCoupling::new(cfg.dimension(), lambda_r, mu)?;
    let to = flow_coupling(&from, req.flow_to.expect("resolved with the command"))?;
    let row = |rc: &RunningCoupling| vec![num(rc.mu), num(rc.lambda_r), opt(rc.bound_energy().ok())];
    Ok(Report {
        tables: vec![Table {
            stem: "flow".into(),
            headers: vec!["mu[momentum]", "lambda_R[coupling]", "E_B[energy]"],
            rows: vec![row(&from), row(&to)],
            json: json!({
                "from": from,
                "to": to,
                "e_b_from": from.bound_energy().ok(),
                "e_b_to": to.bound_energy().ok(),
            }),
        }],
        figure: None,
    })
}

fn source_label(s: SurvivalSource) -> &'static str {
    match s {
        SurvivalSource::ModeSeries => "mode_series",
        SurvivalSource::Propagator => "propagator",
    }
}

fn survival(cfg: &ModelConfig, req: &Request) -> Result<Outcome, Failure> {
    let times = req.time_grid.as_deref().expect("resolved with the command");
    let mut notes = Vec::new();
    let mut records: Vec<SurvivalRecord> = Vec::new();
    if cfg.field() > 0.0 {
        let (lo, hi) = req.index_range.unwrap_or((-3, 9));
        let set = enumerate_poles(cfg, lo, hi)?;
        check_tolerance(&set, req.tolerance)?;
        let rec = survival_series(cfg, &set, times)?;
        if rec.truncation_suspect {
            notes.push(format!("modes [{lo}, {hi}] may not suffice at t = {}", times[0]));
        }
        records.push(rec);
    } else {
        notes.push("no resonances at F = 0; using the propagator".into());
    }
    if req.oracle || cfg.field() == 0.0 {
        records.push(propagate_oracle(cfg, times)?);
    }
    let mut rows = Vec::new();
    for rec in &records {
        for ((t, a), p) in rec.times.iter().zip(&rec.amplitude).zip(&rec.probability) {
            rows.push(vec![
                num(*t),
                num(a.re),
                num(a.im),
                num(*p),
                source_label(rec.source).into(),
            ]);
        }
    }
    let fig = Figure {
        title: format!("survival probability, lambda = {}", cfg.lambda().unwrap_or(f64::NAN)),
        x_label: "t".into(),
        y_label: "|A(t)|^2".into(),
        series: records
            .iter()
            .map(|r| Series {
                name: source_label(r.source).into(),
                points: r.times.iter().copied().zip(r.probability.iter().copied()).collect(),
                mark: Mark::Line,
            })
            .collect(),
        guides: Vec::new(),
    };
    Ok(Outcome {
        report: Report {
            tables: vec![Table {
                stem: "survival".into(),
                headers: vec!["t[time]", "A_re", "A_im", "A_abs2", "source"],
                rows,
                json: serde_json::to_value(&records).map_err(|e| Failure::io(e.to_string()))?,
            }],
            figure: Some(fig),
        },
        notes,
        failed_checks: 0,
    })
}

fn gdenom(cfg: &ModelConfig, req: &Request) -> Result<Report, Failure> {
    let [re_min, re_max, im_min, im_max] = req.rect;
    let n = req.points;
    let at = |lo: f64, hi: f64, k: usize| lo + (hi - lo) * k as f64 / (n - 1) as f64;
    let mut rows = Vec::with_capacity(n * n);
    let mut samples = Vec::with_capacity(n * n);
    for i in 0..n {
        let im = at(im_min, im_max, i);
        for r in 0..n {
            let eps = Complex64::new(at(re_min, re_max, r), im);
            let g = g_denominator(ComplexEnergy::Scaled(eps), cfg)?;
            rows.push(vec![num(eps.re), num(eps.im), num(g.re), num(g.im)]);
            samples.push(json!([eps.re, eps.im, g.re, g.im]));
        }
    }
    Ok(Report {
        tables: vec![Table {
            stem: "gdenom".into(),
            headers: vec!["eps_re[dimensionless]", "eps_im[dimensionless]", "g_re", "g_im"],
            rows,
            json: json!({
                "cfg": cfg,
                "rect": req.rect,
                "points": n,
                "columns": ["eps_re", "eps_im", "g_re", "g_im"],
                "samples": samples,
            }),
        }],
        figure: None,
    })
}

type Check = (&'static str, fn() -> Result<String, String>);

fn e<E: std::fmt::Display>(err: E) -> String {
    err.to_string()
}

fn verdict(ok: bool, detail: String) -> Result<String, String> {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

const CHECKS: &[Check] = &[
    ("airy_wronskian", || {
        // relative to the two products, whose rounding is the floor
        let mut worst: f64 = 0.0;
        for k in 0..200 {
            let z = Complex64::from_polar(20.0 * ((k as f64 + 0.5) / 200.0).sqrt(), 2.399_963 * k as f64);
            let v = airy_eval(z).map_err(e)?;
            let size = (v.ai * v.bip).norm() + (v.aip * v.bi).norm();
            worst = worst.max((v.ai * v.bip - v.aip * v.bi - 1.0 / PI).norm() / size);
        }
        verdict(
            worst <= 1e-12,
            format!("max |W - 1/pi| / (|Ai Bi'| + |Ai' Bi|) = {worst:e}"),
        )
    }),
    ("ci_plus_rotation", || {
        let mut worst: f64 = 0.0;
        for &z in &[
            Complex64::new(1.5, -2.0),
            Complex64::new(-6.0, 0.3),
            Complex64::new(4.0, 4.0),
        ] {
            let v = airy_eval(z).map_err(e)?;
            let ci = v.bi + Complex64::i() * v.ai;
            let rot = ai_pair(z * Complex64::from_polar(1.0, 2.0 * PI / 3.0))
                .value
                .to_complex()
                .map_err(e)?
                * Complex64::from_polar(2.0, PI / 6.0);
            worst = worst.max((ci - rot).norm() / ci.norm());
        }
        verdict(worst <= 1e-10, format!("max relative mismatch {worst:e}"))
    }),
    ("first_airy_zero", || {
        let a1 = airy_zero(1).map_err(e)?;
        verdict((a1 + 2.33810).abs() < 1e-5, format!("a_1 = {a1}"))
    }),
    ("weak_field_ground_pole", || {
        let cfg = ModelConfig::from_eps_b(Dimension::One, -10.0, 1.0).map_err(e)?;
        let set = enumerate_poles(&cfg, 0, 0).map_err(e)?;
        let eps0 = set.resonances[0].eps;
        verdict((eps0.re + 10.0).abs() <= 0.3, format!("eps_0 = {eps0}"))
    }),
    ("poles_below_real_axis", || {
        let cfg = ModelConfig::from_eps_b(Dimension::One, -1.0, 1.0).map_err(e)?;
        let set = enumerate_poles(&cfg, -3, 9).map_err(e)?;
        let top = set
            .resonances
            .iter()
            .map(|r| r.eps.im)
            .fold(f64::NEG_INFINITY, f64::max);
        verdict(top < 0.0, format!("largest Im eps = {top:e}"))
    }),
    ("flow_round_trip", || {
        let rc = RunningCoupling::new(Dimension::Three, 30.0, 2.0).map_err(e)?;
        let back = flow_coupling(&flow_coupling(&rc, 5.0).map_err(e)?, 2.0).map_err(e)?;
        let (e0, e1) = (rc.bound_energy().map_err(e)?, back.bound_energy().map_err(e)?);
        verdict(((e1 - e0) / e0).abs() <= 1e-12, format!("E_B {e0} -> {e1}"))
    }),
    ("series_normalization", || {
        let cfg = ModelConfig::from_eps_b(Dimension::One, -10.0, 1.0).map_err(e)?;
        let set = enumerate_poles(&cfg, -3, 9).map_err(e)?;
        let modes = gamow_modes(&set).map_err(e)?;
        let a0 = series_from_modes(&modes, &[0.0]).map_err(e)?.amplitude[0];
        verdict((a0 - 1.0).norm() <= 1e-2, format!("A(0) = {a0}"))
    }),
    ("stationary_bound_state", || {
        let cfg = ModelConfig::one_d(2.0, 0.0).map_err(e)?;
        let rec = propagate_oracle(&cfg, &[0.0, 1.0, 2.0]).map_err(e)?;
        let worst = rec.amplitude.iter().map(|a| (a.norm() - 1.0).abs()).fold(0.0, f64::max);
        verdict(worst <= 1e-4, format!("max ||A| - 1| = {worst:e}"))
    }),
];

fn selftest() -> Outcome {
    let mut rows = Vec::new();
    let mut results = Vec::new();
    let mut failed = 0;
    for (name, check) in CHECKS {
        let (status, detail) = match check() {
            Ok(d) => ("pass", d),
            Err(d) => {
                failed += 1;
                ("fail", d)
            }
        };
        eprintln!("{} {name}: {detail}", status.to_uppercase());
        rows.push(vec![name.to_string(), status.to_string(), detail.clone()]);
        results.push(json!({"check": name, "status": status, "detail": detail}));
    }
    Outcome {
        report: Report {
            tables: vec![Table {
                stem: "selftest".into(),
                headers: vec!["check", "status", "detail"],
                rows,
                json: Value::Array(results),
            }],
            figure: None,
        },
        notes: Vec::new(),
        failed_checks: failed,
    }
}
