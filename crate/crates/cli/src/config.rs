//! Run request: command-line flags layered over an optional flat
//! `key = value` file.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use pointwell_core::{Binding, Dimension, ModelConfig};

use crate::Failure;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Poles,
    BoundState,
    Flow,
    Survival,
    Gdenom,
    Fig1,
    Fig2,
    Selftest,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Svg,
}

/// Flags shared by every command. All are optional here so that a config
/// file can supply them.
#[derive(Debug, Clone, Default, Args)]
pub struct Flags {
    /// Flat `key = value` file; flags given on the command line win
    #[arg(long, value_name = "PATH")]
    pub config: Option<PathBuf>,
    #[arg(long, value_parser = ["1", "2", "3"])]
    pub dim: Option<String>,
    /// Field strength F >= 0
    #[arg(long = "F", value_name = "FLOAT")]
    pub field: Option<f64>,
    /// Bare coupling (one dimension)
    #[arg(long, allow_negative_numbers = true)]
    pub lambda: Option<f64>,
    /// Field-free bound-state energy E_B < 0
    #[arg(long, allow_negative_numbers = true)]
    pub eb: Option<f64>,
    /// Renormalized coupling (two or three dimensions), with --mu
    #[arg(long = "lambda-r", allow_negative_numbers = true)]
    pub lambda_r: Option<f64>,
    #[arg(long)]
    pub mu: Option<f64>,
    #[arg(long = "n-min", allow_negative_numbers = true)]
    pub n_min: Option<i64>,
    #[arg(long = "n-max", allow_negative_numbers = true)]
    pub n_max: Option<i64>,
    #[arg(long = "t-max")]
    pub t_max: Option<f64>,
    /// Number of time intervals on [0, t-max]
    #[arg(long = "t-steps")]
    pub t_steps: Option<usize>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Output file, or directory for commands that write several tables
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Also run the time-domain propagator (survival only)
    #[arg(long)]
    pub oracle: bool,
    /// Largest accepted |g(eps_n)| relative to the size of its terms
    #[arg(long)]
    pub tol: Option<f64>,
    /// Target scale for `flow`
    #[arg(long = "mu-new")]
    pub mu_new: Option<f64>,
    /// Scale shift for `flow` (mu_new = mu + dmu)
    #[arg(long, allow_negative_numbers = true)]
    pub dmu: Option<f64>,
    /// Sampling rectangle of `gdenom` in the eps-plane
    #[arg(long = "re-min", allow_negative_numbers = true)]
    pub re_min: Option<f64>,
    #[arg(long = "re-max", allow_negative_numbers = true)]
    pub re_max: Option<f64>,
    #[arg(long = "im-min", allow_negative_numbers = true)]
    pub im_min: Option<f64>,
    #[arg(long = "im-max", allow_negative_numbers = true)]
    pub im_max: Option<f64>,
    /// Samples per axis for `gdenom`
    #[arg(long)]
    pub points: Option<usize>,
}

/// Fully resolved, validated request.
#[derive(Debug, Clone)]
pub struct Request {
    pub command: Command,
    pub cfg: Option<ModelConfig>,
    pub index_range: Option<(i64, i64)>,
    pub time_grid: Option<Vec<f64>>,
    pub output_format: Format,
    pub output_path: Option<PathBuf>,
    pub tolerance: Option<f64>,
    pub oracle: bool,
    pub flow_to: Option<f64>,
    pub rect: [f64; 4],
    pub points: usize,
}

const KEYS: &[&str] = &[
    "dim", "F", "lambda", "E_B", "lambda_R", "mu", "n_min", "n_max", "t_max", "t_steps", "format", "out", "oracle",
    "tol", "mu_new", "dmu", "re_min", "re_max", "im_min", "im_max", "points",
];

fn canonical(key: &str) -> Option<&'static str> {
    let alias = match key {
        "field" => "F",
        "eb" | "e_b" => "E_B",
        "lambda_r" | "lambda-r" => "lambda_R",
        other => other,
    };
    let alias = alias.replace('-', "_");
    KEYS.iter().copied().find(|k| *k == alias)
}

/// Parses a flat `key = value` file; `#` starts a comment.
pub fn parse_config_text(text: &str) -> Result<BTreeMap<&'static str, String>, Failure> {
    let mut map = BTreeMap::new();
    for (line_no, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| Failure::config(format!("line {}: expected key = value", line_no + 1)))?;
        let key = canonical(k.trim())
            .ok_or_else(|| Failure::config(format!("line {}: unknown key '{}'", line_no + 1, k.trim())))?;
        if map.insert(key, v.trim().to_string()).is_some() {
            return Err(Failure::config(format!("line {}: '{key}' given twice", line_no + 1)));
        }
    }
    Ok(map)
}

fn read_config(path: &Path) -> Result<BTreeMap<&'static str, String>, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::io(format!("{}: {e}", path.display())))?;
    parse_config_text(&text)
}

fn parsed<T: std::str::FromStr>(file: &BTreeMap<&'static str, String>, key: &str) -> Result<Option<T>, Failure> {
    file.get(key)
        .map(|v| {
            v.parse::<T>()
                .map_err(|_| Failure::config(format!("cannot parse {key} = '{v}'")))
        })
        .transpose()
}

/// Flags take precedence over the file.
pub fn merge(flags: Flags) -> Result<Flags, Failure> {
    let Some(path) = flags.config.clone() else {
        return Ok(flags);
    };
    let file = read_config(&path)?;
    let format = match file.get("format").map(String::as_str) {
        None => None,
        Some(s) => Some(Format::from_str(s, true).map_err(|_| Failure::config(format!("unknown format '{s}'")))?),
    };
    let oracle = parsed::<bool>(&file, "oracle")?.unwrap_or(false);
    Ok(Flags {
        config: flags.config,
        dim: flags.dim.or(parsed(&file, "dim")?),
        field: flags.field.or(parsed(&file, "F")?),
        lambda: flags.lambda.or(parsed(&file, "lambda")?),
        eb: flags.eb.or(parsed(&file, "E_B")?),
        lambda_r: flags.lambda_r.or(parsed(&file, "lambda_R")?),
        mu: flags.mu.or(parsed(&file, "mu")?),
        n_min: flags.n_min.or(parsed(&file, "n_min")?),
        n_max: flags.n_max.or(parsed(&file, "n_max")?),
        t_max: flags.t_max.or(parsed(&file, "t_max")?),
        t_steps: flags.t_steps.or(parsed(&file, "t_steps")?),
        format: flags.format.or(format),
        out: flags.out.or(parsed(&file, "out")?),
        oracle: flags.oracle || oracle,
        tol: flags.tol.or(parsed(&file, "tol")?),
        mu_new: flags.mu_new.or(parsed(&file, "mu_new")?),
        dmu: flags.dmu.or(parsed(&file, "dmu")?),
        re_min: flags.re_min.or(parsed(&file, "re_min")?),
        re_max: flags.re_max.or(parsed(&file, "re_max")?),
        im_min: flags.im_min.or(parsed(&file, "im_min")?),
        im_max: flags.im_max.or(parsed(&file, "im_max")?),
        points: flags.points.or(parsed(&file, "points")?),
    })
}

fn model(f: &Flags) -> Result<ModelConfig, Failure> {
    let dim: Dimension = match f.dim.as_deref() {
        None => return Err(Failure::config("--dim is required for this command")),
        Some(d) => d
            .parse::<u8>()
            .map_err(|_| Failure::config(format!("bad dimension '{d}'")))?
            .try_into()?,
    };
    let field = f
        .field
        .ok_or_else(|| Failure::config("--F is required for this command"))?;
    let given = [
        f.lambda.is_some(),
        f.eb.is_some(),
        f.lambda_r.is_some() || f.mu.is_some(),
    ];
    if given.iter().filter(|g| **g).count() != 1 {
        return Err(Failure::config(
            "give exactly one of --lambda, --eb or --lambda-r with --mu",
        ));
    }
    let binding = if let Some(lambda) = f.lambda {
        Binding::Coupling { lambda }
    } else if let Some(e_b) = f.eb {
        Binding::BoundEnergy { e_b }
    } else {
        match (f.lambda_r, f.mu) {
            (Some(lambda_r), Some(mu)) => Binding::Running { lambda_r, mu },
            _ => return Err(Failure::config("--lambda-r and --mu must be given together")),
        }
    };
    Ok(ModelConfig::new(dim, field, binding)?)
}

impl Request {
    pub fn resolve(command: Command, flags: Flags) -> Result<Request, Failure> {
        let f = merge(flags)?;
        let needs_model = !matches!(command, Command::Fig1 | Command::Fig2 | Command::Selftest);
        let cfg = if needs_model { Some(model(&f)?) } else { None };

        let index_range = match command {
            Command::Poles | Command::Survival => {
                let two_d = cfg.map(|c| c.dimension()) == Some(Dimension::Two);
                let lo = f.n_min.unwrap_or(if two_d { 0 } else { -3 });
                let hi = f.n_max.unwrap_or(9);
                if lo > hi {
                    return Err(Failure::config(format!("--n-min {lo} exceeds --n-max {hi}")));
                }
                Some((lo, hi))
            }
            _ => None,
        };

        let time_grid = if command == Command::Survival {
            let t_max = f.t_max.unwrap_or(10.0);
            let steps = f.t_steps.unwrap_or(200);
            if !(t_max.is_finite() && t_max > 0.0) || steps == 0 {
                return Err(Failure::config("--t-max must be positive and --t-steps at least 1"));
            }
            Some((0..=steps).map(|k| t_max * k as f64 / steps as f64).collect())
        } else {
            None
        };

        let flow_to = if command == Command::Flow {
            let mu = f.mu.ok_or_else(|| Failure::config("flow needs --lambda-r and --mu"))?;
            Some(match (f.mu_new, f.dmu) {
                (Some(m), None) => m,
                (None, Some(d)) => mu + d,
                _ => return Err(Failure::config("flow needs exactly one of --mu-new or --dmu")),
            })
        } else {
            None
        };

        if let Some(t) = f.tol {
            if !(t.is_finite() && t > 0.0) {
                return Err(Failure::config("--tol must be positive"));
            }
        }
        if f.oracle && command != Command::Survival {
            return Err(Failure::config("--oracle applies to the survival command only"));
        }

        let rect = [
            f.re_min.unwrap_or(-12.0),
            f.re_max.unwrap_or(12.0),
            f.im_min.unwrap_or(-3.0),
            f.im_max.unwrap_or(0.5),
        ];
        if !(rect[0] < rect[1] && rect[2] < rect[3]) {
            return Err(Failure::config("empty sampling rectangle"));
        }
        let points = f.points.unwrap_or(49);
        if points < 2 {
            return Err(Failure::config("--points must be at least 2"));
        }

        Ok(Request {
            command,
            cfg,
            index_range,
            time_grid,
            output_format: f.format.unwrap_or(Format::Csv),
            output_path: f.out,
            tolerance: f.tol,
            oracle: f.oracle,
            flow_to,
            rect,
            points,
        })
    }
}
