//! Labelled pole sets.
//!
//! eps_0 is identified by continuity with eps_B. The remaining poles split
//! into a branch hugging the positive real axis, numbered 1, 2, ... by
//! increasing real part, and a branch along arg = -2 pi/3, numbered -1, -2,
//! ... by increasing modulus. Labels come from this geometry, not from the
//! seed that happened to converge, and an argument-principle count on a
//! rectangle around the requested poles certifies that none was skipped.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::continuation::track;
use super::newton::{newton, Root};
use super::seeds::{check_range, ground_seed, seed_poles, Seed, WEAK_FIELD_DEPTH};
use super::winding::{count_zeros, Rectangle, ZeroCount};
use super::{Resonance, SeedSource, BASIN_RADIUS};
use crate::error::{Error, Result};
use crate::model::{Dimension, ModelConfig};

/// Roots closer than this are the same pole.
pub const DEDUP_DISTANCE: f64 = 1e-6;
/// Deepest Im eps searched in two dimensions.
pub const MAX_DEPTH_2D: f64 = 2.0;

const PAD: f64 = 0.3;
const TOP_EDGE: f64 = 0.05;
const MAX_ROUNDS: usize = 4;
const MAX_SCAN_SEEDS: f64 = 4000.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PoleSet {
    pub cfg: ModelConfig,
    /// Ordered by index.
    pub resonances: Vec<Resonance>,
    pub index_range: (i64, i64),
    /// Zero count on the rectangle enclosing the requested poles.
    pub contour: ZeroCount,
    /// Located poles inside that rectangle, including unrequested ones.
    pub located_inside: usize,
}

impl PoleSet {
    pub fn get(&self, index: i64) -> Option<&Resonance> {
        self.resonances.iter().find(|r| r.index == index)
    }
}

#[derive(Debug, Clone, Copy)]
struct Found {
    root: Root,
    source: SeedSource,
}

fn unit_model(dim: Dimension, eps_b: f64) -> Result<ModelConfig> {
    ModelConfig::from_eps_b(dim, eps_b, 1.0)
}

/// Solves for eps_0. Away from the weak-field regime the direct seed may land
/// on another branch, so the pole is also tracked in from eps_B = -2 and the
/// tracked root decides.
fn ground_pole(cfg: &ModelConfig, eps_b: f64, seed: Seed) -> Result<Found> {
    let dim = cfg.dimension();
    let direct = newton(seed.eps, cfg, BASIN_RADIUS);
    let (start_b, start) = if -eps_b >= WEAK_FIELD_DEPTH {
        let err = match &direct {
            Ok(root) => {
                return Ok(Found {
                    root: *root,
                    source: seed.source,
                })
            }
            Err(e) => e.clone(),
        };
        let mut deeper = None;
        for k in 1..=4 {
            let b = eps_b * f64::powi(2.0, k);
            let s = ground_seed(dim, b)?;
            if let Ok(r) = newton(s.eps, &unit_model(dim, b)?, BASIN_RADIUS) {
                deeper = Some((b, r.eps));
                break;
            }
        }
        deeper.ok_or(err)?
    } else {
        let b = -WEAK_FIELD_DEPTH;
        let s = ground_seed(dim, b)?;
        (b, newton(s.eps, &unit_model(dim, b)?, BASIN_RADIUS)?.eps)
    };
    let tracked = newton(track(dim, start_b, start, eps_b)?, cfg, BASIN_RADIUS)?;
    Ok(match direct {
        Ok(root) if (root.eps - tracked.eps).norm() <= DEDUP_DISTANCE => Found {
            root,
            source: seed.source,
        },
        _ => Found {
            root: tracked,
            source: SeedSource::Continuation,
        },
    })
}

fn push_unique(pool: &mut Vec<Found>, ground: Complex64, f: Found) -> bool {
    let z = f.root.eps;
    if (z - ground).norm() <= DEDUP_DISTANCE || pool.iter().any(|p| (p.root.eps - z).norm() <= DEDUP_DISTANCE) {
        return false;
    }
    pool.push(f);
    true
}

fn on_real_branch(z: Complex64) -> bool {
    z.arg() > -PI / 3.0
}

/// Index of every pool entry other than eps_0.
fn label(pool: &[Found]) -> Vec<i64> {
    let mut pos: Vec<usize> = (0..pool.len()).filter(|&i| on_real_branch(pool[i].root.eps)).collect();
    let mut neg: Vec<usize> = (0..pool.len()).filter(|&i| !on_real_branch(pool[i].root.eps)).collect();
    pos.sort_by(|&a, &b| pool[a].root.eps.re.total_cmp(&pool[b].root.eps.re));
    neg.sort_by(|&a, &b| pool[a].root.eps.norm().total_cmp(&pool[b].root.eps.norm()));
    let mut labels = vec![0; pool.len()];
    for (k, &i) in pos.iter().enumerate() {
        labels[i] = k as i64 + 1;
    }
    for (k, &i) in neg.iter().enumerate() {
        labels[i] = -(k as i64) - 1;
    }
    labels
}

fn bounding(points: &[Complex64], dim: Dimension) -> Rectangle {
    let mut r = Rectangle {
        re_min: f64::INFINITY,
        re_max: f64::NEG_INFINITY,
        im_min: f64::INFINITY,
        im_max: TOP_EDGE,
    };
    for z in points {
        r.re_min = r.re_min.min(z.re - PAD);
        r.re_max = r.re_max.max(z.re + PAD);
        r.im_min = r.im_min.min(z.im - PAD);
    }
    if dim == Dimension::Two {
        r.im_min = r.im_min.max(-MAX_DEPTH_2D);
    }
    r
}

/// Newton from a grid of seeds covering `rect`.
fn scan(cfg: &ModelConfig, rect: Rectangle) -> Vec<Root> {
    let (w, h) = (rect.re_max - rect.re_min, rect.im_max - rect.im_min);
    let step = (w * h / MAX_SCAN_SEEDS).sqrt().max(0.5);
    let (nx, ny) = ((w / step).ceil() as usize, (h / step).ceil() as usize);
    (0..nx * ny)
        .into_par_iter()
        .filter_map(|k| {
            let (i, j) = (k % nx, k / nx);
            let z = Complex64::new(
                rect.re_min + (i as f64 + 0.5) * w / nx as f64,
                rect.im_min + (j as f64 + 0.5) * h / ny as f64,
            );
            newton(z, cfg, BASIN_RADIUS).ok().filter(|r| rect.contains(r.eps))
        })
        .collect()
}

/// Locates and labels the poles `n_min..=n_max` (a range containing 0).
///
/// Two-dimensional searches are limited to `Im eps >= -2`, which excludes
/// the branch of negative indices.
pub fn enumerate_poles(cfg: &ModelConfig, n_min: i64, n_max: i64) -> Result<PoleSet> {
    check_range(n_min, n_max)?;
    let dim = cfg.dimension();
    if dim == Dimension::Two && n_min < 0 {
        return Err(Error::Domain(format!(
            "two-dimensional poles with negative index lie below Im eps = -{MAX_DEPTH_2D}, outside the search region"
        )));
    }
    let eps_b = cfg.eps_b()?;
    let seeds = seed_poles(cfg, n_min, n_max)?;
    let ground_seed = seeds[(-n_min) as usize];
    let ground = ground_pole(cfg, eps_b, ground_seed).map_err(|e| Error::at_pole(0, e))?;
    let g0 = ground.root.eps;

    let refined: Vec<(Seed, Result<Root>)> = seeds
        .par_iter()
        .filter(|s| s.index != 0)
        .map(|s| (*s, newton(s.eps, cfg, BASIN_RADIUS)))
        .collect();
    let mut pool = Vec::new();
    let mut failures = BTreeMap::new();
    for (s, r) in refined {
        match r {
            Ok(root) => {
                push_unique(&mut pool, g0, Found { root, source: s.source });
            }
            Err(e) => {
                failures.insert(s.index, e);
            }
        }
    }

    let mut last = None;
    for _ in 0..MAX_ROUNDS {
        let labels = label(&pool);
        let mut corners = vec![g0];
        let mut missing = Vec::new();
        for s in seeds.iter().filter(|s| s.index != 0) {
            match labels.iter().position(|&l| l == s.index) {
                Some(i) => corners.push(pool[i].root.eps),
                None => {
                    missing.push(s.index);
                    corners.push(s.eps);
                }
            }
        }
        let rect = bounding(&corners, dim);
        for (l, f) in labels.iter().zip(&pool) {
            if dim == Dimension::Two && (n_min..=n_max).contains(l) && f.root.eps.im < -MAX_DEPTH_2D {
                return Err(Error::at_pole(
                    *l,
                    Error::Domain(format!(
                        "pole at {} is below the two-dimensional search depth",
                        f.root.eps
                    )),
                ));
            }
        }
        let count = count_zeros(cfg, rect)?;
        let inside = 1 + pool.iter().filter(|f| rect.contains(f.root.eps)).count();
        if count.count == inside as i64 && missing.is_empty() {
            let mut resonances = vec![Resonance::new(0, ground.root, cfg, ground.source)];
            for (l, f) in labels.iter().zip(&pool) {
                if *l != 0 && (n_min..=n_max).contains(l) {
                    resonances.push(Resonance::new(*l, f.root, cfg, f.source));
                }
            }
            resonances.sort_by_key(|r| r.index);
            return Ok(PoleSet {
                cfg: *cfg,
                resonances,
                index_range: (n_min, n_max),
                contour: count,
                located_inside: inside,
            });
        }
        if count.count < inside as i64 {
            return Err(Error::MissedPole {
                counted: count.count,
                found: inside,
            });
        }
        last = Some((count.count, inside, missing));
        let mut added = false;
        for root in scan(cfg, rect) {
            added |= push_unique(
                &mut pool,
                g0,
                Found {
                    root,
                    source: SeedSource::Scan,
                },
            );
        }
        if !added {
            break;
        }
    }
    match last {
        Some((_, _, missing)) if !missing.is_empty() => {
            let n = missing[0];
            let cause = failures
                .remove(&n)
                .unwrap_or_else(|| Error::Domain("no pole located for this index".into()));
            Err(Error::at_pole(n, cause))
        }
        Some((counted, found, _)) => Err(Error::MissedPole { counted, found }),
        None => Err(Error::MissedPole { counted: 0, found: 0 }),
    }
}
