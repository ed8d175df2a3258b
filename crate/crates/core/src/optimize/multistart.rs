use std::f64::consts::PI;

use rand::Rng;
use rayon::prelude::*;

use super::config::OptimizationConfig;
use super::nelder_mead::{minimize, Minimum};

/// Coordinate step of the stationarity probes.
pub const PROBE_STEP: f64 = 1e-5;
/// A probe may improve on the optimum by at most this much.
pub const STATIONARITY_TOL: f64 = 1e-7;
const POLISH_ROUNDS: usize = 8;

pub(crate) struct Run {
    pub min: Minimum,
    pub probe_gain: f64,
    pub converged: bool,
}

/// Simplex descent from `x0`, then coordinate probes; any improving probe
/// restarts the descent from there.
fn polish<F: Fn(&[f64]) -> f64>(f: &F, x0: &[f64], cfg: &OptimizationConfig) -> Run {
    let mut min = minimize(f, x0, cfg.simplex());
    let mut evaluations = min.evaluations;
    let mut converged = min.converged;
    let mut round = 0;
    let probe_gain = loop {
        let (gain, best) = probe(f, &min.x, min.value);
        evaluations += 2 * min.x.len();
        match best {
            Some((x, _)) if gain > 0.0 && round < POLISH_ROUNDS => {
                round += 1;
                min = minimize(f, &x, cfg.simplex());
                evaluations += min.evaluations;
                converged = min.converged;
            }
            _ => break gain,
        }
    };
    min.evaluations = evaluations;
    Run {
        converged: converged && probe_gain < STATIONARITY_TOL,
        min,
        probe_gain,
    }
}

/// Best of the `2n` coordinate probes around `x` (minimization); the gain is
/// `value - best_probe`, so positive means a probe improves.
fn probe<F: Fn(&[f64]) -> f64>(f: &F, x: &[f64], value: f64) -> (f64, Option<(Vec<f64>, f64)>) {
    let mut best: Option<(Vec<f64>, f64)> = None;
    for i in 0..x.len() {
        for s in [PROBE_STEP, -PROBE_STEP] {
            let mut y = x.to_vec();
            y[i] += s;
            let v = f(&y);
            if best.as_ref().is_none_or(|(_, b)| v < *b) {
                best = Some((y, v));
            }
        }
    }
    match best {
        Some((y, v)) => (value - v, Some((y, v))),
        None => (f64::NEG_INFINITY, None),
    }
}

/// Multi-start search over a gauge, seeded with `seeds` followed by uniform
/// random phases; restarts run in parallel and are reduced by (value, index).
pub(crate) fn search<F: Fn(&[f64]) -> f64 + Sync>(
    f: &F,
    dim: usize,
    seeds: &[Vec<f64>],
    cfg: &OptimizationConfig,
) -> (usize, Run, usize) {
    let total = cfg.restarts.max(seeds.len());
    let runs: Vec<Run> = (0..total)
        .into_par_iter()
        .map(|r| {
            let x0 = match seeds.get(r) {
                Some(s) => s.clone(),
                None => {
                    let mut rng = cfg.rng(r as u64);
                    (0..dim).map(|_| rng.random_range(-PI..PI)).collect()
                }
            };
            polish(f, &x0, cfg)
        })
        .collect();
    let evaluations = runs.iter().map(|r| r.min.evaluations).sum();
    let (idx, best) = runs
        .into_iter()
        .enumerate()
        .reduce(|a, b| if b.1.min.value < a.1.min.value { b } else { a })
        .expect("at least one restart");
    (idx, best, evaluations)
}

