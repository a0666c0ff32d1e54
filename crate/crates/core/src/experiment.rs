//! Random instance generation and the batch experiment runner.
//!
//! Randomness comes from `ChaCha8Rng`, which produces the same stream on
//! every platform. Trial `t` of a run with base seed `s` uses seed `s + t`.

use std::collections::HashSet;
use std::io::Write;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::envy::{envy_report, welfare, Objective};
use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::solvers::solve;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProfileKind {
    #[default]
    Binary,
    Strict,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenConfig {
    pub n: usize,
    pub m: usize,
    /// Number of distinct agent types.
    pub n_star: usize,
    pub seed: u64,
    #[serde(default)]
    pub kind: ProfileKind,
}

/// Draws `n_star` distinct agent types uniformly and deals them to agents
/// round-robin. Binary types are nonzero valuation vectors; strict types
/// are permutations of the houses.
pub fn generate(config: &GenConfig) -> Result<Instance> {
    let GenConfig {
        n, m, n_star, seed, ..
    } = *config;
    if n_star == 0 || n_star > n {
        return Err(Error::Precondition(format!("need 1 <= n_star <= n, got n_star = {n_star}")));
    }
    if m < n {
        return Err(Error::Precondition(format!("need m >= n, got n = {n}, m = {m}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match config.kind {
        ProfileKind::Binary => {
            if m < 64 && n_star as u64 > (1u64 << m) - 1 {
                return Err(Error::Precondition(format!(
                    "only {} distinct nonzero vectors of length {m}",
                    (1u64 << m) - 1
                )));
            }
            let mut seen = HashSet::new();
            let mut types: Vec<Vec<bool>> = Vec::with_capacity(n_star);
            while types.len() < n_star {
                let row: Vec<bool> = (0..m).map(|_| rng.random_bool(0.5)).collect();
                if row.iter().any(|&b| b) && seen.insert(row.clone()) {
                    types.push(row);
                }
            }
            let matrix = (0..n).map(|a| types[a % n_star].clone()).collect();
            Instance::binary(m, matrix)
        }
        ProfileKind::Strict => {
            if (1..=m).try_fold(1usize, |acc, k| acc.checked_mul(k)).is_some_and(|f| n_star > f) {
                return Err(Error::Precondition(format!(
                    "fewer than {n_star} rankings of {m} houses"
                )));
            }
            let mut seen = HashSet::new();
            let mut types: Vec<Vec<usize>> = Vec::with_capacity(n_star);
            while types.len() < n_star {
                let mut perm: Vec<usize> = (0..m).collect();
                perm.shuffle(&mut rng);
                if seen.insert(perm.clone()) {
                    types.push(perm);
                }
            }
            let rankings = (0..n).map(|a| types[a % n_star].clone()).collect();
            Instance::strict(m, rankings)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridPoint {
    pub n: usize,
    pub m: usize,
    pub n_star: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentRow {
    pub n: usize,
    pub m: usize,
    pub n_star: usize,
    pub trial: usize,
    pub objective: String,
    pub kappa_num: usize,
    pub kappa_max: usize,
    pub kappa_total: usize,
    pub welfare: usize,
    pub time_ms: f64,
    pub method: String,
}

fn run_trial(point: GridPoint, trial: usize, base_seed: u64) -> Result<Vec<ExperimentRow>> {
    let inst = generate(&GenConfig {
        n: point.n,
        m: point.m,
        n_star: point.n_star,
        seed: base_seed.wrapping_add(trial as u64),
        kind: ProfileKind::Binary,
    })?;
    Objective::ALL
        .iter()
        .map(|&objective| {
            let start = Instant::now();
            let res = solve(&inst, objective)?;
            let time_ms = start.elapsed().as_secs_f64() * 1e3;
            let report = envy_report(&inst, &res.allocation)?;
            Ok(ExperimentRow {
                n: point.n,
                m: point.m,
                n_star: point.n_star,
                trial,
                objective: objective.short_name().to_string(),
                kappa_num: report.num_envious,
                kappa_max: report.max_envy,
                kappa_total: report.total_envy,
                welfare: welfare(&inst, &res.allocation)?,
                time_ms,
                method: res.method.tag().to_string(),
            })
        })
        .collect()
}

/// One row per (grid point, trial, objective), in that order.
pub fn run_experiment(
    grid: &[GridPoint],
    trials: usize,
    base_seed: u64,
    parallel: bool,
) -> Result<Vec<ExperimentRow>> {
    let jobs: Vec<(GridPoint, usize)> = grid
        .iter()
        .flat_map(|&p| (0..trials).map(move |t| (p, t)))
        .collect();
    let chunks: Vec<Result<Vec<ExperimentRow>>> = if parallel {
        jobs.par_iter()
            .map(|&(p, t)| run_trial(p, t, base_seed))
            .collect()
    } else {
        jobs.iter().map(|&(p, t)| run_trial(p, t, base_seed)).collect()
    };
    let mut rows = Vec::with_capacity(jobs.len() * 3);
    for c in chunks {
        rows.extend(c?);
    }
    Ok(rows)
}

pub const CSV_HEADER: [&str; 11] = [
    "n",
    "m",
    "n_star",
    "trial",
    "objective",
    "kappa_num",
    "kappa_max",
    "kappa_total",
    "welfare",
    "time_ms",
    "method",
];

/// Writes rows as CSV; the header is written even when `rows` is empty.
pub fn write_csv<W: Write>(out: W, rows: &[ExperimentRow]) -> Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    let io = |e: csv::Error| Error::Io(e.to_string());
    w.write_record(CSV_HEADER).map_err(io)?;
    for r in rows {
        w.serialize(r).map_err(io)?;
    }
    w.flush().map_err(|e| Error::Io(e.to_string()))
}

/// Mean of `f` over the rows matching `point` and `objective`.
pub fn mean_by(
    rows: &[ExperimentRow],
    point: GridPoint,
    objective: Objective,
    f: impl Fn(&ExperimentRow) -> usize,
) -> Option<f64> {
    let sel: Vec<usize> = rows
        .iter()
        .filter(|r| {
            r.n == point.n
                && r.m == point.m
                && r.n_star == point.n_star
                && r.objective == objective.short_name()
        })
        .map(f)
        .collect();
    if sel.is_empty() {
        None
    } else {
        Some(sel.iter().sum::<usize>() as f64 / sel.len() as f64)
    }
}
