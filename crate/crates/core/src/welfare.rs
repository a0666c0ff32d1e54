//! Social welfare and the price of fairness.

use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::envy::{envy_report, welfare, Objective};
use crate::error::{Error, Result};
use crate::graph::preference_graph;
use crate::instance::{Allocation, Instance};
use crate::matching::{augment_from, max_matching, Matching};
use crate::solvers::{oracle_summary, OracleLimits};

/// Welfare-maximizing allocation: a maximum matching, leftovers filled in.
pub fn max_welfare(instance: &Instance) -> Result<(Allocation, usize)> {
    let g = preference_graph(instance)?.to_bipartite();
    let m = max_matching(&g);
    let alloc = Allocation::complete(instance.m(), m.left_mates());
    Ok((alloc, m.size()))
}

/// Welfare ratio between the unconstrained and the fair optimum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PofRatio {
    /// Reduced fraction `num / den`.
    Finite { num: usize, den: usize },
    Infinite,
}

impl PofRatio {
    pub fn new(max_welfare: usize, fair_welfare: usize) -> Self {
        match (max_welfare, fair_welfare) {
            (0, 0) => PofRatio::Finite { num: 1, den: 1 },
            (_, 0) => PofRatio::Infinite,
            (a, b) => {
                let g = gcd(a, b);
                PofRatio::Finite {
                    num: a / g,
                    den: b / g,
                }
            }
        }
    }

    pub fn as_f64(self) -> f64 {
        match self {
            PofRatio::Finite { num, den } => num as f64 / den as f64,
            PofRatio::Infinite => f64::INFINITY,
        }
    }

    pub fn is_one(self) -> bool {
        self == PofRatio::Finite { num: 1, den: 1 }
    }
}

impl fmt::Display for PofRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PofRatio::Finite { num, den: 1 } => write!(f, "{num}"),
            PofRatio::Finite { num, den } => write!(f, "{num}/{den}"),
            PofRatio::Infinite => f.write_str("inf"),
        }
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PofEntry {
    pub objective: Objective,
    /// Optimal value of the objective.
    pub optimum: usize,
    /// Largest welfare among allocations attaining `optimum`.
    pub best_fair_welfare: usize,
    pub ratio: PofRatio,
    pub witness: Allocation,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PofReport {
    pub max_welfare: usize,
    /// One entry per objective, in `Objective::ALL` order.
    pub entries: Vec<PofEntry>,
}

impl PofReport {
    pub fn entry(&self, objective: Objective) -> &PofEntry {
        &self.entries[objective.index()]
    }
}

pub fn pof(instance: &Instance) -> Result<PofReport> {
    pof_with(instance, OracleLimits::default())
}

/// Price of fairness for every objective. Square instances use the
/// simultaneous optimizer; everything else enumerates within `limits`.
pub fn pof_with(instance: &Instance, limits: OracleLimits) -> Result<PofReport> {
    instance.require_binary()?;
    if instance.n() == instance.m() {
        let alloc = simultaneous_optimal_square(instance)?;
        let report = envy_report(instance, &alloc)?;
        let w = welfare(instance, &alloc)?;
        let entries = Objective::ALL
            .iter()
            .map(|&objective| PofEntry {
                objective,
                optimum: report.value(objective),
                best_fair_welfare: w,
                ratio: PofRatio::new(w, w),
                witness: alloc.clone(),
            })
            .collect();
        return Ok(PofReport {
            max_welfare: w,
            entries,
        });
    }
    let summary = oracle_summary(instance, limits)?;
    let max_w = summary.max_welfare.unwrap_or(0);
    let entries = Objective::ALL
        .iter()
        .map(|&objective| {
            let opt = summary.optimum(objective);
            let fair = opt.best_welfare.unwrap_or(0);
            PofEntry {
                objective,
                optimum: opt.value,
                best_fair_welfare: fair,
                ratio: PofRatio::new(max_w, fair),
                witness: opt.best_welfare_allocation.clone(),
            }
        })
        .collect();
    Ok(PofReport {
        max_welfare: max_w,
        entries,
    })
}

/// Output of the square-case construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareConstruction {
    /// Agents sorted by degree, descending, ties by index.
    pub order: Vec<usize>,
    /// Positions in `order` (0-based) of the agents left unmatched.
    pub pivots: Vec<usize>,
    pub allocation: Allocation,
}

/// For m = n: one allocation that is optimal for all three envy objectives
/// and for welfare at the same time.
pub fn simultaneous_optimal_square(instance: &Instance) -> Result<Allocation> {
    square_construction(instance).map(|c| c.allocation)
}

pub fn square_construction(instance: &Instance) -> Result<SquareConstruction> {
    let (n, m) = (instance.n(), instance.m());
    if n != m {
        return Err(Error::NotSquare { n, m });
    }
    let pg = preference_graph(instance)?;
    let g = pg.to_bipartite();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&a| std::cmp::Reverse(pg.agent_degree(a)));
    let mut matching = Matching::empty(n, m);
    let mut pivots = Vec::new();
    // The kept prefix is always saturated, so an augmenting path from the
    // next agent exists exactly when the enlarged set can be saturated.
    for (pos, &a) in order.iter().enumerate() {
        if !augment_from(&g, &mut matching, a) {
            pivots.push(pos);
        }
    }
    let allocation = Allocation::complete(m, matching.left_mates());
    Ok(SquareConstruction {
        order,
        pivots,
        allocation,
    })
}

/// The family with welfare ratio (k + 2) / 2: 2k agents, 3k houses; agent 0
/// values houses 0..k, agent 1 values k..2k, everyone else values 2k..3k.
pub fn pof_lower_bound_instance(k: usize) -> Result<Instance> {
    if k < 3 {
        return Err(Error::Precondition(format!("family starts at 3, got {k}")));
    }
    let mut sets = vec![(0..k).collect::<Vec<_>>(), (k..2 * k).collect()];
    sets.extend(std::iter::repeat_n((2 * k..3 * k).collect::<Vec<_>>(), 2 * k - 2));
    Instance::from_valued_sets(3 * k, &sets)
}

/// Random binary instance where every agent values `row_degree` houses and
/// every house has `col_degree` fans.
pub fn gen_doubly_normalized(
    n: usize,
    m: usize,
    row_degree: usize,
    col_degree: usize,
    seed: u64,
) -> Result<Instance> {
    if n * row_degree != m * col_degree || row_degree > m || col_degree > n || n > m {
        return Err(Error::Precondition(format!(
            "no {n}x{m} matrix with row sums {row_degree} and column sums {col_degree}"
        )));
    }
    // Wrapping consecutive runs around the houses gives a biregular start.
    let mut matrix = vec![vec![false; m]; n];
    for (a, row) in matrix.iter_mut().enumerate() {
        for t in 0..row_degree {
            row[(a * row_degree + t) % m] = true;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (0..m).map(move |h| (a, h)))
        .filter(|&(a, h)| matrix[a][h])
        .collect();
    edges.shuffle(&mut rng);
    for _ in 0..10 * edges.len() {
        let e1 = rng.random_range(0..edges.len());
        let e2 = rng.random_range(0..edges.len());
        let ((a1, h1), (a2, h2)) = (edges[e1], edges[e2]);
        if a1 == a2 || h1 == h2 || matrix[a1][h2] || matrix[a2][h1] {
            continue;
        }
        matrix[a1][h1] = false;
        matrix[a2][h2] = false;
        matrix[a1][h2] = true;
        matrix[a2][h1] = true;
        edges[e1] = (a1, h2);
        edges[e2] = (a2, h1);
    }
    Instance::binary(m, matrix)
}
