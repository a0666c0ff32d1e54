//! Exhaustive enumeration of allocations.
//!
//! Houses that every agent ranks identically are interchangeable, so only one
//! representative per class arrangement is visited: within a class, houses
//! are always used lowest index first. Envy counts and welfare are invariant
//! under such swaps.

use crate::envy::Objective;
use crate::error::{Error, Result};
use crate::instance::{Allocation, Instance};

use super::{Method, SolveResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleLimits {
    pub max_agents: usize,
    pub max_houses: usize,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits {
            max_agents: 8,
            max_houses: 10,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObjectiveOptimum {
    pub value: usize,
    /// First optimal allocation in enumeration order.
    pub allocation: Allocation,
    /// Largest welfare among optimal allocations (binary profiles).
    pub best_welfare: Option<usize>,
    pub best_welfare_allocation: Allocation,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleSummary {
    /// Indexed by `Objective::index`.
    pub optima: Vec<ObjectiveOptimum>,
    pub max_welfare: Option<usize>,
    /// Number of allocations visited after symmetry reduction.
    pub visited: u64,
}

impl OracleSummary {
    pub fn optimum(&self, objective: Objective) -> &ObjectiveOptimum {
        &self.optima[objective.index()]
    }

    pub fn value(&self, objective: Objective) -> usize {
        self.optimum(objective).value
    }
}

fn check_limits(instance: &Instance, limits: OracleLimits) -> Result<()> {
    if instance.n() > limits.max_agents || instance.m() > limits.max_houses || instance.m() > 64 {
        return Err(Error::TooLarge(format!(
            "oracle limited to n <= {}, m <= {} (got n = {}, m = {})",
            limits.max_agents,
            limits.max_houses.min(64),
            instance.n(),
            instance.m()
        )));
    }
    Ok(())
}

/// Calls `visit(assignment, per_agent_envy, welfare)` once per allocation,
/// up to swaps of interchangeable houses.
pub fn for_each_allocation(
    instance: &Instance,
    limits: OracleLimits,
    mut visit: impl FnMut(&[usize], &[usize], Option<usize>),
) -> Result<()> {
    check_limits(instance, limits)?;
    let (n, m) = (instance.n(), instance.m());

    let mut classes: Vec<Vec<usize>> = Vec::new();
    for h in 0..m {
        match classes
            .iter_mut()
            .find(|c| (0..n).all(|a| instance.level(a, c[0]) == instance.level(a, h)))
        {
            Some(c) => c.push(h),
            None => classes.push(vec![h]),
        }
    }
    // better[a][l]: houses strictly better than level l for agent a.
    let better: Vec<Vec<u64>> = (0..n)
        .map(|a| {
            let top = (0..m).map(|h| instance.level(a, h)).max().unwrap_or(0) as usize;
            (0..=top)
                .map(|l| {
                    (0..m)
                        .filter(|&h| (instance.level(a, h) as usize) < l)
                        .fold(0u64, |acc, h| acc | (1 << h))
                })
                .collect()
        })
        .collect();

    let mut walk = Walk {
        instance,
        classes: &classes,
        better: &better,
        used: vec![0; classes.len()],
        assignment: vec![0; n],
        envy: vec![0; n],
        mask: 0,
        binary: instance.is_binary(),
    };
    walk.run(0, &mut visit);
    Ok(())
}

struct Walk<'a> {
    instance: &'a Instance,
    classes: &'a [Vec<usize>],
    better: &'a [Vec<u64>],
    used: Vec<usize>,
    assignment: Vec<usize>,
    envy: Vec<usize>,
    mask: u64,
    binary: bool,
}

impl Walk<'_> {
    fn run(&mut self, agent: usize, visit: &mut impl FnMut(&[usize], &[usize], Option<usize>)) {
        if agent == self.assignment.len() {
            let mut welfare = 0;
            for a in 0..self.assignment.len() {
                let own = self.instance.level(a, self.assignment[a]) as usize;
                if own == 0 {
                    welfare += 1;
                }
                self.envy[a] = (self.better[a][own] & self.mask).count_ones() as usize;
            }
            visit(&self.assignment, &self.envy, self.binary.then_some(welfare));
            return;
        }
        for c in 0..self.classes.len() {
            let k = self.used[c];
            if k == self.classes[c].len() {
                continue;
            }
            let h = self.classes[c][k];
            self.used[c] += 1;
            self.assignment[agent] = h;
            self.mask |= 1 << h;
            self.run(agent + 1, visit);
            self.mask &= !(1 << h);
            self.used[c] -= 1;
        }
    }
}

/// Optimum of every objective in a single enumeration.
pub fn oracle_summary(instance: &Instance, limits: OracleLimits) -> Result<OracleSummary> {
    let mut best: Vec<Option<ObjectiveOptimum>> = vec![None; 3];
    let mut max_welfare: Option<usize> = None;
    let mut visited = 0u64;
    for_each_allocation(instance, limits, |assignment, envy, welfare| {
        visited += 1;
        if let Some(w) = welfare {
            max_welfare = Some(max_welfare.map_or(w, |b| b.max(w)));
        }
        let num = envy.iter().filter(|&&e| e > 0).count();
        let max = envy.iter().copied().max().unwrap_or(0);
        let total: usize = envy.iter().sum();
        for (slot, value) in best.iter_mut().zip([num, max, total]) {
            match slot {
                Some(cur) if value > cur.value => {}
                Some(cur) if value == cur.value => {
                    if welfare > cur.best_welfare {
                        cur.best_welfare = welfare;
                        cur.best_welfare_allocation = Allocation::new(assignment.to_vec());
                    }
                }
                _ => {
                    let alloc = Allocation::new(assignment.to_vec());
                    *slot = Some(ObjectiveOptimum {
                        value,
                        allocation: alloc.clone(),
                        best_welfare: welfare,
                        best_welfare_allocation: alloc,
                    });
                }
            }
        }
    })?;
    Ok(OracleSummary {
        optima: best
            .into_iter()
            .map(|o| o.expect("m >= n yields at least one allocation"))
            .collect(),
        max_welfare,
        visited,
    })
}

pub fn brute_force(instance: &Instance, objective: Objective) -> Result<SolveResult> {
    brute_force_with(instance, objective, OracleLimits::default())
}

pub fn brute_force_with(
    instance: &Instance,
    objective: Objective,
    limits: OracleLimits,
) -> Result<SolveResult> {
    let summary = oracle_summary(instance, limits)?;
    let opt = summary.optimum(objective);
    Ok(SolveResult {
        allocation: opt.allocation.clone(),
        value: opt.value,
        method: Method::Oracle,
    })
}
