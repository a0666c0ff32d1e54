use crate::envy::Objective;
use crate::error::{Error, Result};

use super::types::{TypeAllocation, TypeProfile};

/// Default node budget for [`solve_types`].
pub const DEFAULT_NODE_BUDGET: u64 = 5_000_000;

/// Objective value of a type allocation, read off its cells.
pub fn type_objective(profile: &TypeProfile, x: &TypeAllocation, objective: Objective) -> usize {
    objective_of(profile, &x.x, objective)
}

fn objective_of(p: &TypeProfile, x: &[Vec<usize>], objective: Objective) -> usize {
    let cols: Vec<usize> = (0..p.m_star).map(|j| x.iter().map(|r| r[j]).sum()).collect();
    let mut value = 0;
    for i in 0..p.n_star {
        let reach: usize = (0..p.m_star).filter(|&j| p.valued[i][j]).map(|j| cols[j]).sum();
        if reach == 0 {
            continue;
        }
        for j in 0..p.m_star {
            if p.valued[i][j] || x[i][j] == 0 {
                continue;
            }
            match objective {
                Objective::NumEnvious => value += x[i][j],
                Objective::MaxEnvy => value = value.max(reach),
                Objective::TotalEnvy => value += x[i][j] * reach,
            }
        }
    }
    value
}

pub fn solve_types(profile: &TypeProfile, objective: Objective) -> Result<(usize, TypeAllocation)> {
    solve_types_with(profile, objective, DEFAULT_NODE_BUDGET)
}

/// Exact branch and bound over type-allocation matrices.
///
/// Cells are filled row by row, larger values first. Committing more houses
/// never makes an envious cell less envious, so the objective of the
/// committed prefix is a lower bound for every completion.
pub fn solve_types_with(
    profile: &TypeProfile,
    objective: Objective,
    node_budget: u64,
) -> Result<(usize, TypeAllocation)> {
    if profile.n() > profile.m() {
        return Err(Error::InvalidInstance("more agents than houses".into()));
    }
    let mut s = Search {
        p: profile,
        objective,
        x: vec![vec![0; profile.m_star]; profile.n_star],
        left: profile.house_counts.clone(),
        best: None,
        nodes: 0,
        budget: node_budget,
    };
    s.cell(0, 0, profile.agent_counts.first().copied().unwrap_or(0))?;
    let (value, x) = s.best.expect("n ≤ m admits an allocation");
    Ok((value, TypeAllocation { x }))
}

struct Search<'a> {
    p: &'a TypeProfile,
    objective: Objective,
    x: Vec<Vec<usize>>,
    /// Remaining houses per type.
    left: Vec<usize>,
    best: Option<(usize, Vec<Vec<usize>>)>,
    nodes: u64,
    budget: u64,
}

impl Search<'_> {
    fn cell(&mut self, i: usize, j: usize, row_left: usize) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::BudgetExceeded);
        }
        let bound = objective_of(self.p, &self.x, self.objective);
        if self.best.as_ref().is_some_and(|(b, _)| bound >= *b) {
            return Ok(());
        }
        if i == self.p.n_star {
            self.best = Some((bound, self.x.clone()));
            return Ok(());
        }
        if j == self.p.m_star {
            if row_left > 0 {
                return Ok(());
            }
            let next = self.p.agent_counts.get(i + 1).copied().unwrap_or(0);
            return self.cell(i + 1, 0, next);
        }
        // The rest of the row must fit in the remaining columns.
        let room: usize = self.left[j + 1..].iter().sum();
        let hi = row_left.min(self.left[j]);
        let lo = row_left.saturating_sub(room);
        for v in (lo..=hi).rev() {
            self.x[i][j] = v;
            self.left[j] -= v;
            let r = self.cell(i, j + 1, row_left - v);
            self.left[j] += v;
            self.x[i][j] = 0;
            r?;
            if self.best.as_ref().is_some_and(|(b, _)| *b == 0) {
                break;
            }
        }
        Ok(())
    }
}
