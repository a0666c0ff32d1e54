//! Polynomial algorithms for extremal instances.
//!
//! Each side is handled as a nested instance: agents `0..k` sorted so that
//! agent `a` values exactly the positions `0..prefix[a]`, with
//! `prefix` non-decreasing, over `positions` houses in a line.

use crate::envy::{envy_report, Objective};
use crate::error::{Error, Result};
use crate::instance::{Allocation, Instance};
use crate::kernel::{expansion_step, kernelize, lift_through, KernelTrace, Kernelized};
use crate::matching::{matching_saturating, max_matching, min_cost_assignment, BipartiteGraph, CostMatrix};
use crate::solvers::{envy_free_allocation, Method, SolveResult};

use super::detect::{detect_extremal, ExtremalDecomposition};

/// Solution of one nested side: `assignment[a]` is the position of agent `a`'s house.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NestedSolution {
    pub value: usize,
    pub assignment: Vec<usize>,
}

/// Per-agent envy in a nested instance.
pub fn nested_envy(prefix: &[usize], assignment: &[usize]) -> Vec<usize> {
    prefix
        .iter()
        .zip(assignment)
        .map(|(&len, &own)| {
            if own < len {
                0
            } else {
                assignment.iter().filter(|&&p| p < len).count()
            }
        })
        .collect()
}

fn nested_value(prefix: &[usize], assignment: &[usize], objective: Objective) -> usize {
    let envy = nested_envy(prefix, assignment);
    match objective {
        Objective::NumEnvious => envy.iter().filter(|&&e| e > 0).count(),
        Objective::MaxEnvy => envy.iter().copied().max().unwrap_or(0),
        Objective::TotalEnvy => envy.iter().sum(),
    }
}

fn check_nested(prefix: &[usize], positions: usize) -> Result<()> {
    if prefix.windows(2).any(|w| w[0] > w[1]) || prefix.iter().any(|&p| p > positions) {
        return Err(Error::Precondition("prefix lengths must be nested".into()));
    }
    if prefix.len() > positions {
        return Err(Error::Precondition("more agents than positions".into()));
    }
    Ok(())
}

/// Exact optimum of a nested instance.
pub fn solve_nested(prefix: &[usize], positions: usize, objective: Objective) -> Result<NestedSolution> {
    check_nested(prefix, positions)?;
    let assignment = match objective {
        Objective::NumEnvious => nested_oha(prefix, positions),
        Objective::MaxEnvy => nested_eha(prefix, positions)?,
        Objective::TotalEnvy => nested_uha(prefix, positions)?,
    };
    Ok(NestedSolution {
        value: nested_value(prefix, &assignment, objective),
        assignment,
    })
}

/// Some optimal allocation uses a contiguous window of positions; try them all.
fn nested_oha(prefix: &[usize], positions: usize) -> Vec<usize> {
    let k = prefix.len();
    let mut best: Option<(usize, Vec<usize>)> = None;
    for start in 0..=positions - k {
        let adj = prefix
            .iter()
            .map(|&len| (start..len.min(start + k)).map(|p| p - start).collect())
            .collect();
        let g = BipartiteGraph::new(k, adj);
        let mm = max_matching(&g);
        let local = Allocation::complete(k, mm.left_mates());
        let assignment: Vec<usize> = local.houses().iter().map(|&p| p + start).collect();
        let value = nested_value(prefix, &assignment, Objective::NumEnvious);
        if best.as_ref().is_none_or(|(v, _)| value < *v) {
            best = Some((value, assignment));
        }
    }
    best.map(|(_, a)| a).unwrap_or_default()
}

/// Tries to make agents `l..` envy-free by valued positions while handing out
/// at most `i` positions of `0..w` (`w` is the prefix of agent `l - 1`).
///
/// Agents after `l` value all of `0..w`, and agents up to `l` may take
/// anything, so positions inside `0..w` are interchangeable: only their count
/// matters, and the first `i` of them stand in for any choice.
fn nested_eha_attempt(prefix: &[usize], positions: usize, l: usize, i: usize) -> Option<Vec<usize>> {
    let k = prefix.len();
    let w = if l == 0 { 0 } else { prefix[l - 1] };
    let i = i.min(w);
    if positions - w + i < k {
        return None;
    }
    let served: Vec<usize> = (l..k).collect();
    let adj = (0..k)
        .map(|a| {
            if a < l {
                Vec::new()
            } else {
                (0..i).chain(w..prefix[a]).collect()
            }
        })
        .collect();
    let g = BipartiteGraph::new(positions, adj);
    let mm = matching_saturating(&g, &served)?;
    let mut used = vec![false; positions];
    let mut assignment = vec![usize::MAX; k];
    for a in l..k {
        let p = mm.mate_of_left(a).expect("saturated");
        assignment[a] = p;
        used[p] = true;
    }
    let mut free = (w..positions).chain(0..i).filter(|&p| !used[p]);
    for slot in assignment.iter_mut().take(l) {
        *slot = free.next()?;
    }
    Some(assignment)
}

fn nested_eha(prefix: &[usize], positions: usize) -> Result<Vec<usize>> {
    let k = prefix.len();
    let local = Instance::from_valued_sets(
        positions,
        &prefix.iter().map(|&len| (0..len).collect()).collect::<Vec<_>>(),
    )?;
    if let Some(alloc) = envy_free_allocation(&local)? {
        return Ok(alloc.into_inner());
    }
    let top = prefix.last().copied().unwrap_or(0);
    for bound in 0..=top {
        for l in 0..=k {
            if let Some(assignment) = nested_eha_attempt(prefix, positions, l, bound) {
                return Ok(assignment);
            }
        }
    }
    Err(Error::Precondition("no feasible envy bound found".into()))
}

/// The first `t` agents are left unserved and must hold houses none of them
/// values; the rest hold valued houses and pay for the unserved agents who
/// value the same house.
fn nested_uha(prefix: &[usize], positions: usize) -> Result<Vec<usize>> {
    let k = prefix.len();
    let mut best: Option<(u64, Vec<usize>)> = None;
    for t in 0..=k {
        let unserved_fans = |p: usize| prefix[..t].iter().filter(|&&len| p < len).count() as u64;
        let costs = CostMatrix::from_fn(k, positions, |a, p| {
            let fans = unserved_fans(p);
            if a < t {
                (fans == 0).then_some(0)
            } else {
                (p < prefix[a]).then_some(fans)
            }
        });
        let asg = min_cost_assignment(&costs)?;
        if asg.is_feasible() && best.as_ref().is_none_or(|(c, _)| asg.cost < *c) {
            best = Some((asg.cost, asg.columns()));
        }
    }
    best.map(|(_, a)| a)
        .ok_or_else(|| Error::Precondition("no feasible threshold".into()))
}

/// One side of the final solution, in indices of the reduced instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SideOutcome {
    /// Agents in nested order.
    pub agents: Vec<usize>,
    /// Houses in line order: the side's valued houses, then its share of dummies.
    pub houses: Vec<usize>,
    pub prefix: Vec<usize>,
    pub solution: NestedSolution,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtremalSolution {
    pub result: SolveResult,
    /// Instance the sides refer to (after all reductions).
    pub reduced: Instance,
    pub sides: Vec<SideOutcome>,
    pub split: Option<(usize, usize)>,
}

pub fn solve_extremal(instance: &Instance, objective: Objective) -> Result<SolveResult> {
    solve_extremal_detailed(instance, objective).map(|s| s.result)
}

/// Kernelizes, removes expansions from any side with enough valued houses
/// for its agents, then tries every split of the dummy houses between sides.
pub fn solve_extremal_detailed(instance: &Instance, objective: Objective) -> Result<ExtremalSolution> {
    instance.require_binary()?;
    let mut traces: Vec<KernelTrace> = Vec::new();
    let mut current = instance.clone();
    let dec = loop {
        match kernelize(&current)? {
            Kernelized::TrivialYes { trace, .. } => {
                traces.push(trace);
                let reduced = Instance::from_valued_sets(0, &[])?;
                let lifted = lift_through(&traces, &Allocation::new(Vec::new()))?;
                return Ok(ExtremalSolution {
                    result: SolveResult::evaluate(instance, lifted, objective, Method::Extremal)?,
                    reduced,
                    sides: Vec::new(),
                    split: None,
                });
            }
            Kernelized::Reduced { instance: r, trace } => {
                traces.push(trace);
                current = r;
            }
        }
        let dec = detect_extremal(&current)?.ok_or(Error::NotExtremal)?;
        let crowded = [
            (&dec.left_agents, &dec.left_houses),
            (&dec.right_agents, &dec.right_houses),
        ]
        .into_iter()
        .find(|(agents, houses)| !agents.is_empty() && houses.len() >= agents.len());
        match crowded {
            Some((agents, houses)) => {
                let (r, trace) = expansion_step(&current, agents, houses)?;
                traces.push(trace);
                current = r;
            }
            None => break dec,
        }
    };

    let (best, split, sides) = solve_splits(&current, &dec, objective)?;
    let lifted = lift_through(&traces, &best)?;
    let result = SolveResult::evaluate(instance, lifted, objective, Method::Extremal)?;
    Ok(ExtremalSolution {
        result,
        reduced: current,
        sides,
        split: Some(split),
    })
}

fn side_prefix(instance: &Instance, agents: &[usize]) -> Vec<usize> {
    agents
        .iter()
        .map(|&a| instance.valued_houses(a).len())
        .collect()
}

type SplitChoice = (Allocation, (usize, usize), Vec<SideOutcome>);

fn solve_splits(
    instance: &Instance,
    dec: &ExtremalDecomposition,
    objective: Objective,
) -> Result<SplitChoice> {
    let d = dec.dummy_houses.len();
    let left_prefix = side_prefix(instance, &dec.left_agents);
    let right_prefix = side_prefix(instance, &dec.right_agents);
    let right_line: Vec<usize> = dec.right_houses.iter().rev().copied().collect();

    let mut best: Option<(usize, SplitChoice)> = None;
    for n_left in 0..=d {
        let n_right = d - n_left;
        if dec.left_houses.len() + n_left < dec.left_agents.len()
            || dec.right_houses.len() + n_right < dec.right_agents.len()
        {
            continue;
        }
        let left_line: Vec<usize> = dec
            .left_houses
            .iter()
            .chain(&dec.dummy_houses[..n_left])
            .copied()
            .collect();
        let right_full: Vec<usize> = right_line
            .iter()
            .chain(&dec.dummy_houses[n_left..])
            .copied()
            .collect();
        let ls = solve_nested(&left_prefix, left_line.len(), objective)?;
        let rs = solve_nested(&right_prefix, right_full.len(), objective)?;
        let value = match objective {
            Objective::MaxEnvy => ls.value.max(rs.value),
            _ => ls.value + rs.value,
        };
        if best.as_ref().is_some_and(|(v, _)| *v <= value) {
            continue;
        }
        let mut assignment = vec![usize::MAX; instance.n()];
        for (side_agents, line, sol) in [
            (&dec.left_agents, &left_line, &ls),
            (&dec.right_agents, &right_full, &rs),
        ] {
            for (idx, &a) in side_agents.iter().enumerate() {
                assignment[a] = line[sol.assignment[idx]];
            }
        }
        let alloc = Allocation::new(assignment);
        debug_assert_eq!(envy_report(instance, &alloc)?.value(objective), value);
        let sides = vec![
            SideOutcome {
                agents: dec.left_agents.clone(),
                houses: left_line,
                prefix: left_prefix.clone(),
                solution: ls,
            },
            SideOutcome {
                agents: dec.right_agents.clone(),
                houses: right_full,
                prefix: right_prefix.clone(),
                solution: rs,
            },
        ];
        best = Some((value, (alloc, (n_left, n_right), sides)));
    }
    best.map(|(_, c)| c)
        .ok_or_else(|| Error::Precondition("no feasible dummy split".into()))
}
