use itertools::Itertools;

use crate::envy::Objective;
use crate::error::{Error, Result};
use crate::instance::{Allocation, Instance};

use super::{solve_square, Method, SolveResult};

pub const DEFAULT_FPT_MAX_HOUSES: usize = 22;

/// Guesses the set of allocated houses and solves each guess as a square instance.
///
/// Envy only ever refers to allocated houses, so restricting the instance to
/// the guessed set loses nothing. Ties go to the lexicographically smallest set.
pub fn solve_fpt_subsets(instance: &Instance, objective: Objective) -> Result<SolveResult> {
    solve_fpt_subsets_with(instance, objective, DEFAULT_FPT_MAX_HOUSES)
}

pub fn solve_fpt_subsets_with(
    instance: &Instance,
    objective: Objective,
    max_houses: usize,
) -> Result<SolveResult> {
    let (n, m) = (instance.n(), instance.m());
    if m > max_houses {
        return Err(Error::TooLarge(format!(
            "subset enumeration capped at {max_houses} houses, instance has {m}"
        )));
    }
    let agents: Vec<usize> = (0..n).collect();
    let mut best: Option<(usize, Allocation)> = None;
    for subset in (0..m).combinations(n) {
        let sub = instance.restrict(&agents, &subset)?;
        let r = solve_square(&sub, objective)?;
        if best.as_ref().is_none_or(|(v, _)| r.value < *v) {
            let alloc = Allocation::new(r.allocation.houses().iter().map(|&j| subset[j]).collect());
            let done = r.value == 0;
            best = Some((r.value, alloc));
            if done {
                break;
            }
        }
    }
    let (_, allocation) = best.expect("m >= n yields at least one subset");
    SolveResult::evaluate(instance, allocation, objective, Method::Fpt)
}
