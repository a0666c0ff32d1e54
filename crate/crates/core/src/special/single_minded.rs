use crate::envy::Objective;
use crate::error::{Error, Result};
use crate::instance::{Allocation, Instance};
use crate::kernel::{kernelize, lift_allocation, Kernelized};
use crate::solvers::{envy_free_allocation, Method, SolveResult};

/// True when every agent values exactly one house.
pub fn is_single_minded(instance: &Instance) -> bool {
    instance.is_binary() && (0..instance.n()).all(|a| instance.valued_houses(a).len() == 1)
}

/// Agents who each value a single house.
///
/// For envious-count and total envy, a valued house handed to one of its fans
/// costs (fans − 1) envious agents, each envying exactly one holder. Dummy
/// houses are free, so the cheapest plan serves everyone it can with
/// dummies and allocates the valued houses with the fewest fans for the rest.
/// Maximum envy is 0 when an envy-free allocation exists and 1 otherwise.
pub fn solve_single_minded(instance: &Instance, objective: Objective) -> Result<SolveResult> {
    instance.require_binary()?;
    if let Some(a) = (0..instance.n()).find(|&a| instance.valued_houses(a).len() != 1) {
        return Err(Error::Precondition(format!(
            "agent {a} values {} houses, expected exactly one",
            instance.valued_houses(a).len()
        )));
    }
    if objective == Objective::MaxEnvy {
        if let Some(alloc) = envy_free_allocation(instance)? {
            return SolveResult::evaluate(instance, alloc, objective, Method::SingleMinded);
        }
    }
    let (reduced, trace) = match kernelize(instance)? {
        Kernelized::TrivialYes { allocation, .. } => {
            return SolveResult::evaluate(instance, allocation, objective, Method::SingleMinded)
        }
        Kernelized::Reduced { instance, trace } => (instance, trace),
    };
    let alloc = fewest_fans_first(&reduced);
    let lifted = lift_allocation(&trace, &alloc)?;
    SolveResult::evaluate(instance, lifted, objective, Method::SingleMinded)
}

fn fewest_fans_first(inst: &Instance) -> Allocation {
    let (n, m) = (inst.n(), inst.m());
    let wish: Vec<usize> = (0..n).map(|a| inst.valued_houses(a)[0]).collect();
    let mut fans: Vec<Vec<usize>> = vec![Vec::new(); m];
    for (a, &h) in wish.iter().enumerate() {
        fans[h].push(a);
    }
    let mut out: Vec<Option<usize>> = vec![None; n];

    // Houses with a single fan go to that fan.
    for (h, list) in fans.iter().enumerate() {
        if let [a] = list[..] {
            out[a] = Some(h);
        }
    }
    let dummies: Vec<usize> = (0..m).filter(|&h| fans[h].is_empty()).collect();
    let waiting = out.iter().filter(|o| o.is_none()).count();
    let mut crowded: Vec<usize> = (0..m).filter(|&h| fans[h].len() >= 2).collect();
    crowded.sort_by_key(|&h| (std::cmp::Reverse(fans[h].len()), h));
    let need = waiting.saturating_sub(dummies.len());
    for &h in crowded.iter().rev().take(need) {
        out[fans[h][0]] = Some(h);
    }
    let mut spare = dummies.into_iter();
    for slot in out.iter_mut().filter(|o| o.is_none()) {
        *slot = spare.next();
    }
    Allocation::complete(m, &out)
}
