use crate::envy::Objective;
use crate::error::{Error, Result};
use crate::extremal::{detect_extremal, solve_extremal};
use crate::ilp::{realize_allocation, solve_types_with, type_profile};
use crate::instance::Instance;
use crate::kernel::{kernelize, lift_allocation, Kernelized};
use crate::special::{is_single_minded, max_house_degree, solve_house_degree_two_oha, solve_single_minded};

use super::{solve_fpt_subsets_with, solve_square, Method, SolveResult, DEFAULT_FPT_MAX_HOUSES};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolveOptions {
    /// Subset enumeration is preferred while C(m′, n′) stays below this.
    pub fpt_subset_budget: u64,
    /// Hard cap on houses for subset enumeration.
    pub fpt_max_houses: usize,
    /// Node budget for the type-matrix branch and bound.
    pub ilp_node_budget: u64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            fpt_subset_budget: 20_000,
            fpt_max_houses: DEFAULT_FPT_MAX_HOUSES,
            ilp_node_budget: 5_000_000,
        }
    }
}

pub fn solve(instance: &Instance, objective: Objective) -> Result<SolveResult> {
    solve_with(instance, objective, &SolveOptions::default())
}

/// Kernelizes and routes the reduced instance to the cheapest exact method
/// that applies, then lifts the answer back.
pub fn solve_with(
    instance: &Instance,
    objective: Objective,
    options: &SolveOptions,
) -> Result<SolveResult> {
    instance.require_binary()?;
    if instance.m() == instance.n() {
        return solve_square(instance, objective);
    }
    let (reduced, trace) = match kernelize(instance)? {
        Kernelized::TrivialYes { allocation, .. } => {
            return SolveResult::evaluate(instance, allocation, objective, Method::Kernel)
        }
        Kernelized::Reduced { instance, trace } => (instance, trace),
    };
    let inner = route(&reduced, objective, options)?;
    let allocation = lift_allocation(&trace, &inner.allocation)?;
    let result = SolveResult::evaluate(instance, allocation, objective, inner.method)?;
    debug_assert_eq!(result.value, inner.value);
    Ok(result)
}

fn route(reduced: &Instance, objective: Objective, options: &SolveOptions) -> Result<SolveResult> {
    let (n, m) = (reduced.n(), reduced.m());
    if n == m {
        return solve_square(reduced, objective);
    }
    if detect_extremal(reduced)?.is_some() {
        return solve_extremal(reduced, objective);
    }
    if is_single_minded(reduced) {
        return solve_single_minded(reduced, objective);
    }
    if objective == Objective::NumEnvious && max_house_degree(reduced) <= 2 {
        return solve_house_degree_two_oha(reduced);
    }
    let fpt = |r: Result<SolveResult>| {
        r.map(|mut s| {
            s.method = Method::KernelFpt;
            s
        })
    };
    if m <= options.fpt_max_houses && binomial(m, n) <= options.fpt_subset_budget {
        return fpt(solve_fpt_subsets_with(reduced, objective, options.fpt_max_houses));
    }
    let profile = type_profile(reduced)?;
    match solve_types_with(&profile, objective, options.ilp_node_budget) {
        Ok((_, x)) => {
            let allocation = realize_allocation(&profile, &x)?;
            SolveResult::evaluate(reduced, allocation, objective, Method::Ilp)
        }
        Err(Error::BudgetExceeded) if m <= options.fpt_max_houses => {
            fpt(solve_fpt_subsets_with(reduced, objective, options.fpt_max_houses))
        }
        Err(Error::BudgetExceeded) => Err(Error::NoApplicableMethod),
        Err(e) => Err(e),
    }
}

fn binomial(m: usize, k: usize) -> u64 {
    let k = k.min(m - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (m - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// Whether the optimum of `objective` is at most `k`.
pub fn decide(instance: &Instance, objective: Objective, k: usize) -> Result<bool> {
    Ok(solve(instance, objective)?.value <= k)
}
