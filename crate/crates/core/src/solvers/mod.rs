//! Exact solvers and the method dispatcher.

mod dispatch;
mod envy_free;
mod fpt;
mod oracle;
mod square;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use crate::envy::Objective;
pub use dispatch::{decide, solve, solve_with, SolveOptions};
pub use envy_free::envy_free_allocation;
pub use fpt::{solve_fpt_subsets, solve_fpt_subsets_with, DEFAULT_FPT_MAX_HOUSES};
pub use oracle::{
    brute_force, brute_force_with, for_each_allocation, oracle_summary, ObjectiveOptimum,
    OracleLimits, OracleSummary,
};
pub use square::solve_square;

use crate::envy::envy_report;
use crate::error::Result;
use crate::instance::{Allocation, Instance};

/// Which algorithm produced a result.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Method {
    Square,
    /// Kernelization alone settled the instance (enough dummy houses).
    Kernel,
    /// Subset enumeration without prior kernelization.
    Fpt,
    KernelFpt,
    Extremal,
    SingleMinded,
    Degree2,
    Ilp,
    Oracle,
}

impl Method {
    pub fn tag(self) -> &'static str {
        match self {
            Method::Square => "square",
            Method::Kernel => "kernel",
            Method::Fpt => "fpt",
            Method::KernelFpt => "kernel+fpt",
            Method::Extremal => "extremal",
            Method::SingleMinded => "single_minded",
            Method::Degree2 => "degree2",
            Method::Ilp => "ilp",
            Method::Oracle => "oracle",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveResult {
    pub allocation: Allocation,
    pub value: usize,
    pub method: Method,
}

impl SolveResult {
    /// Wraps an allocation, reading the objective value off its envy report.
    pub fn evaluate(
        instance: &Instance,
        allocation: Allocation,
        objective: Objective,
        method: Method,
    ) -> Result<SolveResult> {
        let value = envy_report(instance, &allocation)?.value(objective);
        Ok(SolveResult {
            allocation,
            value,
            method,
        })
    }
}
