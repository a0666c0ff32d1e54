//! House allocation with binary valuations or rankings: exact minimization of
//! the number of envious agents, the maximum envy and the total envy.

pub mod envy;
pub mod error;
pub mod experiment;
pub mod extremal;
pub mod graph;
pub mod ilp;
pub mod instance;
pub mod kernel;
pub mod matching;
pub mod solvers;
pub mod special;
pub mod welfare;

pub use envy::{envy_report, welfare, EnvyReport, Objective};
pub use error::{Error, Result};
pub use instance::{Allocation, Instance, Profile};
pub use kernel::{kernelize, lift_allocation, KernelTrace, Kernelized};
pub use solvers::{brute_force, decide, solve, solve_with, Method, SolveOptions, SolveResult};
