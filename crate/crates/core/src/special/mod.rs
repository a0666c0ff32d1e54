//! Polynomial cases: single-minded agents, and houses valued by at most two agents.

mod degree_two;
mod single_minded;

pub use degree_two::{
    max_house_degree, solve_house_degree_two_detailed, solve_house_degree_two_oha,
    ForestDecomposition, ResidualTree,
};
pub use single_minded::{is_single_minded, solve_single_minded};
