//! Instances whose valued sets are prefixes or suffixes of one house order.

mod detect;
mod solve;

pub use detect::{detect_extremal, ExtremalDecomposition, Side};
pub use solve::{
    nested_envy, solve_extremal, solve_extremal_detailed, solve_nested, ExtremalSolution,
    NestedSolution, SideOutcome,
};
