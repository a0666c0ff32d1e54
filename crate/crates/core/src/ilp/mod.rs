//! Agent and house types, integer models over type counts, an exact search
//! over type-allocation matrices, and LP export.

mod lp;
mod model;
mod search;
mod types;

pub use lp::export_lp;
pub use model::{
    build_p1, build_p2, build_total_envy, derive_solution, Constraint, ILPModel, ModelKind, Sense,
    VarKind, Variable,
};
pub use search::{solve_types, solve_types_with, type_objective, DEFAULT_NODE_BUDGET};
pub use types::{realize_allocation, type_profile, TypeAllocation, TypeProfile};
