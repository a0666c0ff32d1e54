use crate::envy::Objective;
use crate::error::{Error, Result};
use crate::instance::{Allocation, Instance, Profile};
use crate::matching::{
    matching_saturating, max_matching, min_cost_assignment, BipartiteGraph, CostMatrix, Matching,
};

use super::{Method, SolveResult};

/// Optimum when every house must be allocated (m = n).
///
/// Binary profiles support all objectives. Rankings: the number of envious
/// agents works for weak orders through the top-group graph; maximum and
/// total envy need strict orders, where an agent's envy equals her house's
/// rank minus one.
pub fn solve_square(instance: &Instance, objective: Objective) -> Result<SolveResult> {
    let (n, m) = (instance.n(), instance.m());
    if n != m {
        return Err(Error::NotSquare { n, m });
    }
    let allocation = match (instance.profile(), objective) {
        (_, Objective::NumEnvious) => {
            let g = level_graph(instance, 0);
            from_matching(m, &max_matching(&g))
        }
        (Profile::Binary(_), Objective::MaxEnvy) => {
            let g = level_graph(instance, 0);
            let degree: Vec<usize> = (0..n).map(|a| g.neighbors(a).len()).collect();
            (0..=n)
                .find_map(|k| {
                    let needy: Vec<usize> = (0..n).filter(|&a| degree[a] > k).collect();
                    matching_saturating(&g, &needy).map(|mm| from_matching(m, &mm))
                })
                .expect("k = n always succeeds")
        }
        (Profile::Binary(_), Objective::TotalEnvy) => {
            let degree: Vec<u64> = (0..n)
                .map(|a| (0..m).filter(|&h| instance.values(a, h)).count() as u64)
                .collect();
            let costs = CostMatrix::from_fn(n, m, |a, h| {
                Some(if instance.values(a, h) { 0 } else { degree[a] })
            });
            Allocation::new(min_cost_assignment(&costs)?.columns())
        }
        (Profile::Strict(_), Objective::MaxEnvy) => (0..n as u32)
            .find_map(|k| {
                let g = level_graph(instance, k);
                let mm = max_matching(&g);
                (mm.size() == n).then(|| from_matching(m, &mm))
            })
            .unwrap_or_else(|| Allocation::new((0..n).collect())),
        (Profile::Strict(_), Objective::TotalEnvy) => {
            let costs = CostMatrix::from_fn(n, m, |a, h| Some(instance.level(a, h) as u64));
            Allocation::new(min_cost_assignment(&costs)?.columns())
        }
        (Profile::Weak(_), _) => {
            return Err(Error::Unsupported(format!(
                "{objective} on weak rankings in the square case"
            )))
        }
    };
    SolveResult::evaluate(instance, allocation, objective, Method::Square)
}

/// Edges from each agent to the houses of level at most `k`.
fn level_graph(instance: &Instance, k: u32) -> BipartiteGraph {
    let adj = (0..instance.n())
        .map(|a| (0..instance.m()).filter(|&h| instance.level(a, h) <= k).collect())
        .collect();
    BipartiteGraph::new(instance.m(), adj)
}

fn from_matching(m: usize, mm: &Matching) -> Allocation {
    Allocation::complete(m, mm.left_mates())
}
