use crate::error::Result;
use crate::instance::{Allocation, Instance};
use crate::matching::{alternating_reach_from_left, max_matching, BipartiteGraph};

/// An envy-free allocation, if one exists.
///
/// Keeps a pool of houses that may still be allocated. Each round links every
/// agent to her best houses inside the pool. If some matching covers all
/// agents, it is envy-free because nothing outside the pool is handed out.
/// Otherwise the agents reachable by alternating paths from an unmatched agent
/// form a Hall violator, and the houses they point to can never be allocated
/// in an envy-free way, so they leave the pool.
pub fn envy_free_allocation(instance: &Instance) -> Result<Option<Allocation>> {
    let (n, m) = (instance.n(), instance.m());
    let mut pool = vec![true; m];
    let mut remaining = m;
    loop {
        if remaining < n {
            return Ok(None);
        }
        let adj = (0..n)
            .map(|a| {
                let best = (0..m)
                    .filter(|&h| pool[h])
                    .map(|h| instance.level(a, h))
                    .min()
                    .unwrap_or(0);
                (0..m)
                    .filter(|&h| pool[h] && instance.level(a, h) == best)
                    .collect()
            })
            .collect();
        let g = BipartiteGraph::new(m, adj);
        let mm = max_matching(&g);
        let Some(free) = (0..n).find(|&a| mm.mate_of_left(a).is_none()) else {
            return Ok(Some(Allocation::new(
                mm.left_mates().iter().map(|h| h.expect("saturated")).collect(),
            )));
        };
        let (_, reached) = alternating_reach_from_left(&g, &mm, &[free]);
        for h in 0..m {
            if reached[h] {
                pool[h] = false;
                remaining -= 1;
            }
        }
    }
}
