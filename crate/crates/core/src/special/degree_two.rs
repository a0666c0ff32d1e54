use crate::envy::Objective;
use crate::error::{Error, Result};
use crate::instance::{Allocation, Instance};
use crate::kernel::{kernelize, lift_allocation, Kernelized};
use crate::solvers::{solve_fpt_subsets, Method, SolveResult};

/// Largest number of agents valuing a single house.
pub fn max_house_degree(instance: &Instance) -> usize {
    (0..instance.m())
        .map(|h| (0..instance.n()).filter(|&a| instance.values(a, h)).count())
        .max()
        .unwrap_or(0)
}

/// A residual tree: agents are its leaves, and it has one more agent than houses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidualTree {
    pub agents: Vec<usize>,
    pub houses: Vec<usize>,
    pub root: usize,
    /// `(agent, house)` for every non-root agent and its parent house.
    pub parent_house: Vec<(usize, usize)>,
}

/// The forest left after degree-one houses and cycles have been allocated,
/// in indices of the kernelized instance, sorted by agent count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForestDecomposition {
    pub trees: Vec<ResidualTree>,
    pub dummy_houses: Vec<usize>,
}

struct Residual<'a> {
    inst: &'a Instance,
    agent_alive: Vec<bool>,
    house_alive: Vec<bool>,
    out: Vec<Option<usize>>,
}

impl Residual<'_> {
    fn fans(&self, h: usize) -> Vec<usize> {
        (0..self.inst.n())
            .filter(|&a| self.agent_alive[a] && self.inst.values(a, h))
            .collect()
    }

    fn wishes(&self, a: usize) -> Vec<usize> {
        (0..self.inst.m())
            .filter(|&h| self.house_alive[h] && self.inst.values(a, h))
            .collect()
    }

    fn give(&mut self, a: usize, h: usize) {
        self.out[a] = Some(h);
        self.agent_alive[a] = false;
        self.house_alive[h] = false;
    }

    /// Houses with one remaining fan go to that fan.
    fn single_fan_pass(&mut self) -> bool {
        let mut changed = false;
        for h in 0..self.inst.m() {
            if !self.house_alive[h] {
                continue;
            }
            if let [a] = self.fans(h)[..] {
                self.give(a, h);
                changed = true;
            }
        }
        changed
    }

    /// Finds a cycle among living vertices as alternating agent/house lists:
    /// house `i` is adjacent to agents `i` and `i + 1` (cyclically).
    fn find_cycle(&self) -> Option<(Vec<usize>, Vec<usize>)> {
        let (n, m) = (self.inst.n(), self.inst.m());
        // Vertices: agents 0..n, houses n..n+m.
        let nbrs = |v: usize| -> Vec<usize> {
            if v < n {
                self.wishes(v).into_iter().map(|h| n + h).collect()
            } else {
                self.fans(v - n)
            }
        };
        let alive = |v: usize| if v < n { self.agent_alive[v] } else { self.house_alive[v - n] };
        let mut parent = vec![usize::MAX; n + m];
        let mut depth = vec![usize::MAX; n + m];
        for s in 0..n + m {
            if !alive(s) || depth[s] != usize::MAX {
                continue;
            }
            depth[s] = 0;
            let mut stack = vec![(s, nbrs(s), 0usize)];
            while let Some((v, list, idx)) = stack.last_mut() {
                let v = *v;
                if *idx == list.len() {
                    stack.pop();
                    continue;
                }
                let w = list[*idx];
                *idx += 1;
                if w == parent[v] {
                    continue;
                }
                if depth[w] == usize::MAX {
                    parent[w] = v;
                    depth[w] = depth[v] + 1;
                    let wl = nbrs(w);
                    stack.push((w, wl, 0));
                } else if depth[w] < depth[v] {
                    let mut path = vec![v];
                    let mut x = v;
                    while x != w {
                        x = parent[x];
                        path.push(x);
                    }
                    // Rotate so the cycle starts at an agent.
                    if path[0] >= n {
                        path.rotate_left(1);
                    }
                    let agents = path.iter().copied().filter(|&x| x < n).collect();
                    let houses = path.iter().copied().filter(|&x| x >= n).map(|x| x - n).collect();
                    return Some((agents, houses));
                }
            }
        }
        None
    }
}

/// Minimum number of envious agents when every house has at most two fans.
pub fn solve_house_degree_two_oha(instance: &Instance) -> Result<SolveResult> {
    solve_house_degree_two_detailed(instance).map(|(r, _)| r)
}

pub fn solve_house_degree_two_detailed(
    instance: &Instance,
) -> Result<(SolveResult, Option<ForestDecomposition>)> {
    instance.require_binary()?;
    let deg = max_house_degree(instance);
    if deg > 2 {
        return Err(Error::Precondition(format!(
            "a house is valued by {deg} agents, at most 2 allowed"
        )));
    }
    let objective = Objective::NumEnvious;
    let (reduced, trace) = match kernelize(instance)? {
        Kernelized::TrivialYes { allocation, .. } => {
            return Ok((
                SolveResult::evaluate(instance, allocation, objective, Method::Degree2)?,
                None,
            ))
        }
        Kernelized::Reduced { instance, trace } => (instance, trace),
    };
    let (n, m) = (reduced.n(), reduced.m());
    let mut res = Residual {
        inst: &reduced,
        agent_alive: vec![true; n],
        house_alive: vec![true; m],
        out: vec![None; n],
    };
    loop {
        if res.single_fan_pass() {
            continue;
        }
        match res.find_cycle() {
            Some((agents, houses)) => {
                // House i sits between agents i and i + 1; agent i takes house i.
                for (&a, &h) in agents.iter().zip(&houses) {
                    res.give(a, h);
                }
            }
            None => break,
        }
    }

    let forest = decompose(&res)?;
    let mut out = res.out.clone();
    let r = forest.trees.len();
    let d = forest.dummy_houses.len();
    let mut acc = 0;
    let j = (0..r).find(|&j| {
        acc += forest.trees[j].agents.len();
        acc + (r - j - 1) > d
    });
    let mut spare = forest.dummy_houses.iter().copied();
    let mut dummy_fill = |agents: &[usize], out: &mut Vec<Option<usize>>| -> bool {
        for &a in agents {
            match spare.next() {
                Some(h) => out[a] = Some(h),
                None => return false,
            }
        }
        true
    };
    let enough = match j {
        None => forest
            .trees
            .iter()
            .all(|t| dummy_fill(&t.agents, &mut out)),
        Some(j) => {
            let filled = forest.trees[..j].iter().all(|t| dummy_fill(&t.agents, &mut out));
            filled
                && forest.trees[j..].iter().all(|t| {
                    for &(a, h) in &t.parent_house {
                        out[a] = Some(h);
                    }
                    dummy_fill(&[t.root], &mut out)
                })
        }
    };
    if !enough {
        let mut r = solve_fpt_subsets(instance, objective)?;
        r.method = Method::KernelFpt;
        return Ok((r, Some(forest)));
    }
    let alloc = Allocation::new(
        out.into_iter()
            .map(|h| h.ok_or_else(|| Error::Precondition("agent left without a house".into())))
            .collect::<Result<Vec<_>>>()?,
    );
    let lifted = lift_allocation(&trace, &alloc)?;
    let result = SolveResult::evaluate(instance, lifted, objective, Method::Degree2)?;
    debug_assert_eq!(result.value, j.map_or(0, |j| r - j));
    Ok((result, Some(forest)))
}

fn decompose(res: &Residual<'_>) -> Result<ForestDecomposition> {
    let (n, m) = (res.inst.n(), res.inst.m());
    let mut seen_agent = vec![false; n];
    let mut seen_house = vec![false; m];
    let mut trees = Vec::new();
    let mut dummy_houses = Vec::new();
    for h in 0..m {
        if res.house_alive[h] && res.fans(h).is_empty() {
            dummy_houses.push(h);
            seen_house[h] = true;
        }
    }
    for s in 0..n {
        if !res.agent_alive[s] || seen_agent[s] {
            continue;
        }
        let (mut agents, mut houses) = (vec![s], Vec::new());
        seen_agent[s] = true;
        let mut queue = vec![s];
        while let Some(a) = queue.pop() {
            for h in res.wishes(a) {
                if seen_house[h] {
                    continue;
                }
                seen_house[h] = true;
                houses.push(h);
                for b in res.fans(h) {
                    if !seen_agent[b] {
                        seen_agent[b] = true;
                        agents.push(b);
                        queue.push(b);
                    }
                }
            }
        }
        agents.sort_unstable();
        houses.sort_unstable();
        if agents.len() != houses.len() + 1 {
            return Err(Error::Precondition("residual component is not a tree".into()));
        }
        let root = agents
            .iter()
            .copied()
            .find(|&a| res.wishes(a).len() <= 1)
            .expect("a finite tree has a leaf");
        let mut parent_house = Vec::new();
        let mut stack = vec![root];
        let mut visited_house = vec![false; m];
        while let Some(a) = stack.pop() {
            for h in res.wishes(a) {
                if std::mem::replace(&mut visited_house[h], true) {
                    continue;
                }
                for b in res.fans(h) {
                    if b != a {
                        parent_house.push((b, h));
                        stack.push(b);
                    }
                }
            }
        }
        parent_house.sort_unstable();
        trees.push(ResidualTree {
            agents,
            houses,
            root,
            parent_house,
        });
    }
    // Stable sort keeps component order among equal sizes.
    trees.sort_by_key(|t| t.agents.len());
    Ok(ForestDecomposition {
        trees,
        dummy_houses,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_with_one_dummy() {
        let inst = Instance::from_valued_sets(2, &[vec![0], vec![0]]).unwrap();
        assert_eq!(solve_house_degree_two_oha(&inst).unwrap().value, 1);
    }

    #[test]
    fn even_cycle() {
        let inst = Instance::from_valued_sets(2, &[vec![0, 1], vec![0, 1]]).unwrap();
        assert_eq!(solve_house_degree_two_oha(&inst).unwrap().value, 0);
    }

    #[test]
    fn rejects_degree_three() {
        let inst = Instance::from_valued_sets(3, &[vec![0], vec![0], vec![0]]).unwrap();
        assert!(solve_house_degree_two_oha(&inst).is_err());
    }
}
