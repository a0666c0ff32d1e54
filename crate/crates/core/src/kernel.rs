//! Expansion-based preprocessing for binary profiles.
//!
//! `kernelize` removes dummy-rich instances outright, strips expansions while
//! the non-dummy houses are at least as many as the non-dummy agents, and
//! finally pairs dummy agents with dummy houses. What survives has fewer
//! valued houses than agents, no dummy agents and at most `2(n − 1)` houses.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instance::{Allocation, Instance};
use crate::matching::{alternating_reach_from_right, max_matching, BipartiteGraph};

/// An expansion of `x` into `y`: `edges` matches every vertex of `x` to a
/// distinct vertex of `y`, and no vertex of `y` has a neighbour outside `x`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expansion {
    pub x: Vec<usize>,
    pub y: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
}

impl Expansion {
    /// Checks the defining properties against `g` (left = agents, right = houses).
    pub fn verify(&self, g: &BipartiteGraph) -> Result<()> {
        let fail = |msg: &str| Err(Error::Precondition(format!("expansion invariant: {msg}")));
        if self.x.is_empty() || self.y.is_empty() {
            return fail("empty side");
        }
        let mut in_x = vec![false; g.left_count()];
        for &u in &self.x {
            in_x[u] = true;
        }
        let mut in_y = vec![false; g.right_count()];
        for &v in &self.y {
            in_y[v] = true;
        }
        let mut hit_left = vec![0usize; g.left_count()];
        let mut hit_right = vec![0usize; g.right_count()];
        for &(u, v) in &self.edges {
            if !in_x[u] || !in_y[v] || !g.has_edge(u, v) {
                return fail("edge outside X × Y");
            }
            hit_left[u] += 1;
            hit_right[v] += 1;
        }
        if self.x.iter().any(|&u| hit_left[u] != 1) {
            return fail("X not saturated exactly once");
        }
        if hit_right.iter().any(|&c| c > 1) || self.edges.len() != self.x.len() {
            return fail("M is not a matching of X");
        }
        for (u, list) in (0..g.left_count()).map(|u| (u, g.neighbors(u))) {
            if !in_x[u] && list.iter().any(|&v| in_y[v]) {
                return fail("N(Y) escapes X");
            }
        }
        Ok(())
    }
}

/// Finds an expansion in `g` (left side A′, right side B′).
///
/// Requires |B′| ≥ |A′| ≥ 1 and no isolated vertex in B′. A maximum matching
/// is computed first; if it leaves some right vertices free, X and Y are the
/// left and right vertices reachable from them by alternating paths.
/// Otherwise the matching is perfect and X = A′, Y = B′.
pub fn find_expansion(g: &BipartiteGraph) -> Result<Expansion> {
    let (l, r) = (g.left_count(), g.right_count());
    if l == 0 || r < l {
        return Err(Error::Precondition(format!(
            "expansion needs |B'| >= |A'| >= 1 (got |A'| = {l}, |B'| = {r})"
        )));
    }
    let radj = g.right_adjacency();
    if let Some(v) = (0..r).find(|&v| radj[v].is_empty()) {
        return Err(Error::Precondition(format!("right vertex {v} is isolated")));
    }
    let m = max_matching(g);
    let free: Vec<usize> = (0..r).filter(|&v| m.mate_of_right(v).is_none()).collect();
    let (x, y) = if free.is_empty() {
        ((0..l).collect::<Vec<_>>(), (0..r).collect::<Vec<_>>())
    } else {
        let (left, right) = alternating_reach_from_right(g, &m, &free);
        (
            (0..l).filter(|&u| left[u]).collect(),
            (0..r).filter(|&v| right[v]).collect(),
        )
    };
    let edges = x
        .iter()
        .map(|&u| {
            m.mate_of_left(u)
                .map(|v| (u, v))
                .ok_or_else(|| Error::Precondition("reachable agent left unmatched".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let expansion = Expansion { x, y, edges };
    expansion.verify(g)?;
    Ok(expansion)
}

/// One logged reduction. Indices refer to the instance the trace was built on.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum KernelStep {
    /// Enough dummy houses for everyone still present: `(agent, house)` pairs.
    TrivialYes { pairs: Vec<(usize, usize)> },
    /// Agents of `x` receive their expansion partners; those agents and houses leave.
    ExpansionRemoval { expansion: Expansion },
    /// Dummy agents paired with dummy houses.
    DummyToDummy { pairs: Vec<(usize, usize)> },
}

impl KernelStep {
    fn removed(&self) -> Vec<(usize, usize)> {
        match self {
            KernelStep::TrivialYes { pairs } | KernelStep::DummyToDummy { pairs } => pairs.clone(),
            KernelStep::ExpansionRemoval { expansion } => expansion.edges.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelTrace {
    pub original_n: usize,
    pub original_m: usize,
    pub steps: Vec<KernelStep>,
    /// `agent_map[i]` is the original index of reduced agent `i`.
    pub agent_map: Vec<usize>,
    /// `house_map[j]` is the original index of reduced house `j`.
    pub house_map: Vec<usize>,
}

impl KernelTrace {
    pub fn identity(n: usize, m: usize) -> Self {
        KernelTrace {
            original_n: n,
            original_m: m,
            steps: Vec::new(),
            agent_map: (0..n).collect(),
            house_map: (0..m).collect(),
        }
    }

    /// Rebuilds the reduced instance by deleting every agent and house the log removed.
    pub fn replay(&self, original: &Instance) -> Result<Instance> {
        if original.n() != self.original_n || original.m() != self.original_m {
            return Err(Error::TraceMismatch("instance dimensions differ".into()));
        }
        let mut agent_gone = vec![false; self.original_n];
        let mut house_gone = vec![false; self.original_m];
        for step in &self.steps {
            for (a, h) in step.removed() {
                agent_gone[a] = true;
                house_gone[h] = true;
            }
        }
        let agents: Vec<usize> = (0..self.original_n).filter(|&a| !agent_gone[a]).collect();
        let houses: Vec<usize> = (0..self.original_m).filter(|&h| !house_gone[h]).collect();
        original.restrict(&agents, &houses)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Kernelized {
    /// Every agent can be given a house nobody else values; the allocation is envy-free.
    TrivialYes {
        allocation: Allocation,
        trace: KernelTrace,
    },
    Reduced {
        instance: Instance,
        trace: KernelTrace,
    },
}

struct Reducer<'a> {
    inst: &'a Instance,
    agents: Vec<usize>,
    houses: Vec<usize>,
    steps: Vec<KernelStep>,
}

impl<'a> Reducer<'a> {
    fn new(inst: &'a Instance) -> Self {
        Reducer {
            inst,
            agents: (0..inst.n()).collect(),
            houses: (0..inst.m()).collect(),
            steps: Vec::new(),
        }
    }

    /// (non-dummy agents, non-dummy houses, dummy agents, dummy houses) among survivors.
    fn split(&self) -> (Vec<usize>, Vec<usize>, Vec<usize>, Vec<usize>) {
        let (mut ra, mut da) = (Vec::new(), Vec::new());
        for &a in &self.agents {
            if self.houses.iter().any(|&h| self.inst.values(a, h)) {
                ra.push(a);
            } else {
                da.push(a);
            }
        }
        let (mut rh, mut dh) = (Vec::new(), Vec::new());
        for &h in &self.houses {
            if self.agents.iter().any(|&a| self.inst.values(a, h)) {
                rh.push(h);
            } else {
                dh.push(h);
            }
        }
        (ra, rh, da, dh)
    }

    fn remove(&mut self, pairs: &[(usize, usize)]) {
        self.agents.retain(|a| !pairs.iter().any(|p| p.0 == *a));
        self.houses.retain(|h| !pairs.iter().any(|p| p.1 == *h));
    }

    /// Applies an expansion found on the given agents and houses (original indices).
    fn expand(&mut self, agents: &[usize], houses: &[usize]) -> Result<()> {
        let adj = agents
            .iter()
            .map(|&a| {
                houses
                    .iter()
                    .enumerate()
                    .filter(|&(_, &h)| self.inst.values(a, h))
                    .map(|(j, _)| j)
                    .collect()
            })
            .collect();
        let g = BipartiteGraph::new(houses.len(), adj);
        let local = find_expansion(&g)?;
        let expansion = Expansion {
            x: local.x.iter().map(|&u| agents[u]).collect(),
            y: local.y.iter().map(|&v| houses[v]).collect(),
            edges: local
                .edges
                .iter()
                .map(|&(u, v)| (agents[u], houses[v]))
                .collect(),
        };
        self.remove(&expansion.edges);
        self.steps.push(KernelStep::ExpansionRemoval { expansion });
        Ok(())
    }

    fn trace(self) -> (KernelTrace, Vec<usize>, Vec<usize>) {
        let trace = KernelTrace {
            original_n: self.inst.n(),
            original_m: self.inst.m(),
            steps: self.steps,
            agent_map: self.agents.clone(),
            house_map: self.houses.clone(),
        };
        (trace, self.agents, self.houses)
    }
}

/// Reduces a binary instance while preserving all three optima.
pub fn kernelize(instance: &Instance) -> Result<Kernelized> {
    instance.require_binary()?;
    let mut red = Reducer::new(instance);
    loop {
        let (ra, rh, _, dh) = red.split();
        if dh.len() >= red.agents.len() {
            let pairs: Vec<(usize, usize)> =
                red.agents.iter().copied().zip(dh.iter().copied()).collect();
            red.remove(&pairs);
            red.steps.push(KernelStep::TrivialYes { pairs });
            let (trace, _, _) = red.trace();
            let allocation = lift_allocation(&trace, &Allocation::new(Vec::new()))?;
            return Ok(Kernelized::TrivialYes { allocation, trace });
        }
        if !ra.is_empty() && rh.len() >= ra.len() {
            red.expand(&ra, &rh)?;
            continue;
        }
        break;
    }
    let (_, _, da, dh) = red.split();
    if !da.is_empty() {
        let pairs: Vec<(usize, usize)> = da.iter().copied().zip(dh.iter().copied()).collect();
        red.remove(&pairs);
        red.steps.push(KernelStep::DummyToDummy { pairs });
    }
    let (trace, agents, houses) = red.trace();
    let reduced = instance.restrict(&agents, &houses)?;
    Ok(Kernelized::Reduced {
        instance: reduced,
        trace,
    })
}

/// Removes one expansion found inside the given agents and houses.
///
/// The caller guarantees that the houses are valued only by agents in
/// `agents` and that each is valued by someone; the removal is then safe for
/// all three objectives, even if the global kernel condition does not hold.
pub fn expansion_step(
    instance: &Instance,
    agents: &[usize],
    houses: &[usize],
) -> Result<(Instance, KernelTrace)> {
    instance.require_binary()?;
    for &h in houses {
        if (0..instance.n()).any(|a| instance.values(a, h) && !agents.contains(&a)) {
            return Err(Error::Precondition(format!(
                "house {h} is valued outside the agent set"
            )));
        }
    }
    let mut red = Reducer::new(instance);
    red.expand(agents, houses)?;
    let (trace, agents, houses) = red.trace();
    let reduced = instance.restrict(&agents, &houses)?;
    Ok((reduced, trace))
}

/// Maps an allocation of the reduced instance back to the original one.
pub fn lift_allocation(trace: &KernelTrace, reduced: &Allocation) -> Result<Allocation> {
    if reduced.len() != trace.agent_map.len() {
        return Err(Error::TraceMismatch(format!(
            "allocation covers {} agents, reduced instance has {}",
            reduced.len(),
            trace.agent_map.len()
        )));
    }
    let mut out: Vec<Option<usize>> = vec![None; trace.original_n];
    for (i, &h) in reduced.houses().iter().enumerate() {
        let house = *trace
            .house_map
            .get(h)
            .ok_or_else(|| Error::TraceMismatch(format!("house {h} not in reduced instance")))?;
        out[trace.agent_map[i]] = Some(house);
    }
    for step in &trace.steps {
        for (a, h) in step.removed() {
            if out[a].is_some() {
                return Err(Error::TraceMismatch(format!("agent {a} assigned twice")));
            }
            out[a] = Some(h);
        }
    }
    let assignment = out
        .into_iter()
        .enumerate()
        .map(|(a, h)| h.ok_or_else(|| Error::TraceMismatch(format!("agent {a} left unassigned"))))
        .collect::<Result<Vec<_>>>()?;
    let alloc = Allocation::new(assignment);
    if alloc.houses().iter().any(|&h| h >= trace.original_m) {
        return Err(Error::TraceMismatch("house index out of range".into()));
    }
    let mut seen = vec![false; trace.original_m];
    for &h in alloc.houses() {
        if std::mem::replace(&mut seen[h], true) {
            return Err(Error::TraceMismatch(format!("house {h} assigned twice")));
        }
    }
    Ok(alloc)
}

/// Lifts through a chain of traces, last applied first.
pub fn lift_through(traces: &[KernelTrace], reduced: &Allocation) -> Result<Allocation> {
    traces
        .iter()
        .rev()
        .try_fold(reduced.clone(), |alloc, t| lift_allocation(t, &alloc))
}
