use crate::error::Result;
use crate::instance::Instance;
use crate::matching::BipartiteGraph;

/// Agent-house graph of a binary profile: an edge for each valued pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreferenceGraph {
    agent_adj: Vec<Vec<usize>>,
    house_adj: Vec<Vec<usize>>,
    dummy_houses: Vec<usize>,
    dummy_agents: Vec<usize>,
}

pub fn preference_graph(instance: &Instance) -> Result<PreferenceGraph> {
    instance.require_binary()?;
    let agent_adj: Vec<Vec<usize>> = (0..instance.n())
        .map(|a| instance.valued_houses(a))
        .collect();
    let mut house_adj = vec![Vec::new(); instance.m()];
    for (a, hs) in agent_adj.iter().enumerate() {
        for &h in hs {
            house_adj[h].push(a);
        }
    }
    let dummy_houses = (0..instance.m())
        .filter(|&h| house_adj[h].is_empty())
        .collect();
    let dummy_agents = (0..instance.n())
        .filter(|&a| agent_adj[a].is_empty())
        .collect();
    Ok(PreferenceGraph {
        agent_adj,
        house_adj,
        dummy_houses,
        dummy_agents,
    })
}

impl PreferenceGraph {
    pub fn agent_count(&self) -> usize {
        self.agent_adj.len()
    }

    pub fn house_count(&self) -> usize {
        self.house_adj.len()
    }

    /// Valued set P(a).
    pub fn valued(&self, agent: usize) -> &[usize] {
        &self.agent_adj[agent]
    }

    /// Agents valuing the house, T(h).
    pub fn fans(&self, house: usize) -> &[usize] {
        &self.house_adj[house]
    }

    pub fn agent_degree(&self, agent: usize) -> usize {
        self.agent_adj[agent].len()
    }

    pub fn house_degree(&self, house: usize) -> usize {
        self.house_adj[house].len()
    }

    pub fn has_edge(&self, agent: usize, house: usize) -> bool {
        self.agent_adj[agent].binary_search(&house).is_ok()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.agent_adj
            .iter()
            .enumerate()
            .flat_map(|(a, hs)| hs.iter().map(move |&h| (a, h)))
            .collect()
    }

    /// Houses nobody values (D).
    pub fn dummy_houses(&self) -> &[usize] {
        &self.dummy_houses
    }

    /// Agents valuing nothing (D′).
    pub fn dummy_agents(&self) -> &[usize] {
        &self.dummy_agents
    }

    pub fn is_dummy_house(&self, house: usize) -> bool {
        self.house_adj[house].is_empty()
    }

    pub fn is_dummy_agent(&self, agent: usize) -> bool {
        self.agent_adj[agent].is_empty()
    }

    pub fn to_bipartite(&self) -> BipartiteGraph {
        BipartiteGraph::new(self.house_count(), self.agent_adj.clone())
    }
}
