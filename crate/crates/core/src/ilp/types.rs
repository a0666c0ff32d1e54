use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instance::{Allocation, Instance};

/// Agents grouped by identical valued sets, houses by identical sets of fans.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeProfile {
    pub n_star: usize,
    pub m_star: usize,
    /// Agents per type (n_i).
    pub agent_counts: Vec<usize>,
    /// Houses per type (m_j).
    pub house_counts: Vec<usize>,
    /// `valued[i][j]`: agents of type i value houses of type j.
    pub valued: Vec<Vec<bool>>,
    pub agent_members: Vec<Vec<usize>>,
    pub house_members: Vec<Vec<usize>>,
}

impl TypeProfile {
    pub fn n(&self) -> usize {
        self.agent_counts.iter().sum()
    }

    pub fn m(&self) -> usize {
        self.house_counts.iter().sum()
    }

    /// P(i): house types valued by agent type `i`.
    pub fn valued_types(&self, i: usize) -> Vec<usize> {
        (0..self.m_star).filter(|&j| self.valued[i][j]).collect()
    }
}

/// Compares two membership vectors as binary numbers, index 0 least significant.
fn bitmask_order(a: &[bool], b: &[bool]) -> Ordering {
    a.iter().rev().cmp(b.iter().rev())
}

fn group(rows: Vec<Vec<bool>>) -> (Vec<Vec<bool>>, Vec<Vec<usize>>) {
    let mut keys: Vec<Vec<bool>> = Vec::new();
    for r in &rows {
        if !keys.contains(r) {
            keys.push(r.clone());
        }
    }
    keys.sort_by(|a, b| bitmask_order(a, b));
    let members = keys
        .iter()
        .map(|k| (0..rows.len()).filter(|&x| &rows[x] == k).collect())
        .collect();
    (keys, members)
}

pub fn type_profile(instance: &Instance) -> Result<TypeProfile> {
    instance.require_binary()?;
    let (n, m) = (instance.n(), instance.m());
    let rows: Vec<Vec<bool>> = (0..n)
        .map(|a| (0..m).map(|h| instance.values(a, h)).collect())
        .collect();
    let cols: Vec<Vec<bool>> = (0..m)
        .map(|h| (0..n).map(|a| instance.values(a, h)).collect())
        .collect();
    let (_, agent_members) = group(rows);
    let (_, house_members) = group(cols);
    let valued = agent_members
        .iter()
        .map(|am| {
            house_members
                .iter()
                .map(|hm| instance.values(am[0], hm[0]))
                .collect()
        })
        .collect();
    Ok(TypeProfile {
        n_star: agent_members.len(),
        m_star: house_members.len(),
        agent_counts: agent_members.iter().map(Vec::len).collect(),
        house_counts: house_members.iter().map(Vec::len).collect(),
        valued,
        agent_members,
        house_members,
    })
}

/// How many agents of each type receive houses of each type.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TypeAllocation {
    pub x: Vec<Vec<usize>>,
}

impl TypeAllocation {
    /// Row sums equal the agent counts and column sums stay within the house counts.
    pub fn validate(&self, profile: &TypeProfile) -> Result<()> {
        if self.x.len() != profile.n_star || self.x.iter().any(|r| r.len() != profile.m_star) {
            return Err(Error::InvalidAllocation("type matrix has wrong shape".into()));
        }
        for (i, row) in self.x.iter().enumerate() {
            if row.iter().sum::<usize>() != profile.agent_counts[i] {
                return Err(Error::InvalidAllocation(format!(
                    "row {i} does not sum to n_{i} = {}",
                    profile.agent_counts[i]
                )));
            }
        }
        for j in 0..profile.m_star {
            let col: usize = self.x.iter().map(|r| r[j]).sum();
            if col > profile.house_counts[j] {
                return Err(Error::InvalidAllocation(format!(
                    "column {j} uses {col} houses, only {} exist",
                    profile.house_counts[j]
                )));
            }
        }
        Ok(())
    }

    /// Houses allocated among those valued by agent type `i`.
    pub fn valued_allocated(&self, profile: &TypeProfile, i: usize) -> usize {
        (0..profile.m_star)
            .filter(|&j| profile.valued[i][j])
            .map(|j| self.x.iter().map(|r| r[j]).sum::<usize>())
            .sum()
    }

    /// Whether agents in cell (i, j) are envious.
    pub fn cell_envious(&self, profile: &TypeProfile, i: usize, j: usize) -> bool {
        !profile.valued[i][j] && self.x[i][j] > 0 && self.valued_allocated(profile, i) > 0
    }
}

/// Hands `x[i][j]` houses of type j to agents of type i, lowest indices first.
pub fn realize_allocation(profile: &TypeProfile, x: &TypeAllocation) -> Result<Allocation> {
    x.validate(profile)?;
    let mut out = vec![usize::MAX; profile.n()];
    let mut next_house = vec![0usize; profile.m_star];
    for i in 0..profile.n_star {
        let mut agents = profile.agent_members[i].iter();
        for j in 0..profile.m_star {
            for _ in 0..x.x[i][j] {
                let a = *agents.next().expect("row sum checked");
                out[a] = profile.house_members[j][next_house[j]];
                next_house[j] += 1;
            }
        }
    }
    Ok(Allocation::new(out))
}
