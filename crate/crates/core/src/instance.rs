//! Instances, preference profiles and allocations.
//!
//! Every profile is also stored as a level matrix: `level(a, h)` is the rank
//! class of house `h` for agent `a`, where smaller is better. Binary profiles
//! use level 0 for valued houses and 1 otherwise, so a single comparison rule
//! ("a envies b iff level(a, Φ(b)) < level(a, Φ(a))") covers all three kinds.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Preference profile of the agents over the houses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Profile {
    /// `matrix[a][h]` is true when agent `a` values house `h`.
    Binary(Vec<Vec<bool>>),
    /// Per-agent permutation of all houses, best first.
    Strict(Vec<Vec<usize>>),
    /// Per-agent sequence of tie groups, best group first.
    Weak(Vec<Vec<Vec<usize>>>),
}

impl Profile {
    pub fn kind(&self) -> &'static str {
        match self {
            Profile::Binary(_) => "binary",
            Profile::Strict(_) => "strict",
            Profile::Weak(_) => "weak",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawInstance", into = "RawInstance")]
pub struct Instance {
    n: usize,
    m: usize,
    profile: Profile,
    levels: Vec<Vec<u32>>,
}

/// Unvalidated on-disk form of an instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawInstance {
    pub n: usize,
    pub m: usize,
    pub profile: RawProfile,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum RawProfile {
    Binary { matrix: Vec<Vec<u8>> },
    Strict { rankings: Vec<Vec<usize>> },
    Weak { rankings: Vec<Vec<Vec<usize>>> },
}

/// Checks a raw instance and builds the validated form.
pub fn validate_instance(raw: RawInstance) -> Result<Instance> {
    let profile = match raw.profile {
        RawProfile::Binary { matrix } => {
            let mut rows = Vec::with_capacity(matrix.len());
            for (a, row) in matrix.into_iter().enumerate() {
                let mut out = Vec::with_capacity(row.len());
                for (h, v) in row.into_iter().enumerate() {
                    match v {
                        0 => out.push(false),
                        1 => out.push(true),
                        other => {
                            return Err(Error::InvalidInstance(format!(
                                "matrix entry ({a}, {h}) is {other}, expected 0 or 1"
                            )))
                        }
                    }
                }
                rows.push(out);
            }
            Profile::Binary(rows)
        }
        RawProfile::Strict { rankings } => Profile::Strict(rankings),
        RawProfile::Weak { rankings } => Profile::Weak(rankings),
    };
    Instance::new(raw.n, raw.m, profile)
}

impl TryFrom<RawInstance> for Instance {
    type Error = Error;

    fn try_from(raw: RawInstance) -> Result<Self> {
        validate_instance(raw)
    }
}

impl From<Instance> for RawInstance {
    fn from(inst: Instance) -> Self {
        let profile = match inst.profile {
            Profile::Binary(rows) => RawProfile::Binary {
                matrix: rows
                    .into_iter()
                    .map(|r| r.into_iter().map(u8::from).collect())
                    .collect(),
            },
            Profile::Strict(rankings) => RawProfile::Strict { rankings },
            Profile::Weak(rankings) => RawProfile::Weak { rankings },
        };
        RawInstance {
            n: inst.n,
            m: inst.m,
            profile,
        }
    }
}

impl Instance {
    pub fn new(n: usize, m: usize, profile: Profile) -> Result<Self> {
        if m < n {
            return Err(Error::InvalidInstance(format!("m < n ({m} < {n})")));
        }
        let levels = match &profile {
            Profile::Binary(rows) => {
                check_rows(rows.len(), n)?;
                let mut levels = Vec::with_capacity(n);
                for (a, row) in rows.iter().enumerate() {
                    if row.len() != m {
                        return Err(Error::InvalidInstance(format!(
                            "row {a} has {} entries, expected {m}",
                            row.len()
                        )));
                    }
                    levels.push(row.iter().map(|&v| if v { 0 } else { 1 }).collect());
                }
                levels
            }
            Profile::Strict(rankings) => {
                check_rows(rankings.len(), n)?;
                let mut levels = Vec::with_capacity(n);
                for (a, ranking) in rankings.iter().enumerate() {
                    let mut lv = vec![u32::MAX; m];
                    if ranking.len() != m {
                        return Err(Error::InvalidInstance(format!(
                            "ranking {a} lists {} houses, expected {m}",
                            ranking.len()
                        )));
                    }
                    for (pos, &h) in ranking.iter().enumerate() {
                        place(&mut lv, a, h, pos as u32)?;
                    }
                    levels.push(lv);
                }
                levels
            }
            Profile::Weak(rankings) => {
                check_rows(rankings.len(), n)?;
                let mut levels = Vec::with_capacity(n);
                for (a, groups) in rankings.iter().enumerate() {
                    let mut lv = vec![u32::MAX; m];
                    for (g, group) in groups.iter().enumerate() {
                        if group.is_empty() {
                            return Err(Error::InvalidInstance(format!(
                                "ranking {a} has an empty tie group"
                            )));
                        }
                        for &h in group {
                            place(&mut lv, a, h, g as u32)?;
                        }
                    }
                    if lv.iter().any(|&l| l == u32::MAX) {
                        return Err(Error::InvalidInstance(format!(
                            "ranking {a} does not cover every house"
                        )));
                    }
                    levels.push(lv);
                }
                levels
            }
        };
        Ok(Instance {
            n,
            m,
            profile,
            levels,
        })
    }

    /// Binary instance from a boolean matrix with `m` columns.
    pub fn binary(m: usize, matrix: Vec<Vec<bool>>) -> Result<Self> {
        Instance::new(matrix.len(), m, Profile::Binary(matrix))
    }

    /// Binary instance where `sets[a]` lists the houses agent `a` values.
    pub fn from_valued_sets(m: usize, sets: &[Vec<usize>]) -> Result<Self> {
        let mut matrix = vec![vec![false; m]; sets.len()];
        for (a, set) in sets.iter().enumerate() {
            for &h in set {
                if h >= m {
                    return Err(Error::InvalidInstance(format!(
                        "agent {a} values house {h}, but m = {m}"
                    )));
                }
                matrix[a][h] = true;
            }
        }
        Instance::binary(m, matrix)
    }

    pub fn strict(m: usize, rankings: Vec<Vec<usize>>) -> Result<Self> {
        Instance::new(rankings.len(), m, Profile::Strict(rankings))
    }

    pub fn weak(m: usize, rankings: Vec<Vec<Vec<usize>>>) -> Result<Self> {
        Instance::new(rankings.len(), m, Profile::Weak(rankings))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidInstance(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("instance serialization cannot fail")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn profile(&self) -> &Profile {
        &self.profile
    }

    pub fn is_binary(&self) -> bool {
        matches!(self.profile, Profile::Binary(_))
    }

    pub fn require_binary(&self) -> Result<()> {
        if self.is_binary() {
            Ok(())
        } else {
            Err(Error::NotBinary)
        }
    }

    /// Rank class of `house` for `agent`; smaller is better.
    pub fn level(&self, agent: usize, house: usize) -> u32 {
        self.levels[agent][house]
    }

    pub fn levels(&self, agent: usize) -> &[u32] {
        &self.levels[agent]
    }

    /// Whether `agent` values `house` in a binary profile. Always false for rankings.
    pub fn values(&self, agent: usize, house: usize) -> bool {
        match &self.profile {
            Profile::Binary(rows) => rows[agent][house],
            _ => false,
        }
    }

    /// Houses valued by `agent` (binary profiles), in index order.
    pub fn valued_houses(&self, agent: usize) -> Vec<usize> {
        (0..self.m).filter(|&h| self.values(agent, h)).collect()
    }

    /// Agents valuing `house` (binary profiles), in index order.
    pub fn fans(&self, house: usize) -> Vec<usize> {
        (0..self.n).filter(|&a| self.values(a, house)).collect()
    }

    /// Sub-instance on the given agents and houses, renumbered in the order given.
    ///
    /// Rankings keep their relative order; weak rankings drop groups that become empty.
    pub fn restrict(&self, agents: &[usize], houses: &[usize]) -> Result<Instance> {
        let mut local = vec![usize::MAX; self.m];
        for (i, &h) in houses.iter().enumerate() {
            local[h] = i;
        }
        let profile = match &self.profile {
            Profile::Binary(rows) => Profile::Binary(
                agents
                    .iter()
                    .map(|&a| houses.iter().map(|&h| rows[a][h]).collect())
                    .collect(),
            ),
            Profile::Strict(rankings) => Profile::Strict(
                agents
                    .iter()
                    .map(|&a| {
                        rankings[a]
                            .iter()
                            .filter(|&&h| local[h] != usize::MAX)
                            .map(|&h| local[h])
                            .collect()
                    })
                    .collect(),
            ),
            Profile::Weak(rankings) => Profile::Weak(
                agents
                    .iter()
                    .map(|&a| {
                        rankings[a]
                            .iter()
                            .map(|g| {
                                g.iter()
                                    .filter(|&&h| local[h] != usize::MAX)
                                    .map(|&h| local[h])
                                    .collect::<Vec<_>>()
                            })
                            .filter(|g| !g.is_empty())
                            .collect()
                    })
                    .collect(),
            ),
        };
        Instance::new(agents.len(), houses.len(), profile)
    }
}

fn check_rows(rows: usize, n: usize) -> Result<()> {
    if rows != n {
        return Err(Error::InvalidInstance(format!(
            "profile has {rows} agents, expected {n}"
        )));
    }
    Ok(())
}

fn place(levels: &mut [u32], agent: usize, house: usize, level: u32) -> Result<()> {
    let m = levels.len();
    if house >= m {
        return Err(Error::InvalidInstance(format!(
            "ranking {agent} mentions house {house}, but m = {m}"
        )));
    }
    if levels[house] != u32::MAX {
        return Err(Error::InvalidInstance(format!(
            "ranking {agent} lists house {house} twice"
        )));
    }
    levels[house] = level;
    Ok(())
}

/// An injective map from agents to houses; `houses()[a]` is agent `a`'s house.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Allocation(Vec<usize>);

impl Allocation {
    pub fn new(assignment: Vec<usize>) -> Self {
        Allocation(assignment)
    }

    pub fn houses(&self) -> &[usize] {
        &self.0
    }

    pub fn house_of(&self, agent: usize) -> usize {
        self.0[agent]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_inner(self) -> Vec<usize> {
        self.0
    }

    pub fn validate(&self, instance: &Instance) -> Result<()> {
        if self.0.len() != instance.n() {
            return Err(Error::InvalidAllocation(format!(
                "allocation covers {} agents, instance has {}",
                self.0.len(),
                instance.n()
            )));
        }
        let mut seen = vec![false; instance.m()];
        for (a, &h) in self.0.iter().enumerate() {
            if h >= instance.m() {
                return Err(Error::InvalidAllocation(format!(
                    "agent {a} gets house {h}, but m = {}",
                    instance.m()
                )));
            }
            if seen[h] {
                return Err(Error::InvalidAllocation(format!(
                    "house {h} is assigned twice"
                )));
            }
            seen[h] = true;
        }
        Ok(())
    }

    /// Builds an allocation from a partial one, handing the unused houses to
    /// the unassigned agents in index order.
    pub fn complete(m: usize, partial: &[Option<usize>]) -> Allocation {
        let mut used = vec![false; m];
        for h in partial.iter().flatten() {
            used[*h] = true;
        }
        let mut free = (0..m).filter(|&h| !used[h]);
        Allocation(
            partial
                .iter()
                .map(|slot| match slot {
                    Some(h) => *h,
                    None => free.next().expect("m >= n guarantees a free house"),
                })
                .collect(),
        )
    }
}
