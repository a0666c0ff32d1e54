use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instance::{Allocation, Instance};

/// The quantity being minimized.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Objective {
    /// Number of envious agents (OHA).
    NumEnvious,
    /// Largest number of agents envied by a single agent (EHA).
    MaxEnvy,
    /// Sum of the per-agent envy counts (UHA).
    TotalEnvy,
}

impl Objective {
    pub const ALL: [Objective; 3] = [
        Objective::NumEnvious,
        Objective::MaxEnvy,
        Objective::TotalEnvy,
    ];

    /// Short problem name used on the command line and in CSV output.
    pub fn short_name(self) -> &'static str {
        match self {
            Objective::NumEnvious => "oha",
            Objective::MaxEnvy => "eha",
            Objective::TotalEnvy => "uha",
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Objective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short_name())
    }
}

impl FromStr for Objective {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "oha" | "num" | "num-envious" => Ok(Objective::NumEnvious),
            "eha" | "max" | "max-envy" => Ok(Objective::MaxEnvy),
            "uha" | "total" | "total-envy" => Ok(Objective::TotalEnvy),
            other => Err(Error::Precondition(format!("unknown objective `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnvyReport {
    pub per_agent: Vec<usize>,
    pub num_envious: usize,
    pub max_envy: usize,
    pub total_envy: usize,
    /// Number of agents holding a valued house; binary profiles only.
    pub welfare: Option<usize>,
}

impl EnvyReport {
    pub fn from_per_agent(per_agent: Vec<usize>, welfare: Option<usize>) -> Self {
        EnvyReport {
            num_envious: per_agent.iter().filter(|&&e| e > 0).count(),
            max_envy: per_agent.iter().copied().max().unwrap_or(0),
            total_envy: per_agent.iter().sum(),
            per_agent,
            welfare,
        }
    }

    pub fn value(&self, objective: Objective) -> usize {
        match objective {
            Objective::NumEnvious => self.num_envious,
            Objective::MaxEnvy => self.max_envy,
            Objective::TotalEnvy => self.total_envy,
        }
    }

    pub fn is_envy_free(&self) -> bool {
        self.total_envy == 0
    }
}

/// Envy of every agent under `alloc`.
///
/// Agent `a` envies `b` when `b`'s house sits in a strictly better rank class
/// for `a` than `a`'s own house.
pub fn envy_report(instance: &Instance, alloc: &Allocation) -> Result<EnvyReport> {
    alloc.validate(instance)?;
    let houses = alloc.houses();
    let per_agent = (0..instance.n())
        .map(|a| {
            let levels = instance.levels(a);
            let own = levels[houses[a]];
            houses.iter().filter(|&&h| levels[h] < own).count()
        })
        .collect();
    let welfare = instance.is_binary().then(|| {
        (0..instance.n())
            .filter(|&a| instance.values(a, houses[a]))
            .count()
    });
    Ok(EnvyReport::from_per_agent(per_agent, welfare))
}

/// Social welfare of a binary allocation.
pub fn welfare(instance: &Instance, alloc: &Allocation) -> Result<usize> {
    instance.require_binary()?;
    alloc.validate(instance)?;
    Ok((0..instance.n())
        .filter(|&a| instance.values(a, alloc.house_of(a)))
        .count())
}
