//! Shared fixtures, random instance generators and a naive reference solver.
#![allow(dead_code)]

pub mod lp;

use house_alloc::{Allocation, Instance, Objective, Profile};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// The 9-agent, 10-house instance with left houses 0..3, dummies 3..7 and
/// right houses 7..10.
pub fn table2() -> Instance {
    Instance::from_valued_sets(
        10,
        &[
            vec![0],
            vec![0, 1],
            vec![0, 1],
            vec![0, 1, 2],
            vec![0, 1, 2],
            vec![7, 8, 9],
            vec![7, 8, 9],
            vec![8, 9],
            vec![9],
        ],
    )
    .unwrap()
}

/// Four agents, four houses, strict rankings.
pub fn intro_strict() -> Instance {
    Instance::strict(
        4,
        vec![
            vec![0, 1, 2, 3],
            vec![0, 1, 2, 3],
            vec![1, 2, 3, 0],
            vec![2, 3, 0, 1],
        ],
    )
    .unwrap()
}

pub fn sets(m: usize, sets: &[&[usize]]) -> Instance {
    let owned: Vec<Vec<usize>> = sets.iter().map(|s| s.to_vec()).collect();
    Instance::from_valued_sets(m, &owned).unwrap()
}

pub fn random_binary(rng: &mut ChaCha8Rng, n: usize, m: usize, density: f64) -> Instance {
    let matrix = (0..n)
        .map(|_| (0..m).map(|_| rng.random_bool(density)).collect())
        .collect();
    Instance::binary(m, matrix).unwrap()
}

/// Random n, m within bounds (m ≥ n), random density.
pub fn random_binary_sized(rng: &mut ChaCha8Rng, max_n: usize, max_m: usize) -> Instance {
    let n = rng.random_range(1..=max_n);
    let m = rng.random_range(n..=max_m.max(n));
    let density = rng.random_range(0.1..0.8);
    random_binary(rng, n, m, density)
}

pub fn random_strict(rng: &mut ChaCha8Rng, n: usize, m: usize) -> Instance {
    let rankings = (0..n)
        .map(|_| {
            let mut p: Vec<usize> = (0..m).collect();
            p.shuffle(rng);
            p
        })
        .collect();
    Instance::strict(m, rankings).unwrap()
}

pub fn random_weak(rng: &mut ChaCha8Rng, n: usize, m: usize) -> Instance {
    let rankings = (0..n)
        .map(|_| {
            let mut p: Vec<usize> = (0..m).collect();
            p.shuffle(rng);
            let mut groups: Vec<Vec<usize>> = Vec::new();
            for h in p {
                if groups.is_empty() || rng.random_bool(0.5) {
                    groups.push(vec![h]);
                } else {
                    groups.last_mut().unwrap().push(h);
                }
            }
            groups
        })
        .collect();
    Instance::weak(m, rankings).unwrap()
}

/// Prefix/suffix valued sets under a hidden random house order.
pub fn random_extremal(rng: &mut ChaCha8Rng, n: usize, m: usize) -> Instance {
    let mut order: Vec<usize> = (0..m).collect();
    order.shuffle(rng);
    let sets: Vec<Vec<usize>> = (0..n)
        .map(|_| {
            let len = rng.random_range(0..=m.min(4));
            match rng.random_range(0..3) {
                0 => order[..len].to_vec(),
                1 => order[m - len..].to_vec(),
                _ => order[..len.min(1)].to_vec(),
            }
        })
        .collect();
    Instance::from_valued_sets(m, &sets).unwrap()
}

/// Prefixes of one hidden order only.
pub fn random_left_extremal(rng: &mut ChaCha8Rng, n: usize, m: usize) -> Instance {
    let mut order: Vec<usize> = (0..m).collect();
    order.shuffle(rng);
    let sets: Vec<Vec<usize>> = (0..n)
        .map(|_| order[..rng.random_range(1..=m.min(n))].to_vec())
        .collect();
    Instance::from_valued_sets(m, &sets).unwrap()
}

pub fn random_single_minded(rng: &mut ChaCha8Rng, n: usize, m: usize) -> Instance {
    let popular = rng.random_range(1..=m);
    let sets: Vec<Vec<usize>> = (0..n).map(|_| vec![rng.random_range(0..popular)]).collect();
    Instance::from_valued_sets(m, &sets).unwrap()
}

/// Every house gets at most two fans.
pub fn random_degree_two(rng: &mut ChaCha8Rng, n: usize, m: usize) -> Instance {
    let mut matrix = vec![vec![false; m]; n];
    for h in 0..m {
        let fans = rng.random_range(0..=2.min(n));
        let mut agents: Vec<usize> = (0..n).collect();
        agents.shuffle(rng);
        for &a in &agents[..fans] {
            matrix[a][h] = true;
        }
    }
    Instance::binary(m, matrix).unwrap()
}

/// Agents drawn from `types` random valued sets.
pub fn random_typed(rng: &mut ChaCha8Rng, n: usize, m: usize, types: usize) -> Instance {
    let rows: Vec<Vec<bool>> = (0..types)
        .map(|_| (0..m).map(|_| rng.random_bool(0.4)).collect())
        .collect();
    let matrix = (0..n).map(|_| rows[rng.random_range(0..types)].clone()).collect();
    Instance::binary(m, matrix).unwrap()
}

/// Rank class of `h` for `a`, read straight from the profile.
fn class(inst: &Instance, a: usize, h: usize) -> usize {
    match inst.profile() {
        Profile::Binary(mat) => usize::from(!mat[a][h]),
        Profile::Strict(r) => r[a].iter().position(|&x| x == h).unwrap(),
        Profile::Weak(r) => r[a].iter().position(|g| g.contains(&h)).unwrap(),
    }
}

/// Per-agent envy counts from the definition.
pub fn naive_envy(inst: &Instance, assignment: &[usize]) -> Vec<usize> {
    (0..assignment.len())
        .map(|a| {
            (0..assignment.len())
                .filter(|&b| b != a && class(inst, a, assignment[b]) < class(inst, a, assignment[a]))
                .count()
        })
        .collect()
}

pub fn naive_welfare(inst: &Instance, assignment: &[usize]) -> usize {
    match inst.profile() {
        Profile::Binary(mat) => (0..assignment.len()).filter(|&a| mat[a][assignment[a]]).count(),
        _ => 0,
    }
}

pub fn aggregate(envy: &[usize], objective: Objective) -> usize {
    match objective {
        Objective::NumEnvious => envy.iter().filter(|&&e| e > 0).count(),
        Objective::MaxEnvy => envy.iter().copied().max().unwrap_or(0),
        Objective::TotalEnvy => envy.iter().sum(),
    }
}

/// Reference optima from plain enumeration of every injection.
#[derive(Debug, Clone)]
pub struct Reference {
    /// Indexed by objective: (optimum, best welfare among optimal allocations).
    pub optima: [(usize, usize); 3],
    pub max_welfare: usize,
    pub envy_free_exists: bool,
}

impl Reference {
    pub fn value(&self, objective: Objective) -> usize {
        self.optima[objective.index()].0
    }

    pub fn fair_welfare(&self, objective: Objective) -> usize {
        self.optima[objective.index()].1
    }
}

pub fn reference(inst: &Instance) -> Reference {
    let (n, m) = (inst.n(), inst.m());
    let mut optima = [(usize::MAX, 0usize); 3];
    let mut max_welfare = 0;
    let mut current = vec![0usize; n];
    let mut used = vec![false; m];
    fn rec(
        inst: &Instance,
        a: usize,
        current: &mut Vec<usize>,
        used: &mut Vec<bool>,
        visit: &mut dyn FnMut(&[usize]),
    ) {
        if a == current.len() {
            visit(current);
            return;
        }
        for h in 0..used.len() {
            if !used[h] {
                used[h] = true;
                current[a] = h;
                rec(inst, a + 1, current, used, visit);
                used[h] = false;
            }
        }
    }
    rec(inst, 0, &mut current, &mut used, &mut |asg| {
        let envy = naive_envy(inst, asg);
        let w = naive_welfare(inst, asg);
        max_welfare = max_welfare.max(w);
        for obj in Objective::ALL {
            let v = aggregate(&envy, obj);
            let slot = &mut optima[obj.index()];
            if v < slot.0 {
                *slot = (v, w);
            } else if v == slot.0 {
                slot.1 = slot.1.max(w);
            }
        }
    });
    Reference {
        envy_free_exists: optima[0].0 == 0,
        optima,
        max_welfare,
    }
}

/// Objective value of `alloc`, computed from the definition.
pub fn value_of(inst: &Instance, alloc: &Allocation, objective: Objective) -> usize {
    aggregate(&naive_envy(inst, alloc.houses()), objective)
}

pub fn assert_valid(inst: &Instance, alloc: &Allocation) {
    assert_eq!(alloc.len(), inst.n());
    let mut seen = vec![false; inst.m()];
    for &h in alloc.houses() {
        assert!(h < inst.m());
        assert!(!seen[h], "house {h} assigned twice");
        seen[h] = true;
    }
}
