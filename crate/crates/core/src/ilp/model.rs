//! Integer models over type-allocation matrices.
//!
//! Variables per cell (i, j): `x_i_j` agents of type i on houses of type j,
//! `z_i_j` the cell's envy contribution, and binaries `d_i_j`, `dp_i_j`
//! switching the big-M rows. The max-envy model adds `w`.

use serde::{Deserialize, Serialize};

use super::types::{TypeAllocation, TypeProfile};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum VarKind {
    Integer,
    Binary,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Variable {
    pub name: String,
    pub kind: VarKind,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sense {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Constraint {
    pub name: String,
    pub terms: Vec<(usize, i64)>,
    pub sense: Sense,
    pub rhs: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ModelKind {
    /// Minimize the number of envious agents.
    NumEnvious,
    /// Minimize the maximum envy.
    MaxEnvy,
    /// Minimize total envy (quadratic objective).
    TotalEnvy,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ILPModel {
    pub kind: ModelKind,
    pub variables: Vec<Variable>,
    pub constraints: Vec<Constraint>,
    /// Linear objective terms (minimized).
    pub objective: Vec<(usize, i64)>,
    /// Quadratic objective terms `coef · v1 · v2`.
    pub quadratic: Vec<(usize, usize, i64)>,
}

impl ILPModel {
    pub fn empty(kind: ModelKind) -> Self {
        ILPModel {
            kind,
            variables: Vec::new(),
            constraints: Vec::new(),
            objective: Vec::new(),
            quadratic: Vec::new(),
        }
    }

    /// Objective value of `values` if every constraint and bound holds.
    pub fn evaluate(&self, values: &[i64]) -> Option<i64> {
        if values.len() != self.variables.len() {
            return None;
        }
        for (v, var) in values.iter().zip(&self.variables) {
            if *v < 0 || (var.kind == VarKind::Binary && *v > 1) {
                return None;
            }
        }
        for c in &self.constraints {
            let lhs: i64 = c.terms.iter().map(|&(v, k)| k * values[v]).sum();
            let ok = match c.sense {
                Sense::Le => lhs <= c.rhs,
                Sense::Ge => lhs >= c.rhs,
                Sense::Eq => lhs == c.rhs,
            };
            if !ok {
                return None;
            }
        }
        let lin: i64 = self.objective.iter().map(|&(v, k)| k * values[v]).sum();
        let quad: i64 = self
            .quadratic
            .iter()
            .map(|&(a, b, k)| k * values[a] * values[b])
            .sum();
        Some(lin + quad)
    }
}

struct Layout {
    n_star: usize,
    m_star: usize,
}

impl Layout {
    fn cell(&self, i: usize, j: usize) -> usize {
        i * self.m_star + j
    }
    fn x(&self, i: usize, j: usize) -> usize {
        self.cell(i, j)
    }
    fn z(&self, i: usize, j: usize) -> usize {
        self.n_star * self.m_star + self.cell(i, j)
    }
    fn d(&self, i: usize, j: usize) -> usize {
        2 * self.n_star * self.m_star + self.cell(i, j)
    }
    fn dp(&self, i: usize, j: usize) -> usize {
        3 * self.n_star * self.m_star + self.cell(i, j)
    }
    fn w(&self) -> usize {
        4 * self.n_star * self.m_star
    }
}

fn declare(p: &TypeProfile, with_w: bool) -> (Layout, Vec<Variable>) {
    let l = Layout {
        n_star: p.n_star,
        m_star: p.m_star,
    };
    let mut vars = Vec::new();
    for (prefix, kind) in [
        ("x", VarKind::Integer),
        ("z", VarKind::Integer),
        ("d", VarKind::Binary),
        ("dp", VarKind::Binary),
    ] {
        for i in 0..p.n_star {
            for j in 0..p.m_star {
                vars.push(Variable {
                    name: format!("{prefix}_{i}_{j}"),
                    kind,
                });
            }
        }
    }
    if with_w {
        vars.push(Variable {
            name: "w".into(),
            kind: VarKind::Integer,
        });
    }
    (l, vars)
}

fn row(name: String, terms: Vec<(usize, i64)>, sense: Sense, rhs: i64) -> Constraint {
    Constraint {
        name,
        terms,
        sense,
        rhs,
    }
}

/// Terms `coef · x_{i′ j′}` over all agent types i′ and house types j′ ∈ P(i).
fn valued_sum(p: &TypeProfile, l: &Layout, i: usize, coef: i64) -> Vec<(usize, i64)> {
    let mut t = Vec::new();
    for i2 in 0..p.n_star {
        for j2 in p.valued_types(i) {
            t.push((l.x(i2, j2), coef));
        }
    }
    t
}

fn supply_rows(p: &TypeProfile, l: &Layout, out: &mut Vec<Constraint>) {
    for i in 0..p.n_star {
        out.push(row(
            format!("C1_{i}"),
            (0..p.m_star).map(|j| (l.x(i, j), 1)).collect(),
            Sense::Eq,
            p.agent_counts[i] as i64,
        ));
    }
    for j in 0..p.m_star {
        out.push(row(
            format!("C2_{j}"),
            (0..p.n_star).map(|i| (l.x(i, j), 1)).collect(),
            Sense::Le,
            p.house_counts[j] as i64,
        ));
    }
}

/// Model for the number of envious agents.
pub fn build_p1(p: &TypeProfile) -> ILPModel {
    let (l, variables) = declare(p, false);
    let n = p.n() as i64;
    let nm = n * p.m() as i64;
    let mut cons = Vec::new();
    supply_rows(p, &l, &mut cons);
    for i in 0..p.n_star {
        let ni = p.agent_counts[i] as i64;
        for j in 0..p.m_star {
            if p.valued[i][j] {
                continue;
            }
            cons.push(row(
                format!("C3a_{i}_{j}"),
                vec![(l.x(i, j), 1), (l.dp(i, j), -n)],
                Sense::Le,
                0,
            ));
            let mut t = valued_sum(p, &l, i, 1);
            t.push((l.z(i, j), -nm));
            t.push((l.dp(i, j), nm));
            cons.push(row(format!("C3b_{i}_{j}"), t, Sense::Le, nm));
            let mut t = vec![(l.z(i, j), 1)];
            t.extend(valued_sum(p, &l, i, -ni));
            cons.push(row(format!("C3c_{i}_{j}"), t, Sense::Le, 0));
        }
        for j in 0..p.m_star {
            cons.push(row(
                format!("C4a_{i}_{j}"),
                vec![(l.z(i, j), 1), (l.d(i, j), -ni)],
                Sense::Le,
                0,
            ));
            cons.push(row(
                format!("C4b_{i}_{j}"),
                vec![(l.x(i, j), 1), (l.z(i, j), -1), (l.d(i, j), ni)],
                Sense::Le,
                ni,
            ));
            cons.push(row(
                format!("C4c_{i}_{j}"),
                vec![(l.z(i, j), 1), (l.x(i, j), -1)],
                Sense::Le,
                0,
            ));
        }
        for j in p.valued_types(i) {
            cons.push(row(format!("C5_{i}_{j}"), vec![(l.z(i, j), 1)], Sense::Eq, 0));
        }
    }
    let objective = (0..p.n_star)
        .flat_map(|i| (0..p.m_star).map(move |j| (i, j)))
        .map(|(i, j)| (l.z(i, j), 1))
        .collect();
    ILPModel {
        kind: ModelKind::NumEnvious,
        variables,
        constraints: cons,
        objective,
        quadratic: Vec::new(),
    }
}

fn p2_rows(p: &TypeProfile, l: &Layout, cons: &mut Vec<Constraint>) {
    let n = p.n() as i64;
    let nm = n * p.m() as i64;
    supply_rows(p, l, cons);
    for i in 0..p.n_star {
        for j in 0..p.m_star {
            if p.valued[i][j] {
                continue;
            }
            cons.push(row(
                format!("C3a_{i}_{j}"),
                vec![(l.x(i, j), 1), (l.dp(i, j), -n)],
                Sense::Le,
                0,
            ));
            let mut t = valued_sum(p, l, i, 1);
            t.push((l.z(i, j), -nm));
            t.push((l.dp(i, j), nm));
            cons.push(row(format!("C3b_{i}_{j}"), t, Sense::Le, nm));
        }
        for j in 0..p.m_star {
            cons.push(row(
                format!("C4a_{i}_{j}"),
                vec![(l.z(i, j), 1), (l.d(i, j), -n)],
                Sense::Le,
                0,
            ));
            let mut t = valued_sum(p, l, i, 1);
            t.push((l.z(i, j), -1));
            t.push((l.d(i, j), n));
            cons.push(row(format!("C4b_{i}_{j}"), t, Sense::Le, n));
            let mut t = vec![(l.z(i, j), 1)];
            t.extend(valued_sum(p, l, i, -n));
            cons.push(row(format!("C4c_{i}_{j}"), t, Sense::Le, 0));
        }
        for j in p.valued_types(i) {
            cons.push(row(format!("C5_{i}_{j}"), vec![(l.z(i, j), 1)], Sense::Eq, 0));
        }
    }
}

/// Model for the maximum envy.
pub fn build_p2(p: &TypeProfile) -> ILPModel {
    let (l, variables) = declare(p, true);
    let mut cons = Vec::new();
    p2_rows(p, &l, &mut cons);
    cons.push(row("C7".into(), vec![(l.w(), 1)], Sense::Ge, 0));
    for i in 0..p.n_star {
        for j in 0..p.m_star {
            cons.push(row(
                format!("C8_{i}_{j}"),
                vec![(l.z(i, j), 1), (l.w(), -1)],
                Sense::Le,
                0,
            ));
        }
    }
    ILPModel {
        kind: ModelKind::MaxEnvy,
        variables,
        constraints: cons,
        objective: vec![(l.w(), 1)],
        quadratic: Vec::new(),
    }
}

/// Total envy: the max-envy constraints without `w`, minimizing Σ x_ij · z_ij.
pub fn build_total_envy(p: &TypeProfile) -> ILPModel {
    let (l, variables) = declare(p, false);
    let mut cons = Vec::new();
    p2_rows(p, &l, &mut cons);
    let quadratic = (0..p.n_star)
        .flat_map(|i| (0..p.m_star).map(move |j| (i, j)))
        .map(|(i, j)| (l.x(i, j), l.z(i, j), 1))
        .collect();
    ILPModel {
        kind: ModelKind::TotalEnvy,
        variables,
        constraints: cons,
        objective: Vec::new(),
        quadratic,
    }
}

/// Completes `x` to a full variable vector for `model`, setting the envy
/// variables to the values the allocation induces.
pub fn derive_solution(p: &TypeProfile, x: &TypeAllocation, model: &ILPModel) -> Vec<i64> {
    let l = Layout {
        n_star: p.n_star,
        m_star: p.m_star,
    };
    let mut v = vec![0i64; model.variables.len()];
    let mut w = 0;
    for i in 0..p.n_star {
        let reach = x.valued_allocated(p, i) as i64;
        for j in 0..p.m_star {
            let xij = x.x[i][j] as i64;
            v[l.x(i, j)] = xij;
            let envious = x.cell_envious(p, i, j);
            if !p.valued[i][j] && xij > 0 {
                v[l.dp(i, j)] = 1;
            }
            if envious {
                let z = match model.kind {
                    ModelKind::NumEnvious => xij,
                    _ => reach,
                };
                v[l.z(i, j)] = z;
                v[l.d(i, j)] = 1;
                w = w.max(z);
            }
        }
    }
    if model.kind == ModelKind::MaxEnvy {
        v[l.w()] = w;
    }
    v
}
