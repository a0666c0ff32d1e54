//! Bipartite matchings and rectangular assignment.
//!
//! Maximum matchings use augmenting paths tried from left vertices in index
//! order, with neighbours scanned in ascending order, so results are
//! reproducible. Min-cost assignment is the shortest augmenting path form of
//! the Hungarian method with vertex potentials.

use crate::error::{Error, Result};

/// Bipartite graph with `left` vertices on one side and `right` on the other.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteGraph {
    right: usize,
    adj: Vec<Vec<usize>>,
}

impl BipartiteGraph {
    /// `adj[u]` lists the right neighbours of left vertex `u`.
    pub fn new(right: usize, mut adj: Vec<Vec<usize>>) -> Self {
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
            assert!(list.iter().all(|&v| v < right), "right vertex out of range");
        }
        BipartiteGraph { right, adj }
    }

    pub fn from_edges(left: usize, right: usize, edges: &[(usize, usize)]) -> Self {
        let mut adj = vec![Vec::new(); left];
        for &(u, v) in edges {
            adj[u].push(v);
        }
        BipartiteGraph::new(right, adj)
    }

    pub fn left_count(&self) -> usize {
        self.adj.len()
    }

    pub fn right_count(&self) -> usize {
        self.right
    }

    pub fn neighbors(&self, u: usize) -> &[usize] {
        &self.adj[u]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Adjacency from the right side.
    pub fn right_adjacency(&self) -> Vec<Vec<usize>> {
        let mut radj = vec![Vec::new(); self.right];
        for (u, list) in self.adj.iter().enumerate() {
            for &v in list {
                radj[v].push(u);
            }
        }
        radj
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    left_mate: Vec<Option<usize>>,
    right_mate: Vec<Option<usize>>,
}

impl Matching {
    pub fn empty(left: usize, right: usize) -> Self {
        Matching {
            left_mate: vec![None; left],
            right_mate: vec![None; right],
        }
    }

    /// Builds a matching from pairs; panics if the pairs are not disjoint.
    pub fn from_pairs(left: usize, right: usize, pairs: &[(usize, usize)]) -> Self {
        let mut m = Matching::empty(left, right);
        for &(u, v) in pairs {
            assert!(m.left_mate[u].is_none() && m.right_mate[v].is_none());
            m.left_mate[u] = Some(v);
            m.right_mate[v] = Some(u);
        }
        m
    }

    pub fn size(&self) -> usize {
        self.left_mate.iter().flatten().count()
    }

    /// M(u) for a left vertex.
    pub fn mate_of_left(&self, u: usize) -> Option<usize> {
        self.left_mate[u]
    }

    pub fn mate_of_right(&self, v: usize) -> Option<usize> {
        self.right_mate[v]
    }

    pub fn left_mates(&self) -> &[Option<usize>] {
        &self.left_mate
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.left_mate
            .iter()
            .enumerate()
            .filter_map(|(u, v)| v.map(|v| (u, v)))
            .collect()
    }

    /// True when every pair is an edge of `g` and mates are consistent.
    pub fn is_valid_for(&self, g: &BipartiteGraph) -> bool {
        if self.left_mate.len() != g.left_count() || self.right_mate.len() != g.right_count() {
            return false;
        }
        self.left_mate.iter().enumerate().all(|(u, v)| match v {
            Some(v) => g.has_edge(u, *v) && self.right_mate[*v] == Some(u),
            None => true,
        }) && self.right_mate.iter().enumerate().all(|(v, u)| match u {
            Some(u) => self.left_mate[*u] == Some(v),
            None => true,
        })
    }

    fn set(&mut self, u: usize, v: usize) {
        self.left_mate[u] = Some(v);
        self.right_mate[v] = Some(u);
    }
}

fn augment(g: &BipartiteGraph, u: usize, m: &mut Matching, seen: &mut [bool]) -> bool {
    for &v in g.neighbors(u) {
        if seen[v] {
            continue;
        }
        seen[v] = true;
        let free = match m.right_mate[v] {
            None => true,
            Some(w) => augment(g, w, m, seen),
        };
        if free {
            m.set(u, v);
            return true;
        }
    }
    false
}

/// Tries to grow `m` by an augmenting path starting at the free left vertex `u`.
pub fn augment_from(g: &BipartiteGraph, m: &mut Matching, u: usize) -> bool {
    debug_assert!(m.left_mate[u].is_none());
    let mut seen = vec![false; g.right_count()];
    augment(g, u, m, &mut seen)
}

pub fn max_matching(g: &BipartiteGraph) -> Matching {
    extend_to_maximum(g, Matching::empty(g.left_count(), g.right_count()))
}

/// Grows `m` into a maximum matching. Vertices matched by `m` stay matched.
pub fn extend_to_maximum(g: &BipartiteGraph, mut m: Matching) -> Matching {
    for u in 0..g.left_count() {
        if m.left_mate[u].is_none() {
            augment_from(g, &mut m, u);
        }
    }
    m
}

/// A matching saturating every left vertex in `subset`, if one exists.
pub fn matching_saturating(g: &BipartiteGraph, subset: &[usize]) -> Option<Matching> {
    let mut m = Matching::empty(g.left_count(), g.right_count());
    for &u in subset {
        if m.left_mate[u].is_none() && !augment_from(g, &mut m, u) {
            return None;
        }
    }
    Some(m)
}

/// Vertices reachable by alternating paths from the given left vertices:
/// left to right along non-matching edges, right to left along matching edges.
pub fn alternating_reach_from_left(
    g: &BipartiteGraph,
    m: &Matching,
    starts: &[usize],
) -> (Vec<bool>, Vec<bool>) {
    let mut left = vec![false; g.left_count()];
    let mut right = vec![false; g.right_count()];
    let mut stack: Vec<usize> = Vec::new();
    for &u in starts {
        if !left[u] {
            left[u] = true;
            stack.push(u);
        }
    }
    while let Some(u) = stack.pop() {
        for &v in g.neighbors(u) {
            if right[v] || m.left_mate[u] == Some(v) {
                continue;
            }
            right[v] = true;
            if let Some(w) = m.right_mate[v] {
                if !left[w] {
                    left[w] = true;
                    stack.push(w);
                }
            }
        }
    }
    (left, right)
}

/// Alternating reachability from right vertices: right to left along
/// non-matching edges, left to right along matching edges.
pub fn alternating_reach_from_right(
    g: &BipartiteGraph,
    m: &Matching,
    starts: &[usize],
) -> (Vec<bool>, Vec<bool>) {
    let radj = g.right_adjacency();
    let mut left = vec![false; g.left_count()];
    let mut right = vec![false; g.right_count()];
    let mut stack: Vec<usize> = Vec::new();
    for &v in starts {
        if !right[v] {
            right[v] = true;
            stack.push(v);
        }
    }
    while let Some(v) = stack.pop() {
        for &u in &radj[v] {
            if left[u] || m.right_mate[v] == Some(u) {
                continue;
            }
            left[u] = true;
            if let Some(w) = m.left_mate[u] {
                if !right[w] {
                    right[w] = true;
                    stack.push(w);
                }
            }
        }
    }
    (left, right)
}

/// Rectangular cost matrix; `None` marks a prohibited cell.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CostMatrix {
    rows: usize,
    cols: usize,
    cells: Vec<Option<u64>>,
}

impl CostMatrix {
    /// All cells prohibited.
    pub fn new(rows: usize, cols: usize) -> Self {
        CostMatrix {
            rows,
            cols,
            cells: vec![None; rows * cols],
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Option<u64>) -> Self {
        let mut cells = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                cells.push(f(r, c));
            }
        }
        CostMatrix { rows, cols, cells }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> Option<u64> {
        self.cells[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, cost: Option<u64>) {
        self.cells[r * self.cols + c] = cost;
    }

    /// The prohibitive value: rows · cols · (largest finite cost) + 1, which
    /// exceeds the cost of every assignment avoiding prohibited cells.
    pub fn inf(&self) -> u64 {
        let max = self.cells.iter().flatten().copied().max().unwrap_or(0).max(1);
        (self.rows as u64) * (self.cols as u64) * max + 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assignment {
    pub matching: Matching,
    /// Total cost, counting each prohibited cell used as `inf`.
    pub cost: u64,
    pub inf: u64,
}

impl Assignment {
    /// Whether the assignment avoids every prohibited cell.
    pub fn is_feasible(&self) -> bool {
        self.cost < self.inf
    }

    /// Column assigned to each row.
    pub fn columns(&self) -> Vec<usize> {
        self.matching
            .left_mates()
            .iter()
            .map(|c| c.expect("assignment saturates rows"))
            .collect()
    }
}

/// Minimum-cost assignment saturating every row of a matrix with rows ≤ cols.
pub fn min_cost_assignment(costs: &CostMatrix) -> Result<Assignment> {
    let (n, m) = (costs.rows, costs.cols);
    if n > m {
        return Err(Error::Precondition(format!(
            "cost matrix has more rows than columns ({n} > {m})"
        )));
    }
    let inf = costs.inf();
    let cell = |r: usize, c: usize| -> i64 { costs.get(r, c).unwrap_or(inf) as i64 };

    // 1-based potentials; column 0 is the virtual start.
    let mut u = vec![0i64; n + 1];
    let mut v = vec![0i64; m + 1];
    let mut p = vec![0usize; m + 1];
    let mut way = vec![0usize; m + 1];
    for i in 1..=n {
        p[0] = i;
        let mut j0 = 0usize;
        let mut minv = vec![i64::MAX; m + 1];
        let mut used = vec![false; m + 1];
        loop {
            used[j0] = true;
            let i0 = p[j0];
            let mut delta = i64::MAX;
            let mut j1 = 0usize;
            for j in 1..=m {
                if used[j] {
                    continue;
                }
                let cur = cell(i0 - 1, j - 1) - u[i0] - v[j];
                if cur < minv[j] {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if minv[j] < delta {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for j in 0..=m {
                if used[j] {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else if minv[j] != i64::MAX {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if p[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }

    let mut matching = Matching::empty(n, m);
    let mut cost = 0u64;
    for j in 1..=m {
        if p[j] != 0 {
            matching.set(p[j] - 1, j - 1);
            cost += cell(p[j] - 1, j - 1) as u64;
        }
    }
    Ok(Assignment {
        matching,
        cost,
        inf,
    })
}
