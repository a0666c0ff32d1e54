//! Recognizing instances whose valued sets are all prefixes or suffixes of
//! some house order.
//!
//! Writing each valued set S as a prefix means choosing either S itself
//! (S is a prefix) or its complement (S is a suffix) so that all chosen sets
//! form a chain. Comparability of two choices is a pairwise constraint, so
//! the orientation is a 2-SAT problem.

use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;

use crate::error::Result;
use crate::instance::Instance;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
    Dummy,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtremalDecomposition {
    /// House order: left houses, then dummy houses, then right houses.
    pub sigma: Vec<usize>,
    pub side: Vec<Side>,
    /// Houses valued by some left agent, in `sigma` order.
    pub left_houses: Vec<usize>,
    pub dummy_houses: Vec<usize>,
    /// Houses valued only by right agents, in `sigma` order.
    pub right_houses: Vec<usize>,
    /// Left agents ordered by nested valued sets, smallest first.
    pub left_agents: Vec<usize>,
    /// Right agents ordered by nested valued sets, smallest first.
    pub right_agents: Vec<usize>,
}

impl ExtremalDecomposition {
    /// Checks that every valued set is a prefix or suffix of `sigma` as tagged.
    pub fn is_consistent(&self, instance: &Instance) -> bool {
        let m = instance.m();
        let mut pos = vec![0; m];
        for (i, &h) in self.sigma.iter().enumerate() {
            pos[h] = i;
        }
        (0..instance.n()).all(|a| {
            let ps: Vec<usize> = instance.valued_houses(a).iter().map(|&h| pos[h]).collect();
            let k = ps.len();
            match self.side[a] {
                Side::Dummy => k == 0,
                Side::Left => k > 0 && ps.iter().all(|&p| p < k),
                Side::Right => k > 0 && ps.iter().all(|&p| p >= m - k),
            }
        })
    }
}

fn comparable(a: &[bool], b: &[bool]) -> bool {
    let a_in_b = a.iter().zip(b).all(|(&x, &y)| !x || y);
    let b_in_a = a.iter().zip(b).all(|(&x, &y)| !y || x);
    a_in_b || b_in_a
}

fn complement(s: &[bool]) -> Vec<bool> {
    s.iter().map(|&x| !x).collect()
}

/// Satisfying assignment of a 2-SAT formula over `vars` variables.
///
/// Each clause `((i, vi), (j, vj))` reads "variable i equals vi or variable j equals vj".
fn two_sat(vars: usize, clauses: &[((usize, bool), (usize, bool))]) -> Option<Vec<bool>> {
    // Literal node 2i means "i is true", 2i + 1 means "i is false".
    let lit = |(i, v): (usize, bool)| 2 * i + usize::from(!v);
    let mut g = DiGraph::<(), ()>::new();
    let nodes: Vec<_> = (0..2 * vars).map(|_| g.add_node(())).collect();
    for &(p, q) in clauses {
        let (lp, lq) = (lit(p), lit(q));
        g.add_edge(nodes[lp ^ 1], nodes[lq], ());
        g.add_edge(nodes[lq ^ 1], nodes[lp], ());
    }
    // tarjan_scc lists components in reverse topological order.
    let mut comp = vec![0usize; 2 * vars];
    for (c, scc) in tarjan_scc(&g).into_iter().enumerate() {
        for node in scc {
            comp[node.index()] = c;
        }
    }
    (0..vars)
        .map(|i| {
            let (t, f) = (comp[2 * i], comp[2 * i + 1]);
            (t != f).then_some(t < f)
        })
        .collect()
}

pub fn detect_extremal(instance: &Instance) -> Result<Option<ExtremalDecomposition>> {
    instance.require_binary()?;
    let (n, m) = (instance.n(), instance.m());
    let rows: Vec<Vec<bool>> = (0..n)
        .map(|a| (0..m).map(|h| instance.values(a, h)).collect())
        .collect();

    let mut distinct: Vec<Vec<bool>> = Vec::new();
    let mut set_of = vec![usize::MAX; n];
    for (a, row) in rows.iter().enumerate() {
        if !row.iter().any(|&x| x) {
            continue;
        }
        set_of[a] = match distinct.iter().position(|s| s == row) {
            Some(i) => i,
            None => {
                distinct.push(row.clone());
                distinct.len() - 1
            }
        };
    }

    let k = distinct.len();
    let oriented = |i: usize, left: bool| -> Vec<bool> {
        if left {
            distinct[i].clone()
        } else {
            complement(&distinct[i])
        }
    };
    let mut clauses = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            for vi in [true, false] {
                for vj in [true, false] {
                    if !comparable(&oriented(i, vi), &oriented(j, vj)) {
                        clauses.push(((i, !vi), (j, !vj)));
                    }
                }
            }
        }
    }
    let Some(mut left) = two_sat(k, &clauses) else {
        return Ok(None);
    };

    // Put the lowest-index valued house on the left side.
    if let Some(h0) = (0..m).find(|&h| rows.iter().any(|r| r[h])) {
        let on_left = (0..k).any(|i| left[i] && distinct[i][h0]);
        if !on_left {
            left.iter_mut().for_each(|v| *v = !*v);
        }
    }

    let chain: Vec<Vec<bool>> = (0..k).map(|i| oriented(i, left[i])).collect();
    let key: Vec<usize> = (0..m)
        .map(|h| {
            chain
                .iter()
                .filter(|s| s[h])
                .map(|s| s.iter().filter(|&&x| x).count())
                .min()
                .unwrap_or(usize::MAX)
        })
        .collect();
    let mut sigma: Vec<usize> = (0..m).collect();
    sigma.sort_by_key(|&h| (key[h], h));

    let in_left: Vec<bool> = (0..m)
        .map(|h| (0..k).any(|i| left[i] && distinct[i][h]))
        .collect();
    let in_right: Vec<bool> = (0..m)
        .map(|h| (0..k).any(|i| !left[i] && distinct[i][h]))
        .collect();
    let side: Vec<Side> = (0..n)
        .map(|a| match set_of[a] {
            usize::MAX => Side::Dummy,
            i if left[i] => Side::Left,
            _ => Side::Right,
        })
        .collect();
    let pick = |f: &dyn Fn(usize) -> bool| -> Vec<usize> {
        sigma.iter().copied().filter(|&h| f(h)).collect()
    };
    let left_houses = pick(&|h| in_left[h]);
    let right_houses = pick(&|h| !in_left[h] && in_right[h]);
    let dummy_houses = pick(&|h| !in_left[h] && !in_right[h]);
    let nested = |s: Side| -> Vec<usize> {
        let mut v: Vec<usize> = (0..n).filter(|&a| side[a] == s).collect();
        v.sort_by_key(|&a| (rows[a].iter().filter(|&&x| x).count(), a));
        v
    };
    let dec = ExtremalDecomposition {
        left_agents: nested(Side::Left),
        right_agents: nested(Side::Right),
        sigma,
        side,
        left_houses,
        dummy_houses,
        right_houses,
    };
    debug_assert!(dec.is_consistent(instance));
    Ok(Some(dec))
}
