//! Brute-force ground truth: enumerate out-arborescences rooted at `u` and
//! test whether the remaining arcs still let every vertex reach `v`.
//!
//! Deliberately shares nothing with the engines beyond the digraph type and
//! the pair container.

use std::collections::BTreeSet;

use crate::bitset::VertexSet;
use crate::branching::{Branching, BranchingPair, Orientation};
use crate::graph::{Arc, Digraph, Vertex};
use crate::Error;

#[derive(Clone, Copy, Debug)]
pub struct OracleLimits {
    pub max_vertices: usize,
    pub node_budget: u64,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits { max_vertices: 9, node_budget: 200_000_000 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleAnswer {
    Yes(BranchingPair),
    No,
    ResourceExceeded,
}

impl OracleAnswer {
    pub fn is_yes(&self) -> bool {
        matches!(self, OracleAnswer::Yes(_))
    }
}

/// Exact existence of a good `(u, v)`-pair.
pub fn oracle_good_pair(g: &Digraph, u: Vertex, v: Vertex, limits: OracleLimits) -> Result<OracleAnswer, Error> {
    oracle_pair_sharing_only(g, u, v, &[], limits)
}

/// Exact existence of an out-branching at `u` and in-branching at `v` whose
/// common arcs all lie in `allowed`.
pub fn oracle_pair_sharing_only(g: &Digraph, u: Vertex, v: Vertex, allowed: &[Arc], limits: OracleLimits) -> Result<OracleAnswer, Error> {
    let n = g.n();
    if n > limits.max_vertices {
        return Err(Error::TooLarge(n, limits.max_vertices));
    }
    if u >= n || v >= n {
        return Err(Error::VertexOutOfRange(u.max(v)));
    }
    let all = g.vertices();
    if g.reach(u) != all || g.coreach(v) != all {
        return Ok(OracleAnswer::No);
    }
    let allowed: BTreeSet<Arc> = allowed.iter().copied().collect();
    let mut st = State {
        g,
        v,
        allowed: &allowed,
        order: (0..n).filter(|&x| x != u).collect(),
        parent: vec![None; n],
        residual: g.clone(),
        nodes: 0,
        budget: limits.node_budget,
    };
    match st.dfs(0) {
        Step::Found => {
            let out_arcs: Vec<Arc> = st.order.iter().map(|&x| (st.parent[x].unwrap(), x)).collect();
            let out = Branching::from_arcs(n, Orientation::Out, u, &out_arcs).expect("valid parent map");
            let inn = in_tree(&st.residual, v).expect("checked by pruning");
            Ok(OracleAnswer::Yes(BranchingPair::new(out, inn)))
        }
        Step::Dead => Ok(OracleAnswer::No),
        Step::Budget => Ok(OracleAnswer::ResourceExceeded),
    }
}

enum Step {
    Found,
    Dead,
    Budget,
}

struct State<'a> {
    g: &'a Digraph,
    v: Vertex,
    allowed: &'a BTreeSet<Arc>,
    order: Vec<Vertex>,
    parent: Vec<Option<Vertex>>,
    residual: Digraph,
    nodes: u64,
    budget: u64,
}

impl State<'_> {
    fn dfs(&mut self, i: usize) -> Step {
        if i == self.order.len() {
            return Step::Found;
        }
        let x = self.order[i];
        for p in self.g.in_nbrs(x) {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Step::Budget;
            }
            if self.closes_cycle(p, x) {
                continue;
            }
            self.parent[x] = Some(p);
            let drop = !self.allowed.contains(&(p, x));
            if drop {
                self.residual.remove_arc(p, x);
            }
            if self.residual.coreach(self.v) == self.g.vertices() {
                match self.dfs(i + 1) {
                    Step::Dead => {}
                    other => return other,
                }
            }
            if drop {
                self.residual.add_arc(p, x);
            }
            self.parent[x] = None;
        }
        Step::Dead
    }

    fn closes_cycle(&self, p: Vertex, x: Vertex) -> bool {
        let mut cur = p;
        loop {
            if cur == x {
                return true;
            }
            match self.parent[cur] {
                Some(q) => cur = q,
                None => return false,
            }
        }
    }
}

fn in_tree(g: &Digraph, v: Vertex) -> Option<Branching> {
    let mut b = Branching::trivial(g.n(), Orientation::In, v);
    let mut stack = vec![v];
    while let Some(y) = stack.pop() {
        for x in g.in_nbrs(y).minus(b.span) {
            b.attach(x, y);
            stack.push(x);
        }
    }
    (b.span == VertexSet::full(g.n())).then_some(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::branching::verify_good_pair;

    fn ask(g: &Digraph, u: Vertex, v: Vertex) -> OracleAnswer {
        oracle_good_pair(g, u, v, OracleLimits::default()).unwrap()
    }

    #[test]
    fn complete_three_has_pair() {
        let k3 = Digraph::complete(3);
        match ask(&k3, 0, 0) {
            OracleAnswer::Yes(p) => assert_eq!(verify_good_pair(&k3, 0, 0, &p), Ok(())),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn single_arc_has_none() {
        let a = Digraph::from_arcs(2, &[(0, 1)]).unwrap();
        assert_eq!(ask(&a, 0, 1), OracleAnswer::No);
    }

    #[test]
    fn tt3_with_arcless_middle_has_none() {
        let g = Digraph::from_arcs(4, &[(0, 1), (0, 2), (1, 3), (2, 3), (0, 3)]).unwrap();
        assert_eq!(ask(&g, 0, 3), OracleAnswer::No);
    }

    #[test]
    fn size_bound_is_enforced() {
        let g = Digraph::complete(10);
        assert!(oracle_good_pair(&g, 0, 0, OracleLimits::default()).is_err());
    }

    #[test]
    fn budget_is_reported() {
        let g = Digraph::from_arcs(4, &[(0, 1), (0, 2), (1, 3), (2, 3), (0, 3)]).unwrap();
        let lim = OracleLimits { max_vertices: 9, node_budget: 1 };
        assert_eq!(oracle_good_pair(&g, 0, 3, lim).unwrap(), OracleAnswer::ResourceExceeded);
    }
}
