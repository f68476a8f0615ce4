//! Engine-side exact search for a pair of branchings with a prescribed set of
//! common arcs, restricted to an induced subdigraph.
//!
//! Used by the constructive branches on small cores; every result is verified
//! by the caller. Vertex order is chosen dynamically (fewest parent choices
//! first) and parents are tried by decreasing residual out-degree, which
//! differs from the fixed-order enumeration in [`crate::oracle`].

use crate::bitset::VertexSet;
use crate::branching::{extend_pair_within, find_branching_within, Branching, BranchingPair, Orientation};
use crate::graph::{Arc, Digraph, Vertex};
use crate::Error;

/// Default node budget for one search.
pub const DEFAULT_BUDGET: u64 = 20_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(BranchingPair),
    NotFound,
    Exhausted,
}

/// A good `(u, v)`-pair of `g<within>`.
pub fn search_good_pair(g: &Digraph, within: VertexSet, u: Vertex, v: Vertex, budget: u64) -> SearchOutcome {
    search_pair(g, within, u, v, &[], budget)
}

/// An out-branching at `u` and an in-branching at `v` of `g<within>` whose
/// common arcs are exactly `forced`.
pub fn search_pair(g: &Digraph, within: VertexSet, u: Vertex, v: Vertex, forced: &[Arc], budget: u64) -> SearchOutcome {
    if !within.contains(u) || !within.contains(v) {
        return SearchOutcome::NotFound;
    }
    let n = g.n();
    let mut fixed_parent = vec![None; n];
    let mut residual = g.clone();
    let mut tails = VertexSet::EMPTY;
    for &(t, h) in forced {
        if !within.contains(t) || !within.contains(h) || !g.has_arc(t, h) || h == u || t == v {
            return SearchOutcome::NotFound;
        }
        if fixed_parent[h].is_some() || tails.contains(t) {
            return SearchOutcome::NotFound;
        }
        fixed_parent[h] = Some(t);
        tails.insert(t);
    }
    // in-branching must use the forced arc out of each forced tail
    for &(t, h) in forced {
        for w in g.out_nbrs(t).without(h) {
            residual.remove_arc(t, w);
        }
    }
    if g.reach_within(VertexSet::singleton(u), within) != within {
        return SearchOutcome::NotFound;
    }
    let mut s = Search {
        g,
        within,
        v,
        fixed_parent,
        forced_set: forced.iter().copied().collect(),
        parent: vec![None; n],
        assigned: VertexSet::singleton(u),
        residual,
        nodes: 0,
        budget,
    };
    if !s.feasible() {
        return SearchOutcome::NotFound;
    }
    match s.dfs() {
        Some(true) => {
            let out_arcs: Vec<Arc> = within.without(u).iter().map(|x| (s.parent[x].unwrap(), x)).collect();
            let out = Branching::from_arcs(n, Orientation::Out, u, &out_arcs).expect("valid parent map");
            let inn = find_branching_within(&s.residual, v, Orientation::In, within).expect("feasible residual");
            SearchOutcome::Found(BranchingPair::new(out, inn))
        }
        Some(false) => SearchOutcome::NotFound,
        None => SearchOutcome::Exhausted,
    }
}

/// Inputs up to this size go straight to exact search.
pub const SMALL_INSTANCE: usize = 9;

/// A good `(u, v)`-pair of `g<within>`, which the caller asserts exists.
///
/// Small instances are searched exactly. Larger ones delete a vertex `x`
/// (not a root, with in- and out-neighbours left over) for which
/// `still_yes(within - x)` holds, recurse, and hang `x` back on. Failing
/// that, one long exact search is run.
pub fn construct_by_deletion(
    g: &Digraph,
    within: VertexSet,
    u: Vertex,
    v: Vertex,
    still_yes: &mut dyn FnMut(VertexSet) -> Result<bool, Error>,
) -> Result<BranchingPair, Error> {
    if within.len() <= SMALL_INSTANCE {
        match search_good_pair(g, within, u, v, DEFAULT_BUDGET) {
            SearchOutcome::Found(p) => return Ok(p),
            SearchOutcome::NotFound => return Err(Error::Internal("exact search found no pair on a yes-instance".into())),
            SearchOutcome::Exhausted => {}
        }
    }
    for x in within.without(u).without(v) {
        let sub = within.without(x);
        if !g.in_nbrs(x).intersects(sub) || !g.out_nbrs(x).intersects(sub) {
            continue;
        }
        if g.reach_within(VertexSet::singleton(u), sub) != sub || g.coreach_within(VertexSet::singleton(v), sub) != sub {
            continue;
        }
        if still_yes(sub)? {
            let pair = construct_by_deletion(g, sub, u, v, still_yes)?;
            return extend_pair_within(g, within, VertexSet::singleton(x), &pair);
        }
    }
    match search_good_pair(g, within, u, v, DEFAULT_BUDGET.saturating_mul(50)) {
        SearchOutcome::Found(p) => Ok(p),
        SearchOutcome::NotFound => Err(Error::Internal("exact search found no pair on a yes-instance".into())),
        SearchOutcome::Exhausted => Err(Error::ResourceExceeded),
    }
}

struct Search<'a> {
    g: &'a Digraph,
    within: VertexSet,
    v: Vertex,
    fixed_parent: Vec<Option<Vertex>>,
    forced_set: std::collections::BTreeSet<Arc>,
    parent: Vec<Option<Vertex>>,
    assigned: VertexSet,
    residual: Digraph,
    nodes: u64,
    budget: u64,
}

impl Search<'_> {
    fn feasible(&self) -> bool {
        self.residual.coreach_within(VertexSet::singleton(self.v), self.within) == self.within
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

    fn candidates(&self, x: Vertex) -> Vec<Vertex> {
        let mut c: Vec<Vertex> = match self.fixed_parent[x] {
            Some(t) => vec![t],
            None => self.g.in_nbrs(x).inter(self.within).iter().filter(|&p| !self.closes_cycle(p, x)).collect(),
        };
        c.sort_by_key(|&p| std::cmp::Reverse(self.residual.out_nbrs(p).inter(self.within).len()));
        c
    }

    /// `Some(found)` or `None` when the budget ran out.
    fn dfs(&mut self) -> Option<bool> {
        let left = self.within.minus(self.assigned);
        if left.is_empty() {
            return Some(true);
        }
        // most constrained vertex first
        let mut best: Option<(Vertex, Vec<Vertex>)> = None;
        for x in left {
            let c = self.candidates(x);
            if c.is_empty() {
                return Some(false);
            }
            if best.as_ref().map_or(true, |(_, b)| c.len() < b.len()) {
                let one = c.len() == 1;
                best = Some((x, c));
                if one {
                    break;
                }
            }
        }
        let (x, cands) = best.unwrap();
        for p in cands {
            self.nodes += 1;
            if self.nodes > self.budget {
                return None;
            }
            if self.closes_cycle(p, x) {
                continue;
            }
            let drop = !self.forced_set.contains(&(p, x));
            self.parent[x] = Some(p);
            self.assigned.insert(x);
            if drop {
                self.residual.remove_arc(p, x);
            }
            if self.feasible() {
                match self.dfs() {
                    Some(true) => return Some(true),
                    Some(false) => {}
                    None => return None,
                }
            }
            if drop {
                self.residual.add_arc(p, x);
            }
            self.assigned.remove(x);
            self.parent[x] = None;
        }
        Some(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::branching::verify_good_pair;

    #[test]
    fn finds_pair_in_complete_digraph() {
        let k4 = Digraph::complete(4);
        for u in 0..4 {
            for v in 0..4 {
                match search_good_pair(&k4, k4.vertices(), u, v, DEFAULT_BUDGET) {
                    SearchOutcome::Found(p) => assert_eq!(verify_good_pair(&k4, u, v, &p), Ok(())),
                    other => panic!("{u} {v} {other:?}"),
                }
            }
        }
    }

    #[test]
    fn forced_sharing_in_a_cycle() {
        // C3 with u=v=0: any pair shares exactly the arc 1->2
        let c3 = Digraph::cycle(3);
        assert_eq!(search_good_pair(&c3, c3.vertices(), 0, 0, DEFAULT_BUDGET), SearchOutcome::NotFound);
        match search_pair(&c3, c3.vertices(), 0, 0, &[(1, 2)], DEFAULT_BUDGET) {
            SearchOutcome::Found(p) => assert_eq!(p.shared, vec![(1, 2)]),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn respects_the_vertex_mask() {
        let mut g = Digraph::complete(3);
        let mut big = Digraph::new(4).unwrap();
        for (a, b) in g.arcs() {
            big.add_arc(a, b);
        }
        g = big;
        let within: VertexSet = [0, 1, 2].into_iter().collect();
        match search_good_pair(&g, within, 0, 1, DEFAULT_BUDGET) {
            SearchOutcome::Found(p) => assert_eq!(p.out.span, within),
            other => panic!("{other:?}"),
        }
    }
}
