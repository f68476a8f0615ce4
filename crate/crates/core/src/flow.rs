//! Unit-capacity max-flow: local arc-connectivity, arc-disjoint paths, cuts.

use crate::bitset::VertexSet;
use crate::graph::{Arc, Digraph, Vertex};
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CutDirection {
    Out,
    In,
}

/// A vertex set together with the arcs crossing its boundary in one direction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutWitness {
    pub side: VertexSet,
    pub direction: CutDirection,
    pub crossing: Vec<Arc>,
}

impl CutWitness {
    /// Arcs leaving `side`.
    pub fn out_of(g: &Digraph, side: VertexSet) -> Self {
        CutWitness {
            side,
            direction: CutDirection::Out,
            crossing: g.arcs_between(side, g.vertices().minus(side)),
        }
    }

    /// Arcs entering `side`.
    pub fn into(g: &Digraph, side: VertexSet) -> Self {
        CutWitness {
            side,
            direction: CutDirection::In,
            crossing: g.arcs_between(g.vertices().minus(side), side),
        }
    }

    /// The crossing list is exactly the boundary of `side` in `g`.
    pub fn is_consistent(&self, g: &Digraph) -> bool {
        let expect = match self.direction {
            CutDirection::Out => CutWitness::out_of(g, self.side),
            CutDirection::In => CutWitness::into(g, self.side),
        };
        expect.crossing == self.crossing
    }
}

/// Flow state: `flow[a]` holds the heads of saturated arcs out of `a`.
struct Flow<'g> {
    g: &'g Digraph,
    flow: Vec<VertexSet>,
    value: usize,
}

impl<'g> Flow<'g> {
    fn new(g: &'g Digraph) -> Self {
        Flow { g, flow: vec![VertexSet::EMPTY; g.n()], value: 0 }
    }

    /// Residual out-neighbours of `a`.
    fn residual(&self, a: Vertex) -> VertexSet {
        let fwd = self.g.out_nbrs(a).minus(self.flow[a]);
        // cancel flow on b -> a
        let mut back = VertexSet::EMPTY;
        for b in self.g.in_nbrs(a) {
            if self.flow[b].contains(a) {
                back.insert(b);
            }
        }
        fwd.union(back)
    }

    /// One BFS augmentation; returns false when no augmenting path exists.
    fn augment(&mut self, s: Vertex, t: Vertex) -> bool {
        self.augment_from(VertexSet::singleton(s), t)
    }

    /// Augmentation from any vertex of `sources`.
    fn augment_from(&mut self, sources: VertexSet, t: Vertex) -> bool {
        let n = self.g.n();
        let mut pred = vec![usize::MAX; n];
        let mut seen = sources;
        let mut queue: std::collections::VecDeque<Vertex> = sources.iter().collect();
        while let Some(a) = queue.pop_front() {
            if a == t {
                break;
            }
            for b in self.residual(a).minus(seen) {
                seen.insert(b);
                pred[b] = a;
                queue.push_back(b);
            }
        }
        if !seen.contains(t) {
            return false;
        }
        let mut b = t;
        while !sources.contains(b) {
            let a = pred[b];
            if self.flow[b].contains(a) {
                self.flow[b].remove(a);
            } else {
                self.flow[a].insert(b);
            }
            b = a;
        }
        self.value += 1;
        true
    }

    fn run(&mut self, s: Vertex, t: Vertex, limit: usize) {
        while self.value < limit && self.augment(s, t) {}
    }

    /// Vertices reachable from `s` in the residual graph.
    fn source_side(&self, s: Vertex) -> VertexSet {
        let mut seen = VertexSet::singleton(s);
        let mut stack = vec![s];
        while let Some(a) = stack.pop() {
            for b in self.residual(a).minus(seen) {
                seen.insert(b);
                stack.push(b);
            }
        }
        seen
    }

    /// Decompose the flow into `value` simple paths (cycles are dropped).
    fn paths(&self, s: Vertex, t: Vertex) -> Vec<Vec<Vertex>> {
        let mut left = self.flow.clone();
        let mut out = Vec::new();
        for _ in 0..self.value {
            let mut path = vec![s];
            let mut cur = s;
            while cur != t {
                let nxt = left[cur].first().expect("flow conservation");
                left[cur].remove(nxt);
                if let Some(pos) = path.iter().position(|&x| x == nxt) {
                    path.truncate(pos + 1);
                } else {
                    path.push(nxt);
                }
                cur = nxt;
            }
            out.push(path);
        }
        out
    }
}

/// Maximum number of arc-disjoint `(x, y)`-paths and a minimum cut, given as
/// the set of vertices on the `x` side with its leaving arcs.
pub fn local_arc_connectivity(g: &Digraph, x: Vertex, y: Vertex) -> Result<(usize, CutWitness), Error> {
    check_pair(g, x, y)?;
    let mut f = Flow::new(g);
    f.run(x, y, usize::MAX);
    let side = f.source_side(x);
    Ok((f.value, CutWitness::out_of(g, side)))
}

/// `min(k, lambda(x, y))` without computing more flow than needed.
pub fn arc_connectivity_at_least(g: &Digraph, x: Vertex, y: Vertex, k: usize) -> bool {
    if x == y {
        return true;
    }
    let mut f = Flow::new(g);
    f.run(x, y, k);
    f.value >= k
}

/// At least `k` arc-disjoint paths from the set `from` to `y`.
pub fn set_arc_connectivity_at_least(g: &Digraph, from: VertexSet, y: Vertex, k: usize) -> bool {
    if from.contains(y) {
        return true;
    }
    let mut f = Flow::new(g);
    while f.value < k && f.augment_from(from, y) {}
    f.value >= k
}

/// `k` pairwise arc-disjoint `(x, y)`-paths, or a cut with fewer than `k`
/// leaving arcs separating `x` from `y`.
pub fn arc_disjoint_paths(g: &Digraph, x: Vertex, y: Vertex, k: usize) -> Result<Result<Vec<Vec<Vertex>>, CutWitness>, Error> {
    check_pair(g, x, y)?;
    let mut f = Flow::new(g);
    f.run(x, y, k);
    if f.value >= k {
        Ok(Ok(f.paths(x, y)))
    } else {
        Ok(Err(CutWitness::out_of(g, f.source_side(x))))
    }
}

/// `Ok(())` when `g` is `k`-arc-strong, otherwise a set with fewer than `k`
/// leaving arcs.
pub fn is_k_arc_strong(g: &Digraph, k: usize) -> Result<(), CutWitness> {
    let n = g.n();
    if n < 2 || k == 0 {
        return Ok(());
    }
    for y in 1..n {
        for (s, t) in [(0, y), (y, 0)] {
            let mut f = Flow::new(g);
            f.run(s, t, k);
            if f.value < k {
                return Err(CutWitness::out_of(g, f.source_side(s)));
            }
        }
    }
    Ok(())
}

fn check_pair(g: &Digraph, x: Vertex, y: Vertex) -> Result<(), Error> {
    for v in [x, y] {
        if v >= g.n() {
            return Err(Error::VertexOutOfRange(v));
        }
    }
    if x == y {
        return Err(Error::InvalidQuery(format!("source and sink coincide ({x})")));
    }
    Ok(())
}

/// Arcs of a vertex path.
pub fn path_arcs(path: &[Vertex]) -> Vec<Arc> {
    path.windows(2).map(|w| (w[0], w[1])).collect()
}
