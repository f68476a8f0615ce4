//! Dense digraphs over vertex ids `0..n`, strong components, reachability.

use crate::bitset::{VertexSet, MAX_VERTICES};
use crate::Error;

pub type Vertex = usize;
/// An arc `(tail, head)`.
pub type Arc = (Vertex, Vertex);

/// Simple digraph: no loops, no parallel arcs. Rows are bitsets.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Digraph {
    n: usize,
    out: Vec<VertexSet>,
    inn: Vec<VertexSet>,
}

impl Digraph {
    pub fn new(n: usize) -> Result<Self, Error> {
        if n > MAX_VERTICES {
            return Err(Error::TooLarge(n, MAX_VERTICES));
        }
        Ok(Digraph {
            n,
            out: vec![VertexSet::EMPTY; n],
            inn: vec![VertexSet::EMPTY; n],
        })
    }

    /// Builds a digraph from an arc list. Duplicate arcs are ignored.
    pub fn from_arcs(n: usize, arcs: &[Arc]) -> Result<Self, Error> {
        let mut g = Digraph::new(n)?;
        for &(a, b) in arcs {
            g.try_add_arc(a, b)?;
        }
        Ok(g)
    }

    /// Complete digraph (every ordered pair is an arc).
    pub fn complete(n: usize) -> Self {
        let mut g = Digraph::new(n).expect("size");
        for a in 0..n {
            for b in 0..n {
                if a != b {
                    g.add_arc(a, b);
                }
            }
        }
        g
    }

    /// Directed cycle `0 -> 1 -> .. -> n-1 -> 0`.
    pub fn cycle(n: usize) -> Self {
        let mut g = Digraph::new(n).expect("size");
        for a in 0..n {
            g.add_arc(a, (a + 1) % n);
        }
        g
    }

    /// Transitive tournament with arcs `i -> j` for `i < j`.
    pub fn transitive_tournament(n: usize) -> Self {
        let mut g = Digraph::new(n).expect("size");
        for a in 0..n {
            for b in a + 1..n {
                g.add_arc(a, b);
            }
        }
        g
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn try_add_arc(&mut self, a: Vertex, b: Vertex) -> Result<(), Error> {
        if a >= self.n {
            return Err(Error::VertexOutOfRange(a));
        }
        if b >= self.n {
            return Err(Error::VertexOutOfRange(b));
        }
        if a == b {
            return Err(Error::Loop(a));
        }
        self.add_arc(a, b);
        Ok(())
    }

    /// Adds `a -> b`. Panics on out-of-range ids; loops are a logic error.
    pub fn add_arc(&mut self, a: Vertex, b: Vertex) {
        debug_assert!(a != b);
        self.out[a].insert(b);
        self.inn[b].insert(a);
    }

    pub fn remove_arc(&mut self, a: Vertex, b: Vertex) {
        self.out[a].remove(b);
        self.inn[b].remove(a);
    }

    #[inline]
    pub fn has_arc(&self, a: Vertex, b: Vertex) -> bool {
        self.out[a].contains(b)
    }

    pub fn adjacent(&self, a: Vertex, b: Vertex) -> bool {
        self.has_arc(a, b) || self.has_arc(b, a)
    }

    #[inline]
    pub fn out_nbrs(&self, v: Vertex) -> VertexSet {
        self.out[v]
    }

    #[inline]
    pub fn in_nbrs(&self, v: Vertex) -> VertexSet {
        self.inn[v]
    }

    pub fn out_degree(&self, v: Vertex) -> usize {
        self.out[v].len()
    }

    pub fn in_degree(&self, v: Vertex) -> usize {
        self.inn[v].len()
    }

    pub fn arc_count(&self) -> usize {
        self.out.iter().map(|s| s.len()).sum()
    }

    /// All arcs, sorted by tail then head.
    pub fn arcs(&self) -> Vec<Arc> {
        let mut v = Vec::with_capacity(self.arc_count());
        for a in 0..self.n {
            for b in self.out[a] {
                v.push((a, b));
            }
        }
        v
    }

    /// Arcs with both ends in `within`.
    pub fn arcs_within(&self, within: VertexSet) -> Vec<Arc> {
        let mut v = Vec::new();
        for a in within {
            for b in self.out[a].inter(within) {
                v.push((a, b));
            }
        }
        v
    }

    /// Arcs from `x` to `y` (as sets).
    pub fn arcs_between(&self, x: VertexSet, y: VertexSet) -> Vec<Arc> {
        let mut v = Vec::new();
        for a in x {
            for b in self.out[a].inter(y) {
                v.push((a, b));
            }
        }
        v
    }

    pub fn count_arcs_between(&self, x: VertexSet, y: VertexSet) -> usize {
        x.iter().map(|a| self.out[a].inter(y).len()).sum()
    }

    /// Reverse every arc.
    pub fn converse(&self) -> Digraph {
        Digraph {
            n: self.n,
            out: self.inn.clone(),
            inn: self.out.clone(),
        }
    }

    /// Induced subdigraph relabelled to `0..|set|` in increasing id order.
    /// Returns the subdigraph and the map new id -> old id.
    pub fn induced(&self, set: VertexSet) -> (Digraph, Vec<Vertex>) {
        let map: Vec<Vertex> = set.to_vec();
        let mut pos = vec![usize::MAX; self.n];
        for (i, &v) in map.iter().enumerate() {
            pos[v] = i;
        }
        let mut g = Digraph::new(map.len()).expect("size");
        for (i, &a) in map.iter().enumerate() {
            for b in self.out[a].inter(set) {
                g.add_arc(i, pos[b]);
            }
        }
        (g, map)
    }

    /// Copy with the arcs in `arcs` deleted.
    pub fn without_arcs(&self, arcs: &[Arc]) -> Digraph {
        let mut g = self.clone();
        for &(a, b) in arcs {
            g.remove_arc(a, b);
        }
        g
    }

    /// Vertices reachable from `from` using only vertices in `within`.
    pub fn reach_within(&self, from: VertexSet, within: VertexSet) -> VertexSet {
        let mut seen = from.inter(within);
        let mut frontier = seen;
        while !frontier.is_empty() {
            let mut next = VertexSet::EMPTY;
            for a in frontier {
                next = next.union(self.out[a]);
            }
            next = next.inter(within).minus(seen);
            seen = seen.union(next);
            frontier = next;
        }
        seen
    }

    /// Vertices that reach `to` using only vertices in `within`.
    pub fn coreach_within(&self, to: VertexSet, within: VertexSet) -> VertexSet {
        let mut seen = to.inter(within);
        let mut frontier = seen;
        while !frontier.is_empty() {
            let mut next = VertexSet::EMPTY;
            for a in frontier {
                next = next.union(self.inn[a]);
            }
            next = next.inter(within).minus(seen);
            seen = seen.union(next);
            frontier = next;
        }
        seen
    }

    pub fn reach(&self, v: Vertex) -> VertexSet {
        self.reach_within(VertexSet::singleton(v), self.vertices())
    }

    pub fn coreach(&self, v: Vertex) -> VertexSet {
        self.coreach_within(VertexSet::singleton(v), self.vertices())
    }

    pub fn is_strong(&self) -> bool {
        self.n <= 1 || (self.reach(0) == self.vertices() && self.coreach(0) == self.vertices())
    }

    /// `D<within>` is strong (the empty set and singletons count as strong).
    pub fn is_strong_within(&self, within: VertexSet) -> bool {
        match within.first() {
            None => true,
            Some(x) => {
                let s = VertexSet::singleton(x);
                self.reach_within(s, within) == within && self.coreach_within(s, within) == within
            }
        }
    }

    /// Out-degree of a vertex set: number of arcs leaving `x`.
    pub fn set_out_degree(&self, x: VertexSet) -> usize {
        self.count_arcs_between(x, self.vertices().minus(x))
    }

    /// In-degree of a vertex set: number of arcs entering `x`.
    pub fn set_in_degree(&self, x: VertexSet) -> usize {
        self.count_arcs_between(self.vertices().minus(x), x)
    }

    /// No loops, and every pair of distinct vertices is adjacent.
    pub fn is_semicomplete(&self) -> bool {
        (0..self.n).all(|a| self.out[a].union(self.inn[a]).with(a) == self.vertices())
    }
}

impl std::fmt::Debug for Digraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Digraph(n={}, arcs={:?})", self.n, self.arcs())
    }
}

/// Strong components in an acyclic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SccDecomposition {
    pub components: Vec<VertexSet>,
    pub component_of: Vec<usize>,
    entering: Vec<bool>,
    leaving: Vec<bool>,
}

impl SccDecomposition {
    pub fn count(&self) -> usize {
        self.components.len()
    }

    pub fn is_strong(&self) -> bool {
        self.components.len() <= 1
    }

    /// Components with no entering arcs.
    pub fn initial(&self) -> Vec<usize> {
        (0..self.count()).filter(|&i| !self.entering[i]).collect()
    }

    /// Components with no leaving arcs.
    pub fn terminal(&self) -> Vec<usize> {
        (0..self.count()).filter(|&i| !self.leaving[i]).collect()
    }

    /// The vertex lies in an initial component and that component is unique.
    pub fn in_unique_initial(&self, v: Vertex) -> bool {
        let ini = self.initial();
        ini.len() == 1 && self.component_of[v] == ini[0]
    }

    pub fn in_unique_terminal(&self, v: Vertex) -> bool {
        let ter = self.terminal();
        ter.len() == 1 && self.component_of[v] == ter[0]
    }
}

/// Strong components of `g`, topologically ordered; ties go to the component
/// holding the lowest vertex.
pub fn strong_components(g: &Digraph) -> SccDecomposition {
    strong_components_within(g, g.vertices())
}

/// Strong components of `g<within>`. Vertices outside `within` get
/// `usize::MAX` in `component_of`.
pub fn strong_components_within(g: &Digraph, within: VertexSet) -> SccDecomposition {
    let n = g.n();
    let mut comps: Vec<VertexSet> = Vec::new();
    let mut left = within;
    while let Some(x) = left.first() {
        let s = VertexSet::singleton(x);
        let c = g.reach_within(s, within).inter(g.coreach_within(s, within));
        comps.push(c);
        left = left.minus(c);
    }
    // Kahn ordering over the condensation, lowest-vertex tie break.
    let k = comps.len();
    let mut cof = vec![usize::MAX; n];
    for (i, c) in comps.iter().enumerate() {
        for v in *c {
            cof[v] = i;
        }
    }
    let mut succ = vec![Vec::new(); k];
    let mut indeg = vec![0usize; k];
    for i in 0..k {
        let mut outs = VertexSet::EMPTY;
        for v in comps[i] {
            outs = outs.union(g.out_nbrs(v));
        }
        let mut targets: Vec<usize> = outs.inter(within).minus(comps[i]).iter().map(|w| cof[w]).collect();
        targets.sort_unstable();
        targets.dedup();
        for t in targets {
            succ[i].push(t);
            indeg[t] += 1;
        }
    }
    let mut order = Vec::with_capacity(k);
    let mut ready: Vec<usize> = (0..k).filter(|&i| indeg[i] == 0).collect();
    let mut entering = vec![false; k];
    let mut leaving = vec![false; k];
    for i in 0..k {
        leaving[i] = !succ[i].is_empty();
        for &t in &succ[i] {
            entering[t] = true;
        }
    }
    while !ready.is_empty() {
        // components were created in lowest-vertex order, so index order is vertex order
        ready.sort_unstable();
        let i = ready.remove(0);
        order.push(i);
        for &t in &succ[i] {
            indeg[t] -= 1;
            if indeg[t] == 0 {
                ready.push(t);
            }
        }
    }
    let components: Vec<VertexSet> = order.iter().map(|&i| comps[i]).collect();
    let mut component_of = vec![usize::MAX; n];
    for (i, c) in components.iter().enumerate() {
        for v in *c {
            component_of[v] = i;
        }
    }
    SccDecomposition {
        components,
        component_of,
        entering: order.iter().map(|&i| entering[i]).collect(),
        leaving: order.iter().map(|&i| leaving[i]).collect(),
    }
}

/// The unique initial component of `g<within>`, if there is exactly one.
pub fn initial_component(g: &Digraph, within: VertexSet) -> Option<VertexSet> {
    let d = strong_components_within(g, within);
    let ini = d.initial();
    (ini.len() == 1).then(|| d.components[ini[0]])
}

/// The unique terminal component of `g<within>`, if there is exactly one.
pub fn terminal_component(g: &Digraph, within: VertexSet) -> Option<VertexSet> {
    let d = strong_components_within(g, within);
    let ter = d.terminal();
    (ter.len() == 1).then(|| d.components[ter[0]])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[usize]) -> VertexSet {
        v.iter().copied().collect()
    }

    #[test]
    fn cycle_is_one_component() {
        let d = strong_components(&Digraph::cycle(3));
        assert_eq!(d.components, vec![set(&[0, 1, 2])]);
        assert!(d.is_strong());
    }

    #[test]
    fn transitive_tournament_is_a_chain() {
        let d = strong_components(&Digraph::transitive_tournament(3));
        assert_eq!(d.components, vec![set(&[0]), set(&[1]), set(&[2])]);
        assert_eq!(d.initial(), vec![0]);
        assert_eq!(d.terminal(), vec![2]);
    }

    #[test]
    fn tt3_with_arcless_middle() {
        // u=0, a=1, b=2, v=3
        let g = Digraph::from_arcs(4, &[(0, 1), (0, 2), (1, 3), (2, 3), (0, 3)]).unwrap();
        let d = strong_components(&g);
        assert_eq!(d.components, vec![set(&[0]), set(&[1]), set(&[2]), set(&[3])]);
        assert!(d.in_unique_initial(0));
        assert!(d.in_unique_terminal(3));
        assert_eq!(d.initial(), vec![0]);
        assert_eq!(d.terminal(), vec![3]);
    }

    #[test]
    fn arcs_go_forward_in_order() {
        let g = Digraph::from_arcs(5, &[(4, 3), (3, 4), (3, 0), (0, 1), (1, 0), (2, 1)]).unwrap();
        let d = strong_components(&g);
        for (a, b) in g.arcs() {
            assert!(d.component_of[a] <= d.component_of[b]);
        }
    }

    #[test]
    fn converse_and_induced_round_trip() {
        let g = Digraph::from_arcs(4, &[(0, 1), (1, 2), (2, 0), (3, 0)]).unwrap();
        assert_eq!(g.converse().converse(), g);
        assert_eq!(g.induced(g.vertices()).0, g);
        let (h, map) = g.induced(set(&[0, 2, 3]));
        assert_eq!(map, vec![0, 2, 3]);
        assert_eq!(h.arcs(), vec![(1, 0), (2, 0)]);
    }

    #[test]
    fn rejects_loops_and_range() {
        assert_eq!(Digraph::from_arcs(2, &[(1, 1)]), Err(Error::Loop(1)));
        assert_eq!(Digraph::from_arcs(2, &[(0, 2)]), Err(Error::VertexOutOfRange(2)));
        assert!(Digraph::new(129).is_err());
    }
}
