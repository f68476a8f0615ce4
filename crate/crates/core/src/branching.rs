//! Out- and in-branchings, good pairs, Edmonds packing and the extension step
//! that grows a good pair on `D - X` to one on `D`.

use std::fmt;

use crate::bitset::VertexSet;
use crate::flow::{arc_connectivity_at_least, arc_disjoint_paths, path_arcs, set_arc_connectivity_at_least, CutWitness};
use crate::graph::{Arc, Digraph, Vertex};
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    Out,
    In,
}

/// A rooted tree spanning `span`, stored as a parent map over global vertex
/// ids. For an out-branching `parent[x]` is the tail of the arc into `x`; for
/// an in-branching it is the head of the arc out of `x`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Branching {
    pub orientation: Orientation,
    pub root: Vertex,
    pub span: VertexSet,
    pub parent: Vec<Option<Vertex>>,
}

impl Branching {
    /// Single-vertex branching.
    pub fn trivial(n: usize, orientation: Orientation, root: Vertex) -> Self {
        Branching { orientation, root, span: VertexSet::singleton(root), parent: vec![None; n] }
    }

    /// Builds the parent map from an arc list; fails if a vertex gets two
    /// parent arcs or an arc points the wrong way for the orientation.
    pub fn from_arcs(n: usize, orientation: Orientation, root: Vertex, arcs: &[Arc]) -> Result<Self, BranchingViolation> {
        let mut b = Branching::trivial(n, orientation, root);
        for &(t, h) in arcs {
            let (child, par) = match orientation {
                Orientation::Out => (h, t),
                Orientation::In => (t, h),
            };
            if child >= n || par >= n {
                return Err(BranchingViolation::MissingArc((t, h)));
            }
            if child == root {
                return Err(BranchingViolation::RootHasParent);
            }
            if b.parent[child].is_some() {
                return Err(BranchingViolation::WrongDegree(child));
            }
            b.parent[child] = Some(par);
            b.span.insert(child);
            b.span.insert(par);
        }
        Ok(b)
    }

    /// The arc from `x` to its parent (in) or from its parent to `x` (out).
    pub fn parent_arc(&self, x: Vertex) -> Option<Arc> {
        self.parent[x].map(|p| match self.orientation {
            Orientation::Out => (p, x),
            Orientation::In => (x, p),
        })
    }

    /// Arcs sorted by non-root endpoint id.
    pub fn arcs(&self) -> Vec<Arc> {
        self.span.iter().filter_map(|x| self.parent_arc(x)).collect()
    }

    pub fn arc_set(&self) -> std::collections::BTreeSet<Arc> {
        self.arcs().into_iter().collect()
    }

    pub fn contains_arc(&self, (t, h): Arc) -> bool {
        match self.orientation {
            Orientation::Out => self.parent.get(h).copied().flatten() == Some(t),
            Orientation::In => self.parent.get(t).copied().flatten() == Some(h),
        }
    }

    /// Set `x`'s parent, adding `x` to the span.
    pub fn attach(&mut self, x: Vertex, parent: Vertex) {
        self.parent[x] = Some(parent);
        self.span.insert(x);
    }

    /// Same branching with every arc reversed (out <-> in).
    pub fn reversed(&self) -> Branching {
        Branching {
            orientation: match self.orientation {
                Orientation::Out => Orientation::In,
                Orientation::In => Orientation::Out,
            },
            root: self.root,
            span: self.span,
            parent: self.parent.clone(),
        }
    }

    /// Relabel from a subgraph id space (`map[local] = global`) into `n` ids.
    pub fn lift(&self, map: &[Vertex], n: usize) -> Branching {
        let mut parent = vec![None; n];
        for x in self.span {
            parent[map[x]] = self.parent[x].map(|p| map[p]);
        }
        Branching {
            orientation: self.orientation,
            root: map[self.root],
            span: self.span.iter().map(|x| map[x]).collect(),
            parent,
        }
    }
}

impl fmt::Debug for Branching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}({}) {:?}", self.orientation, self.root, self.arcs())
    }
}

/// Why a branching is invalid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BranchingViolation {
    WrongOrientation,
    RootHasParent,
    MissingArc(Arc),
    WrongDegree(Vertex),
    Cycle(Vertex),
    NotSpanning(Vertex),
}

impl fmt::Display for BranchingViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BranchingViolation::WrongOrientation => write!(f, "wrong orientation"),
            BranchingViolation::RootHasParent => write!(f, "root has a parent arc"),
            BranchingViolation::MissingArc((a, b)) => write!(f, "arc {a}->{b} is not in the digraph"),
            BranchingViolation::WrongDegree(x) => write!(f, "vertex {x} has the wrong degree"),
            BranchingViolation::Cycle(x) => write!(f, "cycle through vertex {x}"),
            BranchingViolation::NotSpanning(x) => write!(f, "not spanning: vertex {x} is missing"),
        }
    }
}

/// `b` is a branching of `g` spanning all of `g`.
pub fn verify_branching(g: &Digraph, b: &Branching) -> Result<(), BranchingViolation> {
    verify_branching_within(g, b, g.vertices())
}

/// `b` is a branching of `g<within>` spanning `within`.
pub fn verify_branching_within(g: &Digraph, b: &Branching, within: VertexSet) -> Result<(), BranchingViolation> {
    if b.parent.len() != g.n() {
        return Err(BranchingViolation::WrongDegree(b.parent.len().min(g.n())));
    }
    if !within.contains(b.root) {
        return Err(BranchingViolation::NotSpanning(b.root));
    }
    if b.parent[b.root].is_some() {
        return Err(BranchingViolation::RootHasParent);
    }
    for x in 0..g.n() {
        let inside = within.contains(x);
        match (b.parent[x], inside) {
            (Some(_), false) => return Err(BranchingViolation::WrongDegree(x)),
            (None, true) if x != b.root => return Err(BranchingViolation::NotSpanning(x)),
            (Some(p), true) => {
                let arc = b.parent_arc(x).unwrap();
                if !within.contains(p) || !g.has_arc(arc.0, arc.1) {
                    return Err(BranchingViolation::MissingArc(arc));
                }
            }
            _ => {}
        }
    }
    // every parent chain must end at the root
    let limit = within.len();
    for x in within {
        let mut cur = x;
        let mut steps = 0;
        while let Some(p) = b.parent[cur] {
            cur = p;
            steps += 1;
            if steps > limit {
                return Err(BranchingViolation::Cycle(x));
            }
        }
        if cur != b.root {
            return Err(BranchingViolation::NotSpanning(x));
        }
    }
    Ok(())
}

/// An out-branching and an in-branching with their common arcs.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BranchingPair {
    pub out: Branching,
    pub inn: Branching,
    pub shared: Vec<Arc>,
}

impl BranchingPair {
    pub fn new(out: Branching, inn: Branching) -> Self {
        let shared = out.arcs().into_iter().filter(|&a| inn.contains_arc(a)).collect();
        BranchingPair { out, inn, shared }
    }

    pub fn is_good(&self) -> bool {
        self.shared.is_empty()
    }

    /// The pair read in the converse digraph with roots swapped.
    pub fn reversed(&self) -> BranchingPair {
        BranchingPair::new(self.inn.reversed(), self.out.reversed())
    }

    pub fn lift(&self, map: &[Vertex], n: usize) -> BranchingPair {
        BranchingPair::new(self.out.lift(map, n), self.inn.lift(map, n))
    }
}

impl fmt::Debug for BranchingPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "out {:?} / in {:?} / shared {:?}", self.out, self.inn, self.shared)
    }
}

/// Why a claimed good pair is rejected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PairViolation {
    RootMismatch,
    BadOut(BranchingViolation),
    BadIn(BranchingViolation),
    SharedArc(Arc),
}

impl fmt::Display for PairViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PairViolation::RootMismatch => write!(f, "roots do not match the query"),
            PairViolation::BadOut(e) => write!(f, "bad out-branching: {e}"),
            PairViolation::BadIn(e) => write!(f, "bad in-branching: {e}"),
            PairViolation::SharedArc((a, b)) => write!(f, "arc {a}->{b} is used by both branchings"),
        }
    }
}

/// Both branchings are valid in `g` with the right roots and share no arc.
pub fn verify_good_pair(g: &Digraph, u: Vertex, v: Vertex, pair: &BranchingPair) -> Result<(), PairViolation> {
    verify_good_pair_within(g, u, v, pair, g.vertices())
}

pub fn verify_good_pair_within(g: &Digraph, u: Vertex, v: Vertex, pair: &BranchingPair, within: VertexSet) -> Result<(), PairViolation> {
    verify_pair_shape(g, u, v, pair, within)?;
    let shared: Vec<Arc> = pair.out.arcs().into_iter().filter(|&a| pair.inn.contains_arc(a)).collect();
    match shared.first() {
        Some(&e) => Err(PairViolation::SharedArc(e)),
        None => Ok(()),
    }
}

/// Roots, orientations and both branchings are valid; sharing is allowed.
pub fn verify_pair_shape(g: &Digraph, u: Vertex, v: Vertex, pair: &BranchingPair, within: VertexSet) -> Result<(), PairViolation> {
    if pair.out.root != u || pair.inn.root != v {
        return Err(PairViolation::RootMismatch);
    }
    if pair.out.orientation != Orientation::Out {
        return Err(PairViolation::BadOut(BranchingViolation::WrongOrientation));
    }
    if pair.inn.orientation != Orientation::In {
        return Err(PairViolation::BadIn(BranchingViolation::WrongOrientation));
    }
    verify_branching_within(g, &pair.out, within).map_err(PairViolation::BadOut)?;
    verify_branching_within(g, &pair.inn, within).map_err(PairViolation::BadIn)?;
    Ok(())
}

/// BFS branching of `g<within>` from (out) or to (in) `root`, lowest id first.
pub fn find_branching_within(g: &Digraph, root: Vertex, orientation: Orientation, within: VertexSet) -> Option<Branching> {
    let mut b = Branching::trivial(g.n(), orientation, root);
    let mut queue = std::collections::VecDeque::from([root]);
    while let Some(x) = queue.pop_front() {
        let nbrs = match orientation {
            Orientation::Out => g.out_nbrs(x),
            Orientation::In => g.in_nbrs(x),
        };
        for y in nbrs.inter(within).minus(b.span) {
            b.attach(y, x);
            queue.push_back(y);
        }
    }
    (b.span == within).then_some(b)
}

/// BFS out-/in-branching rooted at `root`, or `None` if `root` does not reach
/// (is not reached by) every vertex.
pub fn find_branching(g: &Digraph, root: Vertex, orientation: Orientation) -> Option<Branching> {
    find_branching_within(g, root, orientation, g.vertices())
}

/// `k` arc-disjoint out-branchings rooted at `s`, or a set `X` not containing
/// `s` with fewer than `k` entering arcs.
pub fn edmonds_branchings(g: &Digraph, s: Vertex, k: usize) -> Result<Vec<Branching>, VertexSet> {
    let all = g.vertices();
    for y in all.without(s) {
        if !arc_connectivity_at_least(g, s, y, k) {
            let cut = crate::flow::local_arc_connectivity(g, s, y).expect("distinct").1;
            return Err(all.minus(cut.side));
        }
    }
    let mut rest = g.clone();
    let mut found = Vec::with_capacity(k);
    for j in (1..=k).rev() {
        let mut b = Branching::trivial(g.n(), Orientation::Out, s);
        while b.span != all {
            let mut grown = false;
            'cand: for p in b.span {
                for x in rest.out_nbrs(p).minus(b.span) {
                    rest.remove_arc(p, x);
                    let span = b.span.with(x);
                    // the rest keeps j - 1 branchings and the grown tree can still be completed
                    let ok = all.without(s).iter().all(|y| {
                        arc_connectivity_at_least(&rest, s, y, j - 1)
                            && (span.contains(y) || set_arc_connectivity_at_least(&rest, span, y, j))
                    });
                    if ok {
                        b.attach(x, p);
                        grown = true;
                        break 'cand;
                    }
                    rest.add_arc(p, x);
                }
            }
            assert!(grown, "Lovász growth step must succeed when the cut condition holds");
        }
        found.push(b);
    }
    Ok(found)
}

/// Result of [`branching_avoiding_path`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AvoidOutcome {
    /// An out-branching rooted at `y` and a `(y, b)`-path sharing no arc.
    Found { branching: Branching, path: Vec<Vertex> },
    /// A set containing `y` but not `b` with exactly one leaving arc.
    Cut(CutWitness),
    /// `λ(y, b) >= 2`, yet every `(y, b)`-path meets every out-branching at
    /// `y`; established by exhaustive path search. Arcs 0->1, 0->2, 1->3,
    /// 2->0, 2->3 with `y = 0`, `b = 3` are the smallest shape: the only
    /// arcs into 1 and 2 start every path.
    Entangled,
}

/// An out-branching rooted at `y` arc-disjoint from some `(y, b)`-path, the
/// one-arc cut that rules it out, or [`AvoidOutcome::Entangled`] when no
/// such cut exists and the pair is still impossible.
pub fn branching_avoiding_path(g: &Digraph, y: Vertex, b: Vertex) -> Result<AvoidOutcome, Error> {
    if y >= g.n() || b >= g.n() {
        return Err(Error::VertexOutOfRange(y.max(b)));
    }
    let Some(tree) = find_branching(g, y, Orientation::Out) else {
        return Err(Error::Precondition(format!("vertex {y} roots no out-branching")));
    };
    if y == b {
        return Ok(AvoidOutcome::Found { branching: tree, path: vec![y] });
    }
    let paths = match arc_disjoint_paths(g, y, b, 2)? {
        Ok(p) => p,
        Err(cut) => return Ok(AvoidOutcome::Cut(cut)),
    };
    for p in &paths {
        let rest = g.without_arcs(&path_arcs(p));
        if let Some(br) = find_branching(&rest, y, Orientation::Out) {
            return Ok(AvoidOutcome::Found { branching: br, path: p.clone() });
        }
    }
    Ok(match branching_and_path(g, y, Orientation::Out, y, b) {
        Some((branching, path)) => AvoidOutcome::Found { branching, path },
        None => AvoidOutcome::Entangled,
    })
}

/// A branching of the given orientation at `root` and an `(a, b)`-path
/// sharing no arc with it, by exhaustive path search.
pub fn branching_and_path(g: &Digraph, root: Vertex, orientation: Orientation, a: Vertex, b: Vertex) -> Option<(Branching, Vec<Vertex>)> {
    fn spans(rest: &Digraph, root: Vertex, orientation: Orientation) -> bool {
        let all = rest.vertices();
        match orientation {
            Orientation::Out => rest.reach(root) == all,
            Orientation::In => rest.coreach(root) == all,
        }
    }
    fn rec(g: &Digraph, rest: &mut Digraph, path: &mut Vec<Vertex>, b: Vertex, root: Vertex, o: Orientation) -> Option<Branching> {
        if !spans(rest, root, o) {
            return None;
        }
        let cur = *path.last().unwrap();
        if cur == b {
            return find_branching(rest, root, o);
        }
        let on_path: VertexSet = path.iter().copied().collect();
        let free = g.vertices().minus(on_path).with(cur);
        if !rest.reach_within(VertexSet::singleton(cur), free).contains(b) {
            return None;
        }
        for nxt in rest.out_nbrs(cur).minus(on_path) {
            rest.remove_arc(cur, nxt);
            path.push(nxt);
            if let Some(br) = rec(g, rest, path, b, root, o) {
                return Some(br);
            }
            path.pop();
            rest.add_arc(cur, nxt);
        }
        None
    }
    if root >= g.n() || a >= g.n() || b >= g.n() {
        return None;
    }
    let mut rest = g.clone();
    let mut path = vec![a];
    rec(g, &mut rest, &mut path, b, root, orientation).map(|br| (br, path))
}

/// Grow a good pair of `g - x_set` to one of `g` by hanging each `x` below its
/// lowest in-neighbour outside `x_set` (out-branching) and above its lowest
/// out-neighbour outside `x_set` (in-branching).
pub fn extend_pair(g: &Digraph, x_set: VertexSet, pair: &BranchingPair) -> Result<BranchingPair, Error> {
    extend_pair_within(g, g.vertices(), x_set, pair)
}

/// [`extend_pair`] inside the induced subdigraph `g<within>`.
pub fn extend_pair_within(g: &Digraph, within: VertexSet, x_set: VertexSet, pair: &BranchingPair) -> Result<BranchingPair, Error> {
    let core = within.minus(x_set);
    if pair.out.span != core || pair.inn.span != core {
        return Err(Error::Precondition("pair does not span the complement of the extension set".into()));
    }
    if let Err(e) = verify_good_pair_within(g, pair.out.root, pair.inn.root, pair, core) {
        return Err(Error::Precondition(format!("pair is not good on the core: {e}")));
    }
    let mut out = pair.out.clone();
    let mut inn = pair.inn.clone();
    for x in x_set {
        let Some(xi) = g.in_nbrs(x).inter(core).first() else {
            return Err(Error::ExtendPrecondition(x, "in-neighbour"));
        };
        let Some(xo) = g.out_nbrs(x).inter(core).first() else {
            return Err(Error::ExtendPrecondition(x, "out-neighbour"));
        };
        out.attach(x, xi);
        inn.attach(x, xo);
    }
    Ok(BranchingPair::new(out, inn))
}
