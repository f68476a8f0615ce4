//! Compositions `T[H_1, .., H_t]` of a transitive digraph and the
//! quasi-transitive dispatcher built on top of them.

use crate::bitset::VertexSet;
use crate::branching::{verify_good_pair, Branching, BranchingPair, Orientation};
use crate::composite::{decide_composition, match_family, CompVerdict, Table1Family, TableOneMatch};
use crate::composition::{qt_decompose, recognize, Composition, QtKind};
use crate::graph::{Digraph, Vertex};
use crate::search::construct_by_deletion;
use crate::Error;

/// Why a transitive composition has no good pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TransReason {
    /// `TT_3[u, K_t, v]`, possibly with the arc `vu`.
    TT3Middle(TableOneMatch),
    /// `w` is joined both ways to every other vertex, and `u` has out-degree
    /// one (`out_side`) or `v` in-degree one.
    C2Degree { w: Vertex, out_side: bool },
    /// `v` is a sink dominated by everything and `Q - v` is an out-tree at `u`
    /// (`reversed` for the mirrored in-tree at `v`).
    TreeSide { reversed: bool },
    /// `u` misses the initial component (`out_side`) or `v` the terminal one.
    RootComponent { out_side: bool },
    /// `u != v` and a root has degree below two.
    DegreeObstruction { out_side: bool },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TransVerdict {
    GoodPair(BranchingPair),
    NoPair(TransReason),
}

impl TransVerdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, TransVerdict::GoodPair(_))
    }
}

/// `v` is a sink dominated by every other vertex and `g - v` is an out-tree
/// rooted at `u`.
fn is_tree_side(g: &Digraph, u: Vertex, v: Vertex) -> bool {
    if u == v || !g.out_nbrs(v).is_empty() || g.in_nbrs(v) != g.vertices().without(v) {
        return false;
    }
    let rest = g.vertices().without(v);
    let tree_arcs = g.arcs_within(rest);
    tree_arcs.len() + 1 == rest.len()
        && rest.without(u).iter().all(|x| g.in_nbrs(x).inter(rest).len() == 1)
        && g.reach_within(VertexSet::singleton(u), rest) == rest
}

fn c2_hub(g: &Digraph, u: Vertex, v: Vertex) -> Option<Vertex> {
    g.vertices()
        .without(u)
        .without(v)
        .iter()
        .find(|&w| g.out_nbrs(w) == g.vertices().without(w) && g.in_nbrs(w) == g.vertices().without(w))
}

/// Obstruction for a flat digraph read as a transitive composition.
pub fn transitive_obstruction(g: &Digraph, u: Vertex, v: Vertex) -> Option<TransReason> {
    let all = g.vertices();
    if g.reach(u) != all {
        return Some(TransReason::RootComponent { out_side: true });
    }
    if g.coreach(v) != all {
        return Some(TransReason::RootComponent { out_side: false });
    }
    if u == v {
        return None;
    }
    if let Some(m) = match_family(g, u, v, Table1Family::B) {
        return Some(TransReason::TT3Middle(m));
    }
    let (du, dv) = (g.out_degree(u), g.in_degree(v));
    if let Some(w) = c2_hub(g, u, v) {
        if du == 1 || dv == 1 {
            return Some(TransReason::C2Degree { w, out_side: du == 1 });
        }
    }
    if is_tree_side(g, u, v) {
        return Some(TransReason::TreeSide { reversed: false });
    }
    if is_tree_side(&g.converse(), v, u) {
        return Some(TransReason::TreeSide { reversed: true });
    }
    if du < 2 || dv < 2 {
        return Some(TransReason::DegreeObstruction { out_side: du < 2 });
    }
    None
}

fn is_transitive_quotient(c: &Composition) -> bool {
    recognize(c.quotient()).transitive
}

/// Decide a composition of a transitive digraph on at least two vertices.
pub fn decide_transitive_composition(c: &Composition, u: Vertex, v: Vertex) -> Result<TransVerdict, Error> {
    for x in [u, v] {
        if x >= c.n() {
            return Err(Error::VertexOutOfRange(x));
        }
    }
    if !is_transitive_quotient(c) {
        return Err(Error::WrongClass("a composition of a transitive digraph"));
    }
    if c.quotient().n() < 2 {
        return Err(Error::Precondition("quotient has fewer than two vertices".into()));
    }
    let g = c.flat();
    if let Some(r) = transitive_obstruction(g, u, v) {
        return Ok(TransVerdict::NoPair(r));
    }
    let mut still_yes = |sub: VertexSet| -> Result<bool, Error> {
        let Ok((sc, map)) = induced_parts(c, sub) else {
            return Ok(false);
        };
        let pos = |x: Vertex| map.iter().position(|&m| m == x).expect("root kept");
        Ok(sc.quotient().n() >= 2 && transitive_obstruction(sc.flat(), pos(u), pos(v)).is_none())
    };
    let pair = construct_by_deletion(g, g.vertices(), u, v, &mut still_yes)?;
    verify_good_pair(g, u, v, &pair).map_err(|e| Error::Internal(format!("constructed pair rejected: {e}")))?;
    Ok(TransVerdict::GoodPair(pair))
}

/// The composition induced by `keep`, dropping parts it misses entirely.
fn induced_parts(c: &Composition, keep: VertexSet) -> Result<(Composition, Vec<Vertex>), Error> {
    let (h, map) = c.flat().induced(keep);
    let classes: Vec<VertexSet> = c
        .parts()
        .iter()
        .filter(|p| p.intersects(keep))
        .map(|p| p.inter(keep).iter().map(|x| map.iter().position(|&m| m == x).expect("kept")).collect())
        .collect();
    Ok((Composition::from_partition(&h, classes)?, map))
}

/// Verdict of the quasi-transitive dispatcher.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QtVerdict {
    Composition(CompVerdict),
    Transitive(TransVerdict),
}

impl QtVerdict {
    pub fn is_yes(&self) -> bool {
        match self {
            QtVerdict::Composition(c) => c.is_yes(),
            QtVerdict::Transitive(t) => t.is_yes(),
        }
    }

    pub fn pair(&self) -> Option<&BranchingPair> {
        match self {
            QtVerdict::Composition(CompVerdict::GoodPair(p)) | QtVerdict::Transitive(TransVerdict::GoodPair(p)) => Some(p),
            _ => None,
        }
    }
}

/// Decompose a quasi-transitive digraph once and route it: strong digraphs
/// to the semicomplete-composition engine, the rest to the transitive one.
pub fn decide_quasi_transitive(g: &Digraph, u: Vertex, v: Vertex) -> Result<QtVerdict, Error> {
    for x in [u, v] {
        if x >= g.n() {
            return Err(Error::VertexOutOfRange(x));
        }
    }
    if !recognize(g).quasi_transitive {
        return Err(Error::WrongClass("quasi-transitive"));
    }
    if g.n() == 1 {
        let pair = BranchingPair::new(Branching::trivial(1, Orientation::Out, 0), Branching::trivial(1, Orientation::In, 0));
        return Ok(QtVerdict::Transitive(TransVerdict::GoodPair(pair)));
    }
    let d = qt_decompose(g)?;
    let c = Composition::from_partition(g, d.classes())?;
    match d.kind {
        QtKind::Strong => decide_composition(&c, u, v).map(QtVerdict::Composition),
        QtKind::NonStrong => decide_transitive_composition(&c, u, v).map(QtVerdict::Transitive),
    }
}
