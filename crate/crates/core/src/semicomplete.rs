//! Semicomplete digraphs: the four obstructions to a good `(u, v)`-pair
//! (small exceptions, non-strong roots, a single forced arc, layered kind-A
//! partitions), construction when none applies, and pairs sharing a
//! prescribed set of backward arcs.

use crate::bitset::VertexSet;
use crate::branching::BranchingPair;
use crate::graph::{initial_component, strong_components, terminal_component, Arc, Digraph, Vertex};
use crate::iso::small_digraph_match;
use crate::search::{construct_by_deletion, search_pair, SearchOutcome, DEFAULT_BUDGET};
use crate::typeab::{find_type_a, validate_witness, ArcRule, TypeABWitness, WitnessKind};
use crate::Error;

/// The six small semicomplete digraphs without a good pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Fig1Id {
    A,
    B,
    C,
    D,
    E,
    F,
}

impl Fig1Id {
    pub const ALL: [Fig1Id; 6] = [Fig1Id::A, Fig1Id::B, Fig1Id::C, Fig1Id::D, Fig1Id::E, Fig1Id::F];

    /// The digraph with `u = 0` and `v = n - 1`.
    pub fn digraph(self) -> Digraph {
        let path4: &[Arc] = &[(0, 1), (1, 2), (2, 3), (0, 2), (1, 3), (3, 0)];
        let (n, extra): (usize, Vec<Arc>) = match self {
            Fig1Id::A => (2, vec![(0, 1)]),
            Fig1Id::B => (3, vec![(0, 1), (1, 2), (0, 2)]),
            Fig1Id::C => (3, vec![(0, 1), (1, 2), (0, 2), (2, 0)]),
            Fig1Id::D => (4, path4.to_vec()),
            Fig1Id::E => (4, [path4, &[(3, 1)]].concat()),
            Fig1Id::F => (4, [path4, &[(2, 0)]].concat()),
        };
        Digraph::from_arcs(n, &extra).expect("fixed pattern")
    }

    pub fn letter(self) -> char {
        match self {
            Fig1Id::A => 'a',
            Fig1Id::B => 'b',
            Fig1Id::C => 'c',
            Fig1Id::D => 'd',
            Fig1Id::E => 'e',
            Fig1Id::F => 'f',
        }
    }

    pub fn from_letter(c: char) -> Option<Fig1Id> {
        Fig1Id::ALL.into_iter().find(|f| f.letter() == c)
    }
}

/// Result of the semicomplete engine.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ScVerdict {
    GoodPair(BranchingPair),
    Exception(Fig1Id),
    NonStrongRootFailure,
    ArcObstruction(Arc),
    TypeA(TypeABWitness),
}

impl ScVerdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, ScVerdict::GoodPair(_))
    }

    pub fn pair(&self) -> Option<&BranchingPair> {
        match self {
            ScVerdict::GoodPair(p) => Some(p),
            _ => None,
        }
    }
}

/// Root-pinned isomorphism with one of the small exceptions.
pub fn match_figure1(s: &Digraph, u: Vertex, v: Vertex) -> Option<Fig1Id> {
    if u == v {
        return None;
    }
    Fig1Id::ALL.into_iter().find(|f| {
        let p = f.digraph();
        p.n() == s.n() && matches!(small_digraph_match(s, &p, &[(0, u), (p.n() - 1, v)]), Ok(Some(_)))
    })
}

/// `s` is not strong and `u` roots no out-branching or `v` no in-branching.
pub fn condition_ii(s: &Digraph, u: Vertex, v: Vertex) -> bool {
    let d = strong_components(s);
    !d.is_strong() && (!d.in_unique_initial(u) || !d.in_unique_terminal(v))
}

/// An arc `e` of a strong `s` such that in `s - e` the vertex `u` no longer
/// reaches everything and `v` is no longer reached by everything.
pub fn condition_iii(s: &Digraph, u: Vertex, v: Vertex) -> Option<Arc> {
    if !s.is_strong() {
        return None;
    }
    let all = s.vertices();
    s.arcs().into_iter().find(|&(a, b)| {
        let mut g = s.clone();
        g.remove_arc(a, b);
        g.reach(u) != all && g.coreach(v) != all
    })
}

/// A kind-A witness with at least five layers, `a = u` and `b = v`.
pub fn condition_iv(s: &Digraph, u: Vertex, v: Vertex) -> Option<TypeABWitness> {
    if !s.is_strong() {
        return None;
    }
    find_type_a(s, u, v, 2, ArcRule::Any)
}

pub use crate::typeab::detect_type_ab;

fn check_input(s: &Digraph, u: Vertex, v: Vertex) -> Result<(), Error> {
    for x in [u, v] {
        if x >= s.n() {
            return Err(Error::VertexOutOfRange(x));
        }
    }
    if !s.is_semicomplete() {
        return Err(Error::WrongClass("semicomplete"));
    }
    Ok(())
}

/// The first obstruction that fires, in the order exceptions, non-strong
/// roots, single arc, layered partition; `None` means a good pair exists.
pub fn semicomplete_obstruction(s: &Digraph, u: Vertex, v: Vertex) -> Option<ScVerdict> {
    if let Some(f) = match_figure1(s, u, v) {
        return Some(ScVerdict::Exception(f));
    }
    if condition_ii(s, u, v) {
        return Some(ScVerdict::NonStrongRootFailure);
    }
    if let Some(e) = condition_iii(s, u, v) {
        return Some(ScVerdict::ArcObstruction(e));
    }
    condition_iv(s, u, v).map(ScVerdict::TypeA)
}

/// Decide and, on YES, construct a verified good `(u, v)`-pair.
pub fn decide_semicomplete(s: &Digraph, u: Vertex, v: Vertex) -> Result<ScVerdict, Error> {
    check_input(s, u, v)?;
    if let Some(no) = semicomplete_obstruction(s, u, v) {
        return Ok(no);
    }
    let pair = construct_semicomplete(s, u, v)?;
    crate::branching::verify_good_pair(s, u, v, &pair).map_err(|e| Error::Internal(format!("constructed pair rejected: {e}")))?;
    Ok(ScVerdict::GoodPair(pair))
}

/// A good pair of a semicomplete digraph known to have one.
pub fn construct_semicomplete(s: &Digraph, u: Vertex, v: Vertex) -> Result<BranchingPair, Error> {
    let mut still_yes = |sub: VertexSet| -> Result<bool, Error> {
        let (h, map) = s.induced(sub);
        let pos = |x: Vertex| map.iter().position(|&m| m == x).expect("root kept");
        Ok(semicomplete_obstruction(&h, pos(u), pos(v)).is_none())
    };
    construct_by_deletion(s, s.vertices(), u, v, &mut still_yes)
}

/// Independent check that a NO verdict's witness holds in `s`.
pub fn validate_sc_obstruction(s: &Digraph, u: Vertex, v: Vertex, verdict: &ScVerdict) -> Result<(), String> {
    match verdict {
        ScVerdict::GoodPair(p) => crate::branching::verify_good_pair(s, u, v, p).map_err(|e| e.to_string()),
        ScVerdict::Exception(f) => {
            let p = f.digraph();
            match small_digraph_match(s, &p, &[(0, u), (p.n() - 1, v)]) {
                Ok(Some(_)) => Ok(()),
                _ => Err(format!("not isomorphic to exception ({})", f.letter())),
            }
        }
        ScVerdict::NonStrongRootFailure => condition_ii(s, u, v).then_some(()).ok_or_else(|| "roots are fine".into()),
        ScVerdict::ArcObstruction((a, b)) => {
            if !s.has_arc(*a, *b) || !s.is_strong() {
                return Err("arc missing or digraph not strong".into());
            }
            let mut g = s.clone();
            g.remove_arc(*a, *b);
            let all = s.vertices();
            (g.reach(u) != all && g.coreach(v) != all).then_some(()).ok_or_else(|| "deleting the arc does not separate the roots".into())
        }
        ScVerdict::TypeA(w) => {
            if w.kind != WitnessKind::A || w.order < 2 || !s.is_strong() {
                return Err("witness is not a kind-A partition with at least five layers".into());
            }
            validate_witness(s, u, v, w)
        }
    }
}

/// The partition around a vertex `u` with no good `(u, u)`-pair: `x` out-only
/// neighbours, `y` in-only neighbours, `z` 2-cycle partners, and the unique
/// arc from the terminal component of `s<x>` to the initial one of `s<y>`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SabcStructure {
    pub x: VertexSet,
    pub y: VertexSet,
    pub z: VertexSet,
    pub arc: Arc,
}

pub fn sabc_structure(s: &Digraph, u: Vertex) -> Result<SabcStructure, Error> {
    check_input(s, u, u)?;
    if !s.is_strong() {
        return Err(Error::Precondition("digraph is not strong".into()));
    }
    if semicomplete_obstruction(s, u, u).is_none() {
        return Err(Error::Precondition(format!("a good ({u},{u})-pair exists")));
    }
    let z = s.out_nbrs(u).inter(s.in_nbrs(u));
    let x = s.out_nbrs(u).minus(z);
    let y = s.in_nbrs(u).minus(z);
    let tx = terminal_component(s, x).ok_or_else(|| Error::Internal("no terminal component among out-neighbours".into()))?;
    let iy = initial_component(s, y).ok_or_else(|| Error::Internal("no initial component among in-neighbours".into()))?;
    let leaving = s.arcs_between(tx, s.vertices().minus(tx));
    let entering = s.arcs_between(s.vertices().minus(iy), iy);
    match (leaving.as_slice(), entering.as_slice()) {
        ([e], [f]) if e == f => Ok(SabcStructure { x, y, z, arc: *e }),
        _ => Err(Error::Internal("arc structure around the root is not as expected".into())),
    }
}

/// Branchings `B+_a`, `B-_b` whose common arcs are exactly `{chosen}` (kind
/// A, `chosen` one of the backward arcs) or every backward arc (kind B).
/// When `a != b`, a root of degree one must have its arc among the shared ones.
pub fn almost_good_pair(s: &Digraph, a: Vertex, b: Vertex, w: &TypeABWitness, chosen: Option<Arc>) -> Result<BranchingPair, Error> {
    check_input(s, a, b)?;
    validate_witness(s, a, b, w).map_err(|e| Error::Precondition(format!("invalid witness: {e}")))?;
    if let Some(f @ (Fig1Id::C | Fig1Id::D | Fig1Id::E | Fig1Id::F)) = match_figure1(s, a, b) {
        return Err(Error::Precondition(format!("digraph is exception ({})", f.letter())));
    }
    let forced: Vec<Arc> = match (w.kind, chosen) {
        (WitnessKind::A, Some(e)) if w.backward.contains(&e) => vec![e],
        (WitnessKind::A, _) => return Err(Error::InvalidQuery("kind A needs one of its backward arcs".into())),
        (WitnessKind::B, None) => w.backward.clone(),
        (WitnessKind::B, Some(_)) => return Err(Error::InvalidQuery("kind B shares every backward arc".into())),
    };
    // a root of degree one puts its single arc in both branchings
    let lone_out = (s.out_degree(a) == 1).then(|| (a, s.out_nbrs(a).first().expect("degree one")));
    let lone_in = (s.in_degree(b) == 1).then(|| (s.in_nbrs(b).first().expect("degree one"), b));
    if a != b && [lone_out, lone_in].into_iter().flatten().any(|e| !forced.contains(&e)) {
        return Err(Error::Precondition("a root of degree one forces a further common arc".into()));
    }
    match search_pair(s, s.vertices(), a, b, &forced, DEFAULT_BUDGET) {
        SearchOutcome::Found(p) => Ok(p),
        SearchOutcome::NotFound => Err(Error::Internal("no pair shares exactly the prescribed arcs".into())),
        SearchOutcome::Exhausted => Err(Error::ResourceExceeded),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::branching::verify_good_pair;
    use crate::typeab::find_type_b;

    #[test]
    fn figure1_examples() {
        assert_eq!(match_figure1(&Digraph::from_arcs(2, &[(0, 1)]).unwrap(), 0, 1), Some(Fig1Id::A));
        let b = Digraph::from_arcs(3, &[(2, 1), (1, 0), (2, 0)]).unwrap();
        assert_eq!(match_figure1(&b, 2, 0), Some(Fig1Id::B));
        let k3 = Digraph::complete(3);
        for u in 0..3 {
            for v in 0..3 {
                assert_eq!(match_figure1(&k3, u, v), None);
            }
        }
    }

    #[test]
    fn condition_ii_examples() {
        let tt = Digraph::transitive_tournament(3);
        assert!(!condition_ii(&tt, 0, 2));
        assert!(condition_ii(&tt, 1, 2));
        assert!(!condition_ii(&Digraph::cycle(3), 1, 2));
    }

    #[test]
    fn condition_iii_examples() {
        // u=0 -> x=1 -> v=2 -> u
        let c3 = Digraph::cycle(3);
        assert_eq!(condition_iii(&c3, 0, 2), Some((0, 1)));
        assert_eq!(condition_iii(&Digraph::complete(3), 0, 1), None);
    }

    #[test]
    fn decide_examples() {
        let k3 = Digraph::complete(3);
        match decide_semicomplete(&k3, 0, 0).unwrap() {
            ScVerdict::GoodPair(p) => assert_eq!(verify_good_pair(&k3, 0, 0, &p), Ok(())),
            other => panic!("{other:?}"),
        }
        let a = Digraph::from_arcs(2, &[(0, 1)]).unwrap();
        assert_eq!(decide_semicomplete(&a, 0, 1).unwrap(), ScVerdict::Exception(Fig1Id::A));
        let tt = Digraph::transitive_tournament(3);
        assert_eq!(decide_semicomplete(&tt, 1, 2).unwrap(), ScVerdict::NonStrongRootFailure);
        assert!(decide_semicomplete(&Digraph::new(3).unwrap(), 0, 0).is_err());
    }

    #[test]
    fn sabc_on_a_cycle() {
        // u=0 -> x=1 -> y=2 -> u
        let c3 = Digraph::cycle(3);
        let st = sabc_structure(&c3, 0).unwrap();
        assert_eq!(st.x, VertexSet::singleton(1));
        assert_eq!(st.y, VertexSet::singleton(2));
        assert_eq!(st.z, VertexSet::EMPTY);
        assert_eq!(st.arc, (1, 2));
        assert!(sabc_structure(&Digraph::complete(3), 0).is_err());
    }

    #[test]
    fn almost_good_pairs_share_the_backward_arcs() {
        let c3 = Digraph::cycle(3);
        let w = find_type_a(&c3, 1, 1, 1, ArcRule::Any).unwrap();
        let p = almost_good_pair(&c3, 1, 1, &w, Some(w.backward[0])).unwrap();
        assert_eq!(p.shared, w.backward);
        let k2 = Digraph::complete(2);
        let wb = find_type_b(&k2, 1, 0, ArcRule::Any).unwrap();
        let p = almost_good_pair(&k2, 1, 0, &wb, None).unwrap();
        assert_eq!(p.shared, vec![(1, 0)]);
    }
}
