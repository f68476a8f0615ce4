//! Compositions `Q = S[H_1, .., H_s]`: the quotient `S`, a partition of the
//! flattened vertex set into parts, and the flattened digraph itself.

use crate::bitset::VertexSet;
use crate::graph::{strong_components, Digraph, Vertex};
use crate::Error;

/// A composition stored over flattened vertex ids. `part_of[x]` is the
/// quotient vertex `x_S`; `parts[i]` is `V(H_i)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Composition {
    quotient: Digraph,
    parts: Vec<VertexSet>,
    part_of: Vec<usize>,
    flat: Digraph,
}

impl Composition {
    /// Compose `quotient[parts]`, numbering parts in order and keeping each
    /// part's local order.
    pub fn new(quotient: Digraph, parts: Vec<Digraph>) -> Result<Self, Error> {
        if parts.len() != quotient.n() {
            return Err(Error::InvalidQuery(format!("{} parts for a quotient on {} vertices", parts.len(), quotient.n())));
        }
        if parts.iter().any(|h| h.n() == 0) {
            return Err(Error::InvalidQuery("empty part".into()));
        }
        let total: usize = parts.iter().map(|h| h.n()).sum();
        let mut flat = Digraph::new(total)?;
        let mut sets = Vec::with_capacity(parts.len());
        let mut part_of = Vec::with_capacity(total);
        let mut offset = 0;
        for (i, h) in parts.iter().enumerate() {
            sets.push((offset..offset + h.n()).collect::<VertexSet>());
            part_of.extend(std::iter::repeat(i).take(h.n()));
            for (a, b) in h.arcs() {
                flat.add_arc(offset + a, offset + b);
            }
            offset += h.n();
        }
        for (i, j) in quotient.arcs() {
            for a in sets[i] {
                for b in sets[j] {
                    flat.add_arc(a, b);
                }
            }
        }
        Ok(Composition { quotient, parts: sets, part_of, flat })
    }

    /// Read `g` as a composition with the given parts (quotient vertex `i` is
    /// `classes[i]`). Fails unless every class is a module and the classes
    /// partition `V(g)`.
    pub fn from_partition(g: &Digraph, classes: Vec<VertexSet>) -> Result<Self, Error> {
        let mut part_of = vec![usize::MAX; g.n()];
        for (i, c) in classes.iter().enumerate() {
            if c.is_empty() {
                return Err(Error::InvalidQuery("empty part".into()));
            }
            for x in *c {
                if x >= g.n() || part_of[x] != usize::MAX {
                    return Err(Error::InvalidQuery(format!("vertex {x} is not covered exactly once")));
                }
                part_of[x] = i;
            }
        }
        if part_of.iter().any(|&p| p == usize::MAX) {
            return Err(Error::InvalidQuery("parts do not cover every vertex".into()));
        }
        let mut quotient = Digraph::new(classes.len())?;
        for (i, ci) in classes.iter().enumerate() {
            for (j, cj) in classes.iter().enumerate() {
                if i == j {
                    continue;
                }
                let count = g.count_arcs_between(*ci, *cj);
                if count == ci.len() * cj.len() {
                    quotient.add_arc(i, j);
                } else if count != 0 {
                    return Err(Error::WrongClass("a composition over the given parts"));
                }
            }
        }
        Ok(Composition { quotient, parts: classes, part_of, flat: g.clone() })
    }

    pub fn quotient(&self) -> &Digraph {
        &self.quotient
    }

    pub fn flat(&self) -> &Digraph {
        &self.flat
    }

    pub fn parts(&self) -> &[VertexSet] {
        &self.parts
    }

    /// `V(H(x))`.
    pub fn part(&self, x: Vertex) -> VertexSet {
        self.parts[self.part_of[x]]
    }

    /// `x_S`.
    pub fn part_of(&self, x: Vertex) -> usize {
        self.part_of[x]
    }

    /// The digraph `H_i` relabelled to `0..|H_i|`.
    pub fn part_digraph(&self, i: usize) -> Digraph {
        self.flat.induced(self.parts[i]).0
    }

    pub fn n(&self) -> usize {
        self.flat.n()
    }

    /// The composition of the converse quotient with converse parts, over the
    /// same vertex ids; its flattening is the converse of ours.
    pub fn converse(&self) -> Composition {
        Composition {
            quotient: self.quotient.converse(),
            parts: self.parts.clone(),
            part_of: self.part_of.clone(),
            flat: self.flat.converse(),
        }
    }

    /// The induced composition on `keep` (which must meet every part), over
    /// relabelled ids. Returns it with the map new id -> old id.
    pub fn induced(&self, keep: VertexSet) -> Result<(Composition, Vec<Vertex>), Error> {
        let (g, map) = self.flat.induced(keep);
        let mut pos = vec![usize::MAX; self.n()];
        for (i, &x) in map.iter().enumerate() {
            pos[x] = i;
        }
        let mut classes = Vec::new();
        for p in &self.parts {
            let c: VertexSet = p.inter(keep).iter().map(|x| pos[x]).collect();
            if c.is_empty() {
                return Err(Error::Precondition("induced composition would drop a part".into()));
            }
            classes.push(c);
        }
        Ok((Composition::from_partition(&g, classes)?, map))
    }
}

/// Flattened digraph of a composition.
pub fn flatten(c: &Composition) -> Digraph {
    c.flat().clone()
}

/// One vertex per part, containing `pinned`, lowest id elsewhere.
pub fn representatives(c: &Composition, pinned: &[Vertex]) -> Result<VertexSet, Error> {
    let mut chosen = vec![None; c.parts().len()];
    for &x in pinned {
        if x >= c.n() {
            return Err(Error::VertexOutOfRange(x));
        }
        let i = c.part_of(x);
        match chosen[i] {
            Some(y) if y != x => return Err(Error::Precondition(format!("vertices {y} and {x} share a part"))),
            _ => chosen[i] = Some(x),
        }
    }
    Ok(chosen.iter().enumerate().map(|(i, r)| r.unwrap_or_else(|| c.parts()[i].first().unwrap())).collect())
}

/// Quotient roots `(u_S, v_S, same_part)`: `same_part` is set when `u != v`
/// lie in one part.
pub fn canonical_roots(c: &Composition, u: Vertex, v: Vertex) -> (usize, usize, bool) {
    let (a, b) = (c.part_of(u), c.part_of(v));
    (a, b, a == b && u != v)
}

/// Class membership flags of a flat digraph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct ClassFlags {
    pub semicomplete: bool,
    pub transitive: bool,
    pub quasi_transitive: bool,
}

pub fn recognize(g: &Digraph) -> ClassFlags {
    let mut qt = true;
    let mut tr = true;
    for x in 0..g.n() {
        for y in g.out_nbrs(x) {
            for z in g.out_nbrs(y).without(x) {
                if !g.has_arc(x, z) {
                    tr = false;
                    if !g.has_arc(z, x) {
                        qt = false;
                    }
                }
            }
        }
    }
    ClassFlags { semicomplete: g.is_semicomplete(), transitive: tr, quasi_transitive: qt }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QtKind {
    Strong,
    NonStrong,
}

/// One child of a decomposition: its vertex set in the parent digraph and,
/// for two or more vertices, its own decomposition over local ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QtChild {
    pub vertices: VertexSet,
    pub decomposition: Option<Box<QtDecomposition>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QtDecomposition {
    pub kind: QtKind,
    pub quotient: Digraph,
    pub children: Vec<QtChild>,
}

impl QtDecomposition {
    pub fn classes(&self) -> Vec<VertexSet> {
        self.children.iter().map(|c| c.vertices).collect()
    }
}

/// Top-level decomposition of a quasi-transitive digraph: strong components
/// under a transitive oriented quotient when non-strong, homogeneous parts
/// under a strong semicomplete quotient when strong.
pub fn qt_decompose(g: &Digraph) -> Result<QtDecomposition, Error> {
    if !recognize(g).quasi_transitive {
        return Err(Error::WrongClass("quasi-transitive"));
    }
    if g.n() < 2 {
        return Err(Error::Precondition("need at least two vertices".into()));
    }
    decompose_rec(g)
}

fn decompose_rec(g: &Digraph) -> Result<QtDecomposition, Error> {
    let (kind, classes) = if g.is_strong() {
        let classes = semicomplete_modules(g).ok_or_else(|| Error::Internal("strong decomposition failed".into()))?;
        (QtKind::Strong, classes)
    } else {
        (QtKind::NonStrong, strong_components(g).components)
    };
    let comp = Composition::from_partition(g, classes.clone())?;
    let mut children = Vec::with_capacity(classes.len());
    for c in classes {
        let decomposition = if c.len() >= 2 {
            let (h, _) = g.induced(c);
            Some(Box::new(decompose_rec(&h)?))
        } else {
            None
        };
        children.push(QtChild { vertices: c, decomposition });
    }
    Ok(QtDecomposition { kind, quotient: comp.quotient().clone(), children })
}

/// Finest partition into modules that keeps every pair of non-adjacent
/// vertices together; `None` if that partition is trivial (one class) or its
/// quotient is not strong. Classes are ordered by lowest vertex.
pub fn semicomplete_modules(g: &Digraph) -> Option<Vec<VertexSet>> {
    let n = g.n();
    if n < 2 {
        return None;
    }
    // union-find over complement components
    let mut uf: Vec<usize> = (0..n).collect();
    fn find(uf: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while uf[r] != r {
            r = uf[r];
        }
        let mut c = x;
        while uf[c] != r {
            let nx = uf[c];
            uf[c] = r;
            c = nx;
        }
        r
    }
    for a in 0..n {
        for b in a + 1..n {
            if !g.adjacent(a, b) {
                let (ra, rb) = (find(&mut uf, a), find(&mut uf, b));
                uf[ra] = rb;
            }
        }
    }
    // merge until every class is a module
    loop {
        let mut classes: Vec<VertexSet> = Vec::new();
        let mut seen = vec![usize::MAX; n];
        for x in 0..n {
            let r = find(&mut uf, x);
            if seen[r] == usize::MAX {
                seen[r] = classes.len();
                classes.push(VertexSet::EMPTY);
            }
            classes[seen[r]].insert(x);
        }
        if classes.len() < 2 {
            return None;
        }
        let mut merged = false;
        'scan: for c in &classes {
            for w in g.vertices().minus(*c) {
                let outs = g.out_nbrs(w).inter(*c);
                let ins = g.in_nbrs(w).inter(*c);
                let uniform = (outs.is_empty() || outs == *c) && (ins.is_empty() || ins == *c);
                if !uniform {
                    let (ra, rb) = (find(&mut uf, c.first().unwrap()), find(&mut uf, w));
                    uf[ra] = rb;
                    merged = true;
                    break 'scan;
                }
            }
        }
        if !merged {
            let comp = Composition::from_partition(g, classes.clone()).ok()?;
            return comp.quotient().is_strong().then_some(classes);
        }
    }
}

/// Read a flat digraph as a composition of a strong semicomplete digraph.
pub fn as_semicomplete_composition(g: &Digraph) -> Option<Composition> {
    let classes = semicomplete_modules(g)?;
    let c = Composition::from_partition(g, classes).ok()?;
    c.quotient().is_semicomplete().then_some(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kbar(n: usize) -> Digraph {
        Digraph::new(n).unwrap()
    }

    fn set(v: &[usize]) -> VertexSet {
        v.iter().copied().collect()
    }

    #[test]
    fn flatten_examples() {
        let c = Composition::new(Digraph::cycle(3), vec![kbar(1), kbar(1), kbar(1)]).unwrap();
        assert_eq!(flatten(&c), Digraph::cycle(3));
        let tt = Composition::new(Digraph::transitive_tournament(3), vec![kbar(1), kbar(2), kbar(1)]).unwrap();
        assert_eq!(tt.flat().arc_count(), 5);
        assert_eq!(tt.flat().arcs(), vec![(0, 1), (0, 2), (0, 3), (1, 3), (2, 3)]);
        let c6 = Composition::new(Digraph::cycle(3), vec![kbar(2), kbar(2), kbar(2)]).unwrap();
        assert_eq!(c6.n(), 6);
        assert_eq!(c6.flat().arc_count(), 12);
        assert!(Composition::new(Digraph::cycle(3), vec![kbar(1)]).is_err());
    }

    #[test]
    fn representative_examples() {
        let c6 = Composition::new(Digraph::cycle(3), vec![kbar(2), kbar(2), kbar(2)]).unwrap();
        assert_eq!(representatives(&c6, &[]).unwrap(), set(&[0, 2, 4]));
        assert_eq!(representatives(&c6, &[1]).unwrap(), set(&[1, 2, 4]));
        assert!(representatives(&c6, &[0, 1]).is_err());
        let tt = Composition::new(Digraph::transitive_tournament(3), vec![kbar(1), kbar(2), kbar(1)]).unwrap();
        let r = representatives(&tt, &[0, 3]).unwrap();
        assert_eq!(r, set(&[0, 1, 3]));
        assert_eq!(tt.flat().induced(r).0, Digraph::transitive_tournament(3));
    }

    #[test]
    fn canonical_root_examples() {
        let c = Composition::new(Digraph::cycle(3), vec![kbar(1), kbar(2), kbar(1)]).unwrap();
        assert_eq!(canonical_roots(&c, 1, 1), (1, 1, false));
        assert_eq!(canonical_roots(&c, 0, 3), (0, 2, false));
        assert_eq!(canonical_roots(&c, 1, 2), (1, 1, true));
    }

    #[test]
    fn recognize_examples() {
        let c3 = recognize(&Digraph::cycle(3));
        assert!(c3.semicomplete && c3.quasi_transitive && !c3.transitive);
        let tt = recognize(&Digraph::transitive_tournament(3));
        assert!(tt.semicomplete && tt.quasi_transitive && tt.transitive);
        let g = Digraph::from_arcs(4, &[(0, 1), (0, 2), (1, 3), (2, 3), (0, 3)]).unwrap();
        let f = recognize(&g);
        assert!(!f.semicomplete && f.quasi_transitive && f.transitive);
    }

    #[test]
    fn decompose_examples() {
        let g = Digraph::from_arcs(4, &[(0, 1), (0, 2), (1, 3), (2, 3), (0, 3)]).unwrap();
        let d = qt_decompose(&g).unwrap();
        assert_eq!(d.kind, QtKind::NonStrong);
        assert_eq!(d.classes(), vec![set(&[0]), set(&[1]), set(&[2]), set(&[3])]);
        let d = qt_decompose(&Digraph::cycle(3)).unwrap();
        assert_eq!(d.kind, QtKind::Strong);
        assert_eq!(d.quotient, Digraph::cycle(3));
        let c = Composition::new(Digraph::cycle(3), vec![kbar(2), kbar(1), kbar(1)]).unwrap();
        let d = qt_decompose(c.flat()).unwrap();
        assert_eq!(d.kind, QtKind::Strong);
        assert_eq!(d.classes(), vec![set(&[0, 1]), set(&[2]), set(&[3])]);
        let back = Composition::from_partition(c.flat(), d.classes()).unwrap();
        assert_eq!(back.flat(), c.flat());
    }

    #[test]
    fn converse_composition_flattens_to_converse() {
        let c = Composition::new(Digraph::cycle(3), vec![Digraph::from_arcs(2, &[(0, 1)]).unwrap(), kbar(1), kbar(2)]).unwrap();
        assert_eq!(c.converse().flat(), &c.flat().converse());
    }
}
