//! Layered partitions of a semicomplete digraph with roots `a`, `b` in which
//! every backward arc is forced into both branchings: kind A (single arcs
//! skipping one layer) and kind B (single arcs between consecutive layers).
//!
//! Sets are stored bottom-up (`partition[0]` is the first layer) and the
//! backward arcs top-down (`backward[0]` leaves the last layer).

use std::collections::{BTreeSet, HashSet};

use crate::bitset::VertexSet;
use crate::flow::arc_connectivity_at_least;
use crate::graph::{initial_component, strong_components_within, terminal_component, Arc, Digraph, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WitnessKind {
    A,
    B,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeABWitness {
    pub kind: WitnessKind,
    pub partition: Vec<VertexSet>,
    pub backward: Vec<Arc>,
    /// `alpha` for kind A (`2 alpha + 1` layers), `beta` for kind B
    /// (`beta + 1` layers).
    pub order: usize,
}

/// Which backward arcs must satisfy a caller predicate.
#[derive(Clone, Copy)]
pub enum ArcRule<'a> {
    Any,
    All(&'a dyn Fn(Arc) -> bool),
    Some(&'a dyn Fn(Arc) -> bool),
}

impl ArcRule<'_> {
    fn test(&self, e: Arc) -> Option<bool> {
        match self {
            ArcRule::Any => None,
            ArcRule::All(f) | ArcRule::Some(f) => Some(f(e)),
        }
    }

    fn needs_one(&self) -> bool {
        matches!(self, ArcRule::Some(_))
    }
}

/// Check every condition of the witness against `s` with roots `a`, `b`.
pub fn validate_witness(s: &Digraph, a: Vertex, b: Vertex, w: &TypeABWitness) -> Result<(), String> {
    let p = w.partition.len();
    let mut seen = VertexSet::EMPTY;
    for (i, set) in w.partition.iter().enumerate() {
        if set.is_empty() {
            return Err(format!("layer {} is empty", i + 1));
        }
        if set.intersects(seen) {
            return Err(format!("layer {} overlaps an earlier layer", i + 1));
        }
        seen = seen.union(*set);
    }
    if seen != s.vertices() {
        return Err("layers do not cover the vertex set".into());
    }
    let gap = match w.kind {
        WitnessKind::A => {
            if p < 3 || p % 2 == 0 || w.order != (p - 1) / 2 {
                return Err(format!("{p} layers do not fit kind A of order {}", w.order));
            }
            if !w.partition[1].contains(b) || !w.partition[p - 2].contains(a) {
                return Err("roots are not in the second and penultimate layers".into());
            }
            2
        }
        WitnessKind::B => {
            if p < 2 || w.order != p - 1 {
                return Err(format!("{p} layers do not fit kind B of order {}", w.order));
            }
            if !w.partition[0].contains(b) || !w.partition[p - 1].contains(a) {
                return Err("roots are not in the first and last layers".into());
            }
            1
        }
    };
    if w.backward.len() != p - gap {
        return Err(format!("expected {} backward arcs, got {}", p - gap, w.backward.len()));
    }
    for j in 0..p {
        for i in 0..j {
            let back = s.arcs_between(w.partition[j], w.partition[i]);
            if j == i + gap {
                let listed = w.backward[p - 1 - j];
                if back != vec![listed] {
                    return Err(format!("layers {} -> {} carry {:?}, expected exactly {:?}", j + 1, i + 1, back, listed));
                }
            } else if let Some(e) = back.first() {
                return Err(format!("unexpected backward arc {:?}", e));
            }
        }
    }
    match w.kind {
        WitnessKind::A => {
            for (k, &(x, y)) in w.backward.iter().enumerate() {
                let (hi, lo) = (w.partition[p - 1 - k], w.partition[p - 3 - k]);
                if !terminal_component(s, hi).is_some_and(|c| c.contains(x)) {
                    return Err(format!("tail {x} is not in the terminal component of its layer"));
                }
                if !initial_component(s, lo).is_some_and(|c| c.contains(y)) {
                    return Err(format!("head {y} is not in the initial component of its layer"));
                }
            }
        }
        WitnessKind::B => {
            let (x1, _) = w.backward[0];
            if !terminal_component(s, w.partition[p - 1]).is_some_and(|c| c.contains(x1)) {
                return Err(format!("tail {x1} is not in the terminal component of the last layer"));
            }
            let (_, yb) = w.backward[p - 2];
            if !initial_component(s, w.partition[0]).is_some_and(|c| c.contains(yb)) {
                return Err(format!("head {yb} is not in the initial component of the first layer"));
            }
            for k in 1..p - 1 {
                let (y_prev, x_cur) = (w.backward[k - 1].1, w.backward[k].0);
                if y_prev != x_cur && !two_paths_within(s, w.partition[p - 1 - k], y_prev, x_cur) {
                    return Err(format!("fewer than two arc-disjoint paths from {y_prev} to {x_cur} inside their layer"));
                }
            }
        }
    }
    Ok(())
}

fn two_paths_within(s: &Digraph, set: VertexSet, from: Vertex, to: Vertex) -> bool {
    let (h, map) = s.induced(set);
    let pos = |x: Vertex| map.iter().position(|&m| m == x).expect("vertex in layer");
    arc_connectivity_at_least(&h, pos(from), pos(to), 2)
}

fn in_initial(s: &Digraph, set: VertexSet, x: Vertex) -> bool {
    initial_component(s, set).is_some_and(|c| c.contains(x))
}

fn in_terminal(s: &Digraph, set: VertexSet, x: Vertex) -> bool {
    terminal_component(s, set).is_some_and(|c| c.contains(x))
}

/// Subsets `X` of `within` entered by at most one arc of `s<within>`.
fn almost_closed_sets(s: &Digraph, within: VertexSet) -> Vec<VertexSet> {
    let mut found = BTreeSet::new();
    let mut collect = |g: &Digraph| {
        for d in down_sets(g, within) {
            if !d.is_empty() {
                found.insert(d.0);
            }
        }
    };
    collect(s);
    let mut g = s.clone();
    for (t, h) in s.arcs_within(within) {
        g.remove_arc(t, h);
        collect(&g);
        g.add_arc(t, h);
    }
    found
        .into_iter()
        .map(VertexSet)
        .filter(|&x| s.count_arcs_between(within.minus(x), x) <= 1)
        .collect()
}

/// Sets closed under in-neighbours inside `within`.
fn down_sets(g: &Digraph, within: VertexSet) -> Vec<VertexSet> {
    let d = strong_components_within(g, within);
    let preds: Vec<VertexSet> = d
        .components
        .iter()
        .map(|c| {
            let mut p = VertexSet::EMPTY;
            for x in *c {
                p = p.union(g.in_nbrs(x));
            }
            p.inter(within).minus(*c)
        })
        .collect();
    let mut out = Vec::new();
    fn rec(i: usize, comps: &[VertexSet], preds: &[VertexSet], cur: VertexSet, out: &mut Vec<VertexSet>) {
        if i == comps.len() {
            out.push(cur);
            return;
        }
        if preds[i].is_subset(cur) {
            rec(i + 1, comps, preds, cur.union(comps[i]), out);
        }
        rec(i + 1, comps, preds, cur, out);
    }
    rec(0, &d.components, &preds, VertexSet::EMPTY, &mut out);
    out
}

/// A kind-A witness with at least `2 min_alpha + 1` layers whose backward
/// arcs obey `rule`.
pub fn find_type_a(s: &Digraph, a: Vertex, b: Vertex, min_alpha: usize, rule: ArcRule<'_>) -> Option<TypeABWitness> {
    let mut st = ChainSearch { s, a, b, rule, min_layers: 2 * min_alpha.max(1) + 1, failed: HashSet::new() };
    let mut sets = Vec::new();
    let mut arcs = Vec::new();
    if st.step_a(&mut sets, s.vertices(), &mut arcs, false) {
        arcs.reverse();
        let p = sets.len();
        Some(TypeABWitness { kind: WitnessKind::A, partition: sets, backward: arcs, order: (p - 1) / 2 })
    } else {
        None
    }
}

/// A kind-B witness whose backward arcs obey `rule`.
pub fn find_type_b(s: &Digraph, a: Vertex, b: Vertex, rule: ArcRule<'_>) -> Option<TypeABWitness> {
    let mut st = ChainSearch { s, a, b, rule, min_layers: 2, failed: HashSet::new() };
    let mut sets = Vec::new();
    let mut arcs = Vec::new();
    if st.step_b(&mut sets, s.vertices(), &mut arcs, false) {
        arcs.reverse();
        let p = sets.len();
        Some(TypeABWitness { kind: WitnessKind::B, partition: sets, backward: arcs, order: p - 1 })
    } else {
        None
    }
}

/// Kind A first, then kind B, with no constraint on backward arcs.
pub fn detect_type_ab(s: &Digraph, a: Vertex, b: Vertex) -> Option<TypeABWitness> {
    find_type_a(s, a, b, 1, ArcRule::Any).or_else(|| find_type_b(s, a, b, ArcRule::Any))
}

type StateKey = (usize, u128, u128, u128, bool);

struct ChainSearch<'a, 'r> {
    s: &'a Digraph,
    a: Vertex,
    b: Vertex,
    rule: ArcRule<'r>,
    min_layers: usize,
    failed: HashSet<StateKey>,
}

impl ChainSearch<'_, '_> {
    /// Apply the rule to a new backward arc; `None` rejects it.
    fn admit(&self, e: Arc, flag: bool) -> Option<bool> {
        match (&self.rule, self.rule.test(e)) {
            (ArcRule::All(_), Some(false)) => None,
            (_, Some(true)) => Some(true),
            _ => Some(flag),
        }
    }

    fn step_a(&mut self, sets: &mut Vec<VertexSet>, rest: VertexSet, arcs: &mut Vec<Arc>, flag: bool) -> bool {
        let s = self.s;
        let k = sets.len();
        let prev2 = if k >= 2 { sets[k - 2] } else { VertexSet::EMPTY };
        let prev1 = if k >= 1 { sets[k - 1] } else { VertexSet::EMPTY };
        let key = (k.min(self.min_layers + 1) * 2 + k % 2, rest.0, prev2.0, prev1.0, flag);
        if self.failed.contains(&key) {
            return false;
        }
        // the one arc from the rest into the layer two below
        let skip = if k >= 2 {
            let e = s.arcs_between(rest, prev2);
            if e.len() != 1 {
                self.failed.insert(key);
                return false;
            }
            Some(e[0])
        } else {
            None
        };
        // the arc into the layer just below must come from the layer after next
        let (next_arc, must_end) = if k >= 1 {
            let e = s.arcs_between(rest, prev1);
            match e.len() {
                0 => (None, true),
                1 => (Some(e[0]), false),
                _ => {
                    self.failed.insert(key);
                    return false;
                }
            }
        } else {
            (None, false)
        };
        if k >= 1 && !rest.contains(self.a) && !prev1.contains(self.a) {
            self.failed.insert(key);
            return false;
        }
        let candidates: Vec<VertexSet> = if must_end { vec![rest] } else { almost_closed_sets(s, rest) };
        for x in candidates {
            if let Some((t, _)) = skip {
                if !x.contains(t) {
                    continue;
                }
            }
            if let Some((t, _)) = next_arc {
                if x.contains(t) {
                    continue;
                }
            }
            match k {
                0 if x.contains(self.b) || x.contains(self.a) => continue,
                1 if !x.contains(self.b) => continue,
                _ => {}
            }
            let left = rest.minus(x);
            let into_x = s.count_arcs_between(left, x);
            if into_x > 1 {
                continue;
            }
            if x.contains(self.a) && (left.is_empty() || into_x != 0) {
                continue;
            }
            let mut f = flag;
            if let Some((t, h)) = skip {
                if !in_terminal(s, x, t) || !in_initial(s, prev2, h) {
                    continue;
                }
                match self.admit((t, h), f) {
                    Some(nf) => f = nf,
                    None => continue,
                }
            }
            sets.push(x);
            if let Some(e) = skip {
                arcs.push(e);
            }
            let ok = if left.is_empty() {
                let p = k + 1;
                p % 2 == 1 && p >= self.min_layers && prev1.contains(self.a) && (f || !self.rule.needs_one())
            } else {
                self.step_a(sets, left, arcs, f)
            };
            if ok {
                return true;
            }
            sets.pop();
            if skip.is_some() {
                arcs.pop();
            }
        }
        self.failed.insert(key);
        false
    }

    fn step_b(&mut self, sets: &mut Vec<VertexSet>, rest: VertexSet, arcs: &mut Vec<Arc>, flag: bool) -> bool {
        let s = self.s;
        let k = sets.len();
        let prev = if k >= 1 { sets[k - 1] } else { VertexSet::EMPTY };
        let key = (k.min(1), rest.0, prev.0, 0, flag);
        if self.failed.contains(&key) {
            return false;
        }
        let down = if k >= 1 {
            let e = s.arcs_between(rest, prev);
            if e.len() != 1 {
                self.failed.insert(key);
                return false;
            }
            Some(e[0])
        } else {
            None
        };
        for x in almost_closed_sets(s, rest) {
            if let Some((t, _)) = down {
                if !x.contains(t) {
                    continue;
                }
            }
            if k == 0 && !x.contains(self.b) {
                continue;
            }
            let left = rest.minus(x);
            if x.contains(self.a) != left.is_empty() {
                continue;
            }
            if left.is_empty() {
                // last layer: the top backward arc leaves its terminal component
                let Some((t, _)) = down else {
                    continue;
                };
                if in_terminal(s, x, t) && (flag || !self.rule.needs_one()) {
                    sets.push(x);
                    return true;
                }
                continue;
            }
            let up = s.arcs_between(left, x);
            if up.len() != 1 {
                continue;
            }
            let (ut, uh) = up[0];
            if k == 0 && !in_initial(s, x, uh) {
                continue;
            }
            if let Some((t, _)) = down {
                if uh != t && !two_paths_within(s, x, uh, t) {
                    continue;
                }
            }
            let Some(f) = self.admit((ut, uh), flag) else {
                continue;
            };
            sets.push(x);
            arcs.push((ut, uh));
            if self.step_b(sets, left, arcs, f) {
                return true;
            }
            sets.pop();
            arcs.pop();
        }
        self.failed.insert(key);
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[usize]) -> VertexSet {
        v.iter().copied().collect()
    }

    /// Layers {0}, {1}, {2}: forward arcs everywhere plus the one backward arc 2->0.
    fn c3_like() -> Digraph {
        Digraph::from_arcs(3, &[(0, 1), (1, 2), (2, 0)]).unwrap()
    }

    #[test]
    fn cycle_is_kind_a_of_order_one() {
        let s = c3_like();
        let w = find_type_a(&s, 1, 1, 1, ArcRule::Any).unwrap();
        assert_eq!(w.partition, vec![set(&[0]), set(&[1]), set(&[2])]);
        assert_eq!(w.backward, vec![(2, 0)]);
        assert_eq!(validate_witness(&s, 1, 1, &w), Ok(()));
    }

    #[test]
    fn complete_digraph_has_no_witness() {
        let k4 = Digraph::complete(4);
        for a in 0..4 {
            for b in 0..4 {
                assert!(detect_type_ab(&k4, a, b).is_none());
            }
        }
    }

    #[test]
    fn two_cycle_is_kind_b() {
        let s = Digraph::complete(2);
        let w = find_type_b(&s, 1, 0, ArcRule::Any).unwrap();
        assert_eq!(w.partition, vec![set(&[0]), set(&[1])]);
        assert_eq!(w.backward, vec![(1, 0)]);
        assert_eq!(validate_witness(&s, 1, 0, &w), Ok(()));
    }

    #[test]
    fn validation_rejects_tampering() {
        let s = c3_like();
        let mut w = find_type_a(&s, 1, 1, 1, ArcRule::Any).unwrap();
        w.backward = vec![(0, 1)];
        assert!(validate_witness(&s, 1, 1, &w).is_err());
        let w2 = TypeABWitness { kind: WitnessKind::A, partition: vec![set(&[0, 1, 2])], backward: vec![], order: 0 };
        assert!(validate_witness(&s, 1, 1, &w2).is_err());
    }

    #[test]
    fn rules_filter_backward_arcs() {
        let s = c3_like();
        let never = |_: Arc| false;
        assert!(find_type_a(&s, 1, 1, 1, ArcRule::All(&never)).is_none());
        assert!(find_type_a(&s, 1, 1, 1, ArcRule::Some(&never)).is_none());
        let always = |_: Arc| true;
        assert!(find_type_a(&s, 1, 1, 1, ArcRule::All(&always)).is_some());
    }
}
