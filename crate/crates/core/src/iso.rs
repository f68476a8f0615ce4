//! Isomorphism for tiny digraphs: pinned pattern matching and canonical forms.

use crate::graph::{Digraph, Vertex};
use crate::Error;

/// Largest pattern accepted by [`small_digraph_match`].
pub const PATTERN_BOUND: usize = 8;

/// Find an isomorphism `pattern -> g` extending `pinned` (pairs
/// `(pattern vertex, g vertex)`). Returns `map[p] = g vertex`.
pub fn small_digraph_match(g: &Digraph, pattern: &Digraph, pinned: &[(Vertex, Vertex)]) -> Result<Option<Vec<Vertex>>, Error> {
    if pattern.n() > PATTERN_BOUND {
        return Err(Error::TooLarge(pattern.n(), PATTERN_BOUND));
    }
    let n = pattern.n();
    if g.n() != n || g.arc_count() != pattern.arc_count() {
        return Ok(None);
    }
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    for &(p, x) in pinned {
        if p >= n || x >= n {
            return Ok(None);
        }
        if map[p] != usize::MAX && map[p] != x {
            return Ok(None);
        }
        if used[x] && map[p] != x {
            return Ok(None);
        }
        map[p] = x;
        used[x] = true;
    }
    for p in 0..n {
        if map[p] != usize::MAX && !compatible(g, pattern, &map, p, map[p]) {
            return Ok(None);
        }
    }
    let order: Vec<Vertex> = (0..n).filter(|&p| map[p] == usize::MAX).collect();
    if extend(g, pattern, &mut map, &mut used, &order, 0) {
        Ok(Some(map))
    } else {
        Ok(None)
    }
}

fn compatible(g: &Digraph, pattern: &Digraph, map: &[Vertex], p: Vertex, x: Vertex) -> bool {
    if pattern.out_degree(p) != g.out_degree(x) || pattern.in_degree(p) != g.in_degree(x) {
        return false;
    }
    for q in 0..pattern.n() {
        let y = map[q];
        if y == usize::MAX || q == p {
            continue;
        }
        if pattern.has_arc(p, q) != g.has_arc(x, y) || pattern.has_arc(q, p) != g.has_arc(y, x) {
            return false;
        }
    }
    true
}

fn extend(g: &Digraph, pattern: &Digraph, map: &mut Vec<Vertex>, used: &mut Vec<bool>, order: &[Vertex], i: usize) -> bool {
    if i == order.len() {
        return true;
    }
    let p = order[i];
    for x in 0..g.n() {
        if used[x] || !compatible(g, pattern, map, p, x) {
            continue;
        }
        map[p] = x;
        used[x] = true;
        if extend(g, pattern, map, used, order, i + 1) {
            return true;
        }
        map[p] = usize::MAX;
        used[x] = false;
    }
    false
}

/// Canonical adjacency code: the lexicographically smallest adjacency matrix
/// over all vertex permutations. Meant for n <= 6.
pub fn canonical_code(g: &Digraph) -> u64 {
    let n = g.n();
    assert!(n * n <= 64, "canonical_code supports n <= 8 only");
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best = u64::MAX;
    permute(g, &mut perm, 0, &mut best);
    best
}

fn code_of(g: &Digraph, perm: &[usize]) -> u64 {
    let n = g.n();
    let mut c = 0u64;
    for i in 0..n {
        for j in 0..n {
            c <<= 1;
            if i != j && g.has_arc(perm[i], perm[j]) {
                c |= 1;
            }
        }
    }
    c
}

fn permute(g: &Digraph, perm: &mut Vec<usize>, k: usize, best: &mut u64) {
    if k == perm.len() {
        *best = (*best).min(code_of(g, perm));
        return;
    }
    for i in k..perm.len() {
        perm.swap(k, i);
        permute(g, perm, k + 1, best);
        perm.swap(k, i);
    }
}
