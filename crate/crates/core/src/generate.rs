//! Seeded instance generators: the exceptional composition families, layered
//! kind A and kind B digraphs, the separation family, random compositions,
//! random quasi-transitive digraphs and exhaustive small classes.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bitset::VertexSet;
use crate::branching::{branching_avoiding_path, AvoidOutcome};
use crate::composite::Table1Family;
use crate::composition::{as_semicomplete_composition, recognize, Composition};
use crate::flow::is_k_arc_strong;
use crate::graph::{initial_component, terminal_component, Digraph, Vertex};
use crate::iso::canonical_code;
use crate::semicomplete::Fig1Id;
use crate::typeab::{validate_witness, TypeABWitness, WitnessKind};
use crate::Error;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Which generator to run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Generator {
    /// `t` and `h` are family parameters, see [`table1_instance`].
    Table1 { family: Table1Family, t: usize, h: usize },
    KindA { alpha: usize, max_layer: usize, max_part: usize },
    KindB { beta: usize, max_layer: usize, max_part: usize },
    Separation { extra: usize },
    RandomComposition { quotient: usize, max_part: usize },
    QuasiTransitive { n: usize },
}

/// Root pairs to evaluate on a generated instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RootsPolicy {
    All,
    Designated,
    Pinned(Vertex, Vertex),
    Sampled(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstanceSpec {
    pub generator: Generator,
    pub seed: u64,
    pub roots: RootsPolicy,
}

/// A generated digraph with its composition structure (when it has one),
/// designated roots and, for layered generators, the quotient witness.
#[derive(Clone, Debug)]
pub struct Instance {
    pub label: String,
    pub graph: Digraph,
    pub composition: Option<Composition>,
    pub roots: (Vertex, Vertex),
    pub witness: Option<TypeABWitness>,
}

impl Instance {
    fn from_composition(label: String, c: Composition, roots: (Vertex, Vertex)) -> Self {
        Instance { label, graph: c.flat().clone(), composition: Some(c), roots, witness: None }
    }

    /// Root pairs selected by `policy`, deterministic under `seed`.
    pub fn root_pairs(&self, policy: &RootsPolicy, seed: u64) -> Vec<(Vertex, Vertex)> {
        let n = self.graph.n();
        let all: Vec<(Vertex, Vertex)> = (0..n).flat_map(|u| (0..n).map(move |v| (u, v))).collect();
        match policy {
            RootsPolicy::All => all,
            RootsPolicy::Designated => vec![self.roots],
            RootsPolicy::Pinned(u, v) => vec![(*u, *v)],
            RootsPolicy::Sampled(k) => {
                let mut r = rng(seed ^ 0x5eed);
                all.choose_multiple(&mut r, *k).copied().collect()
            }
        }
    }
}

pub fn gen_family(spec: &InstanceSpec) -> Result<Instance, Error> {
    let mut r = rng(spec.seed);
    match spec.generator {
        Generator::Table1 { family, t, h } => table1_instance(family, t, h, spec.seed),
        Generator::KindA { alpha, max_layer, max_part } => {
            let (s, a, b, w) = kind_a_semicomplete(alpha, max_layer, &mut r)?;
            layered_composition(format!("kind-a/{alpha}/{}", spec.seed), s, a, b, w, max_part, &mut r)
        }
        Generator::KindB { beta, max_layer, max_part } => {
            let (s, a, b, w) = kind_b_semicomplete(beta, max_layer, &mut r)?;
            layered_composition(format!("kind-b/{beta}/{}", spec.seed), s, a, b, w, max_part, &mut r)
        }
        Generator::Separation { extra } => separation_member(extra, spec.seed),
        Generator::RandomComposition { quotient, max_part } => {
            if quotient < 2 || max_part == 0 {
                return Err(Error::InvalidQuery("random composition needs a quotient of order two and nonempty parts".into()));
            }
            let c = random_composition(quotient, max_part, &mut r);
            Ok(Instance::from_composition(format!("random-comp/{quotient}/{max_part}/{}", spec.seed), c, (0, 0)))
        }
        Generator::QuasiTransitive { n } => {
            if n == 0 {
                return Err(Error::InvalidQuery("empty digraph".into()));
            }
            let g = random_quasi_transitive(n, &mut r);
            Ok(Instance { label: format!("qt/{n}/{}", spec.seed), graph: g, composition: None, roots: (0, 0), witness: None })
        }
    }
}

// ---------------------------------------------------------------------------
// random building blocks

/// Each ordered pair is an arc with probability `p`.
pub fn random_digraph<R: Rng>(n: usize, p: f64, r: &mut R) -> Digraph {
    let mut g = Digraph::new(n).expect("size within bounds");
    for a in 0..n {
        for b in 0..n {
            if a != b && r.gen_bool(p) {
                g.add_arc(a, b);
            }
        }
    }
    g
}

/// Random orientation of every pair, doubled into a 2-cycle with
/// probability `p_both`.
pub fn random_semicomplete<R: Rng>(n: usize, p_both: f64, r: &mut R) -> Digraph {
    let mut g = Digraph::new(n).expect("size within bounds");
    for a in 0..n {
        for b in a + 1..n {
            if r.gen_bool(p_both) {
                g.add_arc(a, b);
                g.add_arc(b, a);
            } else if r.gen_bool(0.5) {
                g.add_arc(a, b);
            } else {
                g.add_arc(b, a);
            }
        }
    }
    g
}

pub fn random_strong_semicomplete<R: Rng>(n: usize, p_both: f64, r: &mut R) -> Digraph {
    loop {
        let g = random_semicomplete(n, p_both, r);
        if n == 1 || g.is_strong() {
            return g;
        }
    }
}

/// A 2-arc-strong semicomplete digraph on `n >= 3` vertices.
pub fn random_two_arc_strong_semicomplete<R: Rng>(n: usize, r: &mut R) -> Digraph {
    assert!(n >= 3, "2-arc-strong semicomplete digraphs need three vertices");
    loop {
        let p = r.gen_range(0.2..0.8);
        let g = random_semicomplete(n, p, r);
        if is_k_arc_strong(&g, 2).is_ok() {
            return g;
        }
    }
}

/// A strong semicomplete quotient on `s` vertices with random parts of
/// size at most `max_part`.
pub fn random_composition<R: Rng>(s: usize, max_part: usize, r: &mut R) -> Composition {
    let p_both = r.gen_range(0.0..0.6);
    let q = random_strong_semicomplete(s, p_both, r);
    let p_arc = r.gen_range(0.0..0.7);
    let parts = (0..s).map(|_| random_digraph(r.gen_range(1..=max_part), p_arc, r)).collect();
    Composition::new(q, parts).expect("valid composition")
}

/// A random transitive oriented digraph: the transitive closure of a random
/// acyclic orientation.
pub fn random_transitive_oriented<R: Rng>(n: usize, r: &mut R) -> Digraph {
    let mut order: Vec<Vertex> = (0..n).collect();
    order.shuffle(r);
    let mut g = Digraph::new(n).expect("size within bounds");
    for i in 0..n {
        for j in i + 1..n {
            if r.gen_bool(0.4) {
                g.add_arc(order[i], order[j]);
            }
        }
    }
    // close transitively
    for k in 0..n {
        for a in g.in_nbrs(k) {
            for b in g.out_nbrs(k) {
                if a != b {
                    g.add_arc(a, b);
                }
            }
        }
    }
    g
}

/// A random quasi-transitive digraph built recursively from strong
/// tournaments and transitive oriented quotients.
pub fn random_quasi_transitive<R: Rng>(n: usize, r: &mut R) -> Digraph {
    if n == 1 {
        return Digraph::new(1).expect("one vertex");
    }
    loop {
        let k = r.gen_range(2..=n);
        let strong = r.gen_bool(0.5);
        let quotient = if strong {
            if k == 2 {
                continue;
            }
            random_strong_semicomplete(k, 0.0, r)
        } else {
            random_transitive_oriented(k, r)
        };
        // split n into k positive sizes
        let mut sizes = vec![1; k];
        for _ in 0..n - k {
            let i = r.gen_range(0..k);
            sizes[i] += 1;
        }
        let parts = sizes.iter().map(|&m| random_quasi_transitive(m, r)).collect();
        let g = Composition::new(quotient, parts).expect("valid composition").flat().clone();
        if recognize(&g).quasi_transitive {
            return g;
        }
    }
}

// ---------------------------------------------------------------------------
// exhaustive classes

/// All digraphs on `n` vertices in which each unordered pair takes one of
/// `states` (`[none, ->, <-, <->]` filtered by the caller), one per
/// isomorphism class.
fn exhaustive(n: usize, states: &[u8]) -> Vec<Digraph> {
    let pairs: Vec<(Vertex, Vertex)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let mut idx = vec![0usize; pairs.len()];
    loop {
        let mut g = Digraph::new(n).expect("size within bounds");
        for (k, &(a, b)) in pairs.iter().enumerate() {
            let st = states[idx[k]];
            if st & 1 != 0 {
                g.add_arc(a, b);
            }
            if st & 2 != 0 {
                g.add_arc(b, a);
            }
        }
        if seen.insert(canonical_code(&g)) {
            out.push(g);
        }
        // odometer
        let mut k = 0;
        loop {
            if k == idx.len() {
                return out;
            }
            idx[k] += 1;
            if idx[k] < states.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// Semicomplete digraphs on `n <= 5` vertices up to isomorphism.
pub fn exhaustive_semicomplete(n: usize) -> Vec<Digraph> {
    assert!((1..=5).contains(&n), "exhaustive semicomplete generation is limited to five vertices");
    exhaustive(n, &[1, 2, 3])
}

/// Tournaments on `n <= 6` vertices up to isomorphism.
pub fn exhaustive_tournaments(n: usize) -> Vec<Digraph> {
    assert!((1..=6).contains(&n), "exhaustive tournament generation is limited to six vertices");
    exhaustive(n, &[1, 2])
}

/// Quasi-transitive digraphs on `n <= 4` vertices up to isomorphism.
pub fn exhaustive_quasi_transitive(n: usize) -> Vec<Digraph> {
    assert!((1..=4).contains(&n), "exhaustive quasi-transitive generation is limited to four vertices");
    exhaustive(n, &[0, 1, 2, 3]).into_iter().filter(|g| recognize(g).quasi_transitive).collect()
}

// ---------------------------------------------------------------------------
// exceptional families

fn kbar(n: usize) -> Digraph {
    Digraph::new(n).expect("size within bounds")
}

/// `RT_k`: consecutive vertices joined forward, all other pairs backward.
pub fn reverse_path_tournament(k: usize) -> Digraph {
    let mut g = kbar(k);
    for i in 0..k {
        for j in i + 1..k {
            if j == i + 1 {
                g.add_arc(i, j);
            } else {
                g.add_arc(j, i);
            }
        }
    }
    g
}

/// A random digraph on `n` vertices whose arcs all end (`into_root`) or all
/// start at vertex 0.
fn rooted_part<R: Rng>(n: usize, into_root: bool, r: &mut R) -> Digraph {
    let mut g = kbar(n);
    for x in 1..n {
        if r.gen_bool(0.5) {
            if into_root {
                g.add_arc(x, 0);
            } else {
                g.add_arc(0, x);
            }
        }
    }
    for a in 1..n {
        for b in 1..n {
            if a != b && r.gen_bool(0.3) {
                if into_root {
                    // arcs inside H(u) - u are forbidden, so only the root may be entered
                    continue;
                }
                g.add_arc(a, b);
            }
        }
    }
    g
}

/// One member of an exceptional family.
///
/// * (a): `h` in `{0, 1}` arcs `vu` inside the root part.
/// * (b): `t` middle vertices, `h = 1` adds the arc `vu`.
/// * (c): `t` middle vertices with `h <= 1` arcs among them.
/// * (d): `|H(u)| = t`, `|H(v)| = h`.
/// * (e): independent set of size `t`, extra part `H` of size `h` (none for
///   `h = 0`); `|H(u)|` is one or two by seed.
/// * (f): extra part of size `h >= 1` joined to a single vertex with some
///   arcs reversed or doubled.
/// * (g): the fixed four-vertex digraph.
pub fn table1_instance(family: Table1Family, t: usize, h: usize, seed: u64) -> Result<Instance, Error> {
    let mut r = rng(seed);
    let label = format!("table1-{}/{t}/{h}/{seed}", family.letter());
    let bad = |what: &str| Err(Error::InvalidQuery(format!("family ({}): {what}", family.letter())));
    match family {
        Table1Family::A => {
            if h > 1 {
                return bad("the root part has at most the arc vu");
            }
            let part = if h == 1 { Digraph::from_arcs(2, &[(1, 0)])? } else { kbar(2) };
            let c = Composition::new(Digraph::cycle(3), vec![kbar(2), kbar(2), part])?;
            Ok(Instance::from_composition(label, c, (4, 5)))
        }
        Table1Family::B => {
            if t == 0 || h > 1 {
                return bad("needs t >= 1 and h <= 1");
            }
            let mut q = Digraph::transitive_tournament(3);
            if h == 1 {
                q.add_arc(2, 0);
            }
            let c = Composition::new(q, vec![kbar(1), kbar(t), kbar(1)])?;
            Ok(Instance::from_composition(label, c, (0, t + 1)))
        }
        Table1Family::C => {
            if t == 0 || h > 1 || (h == 1 && t < 2) {
                return bad("needs t >= 1 and at most one arc");
            }
            let mut mid = kbar(t);
            if h == 1 {
                let a = r.gen_range(0..t);
                let b = (a + r.gen_range(1..t)) % t;
                mid.add_arc(a, b);
            }
            let c = Composition::new(Digraph::cycle(3), vec![kbar(1), mid, kbar(1)])?;
            Ok(Instance::from_composition(label, c, (0, t + 1)))
        }
        Table1Family::D => {
            if t == 0 || h == 0 {
                return bad("needs nonempty root parts");
            }
            let hu = rooted_part(t, true, &mut r);
            let hv = rooted_part(h, false, &mut r);
            // only arcs out of v inside H(v): vertices other than v keep out-degree one
            let mut hv_clean = kbar(h);
            for (a, b) in hv.arcs() {
                if a == 0 {
                    hv_clean.add_arc(a, b);
                }
            }
            let c = Composition::new(Digraph::cycle(3), vec![hu, hv_clean, kbar(1)])?;
            Ok(Instance::from_composition(label, c, (0, t)))
        }
        Table1Family::E => {
            if t == 0 {
                return bad("needs t >= 1");
            }
            let hu_size = 1 + (seed % 2) as usize;
            let hu = rooted_part(hu_size, true, &mut r);
            let mut parts = Vec::new();
            if h > 0 {
                parts.push(random_digraph(h, 0.4, &mut r));
            }
            parts.extend([kbar(t), kbar(1), hu, kbar(1)]);
            let k = parts.len();
            let c = Composition::new(reverse_path_tournament(k), parts)?;
            let n = c.n();
            let u = n - 1 - hu_size;
            Ok(Instance::from_composition(label, c, (u, n - 1)))
        }
        Table1Family::F => {
            if h == 0 {
                return bad("needs a nonempty extra part");
            }
            let hu_size = 1 + (seed % 2) as usize;
            let hpart = random_digraph(h, 0.4, &mut r);
            let base = Composition::new(reverse_path_tournament(5), vec![hpart.clone(), kbar(1), kbar(1), rooted_part(hu_size, true, &mut r), kbar(1)])?;
            let mut g = base.flat().clone();
            let k = h;
            // classes of mutually non-adjacent vertices of H change together
            let classes = complement_classes(&hpart);
            loop {
                let mut changed = false;
                let mut forward_left = false;
                let mut trial = g.clone();
                for class in &classes {
                    let mode = r.gen_range(0..3);
                    for x in class.iter() {
                        match mode {
                            1 => {
                                trial.remove_arc(x, k);
                                trial.add_arc(k, x);
                                changed = true;
                            }
                            2 => {
                                trial.add_arc(k, x);
                                changed = true;
                                forward_left = true;
                            }
                            _ => forward_left = true,
                        }
                    }
                }
                if changed && forward_left && trial.is_strong() {
                    g = trial;
                    break;
                }
            }
            let c = as_semicomplete_composition(&g).ok_or_else(|| Error::Internal("family (f) member is not a semicomplete composition".into()))?;
            let n = g.n();
            Ok(Instance::from_composition(label, c, (n - 1 - hu_size, n - 1)))
        }
        Table1Family::G => {
            let q = Fig1Id::E.digraph();
            let c = Composition::new(q, vec![kbar(1); 4])?;
            Ok(Instance::from_composition(label, c, (0, 3)))
        }
    }
}

/// Vertex classes of the complement's connected components.
fn complement_classes(h: &Digraph) -> Vec<VertexSet> {
    let mut left = h.vertices();
    let mut out = Vec::new();
    while let Some(x) = left.first() {
        let mut class = VertexSet::singleton(x);
        let mut stack = vec![x];
        while let Some(a) = stack.pop() {
            for b in left.minus(class) {
                if !h.adjacent(a, b) {
                    class.insert(b);
                    stack.push(b);
                }
            }
        }
        left = left.minus(class);
        out.push(class);
    }
    out
}

// ---------------------------------------------------------------------------
// layered digraphs

/// Layers of random sizes numbered bottom-up, each a random semicomplete
/// digraph, with every cross-layer pair oriented upwards.
fn layered_base<R: Rng>(p: usize, max_layer: usize, r: &mut R) -> (Digraph, Vec<VertexSet>) {
    let sizes: Vec<usize> = (0..p).map(|_| r.gen_range(1..=max_layer)).collect();
    let n: usize = sizes.iter().sum();
    let mut g = kbar(n);
    let mut layers = Vec::with_capacity(p);
    let mut off = 0;
    for &m in &sizes {
        let inner = random_semicomplete(m, 0.25, r);
        for (a, b) in inner.arcs() {
            g.add_arc(off + a, off + b);
        }
        layers.push((off..off + m).collect::<VertexSet>());
        off += m;
    }
    for i in 0..p {
        for j in i + 1..p {
            for a in layers[i] {
                for b in layers[j] {
                    g.add_arc(a, b);
                }
            }
        }
    }
    (g, layers)
}

fn pick<R: Rng>(set: VertexSet, r: &mut R) -> Vertex {
    let v = set.to_vec();
    v[r.gen_range(0..v.len())]
}

/// Attempts before a layered generator gives up on the root-degree demand.
const LAYERED_ATTEMPTS: usize = 10_000;

/// Root degrees of at least two, without which the branchings of `a` and
/// `b` are forced through a common arc.
fn roots_ok(g: &Digraph, a: Vertex, b: Vertex) -> bool {
    g.out_degree(a) >= 2 && g.in_degree(b) >= 2
}

/// Inside the bottom layer an out-branching from the last backward head
/// avoids some path to `b`; inside the top layer an in-branching into the
/// first backward tail avoids some path from `a`.
fn end_layers_ok(g: &Digraph, a: Vertex, b: Vertex, w: &TypeABWitness) -> bool {
    let local = |layer: VertexSet, x: Vertex| {
        let (h, map) = g.induced(layer);
        (h, map.iter().position(|&m| m == x).expect("vertex of the layer"))
    };
    let found = |h: &Digraph, root: Vertex, target: Vertex| matches!(branching_avoiding_path(h, root, target), Ok(AvoidOutcome::Found { .. }));
    let (x1, yb) = (w.backward[0].0, w.backward[w.backward.len() - 1].1);
    let (bottom, top) = (w.partition[0], w.partition[w.partition.len() - 1]);
    let ((h1, y), (_, bb)) = (local(bottom, yb), local(bottom, b));
    let ((ht, x), (_, aa)) = (local(top, x1), local(top, a));
    found(&h1, y, bb) && found(&ht.converse(), x, aa)
}

/// A semicomplete digraph of kind A and order `alpha` with its witness;
/// `d+(a) >= 2` and `d-(b) >= 2`.
pub fn kind_a_semicomplete<R: Rng>(alpha: usize, max_layer: usize, r: &mut R) -> Result<(Digraph, Vertex, Vertex, TypeABWitness), Error> {
    if alpha == 0 || max_layer == 0 {
        return Err(Error::InvalidQuery("kind A needs alpha >= 1 and nonempty layers".into()));
    }
    let p = 2 * alpha + 1;
    for _ in 0..LAYERED_ATTEMPTS {
        let (mut g, layers) = layered_base(p, max_layer, r);
        let mut backward = Vec::new();
        for k in 0..p - 2 {
            let (hi, lo) = (layers[p - 1 - k], layers[p - 3 - k]);
            let x = pick(terminal_component(&g, hi).expect("semicomplete layer"), r);
            let y = pick(initial_component(&g, lo).expect("semicomplete layer"), r);
            backward.push((x, y));
        }
        for &(x, y) in &backward {
            g.add_arc(x, y);
            if r.gen_bool(0.5) {
                g.remove_arc(y, x);
            }
        }
        let a = pick(layers[p - 2], r);
        let b = pick(layers[1], r);
        if !roots_ok(&g, a, b) {
            continue;
        }
        let w = TypeABWitness { kind: WitnessKind::A, partition: layers, backward, order: alpha };
        validate_witness(&g, a, b, &w).map_err(|e| Error::Internal(format!("generated kind A witness invalid: {e}")))?;
        return Ok((g, a, b, w));
    }
    Err(Error::InvalidQuery("layers too small for root degrees of two".into()))
}

/// A semicomplete digraph of kind B and order `beta` with its witness;
/// `d+(a) >= 2` and `d-(b) >= 2`.
pub fn kind_b_semicomplete<R: Rng>(beta: usize, max_layer: usize, r: &mut R) -> Result<(Digraph, Vertex, Vertex, TypeABWitness), Error> {
    if beta == 0 || max_layer == 0 {
        return Err(Error::InvalidQuery("kind B needs beta >= 1 and nonempty layers".into()));
    }
    let p = beta + 1;
    for _ in 0..LAYERED_ATTEMPTS {
        let (mut g, layers) = layered_base(p, max_layer, r);
        let mut backward = Vec::new();
        let mut tail = pick(terminal_component(&g, layers[p - 1]).expect("semicomplete layer"), r);
        for k in 0..p - 1 {
            let lo = layers[p - 2 - k];
            let head = if k == p - 2 { pick(initial_component(&g, lo).expect("semicomplete layer"), r) } else { pick(lo, r) };
            backward.push((tail, head));
            // the next tail is the head itself or another vertex of the layer
            tail = if r.gen_bool(0.5) { head } else { pick(lo, r) };
        }
        for &(x, y) in &backward {
            g.add_arc(x, y);
            if r.gen_bool(0.5) {
                g.remove_arc(y, x);
            }
        }
        let a = pick(layers[p - 1], r);
        let b = pick(layers[0], r);
        let w = TypeABWitness { kind: WitnessKind::B, partition: layers, backward, order: beta };
        if roots_ok(&g, a, b) && validate_witness(&g, a, b, &w).is_ok() && end_layers_ok(&g, a, b, &w) {
            return Ok((g, a, b, w));
        }
    }
    Err(Error::InvalidQuery("layers too small for root degrees of two".into()))
}

/// Blow a layered semicomplete digraph up with random parts.
fn layered_composition<R: Rng>(label: String, s: Digraph, a: Vertex, b: Vertex, w: TypeABWitness, max_part: usize, r: &mut R) -> Result<Instance, Error> {
    if max_part == 0 {
        return Err(Error::InvalidQuery("parts must be nonempty".into()));
    }
    let p_arc = r.gen_range(0.0..0.5);
    let parts: Vec<Digraph> = (0..s.n()).map(|_| random_digraph(r.gen_range(1..=max_part), p_arc, r)).collect();
    let c = Composition::new(s, parts)?;
    let (u, v) = (c.parts()[a].first().expect("nonempty"), c.parts()[b].first().expect("nonempty"));
    Ok(Instance { label, graph: c.flat().clone(), composition: Some(c), roots: (u, v), witness: Some(w) })
}

/// A member of the separation family: kind A of order two with singleton
/// end layers, middle layers grown by up to `extra` vertices each, and the
/// parts of the top tail and the bottom head doubled.
pub fn separation_member(extra: usize, seed: u64) -> Result<Instance, Error> {
    let mut r = rng(seed);
    // layers bottom-up: {y3}, {y2, v, ..}, {y1, x3, ..}, {x2, u, ..}, {x1}
    let sizes = [1, 2 + r.gen_range(0..=extra), 2 + r.gen_range(0..=extra), 2 + r.gen_range(0..=extra), 1];
    let n: usize = sizes.iter().sum();
    let mut s = kbar(n);
    let mut layers = Vec::new();
    let mut off = 0;
    for &m in &sizes {
        layers.push((off..off + m).collect::<VertexSet>());
        off += m;
    }
    for i in 0..5 {
        for j in i + 1..5 {
            for a in layers[i] {
                for b in layers[j] {
                    s.add_arc(a, b);
                }
            }
        }
    }
    // inside each middle layer: a strong semicomplete digraph when large,
    // otherwise the single arc from the head to the tail of the layer
    for (li, &m) in sizes.iter().enumerate().skip(1).take(3) {
        let base = layers[li].first().expect("nonempty");
        let inner = if m == 2 { Digraph::from_arcs(2, &[(0, 1)])? } else { random_strong_semicomplete(m, 0.2, &mut r) };
        for (a, b) in inner.arcs() {
            s.add_arc(base + a, base + b);
        }
    }
    let first = |l: usize| layers[l].first().expect("nonempty");
    let (y3, y2, v) = (first(0), first(1), first(1) + 1);
    let (y1, x3) = (first(2), first(2) + 1);
    let (u, x2) = (first(3), first(3) + 1);
    let x1 = first(4);
    let backward = vec![(x1, y1), (x2, y2), (x3, y3)];
    for &(x, y) in &backward {
        s.add_arc(x, y);
        s.remove_arc(y, x);
    }
    let w = TypeABWitness { kind: WitnessKind::A, partition: layers, backward, order: 2 };
    validate_witness(&s, u, v, &w).map_err(|e| Error::Internal(format!("separation member witness invalid: {e}")))?;
    let parts: Vec<Digraph> = (0..n).map(|x| if x == x1 || x == y3 { kbar(2) } else { kbar(1) }).collect();
    let c = Composition::new(s, parts)?;
    let roots = (c.parts()[u].first().expect("nonempty"), c.parts()[v].first().expect("nonempty"));
    Ok(Instance { label: format!("separation/{extra}/{seed}"), graph: c.flat().clone(), composition: Some(c), roots, witness: Some(w) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::composite::{match_family, match_table1};

    #[test]
    fn exhaustive_counts() {
        // non-isomorphic tournaments: 1, 1, 2, 4, 12
        let counts: Vec<usize> = (1..=5).map(|n| exhaustive_tournaments(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 4, 12]);
        // semicomplete digraphs on three vertices: 7 classes
        assert_eq!(exhaustive_semicomplete(3).len(), 7);
        // digraphs on three vertices: 16 classes, all but the ones with an
        // induced non-adjacent 2-path are quasi-transitive
        assert!(exhaustive_quasi_transitive(3).len() < 16);
    }

    #[test]
    fn generators_are_deterministic() {
        let spec = InstanceSpec { generator: Generator::RandomComposition { quotient: 3, max_part: 2 }, seed: 7, roots: RootsPolicy::All };
        assert_eq!(gen_family(&spec).unwrap().graph, gen_family(&spec).unwrap().graph);
        let q = InstanceSpec { generator: Generator::QuasiTransitive { n: 6 }, seed: 3, roots: RootsPolicy::All };
        let g = gen_family(&q).unwrap().graph;
        assert!(recognize(&g).quasi_transitive);
    }

    #[test]
    fn table1_members_match_their_family() {
        for f in Table1Family::ALL {
            for t in 1..=3 {
                for h in 0..=3 {
                    for seed in 0..3 {
                        let Ok(inst) = table1_instance(f, t, h, seed) else { continue };
                        let c = inst.composition.as_ref().unwrap();
                        let (u, v) = inst.roots;
                        // small members may also read as an earlier family
                        assert!(match_table1(c, u, v).is_some(), "{}", inst.label);
                        assert!(match_family(c.flat(), u, v, f).is_some(), "{}", inst.label);
                    }
                }
            }
        }
    }

    #[test]
    fn layered_generators_validate() {
        let mut r = rng(11);
        for alpha in 1..=3 {
            kind_a_semicomplete(alpha, 3, &mut r).unwrap();
        }
        for beta in 1..=3 {
            kind_b_semicomplete(beta, 3, &mut r).unwrap();
        }
        let m = separation_member(0, 0).unwrap();
        assert_eq!(m.graph.n(), 10);
    }

    #[test]
    fn reverse_path_tournament_is_strong() {
        let g = reverse_path_tournament(5);
        assert!(g.is_strong());
        assert_eq!(g.arc_count(), 10);
    }
}
