//! Property tests: oracle symmetry, verifier strictness, engine soundness
//! and generator determinism.

use proptest::prelude::*;

use goodpair::branching::{branching_avoiding_path, extend_pair, verify_branching, verify_good_pair, AvoidOutcome, BranchingPair};
use goodpair::composite::decide_composition;
use goodpair::flow::{arc_connectivity_at_least, path_arcs};
use goodpair::generate::{
    gen_family, random_composition, random_digraph, random_quasi_transitive, random_semicomplete, rng, Generator, InstanceSpec, RootsPolicy,
};
use goodpair::oracle::{oracle_good_pair, OracleAnswer, OracleLimits};
use goodpair::semicomplete::decide_semicomplete;
use goodpair::transitive::decide_quasi_transitive;
use goodpair::{Digraph, Vertex};

fn oracle_yes(g: &Digraph, u: Vertex, v: Vertex) -> bool {
    match oracle_good_pair(g, u, v, OracleLimits::default()).unwrap() {
        OracleAnswer::Yes(p) => {
            assert_eq!(verify_good_pair(g, u, v, &p), Ok(()));
            true
        }
        OracleAnswer::No => false,
        OracleAnswer::ResourceExceeded => panic!("oracle budget too small"),
    }
}

/// Some simple `(y, b)`-path leaves an out-branching at `y` behind.
fn brute_force_avoiding(g: &Digraph, y: Vertex, b: Vertex) -> bool {
    fn rec(g: &Digraph, path: &mut Vec<Vertex>, b: Vertex) -> bool {
        let cur = *path.last().unwrap();
        if cur == b {
            return g.without_arcs(&path_arcs(path)).reach(path[0]) == g.vertices();
        }
        for nxt in g.out_nbrs(cur) {
            if !path.contains(&nxt) {
                path.push(nxt);
                if rec(g, path, b) {
                    return true;
                }
                path.pop();
            }
        }
        false
    }
    rec(g, &mut vec![y], b)
}

fn digraph(seed: u64, max_n: usize) -> Digraph {
    let mut r = rng(seed);
    let n = 1 + (seed as usize % max_n);
    random_digraph(n, 0.45, &mut r)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn oracle_is_symmetric_under_converse(seed in any::<u64>(), a in 0usize..6, b in 0usize..6) {
        let g = digraph(seed, 6);
        let (u, v) = (a % g.n(), b % g.n());
        prop_assert_eq!(oracle_yes(&g, u, v), oracle_yes(&g.converse(), v, u));
    }

    #[test]
    fn semicomplete_engine_matches_oracle(seed in any::<u64>(), a in 0usize..7, b in 0usize..7) {
        let mut r = rng(seed);
        let n = 2 + (seed as usize % 6);
        let g = random_semicomplete(n, 0.3, &mut r);
        let (u, v) = (a % n, b % n);
        let verdict = decide_semicomplete(&g, u, v).unwrap();
        if let Some(p) = verdict.pair() {
            prop_assert_eq!(verify_good_pair(&g, u, v, p), Ok(()));
        }
        prop_assert_eq!(verdict.is_yes(), oracle_yes(&g, u, v));
        prop_assert_eq!(verdict.is_yes(), decide_semicomplete(&g.converse(), v, u).unwrap().is_yes());
    }

    #[test]
    fn verifier_rejects_perturbed_pairs(seed in any::<u64>(), pick in any::<usize>()) {
        let mut r = rng(seed);
        let n = 3 + (seed as usize % 5);
        let g = random_semicomplete(n, 0.5, &mut r);
        let Some(p) = decide_semicomplete(&g, 0, n - 1).unwrap().pair().cloned() else { return Ok(()) };
        // re-hang a vertex of the out-branching on a non-neighbour
        let x = 1 + pick % (n - 1);
        let bad_parent = (0..n).find(|&y| y != x && !g.has_arc(y, x));
        if let Some(y) = bad_parent {
            let mut out = p.out.clone();
            out.parent[x] = Some(y);
            let q = BranchingPair::new(out, p.inn.clone());
            prop_assert!(verify_good_pair(&g, 0, n - 1, &q).is_err());
        }
        // use one arc twice
        let e = p.out.arcs()[pick % p.out.arcs().len()];
        let mut inn = p.inn.clone();
        if e.0 != n - 1 {
            inn.parent[e.0] = Some(e.1);
            let q = BranchingPair::new(p.out.clone(), inn);
            prop_assert!(verify_good_pair(&g, 0, n - 1, &q).is_err());
        }
    }

    #[test]
    fn pairs_extend_over_a_new_vertex(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = 4 + (seed as usize % 4);
        let g = random_semicomplete(n, 0.5, &mut r);
        let x = n - 1;
        let keep = g.vertices().without(x);
        prop_assume!(g.in_nbrs(x).intersects(keep) && g.out_nbrs(x).intersects(keep));
        let (h, map) = g.induced(keep);
        let Some(p) = decide_semicomplete(&h, 0, 1).unwrap().pair().cloned() else { return Ok(()) };
        let lifted = p.lift(&map, n);
        let q = extend_pair(&g, goodpair::VertexSet::singleton(x), &lifted).unwrap();
        prop_assert_eq!(verify_good_pair(&g, map[0], map[1], &q), Ok(()));
    }

    #[test]
    fn branching_avoiding_path_is_exact(seed in any::<u64>(), b in 1usize..7) {
        let g = digraph(seed, 7);
        let b = b % g.n();
        prop_assume!(b != 0 && g.reach(0) == g.vertices());
        let lambda2 = arc_connectivity_at_least(&g, 0, b, 2);
        match branching_avoiding_path(&g, 0, b).unwrap() {
            AvoidOutcome::Found { branching, path } => {
                prop_assert_eq!(verify_branching(&g, &branching), Ok(()));
                prop_assert!(path.first() == Some(&0) && path.last() == Some(&b));
                prop_assert!(path_arcs(&path).iter().all(|&e| g.has_arc(e.0, e.1) && !branching.contains_arc(e)));
            }
            AvoidOutcome::Cut(w) => {
                prop_assert!(!lambda2);
                prop_assert_eq!(w.crossing.len(), 1);
            }
            AvoidOutcome::Entangled => {
                prop_assert!(lambda2);
                prop_assert!(!brute_force_avoiding(&g, 0, b));
            }
        }
    }

    #[test]
    fn composition_engine_is_sound_and_converse_symmetric(seed in any::<u64>(), a in 0usize..8, b in 0usize..8) {
        let mut r = rng(seed);
        let c = random_composition(2 + (seed as usize % 3), 2, &mut r);
        let (u, v) = (a % c.n(), b % c.n());
        let verdict = decide_composition(&c, u, v).unwrap();
        if let Some(p) = verdict.pair() {
            prop_assert_eq!(verify_good_pair(c.flat(), u, v, p), Ok(()));
        }
        prop_assert_eq!(verdict.is_yes(), oracle_yes(c.flat(), u, v));
        prop_assert_eq!(verdict.is_yes(), decide_composition(&c.converse(), v, u).unwrap().is_yes());
    }

    #[test]
    fn quasi_transitive_engine_matches_oracle(seed in any::<u64>(), a in 0usize..7, b in 0usize..7) {
        let mut r = rng(seed);
        let n = 1 + (seed as usize % 7);
        let g = random_quasi_transitive(n, &mut r);
        let (u, v) = (a % n, b % n);
        let verdict = decide_quasi_transitive(&g, u, v).unwrap();
        if let Some(p) = verdict.pair() {
            prop_assert_eq!(verify_good_pair(&g, u, v, p), Ok(()));
        }
        prop_assert_eq!(verdict.is_yes(), oracle_yes(&g, u, v));
    }

    #[test]
    fn generators_are_deterministic(seed in any::<u64>(), which in 0usize..4) {
        let generator = match which {
            0 => Generator::KindA { alpha: 1 + seed as usize % 2, max_layer: 2, max_part: 2 },
            1 => Generator::KindB { beta: 1 + seed as usize % 3, max_layer: 2, max_part: 2 },
            2 => Generator::RandomComposition { quotient: 3, max_part: 3 },
            _ => Generator::QuasiTransitive { n: 6 },
        };
        let spec = InstanceSpec { generator, seed, roots: RootsPolicy::Sampled(5) };
        let (x, y) = (gen_family(&spec).unwrap(), gen_family(&spec).unwrap());
        prop_assert_eq!(&x.graph, &y.graph);
        prop_assert_eq!(x.roots, y.roots);
        prop_assert_eq!(&x.label, &y.label);
        prop_assert_eq!(x.root_pairs(&spec.roots, seed), y.root_pairs(&spec.roots, seed));
    }
}
