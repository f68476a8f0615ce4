//! Acceptance run: one PASS/FAIL line per criterion with its tolerance,
//! observed value and elapsed time. Exits nonzero if any criterion fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::Rng;
use rayon::prelude::*;

use goodpair::branching::{branching_and_path, verify_good_pair, verify_pair_shape, Orientation};
use goodpair::composite::{decide_composition, match_family, validate_comp_verdict, CompVerdict, Table1Family};
use goodpair::composition::Composition;
use goodpair::flow::is_k_arc_strong;
use goodpair::generate::{
    exhaustive_quasi_transitive, exhaustive_semicomplete, exhaustive_tournaments, kind_a_semicomplete, kind_b_semicomplete,
    random_composition, random_digraph, random_quasi_transitive, random_strong_semicomplete, random_two_arc_strong_semicomplete, rng,
    separation_member, table1_instance,
};
use goodpair::oracle::{oracle_good_pair, oracle_pair_sharing_only, OracleAnswer, OracleLimits};
use goodpair::semicomplete::{
    condition_ii, condition_iii, condition_iv, decide_semicomplete, match_figure1, validate_sc_obstruction, almost_good_pair, Fig1Id,
};
use goodpair::transitive::decide_quasi_transitive;
use goodpair::verdict::{decide, EngineClass};
use goodpair::{Digraph, Vertex};

struct Outcome {
    pass: bool,
    detail: String,
}

fn all_pairs(n: usize) -> Vec<(Vertex, Vertex)> {
    (0..n).flat_map(|u| (0..n).map(move |v| (u, v))).collect()
}

fn oracle_yes(g: &Digraph, u: Vertex, v: Vertex) -> Option<bool> {
    let limits = OracleLimits { max_vertices: 10, ..OracleLimits::default() };
    match oracle_good_pair(g, u, v, limits) {
        Ok(OracleAnswer::Yes(p)) => {
            assert_eq!(verify_good_pair(g, u, v, &p), Ok(()), "oracle produced an invalid pair");
            Some(true)
        }
        Ok(OracleAnswer::No) => Some(false),
        _ => None,
    }
}

/// Exhaustive small semicomplete digraphs against the oracle.
fn criterion_1() -> Outcome {
    let mut graphs: Vec<Digraph> = (1..=4).flat_map(exhaustive_semicomplete).collect();
    graphs.extend(exhaustive_tournaments(5));
    let jobs: Vec<(&Digraph, Vertex, Vertex)> = graphs.iter().flat_map(|g| all_pairs(g.n()).into_iter().map(move |(u, v)| (g, u, v))).collect();
    let bad: usize = jobs
        .par_iter()
        .filter(|&&(g, u, v)| {
            let Ok(verdict) = decide_semicomplete(g, u, v) else { return true };
            let witness_ok = validate_sc_obstruction(g, u, v, &verdict).is_ok();
            oracle_yes(g, u, v) != Some(verdict.is_yes()) || !witness_ok
        })
        .count();
    Outcome { pass: bad == 0, detail: format!("digraphs={} root pairs={} mismatches={bad} (expected 0)", graphs.len(), jobs.len()) }
}

/// NO instances that no general condition explains are exactly the small
/// exceptional digraphs.
fn criterion_2() -> Outcome {
    let graphs: Vec<Digraph> = (1..=4).flat_map(exhaustive_semicomplete).collect();
    let mut letters = BTreeSet::new();
    let mut unexplained = 0;
    let mut residual = 0;
    for g in &graphs {
        for (u, v) in all_pairs(g.n()) {
            if oracle_yes(g, u, v) != Some(false) {
                continue;
            }
            if condition_ii(g, u, v) || condition_iii(g, u, v).is_some() || condition_iv(g, u, v).is_some() {
                continue;
            }
            residual += 1;
            match match_figure1(g, u, v) {
                Some(f) => {
                    letters.insert(f.letter());
                }
                None => unexplained += 1,
            }
        }
    }
    let catalog_ok = Fig1Id::ALL.iter().all(|f| {
        let g = f.digraph();
        let (u, v) = (0, g.n() - 1);
        oracle_yes(&g, u, v) == Some(false) && !condition_ii(&g, u, v) && condition_iii(&g, u, v).is_none() && condition_iv(&g, u, v).is_none()
    });
    let expected: BTreeSet<char> = Fig1Id::ALL.iter().map(|f| f.letter()).collect();
    let found: String = letters.iter().collect();
    Outcome {
        pass: unexplained == 0 && letters == expected && catalog_ok,
        detail: format!("residual NO triples={residual} unexplained={unexplained} exceptions found={found} (expected abcdef) catalog NO={catalog_ok}"),
    }
}

/// Every generated member of the exceptional families is NO for the
/// engine and the oracle.
fn criterion_3() -> Outcome {
    let mut members = Vec::new();
    for f in Table1Family::ALL {
        for t in 1..=3 {
            for h in 0..=3 {
                for seed in 0..4 {
                    if let Ok(inst) = table1_instance(f, t, h, seed) {
                        if inst.graph.n() <= 8 {
                            members.push(inst);
                        }
                    }
                }
            }
        }
    }
    let bad: Vec<String> = members
        .par_iter()
        .filter_map(|inst| {
            let c = inst.composition.as_ref().unwrap();
            let (u, v) = inst.roots;
            let engine = decide(&inst.graph, Some(c), u, v, EngineClass::Auto).map(|vd| vd.is_yes());
            let oracle = oracle_yes(&inst.graph, u, v);
            (engine != Ok(false) || oracle != Some(false)).then(|| inst.label.clone())
        })
        .collect();
    Outcome { pass: bad.is_empty(), detail: format!("members={} failures={} {:?}", members.len(), bad.len(), bad.iter().take(5).collect::<Vec<_>>()) }
}

fn composition_sample(seed: u64) -> Composition {
    let mut r = rng(seed);
    let s = 2 + (seed % 3) as usize;
    random_composition(s, 2, &mut r)
}

/// Random compositions: engine equals oracle on every root pair.
fn criterion_4() -> Outcome {
    let comps: Vec<Composition> = (0..1000).map(composition_sample).collect();
    let jobs: Vec<(usize, Vertex, Vertex)> = comps.iter().enumerate().flat_map(|(i, c)| all_pairs(c.n()).into_iter().map(move |(u, v)| (i, u, v))).collect();
    let bad: Vec<String> = jobs
        .par_iter()
        .filter_map(|&(i, u, v)| {
            let c = &comps[i];
            let verdict = match decide_composition(c, u, v) {
                Ok(vd) => vd,
                Err(e) => return Some(format!("seed {i} ({u},{v}): {e}")),
            };
            if let Err(e) = validate_comp_verdict(c, u, v, &verdict) {
                return Some(format!("seed {i} ({u},{v}): witness {e}"));
            }
            (oracle_yes(c.flat(), u, v) != Some(verdict.is_yes())).then(|| format!("seed {i} ({u},{v}): engine {}", verdict.is_yes()))
        })
        .collect();
    Outcome {
        pass: bad.is_empty(),
        detail: format!("compositions={} root pairs={} mismatches={} (expected 0) {:?}", comps.len(), jobs.len(), bad.len(), bad.iter().take(5).collect::<Vec<_>>()),
    }
}

/// 2-arc-strong inputs always have a good pair.
fn criterion_5() -> Outcome {
    let semis: Vec<Digraph> = (0..200u64)
        .map(|seed| {
            let mut r = rng(10_000 + seed);
            let n = r.gen_range(3..=7);
            random_two_arc_strong_semicomplete(n, &mut r)
        })
        .collect();
    let sc_bad: usize = semis
        .par_iter()
        .map(|g| all_pairs(g.n()).into_iter().filter(|&(u, v)| !decide_semicomplete(g, u, v).is_ok_and(|vd| vd.is_yes())).count())
        .sum();
    let mut comps = Vec::new();
    let mut seed = 20_000u64;
    while comps.len() < 200 {
        let c = composition_sample(seed);
        seed += 1;
        if is_k_arc_strong(c.flat(), 2).is_ok() {
            comps.push(c);
        }
    }
    let comp_pairs: usize = comps.iter().map(|c| c.n() * c.n()).sum();
    let comp_bad: usize = comps
        .par_iter()
        .map(|c| {
            all_pairs(c.n())
                .into_iter()
                .filter(|&(u, v)| match_family(c.flat(), u, v, Table1Family::A).is_none())
                .filter(|&(u, v)| !decide_composition(c, u, v).is_ok_and(|vd| vd.is_yes()))
                .count()
        })
        .sum();
    Outcome {
        pass: sc_bad == 0 && comp_bad == 0,
        detail: format!("semicomplete NO={sc_bad} compositions NO={comp_bad} over {comp_pairs} pairs (expected 0, 0)"),
    }
}

/// Large parts over a strong quotient give arc-strong compositions, and
/// shrinking an independent part keeps it so.
fn criterion_6() -> Outcome {
    let mut failures = 0;
    let mut checks = 0;
    for seed in 0..200u64 {
        let k = 1 + (seed % 2) as usize;
        let mut r = rng(30_000 + seed);
        let s = r.gen_range(2..=4);
        let q = random_strong_semicomplete(s, 0.3, &mut r);
        let parts: Vec<Digraph> = (0..s)
            .map(|i| {
                let size = r.gen_range(k..=k + 1);
                if i == 0 {
                    Digraph::new(k + 1).unwrap()
                } else {
                    random_digraph(size, 0.3, &mut r)
                }
            })
            .collect();
        let c = Composition::new(q, parts).unwrap();
        checks += 1;
        if is_k_arc_strong(c.flat(), k).is_err() {
            failures += 1;
        }
        for (i, part) in c.parts().iter().enumerate() {
            if part.len() >= k + 1 && c.flat().arcs_within(*part).is_empty() {
                let x = part.first().unwrap();
                let (h, _) = c.flat().induced(c.flat().vertices().without(x));
                checks += 1;
                if is_k_arc_strong(&h, k).is_err() {
                    failures += 1;
                }
                let _ = i;
            }
        }
    }
    Outcome { pass: failures == 0, detail: format!("checks={checks} failures={failures} (expected 0)") }
}

/// Shape of the almost good pairs on layered digraphs.
fn criterion_7() -> Outcome {
    let mut a_bad = 0;
    let mut a_skipped = 0;
    let mut oracle_bad = 0;
    let mut oracle_checked = 0;
    for seed in 0..100u64 {
        let mut r = rng(40_000 + seed);
        let alpha = 1 + (seed % 2) as usize;
        let (s, a, b, w) = kind_a_semicomplete(alpha, 2, &mut r).unwrap();
        if matches!(match_figure1(&s, a, b), Some(Fig1Id::C | Fig1Id::D | Fig1Id::E | Fig1Id::F)) {
            a_skipped += 1;
            continue;
        }
        let e = w.backward[(seed as usize) % w.backward.len()];
        match almost_good_pair(&s, a, b, &w, Some(e)) {
            Ok(p) if verify_pair_shape(&s, a, b, &p, s.vertices()).is_ok() && p.shared == vec![e] => {}
            _ => a_bad += 1,
        }
        if s.n() <= 8 {
            oracle_checked += 1;
            let allowed: Vec<_> = s.arcs().into_iter().filter(|x| !w.backward.contains(x)).collect();
            let limits = OracleLimits::default();
            if oracle_pair_sharing_only(&s, a, b, &allowed, limits) != Ok(OracleAnswer::No) {
                oracle_bad += 1;
            }
        }
    }
    let mut b_bad = 0;
    for seed in 0..100u64 {
        let mut r = rng(50_000 + seed);
        let beta = 1 + (seed % 3) as usize;
        let (s, a, b, w) = kind_b_semicomplete(beta, 2, &mut r).unwrap();
        let mut want = w.backward.clone();
        want.sort();
        match almost_good_pair(&s, a, b, &w, None) {
            Ok(p) if verify_pair_shape(&s, a, b, &p, s.vertices()).is_ok() && {
                let mut got = p.shared.clone();
                got.sort();
                got == want
            } => {}
            _ => b_bad += 1,
        }
    }
    Outcome {
        pass: a_bad == 0 && b_bad == 0 && oracle_bad == 0,
        detail: format!(
            "kind A failures={a_bad} (skipped exceptions {a_skipped}) kind B failures={b_bad} oracle pairs avoiding backward arcs={oracle_bad} of {oracle_checked} (expected 0, 0, 0)"
        ),
    }
}

/// The separation family is NO although every branching-plus-path
/// condition holds.
fn criterion_8() -> Outcome {
    let results: Vec<(bool, bool)> = (0..20u64)
        .into_par_iter()
        .map(|seed| {
            let inst = separation_member((seed % 2) as usize, 60_000 + seed).unwrap();
            let c = inst.composition.as_ref().unwrap();
            let (u, v) = inst.roots;
            let g = &inst.graph;
            let no = matches!(decide_composition(c, u, v), Ok(CompVerdict::TypeACondition { .. }));
            let n = g.n();
            let paths = (0..n).all(|w| branching_and_path(g, u, Orientation::Out, w, v).is_some())
                && (0..n).all(|z| branching_and_path(g, v, Orientation::In, u, z).is_some());
            (no, paths)
        })
        .collect();
    let no = results.iter().filter(|r| r.0).count();
    let paths = results.iter().filter(|r| r.1).count();
    Outcome { pass: no == 20 && paths == 20, detail: format!("members=20 NO={no} path conditions hold={paths} (expected 20, 20)") }
}

/// Quasi-transitive dispatcher against the oracle.
fn criterion_9() -> Outcome {
    let mut graphs: Vec<Digraph> = (1..=4).flat_map(exhaustive_quasi_transitive).collect();
    let exhaustive = graphs.len();
    for seed in 0..500u64 {
        let mut r = rng(70_000 + seed);
        let n = r.gen_range(2..=6);
        graphs.push(random_quasi_transitive(n, &mut r));
    }
    let jobs: Vec<(&Digraph, Vertex, Vertex)> = graphs.iter().flat_map(|g| all_pairs(g.n()).into_iter().map(move |(u, v)| (g, u, v))).collect();
    let bad: Vec<String> = jobs
        .par_iter()
        .filter_map(|&(g, u, v)| {
            let engine = match decide_quasi_transitive(g, u, v) {
                Ok(vd) => vd,
                Err(e) => return Some(format!("{:?} ({u},{v}): {e}", g.arcs())),
            };
            if let Some(p) = engine.pair() {
                if verify_good_pair(g, u, v, p).is_err() {
                    return Some(format!("{:?} ({u},{v}): bad pair", g.arcs()));
                }
            }
            (oracle_yes(g, u, v) != Some(engine.is_yes())).then(|| format!("{:?} ({u},{v}): engine {}", g.arcs(), engine.is_yes()))
        })
        .collect();
    Outcome {
        pass: bad.is_empty(),
        detail: format!("exhaustive={exhaustive} sampled=500 root pairs={} mismatches={} (expected 0) {:?}", jobs.len(), bad.len(), bad.iter().take(3).collect::<Vec<_>>()),
    }
}

fn main() -> ExitCode {
    let criteria: [(&str, Duration, fn() -> Outcome); 9] = [
        ("1 exhaustive small semicomplete agreement", Duration::from_secs(60), criterion_1),
        ("2 exceptional small digraph catalog", Duration::from_secs(60), criterion_2),
        ("3 exceptional composition families", Duration::from_secs(120), criterion_3),
        ("4 random composition crosscheck", Duration::from_secs(600), criterion_4),
        ("5 2-arc-strong inputs are YES", Duration::from_secs(600), criterion_5),
        ("6 arc-strength of compositions", Duration::from_secs(600), criterion_6),
        ("7 almost good pair shape", Duration::from_secs(600), criterion_7),
        ("8 separation family", Duration::from_secs(600), criterion_8),
        ("9 quasi-transitive agreement", Duration::from_secs(300), criterion_9),
    ];
    let only: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (name, limit, run) in criteria {
        if !only.is_empty() && !only.iter().any(|o| name.starts_with(o.as_str())) {
            continue;
        }
        let t = Instant::now();
        let out = run();
        let elapsed = t.elapsed();
        let pass = out.pass && elapsed <= limit;
        if !pass {
            failed += 1;
        }
        println!(
            "{} criterion {name}: {} time={:.1}s limit={}s",
            if pass { "PASS" } else { "FAIL" },
            out.detail,
            elapsed.as_secs_f64(),
            limit.as_secs()
        );
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
