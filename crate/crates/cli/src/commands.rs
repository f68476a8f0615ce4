//! The subcommands, each turning a document and flags into a [`Report`].

use std::fmt::Write as _;

use goodpair::branching::{verify_good_pair, BranchingViolation, PairViolation};
use goodpair::composite::Table1Family;
use goodpair::crosscheck::{crosscheck, CheckItem, Report as CheckReport};
use goodpair::generate::{
    exhaustive_quasi_transitive, exhaustive_semicomplete, exhaustive_tournaments, gen_family, random_composition, rng, table1_instance, Generator,
    Instance, InstanceSpec, RootsPolicy,
};
use goodpair::oracle::{oracle_good_pair, OracleAnswer, OracleLimits};
use goodpair::verdict::{decide, EngineClass};
use goodpair::{Arc, Branching, BranchingPair, Digraph, Orientation, Vertex};

use crate::document::{parse, Document};
use crate::{CliError, Report};

/// Largest order accepted by the exhaustive generators behind `crosscheck`.
const MAX_EXHAUSTIVE_SEMICOMPLETE: usize = 5;
const MAX_EXHAUSTIVE_TOURNAMENT: usize = 6;
const MAX_EXHAUSTIVE_QT: usize = 4;

/// Roots from the flags, falling back to the document's `roots` line.
fn roots(doc: &Document, u: Option<&str>, v: Option<&str>) -> Result<(Vertex, Vertex), CliError> {
    let (du, dv) = match &doc.roots {
        Some((a, b)) => (Some(a.as_str()), Some(b.as_str())),
        None => (None, None),
    };
    let pick = |flag: Option<&str>, fallback: Option<&str>, which: &str| -> Result<Vertex, CliError> {
        let name = flag.or(fallback).ok_or_else(|| CliError::Usage(format!("no root {which}: pass --{which} or add a 'roots' line")))?;
        doc.vertex(name).ok_or_else(|| CliError::UnknownVertex(name.to_string()))
    };
    Ok((pick(u, du, "u")?, pick(v, dv, "v")?))
}

fn arc_line(out: &mut String, tag: &str, names: &[String], (a, b): Arc) {
    let _ = writeln!(out, "{tag} {} {}", names[a], names[b]);
}

fn pair_text(out: &mut String, names: &[String], pair: &BranchingPair) {
    for e in pair.out.arcs() {
        arc_line(out, "out", names, e);
    }
    for e in pair.inn.arcs() {
        arc_line(out, "in", names, e);
    }
}

fn dot(names: &[String], g: &Digraph, pair: Option<&BranchingPair>) -> String {
    let mut s = String::from("digraph goodpair {\n");
    for x in names {
        let _ = writeln!(s, "  \"{x}\";");
    }
    for (a, b) in g.arcs() {
        let style = match pair {
            Some(p) if p.out.contains_arc((a, b)) => " [color=blue]",
            Some(p) if p.inn.contains_arc((a, b)) => " [color=red]",
            Some(_) => " [color=gray]",
            None => "",
        };
        let _ = writeln!(s, "  \"{}\" -> \"{}\"{style};", names[a], names[b]);
    }
    s.push_str("}\n");
    s
}

/// Decide a document; exit code 0 on YES and 1 on NO. A YES pair is checked
/// by the verifier before it is printed.
pub fn cmd_decide(text: &str, u: Option<&str>, v: Option<&str>, class: EngineClass, as_dot: bool) -> Result<Report, CliError> {
    let doc = parse(text)?;
    let (g, comp) = doc.build()?;
    let (ru, rv) = roots(&doc, u, v)?;
    let verdict = decide(&g, comp.as_ref(), ru, rv, class)?;
    let names = doc.names();
    if let Some(p) = verdict.pair() {
        verify_good_pair(&g, ru, rv, p).map_err(|e| goodpair::Error::Internal(format!("engine pair rejected: {e}")))?;
    }
    if as_dot {
        return Ok(Report { code: if verdict.is_yes() { 0 } else { 1 }, text: dot(&names, &g, verdict.pair()) });
    }
    let mut out = String::new();
    let _ = writeln!(out, "{verdict}");
    let _ = writeln!(out, "roots {} {}", names[ru], names[rv]);
    match verdict.pair() {
        Some(p) => pair_text(&mut out, &names, p),
        None => {
            let _ = writeln!(out, "# witness indices follow the vertex order: {}", names.join(" "));
            for line in verdict.witness_details() {
                let _ = writeln!(out, "witness {line}");
            }
        }
    }
    Ok(Report { code: if verdict.is_yes() { 0 } else { 1 }, text: out })
}

/// The arcs and roots of a claimed pair: `out a b`, `in a b` and an optional
/// `roots u v` line; anything else is ignored so decide output can be piped
/// back in.
fn parse_pair(doc: &Document, text: &str) -> Result<(Vec<Arc>, Vec<Arc>, Option<(String, String)>), CliError> {
    let (mut out, mut inn, mut roots) = (Vec::new(), Vec::new(), None);
    for (i, line) in text.lines().enumerate() {
        let w: Vec<&str> = line.split('#').next().unwrap_or("").split_whitespace().collect();
        match w.as_slice() {
            [tag @ ("out" | "in"), a, b] => {
                let get = |x: &str| doc.vertex(x).ok_or_else(|| CliError::UnknownVertex(x.to_string()));
                let e = (get(a)?, get(b)?);
                if *tag == "out" { &mut out } else { &mut inn }.push(e);
            }
            ["roots", a, b] => roots = Some((a.to_string(), b.to_string())),
            [tag @ ("out" | "in" | "roots"), ..] => {
                return Err(CliError::Parse { line: i + 1, msg: format!("expected '{tag} <a> <b>'") });
            }
            _ => {}
        }
    }
    Ok((out, inn, roots))
}

fn describe_branching(names: &[String], e: &BranchingViolation) -> String {
    match e {
        BranchingViolation::WrongOrientation => "wrong orientation".into(),
        BranchingViolation::RootHasParent => "the root has a parent arc".into(),
        BranchingViolation::MissingArc((a, b)) => match (names.get(*a), names.get(*b)) {
            (Some(x), Some(y)) => format!("arc {x}->{y} is not in the digraph"),
            _ => "arc outside the digraph".into(),
        },
        BranchingViolation::WrongDegree(x) => format!("vertex {} has two parent arcs", names[*x]),
        BranchingViolation::Cycle(x) => format!("cycle through vertex {}", names[*x]),
        BranchingViolation::NotSpanning(x) => format!("not spanning: vertex {} is missing", names[*x]),
    }
}

fn describe_pair(names: &[String], e: &PairViolation) -> String {
    match e {
        PairViolation::RootMismatch => "roots do not match the query".into(),
        PairViolation::BadOut(b) => format!("out-branching: {}", describe_branching(names, b)),
        PairViolation::BadIn(b) => format!("in-branching: {}", describe_branching(names, b)),
        PairViolation::SharedArc((a, b)) => format!("arc {}->{} is used by both branchings", names[*a], names[*b]),
    }
}

/// Check a claimed pair; exit code 0 iff it is a good pair.
pub fn cmd_verify(text: &str, pair_text: &str, u: Option<&str>, v: Option<&str>) -> Result<Report, CliError> {
    let mut doc = parse(text)?;
    let (g, _) = doc.build()?;
    let names = doc.names();
    let (out, inn, pair_roots) = parse_pair(&doc, pair_text)?;
    if doc.roots.is_none() {
        doc.roots = pair_roots;
    }
    let (ru, rv) = roots(&doc, u, v)?;
    let fail = |msg: String| Ok(Report { code: 1, text: format!("INVALID {msg}\n") });
    for &(a, b) in out.iter().chain(&inn) {
        if !g.has_arc(a, b) {
            return fail(format!("arc {}->{} is not in the digraph", names[a], names[b]));
        }
    }
    let ob = match Branching::from_arcs(g.n(), Orientation::Out, ru, &out) {
        Ok(b) => b,
        Err(e) => return fail(format!("out-branching: {}", describe_branching(&names, &e))),
    };
    let ib = match Branching::from_arcs(g.n(), Orientation::In, rv, &inn) {
        Ok(b) => b,
        Err(e) => return fail(format!("in-branching: {}", describe_branching(&names, &e))),
    };
    match verify_good_pair(&g, ru, rv, &BranchingPair::new(ob, ib)) {
        Ok(()) => Ok(Report { code: 0, text: "VALID\n".into() }),
        Err(e) => fail(describe_pair(&names, &e)),
    }
}

fn limits(max_vertices: usize) -> OracleLimits {
    OracleLimits { max_vertices, ..OracleLimits::default() }
}

/// Brute-force answer for a document; refuses digraphs above the bound.
pub fn cmd_oracle(text: &str, u: Option<&str>, v: Option<&str>, max_vertices: usize) -> Result<Report, CliError> {
    let doc = parse(text)?;
    let (g, _) = doc.build()?;
    if g.n() > max_vertices {
        return Err(CliError::Refused(format!("{} vertices exceeds the oracle bound {max_vertices}", g.n())));
    }
    let (ru, rv) = roots(&doc, u, v)?;
    let names = doc.names();
    let mut out = String::new();
    match oracle_good_pair(&g, ru, rv, limits(max_vertices))? {
        OracleAnswer::Yes(p) => {
            let _ = writeln!(out, "YES\nroots {} {}", names[ru], names[rv]);
            pair_text(&mut out, &names, &p);
            Ok(Report { code: 0, text: out })
        }
        OracleAnswer::No => {
            let _ = writeln!(out, "NO\nroots {} {}", names[ru], names[rv]);
            Ok(Report { code: 1, text: out })
        }
        OracleAnswer::ResourceExceeded => Err(CliError::Refused("oracle search budget exhausted".into())),
    }
}

/// Parameters of `gen`.
#[derive(Clone, Debug, Default)]
pub struct GenParams {
    pub family: String,
    pub n: Option<usize>,
    pub t: Option<usize>,
    pub h: Option<usize>,
    pub order: usize,
    pub max_layer: usize,
    pub max_part: usize,
    pub quotient: usize,
    pub extra: usize,
    pub seed: u64,
}

fn table1_with_order(f: Table1Family, n: usize, seed: u64) -> Result<Instance, CliError> {
    for t in 1..=n.max(1) {
        for h in 0..=3 {
            if let Ok(inst) = table1_instance(f, t, h, seed) {
                if inst.graph.n() == n {
                    return Ok(inst);
                }
            }
        }
    }
    Err(CliError::Usage(format!("family ({}) has no generated member on {n} vertices", f.letter())))
}

fn instance_document(inst: &Instance) -> String {
    let doc = match &inst.composition {
        Some(c) => Document::from_composition(c, Some(inst.roots)),
        None => Document::from_digraph(&inst.graph, Some(inst.roots)),
    };
    format!("# {}\n{}", inst.label, doc.emit())
}

/// Generate one instance document.
pub fn cmd_gen(p: &GenParams) -> Result<Report, CliError> {
    let spec = |generator| InstanceSpec { generator, seed: p.seed, roots: RootsPolicy::Designated };
    let inst = match p.family.as_str() {
        f if f.len() == 7 && f.starts_with("table1") => {
            let family = f.chars().last().and_then(Table1Family::from_letter).ok_or_else(|| CliError::Usage(format!("unknown family '{f}'")))?;
            match (p.n, p.t) {
                (Some(n), None) => table1_with_order(family, n, p.seed)?,
                (_, t) => table1_instance(family, t.unwrap_or(1), p.h.unwrap_or(0), p.seed)?,
            }
        }
        "kind-a" => gen_family(&spec(Generator::KindA { alpha: p.order, max_layer: p.max_layer, max_part: p.max_part }))?,
        "kind-b" => gen_family(&spec(Generator::KindB { beta: p.order, max_layer: p.max_layer, max_part: p.max_part }))?,
        "separation" => gen_family(&spec(Generator::Separation { extra: p.extra }))?,
        "random-composition" => gen_family(&spec(Generator::RandomComposition { quotient: p.quotient, max_part: p.max_part }))?,
        "qt" => gen_family(&spec(Generator::QuasiTransitive { n: p.n.unwrap_or(5) }))?,
        other => {
            return Err(CliError::Usage(format!(
                "unknown family '{other}' (expected table1a..table1g, kind-a, kind-b, separation, random-composition or qt)"
            )))
        }
    };
    Ok(Report { code: 0, text: instance_document(&inst) })
}

/// Instance sources for `crosscheck`.
#[derive(Clone, Debug, Default)]
pub struct CrosscheckParams {
    pub exhaustive_semicomplete: Option<usize>,
    pub exhaustive_tournaments: Option<usize>,
    pub exhaustive_qt: Option<usize>,
    pub random_compositions: Option<usize>,
    pub quotient: usize,
    pub max_part: usize,
    pub seed: u64,
    pub max_vertices: usize,
    pub timings: bool,
}

fn all_pairs(n: usize) -> Vec<(Vertex, Vertex)> {
    (0..n).flat_map(|u| (0..n).map(move |v| (u, v))).collect()
}

fn flat_items(prefix: &str, graphs: Vec<Digraph>, class: EngineClass) -> Vec<CheckItem> {
    graphs
        .into_iter()
        .enumerate()
        .map(|(i, g)| CheckItem { label: format!("{prefix}{i}"), seed: 0, roots: all_pairs(g.n()), graph: g, composition: None, class })
        .collect()
}

fn bounded(what: &str, n: usize, max: usize) -> Result<usize, CliError> {
    if n > max {
        return Err(CliError::Refused(format!("{what} {n} exceeds the supported bound {max}")));
    }
    Ok(n)
}

/// Engine against oracle over the selected sources; exit code 1 on any
/// mismatch. Output is byte-identical across runs unless timings are on.
pub fn cmd_crosscheck(p: &CrosscheckParams) -> Result<Report, CliError> {
    let mut items = Vec::new();
    if let Some(n) = p.exhaustive_semicomplete {
        let n = bounded("--exhaustive-semicomplete", n, MAX_EXHAUSTIVE_SEMICOMPLETE)?;
        items.extend(flat_items("sc", (1..=n).flat_map(exhaustive_semicomplete).collect(), EngineClass::Semicomplete));
    }
    if let Some(n) = p.exhaustive_tournaments {
        let n = bounded("--exhaustive-tournaments", n, MAX_EXHAUSTIVE_TOURNAMENT)?;
        items.extend(flat_items("t", (1..=n).flat_map(exhaustive_tournaments).collect(), EngineClass::Semicomplete));
    }
    if let Some(n) = p.exhaustive_qt {
        let n = bounded("--exhaustive-qt", n, MAX_EXHAUSTIVE_QT)?;
        items.extend(flat_items("qt", (1..=n).flat_map(exhaustive_quasi_transitive).collect(), EngineClass::QuasiTransitive));
    }
    if let Some(k) = p.random_compositions {
        if p.quotient < 2 || p.max_part == 0 {
            return Err(CliError::Usage("random compositions need --quotient >= 2 and --max-part >= 1".into()));
        }
        for i in 0..k as u64 {
            let seed = p.seed.wrapping_add(i);
            let c = random_composition(p.quotient, p.max_part, &mut rng(seed));
            items.push(CheckItem {
                label: format!("comp{i}"),
                seed,
                roots: all_pairs(c.n()),
                graph: c.flat().clone(),
                composition: Some(c),
                class: EngineClass::Composition,
            });
        }
    }
    if items.is_empty() {
        return Err(CliError::Usage("no instances selected".into()));
    }
    if let Some(big) = items.iter().find(|it| it.graph.n() > p.max_vertices) {
        return Err(CliError::Refused(format!("instance {} has {} vertices, above the oracle bound {}", big.label, big.graph.n(), p.max_vertices)));
    }
    let rep: CheckReport = crosscheck(&items, limits(p.max_vertices));
    let mut out = String::new();
    for r in &rep.records {
        let _ = writeln!(out, "{}", r.line(p.timings));
    }
    let _ = writeln!(out, "{}", rep.summary());
    Ok(Report { code: if rep.mismatches() == 0 { 0 } else { 1 }, text: out })
}
