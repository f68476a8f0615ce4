//! Text documents for digraphs and compositions.
//!
//! ```text
//! # flat digraph
//! vertices a b c
//! arc a b
//! arc b c
//! roots a c
//! ```
//!
//! A composition lists quotient arcs between part names, then one block per
//! part with its vertices and inner arcs:
//!
//! ```text
//! quotient {
//!   arc X Y
//!   arc Y X
//! }
//! part X {
//!   vertices x1 x2
//!   arc x1 x2
//! }
//! part Y {
//!   vertices y
//! }
//! roots x1 y
//! ```
//!
//! `#` starts a comment, `;` separates statements like a newline.

use std::collections::HashMap;
use std::fmt::Write as _;

use goodpair::{Composition, Digraph, Vertex};

use crate::CliError;

/// One part of a composition document.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartBlock {
    pub name: String,
    pub vertices: Vec<String>,
    /// Inner arcs as indices into `vertices`.
    pub arcs: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Body {
    Flat { vertices: Vec<String>, arcs: Vec<(usize, usize)> },
    /// Quotient arcs are indices into `parts`.
    Composition { quotient: Vec<(usize, usize)>, parts: Vec<PartBlock> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Document {
    pub body: Body,
    pub roots: Option<(String, String)>,
}

struct Stmt {
    line: usize,
    words: Vec<String>,
}

fn statements(text: &str) -> Vec<Stmt> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let code = raw.split('#').next().unwrap_or("");
        let spaced = code.replace('{', " { ").replace('}', " } ");
        for piece in spaced.split(';') {
            // a brace ends a statement, so `part X { vertices a }` is three
            let mut cur: Vec<String> = Vec::new();
            for w in piece.split_whitespace() {
                cur.push(w.to_string());
                if w == "{" || w == "}" {
                    out.push(Stmt { line: i + 1, words: std::mem::take(&mut cur) });
                }
            }
            if !cur.is_empty() {
                out.push(Stmt { line: i + 1, words: cur });
            }
        }
    }
    // split a trailing `}` off its statement: `arc a b }`
    let mut split = Vec::new();
    for s in out {
        let n = s.words.len();
        if n > 1 && s.words[n - 1] == "}" {
            split.push(Stmt { line: s.line, words: s.words[..n - 1].to_vec() });
            split.push(Stmt { line: s.line, words: vec!["}".into()] });
        } else {
            split.push(s);
        }
    }
    split
}

fn err(line: usize, msg: impl Into<String>) -> CliError {
    CliError::Parse { line, msg: msg.into() }
}

fn index(names: &[String], line: usize) -> Result<HashMap<&str, usize>, CliError> {
    let mut map = HashMap::new();
    for (i, n) in names.iter().enumerate() {
        if map.insert(n.as_str(), i).is_some() {
            return Err(err(line, format!("duplicate name '{n}'")));
        }
    }
    Ok(map)
}

fn arc_of(words: &[String], map: &HashMap<&str, usize>, line: usize) -> Result<(usize, usize), CliError> {
    if words.len() != 3 {
        return Err(err(line, "expected 'arc <tail> <head>'"));
    }
    let get = |w: &String| map.get(w.as_str()).copied().ok_or_else(|| err(line, format!("unknown vertex '{w}'")));
    let (a, b) = (get(&words[1])?, get(&words[2])?);
    if a == b {
        return Err(err(line, format!("loop at '{}'", words[1])));
    }
    Ok((a, b))
}

fn block_open(s: &Stmt, len: usize) -> Result<(), CliError> {
    if s.words.len() != len || s.words[len - 1] != "{" {
        return Err(err(s.line, format!("expected '{} {{'", s.words[..len - 1].join(" "))));
    }
    Ok(())
}

fn push_unique(arcs: &mut Vec<(usize, usize)>, e: (usize, usize)) {
    if !arcs.contains(&e) {
        arcs.push(e);
    }
}

pub fn parse(text: &str) -> Result<Document, CliError> {
    let stmts = statements(text);
    let mut flat_vertices: Option<(usize, Vec<String>)> = None;
    let mut flat_arcs: Vec<(usize, &[String])> = Vec::new();
    let mut quotient_arcs: Option<Vec<(usize, Vec<String>)>> = None;
    let mut parts: Vec<(usize, String, Vec<String>, Vec<(usize, Vec<String>)>)> = Vec::new();
    let mut roots = None;
    let mut i = 0;
    while i < stmts.len() {
        let s = &stmts[i];
        match s.words[0].as_str() {
            "vertices" => {
                if flat_vertices.is_some() {
                    return Err(err(s.line, "second 'vertices' header"));
                }
                flat_vertices = Some((s.line, s.words[1..].to_vec()));
            }
            "arc" => flat_arcs.push((s.line, &s.words)),
            "roots" => {
                if s.words.len() != 3 {
                    return Err(err(s.line, "expected 'roots <u> <v>'"));
                }
                roots = Some((s.words[1].clone(), s.words[2].clone()));
            }
            "quotient" => {
                block_open(s, 2)?;
                if quotient_arcs.is_some() {
                    return Err(err(s.line, "second 'quotient' block"));
                }
                let mut arcs = Vec::new();
                i += 1;
                loop {
                    let t = stmts.get(i).ok_or_else(|| err(s.line, "unclosed 'quotient' block"))?;
                    match t.words[0].as_str() {
                        "}" => break,
                        "arc" => arcs.push((t.line, t.words.clone())),
                        other => return Err(err(t.line, format!("unexpected '{other}' in quotient block"))),
                    }
                    i += 1;
                }
                quotient_arcs = Some(arcs);
            }
            "part" => {
                block_open(s, 3)?;
                let name = s.words[1].clone();
                let mut vertices = Vec::new();
                let mut arcs = Vec::new();
                i += 1;
                loop {
                    let t = stmts.get(i).ok_or_else(|| err(s.line, format!("unclosed block of part '{name}'")))?;
                    match t.words[0].as_str() {
                        "}" => break,
                        "vertices" => vertices.extend(t.words[1..].iter().cloned()),
                        "arc" => arcs.push((t.line, t.words.clone())),
                        other => return Err(err(t.line, format!("unexpected '{other}' in part block"))),
                    }
                    i += 1;
                }
                parts.push((s.line, name, vertices, arcs));
            }
            other => return Err(err(s.line, format!("unknown statement '{other}'"))),
        }
        i += 1;
    }
    let body = match (flat_vertices, quotient_arcs) {
        (Some(_), Some(_)) => return Err(err(1, "a document is either flat ('vertices') or a composition ('quotient'), not both")),
        (None, None) if parts.is_empty() => return Err(err(1, "missing 'vertices' header or 'quotient' block")),
        (Some((line, vertices)), None) => {
            if !parts.is_empty() {
                return Err(err(parts[0].0, "part blocks need a 'quotient' block"));
            }
            if vertices.is_empty() {
                return Err(err(line, "no vertices"));
            }
            let map = index(&vertices, line)?;
            let mut arcs = Vec::new();
            for (l, w) in flat_arcs {
                push_unique(&mut arcs, arc_of(w, &map, l)?);
            }
            Body::Flat { vertices, arcs }
        }
        (None, q) => {
            if let Some((l, _)) = flat_arcs.first() {
                return Err(err(*l, "arc outside a block in a composition document"));
            }
            if parts.is_empty() {
                return Err(err(1, "composition without parts"));
            }
            let names: Vec<String> = parts.iter().map(|p| p.1.clone()).collect();
            let pmap = index(&names, parts[0].0)?;
            let mut quotient = Vec::new();
            for (l, w) in q.unwrap_or_default() {
                push_unique(&mut quotient, arc_of(&w, &pmap, l)?);
            }
            let all: Vec<String> = parts.iter().flat_map(|p| p.2.iter().cloned()).collect();
            index(&all, parts[0].0)?;
            let mut blocks = Vec::new();
            for (line, name, vertices, arcs) in parts {
                if vertices.is_empty() {
                    return Err(err(line, format!("part '{name}' has no vertices")));
                }
                let map = index(&vertices, line)?;
                let mut inner = Vec::new();
                for (l, w) in arcs {
                    push_unique(&mut inner, arc_of(&w, &map, l)?);
                }
                blocks.push(PartBlock { name, vertices, arcs: inner });
            }
            Body::Composition { quotient, parts: blocks }
        }
    };
    let doc = Document { body, roots };
    if let Some((u, v)) = &doc.roots {
        for r in [u, v] {
            if doc.vertex(r).is_none() {
                return Err(CliError::UnknownVertex(r.clone()));
            }
        }
    }
    Ok(doc)
}

impl Document {
    /// Vertex names in flat order (parts concatenated for compositions).
    pub fn names(&self) -> Vec<String> {
        match &self.body {
            Body::Flat { vertices, .. } => vertices.clone(),
            Body::Composition { parts, .. } => parts.iter().flat_map(|p| p.vertices.iter().cloned()).collect(),
        }
    }

    pub fn vertex(&self, name: &str) -> Option<Vertex> {
        self.names().iter().position(|n| n == name)
    }

    /// The flat digraph and, for composition documents, the composition.
    pub fn build(&self) -> Result<(Digraph, Option<Composition>), CliError> {
        match &self.body {
            Body::Flat { vertices, arcs } => Ok((Digraph::from_arcs(vertices.len(), arcs)?, None)),
            Body::Composition { quotient, parts } => {
                let q = Digraph::from_arcs(parts.len(), quotient)?;
                let hs = parts.iter().map(|p| Digraph::from_arcs(p.vertices.len(), &p.arcs)).collect::<Result<Vec<_>, _>>()?;
                let c = Composition::new(q, hs)?;
                let mut start = 0;
                for (i, p) in parts.iter().enumerate() {
                    let want: Vec<Vertex> = (start..start + p.vertices.len()).collect();
                    if c.parts()[i].to_vec() != want {
                        return Err(CliError::Engine(goodpair::Error::Internal("composition does not keep part order".into())));
                    }
                    start += p.vertices.len();
                }
                Ok((c.flat().clone(), Some(c)))
            }
        }
    }

    /// A flat document for `g` with names `v0, v1, ..`.
    pub fn from_digraph(g: &Digraph, roots: Option<(Vertex, Vertex)>) -> Document {
        let vertices: Vec<String> = (0..g.n()).map(|i| format!("v{i}")).collect();
        let roots = roots.map(|(u, v)| (vertices[u].clone(), vertices[v].clone()));
        Document { body: Body::Flat { vertices, arcs: g.arcs() }, roots }
    }

    /// A composition document with parts `H0, H1, ..` and vertices named by
    /// their flat index.
    pub fn from_composition(c: &Composition, roots: Option<(Vertex, Vertex)>) -> Document {
        let parts = c
            .parts()
            .iter()
            .enumerate()
            .map(|(i, part)| {
                let members = part.to_vec();
                let (h, _) = c.flat().induced(*part);
                PartBlock { name: format!("H{i}"), vertices: members.iter().map(|x| format!("v{x}")).collect(), arcs: h.arcs() }
            })
            .collect();
        let name = |x: Vertex| format!("v{x}");
        Document { body: Body::Composition { quotient: c.quotient().arcs(), parts }, roots: roots.map(|(u, v)| (name(u), name(v))) }
    }

    /// Normal form: arcs sorted, duplicates dropped.
    pub fn normalized(&self) -> Document {
        let mut d = self.clone();
        match &mut d.body {
            Body::Flat { arcs, .. } => arcs.sort_unstable(),
            Body::Composition { quotient, parts } => {
                quotient.sort_unstable();
                for p in parts {
                    p.arcs.sort_unstable();
                }
            }
        }
        d
    }

    pub fn emit(&self) -> String {
        let d = self.normalized();
        let mut s = String::new();
        match &d.body {
            Body::Flat { vertices, arcs } => {
                let _ = writeln!(s, "vertices {}", vertices.join(" "));
                for &(a, b) in arcs {
                    let _ = writeln!(s, "arc {} {}", vertices[a], vertices[b]);
                }
            }
            Body::Composition { quotient, parts } => {
                s.push_str("quotient {\n");
                for &(a, b) in quotient {
                    let _ = writeln!(s, "  arc {} {}", parts[a].name, parts[b].name);
                }
                s.push_str("}\n");
                for p in parts {
                    let _ = writeln!(s, "part {} {{", p.name);
                    let _ = writeln!(s, "  vertices {}", p.vertices.join(" "));
                    for &(a, b) in &p.arcs {
                        let _ = writeln!(s, "  arc {} {}", p.vertices[a], p.vertices[b]);
                    }
                    s.push_str("}\n");
                }
            }
        }
        if let Some((u, v)) = &d.roots {
            let _ = writeln!(s, "roots {u} {v}");
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const COMP: &str = "quotient { arc X Y; arc Y X }\npart X {\n vertices x1 x2\n arc x1 x2\n}\npart Y { vertices y }\nroots x1 y\n";

    #[test]
    fn flat_round_trip() {
        let d = parse("# a triangle\nvertices a b c\narc b c\narc a b\narc c a\nroots a c\n").unwrap();
        assert_eq!(d.emit(), "vertices a b c\narc a b\narc b c\narc c a\nroots a c\n");
        assert_eq!(parse(&d.emit()).unwrap(), d.normalized());
        let (g, c) = d.build().unwrap();
        assert_eq!(g.arc_count(), 3);
        assert!(c.is_none());
    }

    #[test]
    fn composition_round_trip() {
        let d = parse(COMP).unwrap();
        assert_eq!(parse(&d.emit()).unwrap(), d.normalized());
        let (g, c) = d.build().unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.arc_count(), 5);
        assert_eq!(c.unwrap().quotient().n(), 2);
        assert_eq!(d.vertex("y"), Some(2));
    }

    #[test]
    fn parse_errors_name_the_line() {
        let cases = [
            ("vertices a b\narc a c\n", "line 2"),
            ("vertices a a\n", "duplicate"),
            ("vertices a b\narc a a\n", "loop"),
            ("vertices a\nfoo\n", "unknown statement"),
            ("quotient {\narc X Y\n", "unclosed"),
            ("vertices a b\nroots a z\n", "z"),
        ];
        for (text, needle) in cases {
            let e = parse(text).unwrap_err().to_string();
            assert!(e.contains(needle), "{text:?}: {e}");
        }
    }

    #[test]
    fn generated_documents_round_trip() {
        let mut r = goodpair::generate::rng(3);
        let c = goodpair::generate::random_composition(3, 2, &mut r);
        let d = Document::from_composition(&c, Some((0, 1)));
        let back = parse(&d.emit()).unwrap();
        assert_eq!(back, d.normalized());
        let (g, _) = back.build().unwrap();
        assert_eq!(&g, c.flat());
    }
}
