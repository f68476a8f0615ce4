//! One entry point over all engines, with a stable textual form for
//! verdicts and their witnesses.

use std::fmt;
use std::str::FromStr;

use crate::branching::BranchingPair;
use crate::composite::{decide_composition, CompVerdict};
use crate::composition::{as_semicomplete_composition, recognize, Composition};
use crate::graph::{strong_components, Arc, Digraph, Vertex};
use crate::semicomplete::{decide_semicomplete, ScVerdict};
use crate::transitive::{decide_quasi_transitive, decide_transitive_composition, QtVerdict, TransReason, TransVerdict};
use crate::typeab::TypeABWitness;
use crate::Error;

/// Engine selection.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EngineClass {
    Auto,
    Semicomplete,
    Composition,
    Transitive,
    QuasiTransitive,
}

impl FromStr for EngineClass {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "auto" => Ok(EngineClass::Auto),
            "semicomplete" => Ok(EngineClass::Semicomplete),
            "composition" => Ok(EngineClass::Composition),
            "transitive" => Ok(EngineClass::Transitive),
            "qt" => Ok(EngineClass::QuasiTransitive),
            other => Err(format!("unknown class '{other}' (expected auto, semicomplete, composition, transitive or qt)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Semicomplete(ScVerdict),
    Composition(CompVerdict),
    Transitive(TransVerdict),
}

impl From<QtVerdict> for Verdict {
    fn from(v: QtVerdict) -> Self {
        match v {
            QtVerdict::Composition(c) => Verdict::Composition(c),
            QtVerdict::Transitive(t) => Verdict::Transitive(t),
        }
    }
}

impl Verdict {
    pub fn is_yes(&self) -> bool {
        self.pair().is_some()
    }

    pub fn pair(&self) -> Option<&BranchingPair> {
        match self {
            Verdict::Semicomplete(ScVerdict::GoodPair(p)) | Verdict::Composition(CompVerdict::GoodPair(p)) | Verdict::Transitive(TransVerdict::GoodPair(p)) => Some(p),
            _ => None,
        }
    }

    /// Short tag naming the obstruction, `None` on YES.
    pub fn witness_tag(&self) -> Option<String> {
        Some(match self {
            Verdict::Semicomplete(v) => match v {
                ScVerdict::GoodPair(_) => return None,
                ScVerdict::Exception(f) => format!("figure-1({})", f.letter()),
                ScVerdict::NonStrongRootFailure => "non-strong-roots".into(),
                ScVerdict::ArcObstruction(_) => "arc-obstruction".into(),
                ScVerdict::TypeA(_) => "type-a".into(),
            },
            Verdict::Composition(v) => match v {
                CompVerdict::GoodPair(_) => return None,
                CompVerdict::DegreeObstruction { .. } => "root-degree".into(),
                CompVerdict::TableOne(m) => format!("table-1({})", m.family.letter()),
                CompVerdict::TypeACondition { .. } => "type-a-blocked".into(),
                CompVerdict::TypeBCondition { .. } => "type-b-blocked".into(),
                CompVerdict::SearchRefuted => "search-refuted".into(),
            },
            Verdict::Transitive(v) => match v {
                TransVerdict::GoodPair(_) => return None,
                TransVerdict::NoPair(r) => match r {
                    TransReason::TT3Middle(_) => "tt3-middle",
                    TransReason::C2Degree { .. } => "c2-degree",
                    TransReason::TreeSide { .. } => "tree-side",
                    TransReason::RootComponent { .. } => "root-component",
                    TransReason::DegreeObstruction { .. } => "root-degree",
                }
                .into(),
            },
        })
    }

    /// Lines describing the witness in detail (empty on YES).
    pub fn witness_details(&self) -> Vec<String> {
        let mut out = Vec::new();
        match self {
            Verdict::Semicomplete(ScVerdict::ArcObstruction(e)) => out.push(format!("arc {}", arc(*e))),
            Verdict::Semicomplete(ScVerdict::TypeA(w)) => layered(w, &mut out),
            Verdict::Composition(CompVerdict::DegreeObstruction { out_side }) => {
                out.push(if *out_side { "out-degree of u below two" } else { "in-degree of v below two" }.into())
            }
            Verdict::Composition(CompVerdict::TableOne(m)) => {
                out.push(format!("reversed {}", m.reversed));
                for g in &m.groups {
                    out.push(format!("group {}", join(g.iter())));
                }
            }
            Verdict::Composition(CompVerdict::TypeACondition { witness, evidence }) => {
                layered(witness, &mut out);
                for e in evidence {
                    out.push(format!("blocked {} parts {} | {}", arc(e.arc), join(e.tail_part.iter()), join(e.head_part.iter())));
                }
            }
            Verdict::Composition(CompVerdict::TypeBCondition { witness, evidence }) => {
                layered(witness, &mut out);
                out.push(format!("blocked {} parts {} | {}", arc(evidence.arc), join(evidence.tail_part.iter()), join(evidence.head_part.iter())));
            }
            Verdict::Transitive(TransVerdict::NoPair(r)) => match r {
                TransReason::TT3Middle(m) => out.push(format!("middle {}", join(m.groups[1].iter()))),
                TransReason::C2Degree { w, .. } => out.push(format!("hub {w}")),
                TransReason::TreeSide { reversed } => out.push(format!("reversed {reversed}")),
                TransReason::RootComponent { out_side } | TransReason::DegreeObstruction { out_side } => {
                    out.push(format!("side {}", if *out_side { "u" } else { "v" }))
                }
            },
            _ => {}
        }
        out
    }
}

fn arc((a, b): Arc) -> String {
    format!("{a}->{b}")
}

fn join(it: impl Iterator<Item = usize>) -> String {
    it.map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn layered(w: &TypeABWitness, out: &mut Vec<String>) {
    out.push(format!("kind {:?} order {}", w.kind, w.order));
    for (i, l) in w.partition.iter().enumerate() {
        out.push(format!("layer {} {}", i + 1, join(l.iter())));
    }
    for e in &w.backward {
        out.push(format!("backward {}", arc(*e)));
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.witness_tag() {
            None => write!(f, "YES"),
            Some(t) => write!(f, "NO {t}"),
        }
    }
}

/// Run the engine selected by `class`. With `Auto`, a given composition
/// is routed by its quotient and a flat digraph by its recognised class.
pub fn decide(g: &Digraph, composition: Option<&Composition>, u: Vertex, v: Vertex, class: EngineClass) -> Result<Verdict, Error> {
    let flags = recognize(g);
    match class {
        EngineClass::Semicomplete => decide_semicomplete(g, u, v).map(Verdict::Semicomplete),
        EngineClass::QuasiTransitive => decide_quasi_transitive(g, u, v).map(Verdict::from),
        EngineClass::Composition => {
            let owned;
            let c = match composition {
                Some(c) => c,
                None => {
                    owned = as_semicomplete_composition(g).ok_or(Error::WrongClass("a composition of a strong semicomplete digraph"))?;
                    &owned
                }
            };
            decide_composition(c, u, v).map(Verdict::Composition)
        }
        EngineClass::Transitive => {
            let owned;
            let c = match composition {
                Some(c) => c,
                None => {
                    owned = Composition::from_partition(g, strong_components(g).components)?;
                    &owned
                }
            };
            decide_transitive_composition(c, u, v).map(Verdict::Transitive)
        }
        EngineClass::Auto => match composition {
            Some(c) => {
                let q = c.quotient();
                if q.n() >= 2 && q.is_semicomplete() && q.is_strong() {
                    decide_composition(c, u, v).map(Verdict::Composition)
                } else if q.n() >= 2 && recognize(q).transitive {
                    decide_transitive_composition(c, u, v).map(Verdict::Transitive)
                } else if flags.semicomplete {
                    decide_semicomplete(g, u, v).map(Verdict::Semicomplete)
                } else {
                    Err(Error::WrongClass("a composition of a strong semicomplete or a transitive digraph"))
                }
            }
            None if flags.semicomplete => decide_semicomplete(g, u, v).map(Verdict::Semicomplete),
            None if flags.quasi_transitive => decide_quasi_transitive(g, u, v).map(Verdict::from),
            None => match as_semicomplete_composition(g) {
                Some(c) => decide_composition(&c, u, v).map(Verdict::Composition),
                None => Err(Error::WrongClass("semicomplete, quasi-transitive or a semicomplete composition")),
            },
        },
    }
}
