//! Engine-versus-oracle comparison over many instances, evaluated in
//! parallel and reported one line per root pair.

use std::time::Instant;

use rayon::prelude::*;

use crate::branching::verify_good_pair;
use crate::composition::Composition;
use crate::graph::{Digraph, Vertex};
use crate::oracle::{oracle_good_pair, OracleAnswer, OracleLimits};
use crate::verdict::{decide, EngineClass};

/// One digraph and the root pairs to check on it.
#[derive(Clone, Debug)]
pub struct CheckItem {
    pub label: String,
    pub seed: u64,
    pub graph: Digraph,
    pub composition: Option<Composition>,
    pub class: EngineClass,
    pub roots: Vec<(Vertex, Vertex)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleOutcome {
    Yes,
    No,
    Undecided,
}

#[derive(Clone, Debug)]
pub struct Record {
    pub label: String,
    pub seed: u64,
    pub u: Vertex,
    pub v: Vertex,
    /// `Ok(verdict text)` or the engine error.
    pub engine: Result<String, String>,
    pub engine_yes: bool,
    pub oracle: OracleOutcome,
    /// An engine YES passed the pair verifier (vacuously true on NO).
    pub verified: bool,
    pub mismatch: bool,
    pub engine_micros: u128,
    pub oracle_micros: u128,
}

impl Record {
    /// One line of `key=value` fields; timings only when asked for so that
    /// reports stay byte-identical across runs.
    pub fn line(&self, timings: bool) -> String {
        let engine = match &self.engine {
            Ok(t) => t.replace(' ', ":"),
            Err(e) => format!("error:{}", e.replace(' ', "_")),
        };
        let oracle = match self.oracle {
            OracleOutcome::Yes => "YES",
            OracleOutcome::No => "NO",
            OracleOutcome::Undecided => "UNDECIDED",
        };
        let mut s = format!(
            "label={} seed={} u={} v={} engine={} oracle={} verified={} mismatch={}",
            self.label, self.seed, self.u, self.v, engine, oracle, self.verified, self.mismatch
        );
        if timings {
            s.push_str(&format!(" engine_us={} oracle_us={}", self.engine_micros, self.oracle_micros));
        }
        s
    }
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    pub records: Vec<Record>,
}

impl Report {
    pub fn mismatches(&self) -> usize {
        self.records.iter().filter(|r| r.mismatch).count()
    }

    pub fn undecided(&self) -> usize {
        self.records.iter().filter(|r| r.oracle == OracleOutcome::Undecided).count()
    }

    pub fn yes_count(&self) -> usize {
        self.records.iter().filter(|r| r.engine_yes).count()
    }

    pub fn summary(&self) -> String {
        format!(
            "summary records={} yes={} no={} mismatches={} undecided={}",
            self.records.len(),
            self.yes_count(),
            self.records.len() - self.yes_count(),
            self.mismatches(),
            self.undecided()
        )
    }
}

fn check_one(item: &CheckItem, u: Vertex, v: Vertex, limits: OracleLimits) -> Record {
    let t0 = Instant::now();
    let verdict = decide(&item.graph, item.composition.as_ref(), u, v, item.class);
    let engine_micros = t0.elapsed().as_micros();
    let t1 = Instant::now();
    let oracle = match oracle_good_pair(&item.graph, u, v, limits) {
        Ok(OracleAnswer::Yes(_)) => OracleOutcome::Yes,
        Ok(OracleAnswer::No) => OracleOutcome::No,
        Ok(OracleAnswer::ResourceExceeded) | Err(_) => OracleOutcome::Undecided,
    };
    let oracle_micros = t1.elapsed().as_micros();
    let (engine, engine_yes, verified) = match &verdict {
        Ok(vd) => {
            let verified = vd.pair().map_or(true, |p| verify_good_pair(&item.graph, u, v, p).is_ok());
            (Ok(vd.to_string()), vd.is_yes(), verified)
        }
        Err(e) => (Err(e.to_string()), false, true),
    };
    let disagree = match oracle {
        OracleOutcome::Yes => !engine_yes,
        OracleOutcome::No => engine_yes,
        OracleOutcome::Undecided => false,
    };
    let mismatch = engine.is_err() || !verified || disagree;
    Record { label: item.label.clone(), seed: item.seed, u, v, engine, engine_yes, oracle, verified, mismatch, engine_micros, oracle_micros }
}

/// Check every item and root pair; records come back in input order.
pub fn crosscheck(items: &[CheckItem], limits: OracleLimits) -> Report {
    let jobs: Vec<(&CheckItem, Vertex, Vertex)> = items.iter().flat_map(|it| it.roots.iter().map(move |&(u, v)| (it, u, v))).collect();
    let records = jobs.par_iter().map(|&(it, u, v)| check_one(it, u, v, limits)).collect();
    Report { records }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::exhaustive_tournaments;

    #[test]
    fn small_tournaments_agree() {
        let items: Vec<CheckItem> = (1..=4)
            .flat_map(exhaustive_tournaments)
            .enumerate()
            .map(|(i, g)| {
                let n = g.n();
                CheckItem {
                    label: format!("t{i}"),
                    seed: 0,
                    roots: (0..n).flat_map(|u| (0..n).map(move |v| (u, v))).collect(),
                    graph: g,
                    composition: None,
                    class: EngineClass::Semicomplete,
                }
            })
            .collect();
        let rep = crosscheck(&items, OracleLimits::default());
        assert_eq!(rep.mismatches(), 0, "{}", rep.summary());
        assert!(rep.records[0].line(false).starts_with("label=t0 seed=0 u=0 v=0 engine=YES"));
    }
}
