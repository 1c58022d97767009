//! Corpus-wide check of the unique-orientable-cover characterisation: a
//! 3-connected planar graph has exactly one orientable circuit double
//! cover iff it is the dual of an Apollonian network.

use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::apollonian::is_apollonian;
use crate::cdc::{enumerate_covers, genus, CdcError, EnumerationLimits};
use crate::corpus::CorpusEntry;

pub const REPORT_FORMAT: &str = "report/v1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusEntry {
    pub name: String,
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub is_apollonian_dual: bool,
    /// Exact when `complete`, otherwise a lower bound.
    pub orientable_covers: usize,
    /// Every cover, orientable or not.
    pub all_covers: Option<usize>,
    pub complete: bool,
    /// Genus -> number of orientable covers with even `V - E + k`.
    pub genus_histogram: BTreeMap<i64, usize>,
    /// Orientable covers whose `V - E + k` is odd. Gluing discs along
    /// such a cover pinches some vertex, so no genus is assigned.
    pub odd_characteristic: usize,
    /// Whether `(orientable_covers == 1) == is_apollonian_dual`; absent
    /// for incomplete entries.
    pub consistent: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CensusReport {
    pub format: String,
    pub max_edges: usize,
    pub time_budget_secs: Option<f64>,
    pub entries: Vec<CensusEntry>,
    pub completed: usize,
    pub incomplete: usize,
    pub verdict: Verdict,
}

impl CensusReport {
    /// The report with every timing field cleared, for comparing runs.
    pub fn without_timing(&self) -> CensusReport {
        let mut r = self.clone();
        for e in &mut r.entries {
            e.elapsed_ms = None;
        }
        r
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn entry(&self, name: &str) -> Option<&CensusEntry> {
        self.entries.iter().find(|e| e.name == name)
    }
}

fn run_entry(entry: &CorpusEntry, limits: &EnumerationLimits) -> CensusEntry {
    let start = Instant::now();
    let mut out = CensusEntry {
        name: entry.name.clone(),
        vertices: 0,
        edges: 0,
        faces: 0,
        is_apollonian_dual: false,
        orientable_covers: 0,
        all_covers: None,
        complete: false,
        genus_histogram: BTreeMap::new(),
        odd_characteristic: 0,
        consistent: None,
        error: None,
        elapsed_ms: None,
    };
    let result = (|| -> Result<(), String> {
        let m = entry.build().map_err(|e| e.to_string())?;
        out.vertices = m.vertex_count();
        out.edges = m.edge_count();
        out.faces = m.face_count();
        let dual = m.dualize().map_err(|e| e.to_string())?;
        out.is_apollonian_dual = is_apollonian(&dual.underlying_graph());
        let g = m.underlying_graph();
        let oriented = enumerate_covers(&g, true, limits).map_err(|e| e.to_string())?;
        out.orientable_covers = oriented.covers.len();
        for c in &oriented.covers {
            match genus(&g, &c.cover) {
                Ok(report) => {
                    let gen = report.genus.ok_or("orientable cover without a witness")?;
                    *out.genus_histogram.entry(gen).or_default() += 1;
                }
                Err(CdcError::OddCharacteristic(_)) => out.odd_characteristic += 1,
                Err(e) => return Err(e.to_string()),
            }
        }
        let all = enumerate_covers(&g, false, limits).map_err(|e| e.to_string())?;
        if all.complete {
            out.all_covers = Some(all.covers.len());
        }
        out.complete = oriented.complete;
        Ok(())
    })();
    if let Err(e) = result {
        out.error = Some(e);
    }
    if out.complete {
        out.consistent = Some((out.orientable_covers == 1) == out.is_apollonian_dual);
    }
    out.elapsed_ms = Some(start.elapsed().as_millis() as u64);
    out
}

/// Runs every entry (in parallel, `limits.workers` at a time) and derives
/// the verdict from the completed entries. Each enumeration itself runs
/// single-threaded.
pub fn run_census(corpus: &[CorpusEntry], limits: &EnumerationLimits) -> CensusReport {
    let inner = EnumerationLimits {
        workers: 1,
        ..limits.clone()
    };
    let work = || {
        corpus
            .par_iter()
            .map(|e| run_entry(e, &inner))
            .collect::<Vec<_>>()
    };
    let entries = match rayon::ThreadPoolBuilder::new()
        .num_threads(limits.workers.max(1))
        .build()
    {
        Ok(pool) => pool.install(work),
        Err(_) => work(),
    };
    let completed = entries.iter().filter(|e| e.complete).count();
    let pass = entries.iter().all(|e| e.consistent != Some(false));
    CensusReport {
        format: REPORT_FORMAT.to_string(),
        max_edges: limits.max_edges,
        time_budget_secs: limits.time_budget.map(|d| d.as_secs_f64()),
        completed,
        incomplete: entries.len() - completed,
        entries,
        verdict: if pass { Verdict::Pass } else { Verdict::Fail },
    }
}
