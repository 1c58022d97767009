//! Circuits, circuit double covers and their orientations.
//!
//! Everything here is expressed over a host [`SimpleGraph`]: a circuit is
//! a set of edge indices, and dart `2e` traverses edge `e` from its
//! smaller-index endpoint to the larger one (`2e + 1` the other way), the
//! same numbering a [`PlanarMap`] uses for its own darts.
//!
//! Covers are multisets. Their canonical form sorts the edges of every
//! circuit and then sorts the circuits, keeping duplicates.

mod enumerate;
mod io;
mod orient;
mod translate;

use std::collections::VecDeque;

use serde::Serialize;
use thiserror::Error;

use crate::graph::SimpleGraph;
use crate::planar_map::PlanarMap;

pub use enumerate::{
    all_circuits, enumerate_all_covers, enumerate_covers, enumerate_orientable_partitions,
    Enumeration, EnumerationLimits, FoundCover, DEFAULT_MAX_EDGES,
};
pub use io::{CoverFile, COVER_FORMAT};
pub use orient::{
    check_orientability, genus, validate_oriented, GenusReport, Orientability, OrientedCover,
};
pub use translate::{translate_cover, RuleApplied, Translation};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CdcError {
    #[error("edge {0} is not an edge of the host graph")]
    UnknownEdge(String),
    #[error("not a valid circuit double cover: {0}")]
    InvalidCover(String),
    #[error("Euler characteristic {0} is odd; the cover cannot be orientable")]
    OddCharacteristic(i64),
    #[error("host has {edges} edges, above the limit of {max}")]
    EdgeLimitExceeded { edges: usize, max: usize },
    #[error("time budget exhausted after {found} covers")]
    TimeBudgetExceeded { found: usize },
    #[error("correspondence does not match the hosts: {0}")]
    CorrespondenceMismatch(String),
    #[error("translated circuits do not form a cover: {0}")]
    TranslationNotACover(String),
    #[error("bad cover file: {0}")]
    Format(String),
}

/// A set of host edges, kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Circuit(Vec<usize>);

impl Circuit {
    pub fn new(mut edges: Vec<usize>) -> Self {
        edges.sort_unstable();
        Circuit(edges)
    }

    /// From endpoint label pairs.
    pub fn from_label_pairs(g: &SimpleGraph, pairs: &[(u64, u64)]) -> Result<Self, CdcError> {
        pairs
            .iter()
            .map(|&(a, b)| {
                g.edge_index_by_labels(a, b)
                    .ok_or_else(|| CdcError::UnknownEdge(format!("{{{a}, {b}}}")))
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Circuit::new)
    }

    /// From a closed walk of vertex labels, e.g. `[1, 2, 3, 1, 4, 5]`.
    pub fn from_walk(g: &SimpleGraph, walk: &[u64]) -> Result<Self, CdcError> {
        let pairs: Vec<(u64, u64)> = (0..walk.len())
            .map(|i| (walk[i], walk[(i + 1) % walk.len()]))
            .collect();
        Self::from_label_pairs(g, &pairs)
    }

    pub fn edges(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn label_pairs(&self, g: &SimpleGraph) -> Vec<[u64; 2]> {
        self.0
            .iter()
            .map(|&e| {
                let (a, b) = g.edge_labels(e);
                [a, b]
            })
            .collect()
    }
}

/// A multiset of circuits in canonical order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct CircuitDoubleCover {
    circuits: Vec<Circuit>,
}

impl CircuitDoubleCover {
    pub fn new(mut circuits: Vec<Circuit>) -> Self {
        circuits.sort();
        CircuitDoubleCover { circuits }
    }

    pub fn circuits(&self) -> &[Circuit] {
        &self.circuits
    }

    pub fn len(&self) -> usize {
        self.circuits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.circuits.is_empty()
    }
}

/// Sorts circuits into canonical order, carrying their orientations along.
pub fn canonicalize(
    circuits: Vec<Circuit>,
    parts: Vec<Vec<usize>>,
) -> (CircuitDoubleCover, OrientedCover) {
    let mut pairs: Vec<(Circuit, Vec<usize>)> = circuits.into_iter().zip(parts).collect();
    pairs.sort();
    let (circuits, parts): (Vec<_>, Vec<_>) = pairs.into_iter().unzip();
    (CircuitDoubleCover { circuits }, OrientedCover::new(parts))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CircuitCheck {
    pub valid: bool,
    pub even: bool,
    pub connected: bool,
    pub is_cycle: bool,
}

/// Checks that `edges` is a non-empty, connected even subgraph; also
/// reports whether it is a cycle (every touched vertex of degree 2).
pub fn validate_circuit(g: &SimpleGraph, edges: &[usize]) -> Result<CircuitCheck, CdcError> {
    if let Some(&e) = edges.iter().find(|&&e| e >= g.edge_count()) {
        return Err(CdcError::UnknownEdge(format!("#{e}")));
    }
    let mut sorted = edges.to_vec();
    sorted.sort_unstable();
    let distinct = sorted.windows(2).all(|w| w[0] != w[1]);
    let mut deg = vec![0usize; g.vertex_count()];
    for &e in edges {
        let (u, v) = g.edges()[e];
        deg[u] += 1;
        deg[v] += 1;
    }
    let even = distinct && deg.iter().all(|d| d % 2 == 0);
    let connected = !edges.is_empty() && edges_connected(g, edges);
    let valid = even && connected;
    let is_cycle = valid && deg.iter().all(|&d| d == 0 || d == 2);
    Ok(CircuitCheck {
        valid,
        even,
        connected,
        is_cycle,
    })
}

pub(crate) fn edges_connected(g: &SimpleGraph, edges: &[usize]) -> bool {
    let n = g.vertex_count();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &e in edges {
        let (u, v) = g.edges()[e];
        adj[u].push(v);
        adj[v].push(u);
    }
    let Some(start) = (0..n).find(|&v| !adj[v].is_empty()) else {
        return true;
    };
    let mut seen = vec![false; n];
    seen[start] = true;
    let mut queue = VecDeque::from([start]);
    while let Some(u) = queue.pop_front() {
        for &w in &adj[u] {
            if !seen[w] {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    (0..n).all(|v| adj[v].is_empty() || seen[v])
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverCheck {
    pub valid: bool,
    pub is_cycle_cover: bool,
    /// Positions (in the given order) of members that are not circuits.
    pub invalid_circuits: Vec<usize>,
    /// `(edge, multiplicity)` for every edge not covered exactly twice.
    pub bad_edges: Vec<([u64; 2], usize)>,
}

pub fn validate_cover(g: &SimpleGraph, circuits: &[Circuit]) -> CoverCheck {
    let mut invalid_circuits = Vec::new();
    let mut all_cycles = true;
    let mut mult = vec![0usize; g.edge_count()];
    for (i, c) in circuits.iter().enumerate() {
        match validate_circuit(g, c.edges()) {
            Ok(check) => {
                if !check.valid {
                    invalid_circuits.push(i);
                }
                all_cycles &= check.is_cycle;
                for &e in c.edges() {
                    mult[e] += 1;
                }
            }
            Err(_) => {
                invalid_circuits.push(i);
                all_cycles = false;
            }
        }
    }
    let bad_edges: Vec<([u64; 2], usize)> = mult
        .iter()
        .enumerate()
        .filter(|&(_, &k)| k != 2)
        .map(|(e, &k)| {
            let (a, b) = g.edge_labels(e);
            ([a, b], k)
        })
        .collect();
    let valid = invalid_circuits.is_empty() && bad_edges.is_empty();
    CoverCheck {
        valid,
        is_cycle_cover: valid && all_cycles,
        invalid_circuits,
        bad_edges,
    }
}

/// The cover by face boundaries, oriented along the face walks.
pub fn facial_cover(m: &PlanarMap) -> (CircuitDoubleCover, OrientedCover) {
    let circuits = m
        .faces()
        .iter()
        .map(|f| Circuit::new(f.edges().collect()))
        .collect();
    let parts = m.faces().iter().map(|f| f.darts().to_vec()).collect();
    canonicalize(circuits, parts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn k222_paper_cover(g: &SimpleGraph) -> Vec<Circuit> {
        [
            [1, 2, 3, 1, 4, 5],
            [1, 2, 5, 1, 3, 4],
            [6, 2, 3, 6, 4, 5],
            [6, 2, 5, 6, 3, 4],
        ]
        .iter()
        .map(|w| Circuit::from_walk(g, w).unwrap())
        .collect()
    }

    #[test]
    fn k222_circuit_is_not_a_cycle() {
        let g = corpus::k222().underlying_graph();
        let c = Circuit::from_walk(&g, &[1, 2, 3, 1, 4, 5]).unwrap();
        assert_eq!(c.len(), 6);
        let check = validate_circuit(&g, c.edges()).unwrap();
        assert!(check.valid && !check.is_cycle);
    }

    #[test]
    fn k222_paper_cover_is_a_circuit_double_cover() {
        let g = corpus::k222().underlying_graph();
        let check = validate_cover(&g, &k222_paper_cover(&g));
        assert!(check.valid);
        assert!(!check.is_cycle_cover);
    }

    #[test]
    fn open_path_is_not_a_circuit() {
        let g = SimpleGraph::complete(4);
        let c = Circuit::from_walk(&g, &[1, 2, 3]).unwrap();
        let path = Circuit::new(
            c.edges()
                .iter()
                .copied()
                .filter(|&e| g.edge_labels(e) != (1, 3))
                .collect(),
        );
        assert_eq!(path.len(), 2);
        let check = validate_circuit(&g, path.edges()).unwrap();
        assert!(!check.valid && !check.even && check.connected);
    }

    #[test]
    fn unknown_edges() {
        let g = corpus::k222().underlying_graph();
        assert!(matches!(
            Circuit::from_walk(&g, &[1, 6, 2]),
            Err(CdcError::UnknownEdge(_))
        ));
        assert!(matches!(
            validate_circuit(&g, &[40]),
            Err(CdcError::UnknownEdge(_))
        ));
    }

    #[test]
    fn disconnected_even_subgraph_is_not_a_circuit() {
        // two disjoint triangles of the prism
        let m = corpus::triangular_prism();
        let g = m.underlying_graph();
        let tris: Vec<usize> = m
            .faces()
            .iter()
            .filter(|f| f.len() == 3)
            .flat_map(|f| f.edges())
            .collect();
        let check = validate_circuit(&g, &tris).unwrap();
        assert!(check.even && !check.connected && !check.valid);
    }

    #[test]
    fn facial_covers() {
        for (name, m) in corpus::named_fixtures() {
            let g = m.underlying_graph();
            let (cover, witness) = facial_cover(&m);
            let check = validate_cover(&g, cover.circuits());
            assert!(check.valid && check.is_cycle_cover, "{name}");
            assert_eq!(validate_oriented(&g, &cover, &witness), Ok(()), "{name}");
        }
        let (cover, _) = facial_cover(&corpus::triangular_prism());
        let mut lens: Vec<usize> = cover.circuits().iter().map(Circuit::len).collect();
        lens.sort_unstable();
        assert_eq!(lens, [3, 3, 4, 4, 4]);
    }

    #[test]
    fn dropping_a_face_breaks_the_cover() {
        let m = corpus::k4();
        let g = m.underlying_graph();
        let (cover, _) = facial_cover(&m);
        let check = validate_cover(&g, &cover.circuits()[1..]);
        assert!(!check.valid);
        assert_eq!(check.bad_edges.len(), 3);
        assert!(check.bad_edges.iter().all(|&(_, k)| k == 1));
    }
}
