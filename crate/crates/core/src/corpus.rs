//! Named fixture graphs and graph selectors.
//!
//! Selectors: `k4`, `prism`, `prism:<n>`, `hexprism`, `cube`,
//! `octahedron`, `k222`, `wheel:<n>`, `apollonian:<i,j,...>`,
//! `apollonian-dual:<i,j,...>` and `@path.json` for a `planar-map/v1` file.

use thiserror::Error;

use crate::apollonian::{self, ApollonianError, StackSequence};
use crate::graph::SimpleGraph;
use crate::planar_map::{MapError, PlanarMap};

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("unknown graph selector {0:?}")]
    UnknownSelector(String),
    #[error("bad selector argument in {0:?}: {1}")]
    BadArgument(String, String),
    #[error(transparent)]
    Map(#[from] MapError),
    #[error(transparent)]
    Apollonian(#[from] ApollonianError),
    #[error("cannot read {0}: {1}")]
    Io(String, std::io::Error),
}

/// A named corpus member and how to build it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusEntry {
    pub name: String,
}

impl CorpusEntry {
    pub fn new(name: impl Into<String>) -> Self {
        CorpusEntry { name: name.into() }
    }

    pub fn build(&self) -> Result<PlanarMap, CorpusError> {
        resolve(&self.name)
    }
}

fn map(lists: &[(u64, &[u64])]) -> PlanarMap {
    let owned: Vec<(u64, Vec<u64>)> = lists.iter().map(|(v, r)| (*v, r.to_vec())).collect();
    PlanarMap::from_rotation(&owned).expect("fixture rotation is planar")
}

pub fn k4() -> PlanarMap {
    map(&[
        (1, &[2, 3, 4]),
        (2, &[1, 4, 3]),
        (3, &[1, 2, 4]),
        (4, &[1, 3, 2]),
    ])
}

pub fn cube() -> PlanarMap {
    // inner square 1..4, outer square 5..8, spokes i -- i+4
    map(&[
        (1, &[2, 5, 4]),
        (2, &[6, 1, 3]),
        (3, &[2, 4, 7]),
        (4, &[3, 1, 8]),
        (5, &[6, 8, 1]),
        (6, &[5, 2, 7]),
        (7, &[6, 3, 8]),
        (8, &[7, 4, 5]),
    ])
}

/// Octahedron with apex 1 drawn inside the equator 2..5 and apex 6 outside.
pub fn octahedron() -> PlanarMap {
    map(&[
        (1, &[2, 3, 4, 5]),
        (2, &[6, 3, 1, 5]),
        (3, &[6, 4, 1, 2]),
        (4, &[6, 5, 1, 3]),
        (5, &[6, 2, 1, 4]),
        (6, &[5, 4, 3, 2]),
    ])
}

/// `K_{2,2,2}` with the vertex labels of the classic drawing in which the
/// non-adjacent pairs are `{1,6}`, `{2,4}` and `{3,5}`.
pub fn k222() -> PlanarMap {
    map(&[
        (1, &[5, 2, 3, 4]),
        (2, &[3, 1, 5, 6]),
        (3, &[1, 2, 6, 4]),
        (4, &[6, 5, 1, 3]),
        (5, &[6, 2, 1, 4]),
        (6, &[3, 2, 5, 4]),
    ])
}

/// Wheel with `n` spokes: rim `1..=n`, hub `n + 1`.
pub fn wheel(n: usize) -> PlanarMap {
    assert!(n >= 3, "a wheel needs at least 3 spokes");
    let n = n as u64;
    let hub = n + 1;
    let next = |i: u64| i % n + 1;
    let prev = |i: u64| (i + n - 2) % n + 1;
    let mut lists: Vec<(u64, Vec<u64>)> =
        (1..=n).map(|i| (i, vec![next(i), hub, prev(i)])).collect();
    lists.push((hub, (1..=n).collect()));
    PlanarMap::from_rotation(&lists).expect("wheel rotation is planar")
}

/// `n`-gonal prism: outer cycle `1..=n`, inner cycle `n+1..=2n`.
pub fn prism(n: usize) -> PlanarMap {
    assert!(n >= 3, "a prism needs at least 3 sides");
    let n = n as u64;
    let next = |i: u64| i % n + 1;
    let prev = |i: u64| (i + n - 2) % n + 1;
    let mut lists: Vec<(u64, Vec<u64>)> = (1..=n)
        .map(|i| (i, vec![next(i), n + i, prev(i)]))
        .collect();
    lists.extend((1..=n).map(|i| (n + i, vec![i, n + next(i), n + prev(i)])));
    PlanarMap::from_rotation(&lists).expect("prism rotation is planar")
}

pub fn triangular_prism() -> PlanarMap {
    prism(3)
}

/// Hexagonal prism; two hexagonal faces, the inner one is face-augmented
/// in the classic augmentation figure.
pub fn hexagonal_prism() -> PlanarMap {
    prism(6)
}

/// Truncated tetrahedron written down edge by edge: four triangles, each
/// pair of triangles joined by exactly one edge.
pub fn truncated_tetrahedron_graph() -> SimpleGraph {
    SimpleGraph::from_labeled_edges(&[
        (1, 2),
        (2, 3),
        (1, 3),
        (4, 5),
        (5, 6),
        (4, 6),
        (7, 8),
        (8, 9),
        (7, 9),
        (10, 11),
        (11, 12),
        (10, 12),
        (1, 4),
        (2, 7),
        (3, 10),
        (5, 8),
        (6, 11),
        (9, 12),
    ])
    .expect("fixture is simple")
}

/// Resolves a graph selector to a validated map.
pub fn resolve(selector: &str) -> Result<PlanarMap, CorpusError> {
    let bad = |msg: &str| CorpusError::BadArgument(selector.to_string(), msg.to_string());
    if let Some(path) = selector.strip_prefix('@') {
        let text =
            std::fs::read_to_string(path).map_err(|e| CorpusError::Io(path.to_string(), e))?;
        return Ok(PlanarMap::from_json(&text)?);
    }
    let (name, arg) = match selector.split_once(':') {
        Some((n, a)) => (n, Some(a)),
        None => (selector, None),
    };
    let size = |a: Option<&str>, min: usize| -> Result<usize, CorpusError> {
        let k: usize = a
            .ok_or_else(|| bad("missing size"))?
            .parse()
            .map_err(|_| bad("size is not an integer"))?;
        if k < min {
            return Err(bad(&format!("size must be at least {min}")));
        }
        Ok(k)
    };
    match (name, arg) {
        ("k4", None) => Ok(k4()),
        ("prism", None) => Ok(triangular_prism()),
        ("prism", a) => Ok(prism(size(a, 3)?)),
        ("hexprism", None) => Ok(hexagonal_prism()),
        ("cube", None) => Ok(cube()),
        ("octahedron", None) => Ok(octahedron()),
        ("k222", None) => Ok(k222()),
        ("wheel", a) => Ok(wheel(size(a, 3)?)),
        ("apollonian", Some(a)) => {
            let seq: StackSequence = a
                .parse()
                .map_err(|e: ApollonianError| bad(&e.to_string()))?;
            Ok(apollonian::generate_apollonian(&seq)?)
        }
        ("apollonian-dual", Some(a)) => {
            let seq: StackSequence = a
                .parse()
                .map_err(|e: ApollonianError| bad(&e.to_string()))?;
            Ok(apollonian::apollonian_dual(&seq)?)
        }
        _ => Err(CorpusError::UnknownSelector(selector.to_string())),
    }
}

/// Every stack sequence of length at most `max_len`, in shortlex order of
/// face indices.
pub fn all_stack_sequences(max_len: usize) -> Vec<StackSequence> {
    let mut out = vec![StackSequence::default()];
    let mut frontier = vec![StackSequence::default()];
    for step in 0..max_len {
        // an Apollonian network after `step` stacks has 4 + 2 * step faces
        let faces = 4 + 2 * step;
        let mut next = Vec::new();
        for seq in &frontier {
            for f in 0..faces {
                let mut s = seq.clone();
                s.push(f);
                next.push(s);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// The default census corpus.
pub fn default_census_corpus() -> Vec<CorpusEntry> {
    let mut names: Vec<String> = [
        "k4",
        "prism",
        "cube",
        "octahedron",
        "wheel:4",
        "wheel:5",
        "k222",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect();
    names.extend(
        all_stack_sequences(2)
            .iter()
            .map(|s| format!("apollonian-dual:{s}")),
    );
    names.into_iter().map(CorpusEntry::new).collect()
}

/// Small named maps used throughout the test suites.
pub fn named_fixtures() -> Vec<(&'static str, PlanarMap)> {
    vec![
        ("k4", k4()),
        ("prism", triangular_prism()),
        ("cube", cube()),
        ("octahedron", octahedron()),
        ("k222", k222()),
        ("wheel:4", wheel(4)),
        ("wheel:5", wheel(5)),
        ("wheel:6", wheel(6)),
        ("hexprism", hexagonal_prism()),
        ("prism:5", prism(5)),
    ]
}
