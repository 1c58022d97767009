//! Apollonian networks: stacking, recognition, duals and the
//! separating-triangle / degree-three edge classification.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::corpus;
use crate::graph::SimpleGraph;
use crate::planar_map::{MapError, PlanarMap};
use crate::surgery;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ApollonianError {
    #[error("step {step}: face index {index} out of range (map has {faces} faces)")]
    BadSelector {
        step: usize,
        index: usize,
        faces: usize,
    },
    #[error("cannot parse stack sequence {0:?}")]
    Parse(String),
    #[error("graph is not an Apollonian network")]
    NotApollonian,
    #[error(transparent)]
    Map(#[from] MapError),
}

/// Face indices to augment, one per step. Each index refers to the
/// canonical face order (ascending minimum dart) of the map at that step.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct StackSequence(pub Vec<usize>);

impl StackSequence {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, face: usize) {
        self.0.push(face);
    }

    /// `count` uniformly chosen faces from a ChaCha8 stream seeded with
    /// `seed`: step `i` draws `gen_range(0..4 + 2i)`.
    pub fn random(count: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        StackSequence((0..count).map(|i| rng.gen_range(0..4 + 2 * i)).collect())
    }
}

impl fmt::Display for StackSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for StackSequence {
    type Err = ApollonianError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(StackSequence::default());
        }
        s.split(',')
            .map(|t| t.trim().parse::<usize>())
            .collect::<Result<Vec<_>, _>>()
            .map(StackSequence)
            .map_err(|_| ApollonianError::Parse(s.to_string()))
    }
}

/// Stacks a degree-3 vertex into the selected face of K4, step by step.
pub fn generate_apollonian(seq: &StackSequence) -> Result<PlanarMap, ApollonianError> {
    let mut m = corpus::k4();
    for (step, &index) in seq.0.iter().enumerate() {
        if index >= m.face_count() {
            return Err(ApollonianError::BadSelector {
                step,
                index,
                faces: m.face_count(),
            });
        }
        m = surgery::augment_faces(&m, &[index])?.0;
    }
    Ok(m)
}

pub fn generate_random_apollonian(count: usize, seed: u64) -> PlanarMap {
    generate_apollonian(&StackSequence::random(count, seed)).expect("random selectors are in range")
}

pub fn apollonian_dual(seq: &StackSequence) -> Result<PlanarMap, ApollonianError> {
    Ok(generate_apollonian(seq)?.dualize()?)
}

/// Recognises Apollonian networks by peeling degree-3 vertices whose
/// neighbours form a triangle until K4 remains.
///
/// Peeling alone also accepts non-planar 3-trees (two vertices stacked on
/// the same triangle), so each neighbour triangle may serve as a base only
/// once.
pub fn is_apollonian(g: &SimpleGraph) -> bool {
    reduce(g, |eligible| eligible[0])
}

/// [`is_apollonian`] with the peeled vertex drawn at random among the
/// eligible ones.
pub fn is_apollonian_shuffled(g: &SimpleGraph, seed: u64) -> bool {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    reduce(g, |eligible| eligible[rng.gen_range(0..eligible.len())])
}

fn reduce(g: &SimpleGraph, mut pick: impl FnMut(&[usize]) -> usize) -> bool {
    let n = g.vertex_count();
    if n < 4 {
        return false;
    }
    let mut adj: Vec<BTreeSet<usize>> = (0..n)
        .map(|v| g.neighbors(v).iter().copied().collect())
        .collect();
    let mut alive = n;
    let mut removed = vec![false; n];
    let mut bases: HashSet<[usize; 3]> = HashSet::new();
    while alive > 4 {
        let eligible: Vec<usize> = (0..n)
            .filter(|&v| !removed[v] && adj[v].len() == 3)
            .filter(|&v| {
                let nb: Vec<usize> = adj[v].iter().copied().collect();
                adj[nb[0]].contains(&nb[1])
                    && adj[nb[0]].contains(&nb[2])
                    && adj[nb[1]].contains(&nb[2])
            })
            .collect();
        if eligible.is_empty() {
            return false;
        }
        let v = pick(&eligible);
        let nb: Vec<usize> = adj[v].iter().copied().collect();
        if !bases.insert([nb[0], nb[1], nb[2]]) {
            return false;
        }
        for &w in &nb {
            adj[w].remove(&v);
        }
        adj[v].clear();
        removed[v] = true;
        alive -= 1;
    }
    (0..n).filter(|&v| !removed[v]).all(|v| adj[v].len() == 3)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Triangle {
    pub vertices: [usize; 3],
    pub labels: [u64; 3],
    pub separating: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TriangleSet {
    pub triangles: Vec<Triangle>,
}

impl TriangleSet {
    pub fn separating(&self) -> impl Iterator<Item = &Triangle> {
        self.triangles.iter().filter(|t| t.separating)
    }
}

/// All triangles of `g` as sorted vertex triples, each tested by deleting
/// its vertices and checking connectivity of what remains.
pub fn separating_triangles(g: &SimpleGraph) -> TriangleSet {
    let n = g.vertex_count();
    let mut triangles = Vec::new();
    let mut removed = vec![false; n];
    for &(a, b) in g.edges() {
        for &c in g.neighbors(b) {
            if c > b && g.has_edge(a, c) {
                removed[a] = true;
                removed[b] = true;
                removed[c] = true;
                let separating = g.component_count_without(&removed) > 1;
                removed[a] = false;
                removed[b] = false;
                removed[c] = false;
                triangles.push(Triangle {
                    vertices: [a, b, c],
                    labels: [g.label(a), g.label(b), g.label(c)],
                    separating,
                });
            }
        }
    }
    triangles.sort_by_key(|t| t.vertices);
    TriangleSet { triangles }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EdgeClass {
    pub edge: [u64; 2],
    pub in_separating_triangle: bool,
    pub degree_three_endpoint: bool,
}

impl EdgeClass {
    pub fn holds(&self) -> bool {
        self.in_separating_triangle || self.degree_three_endpoint
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EdgeClassReport {
    pub edges: Vec<EdgeClass>,
    pub pass: bool,
}

/// Checks that every edge of an Apollonian network lies in a separating
/// triangle or touches a vertex of degree three.
pub fn check_edge_classification(g: &SimpleGraph) -> Result<EdgeClassReport, ApollonianError> {
    if !is_apollonian(g) {
        return Err(ApollonianError::NotApollonian);
    }
    let mut in_sep = vec![false; g.edge_count()];
    for t in separating_triangles(g).separating() {
        let [a, b, c] = t.vertices;
        for (x, y) in [(a, b), (b, c), (a, c)] {
            in_sep[g.edge_index(x, y).expect("triangle edge")] = true;
        }
    }
    let edges: Vec<EdgeClass> = g
        .edges()
        .iter()
        .enumerate()
        .map(|(e, &(u, v))| EdgeClass {
            edge: [g.label(u), g.label(v)],
            in_separating_triangle: in_sep[e],
            degree_three_endpoint: g.degree(u) == 3 || g.degree(v) == 3,
        })
        .collect();
    let pass = edges.iter().all(EdgeClass::holds);
    Ok(EdgeClassReport { edges, pass })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(s: &str) -> StackSequence {
        s.parse().unwrap()
    }

    #[test]
    fn empty_sequence_is_k4() {
        assert_eq!(generate_apollonian(&seq("")).unwrap(), corpus::k4());
    }

    #[test]
    fn counts_follow_the_stack_formula() {
        for k in 0..8 {
            let m = generate_random_apollonian(k, 42);
            assert_eq!(
                (m.vertex_count(), m.edge_count(), m.face_count()),
                (4 + k, 6 + 3 * k, 4 + 2 * k)
            );
            assert!(m.faces().iter().all(|f| f.len() == 3));
        }
    }

    #[test]
    fn random_sequences_are_reproducible() {
        assert_eq!(StackSequence::random(10, 7), StackSequence::random(10, 7));
        assert_ne!(StackSequence::random(10, 7), StackSequence::random(10, 8));
    }

    #[test]
    fn bad_selector() {
        assert_eq!(
            generate_apollonian(&seq("0,6")),
            Err(ApollonianError::BadSelector {
                step: 1,
                index: 6,
                faces: 6
            })
        );
        assert!(matches!(
            "1,x".parse::<StackSequence>(),
            Err(ApollonianError::Parse(_))
        ));
    }

    #[test]
    fn recognition() {
        assert!(is_apollonian(&SimpleGraph::complete(4)));
        assert!(!is_apollonian(&corpus::octahedron().underlying_graph()));
        assert!(!is_apollonian(&corpus::cube().underlying_graph()));
        assert!(is_apollonian(
            &generate_apollonian(&seq("2")).unwrap().underlying_graph()
        ));
        assert!(!is_apollonian(&SimpleGraph::complete(5)));
        assert!(!is_apollonian(&SimpleGraph::complete(3)));
    }

    #[test]
    fn two_stacks_on_one_triangle_is_not_apollonian() {
        // K4 on 0..3 plus vertices 4 and 5 both joined to triangle {0,1,2}:
        // a 3-tree containing K_{3,3}
        let mut edges: Vec<(usize, usize)> = SimpleGraph::complete(4).edges().to_vec();
        for x in [4, 5] {
            edges.extend([(0, x), (1, x), (2, x)]);
        }
        let g = SimpleGraph::new(6, &edges).unwrap();
        assert!(!is_apollonian(&g));
    }

    #[test]
    fn bipyramid_triangles() {
        let g = generate_apollonian(&seq("0")).unwrap().underlying_graph();
        let ts = separating_triangles(&g);
        assert_eq!(ts.triangles.len(), 7);
        let sep: Vec<_> = ts.separating().collect();
        assert_eq!(sep.len(), 1);
        // the equator is the face of K4 that received the new vertex
        assert!(sep[0].vertices.iter().all(|&v| g.degree(v) == 4));
    }

    #[test]
    fn k4_and_prism_have_no_separating_triangle() {
        let ts = separating_triangles(&SimpleGraph::complete(4));
        assert_eq!(ts.triangles.len(), 4);
        assert_eq!(ts.separating().count(), 0);
        let ts = separating_triangles(&corpus::triangular_prism().underlying_graph());
        assert_eq!(ts.triangles.len(), 2);
        assert_eq!(ts.separating().count(), 0);
    }

    #[test]
    fn classification_base_case() {
        let r = check_edge_classification(&SimpleGraph::complete(4)).unwrap();
        assert!(r.pass);
        assert!(r
            .edges
            .iter()
            .all(|e| e.degree_three_endpoint && !e.in_separating_triangle));
        assert_eq!(
            check_edge_classification(&corpus::cube().underlying_graph()),
            Err(ApollonianError::NotApollonian)
        );
    }

    #[test]
    fn classification_fails_after_two_stacks() {
        // K4 on 1..4, stack 5 into 123, then 6 into 125. Edge {3,5} joins
        // two degree-4 vertices and its only triangles, 135 and 235, are
        // faces: deleting either leaves 2-4-6 or 1-4-6 connected.
        let g = SimpleGraph::from_labeled_edges(&[
            (1, 2),
            (1, 3),
            (1, 4),
            (2, 3),
            (2, 4),
            (3, 4),
            (5, 1),
            (5, 2),
            (5, 3),
            (6, 1),
            (6, 2),
            (6, 5),
        ])
        .unwrap();
        assert!(is_apollonian(&g));
        let r = check_edge_classification(&g).unwrap();
        assert!(!r.pass);
        let bad: Vec<[u64; 2]> = r
            .edges
            .iter()
            .filter(|e| !e.holds())
            .map(|e| e.edge)
            .collect();
        assert_eq!(bad, [[3, 5]]);
    }

    #[test]
    fn duals() {
        assert_eq!(apollonian_dual(&seq("")).unwrap().vertex_count(), 4);
        let prism = apollonian_dual(&seq("3")).unwrap();
        assert_eq!((prism.vertex_count(), prism.edge_count()), (6, 9));
        let two = apollonian_dual(&seq("0,5")).unwrap();
        assert_eq!((two.vertex_count(), two.edge_count()), (8, 12));
        assert!(two.underlying_graph().is_regular(3));
        assert!(!is_apollonian(&two.underlying_graph()));
    }
}
