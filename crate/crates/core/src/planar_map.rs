//! Dart-based planar maps (rotation systems).
//!
//! A map on `E` edges has `2E` darts. The darts of edge `i` are `2i` and
//! `2i + 1`, where `2i` runs from the smaller vertex index to the larger
//! one, so the edge involution is `d ^ 1`. `sigma` sends a dart to the
//! next dart counterclockwise around its tail vertex.
//!
//! Faces are the orbits of `phi = sigma . alpha`, i.e. `phi(d) =
//! sigma(alpha(d))`. With a counterclockwise `sigma` every face is walked
//! clockwise. Faces are listed in ascending order of their minimum dart,
//! and each face's dart cycle starts at that minimum dart.
//!
//! Edges are numbered in lexicographic order of their `(min, max)` vertex
//! index pair, which matches [`SimpleGraph`] edge numbering.

use std::collections::{BTreeSet, HashMap, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::SimpleGraph;

pub const PLANAR_MAP_FORMAT: &str = "planar-map/v1";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MapError {
    #[error("map has no edges")]
    NoEdges,
    #[error("vertex {0} appears twice")]
    DuplicateVertex(u64),
    #[error("vertex {0} lists unknown neighbor {1}")]
    UnknownVertex(u64, u64),
    #[error("{0} lists {1} but {1} does not list {0}")]
    NonSymmetricAdjacency(u64, u64),
    #[error("not simple: {0}")]
    NotSimple(String),
    #[error("underlying graph is disconnected")]
    Disconnected,
    #[error("rotation system is not planar (Euler genus {genus})")]
    NonPlanarEmbedding { genus: i64 },
    #[error("odd Euler defect {0}: corrupted map")]
    OddEulerDefect(i64),
    #[error("dual would not be simple: {0}")]
    NotSimpleDual(String),
    #[error("bad map file: {0}")]
    Format(String),
}

/// A face: its dart cycle under `phi`, starting at the minimum dart.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Face {
    darts: Vec<usize>,
    vertices: Vec<usize>,
}

impl Face {
    pub fn darts(&self) -> &[usize] {
        &self.darts
    }

    /// Closed boundary walk as vertex indices (tails of the darts).
    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.darts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.darts.is_empty()
    }

    pub fn edges(&self) -> impl Iterator<Item = usize> + '_ {
        self.darts.iter().map(|d| d / 2)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanarMap {
    labels: Vec<u64>,
    edges: Vec<(usize, usize)>,
    sigma: Vec<usize>,
    sigma_inv: Vec<usize>,
    vertex_of: Vec<usize>,
    first_dart: Vec<usize>,
    faces: Vec<Face>,
    face_of: Vec<usize>,
}

impl PlanarMap {
    /// Builds and validates a map from per-vertex counterclockwise
    /// neighbor lists, given as `(label, rotation)` pairs. Vertex indices
    /// follow the input order.
    pub fn from_rotation(adjacency: &[(u64, Vec<u64>)]) -> Result<Self, MapError> {
        let n = adjacency.len();
        let mut index = HashMap::with_capacity(n);
        for (i, (label, _)) in adjacency.iter().enumerate() {
            if index.insert(*label, i).is_some() {
                return Err(MapError::DuplicateVertex(*label));
            }
        }
        let labels: Vec<u64> = adjacency.iter().map(|(l, _)| *l).collect();

        let mut rot: Vec<Vec<usize>> = Vec::with_capacity(n);
        let mut neighbor_sets: Vec<BTreeSet<usize>> = Vec::with_capacity(n);
        for (label, rotation) in adjacency {
            let u = index[label];
            let mut r = Vec::with_capacity(rotation.len());
            let mut set = BTreeSet::new();
            for nb in rotation {
                let w = *index.get(nb).ok_or(MapError::UnknownVertex(*label, *nb))?;
                if w == u {
                    return Err(MapError::NotSimple(format!("loop at {label}")));
                }
                if !set.insert(w) {
                    return Err(MapError::NotSimple(format!("parallel edges {label}-{nb}")));
                }
                r.push(w);
            }
            rot.push(r);
            neighbor_sets.push(set);
        }
        for u in 0..n {
            for &w in &neighbor_sets[u] {
                if !neighbor_sets[w].contains(&u) {
                    return Err(MapError::NonSymmetricAdjacency(labels[u], labels[w]));
                }
            }
        }

        let mut edges: Vec<(usize, usize)> = neighbor_sets
            .iter()
            .enumerate()
            .flat_map(|(u, s)| s.iter().filter(move |&&w| w > u).map(move |&w| (u, w)))
            .collect();
        edges.sort_unstable();
        if edges.is_empty() {
            return Err(MapError::NoEdges);
        }
        let edge_index: HashMap<(usize, usize), usize> =
            edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let dart = |t: usize, h: usize| 2 * edge_index[&(t.min(h), t.max(h))] + usize::from(t > h);

        let darts = 2 * edges.len();
        let mut sigma = vec![usize::MAX; darts];
        let mut vertex_of = vec![usize::MAX; darts];
        let mut first_dart = vec![usize::MAX; n];
        for (u, r) in rot.iter().enumerate() {
            if r.is_empty() {
                return Err(MapError::Disconnected);
            }
            let ds: Vec<usize> = r.iter().map(|&w| dart(u, w)).collect();
            for (k, &d) in ds.iter().enumerate() {
                sigma[d] = ds[(k + 1) % ds.len()];
                vertex_of[d] = u;
            }
            first_dart[u] = ds[0];
        }

        let map = Self::assemble(labels, edges, sigma, vertex_of, first_dart);
        if !map.is_connected() {
            return Err(MapError::Disconnected);
        }
        let genus = map.euler_genus()?;
        if genus != 0 {
            return Err(MapError::NonPlanarEmbedding { genus });
        }
        Ok(map)
    }

    fn assemble(
        labels: Vec<u64>,
        edges: Vec<(usize, usize)>,
        sigma: Vec<usize>,
        vertex_of: Vec<usize>,
        first_dart: Vec<usize>,
    ) -> Self {
        let mut sigma_inv = vec![0; sigma.len()];
        for (d, &s) in sigma.iter().enumerate() {
            sigma_inv[s] = d;
        }
        let mut map = PlanarMap {
            labels,
            edges,
            sigma,
            sigma_inv,
            vertex_of,
            first_dart,
            faces: Vec::new(),
            face_of: Vec::new(),
        };
        map.trace();
        map
    }

    fn trace(&mut self) {
        let darts = self.dart_count();
        let mut face_of = vec![usize::MAX; darts];
        let mut faces = Vec::new();
        for start in 0..darts {
            if face_of[start] != usize::MAX {
                continue;
            }
            let mut ds = Vec::new();
            let mut d = start;
            loop {
                face_of[d] = faces.len();
                ds.push(d);
                d = self.phi(d);
                if d == start {
                    break;
                }
            }
            let vertices = ds.iter().map(|&d| self.vertex_of[d]).collect();
            faces.push(Face {
                darts: ds,
                vertices,
            });
        }
        self.faces = faces;
        self.face_of = face_of;
    }

    fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(u) = queue.pop_front() {
            for d in self.darts_at(u) {
                let h = self.head(d);
                if !seen[h] {
                    seen[h] = true;
                    queue.push_back(h);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn dart_count(&self) -> usize {
        self.sigma.len()
    }

    pub fn labels(&self) -> &[u64] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> u64 {
        self.labels[v]
    }

    pub fn index_of(&self, label: u64) -> Option<usize> {
        self.labels.iter().position(|&l| l == label)
    }

    /// Edges as `(u, v)` vertex index pairs with `u < v`.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn alpha(&self, d: usize) -> usize {
        d ^ 1
    }

    pub fn sigma(&self, d: usize) -> usize {
        self.sigma[d]
    }

    pub fn sigma_inv(&self, d: usize) -> usize {
        self.sigma_inv[d]
    }

    pub fn phi(&self, d: usize) -> usize {
        self.sigma[d ^ 1]
    }

    pub fn tail(&self, d: usize) -> usize {
        self.vertex_of[d]
    }

    pub fn head(&self, d: usize) -> usize {
        self.vertex_of[d ^ 1]
    }

    /// Dart from `t` to `h`, if that edge exists.
    pub fn dart(&self, t: usize, h: usize) -> Option<usize> {
        let e = self.edges.binary_search(&(t.min(h), t.max(h))).ok()?;
        Some(2 * e + usize::from(t > h))
    }

    pub fn degree(&self, v: usize) -> usize {
        self.darts_at(v).count()
    }

    /// Darts leaving `v` in counterclockwise order, starting at the first
    /// neighbor of the rotation it was built from.
    pub fn darts_at(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        let start = self.first_dart[v];
        let mut cur = Some(start);
        std::iter::from_fn(move || {
            let d = cur?;
            let next = self.sigma[d];
            cur = (next != start).then_some(next);
            Some(d)
        })
    }

    /// Counterclockwise neighbor indices of `v`.
    pub fn rotation(&self, v: usize) -> Vec<usize> {
        self.darts_at(v).map(|d| self.head(d)).collect()
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face_of(&self, d: usize) -> usize {
        self.face_of[d]
    }

    /// Face boundary walk as vertex labels.
    pub fn face_labels(&self, f: usize) -> Vec<u64> {
        self.faces[f]
            .vertices
            .iter()
            .map(|&v| self.labels[v])
            .collect()
    }

    /// `(2 - (V - E + F)) / 2`.
    pub fn euler_genus(&self) -> Result<i64, MapError> {
        let chi = self.vertex_count() as i64 - self.edge_count() as i64 + self.face_count() as i64;
        let defect = 2 - chi;
        if defect % 2 != 0 {
            return Err(MapError::OddEulerDefect(defect));
        }
        Ok(defect / 2)
    }

    pub fn rotation_lists(&self) -> Vec<(u64, Vec<u64>)> {
        (0..self.vertex_count())
            .map(|v| {
                (
                    self.labels[v],
                    self.rotation(v)
                        .into_iter()
                        .map(|w| self.labels[w])
                        .collect(),
                )
            })
            .collect()
    }

    pub fn underlying_graph(&self) -> SimpleGraph {
        SimpleGraph::with_labels(self.labels.clone(), &self.edges)
            .expect("validated map has a simple underlying graph")
    }

    /// Same map with every rotation reversed.
    pub fn mirror(&self) -> PlanarMap {
        let first_dart = self.first_dart.clone();
        Self::assemble(
            self.labels.clone(),
            self.edges.clone(),
            self.sigma_inv.clone(),
            self.vertex_of.clone(),
            first_dart,
        )
    }

    /// Same map with vertex labels replaced (in vertex index order).
    pub fn relabeled(&self, labels: Vec<u64>) -> Result<PlanarMap, MapError> {
        assert_eq!(labels.len(), self.vertex_count());
        let lists: Vec<(u64, Vec<u64>)> = (0..self.vertex_count())
            .map(|v| {
                (
                    labels[v],
                    self.rotation(v).into_iter().map(|w| labels[w]).collect(),
                )
            })
            .collect();
        PlanarMap::from_rotation(&lists)
    }

    /// Planar dual. Dual vertex `f` (label `f + 1`) stands for face `f` of
    /// this map; its rotation lists the faces across the darts of `f` in
    /// face-walk order.
    pub fn dualize(&self) -> Result<PlanarMap, MapError> {
        let mut lists = Vec::with_capacity(self.face_count());
        for (f, face) in self.faces.iter().enumerate() {
            let mut seen = BTreeSet::new();
            let mut rot = Vec::with_capacity(face.len());
            for &d in &face.darts {
                let g = self.face_of[d ^ 1];
                if g == f {
                    return Err(MapError::NotSimpleDual(format!("face {f} borders itself")));
                }
                if !seen.insert(g) {
                    return Err(MapError::NotSimpleDual(format!(
                        "faces {f} and {g} share more than one edge"
                    )));
                }
                rot.push(g as u64 + 1);
            }
            lists.push((f as u64 + 1, rot));
        }
        PlanarMap::from_rotation(&lists)
    }

    /// Index of the face whose boundary vertex set equals `vertices`.
    pub fn find_face_by_vertex_set(&self, vertices: &BTreeSet<usize>) -> Option<usize> {
        self.faces.iter().position(|f| {
            f.len() == vertices.len() && f.vertices.iter().all(|v| vertices.contains(v))
        })
    }

    pub fn to_file(&self) -> PlanarMapFile {
        PlanarMapFile {
            format: PLANAR_MAP_FORMAT.to_string(),
            vertices: self
                .rotation_lists()
                .into_iter()
                .map(|(id, rotation)| VertexEntry { id, rotation })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("map file serializes")
    }

    pub fn from_json(text: &str) -> Result<PlanarMap, MapError> {
        let file: PlanarMapFile =
            serde_json::from_str(text).map_err(|e| MapError::Format(e.to_string()))?;
        file.into_map()
    }
}

/// `planar-map/v1` document.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlanarMapFile {
    pub format: String,
    pub vertices: Vec<VertexEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexEntry {
    pub id: u64,
    pub rotation: Vec<u64>,
}

impl PlanarMapFile {
    pub fn into_map(self) -> Result<PlanarMap, MapError> {
        if self.format != PLANAR_MAP_FORMAT {
            return Err(MapError::Format(format!(
                "unsupported format {:?}",
                self.format
            )));
        }
        if let Some(v) = self.vertices.iter().find(|v| v.id == 0) {
            return Err(MapError::Format(format!(
                "vertex id {} is not positive",
                v.id
            )));
        }
        let lists: Vec<(u64, Vec<u64>)> = self
            .vertices
            .into_iter()
            .map(|v| (v.id, v.rotation))
            .collect();
        PlanarMap::from_rotation(&lists)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k4() -> PlanarMap {
        PlanarMap::from_rotation(&[
            (1, vec![2, 3, 4]),
            (2, vec![1, 4, 3]),
            (3, vec![1, 2, 4]),
            (4, vec![1, 3, 2]),
        ])
        .unwrap()
    }

    #[test]
    fn k4_has_four_triangles() {
        let m = k4();
        assert_eq!(
            (m.vertex_count(), m.edge_count(), m.face_count()),
            (4, 6, 4)
        );
        assert!(m.faces().iter().all(|f| f.len() == 3));
        assert_eq!(m.euler_genus(), Ok(0));
    }

    /// Face count by walking vertex rotation lists directly: arriving at
    /// `v` from `u`, leave towards the successor of `u` in `v`'s rotation.
    fn oracle_face_count(rot: &[(u64, Vec<u64>)]) -> usize {
        let next = |u: u64, v: u64| {
            let r = &rot.iter().find(|(l, _)| *l == v).unwrap().1;
            let i = r.iter().position(|&x| x == u).unwrap();
            r[(i + 1) % r.len()]
        };
        let mut seen = std::collections::HashSet::new();
        let mut faces = 0;
        for (u, r) in rot {
            for &v in r {
                if seen.contains(&(*u, v)) {
                    continue;
                }
                faces += 1;
                let (mut a, mut b) = (*u, v);
                while seen.insert((a, b)) {
                    let c = next(a, b);
                    (a, b) = (b, c);
                }
            }
        }
        faces
    }

    #[test]
    fn reversed_rotation_is_rejected() {
        let rot = vec![
            (1, vec![2, 3, 4]),
            (2, vec![3, 4, 1]),
            (3, vec![1, 2, 4]),
            (4, vec![1, 3, 2]),
        ];
        // V - E + F = 4 - 6 + 2 = 0, so genus 1
        assert_eq!(oracle_face_count(&rot), 2);
        assert_eq!(
            PlanarMap::from_rotation(&rot),
            Err(MapError::NonPlanarEmbedding { genus: 1 })
        );
    }

    #[test]
    fn construction_errors() {
        assert_eq!(
            PlanarMap::from_rotation(&[(1, vec![2]), (2, vec![])]),
            Err(MapError::NonSymmetricAdjacency(1, 2))
        );
        assert!(matches!(
            PlanarMap::from_rotation(&[(1, vec![2, 2]), (2, vec![1, 1])]),
            Err(MapError::NotSimple(_))
        ));
        assert!(matches!(
            PlanarMap::from_rotation(&[(1, vec![1])]),
            Err(MapError::NotSimple(_))
        ));
        assert_eq!(
            PlanarMap::from_rotation(&[(1, vec![2]), (2, vec![1]), (3, vec![4]), (4, vec![3])]),
            Err(MapError::Disconnected)
        );
        assert_eq!(
            PlanarMap::from_rotation(&[(1, vec![2]), (1, vec![2])]),
            Err(MapError::DuplicateVertex(1))
        );
        assert_eq!(
            PlanarMap::from_rotation(&[(1, vec![7])]),
            Err(MapError::UnknownVertex(1, 7))
        );
    }

    #[test]
    fn every_dart_in_one_face() {
        let m = k4();
        let mut all: Vec<usize> = m.faces().iter().flat_map(|f| f.darts().to_vec()).collect();
        all.sort_unstable();
        assert_eq!(all, (0..12).collect::<Vec<_>>());
        let mins: Vec<usize> = m.faces().iter().map(|f| f.darts()[0]).collect();
        assert!(mins.windows(2).all(|w| w[0] < w[1]));
        for f in m.faces() {
            assert_eq!(f.darts()[0], *f.darts().iter().min().unwrap());
        }
    }

    #[test]
    fn dual_of_k4_is_k4() {
        let d = k4().dualize().unwrap();
        assert_eq!(
            (d.vertex_count(), d.edge_count(), d.face_count()),
            (4, 6, 4)
        );
        assert!((0..4).all(|v| d.degree(v) == 3));
    }

    #[test]
    fn json_round_trip() {
        let m = k4();
        let back = PlanarMap::from_json(&m.to_json()).unwrap();
        assert_eq!(back, m);
        let bad = r#"{"format":"planar-map/v2","vertices":[]}"#;
        assert!(matches!(
            PlanarMap::from_json(bad),
            Err(MapError::Format(_))
        ));
    }

    #[test]
    fn mirror_is_planar() {
        let m = k4().mirror();
        assert_eq!(m.euler_genus(), Ok(0));
        assert_eq!(m.face_count(), 4);
    }
}
