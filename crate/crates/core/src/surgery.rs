//! Face augmentation and vertex truncation of 3-connected planar maps.
//!
//! Every surgery returns a freshly validated map with dense labels
//! `1..=n'` together with a [`Correspondence`] that records, in terms of
//! the input's labels, where each vertex, edge and face went.
//!
//! Vertex numbering of the output:
//! * augmentation: input vertex index `i` becomes label `i + 1`; the apex
//!   of the `j`-th augmented face gets label `n + 1 + j`;
//! * truncation: untouched vertices keep their relative order and come
//!   first, followed by one new vertex `w(v, e)` per dart leaving a
//!   truncated vertex, in dart order. For a complete truncation this makes
//!   `w(d)` carry label `d + 1`.
//!
//! The truncated map has two edge classes. `inherited` edges
//! `{w(v,e), w(v',e)}` are in bijection with the input edges (the first
//! class in the usual remark on truncations, `E_2` in the cover
//! translation argument); `corner` edges `{w(v,e), w(v,rho_v(e))}` run
//! around the former vertex (the second class there, `E_1` in the
//! translation argument).

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::GraphError;
use crate::planar_map::{Face, MapError, PlanarMap};

pub const CORRESPONDENCE_FORMAT: &str = "correspondence/v1";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SurgeryError {
    #[error("input map is not 3-connected")]
    NotThreeConnected,
    #[error("face is not a face of the map")]
    FaceNotInMap,
    #[error("vertex {0} is not in the map")]
    VertexNotInMap(u64),
    #[error("vertex {0} has degree {1}; truncation needs degree at least 3")]
    DegreeTooSmall(u64, usize),
    #[error(transparent)]
    Map(#[from] MapError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SurgeryKind {
    Augmentation,
    Truncation,
}

/// Where a vertex of the output came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VertexOrigin {
    /// `w(v, e)`: the new vertex on edge `e` (input edge index, endpoints
    /// by label) next to the truncated vertex `v`.
    Corner {
        vertex: u64,
        edge: usize,
        endpoints: [u64; 2],
    },
    /// `v_F`: the apex placed in input face `face`.
    Apex { face: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NewVertex {
    pub label: u64,
    pub origin: VertexOrigin,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeImage {
    pub edge: [u64; 2],
    pub image: [u64; 2],
}

/// `{w(v,e), w(v,e')}` with `e' = rho_v(e)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CornerEdge {
    pub vertex: u64,
    pub edge: [u64; 2],
    pub next_edge: [u64; 2],
    pub image: [u64; 2],
}

/// `{v_F, v}` added by augmenting face `face`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpokeEdge {
    pub face: usize,
    pub vertex: u64,
    pub image: [u64; 2],
}

/// The face `(w(v,e_1), ..., w(v,e_k))` replacing a truncated vertex, in
/// rotation order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexFace {
    pub vertex: u64,
    pub face: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FaceTarget {
    /// Boundary walk of the corresponding output face.
    Face(Vec<u64>),
    /// The apex vertex placed inside the face.
    Apex(u64),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceImage {
    pub face: usize,
    pub boundary: Vec<u64>,
    pub image: FaceTarget,
}

/// Bookkeeping that links an input map to the output of a surgery.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Correspondence {
    pub format: String,
    pub surgery: SurgeryKind,
    /// `[input label, output label]` for every vertex that survives.
    pub vertex_images: Vec<[u64; 2]>,
    pub new_vertices: Vec<NewVertex>,
    pub inherited_edges: Vec<EdgeImage>,
    pub corner_edges: Vec<CornerEdge>,
    pub spoke_edges: Vec<SpokeEdge>,
    pub vertex_faces: Vec<VertexFace>,
    pub face_faces: Vec<FaceImage>,
}

impl Correspondence {
    fn new(surgery: SurgeryKind) -> Self {
        Correspondence {
            format: CORRESPONDENCE_FORMAT.to_string(),
            surgery,
            vertex_images: Vec::new(),
            new_vertices: Vec::new(),
            inherited_edges: Vec::new(),
            corner_edges: Vec::new(),
            spoke_edges: Vec::new(),
            vertex_faces: Vec::new(),
            face_faces: Vec::new(),
        }
    }

    pub fn vertex_image(&self, label: u64) -> Option<u64> {
        self.vertex_images
            .iter()
            .find(|p| p[0] == label)
            .map(|p| p[1])
    }

    /// Output label of the apex placed in input face `face`.
    pub fn apex_of(&self, face: usize) -> Option<u64> {
        self.face_faces
            .iter()
            .find(|f| f.face == face)
            .and_then(|f| match f.image {
                FaceTarget::Apex(a) => Some(a),
                FaceTarget::Face(_) => None,
            })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("correspondence serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, MapError> {
        let c: Correspondence =
            serde_json::from_str(text).map_err(|e| MapError::Format(e.to_string()))?;
        if c.format != CORRESPONDENCE_FORMAT {
            return Err(MapError::Format(format!(
                "unsupported format {:?}",
                c.format
            )));
        }
        Ok(c)
    }
}

fn require_3_connected(m: &PlanarMap) -> Result<(), SurgeryError> {
    match m.underlying_graph().is_3_connected() {
        Ok(true) => Ok(()),
        Ok(false) | Err(GraphError::TooSmall(_)) => Err(SurgeryError::NotThreeConnected),
        Err(e) => unreachable!("unexpected graph error {e}"),
    }
}

fn sorted_pair(a: u64, b: u64) -> [u64; 2] {
    [a.min(b), a.max(b)]
}

fn edge_labels(m: &PlanarMap, e: usize) -> [u64; 2] {
    let (u, v) = m.edges()[e];
    [m.label(u), m.label(v)]
}

/// Augments the face `face` of `m`.
pub fn augment_face(
    m: &PlanarMap,
    face: &Face,
) -> Result<(PlanarMap, Correspondence), SurgeryError> {
    let first = *face.darts().first().ok_or(SurgeryError::FaceNotInMap)?;
    if first >= m.dart_count() {
        return Err(SurgeryError::FaceNotInMap);
    }
    let f = m.face_of(first);
    if m.faces()[f] != *face {
        return Err(SurgeryError::FaceNotInMap);
    }
    require_3_connected(m)?;
    Ok(augment_faces(m, &[f])?)
}

/// Augments every face of `m`.
pub fn complete_augmentation(m: &PlanarMap) -> Result<(PlanarMap, Correspondence), SurgeryError> {
    require_3_connected(m)?;
    let all: Vec<usize> = (0..m.face_count()).collect();
    Ok(augment_faces(m, &all)?)
}

/// Augments the listed faces (by index) without checking 3-connectivity.
pub(crate) fn augment_faces(
    m: &PlanarMap,
    chosen: &[usize],
) -> Result<(PlanarMap, Correspondence), MapError> {
    let n = m.vertex_count();
    let mut apex_of = vec![None; m.face_count()];
    for (j, &f) in chosen.iter().enumerate() {
        apex_of[f] = Some((n + 1 + j) as u64);
    }
    let new_label = |v: usize| v as u64 + 1;

    let mut lists: Vec<(u64, Vec<u64>)> = Vec::with_capacity(n + chosen.len());
    for v in 0..n {
        let mut rot = Vec::new();
        for d in m.darts_at(v) {
            rot.push(new_label(m.head(d)));
            // the corner between d and sigma(d) lies in the face of sigma(d)
            if let Some(a) = apex_of[m.face_of(m.sigma(d))] {
                rot.push(a);
            }
        }
        lists.push((new_label(v), rot));
    }
    for &f in chosen {
        let rot = m.faces()[f]
            .vertices()
            .iter()
            .rev()
            .map(|&v| new_label(v))
            .collect();
        lists.push((apex_of[f].expect("chosen face has an apex"), rot));
    }
    let out = PlanarMap::from_rotation(&lists)?;

    let mut corr = Correspondence::new(SurgeryKind::Augmentation);
    corr.vertex_images = (0..n).map(|v| [m.label(v), new_label(v)]).collect();
    for &f in chosen {
        corr.new_vertices.push(NewVertex {
            label: apex_of[f].unwrap(),
            origin: VertexOrigin::Apex { face: f },
        });
    }
    corr.inherited_edges = m
        .edges()
        .iter()
        .map(|&(u, v)| EdgeImage {
            edge: [m.label(u), m.label(v)],
            image: sorted_pair(new_label(u), new_label(v)),
        })
        .collect();
    for &f in chosen {
        let apex = apex_of[f].unwrap();
        for &v in m.faces()[f].vertices() {
            corr.spoke_edges.push(SpokeEdge {
                face: f,
                vertex: m.label(v),
                image: sorted_pair(new_label(v), apex),
            });
        }
    }
    for (f, face) in m.faces().iter().enumerate() {
        let image = match apex_of[f] {
            Some(a) => FaceTarget::Apex(a),
            None => {
                // vertex index v of the input is vertex index v of the output
                let set: BTreeSet<usize> = face.vertices().iter().copied().collect();
                let g = out.find_face_by_vertex_set(&set).ok_or_else(|| {
                    MapError::Format(format!("face {f} has no image after augmentation"))
                })?;
                FaceTarget::Face(out.face_labels(g))
            }
        };
        corr.face_faces.push(FaceImage {
            face: f,
            boundary: m.face_labels(f),
            image,
        });
    }
    Ok((out, corr))
}

/// Truncates the vertex labelled `v`.
pub fn truncate_vertex(m: &PlanarMap, v: u64) -> Result<(PlanarMap, Correspondence), SurgeryError> {
    let idx = m.index_of(v).ok_or(SurgeryError::VertexNotInMap(v))?;
    require_3_connected(m)?;
    let mut mask = vec![false; m.vertex_count()];
    mask[idx] = true;
    truncate_vertices(m, &mask)
}

/// Truncates every vertex of `m` in a single simultaneous pass.
pub fn complete_truncation(m: &PlanarMap) -> Result<(PlanarMap, Correspondence), SurgeryError> {
    require_3_connected(m)?;
    truncate_vertices(m, &vec![true; m.vertex_count()])
}

/// Complete truncation as a chain of single-vertex truncations, visiting
/// the input vertices (by label) in `order`.
pub fn complete_truncation_in_order(
    m: &PlanarMap,
    order: &[u64],
) -> Result<PlanarMap, SurgeryError> {
    let mut current_label: HashMap<u64, u64> = m.labels().iter().map(|&l| (l, l)).collect();
    let mut current = m.clone();
    for &v in order {
        let cur = *current_label
            .get(&v)
            .ok_or(SurgeryError::VertexNotInMap(v))?;
        let (next, corr) = truncate_vertex(&current, cur)?;
        current_label.remove(&v);
        for l in current_label.values_mut() {
            *l = corr.vertex_image(*l).expect("untruncated vertices survive");
        }
        current = next;
    }
    if let Some(&left) = current_label.keys().min() {
        return Err(SurgeryError::VertexNotInMap(left));
    }
    Ok(current)
}

fn truncate_vertices(
    m: &PlanarMap,
    truncated: &[bool],
) -> Result<(PlanarMap, Correspondence), SurgeryError> {
    let n = m.vertex_count();
    for (v, _) in truncated.iter().enumerate().filter(|(_, &t)| t) {
        if m.degree(v) < 3 {
            return Err(SurgeryError::DegreeTooSmall(m.label(v), m.degree(v)));
        }
    }
    let mut old_label = vec![0u64; n];
    let mut next = 1u64;
    for v in 0..n {
        if !truncated[v] {
            old_label[v] = next;
            next += 1;
        }
    }
    let mut w = vec![0u64; m.dart_count()];
    for d in 0..m.dart_count() {
        if truncated[m.tail(d)] {
            w[d] = next;
            next += 1;
        }
    }
    // image of the tail end of dart d
    let end = |d: usize| {
        if truncated[m.tail(d)] {
            w[d]
        } else {
            old_label[m.tail(d)]
        }
    };

    let mut lists: Vec<(u64, Vec<u64>)> = Vec::with_capacity(next as usize - 1);
    for v in 0..n {
        if !truncated[v] {
            lists.push((
                old_label[v],
                m.darts_at(v).map(|d| end(m.alpha(d))).collect(),
            ));
        }
    }
    for d in 0..m.dart_count() {
        if truncated[m.tail(d)] {
            lists.push((
                w[d],
                vec![end(m.alpha(d)), w[m.sigma(d)], w[m.sigma_inv(d)]],
            ));
        }
    }
    lists.sort_by_key(|(l, _)| *l);
    let out = PlanarMap::from_rotation(&lists)?;

    let mut corr = Correspondence::new(SurgeryKind::Truncation);
    corr.vertex_images = (0..n)
        .filter(|&v| !truncated[v])
        .map(|v| [m.label(v), old_label[v]])
        .collect();
    for d in 0..m.dart_count() {
        if truncated[m.tail(d)] {
            corr.new_vertices.push(NewVertex {
                label: w[d],
                origin: VertexOrigin::Corner {
                    vertex: m.label(m.tail(d)),
                    edge: d / 2,
                    endpoints: edge_labels(m, d / 2),
                },
            });
        }
    }
    corr.inherited_edges = (0..m.edge_count())
        .map(|e| EdgeImage {
            edge: edge_labels(m, e),
            image: sorted_pair(end(2 * e), end(2 * e + 1)),
        })
        .collect();
    for v in (0..n).filter(|&v| truncated[v]) {
        for d in m.darts_at(v) {
            let s = m.sigma(d);
            corr.corner_edges.push(CornerEdge {
                vertex: m.label(v),
                edge: edge_labels(m, d / 2),
                next_edge: edge_labels(m, s / 2),
                image: sorted_pair(w[d], w[s]),
            });
        }
        corr.vertex_faces.push(VertexFace {
            vertex: m.label(v),
            face: m.darts_at(v).map(|d| w[d]).collect(),
        });
    }
    for (f, face) in m.faces().iter().enumerate() {
        // output labels are 1..=n' in index order
        let set: BTreeSet<usize> = face
            .darts()
            .iter()
            .flat_map(|&d| [end(d), end(m.alpha(d))])
            .map(|l| l as usize - 1)
            .collect();
        let g = out
            .find_face_by_vertex_set(&set)
            .ok_or_else(|| MapError::Format(format!("face {f} has no image after truncation")))?;
        corr.face_faces.push(FaceImage {
            face: f,
            boundary: m.face_labels(f),
            image: FaceTarget::Face(out.face_labels(g)),
        });
    }
    Ok((out, corr))
}
