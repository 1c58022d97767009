//! Canonical codes and isomorphism tests for maps and small graphs.
//!
//! Map codes are the lexicographic minimum, over every start dart and both
//! global orientations (`sigma` and `sigma^-1`), of a BFS relabelling that
//! lists each vertex's neighbours around its rotation. Reflection is part
//! of the minimisation, so a map and its mirror share a code.
//!
//! Graph codes minimise an adjacency encoding over breadth-first vertex
//! orderings, with branch and bound on the partial code. Colour refinement
//! fixes the root class and the order in which neighbours are visited, so
//! only vertices of equal colour are branched over. Both encodings start with a version byte.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::graph::SimpleGraph;
use crate::planar_map::{MapError, PlanarMap};
use crate::surgery::{self, FaceTarget, SurgeryError};

const MAP_CODE_VERSION: u8 = 1;
const GRAPH_CODE_VERSION: u8 = 3;
const ROW_END: u32 = u32::MAX;

/// Largest graph accepted by [`graph_canonical_code`].
pub const MAX_GRAPH_VERTICES: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IsoError {
    #[error("graph has {0} vertices, above the limit of {MAX_GRAPH_VERTICES}")]
    TooLarge(usize),
    #[error(transparent)]
    Surgery(#[from] SurgeryError),
    #[error(transparent)]
    Map(#[from] MapError),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalCode(Vec<u8>);

impl CanonicalCode {
    fn encode(version: u8, words: &[u32]) -> Self {
        let mut bytes = Vec::with_capacity(1 + 4 * words.len());
        bytes.push(version);
        for w in words {
            bytes.extend_from_slice(&w.to_be_bytes());
        }
        CanonicalCode(bytes)
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

pub fn map_canonical_code(m: &PlanarMap) -> CanonicalCode {
    let mut best: Option<Vec<u32>> = None;
    for start in 0..m.dart_count() {
        for forward in [true, false] {
            if let Some(code) = bfs_code(m, start, forward, best.as_deref()) {
                best = Some(code);
            }
        }
    }
    CanonicalCode::encode(MAP_CODE_VERSION, &best.expect("maps have darts"))
}

/// Code of the BFS relabelling from `start`; `None` as soon as it is
/// known to exceed `bound`.
fn bfs_code(m: &PlanarMap, start: usize, forward: bool, bound: Option<&[u32]>) -> Option<Vec<u32>> {
    let n = m.vertex_count();
    let turn = |d: usize| if forward { m.sigma(d) } else { m.sigma_inv(d) };
    let mut number = vec![0u32; n];
    let mut entry = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    let mut code = Vec::with_capacity(2 + n + m.dart_count());
    code.push(n as u32);
    code.push(m.edge_count() as u32);
    number[m.tail(start)] = 1;
    entry[m.tail(start)] = start;
    order.push(m.tail(start));
    let mut less = false;
    let mut i = 0;
    while i < order.len() {
        let v = order[i];
        let first = entry[v];
        let mut d = first;
        loop {
            let h = m.head(d);
            if number[h] == 0 {
                order.push(h);
                number[h] = order.len() as u32;
                entry[h] = m.alpha(d);
            }
            code.push(number[h]);
            d = turn(d);
            if d == first {
                break;
            }
        }
        code.push(0);
        if let (false, Some(b)) = (less, bound) {
            let k = code.len().min(b.len());
            match code[..k].cmp(&b[..k]) {
                Ordering::Greater => return None,
                Ordering::Less => less = true,
                Ordering::Equal => {}
            }
        }
        i += 1;
    }
    match bound {
        Some(b) if !less && code.as_slice() >= b => None,
        _ => Some(code),
    }
}

pub fn maps_isomorphic(a: &PlanarMap, b: &PlanarMap) -> bool {
    a.vertex_count() == b.vertex_count()
        && a.edge_count() == b.edge_count()
        && map_canonical_code(a) == map_canonical_code(b)
}

/// Stable colour refinement seeded with degrees. Colours are ranks of
/// value signatures, so they do not depend on vertex numbering.
fn refine_colors(g: &SimpleGraph) -> Vec<u32> {
    let n = g.vertex_count();
    let mut color: Vec<u32> = (0..n).map(|v| g.degree(v) as u32).collect();
    let mut classes = 0;
    loop {
        let sigs: Vec<(u32, Vec<u32>)> = (0..n)
            .map(|v| {
                let mut around: Vec<u32> = g.neighbors(v).iter().map(|&w| color[w]).collect();
                around.sort_unstable();
                (color[v], around)
            })
            .collect();
        let mut ranked = sigs.clone();
        ranked.sort();
        ranked.dedup();
        color = sigs
            .iter()
            .map(|s| ranked.binary_search(s).unwrap() as u32)
            .collect();
        if ranked.len() == classes {
            return color;
        }
        classes = ranked.len();
    }
}

struct GraphSearch<'a> {
    g: &'a SimpleGraph,
    color: Vec<u32>,
    order: Vec<usize>,
    pos: Vec<usize>,
    code: Vec<u32>,
    marks: Vec<usize>,
    best: Option<Vec<u32>>,
}

impl GraphSearch<'_> {
    /// Appends `v` and its row; false if the partial code already loses.
    fn push(&mut self, v: usize) -> bool {
        let i = self.order.len();
        self.marks.push(self.code.len());
        self.pos[v] = i;
        self.order.push(v);
        self.code.push(self.color[v]);
        let mut earlier: Vec<u32> = self
            .g
            .neighbors(v)
            .iter()
            .filter(|&&w| self.pos[w] < i)
            .map(|&w| self.pos[w] as u32)
            .collect();
        earlier.sort_unstable();
        self.code.extend(earlier);
        self.code.push(ROW_END);
        match &self.best {
            Some(b) => {
                let k = self.code.len().min(b.len());
                self.code[..k] <= b[..k]
            }
            None => true,
        }
    }

    fn pop(&mut self) {
        let v = self.order.pop().expect("non-empty order");
        self.pos[v] = usize::MAX;
        let mark = self.marks.pop().expect("one mark per vertex");
        self.code.truncate(mark);
    }

    fn run(&mut self, head: usize) {
        let n = self.g.vertex_count();
        if self.order.len() == n {
            if self.best.as_ref().is_none_or(|b| self.code < *b) {
                self.best = Some(self.code.clone());
            }
            return;
        }
        if head == self.order.len() {
            // new component: root at any unvisited vertex of least colour
            let unvisited = (0..n).filter(|&v| self.pos[v] == usize::MAX);
            let min = unvisited.clone().map(|v| self.color[v]).min().unwrap();
            let roots: Vec<usize> = unvisited.filter(|&v| self.color[v] == min).collect();
            for r in roots {
                if self.push(r) {
                    self.run(head);
                }
                self.pop();
            }
            return;
        }
        let u = self.order[head];
        let pending: Vec<usize> = self
            .g
            .neighbors(u)
            .iter()
            .copied()
            .filter(|&w| self.pos[w] == usize::MAX)
            .collect();
        let Some(min) = pending.iter().map(|&w| self.color[w]).min() else {
            self.run(head + 1);
            return;
        };
        // neighbours are visited in colour order; only ties branch
        let ties: Vec<usize> = pending
            .into_iter()
            .filter(|&w| self.color[w] == min)
            .collect();
        for x in ties {
            if self.push(x) {
                self.run(head);
            }
            self.pop();
        }
    }
}

pub fn graph_canonical_code(g: &SimpleGraph) -> Result<CanonicalCode, IsoError> {
    let n = g.vertex_count();
    if n > MAX_GRAPH_VERTICES {
        return Err(IsoError::TooLarge(n));
    }
    let mut search = GraphSearch {
        g,
        color: refine_colors(g),
        order: Vec::with_capacity(n),
        pos: vec![usize::MAX; n],
        code: vec![n as u32, g.edge_count() as u32],
        marks: Vec::with_capacity(n),
        best: None,
    };
    if n > 0 {
        search.run(0);
    }
    let words = search.best.unwrap_or(search.code);
    Ok(CanonicalCode::encode(GRAPH_CODE_VERSION, &words))
}

pub fn graphs_isomorphic(a: &SimpleGraph, b: &SimpleGraph) -> Result<bool, IsoError> {
    if a.vertex_count() != b.vertex_count()
        || a.edge_count() != b.edge_count()
        || a.degree_sequence() != b.degree_sequence()
    {
        return Ok(false);
    }
    Ok(graph_canonical_code(a)? == graph_canonical_code(b)?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SideCounts {
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
}

impl SideCounts {
    fn of(m: &PlanarMap) -> Self {
        SideCounts {
            vertices: m.vertex_count(),
            edges: m.edge_count(),
            faces: m.face_count(),
        }
    }
}

/// Outcome of comparing the augmented dual with the dual of the truncation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SquareReport {
    /// Complete augmentation of the dual.
    pub augmented_dual: SideCounts,
    /// Dual of the complete truncation.
    pub truncated_dual: SideCounts,
    pub augmented_dual_code: String,
    pub truncated_dual_code: String,
    pub codes_equal: bool,
    /// Explicit vertex bijection, `[augmented-dual label, truncated-dual label]`.
    pub bijection: Vec<[u64; 2]>,
    pub bijection_is_isomorphism: bool,
    pub isomorphic: bool,
}

/// Builds both corners of the duality/augmentation/truncation square and
/// compares them by code and by the explicit map `w_v -> u_v`, `w_F -> u_F`.
pub fn verify_square(m: &PlanarMap) -> Result<SquareReport, IsoError> {
    let dual = m.dualize()?;
    let (lhs, aug) = surgery::complete_augmentation(&dual)?;
    let (trunc, tcorr) = surgery::complete_truncation(m)?;
    let rhs = trunc.dualize()?;

    // Left side. Dual vertex f + 1 is face f of m; dual faces are the
    // vertex stars of m.
    let lhs_of_face: Vec<u64> = (0..m.face_count())
        .map(|f| {
            aug.vertex_image(f as u64 + 1)
                .expect("dual vertex survives augmentation")
        })
        .collect();
    let star_of: HashMap<BTreeSet<usize>, usize> = (0..m.vertex_count())
        .map(|v| (m.darts_at(v).map(|d| m.face_of(d)).collect(), v))
        .collect();
    let mut lhs_of_vertex = vec![0u64; m.vertex_count()];
    for (j, face) in dual.faces().iter().enumerate() {
        let faces_of_m: BTreeSet<usize> = face.vertices().iter().copied().collect();
        let v = *star_of
            .get(&faces_of_m)
            .ok_or_else(|| MapError::Format(format!("dual face {j} matches no vertex star")))?;
        lhs_of_vertex[v] = aug.apex_of(j).expect("every dual face is augmented");
    }

    // Right side. Vertex k + 1 of the dual is face k of the truncation.
    let face_index = |labels: &[u64]| -> Result<u64, MapError> {
        let set: BTreeSet<usize> = labels.iter().map(|&l| trunc.index_of(l).unwrap()).collect();
        trunc
            .find_face_by_vertex_set(&set)
            .map(|k| k as u64 + 1)
            .ok_or_else(|| MapError::Format("correspondence names a non-face".into()))
    };
    let mut rhs_of_vertex = vec![0u64; m.vertex_count()];
    for vf in &tcorr.vertex_faces {
        rhs_of_vertex[m.index_of(vf.vertex).unwrap()] = face_index(&vf.face)?;
    }
    let mut rhs_of_face = vec![0u64; m.face_count()];
    for ff in &tcorr.face_faces {
        if let FaceTarget::Face(b) = &ff.image {
            rhs_of_face[ff.face] = face_index(b)?;
        }
    }

    let mut bijection: Vec<[u64; 2]> = (0..m.vertex_count())
        .map(|v| [lhs_of_vertex[v], rhs_of_vertex[v]])
        .chain((0..m.face_count()).map(|f| [lhs_of_face[f], rhs_of_face[f]]))
        .collect();
    bijection.sort_unstable();

    let phi: HashMap<u64, u64> = bijection.iter().map(|p| (p[0], p[1])).collect();
    let targets: BTreeSet<u64> = phi.values().copied().collect();
    let lg = lhs.underlying_graph();
    let rg = rhs.underlying_graph();
    let bijective = phi.len() == lhs.vertex_count()
        && targets.len() == rhs.vertex_count()
        && targets.iter().all(|&t| rg.index_of(t).is_some());
    let bijection_is_isomorphism = bijective
        && lg.edge_count() == rg.edge_count()
        && lg.edges().iter().all(|&(a, b)| {
            rg.edge_index_by_labels(phi[&lg.label(a)], phi[&lg.label(b)])
                .is_some()
        });

    let lc = map_canonical_code(&lhs);
    let rc = map_canonical_code(&rhs);
    let codes_equal = lc == rc;
    Ok(SquareReport {
        augmented_dual: SideCounts::of(&lhs),
        truncated_dual: SideCounts::of(&rhs),
        augmented_dual_code: lc.to_hex(),
        truncated_dual_code: rc.to_hex(),
        codes_equal,
        bijection,
        bijection_is_isomorphism,
        isomorphic: codes_equal && bijection_is_isomorphism,
    })
}
