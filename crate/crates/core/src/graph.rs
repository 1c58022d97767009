//! Abstract undirected simple graphs.
//!
//! A [`SimpleGraph`] forgets any embedding. Vertices are dense indices
//! `0..n` carrying an external label; edges are unordered pairs stored
//! with the smaller index first and kept in sorted order, so the edge
//! index of `{u, v}` is stable and matches the edge numbering of a
//! [`PlanarMap`](crate::planar_map::PlanarMap) built over the same vertices.

use std::collections::{HashMap, VecDeque};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex index {0} is out of range")]
    VertexOutOfRange(usize),
    #[error("loop at vertex {0}")]
    Loop(u64),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(u64, u64),
    #[error("duplicate vertex label {0}")]
    DuplicateLabel(u64),
    #[error("graph has {0} vertices; at least 4 are required")]
    TooSmall(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleGraph {
    labels: Vec<u64>,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

impl SimpleGraph {
    /// Graph on `n` vertices labelled `1..=n`.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        Self::with_labels((1..=n as u64).collect(), edges)
    }

    pub fn with_labels(labels: Vec<u64>, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let n = labels.len();
        let mut seen = HashMap::with_capacity(n);
        for (i, &l) in labels.iter().enumerate() {
            if seen.insert(l, i).is_some() {
                return Err(GraphError::DuplicateLabel(l));
            }
        }
        let mut norm = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            if u >= n {
                return Err(GraphError::VertexOutOfRange(u));
            }
            if v >= n {
                return Err(GraphError::VertexOutOfRange(v));
            }
            if u == v {
                return Err(GraphError::Loop(labels[u]));
            }
            norm.push((u.min(v), u.max(v)));
        }
        norm.sort_unstable();
        if let Some(w) = norm.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateEdge(labels[w[0].0], labels[w[0].1]));
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &norm {
            adj[u].push(v);
            adj[v].push(u);
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        Ok(SimpleGraph {
            labels,
            edges: norm,
            adj,
        })
    }

    /// Builds a graph from edges given by label; vertices are numbered in
    /// ascending label order.
    pub fn from_labeled_edges(edges: &[(u64, u64)]) -> Result<Self, GraphError> {
        let mut labels: Vec<u64> = edges.iter().flat_map(|&(a, b)| [a, b]).collect();
        labels.sort_unstable();
        labels.dedup();
        let index: HashMap<u64, usize> = labels.iter().enumerate().map(|(i, &l)| (l, i)).collect();
        let idx: Vec<(usize, usize)> = edges.iter().map(|(a, b)| (index[a], index[b])).collect();
        Self::with_labels(labels, &idx)
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
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

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        self.edges.binary_search(&(u.min(v), u.max(v))).ok()
    }

    /// Edge index looked up by endpoint labels.
    pub fn edge_index_by_labels(&self, a: u64, b: u64) -> Option<usize> {
        let u = self.index_of(a)?;
        let v = self.index_of(b)?;
        if u == v {
            return None;
        }
        self.edge_index(u, v)
    }

    pub fn edge_labels(&self, e: usize) -> (u64, u64) {
        let (u, v) = self.edges[e];
        (self.labels[u], self.labels[v])
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.adj.iter().map(Vec::len).collect();
        d.sort_unstable();
        d
    }

    pub fn is_regular(&self, k: usize) -> bool {
        self.adj.iter().all(|a| a.len() == k)
    }

    pub fn is_connected(&self) -> bool {
        self.component_count_without(&vec![false; self.vertex_count()]) <= 1
    }

    /// Number of connected components after deleting the vertices flagged
    /// in `removed`.
    pub fn component_count_without(&self, removed: &[bool]) -> usize {
        let n = self.vertex_count();
        let mut seen = removed.to_vec();
        let mut queue = VecDeque::new();
        let mut components = 0;
        for s in 0..n {
            if seen[s] {
                continue;
            }
            components += 1;
            seen[s] = true;
            queue.push_back(s);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
        }
        components
    }

    /// True iff deleting any two vertices leaves the graph connected.
    ///
    /// Brute force over all vertex pairs; intended for graphs with a few
    /// dozen vertices.
    pub fn is_3_connected(&self) -> Result<bool, GraphError> {
        let n = self.vertex_count();
        if n < 4 {
            return Err(GraphError::TooSmall(n));
        }
        if !self.is_connected() {
            return Ok(false);
        }
        let mut removed = vec![false; n];
        for a in 0..n {
            removed[a] = true;
            for b in a + 1..n {
                removed[b] = true;
                let split = self.component_count_without(&removed) > 1;
                removed[b] = false;
                if split {
                    return Ok(false);
                }
            }
            removed[a] = false;
        }
        Ok(true)
    }

    /// Subgraph with one vertex deleted; remaining vertices keep their
    /// labels and relative order.
    pub fn without_vertex(&self, v: usize) -> SimpleGraph {
        let remap = |x: usize| if x > v { x - 1 } else { x };
        let labels = self
            .labels
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != v)
            .map(|(_, &l)| l)
            .collect();
        let edges: Vec<(usize, usize)> = self
            .edges
            .iter()
            .filter(|&&(a, b)| a != v && b != v)
            .map(|&(a, b)| (remap(a), remap(b)))
            .collect();
        SimpleGraph::with_labels(labels, &edges).expect("subgraph of a simple graph is simple")
    }

    pub fn complete(n: usize) -> SimpleGraph {
        let edges: Vec<(usize, usize)> = (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
            .collect();
        SimpleGraph::new(n, &edges).expect("complete graph is simple")
    }

    pub fn complete_bipartite(a: usize, b: usize) -> SimpleGraph {
        let edges: Vec<(usize, usize)> = (0..a)
            .flat_map(|i| (0..b).map(move |j| (i, a + j)))
            .collect();
        SimpleGraph::new(a + b, &edges).expect("complete bipartite graph is simple")
    }
}
