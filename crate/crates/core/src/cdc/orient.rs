use serde::Serialize;

use super::{validate_cover, CdcError, Circuit, CircuitDoubleCover};
use crate::graph::SimpleGraph;

/// One dart list per circuit, aligned with the circuits of the cover it
/// orients. Dart `2e` runs along edge `e` from its lower-index endpoint.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct OrientedCover {
    parts: Vec<Vec<usize>>,
}

impl OrientedCover {
    pub fn new(parts: Vec<Vec<usize>>) -> Self {
        let parts = parts
            .into_iter()
            .map(|mut p| {
                p.sort_unstable();
                p
            })
            .collect();
        OrientedCover { parts }
    }

    pub fn parts(&self) -> &[Vec<usize>] {
        &self.parts
    }

    /// Darts as `[tail, head]` label pairs.
    pub fn label_parts(&self, g: &SimpleGraph) -> Vec<Vec<[u64; 2]>> {
        self.parts
            .iter()
            .map(|p| p.iter().map(|&d| dart_labels(g, d)).collect())
            .collect()
    }
}

pub(crate) fn dart_ends(g: &SimpleGraph, d: usize) -> (usize, usize) {
    let (u, v) = g.edges()[d / 2];
    if d.is_multiple_of(2) {
        (u, v)
    } else {
        (v, u)
    }
}

pub(crate) fn dart_labels(g: &SimpleGraph, d: usize) -> [u64; 2] {
    let (t, h) = dart_ends(g, d);
    [g.label(t), g.label(h)]
}

/// Checks that `witness` orients `cover`: every dart is used exactly once,
/// part `i` uses exactly the edges of circuit `i` (so never both darts of
/// an edge), and every part is balanced at every vertex.
pub fn validate_oriented(
    g: &SimpleGraph,
    cover: &CircuitDoubleCover,
    witness: &OrientedCover,
) -> Result<(), String> {
    if cover.len() != witness.parts.len() {
        return Err(format!(
            "{} circuits but {} oriented parts",
            cover.len(),
            witness.parts.len()
        ));
    }
    let mut used = vec![false; 2 * g.edge_count()];
    let n = g.vertex_count();
    for (i, (c, p)) in cover.circuits().iter().zip(&witness.parts).enumerate() {
        let mut edges: Vec<usize> = p.iter().map(|d| d / 2).collect();
        edges.sort_unstable();
        if edges != c.edges() {
            return Err(format!(
                "part {i} does not traverse exactly the edges of its circuit"
            ));
        }
        let mut bal = vec![0i64; n];
        for &d in p {
            if d >= used.len() || used[d] {
                return Err(format!("dart {d} used twice or out of range"));
            }
            used[d] = true;
            let (t, h) = dart_ends(g, d);
            bal[t] += 1;
            bal[h] -= 1;
        }
        if let Some(v) = bal.iter().position(|&b| b != 0) {
            return Err(format!("part {i} is unbalanced at vertex {}", g.label(v)));
        }
    }
    if let Some(d) = used.iter().position(|&u| !u) {
        let [t, h] = dart_labels(g, d);
        return Err(format!("dart {t}->{h} is not used"));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", content = "witness", rename_all = "snake_case")]
pub enum Orientability {
    Orientable(OrientedCover),
    NotOrientable,
}

impl Orientability {
    pub fn is_orientable(&self) -> bool {
        matches!(self, Orientability::Orientable(_))
    }

    pub fn witness(&self) -> Option<&OrientedCover> {
        match self {
            Orientability::Orientable(w) => Some(w),
            Orientability::NotOrientable => None,
        }
    }
}

/// Decides whether the circuits of a valid cover can be oriented so that
/// each edge is traversed once in each direction.
///
/// Every edge lies in exactly two circuits, so an orientation is one bit
/// per edge: the direction taken by its first circuit (the second takes
/// the other). The bits are searched depth first, pruning whenever some
/// circuit's imbalance at a vertex exceeds its unassigned edges there.
pub fn check_orientability(
    g: &SimpleGraph,
    cover: &CircuitDoubleCover,
) -> Result<Orientability, CdcError> {
    let check = validate_cover(g, cover.circuits());
    if !check.valid {
        return Err(CdcError::InvalidCover(format!("{check:?}")));
    }
    let n = g.vertex_count();
    let m = g.edge_count();
    let k = cover.len();
    let mut owners = vec![Vec::with_capacity(2); m];
    for (i, c) in cover.circuits().iter().enumerate() {
        for &e in c.edges() {
            owners[e].push(i);
        }
    }
    let mut rem = vec![0i32; k * n];
    for (i, c) in cover.circuits().iter().enumerate() {
        for &e in c.edges() {
            let (u, v) = g.edges()[e];
            rem[i * n + u] += 1;
            rem[i * n + v] += 1;
        }
    }
    let order = closing_edge_order(g);
    let mut search = OrientSearch {
        g,
        n,
        owners: &owners,
        order: &order,
        bal: vec![0; k * n],
        rem,
        bits: vec![0; m],
    };
    if !search.run(0) {
        return Ok(Orientability::NotOrientable);
    }
    let mut parts = vec![Vec::new(); k];
    for e in 0..m {
        let b = search.bits[e] as usize;
        parts[owners[e][0]].push(2 * e + b);
        parts[owners[e][1]].push(2 * e + 1 - b);
    }
    Ok(Orientability::Orientable(OrientedCover::new(parts)))
}

struct OrientSearch<'a> {
    g: &'a SimpleGraph,
    n: usize,
    owners: &'a [Vec<usize>],
    order: &'a [usize],
    bal: Vec<i32>,
    rem: Vec<i32>,
    bits: Vec<u8>,
}

impl OrientSearch<'_> {
    fn apply(&mut self, e: usize, bit: u8, sign: i32) {
        let (u, v) = self.g.edges()[e];
        let (a, b) = (self.owners[e][0], self.owners[e][1]);
        // circuit a runs u->v when bit == 0, circuit b the opposite way
        let s = if bit == 0 { 1 } else { -1 } * sign;
        let n = self.n;
        self.bal[a * n + u] += s;
        self.bal[a * n + v] -= s;
        self.bal[b * n + u] -= s;
        self.bal[b * n + v] += s;
        for i in [a * n + u, a * n + v, b * n + u, b * n + v] {
            self.rem[i] -= sign;
        }
    }

    fn feasible(&self, e: usize) -> bool {
        let (u, v) = self.g.edges()[e];
        let n = self.n;
        self.owners[e]
            .iter()
            .flat_map(|&c| [c * n + u, c * n + v])
            .all(|i| self.bal[i].abs() <= self.rem[i])
    }

    fn run(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let e = self.order[depth];
        for bit in 0..2u8 {
            self.apply(e, bit, 1);
            if self.feasible(e) {
                self.bits[e] = bit;
                if self.run(depth + 1) {
                    return true;
                }
            }
            self.apply(e, bit, -1);
        }
        false
    }
}

/// Edges in an order that finishes vertices early: breadth first from
/// vertex 0, each vertex contributing its not-yet-listed edges.
pub(crate) fn closing_edge_order(g: &SimpleGraph) -> Vec<usize> {
    let n = g.vertex_count();
    let mut seen = vec![false; n];
    let mut listed = vec![false; g.edge_count()];
    let mut order = Vec::with_capacity(g.edge_count());
    let mut queue = std::collections::VecDeque::new();
    for root in 0..n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        queue.push_back(root);
        while let Some(u) = queue.pop_front() {
            for &w in g.neighbors(u) {
                let e = g.edge_index(u, w).expect("neighbour edge");
                if !listed[e] {
                    listed[e] = true;
                    order.push(e);
                }
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    order
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GenusReport {
    pub vertices: usize,
    pub edges: usize,
    pub circuits: usize,
    pub euler_characteristic: i64,
    /// Present only when the cover is orientable.
    pub genus: Option<i64>,
    pub orientation: Option<OrientedCover>,
}

/// Genus of the orientable surface obtained by gluing one disc along each
/// circuit: `2 - 2g = V - E + k`.
pub fn genus(g: &SimpleGraph, cover: &CircuitDoubleCover) -> Result<GenusReport, CdcError> {
    let orientation = check_orientability(g, cover)?;
    let chi = g.vertex_count() as i64 - g.edge_count() as i64 + cover.len() as i64;
    if chi % 2 != 0 {
        return Err(CdcError::OddCharacteristic(chi));
    }
    let witness = orientation.witness().cloned();
    Ok(GenusReport {
        vertices: g.vertex_count(),
        edges: g.edge_count(),
        circuits: cover.len(),
        euler_characteristic: chi,
        genus: witness.as_ref().map(|_| (2 - chi) / 2),
        orientation: witness,
    })
}

/// The circuits of `cover` traversed by `witness`, rebuilt from the darts.
pub(crate) fn circuits_of(witness: &OrientedCover) -> Vec<Circuit> {
    witness
        .parts
        .iter()
        .map(|p| Circuit::new(p.iter().map(|d| d / 2).collect()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cdc::facial_cover;
    use crate::corpus;

    fn cover_of_walks(g: &SimpleGraph, walks: &[&[u64]]) -> CircuitDoubleCover {
        CircuitDoubleCover::new(
            walks
                .iter()
                .map(|w| Circuit::from_walk(g, w).unwrap())
                .collect(),
        )
    }

    #[test]
    fn facial_covers_have_genus_zero() {
        for (name, m) in corpus::named_fixtures() {
            let g = m.underlying_graph();
            let (cover, _) = facial_cover(&m);
            let report = genus(&g, &cover).unwrap();
            assert_eq!(report.genus, Some(0), "{name}");
            let w = report.orientation.unwrap();
            assert_eq!(validate_oriented(&g, &cover, &w), Ok(()), "{name}");
        }
    }

    #[test]
    fn k222_paper_cover_genus() {
        let g = corpus::k222().underlying_graph();
        let cover = cover_of_walks(
            &g,
            &[
                &[1, 2, 3, 1, 4, 5],
                &[1, 2, 5, 1, 3, 4],
                &[6, 2, 3, 6, 4, 5],
                &[6, 2, 5, 6, 3, 4],
            ],
        );
        let report = genus(&g, &cover).unwrap();
        // 6 - 12 + 4 = -2
        assert_eq!(report.euler_characteristic, -2);
        assert_eq!(report.genus, Some(2));
        assert_eq!(
            validate_oriented(&g, &cover, report.orientation.as_ref().unwrap()),
            Ok(())
        );
    }

    #[test]
    fn odd_characteristic_is_refused() {
        // K4 covered by its three 4-cycles: 4 - 6 + 3 = 1
        let g = SimpleGraph::complete(4);
        let cover = cover_of_walks(&g, &[&[1, 2, 3, 4], &[1, 3, 4, 2], &[1, 4, 2, 3]]);
        assert!(validate_cover(&g, cover.circuits()).valid);
        assert_eq!(
            check_orientability(&g, &cover).unwrap(),
            Orientability::NotOrientable
        );
        assert_eq!(genus(&g, &cover), Err(CdcError::OddCharacteristic(1)));
    }

    #[test]
    fn invalid_cover_is_an_error() {
        let g = SimpleGraph::complete(4);
        let cover = cover_of_walks(&g, &[&[1, 2, 3]]);
        assert!(matches!(
            check_orientability(&g, &cover),
            Err(CdcError::InvalidCover(_))
        ));
    }

    #[test]
    fn even_characteristic_but_not_orientable() {
        // some cover of the prism has even characteristic yet no orientation
        let m = corpus::triangular_prism();
        let g = m.underlying_graph();
        let all =
            crate::cdc::enumerate_covers(&g, false, &crate::cdc::EnumerationLimits::sequential())
                .unwrap();
        let found = all.covers.iter().any(|c| {
            let chi = g.vertex_count() as i64 - g.edge_count() as i64 + c.cover.len() as i64;
            chi % 2 == 0 && c.witness.is_none()
        });
        assert!(
            found,
            "the prism has a non-orientable cover of even characteristic"
        );
    }
}
