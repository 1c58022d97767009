use serde::{Deserialize, Serialize};

use super::{canonicalize, CdcError, Circuit, CircuitDoubleCover, OrientedCover};
use crate::graph::SimpleGraph;

pub const COVER_FORMAT: &str = "cover/v1";

/// `cover/v1`: circuits as lists of `[u, v]` label pairs, plus an optional
/// orientation as one list of `[tail, head]` darts per circuit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverFile {
    pub format: String,
    #[serde(default)]
    pub host: String,
    pub circuits: Vec<Vec<[u64; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orientation: Option<Vec<Vec<[u64; 2]>>>,
}

impl CoverFile {
    pub fn new(
        host: &str,
        g: &SimpleGraph,
        cover: &CircuitDoubleCover,
        witness: Option<&OrientedCover>,
    ) -> Self {
        CoverFile {
            format: COVER_FORMAT.to_string(),
            host: host.to_string(),
            circuits: cover.circuits().iter().map(|c| c.label_pairs(g)).collect(),
            orientation: witness.map(|w| w.label_parts(g)),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("cover serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, CdcError> {
        let f: CoverFile =
            serde_json::from_str(text).map_err(|e| CdcError::Format(e.to_string()))?;
        if f.format != COVER_FORMAT {
            return Err(CdcError::Format(format!(
                "unsupported format {:?}",
                f.format
            )));
        }
        Ok(f)
    }

    /// Resolves the labels against `g`. Circuits are not validated here.
    pub fn resolve(
        &self,
        g: &SimpleGraph,
    ) -> Result<(CircuitDoubleCover, Option<OrientedCover>), CdcError> {
        let circuits = self
            .circuits
            .iter()
            .map(|c| {
                let pairs: Vec<(u64, u64)> = c.iter().map(|p| (p[0], p[1])).collect();
                Circuit::from_label_pairs(g, &pairs)
            })
            .collect::<Result<Vec<_>, _>>()?;
        let Some(orientation) = &self.orientation else {
            return Ok((CircuitDoubleCover::new(circuits), None));
        };
        if orientation.len() != circuits.len() {
            return Err(CdcError::Format(
                "orientation and circuits differ in length".into(),
            ));
        }
        let parts = orientation
            .iter()
            .map(|part| {
                part.iter()
                    .map(|&[t, h]| {
                        let e = g
                            .edge_index_by_labels(t, h)
                            .ok_or_else(|| CdcError::UnknownEdge(format!("{{{t}, {h}}}")))?;
                        Ok(if g.label(g.edges()[e].0) == t {
                            2 * e
                        } else {
                            2 * e + 1
                        })
                    })
                    .collect::<Result<Vec<_>, CdcError>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        let (cover, w) = canonicalize(circuits, parts);
        Ok((cover, Some(w)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cdc::facial_cover;
    use crate::corpus;

    #[test]
    fn round_trip() {
        let m = corpus::cube();
        let g = m.underlying_graph();
        let (cover, w) = facial_cover(&m);
        let text = CoverFile::new("cube", &g, &cover, Some(&w)).to_json();
        let (back, bw) = CoverFile::from_json(&text).unwrap().resolve(&g).unwrap();
        assert_eq!(back, cover);
        assert_eq!(bw, Some(w));
    }

    #[test]
    fn rejects_other_formats_and_unknown_edges() {
        assert!(matches!(
            CoverFile::from_json(r#"{"format":"cover/v9","circuits":[]}"#),
            Err(CdcError::Format(_))
        ));
        let g = corpus::k222().underlying_graph();
        let f = CoverFile::from_json(r#"{"format":"cover/v1","circuits":[[[1,6]]]}"#).unwrap();
        assert!(matches!(f.resolve(&g), Err(CdcError::UnknownEdge(_))));
    }
}
