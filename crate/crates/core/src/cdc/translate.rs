use std::collections::HashMap;

use serde::Serialize;

use super::orient::{circuits_of, dart_ends, validate_oriented};
use super::{canonicalize, validate_cover, CdcError, Circuit, CircuitDoubleCover, OrientedCover};
use crate::graph::SimpleGraph;
use crate::surgery::{Correspondence, FaceTarget, SurgeryKind, VertexOrigin};

/// What happened to one circuit of the truncated graph's cover.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum RuleApplied {
    /// The face left by truncating `vertex`; dropped.
    VertexFace { vertex: u64 },
    /// The image of original face `face`; replaced by that face.
    FaceFace { face: usize },
    /// Any other circuit; reduced to its inherited edges.
    Inherited { kept_edges: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Translation {
    pub cover: CircuitDoubleCover,
    pub witness: Option<OrientedCover>,
    /// One entry per input circuit, in input order.
    pub rules: Vec<RuleApplied>,
    pub is_cycle_cover: bool,
}

/// Maps a cover of the complete truncation `gt` of `g` back to a cover
/// of `g`, carrying an orientation along when one is given.
pub fn translate_cover(
    g: &SimpleGraph,
    gt: &SimpleGraph,
    corr: &Correspondence,
    cover: &CircuitDoubleCover,
    witness: Option<&OrientedCover>,
) -> Result<Translation, CdcError> {
    let mismatch = |msg: String| CdcError::CorrespondenceMismatch(msg);
    if corr.surgery != SurgeryKind::Truncation {
        return Err(mismatch("not a truncation".into()));
    }
    let check = validate_cover(gt, cover.circuits());
    if !check.valid {
        return Err(CdcError::InvalidCover(format!("{check:?}")));
    }
    if let Some(w) = witness {
        validate_oriented(gt, cover, w).map_err(CdcError::InvalidCover)?;
    }

    // which vertex of g every vertex of gt belongs to
    let mut owner: HashMap<u64, usize> = HashMap::new();
    let g_index = |l: u64| {
        g.index_of(l)
            .ok_or_else(|| mismatch(format!("vertex {l} is not in the original graph")))
    };
    for &[v, img] in &corr.vertex_images {
        owner.insert(img, g_index(v)?);
    }
    for nv in &corr.new_vertices {
        match nv.origin {
            VertexOrigin::Corner { vertex, .. } => {
                owner.insert(nv.label, g_index(vertex)?);
            }
            VertexOrigin::Apex { .. } => {
                return Err(mismatch("apex vertex in a truncation".into()))
            }
        }
    }
    if let Some(&l) = gt.labels().iter().find(|l| !owner.contains_key(l)) {
        return Err(mismatch(format!(
            "vertex {l} of the truncation has no origin"
        )));
    }

    let mut inherited: HashMap<usize, usize> = HashMap::new();
    for ei in &corr.inherited_edges {
        let ge = g
            .edge_index_by_labels(ei.edge[0], ei.edge[1])
            .ok_or_else(|| mismatch(format!("edge {:?} is not in the original graph", ei.edge)))?;
        let te = gt
            .edge_index_by_labels(ei.image[0], ei.image[1])
            .ok_or_else(|| mismatch(format!("edge {:?} is not in the truncation", ei.image)))?;
        let mut ends = [owner[&ei.image[0]], owner[&ei.image[1]]];
        ends.sort_unstable();
        let (a, b) = g.edges()[ge];
        if ends != [a, b] {
            return Err(mismatch(format!(
                "edge {:?} does not join the owners of {:?}",
                ei.edge, ei.image
            )));
        }
        inherited.insert(te, ge);
    }
    if inherited.len() != g.edge_count() {
        return Err(mismatch(
            "inherited edges do not cover the original graph".into(),
        ));
    }

    let mut special: HashMap<Circuit, (RuleApplied, Option<Circuit>)> = HashMap::new();
    for vf in &corr.vertex_faces {
        let c = Circuit::from_walk(gt, &vf.face).map_err(|e| mismatch(e.to_string()))?;
        special.insert(c, (RuleApplied::VertexFace { vertex: vf.vertex }, None));
    }
    for ff in &corr.face_faces {
        if let FaceTarget::Face(image) = &ff.image {
            let c = Circuit::from_walk(gt, image).map_err(|e| mismatch(e.to_string()))?;
            let target =
                Circuit::from_walk(g, &ff.boundary).map_err(|e| mismatch(e.to_string()))?;
            special.insert(c, (RuleApplied::FaceFace { face: ff.face }, Some(target)));
        }
    }

    let mut rules = Vec::with_capacity(cover.len());
    let mut circuits = Vec::new();
    let mut parts = Vec::new();
    for (i, c) in cover.circuits().iter().enumerate() {
        let (rule, image) = match special.get(c) {
            Some((rule, target)) => (rule.clone(), target.clone()),
            None => {
                let kept: Vec<usize> = c
                    .edges()
                    .iter()
                    .filter_map(|e| inherited.get(e).copied())
                    .collect();
                (
                    RuleApplied::Inherited {
                        kept_edges: kept.len(),
                    },
                    Some(Circuit::new(kept)),
                )
            }
        };
        rules.push(rule);
        let Some(image) = image else { continue };
        if let Some(w) = witness {
            let part: Vec<usize> = w.parts()[i]
                .iter()
                .filter_map(|&d| {
                    let ge = *inherited.get(&(d / 2))?;
                    let (t, _) = dart_ends(gt, d);
                    let tail = owner[&gt.label(t)];
                    Some(if g.edges()[ge].0 == tail {
                        2 * ge
                    } else {
                        2 * ge + 1
                    })
                })
                .collect();
            parts.push(part);
        }
        circuits.push(image);
    }

    let check = validate_cover(g, &circuits);
    if !check.valid {
        return Err(CdcError::TranslationNotACover(format!("{check:?}")));
    }
    let (cover, witness) = if witness.is_some() {
        let (cover, w) = canonicalize(circuits, parts);
        debug_assert_eq!(circuits_of(&w), cover.circuits());
        validate_oriented(g, &cover, &w).map_err(CdcError::TranslationNotACover)?;
        (cover, Some(w))
    } else {
        (CircuitDoubleCover::new(circuits), None)
    };
    Ok(Translation {
        cover,
        witness,
        rules,
        is_cycle_cover: check.is_cycle_cover,
    })
}
