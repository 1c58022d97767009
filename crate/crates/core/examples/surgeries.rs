//! Face augmentation and vertex truncation, single and complete.
//!
//!     cargo run --example surgeries -- [selector]

use cdclab::corpus;
use cdclab::planar_map::PlanarMap;
use cdclab::surgery::{augment_face, complete_augmentation, complete_truncation, truncate_vertex};

fn counts(m: &PlanarMap) -> String {
    format!(
        "V={} E={} F={}",
        m.vertex_count(),
        m.edge_count(),
        m.face_count()
    )
}

fn main() -> cdclab::Result<()> {
    let selector = std::env::args().nth(1).unwrap_or_else(|| "k4".into());
    let m = corpus::resolve(&selector)?;
    println!("{selector}: {}", counts(&m));

    let (a, _) = augment_face(&m, &m.faces()[0])?;
    println!(
        "augment face 0 ({}-gon): {}",
        m.faces()[0].len(),
        counts(&a)
    );
    let (t, _) = truncate_vertex(&m, m.label(0))?;
    println!("truncate vertex {}: {}", m.label(0), counts(&t));

    let (aa, _) = complete_augmentation(&m)?;
    let triangulated = aa.faces().iter().all(|f| f.len() == 3);
    println!(
        "complete augmentation: {} triangulation={triangulated}",
        counts(&aa)
    );

    let (tt, corr) = complete_truncation(&m)?;
    let cubic = tt.underlying_graph().is_regular(3);
    println!("complete truncation: {} cubic={cubic}", counts(&tt));
    println!(
        "  correspondence: {} inherited edges, {} corner edges, {} vertex faces",
        corr.inherited_edges.len(),
        corr.corner_edges.len(),
        corr.vertex_faces.len()
    );
    Ok(())
}
