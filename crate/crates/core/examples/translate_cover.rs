//! Push covers of the complete truncation back to the original graph and
//! check that distinct covers stay distinct.
//!
//!     cargo run --release --example translate_cover -- [selector]

use std::collections::BTreeSet;

use cdclab::cdc::{
    check_orientability, enumerate_covers, facial_cover, translate_cover, EnumerationLimits,
};
use cdclab::corpus;
use cdclab::surgery::complete_truncation;

fn main() -> cdclab::Result<()> {
    let selector = std::env::args().nth(1).unwrap_or_else(|| "k4".into());
    let m = corpus::resolve(&selector)?;
    let (t, corr) = complete_truncation(&m)?;
    let (g, gt) = (m.underlying_graph(), t.underlying_graph());

    let (cover, witness) = facial_cover(&t);
    let tr = translate_cover(&g, &gt, &corr, &cover, Some(&witness))?;
    println!(
        "facial cover of the truncation -> facial cover: {}",
        tr.cover == facial_cover(&m).0
    );

    let limits = EnumerationLimits::default().with_max_edges(gt.edge_count());
    let found = enumerate_covers(&gt, true, &limits)?;
    let mut images = BTreeSet::new();
    for c in &found.covers {
        let tr = translate_cover(&g, &gt, &corr, &c.cover, c.witness.as_ref())?;
        assert!(check_orientability(&g, &tr.cover)?.is_orientable());
        images.insert(tr.cover);
    }
    println!(
        "{} orientable covers of the truncation, {} distinct images (complete: {})",
        found.covers.len(),
        images.len(),
        found.complete
    );
    Ok(())
}
