//! Count the circuit double covers of a graph, orientable and otherwise.
//!
//!     CDCLAB_THREADS=4 cargo run --release --example enumerate_covers -- [selector]

use cdclab::cdc::{enumerate_covers, validate_circuit, EnumerationLimits};
use cdclab::corpus;

fn main() -> cdclab::Result<()> {
    let selector = std::env::args().nth(1).unwrap_or_else(|| "cube".into());
    let g = corpus::resolve(&selector)?.underlying_graph();
    let limits = EnumerationLimits::default();

    let oriented = enumerate_covers(&g, true, &limits)?;
    let all = enumerate_covers(&g, false, &limits)?;
    println!(
        "{selector}: {} orientable covers, {} covers in all (complete: {})",
        oriented.covers.len(),
        all.covers.len(),
        oriented.complete && all.complete
    );
    for found in oriented.covers.iter().take(5) {
        let lens: Vec<String> = found
            .cover
            .circuits()
            .iter()
            .map(|c| {
                let cycle = validate_circuit(&g, c.edges())
                    .map(|k| k.is_cycle)
                    .unwrap_or(false);
                format!("{}{}", c.len(), if cycle { "" } else { "*" })
            })
            .collect();
        println!("  circuit lengths [{}]", lens.join(" "));
    }
    if oriented.covers.len() > 5 {
        println!("  ... (* marks a circuit that is not a cycle)");
    }
    Ok(())
}
