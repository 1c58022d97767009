//! Orientable-cover counts against Apollonian-duality over a corpus.
//!
//!     cargo run --release --example census -- [selector ...]

use cdclab::cdc::EnumerationLimits;
use cdclab::census::run_census;
use cdclab::corpus::{default_census_corpus, CorpusEntry};

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let corpus = if args.is_empty() {
        default_census_corpus()
    } else {
        args.into_iter().map(CorpusEntry::new).collect()
    };
    let report = run_census(&corpus, &EnumerationLimits::default());
    for e in &report.entries {
        println!(
            "{:<22} V={:<3} E={:<3} apollonian dual {:<5} orientable covers {:>5}  all covers {:>6}",
            e.name,
            e.vertices,
            e.edges,
            e.is_apollonian_dual,
            e.orientable_covers,
            e.all_covers.map_or("-".into(), |n| n.to_string())
        );
    }
    println!(
        "verdict: {:?} ({} complete, {} incomplete)",
        report.verdict, report.completed, report.incomplete
    );
}
