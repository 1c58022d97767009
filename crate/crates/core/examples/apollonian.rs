//! Generate Apollonian networks, recognise them, list separating triangles
//! and test the edge classification.
//!
//!     cargo run --example apollonian -- [stacks] [seed]

use cdclab::apollonian::{
    check_edge_classification, generate_apollonian, is_apollonian, separating_triangles,
    StackSequence,
};
use cdclab::corpus;

fn main() -> cdclab::Result<()> {
    let mut args = std::env::args().skip(1);
    let stacks: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(5);
    let seed: u64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(7);

    let seq = StackSequence::random(stacks, seed);
    let m = generate_apollonian(&seq)?;
    let g = m.underlying_graph();
    println!(
        "stack sequence {seq}: V={} E={} F={}",
        m.vertex_count(),
        m.edge_count(),
        m.face_count()
    );
    println!("recognised as Apollonian: {}", is_apollonian(&g));
    for t in separating_triangles(&g).separating() {
        println!("  separating triangle {:?}", t.labels);
    }
    let report = check_edge_classification(&g)?;
    let bad: Vec<[u64; 2]> = report
        .edges
        .iter()
        .filter(|e| !e.holds())
        .map(|e| e.edge)
        .collect();
    println!(
        "every edge in a separating triangle or at a degree-3 vertex: {} {bad:?}",
        report.pass
    );

    for name in ["octahedron", "cube", "apollonian:0,1"] {
        let g = corpus::resolve(name)?.underlying_graph();
        println!("{name}: Apollonian = {}", is_apollonian(&g));
    }
    Ok(())
}
