//! Build a map from rotation lists, walk its faces, dualize it and round-trip
//! it through `planar-map/v1`.
//!
//!     cargo run --example planar_maps -- [selector]

use cdclab::corpus;
use cdclab::iso::maps_isomorphic;
use cdclab::planar_map::PlanarMap;

fn main() -> cdclab::Result<()> {
    let selector = std::env::args().nth(1).unwrap_or_else(|| "cube".into());
    let m = corpus::resolve(&selector)?;
    println!(
        "{selector}: V={} E={} F={} genus={}",
        m.vertex_count(),
        m.edge_count(),
        m.face_count(),
        m.euler_genus()?
    );
    for (v, rot) in m.rotation_lists() {
        println!("  rotation at {v}: {rot:?}");
    }
    for f in 0..m.face_count() {
        println!("  face {f}: {:?}", m.face_labels(f));
    }

    let dual = m.dualize()?;
    println!(
        "dual: V={} E={} F={}",
        dual.vertex_count(),
        dual.edge_count(),
        dual.face_count()
    );
    println!(
        "dual of dual is the original map: {}",
        maps_isomorphic(&dual.dualize()?, &m)
    );

    let back = PlanarMap::from_json(&m.to_json())?;
    println!("JSON round trip preserves the map: {}", back == m);

    // a rotation system that is not planar is refused
    let twisted = PlanarMap::from_rotation(&[
        (1, vec![2, 3, 4]),
        (2, vec![1, 3, 4]),
        (3, vec![1, 2, 4]),
        (4, vec![1, 2, 3]),
    ]);
    println!("K4 with every rotation equal: {}", twisted.unwrap_err());
    Ok(())
}
