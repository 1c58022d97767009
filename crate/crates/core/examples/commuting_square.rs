//! The dual of the complete truncation against the complete augmentation
//! of the dual, compared by canonical code and by the explicit bijection.
//!
//!     cargo run --example commuting_square -- [selector]

use cdclab::corpus;
use cdclab::iso::verify_square;

fn main() -> cdclab::Result<()> {
    let selectors: Vec<String> = match std::env::args().nth(1) {
        Some(s) => vec![s],
        None => ["k4", "prism", "cube", "octahedron", "wheel:5"]
            .map(String::from)
            .to_vec(),
    };
    for s in selectors {
        let r = verify_square(&corpus::resolve(&s)?)?;
        println!(
            "{s:<12} augmented dual {:?}  truncated dual {:?}  codes equal {}  bijection ok {}",
            r.augmented_dual, r.truncated_dual, r.codes_equal, r.bijection_is_isomorphism
        );
    }
    Ok(())
}
