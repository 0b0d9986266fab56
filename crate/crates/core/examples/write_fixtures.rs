//! Regenerates `fixtures/*.json` from the builtin model builders.

use std::path::Path;

use adelic_zeta::fixtures::{elliptic_synthetic, genus2_synthetic, projective_line_over_q};
use adelic_zeta::schema::save_surface;

fn main() -> adelic_zeta::Result<()> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let models = [
        ("p1.json", projective_line_over_q(50)?),
        ("genus2.json", genus2_synthetic(50)?),
        ("elliptic.json", elliptic_synthetic(50)?),
    ];
    for (name, m) in models {
        std::fs::write(dir.join(name), save_surface(&m)).expect("writable fixtures directory");
    }
    Ok(())
}
