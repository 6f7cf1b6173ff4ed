//! Rebuilds the oracle-generated fixture files in place. On an unmodified
//! tree this must leave the working copy unchanged.

use std::path::Path;

fn main() {
    let fs = crumby::fixtures::regenerate_fixtures().expect("fixture regeneration failed");
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    std::fs::create_dir_all(&dir).unwrap();
    std::fs::write(
        dir.join("two_square_starts.txt"),
        crumby::fixtures::render_two_square_file(&fs.two_square_starts),
    )
    .unwrap();
    std::fs::write(
        dir.join("k4_base_solutions.txt"),
        crumby::fixtures::render_k4_base_file(&fs.k4_bases),
    )
    .unwrap();
    println!(
        "wrote {} two-square starts and {} K4 base solutions to {}",
        fs.two_square_starts.len(),
        fs.k4_bases.len(),
        dir.display()
    );
}
