//! Statement-level changes between two revisions of a file.
//!
//! cargo run --example diff_revisions [OLD NEW]

use std::path::PathBuf;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let fixtures = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures");
    let mut args = std::env::args().skip(1);
    let old = args.next().map_or(fixtures.join("guard_jump_old.java"), PathBuf::from);
    let new = args.next().map_or(fixtures.join("guard_jump_new.java"), PathBuf::from);

    let old_unit = changepat::syntax::parse_source(&std::fs::read_to_string(&old)?, &old.display().to_string())?;
    let new_unit = changepat::syntax::parse_source(&std::fs::read_to_string(&new)?, &new.display().to_string())?;
    let changes = changepat::diff::extract_changes(&old_unit, &new_unit);

    for c in changes.iter() {
        println!("{c}");
        println!("    {:?} lines {}-{}: {}", c.side, c.anchor_span.start_line, c.anchor_span.end_line, c.node_value);
    }
    println!("{} changes", changes.len());
    Ok(())
}
