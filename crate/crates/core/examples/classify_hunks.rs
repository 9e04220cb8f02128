//! Built-in catalog against a wrapped return and a guard with a jump.

use changepat::matcher::{classify_hunk, classify_revision};
use changepat::patterns::{builtin_catalog, find};

fn fixture(name: &str) -> String {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures");
    std::fs::read_to_string(dir.join(name)).expect("fixture")
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let apcj = find(builtin_catalog(), "IF-APCJ").expect("built-in");
    for case in ["wrapped_return", "guard_jump"] {
        let old = fixture(&format!("{case}_old.java"));
        let new = fixture(&format!("{case}_new.java"));
        let d = changepat::analyze(&old, case, &new, case)?;
        for h in &d.ast_hunks {
            println!("{case} hunk {}:", h.id.index);
            for c in &h.changes {
                println!("  {c}");
            }
            match classify_hunk(apcj, h) {
                Some(i) => println!("  -> {} via changes {:?}", i.pattern_id, i.assignment.mapping),
                None => println!("  -> not {}", apcj.id),
            }
        }
        let all: Vec<String> = classify_revision(builtin_catalog(), &d.ast_hunks)
            .into_iter()
            .map(|i| i.pattern_id)
            .collect();
        println!("  catalog: {all:?}");
    }
    Ok(())
}
