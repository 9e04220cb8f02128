//! User-defined patterns in the text format, matched against a revision.

use changepat::matcher::classify_revision;
use changepat::patterns::{parse_pattern_file, serialize_patterns};

const PATTERNS: &str = "
# Null guard around an existing statement.
pattern NG-WRAP \"Wrap statement in null guard\"
  change STATEMENT_INSERT IF *
  change STATEMENT_PARENT_CHANGE * IF
  relation parent_of 0 1
end

pattern LOG-ADD \"Logging call added\"
  change STATEMENT_INSERT METHOD_INVOCATION METHOD
end
";

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let defs = parse_pattern_file(PATTERNS)?;
    print!("{}", serialize_patterns(&defs));

    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures");
    for case in ["wrapped_return", "guard_jump"] {
        let old = std::fs::read_to_string(dir.join(format!("{case}_old.java")))?;
        let new = std::fs::read_to_string(dir.join(format!("{case}_new.java")))?;
        let d = changepat::analyze(&old, case, &new, case)?;
        for i in classify_revision(&defs, &d.ast_hunks) {
            println!("{case}: {} in hunk {}", i.pattern_id, i.hunk_id.index);
        }
    }

    match parse_pattern_file("pattern BAD\n  change STATEMENT_INSERT NOPE *\nend\n") {
        Ok(_) => unreachable!(),
        Err(e) => println!("rejected: {e}"),
    }
    Ok(())
}
