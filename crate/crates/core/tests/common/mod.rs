#![allow(dead_code)]

pub mod gen;
pub mod oracle;

use std::path::{Path, PathBuf};

use changepat::syntax::{parse_source, CompilationUnit};

pub fn fixture_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

pub fn corpus_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus/mini")
}

pub fn fixture(name: &str) -> String {
    std::fs::read_to_string(fixture_dir().join(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub fn parse(text: &str) -> CompilationUnit {
    parse_source(text, "Gen.java").unwrap_or_else(|e| panic!("{e}\n{text}"))
}

/// Writes a corpus directory commit.
pub fn write_commit(root: &Path, id: &str, message: &str, files: &[(&str, &str, &str)]) {
    let dir = root.join(id);
    for (path, old, new) in files {
        for (side, text) in [("old", old), ("new", new)] {
            let p = dir.join(side).join(path);
            std::fs::create_dir_all(p.parent().unwrap()).unwrap();
            std::fs::write(p, text).unwrap();
        }
    }
    std::fs::create_dir_all(&dir).unwrap();
    std::fs::write(dir.join("message.txt"), message).unwrap();
}
