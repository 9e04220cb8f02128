//! Pattern frequencies over a corpus directory.
//!
//! cargo run --example mine_corpus_dir [DIR]

use changepat::miner::{mine, CommitFilter, MineOptions, Source};
use changepat::patterns::builtin_catalog;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::args()
        .nth(1)
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/corpus/mini").to_string());
    let source = Source::Corpus(dir.into());

    let all = mine(&source, builtin_catalog(), &MineOptions::default())?;
    print!("{}", all.to_table());

    let fixes = mine(
        &source,
        builtin_catalog(),
        &MineOptions {
            filter: CommitFilter::Bugfix,
            workers: 4,
            ..MineOptions::default()
        },
    )?;
    println!("bug-fix commits: {} of {}, instances {}", fixes.commits_analyzed, fixes.commits, fixes.total);
    Ok(())
}
