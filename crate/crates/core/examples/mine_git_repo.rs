//! Mines a git work tree, each commit against its first parent.
//!
//! cargo run --example mine_git_repo [REPO]
//! Without an argument a small repository is built in a temporary directory.

use std::path::{Path, PathBuf};
use std::process::Command;

use changepat::miner::{mine, MineOptions, Source};
use changepat::patterns::builtin_catalog;

fn git(repo: &Path, args: &[&str]) {
    let status = Command::new("git")
        .arg("-C")
        .arg(repo)
        .args(["-c", "user.name=example", "-c", "user.email=example@localhost", "-c", "commit.gpgsign=false"])
        .args(args)
        .status()
        .expect("git runs");
    assert!(status.success(), "git {args:?}");
}

fn demo_repo(repo: &Path) {
    git(repo, &["init", "-q"]);
    let versions = [
        ("start", "class Stock {\n  void take(int n) {\n    count -= n;\n  }\n}\n"),
        (
            "Fix negative stock",
            "class Stock {\n  void take(int n) {\n    if (n > count) {\n      return;\n    }\n    count -= n;\n  }\n}\n",
        ),
        (
            "fix bound",
            "class Stock {\n  void take(int n) {\n    if (n >= count) {\n      return;\n    }\n    count -= n;\n  }\n}\n",
        ),
    ];
    for (message, text) in versions {
        std::fs::write(repo.join("Stock.java"), text).unwrap();
        git(repo, &["add", "-A"]);
        git(repo, &["commit", "-q", "-m", message]);
    }
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let tmp = tempfile::tempdir()?;
    let repo = match std::env::args().nth(1) {
        Some(p) => PathBuf::from(p),
        None => {
            demo_repo(tmp.path());
            tmp.path().to_path_buf()
        }
    };
    let options = MineOptions {
        keep_instances: true,
        ..MineOptions::default()
    };
    let report = mine(&Source::Git(repo), builtin_catalog(), &options)?;
    for i in &report.instances {
        let commit = i.commit.as_deref().unwrap_or("-");
        println!("{} {} {}", &commit[..commit.len().min(8)], i.path, i.pattern_id);
    }
    print!("{}", report.to_table());
    Ok(())
}
