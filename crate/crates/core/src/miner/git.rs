//! History from a git work tree through the `git` plumbing commands.

use std::path::Path;
use std::process::Command;

use super::{BlobRef, ChangedFile, Commit, MineError};

fn git(repo: &Path, args: &[&str]) -> Result<std::process::Output, MineError> {
    Command::new("git")
        .arg("-C")
        .arg(repo)
        .args(args)
        .output()
        .map_err(|e| MineError::RepositoryAccess {
            path: repo.to_path_buf(),
            message: format!("cannot run git: {e}"),
        })
}

fn git_ok(repo: &Path, args: &[&str]) -> Result<Vec<u8>, MineError> {
    let out = git(repo, args)?;
    if !out.status.success() {
        return Err(MineError::RepositoryAccess {
            path: repo.to_path_buf(),
            message: format!(
                "git {} failed: {}",
                args.first().unwrap_or(&""),
                String::from_utf8_lossy(&out.stderr).trim()
            ),
        });
    }
    Ok(out.stdout)
}

pub(super) fn commits(repo: &Path) -> Result<Vec<Commit>, MineError> {
    git_ok(repo, &["rev-parse", "--git-dir"])?;
    // An unborn HEAD means an empty history.
    if !git(repo, &["rev-parse", "--verify", "-q", "HEAD"])?.status.success() {
        return Ok(Vec::new());
    }
    let log = git_ok(
        repo,
        &["log", "--topo-order", "--reverse", "--format=%H %P%x00%B%x1e", "HEAD"],
    )?;
    let log = String::from_utf8_lossy(&log);
    let mut out = Vec::new();
    for record in log.split('\x1e') {
        let record = record.trim_start_matches('\n');
        if record.is_empty() {
            continue;
        }
        let (head, message) = record.split_once('\0').unwrap_or((record, ""));
        let mut ids = head.split_whitespace();
        let id = ids.next().unwrap_or_default().to_string();
        let parent_id = ids.next().map(str::to_string);
        let changed_files = match &parent_id {
            Some(p) => modified_files(repo, p, &id)?,
            None => Vec::new(),
        };
        out.push(Commit {
            id,
            message: message.trim_end().to_string(),
            parent_id,
            changed_files,
        });
    }
    Ok(out)
}

fn modified_files(repo: &Path, parent: &str, id: &str) -> Result<Vec<ChangedFile>, MineError> {
    let raw = git_ok(repo, &["diff-tree", "-r", "-z", "--no-renames", parent, id])?;
    let raw = String::from_utf8_lossy(&raw);
    let mut fields = raw.split('\0');
    let mut out = Vec::new();
    while let Some(meta) = fields.next() {
        if meta.is_empty() {
            continue;
        }
        let Some(path) = fields.next() else { break };
        // ":<old mode> <new mode> <old sha> <new sha> <status>"
        let parts: Vec<&str> = meta.trim_start_matches(':').split(' ').collect();
        if let [_, _, old, new, status] = parts.as_slice() {
            if status.starts_with('M') && old != new {
                out.push(ChangedFile {
                    path: path.to_string(),
                    old: BlobRef::Git(old.to_string()),
                    new: BlobRef::Git(new.to_string()),
                });
            }
        }
    }
    Ok(out)
}

pub(super) fn read_blob(repo: &Path, sha: &str) -> Result<Vec<u8>, MineError> {
    git_ok(repo, &["cat-file", "blob", sha])
}
