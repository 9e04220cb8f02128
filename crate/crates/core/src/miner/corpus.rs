//! Corpus directories: one folder per commit, sorted by name, each holding
//! `message.txt` plus `old/` and `new/` trees.

use std::path::{Path, PathBuf};

use super::{BlobRef, ChangedFile, Commit, MineError};

fn io(path: &Path) -> impl FnOnce(std::io::Error) -> MineError + '_ {
    move |source| MineError::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn format_error(path: &Path, message: impl Into<String>) -> MineError {
    MineError::CorpusFormat {
        path: path.to_path_buf(),
        message: message.into(),
    }
}

pub(super) fn commits(root: &Path) -> Result<Vec<Commit>, MineError> {
    if !root.is_dir() {
        return Err(format_error(root, "not a directory"));
    }
    let mut dirs = Vec::new();
    for entry in std::fs::read_dir(root).map_err(io(root))? {
        let entry = entry.map_err(io(root))?;
        if entry.file_type().map_err(io(root))?.is_dir() && !entry.file_name().to_string_lossy().starts_with('.') {
            dirs.push(entry.path());
        }
    }
    dirs.sort();
    dirs.iter().map(|d| commit(d)).collect()
}

fn commit(dir: &Path) -> Result<Commit, MineError> {
    let id = dir.file_name().unwrap_or_default().to_string_lossy().into_owned();
    let msg_path = dir.join("message.txt");
    if !msg_path.is_file() {
        return Err(format_error(dir, "missing message.txt"));
    }
    let message = std::fs::read_to_string(&msg_path).map_err(io(&msg_path))?;
    let (old, new) = (dir.join("old"), dir.join("new"));
    if !old.is_dir() && !new.is_dir() {
        return Err(format_error(dir, "needs an old/ or new/ directory"));
    }
    let mut changed_files = Vec::new();
    if old.is_dir() && new.is_dir() {
        for rel in files_under(&new)? {
            let o = old.join(&rel);
            if o.is_file() {
                changed_files.push(ChangedFile {
                    path: rel.to_string_lossy().replace('\\', "/"),
                    old: BlobRef::File(o),
                    new: BlobRef::File(new.join(&rel)),
                });
            }
        }
    }
    Ok(Commit {
        id,
        message,
        parent_id: None,
        changed_files,
    })
}

/// Relative paths of all files below `root`, sorted.
fn files_under(root: &Path) -> Result<Vec<PathBuf>, MineError> {
    let mut out = Vec::new();
    let mut stack = vec![PathBuf::new()];
    while let Some(rel) = stack.pop() {
        let dir = root.join(&rel);
        for entry in std::fs::read_dir(&dir).map_err(io(&dir))? {
            let entry = entry.map_err(io(&dir))?;
            let child = rel.join(entry.file_name());
            if entry.file_type().map_err(io(&dir))?.is_dir() {
                stack.push(child);
            } else {
                out.push(child);
            }
        }
    }
    out.sort();
    Ok(out)
}
