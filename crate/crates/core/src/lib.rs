//! Statement-level change pattern detection for Java-like sources.
//!
//! The pipeline is: parse both revisions ([`syntax`]), derive the change list
//! ([`diff`]), group changes into AST hunks ([`hunking`]), and classify each
//! hunk against change patterns ([`patterns`], [`matcher`]). [`miner`] runs
//! it over a whole history.

use thiserror::Error;

pub mod cli;
pub mod diff;
pub mod hunking;
pub mod matcher;
pub mod miner;
pub mod patterns;
pub mod syntax;

use diff::ChangeList;
use hunking::{AstHunk, HunkError, LineHunk};
use syntax::{CompilationUnit, ParseError};

/// Everything derived from one file pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RevisionDiff {
    pub changes: ChangeList,
    pub line_hunks: Vec<LineHunk>,
    pub ast_hunks: Vec<AstHunk>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error("{path}:{source}")]
    Parse {
        path: String,
        #[source]
        source: ParseError,
    },
    #[error(transparent)]
    Hunk(#[from] HunkError),
}

pub fn diff_units(old: &CompilationUnit, new: &CompilationUnit) -> Result<RevisionDiff, HunkError> {
    let changes = diff::extract_changes(old, new);
    let line_hunks = hunking::line_diff(&old.source_lines, &new.source_lines);
    let ast_hunks = hunking::group_ast_hunks(&changes, &line_hunks)?;
    Ok(RevisionDiff {
        changes,
        line_hunks,
        ast_hunks,
    })
}

/// Parses both texts and diffs them. `old_path` and `new_path` only label
/// diagnostics and hunk ids.
pub fn analyze(old_text: &str, old_path: &str, new_text: &str, new_path: &str) -> Result<RevisionDiff, AnalysisError> {
    let parse = |text: &str, path: &str| {
        syntax::parse_source(text, path).map_err(|source| AnalysisError::Parse {
            path: path.to_string(),
            source,
        })
    };
    let (old, new) = (parse(old_text, old_path)?, parse(new_text, new_path)?);
    Ok(diff_units(&old, &new)?)
}
