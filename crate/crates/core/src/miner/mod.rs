//! Mining a history for pattern instances.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::PathBuf;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::matcher::{classify_revision, InstanceRecord};
use crate::patterns::PatternDefinition;

mod corpus;
mod git;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BlobRef {
    Git(String),
    File(PathBuf),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChangedFile {
    pub path: String,
    pub old: BlobRef,
    pub new: BlobRef,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Commit {
    pub id: String,
    pub message: String,
    pub parent_id: Option<String>,
    /// Modified files only.
    pub changed_files: Vec<ChangedFile>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RevisionPair {
    pub commit_id: String,
    pub path: String,
    pub old_text: String,
    pub new_text: String,
}

#[derive(Debug, Error)]
pub enum MineError {
    #[error("cannot read repository {path}: {message}")]
    RepositoryAccess { path: PathBuf, message: String },
    #[error("malformed corpus at {path}: {message}")]
    CorpusFormat { path: PathBuf, message: String },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

/// A history to mine: a git work tree or a corpus directory.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Source {
    Git(PathBuf),
    Corpus(PathBuf),
}

impl Source {
    /// Picks the git backend when `path` holds a `.git` entry.
    pub fn detect(path: impl Into<PathBuf>) -> Source {
        let path = path.into();
        if path.join(".git").exists() {
            Source::Git(path)
        } else {
            Source::Corpus(path)
        }
    }

    /// Commits oldest first, each against its first parent.
    pub fn commits(&self) -> Result<Vec<Commit>, MineError> {
        match self {
            Source::Git(p) => git::commits(p),
            Source::Corpus(p) => corpus::commits(p),
        }
    }

    pub fn read_blob(&self, blob: &BlobRef) -> Result<Vec<u8>, MineError> {
        match (self, blob) {
            (Source::Git(repo), BlobRef::Git(sha)) => git::read_blob(repo, sha),
            (_, BlobRef::File(p)) => std::fs::read(p).map_err(|source| MineError::Io {
                path: p.clone(),
                source,
            }),
            (Source::Corpus(p), BlobRef::Git(_)) => Err(MineError::CorpusFormat {
                path: p.clone(),
                message: "git blob requested from a corpus directory".into(),
            }),
        }
    }
}

/// Bug-fix heuristic on commit messages.
pub fn filter_bugfix(c: &Commit) -> bool {
    let m = c.message.to_lowercase();
    ["bug", "fix", "patch"].iter().any(|k| m.contains(k))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum CommitFilter {
    #[default]
    All,
    Bugfix,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MineOptions {
    pub filter: CommitFilter,
    pub extensions: Vec<String>,
    pub workers: usize,
    pub keep_instances: bool,
}

impl Default for MineOptions {
    fn default() -> Self {
        MineOptions {
            filter: CommitFilter::All,
            extensions: vec![".java".into()],
            workers: 1,
            keep_instances: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternCount {
    pub id: String,
    pub name: String,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkippedRevision {
    pub commit: String,
    pub path: String,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MiningReport {
    /// Catalog order.
    pub patterns: Vec<PatternCount>,
    pub total: usize,
    pub commits: usize,
    pub commits_analyzed: usize,
    /// Modified source file pairs across all commits.
    pub revisions: usize,
    /// Revisions that passed the commit filter.
    pub filtered_revisions: usize,
    pub skipped: Vec<SkippedRevision>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub instances: Vec<InstanceRecord>,
}

impl MiningReport {
    pub fn count(&self, id: &str) -> usize {
        self.patterns.iter().find(|p| p.id == id).map_or(0, |p| p.count)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Aligned table, most frequent first, with a total row.
    pub fn to_table(&self) -> String {
        let mut rows: Vec<&PatternCount> = self.patterns.iter().collect();
        rows.sort_by(|a, b| b.count.cmp(&a.count).then_with(|| a.id.cmp(&b.id)));
        let name_w = rows.iter().map(|r| r.name.len()).chain(["Pattern".len()]).max().unwrap_or(0);
        let id_w = rows.iter().map(|r| r.id.len()).chain(["Code".len()]).max().unwrap_or(0);
        let count_w = self.total.to_string().len().max("Instances".len());
        let mut out = String::new();
        let _ = writeln!(out, "{:<name_w$}  {:<id_w$}  {:>count_w$}", "Pattern", "Code", "Instances");
        let _ = writeln!(out, "{}", "-".repeat(name_w + id_w + count_w + 4));
        for r in rows {
            let _ = writeln!(out, "{:<name_w$}  {:<id_w$}  {:>count_w$}", r.name, r.id, r.count);
        }
        let _ = writeln!(out, "{}", "-".repeat(name_w + id_w + count_w + 4));
        let _ = writeln!(out, "{:<name_w$}  {:<id_w$}  {:>count_w$}", "Total", "", self.total);
        let _ = writeln!(
            out,
            "commits {} (analyzed {}), revisions {} (analyzed {}), skipped {}",
            self.commits,
            self.commits_analyzed,
            self.revisions,
            self.filtered_revisions,
            self.skipped.len()
        );
        out
    }
}

struct WorkItem<'a> {
    commit: &'a Commit,
    file: &'a ChangedFile,
}

enum Outcome {
    Identical,
    Skipped(String),
    Instances(Vec<InstanceRecord>),
}

fn has_extension(path: &str, exts: &[String]) -> bool {
    exts.iter().any(|e| path.ends_with(e.as_str()))
}

fn process(source: &Source, catalog: &[PatternDefinition], item: &WorkItem) -> Result<Outcome, MineError> {
    let old = source.read_blob(&item.file.old)?;
    let new = source.read_blob(&item.file.new)?;
    if old == new {
        return Ok(Outcome::Identical);
    }
    let (Ok(old), Ok(new)) = (String::from_utf8(old), String::from_utf8(new)) else {
        return Ok(Outcome::Skipped("not valid UTF-8".into()));
    };
    let pair = RevisionPair {
        commit_id: item.commit.id.clone(),
        path: item.file.path.clone(),
        old_text: old,
        new_text: new,
    };
    Ok(match analyze_pair(catalog, &pair) {
        Ok(found) => Outcome::Instances(found),
        Err(e) => Outcome::Skipped(e.to_string()),
    })
}

/// Runs the full pipeline on one file pair.
pub fn analyze_pair(
    catalog: &[PatternDefinition],
    pair: &RevisionPair,
) -> Result<Vec<InstanceRecord>, crate::AnalysisError> {
    let d = crate::analyze(&pair.old_text, &pair.path, &pair.new_text, &pair.path)?;
    Ok(classify_revision(catalog, &d.ast_hunks)
        .into_iter()
        .map(|mut i| {
            i.revision = Some(pair.commit_id.clone());
            i.to_record()
        })
        .collect())
}

pub fn mine(source: &Source, catalog: &[PatternDefinition], options: &MineOptions) -> Result<MiningReport, MineError> {
    let commits = source.commits()?;
    let items: Vec<(bool, WorkItem)> = commits
        .iter()
        .flat_map(|c| {
            let keep = options.filter == CommitFilter::All || filter_bugfix(c);
            c.changed_files
                .iter()
                .filter(|f| has_extension(&f.path, &options.extensions))
                .map(move |f| (keep, WorkItem { commit: c, file: f }))
        })
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(options.workers.max(1))
        .build()
        .map_err(|e| MineError::RepositoryAccess {
            path: PathBuf::new(),
            message: format!("cannot start workers: {e}"),
        })?;
    // Filtered-out pairs are still read to tell real revisions from
    // mode-only or identical entries.
    let outcomes: Vec<Result<(bool, Outcome), MineError>> = pool.install(|| {
        items
            .par_iter()
            .map(|(keep, item)| {
                if *keep {
                    process(source, catalog, item).map(|o| (true, o))
                } else {
                    let same = source.read_blob(&item.file.old)? == source.read_blob(&item.file.new)?;
                    Ok((false, if same { Outcome::Identical } else { Outcome::Instances(vec![]) }))
                }
            })
            .collect()
    });

    let mut counts: HashMap<&str, usize> = HashMap::new();
    let mut report = MiningReport {
        patterns: Vec::new(),
        total: 0,
        commits: commits.len(),
        commits_analyzed: commits
            .iter()
            .filter(|c| options.filter == CommitFilter::All || filter_bugfix(c))
            .count(),
        revisions: 0,
        filtered_revisions: 0,
        skipped: Vec::new(),
        instances: Vec::new(),
    };
    for ((_, item), outcome) in items.iter().zip(outcomes) {
        let (kept, outcome) = outcome?;
        if matches!(outcome, Outcome::Identical) {
            continue;
        }
        report.revisions += 1;
        if !kept {
            continue;
        }
        report.filtered_revisions += 1;
        match outcome {
            Outcome::Identical => {}
            Outcome::Skipped(reason) => report.skipped.push(SkippedRevision {
                commit: item.commit.id.clone(),
                path: item.file.path.clone(),
                reason,
            }),
            Outcome::Instances(found) => {
                for i in found {
                    *counts.entry(catalog_id(catalog, &i.pattern_id)).or_default() += 1;
                    if options.keep_instances {
                        report.instances.push(i);
                    }
                }
            }
        }
    }
    report.patterns = catalog
        .iter()
        .map(|p| PatternCount {
            id: p.id.clone(),
            name: p.name.clone(),
            count: counts.get(p.id.as_str()).copied().unwrap_or(0),
        })
        .collect();
    report.total = report.patterns.iter().map(|p| p.count).sum();
    Ok(report)
}

fn catalog_id<'a>(catalog: &'a [PatternDefinition], id: &str) -> &'a str {
    catalog.iter().find(|p| p.id == id).map(|p| p.id.as_str()).expect("instance of a catalog pattern")
}
