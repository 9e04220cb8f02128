//! The `changepat` command line.
//!
//! Exit codes: 0 on success (for `match`, when at least one instance was
//! found), 1 when `match` finds nothing, 2 on any error.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::matcher::classify_revision;
use crate::miner::{mine, CommitFilter, MineOptions, Source};
use crate::patterns::{builtin_catalog, parse_pattern_file, PatternDefinition};

/// Directory of `*.pat` files used when `--patterns` is absent.
pub const PATTERNS_ENV: &str = "CHANGEPAT_PATTERNS";

#[derive(Debug, Parser)]
#[command(name = "changepat", version, about = "Find change patterns between Java-like source revisions")]
struct Cli {
    /// Report skipped files and other details on stderr.
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Show the statement-level changes between two files, grouped by AST hunk.
    Diff {
        old: PathBuf,
        new: PathBuf,
        #[arg(long, value_enum, default_value_t = TextOrJson::Text)]
        format: TextOrJson,
    },
    /// List pattern instances between two files.
    Match {
        old: PathBuf,
        new: PathBuf,
        /// Pattern file or directory of `*.pat` files; repeatable.
        #[arg(long)]
        patterns: Vec<PathBuf>,
        #[arg(long, value_enum, default_value_t = TextOrJson::Text)]
        format: TextOrJson,
    },
    /// Count pattern instances over a git repository or corpus directory.
    Mine {
        source: PathBuf,
        #[arg(long, value_enum, default_value_t = Filter::All)]
        filter: Filter,
        /// Source file extension; repeatable.
        #[arg(long = "ext", default_value = ".java")]
        extensions: Vec<String>,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
        workers: u16,
        #[arg(long, value_enum, default_value_t = TableOrJson::Table)]
        format: TableOrJson,
        #[arg(long)]
        patterns: Vec<PathBuf>,
        /// Include every instance in JSON output.
        #[arg(long)]
        instances: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TextOrJson {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TableOrJson {
    Table,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Filter {
    All,
    Bugfix,
}

pub fn run() -> i32 {
    let (mut out, mut err) = (std::io::stdout().lock(), std::io::stderr().lock());
    run_with(std::env::args_os(), &mut out, &mut err)
}

/// Runs the CLI on explicit arguments (the first is the program name).
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{rendered}")
            } else {
                write!(err, "{rendered}")
            };
            return code;
        }
    };
    match execute(cli, out, err) {
        Ok(code) => code,
        Err(msg) => {
            let _ = writeln!(err, "changepat: {msg}");
            2
        }
    }
}

fn read(path: &Path) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_pattern_path(path: &Path, into: &mut Vec<PatternDefinition>) -> Result<(), String> {
    let files = if path.is_dir() {
        let mut files: Vec<PathBuf> = std::fs::read_dir(path)
            .map_err(|e| format!("{}: {e}", path.display()))?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "pat"))
            .collect();
        files.sort();
        files
    } else {
        vec![path.to_path_buf()]
    };
    for f in files {
        let defs = parse_pattern_file(&read(&f)?).map_err(|e| format!("{}: {e}", f.display()))?;
        into.extend(defs);
    }
    Ok(())
}

/// Patterns from the given paths, else from the environment directory, else
/// the built-in catalog.
fn load_patterns(paths: &[PathBuf]) -> Result<Vec<PatternDefinition>, String> {
    let paths: Vec<PathBuf> = if paths.is_empty() {
        match std::env::var_os(PATTERNS_ENV) {
            Some(dir) if !dir.is_empty() => vec![PathBuf::from(dir)],
            _ => return Ok(builtin_catalog().to_vec()),
        }
    } else {
        paths.to_vec()
    };
    let mut defs = Vec::new();
    for p in &paths {
        load_pattern_path(p, &mut defs)?;
    }
    crate::patterns::check_unique(&defs).map_err(|e| e.to_string())?;
    if defs.is_empty() {
        return Err("no patterns loaded".into());
    }
    Ok(defs)
}

fn analyze_files(old: &Path, new: &Path) -> Result<crate::RevisionDiff, String> {
    let (old_text, new_text) = (read(old)?, read(new)?);
    let (old_label, new_label) = (old.display().to_string(), new.display().to_string());
    crate::analyze(&old_text, &old_label, &new_text, &new_label).map_err(|e| e.to_string())
}

fn json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("output serializes")
}

fn execute(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, String> {
    let io = |e: std::io::Error| e.to_string();
    match cli.command {
        Command::Diff { old, new, format } => {
            let d = analyze_files(&old, &new)?;
            match format {
                TextOrJson::Json => {
                    let body = serde_json::json!({
                        "old": old.display().to_string(),
                        "new": new.display().to_string(),
                        "changes": d.changes.iter().map(|c| c.to_record()).collect::<Vec<_>>(),
                        "hunks": d.ast_hunks.iter().map(|h| h.to_record()).collect::<Vec<_>>(),
                    });
                    writeln!(out, "{}", json(&body)).map_err(io)?;
                }
                TextOrJson::Text if d.ast_hunks.is_empty() => writeln!(out, "no changes").map_err(io)?,
                TextOrJson::Text => {
                    for h in &d.ast_hunks {
                        writeln!(out, "hunk {}", h.id.index).map_err(io)?;
                        for c in &h.changes {
                            let side = match c.side {
                                crate::diff::Side::Old => "old",
                                crate::diff::Side::New => "new",
                            };
                            let (a, b) = (c.anchor_span.start_line, c.anchor_span.end_line);
                            writeln!(out, "  {c}  [{side} {a}-{b}]").map_err(io)?;
                        }
                    }
                }
            }
            Ok(0)
        }
        Command::Match {
            old,
            new,
            patterns,
            format,
        } => {
            let catalog = load_patterns(&patterns)?;
            let d = analyze_files(&old, &new)?;
            let found = classify_revision(&catalog, &d.ast_hunks);
            match format {
                TextOrJson::Json => {
                    let records: Vec<_> = found.iter().map(|i| i.to_record()).collect();
                    writeln!(out, "{}", json(&records)).map_err(io)?;
                }
                TextOrJson::Text => {
                    for i in &found {
                        let name = catalog.iter().find(|p| p.id == i.pattern_id).map_or("", |p| &p.name);
                        writeln!(out, "{} ({}) in hunk {}", i.pattern_id, name, i.hunk_id.index).map_err(io)?;
                        let hunk = &d.ast_hunks[i.hunk_id.index];
                        for &pos in &i.assignment.mapping {
                            writeln!(out, "  {}", hunk.changes[pos]).map_err(io)?;
                        }
                    }
                    if found.is_empty() {
                        writeln!(out, "no instances").map_err(io)?;
                    }
                }
            }
            Ok(if found.is_empty() { 1 } else { 0 })
        }
        Command::Mine {
            source,
            filter,
            extensions,
            workers,
            format,
            patterns,
            instances,
        } => {
            let catalog = load_patterns(&patterns)?;
            let options = MineOptions {
                filter: match filter {
                    Filter::All => CommitFilter::All,
                    Filter::Bugfix => CommitFilter::Bugfix,
                },
                extensions,
                workers: usize::from(workers),
                keep_instances: instances,
            };
            let report = mine(&Source::detect(&source), &catalog, &options).map_err(|e| e.to_string())?;
            if cli.verbose > 0 {
                for s in &report.skipped {
                    writeln!(err, "skipped {} {}: {}", s.commit, s.path, s.reason).map_err(io)?;
                }
            }
            match format {
                TableOrJson::Table => write!(out, "{}", report.to_table()).map_err(io)?,
                TableOrJson::Json => writeln!(out, "{}", report.to_json()).map_err(io)?,
            }
            Ok(0)
        }
    }
}
