//! Line hunks and their AST counterpart.
//!
//! An AST hunk gathers the changes that touch the same line hunk, plus moves
//! that land in the same new parent, closed transitively. Changes in comments
//! or layout never reach the change list, so they never form an AST hunk.

use serde::{Deserialize, Serialize};
use similar::{Algorithm, DiffTag};
use thiserror::Error;

use crate::diff::{ChangeList, Side, SourceCodeChange};
use crate::syntax::Span;

/// A run of consecutive changed lines. Ranges are `(start_line, len)` with
/// 1-based starts; an empty side records where the edit sits in that file.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LineHunk {
    pub old_range: (usize, usize),
    pub new_range: (usize, usize),
}

impl LineHunk {
    pub fn range(&self, side: Side) -> (usize, usize) {
        match side {
            Side::Old => self.old_range,
            Side::New => self.new_range,
        }
    }

    fn touches(&self, side: Side, span: &Span) -> bool {
        let (start, len) = self.range(side);
        len > 0 && span.intersects_lines(start, start + len - 1)
    }

    fn distance(&self, side: Side, span: &Span) -> usize {
        let (start, len) = self.range(side);
        if len == 0 {
            if span.end_line < start {
                start - span.end_line
            } else {
                (span.start_line + 1).saturating_sub(start)
            }
        } else if span.end_line < start {
            start - span.end_line
        } else {
            span.start_line.saturating_sub(start + len - 1)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HunkId {
    pub path: String,
    pub index: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AstHunk {
    pub id: HunkId,
    /// In change-list order.
    pub changes: Vec<SourceCodeChange>,
    /// Indices into the revision's line hunks.
    pub line_hunks: Vec<usize>,
}

impl AstHunk {
    pub fn to_record(&self) -> HunkRecord {
        HunkRecord {
            id: self.id.clone(),
            line_hunks: self.line_hunks.clone(),
            changes: self.changes.iter().map(|c| c.to_string()).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HunkRecord {
    pub id: HunkId,
    pub line_hunks: Vec<usize>,
    pub changes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HunkError {
    #[error("change `{change}` at lines {start_line}-{end_line} falls outside every line hunk")]
    UnanchoredChange {
        change: String,
        start_line: usize,
        end_line: usize,
    },
}

/// Zero-context line diff. Adjacent changed lines form one hunk.
pub fn line_diff<S: AsRef<str>>(old_lines: &[S], new_lines: &[S]) -> Vec<LineHunk> {
    let old: Vec<&str> = old_lines.iter().map(AsRef::as_ref).collect();
    let new: Vec<&str> = new_lines.iter().map(AsRef::as_ref).collect();
    let ops = similar::capture_diff_slices(Algorithm::Myers, &old, &new);
    let mut out: Vec<LineHunk> = Vec::new();
    let mut open: Option<(std::ops::Range<usize>, std::ops::Range<usize>)> = None;
    for op in ops {
        if op.tag() == DiffTag::Equal {
            if let Some((o, n)) = open.take() {
                out.push(hunk(o, n));
            }
            continue;
        }
        let (o, n) = (op.old_range(), op.new_range());
        open = Some(match open {
            None => (o, n),
            Some((po, pn)) => (po.start..o.end, pn.start..n.end),
        });
    }
    if let Some((o, n)) = open {
        out.push(hunk(o, n));
    }
    out
}

fn hunk(o: std::ops::Range<usize>, n: std::ops::Range<usize>) -> LineHunk {
    LineHunk {
        old_range: (o.start + 1, o.len()),
        new_range: (n.start + 1, n.len()),
    }
}

fn other(side: Side) -> Side {
    match side {
        Side::Old => Side::New,
        Side::New => Side::Old,
    }
}

/// Line hunks a change belongs to.
///
/// A change joins every hunk its span intersects on its anchoring side. If
/// there is none (a moved line the text diff aligned as unchanged, or a
/// duplicate line the text diff paired differently), the counterpart span is
/// tried, and failing that the nearest hunk on the anchoring side.
pub fn anchor_hunks(change: &SourceCodeChange, hunks: &[LineHunk]) -> Vec<usize> {
    let side = change.side;
    let direct: Vec<usize> = (0..hunks.len())
        .filter(|&i| hunks[i].touches(side, &change.anchor_span))
        .collect();
    if !direct.is_empty() {
        return direct;
    }
    if let Some(span) = &change.counterpart_span {
        let across: Vec<usize> = (0..hunks.len())
            .filter(|&i| hunks[i].touches(other(side), span))
            .collect();
        if !across.is_empty() {
            return across;
        }
    }
    (0..hunks.len())
        .min_by_key(|&i| (hunks[i].distance(side, &change.anchor_span), i))
        .into_iter()
        .collect()
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut x = x;
        while self.0[x] != r {
            let next = self.0[x];
            self.0[x] = r;
            x = next;
        }
        r
    }

    fn union(&mut self, x: usize, y: usize) {
        let (rx, ry) = (self.find(x), self.find(y));
        if rx != ry {
            // Smaller index wins so roots are stable.
            let (lo, hi) = if rx < ry { (rx, ry) } else { (ry, rx) };
            self.0[hi] = lo;
        }
    }
}

pub fn group_ast_hunks(changes: &ChangeList, hunks: &[LineHunk]) -> Result<Vec<AstHunk>, HunkError> {
    let mut uf = UnionFind((0..hunks.len()).collect());
    let mut first_hunk = Vec::with_capacity(changes.len());
    let mut touched = vec![false; hunks.len()];
    let mut move_parent: std::collections::HashMap<usize, usize> = Default::default();
    for c in changes.iter() {
        let hs = anchor_hunks(c, hunks);
        let Some(&first) = hs.first() else {
            return Err(HunkError::UnanchoredChange {
                change: c.to_string(),
                start_line: c.anchor_span.start_line,
                end_line: c.anchor_span.end_line,
            });
        };
        for &h in &hs {
            touched[h] = true;
            uf.union(first, h);
        }
        if c.change_type.is_move() {
            if let Some(p) = c.parent.new {
                let h = *move_parent.entry(p).or_insert(first);
                uf.union(h, first);
            }
        }
        first_hunk.push(first);
    }

    let mut groups: std::collections::BTreeMap<usize, (Vec<usize>, Vec<SourceCodeChange>)> = Default::default();
    for (h, _) in touched.iter().enumerate().filter(|(_, &t)| t) {
        let root = uf.find(h);
        groups.entry(root).or_default().0.push(h);
    }
    for (c, &h) in changes.iter().zip(&first_hunk) {
        let root = uf.find(h);
        groups.entry(root).or_default().1.push(c.clone());
    }
    Ok(groups
        .into_values()
        .enumerate()
        .map(|(index, (line_hunks, changes_in))| AstHunk {
            id: HunkId {
                path: changes.new_path.clone(),
                index,
            },
            changes: changes_in,
            line_hunks,
        })
        .collect())
}
