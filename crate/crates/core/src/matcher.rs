//! Pattern classification of AST hunks.
//!
//! A pattern is present in a hunk when its micro-patterns can be assigned,
//! in order, to distinct changes of the hunk so that every relation holds and
//! no undesired change shows up.

use serde::{Deserialize, Serialize};

use crate::diff::SourceCodeChange;
use crate::hunking::{AstHunk, HunkId};
use crate::patterns::{MicroPattern, PatternDefinition, RelationConstraint, RelationKind, UndesiredScope};

pub fn micro_matches(mp: &MicroPattern, c: &SourceCodeChange) -> bool {
    mp.ct == c.change_type && mp.et.accepts(c.entity) && mp.pt.accepts(c.parent_entity)
}

/// Hunk positions assigned to each micro-pattern, in pattern order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MatchAssignment {
    pub pattern_id: String,
    pub mapping: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternInstance {
    pub pattern_id: String,
    pub hunk_id: HunkId,
    pub revision: Option<String>,
    pub assignment: MatchAssignment,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceRecord {
    pub pattern_id: String,
    pub path: String,
    pub commit: Option<String>,
    pub hunk_index: usize,
    pub mapping: Vec<usize>,
}

impl PatternInstance {
    pub fn to_record(&self) -> InstanceRecord {
        InstanceRecord {
            pattern_id: self.pattern_id.clone(),
            path: self.hunk_id.path.clone(),
            commit: self.revision.clone(),
            hunk_index: self.hunk_id.index,
            mapping: self.assignment.mapping.clone(),
        }
    }
}

pub fn relation_holds(r: &RelationConstraint, changes: &[SourceCodeChange], mapping: &[usize]) -> bool {
    let (s, o) = (&changes[mapping[r.subject]], &changes[mapping[r.object]]);
    match r.kind {
        RelationKind::ParentOf => o.parent.same_node(&s.node),
        RelationKind::SameParent => o.parent.same_node(&s.parent),
    }
}

/// True when some change of the hunk is undesired under this mapping.
pub fn has_undesired(p: &PatternDefinition, changes: &[SourceCodeChange], mapping: &[usize]) -> bool {
    p.undesired.iter().any(|u| {
        changes.iter().filter(|c| micro_matches(&u.pattern, c)).any(|c| match u.scope {
            UndesiredScope::Hunk => true,
            UndesiredScope::ParentOf(i) => c.node.same_node(&changes[mapping[i]].parent),
            UndesiredScope::Within(i) => c.parent.same_node(&changes[mapping[i]].node),
        })
    })
}

/// Leftmost mapping of `p` into `changes` that passes all three checks.
pub fn find_mapping(p: &PatternDefinition, changes: &[SourceCodeChange]) -> Option<Vec<usize>> {
    let n = p.changes.len();
    if n == 0 || changes.len() < n {
        return None;
    }
    // Hunk-wide undesired changes do not depend on the mapping.
    let hunk_wide = p.undesired.iter().any(|u| {
        u.scope == UndesiredScope::Hunk && changes.iter().any(|c| micro_matches(&u.pattern, c))
    });
    if hunk_wide {
        return None;
    }
    // Relations become checkable once both ends are assigned.
    let mut ready: Vec<Vec<&RelationConstraint>> = vec![Vec::new(); n];
    for r in &p.relations {
        ready[r.subject.max(r.object)].push(r);
    }
    let mut mapping = Vec::with_capacity(n);
    search(p, changes, &ready, &mut mapping).then_some(mapping)
}

fn search(
    p: &PatternDefinition,
    changes: &[SourceCodeChange],
    ready: &[Vec<&RelationConstraint>],
    mapping: &mut Vec<usize>,
) -> bool {
    let k = mapping.len();
    if k == p.changes.len() {
        return !has_undesired(p, changes, mapping);
    }
    let from = mapping.last().map_or(0, |&m| m + 1);
    let room = p.changes.len() - k - 1;
    for pos in from..changes.len() - room {
        if !micro_matches(&p.changes[k], &changes[pos]) {
            continue;
        }
        mapping.push(pos);
        if ready[k].iter().all(|r| relation_holds(r, changes, mapping)) && search(p, changes, ready, mapping) {
            return true;
        }
        mapping.pop();
    }
    false
}

pub fn classify_hunk(p: &PatternDefinition, h: &AstHunk) -> Option<PatternInstance> {
    find_mapping(p, &h.changes).map(|mapping| PatternInstance {
        pattern_id: p.id.clone(),
        hunk_id: h.id.clone(),
        revision: None,
        assignment: MatchAssignment {
            pattern_id: p.id.clone(),
            mapping,
        },
    })
}

/// Instances in (hunk, pattern) order.
pub fn classify_revision(catalog: &[PatternDefinition], hunks: &[AstHunk]) -> Vec<PatternInstance> {
    hunks
        .iter()
        .flat_map(|h| catalog.iter().filter_map(move |p| classify_hunk(p, h)))
        .collect()
}
