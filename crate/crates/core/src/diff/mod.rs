//! Statement-level change extraction.
//!
//! Every difference between two revisions is reported as a
//! [`SourceCodeChange`]: a change type, the kind of the affected entity and
//! the kind of its enclosing entity, together with node identities on both
//! sides so that later stages can reason about concrete nodes.

mod matching;

use serde::{Deserialize, Serialize};
use std::fmt;

use crate::syntax::{CompilationUnit, EntityKind, FlatTree, NodeId, Span};

pub use matching::{dice_similarity, match_trees, match_trees_with, MatchConfig, NodeMapping};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ChangeType {
    StatementInsert,
    StatementDelete,
    StatementUpdate,
    StatementParentChange,
    StatementOrderingChange,
    ConditionExpressionChange,
    ElsePartInsert,
    ElsePartDelete,
    /// A method was added.
    AdditionalFunctionality,
    /// A method was removed.
    RemovedFunctionality,
    /// A method signature changed.
    MethodDeclarationChange,
    /// A field was added.
    AdditionalObjectState,
    /// A field was removed.
    RemovedObjectState,
}

impl ChangeType {
    pub const ALL: [ChangeType; 13] = [
        ChangeType::StatementInsert,
        ChangeType::StatementDelete,
        ChangeType::StatementUpdate,
        ChangeType::StatementParentChange,
        ChangeType::StatementOrderingChange,
        ChangeType::ConditionExpressionChange,
        ChangeType::ElsePartInsert,
        ChangeType::ElsePartDelete,
        ChangeType::AdditionalFunctionality,
        ChangeType::RemovedFunctionality,
        ChangeType::MethodDeclarationChange,
        ChangeType::AdditionalObjectState,
        ChangeType::RemovedObjectState,
    ];

    pub fn display_name(self) -> &'static str {
        match self {
            ChangeType::StatementInsert => "Statement insert",
            ChangeType::StatementDelete => "Statement delete",
            ChangeType::StatementUpdate => "Statement update",
            ChangeType::StatementParentChange => "Statement parent change",
            ChangeType::StatementOrderingChange => "Statement ordering change",
            ChangeType::ConditionExpressionChange => "Condition expression change",
            ChangeType::ElsePartInsert => "Else part insert",
            ChangeType::ElsePartDelete => "Else part delete",
            ChangeType::AdditionalFunctionality => "Additional functionality",
            ChangeType::RemovedFunctionality => "Removed functionality",
            ChangeType::MethodDeclarationChange => "Method declaration change",
            ChangeType::AdditionalObjectState => "Additional object state",
            ChangeType::RemovedObjectState => "Removed object state",
        }
    }

    /// Changes that remove something from the old revision.
    pub fn is_removal(self) -> bool {
        matches!(
            self,
            ChangeType::StatementDelete
                | ChangeType::ElsePartDelete
                | ChangeType::RemovedFunctionality
                | ChangeType::RemovedObjectState
        )
    }

    /// Changes that add something to the new revision.
    pub fn is_addition(self) -> bool {
        matches!(
            self,
            ChangeType::StatementInsert
                | ChangeType::ElsePartInsert
                | ChangeType::AdditionalFunctionality
                | ChangeType::AdditionalObjectState
        )
    }

    pub fn is_move(self) -> bool {
        matches!(self, ChangeType::StatementParentChange | ChangeType::StatementOrderingChange)
    }
}

impl fmt::Display for ChangeType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.display_name())
    }
}

/// Which revision a change's location refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    Old,
    New,
}

/// Identity of a node across both revisions. A node present in only one
/// revision has a single id; a matched node has both.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct NodeLink {
    pub old: Option<NodeId>,
    pub new: Option<NodeId>,
}

impl NodeLink {
    /// True when both links denote the same concrete node.
    pub fn same_node(&self, other: &NodeLink) -> bool {
        (self.old.is_some() && self.old == other.old) || (self.new.is_some() && self.new == other.new)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SourceCodeChange {
    pub change_type: ChangeType,
    pub entity: EntityKind,
    /// Kind of the enclosing entity; for moves, the new one.
    pub parent_entity: EntityKind,
    pub side: Side,
    pub anchor_span: Span,
    /// Span of the same node in the other revision, when it exists there.
    pub counterpart_span: Option<Span>,
    pub node_value: String,
    pub parent_value: String,
    pub node: NodeLink,
    /// The enclosing entity (a then-branch wrapper is skipped over).
    pub parent: NodeLink,
    /// The direct parent in the tree, then-branch wrappers included.
    pub container: NodeLink,
    /// Index among the container's children on the anchoring side.
    pub position: Option<usize>,
}

impl SourceCodeChange {
    /// Pre-order id on the anchoring side.
    pub fn anchor_id(&self) -> NodeId {
        match self.side {
            Side::Old => self.node.old,
            Side::New => self.node.new,
        }
        .expect("anchoring side always has a node id")
    }

    pub fn to_record(&self) -> ChangeRecord {
        ChangeRecord {
            ct: self.change_type,
            et: self.entity,
            pt: self.parent_entity,
            side: self.side,
            start_line: self.anchor_span.start_line,
            end_line: self.anchor_span.end_line,
            value: self.node_value.clone(),
            rendered: render_change(self),
        }
    }
}

impl fmt::Display for SourceCodeChange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} of {} in {}",
            self.change_type.display_name(),
            self.entity.display_name(),
            self.parent_entity.display_name()
        )
    }
}

/// Flat JSON form of a change.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChangeRecord {
    pub ct: ChangeType,
    pub et: EntityKind,
    pub pt: EntityKind,
    pub side: Side,
    pub start_line: usize,
    pub end_line: usize,
    pub value: String,
    pub rendered: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ChangeList {
    pub old_path: String,
    pub new_path: String,
    pub changes: Vec<SourceCodeChange>,
}

impl ChangeList {
    pub fn len(&self) -> usize {
        self.changes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.changes.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, SourceCodeChange> {
        self.changes.iter()
    }
}

/// `"<ct> of <et> in <pt>"`, e.g. `Statement delete of Assignment in For`.
pub fn render_change(c: &SourceCodeChange) -> String {
    c.to_string()
}

pub fn extract_changes(old: &CompilationUnit, new: &CompilationUnit) -> ChangeList {
    extract_changes_with(old, new, &MatchConfig::default())
}

pub fn extract_changes_with(old: &CompilationUnit, new: &CompilationUnit, config: &MatchConfig) -> ChangeList {
    let (a, b) = (old.flatten(), new.flatten());
    let m = matching::match_flat(&a, &b, config);
    let mut ex = Extractor {
        a: &a,
        b: &b,
        m: &m,
        out: Vec::new(),
    };
    ex.additions_and_updates();
    ex.reorderings();
    ex.removals();
    let mut changes = ex.out;
    changes.sort_by(|x, y| {
        x.anchor_span
            .start_line
            .cmp(&y.anchor_span.start_line)
            .then(x.side.cmp(&y.side))
            .then(x.anchor_id().cmp(&y.anchor_id()))
            .then(x.change_type.display_name().cmp(y.change_type.display_name()))
    });
    ChangeList {
        old_path: old.path.clone(),
        new_path: new.path.clone(),
        changes,
    }
}

fn implicit(kind: EntityKind) -> bool {
    matches!(kind, EntityKind::Then | EntityKind::ConditionExpression)
}

/// Header part of a node: from its first line up to the line before its
/// first child.
fn head_span(t: &FlatTree, id: NodeId) -> Span {
    let n = &t.nodes[id];
    match n.children.first() {
        None => n.span,
        Some(&c) => {
            let first = &t.nodes[c].span;
            let end_line = first.start_line.saturating_sub(1).max(n.span.start_line);
            Span {
                start_line: n.span.start_line,
                end_line,
                start_byte: n.span.start_byte,
                end_byte: first.start_byte.max(n.span.start_byte),
            }
        }
    }
}

struct Extractor<'t> {
    a: &'t FlatTree,
    b: &'t FlatTree,
    m: &'t NodeMapping,
    out: Vec<SourceCodeChange>,
}

impl Extractor<'_> {
    fn link_old(&self, o: NodeId) -> NodeLink {
        NodeLink {
            old: Some(o),
            new: self.m.new_of(o),
        }
    }

    fn link_new(&self, n: NodeId) -> NodeLink {
        NodeLink {
            old: self.m.old_of(n),
            new: Some(n),
        }
    }

    fn emit_new(&mut self, change_type: ChangeType, n: NodeId, head_only: bool) {
        let b = self.b;
        let parent = b.logical_parent(n).expect("non-root node");
        let container = b.parent(n).expect("non-root node");
        let span_of = |t: &FlatTree, id: NodeId| if head_only { head_span(t, id) } else { t.nodes[id].span };
        self.out.push(SourceCodeChange {
            change_type,
            entity: b.kind(n),
            parent_entity: b.kind(parent),
            side: Side::New,
            anchor_span: span_of(b, n),
            counterpart_span: self.m.old_of(n).map(|o| span_of(self.a, o)),
            node_value: b.value(n).to_string(),
            parent_value: b.value(parent).to_string(),
            node: self.link_new(n),
            parent: self.link_new(parent),
            container: self.link_new(container),
            position: b.sibling_index(n),
        });
    }

    fn emit_old(&mut self, change_type: ChangeType, o: NodeId) {
        let a = self.a;
        let parent = a.logical_parent(o).expect("non-root node");
        let container = a.parent(o).expect("non-root node");
        self.out.push(SourceCodeChange {
            change_type,
            entity: a.kind(o),
            parent_entity: a.kind(parent),
            side: Side::Old,
            anchor_span: a.nodes[o].span,
            counterpart_span: None,
            node_value: a.value(o).to_string(),
            parent_value: a.value(parent).to_string(),
            node: self.link_old(o),
            parent: self.link_old(parent),
            container: self.link_old(container),
            position: a.sibling_index(o),
        });
    }

    fn additions_and_updates(&mut self) {
        let (a, b, m) = (self.a, self.b, self.m);
        let mut n = 1;
        while n < b.len() {
            let kind = b.kind(n);
            let member = b.parent(n).is_some_and(|p| b.kind(p) == EntityKind::Class);
            match m.old_of(n) {
                None if member => {
                    let ct = match kind {
                        EntityKind::MethodDeclaration => ChangeType::AdditionalFunctionality,
                        EntityKind::FieldDeclaration => ChangeType::AdditionalObjectState,
                        _ => ChangeType::StatementInsert,
                    };
                    self.emit_new(ct, n, false);
                    n = b.nodes[n].subtree_end;
                    continue;
                }
                None => match kind {
                    k if implicit(k) => {}
                    EntityKind::Else => self.emit_new(ChangeType::ElsePartInsert, n, false),
                    _ => self.emit_new(ChangeType::StatementInsert, n, false),
                },
                Some(o) => {
                    let changed = a.value(o) != b.value(n);
                    match kind {
                        EntityKind::ConditionExpression if changed => {
                            self.emit_new(ChangeType::ConditionExpressionChange, n, false)
                        }
                        EntityKind::MethodDeclaration if changed => {
                            self.emit_new(ChangeType::MethodDeclarationChange, n, true)
                        }
                        k if k.has_condition() || implicit(k) || k == EntityKind::Else => {}
                        EntityKind::MethodDeclaration => {}
                        k if changed => self.emit_new(ChangeType::StatementUpdate, n, !k.is_statement()),
                        _ => {}
                    }
                    if !implicit(kind) && kind != EntityKind::Else {
                        let (po, pn) = (a.parent(o).expect("mapped non-root"), b.parent(n).expect("non-root"));
                        if m.new_of(po) != Some(pn) {
                            self.emit_new(ChangeType::StatementParentChange, n, false);
                        }
                    }
                }
            }
            n += 1;
        }
    }

    /// Siblings that stayed under the same parent but left the longest
    /// in-order run are reported as ordering changes.
    fn reorderings(&mut self) {
        let (a, b, m) = (self.a, self.b, self.m);
        for c in 0..b.len() {
            let Some(co) = m.old_of(c) else { continue };
            let seq: Vec<(NodeId, usize)> = b
                .children(c)
                .iter()
                .filter(|&&n| !implicit(b.kind(n)) && b.kind(n) != EntityKind::Else)
                .filter_map(|&n| {
                    let o = m.old_of(n)?;
                    (a.parent(o) == Some(co)).then(|| (n, a.sibling_index(o).expect("has parent")))
                })
                .collect();
            if seq.len() < 2 {
                continue;
            }
            let keep = longest_increasing(&seq.iter().map(|&(_, i)| i).collect::<Vec<_>>());
            for (k, &(n, _)) in seq.iter().enumerate() {
                if !keep[k] {
                    self.emit_new(ChangeType::StatementOrderingChange, n, false);
                }
            }
        }
    }

    fn removals(&mut self) {
        let (a, m) = (self.a, self.m);
        let mut o = 1;
        while o < a.len() {
            if m.new_of(o).is_none() {
                let kind = a.kind(o);
                if a.parent(o).is_some_and(|p| a.kind(p) == EntityKind::Class) {
                    let ct = match kind {
                        EntityKind::MethodDeclaration => ChangeType::RemovedFunctionality,
                        EntityKind::FieldDeclaration => ChangeType::RemovedObjectState,
                        _ => ChangeType::StatementDelete,
                    };
                    self.emit_old(ct, o);
                    o = a.nodes[o].subtree_end;
                    continue;
                }
                match kind {
                    k if implicit(k) => {}
                    EntityKind::Else => self.emit_old(ChangeType::ElsePartDelete, o),
                    _ => self.emit_old(ChangeType::StatementDelete, o),
                }
            }
            o += 1;
        }
    }
}

/// Marks one longest strictly increasing subsequence, preferring the
/// earliest elements on ties.
fn longest_increasing(xs: &[usize]) -> Vec<bool> {
    let n = xs.len();
    let mut len = vec![1usize; n];
    let mut prev = vec![usize::MAX; n];
    for i in 0..n {
        for j in 0..i {
            if xs[j] < xs[i] && len[j] + 1 > len[i] {
                len[i] = len[j] + 1;
                prev[i] = j;
            }
        }
    }
    let mut keep = vec![false; n];
    let Some(best) = (0..n).max_by(|&x, &y| len[x].cmp(&len[y]).then(y.cmp(&x))) else {
        return keep;
    };
    let mut i = best;
    loop {
        keep[i] = true;
        if prev[i] == usize::MAX {
            break;
        }
        i = prev[i];
    }
    keep
}
