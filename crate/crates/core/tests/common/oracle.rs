//! Reference implementations the library is checked against.

use std::collections::HashMap;

use changepat::diff::{ChangeList, ChangeType, NodeLink, SourceCodeChange};
use changepat::hunking::{anchor_hunks, AstHunk, LineHunk};
use changepat::matcher::micro_matches;
use changepat::patterns::{PatternDefinition, RelationKind, UndesiredScope};
use changepat::syntax::{EntityKind, FlatTree};

// ------------------------------------------------------------ edit script

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Key {
    Old(usize),
    New(usize),
    Fresh(usize),
}

#[derive(Debug, Clone)]
struct Node {
    kind: EntityKind,
    value: String,
    children: Vec<Key>,
}

struct Work {
    nodes: HashMap<Key, Node>,
    parent: HashMap<Key, Key>,
    fresh: usize,
}

impl Work {
    fn detach(&mut self, k: Key) {
        if let Some(p) = self.parent.remove(&k) {
            self.nodes.get_mut(&p).unwrap().children.retain(|c| *c != k);
        }
    }

    fn attach(&mut self, k: Key, container: Key, position: usize) -> Result<(), String> {
        let Some(c) = self.nodes.get_mut(&container) else {
            return Err(format!("container {container:?} not present"));
        };
        let at = position.min(c.children.len());
        c.children.insert(at, k);
        self.parent.insert(k, container);
        Ok(())
    }

    fn add(&mut self, k: Key, kind: EntityKind, value: &str) {
        self.nodes.insert(
            k,
            Node {
                kind,
                value: value.to_string(),
                children: Vec::new(),
            },
        );
    }

    fn fresh(&mut self) -> Key {
        self.fresh += 1;
        Key::Fresh(self.fresh)
    }

    fn copy_from(&mut self, b: &FlatTree, n: usize) -> Key {
        let k = Key::New(n);
        self.add(k, b.kind(n), b.value(n));
        for &c in b.children(n) {
            let ck = self.copy_from(b, c);
            self.nodes.get_mut(&k).unwrap().children.push(ck);
            self.parent.insert(ck, k);
        }
        k
    }
}

fn key(link: &NodeLink) -> Key {
    match (link.old, link.new) {
        (Some(o), _) => Key::Old(o),
        (None, Some(n)) => Key::New(n),
        (None, None) => panic!("empty node link"),
    }
}

/// Applies `changes` to the old tree and returns the result as nested
/// (kind, value, children) triples. Only the change list drives the edits;
/// the new tree is consulted for whole inserted members alone.
pub fn apply_changes(a: &FlatTree, b: &FlatTree, changes: &ChangeList) -> Result<Shape, String> {
    let mut w = Work {
        nodes: HashMap::new(),
        parent: HashMap::new(),
        fresh: 0,
    };
    for (i, n) in a.nodes.iter().enumerate() {
        w.add(Key::Old(i), n.kind, &n.value);
        w.nodes.get_mut(&Key::Old(i)).unwrap().children = n.children.iter().map(|&c| Key::Old(c)).collect();
        for &c in &n.children {
            w.parent.insert(Key::Old(c), Key::Old(i));
        }
    }

    use ChangeType::*;
    let moved = |c: &&SourceCodeChange| matches!(c.change_type, StatementParentChange | StatementOrderingChange);
    for c in changes.iter().filter(moved) {
        w.detach(key(&c.node));
    }
    for c in changes.iter() {
        if matches!(
            c.change_type,
            StatementDelete | ElsePartDelete | RemovedFunctionality | RemovedObjectState
        ) {
            w.detach(key(&c.node));
        }
    }

    let mut placed: Vec<&SourceCodeChange> = changes
        .iter()
        .filter(|c| c.change_type.is_addition() || moved(c) || c.change_type == ElsePartInsert)
        .collect();
    placed.sort_by_key(|c| c.node.new);
    for c in placed {
        let n = c.node.new.ok_or("placed change without new node")?;
        let pos = c.position.ok_or("placed change without position")?;
        let container = key(&c.container);
        let k = if moved(&c) {
            key(&c.node)
        } else if c.parent_entity == EntityKind::Class {
            w.copy_from(b, n)
        } else {
            let k = Key::New(n);
            w.add(k, c.entity, &c.node_value);
            match c.entity {
                EntityKind::If => {
                    w.add(Key::New(n + 1), EntityKind::ConditionExpression, &c.node_value);
                    w.add(Key::New(n + 2), EntityKind::Then, "");
                    w.attach(Key::New(n + 1), k, 0)?;
                    w.attach(Key::New(n + 2), k, 1)?;
                }
                EntityKind::For | EntityKind::While | EntityKind::Switch => {
                    w.add(Key::New(n + 1), EntityKind::ConditionExpression, &c.node_value);
                    w.attach(Key::New(n + 1), k, 0)?;
                }
                EntityKind::DoWhile => {
                    let f = w.fresh();
                    w.add(f, EntityKind::ConditionExpression, &c.node_value);
                    w.attach(f, k, 0)?;
                }
                _ => {}
            }
            k
        };
        w.attach(k, container, pos)?;
    }

    for c in changes.iter() {
        match c.change_type {
            StatementUpdate | MethodDeclarationChange => {
                w.nodes.get_mut(&key(&c.node)).ok_or("updated node missing")?.value = c.node_value.clone();
            }
            ConditionExpressionChange => {
                w.nodes.get_mut(&key(&c.node)).ok_or("condition missing")?.value = c.node_value.clone();
                w.nodes.get_mut(&key(&c.parent)).ok_or("condition owner missing")?.value = c.node_value.clone();
            }
            _ => {}
        }
    }
    Ok(shape_of(&w, Key::Old(0)))
}

/// Kind, value and children of a tree, spans ignored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Shape(pub EntityKind, pub String, pub Vec<Shape>);

fn shape_of(w: &Work, k: Key) -> Shape {
    let n = &w.nodes[&k];
    Shape(n.kind, n.value.clone(), n.children.iter().map(|&c| shape_of(w, c)).collect())
}

pub fn tree_shape(t: &FlatTree, id: usize) -> Shape {
    Shape(
        t.kind(id),
        t.value(id).to_string(),
        t.children(id).iter().map(|&c| tree_shape(t, c)).collect(),
    )
}

// ------------------------------------------------------------ grouping

/// Partition of change indices, each part sorted, parts sorted.
pub fn fixpoint_groups(changes: &[SourceCodeChange], hunks: &[LineHunk]) -> Vec<Vec<usize>> {
    let anchors: Vec<Vec<usize>> = changes.iter().map(|c| anchor_hunks(c, hunks)).collect();
    let linked = |i: usize, j: usize| {
        anchors[i].iter().any(|h| anchors[j].contains(h))
            || (changes[i].change_type.is_move()
                && changes[j].change_type.is_move()
                && changes[i].parent.new.is_some()
                && changes[i].parent.new == changes[j].parent.new)
    };
    let mut groups: Vec<Vec<usize>> = (0..changes.len()).map(|i| vec![i]).collect();
    loop {
        let mut merged = false;
        'outer: for x in 0..groups.len() {
            for y in x + 1..groups.len() {
                if groups[x].iter().any(|&i| groups[y].iter().any(|&j| linked(i, j))) {
                    let g = groups.remove(y);
                    groups[x].extend(g);
                    merged = true;
                    break 'outer;
                }
            }
        }
        if !merged {
            break;
        }
    }
    for g in &mut groups {
        g.sort();
    }
    groups.sort();
    groups
}

/// Library grouping in the same index form.
pub fn library_groups(changes: &[SourceCodeChange], hunks: &[AstHunk]) -> Vec<Vec<usize>> {
    let mut groups: Vec<Vec<usize>> = hunks
        .iter()
        .map(|h| {
            let mut g: Vec<usize> = h
                .changes
                .iter()
                .map(|c| changes.iter().position(|x| x == c).expect("hunk change is in the list"))
                .collect();
            g.sort();
            g
        })
        .collect();
    groups.sort();
    groups
}

// ------------------------------------------------------------ matcher

/// Every order-preserving injective mapping, in lexicographic order; the
/// first that survives all three checks.
pub fn brute_force_mapping(p: &PatternDefinition, hunk: &[SourceCodeChange]) -> Option<Vec<usize>> {
    let k = p.changes.len();
    let n = hunk.len();
    if k == 0 || k > n {
        return None;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if accepts(p, hunk, &idx) {
            return Some(idx);
        }
        // Next combination.
        let mut i = k;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            if idx[i] < n - k + i {
                break;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn accepts(p: &PatternDefinition, hunk: &[SourceCodeChange], idx: &[usize]) -> bool {
    let matched = p.changes.iter().zip(idx).all(|(mp, &i)| micro_matches(mp, &hunk[i]));
    let related = p.relations.iter().all(|r| {
        let (s, o) = (&hunk[idx[r.subject]], &hunk[idx[r.object]]);
        let same = |x: &NodeLink, y: &NodeLink| {
            (x.old.is_some() && x.old == y.old) || (x.new.is_some() && x.new == y.new)
        };
        match r.kind {
            RelationKind::ParentOf => same(&o.parent, &s.node),
            RelationKind::SameParent => same(&o.parent, &s.parent),
        }
    });
    let clean = p.undesired.iter().all(|u| {
        !hunk.iter().any(|c| {
            let same = |x: &NodeLink, y: &NodeLink| {
                (x.old.is_some() && x.old == y.old) || (x.new.is_some() && x.new == y.new)
            };
            micro_matches(&u.pattern, c)
                && match u.scope {
                    UndesiredScope::Hunk => true,
                    UndesiredScope::ParentOf(i) => same(&c.node, &hunk[idx[i]].parent),
                    UndesiredScope::Within(i) => same(&c.parent, &hunk[idx[i]].node),
                }
        })
    });
    matched && related && clean
}
