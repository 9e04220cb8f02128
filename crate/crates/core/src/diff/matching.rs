//! Node matching between two revisions of a compilation unit.
//!
//! Members (classes, methods, fields, initializers) are paired per class by
//! name and signature. Each paired body is then matched on its own: statement
//! leaves greedily by bigram similarity, then structural nodes bottom-up by the
//! share of their leaves that landed under the candidate partner.

use std::collections::HashMap;

use crate::syntax::{CompilationUnit, EntityKind, FlatTree, NodeId};

/// Thresholds for the matcher.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MatchConfig {
    /// Minimum bigram Dice similarity for two statements to be paired.
    pub leaf_threshold: f64,
    /// Minimum share of common leaves for two structural nodes to be paired.
    pub inner_threshold: f64,
    /// Minimum body overlap for pairing methods whose signatures differ.
    pub body_threshold: f64,
}

impl Default for MatchConfig {
    fn default() -> Self {
        MatchConfig {
            leaf_threshold: 0.6,
            inner_threshold: 0.5,
            body_threshold: 0.5,
        }
    }
}

/// Partial one-to-one mapping between old and new nodes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeMapping {
    old_to_new: Vec<Option<NodeId>>,
    new_to_old: Vec<Option<NodeId>>,
}

impl NodeMapping {
    pub fn new(old_len: usize, new_len: usize) -> Self {
        NodeMapping {
            old_to_new: vec![None; old_len],
            new_to_old: vec![None; new_len],
        }
    }

    pub fn insert(&mut self, old: NodeId, new: NodeId) {
        debug_assert!(self.old_to_new[old].is_none() && self.new_to_old[new].is_none());
        self.old_to_new[old] = Some(new);
        self.new_to_old[new] = Some(old);
    }

    pub fn new_of(&self, old: NodeId) -> Option<NodeId> {
        self.old_to_new[old]
    }

    pub fn old_of(&self, new: NodeId) -> Option<NodeId> {
        self.new_to_old[new]
    }

    pub fn len(&self) -> usize {
        self.old_to_new.iter().flatten().count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Mapped pairs in old pre-order.
    pub fn pairs(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.old_to_new
            .iter()
            .enumerate()
            .filter_map(|(o, n)| n.map(|n| (o, n)))
    }
}

pub fn match_trees(old: &CompilationUnit, new: &CompilationUnit) -> NodeMapping {
    match_flat(&old.flatten(), &new.flatten(), &MatchConfig::default())
}

pub fn match_trees_with(old: &CompilationUnit, new: &CompilationUnit, config: &MatchConfig) -> NodeMapping {
    match_flat(&old.flatten(), &new.flatten(), config)
}

pub(crate) fn match_flat(a: &FlatTree, b: &FlatTree, config: &MatchConfig) -> NodeMapping {
    let mut m = NodeMapping::new(a.len(), b.len());
    if a.is_empty() || b.is_empty() {
        return m;
    }
    m.insert(0, 0);
    Matcher { a, b, config, m: &mut m }.members(0, 0);
    m
}

fn bigrams(s: &str) -> Vec<u64> {
    let chars: Vec<char> = s.chars().collect();
    let mut out: Vec<u64> = chars
        .windows(2)
        .map(|w| ((w[0] as u64) << 32) | w[1] as u64)
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

fn dice_sets(x: &[u64], y: &[u64]) -> f64 {
    if x.is_empty() && y.is_empty() {
        return 0.0;
    }
    let (mut i, mut j, mut common) = (0, 0, 0usize);
    while i < x.len() && j < y.len() {
        match x[i].cmp(&y[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                common += 1;
                i += 1;
                j += 1;
            }
        }
    }
    2.0 * common as f64 / (x.len() + y.len()) as f64
}

/// Dice coefficient over the sets of character bigrams of two strings.
/// Equal strings score 1 even when too short to have bigrams.
pub fn dice_similarity(x: &str, y: &str) -> f64 {
    if x == y {
        return 1.0;
    }
    dice_sets(&bigrams(x), &bigrams(y))
}

/// Name a member is matched by: the class name, the method name, or the
/// first declared field name.
pub(crate) fn declared_name(kind: EntityKind, value: &str) -> &str {
    let head = match kind {
        EntityKind::Class => return value.split_whitespace().nth(1).unwrap_or(""),
        EntityKind::MethodDeclaration => value.split('(').next().unwrap_or(""),
        EntityKind::FieldDeclaration => {
            let lhs = value.split(" =").next().unwrap_or("");
            let mut depth = 0i32;
            let cut = lhs
                .char_indices()
                .find(|&(_, c)| {
                    match c {
                        '<' => depth += 1,
                        '>' => depth -= 1,
                        _ => {}
                    }
                    c == ',' && depth == 0
                })
                .map_or(lhs.len(), |(i, _)| i);
            lhs[..cut].trim_end_matches(';')
        }
        _ => value,
    };
    head.split_whitespace().last().unwrap_or("")
}

fn is_inner(kind: EntityKind) -> bool {
    use EntityKind::*;
    matches!(
        kind,
        If | For | While | DoWhile | Switch | SwitchCase | Try | CatchClause | Finally | Block
    )
}

struct Matcher<'t> {
    a: &'t FlatTree,
    b: &'t FlatTree,
    config: &'t MatchConfig,
    m: &'t mut NodeMapping,
}

impl Matcher<'_> {
    fn members(&mut self, ca: NodeId, cb: NodeId) {
        let (a, b) = (self.a, self.b);
        let olds = a.children(ca).to_vec();
        let news = b.children(cb).to_vec();
        let mut used_o = vec![false; olds.len()];
        let mut used_n = vec![false; news.len()];
        let mut pairs: Vec<(usize, usize)> = Vec::new();

        let pair_in_order = |used_o: &mut [bool], used_n: &mut [bool], pairs: &mut Vec<(usize, usize)>, pred: &dyn Fn(NodeId, NodeId) -> bool| {
            for (i, &o) in olds.iter().enumerate() {
                if used_o[i] {
                    continue;
                }
                if let Some(j) = (0..news.len()).find(|&j| !used_n[j] && pred(o, news[j])) {
                    used_o[i] = true;
                    used_n[j] = true;
                    pairs.push((i, j));
                }
            }
        };
        let same_kind = |o: NodeId, n: NodeId, k: EntityKind| a.kind(o) == k && b.kind(n) == k;
        let same_name = |o: NodeId, n: NodeId| declared_name(a.kind(o), a.value(o)) == declared_name(b.kind(n), b.value(n));

        use EntityKind::*;
        pair_in_order(&mut used_o, &mut used_n, &mut pairs, &|o, n| same_kind(o, n, Class) && same_name(o, n));
        pair_in_order(&mut used_o, &mut used_n, &mut pairs, &|o, n| {
            same_kind(o, n, FieldDeclaration) && same_name(o, n)
        });
        pair_in_order(&mut used_o, &mut used_n, &mut pairs, &|o, n| {
            same_kind(o, n, Block) && a.value(o) == b.value(n)
        });
        pair_in_order(&mut used_o, &mut used_n, &mut pairs, &|o, n| {
            same_kind(o, n, MethodDeclaration) && a.value(o) == b.value(n)
        });

        // A lone leftover class on each side is the same class, renamed.
        let left = |used: &[bool], ids: &[NodeId], t: &FlatTree| -> Vec<usize> {
            (0..ids.len()).filter(|&i| !used[i] && t.kind(ids[i]) == Class).collect()
        };
        let (lo, ln) = (left(&used_o, &olds, a), left(&used_n, &news, b));
        if lo.len() == 1 && ln.len() == 1 {
            used_o[lo[0]] = true;
            used_n[ln[0]] = true;
            pairs.push((lo[0], ln[0]));
        }

        // Methods whose signature changed: same name first, then body overlap.
        let unmatched_methods = |used: &[bool], ids: &[NodeId], t: &FlatTree| -> Vec<usize> {
            (0..ids.len())
                .filter(|&i| !used[i] && t.kind(ids[i]) == MethodDeclaration)
                .collect()
        };
        let mo = unmatched_methods(&used_o, &olds, a);
        let mn = unmatched_methods(&used_n, &news, b);
        let mut candidates = Vec::new();
        for &i in &mo {
            for &j in &mn {
                let (o, n) = (olds[i], news[j]);
                let name_eq = same_name(o, n);
                let overlap = body_overlap(a, o, b, n);
                let unique_name = name_eq
                    && mo.iter().filter(|&&k| same_name(olds[k], n)).count() == 1
                    && mn.iter().filter(|&&k| same_name(o, news[k])).count() == 1;
                if unique_name || (name_eq && overlap >= self.config.body_threshold) {
                    candidates.push((0u8, overlap, i, j));
                } else if overlap >= self.config.body_threshold {
                    candidates.push((1u8, overlap, i, j));
                }
            }
        }
        candidates.sort_by(|x, y| {
            x.0.cmp(&y.0)
                .then(y.1.total_cmp(&x.1))
                .then(x.2.cmp(&y.2))
                .then(x.3.cmp(&y.3))
        });
        for (_, _, i, j) in candidates {
            if !used_o[i] && !used_n[j] {
                used_o[i] = true;
                used_n[j] = true;
                pairs.push((i, j));
            }
        }

        for (i, j) in pairs {
            let (o, n) = (olds[i], news[j]);
            self.m.insert(o, n);
            match a.kind(o) {
                Class => self.members(o, n),
                MethodDeclaration | Block => self.body(o, n),
                _ => {}
            }
        }
    }

    fn body(&mut self, ra: NodeId, rb: NodeId) {
        let (a, b, config) = (self.a, self.b, self.config);
        let old_ids = ra + 1..a.nodes[ra].subtree_end;
        let new_ids = rb + 1..b.nodes[rb].subtree_end;
        let old_leaves: Vec<NodeId> = old_ids.clone().filter(|&i| a.kind(i).is_statement()).collect();
        let new_leaves: Vec<NodeId> = new_ids.clone().filter(|&i| b.kind(i).is_statement()).collect();
        let old_grams: Vec<Vec<u64>> = old_leaves.iter().map(|&i| bigrams(a.value(i))).collect();
        let new_grams: Vec<Vec<u64>> = new_leaves.iter().map(|&i| bigrams(b.value(i))).collect();
        let dist = |o: NodeId, n: NodeId| (o - ra).abs_diff(n - rb);

        let mut leaf_pairs = Vec::new();
        for (x, &o) in old_leaves.iter().enumerate() {
            for (y, &n) in new_leaves.iter().enumerate() {
                if a.kind(o) != b.kind(n) {
                    continue;
                }
                let sim = if a.value(o) == b.value(n) {
                    1.0
                } else {
                    dice_sets(&old_grams[x], &new_grams[y])
                };
                if sim >= config.leaf_threshold {
                    leaf_pairs.push((sim, dist(o, n), o, n));
                }
            }
        }
        leaf_pairs.sort_by(|x, y| {
            y.0.total_cmp(&x.0)
                .then(x.1.cmp(&y.1))
                .then(x.2.cmp(&y.2))
                .then(x.3.cmp(&y.3))
        });
        for (_, _, o, n) in leaf_pairs {
            if self.m.new_of(o).is_none() && self.m.old_of(n).is_none() {
                self.m.insert(o, n);
            }
        }

        let old_inner: Vec<NodeId> = old_ids.filter(|&i| is_inner(a.kind(i))).collect();
        let new_inner: Vec<NodeId> = new_ids.filter(|&i| is_inner(b.kind(i))).collect();
        let leaves_under = |t: &FlatTree, id: NodeId| -> Vec<NodeId> {
            (id + 1..t.nodes[id].subtree_end).filter(|&i| t.kind(i).is_statement()).collect()
        };
        let new_leaf_counts: HashMap<NodeId, usize> =
            new_inner.iter().map(|&n| (n, leaves_under(b, n).len())).collect();
        let mut inner_pairs = Vec::new();
        for &o in &old_inner {
            let leaves = leaves_under(a, o);
            let partners: Vec<NodeId> = leaves.iter().filter_map(|&l| self.m.new_of(l)).collect();
            for &n in &new_inner {
                if a.kind(o) != b.kind(n) {
                    continue;
                }
                let total = leaves.len().max(new_leaf_counts[&n]);
                let common = partners.iter().filter(|&&p| b.in_subtree(n, p)).count();
                let value_sim = dice_similarity(a.value(o), b.value(n));
                let ratio = if total == 0 { 0.0 } else { common as f64 / total as f64 };
                let accept = if total == 0 {
                    value_sim >= config.leaf_threshold
                } else {
                    ratio >= config.inner_threshold
                };
                if accept {
                    inner_pairs.push((ratio, value_sim, dist(o, n), o, n));
                }
            }
        }
        inner_pairs.sort_by(|x, y| {
            y.0.total_cmp(&x.0)
                .then(y.1.total_cmp(&x.1))
                .then(x.2.cmp(&y.2))
                .then(x.3.cmp(&y.3))
                .then(x.4.cmp(&y.4))
        });
        for (_, _, _, o, n) in inner_pairs {
            if self.m.new_of(o).is_none() && self.m.old_of(n).is_none() {
                self.m.insert(o, n);
            }
        }

        // Conditions and branches travel with their owner.
        for o in old_inner {
            let Some(n) = self.m.new_of(o) else { continue };
            for kind in [EntityKind::ConditionExpression, EntityKind::Then, EntityKind::Else] {
                let co = a.children(o).iter().copied().find(|&c| a.kind(c) == kind);
                let cn = b.children(n).iter().copied().find(|&c| b.kind(c) == kind);
                if let (Some(co), Some(cn)) = (co, cn) {
                    self.m.insert(co, cn);
                }
            }
        }
    }
}

/// Share of statements (kind and value) two member bodies have in common.
fn body_overlap(a: &FlatTree, o: NodeId, b: &FlatTree, n: NodeId) -> f64 {
    let mut counts: HashMap<(EntityKind, &str), isize> = HashMap::new();
    let mut old_total = 0usize;
    for i in o + 1..a.nodes[o].subtree_end {
        if a.kind(i).is_statement() {
            *counts.entry((a.kind(i), a.value(i))).or_default() += 1;
            old_total += 1;
        }
    }
    let mut new_total = 0usize;
    let mut common = 0usize;
    for i in n + 1..b.nodes[n].subtree_end {
        if b.kind(i).is_statement() {
            new_total += 1;
            if let Some(c) = counts.get_mut(&(b.kind(i), b.value(i))) {
                if *c > 0 {
                    *c -= 1;
                    common += 1;
                }
            }
        }
    }
    let total = old_total.max(new_total);
    if total == 0 {
        0.0
    } else {
        common as f64 / total as f64
    }
}
