//! Change patterns: an ordered list of micro-patterns, relations between the
//! matched changes, and changes that must not appear alongside them.

use std::collections::HashSet;
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diff::ChangeType;
use crate::syntax::EntityKind;

mod parse;

pub use parse::{parse_pattern_file, serialize_patterns};

/// Entity constraint of a micro-pattern field.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum KindSelector {
    Any,
    Kind(EntityKind),
    /// Alternatives, written `A|B` in pattern files.
    OneOf(Vec<EntityKind>),
}

impl KindSelector {
    pub fn accepts(&self, kind: EntityKind) -> bool {
        match self {
            KindSelector::Any => true,
            KindSelector::Kind(k) => *k == kind,
            KindSelector::OneOf(ks) => ks.contains(&kind),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MicroPattern {
    pub ct: ChangeType,
    pub et: KindSelector,
    pub pt: KindSelector,
}

impl MicroPattern {
    pub fn new(ct: ChangeType, et: KindSelector, pt: KindSelector) -> Self {
        MicroPattern { ct, et, pt }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RelationKind {
    /// The subject's node is the parent of the object's node.
    ParentOf,
    /// Subject and object nodes share a parent.
    SameParent,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RelationConstraint {
    pub kind: RelationKind,
    pub subject: usize,
    pub object: usize,
}

/// Where an undesired change is looked for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum UndesiredScope {
    /// Anywhere in the hunk.
    Hunk,
    /// Only the change to the parent of the node matched at this index.
    ParentOf(usize),
    /// Only changes to children of the node matched at this index.
    Within(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct UndesiredChange {
    pub pattern: MicroPattern,
    pub scope: UndesiredScope,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PatternDefinition {
    pub id: String,
    pub name: String,
    pub changes: Vec<MicroPattern>,
    pub relations: Vec<RelationConstraint>,
    pub undesired: Vec<UndesiredChange>,
}

impl PatternDefinition {
    pub fn validate(&self) -> Result<(), PatternError> {
        let fail = |message: String| {
            Err(PatternError::Validation {
                id: self.id.clone(),
                message,
            })
        };
        let n = self.changes.len();
        if n == 0 {
            return fail("pattern has no changes".into());
        }
        for r in &self.relations {
            if r.subject >= n || r.object >= n {
                return fail(format!("relation index out of range for {n} changes"));
            }
            if r.subject == r.object {
                return fail(format!("relation links change {} to itself", r.subject));
            }
        }
        for u in &self.undesired {
            if let UndesiredScope::ParentOf(i) | UndesiredScope::Within(i) = u.scope {
                if i >= n {
                    return fail(format!("undesired scope index {i} out of range for {n} changes"));
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for PatternDefinition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({})", self.name, self.id)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PatternError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("pattern {id}: {message}")]
    Validation { id: String, message: String },
}

/// The 18 built-in patterns.
pub fn builtin_catalog() -> &'static [PatternDefinition] {
    static CATALOG: OnceLock<Vec<PatternDefinition>> = OnceLock::new();
    CATALOG.get_or_init(|| parse_pattern_file(CATALOG_SOURCE).expect("built-in catalog parses"))
}

pub const CATALOG_SOURCE: &str = include_str!("catalog.pat");

pub fn find<'a>(catalog: &'a [PatternDefinition], id: &str) -> Option<&'a PatternDefinition> {
    catalog.iter().find(|p| p.id.eq_ignore_ascii_case(id))
}

pub fn check_unique(defs: &[PatternDefinition]) -> Result<(), PatternError> {
    let mut seen = HashSet::new();
    for d in defs {
        if !seen.insert(d.id.to_ascii_lowercase()) {
            return Err(PatternError::Validation {
                id: d.id.clone(),
                message: "duplicate pattern id".into(),
            });
        }
    }
    Ok(())
}
