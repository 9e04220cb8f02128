//! Statement-level parsing for a Java-like language subset.
//!
//! Source text is reduced to a labeled ordered tree whose leaves are
//! statements. Expressions are never broken into subtrees; they survive as
//! canonical value strings on the statement or condition node that owns them.
//! Values are rebuilt from tokens, so two sources that differ only in
//! whitespace or comments produce identical trees (spans aside).

mod lexer;
mod parser;
mod tree;

use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

pub use tree::{FlatNode, FlatTree, NodeId};

/// Syntactic category of an [`AstNode`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum EntityKind {
    Class,
    MethodDeclaration,
    FieldDeclaration,
    Parameter,
    ReturnType,
    Block,
    If,
    Then,
    Else,
    For,
    While,
    DoWhile,
    Switch,
    SwitchCase,
    Try,
    CatchClause,
    Finally,
    ConditionExpression,
    Assignment,
    VariableDeclaration,
    MethodInvocation,
    ReturnStatement,
    BreakStatement,
    ContinueStatement,
    ThrowStatement,
}

impl EntityKind {
    pub const ALL: [EntityKind; 25] = [
        EntityKind::Class,
        EntityKind::MethodDeclaration,
        EntityKind::FieldDeclaration,
        EntityKind::Parameter,
        EntityKind::ReturnType,
        EntityKind::Block,
        EntityKind::If,
        EntityKind::Then,
        EntityKind::Else,
        EntityKind::For,
        EntityKind::While,
        EntityKind::DoWhile,
        EntityKind::Switch,
        EntityKind::SwitchCase,
        EntityKind::Try,
        EntityKind::CatchClause,
        EntityKind::Finally,
        EntityKind::ConditionExpression,
        EntityKind::Assignment,
        EntityKind::VariableDeclaration,
        EntityKind::MethodInvocation,
        EntityKind::ReturnStatement,
        EntityKind::BreakStatement,
        EntityKind::ContinueStatement,
        EntityKind::ThrowStatement,
    ];

    /// Simple statements. These never have children.
    pub fn is_statement(self) -> bool {
        matches!(
            self,
            EntityKind::Assignment
                | EntityKind::VariableDeclaration
                | EntityKind::MethodInvocation
                | EntityKind::ReturnStatement
                | EntityKind::BreakStatement
                | EntityKind::ContinueStatement
                | EntityKind::ThrowStatement
        )
    }

    /// Kinds whose value is the text of their `ConditionExpression` child.
    pub fn has_condition(self) -> bool {
        matches!(
            self,
            EntityKind::If
                | EntityKind::For
                | EntityKind::While
                | EntityKind::DoWhile
                | EntityKind::Switch
        )
    }

    pub fn is_loop(self) -> bool {
        matches!(self, EntityKind::For | EntityKind::While | EntityKind::DoWhile)
    }

    /// Human-readable name used when rendering changes.
    pub fn display_name(self) -> &'static str {
        match self {
            EntityKind::Class => "Class",
            EntityKind::MethodDeclaration => "Method",
            EntityKind::FieldDeclaration => "Field",
            EntityKind::Parameter => "Parameter",
            EntityKind::ReturnType => "Return type",
            EntityKind::Block => "Block",
            EntityKind::If => "If",
            EntityKind::Then => "Then",
            EntityKind::Else => "Else",
            EntityKind::For => "For",
            EntityKind::While => "While",
            EntityKind::DoWhile => "Do",
            EntityKind::Switch => "Switch",
            EntityKind::SwitchCase => "Switch case",
            EntityKind::Try => "Try",
            EntityKind::CatchClause => "Catch clause",
            EntityKind::Finally => "Finally",
            EntityKind::ConditionExpression => "Condition",
            EntityKind::Assignment => "Assignment",
            EntityKind::VariableDeclaration => "Variable declaration",
            EntityKind::MethodInvocation => "Method invocation",
            EntityKind::ReturnStatement => "Return",
            EntityKind::BreakStatement => "Break",
            EntityKind::ContinueStatement => "Continue",
            EntityKind::ThrowStatement => "Throw",
        }
    }
}

impl fmt::Display for EntityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.display_name())
    }
}

/// Inclusive 1-based line range, plus the byte range it was cut from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Span {
    pub start_line: usize,
    pub end_line: usize,
    pub start_byte: usize,
    pub end_byte: usize,
}

impl Span {
    pub fn lines(start_line: usize, end_line: usize) -> Self {
        Span {
            start_line,
            end_line,
            start_byte: 0,
            end_byte: 0,
        }
    }

    pub fn contains(&self, other: &Span) -> bool {
        self.start_byte <= other.start_byte
            && other.end_byte <= self.end_byte
            && self.start_line <= other.start_line
            && other.end_line <= self.end_line
    }

    pub fn intersects_lines(&self, start: usize, end: usize) -> bool {
        self.start_line <= end && start <= self.end_line
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AstNode {
    pub kind: EntityKind,
    pub value: String,
    pub children: Vec<AstNode>,
    pub span: Span,
}

impl AstNode {
    pub fn new(kind: EntityKind, value: impl Into<String>, span: Span) -> Self {
        AstNode {
            kind,
            value: value.into(),
            children: Vec::new(),
            span,
        }
    }

    pub fn with_children(mut self, children: Vec<AstNode>) -> Self {
        self.children = children;
        self
    }

    /// Structural equality on kind, value and children, ignoring spans.
    pub fn same_shape(&self, other: &AstNode) -> bool {
        self.kind == other.kind
            && self.value == other.value
            && self.children.len() == other.children.len()
            && self
                .children
                .iter()
                .zip(&other.children)
                .all(|(a, b)| a.same_shape(b))
    }

    /// Pre-order walk over this node and all descendants.
    pub fn walk(&self) -> impl Iterator<Item = &AstNode> {
        let mut stack = vec![self];
        std::iter::from_fn(move || {
            let node = stack.pop()?;
            stack.extend(node.children.iter().rev());
            Some(node)
        })
    }

    /// Number of simple statements in the subtree.
    pub fn statement_count(&self) -> usize {
        self.walk().filter(|n| n.kind.is_statement()).count()
    }

    /// Checks that every child lies inside its parent and siblings do not
    /// overlap. Returns the first offending node on failure.
    pub fn check_spans(&self) -> Result<(), &AstNode> {
        let mut prev_end: Option<usize> = None;
        let mut prev_line = 0;
        for child in &self.children {
            if !self.span.contains(&child.span) {
                return Err(child);
            }
            if prev_end.is_some_and(|e| child.span.start_byte < e) || child.span.start_line < prev_line {
                return Err(child);
            }
            prev_end = Some(child.span.end_byte);
            prev_line = child.span.start_line;
            child.check_spans()?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompilationUnit {
    pub path: String,
    pub root: AstNode,
    pub source_lines: Vec<String>,
}

impl CompilationUnit {
    pub fn flatten(&self) -> FlatTree {
        FlatTree::new(&self.root)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

/// Parses `text` into a compilation unit.
///
/// Text that starts with a package, import or type declaration is parsed as a
/// file of classes. Anything else is read as a method-body fragment, wrapped
/// in a synthetic class and method with empty values. The root is always a
/// synthetic `Class` node with an empty value whose children are the
/// top-level declarations.
pub fn parse_source(text: &str, path: &str) -> Result<CompilationUnit, ParseError> {
    let tokens = lexer::tokenize(text)?;
    let root = parser::Parser::new(tokens).parse_unit()?;
    Ok(CompilationUnit {
        path: path.to_string(),
        root,
        source_lines: text.lines().map(str::to_string).collect(),
    })
}

/// Collapses runs of whitespace into single spaces and trims both ends.
pub fn normalize_value(raw: &str) -> String {
    raw.split_whitespace().collect::<Vec<_>>().join(" ")
}
