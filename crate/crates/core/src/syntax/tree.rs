use super::{AstNode, EntityKind, Span};

/// Pre-order index of a node inside a [`FlatTree`].
pub type NodeId = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlatNode {
    pub kind: EntityKind,
    pub value: String,
    pub span: Span,
    pub parent: Option<NodeId>,
    pub children: Vec<NodeId>,
    /// One past the last pre-order index of this node's subtree.
    pub subtree_end: NodeId,
}

/// Arena view of an [`AstNode`] tree, indexed in pre-order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlatTree {
    pub nodes: Vec<FlatNode>,
}

impl FlatTree {
    pub fn new(root: &AstNode) -> Self {
        let mut nodes = Vec::new();
        push(&mut nodes, root, None);
        FlatTree { nodes }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn kind(&self, id: NodeId) -> EntityKind {
        self.nodes[id].kind
    }

    pub fn value(&self, id: NodeId) -> &str {
        &self.nodes[id].value
    }

    pub fn parent(&self, id: NodeId) -> Option<NodeId> {
        self.nodes[id].parent
    }

    pub fn children(&self, id: NodeId) -> &[NodeId] {
        &self.nodes[id].children
    }

    pub fn in_subtree(&self, root: NodeId, id: NodeId) -> bool {
        root <= id && id < self.nodes[root].subtree_end
    }

    /// Enclosing entity as seen by changes: a `Then` wrapper is transparent,
    /// so statements in an if's then-branch belong to the `If` itself.
    pub fn logical_parent(&self, id: NodeId) -> Option<NodeId> {
        let p = self.parent(id)?;
        if self.kind(p) == EntityKind::Then {
            self.parent(p)
        } else {
            Some(p)
        }
    }

    /// Position of `id` among its parent's children.
    pub fn sibling_index(&self, id: NodeId) -> Option<usize> {
        let p = self.parent(id)?;
        self.children(p).iter().position(|&c| c == id)
    }

    /// Rebuilds the nested form of the subtree rooted at `id`.
    pub fn to_ast(&self, id: NodeId) -> AstNode {
        let n = &self.nodes[id];
        AstNode::new(n.kind, n.value.clone(), n.span)
            .with_children(n.children.iter().map(|&c| self.to_ast(c)).collect())
    }
}

fn push(nodes: &mut Vec<FlatNode>, node: &AstNode, parent: Option<NodeId>) -> NodeId {
    let id = nodes.len();
    nodes.push(FlatNode {
        kind: node.kind,
        value: node.value.clone(),
        span: node.span,
        parent,
        children: Vec::with_capacity(node.children.len()),
        subtree_end: id + 1,
    });
    for child in &node.children {
        let c = push(nodes, child, Some(id));
        nodes[id].children.push(c);
    }
    nodes[id].subtree_end = nodes.len();
    id
}
